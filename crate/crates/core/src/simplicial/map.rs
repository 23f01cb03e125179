use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::error::{Error, Result};

/// A simplicial map given on vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    /// Checks that every maximal simplex of the source lands on a simplex.
    pub fn new(
        source: impl Into<Arc<SimplicialComplex>>,
        target: impl Into<Arc<SimplicialComplex>>,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        if vertex_map.len() != source.vertex_count() {
            return Err(Error::Invalid(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                source.vertex_count()
            )));
        }
        if let Some(&bad) = vertex_map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::UnknownVertex(bad.to_string()));
        }
        let map = SimplicialMap { source, target, vertex_map };
        for s in map.source.maximal_simplices() {
            let img = map.image(s);
            if !map.target.is_simplex(&img) {
                return Err(Error::NotSimplicial(format!(
                    "{:?} maps to {:?}",
                    map.source.name_simplex(s),
                    map.target.name_simplex(&img)
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(k: impl Into<Arc<SimplicialComplex>>) -> Self {
        let k = k.into();
        let n = k.vertex_count();
        SimplicialMap { source: k.clone(), target: k, vertex_map: (0..n).collect() }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn apply(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Sorted, deduplicated image of a vertex set.
    pub fn image(&self, vertices: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = vertices.iter().map(|&v| self.vertex_map[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *other.source {
            return Err(Error::Invalid("maps are not composable".into()));
        }
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            vertex_map: self.vertex_map.iter().map(|&v| other.vertex_map[v]).collect(),
        })
    }

    pub fn to_file(&self) -> MapFile {
        MapFile {
            vertex_map: self
                .vertex_map
                .iter()
                .enumerate()
                .map(|(u, &v)| (self.source.vertex_name(u).to_string(), self.target.vertex_name(v).to_string()))
                .collect(),
        }
    }

    pub fn from_file(
        source: impl Into<Arc<SimplicialComplex>>,
        target: impl Into<Arc<SimplicialComplex>>,
        file: &MapFile,
    ) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        let vm = source
            .vertex_names()
            .iter()
            .map(|n| {
                let t = file.vertex_map.get(n).ok_or_else(|| Error::UnknownVertex(n.clone()))?;
                target.vertex_index(t)
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(source, target, vm)
    }
}

/// On-disk form of a map: source vertex name ↦ target vertex name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub vertex_map: BTreeMap<String, String>,
}
