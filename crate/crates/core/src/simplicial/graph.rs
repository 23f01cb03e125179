use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::complex::deserialize_names;
use super::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};

/// A finite multigraph; loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct Graph {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    #[serde(deserialize_with = "deserialize_names")]
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;
    fn try_from(f: GraphFile) -> Result<Graph> {
        let edges: Vec<(&str, &str)> = f.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Graph::new(&f.vertices, &edges)
    }
}

impl From<Graph> for GraphFile {
    fn from(g: Graph) -> GraphFile {
        GraphFile {
            edges: g.edges.iter().map(|&(a, b)| (g.names[a].clone(), g.names[b].clone())).collect(),
            vertices: g.names,
        }
    }
}

impl Graph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let lookup = |n: &str| names.iter().position(|m| m == n).ok_or_else(|| Error::UnknownVertex(n.into()));
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::DuplicateVertex(n.clone()));
            }
        }
        let edges = edges.iter().map(|&(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>>>()?;
        Ok(Graph { names, edges })
    }

    /// One vertex `o` with `petals` loops.
    pub fn rose(petals: usize) -> Self {
        Graph { names: vec!["o".into()], edges: vec![(0, 0); petals] }
    }

    /// The 1-skeleton of a complex of dimension at most one.
    pub fn from_complex(k: &SimplicialComplex) -> Result<Self> {
        if k.dimension() > 1 {
            return Err(Error::Precondition("graph subdivision needs a 1-dimensional complex".into()));
        }
        Ok(Graph { names: k.vertex_names().to_vec(), edges: k.edges() })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Each edge of a graph replaced by a path of `r` edges.
#[derive(Clone, Debug)]
pub struct GraphSubdivision {
    original: Graph,
    r: usize,
    subdivided: Arc<SimplicialComplex>,
    /// Subdivided vertex ↦ original vertex; interior vertices go to the lesser endpoint.
    collapse: Vec<usize>,
    /// Per original edge, the vertices `p₀, …, p_r` of its path.
    paths: Vec<Vec<usize>>,
}

/// Replaces every edge by a path of `r` edges. Original vertices keep their
/// names and indices; the interior vertices of edge `k` are `e{k}.{i}`.
pub fn subdivide_graph_edges(graph: &Graph, r: usize) -> Result<GraphSubdivision> {
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    let mut names = graph.names.clone();
    let mut collapse: Vec<usize> = (0..graph.vertex_count()).collect();
    let mut paths = Vec::with_capacity(graph.edges.len());
    let mut simplices = BTreeSet::new();
    for (k, &(a, b)) in graph.edges.iter().enumerate() {
        let mut path = vec![a];
        for i in 1..r {
            path.push(names.len());
            names.push(format!("e{k}.{i}"));
            collapse.push(a.min(b));
        }
        path.push(b);
        for w in path.windows(2) {
            if w[0] == w[1] || !simplices.insert((w[0].min(w[1]), w[0].max(w[1]))) {
                return Err(Error::NotSimplicial(format!("subdividing edge {k} into {r} parts")));
            }
        }
        paths.push(path);
    }
    let sub = SimplicialComplex::from_indices(names, simplices.into_iter().map(|(a, b)| vec![a, b]).collect())?;
    Ok(GraphSubdivision { original: graph.clone(), r, subdivided: Arc::new(sub), collapse, paths })
}

impl GraphSubdivision {
    pub fn original(&self) -> &Graph {
        &self.original
    }

    pub fn parts(&self) -> usize {
        self.r
    }

    pub fn subdivided(&self) -> &Arc<SimplicialComplex> {
        &self.subdivided
    }

    pub fn collapse(&self) -> &[usize] {
        &self.collapse
    }

    /// Vertices `p₀..p_r` of the path replacing original edge `k`.
    pub fn path(&self, k: usize) -> &[usize] {
        &self.paths[k]
    }

    /// The directed edge `e_i = (p_{i-1}, p_i)` of original edge `k`, `1 ≤ i ≤ r`.
    pub fn fine_edge(&self, k: usize, i: usize) -> (usize, usize) {
        (self.paths[k][i - 1], self.paths[k][i])
    }

    /// The approximation as a subdivision record, when the original graph is simplicial.
    pub fn record(&self) -> Result<super::SubdivisionRecord> {
        let edges = self.original.edges.iter().map(|&(a, b)| vec![a, b]).collect();
        let base = SimplicialComplex::from_indices(self.original.names.clone(), edges)?;
        if base.edges().len() != self.original.edges.len() || self.original.edges.iter().any(|(a, b)| a == b) {
            return Err(Error::NotSimplicial("original graph has loops or parallel edges".into()));
        }
        Ok(super::SubdivisionRecord {
            kind: super::SubdivisionKind::GraphEdgeSubdivision,
            approximation: SimplicialMap::new(self.subdivided.clone(), base, self.collapse.clone())?,
        })
    }
}

/// Positions `2, 5, r-4, r-1` of the fine edges mapped onto the coarse edges.
pub fn homeomorphic_positions(r: usize) -> [usize; 4] {
    [2, 5, r - 4, r - 1]
}

/// Collapses an `r ≥ 12` subdivision onto the 4-part subdivision of the same graph.
pub fn collapse_map(fine: &GraphSubdivision, coarse: &GraphSubdivision) -> Result<SimplicialMap> {
    let r = fine.r;
    if r < 12 {
        return Err(Error::Precondition(format!("fine subdivision needs r >= 12, got {r}")));
    }
    if coarse.r != 4 {
        return Err(Error::Precondition(format!("coarse subdivision needs r = 4, got {}", coarse.r)));
    }
    if fine.original != coarse.original {
        return Err(Error::Precondition("subdivisions of different graphs".into()));
    }
    let mut vm = vec![usize::MAX; fine.subdivided.vertex_count()];
    for k in 0..fine.paths.len() {
        let p = &fine.paths[k];
        let q = &coarse.paths[k];
        for (i, &v) in p.iter().enumerate() {
            let target = match i {
                0 | 1 => q[0],
                2..=4 => q[1],
                _ if i <= r - 5 => q[2],
                _ if i <= r - 2 => q[3],
                _ => q[4],
            };
            vm[v] = target;
        }
    }
    for (v, t) in vm.iter_mut().enumerate() {
        if *t == usize::MAX {
            *t = v; // isolated original vertex
        }
    }
    let map = SimplicialMap::new(fine.subdivided.clone(), coarse.subdivided.clone(), vm)?;
    check_three_consecutive(&map)?;
    Ok(map)
}

/// Every non-backtracking walk of three edges maps to a vertex or a single edge.
pub fn check_three_consecutive(map: &SimplicialMap) -> Result<()> {
    let k = map.source();
    for (a, b) in k.edges() {
        for (v0, v1) in [(a, b), (b, a)] {
            for &v2 in k.neighbors(v1).iter().filter(|&&w| w != v0) {
                for &v3 in k.neighbors(v2).iter().filter(|&&w| w != v1) {
                    let img = map.image(&[v0, v1, v2, v3]);
                    if img.len() > 2 || !map.target().is_simplex(&img) {
                        return Err(Error::VerificationFailed(format!(
                            "walk {} {} {} {} is not collapsed onto an edge",
                            k.vertex_name(v0),
                            k.vertex_name(v1),
                            k.vertex_name(v2),
                            k.vertex_name(v3)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
