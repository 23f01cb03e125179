use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest maximal simplex accepted; faces are stored explicitly.
const MAX_SIMPLEX_SIZE: usize = 16;

/// A finite simplicial complex on named vertices.
///
/// Vertices are addressed by their position in the vertex list, which also
/// supplies the total order used by least-vertex approximations. Simplices
/// are sorted index vectors.
#[derive(Clone)]
pub struct SimplicialComplex {
    names: Vec<String>,
    index: HashMap<String, usize>,
    maximal: Vec<Vec<usize>>,
    faces: HashSet<Vec<usize>>,
    adj: Vec<BTreeSet<usize>>,
    dim: usize,
    flag: bool,
    connected: bool,
}

impl SimplicialComplex {
    /// Builds the complex generated by `simplices` (not necessarily maximal).
    /// Vertices lying in no simplex become isolated points.
    pub fn new<S: AsRef<str>>(vertices: &[S], simplices: &[Vec<S>]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(n.clone()));
            }
        }
        let simplices = simplices
            .iter()
            .map(|s| {
                s.iter()
                    .map(|v| index.get(v.as_ref()).copied().ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string())))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(names, simplices)
    }

    /// Like [`SimplicialComplex::new`] with simplices given by vertex index.
    pub fn from_indices(names: Vec<String>, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(simplices.len() + n);
        let mut covered = vec![false; n];
        for s in simplices {
            if s.is_empty() {
                return Err(Error::EmptySimplex);
            }
            let mut s = s;
            s.sort_unstable();
            s.dedup();
            if let Some(&bad) = s.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownVertex(bad.to_string()));
            }
            if s.len() > MAX_SIMPLEX_SIZE {
                return Err(Error::Unsupported(format!("simplex with {} vertices", s.len())));
            }
            for &v in &s {
                covered[v] = true;
            }
            sets.push(s);
        }
        for (v, c) in covered.iter().enumerate() {
            if !c {
                sets.push(vec![v]);
            }
        }
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut faces: HashSet<Vec<usize>> = HashSet::new();
        let mut maximal = Vec::new();
        for s in sets {
            if faces.contains(&s) {
                continue;
            }
            for mask in 1u32..(1u32 << s.len()) {
                let f: Vec<usize> = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                faces.insert(f);
            }
            maximal.push(s);
        }
        maximal.sort();
        let mut adj = vec![BTreeSet::new(); n];
        for f in faces.iter().filter(|f| f.len() == 2) {
            adj[f[0]].insert(f[1]);
            adj[f[1]].insert(f[0]);
        }
        let dim = maximal.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let mut k = SimplicialComplex { names, index, maximal, faces, adj, dim, flag: true, connected: true };
        k.connected = k.components().len() <= 1;
        k.flag = k.maximal_cliques().iter().all(|c| k.faces.contains(c));
        Ok(k)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn is_flag(&self) -> bool {
        self.flag
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn maximal_simplices(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    /// Whether the given vertex set (any order) spans a simplex.
    pub fn is_simplex(&self, vertices: &[usize]) -> bool {
        let mut s = vertices.to_vec();
        s.sort_unstable();
        s.dedup();
        !s.is_empty() && self.faces.contains(&s)
    }

    /// All simplices, sorted by dimension then lexicographically.
    pub fn simplices(&self) -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = self.faces.iter().cloned().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    pub fn simplex_count(&self) -> usize {
        self.faces.len()
    }

    pub fn simplices_of_dim(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.faces.iter().filter(|f| f.len() == d + 1).cloned().collect();
        out.sort();
        out
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> =
            (0..self.vertex_count()).flat_map(|u| self.adj[u].range(u + 1..).map(move |&v| (u, v))).collect();
        e.sort_unstable();
        e
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Connected components of the 1-skeleton, each sorted; ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Maximal cliques of the 1-skeleton (Bron–Kerbosch with pivoting).
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        fn bk(adj: &[BTreeSet<usize>], r: &mut Vec<usize>, p: BTreeSet<usize>, x: BTreeSet<usize>, out: &mut Vec<Vec<usize>>) {
            if p.is_empty() && x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
                return;
            }
            let pivot = *p.union(&x).max_by_key(|&&u| adj[u].intersection(&p).count()).expect("nonempty");
            let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
            let (mut p, mut x) = (p, x);
            for v in candidates {
                r.push(v);
                bk(adj, r, p.intersection(&adj[v]).copied().collect(), x.intersection(&adj[v]).copied().collect(), out);
                r.pop();
                p.remove(&v);
                x.insert(v);
            }
        }
        let mut out = Vec::new();
        bk(&self.adj, &mut Vec::new(), (0..self.vertex_count()).collect(), BTreeSet::new(), &mut out);
        out.sort();
        out
    }

    /// Vertices of the closed star of `v`.
    pub fn closed_neighborhood(&self, v: usize) -> BTreeSet<usize> {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    /// Simplices of the link of `v`, as the complex on all vertices adjacent to `v`.
    pub fn link(&self, v: usize) -> SimplicialComplex {
        let verts: Vec<usize> = self.adj[v].iter().copied().collect();
        let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let simplices = self
            .maximal
            .iter()
            .filter(|s| s.contains(&v) && s.len() > 1)
            .map(|s| s.iter().filter(|&&u| u != v).map(|u| pos[u]).collect())
            .collect();
        let names = verts.iter().map(|&u| self.names[u].clone()).collect();
        SimplicialComplex::from_indices(names, simplices).expect("link of a valid complex")
    }

    /// The full subcomplex on the given vertices, keeping their relative order.
    pub fn induced(&self, vertices: &BTreeSet<usize>) -> (SimplicialComplex, Vec<usize>) {
        let verts: Vec<usize> = vertices.iter().copied().collect();
        let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let simplices = self
            .maximal
            .iter()
            .map(|s| s.iter().filter_map(|u| pos.get(u).copied()).collect::<Vec<_>>())
            .filter(|s| !s.is_empty())
            .collect();
        let names = verts.iter().map(|&u| self.names[u].clone()).collect();
        (SimplicialComplex::from_indices(names, simplices).expect("subcomplex of a valid complex"), verts)
    }

    /// A BFS spanning tree: `parent[u]` for `u ≠ root` in `root`'s component.
    pub fn spanning_tree(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            vertices: self.names.clone(),
            maximal_simplices: self.maximal.iter().map(|s| s.iter().map(|&v| self.names[v].clone()).collect()).collect(),
        }
    }

    pub fn name_simplex(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&v| self.names[v].clone()).collect()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.maximal == other.maximal
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.names)
            .field("maximal_simplices", &self.to_file().maximal_simplices)
            .finish()
    }
}

/// Vertex names may be written as strings or integers.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Name {
    Str(String),
    Int(i64),
}

impl From<Name> for String {
    fn from(n: Name) -> String {
        match n {
            Name::Str(s) => s,
            Name::Int(i) => i.to_string(),
        }
    }
}

pub(crate) fn deserialize_names<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<String>, D::Error> {
    Ok(Vec::<Name>::deserialize(d)?.into_iter().map(String::from).collect())
}

fn deserialize_name_lists<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<String>>, D::Error> {
    Ok(Vec::<Vec<Name>>::deserialize(d)?.into_iter().map(|s| s.into_iter().map(String::from).collect()).collect())
}

/// On-disk form of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(deserialize_with = "deserialize_names")]
    pub vertices: Vec<String>,
    #[serde(deserialize_with = "deserialize_name_lists")]
    pub maximal_simplices: Vec<Vec<String>>,
}

impl ComplexFile {
    pub fn build(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(&self.vertices, &self.maximal_simplices)
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ComplexFile::deserialize(d)?.build().map_err(serde::de::Error::custom)
    }
}

/// The `n`-cycle on vertices `prefix0..prefix{n-1}`.
pub fn cycle(n: usize, prefix: &str) -> SimplicialComplex {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let edges = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::from_indices(names, edges).expect("cycle is valid")
}

/// The full simplex on the given vertex names.
pub fn simplex<S: AsRef<str>>(vertices: &[S]) -> SimplicialComplex {
    let all: Vec<&str> = vertices.iter().map(AsRef::as_ref).collect();
    SimplicialComplex::new(&all, &[all.clone()]).expect("simplex is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> SimplicialComplex {
        SimplicialComplex::new(
            &["w", "x", "y", "z"],
            &[vec!["w", "x"], vec!["x", "y"], vec!["y", "z"], vec!["z", "w"]],
        )
        .unwrap()
    }

    #[test]
    fn build_examples() {
        let sq = square();
        assert!(sq.is_flag() && sq.is_connected());
        assert_eq!(sq.dimension(), 1);
        let pt = SimplicialComplex::new::<&str>(&["p"], &[]).unwrap();
        assert!(pt.is_flag());
        assert_eq!(pt.dimension(), 0);
        let tri = SimplicialComplex::new(
            &["u", "v", "t"],
            &[vec!["u", "v"], vec!["v", "t"], vec!["u", "t"], vec!["u", "v", "t"]],
        )
        .unwrap();
        assert!(tri.is_flag());
        assert_eq!(tri.dimension(), 2);
        assert_eq!(tri.maximal_simplices().len(), 1);
        let hollow = cycle(3, "c");
        assert!(!hollow.is_flag());
    }

    #[test]
    fn build_errors() {
        assert_eq!(SimplicialComplex::new::<&str>(&["a", "a"], &[]).unwrap_err(), Error::DuplicateVertex("a".into()));
        assert_eq!(SimplicialComplex::new(&["a"], &[vec![]]).unwrap_err(), Error::EmptySimplex);
        assert_eq!(SimplicialComplex::new(&["a"], &[vec!["a", "b"]]).unwrap_err(), Error::UnknownVertex("b".into()));
    }

    #[test]
    fn disconnected_and_components() {
        let k = SimplicialComplex::new(&["a", "b", "c"], &[vec!["a", "b"]]).unwrap();
        assert!(!k.is_connected());
        assert_eq!(k.components(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn json_round_trip_and_integer_names() {
        let k: SimplicialComplex =
            serde_json::from_str(r#"{"vertices":[1,2,3],"maximal_simplices":[[1,2],[2,3]]}"#).unwrap();
        assert_eq!(k.vertex_names(), ["1", "2", "3"]);
        let back: SimplicialComplex = serde_json::from_str(&serde_json::to_string(&k).unwrap()).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn link_of_a_cycle_vertex_is_two_points() {
        let c = cycle(6, "v");
        let l = c.link(0);
        assert_eq!(l.vertex_count(), 2);
        assert_eq!(l.edges().len(), 0);
    }
}
