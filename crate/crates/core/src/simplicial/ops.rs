use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};

/// The octahedralization `𝕊(L)`: vertices `v+` then `v-`; a signed set is a
/// simplex iff its support is a simplex of `L` and no vertex occurs with both signs.
pub fn octahedralize(l: &SimplicialComplex) -> Result<SimplicialComplex> {
    let n = l.vertex_count();
    if n == 0 {
        return Err(Error::Precondition("octahedralization of the empty complex".into()));
    }
    let names: Vec<String> = ["+", "-"]
        .iter()
        .flat_map(|sign| l.vertex_names().iter().map(move |v| format!("{v}{sign}")))
        .collect();
    let mut simplices = Vec::new();
    for s in l.maximal_simplices() {
        for mask in 0u32..(1u32 << s.len()) {
            simplices.push(s.iter().enumerate().map(|(i, &v)| if mask >> i & 1 == 1 { v + n } else { v }).collect());
        }
    }
    SimplicialComplex::from_indices(names, simplices)
}

/// `St(u) ∪ St(v)` as a full subcomplex, with its inclusion into `l`.
pub fn star_union(l: &Arc<SimplicialComplex>, u: usize, v: usize) -> Result<SimplicialMap> {
    if !l.are_adjacent(u, v) {
        return Err(Error::NotAdjacent(l.vertex_name(u).into(), l.vertex_name(v).into()));
    }
    let keep: Vec<&Vec<usize>> = l.maximal_simplices().iter().filter(|s| s.contains(&u) || s.contains(&v)).collect();
    let verts: BTreeSet<usize> = keep.iter().flat_map(|s| s.iter().copied()).collect();
    let order: Vec<usize> = verts.iter().copied().collect();
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let names = order.iter().map(|&w| l.vertex_name(w).to_string()).collect();
    let simplices = keep.iter().map(|s| s.iter().map(|w| pos[w]).collect()).collect();
    let sub = SimplicialComplex::from_indices(names, simplices)?;
    SimplicialMap::new(sub, l.clone(), order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubdivisionKind {
    Identity,
    Barycentric,
    SecondBarycentric,
    GraphEdgeSubdivision,
}

/// A subdivision together with its simplicial approximation to the identity.
#[derive(Clone, Debug)]
pub struct SubdivisionRecord {
    pub kind: SubdivisionKind,
    /// Subdivided → original.
    pub approximation: SimplicialMap,
}

/// Result of the suitability check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Suitability {
    pub suitable: bool,
    /// An adjacent pair whose stars do not land in one simplex.
    pub witness: Option<(String, String)>,
    /// Names the approximation that was tested.
    pub approximation: &'static str,
}

impl SubdivisionRecord {
    pub fn identity(l: impl Into<Arc<SimplicialComplex>>) -> Self {
        SubdivisionRecord { kind: SubdivisionKind::Identity, approximation: SimplicialMap::identity(l) }
    }

    pub fn original(&self) -> &SimplicialComplex {
        self.approximation.target()
    }

    pub fn subdivided(&self) -> &SimplicialComplex {
        self.approximation.source()
    }

    /// Tests whether `f(St(u) ∪ St(v))` lies in one simplex for every edge
    /// `{u, v}`, using the stored least-vertex approximation `f`.
    pub fn is_suitable(&self) -> Suitability {
        let k = self.subdivided();
        let f = &self.approximation;
        for (u, v) in k.edges() {
            let mut verts: BTreeSet<usize> = k.closed_neighborhood(u);
            verts.extend(k.closed_neighborhood(v));
            let img = f.image(&verts.into_iter().collect::<Vec<_>>());
            if !self.original().is_simplex(&img) {
                return Suitability {
                    suitable: false,
                    witness: Some((k.vertex_name(u).into(), k.vertex_name(v).into())),
                    approximation: "least-vertex",
                };
            }
        }
        Suitability { suitable: true, witness: None, approximation: "least-vertex" }
    }
}

fn simplex_name(l: &SimplicialComplex, s: &[usize]) -> String {
    format!("{{{}}}", l.name_simplex(s).join(","))
}

/// One barycentric subdivision: vertices are the simplices of `l` ordered by
/// dimension then lexicographically, simplices are chains, and each vertex
/// `σ` maps to the least vertex of `σ`.
fn barycentric_once(l: &Arc<SimplicialComplex>) -> Result<SimplicialMap> {
    let faces = l.simplices();
    let pos: HashMap<&Vec<usize>, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let names = faces.iter().map(|f| simplex_name(l, f)).collect();
    let mut chains = Vec::new();
    for s in l.maximal_simplices() {
        let mut order = s.clone();
        permutations(&mut order, 0, &mut |perm| {
            let chain = (1..=perm.len())
                .map(|k| {
                    let mut f = perm[..k].to_vec();
                    f.sort_unstable();
                    pos[&f]
                })
                .collect();
            chains.push(chain);
        });
    }
    let sd = SimplicialComplex::from_indices(names, chains)?;
    let vm = faces.iter().map(|f| f[0]).collect();
    SimplicialMap::new(sd, l.clone(), vm)
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// First or second barycentric subdivision with the least-vertex
/// approximation (composed for two iterations).
pub fn barycentric(l: impl Into<Arc<SimplicialComplex>>, iterations: u32) -> Result<SubdivisionRecord> {
    let l = l.into();
    match iterations {
        1 => Ok(SubdivisionRecord { kind: SubdivisionKind::Barycentric, approximation: barycentric_once(&l)? }),
        2 => {
            let first = barycentric_once(&l)?;
            let second = barycentric_once(first.source_arc())?;
            Ok(SubdivisionRecord { kind: SubdivisionKind::SecondBarycentric, approximation: second.then(&first)? })
        }
        _ => Err(Error::Precondition(format!("iterations must be 1 or 2, got {iterations}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{cycle, simplex};

    fn square() -> Arc<SimplicialComplex> {
        Arc::new(
            SimplicialComplex::new(
                &["w", "x", "y", "z"],
                &[vec!["w", "x"], vec!["x", "y"], vec!["y", "z"], vec!["z", "w"]],
            )
            .unwrap(),
        )
    }

    /// Independent oracle: a signed vertex set is a simplex iff no vertex is
    /// doubled and the support is a simplex.
    fn octahedral_oracle(l: &SimplicialComplex, signed: &[usize]) -> bool {
        let n = l.vertex_count();
        let support: Vec<usize> = signed.iter().map(|&v| v % n).collect();
        let distinct: BTreeSet<usize> = support.iter().copied().collect();
        distinct.len() == support.len() && l.is_simplex(&support)
    }

    #[test]
    fn octahedralize_examples() {
        let e = simplex(&["u", "v"]);
        let s = octahedralize(&e).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.edges().len(), 4);
        assert!(s.is_connected() && s.dimension() == 1);
        let p = octahedralize(&simplex(&["p"])).unwrap();
        assert_eq!((p.vertex_count(), p.edges().len()), (2, 0));
        let t = octahedralize(&simplex(&["a", "b", "c"])).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.simplices_of_dim(2).len(), 8);
        assert!(t.is_flag());
    }

    #[test]
    fn octahedralize_matches_oracle_exhaustively() {
        for l in [(*square()).clone(), simplex(&["a", "b", "c"]), cycle(5, "c")] {
            let s = octahedralize(&l).unwrap();
            let m = s.vertex_count();
            for mask in 1u32..(1u32 << m) {
                let set: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                assert_eq!(s.is_simplex(&set), octahedral_oracle(&l, &set));
            }
        }
    }

    #[test]
    fn star_union_examples() {
        let sq = square();
        let inc = star_union(&sq, 0, 1).unwrap();
        let sub = inc.source();
        assert_eq!(sub.vertex_count(), 4);
        assert_eq!(sub.edges().len(), 3);
        assert!(sub.is_connected());
        assert!(!sq.are_adjacent(0, 2));
        assert!(star_union(&sq, 0, 2).is_err());
        let t = Arc::new(simplex(&["a", "b", "c"]));
        assert_eq!(star_union(&t, 0, 2).unwrap().source().simplex_count(), 7);
        let c6 = Arc::new(cycle(6, "c"));
        let p = star_union(&c6, 2, 3).unwrap();
        assert_eq!((p.source().vertex_count(), p.source().edges().len()), (4, 3));
    }

    #[test]
    fn barycentric_examples() {
        let e = Arc::new(simplex(&["u", "v"]));
        let r = barycentric(e, 1).unwrap();
        assert_eq!(r.subdivided().edges().len(), 2);
        let mid = r.subdivided().vertex_index("{u,v}").unwrap();
        assert_eq!(r.original().vertex_name(r.approximation.apply(mid)), "u");

        let r2 = barycentric(square(), 2).unwrap();
        let sd2 = r2.subdivided();
        assert_eq!((sd2.vertex_count(), sd2.edges().len()), (16, 16));
        assert!(sd2.is_connected() && sd2.neighbors(0).len() == 2);

        let t = barycentric(Arc::new(simplex(&["a", "b", "c"])), 1).unwrap();
        assert_eq!(t.subdivided().simplices_of_dim(2).len(), 6);
        assert!(barycentric(square(), 3).is_err());
    }

    #[test]
    fn second_barycentric_composite_rule() {
        let r2 = barycentric(Arc::new(simplex(&["a", "b", "c"])), 2).unwrap();
        let sd2 = r2.subdivided();
        for v in 0..sd2.vertex_count() {
            // names look like {{b},{a,b}}: the first listed member is σ₀
            let name = sd2.vertex_name(v);
            let sigma0 = &name[2..name.find('}').unwrap()];
            let least = sigma0.split(',').min().unwrap();
            assert_eq!(r2.original().vertex_name(r2.approximation.apply(v)), least, "{name}");
        }
    }

    #[test]
    fn suitability() {
        let id = SubdivisionRecord::identity(square());
        let s = id.is_suitable();
        assert!(!s.suitable && s.witness.is_some());
        assert!(barycentric(square(), 2).unwrap().is_suitable().suitable);
        assert!(barycentric(Arc::new(simplex(&["a", "b", "c"])), 2).unwrap().is_suitable().suitable);
        assert!(!barycentric(square(), 1).unwrap().is_suitable().suitable);
    }
}
