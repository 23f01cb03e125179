use std::collections::{BTreeSet, HashMap};

use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;
use serde::Serialize;

use super::QuotientCubeComplex;
use crate::simplicial::SimplicialComplex;

/// Which octahedralization a vertex link should be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LinkTag {
    /// `𝕊(L)`: height in `S`.
    Base,
    /// `𝕊(M)`: height outside `S` with `ρ_j` injective.
    Cover,
    /// `𝕊(M/ker ρ_j)` for a non-injective `ρ_j`.
    QuotientOfCover,
}

/// End of an edge at a vertex: `up` when the edge leaves the vertex upwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeEnd {
    pub edge: usize,
    pub up: bool,
}

#[derive(Clone, Debug)]
pub struct VertexLink {
    pub vertex: usize,
    pub height: usize,
    pub tag: LinkTag,
    pub ends: Vec<EdgeEnd>,
    pub edges: Vec<(usize, usize)>,
    /// Pairs of ends joined by more than one square.
    pub repeated: usize,
    expected: UnGraph<(usize, bool), ()>,
    labels: Vec<(usize, bool)>,
}

impl VertexLink {
    /// The flag complex on the link graph.
    pub fn complex(&self, y: &QuotientCubeComplex) -> SimplicialComplex {
        let names: Vec<String> =
            self.ends.iter().map(|e| format!("{}{}", y.edge_name(e.edge), if e.up { "+" } else { "-" })).collect();
        let mut simplices: Vec<Vec<usize>> = self.edges.iter().map(|&(a, b)| vec![a, b]).collect();
        simplices.extend((0..names.len()).map(|i| vec![i]));
        let graph = SimplicialComplex::from_indices(names.clone(), simplices).expect("link graph");
        SimplicialComplex::from_indices(names, graph.maximal_cliques()).expect("link flag complex")
    }

    /// Label-preserving isomorphism with the expected octahedralization.
    pub fn is_expected(&self) -> bool {
        let mut g = UnGraph::<(usize, bool), ()>::default();
        let nodes: Vec<_> = self.labels.iter().map(|&l| g.add_node(l)).collect();
        for &(a, b) in &self.edges {
            g.add_edge(nodes[a], nodes[b], ());
        }
        self.repeated == 0
            && g.node_count() == self.expected.node_count()
            && g.edge_count() == self.expected.edge_count()
            && is_isomorphic_matching(&g, &self.expected, |a, b| a == b, |_, _| true)
    }

    pub fn verify(&self) -> std::result::Result<(), String> {
        if self.repeated > 0 {
            return Err(format!("{} pairs of ends at vertex {} span several squares", self.repeated, self.vertex));
        }
        if !self.is_expected() {
            return Err(format!("link at vertex {} (height {}) is not {:?}", self.vertex, self.height, self.tag));
        }
        Ok(())
    }
}

/// The link of `v`: one vertex per edge end, one edge per square corner.
pub fn vertex_link(y: &QuotientCubeComplex, v: usize) -> VertexLink {
    let mut ends = Vec::new();
    let mut pos = HashMap::new();
    for &e in y.out_edges(v) {
        pos.insert((e, true), ends.len());
        ends.push(EdgeEnd { edge: e, up: true });
    }
    for &e in y.in_edges(v) {
        pos.insert((e, false), ends.len());
        ends.push(EdgeEnd { edge: e, up: false });
    }
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    let mut repeated = 0;
    for &(s, corner) in y.corners(v) {
        let [e1, e2, e3, e4] = y.squares()[s];
        let (a, b) = match corner {
            0 => (pos[&(e1, true)], pos[&(e2, true)]),
            1 => (pos[&(e1, false)], pos[&(e3, true)]),
            2 => (pos[&(e2, false)], pos[&(e4, true)]),
            _ => (pos[&(e3, false)], pos[&(e4, false)]),
        };
        let key = (a.min(b), a.max(b));
        if seen.insert(key) {
            edges.push(key);
        } else {
            repeated += 1;
        }
    }
    let height = y.vertex(v).height;
    let labels: Vec<(usize, bool)> = ends.iter().map(|e| (y.edge(e.edge).label, e.up)).collect();
    let (tag, expected) = expected_link(y, height);
    VertexLink { vertex: v, height, tag, ends, edges, repeated, expected, labels }
}

fn expected_link(y: &QuotientCubeComplex, j: usize) -> (LinkTag, UnGraph<(usize, bool), ()>) {
    let pres = y.quotient().presentation();
    let cover = pres.cover();
    let deck = cover.deck();
    let l = cover.base();
    let n = deck.order();
    let kernel: Vec<usize> = (0..n).filter(|&h| y.rho_power(h, j as i64) == 0).collect();
    let tag = if pres.s().contains(j as i64) {
        LinkTag::Base
    } else if kernel.len() == 1 {
        LinkTag::Cover
    } else {
        LinkTag::QuotientOfCover
    };
    let mut class = vec![usize::MAX; n];
    let mut classes = 0;
    for g in 0..n {
        if class[g] == usize::MAX {
            for &k in &kernel {
                class[deck.mul(k, g)] = classes;
            }
            classes += 1;
        }
    }
    let mut g = UnGraph::<(usize, bool), ()>::default();
    let node = |u: usize, c: usize, up: bool| (u * classes + c) * 2 + up as usize;
    let mut ids = Vec::new();
    for u in 0..l.vertex_count() {
        for _ in 0..classes {
            for up in [false, true] {
                ids.push(g.add_node((u, up)));
            }
        }
    }
    let mut seen = BTreeSet::new();
    for (u, v) in l.edges() {
        let lab = cover.label(u, v).expect("edge");
        for h in 0..n {
            let (a, b) = (class[h], class[deck.mul(h, lab)]);
            for su in [false, true] {
                for sv in [false, true] {
                    let (x, z) = (node(u, a, su), node(v, b, sv));
                    if seen.insert((x.min(z), x.max(z))) {
                        g.add_edge(ids[x], ids[z], ());
                    }
                }
            }
        }
    }
    (tag, g)
}

/// Checks every vertex link; returns the tags seen at each height.
pub fn check_links(y: &QuotientCubeComplex) -> std::result::Result<Vec<LinkTag>, String> {
    let mut tags = vec![None; y.wrap()];
    for v in 0..y.vertex_count() {
        let link = vertex_link(y, v);
        link.verify()?;
        tags[link.height] = Some(link.tag);
    }
    Ok(tags.into_iter().map(|t| t.expect("every height has vertices")).collect())
}
