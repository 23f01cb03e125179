//! Finite regular covers `M → L` presented by deck-group edge labellings.
//!
//! The total space has vertices `(u, g)` for `u ∈ L⁰`, `g ∈ π`, and an edge
//! joining `(u, g)` to `(u′, g·label(u, u′))` over each edge of `L`. Deck
//! transformations act on the left, `h·(u, g) = (u, hg)`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finitegroups::{GroupDesc, GroupElem, Permutation, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::simplicial::{ComplexFile, SimplicialComplex, SimplicialMap};

/// A directed edge `(from, to)` of a complex.
pub type DirEdge = (usize, usize);

/// A finite permutation group with its elements enumerated.
///
/// Element `0` is the identity.
#[derive(Clone, Debug)]
pub struct DeckGroup {
    degree: usize,
    group: Subgroup,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
}

const TABLE_LIMIT: usize = 4096;

impl DeckGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::MixedParents);
        }
        let parent = GroupDesc::Symmetric { degree };
        let gens: Vec<GroupElem> = generators.into_iter().map(GroupElem::Perm).collect();
        let group = Subgroup::closure(&parent, &gens, DEFAULT_SUBGROUP_BOUND)?;
        let n = group.order();
        let perm = |i: usize| match &group.elements()[i] {
            GroupElem::Perm(p) => p.clone(),
            _ => unreachable!("deck elements are permutations"),
        };
        let index = |p: Permutation| group.index_of(&GroupElem::Perm(p)).expect("closed") as u32;
        let inverses = (0..n).map(|i| index(perm(i).inverse())).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for i in 0..n {
                let p = perm(i);
                for j in 0..n {
                    t.push(index(&p * &perm(j)));
                }
            }
            t
        });
        Ok(DeckGroup { degree, group, table, inverses })
    }

    /// `C_n` acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Self {
        let gen = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).expect("n-cycle");
        DeckGroup::new(n, vec![gen]).expect("cyclic group")
    }

    pub fn trivial() -> Self {
        DeckGroup::new(1, vec![]).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &Permutation {
        match &self.group.elements()[i] {
            GroupElem::Perm(p) => p,
            _ => unreachable!("deck elements are permutations"),
        }
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.group.index_of(&GroupElem::Perm(p.clone()))
    }

    pub fn generators(&self) -> Vec<usize> {
        self.group.generators().iter().map(|g| self.group.index_of(g).expect("generator in group")).collect()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index_of(&(self.element(a) * self.element(b))).expect("closed"),
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    pub fn exponent(&self) -> u64 {
        self.group.exponent()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.group
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// A finite regular cover with its base-lift bookkeeping.
#[derive(Clone, Debug)]
pub struct RegularCover {
    base: Arc<SimplicialComplex>,
    deck: DeckGroup,
    labels: HashMap<DirEdge, usize>,
    total: Arc<SimplicialComplex>,
    base_vertex: usize,
    lift_elem: Vec<usize>,
    path_words: Vec<Vec<DirEdge>>,
    loop_words: Vec<Option<Vec<DirEdge>>>,
    components: Vec<Vec<usize>>,
}

impl RegularCover {
    /// Builds the cover and requires its total space to be connected.
    pub fn build(
        base: impl Into<Arc<SimplicialComplex>>,
        deck: DeckGroup,
        labels: &[(DirEdge, Permutation)],
        base_vertex: usize,
    ) -> Result<Self> {
        let cover = Self::build_any(base.into(), deck, labels, base_vertex)?;
        if cover.components.len() > 1 {
            let generated = cover.loop_words.iter().filter(|w| w.is_some()).count();
            return Err(Error::DisconnectedCover { generated, order: cover.deck.order() });
        }
        Ok(cover)
    }

    /// Builds the cover without the connectivity requirement.
    fn build_any(
        base: Arc<SimplicialComplex>,
        deck: DeckGroup,
        labels: &[(DirEdge, Permutation)],
        base_vertex: usize,
    ) -> Result<Self> {
        if !base.is_connected() {
            return Err(Error::Precondition("base complex must be connected".into()));
        }
        if base_vertex >= base.vertex_count() {
            return Err(Error::UnknownVertex(base_vertex.to_string()));
        }
        let name = |v: usize| base.vertex_name(v).to_string();
        let mut lab: HashMap<DirEdge, usize> = HashMap::new();
        for &((u, v), ref p) in labels {
            if !base.are_adjacent(u, v) {
                return Err(Error::NotAdjacent(name(u), name(v)));
            }
            let g = deck
                .index_of(p)
                .ok_or_else(|| Error::Invalid(format!("label {p} on ({}, {}) is not a deck element", name(u), name(v))))?;
            for (e, x) in [((u, v), g), ((v, u), deck.inv(g))] {
                if let Some(&old) = lab.get(&e) {
                    if old != x {
                        return Err(Error::NotAntisymmetric(name(u), name(v)));
                    }
                }
                lab.insert(e, x);
            }
        }
        for (u, v) in base.edges() {
            lab.entry((u, v)).or_insert(0);
            lab.entry((v, u)).or_insert(0);
        }
        // labels must be a cocycle on every simplex for the simplices to lift
        for s in base.simplices_of_dim(2) {
            let (a, b, c) = (s[0], s[1], s[2]);
            if deck.mul(lab[&(a, b)], lab[&(b, c)]) != lab[&(a, c)] {
                return Err(Error::Invalid(format!(
                    "labels around triangle {:?} do not multiply to the identity",
                    base.name_simplex(&s)
                )));
            }
        }

        let n = deck.order();
        let idx = |u: usize, g: usize| u * n + g;
        let names: Vec<String> =
            (0..base.vertex_count()).flat_map(|u| (0..n).map(move |g| (u, g))).map(|(u, g)| format!("{}~{g}", name(u))).collect();
        let mut simplices = Vec::new();
        for s in base.maximal_simplices() {
            let u0 = s[0];
            for g in 0..n {
                simplices.push(s.iter().map(|&u| idx(u, if u == u0 { g } else { deck.mul(g, lab[&(u0, u)]) })).collect());
            }
        }
        let total = SimplicialComplex::from_indices(names, simplices)?;

        // spanning tree of L from the base vertex
        let parent = base.spanning_tree(base_vertex);
        let mut order = vec![base_vertex];
        let mut head = 0;
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); base.vertex_count()];
        for (u, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(u);
            }
        }
        while head < order.len() {
            let u = order[head];
            head += 1;
            order.extend(children[u].iter().copied());
        }
        let mut lift_elem = vec![0; base.vertex_count()];
        let mut path_words = vec![Vec::new(); base.vertex_count()];
        for &u in &order[1..] {
            let p = parent[u].expect("tree vertex");
            lift_elem[u] = deck.mul(lift_elem[p], lab[&(p, u)]);
            let mut w = path_words[p].clone();
            w.push((p, u));
            path_words[u] = w;
        }

        // BFS in M from ṽ₀ for loop words
        let mut back: Vec<Option<(usize, DirEdge)>> = vec![None; total.vertex_count()];
        let start = idx(base_vertex, 0);
        let mut seen = vec![false; total.vertex_count()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let (u, g) = (x / n, x % n);
            for &v in base.neighbors(u) {
                let y = idx(v, deck.mul(g, lab[&(u, v)]));
                if !seen[y] {
                    seen[y] = true;
                    back[y] = Some((x, (u, v)));
                    queue.push_back(y);
                }
            }
        }
        let loop_words = (0..n)
            .map(|g| {
                let mut y = idx(base_vertex, g);
                if !seen[y] {
                    return None;
                }
                let mut w = Vec::new();
                while let Some((x, e)) = back[y] {
                    w.push(e);
                    y = x;
                }
                w.reverse();
                Some(w)
            })
            .collect();
        let components = total.components();
        Ok(RegularCover {
            base,
            deck,
            labels: lab,
            total: Arc::new(total),
            base_vertex,
            lift_elem,
            path_words,
            loop_words,
            components,
        })
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn deck(&self) -> &DeckGroup {
        &self.deck
    }

    pub fn total(&self) -> &Arc<SimplicialComplex> {
        &self.total
    }

    pub fn base_vertex(&self) -> usize {
        self.base_vertex
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Connected components of the total space.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Deck label of a directed base edge.
    pub fn label(&self, u: usize, v: usize) -> Result<usize> {
        self.labels
            .get(&(u, v))
            .copied()
            .ok_or_else(|| Error::NotAdjacent(self.base.vertex_name(u).into(), self.base.vertex_name(v).into()))
    }

    /// Index of `(u, g)` in the total space.
    pub fn lift(&self, u: usize, g: usize) -> usize {
        u * self.deck.order() + g
    }

    /// `(u, g)` for a total-space vertex.
    pub fn project(&self, x: usize) -> (usize, usize) {
        (x / self.deck.order(), x % self.deck.order())
    }

    /// Deck element `g_u` with chosen lift `ũ = (u, g_u)`.
    pub fn chosen_lift(&self, u: usize) -> usize {
        self.lift_elem[u]
    }

    /// Tree path from the base vertex to `u`.
    pub fn path_word(&self, u: usize) -> &[DirEdge] {
        &self.path_words[u]
    }

    /// Loop at the base vertex whose lift runs `ṽ₀ → g·ṽ₀`, when `g` is reachable.
    pub fn loop_word(&self, g: usize) -> Option<&[DirEdge]> {
        self.loop_words[g].as_deref()
    }

    /// `η(u, u′) = g_u · label(u, u′) · g_{u′}⁻¹`.
    pub fn eta(&self, u: usize, v: usize) -> Result<usize> {
        let l = self.label(u, v)?;
        Ok(self.deck.mul(self.deck.mul(self.lift_elem[u], l), self.deck.inv(self.lift_elem[v])))
    }

    fn check_path(&self, word: &[DirEdge]) -> Result<()> {
        for w in word.windows(2) {
            if w[0].1 != w[1].0 {
                return Err(Error::NotALoop(format!("edges {:?} and {:?} do not meet", w[0], w[1])));
            }
        }
        for &(u, v) in word {
            self.label(u, v)?;
        }
        Ok(())
    }

    /// Product of labels along a directed edge path.
    pub fn label_product(&self, word: &[DirEdge]) -> Result<usize> {
        self.check_path(word)?;
        Ok(word.iter().fold(0, |acc, &(u, v)| self.deck.mul(acc, self.labels[&(u, v)])))
    }

    /// End of the lift of `word` starting at total-space vertex `start`.
    pub fn lift_path(&self, start: usize, word: &[DirEdge]) -> Result<usize> {
        self.check_path(word)?;
        let (u, g) = self.project(start);
        if let Some(&(a, _)) = word.first() {
            if a != u {
                return Err(Error::NotALoop("path does not start over the given vertex".into()));
            }
        }
        let end = word.last().map_or(u, |e| e.1);
        Ok(self.lift(end, self.deck.mul(g, self.label_product(word)?)))
    }

    /// Whether a closed path lifts to a closed path.
    pub fn lifts_to_loop(&self, word: &[DirEdge]) -> Result<bool> {
        if let (Some(f), Some(l)) = (word.first(), word.last()) {
            if f.0 != l.1 {
                return Err(Error::NotALoop("path is not closed".into()));
            }
        }
        Ok(self.label_product(word)? == 0)
    }

    /// The labels as `(edge, permutation)` pairs, one per undirected edge.
    pub fn label_list(&self) -> Vec<(DirEdge, Permutation)> {
        self.base.edges().into_iter().map(|(u, v)| ((u, v), self.deck.element(self.labels[&(u, v)]).clone())).collect()
    }

    pub fn to_file(&self) -> CoverFile {
        CoverFile {
            base: self.base.to_file(),
            deck: DeckFile {
                degree: self.deck.degree(),
                generators: self.deck.generators().iter().map(|&g| self.deck.element(g).clone()).collect(),
            },
            labels: self
                .label_list()
                .into_iter()
                .filter(|(_, p)| !p.is_identity())
                .map(|((u, v), perm)| LabelEntry {
                    edge: (self.base.vertex_name(u).into(), self.base.vertex_name(v).into()),
                    perm,
                })
                .collect(),
            base_vertex: self.base.vertex_name(self.base_vertex).into(),
        }
    }
}

/// On-disk form of a cover.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverFile {
    pub base: ComplexFile,
    pub deck: DeckFile,
    #[serde(default)]
    pub labels: Vec<LabelEntry>,
    pub base_vertex: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeckFile {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelEntry {
    pub edge: (String, String),
    pub perm: Permutation,
}

impl CoverFile {
    pub fn build(&self) -> Result<RegularCover> {
        let base = self.base.build()?;
        let deck = DeckGroup::new(self.deck.degree, self.deck.generators.clone())?;
        let labels = self
            .labels
            .iter()
            .map(|l| Ok(((base.vertex_index(&l.edge.0)?, base.vertex_index(&l.edge.1)?), l.perm.clone())))
            .collect::<Result<Vec<_>>>()?;
        let v = base.vertex_index(&self.base_vertex)?;
        RegularCover::build(base, deck, &labels, v)
    }
}

/// The pullback of a cover along a simplicial map, with its components.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub cover: RegularCover,
    /// Total-space components, each sorted.
    pub components: Vec<Vec<usize>>,
    /// Deck elements fixing the component of the base lift.
    pub stabilizer: Vec<usize>,
}

/// Pulls `cover` back along `f: L → Γ`; edges collapsed by `f` get trivial labels.
pub fn pullback(cover: &RegularCover, f: &SimplicialMap) -> Result<Pullback> {
    if **cover.base() != *f.target() {
        return Err(Error::Precondition("map does not land in the base of the cover".into()));
    }
    let l = f.source_arc().clone();
    let deck = cover.deck();
    let labels: Vec<(DirEdge, Permutation)> = l
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (f.apply(u), f.apply(v));
            let g = if a == b { 0 } else { cover.label(a, b).expect("simplicial map") };
            ((u, v), deck.element(g).clone())
        })
        .collect();
    let base_vertex = 0;
    let pb = RegularCover::build_any(l, deck.clone(), &labels, base_vertex)?;
    let stabilizer = (0..deck.order()).filter(|&g| pb.loop_word(g).is_some()).collect();
    Ok(Pullback { components: pb.components.clone(), cover: pb, stabilizer })
}

impl Pullback {
    /// The component through the base lift, as a connected cover whose deck
    /// group is the stabilizer and whose labels are the `η` values.
    pub fn component_cover(&self) -> Result<RegularCover> {
        let c = &self.cover;
        let deck = c.deck();
        let gens: Vec<Permutation> = self.stabilizer.iter().map(|&g| deck.element(g).clone()).collect();
        let sub = DeckGroup::new(deck.degree(), gens)?;
        let labels = c
            .base()
            .edges()
            .into_iter()
            .map(|(u, v)| Ok(((u, v), deck.element(c.eta(u, v)?).clone())))
            .collect::<Result<Vec<_>>>()?;
        RegularCover::build(c.base().clone(), sub, &labels, c.base_vertex())
    }
}

/// Names every edge label as `"u->v": perm` for reports.
pub fn describe_labels(cover: &RegularCover) -> BTreeMap<String, String> {
    cover
        .label_list()
        .into_iter()
        .map(|((u, v), p)| (format!("{}->{}", cover.base().vertex_name(u), cover.base().vertex_name(v)), p.to_string()))
        .collect()
}
