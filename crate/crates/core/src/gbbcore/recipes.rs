use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::{FiniteQuotient, GbbPresentation, QuotientMode};
use crate::covers::{pullback, DeckGroup, DirEdge, RegularCover};
use crate::error::{Error, Result};
use crate::finitegroups::{build_pqrs, ore_commutator, GroupDesc, GroupElem, Permutation, WreathElement};
use crate::intsets::PeriodicSet;
use crate::simplicial::{subdivide_graph_edges, Graph, GraphSubdivision, SimplicialMap};

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The classifying cocycle of a `p`-fold cyclic cover as a map to `𝔽_p`,
/// for `S = pℤ`.
pub fn cocycle_recipe(pres: impl Into<Arc<GbbPresentation>>) -> Result<FiniteQuotient> {
    let pres = pres.into();
    let cover = pres.cover();
    let deck = cover.deck();
    let p = deck.order();
    if !is_prime(p) {
        return Err(Error::Precondition(format!("deck group has order {p}, not a prime")));
    }
    if *pres.s() != PeriodicSet::multiples(p as u64) {
        return Err(Error::Precondition(format!("S = {} but the recipe needs S = {p}Z", pres.s())));
    }
    // t = least non-identity element; t^k ↦ k
    let t = 1;
    let mut log = vec![0u64; p];
    let mut x = t;
    for k in 1..p as u64 {
        log[x] = k;
        x = deck.mul(x, t);
    }
    let target = GroupDesc::cyclic(p as u64);
    let theta: Vec<(DirEdge, GroupElem)> = pres
        .base()
        .edges()
        .into_iter()
        .map(|(u, v)| Ok(((u, v), GroupElem::Abelian(vec![log[cover.label(u, v)?]]))))
        .collect::<Result<_>>()?;
    FiniteQuotient::new(pres, target, &theta, QuotientMode::AbelianExact)
}

/// Appends the `H₁(BB_L; ℤ/m)` coordinate `φ(a_(x,y)) = y - x`, written in
/// the sum-zero submodule by dropping the last vertex. `m` defaults to the
/// target exponent.
pub fn hw_product_quotient(q: &FiniteQuotient, m: Option<u64>) -> Result<FiniteQuotient> {
    let pres = q.presentation().clone();
    let l = pres.base();
    let m = m.unwrap_or_else(|| q.target().exponent());
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let k = l.vertex_count().saturating_sub(1);
    let phi = |x: usize, y: usize| {
        let mut v = vec![0u64; k];
        if y < k {
            v[y] = (v[y] + 1) % m;
        }
        if x < k {
            v[x] = (v[x] + m - 1) % m;
        }
        v
    };
    let theta = q.theta_list();
    match q.target() {
        GroupDesc::Abelian { factors } => {
            let mut fs = factors.clone();
            fs.extend(std::iter::repeat_n(m, k));
            let new: Vec<(DirEdge, GroupElem)> = theta
                .into_iter()
                .map(|((x, y), g)| {
                    let GroupElem::Abelian(mut v) = g else { unreachable!("abelian target") };
                    v.extend(phi(x, y));
                    ((x, y), GroupElem::Abelian(v))
                })
                .collect();
            FiniteQuotient::new(pres, GroupDesc::Abelian { factors: fs }, &new, QuotientMode::AbelianExact)
        }
        t => {
            let target = GroupDesc::Product(vec![t.clone(), GroupDesc::Abelian { factors: vec![m; k] }]);
            let new: Vec<(DirEdge, GroupElem)> = theta
                .into_iter()
                .map(|((x, y), g)| ((x, y), GroupElem::Tuple(vec![g, GroupElem::Abelian(phi(x, y))])))
                .collect();
            FiniteQuotient::new(pres, target, &new, q.mode())
        }
    }
}

/// Precomposes `θ` with `f: L′ → L`, over the pulled-back cover (its base
/// component when disconnected). Collapsed edges map to the identity.
pub fn pullback_quotient(q: &FiniteQuotient, f: &SimplicialMap, mode: QuotientMode) -> Result<FiniteQuotient> {
    let pres = q.presentation();
    let pb = pullback(pres.cover(), f)?;
    let cover: RegularCover = if pb.components.len() == 1 { pb.cover } else { pb.component_cover()? };
    let s = pres.s().clone();
    let new_pres = GbbPresentation::new(cover, s)?;
    let t = q.target();
    let theta: Vec<(DirEdge, GroupElem)> = f
        .source()
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (f.apply(u), f.apply(v));
            ((u, v), if a == b { t.identity() } else { q.theta((a, b)).clone() })
        })
        .collect();
    FiniteQuotient::new(new_pres, t.clone(), &theta, mode)
}

/// Inputs of the wreath-product labelling.
#[derive(Clone, Debug)]
pub struct WreathInput {
    /// `Γ̄`; each edge carries its stored orientation.
    pub graph: Graph,
    /// `σ(e)` per edge of `Γ̄`, even permutations of one degree `N`.
    pub sigma: Vec<Permutation>,
    /// Spanning-tree edges of `Γ̄`, whose labels must be trivial.
    pub tree: Vec<usize>,
    pub r: usize,
    pub n: usize,
    /// `S₀ ⊆ {0..n-1}` with `0 ∈ S₀`; `S = S₀ + nℤ`.
    pub s0: BTreeSet<u64>,
    pub seed: u64,
    pub mode: QuotientMode,
}

/// The subdivided graph, its cover and the product labelling `μ̲`.
#[derive(Clone, Debug)]
pub struct WreathRecipe {
    pub subdivision: GraphSubdivision,
    pub quotient: FiniteQuotient,
    /// `{1..n-1} ∖ S₀`, one wreath factor each.
    pub ks: Vec<usize>,
    /// `(α(e), β(e))` with `[α, β] = σ(e)`.
    pub commutators: Vec<(Permutation, Permutation)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WreathSummary {
    pub degree: usize,
    pub n: usize,
    pub r: usize,
    pub ks: Vec<usize>,
    pub commutators: Vec<(String, String, String)>,
}

impl WreathRecipe {
    pub fn summary(&self) -> WreathSummary {
        WreathSummary {
            degree: self.commutators.first().map_or(0, |(a, _)| a.degree()),
            n: match self.quotient.target() {
                GroupDesc::Product(fs) => match fs.first() {
                    Some(GroupDesc::Wreath { n, .. }) => *n,
                    _ => 0,
                },
                _ => 0,
            },
            r: self.subdivision.parts(),
            ks: self.ks.clone(),
            commutators: self
                .commutators
                .iter()
                .map(|(a, b)| (a.commutator(b).to_string(), a.to_string(), b.to_string()))
                .collect(),
        }
    }
}

pub fn wreath_recipe(input: &WreathInput) -> Result<WreathRecipe> {
    let WreathInput { graph, sigma, tree, r, n, s0, seed, mode } = input;
    let (r, n) = (*r, *n);
    if r < 4 {
        return Err(Error::Precondition(format!("each edge needs at least 4 parts, got r = {r}")));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if !s0.contains(&0) {
        return Err(Error::Precondition("S0 must contain 0 (normalize S first)".into()));
    }
    if s0.iter().any(|&s| s >= n as u64) {
        return Err(Error::Precondition(format!("S0 must lie in 0..{n}")));
    }
    if sigma.len() != graph.edges().len() {
        return Err(Error::Precondition("one sigma label per edge is required".into()));
    }
    let degree = sigma.first().map_or(1, Permutation::degree);
    if sigma.iter().any(|s| s.degree() != degree) {
        return Err(Error::MixedParents);
    }
    if let Some(&e) = tree.iter().find(|&&e| !sigma[e].is_identity()) {
        return Err(Error::Precondition(format!("tree edge {e} carries a nontrivial label")));
    }
    if sigma.iter().any(|s| !s.is_even()) {
        return Err(Error::OddPermutation);
    }
    let commutators = sigma.iter().map(|s| ore_commutator(s, *seed)).collect::<Result<Vec<_>>>()?;
    let ks: Vec<usize> = (1..n).filter(|k| !s0.contains(&(*k as u64))).collect();

    let sub = subdivide_graph_edges(graph, r)?;
    let nontrivial: Vec<Permutation> = sigma.iter().filter(|s| !s.is_identity()).cloned().collect();
    let deck = DeckGroup::new(degree, nontrivial)?;
    let labels: Vec<(DirEdge, Permutation)> =
        (0..graph.edges().len()).map(|k| (sub.fine_edge(k, 1), sigma[k].clone())).collect();
    let cover = RegularCover::build(sub.subdivided().clone(), deck, &labels, 0)?;
    let s = PeriodicSet::from_residues(n as u64, s0.iter().map(|&x| x as i64));
    let pres = GbbPresentation::new(cover, s)?;

    let quads: Vec<Vec<[WreathElement; 4]>> = commutators
        .iter()
        .map(|(a, b)| ks.iter().map(|&k| build_pqrs(a, b, k, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let target = GroupDesc::Product(vec![GroupDesc::Wreath { degree, n }; ks.len()]);
    let mut theta = Vec::new();
    for (k, quad) in quads.iter().enumerate() {
        for i in 1..=r {
            let label = GroupElem::Tuple(
                quad.iter()
                    .map(|q| GroupElem::Wreath(if i <= 4 { q[i - 1].clone() } else { WreathElement::identity(degree, n) }))
                    .collect(),
            );
            theta.push((sub.fine_edge(k, i), label));
        }
    }
    let quotient = FiniteQuotient::new(pres, target, &theta, *mode)?;
    Ok(WreathRecipe { subdivision: sub, quotient, ks, commutators })
}
