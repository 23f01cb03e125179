//! Named example inputs shared by tests, the CLI and the FFI layer.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::covers::{DeckGroup, RegularCover};
use crate::error::{Error, Result};
use crate::finitegroups::{build_pqrs, GroupDesc, GroupElem, Permutation};
use crate::gbbcore::{cocycle_recipe, FiniteQuotient, GbbPresentation, QuotientMode, WreathInput};
use crate::intsets::PeriodicSet;
use crate::simplicial::{cycle, Graph, SimplicialComplex};

/// The boundary of a square on `w, x, y, z`.
pub fn square() -> SimplicialComplex {
    SimplicialComplex::new(&["w", "x", "y", "z"], &[vec!["w", "x"], vec!["x", "y"], vec!["y", "z"], vec!["z", "w"]])
        .expect("square")
}

/// The connected double cover of the square: `d = (z, w)` carries the
/// nontrivial deck element.
pub fn square_cover() -> RegularCover {
    let deck = DeckGroup::cyclic(2);
    let t = deck.element(1).clone();
    RegularCover::build(square(), deck, &[((3, 0), t)], 0).expect("square cover")
}

/// `G_L^M(2ℤ)` for the square with edges `a = (w,x)`, `b = (x,y)`, `c = (y,z)`, `d = (z,w)`.
pub fn square_presentation() -> GbbPresentation {
    GbbPresentation::new(square_cover(), PeriodicSet::multiples(2))
        .expect("2Z contains 0")
        .with_edge_names(&[((0, 1), "a"), ((1, 2), "b"), ((2, 3), "c"), ((3, 0), "d")])
}

pub const SQUARE_EDGES: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (3, 0)];

/// The map to `𝔽₂` sending the edges in `outside` (a subset of `"abcd"`) to 1.
pub fn square_index_two(outside: &str) -> Result<FiniteQuotient> {
    let theta: Vec<_> = SQUARE_EDGES
        .iter()
        .zip("abcd".chars())
        .map(|(&e, ch)| (e, GroupElem::Abelian(vec![outside.contains(ch) as u64])))
        .collect();
    FiniteQuotient::new(Arc::new(square_presentation()), GroupDesc::cyclic(2), &theta, QuotientMode::AbelianExact)
}

/// All fifteen nonempty subsets of `"abcd"`, in binary order.
pub fn square_subsets() -> Vec<String> {
    (1u32..16).map(|m| "abcd".chars().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, c)| c).collect()).collect()
}

/// `H₁(G; 𝔽₂) ≅ (C₂)⁴` with `a, b, c, d` the standard basis.
pub fn square_index_sixteen() -> FiniteQuotient {
    let theta: Vec<_> = SQUARE_EDGES
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let mut v = vec![0; 4];
            v[i] = 1;
            (e, GroupElem::Abelian(v))
        })
        .collect();
    FiniteQuotient::new(
        Arc::new(square_presentation()),
        GroupDesc::Abelian { factors: vec![2; 4] },
        &theta,
        QuotientMode::AbelianExact,
    )
    .expect("index-16 quotient")
}

/// The `p = 2` cocycle quotient of the square.
pub fn square_cocycle() -> FiniteQuotient {
    cocycle_recipe(Arc::new(square_presentation())).expect("cocycle recipe")
}

/// A 6-cycle with a connected 3-fold cyclic cover and `S = 3ℤ`.
pub fn hexagon_triple_presentation() -> GbbPresentation {
    let deck = DeckGroup::cyclic(3);
    let t = deck.element(1).clone();
    let cover = RegularCover::build(cycle(6, "h"), deck, &[((5, 0), t)], 0).expect("hexagon cover");
    GbbPresentation::new(cover, PeriodicSet::multiples(3)).expect("3Z contains 0")
}

/// The element quadruple with `α = (1 2)`, `β = (1 3)` in `S₃`.
pub fn pqrs(n: usize, k: usize) -> Result<(GroupDesc, Vec<GroupElem>)> {
    let alpha = Permutation::from_cycles(3, &[&[1, 2]])?;
    let beta = Permutation::from_cycles(3, &[&[1, 3]])?;
    let quad = build_pqrs(&alpha, &beta, k, n)?;
    Ok((GroupDesc::Wreath { degree: 3, n }, quad.into_iter().map(GroupElem::Wreath).collect()))
}

/// A rose whose petals carry the given 3-cycles in `A₄`, `S = 2ℤ`.
pub fn rose_wreath_input(petals: usize, r: usize, loop_bound: Option<usize>) -> WreathInput {
    let labels = [
        Permutation::from_cycles(4, &[&[1, 2, 3]]).expect("3-cycle"),
        Permutation::from_cycles(4, &[&[2, 3, 4]]).expect("3-cycle"),
    ];
    WreathInput {
        graph: Graph::rose(petals),
        sigma: (0..petals).map(|i| labels[i % 2].clone()).collect(),
        tree: vec![],
        r,
        n: 2,
        s0: BTreeSet::from([0]),
        seed: 7,
        mode: QuotientMode::Bounded { loop_bound },
    }
}

/// The trivial cover of `L` with `θ` to the trivial group and `S = ℤ`.
pub fn trivial_quotient(l: SimplicialComplex) -> FiniteQuotient {
    let cover = RegularCover::build(l, DeckGroup::trivial(), &[], 0).expect("trivial cover");
    let pres = GbbPresentation::new(cover, PeriodicSet::integers()).expect("Z contains 0");
    FiniteQuotient::new(Arc::new(pres), GroupDesc::trivial(), &[], QuotientMode::AbelianExact).expect("trivial quotient")
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureInfo {
    pub name: &'static str,
    pub description: &'static str,
}

pub const FIXTURES: &[FixtureInfo] = &[
    FixtureInfo { name: "square", description: "boundary of a square, double cover through d, S = 2Z" },
    FixtureInfo { name: "square-index16", description: "square with the (C2)^4 quotient (alias s9-index16)" },
    FixtureInfo { name: "square-cocycle", description: "square with the F2 cocycle quotient" },
    FixtureInfo {
        name: "square-index2-<subset>",
        description: "square with the F2 quotient sending the edges in <subset> of abcd to 1",
    },
    FixtureInfo { name: "hexagon", description: "6-cycle, 3-fold cyclic cover, S = 3Z, F3 cocycle quotient" },
    FixtureInfo { name: "rose-wreath", description: "one-petal rose subdivided 4 times, wreath labelling, S = 2Z" },
    FixtureInfo { name: "pqrs", description: "the quadruple p, q, r, s in S3 wr Cn (rset only; takes --n and --k)" },
];

fn canonical(name: &str) -> &str {
    match name {
        "s9" => "square",
        "s9-index16" => "square-index16",
        "s9-cocycle" => "square-cocycle",
        _ => name,
    }
}

fn index_two_subset(name: &str) -> Option<&str> {
    name.strip_prefix("square-index2-").or_else(|| name.strip_prefix("s9-index2-"))
}

/// Presentation of a named fixture.
pub fn presentation(name: &str) -> Result<GbbPresentation> {
    if index_two_subset(name).is_some() {
        return Ok(square_presentation());
    }
    match canonical(name) {
        "square" | "square-index16" | "square-cocycle" => Ok(square_presentation()),
        "hexagon" => Ok(hexagon_triple_presentation()),
        "rose-wreath" => Ok((**quotient(name)?.presentation()).clone()),
        _ => Err(Error::UnknownFixture(name.into())),
    }
}

/// The default quotient of a named fixture.
pub fn quotient(name: &str) -> Result<FiniteQuotient> {
    if let Some(subset) = index_two_subset(name) {
        if subset.is_empty() || !subset.chars().all(|c| "abcd".contains(c)) {
            return Err(Error::UnknownFixture(name.into()));
        }
        return square_index_two(subset);
    }
    match canonical(name) {
        "square" | "square-cocycle" => Ok(square_cocycle()),
        "square-index16" => Ok(square_index_sixteen()),
        "hexagon" => cocycle_recipe(Arc::new(hexagon_triple_presentation())),
        "rose-wreath" => Ok(crate::gbbcore::wreath_recipe(&rose_wreath_input(1, 4, None))?.quotient),
        _ => Err(Error::UnknownFixture(name.into())),
    }
}
