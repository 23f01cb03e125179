use std::collections::BTreeSet;
use std::sync::Arc;

use gbb::covers::DirEdge;
use gbb::finitegroups::{GroupDesc, GroupElem, Permutation};
use gbb::fixtures::{self, SQUARE_EDGES};
use gbb::gbbcore::{
    cocycle_recipe, hw_product_quotient, pullback_quotient, wreath_recipe, FiniteQuotient, GbbPresentation,
    QuotientMode, VerificationCertificate,
};
use gbb::intsets::PeriodicSet;
use gbb::simplicial::{collapse_map, subdivide_graph_edges};
use gbb::Error;

/// Independent oracle: θ over 𝔽₂ on the square is a homomorphism for any
/// choice of bits, and its kernel is torsion-free iff θ(abcd) = 1.
fn oracle_torsion_free(outside: &str) -> bool {
    outside.len() % 2 == 1
}

#[test]
fn index_two_quotients_of_the_square() {
    let mut tf = 0;
    for subset in fixtures::square_subsets() {
        let q = fixtures::square_index_two(&subset).unwrap();
        let k = q.kernel_torsion_free().unwrap();
        assert_eq!(k.torsion_free, oracle_torsion_free(&subset), "{subset}");
        tf += k.torsion_free as usize;
    }
    assert_eq!(tf, 8);
}

#[test]
fn cocycle_on_the_square() {
    let q = fixtures::square_cocycle();
    let bits: Vec<GroupElem> = SQUARE_EDGES.iter().map(|&e| q.theta(e).clone()).collect();
    assert_eq!(
        bits,
        vec![
            GroupElem::Abelian(vec![0]),
            GroupElem::Abelian(vec![0]),
            GroupElem::Abelian(vec![0]),
            GroupElem::Abelian(vec![1])
        ]
    );
    assert!(q.kernel_torsion_free().unwrap().torsion_free);
    assert!(matches!(q.certificate(), VerificationCertificate::AbelianExact { passed: true, .. }));
}

#[test]
fn cocycle_preconditions() {
    let c = fixtures::square_cover();
    let p = GbbPresentation::new(c, PeriodicSet::multiples(3)).unwrap();
    assert!(matches!(cocycle_recipe(Arc::new(p)), Err(Error::Precondition(_))));
    let hex = cocycle_recipe(Arc::new(fixtures::hexagon_triple_presentation())).unwrap();
    assert!(hex.certificate().passed());
    assert!(hex.kernel_torsion_free().unwrap().torsion_free);
}

#[test]
fn stabilizer_images() {
    let q16 = fixtures::square_index_sixteen();
    let abcd = q16.presentation().parse_loop("a b c d").unwrap();
    let class = q16.power_image(&abcd, 1);
    for j in [1, 3, -1] {
        let st = q16.stabilizer_image(j).unwrap();
        assert_eq!(st.image.order(), 2);
        assert!(st.image.contains(&class));
    }
    for j in [0, 2, 4] {
        assert_eq!(q16.stabilizer_image(j).unwrap().image.order(), 1);
    }
    let qa = fixtures::square_index_two("a").unwrap();
    assert_eq!(qa.stabilizer_image(1).unwrap().image.order(), 2);
}

#[test]
fn multiplicativity_and_linearity_over_a_period() {
    for q in [fixtures::square_index_sixteen(), fixtures::square_cocycle()] {
        let r1 = q.stabilizer_image(1).unwrap().rho;
        for j in 0..q.exponent_window() as i64 {
            let rj = q.stabilizer_image(j).unwrap().rho;
            for (g, x) in rj.iter().enumerate() {
                assert_eq!(*x, q.target().pow(&r1[g], j));
            }
        }
    }
}

#[test]
fn relators_die_under_exact_quotients() {
    for q in [fixtures::square_index_sixteen(), fixtures::square_cocycle(), fixtures::quotient("hexagon").unwrap()] {
        let p = q.presentation();
        let e = q.exponent_window();
        for r in p.relators_upto(e * p.s().period(), 12) {
            assert_eq!(q.power_image(&r.cycle, r.n), q.target().identity());
        }
    }
}

#[test]
fn exact_and_bounded_agree() {
    for outside in ["a", "ab", "abcd"] {
        let theta: Vec<(DirEdge, GroupElem)> = SQUARE_EDGES
            .iter()
            .zip("abcd".chars())
            .map(|(&e, ch)| (e, GroupElem::Abelian(vec![outside.contains(ch) as u64])))
            .collect();
        let p = Arc::new(fixtures::square_presentation());
        let exact = FiniteQuotient::new(p.clone(), GroupDesc::cyclic(2), &theta, QuotientMode::AbelianExact).unwrap();
        let closure =
            FiniteQuotient::new(p, GroupDesc::cyclic(2), &theta, QuotientMode::Bounded { loop_bound: None }).unwrap();
        assert!(exact.certificate().is_exact() && closure.certificate().is_exact());
    }
    // θ(a) = 1 in ℤ/4 is not a homomorphism: a²b²c²d² ↦ 2
    let theta = vec![((0, 1), GroupElem::Abelian(vec![1]))];
    let p = Arc::new(fixtures::square_presentation());
    for mode in [QuotientMode::AbelianExact, QuotientMode::Bounded { loop_bound: None }, QuotientMode::bounded()] {
        let q = FiniteQuotient::unverified(p.clone(), GroupDesc::cyclic(4), &theta, mode).unwrap();
        assert!(!q.certificate().passed(), "{mode:?}");
        assert!(q.certificate().witness().is_some());
        assert!(matches!(
            FiniteQuotient::new(p.clone(), GroupDesc::cyclic(4), &theta, mode),
            Err(Error::VerificationFailed(_))
        ));
    }
}

#[test]
fn loop_r_sets() {
    let q16 = fixtures::square_index_sixteen();
    let p = q16.presentation();
    let abcd = p.parse_loop("a b c d").unwrap();
    assert_eq!(q16.loop_r_set(&abcd).unwrap(), PeriodicSet::multiples(2));
    let twice: Vec<DirEdge> = abcd.iter().chain(&abcd).copied().collect();
    assert!(q16.loop_r_set(&twice).unwrap().is_integers());
    let flat = fixtures::square_index_two("ab").unwrap();
    assert!(matches!(flat.loop_r_set(&abcd), Err(Error::RSetMismatch { .. })));
}

#[test]
fn product_with_the_abelianization() {
    let qa = fixtures::square_index_two("a").unwrap();
    let hw = hw_product_quotient(&qa, None).unwrap();
    assert_eq!(hw.target(), &GroupDesc::Abelian { factors: vec![2, 2, 2, 2] });
    assert!(hw.kernel_torsion_free().unwrap().torsion_free);
    // a = (w, x): φ(a) = x - w
    assert_eq!(hw.theta((0, 1)), &GroupElem::Abelian(vec![1, 1, 1, 0]));

    let trivial = FiniteQuotient::new(
        Arc::new(fixtures::square_presentation()),
        GroupDesc::trivial(),
        &[],
        QuotientMode::AbelianExact,
    )
    .unwrap();
    let bb = hw_product_quotient(&trivial, Some(3)).unwrap();
    assert_eq!(bb.target(), &GroupDesc::Abelian { factors: vec![3, 3, 3] });
    assert_eq!(bb.theta((1, 2)), &GroupElem::Abelian(vec![0, 2, 1]));
}

#[test]
fn star_abelian_on_abelian_targets() {
    assert!(fixtures::square_index_sixteen().star_abelian_check().unwrap().holds);
}

#[test]
fn wreath_rose_petal() {
    let rec = wreath_recipe(&fixtures::rose_wreath_input(1, 4, None)).unwrap();
    let q = &rec.quotient;
    assert_eq!(rec.ks, vec![1]);
    assert!(q.certificate().passed() && q.certificate().is_exact());
    let petal: Vec<DirEdge> = (1..=4).map(|i| rec.subdivision.fine_edge(0, i)).collect();
    assert_eq!(q.loop_r_set(&petal).unwrap(), PeriodicSet::multiples(2));
    let thrice: Vec<DirEdge> = petal.iter().cycle().take(12).copied().collect();
    for j in -6..6 {
        assert_eq!(q.power_image(&thrice, j), q.target().identity());
    }
    assert!(q.kernel_torsion_free().unwrap().torsion_free);
    // adjacent edges e₁, e₂ carry a, b which need not commute
    let star = q.star_abelian_check().unwrap();
    assert!(!star.holds && star.witness.is_some());
}

#[test]
fn wreath_with_all_residues() {
    let mut input = fixtures::rose_wreath_input(1, 4, None);
    input.s0 = BTreeSet::from([0, 1]);
    let rec = wreath_recipe(&input).unwrap();
    assert!(rec.ks.is_empty());
    assert_eq!(rec.quotient.target().order(), Some(1));
    input.s0 = BTreeSet::from([1]);
    assert!(matches!(wreath_recipe(&input), Err(Error::Precondition(_))));
    input.s0 = BTreeSet::from([0]);
    input.r = 3;
    assert!(matches!(wreath_recipe(&input), Err(Error::Precondition(_))));
    input.r = 4;
    input.sigma = vec![Permutation::from_cycles(4, &[&[1, 2]]).unwrap()];
    assert!(matches!(wreath_recipe(&input), Err(Error::OddPermutation)));
}

#[test]
fn wreath_after_collapse_is_star_abelian() {
    let rec = wreath_recipe(&fixtures::rose_wreath_input(2, 4, Some(12))).unwrap();
    assert_eq!(rec.commutators.len(), 2);
    let fine = subdivide_graph_edges(rec.subdivision.original(), 12).unwrap();
    let f = collapse_map(&fine, &rec.subdivision).unwrap();
    let pulled = pullback_quotient(&rec.quotient, &f, QuotientMode::Bounded { loop_bound: Some(12) }).unwrap();
    assert!(pulled.star_abelian_check().unwrap().holds);
    assert!(pulled.kernel_torsion_free().unwrap().torsion_free);
}
