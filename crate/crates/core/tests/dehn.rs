use std::sync::Arc;

use gbb::covers::{DeckGroup, RegularCover};
use gbb::dehn::{
    dehn_reduce, free_reduce, invert, is_freely_reduced, is_identity, small_cancellation_check, CyclicPresentation,
    ExponentSet, ExponentSetFile, Word,
};
use gbb::gbbcore::{cocycle_recipe, hw_product_quotient, GbbPresentation};
use gbb::intsets::{GodelSet, PeriodicSet};
use gbb::simplicial::cycle;
use gbb::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn two_z() -> CyclicPresentation {
    CyclicPresentation::new(13, ExponentSet::Periodic(PeriodicSet::multiples(2))).unwrap()
}

fn godel_02() -> CyclicPresentation {
    CyclicPresentation::new(13, ExponentSet::Godel(GodelSet::from_window([0, 2], 3).unwrap())).unwrap()
}

/// Exponent sums modulo the image of the relators: the abelianization is
/// `ℤ^l / ⟨g·(1,…,1)⟩` where `g` generates the subgroup spanned by `T`.
fn abelian_image_trivial(l: usize, g: i64, w: &[i32]) -> bool {
    let mut sums = vec![0i64; l];
    for &x in w {
        sums[x.unsigned_abs() as usize - 1] += x.signum() as i64;
    }
    let c = sums[0];
    sums.iter().all(|&s| s == c) && (c == 0 || (g != 0 && c % g == 0))
}

fn random_word(rng: &mut ChaCha8Rng, l: usize, len: usize) -> Word {
    (0..len)
        .map(|_| {
            let k = rng.gen_range(1..=l as i32);
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect()
}

#[test]
fn power_words_die_exactly_on_t() {
    for (p, member) in [(two_z(), (|n: i64| n % 2 == 0) as fn(i64) -> bool), (godel_02(), |n| [0, 1, 100, 101].contains(&n))]
    {
        for n in -15..=15 {
            assert_eq!(is_identity(&p, &p.power_word(n)).unwrap(), member(n), "n = {n}");
        }
    }
}

#[test]
fn products_of_conjugated_relators_reduce_to_nothing() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pres = [two_z(), godel_02()];
    for trial in 0..500 {
        let p = &pres[trial % 2];
        let exps = p.exponents_in_window(4).unwrap();
        let count = rng.gen_range(1..=4);
        let mut w = Vec::new();
        for _ in 0..count {
            let n = exps[rng.gen_range(0..exps.len())];
            let mut r = p.power_word(n);
            let shift = rng.gen_range(0..r.len());
            r.rotate_left(shift);
            if rng.gen_bool(0.5) {
                r = invert(&r);
            }
            let clen = rng.gen_range(0..=3);
            let g = random_word(&mut rng, 13, clen);
            w.extend_from_slice(&g);
            w.extend(r);
            w.extend(invert(&g));
        }
        assert!(dehn_reduce(p, &w).unwrap().is_empty(), "trial {trial}: {w:?}");
    }
}

#[test]
fn window_ratio_is_below_one_sixth() {
    for p in [two_z(), godel_02()] {
        let r = small_cancellation_check(&p, 6, 15).unwrap();
        assert!(r.holds && r.ratio < 1.0 / 6.0, "{r:?}");
    }
    let five = CyclicPresentation::new(5, ExponentSet::Periodic(PeriodicSet::multiples(2))).unwrap();
    assert!(!small_cancellation_check(&five, 6, 6).unwrap().holds);
    assert!(matches!(
        small_cancellation_check(&CyclicPresentation::new(13, ExponentSet::Periodic(PeriodicSet::multiples(7))).unwrap(), 6, 6),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn exponent_set_files() {
    let f: ExponentSetFile = serde_json::from_str(r#"{"modulus":2,"residues":[0]}"#).unwrap();
    assert!(f.build().unwrap().contains(4).unwrap());
    let f: ExponentSetFile = serde_json::from_str(r#"{"kind":"godel","S":[0,2],"known_digits":3}"#).unwrap();
    let t = f.build().unwrap();
    assert!(t.contains(101).unwrap() && t.contains(0).unwrap() && !t.contains(10).unwrap());
    let f: ExponentSetFile =
        serde_json::from_str(r#"{"kind":"godel","digits":[0],"known_digits":1,"include_zero":false}"#).unwrap();
    assert!(!f.build().unwrap().contains(0).unwrap());
    let f: ExponentSetFile = serde_json::from_str(r#"{"kind":"godel","S":[0,2]}"#).unwrap();
    assert!(f.build().unwrap().contains(10_100).is_ok());
    assert!(serde_json::from_str::<ExponentSetFile>(r#"{"kind":"cantor"}"#).unwrap().build().is_err());
}

/// The 12-gon with its connected double cover and `S = 2ℤ` is a quotient of
/// the presentation with relators `(a₁ⁿ⋯a₁₂ⁿ)²`; in its verified finite
/// quotients the power words have order at most 2.
#[test]
fn squared_relator_quotients_have_small_torsion() {
    let deck = DeckGroup::cyclic(2);
    let t = deck.element(1).clone();
    let cover = RegularCover::build(cycle(12, "v"), deck, &[((11, 0), t)], 0).unwrap();
    let pres = Arc::new(GbbPresentation::new(cover, PeriodicSet::multiples(2)).unwrap());
    let loop_word: Vec<(usize, usize)> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
    let cocycle = cocycle_recipe(pres).unwrap();
    let product = hw_product_quotient(&cocycle, Some(4)).unwrap();
    // the generators themselves are not all of order 2
    assert!(product.theta_list().iter().any(|(_, g)| product.target().order_of(g) == 4));
    for q in [cocycle, product] {
        assert!(q.certificate().passed());
        let tgt = q.target();
        assert!(q.kernel_torsion_free().unwrap().torsion_free);
        let w = q.exponent_window() as i64;
        for n in 0..w {
            let g = q.power_image(&loop_word, n);
            assert!(tgt.order_of(&g) <= 2, "n = {n}");
            assert!(tgt.is_identity(&tgt.pow(&g, 2)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_invariance(seed in any::<u64>(), len in 0usize..30, glen in 0usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = two_z();
        let mut w = random_word(&mut rng, 13, len);
        if rng.gen_bool(0.5) {
            let n = [-2i64, 2, 4][rng.gen_range(0..3)];
            let at = rng.gen_range(0..=w.len());
            let r = p.power_word(n);
            w.splice(at..at, r);
        }
        let g = random_word(&mut rng, 13, glen);
        let mut c = g.clone();
        c.extend_from_slice(&w);
        c.extend(invert(&g));
        prop_assert_eq!(is_identity(&p, &w).unwrap(), is_identity(&p, &c).unwrap());
    }

    #[test]
    fn reduction_agrees_with_the_abelian_image(seed in any::<u64>(), len in 0usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = two_z();
        let w = random_word(&mut rng, 13, len);
        let out = dehn_reduce(&p, &w).unwrap();
        prop_assert!(out.len() <= free_reduce(&w).len());
        prop_assert!(is_freely_reduced(&out));
        if out.is_empty() {
            prop_assert!(abelian_image_trivial(13, 2, &w));
        }
        if !abelian_image_trivial(13, 2, &w) {
            prop_assert!(!out.is_empty());
        }
        prop_assert_eq!(free_reduce(&free_reduce(&w)), free_reduce(&w));
    }
}
