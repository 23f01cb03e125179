use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Permutation;
use crate::error::{Error, Result};

/// Random candidates tried before falling back to exhaustive search.
const RANDOM_TRIES: usize = 20_000;
/// Largest degree searched exhaustively.
const EXHAUSTIVE_MAX_DEGREE: usize = 8;

/// Given `β`, returns `α` with `αβα⁻¹ = σβ` when `σβ` and `β` are conjugate.
/// Then `[α, β] = σ`.
fn conjugator(sigma: &Permutation, beta: &Permutation) -> Option<Permutation> {
    let target = sigma * beta;
    if target.cycle_type() != beta.cycle_type() {
        return None;
    }
    let mut from = beta.cycles();
    let mut to = target.cycles();
    from.sort_by_key(Vec::len);
    to.sort_by_key(Vec::len);
    let mut images = vec![0; sigma.degree()];
    for (b, c) in from.iter().zip(&to) {
        for (x, y) in b.iter().zip(c) {
            images[*x] = *y;
        }
    }
    Permutation::from_images(images).ok()
}

fn for_each_perm(n: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    // Heap's algorithm; stops when `f` returns true.
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    if f(&a) {
        return true;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            if f(&a) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Writes an even permutation as a commutator `αβα⁻¹β⁻¹`.
///
/// A seeded random search over `β` runs first, then an exhaustive sweep for
/// small degrees. The result is deterministic in `seed`.
pub fn ore_commutator(sigma: &Permutation, seed: u64) -> Result<(Permutation, Permutation)> {
    let n = sigma.degree();
    if sigma.is_identity() {
        return Ok((Permutation::identity(n), Permutation::identity(n)));
    }
    if !sigma.is_even() {
        return Err(Error::OddPermutation);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let beta = Permutation::random(n, &mut rng);
        if let Some(alpha) = conjugator(sigma, &beta) {
            return Ok((alpha, beta));
        }
    }
    if n <= EXHAUSTIVE_MAX_DEGREE {
        let mut found = None;
        for_each_perm(n, |imgs| {
            let beta = Permutation::from_images(imgs.to_vec()).expect("heap yields permutations");
            found = conjugator(sigma, &beta).map(|alpha| (alpha, beta));
            found.is_some()
        });
        if let Some(pair) = found {
            return Ok(pair);
        }
    }
    Err(Error::SearchExhausted(RANDOM_TRIES))
}
