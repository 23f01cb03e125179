use std::fmt;

use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::error::{Error, Result};

/// An element `x · ρʳ` of `S_N ≀ C_n`, with `x ∈ (S_N)ⁿ` and the rotor `r`
/// stored on the right.
///
/// Conjugation by `ρ` moves coordinate `i` to `i + 1 (mod n)`, so
/// `(x, r)(y, s) = (x · ρʳ y ρ⁻ʳ, r + s)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WreathElement {
    base: Vec<Permutation>,
    rotor: usize,
}

impl WreathElement {
    pub fn identity(degree: usize, n: usize) -> Self {
        assert!(n >= 1);
        WreathElement { base: vec![Permutation::identity(degree); n], rotor: 0 }
    }

    pub fn new(base: Vec<Permutation>, rotor: usize) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::Invalid("wreath element needs at least one coordinate".into()));
        }
        let d = base[0].degree();
        if base.iter().any(|p| p.degree() != d) {
            return Err(Error::Invalid("wreath coordinates of different degrees".into()));
        }
        let n = base.len();
        Ok(WreathElement { base, rotor: rotor % n })
    }

    /// The generator `ρ` of the cyclic quotient.
    pub fn rho(degree: usize, n: usize) -> Self {
        WreathElement { base: vec![Permutation::identity(degree); n], rotor: 1 % n }
    }

    /// `α_i`: `α` in coordinate `i ∈ {1..n}`, identity elsewhere.
    pub fn coordinate(alpha: &Permutation, i: usize, n: usize) -> Self {
        assert!((1..=n).contains(&i), "coordinate index {i} outside 1..={n}");
        let mut base = vec![Permutation::identity(alpha.degree()); n];
        base[i - 1] = alpha.clone();
        WreathElement { base, rotor: 0 }
    }

    pub fn copies(&self) -> usize {
        self.base.len()
    }

    pub fn degree(&self) -> usize {
        self.base[0].degree()
    }

    pub fn rotor(&self) -> usize {
        self.rotor
    }

    pub fn base(&self) -> &[Permutation] {
        &self.base
    }

    pub fn is_identity(&self) -> bool {
        self.rotor == 0 && self.base.iter().all(Permutation::is_identity)
    }

    fn shifted(y: &[Permutation], r: usize) -> impl Iterator<Item = &Permutation> + '_ {
        let n = y.len();
        (0..n).map(move |i| &y[(i + n - r) % n])
    }

    pub fn mul(&self, other: &WreathElement) -> WreathElement {
        let n = self.copies();
        assert_eq!(n, other.copies(), "wreath products of different sizes");
        let base = self.base.iter().zip(Self::shifted(&other.base, self.rotor)).map(|(x, y)| x * y).collect();
        WreathElement { base, rotor: (self.rotor + other.rotor) % n }
    }

    pub fn inverse(&self) -> WreathElement {
        // (x, r)⁻¹ = (ρ⁻ʳ x⁻¹ ρʳ, -r)
        let n = self.copies();
        let back = (n - self.rotor) % n;
        let inv: Vec<Permutation> = self.base.iter().map(Permutation::inverse).collect();
        let base = Self::shifted(&inv, back).cloned().collect();
        WreathElement { base, rotor: back }
    }

    pub fn pow(&self, e: i64) -> WreathElement {
        let b = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = WreathElement::identity(self.degree(), self.copies());
        let mut sq = b;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.base.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]·ρ^{}", parts.join(", "), self.rotor)
    }
}

/// The four wreath elements `a = ρ`, `b = αₙρ⁻¹αₙ⁻¹`,
/// `c = αₙβₖρβₖ⁻¹αₙ⁻¹`, `d = βₖρ⁻¹βₖ⁻¹` for `1 ≤ k < n`.
///
/// `aʲbʲcʲdʲ` is `[α,β]` in coordinate `k` when `j ≡ k (mod n)` and the
/// identity otherwise.
pub fn build_pqrs(alpha: &Permutation, beta: &Permutation, k: usize, n: usize) -> Result<[WreathElement; 4]> {
    if !(1 <= k && k < n) {
        return Err(Error::Precondition(format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    if alpha.degree() != beta.degree() {
        return Err(Error::Invalid("alpha and beta have different degrees".into()));
    }
    let deg = alpha.degree();
    let rho = WreathElement::rho(deg, n);
    let rho_inv = rho.inverse();
    let alpha_n = WreathElement::coordinate(alpha, n, n);
    let beta_k = WreathElement::coordinate(beta, k, n);
    let a = rho.clone();
    let b = alpha_n.mul(&rho_inv).mul(&alpha_n.inverse());
    let c = alpha_n.mul(&beta_k).mul(&rho).mul(&beta_k.inverse()).mul(&alpha_n.inverse());
    let d = beta_k.mul(&rho_inv).mul(&beta_k.inverse());
    Ok([a, b, c, d])
}
