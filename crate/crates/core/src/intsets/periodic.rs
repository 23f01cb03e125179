use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{gcd, lcm};
use crate::error::{Error, Result};

/// A subset of ℤ invariant under translation by its modulus.
///
/// Always stored with the least modulus (the period), so structural equality
/// is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPeriodic", into = "RawPeriodic")]
pub struct PeriodicSet {
    modulus: u64,
    residues: BTreeSet<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawPeriodic {
    modulus: u64,
    residues: Vec<i64>,
}

impl TryFrom<RawPeriodic> for PeriodicSet {
    type Error = Error;
    fn try_from(raw: RawPeriodic) -> Result<Self> {
        if raw.modulus == 0 {
            return Err(Error::Invalid("modulus must be at least 1".into()));
        }
        Ok(PeriodicSet::from_residues(raw.modulus, raw.residues))
    }
}

impl From<PeriodicSet> for RawPeriodic {
    fn from(s: PeriodicSet) -> Self {
        RawPeriodic { modulus: s.modulus, residues: s.residues.iter().map(|&r| r as i64).collect() }
    }
}

impl PeriodicSet {
    /// Residues are reduced modulo `modulus`; the result is normalized.
    pub fn from_residues<I: IntoIterator<Item = i64>>(modulus: u64, residues: I) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let m = modulus as i64;
        let residues = residues.into_iter().map(|r| r.rem_euclid(m) as u64).collect();
        PeriodicSet { modulus, residues }.normalized()
    }

    pub fn integers() -> Self {
        PeriodicSet::from_residues(1, [0])
    }

    pub fn empty() -> Self {
        PeriodicSet::from_residues(1, [])
    }

    /// `nℤ`.
    pub fn multiples(n: u64) -> Self {
        PeriodicSet::from_residues(n, [0])
    }

    /// Builds the set `{ j : pred(j) }` from one full period `0..modulus`.
    pub fn from_predicate(modulus: u64, mut pred: impl FnMut(i64) -> bool) -> Self {
        PeriodicSet::from_residues(modulus, (0..modulus as i64).filter(|&j| pred(j)))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The least `n > 0` with `S + n = S`.
    pub fn period(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        self.residues.iter().copied()
    }

    pub fn contains(&self, m: i64) -> bool {
        self.residues.contains(&(m.rem_euclid(self.modulus as i64) as u64))
    }

    pub fn is_integers(&self) -> bool {
        self.residues.len() as u64 == self.modulus
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    fn normalized(self) -> Self {
        let n = self.modulus;
        let mut best = n;
        for d in (1..=n).filter(|d| n % d == 0) {
            if self.residues.iter().all(|&r| self.residues.contains(&((r + d) % n))) {
                best = d;
                break;
            }
        }
        let residues = self.residues.iter().filter(|&&r| r < best).copied().collect();
        PeriodicSet { modulus: best, residues }
    }

    fn lift_to(&self, modulus: u64) -> BTreeSet<u64> {
        debug_assert_eq!(modulus % self.modulus, 0);
        (0..modulus).filter(|&r| self.residues.contains(&(r % self.modulus))).collect()
    }

    pub fn intersection(&self, other: &PeriodicSet) -> PeriodicSet {
        let m = lcm(self.modulus, other.modulus);
        let a = self.lift_to(m);
        let b = other.lift_to(m);
        PeriodicSet::from_residues(m, a.intersection(&b).map(|&r| r as i64))
    }

    pub fn union(&self, other: &PeriodicSet) -> PeriodicSet {
        let m = lcm(self.modulus, other.modulus);
        let a = self.lift_to(m);
        let b = other.lift_to(m);
        PeriodicSet::from_residues(m, a.union(&b).map(|&r| r as i64))
    }

    pub fn complement(&self) -> PeriodicSet {
        PeriodicSet::from_residues(
            self.modulus,
            (0..self.modulus).filter(|r| !self.residues.contains(r)).map(|r| r as i64),
        )
    }

    /// `S + k`.
    pub fn shift(&self, k: i64) -> PeriodicSet {
        PeriodicSet::from_residues(self.modulus, self.residues.iter().map(|&r| r as i64 + k))
    }

    pub fn is_subset(&self, other: &PeriodicSet) -> bool {
        self.intersection(other) == *self
    }

    /// Sorted members in the closed interval `[lo, hi]`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&m| self.contains(m)).collect()
    }

    /// Least non-negative member, if any.
    pub fn least_nonnegative(&self) -> Option<i64> {
        self.residues.iter().next().map(|&r| r as i64)
    }

    /// Union with its translates by multiples of `g`: `S + gℤ`.
    pub fn saturate(&self, g: u64) -> PeriodicSet {
        let g = gcd(g, self.modulus).max(1);
        let m = self.modulus;
        PeriodicSet::from_residues(
            m,
            (0..m).filter(|&r| (0..m / g).any(|t| self.residues.contains(&((r + t * g) % m)))).map(|r| r as i64),
        )
    }
}

impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integers() {
            return write!(f, "Z");
        }
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self
            .residues
            .iter()
            .map(|&r| if r == 0 { format!("{}Z", self.modulus) } else { format!("{}+{}Z", r, self.modulus) })
            .collect();
        write!(f, "{}", parts.join(" | "))
    }
}

impl std::str::FromStr for PeriodicSet {
    type Err = Error;

    /// Accepts `Z`, `empty`, `nZ`, `r+nZ` and unions joined by `|`, or the
    /// complement form `Z\(r+nZ)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("Z\\") {
            let inner = rest.trim().trim_start_matches('(').trim_end_matches(')');
            return Ok(inner.parse::<PeriodicSet>()?.complement());
        }
        match s {
            "Z" => return Ok(PeriodicSet::integers()),
            "empty" | "{}" => return Ok(PeriodicSet::empty()),
            _ => {}
        }
        let mut acc = PeriodicSet::empty();
        for part in s.split('|') {
            let part = part.trim();
            let body = part
                .strip_suffix('Z')
                .ok_or_else(|| Error::Parse(format!("periodic set term `{part}` must end in Z")))?;
            let (r, n) = match body.split_once('+') {
                Some((r, n)) => (r.trim(), n.trim()),
                None => ("0", body.trim()),
            };
            let n: u64 = if n.is_empty() { 1 } else { n.parse().map_err(|_| Error::Parse(format!("bad modulus in `{part}`")))? };
            let r: i64 = r.parse().map_err(|_| Error::Parse(format!("bad residue in `{part}`")))?;
            if n == 0 {
                return Err(Error::Parse("modulus must be positive".into()));
            }
            acc = acc.union(&PeriodicSet::from_residues(n, [r]));
        }
        Ok(acc)
    }
}
