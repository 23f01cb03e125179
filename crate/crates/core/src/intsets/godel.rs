use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::PeriodicSet;
use crate::error::{Error, Result};

/// Where the digit set `S ⊆ ℕ` comes from.
#[derive(Clone)]
enum Source {
    /// Members of `S` below `known_digits`; nothing is known beyond.
    Window { members: BTreeSet<u32>, known_digits: u32 },
    Oracle(Arc<dyn Fn(u32) -> bool + Send + Sync>),
}

/// The set `T(S)` of integers whose decimal digits are 0 or 1 and whose
/// `n`-th digit is 1 only when `n ∈ S`.
///
/// `0 = φ(∅)` is a member unless `include_zero` is switched off.
#[derive(Clone)]
pub struct GodelSet {
    source: Source,
    include_zero: bool,
}

impl fmt::Debug for GodelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            Source::Window { members, known_digits } => f
                .debug_struct("GodelSet")
                .field("S", members)
                .field("known_digits", known_digits)
                .field("include_zero", &self.include_zero)
                .finish(),
            Source::Oracle(_) => f.debug_struct("GodelSet").field("S", &"<oracle>").finish(),
        }
    }
}

/// Result of [`GodelSet::window`]: members below a bound plus the periodic
/// certificates `F_n = (T(S) ∩ [0, 2·10ⁿ]) + 10ⁿ⁺¹ℤ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GodelWindow {
    pub members: Vec<u64>,
    pub certificates: Vec<(u32, PeriodicSet)>,
}

/// Largest digit count that fits an `i64`/`u64` comfortably.
const MAX_DIGITS: u32 = 18;

impl GodelSet {
    /// `S` given explicitly; every digit below `known_digits` is decided.
    pub fn from_window<I: IntoIterator<Item = u32>>(members: I, known_digits: u32) -> Result<Self> {
        let members: BTreeSet<u32> = members.into_iter().collect();
        if let Some(&m) = members.iter().next_back() {
            if m >= known_digits {
                return Err(Error::Invalid(format!("digit {m} lies outside the declared window of {known_digits} digits")));
            }
        }
        Ok(GodelSet { source: Source::Window { members, known_digits }, include_zero: true })
    }

    /// Finite `S`; every digit is decided (absent digits are not members).
    pub fn finite<I: IntoIterator<Item = u32>>(members: I) -> Self {
        let members: BTreeSet<u32> = members.into_iter().collect();
        GodelSet { source: Source::Window { members, known_digits: MAX_DIGITS + 1 }, include_zero: true }
    }

    pub fn from_oracle(oracle: impl Fn(u32) -> bool + Send + Sync + 'static) -> Self {
        GodelSet { source: Source::Oracle(Arc::new(oracle)), include_zero: true }
    }

    /// Toggles the `φ(∅) = 0` convention.
    pub fn with_zero(mut self, include_zero: bool) -> Self {
        self.include_zero = include_zero;
        self
    }

    pub fn includes_zero(&self) -> bool {
        self.include_zero
    }

    fn known_digits(&self) -> u32 {
        match &self.source {
            Source::Window { known_digits, .. } => (*known_digits).min(MAX_DIGITS + 1),
            Source::Oracle(_) => MAX_DIGITS + 1,
        }
    }

    fn digit_allowed(&self, n: u32) -> Result<bool> {
        match &self.source {
            Source::Window { members, known_digits } => {
                if n >= *known_digits {
                    return Err(Error::WindowInsufficient { needed: n as i64, available: *known_digits as i64 - 1 });
                }
                Ok(members.contains(&n))
            }
            Source::Oracle(f) => Ok(f(n)),
        }
    }

    /// Membership of `m` in `T(S)`; errors when `m` has more digits than the
    /// window decides.
    pub fn contains(&self, m: i64) -> Result<bool> {
        if m < 0 {
            return Ok(false);
        }
        if m == 0 {
            return Ok(self.include_zero);
        }
        let mut x = m as u64;
        let mut n = 0u32;
        // Any digit other than 0/1 decides non-membership regardless of S.
        let mut digits = Vec::new();
        while x > 0 {
            let d = x % 10;
            if d > 1 {
                return Ok(false);
            }
            digits.push((n, d));
            x /= 10;
            n += 1;
        }
        for (n, d) in digits {
            if d == 1 && !self.digit_allowed(n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sorted members in `[0, bound)`.
    pub fn members_below(&self, bound: u64) -> Result<Vec<u64>> {
        let mut digits = Vec::new();
        let mut p: u64 = 1;
        let mut n = 0u32;
        while p < bound {
            if n > MAX_DIGITS {
                return Err(Error::Invalid("bound too large".into()));
            }
            if n >= self.known_digits() {
                return Err(Error::WindowInsufficient { needed: n as i64, available: self.known_digits() as i64 - 1 });
            }
            if self.digit_allowed(n)? {
                digits.push(p);
            }
            n += 1;
            p = p.saturating_mul(10);
        }
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << digits.len()) {
            let v: u64 = digits.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &d)| d).sum();
            if v < bound && (v != 0 || self.include_zero) {
                out.push(v);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// `F_n = (T(S) ∩ [0, 2·10ⁿ]) + 10ⁿ⁺¹ℤ`.
    pub fn certificate(&self, n: u32) -> Result<PeriodicSet> {
        let p = 10u64.pow(n);
        let members = self.members_below(2 * p + 1)?;
        Ok(PeriodicSet::from_residues(10 * p, members.into_iter().map(|m| m as i64)))
    }

    /// Members below `bound` together with `F_n` for each requested `n`.
    pub fn window(&self, bound: u64, certificate_levels: &[u32]) -> Result<GodelWindow> {
        let members = self.members_below(bound)?;
        let certificates =
            certificate_levels.iter().map(|&n| self.certificate(n).map(|f| (n, f))).collect::<Result<Vec<_>>>()?;
        Ok(GodelWindow { members, certificates })
    }

    /// Checks `T(S) ∩ [0, 2·10ⁿ] = (⋂_{i ≤ n} F_i) ∩ [0, 2·10ⁿ]`.
    pub fn certificates_agree(&self, n: u32) -> Result<bool> {
        let hi = 2 * 10i64.pow(n);
        let mut inter = PeriodicSet::integers();
        for i in 0..=n {
            inter = inter.intersection(&self.certificate(i)?);
        }
        for m in 0..=hi {
            if inter.contains(m) != self.contains(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest `|n|` whose membership is decided.
    pub fn decided_up_to(&self) -> i64 {
        let d = self.known_digits();
        if d > MAX_DIGITS {
            i64::MAX
        } else {
            10i64.pow(d) - 1
        }
    }
}
