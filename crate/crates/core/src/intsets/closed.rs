use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{GodelSet, PeriodicSet};
use crate::error::{Error, Result};

/// Three-valued answer for properties that explicit data may not settle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    Yes,
    No,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::Yes
        } else {
            Truth::No
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::No, _) | (_, Truth::No) => Truth::No,
            (Truth::Yes, Truth::Yes) => Truth::Yes,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::Yes, _) | (_, Truth::Yes) => Truth::Yes,
            (Truth::No, Truth::No) => Truth::No,
            _ => Truth::Unknown,
        }
    }
}

/// Explicit data describing a subset of ℤ.
#[derive(Debug, Clone)]
pub enum SetDescription {
    Integers,
    Periodic(PeriodicSet),
    Finite(BTreeSet<i64>),
    PeriodicUnionFinite(PeriodicSet, BTreeSet<i64>),
    PeriodicMinusFinite(PeriodicSet, BTreeSet<i64>),
    Godel(GodelSet),
    /// Finite intersection of periodic sets.
    Intersection(Vec<PeriodicSet>),
    /// Anything else; the string says what it is.
    Opaque(String),
}

impl SetDescription {
    pub fn is_integers(&self) -> Truth {
        match self {
            SetDescription::Integers => Truth::Yes,
            SetDescription::Periodic(p) => Truth::from_bool(p.is_integers()),
            SetDescription::Finite(_) | SetDescription::Godel(_) => Truth::No,
            SetDescription::PeriodicUnionFinite(p, _) => Truth::from_bool(p.is_integers()),
            SetDescription::PeriodicMinusFinite(p, f) => Truth::from_bool(p.is_integers() && f.is_empty()),
            SetDescription::Intersection(list) => Truth::from_bool(list.iter().all(|p| p.is_integers())),
            SetDescription::Opaque(_) => Truth::Unknown,
        }
    }

    pub fn is_periodic(&self) -> Truth {
        match self {
            SetDescription::Integers | SetDescription::Periodic(_) | SetDescription::Intersection(_) => Truth::Yes,
            SetDescription::Finite(f) => Truth::from_bool(f.is_empty()),
            SetDescription::PeriodicUnionFinite(p, f) => Truth::from_bool(f.iter().all(|&m| p.contains(m))),
            SetDescription::PeriodicMinusFinite(p, f) => Truth::from_bool(f.iter().all(|&m| !p.contains(m))),
            // T(S) lies in ℕ and contains 0 (or is empty).
            SetDescription::Godel(g) => {
                if g.includes_zero() {
                    Truth::No
                } else {
                    Truth::Unknown
                }
            }
            SetDescription::Opaque(_) => Truth::Unknown,
        }
    }

    /// Closedness in the profinite topology.
    pub fn is_closed(&self) -> Truth {
        match self {
            SetDescription::Integers
            | SetDescription::Periodic(_)
            | SetDescription::Finite(_)
            | SetDescription::PeriodicUnionFinite(..)
            | SetDescription::Godel(_)
            | SetDescription::Intersection(_) => Truth::Yes,
            // A removed point of P is a limit of P \ F.
            SetDescription::PeriodicMinusFinite(p, f) => Truth::from_bool(f.iter().all(|&m| !p.contains(m))),
            SetDescription::Opaque(_) => Truth::Unknown,
        }
    }
}

/// The closed set a nested approximation should match on windows.
#[derive(Debug, Clone)]
pub enum ClosedTarget {
    /// The intersection of the supplied list itself.
    IntersectionOfList,
    Finite(BTreeSet<i64>),
    Periodic(PeriodicSet),
    Godel(GodelSet),
}

impl ClosedTarget {
    fn contains(&self, list_meet: &PeriodicSet, m: i64) -> Result<bool> {
        match self {
            ClosedTarget::IntersectionOfList => Ok(list_meet.contains(m)),
            ClosedTarget::Finite(f) => Ok(f.contains(&m)),
            ClosedTarget::Periodic(p) => Ok(p.contains(m)),
            ClosedTarget::Godel(g) => g.contains(m),
        }
    }
}

/// A descending chain `T_1 ⊇ T_2 ⊇ …` of periodic sets with
/// `T_k ∩ [-k, k] = S ∩ [-k, k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSetApprox {
    levels: Vec<PeriodicSet>,
    /// How many list entries were intersected to form each level.
    used: Vec<usize>,
}

impl ClosedSetApprox {
    /// Builds levels `T_1..=T_k` by intersecting `sets` cumulatively.
    pub fn build(sets: &[PeriodicSet], k: i64, target: &ClosedTarget) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Precondition("nested approximation needs at least one periodic set".into()));
        }
        if k < 1 {
            return Err(Error::Precondition("window index k must be at least 1".into()));
        }
        let mut prefixes = Vec::with_capacity(sets.len());
        let mut acc = PeriodicSet::integers();
        for s in sets {
            acc = acc.intersection(s);
            prefixes.push(acc.clone());
        }
        let meet = prefixes.last().cloned().expect("nonempty");
        let mut levels = Vec::new();
        let mut used = Vec::new();
        let mut idx = 0usize;
        for level in 1..=k {
            loop {
                let t = &prefixes[idx];
                let mut agrees = true;
                for m in -level..=level {
                    if t.contains(m) != target.contains(&meet, m)? {
                        agrees = false;
                        break;
                    }
                }
                if agrees {
                    break;
                }
                idx += 1;
                if idx == prefixes.len() {
                    return Err(Error::ApproximationUnachievable(level));
                }
            }
            levels.push(prefixes[idx].clone());
            used.push(idx + 1);
        }
        Ok(ClosedSetApprox { levels, used })
    }

    /// `T_k` (1-based).
    pub fn level(&self, k: usize) -> Option<&PeriodicSet> {
        k.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    pub fn levels(&self) -> &[PeriodicSet] {
        &self.levels
    }

    /// Number of list entries intersected to reach `T_k`.
    pub fn terms_used(&self, k: usize) -> Option<usize> {
        k.checked_sub(1).and_then(|i| self.used.get(i).copied())
    }

    pub fn is_nested(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].is_subset(&w[0]))
    }
}

/// `T_k` for the closed set described by `target`, built from `sets`.
pub fn nested_approx(sets: &[PeriodicSet], k: i64, target: &ClosedTarget) -> Result<PeriodicSet> {
    let approx = ClosedSetApprox::build(sets, k, target)?;
    Ok(approx.levels.last().cloned().expect("k >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes() -> Vec<PeriodicSet> {
        [2u64, 3, 5, 7, 11, 13].iter().map(|&p| PeriodicSet::multiples(p)).collect()
    }

    #[test]
    fn single_periodic_set() {
        let t = nested_approx(&[PeriodicSet::multiples(2)], 5, &ClosedTarget::IntersectionOfList).unwrap();
        assert_eq!(t, PeriodicSet::multiples(2));
    }

    #[test]
    fn zero_from_prime_multiples() {
        let zero = ClosedTarget::Finite([0].into_iter().collect());
        // every nonzero m in [-6, 6] has a prime factor <= 5
        let t6 = nested_approx(&primes(), 6, &zero).unwrap();
        assert_eq!(t6.window(-6, 6), vec![0]);
        let approx = ClosedSetApprox::build(&primes(), 6, &zero).unwrap();
        assert_eq!(approx.level(6), Some(&PeriodicSet::multiples(30)));
        assert_eq!(approx.terms_used(6), Some(3));
        let deeper = ClosedSetApprox::build(&primes(), 30, &zero).unwrap();
        assert_eq!(deeper.level(30), Some(&PeriodicSet::multiples(210)));
        assert!(approx.is_nested());
        for k in 1..=6usize {
            let t = approx.level(k).unwrap();
            let k = k as i64;
            assert_eq!(t.window(-k, k), vec![0]);
        }
    }

    #[test]
    fn empty_list_is_rejected() {
        assert!(matches!(
            nested_approx(&[], 1, &ClosedTarget::IntersectionOfList),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn unachievable_window_reported() {
        let zero = ClosedTarget::Finite([0].into_iter().collect());
        let r = nested_approx(&primes()[..2], 7, &zero);
        assert_eq!(r, Err(Error::ApproximationUnachievable(6)));
    }

    #[test]
    fn godel_target_from_certificates() {
        let g = GodelSet::finite([0, 2]);
        let sets: Vec<PeriodicSet> = (0..4).map(|n| g.certificate(n).unwrap()).collect();
        let approx = ClosedSetApprox::build(&sets, 150, &ClosedTarget::Godel(g.clone())).unwrap();
        assert!(approx.is_nested());
        let t = approx.level(150).unwrap();
        for m in -150..=150 {
            assert_eq!(t.contains(m), g.contains(m).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn description_truths() {
        let finite = SetDescription::Finite([0].into_iter().collect());
        assert_eq!(finite.is_closed(), Truth::Yes);
        assert_eq!(finite.is_periodic(), Truth::No);
        let minus = SetDescription::PeriodicMinusFinite(PeriodicSet::multiples(2), [4].into_iter().collect());
        assert_eq!(minus.is_closed(), Truth::No);
        let godel = SetDescription::Godel(GodelSet::finite([0]));
        assert_eq!(godel.is_closed(), Truth::Yes);
        assert_eq!(godel.is_periodic(), Truth::No);
        assert_eq!(SetDescription::Opaque("N".into()).is_closed(), Truth::Unknown);
    }
}
