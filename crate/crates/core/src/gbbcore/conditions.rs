use serde::Serialize;

use crate::intsets::{PeriodicSet, SetDescription, Truth};

/// What is known about the deck group `π(M, L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeckProperties {
    pub trivial: Truth,
    pub torsion_free: Truth,
    pub virtually_torsion_free: Truth,
    pub residually_finite: Truth,
}

impl DeckProperties {
    /// A finite group is torsion-free only when trivial.
    pub fn finite(order: usize) -> Self {
        DeckProperties {
            trivial: Truth::from_bool(order == 1),
            torsion_free: Truth::from_bool(order == 1),
            virtually_torsion_free: Truth::Yes,
            residually_finite: Truth::Yes,
        }
    }
}

/// `G_L^M(S)` is torsion-free iff `S = ℤ` or `π` is trivial (finite `π`).
pub fn is_torsion_free(s: &PeriodicSet, deck_order: usize) -> bool {
    s.is_integers() || deck_order == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub holds: Truth,
}

/// The two groups of necessary conditions, each an "at least one of" list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionsReport {
    pub torsion_free: Truth,
    pub virtually_torsion_free_conditions: Vec<Condition>,
    pub virtually_torsion_free_possible: Truth,
    pub residually_finite_conditions: Vec<Condition>,
    pub residually_finite_possible: Truth,
}

pub fn necessary_conditions_report(s: &SetDescription, deck: &DeckProperties) -> ConditionsReport {
    let s_is_z = s.is_integers();
    let vtf = vec![
        Condition { name: "S = Z", holds: s_is_z },
        Condition { name: "deck group torsion-free", holds: deck.torsion_free },
        Condition {
            name: "deck group virtually torsion-free and S periodic",
            holds: deck.virtually_torsion_free.and(s.is_periodic()),
        },
    ];
    let rf = vec![
        Condition { name: "S = Z", holds: s_is_z },
        Condition { name: "deck group trivial", holds: deck.trivial },
        Condition {
            name: "deck group residually finite and S closed",
            holds: deck.residually_finite.and(s.is_closed()),
        },
    ];
    let any = |cs: &[Condition]| cs.iter().fold(Truth::No, |acc, c| acc.or(c.holds));
    ConditionsReport {
        torsion_free: s_is_z.or(deck.torsion_free),
        virtually_torsion_free_possible: any(&vtf),
        virtually_torsion_free_conditions: vtf,
        residually_finite_possible: any(&rf),
        residually_finite_conditions: rf,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_criterion() {
        assert!(is_torsion_free(&PeriodicSet::integers(), 2));
        assert!(!is_torsion_free(&PeriodicSet::multiples(2), 2));
        assert!(is_torsion_free(&PeriodicSet::multiples(2), 1));
    }

    #[test]
    fn reports() {
        let c2 = DeckProperties::finite(2);
        let zero = SetDescription::Finite([0].into_iter().collect());
        let r = necessary_conditions_report(&zero, &c2);
        assert_eq!(r.virtually_torsion_free_possible, Truth::No);
        assert_eq!(r.residually_finite_possible, Truth::Yes);
        assert_eq!(r.torsion_free, Truth::No);

        let even = SetDescription::Periodic(PeriodicSet::multiples(2));
        let r = necessary_conditions_report(&even, &c2);
        assert_eq!((r.virtually_torsion_free_possible, r.residually_finite_possible), (Truth::Yes, Truth::Yes));

        let r = necessary_conditions_report(&SetDescription::Integers, &c2);
        assert_eq!(r.torsion_free, Truth::Yes);
        assert_eq!((r.virtually_torsion_free_possible, r.residually_finite_possible), (Truth::Yes, Truth::Yes));

        let opaque = SetDescription::Opaque("some recursively enumerable set".into());
        let r = necessary_conditions_report(&opaque, &c2);
        assert_eq!(r.residually_finite_possible, Truth::Unknown);
    }
}
