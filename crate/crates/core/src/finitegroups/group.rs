use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{Permutation, WreathElement};
use crate::error::{Error, Result};
use crate::intsets::{lcm, PeriodicSet};

/// Describes a finite parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDesc {
    /// `ℤ/f₁ × … × ℤ/f_r`, written additively.
    Abelian { factors: Vec<u64> },
    Symmetric { degree: usize },
    /// `S_N ≀ C_n`.
    Wreath { degree: usize, n: usize },
    Product(Vec<GroupDesc>),
}

/// An element of a [`GroupDesc`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    Abelian(Vec<u64>),
    Perm(Permutation),
    Wreath(WreathElement),
    Tuple(Vec<GroupElem>),
}

impl GroupDesc {
    pub fn cyclic(n: u64) -> Self {
        GroupDesc::Abelian { factors: vec![n] }
    }

    pub fn trivial() -> Self {
        GroupDesc::Abelian { factors: vec![] }
    }

    pub fn identity(&self) -> GroupElem {
        match self {
            GroupDesc::Abelian { factors } => GroupElem::Abelian(vec![0; factors.len()]),
            GroupDesc::Symmetric { degree } => GroupElem::Perm(Permutation::identity(*degree)),
            GroupDesc::Wreath { degree, n } => GroupElem::Wreath(WreathElement::identity(*degree, *n)),
            GroupDesc::Product(fs) => GroupElem::Tuple(fs.iter().map(GroupDesc::identity).collect()),
        }
    }

    /// Whether `g` has the shape of an element of this group.
    pub fn contains(&self, g: &GroupElem) -> bool {
        match (self, g) {
            (GroupDesc::Abelian { factors }, GroupElem::Abelian(v)) => {
                v.len() == factors.len() && v.iter().zip(factors).all(|(x, f)| x < f)
            }
            (GroupDesc::Symmetric { degree }, GroupElem::Perm(p)) => p.degree() == *degree,
            (GroupDesc::Wreath { degree, n }, GroupElem::Wreath(w)) => w.degree() == *degree && w.copies() == *n,
            (GroupDesc::Product(fs), GroupElem::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        match (self, a, b) {
            (GroupDesc::Abelian { factors }, GroupElem::Abelian(x), GroupElem::Abelian(y)) => {
                GroupElem::Abelian(x.iter().zip(y).zip(factors).map(|((x, y), f)| (x + y) % f).collect())
            }
            (GroupDesc::Symmetric { .. }, GroupElem::Perm(p), GroupElem::Perm(q)) => GroupElem::Perm(p * q),
            (GroupDesc::Wreath { .. }, GroupElem::Wreath(x), GroupElem::Wreath(y)) => GroupElem::Wreath(x.mul(y)),
            (GroupDesc::Product(fs), GroupElem::Tuple(xs), GroupElem::Tuple(ys)) => {
                GroupElem::Tuple(fs.iter().zip(xs).zip(ys).map(|((f, x), y)| f.mul(x, y)).collect())
            }
            _ => panic!("element shapes do not match group {self:?}"),
        }
    }

    pub fn inv(&self, a: &GroupElem) -> GroupElem {
        match (self, a) {
            (GroupDesc::Abelian { factors }, GroupElem::Abelian(x)) => {
                GroupElem::Abelian(x.iter().zip(factors).map(|(x, f)| (f - x) % f).collect())
            }
            (GroupDesc::Symmetric { .. }, GroupElem::Perm(p)) => GroupElem::Perm(p.inverse()),
            (GroupDesc::Wreath { .. }, GroupElem::Wreath(x)) => GroupElem::Wreath(x.inverse()),
            (GroupDesc::Product(fs), GroupElem::Tuple(xs)) => {
                GroupElem::Tuple(fs.iter().zip(xs).map(|(f, x)| f.inv(x)).collect())
            }
            _ => panic!("element shape does not match group {self:?}"),
        }
    }

    pub fn pow(&self, a: &GroupElem, e: i64) -> GroupElem {
        match (self, a) {
            (GroupDesc::Abelian { factors }, GroupElem::Abelian(x)) => GroupElem::Abelian(
                x.iter()
                    .zip(factors)
                    .map(|(&x, &f)| ((x as i128 * e as i128).rem_euclid(f as i128)) as u64)
                    .collect(),
            ),
            (GroupDesc::Symmetric { .. }, GroupElem::Perm(p)) => GroupElem::Perm(p.pow(e)),
            (GroupDesc::Wreath { .. }, GroupElem::Wreath(x)) => GroupElem::Wreath(x.pow(e)),
            (GroupDesc::Product(fs), GroupElem::Tuple(xs)) => {
                GroupElem::Tuple(fs.iter().zip(xs).map(|(f, x)| f.pow(x, e)).collect())
            }
            _ => panic!("element shape does not match group {self:?}"),
        }
    }

    pub fn is_identity(&self, a: &GroupElem) -> bool {
        *a == self.identity()
    }

    pub fn order_of(&self, a: &GroupElem) -> u64 {
        match (self, a) {
            (GroupDesc::Abelian { factors }, GroupElem::Abelian(x)) => x
                .iter()
                .zip(factors)
                .fold(1, |acc, (&x, &f)| lcm(acc, f / crate::intsets::gcd(x, f))),
            (GroupDesc::Symmetric { .. }, GroupElem::Perm(p)) => p.order(),
            (GroupDesc::Wreath { .. }, GroupElem::Wreath(w)) => w.order(),
            (GroupDesc::Product(fs), GroupElem::Tuple(xs)) => {
                fs.iter().zip(xs).fold(1, |acc, (f, x)| lcm(acc, f.order_of(x)))
            }
            _ => panic!("element shape does not match group {self:?}"),
        }
    }

    /// The exponent of the whole parent group.
    pub fn exponent(&self) -> u64 {
        match self {
            GroupDesc::Abelian { factors } => factors.iter().fold(1, |a, &f| lcm(a, f)),
            GroupDesc::Symmetric { degree } => (1..=*degree as u64).fold(1, lcm),
            GroupDesc::Wreath { degree, n } => *n as u64 * (1..=*degree as u64).fold(1, lcm),
            GroupDesc::Product(fs) => fs.iter().fold(1, |a, f| lcm(a, f.exponent())),
        }
    }

    /// Group order, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        fn fact(n: usize) -> Option<u128> {
            (1..=n as u128).try_fold(1u128, |a, k| a.checked_mul(k))
        }
        match self {
            GroupDesc::Abelian { factors } => factors.iter().try_fold(1u128, |a, &f| a.checked_mul(f as u128)),
            GroupDesc::Symmetric { degree } => fact(*degree),
            GroupDesc::Wreath { degree, n } => {
                let f = fact(*degree)?;
                (0..*n).try_fold(*n as u128, |a, _| a.checked_mul(f))
            }
            GroupDesc::Product(fs) => fs.iter().try_fold(1u128, |a, f| a.checked_mul(f.order()?)),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupDesc::Abelian { .. } => true,
            GroupDesc::Symmetric { degree } => *degree <= 2,
            GroupDesc::Wreath { degree, n } => *degree <= 1 || (*n == 1 && *degree <= 2),
            GroupDesc::Product(fs) => fs.iter().all(GroupDesc::is_abelian),
        }
    }

    /// Reads an element of this group from its JSON form.
    pub fn parse_elem(&self, v: &Value) -> Result<GroupElem> {
        let g = match self {
            GroupDesc::Abelian { factors } => {
                let raw: Vec<i64> = serde_json::from_value(v.clone())?;
                if raw.len() != factors.len() {
                    return Err(Error::Parse(format!("expected {} coordinates, got {v}", factors.len())));
                }
                GroupElem::Abelian(raw.iter().zip(factors).map(|(&x, &f)| x.rem_euclid(f as i64) as u64).collect())
            }
            GroupDesc::Symmetric { .. } => GroupElem::Perm(serde_json::from_value(v.clone())?),
            GroupDesc::Wreath { .. } => GroupElem::Wreath(serde_json::from_value(v.clone())?),
            GroupDesc::Product(fs) => {
                let arr = v.as_array().ok_or_else(|| Error::Parse(format!("expected a tuple, got {v}")))?;
                if arr.len() != fs.len() {
                    return Err(Error::Parse(format!("expected {} components, got {}", fs.len(), arr.len())));
                }
                GroupElem::Tuple(fs.iter().zip(arr).map(|(f, x)| f.parse_elem(x)).collect::<Result<_>>()?)
            }
        };
        if !self.contains(&g) {
            return Err(Error::Parse(format!("{v} is not an element of {self:?}")));
        }
        Ok(g)
    }

    pub fn elem_to_json(&self, g: &GroupElem) -> Value {
        match g {
            GroupElem::Abelian(v) => json!(v),
            GroupElem::Perm(p) => serde_json::to_value(p).expect("permutation serializes"),
            GroupElem::Wreath(w) => serde_json::to_value(w).expect("wreath element serializes"),
            GroupElem::Tuple(xs) => match self {
                GroupDesc::Product(fs) => Value::Array(fs.iter().zip(xs).map(|(f, x)| f.elem_to_json(x)).collect()),
                _ => Value::Array(xs.iter().map(|x| GroupDesc::trivial().elem_to_json(x)).collect()),
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawDesc {
    Abelian {
        factors: Vec<u64>,
    },
    Symmetric {
        #[serde(rename = "N")]
        degree: usize,
    },
    Wreath {
        #[serde(rename = "N")]
        degree: usize,
        n: usize,
        #[serde(default = "one")]
        copies: usize,
    },
    Product {
        factors: Vec<GroupDesc>,
    },
}

fn one() -> usize {
    1
}

impl Serialize for GroupDesc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = match self {
            GroupDesc::Abelian { factors } => RawDesc::Abelian { factors: factors.clone() },
            GroupDesc::Symmetric { degree } => RawDesc::Symmetric { degree: *degree },
            GroupDesc::Wreath { degree, n } => RawDesc::Wreath { degree: *degree, n: *n, copies: 1 },
            GroupDesc::Product(fs) => match fs.first() {
                Some(GroupDesc::Wreath { degree, n }) if fs.len() > 1 && fs.iter().all(|f| f == &fs[0]) => {
                    RawDesc::Wreath { degree: *degree, n: *n, copies: fs.len() }
                }
                _ => RawDesc::Product { factors: fs.clone() },
            },
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match RawDesc::deserialize(d)? {
            RawDesc::Abelian { factors } => {
                if factors.contains(&0) {
                    return Err(D::Error::custom("abelian factors must be positive"));
                }
                GroupDesc::Abelian { factors }
            }
            RawDesc::Symmetric { degree } => GroupDesc::Symmetric { degree },
            RawDesc::Wreath { degree, n, copies } => {
                if n == 0 {
                    return Err(D::Error::custom("wreath needs n >= 1"));
                }
                if copies == 1 {
                    GroupDesc::Wreath { degree, n }
                } else {
                    GroupDesc::Product(vec![GroupDesc::Wreath { degree, n }; copies])
                }
            }
            RawDesc::Product { factors } => GroupDesc::Product(factors),
        })
    }
}

fn check_members(parent: &GroupDesc, elems: &[GroupElem]) -> Result<()> {
    if elems.iter().all(|g| parent.contains(g)) {
        Ok(())
    } else {
        Err(Error::MixedParents)
    }
}

/// `g₁ʲ g₂ʲ ⋯ g_lʲ`.
pub fn power_product(parent: &GroupDesc, elems: &[GroupElem], j: i64) -> Result<GroupElem> {
    check_members(parent, elems)?;
    Ok(elems.iter().fold(parent.identity(), |acc, g| parent.mul(&acc, &parent.pow(g, j))))
}

/// `{ j : g₁ʲ ⋯ g_lʲ = 1 }`, evaluated over one period of the exponent.
pub fn r_set(parent: &GroupDesc, elems: &[GroupElem]) -> Result<PeriodicSet> {
    check_members(parent, elems)?;
    let m = elems.iter().fold(1, |a, g| lcm(a, parent.order_of(g)));
    let id = parent.identity();
    let residues = (0..m).filter(|&j| {
        let p = elems.iter().fold(id.clone(), |acc, g| parent.mul(&acc, &parent.pow(g, j as i64)));
        p == id
    });
    let residues = residues.map(|j| j as i64);
    Ok(PeriodicSet::from_residues(m, residues))
}

/// Default cap on enumerated subgroup elements.
pub const DEFAULT_SUBGROUP_BOUND: usize = 1_000_000;

/// An explicitly enumerated subgroup of a finite parent.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: GroupDesc,
    generators: Vec<GroupElem>,
    elements: Vec<GroupElem>,
    index: HashMap<GroupElem, usize>,
}

impl Subgroup {
    /// Closure of `generators` under multiplication, enumerated breadth first.
    /// The identity always has index 0.
    pub fn closure(parent: &GroupDesc, generators: &[GroupElem], bound: usize) -> Result<Subgroup> {
        check_members(parent, generators)?;
        let id = parent.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in generators {
                let y = parent.mul(&x, g);
                if !index.contains_key(&y) {
                    if elements.len() >= bound {
                        return Err(Error::BoundExceeded(bound));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        Ok(Subgroup { parent: parent.clone(), generators: generators.to_vec(), elements, index })
    }

    pub fn parent(&self) -> &GroupDesc {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElem] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, g: &GroupElem) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        self.index.contains_key(g)
    }

    pub fn exponent(&self) -> u64 {
        self.elements.iter().fold(1, |a, g| lcm(a, self.parent.order_of(g)))
    }

    pub fn is_abelian(&self) -> bool {
        let gs = &self.generators;
        gs.iter().enumerate().all(|(i, a)| {
            gs[i + 1..].iter().all(|b| self.parent.mul(a, b) == self.parent.mul(b, a))
        })
    }

    /// Right multiplication table: `table[x][k] = index(x · generators[k])`.
    pub fn right_table(&self, by: &[GroupElem]) -> Result<Vec<Vec<u32>>> {
        self.elements
            .iter()
            .map(|x| {
                by.iter()
                    .map(|g| {
                        self.index_of(&self.parent.mul(x, g))
                            .map(|i| i as u32)
                            .ok_or_else(|| Error::Internal("multiplier outside subgroup".into()))
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitegroups::build_pqrs;

    fn perm(n: usize, cs: &[&[usize]]) -> GroupElem {
        GroupElem::Perm(Permutation::from_cycles(n, cs).unwrap())
    }

    #[test]
    fn closure_examples() {
        let s3 = GroupDesc::Symmetric { degree: 3 };
        let h = Subgroup::closure(&s3, &[perm(3, &[&[1, 2]])], DEFAULT_SUBGROUP_BOUND).unwrap();
        assert_eq!((h.order(), h.exponent()), (2, 2));
        let g = Subgroup::closure(&s3, &[perm(3, &[&[1, 2, 3]]), perm(3, &[&[1, 2]])], DEFAULT_SUBGROUP_BOUND).unwrap();
        assert_eq!((g.order(), g.exponent()), (6, 6));
        assert!(!g.is_abelian());
        let t = Subgroup::closure(&s3, &[], DEFAULT_SUBGROUP_BOUND).unwrap();
        assert_eq!(t.order(), 1);
        let s5 = GroupDesc::Symmetric { degree: 5 };
        let gens = [perm(5, &[&[1, 2, 3, 4, 5]]), perm(5, &[&[1, 2]])];
        assert!(matches!(Subgroup::closure(&s5, &gens, 50), Err(Error::BoundExceeded(50))));
    }

    #[test]
    fn power_products_and_r_sets() {
        let s3 = GroupDesc::Symmetric { degree: 3 };
        let g = perm(3, &[&[1, 2, 3]]);
        assert!(s3.is_identity(&power_product(&s3, &[g.clone()], 3).unwrap()));
        let gi = s3.inv(&g);
        for j in -7..7 {
            assert!(s3.is_identity(&power_product(&s3, &[g.clone(), gi.clone()], j).unwrap()));
        }
        assert_eq!(r_set(&s3, &[g.clone()]).unwrap(), PeriodicSet::multiples(3));
        assert!(r_set(&s3, &[s3.identity(), s3.identity()]).unwrap().is_integers());
        let z2 = GroupDesc::cyclic(2);
        assert_eq!(power_product(&s3, &[z2.identity()], 1), Err(Error::MixedParents));
    }

    #[test]
    fn pqrs_r_set() {
        let alpha = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let beta = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        let w = GroupDesc::Wreath { degree: 3, n: 3 };
        let q: Vec<GroupElem> = build_pqrs(&alpha, &beta, 1, 3).unwrap().into_iter().map(GroupElem::Wreath).collect();
        let r = r_set(&w, &q).unwrap();
        assert_eq!(r, PeriodicSet::from_residues(3, [0, 2]));
        assert_eq!(r, PeriodicSet::from_residues(3, [1]).complement());
    }

    #[test]
    fn exponents_and_orders() {
        assert_eq!(GroupDesc::Symmetric { degree: 4 }.exponent(), 12);
        assert_eq!(GroupDesc::Wreath { degree: 3, n: 2 }.exponent(), 12);
        assert_eq!(GroupDesc::Wreath { degree: 3, n: 2 }.order(), Some(72));
        assert_eq!(GroupDesc::Abelian { factors: vec![4, 6] }.exponent(), 12);
        let w = GroupDesc::Wreath { degree: 3, n: 2 };
        let all = Subgroup::closure(
            &w,
            &[
                GroupElem::Wreath(WreathElement::rho(3, 2)),
                GroupElem::Wreath(WreathElement::coordinate(&Permutation::from_cycles(3, &[&[1, 2]]).unwrap(), 1, 2)),
                GroupElem::Wreath(WreathElement::coordinate(&Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap(), 1, 2)),
            ],
            DEFAULT_SUBGROUP_BOUND,
        )
        .unwrap();
        assert_eq!(all.order(), 72);
        assert_eq!(all.exponent(), w.exponent());
    }

    #[test]
    fn desc_json() {
        let d: GroupDesc = serde_json::from_str(r#"{"kind":"wreath","N":3,"n":2,"copies":2}"#).unwrap();
        assert_eq!(d, GroupDesc::Product(vec![GroupDesc::Wreath { degree: 3, n: 2 }; 2]));
        let back = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<GroupDesc>(&back).unwrap(), d);
        let a = GroupDesc::Abelian { factors: vec![3, 4] };
        assert_eq!(a.parse_elem(&json!([-1, 5])).unwrap(), GroupElem::Abelian(vec![2, 1]));
        assert!(a.parse_elem(&json!([1])).is_err());
        let w = GroupDesc::Wreath { degree: 3, n: 2 };
        let x = GroupElem::Wreath(WreathElement::rho(3, 2));
        assert_eq!(w.parse_elem(&w.elem_to_json(&x)).unwrap(), x);
    }
}
