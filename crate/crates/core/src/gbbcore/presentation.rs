use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::covers::{DirEdge, RegularCover};
use crate::error::{Error, Result};
use crate::intsets::PeriodicSet;
use crate::simplicial::SimplicialComplex;

/// The presentation of `G_L^M(S)` on the directed edges of `L`.
///
/// `S` is stored shifted so that `0 ∈ S`; the shift is kept in `shift`
/// (`S_stored = S_given - shift`).
#[derive(Clone, Debug)]
pub struct GbbPresentation {
    cover: Arc<RegularCover>,
    s: PeriodicSet,
    shift: i64,
    names: HashMap<DirEdge, String>,
}

/// A relator `a₁ⁿ a₂ⁿ ⋯ a_lⁿ` for a closed directed loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relator {
    pub cycle: Vec<DirEdge>,
    pub n: i64,
    /// Whether the loop lifts to a loop in the cover.
    pub lifts: bool,
}

impl GbbPresentation {
    pub fn new(cover: impl Into<Arc<RegularCover>>, s: PeriodicSet) -> Result<Self> {
        let shift = s
            .least_nonnegative()
            .ok_or_else(|| Error::Precondition("S is empty; only the torsion and report paths handle it".into()))?;
        let s = s.shift(-shift);
        Ok(GbbPresentation { cover: cover.into(), s, shift, names: HashMap::new() })
    }

    /// Names directed edges; the reverse of a named edge prints as its inverse.
    pub fn with_edge_names(mut self, names: &[(DirEdge, &str)]) -> Self {
        for &(e, n) in names {
            self.names.insert(e, n.to_string());
        }
        self
    }

    pub fn cover(&self) -> &Arc<RegularCover> {
        &self.cover
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        self.cover.base()
    }

    /// `S` normalized to contain 0.
    pub fn s(&self) -> &PeriodicSet {
        &self.s
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// All directed edges of `L`, sorted.
    pub fn generators(&self) -> Vec<DirEdge> {
        let mut g: Vec<DirEdge> = self.base().edges().into_iter().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        g.sort_unstable();
        g
    }

    /// Name of a directed edge as `(name, exponent sign)`.
    pub fn edge_name(&self, e: DirEdge) -> (String, i64) {
        if let Some(n) = self.names.get(&e) {
            (n.clone(), 1)
        } else if let Some(n) = self.names.get(&(e.1, e.0)) {
            (n.clone(), -1)
        } else {
            let l = self.base();
            (format!("{}->{}", l.vertex_name(e.0), l.vertex_name(e.1)), 1)
        }
    }

    /// Looks up an edge by name (`a`, `a^-1`, `u->v`).
    pub fn parse_edge(&self, s: &str) -> Result<DirEdge> {
        let s = s.trim();
        let (body, inv) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let e = if let Some((u, v)) = body.split_once("->") {
            let l = self.base();
            let e = (l.vertex_index(u.trim())?, l.vertex_index(v.trim())?);
            if !l.are_adjacent(e.0, e.1) {
                return Err(Error::NotAdjacent(u.trim().into(), v.trim().into()));
            }
            e
        } else {
            *self
                .names
                .iter()
                .find(|(_, n)| n.as_str() == body)
                .map(|(e, _)| e)
                .ok_or_else(|| Error::Parse(format!("unknown edge {body}")))?
        };
        Ok(if inv { (e.1, e.0) } else { e })
    }

    /// Parses a whitespace- or comma-separated loop of edges.
    pub fn parse_loop(&self, s: &str) -> Result<Vec<DirEdge>> {
        s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(|t| self.parse_edge(t)).collect()
    }

    pub fn format_word(&self, word: &[DirEdge]) -> String {
        word.iter()
            .map(|&e| match self.edge_name(e) {
                (n, 1) => n,
                (n, _) => format!("{n}^-1"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_relator(&self, r: &Relator) -> String {
        r.cycle
            .iter()
            .map(|&e| {
                let (name, sign) = self.edge_name(e);
                match sign * r.n {
                    1 => name,
                    k => format!("{name}^{k}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Whether `a₁ⁿ⋯a_lⁿ` is a defining relator.
    pub fn is_relator(&self, cycle: &[DirEdge], n: i64) -> Result<bool> {
        Ok(self.s.contains(n) || self.cover.lifts_to_loop(cycle)?)
    }

    /// Relators for cyclically reduced loops of length at most
    /// `max_loop_length` and `0 < |n| ≤ max_exponent`, one per rotation class.
    pub fn relators_upto(&self, max_exponent: u64, max_loop_length: usize) -> Vec<Relator> {
        let mut out = Vec::new();
        for cycle in cyclic_loops(self.base(), max_loop_length) {
            let lifts = self.cover.lifts_to_loop(&cycle).expect("enumerated loops are closed");
            for n in (1..=max_exponent as i64).flat_map(|n| [n, -n]) {
                if lifts || self.s.contains(n) {
                    out.push(Relator { cycle: cycle.clone(), n, lifts });
                }
            }
        }
        out
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}^{}", self.cycle, self.n)
    }
}

/// Closed, cyclically reduced directed edge loops of length `1..=max_len`,
/// one representative (least rotation) per rotation class.
pub fn cyclic_loops(l: &SimplicialComplex, max_len: usize) -> Vec<Vec<DirEdge>> {
    let mut seen: BTreeSet<Vec<DirEdge>> = BTreeSet::new();
    let mut path: Vec<usize> = Vec::new();
    fn canonical(cycle: &[DirEdge]) -> Vec<DirEdge> {
        (0..cycle.len()).map(|i| [&cycle[i..], &cycle[..i]].concat()).min().expect("nonempty")
    }
    fn walk(l: &SimplicialComplex, path: &mut Vec<usize>, max_len: usize, seen: &mut BTreeSet<Vec<DirEdge>>) {
        let u = *path.last().expect("nonempty");
        let start = path[0];
        let len = path.len() - 1;
        for &v in l.neighbors(u) {
            if len >= 1 && v == path[len - 1] {
                continue;
            }
            if v == start && len >= 2 && path[1] != path[len] {
                let mut cycle: Vec<DirEdge> = path.windows(2).map(|w| (w[0], w[1])).collect();
                cycle.push((u, v));
                seen.insert(canonical(&cycle));
            }
            if len + 1 < max_len {
                path.push(v);
                walk(l, path, max_len, seen);
                path.pop();
            }
        }
    }
    for s in 0..l.vertex_count() {
        path.clear();
        path.push(s);
        walk(l, &mut path, max_len, &mut seen);
    }
    let mut out: Vec<Vec<DirEdge>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn section_nine_relators() {
        let p = fixtures::square_presentation();
        let abcd = p.parse_loop("a b c d").unwrap();
        let rels = p.relators_upto(2, 4);
        let find = |n| rels.iter().find(|r| r.cycle == abcd && r.n == n);
        assert_eq!(p.format_relator(find(2).unwrap()), "a^2 b^2 c^2 d^2");
        assert!(find(1).is_none());
        let twice: Vec<DirEdge> = abcd.iter().chain(&abcd).copied().collect();
        assert!(p.is_relator(&twice, 1).unwrap());
        assert!(!p.is_relator(&abcd, 1).unwrap());
    }

    #[test]
    fn loop_enumeration_on_a_square() {
        let p = fixtures::square_presentation();
        let loops = cyclic_loops(p.base(), 8);
        // around once and twice, in each direction
        assert_eq!(loops.len(), 4);
        assert!(loops.iter().all(|c| c.len() % 4 == 0));
    }

    #[test]
    fn normalization_records_the_shift() {
        let c = fixtures::square_cover();
        let p = GbbPresentation::new(c, PeriodicSet::from_residues(2, [1])).unwrap();
        assert_eq!(p.shift(), 1);
        assert_eq!(*p.s(), PeriodicSet::multiples(2));
        assert!(GbbPresentation::new(fixtures::square_cover(), PeriodicSet::empty()).is_err());
    }
}
