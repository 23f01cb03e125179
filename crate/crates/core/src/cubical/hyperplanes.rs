use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use super::link::vertex_link;
use super::QuotientCubeComplex;
use crate::error::{Error, Result};
use crate::gbbcore::FiniteQuotient;
use crate::intsets::{gcd, lcm};
use crate::unionfind::UnionFind;

/// A class of upward edges under the square-opposite relation.
#[derive(Clone, Debug, Serialize)]
pub struct Hyperplane {
    pub id: usize,
    pub label: usize,
    pub edges: Vec<usize>,
    pub two_sided: bool,
}

/// All hyperplanes together with the edge-to-hyperplane map.
#[derive(Clone, Debug)]
pub struct Hyperplanes {
    pub planes: Vec<Hyperplane>,
    pub of_edge: Vec<usize>,
}

impl Hyperplanes {
    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn counts_by_label(&self, y: &QuotientCubeComplex) -> BTreeMap<String, usize> {
        let l = y.base();
        let mut out: BTreeMap<String, usize> = l.vertex_names().iter().map(|n| (n.clone(), 0)).collect();
        for h in &self.planes {
            *out.get_mut(l.vertex_name(h.label)).expect("label") += 1;
        }
        out
    }
}

pub fn hyperplanes(y: &QuotientCubeComplex) -> Hyperplanes {
    let mut uf = UnionFind::new(y.edge_count());
    for &[e1, e2, e3, e4] in y.squares() {
        uf.union(e1, e4);
        uf.union(e2, e3);
    }
    let (of_edge, count) = uf.classes();
    let mut planes: Vec<Hyperplane> =
        (0..count).map(|id| Hyperplane { id, label: usize::MAX, edges: Vec::new(), two_sided: true }).collect();
    for (e, &h) in of_edge.iter().enumerate() {
        planes[h].label = y.edge(e).label;
        planes[h].edges.push(e);
    }
    Hyperplanes { planes, of_edge }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfIntersection {
    pub hyperplane: usize,
    pub square: usize,
}

/// Two distinct edges of one hyperplane pointing the same way at `vertex`
/// whose ends there are not a corner of a square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfOsculation {
    pub hyperplane: usize,
    pub vertex: usize,
    pub edges: (usize, usize),
}

/// Crossing hyperplanes with directly osculating edges at `vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterOsculation {
    pub hyperplanes: (usize, usize),
    pub vertex: usize,
    pub edges: (usize, usize),
    pub square: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialnessReport {
    pub wrap: usize,
    pub hyperplane_counts: BTreeMap<String, usize>,
    pub non_two_sided: Vec<usize>,
    pub self_intersections: Vec<SelfIntersection>,
    pub self_osculations: Vec<SelfOsculation>,
    pub inter_osculations: Vec<InterOsculation>,
    pub special: bool,
    /// Set when a non-special verdict was re-checked at twice the wrap.
    pub confirmed_at: Option<usize>,
}

impl SpecialnessReport {
    /// Labels of self-osculating hyperplanes, one entry per hyperplane.
    pub fn self_osculating_labels(&self, y: &QuotientCubeComplex, h: &Hyperplanes) -> Vec<String> {
        let mut v: Vec<String> =
            self.self_osculations.iter().map(|s| y.base().vertex_name(h.planes[s.hyperplane].label).to_string()).collect();
        v.sort();
        v
    }

    /// Unordered label pairs of inter-osculating hyperplanes, with multiplicity.
    pub fn inter_osculating_labels(&self, y: &QuotientCubeComplex, h: &Hyperplanes) -> Vec<(String, String)> {
        let name = |p: usize| y.base().vertex_name(h.planes[p].label).to_string();
        let mut v: Vec<(String, String)> = self
            .inter_osculations
            .iter()
            .map(|i| {
                let (a, b) = (name(i.hyperplanes.0), name(i.hyperplanes.1));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        v.sort();
        v
    }
}

/// Runs all four pathology checks, keeping one witness per hyperplane or pair.
pub fn specialness(y: &QuotientCubeComplex, h: &Hyperplanes) -> SpecialnessReport {
    let hp = &h.of_edge;
    let mut self_intersections = Vec::new();
    let mut crossing: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (s, &[e1, e2, e3, e4]) in y.squares().iter().enumerate() {
        for (a, b) in [(e1, e2), (e1, e3), (e2, e4), (e3, e4)] {
            let (x, z) = (hp[a], hp[b]);
            if x == z {
                if !self_intersections.iter().any(|w: &SelfIntersection| w.hyperplane == x) {
                    self_intersections.push(SelfIntersection { hyperplane: x, square: s });
                }
            } else {
                crossing.entry((x.min(z), x.max(z))).or_insert(s);
            }
        }
    }
    let mut self_osc: BTreeMap<usize, SelfOsculation> = BTreeMap::new();
    let mut inter_osc: BTreeMap<(usize, usize), InterOsculation> = BTreeMap::new();
    for v in 0..y.vertex_count() {
        let link = vertex_link(y, v);
        let corner: HashSet<(usize, usize)> = link.edges.iter().copied().collect();
        for i in 0..link.ends.len() {
            for k in i + 1..link.ends.len() {
                let (a, b) = (link.ends[i], link.ends[k]);
                if a.up != b.up || corner.contains(&(i, k)) {
                    continue;
                }
                let (x, z) = (hp[a.edge], hp[b.edge]);
                if x == z {
                    self_osc.entry(x).or_insert(SelfOsculation { hyperplane: x, vertex: v, edges: (a.edge, b.edge) });
                } else if let Some(&s) = crossing.get(&(x.min(z), x.max(z))) {
                    inter_osc.entry((x.min(z), x.max(z))).or_insert(InterOsculation {
                        hyperplanes: (x.min(z), x.max(z)),
                        vertex: v,
                        edges: if x < z { (a.edge, b.edge) } else { (b.edge, a.edge) },
                        square: s,
                    });
                }
            }
        }
    }
    let non_two_sided: Vec<usize> = h.planes.iter().filter(|p| !p.two_sided).map(|p| p.id).collect();
    let self_osculations: Vec<SelfOsculation> = self_osc.into_values().collect();
    let inter_osculations: Vec<InterOsculation> = inter_osc.into_values().collect();
    let special = non_two_sided.is_empty()
        && self_intersections.is_empty()
        && self_osculations.is_empty()
        && inter_osculations.is_empty();
    SpecialnessReport {
        wrap: y.wrap(),
        hyperplane_counts: h.counts_by_label(y),
        non_two_sided,
        self_intersections,
        self_osculations,
        inter_osculations,
        special,
        confirmed_at: None,
    }
}

/// Specialness at `wrap`; a failure is re-checked at `2 · wrap` and the
/// larger complex's report is returned if it turns out special.
pub fn check_special(quotient: &FiniteQuotient, wrap: usize) -> Result<SpecialnessReport> {
    let y = QuotientCubeComplex::build(quotient, wrap)?;
    let report = specialness(&y, &hyperplanes(&y));
    if report.special {
        return Ok(report);
    }
    let y2 = QuotientCubeComplex::build(quotient, 2 * wrap)?;
    let doubled = specialness(&y2, &hyperplanes(&y2));
    if doubled.special {
        return Ok(doubled);
    }
    Ok(SpecialnessReport { confirmed_at: Some(2 * wrap), ..report })
}

/// Result of [`shift_stable_period`].
#[derive(Clone, Debug, Serialize)]
pub struct ShiftStability {
    pub base_wrap: usize,
    /// Least `m` such that the shift by `base_wrap` fixes every hyperplane of
    /// the unwrapped quotient.
    pub multiple: usize,
    pub wrap: usize,
    pub hyperplane_counts: BTreeMap<String, usize>,
    /// Image of each hyperplane under the shift by `base_wrap`, at `wrap`.
    pub shift: Vec<usize>,
    pub special: bool,
}

/// Disjoint sets over edges of the wrapped complex recording, per class, the
/// subgroup `dℤ` of lift offsets met around cycles.
struct OffsetUnionFind {
    parent: Vec<usize>,
    offset: Vec<i64>,
    period: Vec<u64>,
}

impl OffsetUnionFind {
    fn new(n: usize) -> Self {
        OffsetUnionFind { parent: (0..n).collect(), offset: vec![0; n], period: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> (usize, i64) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        let mut acc = 0;
        for &n in path.iter().rev() {
            acc += self.offset[n];
            self.offset[n] = acc;
            self.parent[n] = r;
        }
        (r, if path.is_empty() { 0 } else { self.offset[x] })
    }

    /// Records `lift(b) = lift(a) + delta`.
    fn union(&mut self, a: usize, b: usize, delta: i64) {
        let (ra, oa) = self.find(a);
        let (rb, ob) = self.find(b);
        if ra == rb {
            self.period[ra] = gcd(self.period[ra], (oa + delta - ob).unsigned_abs());
        } else {
            self.parent[rb] = ra;
            self.offset[rb] = oa + delta - ob;
            self.period[ra] = gcd(self.period[ra], self.period[rb]);
        }
    }
}

/// Finds how often the hyperplanes at wrap `N₀` split in the unwrapped
/// quotient, builds the complex at the stable wrap and returns the shift
/// permutation there.  Counts are cross-checked at twice the stable wrap.
pub fn shift_stable_period(quotient: &FiniteQuotient, base_wrap: usize, cap: usize) -> Result<ShiftStability> {
    let y = QuotientCubeComplex::build(quotient, base_wrap)?;
    let mut uf = OffsetUnionFind::new(y.edge_count());
    for &[e1, e2, e3, e4] in y.squares() {
        let wraps = (y.edge(e1).height + 1 == base_wrap) as i64;
        uf.union(e1, e4, wraps);
        uf.union(e2, e3, wraps);
    }
    let mut m = 1u64;
    let roots: BTreeSet<usize> = (0..y.edge_count()).map(|e| uf.find(e).0).collect();
    for r in roots {
        let d = uf.period[r];
        if d == 0 || d as usize > cap {
            return Err(Error::NoStabilization(cap));
        }
        m = lcm(m, d);
    }
    let m = m as usize;
    if m > cap {
        return Err(Error::NoStabilization(cap));
    }
    let wrap = m * base_wrap;
    let ym = QuotientCubeComplex::build(quotient, wrap)?;
    let hm = hyperplanes(&ym);
    let shift = hm.planes.iter().map(|p| hm.of_edge[ym.shift(base_wrap, p.edges[0])]).collect();
    let report = specialness(&ym, &hm);
    let y2 = QuotientCubeComplex::build(quotient, 2 * wrap)?;
    let h2 = hyperplanes(&y2);
    let again = specialness(&y2, &h2);
    if again.hyperplane_counts != report.hyperplane_counts || again.special != report.special {
        return Err(Error::Internal(format!("hyperplane counts at wrap {} differ from wrap {wrap}", 2 * wrap)));
    }
    Ok(ShiftStability {
        base_wrap,
        multiple: m,
        wrap,
        hyperplane_counts: report.hyperplane_counts,
        shift,
        special: report.special,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offset_periods() {
        // a 3-cycle whose lift climbs 2 per turn, plus a fixed point
        let mut uf = OffsetUnionFind::new(4);
        uf.union(0, 1, 1);
        uf.union(1, 2, 0);
        uf.union(2, 0, 1);
        let (r, _) = uf.find(2);
        assert_eq!(uf.period[r], 2);
        uf.union(3, 3, 0);
        let r3 = uf.find(3).0;
        assert_eq!(uf.period[r3], 0);
        uf.union(2, 3, 5);
        let r3 = uf.find(3).0;
        assert_eq!(uf.period[r3], 2);
        let (_, o0) = uf.find(0);
        let (_, o3) = uf.find(3);
        assert_eq!(o3 - o0, 1 + 0 + 5);
    }
}
