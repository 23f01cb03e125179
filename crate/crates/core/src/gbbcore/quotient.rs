use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::GbbPresentation;
use crate::covers::DirEdge;
use crate::error::{Error, Result};
use crate::finitegroups::{r_set, GroupDesc, GroupElem, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::intsets::{lcm, PeriodicSet};
use crate::simplicial::star_union;

/// Default loop-length bound for bounded certificates.
pub const DEFAULT_LOOP_BOUND: usize = 12;
/// Cap on search states per exponent in bounded verification.
pub const MAX_STATES: usize = 4_000_000;

/// How relators are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum QuotientMode {
    /// Exact check through cycle bases; needs an abelian target.
    AbelianExact,
    /// Walk search over closed loops up to `loop_bound` edges (all loops when `None`)
    /// and every exponent in one joint period of `S` and the target exponent.
    Bounded { loop_bound: Option<usize> },
}

impl QuotientMode {
    pub fn bounded() -> Self {
        QuotientMode::Bounded { loop_bound: Some(DEFAULT_LOOP_BOUND) }
    }
}

/// Evidence that `θ` kills every defining relator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum VerificationCertificate {
    AbelianExact {
        /// Cycle-basis size of `L`.
        base_cycles: usize,
        /// Cycle-basis size of the cover, projected to `L`.
        lifting_cycles: usize,
        /// Residues of `S` modulo the target exponent.
        s_residues: Vec<u64>,
        passed: bool,
        witness: Option<String>,
    },
    Bounded {
        loop_bound: Option<usize>,
        exponent_window: u64,
        states: usize,
        /// True when the search covered every loop (no length bound).
        exact: bool,
        passed: bool,
        witness: Option<String>,
    },
}

impl VerificationCertificate {
    pub fn passed(&self) -> bool {
        match self {
            VerificationCertificate::AbelianExact { passed, .. } | VerificationCertificate::Bounded { passed, .. } => *passed,
        }
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            VerificationCertificate::AbelianExact { witness, .. } | VerificationCertificate::Bounded { witness, .. } => {
                witness.as_deref()
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        match self {
            VerificationCertificate::AbelianExact { .. } => true,
            VerificationCertificate::Bounded { exact, .. } => *exact,
        }
    }
}

/// A homomorphism `θ` from `G_L^M(S)` to a finite group, given on directed edges.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    pres: Arc<GbbPresentation>,
    target: GroupDesc,
    theta: HashMap<DirEdge, GroupElem>,
    mode: QuotientMode,
    certificate: VerificationCertificate,
}

/// `ρ_j` on the deck group and its image `P_j`.
#[derive(Clone, Debug)]
pub struct StabilizerImage {
    pub j: i64,
    /// Indexed by deck element.
    pub rho: Vec<GroupElem>,
    pub image: Subgroup,
}

/// Outcome of the torsion-free kernel test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub torsion_free: bool,
    /// Exponents were checked over `[0, window)`.
    pub window: u64,
    /// `(j, g)` with `j ∉ S`, `g ≠ 1` and `ρ_j(g) = 1`.
    pub witness: Option<(i64, usize)>,
}

/// Outcome of the star-abelian test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarAbelian {
    pub holds: bool,
    /// `(u, v, e, f)`: θ(e) and θ(f) do not commute, both edges in `St(u) ∪ St(v)`.
    pub witness: Option<(String, String, String, String)>,
}

fn complete_theta(
    pres: &GbbPresentation,
    target: &GroupDesc,
    theta: &[(DirEdge, GroupElem)],
) -> Result<HashMap<DirEdge, GroupElem>> {
    let l = pres.base();
    let mut map = HashMap::new();
    for (e, g) in theta {
        if !l.are_adjacent(e.0, e.1) {
            return Err(Error::NotAdjacent(l.vertex_name(e.0).into(), l.vertex_name(e.1).into()));
        }
        if !target.contains(g) {
            return Err(Error::MixedParents);
        }
        for (d, x) in [(*e, g.clone()), ((e.1, e.0), target.inv(g))] {
            if let Some(old) = map.get(&d) {
                if *old != x {
                    return Err(Error::NotAntisymmetric(l.vertex_name(e.0).into(), l.vertex_name(e.1).into()));
                }
            }
            map.insert(d, x);
        }
    }
    for (u, v) in l.edges() {
        map.entry((u, v)).or_insert_with(|| target.identity());
        map.entry((v, u)).or_insert_with(|| target.identity());
    }
    Ok(map)
}

impl FiniteQuotient {
    /// Builds `θ` and verifies it; fails with the certificate's witness.
    pub fn new(
        pres: impl Into<Arc<GbbPresentation>>,
        target: GroupDesc,
        theta: &[(DirEdge, GroupElem)],
        mode: QuotientMode,
    ) -> Result<Self> {
        let q = Self::unverified(pres, target, theta, mode)?;
        if !q.certificate.passed() {
            return Err(Error::VerificationFailed(q.certificate.witness().unwrap_or("relator not killed").to_string()));
        }
        Ok(q)
    }

    /// Builds `θ` and records the certificate whether or not it passes.
    pub fn unverified(
        pres: impl Into<Arc<GbbPresentation>>,
        target: GroupDesc,
        theta: &[(DirEdge, GroupElem)],
        mode: QuotientMode,
    ) -> Result<Self> {
        let pres = pres.into();
        let theta = complete_theta(&pres, &target, theta)?;
        let certificate = match mode {
            QuotientMode::AbelianExact => certify_abelian(&pres, &target, &theta)?,
            QuotientMode::Bounded { loop_bound } => certify_bounded(&pres, &target, &theta, loop_bound)?,
        };
        Ok(FiniteQuotient { pres, target, theta, mode, certificate })
    }

    pub fn presentation(&self) -> &Arc<GbbPresentation> {
        &self.pres
    }

    pub fn target(&self) -> &GroupDesc {
        &self.target
    }

    pub fn mode(&self) -> QuotientMode {
        self.mode
    }

    pub fn certificate(&self) -> &VerificationCertificate {
        &self.certificate
    }

    pub fn theta(&self, e: DirEdge) -> &GroupElem {
        &self.theta[&e]
    }

    /// `θ(a₁)ʲ ⋯ θ(a_l)ʲ`.
    pub fn power_image(&self, word: &[DirEdge], j: i64) -> GroupElem {
        let t = &self.target;
        word.iter().fold(t.identity(), |acc, e| t.mul(&acc, &t.pow(&self.theta[e], j)))
    }

    /// Joint period of `S` and the target exponent.
    pub fn exponent_window(&self) -> u64 {
        lcm(self.pres.s().period(), self.target.exponent())
    }

    /// `ρ_j(g) = θ(γ_g[j])` and its image `P_j`; checks multiplicativity.
    pub fn stabilizer_image(&self, j: i64) -> Result<StabilizerImage> {
        let cover = self.pres.cover();
        let deck = cover.deck();
        let t = &self.target;
        let rho: Vec<GroupElem> = (0..deck.order())
            .map(|g| {
                let w = cover.loop_word(g).ok_or_else(|| Error::Internal("cover is not connected".into()))?;
                Ok(self.power_image(w, j))
            })
            .collect::<Result<_>>()?;
        for g in 0..deck.order() {
            for h in 0..deck.order() {
                if t.mul(&rho[g], &rho[h]) != rho[deck.mul(g, h)] {
                    return Err(Error::NotAHomomorphism(format!(
                        "rho_{j}({}) rho_{j}({}) != rho_{j}(product)",
                        deck.element(g),
                        deck.element(h)
                    )));
                }
            }
        }
        let image = Subgroup::closure(t, &rho, DEFAULT_SUBGROUP_BOUND)?;
        Ok(StabilizerImage { j, rho, image })
    }

    /// `ρ_j` is injective for every `j ∉ S` in one joint period.
    pub fn kernel_torsion_free(&self) -> Result<KernelReport> {
        let window = self.exponent_window();
        let id = self.target.identity();
        for j in 0..window as i64 {
            if self.pres.s().contains(j) {
                continue;
            }
            let st = self.stabilizer_image(j)?;
            if let Some(g) = (1..st.rho.len()).find(|&g| st.rho[g] == id) {
                return Ok(KernelReport { torsion_free: false, window, witness: Some((j, g)) });
            }
        }
        Ok(KernelReport { torsion_free: true, window, witness: None })
    }

    /// `ℛ` of the θ-images of a closed loop, checked against `S` (non-lifting
    /// loops) or `ℤ` (lifting loops).
    pub fn loop_r_set(&self, cycle: &[DirEdge]) -> Result<PeriodicSet> {
        let lifts = self.pres.cover().lifts_to_loop(cycle)?;
        let imgs: Vec<GroupElem> = cycle.iter().map(|e| self.theta[e].clone()).collect();
        let found = r_set(&self.target, &imgs)?;
        let expected = if lifts { PeriodicSet::integers() } else { self.pres.s().clone() };
        if found != expected {
            return Err(Error::RSetMismatch { expected: expected.to_string(), found: found.to_string() });
        }
        Ok(found)
    }

    /// Raw `ℛ` of a loop without the consistency assertion.
    pub fn loop_r_set_unchecked(&self, cycle: &[DirEdge]) -> Result<PeriodicSet> {
        let imgs: Vec<GroupElem> = cycle.iter().map(|e| self.theta[e].clone()).collect();
        r_set(&self.target, &imgs)
    }

    /// Whether θ restricted to the edges of every `St(u) ∪ St(v)` has abelian image.
    pub fn star_abelian_check(&self) -> Result<StarAbelian> {
        let t = &self.target;
        if t.is_abelian() {
            return Ok(StarAbelian { holds: true, witness: None });
        }
        let l = self.pres.base();
        for (u, v) in l.edges() {
            let inc = star_union(l, u, v)?;
            let edges: Vec<DirEdge> = inc.source().edges().into_iter().map(|(a, b)| (inc.apply(a), inc.apply(b))).collect();
            for (i, e) in edges.iter().enumerate() {
                for f in &edges[i + 1..] {
                    let (x, y) = (&self.theta[e], &self.theta[f]);
                    if t.mul(x, y) != t.mul(y, x) {
                        let name = |e: DirEdge| self.pres.format_word(&[e]);
                        return Ok(StarAbelian {
                            holds: false,
                            witness: Some((l.vertex_name(u).into(), l.vertex_name(v).into(), name(*e), name(*f))),
                        });
                    }
                }
            }
        }
        Ok(StarAbelian { holds: true, witness: None })
    }

    /// The θ-values on one orientation of each edge.
    pub fn theta_list(&self) -> Vec<(DirEdge, GroupElem)> {
        self.pres.base().edges().into_iter().map(|e| (e, self.theta[&e].clone())).collect()
    }

    pub fn to_file(&self) -> QuotientFile {
        QuotientFile {
            target: self.target.clone(),
            theta: self
                .theta_list()
                .into_iter()
                .map(|(e, g)| (self.pres.format_word(&[e]), self.target.elem_to_json(&g)))
                .collect(),
            mode: self.mode,
        }
    }
}

/// On-disk form of a quotient: edge ↦ element, keyed by edge name or `u->v`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuotientFile {
    pub target: GroupDesc,
    pub theta: BTreeMap<String, Value>,
    #[serde(default = "QuotientMode::bounded")]
    pub mode: QuotientMode,
}

impl QuotientFile {
    pub fn build(&self, pres: impl Into<Arc<GbbPresentation>>) -> Result<FiniteQuotient> {
        let pres = pres.into();
        let theta = self
            .theta
            .iter()
            .map(|(k, v)| Ok((pres.parse_edge(k)?, self.target.parse_elem(v)?)))
            .collect::<Result<Vec<_>>>()?;
        FiniteQuotient::new(pres, self.target.clone(), &theta, self.mode)
    }
}

fn residues_mod(s: &PeriodicSet, e: u64) -> Vec<u64> {
    let w = lcm(s.period(), e);
    let mut r: Vec<u64> = (0..w as i64).filter(|&j| s.contains(j)).map(|j| j as u64 % e).collect();
    r.sort_unstable();
    r.dedup();
    r
}

fn certify_abelian(
    pres: &GbbPresentation,
    target: &GroupDesc,
    theta: &HashMap<DirEdge, GroupElem>,
) -> Result<VerificationCertificate> {
    if !matches!(target, GroupDesc::Abelian { .. }) {
        return Err(Error::Unsupported("abelian-exact mode needs an abelian target".into()));
    }
    let cover = pres.cover();
    let l = pres.base();
    let id = target.identity();
    let sum = |w: &[DirEdge]| w.iter().fold(id.clone(), |acc, e| target.mul(&acc, &theta[e]));
    let big_theta: Vec<GroupElem> = (0..l.vertex_count()).map(|u| sum(cover.path_word(u))).collect();
    let mut witness = None;

    // classes of a cycle basis of L
    let parent = l.spanning_tree(cover.base_vertex());
    let mut basis = Vec::new();
    for (u, v) in l.edges() {
        if parent[v] == Some(u) || parent[u] == Some(v) {
            continue;
        }
        let c = target.mul(&target.mul(&big_theta[u], &theta[&(u, v)]), &target.inv(&big_theta[v]));
        basis.push(((u, v), c));
    }
    let e = target.exponent();
    let s_residues = residues_mod(pres.s(), e);
    'outer: for &n in &s_residues {
        for ((u, v), c) in &basis {
            if target.pow(c, n as i64) != id {
                witness = Some(format!(
                    "{n} * theta(cycle through {}->{}) != 0 with {n} in S mod {e}",
                    l.vertex_name(*u),
                    l.vertex_name(*v)
                ));
                break 'outer;
            }
        }
    }

    // projected fundamental cycles of the total space
    let m = cover.total();
    let root = cover.lift(cover.base_vertex(), 0);
    let mtree = m.spanning_tree(root);
    let mut psi: Vec<Option<GroupElem>> = vec![None; m.vertex_count()];
    psi[root] = Some(id.clone());
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in m.neighbors(x) {
            if mtree[y] == Some(x) {
                let e = (cover.project(x).0, cover.project(y).0);
                psi[y] = Some(target.mul(psi[x].as_ref().expect("visited"), &theta[&e]));
                queue.push_back(y);
            }
        }
    }
    let mut lifting_cycles = 0;
    for (x, y) in m.edges() {
        if mtree[y] == Some(x) || mtree[x] == Some(y) {
            continue;
        }
        lifting_cycles += 1;
        let (u, v) = (cover.project(x).0, cover.project(y).0);
        let (px, py) = match (&psi[x], &psi[y]) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Internal("cover total space is not connected".into())),
        };
        let c = target.mul(&target.mul(px, &theta[&(u, v)]), &target.inv(py));
        if c != id && witness.is_none() {
            witness = Some(format!(
                "theta does not kill a lifting loop through {}->{}",
                l.vertex_name(u),
                l.vertex_name(v)
            ));
        }
    }
    Ok(VerificationCertificate::AbelianExact {
        base_cycles: basis.len(),
        lifting_cycles,
        s_residues,
        passed: witness.is_none(),
        witness,
    })
}

/// Walk search over `(vertex, θ-power product, deck element)` states.
fn certify_bounded(
    pres: &GbbPresentation,
    target: &GroupDesc,
    theta: &HashMap<DirEdge, GroupElem>,
    loop_bound: Option<usize>,
) -> Result<VerificationCertificate> {
    let cover = pres.cover();
    let deck = cover.deck();
    let l = pres.base();
    let v0 = cover.base_vertex();
    let window = lcm(pres.s().period(), target.exponent());
    let mut states_total = 0;
    let id = target.identity();
    let adj: Vec<Vec<usize>> = (0..l.vertex_count()).map(|u| l.neighbors(u).iter().copied().collect()).collect();

    for j in 1..window as i64 {
        let in_s = pres.s().contains(j);
        let powered: HashMap<DirEdge, GroupElem> = theta.iter().map(|(e, g)| (*e, target.pow(g, j))).collect();
        let mut elems: Vec<GroupElem> = vec![id.clone()];
        let mut intern: HashMap<GroupElem, u32> = HashMap::from([(id.clone(), 0)]);
        let mut mul_cache: HashMap<(u32, DirEdge), u32> = HashMap::new();
        type State = (u32, u32, u32);
        let start: State = (v0 as u32, 0, 0);
        let mut parent: HashMap<State, Option<(State, DirEdge)>> = HashMap::from([(start, None)]);
        let mut frontier = vec![start];
        let mut depth = 0;
        let mut bad: Option<State> = None;
        while !frontier.is_empty() && bad.is_none() && loop_bound.is_none_or(|b| depth < b) {
            depth += 1;
            let mut next = Vec::new();
            for &st in &frontier {
                let (u, q, d) = (st.0 as usize, st.1, st.2 as usize);
                for &v in &adj[u] {
                    let e = (u, v);
                    let q2 = match mul_cache.get(&(q, e)) {
                        Some(&x) => x,
                        None => {
                            let g = target.mul(&elems[q as usize], &powered[&e]);
                            let x = match intern.get(&g) {
                                Some(&x) => x,
                                None => {
                                    let x = elems.len() as u32;
                                    intern.insert(g.clone(), x);
                                    elems.push(g);
                                    x
                                }
                            };
                            mul_cache.insert((q, e), x);
                            x
                        }
                    };
                    let d2 = if in_s { 0 } else { deck.mul(d, cover.label(u, v)?) as u32 };
                    let ns: State = (v as u32, q2, d2);
                    if parent.contains_key(&ns) {
                        continue;
                    }
                    parent.insert(ns, Some((st, e)));
                    if v == v0 && d2 == 0 && q2 != 0 {
                        bad = Some(ns);
                        break;
                    }
                    next.push(ns);
                }
                if bad.is_some() {
                    break;
                }
            }
            if parent.len() > MAX_STATES {
                return Err(Error::BoundExceeded(MAX_STATES));
            }
            frontier = next;
        }
        states_total += parent.len();
        if let Some(mut st) = bad {
            let mut word = Vec::new();
            while let Some(Some((prev, e))) = parent.get(&st) {
                word.push(*e);
                st = *prev;
            }
            word.reverse();
            let witness = format!(
                "j = {j}: loop {} has nontrivial power product {}",
                pres.format_word(&word),
                target.elem_to_json(&elems[bad.expect("set").1 as usize])
            );
            return Ok(VerificationCertificate::Bounded {
                loop_bound,
                exponent_window: window,
                states: states_total,
                exact: loop_bound.is_none(),
                passed: false,
                witness: Some(witness),
            });
        }
    }
    Ok(VerificationCertificate::Bounded {
        loop_bound,
        exponent_window: window,
        states: states_total,
        exact: loop_bound.is_none(),
        passed: true,
        witness: None,
    })
}
