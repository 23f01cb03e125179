use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::finitegroups::{GroupElem, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::gbbcore::FiniteQuotient;
use crate::intsets::lcm;
use crate::simplicial::SimplicialComplex;

/// A compact wrapped quotient of `X_L^M(S)` by the kernel of an abelian
/// `θ : G_L^M(S) → Q` and the height translation by the wrap `N`.
///
/// Edges `(j, u, q)` have height `j ∈ ℤ/N`, label `u ∈ L⁰` and torsor
/// coordinate `q ∈ Q`.  The vertex `(j, q + P_j)` is the bottom of `(j, u, q)`
/// and `(j + 1, q + φ(ũ) + P_{j+1})` is its top, where `φ(ũ) = −θ(w_u)` for
/// the tree path `w_u` and `P_j` is the image of `ρ_j = jρ₁`.
#[derive(Clone, Debug)]
pub struct QuotientCubeComplex {
    quotient: Arc<FiniteQuotient>,
    wrap: usize,
    period: usize,
    group: Subgroup,
    phi: Vec<usize>,
    rho1: Vec<usize>,
    l_edges: Vec<(usize, usize)>,
    eta: Vec<usize>,
    // translation tables: add[t][q] = index(q + t)
    add: HashMap<usize, Vec<u32>>,
    cosets: Vec<(Vec<usize>, Vec<usize>)>,
    vertex_offset: Vec<usize>,
    squares: Vec<[usize; 4]>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    corners: Vec<Vec<(usize, u8)>>,
    torsion_free: bool,
}

/// A vertex `(j, q + P_j)` given by its least coset representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CubeVertex {
    pub height: usize,
    pub rep: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CubeEdge {
    pub height: usize,
    pub label: usize,
    pub q: usize,
}

impl QuotientCubeComplex {
    /// Builds the complex at wrap `N`, which must be a positive multiple of
    /// `lcm(period(S), exponent(Q))`.
    pub fn build(quotient: &FiniteQuotient, wrap: usize) -> Result<Self> {
        let target = quotient.target();
        if !target.is_abelian() {
            return Err(Error::Unsupported("cube complexes need an abelian target".into()));
        }
        if !quotient.certificate().passed() {
            return Err(Error::Precondition("the quotient map is not verified".into()));
        }
        let pres = quotient.presentation();
        let cover = pres.cover();
        let l = cover.base();
        let period = quotient.exponent_window() as usize;
        if wrap == 0 || wrap % period != 0 {
            return Err(Error::Invalid(format!("wrap {wrap} is not a positive multiple of {period}")));
        }
        let l_edges = l.edges();
        let images: Vec<GroupElem> = l_edges
            .iter()
            .flat_map(|&(u, v)| [quotient.theta((u, v)).clone(), quotient.theta((v, u)).clone()])
            .collect();
        let group = Subgroup::closure(target, &images, DEFAULT_SUBGROUP_BOUND)?;
        let idx = |g: &GroupElem| group.index_of(g).ok_or_else(|| Error::Internal("element outside the image".into()));

        let phi: Vec<usize> = (0..l.vertex_count())
            .map(|u| idx(&target.inv(&quotient.power_image(cover.path_word(u), 1))))
            .collect::<Result<_>>()?;
        let st = quotient.stabilizer_image(1)?;
        let rho1: Vec<usize> = st.rho.iter().map(idx).collect::<Result<_>>()?;
        let eta: Vec<usize> = l_edges.iter().map(|&(u, v)| cover.eta(u, v)).collect::<Result<_>>()?;
        let torsion_free = quotient.kernel_torsion_free()?.torsion_free;

        let exp = group.exponent() as usize;
        let mut shifts: Vec<GroupElem> = phi.iter().map(|&p| group.elements()[p].clone()).collect();
        for r in &st.rho {
            for k in 0..exp.max(1) {
                shifts.push(target.pow(r, k as i64));
                shifts.push(target.pow(r, -(k as i64)));
            }
        }
        shifts.sort();
        shifts.dedup();
        let table = group.right_table(&shifts)?;
        let mut add = HashMap::new();
        for (k, s) in shifts.iter().enumerate() {
            add.insert(idx(s)?, table.iter().map(|row| row[k]).collect::<Vec<u32>>());
        }

        let nq = group.order();
        let mut cosets = Vec::with_capacity(period);
        for j in 0..period {
            let p: Vec<GroupElem> = st.rho.iter().map(|r| target.pow(r, j as i64)).collect();
            let pj = Subgroup::closure(target, &p, DEFAULT_SUBGROUP_BOUND)?;
            let mut id = vec![usize::MAX; nq];
            let mut reps = Vec::new();
            for q in 0..nq {
                if id[q] != usize::MAX {
                    continue;
                }
                for x in pj.elements() {
                    let y = idx(&target.mul(&group.elements()[q], x))?;
                    id[y] = reps.len();
                }
                reps.push(q);
            }
            cosets.push((id, reps));
        }
        let mut vertex_offset = Vec::with_capacity(wrap + 1);
        let mut total = 0;
        for j in 0..wrap {
            vertex_offset.push(total);
            total += cosets[j % period].1.len();
        }
        vertex_offset.push(total);

        let mut y = QuotientCubeComplex {
            quotient: Arc::new(quotient.clone()),
            wrap,
            period,
            group,
            phi,
            rho1,
            l_edges,
            eta,
            add,
            cosets,
            vertex_offset,
            squares: Vec::new(),
            out_edges: Vec::new(),
            in_edges: Vec::new(),
            corners: Vec::new(),
            torsion_free,
        };
        y.squares = y.build_squares();
        y.check_square_closure()?;
        y.build_incidence();
        for j in 0..wrap.min(period) {
            let v = y.vertex_id(CubeVertex { height: j, rep: 0 });
            super::link::vertex_link(&y, v).verify().map_err(|e| Error::Internal(format!("link check failed: {e}")))?;
        }
        Ok(y)
    }

    fn plus(&self, q: usize, t: usize) -> usize {
        self.add[&t][q] as usize
    }

    pub(crate) fn rho_power(&self, h: usize, k: i64) -> usize {
        let t = self.quotient.target();
        self.group.index_of(&t.pow(&self.group.elements()[self.rho1[h]], k)).expect("closed")
    }

    fn build_squares(&self) -> Vec<[usize; 4]> {
        let nq = self.group.order();
        let mut out = Vec::with_capacity(self.wrap * self.l_edges.len() * nq);
        for j in 0..self.wrap {
            for (k, &(u, v)) in self.l_edges.iter().enumerate() {
                let h = self.eta[k];
                let sj = self.rho_power(h, j as i64);
                let sj1 = self.rho_power(h, j as i64 + 1);
                let sneg = self.rho_power(h, -1);
                for q in 0..nq {
                    let up = self.plus(q, self.phi[u]);
                    let e1 = CubeEdge { height: j, label: u, q };
                    let e2 = CubeEdge { height: j, label: v, q: self.plus(q, sj) };
                    let e3 = CubeEdge { height: (j + 1) % self.wrap, label: v, q: self.plus(up, sj1) };
                    let e4 = CubeEdge { height: (j + 1) % self.wrap, label: u, q: self.plus(self.plus(q, self.phi[v]), sneg) };
                    out.push([self.edge_id(e1), self.edge_id(e2), self.edge_id(e3), self.edge_id(e4)]);
                }
            }
        }
        out
    }

    fn build_incidence(&mut self) {
        let nv = self.vertex_count();
        let (mut out_edges, mut in_edges) = (vec![Vec::new(); nv], vec![Vec::new(); nv]);
        for e in 0..self.edge_count() {
            out_edges[self.bottom(e)].push(e);
            in_edges[self.top(e)].push(e);
        }
        let mut corners = vec![Vec::new(); nv];
        for (s, &[e1, e2, _, e4]) in self.squares.iter().enumerate() {
            corners[self.bottom(e1)].push((s, 0));
            corners[self.top(e1)].push((s, 1));
            corners[self.top(e2)].push((s, 2));
            corners[self.top(e4)].push((s, 3));
        }
        self.out_edges = out_edges;
        self.in_edges = in_edges;
        self.corners = corners;
    }

    fn check_square_closure(&self) -> Result<()> {
        for (s, &[e1, e2, e3, e4]) in self.squares.iter().enumerate() {
            let ok = self.bottom(e1) == self.bottom(e2)
                && self.top(e1) == self.bottom(e3)
                && self.top(e2) == self.bottom(e4)
                && self.top(e3) == self.top(e4);
            if !ok {
                return Err(Error::Internal(format!("square {s} does not close")));
            }
        }
        Ok(())
    }

    pub fn quotient(&self) -> &FiniteQuotient {
        &self.quotient
    }

    pub fn base(&self) -> &SimplicialComplex {
        self.quotient.presentation().base()
    }

    pub fn wrap(&self) -> usize {
        self.wrap
    }

    /// `lcm(period(S), exponent(Q))`, the least valid wrap.
    pub fn period(&self) -> usize {
        self.period
    }

    /// The image of `θ`, which acts freely on edges.
    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion_free
    }

    /// `φ(ũ)` as an index into [`group`](Self::group).
    pub fn transport(&self, u: usize) -> usize {
        self.phi[u]
    }

    /// `P_j` as element indices.
    pub fn stabilizer(&self, j: usize) -> Vec<usize> {
        let (id, _) = &self.cosets[j % self.period];
        (0..id.len()).filter(|&q| id[q] == 0).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_offset[self.wrap]
    }

    pub fn vertices_at(&self, j: usize) -> usize {
        self.cosets[j % self.period].1.len()
    }

    pub fn edge_count(&self) -> usize {
        self.wrap * self.base().vertex_count() * self.group.order()
    }

    pub fn edges_per_height(&self) -> usize {
        self.base().vertex_count() * self.group.order()
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn squares_per_height(&self) -> usize {
        self.l_edges.len() * self.group.order()
    }

    pub fn vertex_id(&self, v: CubeVertex) -> usize {
        self.vertex_offset[v.height] + self.cosets[v.height % self.period].0[v.rep]
    }

    pub fn vertex(&self, id: usize) -> CubeVertex {
        let height = self.vertex_offset.partition_point(|&o| o <= id) - 1;
        let reps = &self.cosets[height % self.period].1;
        CubeVertex { height, rep: reps[id - self.vertex_offset[height]] }
    }

    pub fn edge_id(&self, e: CubeEdge) -> usize {
        (e.height * self.base().vertex_count() + e.label) * self.group.order() + e.q
    }

    pub fn edge(&self, id: usize) -> CubeEdge {
        let nq = self.group.order();
        let nl = self.base().vertex_count();
        CubeEdge { height: id / (nq * nl), label: id / nq % nl, q: id % nq }
    }

    pub fn bottom(&self, e: usize) -> usize {
        let e = self.edge(e);
        self.vertex_id(CubeVertex { height: e.height, rep: e.q })
    }

    pub fn top(&self, e: usize) -> usize {
        let e = self.edge(e);
        let h = (e.height + 1) % self.wrap;
        self.vertex_id(CubeVertex { height: h, rep: self.plus(e.q, self.phi[e.label]) })
    }

    /// The antipodal continuation `(j, u, q) ↦ (j + 1, u, q + φ(ũ))`.
    pub fn continuation(&self, e: usize) -> usize {
        let c = self.edge(e);
        self.edge_id(CubeEdge { height: (c.height + 1) % self.wrap, label: c.label, q: self.plus(c.q, self.phi[c.label]) })
    }

    /// Edges leaving `v` upwards.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Edges arriving at `v` from below.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    /// Squares at `v` with the corner index: 0 bottom, 1 top of `e₁`, 2 top of `e₂`, 3 top.
    pub fn corners(&self, v: usize) -> &[(usize, u8)] {
        &self.corners[v]
    }

    /// Squares as `[e₁, e₂, e₃, e₄]`: `e₁, e₂` leave the bottom corner, `e₃`
    /// sits over `e₁` and `e₄` over `e₂`; `e₁ ∥ e₄` and `e₂ ∥ e₃`.
    pub fn squares(&self) -> &[[usize; 4]] {
        &self.squares
    }

    /// The `L`-edge `{u, u′}` labelling square `s`.
    pub fn square_labels(&self, s: usize) -> (usize, usize) {
        let per = self.squares_per_height();
        self.l_edges[s % per / self.group.order()]
    }

    pub fn square_height(&self, s: usize) -> usize {
        s / self.squares_per_height()
    }

    /// Acts by `g` on an edge.
    pub fn translate(&self, g: usize, e: usize) -> usize {
        let c = self.edge(e);
        let q = self.group.index_of(&self.quotient.target().mul(&self.group.elements()[g], &self.group.elements()[c.q]));
        self.edge_id(CubeEdge { q: q.expect("closed"), ..c })
    }

    /// Height translation by `k` on edges; an automorphism when `k` is a multiple of the period.
    pub fn shift(&self, k: usize, e: usize) -> usize {
        let c = self.edge(e);
        self.edge_id(CubeEdge { height: (c.height + k) % self.wrap, ..c })
    }

    pub fn edge_name(&self, e: usize) -> String {
        let c = self.edge(e);
        format!("{}@{}#{}", self.base().vertex_name(c.label), c.height, c.q)
    }

    pub fn vertex_name(&self, v: usize) -> String {
        let c = self.vertex(v);
        format!("v{}#{}", c.height, c.rep)
    }

    pub fn dump(&self) -> ComplexDump {
        let t = self.quotient.target();
        let elem = |q: usize| t.elem_to_json(&self.group.elements()[q]);
        ComplexDump {
            wrap: self.wrap,
            group_order: self.group.order(),
            vertices: (0..self.vertex_count())
                .map(|v| {
                    let c = self.vertex(v);
                    VertexDump { id: v, height: c.height, representative: elem(c.rep) }
                })
                .collect(),
            edges: (0..self.edge_count())
                .map(|e| {
                    let c = self.edge(e);
                    EdgeDump {
                        id: e,
                        height: c.height,
                        label: self.base().vertex_name(c.label).to_string(),
                        element: elem(c.q),
                        bottom: self.bottom(e),
                        top: self.top(e),
                    }
                })
                .collect(),
            squares: self
                .squares
                .iter()
                .enumerate()
                .map(|(s, &edges)| {
                    let (u, v) = self.square_labels(s);
                    SquareDump {
                        id: s,
                        height: self.square_height(s),
                        labels: [self.base().vertex_name(u).to_string(), self.base().vertex_name(v).to_string()],
                        edges,
                    }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexDump {
    pub wrap: usize,
    pub group_order: usize,
    pub vertices: Vec<VertexDump>,
    pub edges: Vec<EdgeDump>,
    pub squares: Vec<SquareDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexDump {
    pub id: usize,
    pub height: usize,
    pub representative: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeDump {
    pub id: usize,
    pub height: usize,
    pub label: String,
    pub element: Value,
    pub bottom: usize,
    pub top: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareDump {
    pub id: usize,
    pub height: usize,
    pub labels: [String; 2],
    pub edges: [usize; 4],
}

/// Least valid wrap for a quotient.
pub fn minimal_wrap(quotient: &FiniteQuotient) -> usize {
    lcm(quotient.presentation().s().period(), quotient.target().exponent()) as usize
}
