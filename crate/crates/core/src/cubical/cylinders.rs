use std::collections::HashMap;

use serde::Serialize;

use super::QuotientCubeComplex;
use crate::error::{Error, Result};
use crate::finitegroups::{GroupElem, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::unionfind::UnionFind;

/// A connected preimage of the cylinder of `X_L/BB_L` over a simplex of `L`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub simplex: Vec<usize>,
    pub edges: Vec<usize>,
    pub squares: Vec<usize>,
    pub stabilizer: Subgroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct CylinderClasses {
    pub class_of_edge: Vec<usize>,
    pub count: usize,
}

/// All cylinders, over every simplex of `L`.  Sheets through a branched
/// vertex are kept apart: edges join along antipodal continuation and
/// within squares only.
pub fn cylinders(y: &QuotientCubeComplex) -> Result<Vec<Cylinder>> {
    let l = y.base();
    let target = y.quotient().target();
    let mut out = Vec::new();
    for sigma in l.simplices() {
        let edges: Vec<usize> = (0..y.edge_count()).filter(|&e| sigma.contains(&y.edge(e).label)).collect();
        let local: HashMap<usize, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = UnionFind::new(edges.len());
        for &e in &edges {
            uf.union(local[&e], local[&y.continuation(e)]);
        }
        let squares: Vec<usize> = (0..y.square_count())
            .filter(|&s| {
                let (u, v) = y.square_labels(s);
                sigma.contains(&u) && sigma.contains(&v)
            })
            .collect();
        for &s in &squares {
            let [e1, e2, e3, e4] = y.squares()[s];
            for e in [e2, e3, e4] {
                uf.union(local[&e1], local[&e]);
            }
        }
        let (class, count) = uf.classes();
        let mut cyl_edges = vec![Vec::new(); count];
        for (i, &e) in edges.iter().enumerate() {
            cyl_edges[class[i]].push(e);
        }
        let mut cyl_squares = vec![Vec::new(); count];
        for &s in &squares {
            cyl_squares[class[local[&y.squares()[s][0]]]].push(s);
        }
        for (edges, squares) in cyl_edges.into_iter().zip(cyl_squares) {
            for &u in &sigma {
                let mut heights = vec![false; y.wrap()];
                for &e in edges.iter().filter(|&&e| y.edge(e).label == u) {
                    heights[y.edge(e).height] = true;
                }
                if heights.iter().any(|h| !h) {
                    return Err(Error::Internal(format!(
                        "a cylinder over {:?} misses a height of label {}",
                        l.name_simplex(&sigma),
                        l.vertex_name(u)
                    )));
                }
            }
            let first = y.edge(edges[0]);
            let q0 = &y.group().elements()[first.q];
            let stab: Vec<GroupElem> = edges
                .iter()
                .map(|&e| y.edge(e))
                .filter(|c| c.label == first.label && c.height == first.height)
                .map(|c| target.mul(&y.group().elements()[c.q], &target.inv(q0)))
                .collect();
            let stabilizer = Subgroup::closure(target, &stab, DEFAULT_SUBGROUP_BOUND)?;
            if stabilizer.order() != stab.len() {
                return Err(Error::Internal("cylinder edges of one height are not a stabilizer orbit".into()));
            }
            out.push(Cylinder { simplex: sigma.clone(), edges, squares, stabilizer });
        }
    }
    Ok(out)
}

/// Same-label edges joined whenever a cylinder contains both.
pub fn cylinder_classes(y: &QuotientCubeComplex, cylinders: &[Cylinder]) -> CylinderClasses {
    let mut uf = UnionFind::new(y.edge_count());
    for c in cylinders {
        for &u in &c.simplex {
            let mut it = c.edges.iter().filter(|&&e| y.edge(e).label == u);
            if let Some(&first) = it.next() {
                for &e in it {
                    uf.union(first, e);
                }
            }
        }
    }
    let (class_of_edge, count) = uf.classes();
    CylinderClasses { class_of_edge, count }
}

/// Checks that the class of each edge, within its height, is the orbit of
/// the subgroup generated by the stabilizers of the cylinders through it.
pub fn verify_orbit_characterization(
    y: &QuotientCubeComplex,
    cylinders: &[Cylinder],
    classes: &CylinderClasses,
) -> std::result::Result<(), String> {
    let target = y.quotient().target();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); y.edge_count()];
    for (i, c) in cylinders.iter().enumerate() {
        for &e in &c.edges {
            through[e].push(i);
        }
    }
    for e in 0..y.edge_count() {
        let gens: Vec<GroupElem> =
            through[e].iter().flat_map(|&i| cylinders[i].stabilizer.generators().iter().cloned()).collect();
        let p = Subgroup::closure(target, &gens, DEFAULT_SUBGROUP_BOUND).map_err(|err| err.to_string())?;
        let orbit: std::collections::BTreeSet<usize> =
            p.elements().iter().map(|g| y.translate(y.group().index_of(g).expect("image"), e)).collect();
        let c = y.edge(e);
        let class: std::collections::BTreeSet<usize> = (0..y.edge_count())
            .filter(|&f| {
                let d = y.edge(f);
                d.height == c.height && d.label == c.label && classes.class_of_edge[f] == classes.class_of_edge[e]
            })
            .collect();
        if orbit != class {
            return Err(format!("class of edge {} is not the orbit of its cylinder stabilizers", y.edge_name(e)));
        }
    }
    Ok(())
}
