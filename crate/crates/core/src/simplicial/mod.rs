//! Finite simplicial complexes, maps between them, subdivisions and the
//! least-vertex simplicial approximation.

mod complex;
mod graph;
mod map;
mod ops;

pub use complex::{cycle, simplex, ComplexFile, SimplicialComplex};
pub use graph::{check_three_consecutive, collapse_map, homeomorphic_positions, subdivide_graph_edges, Graph, GraphSubdivision};
pub use map::{MapFile, SimplicialMap};
pub use ops::{barycentric, octahedralize, star_union, SubdivisionKind, SubdivisionRecord, Suitability};
