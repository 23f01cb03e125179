//! Wrapped quotients of the cube complex `X_L^M(S)` and the specialness checker.
//!
//! Only abelian quotients are supported: the transport `φ(ũ)` is then
//! independent of height.  The generator `a = (x, y)` is realized as
//! "up along `x`, down along `y`", so it moves the base vertex of each
//! height level by `θ(a)`.

mod complex;
mod cylinders;
mod hyperplanes;
mod link;

pub use complex::{minimal_wrap, ComplexDump, CubeEdge, CubeVertex, EdgeDump, QuotientCubeComplex, SquareDump, VertexDump};
pub use cylinders::{cylinder_classes, cylinders, verify_orbit_characterization, Cylinder, CylinderClasses};
pub use hyperplanes::{
    check_special, hyperplanes, shift_stable_period, specialness, Hyperplane, Hyperplanes, InterOsculation,
    SelfIntersection, SelfOsculation, ShiftStability, SpecialnessReport,
};
pub use link::{check_links, vertex_link, EdgeEnd, LinkTag, VertexLink};
