//! Polytopes as compact manifolds with corners: face lattices, orientations,
//! the oriented boundary and the flag involution on the second boundary.

mod boundary;
mod orientation;
mod polytope;

pub use boundary::{
    boundary, corner_type, facet_sign, second_boundary, sigma, BoundaryComponent, CornerComponent, CornerType,
};
pub use orientation::{frame_sign, orientation_equal, OrientedPolytope, Sign};
pub use polytope::{affine_dim, Face, FaceLattice, Hull, Inequality, Point, Polytope};

