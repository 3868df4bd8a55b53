mod cell;
mod fibre;
mod identities;
mod target;

pub use cell::{
    coorientation, identity_cell, is_strongly_smooth, orient_from_coorientation, AffineMap, Cell, Coorientation, Embedding,
    MappedCell,
};
pub use fibre::{fibre_product, fibre_product_polytopes, fibre_product_sets, slice, FibreComponent};
pub use target::{Axis, Target, TargetMap};
pub use identities::{
    check_associativity, check_boundary_of_fibre_product, check_interchange, check_swap_sign, check_unit, compare,
    match_pieces, Ambient, Check, Placed,
};
