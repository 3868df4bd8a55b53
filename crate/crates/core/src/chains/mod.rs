mod chain;
mod cylinder;
mod ddzero;
mod generator;
mod homology;
mod key;
mod singular;
mod tag;

pub use chain::{aut_finite, Chain, Ring};
pub use ddzero::{verify_dd_zero, DdReport};
pub use cylinder::{cylinder, cylinder_witness};
pub use homology::{face_complex, ChainComplex};
pub use singular::{
    check_chain_map, face_map, orientation_dictionary, oriented_simplex, simplex, simplex_frame, simplex_tag, singular_boundary,
    singular_to_kuranishi, SingularChain, SingularSimplex,
};
pub use generator::{Component, Generator};
pub use key::{canonical, is_self_opposite, Canonical, Key, BRANCH_CAP};
pub use tag::{merge, Label, Tag, CYLINDER_MARK};
