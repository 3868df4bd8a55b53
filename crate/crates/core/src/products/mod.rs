//! Cup and cap products, the identity cochain, pullback and the forgetful
//! duality map from cochains to chains.

mod checks;
mod cochain;
mod ops;

pub use checks::{check_cap, check_dga, check_duality, check_projection_formula, check_pullback, Named};
pub use cochain::Cochain;
pub use ops::{cap, cup, duality, identity_cochain, pullback};
