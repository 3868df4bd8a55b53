mod action;
mod catalogue;
mod group;
mod rep;
mod strata;

pub use action::{ElementMap, GroupAction};
pub use catalogue::{hexagon, reflected_interval, rotation_rho, strata_suite, StrataCase};
pub use group::FiniteGroup;
pub use rep::{trivial_multiplicity, RealRep, VirtualRep};
pub use strata::{iota_check, iota_fibre, orbifold_stratum, piece_orientation, Fibre, IotaReport, Stratum, StratumPiece};
