//! Symbolic-numeric engine for two-dimensional quantum systems separating
//! in Cartesian coordinates and admitting a fourth-order integral of motion.
//!
//! The crate has three layers:
//!
//! * an exact-algebra substrate (Gaussian rationals, multivariate Laurent
//!   polynomials, differential polynomials in jets of abstract functions),
//! * a symbolic derivation layer (differential operators, commutators, the
//!   determining-equation system, its compatibility conditions, and the
//!   reductions that lead to nonlinear W-ODEs, together with the
//!   Ablowitz-Ramani-Segur singularity test),
//! * a numeric layer (Painleve transcendents and the Weierstrass elliptic
//!   function with ODE-derived jets, plus grid verification of the catalog
//!   of exotic potentials).

pub mod error;
pub mod scalar;
pub mod sym;
pub mod mpoly;
pub mod jets;
pub mod sexpr;
pub mod linalg;
pub mod integrate;
pub mod ratfn;
pub mod operator;
pub mod determining;
pub mod exotic;
pub mod analysis;
pub mod registry;
pub mod painleve;
pub mod gauge;
pub mod taylor;
pub mod transcend;
pub mod catalog;
pub mod golden_exotic;
pub mod golden;

pub use error::{Error, Result};
