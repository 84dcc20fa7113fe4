//! Exact computer algebra for regular multiplier Hopf algebras: covering
//! maps, integrals and duals, module algebras, smash products, dual pairs and
//! the bismash duality isomorphism, all over Gaussian rationals.

pub mod algebra;
pub mod actions;
pub mod aqg;
pub mod duality;
pub mod element;
pub mod error;
pub mod hopf;
pub mod instances;
pub mod linalg;
pub mod multiplier;
pub mod report;
pub mod scalar;
pub mod pairing;
pub mod smash;
pub mod suite;

pub use element::{Domain, Element, Key, Tensor};
pub use error::{Error, Result};
pub use hopf::{Cover, Functional, HopfAlgebra, RegularMha};
pub use scalar::Scalar;
