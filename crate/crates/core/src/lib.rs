//! Graded algebra retracts of monomial quotient rings.
//!
//! The crate verifies retracts given as idempotent degree-one endomorphisms,
//! computes bases of retracts of Stanley-Reisner rings and of quotients by
//! irreducible monomial ideals or powers of linear ideals, decomposes
//! monomial ideals, and classifies multigraded retracts of toric face rings.
//! Every algorithm ships with a brute-force counterpart.

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod monideal;
pub mod retract;
pub mod simplicial;
pub mod toric;
pub mod varset;

pub use error::{Error, Result};
pub use exactalg::{Field, GradedSubstitution, Monomial, Polynomial, Ring, Scalar};
pub use varset::VarSet;
