//! Semigroups of triangular matrices over finite semirings, their Green's
//! structure, and machine-checked wreath product decompositions.

pub mod carrier;
pub mod decomp;
pub mod error;
pub mod families;
pub mod monoid;
pub mod report;
pub mod semiring;
pub mod trimat;
pub mod witness;
pub mod wreath;

pub use error::{Error, Result};
