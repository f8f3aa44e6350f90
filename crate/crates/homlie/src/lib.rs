//! Exact computations with homotopy Lie algebras over the rationals: the
//! Jacobi relations, shifted Poisson structures, the category of
//! representations with its infinitesimal braiding, and Chevalley–Eilenberg
//! models.

pub mod axioms;
pub mod braiding;
pub mod ce;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod io;
pub mod linalg;
pub mod linfty;
pub mod multimap;
pub mod poisson;
pub mod random;
pub mod rational;
pub mod repcat;
pub mod report;

pub use error::{Error, Result};
pub use rational::Rational;
