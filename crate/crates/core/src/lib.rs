//! Apolarity, Macaulay inverse systems and complete intersection tests for
//! forms over `Q` and prime fields.

pub mod apolar;
pub mod ci;
pub mod cli;
pub mod divided;
pub mod dual;
pub mod error;
pub mod golden;
pub mod hessian;
pub mod linalg;
pub mod par;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use apolar::{Action, HilbertFunction};
pub use ci::{CiReport, Stage, Verdict};
pub use divided::DividedPoly;
pub use error::{Error, Result};
pub use linalg::{Matrix, Subspace};
pub use poly::subst::{eliminate_variables, substitute_linear, Elimination, LinearSubstitution};
pub use poly::{Monomial, Poly};
pub use scalar::{Field, Scalar};
