//! Higher-order Hochschild (co)homology of pointed simplicial sets with
//! coefficients in possibly noncommutative algebras, exact over ℚ and F_p.

pub mod algebra;
pub mod error;
pub mod hochschild;
pub mod matrix;
pub mod multimodule;
pub mod ordering;
pub mod parse;
pub mod report;
pub mod scalar;
pub mod simplicial;

pub use error::{Error, Result};
