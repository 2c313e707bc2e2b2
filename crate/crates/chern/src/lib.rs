//! Exact computation of Hilbert-Samuel tables and Chern numbers (the e1
//! Hilbert coefficient) of admissible filtrations of m-primary ideals in
//! presented local rings k[x_1..x_m]/Q, over a prime field.
//!
//! Everything is exact: prime-field polynomial arithmetic, reduced Groebner
//! bases, ideal algebra, lengths by standard-monomial counting, and Hilbert
//! coefficients by rational linear algebra in the binomial basis. The `chern`
//! module computes e1 by several independent routes (Euler characteristics of
//! Koszul subcomplexes, dimension-specific homology formulas, the fundamental
//! lemma) and cross-checks them against the fitted coefficients.

pub mod chern;
pub mod error;
pub mod field;
pub mod filtration;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod reduction;
pub mod report;
pub mod ring;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use groebner::{buchberger, eliminate, normal_form, GroebnerBasis, ResourceCaps};
pub use ideal::{Ideal, Length};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
