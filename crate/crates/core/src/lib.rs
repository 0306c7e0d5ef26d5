//! Exact q-expansions of normalized modular forms for the Hecke groups
//! `G(2 cos(pi/m))`, polynomial interpolation of their Fourier coefficients
//! across `m`, and the numeric and number-theoretic checks built on them.

pub mod forms;
pub mod hypergeom;
pub mod interp;
pub mod modp;
pub mod oracles;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod series;
pub mod table;
pub mod verify;

pub use forms::{FormKind, FormSeries};
pub use poly::RationalPolynomial;
pub use rational::ExactRational;
pub use series::{LaurentSeries, SeriesError};
pub use table::{CoefficientTable, FormTable};
