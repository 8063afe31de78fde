//! Exact arithmetic for holomorphic foliations on the complex projective plane.
//!
//! Everything is computed over the rationals: sparse multivariate polynomials,
//! truncated power series, foliations given by homogeneous 1-forms or vector
//! fields, local singularity analysis (Milnor numbers, index calculus),
//! blow-up reduction trees, quadratic Cremona pullbacks, formal separatrix
//! solvers and pencils of curves. There is no floating point anywhere except
//! the series-growth diagnostics, which are explicitly numeric.

pub mod birational;
pub mod corpus;
pub mod error;
pub mod foliation;
pub mod gcd;
pub mod local;
pub mod parser;
pub mod pencils;
pub mod poly;
pub mod reduction;
pub mod roots;
pub mod separatrix;
pub mod series;
pub mod strata;

pub use error::Error;
pub use foliation::{Chart, LocalFoliation, ProjFoliation, VectorFieldRep};
pub use poly::{MultiPoly, Rational, Var};
pub use series::TruncSeries;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
