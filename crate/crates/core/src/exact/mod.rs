//! Exact arithmetic: rationals, polynomials, rational functions, truncated
//! power series, matrices over these rings and integer lattices.

pub mod coprime;
pub mod gcd;
pub mod intlat;
pub mod linalg;
mod matrix;
mod monomial;
pub mod parse;
mod poly;
mod ratfunc;
pub mod rational;
mod ring;
mod series;
pub mod upoly;

pub use matrix::{Matrix, QMatrix, RFMatrix, SeriesMatrix};
pub use monomial::Monomial;
pub use num_rational::BigRational;
pub(crate) use poly::check_distinct;
pub use poly::{MultiPoly, Vars};
pub use ratfunc::RatFunc;
pub use ring::{Field, Ring};
pub use series::TruncSeries;
pub use upoly::UPoly;

/// Builds a shared variable list from names.
pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}
