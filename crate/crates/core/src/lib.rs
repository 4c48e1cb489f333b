//! Exact and certified-numeric algorithms for linear Mahler systems in
//! several variables.
//!
//! The crate is organized bottom-up:
//!
//! * [`exact`]: big rationals, sparse multivariate polynomials, normalized
//!   rational functions, truncated power series, matrices and integer lattices.
//! * [`numeric`]: dyadic big floats with directed rounding and the interval
//!   type used for every certified numeric value.
//! * [`transform`]: transformation matrices, their normal form, spectral
//!   radius enclosures and membership in the class of admissible matrices.
//! * [`points`]: rational points, multiplicative relation lattices,
//!   independence along orbits and the admissibility decision.
//! * [`systems`]: Mahler systems, iteration, block and Kronecker
//!   constructions, series solutions and gauge transforms.
//! * [`eval`]: rigorous evaluation of solutions at rational points.
//! * [`relations`]: relation detection, lifting and purity decomposition.
//! * [`multiseq`]: several-transformation combinatorics and probes.

pub mod error;
pub mod eval;
pub mod exact;
pub mod multiseq;
pub mod numeric;
pub mod points;
pub mod relations;
pub mod systems;
pub mod transform;

pub use error::{Error, Result};
pub use exact::{
    BigRational, Matrix, Monomial, MultiPoly, QMatrix, RFMatrix, RatFunc, SeriesMatrix,
    TruncSeries, Vars,
};
pub use numeric::{BigFloat, Interval};
pub use points::{AdmissibilityReport, ExponentLattice, RationalPoint};
pub use systems::{GaugeTransform, MahlerSystem, RegularityReport};
pub use transform::{ClassMReport, NormalForm, SpectralData, Transform};
