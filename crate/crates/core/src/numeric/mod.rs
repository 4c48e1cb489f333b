//! Certified numerics: binary big floats with directed rounding and the
//! outward-rounded intervals built on them.

mod bigfloat;
pub mod elementary;
mod interval;

pub use bigfloat::{decimal, BigFloat, Round};
pub use elementary::{exp, ln, ln2, ln_rational};
pub use interval::{sum, Interval};
