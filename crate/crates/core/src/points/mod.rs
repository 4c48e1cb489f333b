//! Rational points: exponent lattices, independence along orbits, decay to
//! the origin and the admissibility decision.

mod admissible;
mod decay;
mod independence;
mod lattice;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{fmt_q, from_int, parse_rational, pow_signed};
use crate::transform::Transform;

pub use admissible::{admissible_pair, AdmissibilityBounds, AdmissibilityReport, Verdict};
pub use decay::{condition_b_profile, log_abs_vector, tends_to_zero, ProfileRow, ZeroTendency};
pub use independence::{
    independence_period_bound, is_t_independent, stable_lattice, Independence, IndependenceCertificate, MAX_PERIOD,
};
pub use lattice::{multiplicative_relation_lattice, ExponentLattice};

/// Point with nonzero rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if let Some(i) = coords.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoordinate(i));
        }
        if coords.is_empty() {
            return Err(Error::DimensionMismatch("point without coordinates".into()));
        }
        Ok(RationalPoint { coords })
    }

    /// Parses `p/q` strings.
    pub fn parse<S: AsRef<str>>(coords: &[S]) -> Result<Self> {
        Self::new(coords.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<_>>()?)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_q).collect()
    }

    /// Whether every coordinate has absolute value `< 1`.
    pub fn in_unit_polydisk(&self) -> bool {
        self.coords.iter().all(|c| c.numer().abs() < *c.denom())
    }

    /// Largest absolute value of a coordinate.
    pub fn max_abs(&self) -> BigRational {
        self.coords.iter().map(|c| c.abs()).max().expect("nonempty")
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoint{self}")
    }
}

/// `Tα` with exact arithmetic.
pub fn act_point(t: &Transform, alpha: &RationalPoint) -> Result<RationalPoint> {
    RationalPoint::new(t.act(alpha.coords())?)
}

/// `(T^kα)^μ`, computed exactly as `α^ν` with `ν = (T^k)ᵗμ`.
pub fn orbit_monomial(t: &Transform, alpha: &RationalPoint, mu: &[BigInt], k: u64) -> Result<BigRational> {
    if mu.len() != t.n() || alpha.n() != t.n() {
        return Err(Error::DimensionMismatch(format!(
            "exponent of length {} and point of length {} for a {}x{} transform",
            mu.len(),
            alpha.n(),
            t.n(),
            t.n()
        )));
    }
    let tk = t.pow(k).int_rows();
    let mut acc = BigRational::from_integer(1.into());
    for (j, a) in alpha.coords.iter().enumerate() {
        let nu: BigInt = (0..t.n()).map(|i| &tk[i][j] * &mu[i]).sum();
        acc *= pow_signed(a, &nu)?;
    }
    Ok(acc)
}

/// Absolute Weil height of `(α₁ : … : α_d : 1)`: the largest absolute value
/// among the coprime integer coordinates.
pub fn weil_height(alpha: &RationalPoint) -> BigRational {
    let l = alpha.coords.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = alpha
        .coords
        .iter()
        .map(|c| (c * from_int(l.clone())).to_integer())
        .chain(std::iter::once(l.clone()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    from_int(ints.iter().map(|x| x.abs() / &g).max().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qi};

    #[test]
    fn heights() {
        assert_eq!(weil_height(&RationalPoint::parse(&["1/2"]).unwrap()), qi(2));
        assert_eq!(weil_height(&RationalPoint::parse(&["1"]).unwrap()), qi(1));
        assert_eq!(weil_height(&RationalPoint::parse(&["2/3", "5/3"]).unwrap()), qi(5));
        assert_eq!(weil_height(&RationalPoint::parse(&["-1", "1"]).unwrap()), qi(1));
    }

    #[test]
    fn orbit_monomials_match_the_orbit() {
        let t = Transform::from_u64(&[vec![1, 1], vec![1, 0]]);
        let a = RationalPoint::parse(&["1/2", "3"]).unwrap();
        let mu = crate::exact::intlat::to_ivec(&[2, -1]);
        let mut p = a.clone();
        for k in 0..5 {
            let direct: BigRational = p.coords()[0].clone().pow(2) / &p.coords()[1];
            assert_eq!(orbit_monomial(&t, &a, &mu, k).unwrap(), direct);
            p = act_point(&t, &p).unwrap();
        }
    }

    #[test]
    fn zero_coordinate_rejected() {
        assert_eq!(RationalPoint::new(vec![q(1, 2), qi(0)]), Err(Error::ZeroCoordinate(1)));
    }
}
