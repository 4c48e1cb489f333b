use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::RationalPoint;
use crate::exact::coprime::{coprime_base, exponents_over};
use crate::exact::intlat::{self, IVec};

/// The group `{μ ∈ ℤⁿ : α^μ = 1}` of multiplicative relations of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentLattice {
    pub n: usize,
    /// Hermite normal form basis.
    pub basis: Vec<IVec>,
    /// `true` at coordinates that are negative (sign exponent of −1).
    pub sign_data: Vec<bool>,
    /// Pairwise coprime integers over which all numerators and denominators
    /// factor.
    pub coprime_base: Vec<BigUint>,
    /// Exponent vector of each coordinate over the coprime base.
    pub exponents: Vec<Vec<BigInt>>,
}

impl ExponentLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, mu: &[BigInt]) -> bool {
        intlat::contains(&self.basis, mu)
    }

    /// Decides `α^μ = 1` directly from the factorization data (sum of
    /// exponent vectors and parity of the sign exponent), independently of
    /// the basis.
    pub fn is_relation(&self, mu: &[BigInt]) -> bool {
        let r = self.coprime_base.len();
        let even_sign = mu
            .iter()
            .zip(&self.sign_data)
            .filter(|(_, &s)| s)
            .fold(BigInt::zero(), |acc, (m, _)| acc + m);
        if !(&even_sign % 2u32).is_zero() {
            return false;
        }
        (0..r).all(|k| {
            mu.iter().zip(&self.exponents).map(|(m, e)| m * &e[k]).sum::<BigInt>().is_zero()
        })
    }
}

/// Exponent lattice of `α` via a coprime base of its numerators and
/// denominators, with the sign handled as an extra parity constraint.
pub fn multiplicative_relation_lattice(alpha: &RationalPoint) -> ExponentLattice {
    let n = alpha.n();
    let mut nums: Vec<BigUint> = Vec::new();
    for c in alpha.coords() {
        nums.push(c.numer().magnitude().clone());
        nums.push(c.denom().magnitude().clone());
    }
    let base = coprime_base(&nums);
    let exponents: Vec<Vec<BigInt>> = alpha
        .coords()
        .iter()
        .map(|c| {
            let en = exponents_over(&base, c.numer().magnitude()).expect("base covers numerator");
            let ed = exponents_over(&base, c.denom().magnitude()).expect("base covers denominator");
            en.iter().zip(&ed).map(|(a, b)| BigInt::from(*a) - BigInt::from(*b)).collect()
        })
        .collect();
    let sign_data: Vec<bool> = alpha.coords().iter().map(|c| c.is_negative()).collect();
    // unknowns (μ₁..μₙ, t): Σ μ_i e_i = 0 and Σ_{α_i<0} μ_i − 2t = 0
    let mut rows: Vec<IVec> = (0..base.len())
        .map(|k| {
            let mut r: IVec = exponents.iter().map(|e| e[k].clone()).collect();
            r.push(BigInt::zero());
            r
        })
        .collect();
    let mut sign_row: IVec = sign_data.iter().map(|&s| BigInt::from(s as i64)).collect();
    sign_row.push(BigInt::from(-2));
    rows.push(sign_row);
    let ker = intlat::kernel(&rows, n + 1);
    let basis = intlat::hnf(&ker.into_iter().map(|v| v[..n].to_vec()).collect::<Vec<_>>());
    ExponentLattice { n, basis, sign_data, coprime_base: base, exponents }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::intlat::to_ivec;

    fn lat(c: &[&str]) -> ExponentLattice {
        multiplicative_relation_lattice(&RationalPoint::parse(c).unwrap())
    }

    #[test]
    fn spec_examples() {
        assert_eq!(lat(&["1/2", "1/4"]).basis, vec![to_ivec(&[2, -1])]);
        assert!(lat(&["1/2", "1/3"]).is_trivial());
        assert_eq!(lat(&["2/3", "3/2"]).basis, vec![to_ivec(&[1, 1])]);
    }

    #[test]
    fn signs_need_even_exponents() {
        let l = lat(&["-1"]);
        assert_eq!(l.basis, vec![to_ivec(&[2])]);
        let l = lat(&["-2", "2"]);
        assert_eq!(l.basis, vec![to_ivec(&[2, -2])]);
        let l = lat(&["-1/2", "-2"]);
        assert_eq!(l.basis, vec![to_ivec(&[1, 1])]);
        assert!(l.is_relation(&to_ivec(&[1, 1])));
        assert!(!l.is_relation(&to_ivec(&[1, -1])));
    }
}
