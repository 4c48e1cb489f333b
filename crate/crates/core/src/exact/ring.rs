use num_rational::BigRational;
use num_traits::{One, Zero};

/// Minimal ring interface shared by the scalar, polynomial, rational-function
/// and series types, so that [`Matrix`](super::Matrix) can be generic.
///
/// Zero and one are produced from an existing element because polynomial and
/// series values carry their variable list (and series their order).
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn radd(&self, other: &Self) -> Self;
    fn rsub(&self, other: &Self) -> Self;
    fn rmul(&self, other: &Self) -> Self;
    fn rneg(&self) -> Self;
}

pub trait Field: Ring {
    fn rinv(&self) -> Option<Self>;
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn radd(&self, other: &Self) -> Self {
        self + other
    }
    fn rsub(&self, other: &Self) -> Self {
        self - other
    }
    fn rmul(&self, other: &Self) -> Self {
        self * other
    }
    fn rneg(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn rinv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}
