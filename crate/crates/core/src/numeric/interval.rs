use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::bigfloat::{decimal, BigFloat, Round};

/// Closed interval `[lo, hi]` of big floats, every operation rounded
/// outward so the exact result of the operation on any points of the inputs
/// lies inside the output.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
    prec: u32,
}

impl Interval {
    pub fn new(lo: BigFloat, hi: BigFloat, prec: u32) -> Self {
        assert!(lo.cmp_value(&hi) != Ordering::Greater, "interval with lo > hi");
        Interval { lo, hi, prec }
    }

    pub fn point(x: BigFloat) -> Self {
        let prec = x.prec();
        Interval { lo: x.clone(), hi: x, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(BigFloat::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::point(BigFloat::one(prec))
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()), prec)
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        Interval {
            lo: BigFloat::from_int(n, prec, Round::Down),
            hi: BigFloat::from_int(n, prec, Round::Up),
            prec,
        }
    }

    /// Tightest enclosure of a rational at `prec` bits.
    pub fn from_rational(x: &BigRational, prec: u32) -> Self {
        Interval {
            lo: BigFloat::from_rational(x, prec, Round::Down),
            hi: BigFloat::from_rational(x, prec, Round::Up),
            prec,
        }
    }

    /// Enclosure of the rational interval `[a, b]`.
    pub fn from_rational_bounds(a: &BigRational, b: &BigRational, prec: u32) -> Self {
        assert!(a <= b);
        Interval {
            lo: BigFloat::from_rational(a, prec, Round::Down),
            hi: BigFloat::from_rational(b, prec, Round::Up),
            prec,
        }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Interval {
            lo: self.lo.with_prec(prec, Round::Down),
            hi: self.hi.with_prec(prec, Round::Up),
            prec,
        }
    }

    fn p(&self, o: &Interval) -> u32 {
        self.prec.max(o.prec)
    }

    pub fn add(&self, o: &Interval) -> Interval {
        let p = self.p(o);
        Interval { lo: self.lo.add(&o.lo, p, Round::Down), hi: self.hi.add(&o.hi, p, Round::Up), prec: p }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        let p = self.p(o);
        Interval { lo: self.lo.sub(&o.hi, p, Round::Down), hi: self.hi.sub(&o.lo, p, Round::Up), prec: p }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = self.p(o);
        let cands = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lo = cands.iter().map(|(a, b)| a.mul(b, p, Round::Down)).reduce(|x, y| x.min(&y)).unwrap();
        let hi = cands.iter().map(|(a, b)| a.mul(b, p, Round::Up)).reduce(|x, y| x.max(&y)).unwrap();
        Interval { lo, hi, prec: p }
    }

    /// Quotient; `None` when the divisor contains zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let p = self.p(o);
        let cands = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lo = cands.iter().map(|(a, b)| a.div(b, p, Round::Down)).reduce(|x, y| x.min(&y)).unwrap();
        let hi = cands.iter().map(|(a, b)| a.div(b, p, Round::Up)).reduce(|x, y| x.max(&y)).unwrap();
        Some(Interval { lo, hi, prec: p })
    }

    pub fn recip(&self) -> Option<Interval> {
        Interval::one(self.prec).div(self)
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k), prec: self.prec }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            Interval { lo: BigFloat::zero(self.prec), hi: self.hi.max(&self.lo.neg()), prec: self.prec }
        }
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        Interval {
            lo: a.lo.mul(&a.lo, self.prec, Round::Down),
            hi: a.hi.mul(&a.hi, self.prec, Round::Up),
            prec: self.prec,
        }
    }

    /// `self^e` for a non-negative integer exponent.
    pub fn powi(&self, e: &BigUint) -> Interval {
        let mut r = Interval::one(self.prec);
        let bits = e.bits();
        let mut base = self.clone();
        for i in 0..bits {
            if e.bit(i) {
                r = r.mul(&base);
            }
            if i + 1 < bits {
                base = base.sqr();
            }
        }
        r
    }

    pub fn powi_u64(&self, e: u64) -> Interval {
        self.powi(&BigUint::from(e))
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo.to_rational() <= *x && *x <= self.hi.to_rational()
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        self.lo.cmp_value(&o.lo) != Ordering::Greater && o.hi.cmp_value(&self.hi) != Ordering::Greater
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certainly `self < o`.
    pub fn lt(&self, o: &Interval) -> bool {
        self.hi.cmp_value(&o.lo) == Ordering::Less
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo.cmp_value(&o.hi) != Ordering::Greater && o.lo.cmp_value(&self.hi) != Ordering::Greater
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.min(&o.lo), hi: self.hi.max(&o.hi), prec: self.p(o) }
    }

    /// Pointwise maximum.
    pub fn max(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.max(&o.lo), hi: self.hi.max(&o.hi), prec: self.p(o) }
    }

    pub fn width(&self) -> BigFloat {
        self.hi.sub(&self.lo, self.prec, Round::Up)
    }

    /// Midpoint rounded to nearest.
    pub fn mid(&self) -> BigFloat {
        self.lo.add(&self.hi, self.prec + 1, Round::Nearest).mul_pow2(-1).with_prec(self.prec, Round::Nearest)
    }

    /// Upper bound on `|x − mid|` for every `x` in the interval.
    pub fn radius_about(&self, m: &BigFloat) -> BigFloat {
        let a = self.hi.sub(m, 64, Round::Up);
        let b = m.sub(&self.lo, 64, Round::Up);
        a.max(&b).max(&BigFloat::zero(64))
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> BigFloat {
        self.lo.abs().max(&self.hi.abs())
    }

    /// Lower bound on `|x|` over the interval.
    pub fn mig(&self) -> BigFloat {
        if self.contains_zero() { BigFloat::zero(self.prec) } else { self.lo.abs().min(&self.hi.abs()) }
    }

    /// Whether the width is at most `2^-bits` relative to the magnitude
    /// (absolute when the interval contains zero).
    pub fn rel_width_bits(&self) -> i64 {
        let w = self.width();
        if w.is_zero() {
            return i64::MAX;
        }
        let m = self.mag();
        if m.is_zero() {
            return i64::MAX;
        }
        m.msb() - w.msb()
    }

    /// Floor of every point when it is the same integer.
    pub fn floor_if_determined(&self) -> Option<BigInt> {
        let a = self.lo.floor();
        let b = self.hi.floor();
        (a == b).then_some(a)
    }

    /// Decimal `mid ± radius`.
    pub fn to_decimal(&self, digits: usize) -> String {
        let m = self.mid();
        let r = self.radius_about(&m);
        format!("{} ± {}", m.to_decimal(digits, Round::Nearest), decimal(&r.to_rational(), 2, Round::Up))
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            self.lo.to_decimal(20, Round::Down),
            self.hi.to_decimal(20, Round::Up)
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize;
        f.write_str(&self.to_decimal(digits))
    }
}

/// Interval sum of an iterator (empty gives zero).
pub fn sum<'a, I: IntoIterator<Item = &'a Interval>>(xs: I, prec: u32) -> Interval {
    xs.into_iter().fold(Interval::zero(prec), |a, b| a.add(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    #[test]
    fn enclosure_arithmetic() {
        let a = Interval::from_rational(&q(1, 3), 64);
        let b = Interval::from_rational(&q(2, 7), 64);
        let s = a.mul(&b).add(&a).sub(&b);
        let exact = q(1, 3) * q(2, 7) + q(1, 3) - q(2, 7);
        assert!(s.contains(&exact));
        let d = a.div(&b).unwrap();
        assert!(d.contains(&(q(1, 3) / q(2, 7))));
        assert!(a.sub(&a).contains_zero());
    }

    #[test]
    fn huge_power_stays_valid() {
        let x = Interval::from_rational(&q(1, 2), 64);
        let p = x.powi(&BigUint::from(1u64 << 40));
        assert!(p.is_positive());
        assert_eq!(p.lo().msb(), -(1i64 << 40) + 1);
    }
}
