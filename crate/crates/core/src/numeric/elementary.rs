//! Certified natural logarithm and exponential on intervals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::bigfloat::{BigFloat, Round};
use super::interval::Interval;

const GUARD: u32 = 32;

/// `atanh(s)` for a point-ish interval `s` with `|s| <= 1/3`, to about `w` bits.
fn atanh_small(s: &Interval, w: u32) -> Interval {
    let s2 = s.sqr();
    let mut term = s.clone();
    let mut acc = s.clone();
    let mut j: i64 = 1;
    loop {
        term = term.mul(&s2);
        let t = term.div(&Interval::from_i64(2 * j + 1, w)).expect("odd divisor");
        acc = acc.add(&t);
        j += 1;
        let m = term.mag();
        if m.is_zero() || m.msb() < -(w as i64) - 2 {
            // remaining tail ≤ |s|^(2j+1) / (1 - s²) ≤ 2·|term|
            let tail = m.mul_pow2(1).with_prec(w, Round::Up);
            let e = Interval::new(tail.neg(), tail, w);
            return acc.add(&e);
        }
    }
}

/// Enclosure of `ln 2` at `prec` bits.
pub fn ln2(prec: u32) -> Interval {
    let w = prec + GUARD;
    let third = Interval::from_rational(&BigRational::new(1.into(), 3.into()), w);
    atanh_small(&third, w).mul_pow2(1).with_prec(prec)
}

/// `ln x` for a positive big float.
fn ln_point(x: &BigFloat, prec: u32) -> Interval {
    assert!(x.is_positive());
    let w = prec + GUARD;
    let mut k = x.msb();
    let mut y = x.mul_pow2(-k); // y in [1/2, 1)
    let two_thirds = BigFloat::from_rational(&BigRational::new(2.into(), 3.into()), w, Round::Nearest);
    if y.cmp_value(&two_thirds) == Ordering::Less {
        y = y.mul_pow2(1);
        k -= 1;
    }
    // y is exact: only the exponent changed
    let yi = Interval::point(y);
    let one = Interval::one(w);
    let s = yi.sub(&one).div(&yi.add(&one)).expect("positive denominator");
    let ln_y = atanh_small(&s.with_prec(w), w).mul_pow2(1);
    let kb = BigInt::from(k);
    let bits_k = kb.bits() as u32;
    let l2 = ln2(w + bits_k);
    l2.mul(&Interval::from_int(&kb, w + bits_k)).add(&ln_y).with_prec(prec)
}

/// Certified `ln` of an interval; `None` unless the interval is positive.
pub fn ln(x: &Interval) -> Option<Interval> {
    if !x.is_positive() {
        return None;
    }
    let p = x.prec();
    let lo = ln_point(x.lo(), p);
    if x.lo().cmp_value(x.hi()) == Ordering::Equal {
        return Some(lo);
    }
    let hi = ln_point(x.hi(), p);
    Some(Interval::new(lo.lo().clone(), hi.hi().clone(), p))
}

/// `ln` of a positive rational.
pub fn ln_rational(x: &BigRational, prec: u32) -> Option<Interval> {
    ln(&Interval::from_rational(x, prec + 8)).map(|i| i.with_prec(prec))
}

fn exp_point(x: &BigFloat, prec: u32) -> Interval {
    let s: u32 = 8;
    let approx = x.to_f64() / std::f64::consts::LN_2;
    let n = if approx.is_finite() { approx.round() as i64 } else { panic!("exp argument out of range") };
    let nb = BigInt::from(n);
    let w = prec + GUARD + s + nb.bits() as u32;
    let r = Interval::point(x.clone())
        .with_prec(w)
        .sub(&ln2(w + nb.bits() as u32).mul(&Interval::from_int(&nb, w)));
    let r = r.mul_pow2(-(s as i64));
    let mut term = Interval::one(w);
    let mut acc = Interval::one(w);
    let mut j: i64 = 1;
    loop {
        term = term.mul(&r).div(&Interval::from_i64(j, w)).expect("nonzero");
        acc = acc.add(&term);
        j += 1;
        let m = term.mag();
        if m.is_zero() || m.msb() < -(w as i64) - 2 {
            // |r| < 1/2, so the tail is at most twice the last term
            let tail = m.mul_pow2(1).with_prec(w, Round::Up);
            acc = acc.add(&Interval::new(tail.neg(), tail, w));
            break;
        }
    }
    for _ in 0..s {
        acc = acc.sqr();
    }
    acc.mul_pow2(n).with_prec(prec)
}

/// Certified `exp` of an interval.
pub fn exp(x: &Interval) -> Interval {
    let p = x.prec();
    let lo = exp_point(x.lo(), p);
    if x.lo().cmp_value(x.hi()) == Ordering::Equal {
        return lo;
    }
    let hi = exp_point(x.hi(), p);
    Interval::new(lo.lo().clone(), hi.hi().clone(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qi};

    #[test]
    fn ln2_digits() {
        let l = ln2(128);
        assert!(l.to_decimal(30).starts_with("0.693147180559945309417232121458"));
        assert!(l.rel_width_bits() > 120);
    }

    #[test]
    fn ln_and_exp_round_trip() {
        for (n, d) in [(1, 2), (3, 1), (10, 7), (1, 1000)] {
            let x = q(n, d);
            let l = ln_rational(&x, 100).unwrap();
            let e = exp(&l);
            assert!(e.contains(&x), "{x}: {e:?}");
            assert!(e.rel_width_bits() > 80);
        }
        assert!(ln_rational(&qi(1), 64).unwrap().contains_zero());
        assert!(ln(&Interval::from_i64(-1, 64)).is_none());
    }

    #[test]
    fn inverse_logs() {
        let l3 = ln_rational(&qi(3), 64).unwrap();
        let t = Interval::one(64).div(&l3).unwrap();
        assert!(t.to_decimal(7).starts_with("0.910239"));
    }
}
