//! Dense univariate polynomials over ℚ with real-root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_q, from_int, qi};

/// Coefficients from the constant term upwards, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct UPoly {
    c: Vec<BigRational>,
}

impl UPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| qi(x)).collect())
    }

    pub fn from_ints(c: &[BigInt]) -> Self {
        Self::new(c.iter().cloned().map(from_int).collect())
    }

    pub fn zero() -> Self {
        UPoly { c: vec![] }
    }

    pub fn one() -> Self {
        UPoly { c: vec![BigRational::one()] }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        UPoly { c }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let z = BigRational::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> UPoly {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, s: &BigRational) -> UPoly {
        UPoly::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.lc().recip();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] * &lc_inv;
            if !f.is_zero() {
                for (i, b) in d.c.iter().enumerate() {
                    r[k + i] -= &f * b;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    pub fn divides(&self, p: &UPoly) -> bool {
        p.rem(self).is_zero()
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd (zero when both are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * qi(i as i64)).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut r = UPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Cauchy bound: every complex root has modulus `< bound`.
    pub fn root_bound(&self) -> BigRational {
        let lc = self.lc().abs();
        let m = self.c[..self.c.len() - 1].iter().map(|a| a.abs() / &lc).max();
        BigRational::one() + m.unwrap_or_else(BigRational::zero)
    }

    /// Sturm sequence of the squarefree part.
    pub fn sturm(&self) -> Vec<UPoly> {
        let p = self.squarefree();
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    /// Number of distinct real roots in `(a, b]`, `a < b`.
    pub fn count_roots(sturm: &[UPoly], a: &BigRational, b: &BigRational) -> usize {
        sign_changes(sturm, a) - sign_changes(sturm, b)
    }

    /// Rational interval `[lo, hi]` of width `<= width` containing the
    /// largest real root and no other root; `lo == hi` when the root is an
    /// integer. `None` when there is no real root.
    pub fn largest_real_root(&self, width: &BigRational) -> Option<(BigRational, BigRational)> {
        let sp = self.squarefree();
        if sp.degree()? == 0 {
            return None;
        }
        let st = sp.sturm();
        let bound = sp.root_bound();
        let mut lo = -bound.clone();
        let mut hi = bound;
        if Self::count_roots(&st, &lo, &hi) == 0 {
            return None;
        }
        let two = qi(2);
        loop {
            let n = Self::count_roots(&st, &lo, &hi);
            let small = &hi - &lo <= BigRational::one();
            if n == 1 && small {
                let f = from_int(hi.floor().to_integer());
                if f >= lo && sp.eval(&f).is_zero() {
                    return Some((f.clone(), f));
                }
            }
            if n == 1 && &hi - &lo <= *width {
                return Some((lo, hi));
            }
            let mid = (&lo + &hi) / &two;
            if Self::count_roots(&st, &mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    /// Refines an isolating interval `(lo, hi]` of a root of the squarefree
    /// polynomial with Sturm sequence `st` down to `width`.
    pub fn refine_root(
        st: &[UPoly],
        lo: &BigRational,
        hi: &BigRational,
        width: &BigRational,
    ) -> (BigRational, BigRational) {
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        let two = qi(2);
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / &two;
            if Self::count_roots(st, &mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    /// Whether all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(BigRational::is_integer)
    }

    /// The `k`-th cyclotomic polynomial.
    pub fn cyclotomic(k: u64) -> UPoly {
        assert!(k >= 1);
        let mut p = UPoly::monomial(k as usize).sub(&UPoly::one());
        for d in 1..k {
            if k.is_multiple_of(d) {
                p = p.divrem(&UPoly::cyclotomic(d)).0;
            }
        }
        p
    }
}

/// Euler's totient.
pub fn euler_phi(k: u64) -> u64 {
    let mut n = k;
    let mut r = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// All `k` with `φ(k) <= n`, increasing. Since `φ(k) >= sqrt(k/2)`, it is
/// enough to scan `k <= 2n²` (and `k <= 2` when `n = 1`).
pub fn totient_at_most(n: u64) -> Vec<u64> {
    let limit = (2 * n * n).max(2);
    (1..=limit).filter(|&k| euler_phi(k) <= n).collect()
}

/// Least common multiple of `1..=k` style sets.
pub fn lcm_all(xs: &[u64]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, &x| acc.lcm(&BigInt::from(x)))
}

fn sign_changes(seq: &[UPoly], x: &BigRational) -> usize {
    let mut last = 0;
    let mut n = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let neg = a.is_negative();
            let abs = a.abs();
            let body = if mono.is_empty() {
                fmt_q(&abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_q(&abs), mono)
            };
            parts.push((neg, body));
        }
        for (i, (neg, body)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(UPoly::cyclotomic(1), UPoly::from_i64(&[-1, 1]));
        assert_eq!(UPoly::cyclotomic(2), UPoly::from_i64(&[1, 1]));
        assert_eq!(UPoly::cyclotomic(6), UPoly::from_i64(&[1, -1, 1]));
        assert_eq!(UPoly::cyclotomic(12), UPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn totients() {
        assert_eq!(totient_at_most(1), vec![1, 2]);
        assert_eq!(totient_at_most(2), vec![1, 2, 3, 4, 6]);
    }

    #[test]
    fn golden_ratio_isolated() {
        let p = UPoly::from_i64(&[-1, -1, 1]);
        let (lo, hi) = p.largest_real_root(&q(1, 100000)).unwrap();
        assert!(lo >= q(16180, 10000) && hi <= q(16181, 10000));
    }

    #[test]
    fn integer_root_exact() {
        let p = UPoly::from_i64(&[-2, 1]).mul(&UPoly::from_i64(&[1, 1]));
        assert_eq!(p.largest_real_root(&q(1, 10)), Some((qi(2), qi(2))));
        assert_eq!(UPoly::from_i64(&[1, 0, 1]).largest_real_root(&q(1, 10)), None);
    }

    #[test]
    fn squarefree_and_gcd() {
        let p = UPoly::from_i64(&[-1, 1]).pow(3).mul(&UPoly::from_i64(&[2, 1]));
        assert_eq!(p.squarefree(), UPoly::from_i64(&[-2, 1, 1]));
        let g = p.gcd(&UPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(g, UPoly::from_i64(&[-1, 1]));
    }
}
