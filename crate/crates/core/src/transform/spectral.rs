use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::normal_form::normal_form;
use super::Transform;
use crate::error::{Error, Result};
use crate::exact::coprime::{coprime_base, exponents_over};
use crate::exact::rational::{q, qi};
use crate::exact::upoly::UPoly;
use crate::numeric::Interval;

/// The largest real root of an integer polynomial, held as an isolating
/// rational interval `(lo, hi]` (or the exact value when `lo == hi`).
#[derive(Clone, Debug)]
pub struct PerronRoot {
    poly: UPoly,
    sturm: Vec<UPoly>,
    lo: BigRational,
    hi: BigRational,
}

impl PerronRoot {
    /// Largest real root of `p`; `None` when `p` has no real root.
    pub fn largest_root_of(p: &UPoly) -> Option<PerronRoot> {
        let poly = p.squarefree();
        let (lo, hi) = poly.largest_real_root(&q(1, 1024))?;
        let sturm = poly.sturm();
        Some(PerronRoot { poly, sturm, lo, hi })
    }

    /// Perron root of a non-negative matrix block (its spectral radius).
    pub fn of_block(t: &Transform) -> PerronRoot {
        // a non-negative matrix always has its spectral radius as an eigenvalue
        Self::largest_root_of(&t.charpoly()).expect("spectral radius is a real eigenvalue")
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The value when it is rational (then an integer, as an algebraic
    /// integer).
    pub fn exact_value(&self) -> Option<&BigRational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn bounds(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn refine(&mut self, width: &BigRational) {
        if self.is_exact() || &self.hi - &self.lo <= *width {
            return;
        }
        let (lo, hi) = UPoly::refine_root(&self.sturm, &self.lo, &self.hi, width);
        self.lo = lo;
        self.hi = hi;
    }

    /// Enclosure as a certified interval at `prec` bits.
    pub fn enclosure(&mut self, prec: u32) -> Interval {
        let w = BigRational::new(BigInt::one(), BigInt::one() << (prec as usize + 4));
        self.refine(&w);
        Interval::from_rational_bounds(&self.lo, &self.hi, prec)
    }

    /// Whether this root is a root of `g`.
    fn is_root_of(&self, g: &UPoly) -> bool {
        if self.is_exact() {
            return g.eval(&self.lo).is_zero();
        }
        // the interval isolates the root among roots of `poly`, and every
        // root of g is a root of poly when g divides poly
        let st = g.sturm();
        UPoly::count_roots(&st, &self.lo, &self.hi) == 1
    }

    /// Exact equality test through the gcd of the two polynomials.
    pub fn equals(&self, o: &PerronRoot) -> bool {
        let g = self.poly.gcd(&o.poly);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        self.is_root_of(&g) && o.is_root_of(&g)
    }

    /// Exact comparison: equality through [`equals`](Self::equals), otherwise
    /// refinement until the isolating intervals separate.
    pub fn compare(&mut self, o: &mut PerronRoot) -> Ordering {
        if self.equals(o) {
            return Ordering::Equal;
        }
        let mut w = q(1, 16);
        loop {
            // (lo, hi] intervals; exact ones are points
            if self.hi < o.lo || (self.hi == o.lo && !o.is_exact()) {
                return Ordering::Less;
            }
            if o.hi < self.lo || (o.hi == self.lo && !self.is_exact()) {
                return Ordering::Greater;
            }
            if self.is_exact() && o.is_exact() {
                return self.lo.cmp(&o.lo);
            }
            self.refine(&w);
            o.refine(&w);
            w /= qi(16);
        }
    }
}

/// Characteristic polynomial and an isolating enclosure of `ρ(T)`.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub char_poly: UPoly,
    pub rho_lo: BigRational,
    pub rho_hi: BigRational,
    pub enclosure_width: BigRational,
    /// Index (into the normal form's blocks) of a block attaining `ρ(T)`.
    pub attained_by_block: usize,
    pub root: PerronRoot,
}

impl SpectralData {
    pub fn rho_interval(&self, prec: u32) -> Interval {
        Interval::from_rational_bounds(&self.rho_lo, &self.rho_hi, prec)
    }

    /// `ρ(T)` when it is an integer.
    pub fn exact(&self) -> Option<&BigRational> {
        self.root.exact_value()
    }
}

/// `ρ(T)` as the largest Perron root over the diagonal blocks of the normal
/// form, enclosed in an interval of width `<= width`.
pub fn spectral_radius(t: &Transform, width: &BigRational) -> Result<SpectralData> {
    if !width.is_positive() {
        return Err(Error::Invalid("enclosure width must be positive".into()));
    }
    let nf = normal_form(t);
    let mut roots: Vec<PerronRoot> = nf.diagonal_blocks.iter().map(PerronRoot::of_block).collect();
    let mut best = 0;
    for i in 1..roots.len() {
        let (a, b) = two_mut(&mut roots, best, i);
        if a.compare(b) == Ordering::Less {
            best = i;
        }
    }
    let mut root = roots.swap_remove(best);
    root.refine(width);
    let (lo, hi) = root.bounds();
    Ok(SpectralData {
        char_poly: t.charpoly(),
        rho_lo: lo.clone(),
        rho_hi: hi.clone(),
        enclosure_width: hi - lo,
        attained_by_block: best,
        root,
    })
}

pub(crate) fn two_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert!(i != j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &mut a[j])
    }
}

/// Outcome of comparing `log ρ(T₁)` and `log ρ(T₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogRatio {
    /// `log ρ(T₁) / log ρ(T₂) = p/q`, witnessed by `ρ(T₁)^q = ρ(T₂)^p`.
    Rational { p: u64, q: u64 },
    /// Both radii are integers with no common power.
    IrrationalCertified,
    /// No coincidence with exponents up to the bound.
    Unknown { exp_bound: u64 },
}

/// Decides whether `log ρ(T₁)/log ρ(T₂)` is rational.
///
/// Integer radii are settled through a coprime base of the two integers.
/// Otherwise exponent pairs `p, q <= exp_bound` are tested exactly by
/// comparing the Perron roots of `T₁^q` and `T₂^p`.
pub fn spectral_log_ratio(t1: &Transform, t2: &Transform, exp_bound: u64) -> Result<LogRatio> {
    if exp_bound < 1 {
        return Err(Error::Invalid("exponent bound must be at least 1".into()));
    }
    let s1 = spectral_radius(t1, &q(1, 1 << 20))?;
    let s2 = spectral_radius(t2, &q(1, 1 << 20))?;
    for s in [&s1, &s2] {
        if s.rho_hi <= qi(1) {
            return Err(Error::Hypothesis("spectral radius must exceed 1".into()));
        }
    }
    if let (Some(a), Some(b)) = (s1.exact(), s2.exact()) {
        let a = a.to_integer().to_biguint().expect("positive");
        let b = b.to_integer().to_biguint().expect("positive");
        return Ok(integer_log_ratio(&a, &b));
    }
    let l1 = s1.rho_lo.to_f64().unwrap_or(f64::NAN).ln();
    let l2 = s2.rho_lo.to_f64().unwrap_or(f64::NAN).ln();
    let b1 = block_of(t1, s1.attained_by_block);
    let b2 = block_of(t2, s2.attained_by_block);
    for qq in 1..=exp_bound {
        for p in 1..=exp_bound {
            if p.gcd(&qq) != 1 {
                continue;
            }
            // cheap filter before the exact test
            if ((qq as f64) * l1 - (p as f64) * l2).abs() > 1e-3 * (qq as f64 * l1).abs().max(1.0) {
                continue;
            }
            let r1 = PerronRoot::of_block(&b1.pow(qq));
            let r2 = PerronRoot::of_block(&b2.pow(p));
            if r1.equals(&r2) {
                return Ok(LogRatio::Rational { p, q: qq });
            }
        }
    }
    Ok(LogRatio::Unknown { exp_bound })
}

fn block_of(t: &Transform, b: usize) -> Transform {
    let nf = normal_form(t);
    nf.diagonal_blocks[b].clone()
}

/// `log a / log b` for integers `a, b > 1`.
fn integer_log_ratio(a: &BigUint, b: &BigUint) -> LogRatio {
    let base = coprime_base(&[a.clone(), b.clone()]);
    let ea = exponents_over(&base, a).expect("base covers input");
    let eb = exponents_over(&base, b).expect("base covers input");
    // proportional exponent vectors: ea·q = eb·p
    let k = ea.iter().position(|&x| x > 0).expect("a > 1");
    if eb[k] == 0 {
        return LogRatio::IrrationalCertified;
    }
    let g = ea[k].gcd(&eb[k]);
    let (p, qq) = (ea[k] / g, eb[k] / g);
    if ea.iter().zip(&eb).all(|(&x, &y)| x * qq == y * p) {
        LogRatio::Rational { p, q: qq }
    } else {
        LogRatio::IrrationalCertified
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_examples() {
        let s = spectral_radius(&Transform::scalar(2), &q(1, 100)).unwrap();
        assert_eq!((s.rho_lo.clone(), s.rho_hi.clone()), (qi(2), qi(2)));
        let fib = Transform::from_u64(&[vec![1, 1], vec![1, 0]]);
        let s = spectral_radius(&fib, &q(1, 100000)).unwrap();
        assert!(s.rho_lo >= q(16180, 10000) && s.rho_hi <= q(16181, 10000));
        let d = Transform::from_u64(&[vec![2, 0], vec![0, 3]]);
        let s = spectral_radius(&d, &q(1, 100)).unwrap();
        assert!(s.rho_lo <= qi(3) && qi(3) <= s.rho_hi);
    }

    #[test]
    fn equal_irrational_roots_detected() {
        let fib = Transform::from_u64(&[vec![1, 1], vec![1, 0]]);
        let other = Transform::from_u64(&[vec![0, 1], vec![1, 1]]);
        let a = PerronRoot::of_block(&fib);
        let b = PerronRoot::of_block(&other);
        assert!(a.equals(&b));
        let c = PerronRoot::of_block(&Transform::from_u64(&[vec![1, 2], vec![1, 0]]));
        assert!(!a.equals(&c));
    }

    #[test]
    fn log_ratios() {
        let two = Transform::scalar(2);
        assert_eq!(spectral_log_ratio(&two, &Transform::scalar(3), 8).unwrap(), LogRatio::IrrationalCertified);
        assert_eq!(spectral_log_ratio(&two, &Transform::scalar(4), 8).unwrap(), LogRatio::Rational { p: 1, q: 2 });
        let fib = Transform::from_u64(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(spectral_log_ratio(&two, &fib, 8).unwrap(), LogRatio::Unknown { exp_bound: 8 });
        assert!(matches!(spectral_log_ratio(&Transform::scalar(1), &two, 8), Err(Error::Hypothesis(_))));
        let fib2 = fib.pow(2);
        assert_eq!(spectral_log_ratio(&fib2, &fib, 8).unwrap(), LogRatio::Rational { p: 2, q: 1 });
    }
}
