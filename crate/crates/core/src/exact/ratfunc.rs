use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{MultiPoly, Vars};
use super::rational::{denom_lcm, from_int, numer_gcd};
use super::ring::{Field, Ring};
use super::series::TruncSeries;
use crate::error::{Error, Result};

/// Normalized quotient of two polynomials.
///
/// Numerator and denominator have integer coefficients, are coprime over ℚ,
/// share no common integer factor and the denominator has a positive leading
/// coefficient (graded-lex). Zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Normalizing constructor.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let vars = num.vars().clone();
        if num.is_zero() {
            return Ok(RatFunc { num, den: MultiPoly::one(vars) });
        }
        let (num, den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let l = from_int(denom_lcm(num.terms().values().chain(den.terms().values())));
        let (mut num, mut den) = (num.scale(&l), den.scale(&l));
        let c = numer_gcd(num.terms().values().chain(den.terms().values()));
        if !c.is_one() {
            let s = from_int(c).recip();
            num = num.scale(&s);
            den = den.scale(&s);
        }
        if den.leading_sign() < 0 {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> RatFunc {
        let vars = p.vars().clone();
        RatFunc::new(p, MultiPoly::one(vars)).expect("nonzero denominator")
    }

    pub fn constant(vars: Vars, c: BigRational) -> RatFunc {
        RatFunc::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn zero(vars: Vars) -> RatFunc {
        RatFunc { num: MultiPoly::zero(vars.clone()), den: MultiPoly::one(vars) }
    }

    pub fn one(vars: Vars) -> RatFunc {
        RatFunc { num: MultiPoly::one(vars.clone()), den: MultiPoly::one(vars) }
    }

    pub fn var(vars: Vars, i: usize) -> RatFunc {
        RatFunc::from_poly(MultiPoly::var(vars, i))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The polynomial `num/den` when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<MultiPoly> {
        if self.den.is_constant() {
            Some(self.num.scale(&self.den.constant_term().recip()))
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone()).expect("nonzero");
        }
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
            .expect("nonzero")
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.vars().clone());
        }
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero")
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero")
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Exact value at a rational point; `Pole` if the denominator vanishes.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(point) / d)
    }

    /// `self(Tz)` where `t` holds the rows of `T`.
    pub fn substitute(&self, t: &[Vec<u32>]) -> RatFunc {
        let vars = self.vars().clone();
        let num = self.num.map_monomials(vars.clone(), |m| m.transform(t));
        let den = self.den.map_monomials(vars, |m| m.transform(t));
        // substitution by a monomial map keeps coprimality only when T is
        // nonsingular, so renormalize
        RatFunc::new(num, den).expect("substitution keeps denominators nonzero")
    }

    pub fn map_polys<F: Fn(&MultiPoly) -> MultiPoly>(&self, f: F) -> Result<RatFunc> {
        RatFunc::new(f(&self.num), f(&self.den))
    }

    /// Power-series expansion truncated at total degree `order`.
    pub fn to_series(&self, order: u32) -> Result<TruncSeries> {
        let n = TruncSeries::from_poly(&self.num, order);
        if self.den.is_constant() {
            return Ok(n.scale(&self.den.constant_term().recip()));
        }
        let d = TruncSeries::from_poly(&self.den, order);
        Ok(n.mul(&d.invert()?))
    }

    /// Numerator and denominator of the normalized form as a pair.
    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn parse(s: &str, vars: Vars) -> Result<RatFunc> {
        super::parse::parse_ratfunc(s, vars)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let n = self.num.fmt_with(names);
        if self.den.is_constant() {
            let c = self.den.constant_term();
            if c.is_one() {
                return n;
            }
            let p = self.num.scale(&c.recip());
            return p.fmt_with(names);
        }
        let wrap = |p: &MultiPoly, s: String| if p.len() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(&self.num, n), wrap(&self.den, self.den.fmt_with(names)))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(self.vars()))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({} / {})", self.num, self.den)
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.vars().clone())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.vars().clone())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn radd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn rsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn rmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn rneg(&self) -> Self {
        self.neg()
    }
}

impl Field for RatFunc {
    fn rinv(&self) -> Option<Self> {
        self.inv().ok()
    }
}
