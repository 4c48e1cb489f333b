use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::{MultiPoly, Vars};
use super::rational::pow_big;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Multivariate power series over ℚ truncated at total degree `order`:
/// only terms of total degree `< order` are kept.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    vars: Vars,
    order: u32,
    terms: BTreeMap<Monomial, BigRational>,
}

impl TruncSeries {
    pub fn zero(vars: Vars, order: u32) -> Self {
        TruncSeries { vars, order, terms: BTreeMap::new() }
    }

    pub fn one(vars: Vars, order: u32) -> Self {
        Self::constant(vars, order, BigRational::one())
    }

    pub fn constant(vars: Vars, order: u32, c: BigRational) -> Self {
        let n = vars.len();
        let mut s = Self::zero(vars, order);
        s.add_term(Monomial::one(n), c);
        s
    }

    pub fn var(vars: Vars, order: u32, i: usize) -> Self {
        let n = vars.len();
        let mut s = Self::zero(vars, order);
        s.add_term(Monomial::var(n, i), BigRational::one());
        s
    }

    /// Truncation of a polynomial.
    pub fn from_poly(p: &MultiPoly, order: u32) -> Self {
        let mut s = Self::zero(p.vars().clone(), order);
        for (m, c) in p.terms() {
            s.add_term(m.clone(), c.clone());
        }
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(
        vars: Vars,
        order: u32,
        it: I,
    ) -> Self {
        let mut s = Self::zero(vars, order);
        for (m, c) in it {
            s.add_term(m, c);
        }
        s
    }

    /// Adds `c z^m`, ignoring it when `deg m >= order`.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() || m.degree() >= self.order as u64 {
            return;
        }
        let remove = match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(m, c);
                return;
            }
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Lowest total degree of a stored term.
    pub fn valuation(&self) -> Option<u64> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Drops everything of degree `>= order` (which may only lower the order).
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        TruncSeries {
            vars: self.vars.clone(),
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < order as u64)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same terms with a larger nominal order (exact when `self` is a
    /// polynomial known to have no terms of degree between the orders).
    pub fn with_order(&self, order: u32) -> Self {
        let mut s = TruncSeries { vars: self.vars.clone(), order, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            s.add_term(m.clone(), c.clone());
        }
        s
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_terms(self.vars.clone(), self.terms.clone())
    }

    fn check(&self, o: &TruncSeries) {
        assert!(self.vars == o.vars, "series over different variables");
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        self.check(o);
        let mut r = self.truncate(o.order);
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            vars: self.vars.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> TruncSeries {
        if c.is_zero() {
            return TruncSeries::zero(self.vars.clone(), self.order);
        }
        TruncSeries {
            vars: self.vars.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        self.check(o);
        let order = self.order.min(o.order);
        let mut r = TruncSeries::zero(self.vars.clone(), order);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da >= order as u64 {
                break;
            }
            for (mb, cb) in &o.terms {
                if da + mb.degree() >= order as u64 {
                    break;
                }
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    /// Multiplicative inverse modulo degree `order`.
    pub fn invert(&self) -> Result<TruncSeries> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        // s = c0 (1 - u)  =>  1/s = c0⁻¹ Σ u^j ; u has valuation >= 1
        let mut u = self.scale(&inv0).neg();
        u.add_term(Monomial::one(self.nvars()), BigRational::one());
        let one = TruncSeries::one(self.vars.clone(), self.order);
        let mut acc = one.clone();
        let mut power = one;
        for _ in 1..self.order {
            power = power.mul(&u);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&inv0))
    }

    /// `s(Tz)`: each `z^μ` becomes `z^{Tᵗμ}`; terms reaching degree `order`
    /// are dropped. `t` holds the rows of `T`.
    pub fn substitute(&self, t: &[Vec<u32>]) -> Result<TruncSeries> {
        if t.len() != self.nvars() || t.iter().any(|r| r.len() != self.nvars()) {
            return Err(Error::DimensionMismatch(format!(
                "transform of size {} for a series in {} variables",
                t.len(),
                self.nvars()
            )));
        }
        let mut r = TruncSeries::zero(self.vars.clone(), self.order);
        for (m, c) in &self.terms {
            let e = m.transform_wide(t);
            if e.iter().sum::<u64>() >= self.order as u64 {
                continue;
            }
            r.add_term(Monomial(e.into_iter().map(|x| x as u32).collect()), c.clone());
        }
        Ok(r)
    }

    /// Exact value of the stored (finite) sum at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= pow_big(x, &e.into());
                }
            }
            acc += t;
        }
        acc
    }

    /// Sum of absolute values of the stored coefficients.
    pub fn abs_coeff_sum(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Whether `self ≡ o` modulo total degree `n`.
    pub fn eq_mod(&self, o: &TruncSeries, n: u32) -> bool {
        self.first_difference(o, n).is_none()
    }

    /// Smallest (graded-lex) monomial of degree `< n` where the coefficients
    /// differ, with both coefficients.
    pub fn first_difference(
        &self,
        o: &TruncSeries,
        n: u32,
    ) -> Option<(Monomial, BigRational, BigRational)> {
        let keys: std::collections::BTreeSet<&Monomial> =
            self.terms.keys().chain(o.terms.keys()).filter(|m| m.degree() < n as u64).collect();
        for m in keys {
            let a = self.coeff(m);
            let b = o.coeff(m);
            if a != b {
                return Some((m.clone(), a, b));
            }
        }
        None
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let p = self.to_poly().fmt_with(names);
        format!("{} + O(deg {})", p, self.order)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&self.vars))
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({})", self)
    }
}

impl Ring for TruncSeries {
    fn zero_like(&self) -> Self {
        TruncSeries::zero(self.vars.clone(), self.order)
    }
    fn one_like(&self) -> Self {
        TruncSeries::one(self.vars.clone(), self.order)
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qi;
    use crate::exact::vars;

    #[test]
    fn substitute_squares_single_variable() {
        let v = vars(&["z1"]);
        let s = TruncSeries::var(v.clone(), 10, 0);
        let r = s.substitute(&[vec![2]]).unwrap();
        assert_eq!(r, TruncSeries::from_terms(v, 10, [(Monomial(vec![2]), qi(1))]));
    }

    #[test]
    fn substitute_upper_unitriangular() {
        // Tz = (z1 z2, z2), so (Tz)^(1,1) = z1 z2^2; evaluating at a point
        // must agree with evaluating the original at the transformed point.
        let v = vars(&["z1", "z2"]);
        let s = TruncSeries::from_terms(v.clone(), 10, [(Monomial(vec![1, 1]), qi(1))]);
        let r = s.substitute(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(r.terms().len(), 1);
        assert_eq!(r.coeff(&Monomial(vec![1, 2])), qi(1));
        let (a, b) = (crate::exact::rational::q(1, 2), crate::exact::rational::q(1, 3));
        assert_eq!(r.eval(&[a.clone(), b.clone()]), s.eval(&[&a * &b, b]));
    }

    #[test]
    fn substitute_constant_is_fixed() {
        let v = vars(&["z1", "z2"]);
        let s = TruncSeries::one(v, 5);
        assert_eq!(s.substitute(&[vec![3, 1], vec![1, 2]]).unwrap(), s);
    }

    #[test]
    fn substitute_dimension_mismatch() {
        let v = vars(&["z1", "z2"]);
        let s = TruncSeries::one(v, 5);
        assert!(matches!(s.substitute(&[vec![2]]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn invert_geometric() {
        let v = vars(&["z"]);
        let s = TruncSeries::from_terms(v.clone(), 6, [(Monomial(vec![0]), qi(1)), (Monomial(vec![1]), qi(-1))]);
        let inv = s.invert().unwrap();
        for k in 0..6 {
            assert_eq!(inv.coeff(&Monomial(vec![k])), qi(1));
        }
        assert!(TruncSeries::zero(v, 4).invert().is_err());
    }

    #[test]
    fn invert_two_variables() {
        let v = vars(&["z1", "z2"]);
        let s = TruncSeries::from_terms(
            v.clone(),
            4,
            [(Monomial(vec![0, 0]), qi(1)), (Monomial(vec![1, 0]), qi(1)), (Monomial(vec![0, 1]), qi(1))],
        );
        let inv = s.invert().unwrap();
        assert_eq!(inv.coeff(&Monomial(vec![1, 0])), qi(-1));
        assert_eq!(inv.coeff(&Monomial(vec![1, 1])), qi(2));
        assert_eq!(inv.coeff(&Monomial(vec![0, 2])), qi(1));
        assert_eq!(inv.mul(&s), TruncSeries::one(v, 4));
    }
}
