use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::{denom_lcm, fmt_q, from_int, numer_gcd, pow_big};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Shared, immutable list of variable names.
pub type Vars = Arc<[String]>;

/// Sparse multivariate polynomial with rational coefficients.
///
/// No zero coefficient is ever stored; every exponent vector has one entry
/// per variable.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: Vars) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: Vars, c: BigRational) -> Self {
        let n = vars.len();
        Self::monomial(vars, Monomial::one(n), c)
    }

    pub fn var(vars: Vars, i: usize) -> Self {
        let n = vars.len();
        Self::monomial(vars, Monomial::var(n, i), BigRational::one())
    }

    pub fn monomial(vars: Vars, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.len(), vars.len(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { vars, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(vars: Vars, it: I) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.len(), self.vars.len(), "monomial arity");
        if c.is_zero() {
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

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigRational> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other);
        let mut r = MultiPoly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars(), "evaluation arity");
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

    /// Evaluates the variables listed in `assign` (index, value), keeping the
    /// others symbolic.
    pub fn eval_partial(&self, assign: &[(usize, BigRational)]) -> MultiPoly {
        let mut r = MultiPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut e = m.0.clone();
            for (i, x) in assign {
                if e[*i] > 0 {
                    c *= pow_big(x, &e[*i].into());
                    e[*i] = 0;
                }
            }
            r.add_term(Monomial(e), c);
        }
        r
    }

    /// Applies `z^μ -> z^{map(μ)}` term by term.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, vars: Vars, f: F) -> MultiPoly {
        MultiPoly::from_terms(vars, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Re-expresses the polynomial over a larger variable list; `positions[i]`
    /// is the index of variable `i` in `vars`.
    pub fn embed(&self, vars: Vars, positions: &[usize]) -> MultiPoly {
        let n = vars.len();
        self.map_monomials(vars, |m| {
            let mut e = vec![0; n];
            for (i, &p) in positions.iter().enumerate() {
                e[p] = m.0[i];
            }
            Monomial(e)
        })
    }

    /// Same polynomial over a renamed but equally long variable list.
    pub fn with_vars(&self, vars: Vars) -> MultiPoly {
        assert_eq!(vars.len(), self.nvars());
        MultiPoly { vars, terms: self.terms.clone() }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Multiplies by the lcm of the coefficient denominators.
    pub fn clear_denominators(&self) -> (MultiPoly, BigInt) {
        let l = denom_lcm(self.terms.values());
        (self.scale(&from_int(l.clone())), l)
    }

    /// Gcd of the (integer) coefficients; zero for the zero polynomial.
    pub fn integer_content(&self) -> BigInt {
        debug_assert!(self.is_integral());
        numer_gcd(self.terms.values())
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check_vars(d);
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut q = MultiPoly::zero(self.vars.clone());
        let mut r = self.clone();
        while let Some((m, c)) = r.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient(m);
            let qc = c / &lc;
            r = r.sub(&d.mul_monomial(&qm, &qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Splits into coefficients of powers of variable `v`
    /// (coefficients keep the full variable list with exponent 0 at `v`).
    pub fn to_univariate(&self, v: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(self.vars.clone()); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[v] as usize;
            e[v] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[MultiPoly], v: usize, vars: Vars) -> MultiPoly {
        let mut r = MultiPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in c.terms() {
                let mut e = m.0.clone();
                e[v] += k as u32;
                r.add_term(Monomial(e), a.clone());
            }
        }
        r
    }

    /// Sign of the leading coefficient.
    pub fn leading_sign(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }

    /// Formats with the given variable names (defaults to the stored ones).
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { names[j].clone() } else { format!("{}^{}", names[j], e) })
                .collect();
            if mono.is_empty() {
                out.push_str(&fmt_q(&a));
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", fmt_q(&a), mono.join("*")));
            }
        }
        out
    }

    pub fn parse(s: &str, vars: Vars) -> Result<MultiPoly> {
        super::parse::parse_poly(s, vars)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&self.vars))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.vars.clone())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.vars.clone())
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

/// Checks that a set of names has no duplicates.
pub(crate) fn check_distinct(names: &[String]) -> Result<()> {
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Error::NameCollision(a.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;
    use crate::exact::vars;

    #[test]
    fn exact_division() {
        let v = vars(&["x", "y"]);
        let x = MultiPoly::var(v.clone(), 0);
        let y = MultiPoly::var(v.clone(), 1);
        let a = x.add(&y);
        let b = x.sub(&y);
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&x).is_none());
    }

    #[test]
    fn display_grlex_descending() {
        let v = vars(&["z"]);
        let z = MultiPoly::var(v.clone(), 0);
        let p = z.pow(2).sub(&MultiPoly::one(v.clone())).add(&z.scale(&q(1, 2)));
        assert_eq!(p.to_string(), "z^2 + 1/2*z - 1");
    }

    #[test]
    fn partial_evaluation() {
        let v = vars(&["z", "X"]);
        let z = MultiPoly::var(v.clone(), 0);
        let x = MultiPoly::var(v.clone(), 1);
        let p = z.mul(&x).add(&z);
        let s = p.eval_partial(&[(0, q(1, 2))]);
        assert_eq!(s, x.scale(&q(1, 2)).add(&MultiPoly::constant(v, q(1, 2))));
    }
}
