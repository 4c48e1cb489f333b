use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::pow_big;
use crate::exact::{Monomial, TruncSeries};
use crate::numeric::Interval;

/// A base `γ` of an exponential term: a nonzero number known exactly or by
/// an enclosure, with a tag recording where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub tag: String,
    pub exact: Option<BigRational>,
    pub value: Interval,
}

impl Gamma {
    pub fn rational(x: BigRational, tag: &str, prec: u32) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::Invalid("zero base in an exponential term".into()));
        }
        Ok(Gamma { tag: tag.into(), value: Interval::from_rational(&x, prec), exact: Some(x) })
    }

    pub fn numeric(value: Interval, tag: &str) -> Result<Self> {
        if value.contains_zero() {
            return Err(Error::Invalid("base enclosure contains zero".into()));
        }
        Ok(Gamma { tag: tag.into(), exact: None, value })
    }

    fn key(&self) -> String {
        match &self.exact {
            Some(x) => format!("{}={}", self.tag, x),
            None => format!("{}~{:?}", self.tag, self.value),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExpCoeff {
    Scalar(BigRational),
    Series(TruncSeries),
}

impl ExpCoeff {
    fn is_zero(&self) -> bool {
        match self {
            ExpCoeff::Scalar(c) => c.is_zero(),
            ExpCoeff::Series(s) => s.is_zero(),
        }
    }

    fn add(&self, o: &ExpCoeff) -> ExpCoeff {
        match (self, o) {
            (ExpCoeff::Scalar(a), ExpCoeff::Scalar(b)) => ExpCoeff::Scalar(a + b),
            (ExpCoeff::Series(a), ExpCoeff::Series(b)) => ExpCoeff::Series(a.add(b)),
            (ExpCoeff::Series(s), ExpCoeff::Scalar(c)) | (ExpCoeff::Scalar(c), ExpCoeff::Series(s)) => {
                ExpCoeff::Series(s.add(&TruncSeries::constant(s.vars().clone(), s.order(), c.clone())))
            }
        }
    }
}

/// `c · Π_i γ_i^{k_i} k_i^{j_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm {
    pub gammas: Vec<Gamma>,
    pub j: Vec<u32>,
    pub coeff: ExpCoeff,
}

/// Finite sum of exponential terms in `r` integer arguments, with equal
/// `(γ, j)` merged and zero terms removed.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPoly {
    r: usize,
    terms: Vec<ExpTerm>,
}

impl ExpPoly {
    pub fn new(r: usize, terms: Vec<ExpTerm>) -> Result<Self> {
        let mut merged: BTreeMap<(Vec<String>, Vec<u32>), ExpTerm> = BTreeMap::new();
        for t in terms {
            if t.gammas.len() != r || t.j.len() != r {
                return Err(Error::DimensionMismatch(format!("exponential term with {} bases for {r} arguments", t.gammas.len())));
            }
            let key = (t.gammas.iter().map(Gamma::key).collect(), t.j.clone());
            match merged.get_mut(&key) {
                Some(e) => e.coeff = e.coeff.add(&t.coeff),
                None => {
                    merged.insert(key, t);
                }
            }
        }
        Ok(ExpPoly { r, terms: merged.into_values().filter(|t| !t.coeff.is_zero()).collect() })
    }

    pub fn zero(r: usize) -> Self {
        ExpPoly { r, terms: Vec::new() }
    }

    pub fn arity(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExpValue {
    Exact(BigRational),
    Scalar(Interval),
    /// Coefficientwise enclosures of a series value.
    Series(BTreeMap<Monomial, Interval>),
}

/// `ψ(k)` at `prec` bits; exact when every base and coefficient is rational.
pub fn exp_poly_eval(psi: &ExpPoly, k: &[u64], prec: u32) -> Result<ExpValue> {
    if k.len() != psi.r {
        return Err(Error::DimensionMismatch(format!("{} arguments for an exponential polynomial in {}", k.len(), psi.r)));
    }
    let all_exact = psi.terms.iter().all(|t| t.gammas.iter().all(|g| g.exact.is_some()));
    let any_series = psi.terms.iter().any(|t| matches!(t.coeff, ExpCoeff::Series(_)));
    let poly_part = |j: &[u32]| -> BigRational {
        k.iter().zip(j).map(|(&ki, &ji)| pow_big(&BigRational::from_integer(ki.into()), &BigUint::from(ji))).product()
    };
    if all_exact {
        let factor = |t: &ExpTerm| -> BigRational {
            let g: BigRational = t
                .gammas
                .iter()
                .zip(k)
                .map(|(g, &ki)| pow_big(g.exact.as_ref().expect("exact"), &BigUint::from(ki)))
                .product();
            g * poly_part(&t.j)
        };
        if !any_series {
            let mut acc = BigRational::zero();
            for t in &psi.terms {
                if let ExpCoeff::Scalar(c) = &t.coeff {
                    acc += c * factor(t);
                }
            }
            return Ok(ExpValue::Exact(acc));
        }
        let mut out: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for t in &psi.terms {
            let f = factor(t);
            add_coeff(&t.coeff, |m, c| *out.entry(m).or_insert_with(BigRational::zero) += c * &f);
        }
        return Ok(ExpValue::Series(
            out.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, Interval::from_rational(&c, prec))).collect(),
        ));
    }
    let factor = |t: &ExpTerm| -> Interval {
        let mut acc = Interval::from_rational(&poly_part(&t.j), prec);
        for (g, &ki) in t.gammas.iter().zip(k) {
            acc = acc.mul(&g.value.with_prec(prec).powi_u64(ki));
        }
        acc
    };
    if !any_series {
        let mut acc = Interval::zero(prec);
        for t in &psi.terms {
            if let ExpCoeff::Scalar(c) = &t.coeff {
                acc = acc.add(&Interval::from_rational(c, prec).mul(&factor(t)));
            }
        }
        return Ok(ExpValue::Scalar(acc));
    }
    let mut out: BTreeMap<Monomial, Interval> = BTreeMap::new();
    for t in &psi.terms {
        let f = factor(t);
        add_coeff(&t.coeff, |m, c| {
            let term = Interval::from_rational(&c, prec).mul(&f);
            let e = out.entry(m).or_insert_with(|| Interval::zero(prec));
            *e = e.add(&term);
        });
    }
    Ok(ExpValue::Series(out))
}

fn add_coeff<F: FnMut(Monomial, BigRational)>(c: &ExpCoeff, mut f: F) {
    match c {
        ExpCoeff::Scalar(x) => f(Monomial(Vec::new()), x.clone()),
        ExpCoeff::Series(s) => {
            for (m, x) in s.terms() {
                f(m.clone(), x.clone());
            }
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qi;

    fn g(x: i64) -> Gamma {
        Gamma::rational(qi(x), "test", 64).unwrap()
    }

    fn term(gs: &[i64], j: &[u32], c: i64) -> ExpTerm {
        ExpTerm { gammas: gs.iter().map(|&x| g(x)).collect(), j: j.to_vec(), coeff: ExpCoeff::Scalar(qi(c)) }
    }

    #[test]
    fn examples() {
        let p = ExpPoly::new(1, vec![term(&[2], &[0], 1)]).unwrap();
        assert_eq!(exp_poly_eval(&p, &[5], 64).unwrap(), ExpValue::Exact(qi(32)));
        let p = ExpPoly::new(2, vec![term(&[1, 3], &[1, 0], 1)]).unwrap();
        assert_eq!(exp_poly_eval(&p, &[2, 3], 64).unwrap(), ExpValue::Exact(qi(54)));
        assert_eq!(exp_poly_eval(&ExpPoly::zero(2), &[2, 3], 64).unwrap(), ExpValue::Exact(qi(0)));
    }

    #[test]
    fn merging_and_numeric_bases() {
        let p = ExpPoly::new(1, vec![term(&[2], &[1], 3), term(&[2], &[1], -3)]).unwrap();
        assert!(p.terms().is_empty());
        let ln2 = crate::numeric::ln2(80);
        let gamma = Gamma::numeric(ln2.clone(), "ln 2").unwrap();
        let p = ExpPoly::new(1, vec![ExpTerm { gammas: vec![gamma], j: vec![0], coeff: ExpCoeff::Scalar(qi(1)) }]).unwrap();
        match exp_poly_eval(&p, &[3], 80).unwrap() {
            ExpValue::Scalar(v) => assert!(v.overlaps(&ln2.powi_u64(3))),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Gamma::rational(qi(0), "zero", 64).is_err());
    }
}
