use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::linalg::solve;
use crate::exact::{Monomial, MultiPoly};
use crate::numeric::Interval;

/// One summand `multiplier · pure_gens[group][index]` of a decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct PurityTerm {
    pub group: usize,
    pub index: usize,
    pub multiplier: MultiPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PurityOutcome {
    Decomposed(Vec<PurityTerm>),
    NotDecomposedAtBound { degree: u32 },
}

fn support_in(g: &MultiPoly, group: &[usize]) -> bool {
    g.terms().keys().all(|m| m.0.iter().enumerate().all(|(i, &e)| e == 0 || group.contains(&i)))
}

/// Checks that every generator of group `i` is supported on the
/// indeterminates of that group and vanishes on `values` within its
/// enclosure.
pub fn check_pure_gens(groups: &[Vec<usize>], pure_gens: &[Vec<MultiPoly>], values: &[Interval]) -> Result<()> {
    for (gi, gens) in pure_gens.iter().enumerate() {
        for (k, g) in gens.iter().enumerate() {
            if !support_in(g, &groups[gi]) {
                return Err(Error::Hypothesis(format!("generator {k} of group {gi} uses indeterminates outside its group")));
            }
            let prec = values.iter().map(Interval::prec).max().unwrap_or(64);
            let mut acc = Interval::zero(prec);
            for (m, c) in g.terms() {
                let mut t = Interval::from_rational(c, prec);
                for (v, &e) in values.iter().zip(&m.0) {
                    if e > 0 {
                        t = t.mul(&v.powi_u64(e as u64));
                    }
                }
                acc = acc.add(&t);
            }
            if !acc.contains_zero() {
                return Err(Error::Hypothesis(format!("generator {k} of group {gi} does not vanish on the values")));
            }
        }
    }
    Ok(())
}

/// Decides whether `p` lies in the span of `{μ·g}` over pure generators `g`
/// and monomials `μ` with `deg(μ·g) ≤ d`, by one exact linear solve. The
/// witness re-expands to `p` exactly.
pub fn purity_decompose(p: &MultiPoly, groups: &[Vec<usize>], pure_gens: &[Vec<MultiPoly>], d: u32) -> Result<PurityOutcome> {
    if groups.len() != pure_gens.len() {
        return Err(Error::DimensionMismatch(format!("{} groups but {} generator lists", groups.len(), pure_gens.len())));
    }
    let n = p.nvars();
    let mut seen = vec![false; n];
    for g in groups {
        for &i in g {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid(format!("groups do not partition the {n} indeterminates")));
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Invalid(format!("groups do not partition the {n} indeterminates")));
    }
    let mut columns: Vec<(usize, usize, Monomial, MultiPoly)> = Vec::new();
    for (gi, gens) in pure_gens.iter().enumerate() {
        for (k, g) in gens.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::DimensionMismatch(format!("generator {k} of group {gi} has {} indeterminates", g.nvars())));
            }
            if !support_in(g, &groups[gi]) {
                return Err(Error::Hypothesis(format!("generator {k} of group {gi} uses indeterminates outside its group")));
            }
            let Some(dg) = g.total_degree() else { continue };
            if dg > d as u64 {
                continue;
            }
            for mu in Monomial::up_to_degree(n, d - dg as u32) {
                let prod = g.mul_monomial(&mu, &BigRational::from_integer(1.into()));
                columns.push((gi, k, mu, prod));
            }
        }
    }
    if p.is_zero() {
        return Ok(PurityOutcome::Decomposed(Vec::new()));
    }
    if p.total_degree().unwrap_or(0) > d as u64 || columns.is_empty() {
        return Ok(PurityOutcome::NotDecomposedAtBound { degree: d });
    }
    let rows_index = Monomial::up_to_degree(n, d);
    let mut rows = Vec::with_capacity(rows_index.len());
    for m in &rows_index {
        rows.push(columns.iter().map(|c| c.3.coeff(m)).collect::<Vec<_>>());
    }
    let rhs: Vec<BigRational> = rows_index.iter().map(|m| p.coeff(m)).collect();
    let Some(sol) = solve(&rows, &rhs, columns.len()) else {
        return Ok(PurityOutcome::NotDecomposedAtBound { degree: d });
    };
    let mut terms: Vec<PurityTerm> = Vec::new();
    for ((gi, k, mu, _), c) in columns.into_iter().zip(sol) {
        if c.is_zero() {
            continue;
        }
        match terms.iter_mut().find(|t| t.group == gi && t.index == k) {
            Some(t) => t.multiplier.add_term(mu, c),
            None => terms.push(PurityTerm { group: gi, index: k, multiplier: MultiPoly::monomial(p.vars().clone(), mu, c) }),
        }
    }
    let mut back = MultiPoly::zero(p.vars().clone());
    for t in &terms {
        back = back.add(&t.multiplier.mul(&pure_gens[t.group][t.index]));
    }
    if &back != p {
        return Err(Error::Invalid("decomposition does not re-expand to the relation".into()));
    }
    Ok(PurityOutcome::Decomposed(terms))
}
