//! Relations among computed values: integer and polynomial relation search
//! by lattice reduction, lifting to functional relations at bounded degree
//! and bounded-degree decomposition into pure relations.

mod lift;
pub mod lll;
mod purity;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::intlat::IVec;
use crate::exact::{Monomial, MultiPoly, Vars};
use crate::numeric::{BigFloat, Interval, Round};

pub use lift::{extend_with_constant, homogenize, lift_relation, verify_lift, LiftOutcome, LiftResult};
pub use purity::{check_pure_gens, purity_decompose, PurityOutcome, PurityTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationStatus {
    /// The relation holds within the enclosure at the verification precision.
    VerifiedNumeric,
    Refuted,
}

/// Integer vector `c` with `Σ c_i v_i ≈ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerRelation {
    pub coeffs: IVec,
    /// Upper bound on `|Σ c_i v_i|` over the enclosures at `prec`.
    pub residual: BigFloat,
    /// Precision of the re-verification.
    pub prec: u32,
    pub status: RelationStatus,
}

/// Homogeneous polynomial relation among values.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRelation {
    pub poly: MultiPoly,
    pub residual: BigFloat,
    pub prec: u32,
}

impl PolyRelation {
    /// Total degree of the relation in each group of indeterminates.
    pub fn degree_profile(&self, groups: &[Vec<usize>]) -> Vec<u32> {
        groups
            .iter()
            .map(|g| {
                self.poly.terms().keys().map(|m| g.iter().map(|&i| m.0[i]).sum::<u32>()).max().unwrap_or(0)
            })
            .collect()
    }
}

fn bits_of_width(v: &Interval) -> Option<i64> {
    let w = v.width();
    if w.is_zero() {
        None
    } else {
        Some(-w.msb() - 1)
    }
}

fn normalize_sign(v: &mut IVec) {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
}

fn norm2(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x * x).sum()
}

/// Searches integer relations `Σ c_i v_i = 0` with `|c_i| <= coeff_bound`.
///
/// `values(p)` must return enclosures of the values at `p` bits. The vectors
/// `(e_i, ⌊2^s v_i⌉)` are LLL-reduced; short rows with a small last entry are
/// candidates, which are kept only if the relation's enclosure contains zero
/// at twice the precision. The result is LLL-reduced, sign-normalized and
/// sorted by norm.
pub fn find_integer_relations<F>(values: F, coeff_bound: &BigInt, prec: u32) -> Result<Vec<IntegerRelation>>
where
    F: Fn(u32) -> Result<Vec<Interval>>,
{
    let v = values(prec)?;
    let m = v.len();
    if m < 2 {
        return Err(Error::Invalid("relation search needs at least two values".into()));
    }
    if !coeff_bound.is_positive() {
        return Err(Error::Invalid("coefficient bound must be positive".into()));
    }
    let accuracy = v.iter().filter_map(bits_of_width).min().unwrap_or(prec as i64).min(prec as i64);
    let s = accuracy - 4;
    let needed = (m as i64) * (coeff_bound.bits() as i64 + 1) + 8;
    if s < needed {
        return Err(Error::Precision(format!(
            "values are known to about {accuracy} bits; a search with {m} values and coefficients up to {coeff_bound} needs {}",
            needed + 4
        )));
    }
    let basis: Vec<IVec> = (0..m)
        .map(|i| {
            let mut row = vec![BigInt::zero(); m + 1];
            row[i] = BigInt::from(1);
            let scaled = v[i].mid().mul_pow2(s);
            row[m] = scaled.add(&BigFloat::from_i64(1, 2).mul_pow2(-1), prec + 64, Round::Down).floor();
            row
        })
        .collect();
    let reduced = lll::lll(&basis);
    let mut candidates: Vec<IVec> = Vec::new();
    for row in reduced {
        let c: IVec = row[..m].to_vec();
        if c.iter().all(Zero::is_zero) || c.iter().any(|x| x.abs() > *coeff_bound) {
            continue;
        }
        let l1: BigInt = c.iter().map(|x| x.abs()).sum();
        if row[m].abs() <= l1 * 2 + 2 {
            candidates.push(c);
        }
    }
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    let check_prec = prec * 2;
    let v2 = values(check_prec)?;
    let mut out: Vec<IntegerRelation> = Vec::new();
    let kept: Vec<IVec> = candidates
        .into_iter()
        .filter(|c| relation_value(c, &v2, check_prec).contains_zero())
        .collect();
    if kept.is_empty() {
        return Ok(out);
    }
    let mut kept = lll::lll(&kept);
    for c in kept.iter_mut() {
        normalize_sign(c);
    }
    kept.sort_by(|a, b| norm2(a).cmp(&norm2(b)).then_with(|| b.cmp(a)));
    kept.dedup();
    for c in kept {
        let val = relation_value(&c, &v2, check_prec);
        if !val.contains_zero() || c.iter().any(|x| x.abs() > *coeff_bound) {
            continue;
        }
        out.push(IntegerRelation { residual: val.mag(), coeffs: c, prec: check_prec, status: RelationStatus::VerifiedNumeric });
    }
    Ok(out)
}

fn relation_value(c: &[BigInt], v: &[Interval], prec: u32) -> Interval {
    c.iter().zip(v).fold(Interval::zero(prec), |acc, (ci, vi)| acc.add(&Interval::from_int(ci, prec).mul(vi)))
}

/// Homogeneous relations of degree `d` among the values, found as integer
/// relations among all degree-`d` monomials in them. With a value equal to 1
/// among the inputs this covers every relation of degree at most `d`. Each
/// relation is scaled to a positive leading coefficient.
pub fn find_polynomial_relations<F>(
    values: F,
    names: &Vars,
    d: u32,
    coeff_bound: &BigInt,
    prec: u32,
) -> Result<Vec<PolyRelation>>
where
    F: Fn(u32) -> Result<Vec<Interval>>,
{
    let m = names.len();
    let monos = Monomial::of_degree(m, d);
    let expand = |p: u32| -> Result<Vec<Interval>> {
        let v = values(p)?;
        if v.len() != m {
            return Err(Error::DimensionMismatch(format!("{} values for {m} names", v.len())));
        }
        Ok(monos
            .iter()
            .map(|mu| {
                mu.0.iter().zip(&v).fold(Interval::one(p), |acc, (&e, x)| if e == 0 { acc } else { acc.mul(&x.powi_u64(e as u64)) })
            })
            .collect())
    };
    let rels = find_integer_relations(expand, coeff_bound, prec)?;
    Ok(rels
        .into_iter()
        .map(|r| {
            let poly = MultiPoly::from_terms(
                names.clone(),
                monos.iter().cloned().zip(r.coeffs.iter().map(|c| BigRational::from_integer(c.clone()))),
            );
            let poly = if poly.leading_sign() < 0 { poly.neg() } else { poly };
            PolyRelation { poly, residual: r.residual, prec: r.prec }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::intlat::to_ivec;
    use crate::exact::vars;

    fn exact_values(xs: Vec<BigRational>) -> impl Fn(u32) -> Result<Vec<Interval>> {
        move |p| Ok(xs.iter().map(|x| Interval::from_rational(x, p)).collect())
    }

    #[test]
    fn small_integers() {
        let f = exact_values(vec![1.into(), 2.into(), 3.into()].into_iter().map(BigRational::from_integer).collect());
        let r = find_integer_relations(f, &BigInt::from(10), 128).unwrap();
        assert_eq!(r[0].coeffs, to_ivec(&[1, 1, -1]));
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn quadratic_identity() {
        let vals = move |p: u32| -> Result<Vec<Interval>> {
            let x = crate::numeric::ln2(p);
            Ok(vec![Interval::one(p), x.clone(), x.sqr()])
        };
        let names = vars(&["X0", "X1", "X2"]);
        let r = find_polynomial_relations(vals, &names, 2, &BigInt::from(100), 256).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].poly, MultiPoly::parse("X0*X2 - X1^2", names).unwrap());
    }

    #[test]
    fn no_relation_for_a_lone_logarithm() {
        let vals = |p: u32| -> Result<Vec<Interval>> {
            let x = crate::numeric::ln2(p);
            Ok(vec![Interval::one(p), x.clone(), x.sqr(), x.sqr().mul(&x)])
        };
        let r = find_integer_relations(vals, &BigInt::from(10_000), 256).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn insufficient_precision() {
        let f = exact_values(vec![BigRational::from_integer(1.into()); 6]);
        assert!(matches!(find_integer_relations(f, &BigInt::from(1_000_000), 64), Err(Error::Precision(_))));
    }
}
