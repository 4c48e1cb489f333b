use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::linalg::solve;
use crate::exact::{check_distinct, vars, Matrix, Monomial, MultiPoly, RatFunc, TruncSeries};
use crate::points::RationalPoint;
use crate::systems::{series_solve, MahlerSystem};

/// Homogenizes `p` with a new first indeterminate `new_name` standing for
/// the constant function 1.
pub fn homogenize(p: &MultiPoly, new_name: &str) -> Result<MultiPoly> {
    let mut names: Vec<String> = vec![new_name.to_string()];
    names.extend(p.vars().iter().cloned());
    check_distinct(&names)?;
    let d = p.total_degree().unwrap_or(0) as u32;
    Ok(p.map_monomials(vars(&names), |m| {
        let mut e = Vec::with_capacity(m.len() + 1);
        e.push(d - m.degree() as u32);
        e.extend_from_slice(&m.0);
        Monomial(e)
    }))
}

/// Prepends the constant component 1: `A ↦ diag(1, A)`, `f0 ↦ (1, f0)`.
pub fn extend_with_constant(sys: &MahlerSystem, f0: &[BigRational]) -> Result<(MahlerSystem, Vec<BigRational>)> {
    let one = Matrix::from_rows(vec![vec![RatFunc::one(sys.vars().clone())]]);
    let a = Matrix::block_diag(&[one, sys.a().clone()]);
    let mut g0 = vec![BigRational::one()];
    g0.extend_from_slice(f0);
    Ok((MahlerSystem::new(sys.t().clone(), a)?, g0))
}

/// Functional relation `Q(z, X)` lifting a value relation.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftResult {
    /// Polynomial over the system variables followed by the indeterminates
    /// of the relation.
    pub q: MultiPoly,
    pub z_degree: u32,
    /// `Q(z, f(z)) ≡ 0` was re-checked modulo this total degree.
    pub verified_order: u32,
    /// `Q(α, X) = P` was re-checked exactly.
    pub specialization_ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LiftOutcome {
    Found(LiftResult),
    NotFound { max_z_degree: u32, order: u32 },
}

fn product_series(f: &[TruncSeries], lambda: &Monomial, order: u32) -> TruncSeries {
    let mut acc = TruncSeries::one(f[0].vars().clone(), order);
    for (fi, &e) in f.iter().zip(&lambda.0) {
        for _ in 0..e {
            acc = acc.mul(fi);
        }
    }
    acc
}

/// Looks for `Q(z, X)`, homogeneous in `X` of the degree of `P`, of degree
/// at most `D` in `z` for `D = 0..=max_z_degree`, with `Q(α, X) = P` and
/// `Q(z, f(z)) ≡ 0` modulo total degree `order`, by exact linear algebra.
/// Every solution is re-checked by [`verify_lift`] before being returned.
pub fn lift_relation(
    sys: &MahlerSystem,
    f0: &[BigRational],
    p: &MultiPoly,
    alpha: &RationalPoint,
    max_z_degree: u32,
    order: u32,
) -> Result<LiftOutcome> {
    let m = sys.m();
    let n = sys.n();
    if p.nvars() != m {
        return Err(Error::DimensionMismatch(format!("relation in {} indeterminates for a system of size {m}", p.nvars())));
    }
    if alpha.n() != n {
        return Err(Error::DimensionMismatch(format!("point of length {} for {n} variables", alpha.n())));
    }
    if p.is_zero() {
        return Err(Error::Invalid("the zero relation".into()));
    }
    if !p.is_homogeneous() {
        return Err(Error::Hypothesis("the relation is not homogeneous; homogenize it first".into()));
    }
    let mut names: Vec<String> = sys.vars().to_vec();
    names.extend(p.vars().iter().cloned());
    check_distinct(&names)?;
    let qvars = vars(&names);
    let f = series_solve(sys, f0, order)?;
    let deg = p.total_degree().unwrap_or(0) as u32;
    let lambdas = Monomial::of_degree(m, deg);
    let powers: Vec<TruncSeries> = lambdas.iter().map(|l| product_series(&f, l, order)).collect();
    for d in 0..=max_z_degree {
        let nus = Monomial::up_to_degree(n, d);
        let unknowns = nus.len() * lambdas.len();
        let col = |ni: usize, li: usize| ni * lambdas.len() + li;
        let mut eqs: BTreeMap<Monomial, Vec<BigRational>> = BTreeMap::new();
        for (ni, nu) in nus.iter().enumerate() {
            for (li, pw) in powers.iter().enumerate() {
                for (mu, c) in pw.terms() {
                    let kappa = nu.mul(mu);
                    if kappa.degree() >= order as u64 {
                        continue;
                    }
                    let row = eqs.entry(kappa).or_insert_with(|| vec![BigRational::zero(); unknowns]);
                    row[col(ni, li)] += c;
                }
            }
        }
        let mut rows: Vec<Vec<BigRational>> = eqs.into_values().collect();
        let mut rhs = vec![BigRational::zero(); rows.len()];
        for (li, lambda) in lambdas.iter().enumerate() {
            let mut row = vec![BigRational::zero(); unknowns];
            for (ni, nu) in nus.iter().enumerate() {
                row[col(ni, li)] = nu
                    .0
                    .iter()
                    .zip(alpha.coords())
                    .map(|(&e, a)| crate::exact::rational::pow_big(a, &e.into()))
                    .product();
            }
            rows.push(row);
            rhs.push(p.coeff(lambda));
        }
        let Some(sol) = solve(&rows, &rhs, unknowns) else { continue };
        let mut q = MultiPoly::zero(qvars.clone());
        for (ni, nu) in nus.iter().enumerate() {
            for (li, lambda) in lambdas.iter().enumerate() {
                let c = &sol[col(ni, li)];
                if !c.is_zero() {
                    let mut e = nu.0.clone();
                    e.extend_from_slice(&lambda.0);
                    q.add_term(Monomial(e), c.clone());
                }
            }
        }
        let (spec_ok, func_ok) = verify_lift(sys, &f, &q, p, alpha, order)?;
        if spec_ok && func_ok {
            return Ok(LiftOutcome::Found(LiftResult { q, z_degree: d, verified_order: order, specialization_ok: true }));
        }
    }
    Ok(LiftOutcome::NotFound { max_z_degree, order })
}

/// Independent check of a lift: `(Q(α, X) = P, Q(z, f(z)) ≡ 0 mod order)`.
pub fn verify_lift(
    sys: &MahlerSystem,
    f: &[TruncSeries],
    q: &MultiPoly,
    p: &MultiPoly,
    alpha: &RationalPoint,
    order: u32,
) -> Result<(bool, bool)> {
    let n = sys.n();
    let m = sys.m();
    if q.nvars() != n + m || f.len() != m {
        return Err(Error::DimensionMismatch("lift and system sizes differ".into()));
    }
    let assign: Vec<(usize, BigRational)> = alpha.coords().iter().cloned().enumerate().collect();
    let specialized = q.eval_partial(&assign).map_monomials(p.vars().clone(), |mono| Monomial(mono.0[n..].to_vec()));
    let spec_ok = &specialized == p;
    let zvars = sys.vars().clone();
    let mut total = TruncSeries::zero(zvars.clone(), order);
    for (mono, c) in q.terms() {
        let mut t = TruncSeries::from_terms(zvars.clone(), order, [(Monomial(mono.0[..n].to_vec()), c.clone())]);
        for (i, &e) in mono.0[n..].iter().enumerate() {
            for _ in 0..e {
                t = t.mul(&f[i].truncate(order));
            }
        }
        total = total.add(&t);
    }
    Ok((spec_ok, total.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qi;
    use crate::systems::{kronecker_power, Orientation};
    use crate::transform::Transform;

    fn fredholm() -> MahlerSystem {
        MahlerSystem::parse(&["z"], Transform::scalar(2), &[vec!["1", "0"], vec!["z", "1"]], Orientation::Forward).unwrap()
    }

    fn poly(s: &str, names: &[&str]) -> MultiPoly {
        MultiPoly::parse(s, vars(names)).unwrap()
    }

    #[test]
    fn homogenization() {
        let p = poly("X1 - 1/2", &["X1"]);
        assert_eq!(homogenize(&p, "X0").unwrap(), poly("X1 - 1/2*X0", &["X0", "X1"]));
        let p = poly("X1^2 - X2", &["X1", "X2"]);
        assert_eq!(homogenize(&p, "X0").unwrap(), poly("X1^2 - X2*X0", &["X0", "X1", "X2"]));
        let p = poly("X1*X2 - X2^2", &["X1", "X2"]);
        assert_eq!(homogenize(&p, "X0").unwrap().terms().len(), 2);
        let (s, g0) = extend_with_constant(&fredholm(), &[qi(1), qi(0)]).unwrap();
        assert_eq!(s.m(), 3);
        assert_eq!(g0, vec![qi(1), qi(1), qi(0)]);
    }

    #[test]
    fn kronecker_square_lifts_to_itself() {
        // (1, f) ⊗ (1, f) carries (1, f, f, f²); the relation X0·X3 − X1·X2 holds identically
        let k = kronecker_power(&fredholm(), 2).unwrap();
        let p = poly("X0*X3 - X1*X2", &["X0", "X1", "X2", "X3"]);
        let alpha = RationalPoint::parse(&["1/2"]).unwrap();
        match lift_relation(&k, &[qi(1), qi(0), qi(0), qi(0)], &p, &alpha, 2, 24).unwrap() {
            LiftOutcome::Found(r) => {
                assert_eq!(r.z_degree, 0);
                assert_eq!(r.q, poly("X0*X3 - X1*X2", &["z", "X0", "X1", "X2", "X3"]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn functional_equation_lifts_a_value_relation() {
        // components (1, f(z), f(z²)) with f(z) = z + f(z²)
        let s = MahlerSystem::parse(
            &["z"],
            Transform::scalar(2),
            &[vec!["1", "0", "0"], vec!["z", "1", "0"], vec!["z^2", "0", "1"]],
            Orientation::Forward,
        )
        .unwrap();
        let p = poly("2*X1 - 2*X2 - X0", &["X0", "X1", "X2"]);
        let alpha = RationalPoint::parse(&["1/2"]).unwrap();
        match lift_relation(&s, &[qi(1), qi(0), qi(0)], &p, &alpha, 2, 32).unwrap() {
            LiftOutcome::Found(r) => {
                assert_eq!(r.z_degree, 1);
                assert_eq!(r.q, poly("2*X1 - 2*X2 - 2*z*X0", &["z", "X0", "X1", "X2"]));
            }
            other => panic!("{other:?}"),
        }
        let bogus = poly("X1 - X0", &["X0", "X1", "X2"]);
        assert_eq!(
            lift_relation(&s, &[qi(1), qi(0), qi(0)], &bogus, &alpha, 0, 8).unwrap(),
            LiftOutcome::NotFound { max_z_degree: 0, order: 8 }
        );
    }
}
