//! Rigorous evaluation of solutions of Mahler systems at rational points.
//!
//! `f(α) = A_k(α) f(T^kα)`: the matrix product is exact, the deep orbit point
//! `T^kα` is plugged into the order-`N` truncation exactly, and the neglected
//! tail is bounded through a coefficient majorant.

mod decay;

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::pow_big;
use crate::exact::{QMatrix, TruncSeries};
use crate::numeric::{BigFloat, Interval, Round};
use crate::points::{act_point, RationalPoint};
use crate::systems::{series_solve, MahlerSystem};

pub use decay::{orbit_decay_report, DecayRow};

/// Where the coefficient majorant `C` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MajorantSource {
    User,
    /// `1 + Σ |coefficients|` of the order-`N` truncation of all components.
    /// Sound only under the assumption that no coefficient of the solution
    /// exceeds it in absolute value.
    Default,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Iteration depth.
    pub k: u64,
    /// Truncation order of the series solution.
    pub order: u32,
    /// Working precision in bits.
    pub prec: u32,
    pub majorant: Option<BigRational>,
    /// Largest acceptable error bound.
    pub tolerance: Option<BigRational>,
}

impl EvalOptions {
    pub fn new(k: u64, order: u32, prec: u32) -> Self {
        EvalOptions { k, order, prec, majorant: None, tolerance: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalResult {
    /// Values rounded to nearest at the working precision.
    pub values: Vec<BigFloat>,
    /// Componentwise absolute error bounds, rounding included.
    pub error_bounds: Vec<BigFloat>,
    pub enclosures: Vec<Interval>,
    /// Exact values of the components proven to be polynomials.
    pub exact: Vec<Option<BigRational>>,
    pub k_used: u64,
    pub order_used: u32,
    pub prec: u32,
    pub majorant: BigRational,
    pub majorant_source: MajorantSource,
    /// `‖T^kα‖` in the max norm.
    pub radius: BigRational,
    /// Bound on the tail of one component at `T^kα`.
    pub tail_bound: BigRational,
}

impl EvalResult {
    pub fn decimal(&self, i: usize, digits: usize) -> String {
        match &self.exact[i] {
            Some(x) => crate::numeric::decimal(x, digits, Round::Nearest),
            None => self.values[i].to_decimal(digits, Round::Nearest),
        }
    }
}

/// Components of the truncated solution that are proven to be the exact
/// solution: the largest set `S` closed under the support of `A` on which the
/// polynomials satisfy `p(z) = A(z) p(Tz)` identically. By uniqueness of the
/// power-series solution with given constant term they are `f` itself.
pub fn exact_components(sys: &MahlerSystem, f: &[TruncSeries]) -> Vec<bool> {
    let m = sys.m();
    let rows = match sys.t().small_rows() {
        Ok(r) => r,
        Err(_) => return vec![false; m],
    };
    let polys: Vec<_> = f.iter().map(|s| crate::exact::RatFunc::from_poly(s.to_poly())).collect();
    let shifted: Vec<_> = polys.iter().map(|p| p.substitute(&rows)).collect();
    let mut inside = vec![true; m];
    loop {
        let mut changed = false;
        for i in 0..m {
            if !inside[i] {
                continue;
            }
            let mut rhs = crate::exact::RatFunc::zero(sys.vars().clone());
            let mut closed = true;
            for j in 0..m {
                let a = sys.a().get(i, j);
                if a.is_zero() {
                    continue;
                }
                if !inside[j] {
                    closed = false;
                    break;
                }
                rhs = rhs.add(&a.mul(&shifted[j]));
            }
            if !closed || rhs != polys[i] {
                inside[i] = false;
                changed = true;
            }
        }
        if !changed {
            return inside;
        }
    }
}

/// `A_k(α) = A(α) A(Tα) ⋯ A(T^{k-1}α)` and `T^kα`, exactly.
pub fn orbit_product(sys: &MahlerSystem, alpha: &RationalPoint, k: u64) -> Result<(QMatrix, RationalPoint)> {
    let mut acc = QMatrix::identity(sys.m());
    let mut p = alpha.clone();
    for j in 0..k {
        let a = sys.a().eval(p.coords()).map_err(|e| match e {
            Error::Pole => Error::Hypothesis(format!("the system matrix has a pole at T^{j}α")),
            e => e,
        })?;
        acc = acc.mul(&a)?;
        p = act_point(sys.t(), &p)?;
    }
    Ok((acc, p))
}

/// `C · binom(N+n−1, n−1) · r^N / (1−r)^n`, which bounds
/// `Σ_{|μ|≥N} |c_μ| r^{|μ|}` when every `|c_μ| ≤ C`.
pub fn tail_bound(c: &BigRational, n: usize, order: u32, r: &BigRational) -> BigRational {
    let count = binomial(BigUint::from(order as usize + n - 1), BigUint::from(n - 1));
    let one = BigRational::one();
    let denom = pow_big(&(&one - r), &BigUint::from(n));
    c * BigRational::from_integer(count.into()) * pow_big(r, &BigUint::from(order)) / denom
}

/// Evaluates the solution with `f(0) = f0` at `α`.
pub fn eval_function(
    sys: &MahlerSystem,
    f0: &[BigRational],
    alpha: &RationalPoint,
    opts: &EvalOptions,
) -> Result<EvalResult> {
    if alpha.n() != sys.n() {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} for a system in {} variables",
            alpha.n(),
            sys.n()
        )));
    }
    let f = series_solve(sys, f0, opts.order)?;
    let (ak, deep) = orbit_product(sys, alpha, opts.k)?;
    let r = deep.max_abs();
    let one = BigRational::one();
    if r >= one {
        return Err(Error::Hypothesis(format!(
            "T^{}α has a coordinate of absolute value at least 1; increase k",
            opts.k
        )));
    }
    let exact_set = exact_components(sys, &f);
    let (c, source) = match &opts.majorant {
        Some(c) => (c.clone(), MajorantSource::User),
        None => (one.clone() + f.iter().map(TruncSeries::abs_coeff_sum).sum::<BigRational>(), MajorantSource::Default),
    };
    let tail = tail_bound(&c, sys.n(), opts.order, &r);
    let at_deep: Vec<BigRational> = f.iter().map(|s| s.eval(deep.coords())).collect();
    let m = sys.m();
    let mut values = Vec::with_capacity(m);
    let mut bounds = Vec::with_capacity(m);
    let mut enclosures = Vec::with_capacity(m);
    let mut exact = Vec::with_capacity(m);
    for i in 0..m {
        let mut center = BigRational::zero();
        let mut weight = BigRational::zero();
        for j in 0..m {
            let a = ak.get(i, j);
            center += a * &at_deep[j];
            if !exact_set[j] {
                weight += a.abs();
            }
        }
        let err = &weight * &tail;
        let enc = Interval::from_rational_bounds(&(&center - &err), &(&center + &err), opts.prec);
        let v = BigFloat::from_rational(&center, opts.prec, Round::Nearest);
        let b = enc.radius_about(&v);
        exact.push(if err.is_zero() && (exact_set[i] || weight.is_zero()) { Some(center) } else { None });
        values.push(v);
        bounds.push(b);
        enclosures.push(enc);
    }
    if let Some(tol) = &opts.tolerance {
        if let Some(worst) = bounds.iter().map(BigFloat::to_rational).max() {
            if &worst > tol {
                return Err(Error::Precision(format!(
                    "achieved error bound {} exceeds the tolerance {}",
                    crate::numeric::decimal(&worst, 3, Round::Up),
                    crate::numeric::decimal(tol, 3, Round::Up)
                )));
            }
        }
    }
    Ok(EvalResult {
        values,
        error_bounds: bounds,
        enclosures,
        exact,
        k_used: opts.k,
        order_used: opts.order,
        prec: opts.prec,
        majorant: c,
        majorant_source: source,
        radius: r,
        tail_bound: tail,
    })
}

/// Smallest depth `k ≤ k_max` at which the tail contribution drops below
/// `2^-(prec+4)`, or `k_max` if none does.
pub fn choose_depth(sys: &MahlerSystem, f0: &[BigRational], alpha: &RationalPoint, order: u32, prec: u32, k_max: u64) -> Result<u64> {
    let f = series_solve(sys, f0, order)?;
    let c = BigRational::one() + f.iter().map(TruncSeries::abs_coeff_sum).sum::<BigRational>();
    let target = BigRational::new(BigUint::one().into(), (BigUint::one() << (prec as usize + 4)).into());
    let mut p = alpha.clone();
    for k in 0..k_max {
        let r = p.max_abs();
        if r < BigRational::one() && tail_bound(&c, sys.n(), order, &r) < target {
            return Ok(k);
        }
        p = act_point(sys.t(), &p)?;
    }
    Ok(k_max)
}

/// Componentwise `|f(α) − A(α) f(Tα)|` against twice the combined bound
/// `err f(α) + Σ_j |A_ij(α)| err f_j(Tα)`, each side evaluated with the same
/// options.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualCheck {
    pub residuals: Vec<BigFloat>,
    pub allowed: Vec<BigFloat>,
    pub ok: bool,
}

pub fn functional_residual(
    sys: &MahlerSystem,
    f0: &[BigRational],
    alpha: &RationalPoint,
    opts: &EvalOptions,
) -> Result<ResidualCheck> {
    let here = eval_function(sys, f0, alpha, opts)?;
    let next_point = act_point(sys.t(), alpha)?;
    let there = eval_function(sys, f0, &next_point, opts)?;
    let a = sys.a().eval(alpha.coords())?;
    let prec = opts.prec;
    let mut residuals = Vec::new();
    let mut allowed = Vec::new();
    let mut ok = true;
    for i in 0..sys.m() {
        // the values are binary floats and A(α) is rational, so the residual
        // is computed exactly and only rounded up at the end
        let mut diff = here.values[i].to_rational();
        let mut bound = here.error_bounds[i].to_rational();
        for j in 0..sys.m() {
            let aij = a.get(i, j);
            diff -= aij * there.values[j].to_rational();
            bound += aij.abs() * there.error_bounds[j].to_rational();
        }
        let diff = diff.abs();
        let allow = BigFloat::from_rational(&(bound * BigRational::from_integer(2.into())), 64, Round::Up);
        if diff > allow.to_rational() {
            ok = false;
        }
        let res = BigFloat::from_rational(&diff, prec, Round::Up);
        residuals.push(res);
        allowed.push(allow);
    }
    Ok(ResidualCheck { residuals, allowed, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qi};
    use crate::systems::Orientation;
    use crate::transform::Transform;

    fn sys(a: &[Vec<&str>]) -> MahlerSystem {
        MahlerSystem::parse(&["z"], Transform::scalar(2), a, Orientation::Forward).unwrap()
    }

    fn pt(c: &str) -> RationalPoint {
        RationalPoint::parse(&[c]).unwrap()
    }

    #[test]
    fn fredholm_value() {
        let s = sys(&[vec!["1", "0"], vec!["z", "1"]]);
        let r = eval_function(&s, &[qi(1), qi(0)], &pt("1/2"), &EvalOptions::new(4, 32, 128)).unwrap();
        assert!(r.decimal(1, 10).starts_with("0.8164215090"));
        assert_eq!(r.exact[0], Some(qi(1)));
        assert!(r.error_bounds[0].is_zero());
        assert!(r.error_bounds[1].to_rational() < BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(20)));
        // direct partial sums: Σ_{j<7} 2^{-2^j} with a tail below 2^{-127}
        let direct: BigRational = (0..7).map(|j| BigRational::new(1.into(), num_bigint::BigInt::one() << (1usize << j))).sum();
        let d = &r.values[1].to_rational() - &direct;
        assert!(d.abs() <= r.error_bounds[1].to_rational() + q(1, 1) / BigRational::from_integer(num_bigint::BigInt::one() << 126));
    }

    #[test]
    fn thue_morse_value() {
        let s = sys(&[vec!["1 - z"]]);
        let r = eval_function(&s, &[qi(1)], &pt("1/2"), &EvalOptions::new(4, 32, 128)).unwrap();
        assert!(r.decimal(0, 10).starts_with("0.3501838654"));
    }

    #[test]
    fn polynomial_solutions_are_exact() {
        // f(z) = (1 + z) f(z²) has the solution 1/(1 − z), not a polynomial;
        // f(z) = f(z²) has the constant solution
        let s = sys(&[vec!["1"]]);
        let r = eval_function(&s, &[qi(1)], &pt("1/3"), &EvalOptions::new(0, 8, 64)).unwrap();
        assert_eq!(r.exact[0], Some(qi(1)));
        let s = sys(&[vec!["1 + z"]]);
        let r = eval_function(&s, &[qi(1)], &pt("1/3"), &EvalOptions::new(3, 64, 64)).unwrap();
        assert!(r.exact[0].is_none());
        assert!(r.enclosures[0].contains(&q(3, 2)));
    }

    #[test]
    fn preconditions() {
        let s = sys(&[vec!["1 - z"]]);
        let far = eval_function(&s, &[qi(1)], &pt("2"), &EvalOptions::new(3, 8, 64));
        assert!(matches!(far, Err(Error::Hypothesis(_))));
        let mut o = EvalOptions::new(0, 4, 64);
        o.tolerance = Some(q(1, 1_000_000));
        assert!(matches!(eval_function(&s, &[qi(1)], &pt("1/2"), &o), Err(Error::Precision(_))));
        let p = sys(&[vec!["1/(1 - 2*z)"]]);
        assert!(matches!(eval_function(&p, &[qi(1)], &pt("1/2"), &EvalOptions::new(2, 8, 64)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn residual_within_bounds() {
        let s = sys(&[vec!["1", "0"], vec!["z", "1"]]);
        let c = functional_residual(&s, &[qi(1), qi(0)], &pt("1/2"), &EvalOptions::new(3, 32, 128)).unwrap();
        assert!(c.ok);
    }
}
