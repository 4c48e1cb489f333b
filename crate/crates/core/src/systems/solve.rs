use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::{iterate_matrix, MahlerSystem};
use crate::error::{Error, Result};
use crate::exact::{Monomial, TruncSeries};
use crate::transform::Transform;

/// Largest iterate tried when looking for one that raises every degree.
pub const MAX_GROWTH_ITERATE: u32 = 16;

/// Smallest `k ≥ 1` such that `z ↦ T^k z` strictly raises the total degree of
/// every nonconstant monomial, i.e. every row sum of `T^k` is at least 2.
pub fn growth_iterate(t: &Transform) -> Result<u64> {
    let two = BigUint::from(2u32);
    let mut p = t.clone();
    for k in 1..=MAX_GROWTH_ITERATE as u64 {
        if p.row_sums().iter().all(|s| s >= &two) {
            return Ok(k);
        }
        p = p.mul(t)?;
    }
    Err(Error::DegreeGrowth(MAX_GROWTH_ITERATE))
}

fn check_length(sys: &MahlerSystem, len: usize) -> Result<()> {
    if len != sys.m() {
        return Err(Error::DimensionMismatch(format!("vector of length {len} for a system of size {}", sys.m())));
    }
    Ok(())
}

/// Power-series solution with `f(0) = f0`, truncated at total degree `order`.
///
/// The fixed point of `g ← A_k(z) g(T^k z)` is computed, with `k` the
/// smallest iterate raising degrees, starting from the constant vector `f0`.
/// Each pass fixes at least one more degree, so the loop stabilizes.
pub fn series_solve(sys: &MahlerSystem, f0: &[BigRational], order: u32) -> Result<Vec<TruncSeries>> {
    check_length(sys, f0.len())?;
    let vars = sys.vars().clone();
    let a0 = sys.a_at_zero()?;
    if a0.det()?.is_zero() {
        return Err(Error::Singular);
    }
    if a0.mul_vec(f0)? != f0 {
        return Err(Error::Hypothesis("the initial vector is not fixed by A(0)".into()));
    }
    let mut g: Vec<TruncSeries> = f0.iter().map(|c| TruncSeries::constant(vars.clone(), order, c.clone())).collect();
    if f0.iter().all(Zero::is_zero) {
        return Ok(g);
    }
    let k = growth_iterate(sys.t())?;
    let ak = iterate_matrix(sys, k)?.to_series(order)?;
    let rows = sys.t().pow(k).small_rows()?;
    for _ in 0..=order {
        let shifted = g.iter().map(|s| s.substitute(&rows)).collect::<Result<Vec<_>>>()?;
        let next = ak.mul_vec(&shifted)?;
        if next == g {
            return Ok(g);
        }
        g = next;
    }
    unreachable!("degree growth guarantees stabilization within `order` passes")
}

/// First component and monomial (below degree `order`) where `f(z)` and
/// `A(z) f(Tz)` differ, with both coefficients; `None` when the functional
/// equation holds modulo degree `order`.
pub fn functional_equation_residual(
    sys: &MahlerSystem,
    f: &[TruncSeries],
    order: u32,
) -> Result<Option<(usize, Monomial, BigRational, BigRational)>> {
    check_length(sys, f.len())?;
    let order = f.iter().map(TruncSeries::order).fold(order, u32::min);
    let rows = sys.t().small_rows()?;
    let a = sys.a().to_series(order)?;
    let shifted = f.iter().map(|s| s.truncate(order).substitute(&rows)).collect::<Result<Vec<_>>>()?;
    let rhs = a.mul_vec(&shifted)?;
    for (i, (l, r)) in f.iter().zip(&rhs).enumerate() {
        if let Some((m, x, y)) = l.first_difference(r, order) {
            return Ok(Some((i, m, x, y)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::tests::fredholm;
    use super::super::Orientation;
    use super::*;
    use crate::exact::rational::qi;
    use crate::exact::{vars, MultiPoly};

    fn poly(s: &str, names: &[&str]) -> MultiPoly {
        MultiPoly::parse(s, vars(names)).unwrap()
    }

    #[test]
    fn fredholm_solution() {
        let f = series_solve(&fredholm(), &[qi(1), qi(0)], 9).unwrap();
        assert_eq!(f[0].to_poly(), poly("1", &["z"]));
        assert_eq!(f[1].to_poly(), poly("z + z^2 + z^4 + z^8", &["z"]));
        assert!(functional_equation_residual(&fredholm(), &f, 9).unwrap().is_none());
    }

    #[test]
    fn thue_morse_signs() {
        let s = MahlerSystem::parse(&["z"], Transform::scalar(2), &[vec!["1 - z"]], Orientation::Forward).unwrap();
        let f = series_solve(&s, &[qi(1)], 16).unwrap();
        // coefficient of z^j is (−1)^{number of ones in j}
        for j in 0..16u32 {
            let c = f[0].coeff(&Monomial(vec![j]));
            let sign = if j.count_ones() % 2 == 0 { 1 } else { -1 };
            assert_eq!(c, qi(sign));
        }
    }

    #[test]
    fn zero_and_bad_initial_vectors() {
        let f = series_solve(&fredholm(), &[qi(0), qi(0)], 5).unwrap();
        assert!(f.iter().all(TruncSeries::is_zero));
        assert!(series_solve(&fredholm(), &[qi(1), qi(1)], 5).is_ok());
        let s = MahlerSystem::parse(&["z"], Transform::scalar(2), &[vec!["2"]], Orientation::Forward).unwrap();
        assert!(matches!(series_solve(&s, &[qi(1)], 5), Err(Error::Hypothesis(_))));
        let p = MahlerSystem::parse(&["z"], Transform::scalar(2), &[vec!["1/z"]], Orientation::Forward).unwrap();
        assert_eq!(series_solve(&p, &[qi(1)], 5).unwrap_err(), Error::Pole);
    }

    #[test]
    fn fibonacci_transform_uses_an_iterate() {
        let t = Transform::from_u64(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(growth_iterate(&t).unwrap(), 2);
        let s = MahlerSystem::parse(&["x", "y"], t, &[vec!["1", "0"], vec!["x", "1"]], Orientation::Forward).unwrap();
        let f = series_solve(&s, &[qi(1), qi(0)], 12).unwrap();
        assert!(functional_equation_residual(&s, &f, 12).unwrap().is_none());
        let swap = Transform::from_u64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(growth_iterate(&swap).unwrap_err(), Error::DegreeGrowth(MAX_GROWTH_ITERATE));
    }
}
