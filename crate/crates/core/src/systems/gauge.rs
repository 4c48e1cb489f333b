use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::{iterate_matrix, MahlerSystem};
use crate::error::{Error, Result};
use crate::exact::linalg::{rank, solve};
use crate::exact::{Matrix, Monomial, QMatrix, SeriesMatrix, TruncSeries, Vars};

/// Analytic gauge transform: `Φ(z)⁻¹ A(z) Φ(Tz) = B` modulo degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeTransform {
    pub phi: SeriesMatrix,
    pub phi_inv: SeriesMatrix,
    pub b: QMatrix,
    pub order: u32,
}

/// Matrix-valued series grouped by total degree.
type Graded = Vec<BTreeMap<Monomial, QMatrix>>;

fn add_at(g: &mut Graded, m: Monomial, x: QMatrix) {
    let d = m.degree() as usize;
    if d >= g.len() || x.is_zero() {
        return;
    }
    let slot = g[d].entry(m);
    match slot {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(x);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().add(&x).expect("same shape");
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn graded_of(s: &SeriesMatrix, order: u32) -> Graded {
    let (r, c) = (s.nrows(), s.ncols());
    let mut g: Graded = vec![BTreeMap::new(); order as usize];
    for i in 0..r {
        for j in 0..c {
            for (m, v) in s.get(i, j).terms() {
                let d = m.degree() as usize;
                let e = g[d].entry(m.clone()).or_insert_with(|| QMatrix::zeros(r, c));
                e.set(i, j, v.clone());
            }
        }
    }
    g
}

fn series_of(g: &Graded, vars: &Vars, m: usize, order: u32) -> SeriesMatrix {
    let mut out = Matrix::from_fn(m, m, |_, _| TruncSeries::zero(vars.clone(), order));
    for comp in g {
        for (mono, x) in comp {
            for i in 0..m {
                for j in 0..m {
                    let c = x.get(i, j);
                    if !c.is_zero() {
                        let mut s = out.get(i, j).clone();
                        s.add_term(mono.clone(), c.clone());
                        out.set(i, j, s);
                    }
                }
            }
        }
    }
    out
}

/// Inverse of a series matrix with invertible constant part, by Newton
/// iteration `X ← X(2I − ΦX)`.
fn invert_series_matrix(phi: &SeriesMatrix) -> Result<SeriesMatrix> {
    let c0 = phi.constant_part().inverse()?;
    let sample = phi.get(0, 0);
    let order = sample.order();
    let vars = sample.vars().clone();
    let mut x = c0.map(|c| TruncSeries::constant(vars.clone(), order, c.clone()));
    let two = Matrix::identity_like(phi.nrows(), sample).scale(&TruncSeries::constant(vars, order, BigRational::from_integer(2.into())));
    let mut correct = 1u32;
    while correct < order {
        x = x.mul(&two.sub(&phi.mul(&x)?)?)?;
        correct = correct.saturating_mul(2);
    }
    Ok(x)
}

/// Solves `Φ(z) B = A(z) Φ(Tz)` with `B = A(0)` and `Φ(0) = I` degree by
/// degree up to `order`.
///
/// At degree `d` the unknown coefficient matrices `X_ν` satisfy
/// `X_ν B − A(0) X_μ = R_ν` where `ν = Tᵗμ` when `T` keeps the degree of `μ`,
/// and `R_ν` collects lower-degree data. Chains of such monomials are solved
/// in sequence and cycles as one linear system; a singular cycle system is a
/// resonance, for which the analytic gauge with `B = A(0)` does not exist.
pub fn gauge_construct(sys: &MahlerSystem, order: u32) -> Result<GaugeTransform> {
    if order == 0 {
        return Err(Error::Invalid("gauge transform of order 0".into()));
    }
    let b = sys.a_at_zero()?;
    let binv = b.inverse()?;
    let m = sys.m();
    let n = sys.n();
    let vars = sys.vars().clone();
    let rows = sys.t().small_rows()?;
    let a = graded_of(&sys.a().to_series(order)?, order);
    let id = QMatrix::identity(m);
    let mut phi: Graded = vec![BTreeMap::new(); order as usize];
    let mut psi: Graded = vec![BTreeMap::new(); order as usize];
    add_at(&mut phi, Monomial::one(n), id.clone());
    add_at(&mut psi, Monomial::one(n), id);
    for d in 1..order as usize {
        let mut rhs: BTreeMap<Monomial, QMatrix> = BTreeMap::new();
        for e in 0..=d {
            for (mu, x) in &a[e] {
                for (nu, y) in &psi[d - e] {
                    let p = x.mul(y)?;
                    let key = mu.mul(nu);
                    match rhs.get_mut(&key) {
                        Some(v) => *v = v.add(&p)?,
                        None => {
                            rhs.insert(key, p);
                        }
                    }
                }
            }
        }
        let monos = Monomial::of_degree(n, d as u32);
        let mut succ: BTreeMap<Monomial, Monomial> = BTreeMap::new();
        let mut pred: BTreeMap<Monomial, Monomial> = BTreeMap::new();
        for mu in &monos {
            let img = mu.transform_wide(&rows);
            if img.iter().sum::<u64>() == d as u64 {
                let img = Monomial(img.into_iter().map(|e| e as u32).collect());
                succ.insert(mu.clone(), img.clone());
                pred.insert(img, mu.clone());
            }
        }
        let zero = QMatrix::zeros(m, m);
        let r_of = |nu: &Monomial| rhs.get(nu).cloned().unwrap_or_else(|| zero.clone());
        let mut solved: BTreeMap<Monomial, QMatrix> = BTreeMap::new();
        for start in monos.iter().filter(|nu| !pred.contains_key(*nu)) {
            let mut cur = start.clone();
            let mut x = r_of(&cur).mul(&binv)?;
            loop {
                solved.insert(cur.clone(), x.clone());
                match succ.get(&cur) {
                    Some(next) => {
                        x = r_of(next).add(&b.mul(&x)?)?.mul(&binv)?;
                        cur = next.clone();
                    }
                    None => break,
                }
            }
        }
        for start in &monos {
            if solved.contains_key(start) {
                continue;
            }
            let mut cycle = vec![start.clone()];
            let mut cur = succ[start].clone();
            while &cur != start {
                cycle.push(cur.clone());
                cur = succ[&cur].clone();
            }
            let xs = solve_cycle(&b, &cycle.iter().map(&r_of).collect::<Vec<_>>(), d as u32)?;
            for (nu, x) in cycle.into_iter().zip(xs) {
                solved.insert(nu, x);
            }
        }
        for (nu, x) in solved {
            if x.is_zero() {
                continue;
            }
            let img = nu.transform_wide(&rows);
            if img.iter().sum::<u64>() < order as u64 {
                add_at(&mut psi, Monomial(img.into_iter().map(|e| e as u32).collect()), x.clone());
            }
            add_at(&mut phi, nu, x);
        }
    }
    let phi = series_of(&phi, &vars, m, order);
    let phi_inv = invert_series_matrix(&phi)?;
    Ok(GaugeTransform { phi, phi_inv, b, order })
}

/// Solves `X_i B − B X_{i−1} = R_i` around a cycle (indices mod `L`).
fn solve_cycle(b: &QMatrix, r: &[QMatrix], degree: u32) -> Result<Vec<QMatrix>> {
    let m = b.nrows();
    let l = r.len();
    let size = m * m * l;
    let idx = |i: usize, row: usize, col: usize| (i * m + row) * m + col;
    let mut sys = vec![vec![BigRational::zero(); size]; size];
    let mut rhs = vec![BigRational::zero(); size];
    for i in 0..l {
        let prev = (i + l - 1) % l;
        for row in 0..m {
            for col in 0..m {
                let eq = idx(i, row, col);
                rhs[eq] = r[i].get(row, col).clone();
                for s in 0..m {
                    sys[eq][idx(i, row, s)] += b.get(s, col);
                    sys[eq][idx(prev, s, col)] -= b.get(row, s);
                }
            }
        }
    }
    if rank(&sys, size) < size {
        return Err(Error::Resonance { degree });
    }
    let v = solve(&sys, &rhs, size).ok_or(Error::Resonance { degree })?;
    Ok((0..l).map(|i| Matrix::from_fn(m, m, |row, col| v[idx(i, row, col)].clone())).collect())
}

/// Location of the first coefficient where a gauge identity fails.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeFailure {
    /// `"inverse"`, `"conjugation"` or `"iterate"`.
    pub identity: &'static str,
    /// Iterate index for the `"iterate"` identity.
    pub k: Option<u64>,
    pub row: usize,
    pub col: usize,
    pub monomial: Monomial,
    pub expected: BigRational,
    pub found: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaugeCheck {
    pub ok: bool,
    pub failure: Option<GaugeFailure>,
}

/// Largest iterate index checked by [`gauge_verify`].
pub const VERIFIED_ITERATES: u64 = 3;

/// Checks, modulo degree `order`: `Φ Φ⁻¹ = I`, `Φ(z)⁻¹ A(z) Φ(Tz) = B` and
/// `A_k(z) = Φ(z) B^k Φ⁻¹(T^k z)` for `k = 0..=3`.
pub fn gauge_verify(sys: &MahlerSystem, g: &GaugeTransform, order: u32) -> Result<GaugeCheck> {
    if order > g.order {
        return Err(Error::Invalid(format!("verification order {order} exceeds the gauge order {}", g.order)));
    }
    if g.phi.nrows() != sys.m() || g.b.nrows() != sys.m() {
        return Err(Error::DimensionMismatch("gauge transform and system sizes differ".into()));
    }
    let vars = sys.vars().clone();
    let phi = g.phi.truncate(order);
    let phi_inv = g.phi_inv.truncate(order);
    let lift = |q: &QMatrix| q.to_series(&vars, order);
    let fail = |identity, k, lhs: &SeriesMatrix, rhs: &SeriesMatrix| {
        lhs.first_difference(rhs, order).map(|(row, col, monomial, found, expected)| GaugeFailure {
            identity,
            k,
            row,
            col,
            monomial,
            expected,
            found,
        })
    };
    let done = |f: Option<GaugeFailure>| Ok(GaugeCheck { ok: f.is_none(), failure: f });

    let product = phi.mul(&phi_inv)?;
    if let Some(f) = fail("inverse", None, &product, &lift(&QMatrix::identity(sys.m()))) {
        return done(Some(f));
    }
    let rows = sys.t().small_rows()?;
    let a = sys.a().to_series(order)?;
    let conj = phi_inv.mul(&a)?.mul(&phi.substitute(&rows)?)?;
    if let Some(f) = fail("conjugation", None, &conj, &lift(&g.b)) {
        return done(Some(f));
    }
    for k in 0..=VERIFIED_ITERATES {
        let ak = iterate_matrix(sys, k)?.to_series(order)?;
        let tk = sys.t().pow(k).small_rows()?;
        let rhs = phi.mul(&lift(&g.b.pow(k)?))?.mul(&phi_inv.substitute(&tk)?)?;
        if let Some(f) = fail("iterate", Some(k), &rhs, &ak) {
            return done(Some(f));
        }
    }
    done(None)
}

#[cfg(test)]
mod tests {
    use super::super::tests::fredholm;
    use super::super::Orientation;
    use super::*;
    use crate::exact::rational::qi;
    use crate::exact::{vars, MultiPoly};
    use crate::transform::Transform;

    fn sys(names: &[&str], t: Transform, a: &[Vec<&str>]) -> MahlerSystem {
        MahlerSystem::parse(names, t, a, Orientation::Forward).unwrap()
    }

    #[test]
    fn fredholm_gauge() {
        let s = fredholm();
        let g = gauge_construct(&s, 8).unwrap();
        assert!(g.b.is_identity());
        assert_eq!(g.phi.get(1, 0).to_poly(), MultiPoly::parse("z + z^2 + z^4", vars(&["z"])).unwrap());
        assert!(g.phi.get(0, 1).is_zero());
        assert!(gauge_verify(&s, &g, 8).unwrap().ok);
        assert!(gauge_verify(&s, &g, 1).unwrap().ok);
    }

    #[test]
    fn perturbed_gauge_fails_with_witness() {
        let s = fredholm();
        let mut g = gauge_construct(&s, 8).unwrap();
        let mut e = g.phi.get(1, 0).clone();
        e.add_term(Monomial(vec![3]), qi(1));
        g.phi.set(1, 0, e);
        let c = gauge_verify(&s, &g, 8).unwrap();
        assert!(!c.ok);
        let f = c.failure.unwrap();
        assert_eq!(f.identity, "inverse");
        assert_eq!(f.monomial.degree(), 3);
    }

    #[test]
    fn constant_and_thue_morse() {
        let c = sys(&["z"], Transform::scalar(2), &[vec!["2", "1"], vec!["0", "3"]]);
        let g = gauge_construct(&c, 6).unwrap();
        assert!(g.phi.constant_part().is_identity());
        assert!(g.phi.entries().iter().all(|s| s.valuation().is_none_or(|v| v == 0)));
        assert_eq!(g.b, QMatrix::from_i64(&[vec![2, 1], vec![0, 3]]));
        let tm = sys(&["z"], Transform::scalar(2), &[vec!["1 - z"]]);
        let g = gauge_construct(&tm, 8).unwrap();
        let expect = MultiPoly::parse("(1 - z)*(1 - z^2)*(1 - z^4)", vars(&["z"])).unwrap();
        assert_eq!(g.phi.get(0, 0).to_poly(), expect);
        assert!(gauge_verify(&tm, &g, 8).unwrap().ok);
    }

    #[test]
    fn degree_preserving_directions() {
        let fib = Transform::from_u64(&[vec![1, 1], vec![1, 0]]);
        let s = sys(&["x", "y"], fib, &[vec!["1", "0"], vec!["x", "1"]]);
        let g = gauge_construct(&s, 10).unwrap();
        assert!(gauge_verify(&s, &g, 10).unwrap().ok);
        let s = sys(&["x", "y"], fib_swap(), &[vec!["1 + y"]]);
        let g = gauge_construct(&s, 6).unwrap();
        assert!(gauge_verify(&s, &g, 6).unwrap().ok);
    }

    fn fib_swap() -> Transform {
        Transform::from_u64(&[vec![0, 2], vec![1, 0]])
    }

    #[test]
    fn resonance_is_reported() {
        // T = identity on one variable fixes every monomial: X·B − B·X is singular
        let s = sys(&["z"], Transform::scalar(1), &[vec!["1 + z"]]);
        assert_eq!(gauge_construct(&s, 4).unwrap_err(), Error::Resonance { degree: 1 });
        let p = sys(&["z"], Transform::scalar(2), &[vec!["1/z"]]);
        assert_eq!(gauge_construct(&p, 4).unwrap_err(), Error::Pole);
    }
}
