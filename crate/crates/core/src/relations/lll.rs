//! Integral LLL reduction with `δ = 3/4`, kept in integers throughout via the
//! Gram determinants `d_i` and scaled Gram–Schmidt coefficients `λ_ij`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact::intlat::IVec;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// Nearest integer to a/b for b > 0, ties away from zero.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * BigInt::from(2) + b).div_floor(&(b * BigInt::from(2)))
}

struct State {
    b: Vec<IVec>,
    d: Vec<BigInt>,
    lambda: Vec<Vec<BigInt>>,
}

impl State {
    fn red(&mut self, k: usize, l: usize) {
        if (&self.lambda[k][l] * BigInt::from(2)).abs() > self.d[l + 1] {
            let q = round_div(&self.lambda[k][l], &self.d[l + 1]);
            let bl = self.b[l].clone();
            for (x, y) in self.b[k].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            self.lambda[k][l] -= &q * &self.d[l + 1];
            for i in 0..l {
                let t = &q * &self.lambda[l][i];
                self.lambda[k][i] -= t;
            }
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = self.lambda[k][j].clone();
            self.lambda[k][j] = std::mem::replace(&mut self.lambda[k - 1][j], t);
        }
        let lam = self.lambda[k][k - 1].clone();
        let bnew = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] = (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k];
            self.lambda[i][k - 1] = (&bnew * &t + &lam * &self.lambda[i][k]) / &self.d[k + 1];
        }
        self.d[k] = bnew;
    }
}

/// LLL-reduces linearly independent integer row vectors.
pub fn lll(basis: &[IVec]) -> Vec<IVec> {
    let n = basis.len();
    if n <= 1 {
        return basis.to_vec();
    }
    // d[i] is the Gram determinant of the first i vectors (d[0] = 1)
    let mut s = State { b: basis.to_vec(), d: vec![BigInt::zero(); n + 1], lambda: vec![vec![BigInt::zero(); n]; n] };
    s.d[0] = BigInt::from(1);
    s.d[1] = dot(&s.b[0], &s.b[0]);
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&s.b[k], &s.b[j]);
                for i in 0..j {
                    u = (&s.d[i + 1] * &u - &s.lambda[k][i] * &s.lambda[j][i]) / &s.d[i];
                }
                if j < k {
                    s.lambda[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input vectors are linearly dependent");
                    s.d[k + 1] = u;
                }
            }
        }
        s.red(k, k - 1);
        let lhs = &s.d[k + 1] * &s.d[k - 1] * 4;
        let rhs = &s.d[k] * &s.d[k] * 3 - &s.lambda[k][k - 1] * &s.lambda[k][k - 1] * 4;
        if lhs < rhs {
            s.swap(k, kmax);
            k = k.saturating_sub(1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                s.red(k, l);
            }
            k += 1;
        }
    }
    s.b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::intlat::to_ivec;
    use crate::exact::QMatrix;

    fn det_abs(b: &[IVec]) -> BigInt {
        let m = QMatrix::from_fn(b.len(), b.len(), |i, j| num_rational::BigRational::from_integer(b[i][j].clone()));
        m.det().unwrap().to_integer().abs()
    }

    #[test]
    fn reduces_known_basis() {
        let b = vec![to_ivec(&[1, 1, 1]), to_ivec(&[-1, 0, 2]), to_ivec(&[3, 5, 6])];
        let r = lll(&b);
        assert_eq!(det_abs(&r), det_abs(&b));
        // the reduced basis of this classical example has squared norms ≤ 6
        for v in &r {
            assert!(dot(v, v) <= BigInt::from(6), "{v:?}");
        }
    }

    #[test]
    fn lll_condition_holds() {
        let b = vec![to_ivec(&[201, 37, 0]), to_ivec(&[1648, 297, 0]), to_ivec(&[5, 7, 11])];
        let r = lll(&b);
        assert_eq!(det_abs(&r), det_abs(&b));
        assert!(dot(&r[0], &r[0]) <= BigInt::from(4) * dot(&b[0], &b[0]));
    }
}
