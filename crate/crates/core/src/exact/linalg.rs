//! Exact linear algebra over ℚ on dense row lists.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::QMatrix;
use super::upoly::UPoly;

/// Reduced row echelon form; returns the reduced nonzero rows and the pivot
/// column of each.
pub fn rref(rows: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows of width `ncols`.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); ncols];
            x[f] = BigRational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// One solution of `A x = b` (free variables set to zero), or `None` if
/// the system is inconsistent.
pub fn solve(rows: &[Vec<BigRational>], b: &[BigRational], ncols: usize) -> Option<Vec<BigRational>> {
    let aug: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Characteristic polynomial `det(xI − M)` by the Faddeev–LeVerrier
/// recurrence.
pub fn charpoly(m: &QMatrix) -> UPoly {
    let n = m.nrows();
    assert!(m.is_square());
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let id = QMatrix::identity(n);
    let mut mk = QMatrix::zeros(n, n);
    let mut c_prev = BigRational::one();
    for k in 1..=n {
        // M_k = M (M_{k-1} + c_{n-k+1} I)
        let shifted = mk.add(&id.scale(&c_prev)).expect("same shape");
        mk = m.mul(&shifted).expect("square");
        let trace: BigRational = (0..n).map(|i| mk.get(i, i).clone()).sum();
        let c = -trace / BigRational::from_integer((k as i64).into());
        coeffs[n - k] = c.clone();
        c_prev = c;
    }
    UPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qi;

    fn rows(r: &[&[i64]]) -> Vec<Vec<BigRational>> {
        r.iter().map(|x| x.iter().map(|&v| qi(v)).collect()).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: BigRational = a[0].iter().zip(&v).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = rows(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[qi(3), qi(1)], 2), Some(vec![qi(2), qi(1)]));
        let b = rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&b, &[qi(1), qi(3)], 2), None);
    }

    #[test]
    fn charpoly_fibonacci() {
        let m = QMatrix::from_i64(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(charpoly(&m), UPoly::from_i64(&[-1, -1, 1]));
    }
}
