//! Integer lattices: Hermite normal form, kernels, intersections and
//! preimages, all over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IVec = Vec<BigInt>;

fn axpy(dst: &mut [BigInt], f: &BigInt, src: &[BigInt]) {
    if f.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= f * s;
        }
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: pivot
/// columns strictly increase, pivots are positive and the entries above a
/// pivot lie in `[0, pivot)`. Zero rows are dropped.
pub fn hnf(rows: &[IVec]) -> Vec<IVec> {
    echelon(rows, usize::MAX)
}

/// Unimodular row reduction that only creates pivots in the first `limit`
/// columns; rows without such a pivot are kept (reduced) at the end.
fn echelon(rows: &[IVec], limit: usize) -> Vec<IVec> {
    let mut a: Vec<IVec> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let Some(n) = a.first().map(Vec::len) else {
        return a;
    };
    let mut r = 0;
    for c in 0..n.min(limit) {
        if r == a.len() {
            break;
        }
        loop {
            let best = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            let mut done = true;
            let (head, tail) = a.split_at_mut(r + 1);
            let piv = &head[r];
            for row in tail.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let q = row[c].div_floor(&piv[c]);
                axpy(row, &q, piv);
                if !row[c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let (head, tail) = a.split_at_mut(r);
            let piv = &tail[0];
            for row in head.iter_mut() {
                let q = row[c].div_floor(&piv[c]);
                axpy(row, &q, piv);
            }
            r += 1;
        }
    }
    if limit == usize::MAX {
        a.truncate(r);
    }
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    a
}

/// Basis (in Hermite form) of `{x ∈ ℤⁿ : A x = 0}` where `A` has the given
/// rows, each of length `n`.
pub fn kernel(a: &[IVec], n: usize) -> Vec<IVec> {
    let m = a.len();
    let aug: Vec<IVec> = (0..n)
        .map(|i| {
            let mut row: IVec = a.iter().map(|r| r[i].clone()).collect();
            row.extend((0..n).map(|j| BigInt::from((i == j) as i64)));
            row
        })
        .collect();
    let red = echelon(&aug, m);
    let ker: Vec<IVec> = red
        .into_iter()
        .filter(|row| row[..m].iter().all(Zero::is_zero))
        .map(|row| row[m..].to_vec())
        .collect();
    hnf(&ker)
}

/// `L₁ ∩ L₂` for lattices in ℤⁿ given by bases.
pub fn intersect(b1: &[IVec], b2: &[IVec], n: usize) -> Vec<IVec> {
    if b1.is_empty() || b2.is_empty() {
        return vec![];
    }
    // columns: rows of b1 then negated rows of b2
    let k = b1.len() + b2.len();
    let c: Vec<IVec> = (0..n)
        .map(|i| {
            b1.iter()
                .map(|r| r[i].clone())
                .chain(b2.iter().map(|r| -r[i].clone()))
                .collect()
        })
        .collect();
    let w = kernel(&c, k);
    let xs: Vec<IVec> = w
        .iter()
        .map(|w| {
            let mut x = vec![BigInt::zero(); n];
            for (u, row) in w.iter().zip(b1) {
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi += u * ri;
                }
            }
            x
        })
        .collect();
    hnf(&xs)
}

/// `{x ∈ ℤⁿ : M x ∈ L}` where `m` is `n×n` (rows) and `L` has basis `b`.
pub fn preimage(m: &[IVec], b: &[IVec], n: usize) -> Vec<IVec> {
    let k = b.len();
    let c: Vec<IVec> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            row.extend(b.iter().map(|v| -v[i].clone()));
            row
        })
        .collect();
    let w = kernel(&c, n + k);
    hnf(&w.into_iter().map(|v| v[..n].to_vec()).collect::<Vec<_>>())
}

/// Membership of `v` in the lattice with Hermite basis `basis`.
pub fn contains(basis: &[IVec], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    let mut it = basis.iter().peekable();
    for c in 0..v.len() {
        let pivot_row = match it.peek() {
            Some(row) if row[..c].iter().all(Zero::is_zero) && !row[c].is_zero() => it.next(),
            _ => None,
        };
        match pivot_row {
            Some(row) => {
                if !v[c].is_multiple_of(&row[c]) {
                    return false;
                }
                let q = &v[c] / &row[c];
                axpy(&mut v, &q, row);
            }
            None => {
                if !v[c].is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Integer matrix times column vector.
pub fn mat_vec(m: &[IVec], v: &[BigInt]) -> IVec {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn mat_mul(a: &[IVec], b: &[IVec]) -> Vec<IVec> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[IVec]) -> Vec<IVec> {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn identity(n: usize) -> Vec<IVec> {
    (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination; every division is exact.
pub fn det(a: &[IVec]) -> BigInt {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut a = a.to_vec();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

pub fn to_ivec(v: &[i64]) -> IVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
