use std::cmp::Ordering;

/// Exponent vector of a monomial `z^μ`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// Exponent vector of `(Tz)^μ`, namely `Tᵗμ`, where `t` holds the rows
    /// of `T`. Returned as 64-bit exponents so callers can test degree bounds
    /// before narrowing.
    pub fn transform_wide(&self, t: &[Vec<u32>]) -> Vec<u64> {
        let n = self.0.len();
        let mut e = vec![0u64; n];
        for (i, &mi) in self.0.iter().enumerate() {
            if mi == 0 {
                continue;
            }
            for (j, ej) in e.iter_mut().enumerate() {
                *ej += mi as u64 * t[i][j] as u64;
            }
        }
        e
    }

    /// `Tᵗμ`; panics if an exponent overflows `u32`.
    pub fn transform(&self, t: &[Vec<u32>]) -> Monomial {
        Monomial(
            self.transform_wide(t)
                .into_iter()
                .map(|x| u32::try_from(x).expect("exponent overflow"))
                .collect(),
        )
    }

    /// All monomials in `n` variables of total degree exactly `d`, in
    /// increasing graded-lex order.
    pub fn of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=d {
                prefix.push(e);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        if n == 0 {
            return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(n, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All monomials of total degree `<= d`, increasing.
    pub fn up_to_degree(n: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Monomial::of_degree(n, k)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![0, 3]);
        let c = Monomial(vec![1, 1]);
        assert!(a < b);
        assert!(c < a);
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(Monomial::of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::up_to_degree(2, 3).len(), 10);
        let m = Monomial::of_degree(2, 2);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }
}
