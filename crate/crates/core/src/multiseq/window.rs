use crate::error::{Error, Result};

/// Finite set of naturals inside `[0, width)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteWindow {
    width: u64,
    elements: Vec<u64>,
}

impl FiniteWindow {
    /// Sorts and deduplicates; elements must lie below `width`.
    pub fn new(mut elements: Vec<u64>, width: u64) -> Result<Self> {
        if let Some(x) = elements.iter().find(|&&x| x >= width) {
            return Err(Error::Invalid(format!("element {x} outside the window [0, {width})")));
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(FiniteWindow { width, elements })
    }

    pub fn from_predicate<F: Fn(u64) -> bool>(width: u64, f: F) -> Self {
        FiniteWindow { width, elements: (0..width).filter(|&x| f(x)).collect() }
    }

    pub fn width(&self) -> u64 {
        self.width
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// First `m` consecutive elements whose successive gaps are all `<= b`.
pub fn piecewise_syndetic_window(s: &FiniteWindow, b: u64, m: usize) -> Option<Vec<u64>> {
    if m == 0 {
        return Some(Vec::new());
    }
    let e = &s.elements;
    let mut start = 0;
    for i in 0..e.len() {
        if i > start && e[i] - e[i - 1] > b {
            start = i;
        }
        if i + 1 - start >= m {
            return Some(e[start..=i].to_vec());
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BrownOutcome {
    /// Smallest index of a part passing the window test.
    Part(usize),
    /// The union itself fails the window test.
    UnionFails,
    /// The union passes but no part does at these parameters.
    NoPart,
}

/// Finite analogue of the partition property of piecewise syndetic sets:
/// when the union of the parts passes the window test at `(b, m)`, looks for
/// a part that passes it too.
pub fn brown_split(union: &FiniteWindow, parts: &[FiniteWindow], b: u64, m: usize) -> Result<BrownOutcome> {
    let mut covered: Vec<u64> = parts.iter().flat_map(|p| p.elements.iter().copied()).collect();
    covered.sort_unstable();
    let total: usize = parts.iter().map(FiniteWindow::len).sum();
    covered.dedup();
    if covered != union.elements || total != covered.len() {
        return Err(Error::Invalid("the parts do not partition the set".into()));
    }
    if piecewise_syndetic_window(union, b, m).is_none() {
        return Ok(BrownOutcome::UnionFails);
    }
    Ok(parts
        .iter()
        .position(|p| piecewise_syndetic_window(p, b, m).is_some())
        .map_or(BrownOutcome::NoPart, BrownOutcome::Part))
}

/// Arithmetic progression `a, a+d, …, a+(length−1)d` inside the set with the
/// smallest `a`, then the smallest `d ≥ 1`.
pub fn progression_search(s: &FiniteWindow, length: usize) -> Result<Option<(u64, u64)>> {
    if length < 3 {
        return Err(Error::Invalid("progression length must be at least 3".into()));
    }
    let steps = (length - 1) as u64;
    for &a in &s.elements {
        let Some(&last) = s.elements.last() else { break };
        for d in 1..=(last.saturating_sub(a)) / steps {
            if (1..=steps).all(|i| s.contains(a + i * d)) {
                return Ok(Some((a, d)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_examples() {
        let threes = FiniteWindow::from_predicate(100, |x| x % 3 == 0);
        assert!(piecewise_syndetic_window(&threes, 3, 20).is_some());
        let pow2 = FiniteWindow::new((0..7).map(|i| 1u64 << i).collect(), 100).unwrap();
        assert!(piecewise_syndetic_window(&pow2, 3, 5).is_none());
        let full = FiniteWindow::from_predicate(50, |_| true);
        assert_eq!(piecewise_syndetic_window(&full, 1, 50).unwrap().len(), 50);
        assert!(FiniteWindow::new(vec![100], 100).is_err());
    }

    #[test]
    fn brown_examples() {
        let full = FiniteWindow::from_predicate(100, |_| true);
        let evens = FiniteWindow::from_predicate(100, |x| x % 2 == 0);
        let odds = FiniteWindow::from_predicate(100, |x| x % 2 == 1);
        assert_eq!(brown_split(&full, &[evens, odds], 2, 10).unwrap(), BrownOutcome::Part(0));
        let threes = FiniteWindow::from_predicate(100, |x| x % 3 == 0);
        let rest = FiniteWindow::from_predicate(100, |x| x % 3 != 0);
        assert_eq!(brown_split(&full, &[threes.clone(), rest], 2, 10).unwrap(), BrownOutcome::Part(1));
        assert_eq!(brown_split(&threes, std::slice::from_ref(&threes), 3, 5).unwrap(), BrownOutcome::Part(0));
        assert!(brown_split(&full, &[threes], 2, 10).is_err());
    }

    #[test]
    fn progression_examples() {
        let fives = FiniteWindow::from_predicate(100, |x| x % 5 == 0);
        assert_eq!(progression_search(&fives, 10).unwrap(), Some((0, 5)));
        let mut p = vec![0];
        p.extend((0..7).map(|i| 1u64 << i));
        let pow = FiniteWindow::new(p, 100).unwrap();
        assert_eq!(progression_search(&pow, 4).unwrap(), None);
        assert_eq!(progression_search(&pow, 3).unwrap(), Some((0, 1)));
        let full = FiniteWindow::from_predicate(30, |_| true);
        assert_eq!(progression_search(&full, 30).unwrap(), Some((0, 1)));
    }
}
