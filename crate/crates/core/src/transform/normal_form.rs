use std::collections::BTreeSet;

use num_traits::Zero;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::Transform;

/// Block-lower-triangular form `PTPᵗ` with irreducible diagonal blocks.
///
/// The first `kappa` blocks receive no edges from other blocks (their block
/// rows vanish off the diagonal); each of the `nu` remaining blocks has a
/// nonzero block to its left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    /// `permutation[k]` is the original index placed at position `k`.
    pub permutation: Vec<usize>,
    /// Original indices of each diagonal block, increasing within a block.
    pub block_indices: Vec<Vec<usize>>,
    pub diagonal_blocks: Vec<Transform>,
    pub kappa: usize,
    pub nu: usize,
    /// For each lower block, whether some subdiagonal block in its row is
    /// nonzero.
    pub subdiagonal_nonzero: Vec<bool>,
}

impl NormalForm {
    /// Applies the permutation: entry `(a, b)` is `t[perm[a]][perm[b]]`.
    pub fn permuted(&self, t: &Transform) -> Transform {
        t.principal(&self.permutation)
    }

    /// Whether the permuted matrix is block-lower-triangular.
    pub fn is_block_lower_triangular(&self, t: &Transform) -> bool {
        let pos: Vec<usize> = {
            let mut p = vec![0; self.permutation.len()];
            for (k, &i) in self.permutation.iter().enumerate() {
                p[i] = k;
            }
            p
        };
        let block_of_pos: Vec<usize> = self
            .block_indices
            .iter()
            .enumerate()
            .flat_map(|(b, idx)| std::iter::repeat_n(b, idx.len()))
            .collect();
        let n = t.n();
        (0..n).all(|i| {
            (0..n).all(|j| {
                t.entry(i, j).is_zero() || block_of_pos[pos[j]] <= block_of_pos[pos[i]]
            })
        })
    }
}

/// Strongly connected components of the graph with an edge `j → i` when
/// `t_ij > 0`, arranged with source components first and the rest in
/// topological order. Ties are broken by smallest original index.
pub fn normal_form(t: &Transform) -> NormalForm {
    let n = t.n();
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = (0..n).map(|i| g.add_node(i)).collect();
    for i in 0..n {
        for j in 0..n {
            if !t.entry(i, j).is_zero() && i != j {
                g.add_edge(nodes[j], nodes[i], ());
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| g[x]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort();
    let mut comp_of = vec![0; n];
    for (c, idx) in comps.iter().enumerate() {
        for &i in idx {
            comp_of[i] = c;
        }
    }
    let m = comps.len();
    // preds[c]: components with an edge into c
    let mut preds: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    for i in 0..n {
        for j in 0..n {
            if !t.entry(i, j).is_zero() && comp_of[i] != comp_of[j] {
                preds[comp_of[i]].insert(comp_of[j]);
            }
        }
    }
    let sources: Vec<usize> = (0..m).filter(|&c| preds[c].is_empty()).collect();
    let mut order = sources.clone();
    let mut placed = vec![false; m];
    for &s in &sources {
        placed[s] = true;
    }
    while order.len() < m {
        // components are sorted by smallest index, so the first ready one wins ties
        let next = (0..m)
            .find(|&c| !placed[c] && preds[c].iter().all(|&p| placed[p]))
            .expect("condensation is acyclic");
        placed[next] = true;
        order.push(next);
    }
    let block_indices: Vec<Vec<usize>> = order.iter().map(|&c| comps[c].clone()).collect();
    let permutation: Vec<usize> = block_indices.iter().flatten().copied().collect();
    let diagonal_blocks = block_indices.iter().map(|idx| t.principal(idx)).collect();
    let kappa = sources.len();
    let subdiagonal_nonzero = order[kappa..].iter().map(|&c| !preds[c].is_empty()).collect();
    NormalForm { permutation, block_indices, diagonal_blocks, kappa, nu: m - kappa, subdiagonal_nonzero }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_has_two_top_blocks() {
        let nf = normal_form(&Transform::from_u64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!((nf.kappa, nf.nu), (2, 0));
        assert_eq!(nf.diagonal_blocks, vec![Transform::scalar(2), Transform::scalar(3)]);
    }

    #[test]
    fn fibonacci_is_irreducible() {
        let t = Transform::from_u64(&[vec![1, 1], vec![1, 0]]);
        let nf = normal_form(&t);
        assert_eq!((nf.kappa, nf.nu), (1, 0));
        assert_eq!(nf.diagonal_blocks[0], t);
    }

    #[test]
    fn lower_block_detected() {
        let t = Transform::from_u64(&[vec![2, 0], vec![1, 3]]);
        let nf = normal_form(&t);
        assert_eq!((nf.kappa, nf.nu), (1, 1));
        assert_eq!(nf.diagonal_blocks, vec![Transform::scalar(2), Transform::scalar(3)]);
        assert_eq!(nf.subdiagonal_nonzero, vec![true]);
        assert!(nf.is_block_lower_triangular(&t));
    }

    #[test]
    fn upper_triangular_is_reordered() {
        // t_01 > 0: edge 1 → 0, so index 1 is the source
        let t = Transform::from_u64(&[vec![2, 1], vec![0, 3]]);
        let nf = normal_form(&t);
        assert_eq!(nf.permutation, vec![1, 0]);
        assert!(nf.is_block_lower_triangular(&t));
        assert_eq!(nf.permuted(&t), Transform::from_u64(&[vec![3, 0], vec![1, 2]]));
    }
}
