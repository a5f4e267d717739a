//! Necklace graphs: a chordless path cut into segments of lengths
//! `m_0..m_n`, with one extra vertex per junction adjacent to the last vertex
//! of one segment and the first vertex of the next.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A generated necklace. Path vertices come first (ids `0..P`, in path
/// order), followed by the junction vertices `y_1..y_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Necklace {
    pub graph: Graph,
    pub base: Vertex,
    pub hook: Vertex,
    pub lengths: Vec<usize>,
}

impl Necklace {
    /// Path position of the `j`-th vertex of segment `i`.
    pub fn path_vertex(&self, i: usize, j: usize) -> Vertex {
        self.lengths[..i].iter().map(|m| m + 1).sum::<usize>() + j
    }

    /// The junction vertex `y_i`, `1 <= i <= n`.
    pub fn junction(&self, i: usize) -> Vertex {
        let path_len: usize = self.lengths.iter().map(|m| m + 1).sum();
        path_len + i - 1
    }

    /// Number of junctions `n`.
    pub fn junctions(&self) -> usize {
        self.lengths.len() - 1
    }
}

/// Builds the necklace with segment lengths `lengths = [m_0, .., m_n]`, all
/// positive. Vertex count is `sum(m_i + 1) + n`.
pub fn build_necklace(lengths: &[usize]) -> Result<Necklace> {
    if lengths.is_empty() {
        return Err(Error::input("a necklace needs at least one segment"));
    }
    if lengths.contains(&0) {
        return Err(Error::input("necklace segment lengths must be positive"));
    }
    let path_len: usize = lengths.iter().map(|m| m + 1).sum();
    let n = lengths.len() - 1;
    let mut edges: Vec<(Vertex, Vertex)> = (1..path_len).map(|v| (v - 1, v)).collect();
    let mut start = 0;
    for i in 1..lengths.len() {
        let last_prev = start + lengths[i - 1];
        let y = path_len + i - 1;
        edges.push((last_prev, y));
        edges.push((last_prev + 1, y));
        start = last_prev + 1;
    }
    let graph = Graph::from_edges(path_len + n, edges)?;
    Ok(Necklace { graph, base: 0, hook: path_len - 1, lengths: lengths.to_vec() })
}

/// `(m)_n`: `n + 1` segments of length `m`.
pub fn uniform_necklace(m: usize, n: usize) -> Result<Necklace> {
    build_necklace(&vec![m; n + 1])
}

/// χ-bound `(2^(n+1)(m+3))^(ω-1)` for graphs without an induced
/// subdivision of the `(m)_n` necklace. `None` on overflow.
pub fn necklace_bound(m: usize, n: usize, omega: usize) -> Option<u128> {
    if omega == 0 {
        return Some(0);
    }
    let base = 2u128.checked_pow(u32::try_from(n + 1).ok()?)?.checked_mul(m as u128 + 3)?;
    base.checked_pow(u32::try_from(omega - 1).ok()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::path;
    use crate::iso::are_isomorphic;
    use crate::subdivision::Pattern;

    #[test]
    fn bound_values() {
        assert_eq!(necklace_bound(1, 1, 1), Some(1));
        assert_eq!(necklace_bound(1, 1, 2), Some(16));
        assert_eq!(necklace_bound(1, 1, 3), Some(256));
        assert_eq!(necklace_bound(2, 0, 2), Some(10));
        assert_eq!(necklace_bound(1, 1, 0), Some(0));
        assert_eq!(necklace_bound(1, 200, 2), None);
    }

    #[test]
    fn one_one_is_the_bull() {
        let nk = uniform_necklace(1, 1).unwrap();
        assert!(are_isomorphic(&nk.graph, &Pattern::bull().graph).is_some());
        assert_eq!((nk.base, nk.hook), (0, 3));
    }

    #[test]
    fn single_segment_is_a_path() {
        for m in 1..=5 {
            let nk = uniform_necklace(m, 0).unwrap();
            assert!(are_isomorphic(&nk.graph, &path(m + 1)).is_some());
            assert_eq!((nk.base, nk.hook), (0, m));
        }
    }

    #[test]
    fn two_one_counts() {
        let nk = build_necklace(&[2, 1]).unwrap();
        // path x00 x01 x02 x10 x11, junction y1
        assert_eq!(nk.graph.n(), 6);
        assert_eq!(nk.graph.edge_count(), 6);
        let y = nk.junction(1);
        assert_eq!(nk.graph.neighbors(y), &[nk.path_vertex(0, 2), nk.path_vertex(1, 0)]);
        let mut deg: Vec<usize> = nk.graph.vertices().map(|v| nk.graph.degree(v)).collect();
        deg.sort_unstable();
        assert_eq!(deg, vec![1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn rejects_zero_lengths() {
        assert!(build_necklace(&[1, 0]).is_err());
        assert!(build_necklace(&[]).is_err());
    }
}
