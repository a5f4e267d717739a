//! Word-level bitset helpers for the search engines' hot loops.

use crate::graph::Graph;

pub(crate) type Words = Vec<u64>;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub(crate) fn set(w: &mut [u64], i: usize) {
    w[i >> 6] |= 1 << (i & 63);
}

#[inline]
pub(crate) fn clear(w: &mut [u64], i: usize) {
    w[i >> 6] &= !(1 << (i & 63));
}

#[inline]
pub(crate) fn is_empty(w: &[u64]) -> bool {
    w.iter().all(|&x| x == 0)
}

pub(crate) fn ones(w: &[u64]) -> impl Iterator<Item = usize> + '_ {
    w.iter().enumerate().flat_map(|(i, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                None
            } else {
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(i * 64 + t)
            }
        })
    })
}

/// Adjacency rows as flat word vectors.
pub(crate) fn adjacency_words(g: &Graph) -> Vec<Words> {
    let n = g.n();
    let nw = words_for(n);
    (0..n)
        .map(|v| {
            let mut row = vec![0u64; nw];
            for &u in g.neighbors(v) {
                set(&mut row, u);
            }
            row
        })
        .collect()
}
