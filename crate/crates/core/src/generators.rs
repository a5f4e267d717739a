//! Deterministic graph families used by tests, benchmarks and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Chordless cycle `0-1-...-(n-1)-0`. Requires `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// Path on `n` vertices `0-1-...-(n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid clique")
}

/// Complete multipartite graph with the given part sizes; parts are
/// consecutive id ranges.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (p, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, size));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<_> = edges.filter(|&(u, v)| part_of[u] != part_of[v]).collect();
    Graph::from_edges(n, edges).expect("valid multipartite graph")
}

/// Standard drawing: outer 5-cycle `0..5`, spokes `i -- i+5`, inner
/// pentagram on `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("valid petersen graph")
}

/// One Mycielski step: for `G` on `v_0..v_{n-1}` adds shadows `u_i`
/// (ids `n + i`) adjacent to `N(v_i)`, and an apex `w` (id `2n`) adjacent to
/// every shadow.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    for v in 0..n {
        for &x in g.neighbors(v) {
            edges.push((n + v, x));
        }
        edges.push((n + v, 2 * n));
    }
    Graph::from_edges(2 * n + 1, edges).expect("valid mycielskian")
}

/// Mycielski tower: depth 1 is `K2`, each further level applies
/// [`mycielskian`]. Depth 2 is `C5`, depth 3 the Grötzsch graph, depth 4 has
/// 23 vertices. The graph at depth `d` is triangle-free with `χ = d + 1`.
pub fn mycielski(depth: usize) -> Result<Graph> {
    if depth == 0 {
        return Err(Error::input("mycielski depth must be at least 1"));
    }
    let mut g = complete(2);
    for _ in 1..depth {
        g = mycielskian(&g);
    }
    Ok(g)
}

pub fn grotzsch() -> Graph {
    mycielski(3).expect("depth 3 is valid")
}

/// Kneser graph `K(n, k)`: `k`-subsets of `{0..n}` in lexicographic order,
/// adjacent when disjoint.
pub fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n > 63 || k > n {
        return Err(Error::input(format!("invalid kneser parameters n={n} k={k}")));
    }
    let mut subsets: Vec<u64> = Vec::new();
    fn extend(from: usize, n: usize, left: usize, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in from..=n - left {
            extend(i + 1, n, left - 1, mask | (1 << i), out);
        }
    }
    extend(0, n, k, 0, &mut subsets);
    let m = subsets.len();
    let mut edges = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if subsets[a] & subsets[b] == 0 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(m, edges)
}

/// Erdős–Rényi `G(n, p)` from a seeded ChaCha stream; identical for
/// identical arguments.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}
