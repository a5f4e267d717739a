//! Small graphs up to isomorphism, generated by one-vertex extensions.
//!
//! Level `n` is built from level `n - 1` by adding vertex `n - 1` with every
//! possible neighborhood. For a property closed under induced subgraphs, every
//! graph with the property arises this way from a smaller graph with the
//! property, so filtering each level keeps the census complete.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bull::{glue, substitute};
use crate::error::Result;
use crate::generators::gnp;
use crate::graph::{Graph, Vertex};
use crate::iso::{are_isomorphic, fingerprint};
use crate::subdivision::{find_induced_subdivision, OracleOptions, Pattern};

/// Representatives seen so far, bucketed by fingerprint.
#[derive(Default)]
struct Classes {
    buckets: HashMap<Vec<usize>, Vec<usize>>,
    graphs: Vec<Graph>,
}

impl Classes {
    /// Index of a stored graph isomorphic to `g`, if any.
    fn find(&self, key: &[usize], g: &Graph) -> Option<usize> {
        self.buckets.get(key)?.iter().copied().find(|&i| are_isomorphic(&self.graphs[i], g).is_some())
    }

    fn insert(&mut self, key: Vec<usize>, g: Graph) {
        self.buckets.entry(key).or_default().push(self.graphs.len());
        self.graphs.push(g);
    }
}

/// `levels[n]` lists one graph per isomorphism class on `n` vertices that
/// passes `keep`. `keep(g, v)` is asked about a new graph `g` whose last
/// vertex `v` was just added to a graph already in the census, so it may
/// restrict its checks to structures through `v`.
pub fn hereditary_census<F>(max_n: usize, mut keep: F) -> Vec<Vec<Graph>>
where
    F: FnMut(&Graph, Vertex) -> bool,
{
    let mut levels = vec![vec![Graph::empty(0)]];
    for n in 1..=max_n {
        let mut kept = Classes::default();
        let mut rejected = Classes::default();
        for parent in &levels[n - 1] {
            let base: Vec<(Vertex, Vertex)> = parent.edges().collect();
            for mask in 0u64..1 << (n - 1) {
                let mut edges = base.clone();
                edges.extend((0..n - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, n - 1)));
                let g = Graph::from_edges(n, edges).expect("valid extension");
                let key = fingerprint(&g);
                if kept.find(&key, &g).is_some() || rejected.find(&key, &g).is_some() {
                    continue;
                }
                if keep(&g, n - 1) {
                    kept.insert(key, g);
                } else {
                    rejected.insert(key, g);
                }
            }
        }
        levels.push(kept.graphs);
    }
    levels
}

/// All graphs up to isomorphism on at most `max_n` vertices.
pub fn all_graphs(max_n: usize) -> Vec<Vec<Graph>> {
    hereditary_census(max_n, |_, _| true)
}

/// One graph per isomorphism class on up to `max_n` vertices with no
/// induced subdivision of `h`. Only subdivisions through the newest vertex
/// are searched, as the rest were excluded one level down.
pub fn star_free_census(h: &Pattern, max_n: usize) -> Vec<Vec<Graph>> {
    hereditary_census(max_n, |g, v| {
        let opts = OracleOptions { size_guard: Some(g.n()), must_contain: Some(v), pins: Vec::new() };
        find_induced_subdivision(g, h, &opts).expect("within the size guard").is_none()
    })
}

fn random_substitution_tree<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    let mut g = gnp(rng.gen_range(1..=n.min(4)), rng.gen_range(0.0..=1.0), rng.gen())?;
    while g.n() < n {
        let r = rng.gen_range(2..=(n - g.n() + 1).min(4));
        let piece = gnp(r, rng.gen_range(0.0..=1.0), rng.gen())?;
        g = substitute(&g, rng.gen_range(0..g.n()), &piece)?;
    }
    Ok(g)
}

fn random_blocks<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    let first = rng.gen_range(1..=n);
    let mut g = random_substitution_tree(first, rng)?;
    while g.n() < n {
        let r = rng.gen_range(2..=(n - g.n() + 1));
        let block = random_substitution_tree(r, rng)?;
        g = glue(&g, &block, rng.gen_range(0..g.n()), rng.gen_range(0..r))?;
    }
    Ok(g)
}

/// A random graph on `n` vertices with no induced subdivision of `h`, or
/// `None` after `attempts` rejected candidates. Each candidate is, with equal
/// odds, a `G(n, p)` with random `p`, a substitution tree of graphs on at
/// most 4 vertices, or such trees glued at single vertices; it is randomly
/// relabelled and filtered by the exhaustive oracle.
pub fn sample_star_free<R: Rng>(h: &Pattern, n: usize, rng: &mut R, attempts: usize) -> Result<Option<Graph>> {
    let opts = OracleOptions { size_guard: Some(n.max(h.graph.n())), ..Default::default() };
    for _ in 0..attempts {
        let g = match rng.gen_range(0..3) {
            0 => gnp(n, rng.gen_range(0.05..=0.95), rng.gen())?,
            1 => random_substitution_tree(n, rng)?,
            _ => random_blocks(n, rng)?,
        };
        let mut perm: Vec<Vertex> = (0..n).collect();
        perm.shuffle(rng);
        let g = g.permuted(&perm);
        if find_induced_subdivision(&g, h, &opts)?.is_none() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_pattern_free_and_deterministic() {
        let bull = Pattern::bull();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..5).map(|_| sample_star_free(&bull, 9, &mut rng, 200).unwrap().unwrap()).collect::<Vec<_>>()
        };
        let a = draw(7);
        assert_eq!(a, draw(7));
        for g in &a {
            assert_eq!(g.n(), 9);
            assert!(crate::subdivision::contains_induced_subdivision(g, &bull).unwrap().is_none());
        }
    }

    #[test]
    fn star_free_census_matches_filtered_enumeration() {
        let paw = Pattern::paw();
        let census = star_free_census(&paw, 6);
        for (n, level) in all_graphs(6).iter().enumerate() {
            let expect = level
                .iter()
                .filter(|g| crate::subdivision::contains_induced_subdivision(g, &paw).unwrap().is_none())
                .count();
            assert_eq!(census[n].len(), expect, "n = {n}");
        }
    }

    #[test]
    fn graph_counts() {
        // number of graphs on n unlabeled vertices, n = 0..=6
        let counts: Vec<usize> = all_graphs(6).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn triangle_free_counts() {
        // triangle-free graphs on n unlabeled vertices, n = 0..=6
        let levels = hereditary_census(6, |g, v| {
            let nb = g.neighbors(v);
            !nb.iter().enumerate().any(|(i, &a)| nb[i + 1..].iter().any(|&b| g.has_edge(a, b)))
        });
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 7, 14, 38]);
    }
}
