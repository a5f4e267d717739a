//! Immutable simple graphs on dense vertex ids `0..n`.
//!
//! Every structural argument in this crate is phrased in terms of induced
//! subgraphs, so there is no in-place deletion: removing vertices means taking
//! [`Graph::induced_subgraph`] of the complement set and keeping the returned
//! relabeling around so certificates can name vertices of the original input.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(vec![v])
    }

    /// `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Vertex> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.0.insert(i, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(i) => {
                self.0.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Errors if any id is `>= n`.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.last() {
            Some(v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    pub fn to_bits(&self, n: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(n);
        for v in self.iter() {
            bits.insert(v);
        }
        bits
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(v: [Vertex; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Simple undirected graph. Adjacency is kept both as sorted lists and as
/// bit rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    rows: Vec<FixedBitSet>,
}

/// An induced subgraph together with its relabeling: local vertex `i` is
/// `vertices[i]` in the host graph.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    pub vertices: Vec<Vertex>,
}

impl Induced {
    pub fn to_host(&self, local: Vertex) -> Vertex {
        self.vertices[local]
    }

    pub fn set_to_host<'a>(&self, local: impl IntoIterator<Item = &'a Vertex>) -> VertexSet {
        local.into_iter().map(|&v| self.vertices[v]).collect()
    }

    /// Local id of a host vertex, if it belongs to the subgraph.
    pub fn to_local(&self, host: Vertex) -> Option<Vertex> {
        self.vertices.binary_search(&host).ok()
    }
}

/// BFS distance layers from a root inside a vertex subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsLayers {
    pub layers: Vec<VertexSet>,
    pub unreachable: VertexSet,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], rows: vec![FixedBitSet::with_capacity(n); n] }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops
    /// and out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    /// Builds from symmetric, loop-free bit rows.
    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let adj: Vec<Vec<Vertex>> = rows.iter().map(|r| r.ones().collect()).collect();
        let g = Graph { adj, rows };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    fn check_invariants(&self) -> Result<()> {
        for (v, ns) in self.adj.iter().enumerate() {
            for &u in ns {
                if u == v {
                    return Err(Error::input(format!("self-loop at {v}")));
                }
                if !self.rows[u].contains(v) {
                    return Err(Error::input(format!("asymmetric adjacency {v}-{u}")));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn row(&self, v: Vertex) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn neighbor_set(&self, v: Vertex) -> VertexSet {
        VertexSet(self.adj[v].clone())
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n() {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// `G[S]` with the local-to-host relabeling.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Induced> {
        s.check_range(self.n())?;
        Ok(self.induced_unchecked(s.as_slice()))
    }

    /// `G[S]` for a sorted, duplicate-free, in-range slice.
    pub(crate) fn induced_unchecked(&self, s: &[Vertex]) -> Induced {
        let k = s.len();
        let mut rows = vec![FixedBitSet::with_capacity(k); k];
        for (i, &u) in s.iter().enumerate() {
            for (j, &v) in s.iter().enumerate().skip(i + 1) {
                if self.rows[u].contains(v) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        Induced { graph: Graph::from_rows(rows), vertices: s.to_vec() }
    }

    /// `G \ S`.
    pub fn without(&self, s: &VertexSet) -> Result<Induced> {
        s.check_range(self.n())?;
        let rest: VertexSet = self.vertices().filter(|&v| !s.contains(v)).collect();
        Ok(self.induced_unchecked(rest.as_slice()))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let rows = (0..n)
            .map(|v| {
                let mut r = self.rows[v].clone();
                r.toggle_range(..);
                r.set(v, false);
                r
            })
            .collect();
        Graph::from_rows(rows)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let edges = self.edges().chain(other.edges().map(|(u, v)| (u + off, v + off)));
        Graph::from_edges(off + other.n(), edges).expect("valid by construction")
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&VertexSet::full(self.n()))
    }

    /// Components of `G[within]`, listed by smallest vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let n = self.n();
        let inside = within.to_bits(n);
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in within.iter() {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if inside.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(VertexSet::from(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.components().len() == 1
    }

    pub fn is_connected_within(&self, within: &VertexSet) -> bool {
        within.is_empty() || self.components_within(within).len() == 1
    }

    /// Vertices whose deletion increases the number of components, via the
    /// iterative DFS lowpoint computation.
    pub fn cut_vertices(&self) -> VertexSet {
        let n = self.n();
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            let mut root_children = 0;
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, None, 0));
            while let Some(top) = stack.last_mut() {
                let (v, parent, idx) = *top;
                if idx < self.adj[v].len() {
                    top.2 += 1;
                    let w = self.adj[v][idx];
                    if Some(w) == parent {
                        continue;
                    }
                    if disc[w] == UNSEEN {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(v), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = parent {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Distance layers from `root` inside `G[within]`.
    pub fn bfs_layers(&self, root: Vertex, within: &VertexSet) -> Result<BfsLayers> {
        within.check_range(self.n())?;
        if !within.contains(root) {
            return Err(Error::input(format!("BFS root {root} is not in the vertex subset")));
        }
        let n = self.n();
        let inside = within.to_bits(n);
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(root);
        let mut layers = vec![VertexSet::singleton(root)];
        loop {
            let mut next = Vec::new();
            for u in layers.last().expect("nonempty").iter() {
                for &w in &self.adj[u] {
                    if inside.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layers.push(VertexSet::from(next));
        }
        let unreachable = within.iter().filter(|&v| !seen.contains(v)).collect();
        Ok(BfsLayers { layers, unreachable })
    }

    fn check_outside(&self, v: Vertex, a: &VertexSet) -> Result<()> {
        self.check_vertex(v)?;
        a.check_range(self.n())?;
        if a.contains(v) {
            return Err(Error::input(format!("vertex {v} belongs to the set it is compared with")));
        }
        Ok(())
    }

    /// `v` is adjacent to every vertex of `a`.
    pub fn is_complete_to(&self, v: Vertex, a: &VertexSet) -> Result<bool> {
        self.check_outside(v, a)?;
        Ok(a.iter().all(|u| self.has_edge(v, u)))
    }

    /// `v` is adjacent to no vertex of `a`.
    pub fn is_anticomplete_to(&self, v: Vertex, a: &VertexSet) -> Result<bool> {
        self.check_outside(v, a)?;
        Ok(a.iter().all(|u| !self.has_edge(v, u)))
    }

    /// Neither complete nor anti-complete to `a`.
    pub fn is_mixed_on(&self, v: Vertex, a: &VertexSet) -> Result<bool> {
        self.check_outside(v, a)?;
        let k = a.iter().filter(|&u| self.has_edge(v, u)).count();
        Ok(k > 0 && k < a.len())
    }

    pub(crate) fn count_neighbors_in(&self, v: Vertex, a: &VertexSet) -> usize {
        a.iter().filter(|&u| self.has_edge(v, u)).count()
    }

    /// No vertex of `a` has a neighbor in `b`.
    pub fn sets_anticomplete(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|u| b.iter().all(|w| !self.has_edge(u, w)))
    }

    pub fn is_stable(&self, s: &VertexSet) -> bool {
        let sl = s.as_slice();
        sl.iter().enumerate().all(|(i, &u)| sl[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let sl = s.as_slice();
        sl.iter().enumerate().all(|(i, &u)| sl[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// The graph relabeled by `perm`: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("permutation preserves validity")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}
