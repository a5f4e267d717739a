//! Exact clique number and chromatic number at desk scale.
//!
//! χ is computed per component by iterative deepening on `k`, starting from
//! the larger of the clique bound and the best value already established by
//! earlier components, with a DSATUR greedy coloring as the upper bound. Each
//! `k`-colorability test is a DSATUR-ordered backtracking search with forward
//! checking and a precolored maximum clique. Work is metered in node
//! expansions so results are reproducible regardless of machine speed.

use std::fmt;

use crate::bits::{self, Words};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Default node-expansion limit for one χ computation.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

/// Node-expansion limit for the exact coloring search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
}

impl Budget {
    pub const fn new(nodes: u64) -> Self {
        Budget { nodes }
    }

    pub const fn unlimited() -> Self {
        Budget { nodes: u64::MAX }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// A color (`0..`) for every vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: Vertex) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors.
    pub fn num_colors(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Covers every vertex of `g` and no edge is monochromatic.
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    /// The first monochromatic edge, if any.
    pub fn conflict(&self, g: &Graph) -> Option<(Vertex, Vertex)> {
        g.edges().find(|&(u, v)| self.colors[u] == self.colors[v])
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring({} colors: {:?})", self.num_colors(), self.colors)
    }
}

/// Outcome of a chromatic-number computation. When `exact` is false the
/// value is only an upper bound, witnessed by the attached coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiResult {
    pub value: usize,
    pub exact: bool,
    pub coloring: Option<Coloring>,
}

impl ChiResult {
    /// The exact value, or a budget error.
    pub fn require_exact(&self, what: &str) -> Result<usize> {
        if self.exact {
            Ok(self.value)
        } else {
            Err(Error::Budget(format!("χ of {what} is only bounded above by {}", self.value)))
        }
    }
}

/// Local chromatic number `max_v χ(G[N(v)])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalChi {
    pub value: usize,
    pub exact: bool,
    /// A vertex whose neighborhood attains the value.
    pub argmax: Option<Vertex>,
}

/// Maximum clique by branch and bound with greedy-coloring bounds.
pub fn clique_number(g: &Graph) -> (usize, VertexSet) {
    let adj = bits::adjacency_words(g);
    let (best, _) = max_clique_words(&adj, g.n());
    (best.len(), VertexSet::from(best))
}

fn max_clique_words(adj: &[Words], n: usize) -> (Vec<Vertex>, u64) {
    struct Search<'a> {
        adj: &'a [Words],
        best: Vec<Vertex>,
        cur: Vec<Vertex>,
        nodes: u64,
    }
    impl Search<'_> {
        fn expand(&mut self, mut p: Words) {
            let (order, bounds) = color_sort(self.adj, &p);
            for i in (0..order.len()).rev() {
                if self.cur.len() + bounds[i] <= self.best.len() {
                    return;
                }
                self.nodes += 1;
                let v = order[i];
                self.cur.push(v);
                let next: Words = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
                if bits::is_empty(&next) {
                    if self.cur.len() > self.best.len() {
                        self.best = self.cur.clone();
                    }
                } else {
                    self.expand(next);
                }
                self.cur.pop();
                bits::clear(&mut p, v);
            }
        }
    }
    if n == 0 {
        return (Vec::new(), 0);
    }
    let mut p = vec![0u64; bits::words_for(n)];
    for v in 0..n {
        bits::set(&mut p, v);
    }
    let mut s = Search { adj, best: vec![0], cur: Vec::new(), nodes: 0 };
    s.expand(p);
    let mut best = s.best;
    best.sort_unstable();
    (best, s.nodes)
}

/// Greedy sequential coloring of the candidate set; vertices are returned in
/// color-class order together with their class index (1-based), which bounds
/// the clique size attainable from any prefix.
fn color_sort(adj: &[Words], p: &[u64]) -> (Vec<Vertex>, Vec<usize>) {
    let mut uncolored = p.to_vec();
    let mut order = Vec::new();
    let mut bounds = Vec::new();
    let mut k = 0;
    while !bits::is_empty(&uncolored) {
        k += 1;
        let mut q = uncolored.clone();
        loop {
            let Some(v) = bits::ones(&q).next() else { break };
            bits::clear(&mut uncolored, v);
            for (qw, aw) in q.iter_mut().zip(&adj[v]) {
                *qw &= !aw;
            }
            bits::clear(&mut q, v);
            order.push(v);
            bounds.push(k);
        }
    }
    (order, bounds)
}

/// Maximum total weight of a clique. `weights[v] >= 1`.
pub fn max_weight_clique(g: &Graph, weights: &[u64]) -> (u64, VertexSet) {
    assert_eq!(weights.len(), g.n());
    let n = g.n();
    if n == 0 {
        return (0, VertexSet::new());
    }
    let adj = bits::adjacency_words(g);
    struct Search<'a> {
        adj: &'a [Words],
        w: &'a [u64],
        best: (u64, Vec<Vertex>),
        cur: Vec<Vertex>,
        cur_w: u64,
    }
    impl Search<'_> {
        fn expand(&mut self, mut p: Words) {
            // bound: sum over greedy color classes of the heaviest member
            let (order, classes) = color_sort(self.adj, &p);
            let mut class_max = vec![0u64; classes.last().copied().unwrap_or(0) + 1];
            for (i, &v) in order.iter().enumerate() {
                class_max[classes[i]] = class_max[classes[i]].max(self.w[v]);
            }
            let mut prefix = vec![0u64; class_max.len()];
            for c in 1..class_max.len() {
                prefix[c] = prefix[c - 1] + class_max[c];
            }
            for i in (0..order.len()).rev() {
                if self.cur_w + prefix[classes[i]] <= self.best.0 {
                    return;
                }
                let v = order[i];
                self.cur.push(v);
                self.cur_w += self.w[v];
                let next: Words = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
                if self.cur_w > self.best.0 {
                    self.best = (self.cur_w, self.cur.clone());
                }
                if !bits::is_empty(&next) {
                    self.expand(next);
                }
                self.cur_w -= self.w[v];
                self.cur.pop();
                bits::clear(&mut p, v);
            }
        }
    }
    let mut p = vec![0u64; bits::words_for(n)];
    for v in 0..n {
        bits::set(&mut p, v);
    }
    let mut s = Search { adj: &adj, w: weights, best: (0, Vec::new()), cur: Vec::new(), cur_w: 0 };
    s.expand(p);
    (s.best.0, VertexSet::from(s.best.1))
}

/// DSATUR greedy coloring.
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.n();
    const NONE: usize = usize::MAX;
    let mut color = vec![NONE; n];
    let mut forb: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    let mut udeg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == NONE)
            .max_by(|&a, &b| sat[a].cmp(&sat[b]).then(udeg[a].cmp(&udeg[b])).then(b.cmp(&a)))
            .expect("uncolored vertex remains");
        let c = (0..).find(|&c| !forb[v].get(c).copied().unwrap_or(false)).expect("unbounded");
        color[v] = c;
        for &u in g.neighbors(v) {
            if color[u] == NONE {
                udeg[u] -= 1;
                if forb[u].len() <= c {
                    forb[u].resize(c + 1, false);
                }
                if !forb[u][c] {
                    forb[u][c] = true;
                    sat[u] += 1;
                }
            }
        }
    }
    Coloring::new(color)
}

enum Search {
    Colorable(Vec<usize>),
    Refuted,
    Exhausted,
}

/// Node counter shared across the sub-searches of one χ computation.
struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    #[inline]
    fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }
}

const MAX_K: usize = 128;

struct KColor<'a> {
    adj: &'a [Vec<Vertex>],
    k: usize,
    full: u128,
    color: Vec<u8>,
    cnt: Vec<u16>,
    forb: Vec<u128>,
    udeg: Vec<usize>,
    meter: &'a mut Meter,
}

const UNCOLORED: u8 = u8::MAX;

impl KColor<'_> {
    /// Colors `v` with `c`, updating neighbor domains. Returns false if some
    /// uncolored neighbor is left with no admissible color; the caller must
    /// still undo via [`Self::unassign`].
    fn assign(&mut self, v: Vertex, c: usize) -> bool {
        self.color[v] = c as u8;
        let mut ok = true;
        let adj = self.adj;
        for &u in &adj[v] {
            if self.color[u] == UNCOLORED {
                self.udeg[u] -= 1;
                let slot = &mut self.cnt[u * self.k + c];
                *slot += 1;
                if *slot == 1 {
                    self.forb[u] |= 1 << c;
                    if self.forb[u] == self.full {
                        ok = false;
                    }
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: Vertex, c: usize) {
        let adj = self.adj;
        for &u in &adj[v] {
            if self.color[u] == UNCOLORED {
                self.udeg[u] += 1;
                let slot = &mut self.cnt[u * self.k + c];
                *slot -= 1;
                if *slot == 0 {
                    self.forb[u] &= !(1 << c);
                }
            }
        }
        self.color[v] = UNCOLORED;
    }

    fn search(&mut self, remaining: usize, used: usize) -> Search {
        if remaining == 0 {
            return Search::Colorable(self.color.iter().map(|&c| c as usize).collect());
        }
        let n = self.color.len();
        let mut pick = usize::MAX;
        let (mut best_sat, mut best_deg) = (0u32, 0usize);
        for v in 0..n {
            if self.color[v] != UNCOLORED {
                continue;
            }
            let sat = self.forb[v].count_ones();
            if pick == usize::MAX || sat > best_sat || (sat == best_sat && self.udeg[v] > best_deg) {
                pick = v;
                best_sat = sat;
                best_deg = self.udeg[v];
            }
        }
        let v = pick;
        let limit = self.k.min(used + 1);
        let window: u128 = if limit >= 128 { u128::MAX } else { (1u128 << limit) - 1 };
        let mut allowed = !self.forb[v] & window;
        while allowed != 0 {
            let c = allowed.trailing_zeros() as usize;
            allowed &= allowed - 1;
            if !self.meter.tick() {
                return Search::Exhausted;
            }
            let ok = self.assign(v, c);
            if ok {
                match self.search(remaining - 1, used.max(c + 1)) {
                    Search::Refuted => {}
                    other => {
                        if matches!(other, Search::Exhausted) {
                            self.unassign(v, c);
                        }
                        return other;
                    }
                }
            }
            self.unassign(v, c);
        }
        Search::Refuted
    }
}

/// Decides `k`-colorability of a connected graph, with `clique` precolored.
fn k_colorable(g: &Graph, k: usize, clique: &VertexSet, meter: &mut Meter) -> Search {
    let n = g.n();
    if n == 0 {
        return Search::Colorable(Vec::new());
    }
    if k == 0 || clique.len() > k {
        return Search::Refuted;
    }
    if k > MAX_K {
        return Search::Exhausted;
    }
    let adj: Vec<Vec<Vertex>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
    let full = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
    let mut s = KColor {
        adj: &adj,
        k,
        full,
        color: vec![UNCOLORED; n],
        cnt: vec![0; n * k],
        forb: vec![0; n],
        udeg: g.vertices().map(|v| g.degree(v)).collect(),
        meter,
    };
    for (c, v) in clique.iter().enumerate() {
        if !s.assign(v, c) {
            return Search::Refuted;
        }
    }
    s.search(n - clique.len(), clique.len())
}

/// Chromatic number, exact unless the node budget runs out.
pub fn chromatic_number(g: &Graph, budget: Budget) -> ChiResult {
    let n = g.n();
    if n == 0 {
        return ChiResult { value: 0, exact: true, coloring: Some(Coloring::new(Vec::new())) };
    }
    let mut meter = Meter { used: 0, limit: budget.nodes };
    let mut comps = g.components();
    // largest first so the running bound rises early
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut colors = vec![0usize; n];
    let mut best = 0usize;
    let mut exact = true;
    for comp in &comps {
        let sub = g.induced_unchecked(comp.as_slice());
        let (omega, clique) = clique_number(&sub.graph);
        let greedy = dsatur_greedy(&sub.graph);
        let ub = greedy.num_colors();
        let mut chosen = greedy;
        let mut k = omega.max(best);
        while k < ub {
            match k_colorable(&sub.graph, k, &clique, &mut meter) {
                Search::Colorable(c) => {
                    chosen = Coloring::new(c);
                    break;
                }
                Search::Refuted => k += 1,
                Search::Exhausted => {
                    exact = false;
                    break;
                }
            }
        }
        best = best.max(chosen.num_colors());
        for (i, &v) in sub.vertices.iter().enumerate() {
            colors[v] = chosen.color(i);
        }
    }
    let coloring = Coloring::new(colors);
    debug_assert!(coloring.is_proper(g));
    ChiResult { value: coloring.num_colors(), exact, coloring: Some(coloring) }
}

/// Exact χ or a budget error naming `what`.
pub fn exact_chi(g: &Graph, budget: Budget, what: &str) -> Result<usize> {
    chromatic_number(g, budget).require_exact(what)
}

/// Exact χ of `G[s]`.
pub fn exact_chi_of(g: &Graph, s: &VertexSet, budget: Budget, what: &str) -> Result<usize> {
    let sub = g.induced_subgraph(s)?;
    exact_chi(&sub.graph, budget, what)
}

/// `max_v χ(G[N(v)])`; exact iff every neighborhood computation is.
pub fn local_chromatic_number(g: &Graph, budget: Budget) -> LocalChi {
    let mut out = LocalChi { value: 0, exact: true, argmax: None };
    for v in g.vertices() {
        let sub = g.induced_unchecked(g.neighbors(v));
        let r = chromatic_number(&sub.graph, budget);
        out.exact &= r.exact;
        if out.argmax.is_none() || r.value > out.value {
            out.value = r.value;
            out.argmax = Some(v);
        }
    }
    out
}

/// The component of `G[within]` with the largest exact χ, ties going to the
/// component with the smallest vertex. A non-exact χ anywhere is a budget
/// error, since the choice would not be certified.
pub fn max_chi_component(g: &Graph, within: &VertexSet, budget: Budget) -> Result<(VertexSet, ChiResult)> {
    within.check_range(g.n())?;
    if within.is_empty() {
        return Err(Error::input("max_chi_component needs a nonempty vertex set"));
    }
    let mut best: Option<(VertexSet, ChiResult)> = None;
    for comp in g.components_within(within) {
        let sub = g.induced_unchecked(comp.as_slice());
        let r = chromatic_number(&sub.graph, budget);
        r.require_exact("a component")?;
        if best.as_ref().is_none_or(|(_, b)| r.value > b.value) {
            best = Some((comp, r));
        }
    }
    Ok(best.expect("within is nonempty"))
}
