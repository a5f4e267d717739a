//! Exhaustive oracle for induced subdivisions of a small pattern graph.
//!
//! [`is_subdivision`] decides whether a whole graph is a subdivision of a
//! pattern by guessing images only for the pattern's anchor vertices (those of
//! degree other than two, pinned vertices, and one vertex per anchorless
//! cycle), then matching the threads of degree-two vertices between anchor
//! images against the pattern's chains. [`contains_induced_subdivision`] runs
//! that test over vertex subsets in increasing size, so the first witness
//! found has the fewest vertices.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::necklace::build_necklace;

/// Default cap on host size for subset enumeration.
pub const DEFAULT_SIZE_GUARD: usize = 12;

/// Hard cap: subsets are enumerated as `u64` masks.
const MAX_GUARD: usize = 63;

/// A pattern graph `H`, optionally with designated base and hook vertices
/// that a witness may be required to send to given host vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct Pattern {
    pub graph: Graph,
    pub name: String,
    pub base: Option<Vertex>,
    pub hook: Option<Vertex>,
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        Pattern { graph, name: name.into(), base: None, hook: None }
    }

    /// Triangle `x1 x2 x3` (ids 0, 1, 2) with pendant `y` (id 3) at `x1`.
    pub fn paw() -> Self {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)]).expect("valid paw");
        Pattern::new("paw", g)
    }

    /// Triangle `x1 x2 x3` (ids 0, 1, 2) with pendants `y1` at `x1` (id 3)
    /// and `y2` at `x2` (id 4).
    pub fn bull() -> Self {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)]).expect("valid bull");
        Pattern::new("bull", g)
    }

    pub fn triangle() -> Self {
        Pattern::new("triangle", crate::generators::complete(3))
    }

    pub fn square() -> Self {
        Pattern::new("square", crate::generators::cycle(4))
    }

    /// Path with `vertices` vertices, base at 0 and hook at the far end.
    pub fn path(vertices: usize) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::input("a path pattern needs at least one vertex"));
        }
        let mut p = Pattern::new(format!("path{vertices}"), crate::generators::path(vertices));
        p.base = Some(0);
        p.hook = Some(vertices - 1);
        Ok(p)
    }

    /// The necklace with segment lengths `lengths` (`m_0..m_n`), with base
    /// and hook set.
    pub fn necklace(lengths: &[usize]) -> Result<Self> {
        let nk = build_necklace(lengths)?;
        let name = format!("necklace({})", lengths.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","));
        let mut p = Pattern::new(name, nk.graph);
        p.base = Some(nk.base);
        p.hook = Some(nk.hook);
        Ok(p)
    }

    /// Pin pairs `(pattern vertex, host vertex)` for the base and hook.
    pub fn pins(&self, base_to: Vertex, hook_to: Vertex) -> Vec<(Vertex, Vertex)> {
        let mut pins = Vec::new();
        if let Some(b) = self.base {
            pins.push((b, base_to));
        }
        if let Some(h) = self.hook {
            pins.push((h, hook_to));
        }
        pins
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({}, {:?})", self.name, self.graph)
    }
}

/// An embedding showing that the union of `edge_paths` induces a
/// subdivision of the pattern in the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionWitness {
    /// Image of each pattern vertex.
    pub branch_map: Vec<Vertex>,
    /// For each pattern edge `(u, v)` with `u < v`, in the pattern's edge
    /// order, the host path from `branch_map[u]` to `branch_map[v]`.
    pub edge_paths: Vec<((Vertex, Vertex), Vec<Vertex>)>,
}

impl SubdivisionWitness {
    /// Every host vertex used by the embedding.
    pub fn vertex_set(&self) -> VertexSet {
        self.branch_map.iter().copied().chain(self.edge_paths.iter().flat_map(|(_, p)| p.iter().copied())).collect()
    }

    /// Renames host vertices through `map`.
    pub fn relabel(&self, map: &[Vertex]) -> Self {
        SubdivisionWitness {
            branch_map: self.branch_map.iter().map(|&v| map[v]).collect(),
            edge_paths: self.edge_paths.iter().map(|(e, p)| (*e, p.iter().map(|&v| map[v]).collect())).collect(),
        }
    }
}

/// A maximal path through non-anchor vertices between two anchors.
struct Thread {
    ends: (Vertex, Vertex),
    /// Interior vertices in order from `ends.0` to `ends.1`.
    interior: Vec<Vertex>,
}

/// Splits `g` into threads between `anchors`. Returns `None` if some
/// non-anchor vertex is not on a thread (it lies on an anchorless cycle) or
/// has degree other than two.
fn threads(g: &Graph, is_anchor: &[bool]) -> Option<Vec<Thread>> {
    let n = g.n();
    if (0..n).any(|v| !is_anchor[v] && g.degree(v) != 2) {
        return None;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for a in (0..n).filter(|&v| is_anchor[v]) {
        for &x in g.neighbors(a) {
            if is_anchor[x] {
                if a < x {
                    out.push(Thread { ends: (a, x), interior: Vec::new() });
                }
                continue;
            }
            if seen[x] {
                continue;
            }
            let (mut prev, mut cur) = (a, x);
            let mut interior = Vec::new();
            while !is_anchor[cur] {
                seen[cur] = true;
                interior.push(cur);
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            out.push(Thread { ends: (a, cur), interior });
        }
    }
    if (0..n).any(|v| !is_anchor[v] && !seen[v]) {
        return None;
    }
    Some(out)
}

/// Anchor set of a pattern: degree other than two, pinned, or the smallest
/// vertex of a component that would otherwise have none.
fn pattern_anchors(h: &Graph, pinned: &[Vertex]) -> Vec<bool> {
    let mut anchor: Vec<bool> = h.vertices().map(|v| h.degree(v) != 2).collect();
    for &p in pinned {
        anchor[p] = true;
    }
    for comp in h.components() {
        if !comp.iter().any(|v| anchor[v]) {
            anchor[comp.first().expect("components are nonempty")] = true;
        }
    }
    anchor
}

fn degree_profile(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v)).filter(|&d| d != 2).collect();
    d.sort_unstable();
    d
}

/// Whether `s` (as a whole) is a subdivision of `h`; see
/// [`is_subdivision_pinned`].
pub fn is_subdivision(s: &Graph, h: &Pattern) -> Option<SubdivisionWitness> {
    is_subdivision_pinned(s, h, &[])
}

/// Whether `s` is a subdivision of `h` by an embedding sending each pattern
/// vertex `p` to host vertex `q` for every pin `(p, q)`.
pub fn is_subdivision_pinned(s: &Graph, h: &Pattern, pins: &[(Vertex, Vertex)]) -> Option<SubdivisionWitness> {
    let hg = &h.graph;
    if s.n() < hg.n() || s.edge_count() + hg.n() != hg.edge_count() + s.n() {
        return None;
    }
    if degree_profile(s) != degree_profile(hg) {
        return None;
    }
    if pins.iter().any(|&(p, q)| p >= hg.n() || q >= s.n() || s.degree(q) != hg.degree(p)) {
        return None;
    }
    let pinned: Vec<Vertex> = pins.iter().map(|&(p, _)| p).collect();
    let h_anchor = pattern_anchors(hg, &pinned);
    let chains = threads(hg, &h_anchor).expect("pattern anchors cover every cycle");
    let anchors: Vec<Vertex> = hg.vertices().filter(|&v| h_anchor[v]).collect();

    let mut search = AnchorSearch {
        s,
        hg,
        anchors: &anchors,
        pins,
        chains: &chains,
        image: vec![usize::MAX; hg.n()],
        used: vec![false; s.n()],
    };
    search.assign(0)
}

struct AnchorSearch<'a> {
    s: &'a Graph,
    hg: &'a Graph,
    anchors: &'a [Vertex],
    pins: &'a [(Vertex, Vertex)],
    chains: &'a [Thread],
    image: Vec<Vertex>,
    used: Vec<bool>,
}

impl AnchorSearch<'_> {
    fn assign(&mut self, i: usize) -> Option<SubdivisionWitness> {
        if i == self.anchors.len() {
            return self.complete();
        }
        let a = self.anchors[i];
        let pinned = self.pins.iter().find(|&&(p, _)| p == a).map(|&(_, q)| q);
        let candidates: Vec<Vertex> = match pinned {
            Some(q) => vec![q],
            None => self.s.vertices().collect(),
        };
        for q in candidates {
            if self.used[q] || self.s.degree(q) != self.hg.degree(a) {
                continue;
            }
            self.image[a] = q;
            self.used[q] = true;
            if let Some(w) = self.assign(i + 1) {
                return Some(w);
            }
            self.used[q] = false;
            self.image[a] = usize::MAX;
        }
        None
    }

    fn complete(&self) -> Option<SubdivisionWitness> {
        let s = self.s;
        let mut is_anchor = vec![false; s.n()];
        for &a in self.anchors {
            is_anchor[self.image[a]] = true;
        }
        let s_threads = threads(s, &is_anchor)?;
        // group by unordered anchor-image pair
        let key = |x: Vertex, y: Vertex| (x.min(y), x.max(y));
        let mut want: BTreeMap<(Vertex, Vertex), Vec<usize>> = BTreeMap::new();
        for (ci, c) in self.chains.iter().enumerate() {
            want.entry(key(self.image[c.ends.0], self.image[c.ends.1])).or_default().push(ci);
        }
        let mut have: BTreeMap<(Vertex, Vertex), Vec<usize>> = BTreeMap::new();
        for (ti, t) in s_threads.iter().enumerate() {
            have.entry(key(t.ends.0, t.ends.1)).or_default().push(ti);
        }
        if want.len() != have.len() {
            return None;
        }
        // chain index -> thread index
        let mut matched = vec![usize::MAX; self.chains.len()];
        for (k, mut cs) in want {
            let mut ts = have.remove(&k)?;
            if ts.len() != cs.len() {
                return None;
            }
            cs.sort_by_key(|&c| self.chains[c].interior.len());
            ts.sort_by_key(|&t| s_threads[t].interior.len());
            for (&c, &t) in cs.iter().zip(&ts) {
                if s_threads[t].interior.len() < self.chains[c].interior.len() {
                    return None;
                }
                matched[c] = t;
            }
        }
        Some(self.witness(&s_threads, &matched))
    }

    fn witness(&self, s_threads: &[Thread], matched: &[usize]) -> SubdivisionWitness {
        let mut branch = self.image.clone();
        let mut edge_path: BTreeMap<(Vertex, Vertex), Vec<Vertex>> = BTreeMap::new();
        for (c, chain) in self.chains.iter().enumerate() {
            let t = &s_threads[matched[c]];
            // orient the host thread to run from image(chain start)
            let mut host: Vec<Vertex> = Vec::with_capacity(t.interior.len() + 2);
            host.push(t.ends.0);
            host.extend(&t.interior);
            host.push(t.ends.1);
            if t.ends.0 != self.image[chain.ends.0] {
                host.reverse();
            }
            let mut pat: Vec<Vertex> = Vec::with_capacity(chain.interior.len() + 2);
            pat.push(chain.ends.0);
            pat.extend(&chain.interior);
            pat.push(chain.ends.1);
            // spread the host subdivision vertices evenly over the chain's
            // edges, earlier edges taking the remainder
            let l = pat.len() - 1;
            let total = host.len() - 1;
            let mut at = 0;
            for j in 0..l {
                let span = total / l + usize::from(j < total % l);
                let path = host[at..=at + span].to_vec();
                at += span;
                if j + 1 < l {
                    branch[pat[j + 1]] = host[at];
                }
                let (u, v) = (pat[j], pat[j + 1]);
                let (e, path) = if u < v { ((u, v), path) } else { ((v, u), path.into_iter().rev().collect()) };
                edge_path.insert(e, path);
            }
        }
        SubdivisionWitness {
            edge_paths: self
                .hg
                .edges()
                .map(|e| (e, edge_path.remove(&e).expect("every edge lies on a chain")))
                .collect(),
            branch_map: branch,
        }
    }
}

/// Re-checks a witness against host `g` and pattern `h`.
pub fn verify_witness(g: &Graph, h: &Pattern, w: &SubdivisionWitness) -> bool {
    verify_witness_pinned(g, h, w, &[])
}

/// [`verify_witness`] plus the pin constraints.
pub fn verify_witness_pinned(g: &Graph, h: &Pattern, w: &SubdivisionWitness, pins: &[(Vertex, Vertex)]) -> bool {
    let hg = &h.graph;
    let n = g.n();
    if w.branch_map.len() != hg.n() || w.branch_map.iter().any(|&v| v >= n) {
        return false;
    }
    if pins.iter().any(|&(p, q)| w.branch_map.get(p) != Some(&q)) {
        return false;
    }
    let mut owner = vec![false; n];
    for &v in &w.branch_map {
        if owner[v] {
            return false;
        }
        owner[v] = true;
    }
    let h_edges: Vec<(Vertex, Vertex)> = hg.edges().collect();
    if w.edge_paths.len() != h_edges.len() {
        return false;
    }
    let mut path_edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (&e, (we, path)) in h_edges.iter().zip(&w.edge_paths) {
        if e != *we || path.len() < 2 || path.iter().any(|&v| v >= n) {
            return false;
        }
        if path[0] != w.branch_map[e.0] || *path.last().expect("nonempty") != w.branch_map[e.1] {
            return false;
        }
        for &v in &path[1..path.len() - 1] {
            if owner[v] {
                return false;
            }
            owner[v] = true;
        }
        for pair in path.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                return false;
            }
            path_edges.push((pair[0].min(pair[1]), pair[0].max(pair[1])));
        }
    }
    path_edges.sort_unstable();
    let before = path_edges.len();
    path_edges.dedup();
    if before != path_edges.len() {
        return false;
    }
    let union = w.vertex_set();
    let sub = g.induced_unchecked(union.as_slice());
    let mut induced: Vec<(Vertex, Vertex)> = sub
        .graph
        .edges()
        .map(|(a, b)| {
            let (x, y) = (sub.vertices[a], sub.vertices[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    induced.sort_unstable();
    induced == path_edges
}

/// Search options for [`find_induced_subdivision`].
#[derive(Clone, Debug, Default)]
pub struct OracleOptions {
    /// Largest host accepted; defaults to [`DEFAULT_SIZE_GUARD`].
    pub size_guard: Option<usize>,
    /// Only subsets containing this vertex are examined.
    pub must_contain: Option<Vertex>,
    /// Pins `(pattern vertex, host vertex)`; pinned host vertices are forced
    /// into every subset.
    pub pins: Vec<(Vertex, Vertex)>,
}

/// Smallest induced subdivision of `h` in `g`, with the default size guard.
pub fn contains_induced_subdivision(g: &Graph, h: &Pattern) -> Result<Option<SubdivisionWitness>> {
    find_induced_subdivision(g, h, &OracleOptions::default())
}

/// Subset enumeration by size, then lexicographically. Errors with
/// [`Error::SizeGuard`] when `g` exceeds the guard.
pub fn find_induced_subdivision(g: &Graph, h: &Pattern, opts: &OracleOptions) -> Result<Option<SubdivisionWitness>> {
    let guard = opts.size_guard.unwrap_or(DEFAULT_SIZE_GUARD).min(MAX_GUARD);
    let n = g.n();
    if n > guard {
        return Err(Error::SizeGuard { size: n, guard });
    }
    if let Some(v) = opts.must_contain {
        g.check_vertex(v)?;
    }
    for &(p, q) in &opts.pins {
        g.check_vertex(q)?;
        if p >= h.graph.n() {
            return Err(Error::input(format!("pin names pattern vertex {p} outside {}", h.name)));
        }
    }
    let hg = &h.graph;
    let hn = hg.n();
    if hn == 0 {
        return Ok(Some(SubdivisionWitness { branch_map: Vec::new(), edge_paths: Vec::new() }));
    }
    let rows: Vec<u64> = g.vertices().map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    let excess = hg.edge_count() as i64 - hn as i64;
    let connected = hg.is_connected();
    let profile = degree_profile(hg);
    let mut forced: u64 = 0;
    if let Some(v) = opts.must_contain {
        forced |= 1 << v;
    }
    for &(_, q) in &opts.pins {
        forced |= 1 << q;
    }
    let free: Vec<Vertex> = g.vertices().filter(|&v| forced >> v & 1 == 0).collect();
    let nforced = forced.count_ones() as usize;

    for size in hn.max(nforced)..=n {
        let pick = size - nforced;
        if pick > free.len() {
            break;
        }
        let mut idx: Vec<usize> = (0..pick).collect();
        loop {
            let mask = idx.iter().fold(forced, |m, &i| m | 1 << free[i]);
            if let Some(w) = test_subset(g, h, &rows, mask, excess, connected, &profile, &opts.pins) {
                return Ok(Some(w));
            }
            // next combination in lexicographic order
            let mut i = pick;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < free.len() - pick + i {
                    idx[i] += 1;
                    for j in i + 1..pick {
                        idx[j] = idx[j - 1] + 1;
                    }
                    i = usize::MAX;
                    break;
                }
            }
            if i != usize::MAX {
                break;
            }
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn test_subset(
    g: &Graph,
    h: &Pattern,
    rows: &[u64],
    mask: u64,
    excess: i64,
    connected: bool,
    profile: &[usize],
    pins: &[(Vertex, Vertex)],
) -> Option<SubdivisionWitness> {
    let size = mask.count_ones() as i64;
    let mut twice_edges = 0i64;
    let mut odd = Vec::new();
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let d = (rows[v] & mask).count_ones() as usize;
        twice_edges += d as i64;
        if d != 2 {
            odd.push(d);
        }
    }
    if twice_edges / 2 - size != excess || odd.len() != profile.len() {
        return None;
    }
    odd.sort_unstable();
    if odd != profile {
        return None;
    }
    if connected {
        let start = mask.trailing_zeros() as usize;
        let mut reached = 1u64 << start;
        let mut frontier = reached;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = rows[v] & mask & !reached;
            reached |= new;
            frontier |= new;
        }
        if reached != mask {
            return None;
        }
    }
    let verts: Vec<Vertex> = (0..64).filter(|&v| mask >> v & 1 == 1).collect();
    let sub = g.induced_unchecked(&verts);
    let local_pins: Vec<(Vertex, Vertex)> =
        pins.iter().map(|&(p, q)| (p, sub.to_local(q).expect("pinned vertices are forced in"))).collect();
    is_subdivision_pinned(&sub.graph, h, &local_pins).map(|w| w.relabel(&sub.vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn catalog_sizes() {
        let paw = Pattern::paw();
        assert_eq!((paw.graph.n(), paw.graph.edge_count()), (4, 4));
        let bull = Pattern::bull();
        assert_eq!((bull.graph.n(), bull.graph.edge_count()), (5, 5));
    }

    #[test]
    fn identity_witness() {
        let b = Pattern::bull();
        let w = is_subdivision(&b.graph, &b).unwrap();
        assert!(w.edge_paths.iter().all(|(_, p)| p.len() == 2));
        assert!(verify_witness(&b.graph, &b, &w));
    }

    #[test]
    fn c5_with_two_pendants_is_bull_subdivision() {
        // pendants 5 at 0 and 6 at 1
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6)]).unwrap();
        let b = Pattern::bull();
        let w = is_subdivision(&g, &b).unwrap();
        assert!(verify_witness(&g, &b, &w));
        // the two triangle edges at x3 are each subdivided once
        let lens: Vec<usize> = w.edge_paths.iter().map(|(_, p)| p.len() - 1).collect();
        assert_eq!(lens, vec![1, 2, 1, 2, 1]);
    }

    #[test]
    fn c5_is_not_paw_subdivision() {
        assert!(is_subdivision(&cycle(5), &Pattern::paw()).is_none());
    }

    #[test]
    fn oracle_examples() {
        let b = Pattern::bull();
        let w = contains_induced_subdivision(&petersen(), &b).unwrap().unwrap();
        assert!(verify_witness(&petersen(), &b, &w));
        assert!(contains_induced_subdivision(&cycle(9), &b).unwrap().is_none());
        assert!(contains_induced_subdivision(&complete(4), &Pattern::paw()).unwrap().is_none());
    }

    #[test]
    fn size_guard() {
        let r = contains_induced_subdivision(&cycle(13), &Pattern::bull());
        assert!(matches!(r, Err(Error::SizeGuard { size: 13, guard: 12 })));
        let opts = OracleOptions { size_guard: Some(13), ..Default::default() };
        assert!(find_induced_subdivision(&cycle(13), &Pattern::bull(), &opts).unwrap().is_none());
    }

    #[test]
    fn tampered_witnesses_fail() {
        let b = Pattern::bull();
        let w = is_subdivision(&b.graph, &b).unwrap();
        let mut cut = w.clone();
        cut.edge_paths[0].1.pop();
        assert!(!verify_witness(&b.graph, &b, &cut));
        // a 4-cycle inside K4 claimed as a square subdivision has chords
        let k4 = complete(4);
        let sq = Pattern::square();
        let fake = SubdivisionWitness {
            branch_map: vec![0, 1, 2, 3],
            edge_paths: vec![((0, 1), vec![0, 1]), ((0, 3), vec![0, 3]), ((1, 2), vec![1, 2]), ((2, 3), vec![2, 3])],
        };
        assert!(verify_witness(&cycle(4), &sq, &fake));
        assert!(!verify_witness(&k4, &sq, &fake));
    }

    #[test]
    fn cycles_and_pins() {
        let sq = Pattern::square();
        let w = is_subdivision(&cycle(7), &sq).unwrap();
        assert!(verify_witness(&cycle(7), &sq, &w));
        assert!(is_subdivision(&cycle(3), &sq).is_none());
        assert!(is_subdivision(&cycle(5).disjoint_union(&cycle(5)), &sq).is_none());

        let p = Pattern::path(3).unwrap();
        let host = path(6);
        let pins = p.pins(5, 0);
        let w = is_subdivision_pinned(&host, &p, &pins).unwrap();
        assert_eq!((w.branch_map[0], w.branch_map[2]), (5, 0));
        assert!(verify_witness_pinned(&host, &p, &w, &pins));
        assert!(is_subdivision_pinned(&host, &p, &p.pins(1, 0)).is_none());
    }

    #[test]
    fn must_contain_restricts_search() {
        // a bull on 0..5 plus an isolated vertex 5
        let g = Pattern::bull().graph.disjoint_union(&Graph::empty(1));
        let opts = OracleOptions { must_contain: Some(5), ..Default::default() };
        assert!(find_induced_subdivision(&g, &Pattern::bull(), &opts).unwrap().is_none());
        let opts = OracleOptions { must_contain: Some(2), ..Default::default() };
        assert!(find_induced_subdivision(&g, &Pattern::bull(), &opts).unwrap().is_some());
    }
}
