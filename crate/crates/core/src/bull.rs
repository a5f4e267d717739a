//! Bull*-free graphs: how outside vertices attach to an odd hole, the
//! basic / homogeneous set / cut-vertex decomposition, and the weighted
//! perfect cover that yields an `ω²` coloring.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{chromatic_number, clique_number, max_weight_clique, Budget, Coloring};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::holes::{
    basic_violation, enumerate_antiholes, enumerate_holes, is_perfect, perfection_violation, HoleDescriptor, HoleKind,
    Parity,
};
use crate::subdivision::{find_induced_subdivision, OracleOptions, Pattern};

/// Membership in the class is checked with the exhaustive oracle up to this
/// many vertices before coloring.
pub const MEMBERSHIP_GUARD: usize = 20;

/// How a vertex outside an odd hole `h_0 .. h_{k-1}` attaches to it. Indices
/// refer to positions on the hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexRole {
    Center,
    AntiCenter,
    /// Adjacent to `h_i` only.
    Leaf(usize),
    /// Adjacent to every hole vertex except `h_i`.
    Star(usize),
    /// Adjacent to exactly `h_{i-1}, h_i, h_{i+1}`.
    AdjacentClone(usize),
    /// Adjacent to exactly `h_{i-1}, h_{i+1}`.
    NonAdjacentClone(usize),
    NotAppropriate,
}

impl VertexRole {
    /// Whether the role is allowed next to an odd hole of length `k`: stars
    /// and non-adjacent clones only when `k = 5`.
    pub fn is_appropriate(self, k: usize) -> bool {
        match self {
            VertexRole::Star(_) | VertexRole::NonAdjacentClone(_) => k == 5,
            VertexRole::NotAppropriate => false,
            _ => true,
        }
    }
}

fn check_odd_hole(g: &Graph, hole: &HoleDescriptor) -> Result<()> {
    if hole.kind != HoleKind::Hole || hole.len() < 5 || hole.len().is_multiple_of(2) || !hole.is_valid_in(g) {
        return Err(Error::input(format!("{:?} is not an odd hole of length at least 5", hole.cycle)));
    }
    Ok(())
}

/// The role of `v` relative to `hole`, read off its neighbors on the hole.
pub fn classify_vertex(g: &Graph, hole: &HoleDescriptor, v: Vertex) -> Result<VertexRole> {
    g.check_vertex(v)?;
    check_odd_hole(g, hole)?;
    if hole.cycle.contains(&v) {
        return Err(Error::input(format!("vertex {v} lies on the hole")));
    }
    let k = hole.len();
    let adj: Vec<bool> = hole.cycle.iter().map(|&h| g.has_edge(v, h)).collect();
    let hits: Vec<usize> = (0..k).filter(|&i| adj[i]).collect();
    let role = match hits.len() {
        0 => VertexRole::AntiCenter,
        1 => VertexRole::Leaf(hits[0]),
        n if n == k => VertexRole::Center,
        n if n == k - 1 => VertexRole::Star((0..k).find(|&i| !adj[i]).expect("one miss")),
        3 => {
            // three consecutive positions centered at i
            (0..k)
                .find(|&i| adj[(i + k - 1) % k] && adj[i] && adj[(i + 1) % k])
                .map_or(VertexRole::NotAppropriate, VertexRole::AdjacentClone)
        }
        2 => {
            let (a, b) = (hits[0], hits[1]);
            if (a + 2) % k == b {
                VertexRole::NonAdjacentClone((a + 1) % k)
            } else if (b + 2) % k == a {
                VertexRole::NonAdjacentClone((b + 1) % k)
            } else {
                VertexRole::NotAppropriate
            }
        }
        _ => VertexRole::NotAppropriate,
    };
    Ok(role)
}

/// Roles of every vertex off the hole, in vertex order.
pub fn hole_roles(g: &Graph, hole: &HoleDescriptor) -> Result<Vec<(Vertex, VertexRole)>> {
    let on = hole.vertex_set();
    g.vertices().filter(|&v| !on.contains(v)).map(|v| Ok((v, classify_vertex(g, hole, v)?))).collect()
}

/// The vertices off an odd hole grouped by role; per-index groups are
/// indexed by hole position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleAttachments {
    pub centers: VertexSet,
    pub anti_centers: VertexSet,
    pub leaves: Vec<VertexSet>,
    pub stars: Vec<VertexSet>,
    pub adjacent_clones: Vec<VertexSet>,
    pub non_adjacent_clones: Vec<VertexSet>,
    pub inappropriate: VertexSet,
}

pub fn attachments(g: &Graph, hole: &HoleDescriptor) -> Result<HoleAttachments> {
    let k = hole.len();
    let mut a = HoleAttachments {
        centers: VertexSet::new(),
        anti_centers: VertexSet::new(),
        leaves: vec![VertexSet::new(); k],
        stars: vec![VertexSet::new(); k],
        adjacent_clones: vec![VertexSet::new(); k],
        non_adjacent_clones: vec![VertexSet::new(); k],
        inappropriate: VertexSet::new(),
    };
    for (v, r) in hole_roles(g, hole)? {
        let _ = match r {
            VertexRole::Center => a.centers.insert(v),
            VertexRole::AntiCenter => a.anti_centers.insert(v),
            VertexRole::Leaf(i) => a.leaves[i].insert(v),
            VertexRole::Star(i) => a.stars[i].insert(v),
            VertexRole::AdjacentClone(i) => a.adjacent_clones[i].insert(v),
            VertexRole::NonAdjacentClone(i) => a.non_adjacent_clones[i].insert(v),
            VertexRole::NotAppropriate => a.inappropriate.insert(v),
        };
        if !r.is_appropriate(k) {
            a.inappropriate.insert(v);
        }
    }
    Ok(a)
}

/// Counts of the structural facts confirmed by [`check_hole_lemmas`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    /// Odd holes whose outside vertices were all found appropriate.
    pub holes: usize,
    /// Odd holes with an anti-center in a graph without a proper homogeneous
    /// set, on which the leaf, partition and cut-vertex facts were checked.
    pub anti_center_holes: usize,
    /// Odd anti-holes of length at least 7 with an anti-center.
    pub anti_center_antiholes: usize,
    /// Odd holes or anti-holes with both a center and an anti-center.
    pub center_pairs: usize,
}

impl std::ops::AddAssign for LemmaReport {
    fn add_assign(&mut self, o: Self) {
        self.holes += o.holes;
        self.anti_center_holes += o.anti_center_holes;
        self.anti_center_antiholes += o.anti_center_antiholes;
        self.center_pairs += o.center_pairs;
    }
}

/// Checks, on a graph assumed bull*-free, the facts about odd holes and
/// anti-holes that drive the decomposition:
/// every vertex off an odd hole is appropriate; with an anti-center and no
/// proper homogeneous set, exactly one position `i` carries leaves, some
/// anti-center sees a leaf, anti-centers see nothing but anti-centers and
/// those leaves, the remaining vertices are stars at `i` (none when the
/// hole is longer than 5) anti-complete to the leaves, and `h_i` is a cut
/// vertex which the decomposition returns for the hole it reports; an odd
/// anti-hole of length at least 7 with an anti-center, or an odd hole or
/// anti-hole with both a center and an anti-center, forces a proper
/// homogeneous set.
pub fn check_hole_lemmas(g: &Graph) -> std::result::Result<LemmaReport, String> {
    let n = g.n();
    let mut rep = LemmaReport::default();
    let homogeneous = find_proper_homogeneous_set(g).is_some();
    let cuts = g.cut_vertices();
    let reported = basic_violation(g).map(|(h, _)| h);
    for hole in enumerate_holes(g, Parity::Odd, 5, n) {
        let a = attachments(g, &hole).map_err(|e| e.to_string())?;
        if !a.inappropriate.is_empty() {
            return Err(format!(
                "hole {:?}: vertices {:?} are not appropriate",
                hole.cycle,
                a.inappropriate.as_slice()
            ));
        }
        rep.holes += 1;
        if !a.centers.is_empty() && !a.anti_centers.is_empty() {
            rep.center_pairs += 1;
            if !homogeneous {
                return Err(format!("hole {:?} has a center and an anti-center but no homogeneous set", hole.cycle));
            }
        }
        if a.anti_centers.is_empty() || homogeneous {
            continue;
        }
        rep.anti_center_holes += 1;
        let k = hole.len();
        let at: Vec<usize> = (0..k).filter(|&i| !a.leaves[i].is_empty()).collect();
        let [i] = at[..] else {
            return Err(format!("hole {:?}: leaves at positions {at:?}, expected exactly one", hole.cycle));
        };
        let leaves = &a.leaves[i];
        if g.sets_anticomplete(&a.anti_centers, leaves) {
            return Err(format!("hole {:?}: anti-centers miss the leaves at {i}", hole.cycle));
        }
        let allowed = a.anti_centers.union(leaves);
        let rest: VertexSet = g.vertices().filter(|&v| !allowed.contains(v)).collect();
        if !g.sets_anticomplete(&a.anti_centers, &rest) {
            return Err(format!("hole {:?}: anti-centers see vertices outside the leaves at {i}", hole.cycle));
        }
        let stars = &a.stars[i];
        let covered = hole.vertex_set().union(&allowed).union(stars);
        if covered.len() != n {
            return Err(format!("hole {:?}: vertices beyond hole, anti-centers, leaves and stars at {i}", hole.cycle));
        }
        if (k >= 7 && !stars.is_empty()) || !g.sets_anticomplete(leaves, stars) {
            return Err(format!("hole {:?}: stars at {i} violate the partition", hole.cycle));
        }
        let h = hole.cycle[i];
        if !cuts.contains(h) {
            return Err(format!("hole {:?}: leaf attachment {h} is not a cut vertex", hole.cycle));
        }
        if reported.as_ref().is_some_and(|r| r.cycle == hole.cycle) {
            let d = decompose_bull(g).map_err(|e| e.to_string())?;
            if d != DecompositionResult::CutVertex(h) {
                return Err(format!("hole {:?}: decomposition returned {d}, expected cut-vertex {h}", hole.cycle));
            }
        }
    }
    for ah in enumerate_antiholes(g, Parity::Odd, 7, n) {
        if ah.anti_centers.is_empty() {
            continue;
        }
        rep.anti_center_antiholes += 1;
        if !ah.centers.is_empty() {
            rep.center_pairs += 1;
        }
        if !homogeneous {
            return Err(format!("anti-hole {:?} has an anti-center but no homogeneous set", ah.cycle));
        }
    }
    Ok(rep)
}

/// The smallest set containing `seed` on which no outside vertex is mixed.
pub fn homogeneous_closure(g: &Graph, seed: &VertexSet) -> VertexSet {
    let n = g.n();
    let mut inside = vec![false; n];
    let mut size = 0;
    for v in seed.iter() {
        inside[v] = true;
        size += 1;
    }
    loop {
        let mixed = (0..n).find(|&x| {
            if inside[x] {
                return false;
            }
            let c = g.neighbors(x).iter().filter(|&&y| inside[y]).count();
            c > 0 && c < size
        });
        match mixed {
            Some(x) => {
                inside[x] = true;
                size += 1;
            }
            None => break,
        }
    }
    (0..n).filter(|&v| inside[v]).collect()
}

/// Whether `s` is a homogeneous set of size at least two that misses some
/// vertex.
pub fn is_proper_homogeneous(g: &Graph, s: &VertexSet) -> bool {
    s.len() >= 2
        && s.len() < g.n()
        && s.check_range(g.n()).is_ok()
        && g.vertices().filter(|&x| !s.contains(x)).all(|x| !g.is_mixed_on(x, s).expect("x is outside s"))
}

/// The closure of the first vertex pair, in lexicographic order, that stays
/// proper.
pub fn find_proper_homogeneous_set(g: &Graph) -> Option<VertexSet> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    for u in 0..n {
        for v in u + 1..n {
            let s = homogeneous_closure(g, &VertexSet::from([u, v]));
            if s.len() < n {
                return Some(s);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionResult {
    Basic,
    HomogeneousSet(VertexSet),
    CutVertex(Vertex),
}

impl DecompositionResult {
    /// Re-checks the certificate against `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        match self {
            DecompositionResult::Basic => basic_violation(g).is_none(),
            DecompositionResult::HomogeneousSet(s) => is_proper_homogeneous(g, s),
            DecompositionResult::CutVertex(v) => g.cut_vertices().contains(*v),
        }
    }
}

impl fmt::Display for DecompositionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionResult::Basic => write!(f, "basic"),
            DecompositionResult::HomogeneousSet(s) => write!(f, "homogeneous-set {:?}", s.as_slice()),
            DecompositionResult::CutVertex(v) => write!(f, "cut-vertex {v}"),
        }
    }
}

/// Basic, else a proper homogeneous set, else a cut vertex. For the cut
/// vertex, the attachment point of the leaves of the odd hole that makes the
/// graph non-basic is preferred; otherwise the smallest cut vertex is taken.
pub fn decompose_bull(g: &Graph) -> Result<DecompositionResult> {
    let Some((hole, _)) = basic_violation(g) else {
        return Ok(DecompositionResult::Basic);
    };
    if let Some(s) = find_proper_homogeneous_set(g) {
        let d = DecompositionResult::HomogeneousSet(s);
        debug_assert!(d.validate(g));
        return Ok(d);
    }
    let cuts = g.cut_vertices();
    if cuts.is_empty() {
        return Err(Error::violation(format!(
            "graph is not basic (hole {:?}) but has no proper homogeneous set and no cut vertex",
            hole.cycle
        )));
    }
    let mut choice = cuts.first().expect("nonempty");
    if hole.kind == HoleKind::Hole {
        if let Ok(roles) = hole_roles(g, &hole) {
            let leaf_at = roles.iter().find_map(|&(_, r)| match r {
                VertexRole::Leaf(i) => Some(hole.cycle[i]),
                _ => None,
            });
            if let Some(h) = leaf_at.filter(|&h| cuts.contains(h)) {
                choice = h;
            }
        }
    }
    Ok(DecompositionResult::CutVertex(choice))
}

/// Replaces `u` in `g1` by a copy of `g2` whose vertices are complete to the
/// former neighbors of `u`. Vertices of `g1` other than `u` keep their order
/// (ids above `u` shift down by one); `g2` follows.
pub fn substitute(g1: &Graph, u: Vertex, g2: &Graph) -> Result<Graph> {
    g1.check_vertex(u)?;
    let n1 = g1.n();
    let off = n1 - 1;
    let id = |v: Vertex| if v < u { v } else { v - 1 };
    let mut edges: Vec<(Vertex, Vertex)> =
        g1.edges().filter(|&(a, b)| a != u && b != u).map(|(a, b)| (id(a), id(b))).collect();
    edges.extend(g2.edges().map(|(a, b)| (off + a, off + b)));
    for &x in g1.neighbors(u) {
        edges.extend(g2.vertices().map(|y| (id(x), off + y)));
    }
    Graph::from_edges(off + g2.n(), edges)
}

/// Identifies `u1` in `g1` with `u2` in `g2`, with no other edges across.
/// Ids of `g1` are kept; `g2` without `u2` follows in order.
pub fn glue(g1: &Graph, g2: &Graph, u1: Vertex, u2: Vertex) -> Result<Graph> {
    g1.check_vertex(u1)?;
    g2.check_vertex(u2)?;
    let n1 = g1.n();
    let id2 = |v: Vertex| match v.cmp(&u2) {
        std::cmp::Ordering::Less => n1 + v,
        std::cmp::Ordering::Equal => u1,
        std::cmp::Ordering::Greater => n1 + v - 1,
    };
    let mut edges: Vec<(Vertex, Vertex)> = g1.edges().collect();
    edges.extend(g2.edges().map(|(a, b)| (id2(a), id2(b))));
    Graph::from_edges(n1 + g2.n() - 1, edges)
}

/// A graph with a positive integer weight on every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    pub graph: Graph,
    pub weights: Vec<u64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != graph.n() {
            return Err(Error::input(format!("{} weights for {} vertices", weights.len(), graph.n())));
        }
        if weights.contains(&0) {
            return Err(Error::input("vertex weights must be positive"));
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn unit(graph: Graph) -> Self {
        let n = graph.n();
        WeightedGraph { graph, weights: vec![1; n] }
    }

    /// Weight of a heaviest clique.
    pub fn max_clique_weight(&self) -> u64 {
        max_weight_clique(&self.graph, &self.weights).0
    }
}

/// A multiset of vertex sets, stored as `(set, multiplicity)` runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PerfectCoverFamily {
    pub members: Vec<(VertexSet, u64)>,
}

impl PerfectCoverFamily {
    /// Number of members counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.members.iter().map(|(_, m)| m).sum()
    }

    /// How many members (with multiplicity) contain `v`.
    pub fn coverage(&self, v: Vertex) -> u64 {
        self.members.iter().filter(|(s, _)| s.contains(v)).map(|(_, m)| m).sum()
    }

    /// Checks size, coverage and, when `check_perfection` is set, perfection
    /// of every member.
    pub fn validate(&self, wg: &WeightedGraph, check_perfection: bool) -> Result<(), String> {
        let g = &wg.graph;
        let w = wg.max_clique_weight();
        if self.size() > w {
            return Err(format!("family has {} members but the heaviest clique weighs {w}", self.size()));
        }
        for v in g.vertices() {
            if self.coverage(v) < wg.weights[v] {
                return Err(format!("vertex {v} covered {} times, weight {}", self.coverage(v), wg.weights[v]));
            }
        }
        for (s, m) in &self.members {
            if s.is_empty() || *m == 0 || s.check_range(g.n()).is_err() {
                return Err(format!("degenerate member {s:?} x{m}"));
            }
        }
        if check_perfection {
            for (s, _) in &self.members {
                let sub = g.induced_unchecked(s.as_slice());
                if let Some(h) = perfection_violation(&sub.graph) {
                    let cyc: Vec<Vertex> = h.cycle.iter().map(|&v| sub.vertices[v]).collect();
                    return Err(format!("member {s:?} contains an odd {:?} {cyc:?}", h.kind));
                }
            }
        }
        Ok(())
    }
}

/// Splits runs so that exactly `keep` copies (with multiplicity) of the
/// members containing `v` still contain it; `v` is removed from the excess
/// copies, taken from the end of the list.
fn trim_coverage(family: &mut Vec<(VertexSet, u64)>, v: Vertex, keep: u64) {
    let mut covered: u64 = family.iter().filter(|(s, _)| s.contains(v)).map(|(_, m)| m).sum();
    let mut i = family.len();
    while covered > keep && i > 0 {
        i -= 1;
        if !family[i].0.contains(v) {
            continue;
        }
        let m = family[i].1;
        let strip = m.min(covered - keep);
        let mut without = family[i].0.clone();
        without.remove(v);
        if strip == m {
            family[i].0 = without;
        } else {
            family[i].1 = m - strip;
            family.insert(i + 1, (without, strip));
        }
        covered -= strip;
    }
    family.retain(|(s, m)| !s.is_empty() && *m > 0);
}

/// Pairs two run-length sequences copy by copy, combining paired sets with
/// `join`. Both sequences must have the same total multiplicity.
fn zip_runs(a: &[(VertexSet, u64)], b: &[(VertexSet, u64)]) -> Vec<(VertexSet, u64)> {
    let mut out: Vec<(VertexSet, u64)> = Vec::new();
    let (mut i, mut j) = (0, 0);
    let (mut ra, mut rb) = (a.first().map_or(0, |r| r.1), b.first().map_or(0, |r| r.1));
    while i < a.len() && j < b.len() {
        let take = ra.min(rb);
        out.push((a[i].0.union(&b[j].0), take));
        ra -= take;
        rb -= take;
        if ra == 0 {
            i += 1;
            ra = a.get(i).map_or(0, |r| r.1);
        }
        if rb == 0 {
            j += 1;
            rb = b.get(j).map_or(0, |r| r.1);
        }
    }
    debug_assert!(i == a.len() && j == b.len(), "run totals differ");
    out
}

/// Expands runs into a flat copy list of given length, pairing copies of
/// `a` and `b` position by position; unmatched copies pass through.
fn pair_runs(a: &[(VertexSet, u64)], b: &[(VertexSet, u64)]) -> Vec<(VertexSet, u64)> {
    let ta: u64 = a.iter().map(|r| r.1).sum();
    let tb: u64 = b.iter().map(|r| r.1).sum();
    let common = ta.min(tb);
    let (head_a, tail_a) = split_runs(a, common);
    let (head_b, tail_b) = split_runs(b, common);
    let mut out = zip_runs(&head_a, &head_b);
    out.extend(tail_a);
    out.extend(tail_b);
    out
}

/// `(member, multiplicity)` runs.
type Runs = Vec<(VertexSet, u64)>;

/// First `k` copies and the rest.
fn split_runs(a: &[(VertexSet, u64)], k: u64) -> (Runs, Runs) {
    let mut head = Vec::new();
    let mut tail = Vec::new();
    let mut left = k;
    for (s, m) in a {
        if left >= *m {
            head.push((s.clone(), *m));
            left -= m;
        } else if left > 0 {
            head.push((s.clone(), left));
            tail.push((s.clone(), m - left));
            left = 0;
        } else {
            tail.push((s.clone(), *m));
        }
    }
    (head, tail)
}

fn map_family(f: Vec<(VertexSet, u64)>, to_host: &[Vertex]) -> Vec<(VertexSet, u64)> {
    f.into_iter().map(|(s, m)| (s.iter().map(|v| to_host[v]).collect(), m)).collect()
}

fn weights_of(w: &[u64], verts: &[Vertex]) -> Vec<u64> {
    verts.iter().map(|&v| w[v]).collect()
}

/// The recursion over the decomposition, in local ids of `g`.
fn cover(g: &Graph, w: &[u64]) -> Result<Vec<(VertexSet, u64)>> {
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let family = match decompose_bull(g)? {
        DecompositionResult::Basic => {
            let u = (0..n).max_by(|&a, &b| w[a].cmp(&w[b]).then(b.cmp(&a))).expect("nonempty");
            let nb = g.neighbor_set(u);
            let mut rest: VertexSet = (0..n).filter(|&v| !nb.contains(v)).collect();
            rest.insert(u);
            let mut fam = vec![(rest, w[u])];
            if !nb.is_empty() {
                let sub = g.induced_unchecked(nb.as_slice());
                let inner = cover(&sub.graph, &weights_of(w, &sub.vertices))?;
                fam.extend(map_family(inner, &sub.vertices));
            }
            fam
        }
        DecompositionResult::HomogeneousSet(s) => {
            // quotient: vertices outside s in order, then the representative
            let outside: Vec<Vertex> = (0..n).filter(|&v| !s.contains(v)).collect();
            let rep_local = outside.len();
            let s_graph = g.induced_unchecked(s.as_slice());
            let s_weights = weights_of(w, &s_graph.vertices);
            let ws = max_weight_clique(&s_graph.graph, &s_weights).0;
            let quotient = {
                let base = g.induced_unchecked(&outside);
                let any_s = s.first().expect("nonempty");
                let mut edges: Vec<(Vertex, Vertex)> = base.graph.edges().collect();
                edges.extend((0..rep_local).filter(|&i| g.has_edge(outside[i], any_s)).map(|i| (i, rep_local)));
                Graph::from_edges(rep_local + 1, edges)?
            };
            let mut qw = weights_of(w, &outside);
            qw.push(ws);
            let mut ph = cover(&quotient, &qw)?;
            trim_coverage(&mut ph, rep_local, ws);
            let mut ps = cover(&s_graph.graph, &s_weights)?;
            let total: u64 = ps.iter().map(|r| r.1).sum();
            if total > ws {
                return Err(Error::violation(format!("cover of a homogeneous set has {total} > {ws} members")));
            }
            if total < ws {
                ps[0].1 += ws - total;
            }
            let (with_s, without_s): (Vec<_>, Vec<_>) = ph.into_iter().partition(|(m, _)| m.contains(rep_local));
            let mut to_host: Vec<Vertex> = outside.clone();
            to_host.push(usize::MAX);
            let with_s: Vec<(VertexSet, u64)> = with_s
                .into_iter()
                .map(|(m, k)| (m.iter().filter(|&v| v != rep_local).map(|v| to_host[v]).collect(), k))
                .collect();
            let ps = map_family(ps, &s_graph.vertices);
            let mut fam = zip_runs(&with_s, &ps);
            fam.extend(map_family(without_s, &to_host));
            fam
        }
        DecompositionResult::CutVertex(u) => {
            let comps = g.without(&VertexSet::singleton(u))?;
            let parts = comps.graph.components();
            let c1: Vec<Vertex> = parts[0].iter().map(|v| comps.vertices[v]).collect();
            let c2: Vec<Vertex> = parts[1..].iter().flat_map(|p| p.iter()).map(|v| comps.vertices[v]).collect();
            let mut sides = Vec::new();
            for c in [c1, c2] {
                let mut verts: VertexSet = c.into_iter().collect();
                verts.insert(u);
                let sub = g.induced_unchecked(verts.as_slice());
                let local_u = sub.to_local(u).expect("u is on both sides");
                let mut fam = cover(&sub.graph, &weights_of(w, &sub.vertices))?;
                trim_coverage(&mut fam, local_u, w[u]);
                sides.push(map_family(fam, &sub.vertices));
            }
            let (cov1, non1): (Vec<_>, Vec<_>) = sides[0].drain(..).partition(|(m, _)| m.contains(u));
            let (cov2, non2): (Vec<_>, Vec<_>) = sides[1].drain(..).partition(|(m, _)| m.contains(u));
            let mut fam = zip_runs(&cov1, &cov2);
            fam.extend(pair_runs(&non1, &non2));
            fam
        }
    };
    let mut family: Vec<(VertexSet, u64)> = family.into_iter().filter(|(s, m)| !s.is_empty() && *m > 0).collect();
    family.shrink_to_fit();
    // cheap per-level checks; perfection is checked once at the top
    let wg = WeightedGraph { graph: g.clone(), weights: w.to_vec() };
    let fam = PerfectCoverFamily { members: family };
    fam.validate(&wg, false).map_err(Error::violation)?;
    Ok(fam.members)
}

/// At most `W` perfect induced subgraphs covering each vertex at least its
/// weight many times, built along the decomposition.
pub fn perfect_cover_family(wg: &WeightedGraph) -> Result<PerfectCoverFamily> {
    let fam = PerfectCoverFamily { members: cover(&wg.graph, &wg.weights)? };
    fam.validate(wg, true).map_err(Error::violation)?;
    Ok(fam)
}

/// A proper coloring with at most `ω²` colors: each vertex goes to the first
/// cover member containing it, each member is colored optimally, and the
/// members use disjoint palettes. Up to [`MEMBERSHIP_GUARD`] vertices, a
/// graph containing a bull subdivision is rejected with its witness.
pub fn color_bull_star_free(g: &Graph) -> Result<Coloring> {
    if g.n() <= MEMBERSHIP_GUARD {
        let opts = OracleOptions { size_guard: Some(MEMBERSHIP_GUARD), ..Default::default() };
        if let Some(w) = find_induced_subdivision(g, &Pattern::bull(), &opts)? {
            return Err(Error::NotInClass { class: "bull*".into(), witness: Some(Box::new(w)) });
        }
    }
    let fam = perfect_cover_family(&WeightedGraph::unit(g.clone()))?;
    let mut owner = vec![usize::MAX; g.n()];
    for (i, (s, _)) in fam.members.iter().enumerate() {
        for v in s.iter() {
            if owner[v] == usize::MAX {
                owner[v] = i;
            }
        }
    }
    let mut colors = vec![0usize; g.n()];
    let mut offset = 0;
    for i in 0..fam.members.len() {
        let part: Vec<Vertex> = (0..g.n()).filter(|&v| owner[v] == i).collect();
        if part.is_empty() {
            continue;
        }
        let sub = g.induced_unchecked(&part);
        let r = chromatic_number(&sub.graph, Budget::default());
        let c = r.coloring.expect("chromatic_number always returns a coloring");
        let used = c.colors().iter().max().map_or(0, |m| m + 1);
        for (j, &v) in part.iter().enumerate() {
            colors[v] = offset + c.color(j);
        }
        offset += used;
    }
    let coloring = Coloring::new(colors);
    let omega = clique_number(g).0;
    if !coloring.is_proper(g) || coloring.num_colors() > omega * omega {
        return Err(Error::violation(format!(
            "cover coloring uses {} colors with ω = {omega}, proper: {}",
            coloring.num_colors(),
            coloring.is_proper(g)
        )));
    }
    Ok(coloring)
}

/// Whether every member of the family is perfect; exposed for callers that
/// validate families themselves.
pub fn members_perfect(g: &Graph, fam: &PerfectCoverFamily) -> bool {
    fam.members.iter().all(|(s, _)| is_perfect(&g.induced_unchecked(s.as_slice()).graph))
}

/// One graph per isomorphism class of bull*-free graphs on up to `max_n`
/// vertices.
pub fn bull_star_free_census(max_n: usize) -> Vec<Vec<Graph>> {
    crate::census::star_free_census(&Pattern::bull(), max_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::iso::are_isomorphic;

    fn c5_plus(extra: &[usize]) -> (Graph, HoleDescriptor) {
        let mut edges: Vec<_> = cycle(5).edges().collect();
        edges.extend(extra.iter().map(|&h| (h, 5)));
        let g = Graph::from_edges(6, edges).unwrap();
        let hole = enumerate_holes(&g, Parity::Odd, 5, 5).find(|h| !h.cycle.contains(&5)).unwrap();
        (g, hole)
    }

    fn role(extra: &[usize]) -> VertexRole {
        let (g, hole) = c5_plus(extra);
        assert_eq!(hole.cycle, vec![0, 1, 2, 3, 4]);
        classify_vertex(&g, &hole, 5).unwrap()
    }

    #[test]
    fn roles() {
        assert_eq!(role(&[]), VertexRole::AntiCenter);
        assert_eq!(role(&[2]), VertexRole::Leaf(2));
        assert_eq!(role(&[1, 2, 3]), VertexRole::AdjacentClone(2));
        assert_eq!(role(&[0, 1, 2, 3, 4]), VertexRole::Center);
        assert_eq!(role(&[0, 1, 3, 4]), VertexRole::Star(2));
        assert_eq!(role(&[1, 3]), VertexRole::NonAdjacentClone(2));
        assert_eq!(role(&[4, 1]), VertexRole::NonAdjacentClone(0));
        assert_eq!(role(&[0, 1]), VertexRole::NotAppropriate);
        assert!(VertexRole::Star(0).is_appropriate(5) && !VertexRole::Star(0).is_appropriate(7));
        let (g, hole) = c5_plus(&[]);
        assert!(classify_vertex(&g, &hole, 0).is_err());
    }

    #[test]
    fn homogeneous_sets() {
        let paw = Pattern::paw().graph;
        // x2, x3 close to themselves: x1 is complete to them, y anticomplete
        assert_eq!(find_proper_homogeneous_set(&paw), Some(VertexSet::from([1, 2])));
        assert_eq!(find_proper_homogeneous_set(&cycle(5)), None);
        let g = complete(2).disjoint_union(&Graph::empty(1));
        assert_eq!(find_proper_homogeneous_set(&g), Some(VertexSet::from([0, 1])));
        assert_eq!(find_proper_homogeneous_set(&complete(2)), None);
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(decompose_bull(&cycle(7)).unwrap(), DecompositionResult::Basic);
        let g = cycle(5).disjoint_union(&Graph::empty(1));
        assert_eq!(decompose_bull(&g).unwrap(), DecompositionResult::HomogeneousSet(VertexSet::full(5)));
        // C5 with a leaf l (5) at h0 and an anti-center a (6) adjacent to l
        let mut edges: Vec<_> = cycle(5).edges().collect();
        edges.extend([(0, 5), (5, 6)]);
        let g = Graph::from_edges(7, edges).unwrap();
        assert_eq!(find_proper_homogeneous_set(&g), None);
        let d = decompose_bull(&g).unwrap();
        assert_eq!(d, DecompositionResult::CutVertex(0));
        assert!(d.validate(&g));
    }

    #[test]
    fn substitution_and_gluing() {
        let k3 = substitute(&complete(2), 1, &complete(2)).unwrap();
        assert!(are_isomorphic(&k3, &complete(3)).is_some());
        let p = petersen();
        assert!(are_isomorphic(&substitute(&p, 4, &Graph::empty(1)).unwrap(), &p).is_some());
        let diamond = substitute(&path(3), 1, &complete(2)).unwrap();
        let mut k4_minus = complete(4).edges().collect::<Vec<_>>();
        k4_minus.retain(|&e| e != (0, 3));
        assert!(are_isomorphic(&diamond, &Graph::from_edges(4, k4_minus).unwrap()).is_some());

        let bowtie = glue(&complete(3), &complete(3), 0, 2).unwrap();
        assert_eq!((bowtie.n(), bowtie.edge_count()), (5, 6));
        assert_eq!(bowtie.cut_vertices(), VertexSet::from([0]));
        assert!(are_isomorphic(&glue(&complete(2), &complete(2), 1, 0).unwrap(), &path(3)).is_some());
        assert_eq!(glue(&p, &Graph::empty(1), 3, 0).unwrap(), p);
    }

    #[test]
    fn cover_examples() {
        let wg = WeightedGraph::unit(cycle(7));
        let fam = perfect_cover_family(&wg).unwrap();
        assert!(fam.size() <= 2);
        fam.validate(&wg, true).unwrap();

        let wg = WeightedGraph::new(Graph::empty(1), vec![5]).unwrap();
        let fam = perfect_cover_family(&wg).unwrap();
        assert_eq!(fam.members, vec![(VertexSet::from([0]), 5)]);
    }

    #[test]
    fn coloring_examples() {
        let c = color_bull_star_free(&cycle(7)).unwrap();
        assert!(c.is_proper(&cycle(7)) && c.num_colors() <= 4);
        let c = color_bull_star_free(&complete(4)).unwrap();
        assert!(c.is_proper(&complete(4)) && c.num_colors() <= 16);
        match color_bull_star_free(&petersen()) {
            Err(Error::NotInClass { witness: Some(w), .. }) => {
                assert!(crate::subdivision::verify_witness(&petersen(), &Pattern::bull(), &w))
            }
            other => panic!("expected a bull witness, got {other:?}"),
        }
    }

    #[test]
    fn lemmas_on_leaf_configuration() {
        let mut edges: Vec<_> = cycle(5).edges().collect();
        edges.extend([(0, 5), (5, 6)]);
        let g = Graph::from_edges(7, edges).unwrap();
        let rep = check_hole_lemmas(&g).unwrap();
        assert_eq!((rep.holes, rep.anti_center_holes), (1, 1));
        let hole = enumerate_holes(&g, Parity::Odd, 5, 7).next().unwrap();
        let a = attachments(&g, &hole).unwrap();
        assert_eq!(a.leaves[0], VertexSet::from([5]));
        assert_eq!(a.anti_centers, VertexSet::from([6]));
    }

    mod props {
        use super::*;
        use crate::holes::is_perfect;
        use proptest::prelude::*;

        fn bull_free(g: &Graph) -> bool {
            crate::subdivision::contains_induced_subdivision(g, &Pattern::bull()).unwrap().is_none()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn cover_and_coloring_on_bull_free(n in 1usize..=8, seed in any::<u64>(), p in 0.0f64..1.0, ws in proptest::collection::vec(1u64..4, 8)) {
                let g = gnp(n, p, seed).unwrap();
                prop_assume!(bull_free(&g));
                let wg = WeightedGraph::new(g.clone(), ws[..n].to_vec()).unwrap();
                let fam = perfect_cover_family(&wg).unwrap();
                prop_assert!(fam.validate(&wg, true).is_ok());
                let c = color_bull_star_free(&g).unwrap();
                let omega = clique_number(&g).0;
                prop_assert!(c.is_proper(&g) && c.num_colors() <= omega * omega);
                let d = decompose_bull(&g).unwrap();
                prop_assert!(d.validate(&g));
                prop_assert!(check_hole_lemmas(&g).is_ok());
            }

            #[test]
            fn replication_keeps_perfection(n1 in 1usize..=6, n2 in 1usize..=6, s1 in any::<u64>(), s2 in any::<u64>(), p in 0.0f64..1.0, u in 0usize..6) {
                let g1 = gnp(n1, p, s1).unwrap();
                let g2 = gnp(n2, p, s2).unwrap();
                prop_assume!(is_perfect(&g1) && is_perfect(&g2));
                let g = substitute(&g1, u % n1, &g2).unwrap();
                prop_assert_eq!(g.n(), n1 + n2 - 1);
                prop_assert!(is_perfect(&g));
            }
        }
    }

    #[test]
    fn run_helpers() {
        let a = VertexSet::from([0]);
        let b = VertexSet::from([1]);
        let c = VertexSet::from([2]);
        let z = zip_runs(&[(a.clone(), 3)], &[(b.clone(), 1), (c.clone(), 2)]);
        assert_eq!(z, vec![(VertexSet::from([0, 1]), 1), (VertexSet::from([0, 2]), 2)]);
        let p = pair_runs(&[(a.clone(), 1)], &[(b.clone(), 3)]);
        assert_eq!(p, vec![(VertexSet::from([0, 1]), 1), (b.clone(), 2)]);
        let mut f = vec![(VertexSet::from([0, 1]), 3), (VertexSet::from([1]), 1)];
        trim_coverage(&mut f, 1, 2);
        assert_eq!(f, vec![(VertexSet::from([0, 1]), 2), (VertexSet::from([0]), 1)]);
    }
}
