//! Holes (induced cycles of length at least four) and anti-holes, with their
//! centers and anti-centers, plus the basic-graph and perfection tests built
//! on them.

use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HoleKind {
    Hole,
    AntiHole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    Any,
}

impl Parity {
    fn accepts(self, len: usize) -> bool {
        match self {
            Parity::Odd => len % 2 == 1,
            Parity::Even => len.is_multiple_of(2),
            Parity::Any => true,
        }
    }
}

/// A hole or anti-hole `h_0 .. h_{k-1}`. For an anti-hole the sequence is a
/// chordless cycle of the complement. Centers and anti-centers are measured
/// in the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleDescriptor {
    pub kind: HoleKind,
    pub cycle: Vec<Vertex>,
    pub centers: VertexSet,
    pub anti_centers: VertexSet,
}

impl HoleDescriptor {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.cycle.iter().copied().collect()
    }

    /// `h_i` with the index taken cyclically.
    pub fn at(&self, i: isize) -> Vertex {
        let k = self.cycle.len() as isize;
        self.cycle[i.rem_euclid(k) as usize]
    }

    /// Builds a descriptor for `cycle` in `g`, scanning for centers and
    /// anti-centers.
    pub fn new(g: &Graph, kind: HoleKind, cycle: Vec<Vertex>) -> Self {
        let on: VertexSet = cycle.iter().copied().collect();
        let mut centers = Vec::new();
        let mut anti = Vec::new();
        for v in g.vertices().filter(|&v| !on.contains(v)) {
            let hits = cycle.iter().filter(|&&h| g.has_edge(v, h)).count();
            if hits == cycle.len() {
                centers.push(v);
            } else if hits == 0 {
                anti.push(v);
            }
        }
        HoleDescriptor { kind, cycle, centers: centers.into(), anti_centers: anti.into() }
    }

    /// Whether the cycle really is a hole (or anti-hole) of `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let k = self.cycle.len();
        if k < 4 || self.cycle.iter().any(|&v| v >= g.n()) || self.vertex_set().len() != k {
            return false;
        }
        let want_edge = |i: usize, j: usize| {
            let d = (i + k - j) % k;
            let cyc = d == 1 || d == k - 1;
            match self.kind {
                HoleKind::Hole => cyc,
                HoleKind::AntiHole => !cyc,
            }
        };
        (0..k).all(|i| (i + 1..k).all(|j| g.has_edge(self.cycle[i], self.cycle[j]) == want_edge(i, j)))
    }
}

/// Lazy enumeration of chordless cycles by canonical path extension: each
/// cycle is grown from its smallest vertex `s`, through vertices larger than
/// `s`, and reported in the direction whose second vertex is smaller than
/// its last.
pub struct HoleIter<'a> {
    host: &'a Graph,
    search: Graph,
    kind: HoleKind,
    parity: Parity,
    min_len: usize,
    max_len: usize,
    start: usize,
    path: Vec<Vertex>,
    on_path: Vec<bool>,
    cursor: Vec<usize>,
}

impl<'a> HoleIter<'a> {
    fn new(host: &'a Graph, kind: HoleKind, parity: Parity, min_len: usize, max_len: usize) -> Self {
        let search = match kind {
            HoleKind::Hole => host.clone(),
            HoleKind::AntiHole => host.complement(),
        };
        let n = host.n();
        HoleIter {
            host,
            search,
            kind,
            parity,
            min_len: min_len.max(4),
            max_len,
            start: 0,
            path: Vec::new(),
            on_path: vec![false; n],
            cursor: Vec::new(),
        }
    }
}

impl Iterator for HoleIter<'_> {
    type Item = HoleDescriptor;

    fn next(&mut self) -> Option<HoleDescriptor> {
        let g = &self.search;
        loop {
            if self.path.is_empty() {
                if self.start >= g.n() || self.min_len > self.max_len {
                    return None;
                }
                self.path.push(self.start);
                self.on_path[self.start] = true;
                self.cursor.push(0);
                self.start += 1;
            }
            let depth = self.path.len();
            let last = self.path[depth - 1];
            let s = self.path[0];
            let idx = self.cursor[depth - 1];
            let nb = g.neighbors(last);
            if idx >= nb.len() {
                self.on_path[last] = false;
                self.path.pop();
                self.cursor.pop();
                continue;
            }
            self.cursor[depth - 1] += 1;
            let u = nb[idx];
            if u <= s || self.on_path[u] {
                continue;
            }
            if depth >= 2 && self.path[1..depth - 1].iter().any(|&p| g.has_edge(p, u)) {
                continue;
            }
            if depth >= 2 && g.has_edge(u, s) {
                let len = depth + 1;
                if len >= self.min_len && len <= self.max_len && self.parity.accepts(len) && self.path[1] < u {
                    let mut cycle = self.path.clone();
                    cycle.push(u);
                    return Some(HoleDescriptor::new(self.host, self.kind, cycle));
                }
                continue;
            }
            // room for u plus at least one closing vertex
            if depth + 2 <= self.max_len {
                self.path.push(u);
                self.on_path[u] = true;
                self.cursor.push(0);
            }
        }
    }
}

/// Every hole of the requested parity with `min_len <= k <= max_len`,
/// exactly once up to rotation and reflection. `min_len` below four is
/// raised to four.
pub fn enumerate_holes(g: &Graph, parity: Parity, min_len: usize, max_len: usize) -> HoleIter<'_> {
    HoleIter::new(g, HoleKind::Hole, parity, min_len, max_len)
}

/// Holes of the complement, reported as anti-holes of `g`.
pub fn enumerate_antiholes(g: &Graph, parity: Parity, min_len: usize, max_len: usize) -> HoleIter<'_> {
    HoleIter::new(g, HoleKind::AntiHole, parity, min_len, max_len)
}

/// An odd hole or odd anti-hole together with an anti-center for it, if any.
/// Holes are searched before anti-holes, shorter before longer.
pub fn basic_violation(g: &Graph) -> Option<(HoleDescriptor, Vertex)> {
    let n = g.n();
    for kind in [HoleKind::Hole, HoleKind::AntiHole] {
        for len in (5..n).step_by(2) {
            let found = HoleIter::new(g, kind, Parity::Odd, len, len)
                .find_map(|h| h.anti_centers.first().map(|a| (h.clone(), a)));
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

pub fn is_basic(g: &Graph) -> bool {
    basic_violation(g).is_none()
}

/// An odd hole or odd anti-hole, if any; shortest first, holes first.
pub fn perfection_violation(g: &Graph) -> Option<HoleDescriptor> {
    let n = g.n();
    for len in (5..=n).step_by(2) {
        if let Some(h) = enumerate_holes(g, Parity::Odd, len, len).next() {
            return Some(h);
        }
        if let Some(h) = enumerate_antiholes(g, Parity::Odd, len, len).next() {
            return Some(h);
        }
    }
    None
}

/// No odd hole and no odd anti-hole.
pub fn is_perfect(g: &Graph) -> bool {
    perfection_violation(g).is_none()
}
