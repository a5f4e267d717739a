//! Alloys: a necklace subdivision `N` from a base `x0` to a hook `x`, with a
//! connected part `X` hanging off the hook. The path lemma, the base case,
//! the reduction into layers, and the two induction cases together grow an
//! `(m)_n`-alloy into an `(m)_{n+1}`-alloy while keeping `χ(G[X])` above a
//! threshold, which yields an induced necklace subdivision in any connected
//! graph whose χ is large relative to its local χ.
//!
//! Every operation runs in one of two modes. [`Check::Strict`] enforces the
//! χ arithmetic each step is entitled to assume. [`Check::Relaxed`] skips
//! only that arithmetic, keeps every structural precondition, and fails with
//! an input error if a construction step becomes impossible; outputs are
//! validated the same way in both modes.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact::{exact_chi_of, local_chromatic_number, max_chi_component, Budget};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::subdivision::{is_subdivision_pinned, Pattern, SubdivisionWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Strict,
    Relaxed,
}

/// Segment length `m`, local χ bound `alpha`, potential threshold `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlloyParams {
    pub m: usize,
    pub alpha: usize,
    pub beta: usize,
    pub budget: Budget,
    pub check: Check,
}

impl AlloyParams {
    pub fn new(m: usize, alpha: usize, beta: usize) -> Self {
        AlloyParams { m, alpha, beta, budget: Budget::default(), check: Check::Strict }
    }

    pub fn relaxed(self) -> Self {
        AlloyParams { check: Check::Relaxed, ..self }
    }

    pub fn with_budget(self, budget: Budget) -> Self {
        AlloyParams { budget, ..self }
    }

    pub fn with_beta(self, beta: usize) -> Self {
        AlloyParams { beta, ..self }
    }

    fn strict(&self) -> bool {
        self.check == Check::Strict
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.alpha == 0 {
            return Err(Error::input("m and alpha must be positive"));
        }
        Ok(())
    }
}

/// An `(m)_n`-alloy inside a host graph; all ids are host ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alloy {
    pub x0: Vertex,
    /// The hook of the necklace part, the only necklace vertex that sees
    /// the attached part.
    pub x: Vertex,
    pub necklace: VertexSet,
    pub attached: VertexSet,
    pub m: usize,
    /// Number of junctions of the necklace part.
    pub n: usize,
    /// Exact χ of the attached part.
    pub potential: usize,
    /// Embedding of the `(m)_n` necklace onto the necklace part, base on
    /// `x0` and hook on `x`.
    pub witness: Option<SubdivisionWitness>,
}

impl Alloy {
    pub fn vertex_set(&self) -> VertexSet {
        self.necklace.union(&self.attached)
    }
}

/// Problems found by [`validate_alloy`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlloyCheck {
    pub diagnostics: Vec<String>,
    pub witness: Option<SubdivisionWitness>,
}

impl AlloyCheck {
    pub fn is_valid(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Re-checks every defining property of `a` in `g`: the necklace part is an
/// `(m)_n`-necklace subdivision with base `x0` and hook `x`, the attached
/// part is connected, only `x` sees it and does so, and the stored potential
/// is its exact χ.
pub fn validate_alloy(g: &Graph, a: &Alloy, budget: Budget) -> AlloyCheck {
    let mut out = AlloyCheck::default();
    let d = &mut out.diagnostics;
    if a.necklace.check_range(g.n()).is_err() || a.attached.check_range(g.n()).is_err() {
        d.push("vertex sets out of range".into());
        return out;
    }
    if !a.necklace.is_disjoint(&a.attached) {
        d.push(format!("parts overlap on {:?}", a.necklace.intersection(&a.attached).as_slice()));
    }
    if a.attached.is_empty() {
        d.push("attached part is empty".into());
    }
    if a.x0 == a.x || !a.necklace.contains(a.x0) || !a.necklace.contains(a.x) {
        d.push(format!("x0 = {} and x = {} must be distinct vertices of the necklace part", a.x0, a.x));
    }
    if !d.is_empty() {
        return out;
    }
    if !g.is_connected_within(&a.attached) {
        d.push("attached part is not connected".into());
    }
    for u in a.necklace.iter().filter(|&u| u != a.x) {
        if let Some(&v) = g.neighbors(u).iter().find(|&&v| a.attached.contains(v)) {
            d.push(format!("edge {u}-{v} joins the necklace part to the attached part away from the hook"));
        }
    }
    if !g.neighbors(a.x).iter().any(|&v| a.attached.contains(v)) {
        d.push(format!("hook {} has no neighbor in the attached part", a.x));
    }
    match Pattern::necklace(&vec![a.m; a.n + 1]) {
        Ok(p) => {
            let sub = g.induced_unchecked(a.necklace.as_slice());
            let pins = p.pins(sub.to_local(a.x0).expect("x0 in N"), sub.to_local(a.x).expect("x in N"));
            match is_subdivision_pinned(&sub.graph, &p, &pins) {
                Some(w) => out.witness = Some(w.relabel(&sub.vertices)),
                None => d.push(format!(
                    "necklace part {:?} is not a ({})_{} necklace subdivision with base {} and hook {}",
                    a.necklace.as_slice(),
                    a.m,
                    a.n,
                    a.x0,
                    a.x
                )),
            }
        }
        Err(e) => d.push(e.to_string()),
    }
    match exact_chi_of(g, &a.attached, budget, "alloy potential") {
        Ok(chi) if chi != a.potential => {
            d.push(format!("stored potential {} but χ of the attached part is {chi}", a.potential))
        }
        Ok(_) => {}
        Err(e) => d.push(e.to_string()),
    }
    out
}

/// Computes the potential and the necklace witness, and fails if the result
/// is not a valid alloy with potential above `params.beta`.
fn finish(g: &Graph, mut a: Alloy, params: &AlloyParams, what: &str) -> Result<Alloy> {
    a.potential = exact_chi_of(g, &a.attached, params.budget, "alloy potential")?;
    let check = validate_alloy(g, &a, params.budget);
    let fail = |msg: String| {
        if params.strict() {
            Error::violation(format!("{what}: {msg}"))
        } else {
            Error::input(format!("{what} (relaxed run): {msg}"))
        }
    };
    if !check.is_valid() {
        return Err(fail(check.diagnostics.join("; ")));
    }
    if a.potential <= params.beta {
        return Err(fail(format!("potential {} does not exceed beta = {}", a.potential, params.beta)));
    }
    a.witness = check.witness;
    Ok(a)
}

fn require_local_chi(g: &Graph, params: &AlloyParams) -> Result<()> {
    if !params.strict() {
        return Ok(());
    }
    let l = local_chromatic_number(g, params.budget);
    if !l.exact {
        return Err(Error::Budget("local chromatic number".into()));
    }
    if l.value > params.alpha {
        return Err(Error::input(format!(
            "local chromatic number {} (at vertex {:?}) exceeds alpha = {}",
            l.value, l.argmax, params.alpha
        )));
    }
    Ok(())
}

fn require_above(value: usize, bound: usize, what: &str, params: &AlloyParams) -> Result<()> {
    if params.strict() && value <= bound {
        return Err(Error::input(format!("{what} = {value} must exceed {bound}")));
    }
    Ok(())
}

/// Output of [`path_lemma`]: the induced path `x_1..x_k` (after `x0`) and
/// the set `X` it leads into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLemma {
    pub path: Vec<Vertex>,
    pub rest: VertexSet,
}

impl PathLemma {
    /// The last path vertex, or `x0` when the path is empty.
    pub fn end(&self, x0: Vertex) -> Vertex {
        self.path.last().copied().unwrap_or(x0)
    }
}

/// Grows an induced path `x0 - x_1 - .. - x_k` into `s` while keeping a
/// connected set `X ⊆ s` of large χ ahead of it: at each step `X` shrinks
/// to its max-χ component off the current end's neighborhood, and the next
/// vertex is the smallest neighbor of the end in the old `X` that sees the
/// new one.
pub fn path_lemma(g: &Graph, x0: Vertex, s: &VertexSet, k: usize, params: &AlloyParams) -> Result<PathLemma> {
    params.validate()?;
    g.check_vertex(x0)?;
    s.check_range(g.n())?;
    if s.contains(x0) || s.is_empty() || !g.is_connected_within(s) {
        return Err(Error::input("path lemma needs a nonempty connected set avoiding x0"));
    }
    if !g.neighbors(x0).iter().any(|&v| s.contains(v)) {
        return Err(Error::input(format!("x0 = {x0} has no neighbor in the set")));
    }
    let chi_s = if params.strict() {
        let chi = exact_chi_of(g, s, params.budget, "path lemma set")?;
        require_above(chi, k * params.alpha, "χ(G[S])", params)?;
        require_local_chi(g, params)?;
        Some(chi)
    } else {
        None
    };
    let mut path = Vec::with_capacity(k);
    let mut rest = s.clone();
    let mut end = x0;
    for i in 0..k {
        let nb = g.neighbor_set(end);
        let away = rest.difference(&nb);
        if away.is_empty() {
            let msg = format!("path lemma step {i}: vertex {end} is complete to the remaining set");
            return Err(if params.strict() { Error::violation(msg) } else { Error::input(msg) });
        }
        let (next_rest, _) = max_chi_component(g, &away, params.budget)?;
        let next =
            rest.iter().find(|&v| nb.contains(v) && g.neighbors(v).iter().any(|&w| next_rest.contains(w))).ok_or_else(
                || Error::violation(format!("path lemma step {i}: no neighbor of {end} reaches the component")),
            )?;
        path.push(next);
        rest = next_rest;
        end = next;
    }
    let out = PathLemma { path, rest };
    let problems = check_path_lemma(g, x0, s, &out, chi_s.map(|c| (c, k * params.alpha)), params.budget)?;
    if !problems.is_empty() {
        return Err(Error::violation(format!("path lemma postconditions: {}", problems.join("; "))));
    }
    Ok(out)
}

/// Postconditions a-e of the path lemma, plus `χ(G[X]) >= χ(G[S]) - kα`
/// when `chi_bound = Some((χ(G[S]), kα))`. Returns the failures.
pub fn check_path_lemma(
    g: &Graph,
    x0: Vertex,
    s: &VertexSet,
    out: &PathLemma,
    chi_bound: Option<(usize, usize)>,
    budget: Budget,
) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let mut full = vec![x0];
    full.extend(&out.path);
    let induced_path = full.iter().enumerate().all(|(i, &u)| {
        full[i + 1..].iter().enumerate().all(|(j, &v)| g.has_edge(u, v) == (j == 0)) && (i == 0 || s.contains(u))
    });
    let distinct: VertexSet = full.iter().copied().collect();
    if !induced_path || distinct.len() != full.len() {
        bad.push(format!("(a) {full:?} is not an induced path with x_1.. in S"));
    }
    if out.rest.is_empty() || !out.rest.is_subset(s) || !g.is_connected_within(&out.rest) {
        bad.push("(b) X is not a nonempty connected subset of S".into());
    }
    if out.path.iter().any(|&v| out.rest.contains(v)) {
        bad.push("(c) the path meets X".into());
    }
    let end = out.end(x0);
    if !g.neighbors(end).iter().any(|&v| out.rest.contains(v)) {
        bad.push(format!("(d) path end {end} has no neighbor in X"));
    }
    if full[..full.len() - 1].iter().any(|&u| g.neighbors(u).iter().any(|&v| out.rest.contains(v))) {
        bad.push("(e) an inner path vertex sees X".into());
    }
    if let Some((chi_s, loss)) = chi_bound {
        let chi_x = exact_chi_of(g, &out.rest, budget, "path lemma result")?;
        if chi_x + loss < chi_s {
            bad.push(format!("(f) χ(G[X]) = {chi_x} < χ(G[S]) - kα = {chi_s} - {loss}"));
        }
    }
    Ok(bad)
}

/// An `(m)_0`-alloy: the largest-χ component `S` of `G - x0`, the path
/// lemma with `k = m` from `x0` into `S`, necklace part `x0..x_m`.
pub fn alloy_base_case(g: &Graph, x0: Vertex, params: &AlloyParams) -> Result<Alloy> {
    params.validate()?;
    g.check_vertex(x0)?;
    if !g.is_connected() {
        return Err(Error::input("alloy base case needs a connected graph"));
    }
    if g.n() < 2 {
        return Err(Error::input("alloy base case needs at least two vertices"));
    }
    if params.strict() {
        let chi = exact_chi_of(g, &VertexSet::full(g.n()), params.budget, "host graph")?;
        require_above(chi, (params.m + 1) * params.alpha + params.beta, "χ(G)", params)?;
        require_local_chi(g, params)?;
    }
    let rest = VertexSet::full(g.n()).difference(&VertexSet::singleton(x0));
    let (s, _) = max_chi_component(g, &rest, params.budget)?;
    let lemma = path_lemma(g, x0, &s, params.m, params)?;
    let mut necklace = VertexSet::singleton(x0);
    for &v in &lemma.path {
        necklace.insert(v);
    }
    let a =
        Alloy { x0, x: lemma.end(x0), necklace, attached: lemma.rest, m: params.m, n: 0, potential: 0, witness: None };
    finish(g, a, params, "alloy base case")
}

/// Layers `S_0 = {x}, S_1, .., S_t` of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    pub layers: Vec<VertexSet>,
    /// The `beta` the top layer's χ was required to exceed.
    pub threshold: usize,
}

impl Stratification {
    /// Index of the top layer.
    pub fn t(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn top(&self) -> &VertexSet {
        &self.layers[self.t()]
    }

    pub fn layer_of(&self, v: Vertex) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(v))
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.layers.iter().fold(VertexSet::new(), |acc, l| acc.union(l))
    }

    /// Index of the first of `S_1 .. S_{t-2}` that contains an edge.
    pub fn first_unstable(&self, g: &Graph) -> Option<usize> {
        (1..self.t().saturating_sub(1)).find(|&i| !g.is_stable(&self.layers[i]))
    }

    /// Checks that each layer sits in the matching distance layer of
    /// `{x} ∪ X` from `x`, that every vertex of `S_{i+1}` has a neighbor in
    /// `S_i`, that no vertex of `S_i` (`i < t`) can be dropped, that the top
    /// layer is connected and that its χ exceeds the threshold.
    pub fn validate(&self, g: &Graph, a: &Alloy, budget: Budget) -> Vec<String> {
        let mut bad = Vec::new();
        if self.layers.is_empty() || self.layers[0] != VertexSet::singleton(a.x) {
            bad.push("S_0 must be {x}".into());
            return bad;
        }
        let mut within = a.attached.clone();
        within.insert(a.x);
        let Ok(bfs) = g.bfs_layers(a.x, &within) else {
            bad.push("x is not a vertex".into());
            return bad;
        };
        for (i, l) in self.layers.iter().enumerate() {
            if !bfs.layers.get(i).is_some_and(|d| l.is_subset(d)) {
                bad.push(format!("S_{i} is not inside distance layer {i}"));
            }
        }
        for i in 0..self.t() {
            let (lo, hi) = (&self.layers[i], &self.layers[i + 1]);
            if let Some(v) = hi.iter().find(|&v| g.count_neighbors_in(v, lo) == 0) {
                bad.push(format!("vertex {v} of S_{} has no neighbor in S_{i}", i + 1));
            }
            for u in lo.iter() {
                let needed = hi.iter().any(|v| g.has_edge(u, v) && g.count_neighbors_in(v, lo) == 1);
                if !needed {
                    bad.push(format!("vertex {u} of S_{i} can be dropped"));
                }
            }
        }
        if !g.is_connected_within(self.top()) {
            bad.push("top layer is not connected".into());
        }
        match exact_chi_of(g, self.top(), budget, "top layer") {
            Ok(c) if c <= self.threshold => bad.push(format!("χ(S_t) = {c} does not exceed {}", self.threshold)),
            Ok(_) => {}
            Err(e) => bad.push(e.to_string()),
        }
        bad
    }
}

/// Reduces `a` into layers from its hook: `t >= 1` maximizes χ of the
/// distance layer (smallest `t` on ties), `S_t` is that layer's largest-χ
/// component, and each lower layer is thinned to a minimal set of parents
/// for the layer above, dropping vertices in descending id order. Returns
/// the reduced alloy, which keeps the necklace part, and the layers. In
/// strict mode the potential of `a` must exceed `2 * params.beta`.
pub fn reduce_alloy(g: &Graph, a: &Alloy, params: &AlloyParams) -> Result<(Alloy, Stratification)> {
    require_above(a.potential, 2 * params.beta, "alloy potential", params)?;
    let mut within = a.attached.clone();
    within.insert(a.x);
    let bfs = g.bfs_layers(a.x, &within)?;
    if bfs.layers.len() < 2 {
        return Err(Error::input("alloy has an empty attached part"));
    }
    let mut best: Option<(usize, usize)> = None;
    for (i, layer) in bfs.layers.iter().enumerate().skip(1) {
        let chi = exact_chi_of(g, layer, params.budget, "distance layer")?;
        if best.is_none_or(|(_, c)| chi > c) {
            best = Some((i, chi));
        }
    }
    let (t, _) = best.expect("at least one layer");
    let (top, _) = max_chi_component(g, &bfs.layers[t], params.budget)?;
    let mut layers = vec![VertexSet::new(); t + 1];
    layers[t] = top;
    for i in (0..t).rev() {
        let upper = layers[i + 1].clone();
        let mut keep = bfs.layers[i].clone();
        for u in bfs.layers[i].iter().rev() {
            let needed = upper.iter().any(|v| g.has_edge(u, v) && g.count_neighbors_in(v, &keep) == 1);
            if !needed {
                keep.remove(u);
            }
        }
        layers[i] = keep;
    }
    let strat = Stratification { layers, threshold: params.beta };
    let attached = strat.layers[1..].iter().fold(VertexSet::new(), |acc, l| acc.union(l));
    let reduced = Alloy { attached, potential: 0, witness: None, ..a.clone() };
    let reduced = finish(g, reduced, &AlloyParams { beta: 0, ..*params }, "reduction")?;
    let bad = strat.validate(g, &reduced, params.budget);
    if !bad.is_empty() {
        let msg = format!("stratification: {}", bad.join("; "));
        return Err(if params.strict() { Error::violation(msg) } else { Error::input(msg) });
    }
    Ok((reduced, strat))
}

/// A path with one vertex in each layer from `a`'s to `b`'s, listed from
/// `a` to `b`; consecutive vertices are adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicPath {
    pub vertices: Vec<Vertex>,
}

impl MonotonicPath {
    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

/// A monotonic path between `a` and `b`, preferring smaller ids at each
/// layer, or `None` if there is none (always the case for distinct
/// vertices of one layer).
pub fn monotonic_path(strat: &Stratification, g: &Graph, a: Vertex, b: Vertex) -> Option<MonotonicPath> {
    let (p, q) = (strat.layer_of(a)?, strat.layer_of(b)?);
    if p == q {
        return (a == b).then(|| MonotonicPath { vertices: vec![a] });
    }
    let (lo, hi, lo_v, hi_v) = if p < q { (p, q, a, b) } else { (q, p, b, a) };
    // vertices of each layer reachable from lo_v by climbing
    let mut reach = vec![VertexSet::singleton(lo_v)];
    for i in lo + 1..=hi {
        let prev = reach.last().expect("nonempty");
        let next: VertexSet =
            strat.layers[i].iter().filter(|&v| g.neighbors(v).iter().any(|&u| prev.contains(u))).collect();
        reach.push(next);
    }
    if !reach[hi - lo].contains(hi_v) {
        return None;
    }
    let mut down = vec![hi_v];
    for i in (0..hi - lo).rev() {
        let cur = *down.last().expect("nonempty");
        let step = reach[i].iter().find(|&u| g.has_edge(u, cur)).expect("reachable");
        down.push(step);
    }
    // down runs from hi_v to lo_v
    if p < q {
        down.reverse();
    }
    Some(MonotonicPath { vertices: down })
}

/// The deepest `z` in a layer below `min(a, b)` with monotonic paths to
/// both, scanning layers downward and ids upward; returns `z`, the path
/// from `z` to `a` and the path from `z` to `b`.
fn deepest_common_ancestor(
    strat: &Stratification,
    g: &Graph,
    a: Vertex,
    b: Vertex,
    below: usize,
) -> Option<(Vertex, MonotonicPath, MonotonicPath)> {
    (0..below).rev().find_map(|p| {
        strat.layers[p].iter().find_map(|z| {
            let pa = monotonic_path(strat, g, z, a)?;
            let pb = monotonic_path(strat, g, z, b)?;
            Some((z, pa, pb))
        })
    })
}

/// Which construction produced an `(m)_{n+1}`-alloy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InductionBranch {
    /// Some `S_r` with `1 <= r <= t-2` has an edge.
    Easy { r: usize },
    /// Escape path of type two, closed through `u_1'`.
    HardTypeTwo,
    /// Escape path of type one whose ends share the neighbor `d ∈ {a, b}`.
    HardCommonNeighbor { d: Vertex },
    /// Escape path of type one whose ends see different ones of `a`, `b`;
    /// `adjacent` tells whether `a` and `b` are adjacent.
    HardSplit { adjacent: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induction {
    pub alloy: Alloy,
    pub branch: InductionBranch,
    pub notes: Vec<String>,
}

fn check_induction_input(g: &Graph, a: &Alloy, strat: &Stratification, params: &AlloyParams) -> Result<()> {
    params.validate()?;
    if a.m != params.m {
        return Err(Error::input(format!("alloy has m = {} but the parameters say {}", a.m, params.m)));
    }
    let check = validate_alloy(g, a, params.budget);
    if !check.is_valid() {
        return Err(Error::input(format!("input alloy: {}", check.diagnostics.join("; "))));
    }
    let bad = strat.validate(g, a, params.budget);
    if !bad.is_empty() {
        return Err(Error::input(format!("input stratification: {}", bad.join("; "))));
    }
    if strat.vertex_set().difference(&VertexSet::singleton(a.x)) != a.attached {
        return Err(Error::input("the alloy must be the reduction its layers describe"));
    }
    Ok(())
}

/// The host graph of an alloy, the vertex set the lemmas may use.
fn host_view(g: &Graph, a: &Alloy) -> (Graph, Vec<Vertex>) {
    let sub = g.induced_unchecked(a.vertex_set().as_slice());
    (sub.graph, sub.vertices)
}

fn require_host_local_chi(g: &Graph, a: &Alloy, params: &AlloyParams) -> Result<()> {
    if params.strict() {
        require_local_chi(&host_view(g, a).0, params)?;
    }
    Ok(())
}

/// Induction when some `S_r`, `1 <= r <= t-2`, has an edge `ab`: close a
/// chordless cycle through `a`, `b` and their deepest common ancestor `z`,
/// climb from a private upper neighbor of `a` to `S_{t-1}`, and finish with
/// the path lemma inside `S_t`. `a` (the reduction) and `strat` must come
/// from [`reduce_alloy`]. Strict mode requires potential `> 2(mα + β)` and
/// local χ at most `α`.
pub fn alloy_induction_easy(g: &Graph, a: &Alloy, strat: &Stratification, params: &AlloyParams) -> Result<Induction> {
    check_induction_input(g, a, strat, params)?;
    let t = strat.t();
    let r = strat
        .first_unstable(g)
        .filter(|_| t >= 3)
        .ok_or_else(|| Error::input("easy case needs t >= 3 and an edge in one of S_1..S_{t-2}"))?;
    require_above(a.potential, 2 * (params.m * params.alpha + params.beta), "alloy potential", params)?;
    require_host_local_chi(g, a, params)?;
    let layer = &strat.layers[r];
    let (ea, eb) = layer
        .iter()
        .find_map(|u| layer.iter().find(|&v| v > u && g.has_edge(u, v)).map(|v| (u, v)))
        .expect("layer has an edge");
    let (z, pa, pb) = deepest_common_ancestor(strat, g, ea, eb, r)
        .ok_or_else(|| Error::violation(format!("no common ancestor of {ea} and {eb}")))?;
    let q = monotonic_path(strat, g, a.x, z).expect("every layer vertex descends to x");
    let s_up = strat.layers[r + 1]
        .iter()
        .find(|&v| g.has_edge(v, ea) && !g.has_edge(v, eb))
        .ok_or_else(|| Error::violation(format!("no vertex of S_{} sees {ea} but not {eb}", r + 1)))?;
    let mut climb = vec![s_up];
    for i in r + 2..t {
        let cur = *climb.last().expect("nonempty");
        let up = strat.layers[i]
            .iter()
            .find(|&v| g.has_edge(cur, v))
            .ok_or_else(|| Error::violation(format!("vertex {cur} has no neighbor in S_{i}")))?;
        climb.push(up);
    }
    let s_top = *climb.last().expect("nonempty");
    let lemma = path_lemma(g, s_top, strat.top(), params.m, &params.relaxed())?;
    if params.strict() {
        let chi_top = exact_chi_of(g, strat.top(), params.budget, "top layer")?;
        let bad =
            check_path_lemma(g, s_top, strat.top(), &lemma, Some((chi_top, params.m * params.alpha)), params.budget)?;
        if !bad.is_empty() {
            return Err(Error::violation(bad.join("; ")));
        }
    }
    let mut necklace = a.necklace.union(&q.vertex_set()).union(&pa.vertex_set()).union(&pb.vertex_set());
    for v in climb.iter().chain(&lemma.path) {
        necklace.insert(*v);
    }
    let out = Alloy {
        x0: a.x0,
        x: lemma.end(s_top),
        necklace,
        attached: lemma.rest,
        m: a.m,
        n: a.n + 1,
        potential: 0,
        witness: None,
    };
    let alloy = finish(g, out, params, "easy induction case")?;
    Ok(Induction { alloy, branch: InductionBranch::Easy { r }, notes: Vec::new() })
}

/// Shortest path inside `within` from `start` to the first vertex with a
/// neighbor in `target`, smallest ids first.
fn shortest_escape(g: &Graph, start: Vertex, within: &VertexSet, target: &VertexSet) -> Option<Vec<Vertex>> {
    let sees = |v: Vertex| g.neighbors(v).iter().any(|&w| target.contains(w));
    let mut parent = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::from([start]);
    parent[start] = start;
    while let Some(v) = queue.pop_front() {
        if sees(v) {
            let mut path = vec![v];
            let mut cur = v;
            while cur != start {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(v) {
            if within.contains(w) && parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Induction when `S_1 .. S_{t-2}` are all stable. From `a ∈ S_{t-1}` the
/// path lemma gives `a - u_0' - u_1'` and a set `C`; `b ∈ S_{t-1}` sees
/// `u_1'`; `U` is the largest-χ component of `C` off `b`'s neighborhood. A
/// shortest escape path from `u_0'` to `U` is turned into a path of type one
/// or two, the path lemma runs into `U`, and the necklace part closes
/// through `a`, `b` or `u_1'`. Strict mode requires potential
/// `> 2((m+3)α + β)` and local χ at most `α`.
pub fn alloy_induction_hard(g: &Graph, a: &Alloy, strat: &Stratification, params: &AlloyParams) -> Result<Induction> {
    check_induction_input(g, a, strat, params)?;
    let t = strat.t();
    if strat.first_unstable(g).is_some() {
        return Err(Error::input("hard case needs S_1..S_{t-2} stable"));
    }
    require_above(a.potential, 2 * ((params.m + 3) * params.alpha + params.beta), "alloy potential", params)?;
    require_host_local_chi(g, a, params)?;
    let relaxed = params.relaxed();
    let fail = |msg: String| if params.strict() { Error::violation(msg) } else { Error::input(msg) };
    if t < 2 {
        return Err(fail(format!("hard case needs t >= 2, got {t}")));
    }
    let top = strat.top().clone();
    let below = &strat.layers[t - 1];
    let va = below
        .iter()
        .find(|&v| g.neighbors(v).iter().any(|&w| top.contains(w)))
        .expect("every lower vertex has an upper neighbor");
    let nb_a = g.neighbor_set(va).intersection(&top);
    let first = path_lemma(g, va, &top, 2, &relaxed)?;
    let (u0p, u1p) = (first.path[0], first.path[1]);
    let c = first.rest;
    let vb = below
        .iter()
        .find(|&v| g.has_edge(v, u1p))
        .ok_or_else(|| fail(format!("no vertex of S_{} sees {u1p}", t - 1)))?;
    let nb_b = g.neighbor_set(vb).intersection(&top);
    let c_off_b = c.difference(&nb_b);
    if c_off_b.is_empty() {
        return Err(fail(format!("C is inside the neighborhood of b = {vb}")));
    }
    let (u, _) = max_chi_component(g, &c_off_b, params.budget)?;
    if params.strict() {
        let chi_u = exact_chi_of(g, &u, params.budget, "U")?;
        require_above(chi_u, params.m * params.alpha + params.beta, "χ(U)", params)
            .map_err(|e| Error::violation(e.to_string()))?;
    }
    let ab = nb_a.union(&nb_b);
    let outside_u = top.difference(&u);
    let walk = shortest_escape(g, u0p, &outside_u, &u).ok_or_else(|| fail("no path from u_0' to U".into()))?;

    // Turn the escape walk into a path of type one or two.
    enum Escape {
        One(Vec<Vertex>),
        Two(Vec<Vertex>),
    }
    let hits: Vec<usize> = (0..walk.len()).filter(|&i| ab.contains(walk[i])).collect();
    let sees_u = |v: Vertex| g.neighbors(v).iter().any(|&w| u.contains(w));
    let escape = if hits.len() >= 2 {
        Escape::One(walk[hits[hits.len() - 2]..].to_vec())
    } else if sees_u(u1p) {
        Escape::One(vec![u0p, u1p])
    } else if let Some(j) = (2..walk.len()).rev().find(|&j| g.has_edge(u1p, walk[j])) {
        let mut p = vec![u0p, u1p];
        p.extend(&walk[j..]);
        Escape::One(p)
    } else if walk.len() >= 2 && !g.has_edge(u1p, walk[1]) {
        let mut p = vec![u1p];
        p.extend(&walk);
        Escape::One(p)
    } else if walk.len() >= 2 {
        Escape::Two(walk.clone())
    } else {
        return Err(fail(format!("u_0' = {u0p} already sees U")));
    };

    let path = match &escape {
        Escape::One(p) | Escape::Two(p) => p.clone(),
    };
    let up = *path.last().expect("nonempty");
    let lemma = path_lemma(g, up, &u, params.m, &relaxed)?;
    let mut tail: VertexSet = path.iter().copied().collect();
    for &v in &lemma.path {
        tail.insert(v);
    }
    let mut notes = Vec::new();
    let (necklace, branch) = match escape {
        Escape::Two(_) => {
            let p = monotonic_path(strat, g, a.x, va).expect("descends to x");
            let mut nk = a.necklace.union(&p.vertex_set()).union(&tail);
            nk.insert(u1p);
            (nk, InductionBranch::HardTypeTwo)
        }
        Escape::One(p) => {
            let l = (1..p.len()).find(|&i| ab.contains(p[i])).expect("type one path has a second hit");
            let (w0, wl) = (p[0], p[l]);
            let common = [va, vb].into_iter().find(|&d| g.has_edge(d, w0) && g.has_edge(d, wl));
            if let Some(d) = common {
                let mp = monotonic_path(strat, g, a.x, d).expect("descends to x");
                (a.necklace.union(&mp.vertex_set()).union(&tail), InductionBranch::HardCommonNeighbor { d })
            } else {
                let (z, pa, pb) = deepest_common_ancestor(strat, g, va, vb, t - 1)
                    .ok_or_else(|| fail(format!("no common ancestor of {va} and {vb}")))?;
                let q = monotonic_path(strat, g, z, a.x).expect("descends to x");
                let frame = q.vertex_set().union(&pa.vertex_set()).union(&pb.vertex_set());
                let adjacent = g.has_edge(va, vb);
                let mut nk = a.necklace.union(&frame);
                if adjacent {
                    for &v in &p[l..] {
                        nk.insert(v);
                    }
                    for &v in &lemma.path {
                        nk.insert(v);
                    }
                } else {
                    nk = nk.union(&tail);
                    notes.push("non-adjacent a, b: the old necklace part is kept in N'".into());
                }
                (nk, InductionBranch::HardSplit { adjacent })
            }
        }
    };
    let out = Alloy {
        x0: a.x0,
        x: lemma.end(up),
        necklace,
        attached: lemma.rest,
        m: a.m,
        n: a.n + 1,
        potential: 0,
        witness: None,
    };
    let alloy = finish(g, out, params, "hard induction case")?;
    Ok(Induction { alloy, branch, notes })
}

/// One induction round: reduce, then the easy case if some `S_1..S_{t-2}`
/// has an edge (and `t >= 3`), else the hard case.
pub fn alloy_induction(g: &Graph, a: &Alloy, params: &AlloyParams) -> Result<Induction> {
    let reduce_beta = (params.m + 3) * params.alpha + params.beta;
    let (reduced, strat) = reduce_alloy(g, a, &params.with_beta(reduce_beta))?;
    if strat.t() >= 3 && strat.first_unstable(g).is_some() {
        alloy_induction_easy(g, &reduced, &strat, params)
    } else {
        alloy_induction_hard(g, &reduced, &strat, params)
    }
}

/// `β_j = β + (2 + 4 + .. + 2^{n-j}) ((m+3)α + β)` for `j = 0..=n`.
pub fn beta_schedule(m: usize, n: usize, alpha: usize, beta: usize) -> Result<Vec<usize>> {
    let unit = (m as u128 + 3) * alpha as u128 + beta as u128;
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        // 2 + 4 + .. + 2^{n-j} = 2^{n-j+1} - 2
        let sum = 1u128.checked_shl((n - j + 1) as u32).map(|p| p - 2);
        let v = sum.and_then(|s| s.checked_mul(unit)).and_then(|x| x.checked_add(beta as u128));
        let v = v.and_then(|x| usize::try_from(x).ok()).ok_or_else(|| Error::input("β schedule overflows"))?;
        out.push(v);
    }
    for j in 0..n {
        let need = 2 * ((m + 3) * alpha + out[j + 1]);
        if out[j] < need {
            return Err(Error::violation(format!("β_{j} = {} < 2((m+3)α + β_{}) = {need}", out[j], j + 1)));
        }
    }
    Ok(out)
}

/// `2^{n+1} ((m+3)α + β)`, the χ the full extraction needs to exceed.
pub fn extraction_threshold(m: usize, n: usize, alpha: usize, beta: usize) -> Result<usize> {
    let unit = (m as u128 + 3) * alpha as u128 + beta as u128;
    1u128
        .checked_shl(n as u32 + 1)
        .and_then(|p| p.checked_mul(unit))
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::input("extraction threshold overflows"))
}

/// The alloy produced at each round of [`extract_alloy`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub rounds: Vec<Alloy>,
    pub branches: Vec<InductionBranch>,
    pub betas: Vec<usize>,
}

impl Extraction {
    pub fn alloy(&self) -> &Alloy {
        self.rounds.last().expect("at least the base round")
    }
}

/// Builds an `(m)_n`-alloy with potential above `params.beta` rooted at
/// `x0`: the base case at `β_0`, then `n` induction rounds down the `β`
/// schedule. Strict mode requires a connected graph with local χ at most
/// `α` and `χ(G) > 2^{n+1}((m+3)α + β)`.
pub fn extract_alloy(g: &Graph, x0: Vertex, n: usize, params: &AlloyParams) -> Result<Extraction> {
    params.validate()?;
    g.check_vertex(x0)?;
    let betas = beta_schedule(params.m, n, params.alpha, params.beta)?;
    if params.strict() {
        let need = extraction_threshold(params.m, n, params.alpha, params.beta)?;
        let chi = exact_chi_of(g, &VertexSet::full(g.n()), params.budget, "host graph")?;
        require_above(chi, need, "χ(G)", params)?;
    }
    let mut rounds = vec![alloy_base_case(g, x0, &params.with_beta(betas[0]))?];
    let mut branches = Vec::new();
    for &beta in &betas[1..] {
        let step = alloy_induction(g, rounds.last().expect("nonempty"), &params.with_beta(beta))?;
        rounds.push(step.alloy);
        branches.push(step.branch);
    }
    Ok(Extraction { rounds, branches, betas })
}
