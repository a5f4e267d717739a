//! Graphs with no induced paw subdivision: every component is a tree, a
//! chordless cycle or a complete multipartite graph. Recognition follows
//! that characterization directly and coloring is optimal per component.

use crate::error::{Error, Result};
use crate::exact::Coloring;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::subdivision::{contains_induced_subdivision, Pattern, SubdivisionWitness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Tree,
    /// Cycle length.
    ChordlessCycle(usize),
    /// The stable parts, ordered by smallest vertex.
    CompleteMultipartite(Vec<VertexSet>),
    /// The witness is omitted when the component exceeds the oracle's size
    /// guard.
    NotPawStarFree(Option<Box<SubdivisionWitness>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentClass {
    pub vertices: VertexSet,
    pub kind: ComponentKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PawClassification {
    /// One entry per component, ordered by smallest vertex.
    pub components: Vec<ComponentClass>,
}

impl PawClassification {
    pub fn is_paw_star_free(&self) -> bool {
        self.offending().is_none()
    }

    /// The first component that is none of the three shapes.
    pub fn offending(&self) -> Option<&ComponentClass> {
        self.components.iter().find(|c| matches!(c.kind, ComponentKind::NotPawStarFree(_)))
    }
}

impl ComponentKind {
    /// Part sizes of a complete multipartite component.
    pub fn part_sizes(&self) -> Option<Vec<usize>> {
        match self {
            ComponentKind::CompleteMultipartite(parts) => Some(parts.iter().map(VertexSet::len).collect()),
            _ => None,
        }
    }
}

/// The best χ-bound for the class: `f(2) = 3`, `f(w) = w` otherwise.
pub fn paw_bound(omega: usize) -> usize {
    if omega == 2 {
        3
    } else {
        omega
    }
}

/// Stable parts of `g[comp]` if it is complete multipartite: the components
/// of its complement must all be cliques there.
fn multipartite_parts(g: &Graph, comp: &VertexSet) -> Option<Vec<VertexSet>> {
    let sub = g.induced_unchecked(comp.as_slice());
    let co = sub.graph.complement();
    let mut parts = Vec::new();
    for part in co.components() {
        if !co.is_clique(&part) {
            return None;
        }
        parts.push(sub.set_to_host(part.as_slice()));
    }
    Some(parts)
}

fn classify_component(g: &Graph, comp: VertexSet) -> Result<ComponentClass> {
    let size = comp.len();
    let edges: usize = comp.iter().map(|v| g.count_neighbors_in(v, &comp)).sum::<usize>() / 2;
    let kind = if edges + 1 == size {
        ComponentKind::Tree
    } else if let Some(parts) = multipartite_parts(g, &comp) {
        ComponentKind::CompleteMultipartite(parts)
    } else if comp.iter().all(|v| g.count_neighbors_in(v, &comp) == 2) {
        ComponentKind::ChordlessCycle(size)
    } else {
        let sub = g.induced_unchecked(comp.as_slice());
        match contains_induced_subdivision(&sub.graph, &Pattern::paw()) {
            Ok(Some(w)) => ComponentKind::NotPawStarFree(Some(Box::new(w.relabel(&sub.vertices)))),
            Err(Error::SizeGuard { .. }) => ComponentKind::NotPawStarFree(None),
            Ok(None) => {
                return Err(Error::violation(format!(
                    "component {comp:?} is neither a tree, a cycle nor complete multipartite, \
                     yet contains no paw subdivision"
                )))
            }
            Err(e) => return Err(e),
        }
    };
    Ok(ComponentClass { vertices: comp, kind })
}

/// Classifies every component. Complete multipartite is tested before
/// chordless cycle, so `K3` and `C4` report as multipartite; single vertices
/// and edges report as trees.
pub fn classify_paw(g: &Graph) -> Result<PawClassification> {
    let components = g.components().into_iter().map(|c| classify_component(g, c)).collect::<Result<_>>()?;
    Ok(PawClassification { components })
}

/// An optimal coloring of a paw*-free graph; errors with the offending
/// witness otherwise.
pub fn color_paw_star_free(g: &Graph) -> Result<Coloring> {
    let cls = classify_paw(g)?;
    if let Some(bad) = cls.offending() {
        let witness = match &bad.kind {
            ComponentKind::NotPawStarFree(w) => w.clone(),
            _ => None,
        };
        return Err(Error::NotInClass { class: "paw*".into(), witness });
    }
    let mut colors = vec![0usize; g.n()];
    for c in &cls.components {
        match &c.kind {
            ComponentKind::Tree => {
                let root = c.vertices.first().expect("components are nonempty");
                let bfs = g.bfs_layers(root, &c.vertices)?;
                for (i, layer) in bfs.layers.iter().enumerate() {
                    for v in layer.iter() {
                        colors[v] = i % 2;
                    }
                }
            }
            ComponentKind::ChordlessCycle(len) => {
                let order = cycle_order(g, &c.vertices);
                for (i, &v) in order.iter().enumerate() {
                    colors[v] = if len % 2 == 1 && i + 1 == *len { 2 } else { i % 2 };
                }
            }
            ComponentKind::CompleteMultipartite(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    for v in p.iter() {
                        colors[v] = i;
                    }
                }
            }
            ComponentKind::NotPawStarFree(_) => unreachable!("rejected above"),
        }
    }
    Ok(Coloring::new(colors))
}

/// Vertices of a chordless cycle in cyclic order from its smallest vertex.
fn cycle_order(g: &Graph, cyc: &VertexSet) -> Vec<Vertex> {
    let start = cyc.first().expect("cycles are nonempty");
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.neighbors(start)[0];
    while cur != start {
        order.push(cur);
        let nb = g.neighbors(cur);
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    order
}
