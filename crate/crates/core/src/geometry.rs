//! Inner cones, the symmetric inner cone condition and `(n,d)`-parallelotopes.
//!
//! All routines enumerate vertices and are meant for small polytopes.

use std::collections::BTreeSet;

use crate::circuits::{for_each_circuit, Circuit};
use crate::error::{Error, Result};
use crate::limits::EnumLimits;
use crate::polyhedron::Polyhedron;
use crate::rational::{normalize_coprime, sub, Rational};
use crate::walks::{max_step_unchecked, CircuitWalk, StepOutcome, WalkStep};

/// Edge directions at a vertex, coprime and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerCone {
    pub apex: Vec<Rational>,
    pub generators: Vec<Circuit>,
}

impl InnerCone {
    /// Whether `other` is generated by the negated generators of `self`.
    pub fn is_negation_of(&self, other: &InnerCone) -> bool {
        let negated: BTreeSet<Circuit> = self.generators.iter().map(Circuit::negated).collect();
        negated == other.generators.iter().cloned().collect()
    }
}

/// Vertices of `p` together with adjacency, computed once per polytope.
struct VertexGraph<'a> {
    p: &'a Polyhedron,
    vertices: Vec<Vec<Rational>>,
    tight: Vec<BTreeSet<usize>>,
}

impl<'a> VertexGraph<'a> {
    fn new(p: &'a Polyhedron, limits: &EnumLimits) -> Result<Self> {
        let vertices = p.enumerate_vertices(limits)?;
        let tight = vertices.iter().map(|v| p.tight_rows_unchecked(v).into_iter().collect()).collect();
        Ok(Self { p, vertices, tight })
    }

    fn index_of(&self, v: &[Rational]) -> Result<usize> {
        self.vertices.iter().position(|x| x == v).ok_or(Error::NotAVertex)
    }

    fn common(&self, a: usize, b: usize) -> Vec<usize> {
        self.tight[a].intersection(&self.tight[b]).copied().collect()
    }

    /// Two vertices are adjacent when their common tight rows have rank `n - 1`.
    fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.p.rank_with_rows(&self.common(a, b)) + 1 == self.p.dim()
    }

    /// Dimension of the smallest face containing both vertices.
    fn face_dimension(&self, a: usize, b: usize) -> usize {
        self.p.dim() - self.p.rank_with_rows(&self.common(a, b))
    }

    /// Inner cone at `a`, restricted to neighbours on which all `keep` rows are tight.
    fn cone(&self, a: usize, keep: &[usize]) -> Result<InnerCone> {
        let mut generators = BTreeSet::new();
        for b in 0..self.vertices.len() {
            if self.adjacent(a, b) && keep.iter().all(|i| self.tight[b].contains(i)) {
                generators.insert(Circuit::new(normalize_coprime(&sub(&self.vertices[b], &self.vertices[a]))?));
            }
        }
        Ok(InnerCone { apex: self.vertices[a].clone(), generators: generators.into_iter().collect() })
    }

    fn symmetric(&self, a: usize, b: usize) -> Result<bool> {
        let keep = self.common(a, b);
        Ok(self.cone(a, &keep)?.is_negation_of(&self.cone(b, &keep)?))
    }
}

pub fn inner_cone(p: &Polyhedron, v: &[Rational], limits: &EnumLimits) -> Result<InnerCone> {
    p.require_vertex(v)?;
    let graph = VertexGraph::new(p, limits)?;
    graph.cone(graph.index_of(v)?, &[])
}

/// Inner cone at `v` within the smallest face containing `v` and `w`.
pub fn restricted_inner_cone(p: &Polyhedron, v: &[Rational], w: &[Rational], limits: &EnumLimits) -> Result<InnerCone> {
    p.require_vertex(v)?;
    p.require_vertex(w)?;
    let graph = VertexGraph::new(p, limits)?;
    let (a, b) = (graph.index_of(v)?, graph.index_of(w)?);
    graph.cone(a, &graph.common(a, b))
}

/// Rejects polytopes with a vertex on more than `dim` distinct rows.
fn require_simple(p: &Polyhedron, vertices: &[Vec<Rational>]) -> Result<()> {
    let reduced = p.without_duplicate_rows();
    let dim = p.dim() - p.eq_rank();
    if vertices.iter().all(|v| reduced.tight_rows_unchecked(v).len() == dim) {
        Ok(())
    } else {
        Err(Error::NotSimple)
    }
}

/// Whether the inner cones of `v` and `w`, restricted to their smallest common
/// face, are negatives of each other.
pub fn check_symmetric_inner_cone(p: &Polyhedron, v: &[Rational], w: &[Rational], limits: &EnumLimits) -> Result<bool> {
    p.require_vertex(v)?;
    p.require_vertex(w)?;
    let graph = VertexGraph::new(p, limits)?;
    require_simple(p, &graph.vertices)?;
    graph.symmetric(graph.index_of(v)?, graph.index_of(w)?)
}

/// Verdict of [`is_nd_parallelotope`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParallelotopeReport {
    pub holds: bool,
    /// Largest dimension of a smallest face spanned by two vertices.
    pub d_star: usize,
}

/// Tests the symmetric inner cone condition on every vertex pair of a simple polytope.
pub fn is_nd_parallelotope(p: &Polyhedron, limits: &EnumLimits) -> Result<ParallelotopeReport> {
    let graph = VertexGraph::new(p, limits)?;
    require_simple(p, &graph.vertices)?;
    let mut holds = true;
    let mut d_star = 0;
    for a in 0..graph.vertices.len() {
        for b in a + 1..graph.vertices.len() {
            d_star = d_star.max(graph.face_dimension(a, b));
            if holds && !graph.symmetric(a, b)? {
                holds = false;
            }
        }
    }
    Ok(ParallelotopeReport { holds, d_star })
}

/// A one-step maximal circuit walk from a vertex that does not follow an edge,
/// or `None` when every maximal step from every vertex ends at an adjacent vertex.
/// In the latter case every maximal circuit walk starting at a vertex is an edge walk.
pub fn non_edge_maximal_walk(p: &Polyhedron, limits: &EnumLimits) -> Result<Option<CircuitWalk>> {
    let graph = VertexGraph::new(p, limits)?;
    let mut circuits = Vec::new();
    for_each_circuit(p, limits, |g| {
        circuits.push(g.negated());
        circuits.push(g);
    })?;
    for (a, v) in graph.vertices.iter().enumerate() {
        for g in &circuits {
            let StepOutcome::Step { length, point } = max_step_unchecked(p, v, &g.to_rationals()) else {
                continue;
            };
            let along_edge = graph.vertices.iter().position(|x| *x == point).is_some_and(|b| graph.adjacent(a, b));
            if !along_edge {
                return Ok(Some(CircuitWalk::new(v.clone(), vec![WalkStep::new(g.clone(), length)])));
            }
        }
    }
    Ok(None)
}
