//! Single-step searches for totally unimodular polyhedra via the circuit model.
//!
//! Each search fixes `y+`/`y-` coordinates of the model and maximises one
//! `y+(j) = B_j g` by linear programming; a positive optimum is a model vertex
//! whose `x` part is the wanted circuit. Circuits of TU polyhedra have entries
//! in `{0, 1, -1}`, which is what makes a single LP per row sufficient.

use num_traits::{Signed, Zero};

use crate::circuits::{build_circuit_model, build_sc_face, model_vertex_to_circuit, Circuit, CircuitModel};
use crate::error::{check_len, Error, Result};
use crate::limits::EnumLimits;
use crate::lp::{LpStatus, Sense};
use crate::polyhedron::{is_totally_unimodular, Polyhedron};
use crate::rational::{dot, Rational};

/// Options shared by the TU searches.
#[derive(Debug, Clone, Default)]
pub struct TuOptions {
    /// Run the exhaustive TU check on `(A; B)` first.
    pub check_unimodularity: bool,
    pub limits: EnumLimits,
}

impl TuOptions {
    pub fn checked() -> Self {
        Self { check_unimodularity: true, limits: EnumLimits::default() }
    }
}

/// A circuit found by a TU search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuStep {
    pub circuit: Circuit,
    /// Row of `B` the step reaches, or keeps tight when `kappa` is `None`.
    pub row: usize,
    pub kappa: Option<Rational>,
    /// Rows examined by the main loop.
    pub iterations: usize,
}

fn check_tu(p: &Polyhedron, opts: &TuOptions) -> Result<()> {
    if opts.check_unimodularity && !is_totally_unimodular(&p.stacked(), &opts.limits)? {
        return Err(Error::NotTotallyUnimodular);
    }
    Ok(())
}

/// Maximises `y+(row)` on `face`; returns the circuit when the optimum is positive.
fn circuit_with_positive(face: &CircuitModel, row: usize) -> Result<Option<Circuit>> {
    let mut objective = vec![Rational::zero(); face.model().dim()];
    objective[face.plus_var(row)] = Rational::from_integer(1.into());
    let lp = face.optimize(&objective, Sense::Maximize)?;
    if lp.status != LpStatus::Optimal || !lp.optimal_value.as_ref().is_some_and(Signed::is_positive) {
        return Ok(None);
    }
    model_vertex_to_circuit(face, lp.basic_solution.as_ref().expect("optimal"))
}

/// Circuit with a positive, bounded maximal step from `u` that keeps row `j` tight.
/// `tight` are the rows tight at `u` and must contain `j`.
fn keep_tight_step(base: &CircuitModel, p: &Polyhedron, j: usize, tight: &[usize]) -> Result<Option<Circuit>> {
    for k in (0..p.num_ineq()).filter(|k| !tight.contains(k)) {
        let mut face = base.clone();
        for &i in tight {
            face.fix_plus(i);
        }
        face.fix_minus(j);
        face.fix_minus(k);
        if let Some(g) = circuit_with_positive(&face, k)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// A circuit whose maximal step from `u` ends on row `facet_row`.
pub fn tu_facet_step(p: &Polyhedron, u: &[Rational], facet_row: usize, opts: &TuOptions) -> Result<Option<TuStep>> {
    check_len(p.dim(), u.len())?;
    p.require_member(u)?;
    if facet_row >= p.num_ineq() {
        return Err(Error::InvalidInput(format!("row {facet_row} out of range")));
    }
    check_tu(p, opts)?;
    let base = build_circuit_model(p);
    let slacks = p.slacks(u);
    let j = facet_row;
    if slacks[j].is_zero() {
        let tight = p.tight_rows_unchecked(u);
        let found = keep_tight_step(&base, p, j, &tight)?;
        return Ok(found.map(|circuit| TuStep { circuit, row: j, kappa: None, iterations: 1 }));
    }
    let kappa = slacks[j].clone();
    let mut face = base;
    face.fix_minus(j);
    for (i, s) in slacks.iter().enumerate() {
        if *s < kappa {
            face.fix_plus(i);
        }
    }
    let found = circuit_with_positive(&face, j)?;
    Ok(found.map(|circuit| TuStep { circuit, row: j, kappa: Some(kappa), iterations: 1 }))
}

/// A circuit whose maximal step from the vertex `v` ends on a row tight at the vertex `w`.
///
/// Rows tight at `w` but not at `v` are tried in ascending order. If none
/// works, rows tight at both are tried: any positive step that keeps such a
/// row tight also ends on it.
pub fn tu_incident_facet_step(p: &Polyhedron, v: &[Rational], w: &[Rational], opts: &TuOptions) -> Result<Option<TuStep>> {
    check_len(p.dim(), v.len())?;
    check_len(p.dim(), w.len())?;
    p.require_vertex(v)?;
    p.require_vertex(w)?;
    if v == w {
        return Err(Error::SamePoint);
    }
    check_tu(p, opts)?;
    let base = build_circuit_model(p);
    let slacks = p.slacks(v);
    let mut iterations = 0;
    for j in 0..p.num_ineq() {
        let bv = dot(p.ineq().row(j), v);
        let bw = dot(p.ineq().row(j), w);
        if !(bv < bw && bw == p.ineq_rhs()[j]) {
            continue;
        }
        iterations += 1;
        let kappa = bw - bv;
        let mut face = base.clone();
        face.fix_minus(j);
        for (i, s) in slacks.iter().enumerate() {
            if *s < kappa {
                face.fix_plus(i);
            }
        }
        if let Some(circuit) = circuit_with_positive(&face, j)? {
            return Ok(Some(TuStep { circuit, row: j, kappa: Some(kappa), iterations }));
        }
    }
    let tight_v = p.tight_rows_unchecked(v);
    for &j in tight_v.iter().filter(|&&j| p.slack(j, w).is_zero()) {
        if let Some(circuit) = keep_tight_step(&base, p, j, &tight_v)? {
            return Ok(Some(TuStep { circuit, row: j, kappa: None, iterations }));
        }
    }
    Ok(None)
}

/// A sign-compatible maximal step from the vertex `v` toward the vertex `w`.
///
/// Same loop as [`tu_incident_facet_step`] on the sign-compatible face, with
/// every row whose change `|B_i (w - v)|` is below `kappa` frozen.
pub fn tu_scm_step(p: &Polyhedron, v: &[Rational], w: &[Rational], opts: &TuOptions) -> Result<Option<TuStep>> {
    check_len(p.dim(), v.len())?;
    check_len(p.dim(), w.len())?;
    p.require_vertex(v)?;
    p.require_vertex(w)?;
    if v == w {
        return Ok(None);
    }
    check_tu(p, opts)?;
    let base = build_sc_face(p, v, w)?;
    let change: Vec<Rational> =
        (0..p.num_ineq()).map(|i| (dot(p.ineq().row(i), w) - dot(p.ineq().row(i), v)).abs()).collect();
    let mut iterations = 0;
    for j in 0..p.num_ineq() {
        let bv = dot(p.ineq().row(j), v);
        let bw = dot(p.ineq().row(j), w);
        if !(bv < bw && bw == p.ineq_rhs()[j]) {
            continue;
        }
        iterations += 1;
        let kappa = bw - bv;
        let mut face = base.clone();
        face.fix_minus(j);
        for (i, c) in change.iter().enumerate() {
            if *c < kappa {
                face.fix_plus(i);
                face.fix_minus(i);
            }
        }
        if let Some(circuit) = circuit_with_positive(&face, j)? {
            return Ok(Some(TuStep { circuit, row: j, kappa: Some(kappa), iterations }));
        }
    }
    Ok(None)
}
