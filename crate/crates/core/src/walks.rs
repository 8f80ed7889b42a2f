//! Maximal circuit steps, walk verification and sign-compatible decompositions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::circuits::{build_circuit_model, is_circuit, Circuit};
use crate::error::{check_len, Error, Result};
use crate::length::{Length, Norm};
use crate::lp::{LpStatus, Sense};
use crate::matrix::RationalMatrix;
use crate::polyhedron::Polyhedron;
use crate::rational::{add_scaled, dot, format_vector, is_zero_vec, parse_rational, parse_vector, sub, Rational};

/// Result of moving from a point along a direction as far as the polyhedron allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Step { length: Rational, point: Vec<Rational> },
    /// A row with `B_i g > 0` is already tight, so only `length = 0` is feasible.
    NotAStep,
    Unbounded,
}

impl StepOutcome {
    pub fn length(&self) -> Option<&Rational> {
        match self {
            StepOutcome::Step { length, .. } => Some(length),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            StepOutcome::Step { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// Ratio test along `g` from `x`. Neither membership nor `A g = 0` is checked.
pub fn max_step_unchecked(p: &Polyhedron, x: &[Rational], g: &[Rational]) -> StepOutcome {
    let mut best: Option<Rational> = None;
    for i in 0..p.num_ineq() {
        let bg = dot(p.ineq().row(i), g);
        if bg.is_positive() {
            let ratio = p.slack(i, x) / bg;
            if best.as_ref().is_none_or(|b| ratio < *b) {
                best = Some(ratio);
            }
        }
    }
    match best {
        None => StepOutcome::Unbounded,
        Some(length) if length.is_zero() => StepOutcome::NotAStep,
        Some(length) => {
            let point = add_scaled(x, &length, g);
            StepOutcome::Step { length, point }
        }
    }
}

/// Maximal step from `x` along the circuit `g`.
pub fn max_step(p: &Polyhedron, x: &[Rational], g: &Circuit) -> Result<StepOutcome> {
    check_len(p.dim(), g.len())?;
    p.require_member(x)?;
    if !is_circuit(p, g.entries()) {
        return Err(Error::NotACircuit(g.to_string()));
    }
    Ok(max_step_unchecked(p, x, &g.to_rationals()))
}

/// `(B_i u)(B_i v) >= 0` for every row `i`.
pub fn is_sign_compatible(b: &RationalMatrix, u: &[Rational], v: &[Rational]) -> bool {
    (0..b.rows()).all(|i| !(dot(b.row(i), u) * dot(b.row(i), v)).is_negative())
}

/// One step of a walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkStep {
    pub circuit: Circuit,
    pub length: Rational,
}

impl WalkStep {
    pub fn new(circuit: Circuit, length: Rational) -> Self {
        Self { circuit, length }
    }
}

/// A start point and an ordered list of steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitWalk {
    pub start: Vec<Rational>,
    pub steps: Vec<WalkStep>,
}

impl CircuitWalk {
    pub fn new(start: Vec<Rational>, steps: Vec<WalkStep>) -> Self {
        Self { start, steps }
    }

    /// Points after each step, starting with `start`.
    pub fn points(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![self.start.clone()];
        for s in &self.steps {
            let next = add_scaled(out.last().expect("nonempty"), &s.length, &s.circuit.to_rationals());
            out.push(next);
        }
        out
    }

    pub fn endpoint(&self) -> Vec<Rational> {
        self.points().pop().expect("nonempty")
    }

    /// `from (x)` / `to (y)` headers followed by one `g1 ... gn * lambda` line per step.
    pub fn to_text(&self, target: &[Rational]) -> String {
        let mut out = format!("from {}\nto {}\n", format_vector(&self.start), format_vector(target));
        for s in &self.steps {
            let g: Vec<String> = s.circuit.entries().iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{} * {}\n", g.join(" "), s.length));
        }
        out
    }

    /// Parses the format written by [`CircuitWalk::to_text`]; returns the walk and its target.
    pub fn parse(text: &str) -> Result<(Self, Vec<Rational>)> {
        let mut start = None;
        let mut target = None;
        let mut steps = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| Error::Parse { line, message };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix("from") {
                start = Some(parse_vector(rest).map_err(err)?);
            } else if let Some(rest) = body.strip_prefix("to") {
                target = Some(parse_vector(rest).map_err(err)?);
            } else {
                let (dir, len) = body
                    .split_once('*')
                    .ok_or_else(|| err("expected 'g1 ... gn * lambda'".into()))?;
                let entries = dir
                    .split_whitespace()
                    .map(|t| t.parse::<BigInt>().map_err(|_| err(format!("non-integer direction entry '{t}'"))))
                    .collect::<Result<Vec<_>>>()?;
                let length = parse_rational(len).map_err(err)?;
                steps.push(WalkStep::new(Circuit::new(entries), length));
            }
        }
        let missing = |what: &str| Error::Parse { line: 0, message: format!("missing '{what}' header") };
        let start = start.ok_or_else(|| missing("from"))?;
        let target = target.ok_or_else(|| missing("to"))?;
        for (k, s) in steps.iter().enumerate() {
            check_len(start.len(), s.circuit.len()).map_err(|_| Error::Parse {
                line: 0,
                message: format!("step {} has {} entries, expected {}", k + 1, s.circuit.len(), start.len()),
            })?;
        }
        check_len(start.len(), target.len())?;
        Ok((Self { start, steps }, target))
    }
}

/// The numbered conditions a circuit walk must satisfy, plus optional sign-compatibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Requirement {
    CircuitDirection = 1,
    PositiveStepLength = 2,
    Reachability = 3,
    Feasibility = 4,
    Maximality = 5,
    SignCompatibility = 6,
}

impl Requirement {
    /// The label printed in verdicts: `1`..`5`, or `SC`.
    pub fn label(self) -> String {
        match self {
            Requirement::SignCompatibility => "SC".into(),
            r => (r as u8).to_string(),
        }
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Outcome of [`verify_walk`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkVerdict {
    Accept,
    /// `step` is 1-based; `None` for whole-walk conditions. A start point
    /// outside the polyhedron is reported as a feasibility failure at step 0.
    Reject { requirement: Requirement, step: Option<usize> },
}

impl WalkVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, WalkVerdict::Accept)
    }

    pub fn requirement(&self) -> Option<Requirement> {
        match self {
            WalkVerdict::Accept => None,
            WalkVerdict::Reject { requirement, .. } => Some(*requirement),
        }
    }
}

impl fmt::Display for WalkVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkVerdict::Accept => write!(f, "ACCEPT"),
            WalkVerdict::Reject { requirement, step: Some(k) } => write!(f, "REJECT {requirement} step {k}"),
            WalkVerdict::Reject { requirement, step: None } => write!(f, "REJECT {requirement}"),
        }
    }
}

/// Checks that `walk` is a maximal circuit walk from `walk.start` to `target`.
///
/// Steps are checked in order; for each step the direction, the length, the
/// feasibility of the new point and maximality are tested in that order.
/// Reachability is checked after all steps, then sign-compatibility if requested.
pub fn verify_walk(p: &Polyhedron, walk: &CircuitWalk, target: &[Rational], require_sign_compatible: bool) -> Result<WalkVerdict> {
    check_len(p.dim(), walk.start.len())?;
    check_len(p.dim(), target.len())?;
    let reject = |requirement, step| Ok(WalkVerdict::Reject { requirement, step });
    if !p.contains(&walk.start)? {
        return reject(Requirement::Feasibility, Some(0));
    }
    let mut current = walk.start.clone();
    for (k, s) in walk.steps.iter().enumerate() {
        let step = Some(k + 1);
        if s.circuit.len() != p.dim() || !is_circuit(p, s.circuit.entries()) {
            return reject(Requirement::CircuitDirection, step);
        }
        if !s.length.is_positive() {
            return reject(Requirement::PositiveStepLength, step);
        }
        let g = s.circuit.to_rationals();
        let next = add_scaled(&current, &s.length, &g);
        if !p.contains(&next)? {
            return reject(Requirement::Feasibility, step);
        }
        match max_step_unchecked(p, &current, &g) {
            StepOutcome::Step { length, .. } if length == s.length => {}
            _ => return reject(Requirement::Maximality, step),
        }
        current = next;
    }
    if current != target {
        return reject(Requirement::Reachability, None);
    }
    if require_sign_compatible {
        let dirs: Vec<Vec<Rational>> = walk.steps.iter().map(|s| s.circuit.to_rationals()).collect();
        for i in 0..dirs.len() {
            for j in i + 1..dirs.len() {
                if !is_sign_compatible(p.ineq(), &dirs[i], &dirs[j]) {
                    return reject(Requirement::SignCompatibility, Some(j + 1));
                }
            }
        }
    }
    Ok(WalkVerdict::Accept)
}

/// `sum ||lambda_i g_i||` under `norm`.
pub fn walk_length(walk: &CircuitWalk, norm: Norm) -> Length {
    walk.steps
        .iter()
        .fold(Length::zero(), |acc, s| acc.plus(&norm.of(s.circuit.entries()).scaled(&s.length.abs())))
}

/// A conformal sum of circuits equal to `target_difference`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub steps: Vec<WalkStep>,
    pub target_difference: Vec<Rational>,
}

impl Decomposition {
    /// Sum of the steps equals the target, lengths are positive, and all
    /// directions are pairwise sign-compatible and compatible with the target.
    pub fn is_conformal(&self, b: &RationalMatrix) -> bool {
        let dirs: Vec<Vec<Rational>> = self.steps.iter().map(|s| s.circuit.to_rationals()).collect();
        let mut total = vec![Rational::zero(); self.target_difference.len()];
        for (s, g) in self.steps.iter().zip(&dirs) {
            if !s.length.is_positive() || g.len() != total.len() {
                return false;
            }
            total = add_scaled(&total, &s.length, g);
        }
        total == self.target_difference
            && dirs.iter().all(|g| is_sign_compatible(b, g, &self.target_difference))
            && dirs
                .iter()
                .enumerate()
                .all(|(i, g)| dirs[i + 1..].iter().all(|h| is_sign_compatible(b, g, h)))
    }
}

/// Peels circuits off `y - x` until nothing remains.
///
/// Each circuit is a vertex of the face of the circuit model matching the
/// sign pattern of the residual `u`, chosen by maximising `u^T g`; its length
/// is the largest that keeps the residual sign-compatible with `u`. Every step
/// zeroes at least one more row of `B u`, so at most `n - rank(A)` steps occur.
pub fn greedy_sc_decomposition(p: &Polyhedron, x: &[Rational], y: &[Rational]) -> Result<Decomposition> {
    p.require_member(x)?;
    p.require_member(y)?;
    let target_difference = sub(y, x);
    let model = build_circuit_model(p);
    let mut residual = target_difference.clone();
    let mut steps = Vec::new();
    while !is_zero_vec(&residual) {
        let bu: Vec<Rational> = (0..p.num_ineq()).map(|j| dot(p.ineq().row(j), &residual)).collect();
        let mut face = model.clone();
        for (j, v) in bu.iter().enumerate() {
            if !v.is_positive() {
                face.fix_plus(j);
            }
            if !v.is_negative() {
                face.fix_minus(j);
            }
        }
        let mut objective = residual.clone();
        objective.resize(face.model().dim(), Rational::zero());
        let lp = face.optimize(&objective, Sense::Maximize)?;
        if lp.status != LpStatus::Optimal {
            return Err(Error::InvalidInput("difference has no circuit decomposition (lineality direction)".into()));
        }
        let vertex = lp.basic_solution.expect("optimal");
        let g = Circuit::new(crate::rational::normalize_coprime(face.x_part(&vertex))?);
        let gq = g.to_rationals();
        let mut length: Option<Rational> = None;
        for (j, v) in bu.iter().enumerate() {
            let bg = dot(p.ineq().row(j), &gq);
            if !bg.is_zero() {
                let ratio = v / &bg;
                if length.as_ref().is_none_or(|l| ratio < *l) {
                    length = Some(ratio);
                }
            }
        }
        let length = length.ok_or_else(|| Error::InvalidInput("circuit with B g = 0".into()))?;
        residual = add_scaled(&residual, &-length.clone(), &gq);
        steps.push(WalkStep::new(g, length));
    }
    Ok(Decomposition { steps, target_difference })
}
