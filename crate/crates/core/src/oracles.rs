//! Exhaustive solvers for distance and single-step problems at desk scale.
//!
//! Everything here enumerates the circuits of the polyhedron first, so the
//! enumeration bounds in [`EnumLimits`] apply.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::circuits::{enumerate_circuits, Circuit};
use crate::error::{check_len, Result};
use crate::length::{Length, Norm};
use crate::limits::EnumLimits;
use crate::lp::{lp_solve, LpStatus, Sense};
use crate::matrix::RationalMatrix;
use crate::polyhedron::Polyhedron;
use crate::rational::{add_scaled, dot, sub, Rational};
use crate::walks::{is_sign_compatible, CircuitWalk, WalkStep};

/// Answer to a bounded distance question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceVerdict {
    Dist(usize),
    GreaterThan(usize),
}

impl fmt::Display for DistanceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceVerdict::Dist(r) => write!(f, "DIST {r}"),
            DistanceVerdict::GreaterThan(k) => write!(f, "GT {k}"),
        }
    }
}

/// A verdict together with a witness walk or decomposition when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub verdict: DistanceVerdict,
    pub witness: Option<Vec<WalkStep>>,
}

/// Every circuit in both orientations, with `B g` cached.
#[derive(Debug, Clone)]
pub struct CircuitCatalog {
    circuits: Vec<Circuit>,
    directions: Vec<Vec<Rational>>,
    images: Vec<Vec<Rational>>,
}

impl CircuitCatalog {
    /// Canonical circuits in sorted order, each followed by its negation.
    pub fn new(p: &Polyhedron, limits: &EnumLimits) -> Result<Self> {
        let mut circuits = Vec::new();
        for g in enumerate_circuits(p, limits)? {
            let neg = g.negated();
            circuits.push(g);
            circuits.push(neg);
        }
        let directions: Vec<Vec<Rational>> = circuits.iter().map(Circuit::to_rationals).collect();
        let images = directions
            .iter()
            .map(|g| (0..p.num_ineq()).map(|i| dot(p.ineq().row(i), g)).collect())
            .collect();
        Ok(Self { circuits, directions, images })
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn circuit(&self, idx: usize) -> &Circuit {
        &self.circuits[idx]
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    /// Maximal step length from a point with the given slacks; `None` unless positive and finite.
    fn step_length(&self, idx: usize, slacks: &[Rational]) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for (s, bg) in slacks.iter().zip(&self.images[idx]) {
            if bg.is_positive() {
                let r = s / bg;
                if best.as_ref().is_none_or(|b| r < *b) {
                    best = Some(r);
                }
            }
        }
        best.filter(|l| l.is_positive())
    }

    fn take_step(&self, p: &Polyhedron, idx: usize, x: &[Rational]) -> Option<(Rational, Vec<Rational>)> {
        let length = self.step_length(idx, &p.slacks(x))?;
        let point = add_scaled(x, &length, &self.directions[idx]);
        Some((length, point))
    }
}

type SignVector = Vec<i8>;

fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Breadth-first search over maximal steps. With `sign_compatible`, the state
/// also carries the row signs already used so that all steps stay pairwise
/// compatible, and each step must be compatible with the remaining difference.
fn walk_search(p: &Polyhedron, cat: &CircuitCatalog, x: &[Rational], y: &[Rational], k: usize, sign_compatible: bool) -> DistanceResult {
    if x == y {
        return DistanceResult { verdict: DistanceVerdict::Dist(0), witness: Some(Vec::new()) };
    }
    let m = p.num_ineq();
    let initial_signs: SignVector = if sign_compatible { vec![0; m] } else { Vec::new() };
    // (point, signs, parent, step index, length)
    let mut nodes: Vec<(Vec<Rational>, SignVector, usize, usize, Rational)> =
        vec![(x.to_vec(), initial_signs.clone(), usize::MAX, usize::MAX, Rational::zero())];
    let mut seen: HashSet<(Vec<Rational>, SignVector)> = HashSet::new();
    seen.insert((x.to_vec(), initial_signs));
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((node, depth)) = queue.pop_front() {
        if depth == k {
            continue;
        }
        let (point, signs) = (nodes[node].0.clone(), nodes[node].1.clone());
        let remaining: Vec<Rational> =
            if sign_compatible { (0..m).map(|i| dot(p.ineq().row(i), &sub(y, &point))).collect() } else { Vec::new() };
        let slacks = p.slacks(&point);
        for idx in 0..cat.len() {
            let image = &cat.images[idx];
            if sign_compatible
                && image.iter().enumerate().any(|(i, b)| sign_of(b) * signs[i] < 0 || sign_of(b) * sign_of(&remaining[i]) < 0)
            {
                continue;
            }
            let Some(length) = cat.step_length(idx, &slacks) else { continue };
            let next = add_scaled(&point, &length, &cat.directions[idx]);
            if sign_compatible {
                let after: Vec<Rational> = (0..m).map(|i| dot(p.ineq().row(i), &sub(y, &next))).collect();
                if image.iter().zip(&after).any(|(b, r)| sign_of(b) * sign_of(r) < 0) {
                    continue;
                }
            }
            let next_signs: SignVector = if sign_compatible {
                signs.iter().zip(image).map(|(&s, b)| if s != 0 { s } else { sign_of(b) }).collect()
            } else {
                Vec::new()
            };
            if !seen.insert((next.clone(), next_signs.clone())) {
                continue;
            }
            let reached = next == y;
            nodes.push((next, next_signs, node, idx, length));
            let id = nodes.len() - 1;
            if reached {
                let mut steps = Vec::new();
                let mut cur = id;
                while nodes[cur].2 != usize::MAX {
                    steps.push(WalkStep::new(cat.circuits[nodes[cur].3].clone(), nodes[cur].4.clone()));
                    cur = nodes[cur].2;
                }
                steps.reverse();
                return DistanceResult { verdict: DistanceVerdict::Dist(depth + 1), witness: Some(steps) };
            }
            queue.push_back((id, depth + 1));
        }
    }
    DistanceResult { verdict: DistanceVerdict::GreaterThan(k), witness: None }
}

fn require_vertices(p: &Polyhedron, x: &[Rational], y: &[Rational]) -> Result<()> {
    check_len(p.dim(), x.len())?;
    check_len(p.dim(), y.len())?;
    p.require_vertex(x)?;
    p.require_vertex(y)
}

/// Fewest maximal circuit steps from `x` to `y`, if at most `k`.
pub fn circuit_distance(p: &Polyhedron, x: &[Rational], y: &[Rational], k: usize, limits: &EnumLimits) -> Result<DistanceResult> {
    require_vertices(p, x, y)?;
    let cat = CircuitCatalog::new(p, limits)?;
    Ok(walk_search(p, &cat, x, y, k, false))
}

/// Fewest steps of a maximal walk that is also a sign-compatible decomposition of `y - x`.
pub fn scm_circuit_distance(p: &Polyhedron, x: &[Rational], y: &[Rational], k: usize, limits: &EnumLimits) -> Result<DistanceResult> {
    require_vertices(p, x, y)?;
    let cat = CircuitCatalog::new(p, limits)?;
    Ok(walk_search(p, &cat, x, y, k, true))
}

/// Fewest circuits in a conformal decomposition of `y - x`, if at most `k`.
///
/// Subsets of pairwise sign-compatible candidates are tried by size; the first
/// size admitting a nonnegative combination has all coefficients positive,
/// since otherwise a smaller subset would already have succeeded.
pub fn sc_decomp_distance(p: &Polyhedron, x: &[Rational], y: &[Rational], k: usize, limits: &EnumLimits) -> Result<DistanceResult> {
    require_vertices(p, x, y)?;
    let u = sub(y, x);
    if u.iter().all(Zero::is_zero) {
        return Ok(DistanceResult { verdict: DistanceVerdict::Dist(0), witness: Some(Vec::new()) });
    }
    let cat = CircuitCatalog::new(p, limits)?;
    let b = p.ineq();
    let candidates: Vec<usize> = (0..cat.len()).filter(|&i| is_sign_compatible(b, &cat.directions[i], &u)).collect();
    let compatible = |i: usize, j: usize| {
        cat.images[i].iter().zip(&cat.images[j]).all(|(a, c)| !(a * c).is_negative())
    };
    for size in 1..=k.min(candidates.len()) {
        let mut chosen: Vec<usize> = Vec::new();
        if let Some(steps) = subset_search(&cat, &candidates, &compatible, &u, size, 0, &mut chosen)? {
            return Ok(DistanceResult { verdict: DistanceVerdict::Dist(size), witness: Some(steps) });
        }
    }
    Ok(DistanceResult { verdict: DistanceVerdict::GreaterThan(k), witness: None })
}

fn subset_search(
    cat: &CircuitCatalog,
    candidates: &[usize],
    compatible: &dyn Fn(usize, usize) -> bool,
    u: &[Rational],
    size: usize,
    from: usize,
    chosen: &mut Vec<usize>,
) -> Result<Option<Vec<WalkStep>>> {
    if chosen.len() == size {
        return nonnegative_combination(cat, chosen, u);
    }
    for pos in from..candidates.len() {
        let c = candidates[pos];
        if chosen.iter().all(|&d| compatible(c, d)) {
            chosen.push(c);
            if let Some(found) = subset_search(cat, candidates, compatible, u, size, pos + 1, chosen)? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
    }
    Ok(None)
}

fn nonnegative_combination(cat: &CircuitCatalog, chosen: &[usize], u: &[Rational]) -> Result<Option<Vec<WalkStep>>> {
    let r = chosen.len();
    let mut eq = RationalMatrix::zeros(u.len(), r);
    for (col, &idx) in chosen.iter().enumerate() {
        for (row, v) in cat.directions[idx].iter().enumerate() {
            eq.set(row, col, v.clone());
        }
    }
    let mut ineq = RationalMatrix::zeros(r, r);
    for i in 0..r {
        ineq.set(i, i, -Rational::from_integer(1.into()));
    }
    let lp = lp_solve(&vec![Rational::zero(); r], Sense::Maximize, &eq, u, &ineq, &vec![Rational::zero(); r])?;
    if lp.status != LpStatus::Optimal {
        return Ok(None);
    }
    let lambda = lp.basic_solution.expect("optimal");
    if lambda.iter().any(|l| !l.is_positive()) {
        return Ok(None);
    }
    Ok(Some(chosen.iter().zip(lambda).map(|(&i, l)| WalkStep::new(cat.circuits[i].clone(), l)).collect()))
}

/// Shortest total length under `norm` over maximal walks with at most `step_cap` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricResult {
    pub length: Length,
    pub walk: CircuitWalk,
}

/// Minimum of `sum ||lambda_i g_i||` over maximal walks of at most `step_cap` steps;
/// `None` when no such walk reaches `y`.
pub fn geometric_distance(
    p: &Polyhedron,
    x: &[Rational],
    y: &[Rational],
    norm: Norm,
    step_cap: usize,
    limits: &EnumLimits,
) -> Result<Option<GeometricResult>> {
    require_vertices(p, x, y)?;
    let cat = CircuitCatalog::new(p, limits)?;
    let norms: Vec<Length> = cat.circuits.iter().map(|g| norm.of(g.entries())).collect();
    let mut memo = HashMap::new();
    let best = shortest(p, &cat, &norms, x, y, step_cap, &mut memo);
    Ok(best.map(|(length, mut steps)| {
        steps.reverse();
        GeometricResult { length, walk: CircuitWalk::new(x.to_vec(), steps) }
    }))
}

type Memo = HashMap<(Vec<Rational>, usize), Option<(Length, Vec<WalkStep>)>>;

/// Best suffix from `x`, with steps stored last-first.
fn shortest(
    p: &Polyhedron,
    cat: &CircuitCatalog,
    norms: &[Length],
    x: &[Rational],
    y: &[Rational],
    budget: usize,
    memo: &mut Memo,
) -> Option<(Length, Vec<WalkStep>)> {
    if x == y {
        return Some((Length::zero(), Vec::new()));
    }
    if budget == 0 {
        return None;
    }
    let key = (x.to_vec(), budget);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut best: Option<(Length, Vec<WalkStep>)> = None;
    for idx in 0..cat.len() {
        let Some((length, next)) = cat.take_step(p, idx, x) else { continue };
        let Some((rest, mut steps)) = shortest(p, cat, norms, &next, y, budget - 1, memo) else { continue };
        let total = rest.plus(&norms[idx].scaled(&length));
        if best.as_ref().is_none_or(|(b, _)| total < *b) {
            steps.push(WalkStep::new(cat.circuits[idx].clone(), length));
            best = Some((total, steps));
        }
    }
    memo.insert(key, best.clone());
    best
}

/// A circuit together with the maximal step it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundStep {
    pub circuit: Circuit,
    pub length: Rational,
    pub point: Vec<Rational>,
}

fn first_step(
    p: &Polyhedron,
    cat: &CircuitCatalog,
    u: &[Rational],
    accept: &dyn Fn(usize, &[Rational]) -> bool,
) -> Option<FoundStep> {
    (0..cat.len()).find_map(|idx| {
        let (length, point) = cat.take_step(p, idx, u)?;
        accept(idx, &point).then(|| FoundStep { circuit: cat.circuits[idx].clone(), length, point })
    })
}

/// Some circuit whose maximal step from `u` ends on `{x : B_row x = d(row)}`.
pub fn facet_step_bruteforce(p: &Polyhedron, u: &[Rational], facet_row: usize, limits: &EnumLimits) -> Result<Option<FoundStep>> {
    p.require_member(u)?;
    if facet_row >= p.num_ineq() {
        return Err(crate::error::Error::InvalidInput(format!("row {facet_row} out of range")));
    }
    let cat = CircuitCatalog::new(p, limits)?;
    Ok(first_step(p, &cat, u, &|_, point| p.slack(facet_row, point).is_zero()))
}

/// Some circuit whose maximal step from `u` ends on a row tight at the vertex `v`.
pub fn incident_facet_step_bruteforce(p: &Polyhedron, u: &[Rational], v: &[Rational], limits: &EnumLimits) -> Result<Option<FoundStep>> {
    p.require_member(u)?;
    p.require_vertex(v)?;
    let tight = p.tight_rows_unchecked(v);
    let cat = CircuitCatalog::new(p, limits)?;
    Ok(first_step(p, &cat, u, &|_, point| tight.iter().any(|&i| p.slack(i, point).is_zero())))
}

/// Some circuit `g` sign-compatible with `w - v` and with `w - maxstep(v, g)`, with a positive step.
pub fn scm_step_bruteforce(p: &Polyhedron, v: &[Rational], w: &[Rational], limits: &EnumLimits) -> Result<Option<FoundStep>> {
    require_vertices(p, v, w)?;
    let cat = CircuitCatalog::new(p, limits)?;
    let diff = sub(w, v);
    Ok(first_step(p, &cat, v, &|idx, point| {
        is_sign_compatible(p.ineq(), &cat.directions[idx], &diff)
            && is_sign_compatible(p.ineq(), &cat.directions[idx], &sub(w, point))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::network::build_circulation_01;
    use crate::rational::{rat, rat_vec};
    use crate::walks::verify_walk;

    fn lim() -> EnumLimits {
        EnumLimits::default()
    }

    #[test]
    fn square_distances() {
        let sq = instances::unit_square();
        let (o, e) = (rat_vec(&[0, 0]), rat_vec(&[1, 1]));
        assert_eq!(circuit_distance(&sq, &o, &o, 2, &lim()).unwrap().verdict, DistanceVerdict::Dist(0));
        let r = circuit_distance(&sq, &o, &e, 2, &lim()).unwrap();
        assert_eq!(r.verdict, DistanceVerdict::Dist(2));
        let walk = CircuitWalk::new(o.clone(), r.witness.unwrap());
        assert!(verify_walk(&sq, &walk, &e, false).unwrap().is_accept());
        assert_eq!(circuit_distance(&sq, &o, &e, 1, &lim()).unwrap().verdict.to_string(), "GT 1");
        assert_eq!(scm_circuit_distance(&sq, &o, &e, 2, &lim()).unwrap().verdict, DistanceVerdict::Dist(2));
        assert_eq!(sc_decomp_distance(&sq, &o, &e, 2, &lim()).unwrap().verdict, DistanceVerdict::Dist(2));
        assert_eq!(sc_decomp_distance(&sq, &o, &rat_vec(&[1, 0]), 2, &lim()).unwrap().verdict, DistanceVerdict::Dist(1));
        let g = geometric_distance(&sq, &o, &rat_vec(&[1, 0]), Norm::P(2), 1, &lim()).unwrap().unwrap();
        assert_eq!(g.length, Length::rational(rat(1)));
    }

    #[test]
    fn six_node_distances() {
        let p = build_circulation_01(&instances::six_node_eulerian());
        let (zero, full) = (vec![rat(0); 12], vec![rat(1); 12]);
        let r = circuit_distance(&p, &zero, &full, 2, &lim()).unwrap();
        assert_eq!(r.verdict, DistanceVerdict::Dist(2));
        let r = scm_circuit_distance(&p, &zero, &full, 2, &lim()).unwrap();
        assert_eq!(r.verdict, DistanceVerdict::Dist(2));
        let walk = CircuitWalk::new(zero.clone(), r.witness.unwrap());
        assert!(verify_walk(&p, &walk, &full, true).unwrap().is_accept());
    }

    #[test]
    fn step_searches() {
        let sq = instances::unit_square();
        let o = rat_vec(&[0, 0]);
        // Rows: x <= 1, y <= 1, -x <= 0, -y <= 0.
        let s = facet_step_bruteforce(&sq, &o, 0, &lim()).unwrap().unwrap();
        assert_eq!(s.circuit, Circuit::from_i64(&[1, 0]));
        let s = facet_step_bruteforce(&sq, &o, 2, &lim()).unwrap().unwrap();
        assert_eq!(s.circuit, Circuit::from_i64(&[0, 1]));
        let tri = instances::triangle();
        let s = facet_step_bruteforce(&tri, &o, 2, &lim()).unwrap().unwrap();
        assert!(s.circuit == Circuit::from_i64(&[1, 0]) || s.circuit == Circuit::from_i64(&[0, 1]));
        let e = rat_vec(&[1, 1]);
        assert!(incident_facet_step_bruteforce(&sq, &o, &e, &lim()).unwrap().is_some());
        assert!(incident_facet_step_bruteforce(&sq, &o, &o, &lim()).unwrap().is_some());
        assert_eq!(scm_step_bruteforce(&sq, &o, &e, &lim()).unwrap().unwrap().circuit, Circuit::from_i64(&[0, 1]));
        assert_eq!(scm_step_bruteforce(&sq, &o, &o, &lim()).unwrap(), None);
    }

    #[test]
    fn hexagon_separates_problems() {
        let hex = instances::hexagon();
        let (x, y) = instances::hexagon_endpoints();
        assert!(incident_facet_step_bruteforce(&hex, &x, &y, &lim()).unwrap().is_some());
        assert_eq!(scm_step_bruteforce(&hex, &x, &y, &lim()).unwrap(), None);
    }
}
