//! Circuits of a polyhedron and the polyhedral model whose vertices encode them.
//!
//! A circuit is a coprime integer vector `g` in `ker A` whose zero set in `B g`
//! has rank `n - 1` together with `A`. Enumeration works in coordinates of
//! `ker A`: with `K` a kernel basis, the rows of `M = B K` form a vector
//! configuration whose hyperplane flats correspond one-to-one to circuit pairs.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{check_len, Error, Result};
use crate::limits::EnumLimits;
use crate::lp::{lp_solve, LpResult, Sense};
use crate::matrix::{RationalMatrix, RowBasis};
use crate::polyhedron::Polyhedron;
use crate::rational::{dot, format_int_vector, normalize_coprime, to_rationals, Rational};

/// Integer direction vector. Whether it is a circuit depends on the polyhedron;
/// see [`is_circuit`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit(Vec<BigInt>);

impl Circuit {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Self(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        to_rationals(&self.0)
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    /// Representative of `{g, -g}` whose first nonzero entry is positive.
    pub fn canonical(&self) -> Self {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => self.negated(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_int_vector(&self.0))
    }
}

/// Checks kernel membership, coprimality and the rank-`n-1` support witness.
pub fn is_circuit(p: &Polyhedron, g: &[BigInt]) -> bool {
    if g.len() != p.dim() || g.iter().all(Zero::is_zero) {
        return false;
    }
    let gcd = g.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !gcd.is_one() {
        return false;
    }
    let gq = to_rationals(g);
    if (0..p.eq().rows()).any(|i| !dot(p.eq().row(i), &gq).is_zero()) {
        return false;
    }
    let zero_rows: Vec<usize> =
        (0..p.num_ineq()).filter(|&i| dot(p.ineq().row(i), &gq).is_zero()).collect();
    p.rank_with_rows(&zero_rows) + 1 == p.dim()
}

fn check_bounds(p: &Polyhedron, limits: &EnumLimits) -> Result<()> {
    if p.dim() > limits.max_dim || p.num_ineq() > limits.max_rows {
        return Err(Error::TooLarge(format!(
            "dimension {} and {} rows exceed bounds {} and {}",
            p.dim(),
            p.num_ineq(),
            limits.max_dim,
            limits.max_rows
        )));
    }
    Ok(())
}

/// All circuits up to sign, canonically signed and sorted lexicographically.
pub fn enumerate_circuits(p: &Polyhedron, limits: &EnumLimits) -> Result<Vec<Circuit>> {
    let mut out = Vec::new();
    for_each_circuit(p, limits, |g| out.push(g))?;
    out.sort();
    Ok(out)
}

/// Calls `visit` once per circuit pair with the canonically signed representative.
/// Nothing is stored, so this scales to configurations with millions of circuits.
pub fn for_each_circuit(p: &Polyhedron, limits: &EnumLimits, mut visit: impl FnMut(Circuit)) -> Result<()> {
    check_bounds(p, limits)?;
    let n = p.dim();
    let kernel: Option<Vec<Vec<Rational>>> = (p.eq().rows() > 0).then(|| p.eq().kernel_basis());
    let k = kernel.as_ref().map_or(n, Vec::len);
    if k == 0 {
        return Ok(());
    }
    // Rows of B in kernel coordinates, one primitive representative per parallel class.
    let mut classes: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for i in 0..p.num_ineq() {
        let row: Vec<Rational> = match &kernel {
            Some(kernel) => kernel.iter().map(|col| dot(p.ineq().row(i), col)).collect(),
            None => p.ineq().row(i).to_vec(),
        };
        if let Ok(v) = normalize_coprime(&row) {
            classes.insert(Circuit::new(v).canonical().0);
        }
    }
    let config = Configuration::new(classes.into_iter().collect(), k);
    let mut failure = None;
    config.hyperplanes(|c| {
        if failure.is_some() {
            return;
        }
        let g: Vec<BigInt> = match &kernel {
            None => c,
            Some(kernel) => {
                let g: Vec<Rational> = (0..n)
                    .map(|j| c.iter().zip(kernel).map(|(ci, col)| Rational::from(ci.clone()) * &col[j]).sum())
                    .collect();
                match normalize_coprime(&g) {
                    Ok(g) => g,
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                }
            }
        };
        let g = Circuit::new(g).canonical();
        visit(g);
    });
    failure.map_or(Ok(()), Err)
}

/// Nonzero, pairwise non-parallel integer vectors in `k` coordinates.
struct Configuration {
    rows: Vec<Vec<BigInt>>,
    k: usize,
}

/// Remainders of the configuration vectors modulo the span of the current basis;
/// `None` marks vectors already in the span.
#[derive(Clone)]
enum Residuals {
    Int(Vec<Option<Vec<i128>>>),
    Big(Vec<Option<Vec<Rational>>>),
}

/// Echelon rows of the current basis, as produced by the elimination.
enum Pivot {
    Int(Vec<i128>),
    Big(Vec<Rational>),
}

impl Configuration {
    fn new(rows: Vec<Vec<BigInt>>, k: usize) -> Self {
        Self { rows, k }
    }

    /// Visits the normal vector of every rank-`(k-1)` flat exactly once.
    ///
    /// Each flat is reached through its greedy basis: the members taken in index
    /// order, keeping those independent of the earlier ones. A prefix of a greedy
    /// basis is again a greedy basis, so a depth-first search over index-increasing
    /// independent sets can discard any extension that captures a smaller index.
    fn hyperplanes(&self, mut visit: impl FnMut(Vec<BigInt>)) {
        if self.k == 1 {
            // the zero flat; its normal is the unique direction
            visit(vec![BigInt::one()]);
            return;
        }
        use num_traits::ToPrimitive;
        let small: Option<Vec<Option<Vec<i128>>>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<_>>>().map(Some))
            .collect();
        let residuals = match small {
            Some(rows) => Residuals::Int(rows),
            None => Residuals::Big(self.rows.iter().map(|r| Some(to_rationals(r))).collect()),
        };
        let mut pivots = Vec::new();
        self.descend(&mut pivots, &residuals, 0, &mut visit);
    }

    fn descend(
        &self,
        pivots: &mut Vec<Pivot>,
        residuals: &Residuals,
        from: usize,
        visit: &mut impl FnMut(Vec<BigInt>),
    ) {
        if pivots.len() + 1 == self.k {
            visit(self.normal(pivots));
            return;
        }
        let leaf = pivots.len() + 2 == self.k;
        for m in from..self.rows.len() {
            if !residuals.is_open(m) {
                continue;
            }
            // At the last level only smaller indices matter for greediness.
            let upto = if leaf { m } else { self.rows.len() };
            let Some((pivot, next)) = residuals.eliminate(m, upto) else { continue };
            pivots.push(pivot);
            self.descend(pivots, &next, m + 1, visit);
            pivots.pop();
        }
    }

    /// Primitive normal of the span of `pivots`, which has rank `k - 1`.
    fn normal(&self, pivots: &[Pivot]) -> Vec<BigInt> {
        let ints: Option<Vec<&Vec<i128>>> =
            pivots.iter().map(|p| if let Pivot::Int(v) = p { Some(v) } else { None }).collect();
        if let Some(v) = ints.and_then(|rows| int_null_vector(&rows, self.k)) {
            return v.into_iter().map(BigInt::from).collect();
        }
        let mut basis = RowBasis::new(self.k);
        for p in pivots {
            match p {
                Pivot::Int(v) => basis.insert(&v.iter().map(|&x| Rational::from(BigInt::from(x))).collect::<Vec<_>>()),
                Pivot::Big(v) => basis.insert(v),
            };
        }
        let v = basis.null_vector().expect("hyperplane flat has corank one");
        normalize_coprime(&v).expect("null vector is nonzero")
    }
}

impl Residuals {
    fn is_open(&self, j: usize) -> bool {
        match self {
            Residuals::Int(r) => r[j].is_some(),
            Residuals::Big(r) => r[j].is_some(),
        }
    }

    /// Adds vector `m` to the basis and reduces the open vectors below `upto`.
    /// Returns `None` when a vector with index below `m` falls into the span.
    fn eliminate(&self, m: usize, upto: usize) -> Option<(Pivot, Residuals)> {
        if let Residuals::Int(rows) = self {
            match eliminate_int(rows, m, upto) {
                Ok(found) => return found.map(|(p, r)| (Pivot::Int(p), Residuals::Int(r))),
                Err(Overflow) => {
                    let big = rows
                        .iter()
                        .map(|r| r.as_ref().map(|v| v.iter().map(|&x| Rational::from(BigInt::from(x))).collect()))
                        .collect();
                    return Residuals::Big(big).eliminate(m, upto);
                }
            }
        }
        let Residuals::Big(rows) = self else { unreachable!() };
        let pivot = rows[m].clone().expect("open vector");
        let p = pivot.iter().position(|x| !x.is_zero()).expect("open vectors are nonzero");
        let mut next = rows.clone();
        next[m] = None;
        for (j, slot) in next.iter_mut().enumerate().take(upto) {
            let Some(r) = slot.as_mut() else { continue };
            if !r[p].is_zero() {
                let f = &r[p] / &pivot[p];
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
            if r.iter().all(Zero::is_zero) {
                if j < m {
                    return None;
                }
                *slot = None;
            }
        }
        Some((Pivot::Big(pivot), Residuals::Big(next)))
    }
}

struct Overflow;

#[allow(clippy::type_complexity)]
fn eliminate_int(
    rows: &[Option<Vec<i128>>],
    m: usize,
    upto: usize,
) -> std::result::Result<Option<(Vec<i128>, Vec<Option<Vec<i128>>>)>, Overflow> {
    let pivot = rows[m].clone().expect("open vector");
    let p = pivot.iter().position(|&x| x != 0).expect("open vectors are nonzero");
    let mut next = rows.to_vec();
    next[m] = None;
    for (j, slot) in next.iter_mut().enumerate().take(upto) {
        let Some(r) = slot.as_mut() else { continue };
        if r[p] != 0 {
            let g = gcd_i128(pivot[p], r[p]);
            let (fa, fc) = (pivot[p] / g, r[p] / g);
            for (x, y) in r.iter_mut().zip(&pivot) {
                *x = x
                    .checked_mul(fa)
                    .and_then(|a| y.checked_mul(fc).and_then(|b| a.checked_sub(b)))
                    .ok_or(Overflow)?;
            }
            primitive(r);
        }
        if r.iter().all(|&x| x == 0) {
            if j < m {
                return Ok(None);
            }
            *slot = None;
        }
    }
    Ok(Some((pivot, next)))
}

/// Primitive generator of the orthogonal complement of `k - 1` echelon rows.
fn int_null_vector(rows: &[&Vec<i128>], k: usize) -> Option<Vec<i128>> {
    let mut pivots: Vec<(usize, &Vec<i128>)> =
        rows.iter().map(|r| (r.iter().position(|&x| x != 0).expect("nonzero row"), *r)).collect();
    pivots.sort_by_key(|(p, _)| *p);
    let free = (0..k).find(|c| pivots.iter().all(|(p, _)| p != c))?;
    let mut g = vec![0i128; k];
    g[free] = 1;
    // Each row vanishes before its pivot, so solve from the back.
    for (p, row) in pivots.iter().rev() {
        let mut rest: i128 = 0;
        for c in p + 1..k {
            rest = rest.checked_add(row[c].checked_mul(g[c])?)?;
        }
        let d = gcd_i128(rest, row[*p]);
        let (scale, value) = (row[*p] / d, -rest / d);
        for x in g.iter_mut() {
            *x = x.checked_mul(scale)?;
        }
        g[*p] = value;
        primitive(&mut g);
    }
    Some(g)
}

fn primitive(r: &mut [i128]) {
    let content = r.iter().fold(0, |acc, &x| gcd_i128(acc, x));
    if content > 1 {
        for x in r.iter_mut() {
            *x /= content;
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The polyhedron `{(x, y+, y-) : Ax = 0, Bx = y+ - y-, sum(y+) + sum(y-) = 1, y+, y- >= 0}`
/// together with the polyhedron it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitModel {
    model: Polyhedron,
    source: Polyhedron,
}

/// Builds the circuit model of `p`. Variables are ordered `x`, `y+`, `y-`.
pub fn build_circuit_model(p: &Polyhedron) -> CircuitModel {
    let n = p.dim();
    let m = p.num_ineq();
    let width = n + 2 * m;
    let one = Rational::one();
    let mut eq = RationalMatrix::zeros(0, width);
    for i in 0..p.eq().rows() {
        let mut row = vec![Rational::zero(); width];
        row[..n].clone_from_slice(p.eq().row(i));
        eq.push_row(row).expect("width");
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); width];
        row[..n].clone_from_slice(p.ineq().row(i));
        row[n + i] = -one.clone();
        row[n + m + i] = one.clone();
        eq.push_row(row).expect("width");
    }
    let mut norm = vec![Rational::zero(); width];
    for v in norm.iter_mut().skip(n) {
        *v = one.clone();
    }
    eq.push_row(norm).expect("width");
    let mut eq_rhs = vec![Rational::zero(); eq.rows()];
    *eq_rhs.last_mut().expect("norm row") = one.clone();
    let mut ineq = RationalMatrix::zeros(0, width);
    for j in 0..2 * m {
        let mut row = vec![Rational::zero(); width];
        row[n + j] = -one.clone();
        ineq.push_row(row).expect("width");
    }
    let model = Polyhedron::new(width, eq, eq_rhs, ineq, vec![Rational::zero(); 2 * m])
        .expect("consistent model");
    CircuitModel { model, source: p.clone() }
}

/// The face of the model holding circuits sign-compatible with `w - v`.
pub fn build_sc_face(p: &Polyhedron, v: &[Rational], w: &[Rational]) -> Result<CircuitModel> {
    p.require_vertex(v)?;
    p.require_vertex(w)?;
    let mut face = build_circuit_model(p);
    for j in 0..p.num_ineq() {
        let bv = dot(p.ineq().row(j), v);
        let bw = dot(p.ineq().row(j), w);
        if bv >= bw {
            face.fix_plus(j);
        }
        if bv <= bw {
            face.fix_minus(j);
        }
    }
    Ok(face)
}

impl CircuitModel {
    pub fn model(&self) -> &Polyhedron {
        &self.model
    }

    pub fn source(&self) -> &Polyhedron {
        &self.source
    }

    pub fn plus_var(&self, row: usize) -> usize {
        self.source.dim() + row
    }

    pub fn minus_var(&self, row: usize) -> usize {
        self.source.dim() + self.source.num_ineq() + row
    }

    fn fix_zero(&mut self, var: usize) {
        let mut row = vec![Rational::zero(); self.model.dim()];
        row[var] = Rational::one();
        self.model = self.model.with_equality(row, Rational::zero()).expect("width");
    }

    /// Adds `y+(row) = 0`.
    pub fn fix_plus(&mut self, row: usize) {
        self.fix_zero(self.plus_var(row));
    }

    /// Adds `y-(row) = 0`.
    pub fn fix_minus(&mut self, row: usize) {
        self.fix_zero(self.minus_var(row));
    }

    /// The `x` part of a model point.
    pub fn x_part<'a>(&self, point: &'a [Rational]) -> &'a [Rational] {
        &point[..self.source.dim()]
    }

    /// Optimises a linear objective over the model.
    pub fn optimize(&self, objective: &[Rational], sense: Sense) -> Result<LpResult> {
        lp_solve(
            objective,
            sense,
            self.model.eq(),
            self.model.eq_rhs(),
            self.model.ineq(),
            self.model.ineq_rhs(),
        )
    }
}

/// Reads the circuit off a model vertex; `None` for the spurious vertices.
pub fn model_vertex_to_circuit(model: &CircuitModel, point: &[Rational]) -> Result<Option<Circuit>> {
    check_len(model.model.dim(), point.len())?;
    model.model.require_vertex(point)?;
    let x = model.x_part(point);
    if x.iter().all(Zero::is_zero) {
        return Ok(None);
    }
    let g = Circuit::new(normalize_coprime(x)?);
    if !is_circuit(&model.source, g.entries()) {
        return Err(Error::NotACircuit(g.to_string()));
    }
    Ok(Some(g))
}
