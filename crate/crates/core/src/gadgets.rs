//! Reduction instances: 2-in-2-out Eulerian digraphs, the auxiliary bipartite
//! graph of a Hamiltonian-path digraph, matching polytopes, and the two cut
//! polytopes built from them, with an exhaustive check that both have the same
//! facet-entering circuit steps.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuits::{for_each_circuit, Circuit};
use crate::error::{Error, Result};
use crate::limits::EnumLimits;
use crate::lp::{lp_solve, LpStatus, Sense};
use crate::matrix::RationalMatrix;
use crate::network::{build_circulation_01, Digraph};
use crate::oracles::{circuit_distance, DistanceVerdict};
use crate::polyhedron::Polyhedron;
use crate::rational::{add_scaled, dot, rat, ratio, Rational};

/// Simple undirected graph with ordered edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &edges {
            if a >= vertices || b >= vertices || a == b {
                return Err(Error::InvalidInput(format!("bad edge {{{a}, {b}}}")));
            }
        }
        Ok(Self { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Two-colouring by breadth-first search, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.vertices];
        for root in 0..self.vertices {
            if colour[root].is_some() {
                continue;
            }
            colour[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let cv = colour[v].expect("coloured");
                for &(a, b) in &self.edges {
                    let other = if a == v { b } else if b == v { a } else { continue };
                    match colour[other] {
                        None => {
                            colour[other] = Some(!cv);
                            queue.push_back(other);
                        }
                        Some(c) if c == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.expect("coloured")).collect())
    }
}

/// `{x : sum of x over edges at v <= 1 for every vertex v, x >= 0}`.
///
/// Rows: one degree row per vertex in vertex order, then `-x(e) <= 0` per edge.
pub fn build_matching_polytope(g: &UndirectedGraph) -> Result<Polyhedron> {
    if g.bipartition().is_none() {
        return Err(Error::InvalidInput("graph is not bipartite".into()));
    }
    let m = g.edges.len();
    let mut rows = Vec::new();
    for v in 0..g.vertices {
        rows.push(
            g.edges
                .iter()
                .map(|&(a, b)| if a == v || b == v { Rational::one() } else { Rational::zero() })
                .collect(),
        );
    }
    for e in 0..m {
        let mut row = vec![Rational::zero(); m];
        row[e] = -Rational::one();
        rows.push(row);
    }
    let mut rhs = vec![Rational::one(); g.vertices];
    rhs.extend(vec![Rational::zero(); m]);
    Polyhedron::from_inequalities(RationalMatrix::from_rows(m, rows)?, rhs)
}

/// Role of an edge of the auxiliary graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// `{v_a, v_b}` for a node `v != t`.
    Matching(usize),
    /// Edge for the arc with this index.
    Arc(usize),
    /// `{s', s_a}`.
    SourcePendant,
    /// `{t, t'}`.
    SinkPendant,
}

/// Bipartite graph built from a digraph with terminals `s`, `t`, with edge costs.
///
/// Vertices: `s'`, then `v_a, v_b` for each node `v != t` in order, then `t`, `t'`.
/// Edges: matching edges, arc edges in arc order, then the two pendants.
/// Arcs leaving `t` have no counterpart since `t` has a single copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxGraph {
    pub graph: UndirectedGraph,
    pub labels: Vec<String>,
    pub kinds: Vec<EdgeKind>,
    pub cost: Vec<Rational>,
    /// Node count of the digraph.
    pub nodes: usize,
    pub weight: Rational,
}

pub fn build_aux_graph(d: &Digraph, s: usize, t: usize, weight: Rational) -> Result<AuxGraph> {
    let n = d.nodes();
    if s >= n || t >= n || s == t {
        return Err(Error::InvalidInput(format!("terminals s = {s}, t = {t} must be distinct nodes")));
    }
    let mut labels = vec!["s'".to_string()];
    let mut copy_a = vec![usize::MAX; n];
    let mut copy_b = vec![usize::MAX; n];
    for v in (0..n).filter(|&v| v != t) {
        copy_a[v] = labels.len();
        labels.push(format!("{v}a"));
        copy_b[v] = labels.len();
        labels.push(format!("{v}b"));
    }
    let t_vertex = labels.len();
    labels.push("t".into());
    let t_prime = labels.len();
    labels.push("t'".into());
    copy_a[t] = t_vertex;

    let mut edges = Vec::new();
    let mut kinds = Vec::new();
    let mut cost = Vec::new();
    for v in (0..n).filter(|&v| v != t) {
        edges.push((copy_a[v], copy_b[v]));
        kinds.push(EdgeKind::Matching(v));
        cost.push(Rational::zero());
    }
    for (idx, &(v, u)) in d.arcs().iter().enumerate() {
        if v == t {
            continue;
        }
        edges.push((copy_b[v], copy_a[u]));
        kinds.push(EdgeKind::Arc(idx));
        cost.push(-Rational::one());
    }
    edges.push((0, copy_a[s]));
    kinds.push(EdgeKind::SourcePendant);
    cost.push(-weight.clone());
    edges.push((t_vertex, t_prime));
    kinds.push(EdgeKind::SinkPendant);
    cost.push(weight.clone());
    let graph = UndirectedGraph::new(labels.len(), edges)?;
    Ok(AuxGraph { graph, labels, kinds, cost, nodes: n, weight })
}

impl AuxGraph {
    /// Default weight `10 n`.
    pub fn default_weight(d: &Digraph) -> Rational {
        rat(10 * d.nodes() as i64)
    }

    /// Indicator of `{t t'}` together with every matching edge; `c^T u = W`.
    pub fn start_vertex(&self) -> Vec<Rational> {
        self.kinds
            .iter()
            .map(|k| match k {
                EdgeKind::Matching(_) | EdgeKind::SinkPendant => Rational::one(),
                _ => Rational::zero(),
            })
            .collect()
    }

    /// One line per edge: `edge <label> <label> cost <c>`.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\nedges {}\n", self.graph.vertices, self.graph.edges.len());
        for (&(a, b), c) in self.graph.edges.iter().zip(&self.cost) {
            out.push_str(&format!("edge {} {} cost {c}\n", self.labels[a], self.labels[b]));
        }
        out
    }
}

/// The derived constants of the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetConstants {
    pub weight: Rational,
    pub nodes: usize,
    pub epsilon: Rational,
    pub omega0: Rational,
    pub omega_eps: Rational,
    pub r: usize,
    /// `c^T h`, computed from the perturbation direction.
    pub delta: Rational,
    pub t: Rational,
    pub alpha: Rational,
}

impl GadgetConstants {
    /// `omega0 = -W - n + 1`, `omega_eps = omega0 + eps`, `T = 2 r delta + 1`,
    /// `alpha = (T - 1) eps / (T delta)`.
    pub fn identities_hold(&self) -> bool {
        let r = rat(self.r as i64);
        self.omega0 == -&self.weight - rat(self.nodes as i64) + rat(1)
            && self.omega_eps == &self.omega0 + &self.epsilon
            && self.t == rat(2) * &r * &self.delta + rat(1)
            && self.alpha == (&self.t - rat(1)) * &self.epsilon / (&self.t * &self.delta)
    }

    /// `-omega0 - W / (2r) + 1/2`, the value `c^T h` takes when exactly the
    /// `s'` pendant and `r` unit-cost edges lie off the minimum matching.
    pub fn pendant_formula_delta(&self) -> Rational {
        let r = rat(self.r as i64);
        -&self.omega0 - &self.weight / (rat(2) * r) + ratio(1, 2)
    }
}

impl fmt::Display for GadgetConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "W {}", self.weight)?;
        writeln!(f, "n {}", self.nodes)?;
        writeln!(f, "epsilon {}", self.epsilon)?;
        writeln!(f, "omega0 {}", self.omega0)?;
        writeln!(f, "omega_eps {}", self.omega_eps)?;
        writeln!(f, "r {}", self.r)?;
        writeln!(f, "Delta {}", self.delta)?;
        writeln!(f, "T {}", self.t)?;
        write!(f, "alpha {}", self.alpha)
    }
}

/// The matching polytope cut by `c^T x >= omega_eps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPolytope {
    pub polytope: Polyhedron,
    /// Index of the row `-c^T x <= -omega_eps` (the last row).
    pub facet_row: usize,
    pub start: Vec<Rational>,
}

fn omega0(h: &AuxGraph) -> Rational {
    -&h.weight - rat(h.nodes as i64) + rat(1)
}

pub fn build_p_h_eps(h: &AuxGraph, epsilon: &Rational) -> Result<CutPolytope> {
    let base = build_matching_polytope(&h.graph)?;
    let omega_eps = omega0(h) + epsilon;
    let polytope = base.with_inequality(h.cost.iter().map(|c| -c).collect(), -omega_eps)?;
    let facet_row = polytope.num_ineq() - 1;
    Ok(CutPolytope { polytope, facet_row, start: h.start_vertex() })
}

/// A replacement row `q_i^T x <= r(i)` derived from row `i` of the matching polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementRow {
    pub source_row: usize,
    /// A point of the matching polytope with row `i` tight and `c^T x = omega_eps`.
    pub witness: Vec<Rational>,
    pub p: Rational,
    pub q: Vec<Rational>,
    pub r: Rational,
}

/// The polytope whose facets through `z` replace the cut facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePolytope {
    pub polytope: Polyhedron,
    pub z: Vec<Rational>,
    /// Minimum-cost matching with `c^T y = omega0`.
    pub matching: Vec<Rational>,
    pub direction: Vec<Rational>,
    pub constants: GadgetConstants,
    pub rows: Vec<ReplacementRow>,
    pub start: Vec<Rational>,
}

fn lp_point(objective: &[Rational], sense: Sense, p: &Polyhedron) -> Result<Option<(Rational, Vec<Rational>)>> {
    let lp = lp_solve(objective, sense, p.eq(), p.eq_rhs(), p.ineq(), p.ineq_rhs())?;
    Ok(match lp.status {
        LpStatus::Optimal => Some((lp.optimal_value.expect("optimal"), lp.basic_solution.expect("optimal"))),
        _ => None,
    })
}

pub fn build_p_prime(h: &AuxGraph, epsilon: &Rational) -> Result<PrimePolytope> {
    let base = build_matching_polytope(&h.graph)?;
    let c = &h.cost;
    let omega0 = omega0(h);
    let omega_eps = &omega0 + epsilon;
    let (min, y) = lp_point(c, Sense::Minimize, &base)?.ok_or(Error::NoHamiltonianWitness)?;
    if min != omega0 {
        return Err(Error::NoHamiltonianWitness);
    }
    let edges = h.graph.edges.len();
    let r = edges + 1 - h.nodes;
    let off = Rational::new(1.into(), (2 * r).into());
    let direction: Vec<Rational> = y.iter().map(|v| if v.is_one() { -Rational::one() } else { off.clone() }).collect();
    let delta = dot(c, &direction);
    let t = rat(2) * rat(r as i64) * &delta + rat(1);
    let alpha = (&t - rat(1)) * epsilon / (&t * &delta);
    let z = add_scaled(&y, &alpha, &direction);
    let constants = GadgetConstants {
        weight: h.weight.clone(),
        nodes: h.nodes,
        epsilon: epsilon.clone(),
        omega0: omega0.clone(),
        omega_eps: omega_eps.clone(),
        r,
        delta,
        t,
        alpha,
    };

    let cz = dot(c, &z);
    let mut rows = Vec::new();
    let mut polytope = base.clone();
    for i in 0..base.num_ineq() {
        // Feasibility of {x in P(H) : c^T x = omega_eps, B_i x = d(i)}.
        let with_level = base.with_equality(c.clone(), omega_eps.clone())?;
        let face = with_level.with_equality(base.ineq().row(i).to_vec(), base.ineq_rhs()[i].clone())?;
        let Some((_, witness)) = lp_point(&vec![Rational::zero(); edges], Sense::Maximize, &face)? else { continue };
        let bi = base.ineq().row(i);
        let p = (dot(bi, &witness) - dot(bi, &z)) / (dot(c, &witness) - &cz);
        let q: Vec<Rational> = bi.iter().zip(c).map(|(b, ce)| b - &p * ce).collect();
        let r_i = dot(&q, &witness);
        polytope = polytope.with_inequality(q.clone(), r_i.clone())?;
        rows.push(ReplacementRow { source_row: i, witness, p, q, r: r_i });
    }
    Ok(PrimePolytope { polytope, z, matching: y, direction, constants, rows, start: h.start_vertex() })
}

impl PrimePolytope {
    /// `c^T z = omega0 + (T - 1) eps / T`.
    pub fn level_of_z_holds(&self, cost: &[Rational]) -> bool {
        let k = &self.constants;
        dot(cost, &self.z) == &k.omega0 + (&k.t - rat(1)) * &k.epsilon / &k.t
    }

    /// No row of the matching polytope (the first rows of this polytope) is tight at `z`.
    pub fn z_is_interior(&self) -> bool {
        let base_rows = self.polytope.num_ineq() - self.rows.len();
        (0..base_rows).all(|i| self.polytope.slack(i, &self.z).is_positive())
    }

    /// `q_i^T z = r(i)` for every replacement row.
    pub fn replacement_rows_through_z(&self) -> bool {
        self.rows.iter().all(|row| dot(&row.q, &self.z) == row.r)
    }

    /// Each replacement row is valid on the cut polytope: its maximum there is `r(i)`.
    pub fn replacement_rows_valid(&self, cut: &CutPolytope) -> Result<bool> {
        for row in &self.rows {
            match lp_point(&row.q, Sense::Maximize, &cut.polytope)? {
                Some((value, _)) if value == row.r => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

/// Outcome of the exhaustive comparison of facet-entering steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim1Report {
    pub cut_circuits: usize,
    pub prime_circuits: usize,
    /// Oriented circuits whose maximal step from the start lands on the cut facet.
    pub cut_steps: BTreeSet<Circuit>,
    /// Oriented circuits whose maximal step lands on a row tight at `z`.
    pub prime_steps: BTreeSet<Circuit>,
}

impl Claim1Report {
    pub fn holds(&self) -> bool {
        self.cut_steps == self.prime_steps
    }
}

impl fmt::Display for Claim1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.holds() { "CLAIM1 OK" } else { "CLAIM1 MISMATCH" })?;
        writeln!(f, "circuits cut {} prime {}", self.cut_circuits, self.prime_circuits)?;
        write!(f, "facet steps cut {} prime {}", self.cut_steps.len(), self.prime_steps.len())?;
        for g in self.cut_steps.symmetric_difference(&self.prime_steps) {
            write!(f, "\ndiffers {g}")?;
        }
        Ok(())
    }
}

/// Decides for oriented circuits whether the maximal step from `start` ends on a
/// target row. Rows are scaled to integers; positive scaling leaves every ratio
/// `slack_i / B_i g` unchanged, so the test is exact.
struct LandingTest {
    rows: Vec<Vec<BigInt>>,
    small_rows: Option<Vec<Vec<i128>>>,
    slacks: Vec<Rational>,
    tight: Vec<usize>,
    targets: Vec<bool>,
}

impl LandingTest {
    fn new(p: &Polyhedron, start: &[Rational], targets: &[usize]) -> Self {
        let mut rows = Vec::new();
        let mut slacks = Vec::new();
        for i in 0..p.num_ineq() {
            let row = p.ineq().row(i);
            let scale = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let scale = Rational::from(scale);
            rows.push(row.iter().map(|x| (x * &scale).to_integer()).collect());
            slacks.push(p.slack(i, start) * &scale);
        }
        let small_rows = rows
            .iter()
            .map(|r: &Vec<BigInt>| r.iter().map(|x| x.to_i64().map(i128::from)).collect())
            .collect();
        let tight = (0..slacks.len()).filter(|&i| slacks[i].is_zero()).collect();
        let mut flags = vec![false; slacks.len()];
        for &i in targets {
            flags[i] = true;
        }
        Self { rows, small_rows, slacks, tight, targets: flags }
    }

    fn images(&self, g: &Circuit) -> Vec<BigInt> {
        let small_g: Option<Vec<i128>> = g.entries().iter().map(|x| x.to_i64().map(i128::from)).collect();
        if let (Some(rows), Some(g)) = (&self.small_rows, small_g) {
            let images: Option<Vec<i128>> = rows
                .iter()
                .map(|r| r.iter().zip(&g).try_fold(0i128, |acc, (a, b)| acc.checked_add(a.checked_mul(*b)?)))
                .collect();
            if let Some(images) = images {
                return images.into_iter().map(BigInt::from).collect();
            }
        }
        self.rows.iter().map(|r| r.iter().zip(g.entries()).map(|(a, b)| a * b).sum()).collect()
    }

    /// Whether `g` is feasible at the start and its maximal step ends on a target row.
    fn lands(&self, g: &Circuit) -> bool {
        let images = self.images(g);
        if self.tight.iter().any(|&i| images[i].is_positive()) {
            return false;
        }
        let mut best: Option<Rational> = None;
        let mut hits_target = false;
        for (i, bg) in images.iter().enumerate() {
            if !bg.is_positive() {
                continue;
            }
            let ratio = &self.slacks[i] / Rational::from(bg.clone());
            match best.as_ref().map(|b| ratio.cmp(b)) {
                Some(std::cmp::Ordering::Greater) => {}
                Some(std::cmp::Ordering::Equal) => hits_target |= self.targets[i],
                _ => {
                    best = Some(ratio);
                    hits_target = self.targets[i];
                }
            }
        }
        best.is_some() && hits_target
    }
}

/// Oriented circuits of `p` whose maximal step from `start` ends on a target row,
/// together with the number of circuit pairs examined.
fn landing_set(p: &Polyhedron, start: &[Rational], targets: &[usize], limits: &EnumLimits) -> Result<(usize, BTreeSet<Circuit>)> {
    let test = LandingTest::new(p, start, targets);
    let mut out = BTreeSet::new();
    let mut count = 0;
    for_each_circuit(p, limits, |g| {
        count += 1;
        for dir in [g.negated(), g] {
            if test.lands(&dir) {
                out.insert(dir);
            }
        }
    })?;
    Ok((count, out))
}

/// Compares the facet-entering circuit steps of the cut polytope and the prime polytope.
/// The circuits of the prime polytope are streamed, never stored.
pub fn check_claim1(h: &AuxGraph, epsilon: &Rational, limits: &EnumLimits) -> Result<Claim1Report> {
    let cut = build_p_h_eps(h, epsilon)?;
    let prime = build_p_prime(h, epsilon)?;
    let z_rows = prime.polytope.tight_rows(&prime.z)?.rows;
    let (cut_circuits, cut_steps) = landing_set(&cut.polytope, &cut.start, &[cut.facet_row], limits)?;
    let (prime_circuits, prime_steps) = landing_set(&prime.polytope, &prime.start, &z_rows, limits)?;
    Ok(Claim1Report { cut_circuits, prime_circuits, cut_steps, prime_steps })
}

/// Union of two arc-disjoint Hamiltonian dicycles.
fn random_decomposable(nodes: usize, rng: &mut ChaCha8Rng) -> Option<Digraph> {
    let cycle_arcs = |order: &[usize]| -> Vec<(usize, usize)> {
        (0..order.len()).map(|i| (order[i], order[(i + 1) % order.len()])).collect()
    };
    let mut first: Vec<usize> = (0..nodes).collect();
    first.shuffle(rng);
    let a = cycle_arcs(&first);
    for _ in 0..1000 {
        let mut second = first.clone();
        second.shuffle(rng);
        let b = cycle_arcs(&second);
        if b.iter().all(|arc| !a.contains(arc)) {
            let mut arcs = a.clone();
            arcs.extend(b);
            return Digraph::new(nodes, arcs).ok();
        }
    }
    None
}

/// Union of two random fixed-point-free permutations with no common arc.
fn random_two_regular(nodes: usize, rng: &mut ChaCha8Rng) -> Option<Digraph> {
    let derangement = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        loop {
            let mut p: Vec<usize> = (0..nodes).collect();
            p.shuffle(rng);
            if p.iter().enumerate().all(|(i, &v)| i != v) {
                return p;
            }
        }
    };
    for _ in 0..1000 {
        let f = derangement(rng);
        let g = derangement(rng);
        if (0..nodes).all(|v| f[v] != g[v]) {
            let arcs = (0..nodes).map(|v| (v, f[v])).chain((0..nodes).map(|v| (v, g[v]))).collect();
            return Digraph::new(nodes, arcs).ok();
        }
    }
    None
}

/// Number of sampling attempts for non-decomposable instances.
pub const NON_DECOMPOSABLE_ATTEMPTS: usize = 200;

/// A random 2-in-2-out Eulerian digraph.
///
/// Decomposable instances are two arc-disjoint Hamiltonian dicycles. Other
/// instances are sampled as unions of two derangements and kept only when the
/// circuit distance from the zero flow to the full flow exceeds 2.
pub fn generate_eulerian_2regular(nodes: usize, decomposable: bool, seed: u64, limits: &EnumLimits) -> Result<Digraph> {
    if nodes < 3 {
        return Err(Error::InvalidInput("at least 3 nodes are needed".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if decomposable {
        return random_decomposable(nodes, &mut rng)
            .ok_or_else(|| Error::GenerationFailed("no arc-disjoint Hamiltonian pair found".into()));
    }
    let zero = vec![Rational::zero(); 2 * nodes];
    let full = vec![Rational::one(); 2 * nodes];
    for _ in 0..NON_DECOMPOSABLE_ATTEMPTS {
        let Some(d) = random_two_regular(nodes, &mut rng) else { continue };
        let p = build_circulation_01(&d);
        if circuit_distance(&p, &zero, &full, 2, limits)?.verdict == DistanceVerdict::GreaterThan(2) {
            return Ok(d);
        }
    }
    Err(Error::GenerationFailed(format!(
        "no non-decomposable {nodes}-node instance within {NON_DECOMPOSABLE_ATTEMPTS} attempts"
    )))
}

/// Hand-built 2-in-2-out Eulerian digraphs without a pair of arc-disjoint Hamiltonian dicycles.
pub fn non_decomposable_library() -> Vec<Digraph> {
    let build = |nodes: usize, arcs: &[(usize, usize)]| Digraph::new(nodes, arcs.to_vec()).expect("library");
    vec![
        // Two complete digraphs on three nodes, side by side.
        build(6, &[(0, 1), (1, 2), (2, 0), (0, 2), (2, 1), (1, 0), (3, 4), (4, 5), (5, 3), (3, 5), (5, 4), (4, 3)]),
        // Two 2-cycles and a complete digraph on three nodes.
        build(7, &[(0, 1), (1, 0), (0, 2), (2, 0), (1, 3), (3, 1), (2, 3), (3, 2), (4, 5), (5, 6), (6, 4), (4, 6), (6, 5), (5, 4)]),
        // Two bidirected triangles joined by swapping one arc pair.
        build(6, &[(0, 1), (1, 2), (2, 0), (0, 2), (2, 1), (1, 3), (3, 4), (4, 5), (5, 3), (3, 5), (5, 4), (4, 0)]),
    ]
}
