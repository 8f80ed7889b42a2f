//! Flow networks, residual networks and the cycle-based step algorithms.
//!
//! Incidence convention: the column of arc `(u, v)` has `-1` at `u` and `+1`
//! at `v`, so a balance is inflow minus outflow.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::circuits::Circuit;
use crate::error::{check_len, Error, Result};
use crate::matrix::RationalMatrix;
use crate::polyhedron::Polyhedron;
use crate::rational::{parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    nodes: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(nodes: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        for &(t, h) in &arcs {
            if t >= nodes || h >= nodes {
                return Err(Error::InvalidInput(format!("arc ({t}, {h}) leaves the node range")));
            }
            if t == h {
                return Err(Error::InvalidInput(format!("loop at node {t}")));
            }
        }
        Ok(Self { nodes, arcs })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.0 == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.1 == v).count()
    }

    pub fn incidence_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.nodes, self.arcs.len());
        for (e, &(t, h)) in self.arcs.iter().enumerate() {
            m.set(t, e, rat(-1));
            m.set(h, e, rat(1));
        }
        m
    }

    /// Graph-file text with unit capacities.
    pub fn to_text(&self) -> String {
        FlowNetwork::unit_circulation(self).to_text()
    }

    /// Reads a graph file, ignoring capacities, balances and flows.
    pub fn parse(text: &str) -> Result<Self> {
        Ok(FlowNetwork::parse(text)?.digraph())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    arcs: Vec<FlowArc>,
    balances: Vec<Rational>,
}

impl FlowNetwork {
    pub fn new(
        nodes: usize,
        arcs: Vec<(usize, usize, Rational)>,
        balances: Vec<Rational>,
    ) -> Result<Self> {
        check_len(nodes, balances.len())?;
        let graph = Digraph::new(nodes, arcs.iter().map(|a| (a.0, a.1)).collect())?;
        let mut out = Vec::with_capacity(arcs.len());
        for ((tail, head), (_, _, capacity)) in graph.arcs.into_iter().zip(arcs) {
            if capacity.is_negative() {
                return Err(Error::InvalidInput(format!("negative capacity on arc ({tail}, {head})")));
            }
            out.push(FlowArc { tail, head, capacity });
        }
        Ok(Self { nodes, arcs: out, balances })
    }

    /// Zero balances and unit capacities.
    pub fn unit_circulation(g: &Digraph) -> Self {
        Self {
            nodes: g.nodes,
            arcs: g.arcs.iter().map(|&(tail, head)| FlowArc { tail, head, capacity: rat(1) }).collect(),
            balances: vec![Rational::zero(); g.nodes],
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn balances(&self) -> &[Rational] {
        &self.balances
    }

    pub fn digraph(&self) -> Digraph {
        Digraph { nodes: self.nodes, arcs: self.arcs.iter().map(|a| (a.tail, a.head)).collect() }
    }

    /// Capacity bounds and flow conservation, exactly.
    pub fn check_flow(&self, x: &[Rational]) -> Result<()> {
        check_len(self.arcs.len(), x.len())?;
        for (e, (a, v)) in self.arcs.iter().zip(x).enumerate() {
            if v.is_negative() || v > &a.capacity {
                return Err(Error::InfeasibleFlow(format!("arc {e} carries {v} outside [0, {}]", a.capacity)));
            }
        }
        let mut net = vec![Rational::zero(); self.nodes];
        for (a, v) in self.arcs.iter().zip(x) {
            net[a.tail] -= v;
            net[a.head] += v;
        }
        for (i, (got, want)) in net.iter().zip(&self.balances).enumerate() {
            if got != want {
                return Err(Error::InfeasibleFlow(format!("node {i} has balance {got}, expected {want}")));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("nodes {}\n", self.nodes);
        for a in &self.arcs {
            let _ = writeln!(out, "arc {} {} {}", a.tail, a.head, a.capacity);
        }
        for (i, b) in self.balances.iter().enumerate() {
            if !b.is_zero() {
                let _ = writeln!(out, "balance {i} {b}");
            }
        }
        out
    }

    /// Reads `nodes`, `arc` and `balance` lines; `flow` lines are skipped.
    /// A missing capacity defaults to 1.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut nodes: Option<usize> = None;
        let mut arcs = Vec::new();
        let mut balances: Vec<(usize, usize, Rational)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let index = |s: &str| s.parse::<usize>().map_err(|_| err(line, format!("bad index '{s}'")));
            match fields.as_slice() {
                ["nodes", k] if nodes.is_none() => nodes = Some(index(k)?),
                ["nodes", _] => return Err(err(line, "repeated 'nodes' header".into())),
                ["arc", t, h, rest @ ..] if rest.len() <= 1 => {
                    if nodes.is_none() {
                        return Err(err(line, "'nodes <k>' must come first".into()));
                    }
                    let cap = match rest {
                        [c] => parse_rational(c).map_err(|m| err(line, m))?,
                        _ => rat(1),
                    };
                    arcs.push((index(t)?, index(h)?, cap, line));
                }
                ["balance", v, b] => {
                    balances.push((line, index(v)?, parse_rational(b).map_err(|m| err(line, m))?));
                }
                ["flow", ..] => {}
                _ => return Err(err(line, format!("unrecognised line '{content}'"))),
            }
        }
        let nodes = nodes.ok_or_else(|| err(1, "missing 'nodes <k>' header".into()))?;
        for &(t, h, _, line) in &arcs {
            if t >= nodes || h >= nodes || t == h {
                return Err(err(line, format!("invalid arc {t} -> {h}")));
            }
        }
        let mut b = vec![Rational::zero(); nodes];
        for (line, v, value) in balances {
            if v >= nodes {
                return Err(err(line, format!("node {v} out of range")));
            }
            b[v] = value;
        }
        let line_of: Vec<usize> = arcs.iter().map(|a| a.3).collect();
        Self::new(nodes, arcs.into_iter().map(|(t, h, c, _)| (t, h, c)).collect(), b).map_err(|e| {
            err(line_of.first().copied().unwrap_or(1), e.to_string())
        })
    }
}

/// Reads `flow <arc> <value>` lines; unspecified arcs carry zero.
pub fn parse_flow(text: &str, arcs: usize) -> Result<Vec<Rational>> {
    let mut x = vec![Rational::zero(); arcs];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let fields: Vec<&str> = content.split_whitespace().collect();
        if let ["flow", e, v] = fields.as_slice() {
            let e: usize = e
                .parse()
                .ok()
                .filter(|&e| e < arcs)
                .ok_or_else(|| Error::Parse { line, message: format!("bad arc index '{e}'") })?;
            x[e] = parse_rational(v).map_err(|message| Error::Parse { line, message })?;
        } else if fields.first() == Some(&"flow") {
            return Err(Error::Parse { line, message: "expected 'flow <arc> <value>'".into() });
        }
    }
    Ok(x)
}

pub fn format_flow(x: &[Rational]) -> String {
    let mut out = String::new();
    for (e, v) in x.iter().enumerate() {
        let _ = writeln!(out, "flow {e} {v}");
    }
    out
}

/// `{x : A_G x = b, 0 <= x <= u}` with `B = (I; -I)` and `d = (u; 0)`.
pub fn build_flow_polytope(net: &FlowNetwork) -> Polyhedron {
    let m = net.arcs.len();
    let identity = RationalMatrix::identity(m);
    let mut neg = RationalMatrix::zeros(m, m);
    for e in 0..m {
        neg.set(e, e, rat(-1));
    }
    let mut d: Vec<Rational> = net.arcs.iter().map(|a| a.capacity.clone()).collect();
    d.extend(std::iter::repeat_n(Rational::zero(), m));
    Polyhedron::new(
        m,
        net.digraph().incidence_matrix(),
        net.balances.clone(),
        identity.vstack(&neg).expect("square blocks"),
        d,
    )
    .expect("consistent flow polytope")
}

/// The 0/1-circulation polytope of `g`.
pub fn build_circulation_01(g: &Digraph) -> Polyhedron {
    build_flow_polytope(&FlowNetwork::unit_circulation(g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualArc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Rational,
    pub direction: Direction,
    /// Index of the original arc.
    pub arc: usize,
}

impl fmt::Display for ResidualArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.direction {
            Direction::Forward => "forward",
            Direction::Reversed => "reversed",
        };
        write!(f, "{} -> {} capacity {} {} arc {}", self.tail, self.head, self.capacity, kind, self.arc)
    }
}

/// Residual arcs in ascending original-arc order, forward copy first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualNetwork {
    nodes: usize,
    arcs: Vec<ResidualArc>,
}

impl ResidualNetwork {
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[ResidualArc] {
        &self.arcs
    }

    fn find(&self, arc: usize, direction: Direction) -> Option<usize> {
        self.arcs.iter().position(|a| a.arc == arc && a.direction == direction)
    }

    /// Dicycle through residual arc `start` using only arcs accepted by
    /// `allowed`, never revisiting a node and never reusing `start`'s original arc.
    fn cycle_through(&self, start: usize, allowed: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
        let first = &self.arcs[start];
        let mut adjacency = vec![Vec::new(); self.nodes];
        for (i, a) in self.arcs.iter().enumerate() {
            if i != start && a.arc != first.arc && allowed(i) {
                adjacency[a.tail].push(i);
            }
        }
        let mut visited = vec![false; self.nodes];
        visited[first.head] = true;
        let mut path = vec![start];
        if self.dfs(first.head, first.tail, &adjacency, &mut visited, &mut path) {
            Some(path)
        } else {
            None
        }
    }

    fn dfs(
        &self,
        node: usize,
        target: usize,
        adjacency: &[Vec<usize>],
        visited: &mut [bool],
        path: &mut Vec<usize>,
    ) -> bool {
        if node == target {
            return true;
        }
        for &a in &adjacency[node] {
            let next = self.arcs[a].head;
            if visited[next] {
                continue;
            }
            visited[next] = true;
            path.push(a);
            if self.dfs(next, target, adjacency, visited, path) {
                return true;
            }
            path.pop();
        }
        false
    }

    fn to_cycle(&self, path: &[usize]) -> Vec<(usize, Direction)> {
        path.iter().map(|&i| (self.arcs[i].arc, self.arcs[i].direction)).collect()
    }
}

pub fn residual(net: &FlowNetwork, x: &[Rational]) -> Result<ResidualNetwork> {
    net.check_flow(x)?;
    let mut arcs = Vec::new();
    for (e, (a, v)) in net.arcs.iter().zip(x).enumerate() {
        let spare = &a.capacity - v;
        if spare.is_positive() {
            arcs.push(ResidualArc { tail: a.tail, head: a.head, capacity: spare, direction: Direction::Forward, arc: e });
        }
        if v.is_positive() {
            arcs.push(ResidualArc { tail: a.head, head: a.tail, capacity: v.clone(), direction: Direction::Reversed, arc: e });
        }
    }
    Ok(ResidualNetwork { nodes: net.nodes, arcs })
}

/// `+1` on arcs traversed along their orientation, `-1` against it.
pub fn cycle_to_circuit(net: &FlowNetwork, cycle: &[(usize, Direction)]) -> Result<Circuit> {
    let bad = |why: &str| Error::InvalidInput(format!("non-simple cycle: {why}"));
    if cycle.is_empty() {
        return Err(bad("empty"));
    }
    let m = net.arcs.len();
    let mut g = vec![BigInt::zero(); m];
    let mut seen_nodes = vec![false; net.nodes];
    let steps: Vec<(usize, usize)> = cycle
        .iter()
        .map(|&(e, dir)| {
            let a = net.arcs.get(e).ok_or_else(|| bad("arc index out of range"))?;
            Ok(match dir {
                Direction::Forward => (a.tail, a.head),
                Direction::Reversed => (a.head, a.tail),
            })
        })
        .collect::<Result<_>>()?;
    for (k, &(e, dir)) in cycle.iter().enumerate() {
        let (from, to) = steps[k];
        if to != steps[(k + 1) % steps.len()].0 {
            return Err(bad("consecutive arcs do not meet"));
        }
        if std::mem::replace(&mut seen_nodes[from], true) {
            return Err(bad("repeated node"));
        }
        if !g[e].is_zero() {
            return Err(bad("repeated arc"));
        }
        g[e] = BigInt::from(if dir == Direction::Forward { 1 } else { -1 });
    }
    Ok(Circuit::new(g))
}

/// A circuit found by a residual-cycle search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfStep {
    pub circuit: Circuit,
    pub cycle: Vec<(usize, Direction)>,
    /// The arc whose bound the step reaches (or keeps, for shared bounds).
    pub arc: usize,
    /// Required step length; `None` when the cycle only keeps a shared bound.
    pub kappa: Option<Rational>,
}

/// Candidate arcs in ascending order: `(arc, residual copy to use, kappa)`.
fn entering_arcs(net: &FlowNetwork, x: &[Rational], y: &[Rational]) -> Vec<(usize, Direction, Rational)> {
    let mut out = Vec::new();
    for (e, a) in net.arcs.iter().enumerate() {
        if x[e] > y[e] && y[e].is_zero() {
            out.push((e, Direction::Reversed, &x[e] - &y[e]));
        } else if x[e] < y[e] && y[e] == a.capacity {
            out.push((e, Direction::Forward, &y[e] - &x[e]));
        }
    }
    out
}

/// A circuit whose maximal step from `x` lands on a bound that is tight at `y`.
///
/// Arcs whose bound becomes tight are tried first. When none yields a cycle,
/// any residual cycle avoiding an arc already at a bound shared with `y` also
/// qualifies, since the step keeps that bound tight.
pub fn nf_incident_facet_step(net: &FlowNetwork, x: &[Rational], y: &[Rational]) -> Result<Option<NfStep>> {
    net.check_flow(y)?;
    let res = residual(net, x)?;
    for (e, dir, kappa) in entering_arcs(net, x, y) {
        let start = res.find(e, dir).expect("residual copy exists when the bound is not tight");
        let keep = |i: usize| res.arcs[i].capacity >= kappa;
        if let Some(path) = res.cycle_through(start, &keep) {
            let cycle = res.to_cycle(&path);
            return Ok(Some(NfStep { circuit: cycle_to_circuit(net, &cycle)?, cycle, arc: e, kappa: Some(kappa) }));
        }
    }
    for (e, a) in net.arcs.iter().enumerate() {
        let shared = (x[e].is_zero() && y[e].is_zero()) || (x[e] == a.capacity && y[e] == a.capacity);
        if !shared {
            continue;
        }
        let avoid = |i: usize| res.arcs[i].arc != e;
        for start in (0..res.arcs.len()).filter(|&i| avoid(i)) {
            if let Some(path) = res.cycle_through(start, &avoid) {
                let cycle = res.to_cycle(&path);
                return Ok(Some(NfStep { circuit: cycle_to_circuit(net, &cycle)?, cycle, arc: e, kappa: None }));
            }
        }
    }
    Ok(None)
}

/// A sign-compatible maximal step from `x` toward `y`, found by a residual-cycle search.
pub fn nf_scm_step(net: &FlowNetwork, x: &[Rational], y: &[Rational]) -> Result<Option<NfStep>> {
    net.check_flow(y)?;
    let res = residual(net, x)?;
    for (e, dir, kappa) in entering_arcs(net, x, y) {
        let start = res.find(e, dir).expect("residual copy exists when the bound is not tight");
        let keep = |i: usize| {
            let r = &res.arcs[i];
            let (xa, ya) = (&x[r.arc], &y[r.arc]);
            let wrong_way = match r.direction {
                Direction::Reversed => xa <= ya,
                Direction::Forward => xa >= ya,
            };
            !wrong_way && (ya - xa).abs() >= kappa
        };
        if let Some(path) = res.cycle_through(start, &keep) {
            let cycle = res.to_cycle(&path);
            return Ok(Some(NfStep { circuit: cycle_to_circuit(net, &cycle)?, cycle, arc: e, kappa: Some(kappa) }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::is_circuit;
    use crate::instances;
    use crate::limits::EnumLimits;
    use crate::rational::rat_vec;

    #[test]
    fn triangle_polytope_vertices() {
        let p = build_circulation_01(&instances::directed_triangle());
        let v = p.enumerate_vertices(&EnumLimits::default()).unwrap();
        assert_eq!(v, vec![rat_vec(&[0, 0, 0]), rat_vec(&[1, 1, 1])]);
        let two = Digraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(build_circulation_01(&two).enumerate_vertices(&EnumLimits::default()).unwrap().len(), 4);
    }

    #[test]
    fn forced_single_arc() {
        let net = FlowNetwork::new(2, vec![(0, 1, rat(1))], rat_vec(&[-1, 1])).unwrap();
        let p = build_flow_polytope(&net);
        assert_eq!(p.enumerate_vertices(&EnumLimits::default()).unwrap(), vec![rat_vec(&[1])]);
    }

    #[test]
    fn residual_extremes() {
        let net = FlowNetwork::unit_circulation(&instances::directed_triangle());
        let zero = residual(&net, &rat_vec(&[0, 0, 0])).unwrap();
        assert!(zero.arcs().iter().all(|a| a.direction == Direction::Forward));
        assert_eq!(zero.arcs().len(), 3);
        let full = residual(&net, &rat_vec(&[1, 1, 1])).unwrap();
        assert!(full.arcs().iter().all(|a| a.direction == Direction::Reversed));
        assert!(residual(&net, &rat_vec(&[1, 0, 0])).is_err());
    }

    #[test]
    fn cycles_to_circuits() {
        let tri = FlowNetwork::unit_circulation(&instances::directed_triangle());
        let fwd = [(0, Direction::Forward), (1, Direction::Forward), (2, Direction::Forward)];
        assert_eq!(cycle_to_circuit(&tri, &fwd).unwrap(), Circuit::from_i64(&[1, 1, 1]));
        let two = FlowNetwork::unit_circulation(&Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap());
        let c = cycle_to_circuit(&two, &[(0, Direction::Forward), (1, Direction::Forward)]).unwrap();
        assert_eq!(c, Circuit::from_i64(&[1, 1]));
        // 4-cycle 0->1->2->3 with the last arc stored as 0->3.
        let sq = FlowNetwork::unit_circulation(&Digraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap());
        let cyc = [(0, Direction::Forward), (1, Direction::Forward), (2, Direction::Forward), (3, Direction::Reversed)];
        let g = cycle_to_circuit(&sq, &cyc).unwrap();
        assert_eq!(g, Circuit::from_i64(&[1, 1, 1, -1]));
        assert!(is_circuit(&build_flow_polytope(&sq), g.entries()));
        assert!(cycle_to_circuit(&two, &[(0, Direction::Forward), (0, Direction::Reversed)]).is_err());
    }

    #[test]
    fn nf_steps_on_triangle() {
        let net = FlowNetwork::unit_circulation(&instances::directed_triangle());
        let (zero, full) = (rat_vec(&[0, 0, 0]), rat_vec(&[1, 1, 1]));
        let s = nf_incident_facet_step(&net, &zero, &full).unwrap().unwrap();
        assert_eq!(s.circuit, Circuit::from_i64(&[1, 1, 1]));
        let s = nf_scm_step(&net, &zero, &full).unwrap().unwrap();
        assert_eq!(s.circuit, Circuit::from_i64(&[1, 1, 1]));
        assert_eq!(nf_incident_facet_step(&net, &zero, &zero).unwrap(), None);
        assert_eq!(nf_scm_step(&net, &full, &full).unwrap(), None);
    }

    #[test]
    fn graph_file_round_trip() {
        let (net, x) = instances::residual_example();
        let text = net.to_text() + &format_flow(&x);
        let back = FlowNetwork::parse(&text).unwrap();
        assert_eq!(back, net);
        assert_eq!(parse_flow(&text, net.arcs().len()).unwrap(), x);
        assert!(matches!(FlowNetwork::parse("nodes 2\narc 0 5 1\n"), Err(Error::Parse { line: 2, .. })));
    }
}
