//! Independent reference implementations used to cross-check the library.
//! None of these share code paths with the routines they check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use circuit_walks::gadgets::UndirectedGraph;
use circuit_walks::network::{Digraph, FlowNetwork};
use circuit_walks::{lp_solve, LpStatus, Polyhedron, RationalMatrix, Rational, Sense};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form by plain Gauss-Jordan elimination; returns the pivot columns.
fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    rref(&mut rows.to_vec(), cols).len()
}

/// Coprime integer generator of a one-dimensional kernel, if the kernel has dimension one.
fn kernel_line(rows: &[Vec<Rational>], cols: usize) -> Option<Vec<BigInt>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    if pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut g = vec![Rational::zero(); cols];
    g[free] = Rational::one();
    for (row, &p) in m.iter().zip(&pivots) {
        g[p] = -row[free].clone();
    }
    Some(primitive(&g))
}

pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

fn canonical(g: Vec<BigInt>) -> Vec<BigInt> {
    match g.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => g.into_iter().map(|x| -x).collect(),
        _ => g,
    }
}

/// Circuits as kernels of `(A; B_S)` over all row subsets `S` of size `n - 1 - rank(A)`.
pub fn circuits_by_row_subsets(p: &Polyhedron) -> BTreeSet<Vec<BigInt>> {
    let n = p.dim();
    let eq: Vec<Vec<Rational>> = (0..p.eq().rows()).map(|i| p.eq().row(i).to_vec()).collect();
    let eq_rank = rank(&eq, n);
    let mut out = BTreeSet::new();
    if eq_rank >= n {
        return out;
    }
    let size = n - 1 - eq_rank;
    let rows = p.num_ineq();
    let mut subset: Vec<usize> = (0..size).collect();
    loop {
        let mut system = eq.clone();
        system.extend(subset.iter().map(|&i| p.ineq().row(i).to_vec()));
        if let Some(g) = kernel_line(&system, n) {
            out.insert(canonical(g));
        }
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] < rows - size + i {
                subset[i] += 1;
                for j in i + 1..size {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
        if size == 0 {
            return out;
        }
    }
}

/// Signed arc vectors of the simple cycles of the underlying undirected multigraph.
pub fn undirected_cycles(d: &Digraph) -> BTreeSet<Vec<BigInt>> {
    let arcs = d.arcs();
    let mut out = BTreeSet::new();
    // every cycle is found from its smallest arc, traversed tail-first
    for (start, &(t0, h0)) in arcs.iter().enumerate() {
        let mut used = vec![false; arcs.len()];
        used[start] = true;
        let mut visited = vec![false; d.nodes()];
        visited[h0] = true;
        let mut signs = vec![0i64; arcs.len()];
        signs[start] = 1;
        extend_cycle(arcs, start, h0, t0, &mut used, &mut visited, &mut signs, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_cycle(
    arcs: &[(usize, usize)],
    start: usize,
    node: usize,
    target: usize,
    used: &mut [bool],
    visited: &mut [bool],
    signs: &mut [i64],
    out: &mut BTreeSet<Vec<BigInt>>,
) {
    if node == target {
        out.insert(canonical(signs.iter().map(|&s| BigInt::from(s)).collect()));
        return;
    }
    for (e, &(t, h)) in arcs.iter().enumerate() {
        if e <= start || used[e] {
            continue;
        }
        let (next, sign) = if t == node {
            (h, 1)
        } else if h == node {
            (t, -1)
        } else {
            continue;
        };
        if visited[next] {
            continue;
        }
        used[e] = true;
        visited[next] = true;
        signs[e] = sign;
        extend_cycle(arcs, start, next, target, used, visited, signs, out);
        signs[e] = 0;
        visited[next] = false;
        used[e] = false;
    }
}

/// Arc sets of all Hamiltonian dicycles, as sorted arc-index lists.
pub fn hamiltonian_dicycles(d: &Digraph) -> Vec<Vec<usize>> {
    let n = d.nodes();
    let mut out = Vec::new();
    let mut path_arcs = Vec::new();
    let mut visited = vec![false; n];
    visited[0] = true;
    hamiltonian_extend(d, 0, 1, &mut visited, &mut path_arcs, &mut out);
    out
}

fn hamiltonian_extend(
    d: &Digraph,
    node: usize,
    depth: usize,
    visited: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for (e, &(t, h)) in d.arcs().iter().enumerate() {
        if t != node {
            continue;
        }
        if depth == d.nodes() && h == 0 {
            let mut cycle = path.clone();
            cycle.push(e);
            cycle.sort_unstable();
            out.push(cycle);
        } else if !visited[h] {
            visited[h] = true;
            path.push(e);
            hamiltonian_extend(d, h, depth + 1, visited, path, out);
            path.pop();
            visited[h] = false;
        }
    }
}

/// Whether the arcs split into two arc-disjoint Hamiltonian dicycles.
pub fn has_hamiltonian_decomposition(d: &Digraph) -> bool {
    let cycles = hamiltonian_dicycles(d);
    let all: BTreeSet<usize> = (0..d.arcs().len()).collect();
    cycles.iter().enumerate().any(|(i, a)| {
        cycles[i + 1..].iter().any(|b| {
            let union: BTreeSet<usize> = a.iter().chain(b).copied().collect();
            union == all && a.len() + b.len() == all.len()
        })
    })
}

/// Largest `lambda` with `x + lambda g` in `p`, by linear programming in `lambda`.
/// `Err(())` signals an unbounded ray.
pub fn lp_max_step(p: &Polyhedron, x: &[Rational], g: &[Rational]) -> Result<Rational, ()> {
    let rows: Vec<Vec<Rational>> = (0..p.num_ineq()).map(|i| vec![dot(p.ineq().row(i), g)]).collect();
    let rhs: Vec<Rational> = (0..p.num_ineq()).map(|i| &p.ineq_rhs()[i] - dot(p.ineq().row(i), x)).collect();
    let mut ineq = rows;
    ineq.push(vec![q(-1)]);
    let mut ineq_rhs = rhs;
    ineq_rhs.push(q(0));
    let res = lp_solve(
        &[q(1)],
        Sense::Maximize,
        &RationalMatrix::zeros(0, 1),
        &[],
        &RationalMatrix::from_rows(1, ineq).unwrap(),
        &ineq_rhs,
    )
    .unwrap();
    match res.status {
        LpStatus::Optimal => Ok(res.optimal_value.unwrap()),
        LpStatus::Unbounded => Err(()),
        LpStatus::Infeasible => panic!("start point infeasible"),
    }
}

pub fn inside(p: &Polyhedron, x: &[Rational]) -> bool {
    (0..p.eq().rows()).all(|i| dot(p.eq().row(i), x) == p.eq_rhs()[i])
        && (0..p.num_ineq()).all(|i| dot(p.ineq().row(i), x) <= p.ineq_rhs()[i])
}

pub fn polytope(rows: &[(Vec<i64>, i64)]) -> Polyhedron {
    let m = RationalMatrix::from_i64(&rows.iter().map(|(r, _)| r.clone()).collect::<Vec<_>>());
    Polyhedron::from_inequalities(m, rows.iter().map(|(_, d)| q(*d)).collect()).unwrap()
}

/// Box with random integer upper bounds in `1..=3`.
pub fn random_box(rng: &mut ChaCha8Rng, dim: usize) -> Polyhedron {
    let upper: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=3)).collect();
    circuit_walks::instances::box_polytope(&upper)
}

/// Connected random digraph on `nodes` nodes with `arcs` distinct arcs, no loops.
pub fn random_digraph(rng: &mut ChaCha8Rng, nodes: usize, arcs: usize) -> Digraph {
    let mut all: Vec<(usize, usize)> =
        (0..nodes).flat_map(|a| (0..nodes).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    loop {
        all.shuffle(rng);
        let chosen: Vec<(usize, usize)> = all[..arcs].to_vec();
        let mut reach = vec![false; nodes];
        reach[0] = true;
        for _ in 0..nodes {
            for &(a, b) in &chosen {
                if reach[a] || reach[b] {
                    reach[a] = true;
                    reach[b] = true;
                }
            }
        }
        if reach.iter().all(|&r| r) {
            return Digraph::new(nodes, chosen).unwrap();
        }
    }
}

/// Random bipartite graph with sides of size `left` and `right` and `edges` distinct edges.
pub fn random_bipartite(rng: &mut ChaCha8Rng, left: usize, right: usize, edges: usize) -> UndirectedGraph {
    let mut all: Vec<(usize, usize)> = (0..left).flat_map(|a| (0..right).map(move |b| (a, left + b))).collect();
    all.shuffle(rng);
    UndirectedGraph::new(left + right, all[..edges].to_vec()).unwrap()
}

pub fn unit_network(d: &Digraph) -> FlowNetwork {
    FlowNetwork::unit_circulation(d)
}
