//! Small named polyhedra and graphs used by tests, examples and the CLI.

use crate::matrix::RationalMatrix;
use crate::network::{Digraph, FlowNetwork};
use crate::polyhedron::Polyhedron;
use crate::rational::{rat, rat_vec, Rational};

fn from_rows(rows: &[(&[i64], i64)]) -> Polyhedron {
    let m = RationalMatrix::from_i64(&rows.iter().map(|(r, _)| r.to_vec()).collect::<Vec<_>>());
    Polyhedron::from_inequalities(m, rows.iter().map(|&(_, d)| rat(d)).collect())
        .expect("consistent fixture")
}

/// `[0,1]^2` with rows `x <= 1, y <= 1, -x <= 0, -y <= 0`.
pub fn unit_square() -> Polyhedron {
    unit_cube(2)
}

/// `[0,1]^n`: rows `x_i <= 1` first, then `-x_i <= 0`.
pub fn unit_cube(n: usize) -> Polyhedron {
    box_polytope(&vec![1; n])
}

/// `prod [0, u_i]` with upper-bound rows first.
pub fn box_polytope(upper: &[i64]) -> Polyhedron {
    let n = upper.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (sign, bound) in [(1, true), (-1, false)] {
        for (i, &u) in upper.iter().enumerate() {
            let mut r = vec![0; n];
            r[i] = sign;
            rows.push(r);
            rhs.push(if bound { rat(u) } else { rat(0) });
        }
    }
    Polyhedron::from_inequalities(RationalMatrix::from_i64(&rows), rhs).expect("consistent fixture")
}

/// `{x >= 0, y >= 0, x + y <= 1}` with rows `-x <= 0, -y <= 0, x + y <= 1`.
pub fn triangle() -> Polyhedron {
    from_rows(&[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)])
}

/// The hexagon with vertices (0,0), (1,2), (9,3), (10,0), (9,-3), (1,-2).
pub fn hexagon() -> Polyhedron {
    from_rows(&[
        (&[-2, 1], 0),
        (&[-1, 8], 15),
        (&[3, 1], 30),
        (&[3, -1], 30),
        (&[-1, -8], 15),
        (&[-2, -1], 0),
    ])
}

/// Start and target vertices of [`hexagon`].
pub fn hexagon_endpoints() -> (Vec<Rational>, Vec<Rational>) {
    (rat_vec(&[0, 0]), rat_vec(&[10, 0]))
}

/// Affinely regular hexagon with vertices (1,0), (1,1), (0,1), (-1,0), (-1,-1), (0,-1).
pub fn rational_regular_hexagon() -> Polyhedron {
    from_rows(&[
        (&[1, 0], 1),
        (&[0, 1], 1),
        (&[-1, 1], 1),
        (&[-1, 0], 1),
        (&[0, -1], 1),
        (&[1, -1], 1),
    ])
}

/// Simplex with vertices 0, e1, e2, e3.
pub fn simplex3() -> Polyhedron {
    from_rows(&[(&[-1, 0, 0], 0), (&[0, -1, 0], 0), (&[0, 0, -1], 0), (&[1, 1, 1], 1)])
}

/// Triangular prism `triangle x [0, 1]`.
pub fn triangular_prism() -> Polyhedron {
    from_rows(&[
        (&[-1, 0, 0], 0),
        (&[0, -1, 0], 0),
        (&[1, 1, 0], 1),
        (&[0, 0, -1], 0),
        (&[0, 0, 1], 1),
    ])
}

/// Directed triangle 0 -> 1 -> 2 -> 0.
pub fn directed_triangle() -> Digraph {
    Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).expect("fixture")
}

/// The 6-node 2-in-2-out digraph made of an outer 6-cycle and a chord 6-cycle
/// (nodes 1..6 mapped to 0..5). Arcs 0..6 form the outer cycle, 6..12 the chords.
pub fn six_node_eulerian() -> Digraph {
    let outer = [(2, 1), (3, 2), (4, 3), (5, 4), (6, 5), (1, 6)];
    let chord = [(3, 1), (5, 3), (2, 5), (6, 2), (4, 6), (1, 4)];
    let arcs = outer.iter().chain(&chord).map(|&(t, h)| (t - 1, h - 1)).collect();
    Digraph::new(6, arcs).expect("fixture")
}

/// Node names of [`residual_example`].
pub const RESIDUAL_EXAMPLE_NODES: [&str; 4] = ["s", "a", "c", "t"];

/// Four-node network s, a, c, t with a feasible flow of value 4.
pub fn residual_example() -> (FlowNetwork, Vec<Rational>) {
    let (s, a, c, t) = (0, 1, 2, 3);
    let arcs = [(s, a, 2), (s, c, 3), (a, c, 2), (a, t, 1), (c, t, 4)];
    let net = FlowNetwork::new(
        4,
        arcs.iter().map(|&(u, v, cap)| (u, v, rat(cap))).collect(),
        rat_vec(&[-4, 0, 0, 4]),
    )
    .expect("fixture");
    (net, rat_vec(&[2, 2, 2, 0, 4]))
}

/// Node names of [`hamiltonian_path_example`].
pub const HAMILTONIAN_PATH_NODES: [&str; 4] = ["s", "x", "y", "t"];

/// Digraph on s, x, y, t with arcs s->x, x->y, s->t, y->s, y->t; s = 0, t = 3.
pub fn hamiltonian_path_example() -> Digraph {
    Digraph::new(4, vec![(0, 1), (1, 2), (0, 3), (2, 0), (2, 3)]).expect("fixture")
}

/// Path 0->1->2 with the chord 0->2; s = 0, t = 2.
pub fn hamiltonian_path_triangle() -> Digraph {
    Digraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).expect("fixture")
}

/// Path 0->1->2->3 with the chord 0->2; s = 0, t = 3.
pub fn hamiltonian_path_chord() -> Digraph {
    Digraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 2)]).expect("fixture")
}
