//! Exact circuit walks on rational polyhedra.

pub mod circuits;
pub mod error;
pub mod gadgets;
pub mod geometry;
pub mod instances;
pub mod length;
pub mod limits;
pub mod lp;
pub mod matrix;
pub mod network;
pub mod oracles;
pub mod polyhedron;
pub mod rational;
pub mod tu;
pub mod walks;

pub use circuits::{
    build_circuit_model, build_sc_face, enumerate_circuits, for_each_circuit, is_circuit, model_vertex_to_circuit,
    Circuit, CircuitModel,
};
pub use error::{Error, Result};
pub use gadgets::{
    build_aux_graph, build_matching_polytope, build_p_h_eps, build_p_prime, check_claim1, generate_eulerian_2regular,
    non_decomposable_library, AuxGraph, Claim1Report, CutPolytope, GadgetConstants, PrimePolytope, UndirectedGraph,
};
pub use geometry::{
    check_symmetric_inner_cone, inner_cone, is_nd_parallelotope, non_edge_maximal_walk, restricted_inner_cone, InnerCone,
    ParallelotopeReport,
};
pub use length::{Length, Norm};
pub use limits::EnumLimits;
pub use lp::{lp_solve, LpResult, LpStatus, Sense};
pub use matrix::{RationalMatrix, RowBasis};
pub use oracles::{
    circuit_distance, facet_step_bruteforce, geometric_distance, incident_facet_step_bruteforce, sc_decomp_distance,
    scm_circuit_distance, scm_step_bruteforce, CircuitCatalog, DistanceResult, DistanceVerdict, FoundStep,
    GeometricResult,
};
pub use polyhedron::{is_totally_unimodular, Polyhedron, TightSet};
pub use tu::{tu_facet_step, tu_incident_facet_step, tu_scm_step, TuOptions, TuStep};
pub use rational::{normalize_coprime, parse_rational, Rational};
pub use walks::{
    greedy_sc_decomposition, is_sign_compatible, max_step, verify_walk, walk_length, CircuitWalk, Decomposition,
    Requirement, StepOutcome, WalkStep, WalkVerdict,
};
