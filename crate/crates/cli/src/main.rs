//! `cwalk`: command-line access to circuit enumeration, walk verification,
//! distance oracles, single-step searches and the reduction gadgets.
//!
//! The first output line is a single machine-readable verdict. Exit status is
//! 0 when an answer was produced, 1 for "none" or "greater than", 2 for input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use circuit_walks::gadgets::{AuxGraph, EdgeKind};
use circuit_walks::network::{build_circulation_01, nf_incident_facet_step, nf_scm_step, Digraph, FlowNetwork, NfStep};
use circuit_walks::oracles::FoundStep;
use circuit_walks::rational::{format_vector, parse_vector};
use circuit_walks::{
    build_aux_graph, build_p_h_eps, build_p_prime, check_claim1, circuit_distance, enumerate_circuits,
    facet_step_bruteforce, generate_eulerian_2regular, geometric_distance, incident_facet_step_bruteforce,
    is_circuit, is_nd_parallelotope, max_step, parse_rational, sc_decomp_distance, scm_circuit_distance,
    scm_step_bruteforce, tu_facet_step, tu_incident_facet_step, tu_scm_step, verify_walk, walk_length, Circuit,
    CircuitWalk, DistanceResult, DistanceVerdict, EnumLimits, Error, Norm, Polyhedron, Rational, StepOutcome,
    TuOptions, TuStep,
};

/// `println!` that ignores a closed stdout, e.g. when piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "cwalk", version, about = "Exact circuit walks on rational polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all circuits up to sign.
    Circuits { poly: PathBuf },
    /// Decide whether an integer vector is a circuit.
    IsCircuit { poly: PathBuf, vector: String },
    /// Maximal step from a point along a circuit.
    Maxstep { poly: PathBuf, point: String, circuit: String },
    /// Check a walk file against the circuit walk requirements.
    WalkVerify {
        poly: PathBuf,
        walk: PathBuf,
        #[arg(long)]
        sign_compatible: bool,
    },
    /// Decide whether some circuit walk of at most `k` steps joins two vertices.
    Distance {
        poly: PathBuf,
        v: String,
        w: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Variant::Circ)]
        variant: Variant,
    },
    /// Shortest total p-norm length over walks of bounded step count.
    GeomDistance {
        poly: PathBuf,
        v: String,
        w: String,
        /// Positive integer or `inf`.
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 3)]
        cap: usize,
    },
    /// A circuit whose maximal step from `u` reaches the given facet row.
    FacetStep {
        poly: PathBuf,
        u: String,
        #[arg(long)]
        facet: usize,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// A circuit whose maximal step from `u` reaches a facet incident to `v`.
    /// With `--method nf` the first argument is a network file and points are flows.
    IncidentFacetStep {
        poly: PathBuf,
        u: String,
        v: String,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// A sign-compatible maximal step from `v` towards `w`.
    /// With `--method nf` the first argument is a network file and points are flows.
    ScmStep {
        poly: PathBuf,
        v: String,
        w: String,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// Reduction instances.
    #[command(subcommand)]
    Gadget(Gadget),
    /// Symmetric inner cone test over all vertex pairs of a simple polytope.
    ParallelotopeCheck { poly: PathBuf },
}

#[derive(Subcommand)]
enum Gadget {
    /// Auxiliary bipartite graph H of a digraph, with edge costs.
    AuxGraph {
        digraph: PathBuf,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Defaults to 10 times the node count.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Random 2-in-2-out Eulerian digraph and its 0/1-circulation polytope.
    Circulation {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        decomposable: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output prefix; writes `<prefix>.graph` and `<prefix>.poly`.
        #[arg(long, default_value = "circulation")]
        out: PathBuf,
    },
    /// Cut polytope, replacement polytope and constants for a Hamiltonian-path instance.
    Hardness {
        digraph: PathBuf,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[arg(long)]
        weight: Option<String>,
        /// Output prefix; writes `<prefix>.cut.poly` and `<prefix>.prime.poly`.
        #[arg(long, default_value = "hardness")]
        out: PathBuf,
        /// Also run the exhaustive facet-step equivalence check.
        #[arg(long)]
        claim1: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Circ,
    ScDecomp,
    Scm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Tu,
    Nf,
}

/// Whether the command produced an answer or a negative verdict.
enum Outcome {
    Answer,
    Negative,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    File { path: String, source: Error },
    #[error("{0}")]
    Library(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

type CliResult = Result<Outcome, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Answer) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn limits() -> Result<EnumLimits, CliError> {
    EnumLimits::from_env().map_err(|m| CliError::Usage(format!("{}: {m}", EnumLimits::ENV_VAR)))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn file_error(path: &Path) -> impl Fn(Error) -> CliError + '_ {
    move |source| CliError::File { path: path.display().to_string(), source }
}

fn load_poly(path: &Path) -> Result<Polyhedron, CliError> {
    Polyhedron::parse(&read(path)?).map_err(file_error(path))
}

fn load_network(path: &Path) -> Result<FlowNetwork, CliError> {
    FlowNetwork::parse(&read(path)?).map_err(file_error(path))
}

fn load_digraph(path: &Path) -> Result<Digraph, CliError> {
    Digraph::parse(&read(path)?).map_err(file_error(path))
}

fn vector(text: &str, dim: usize) -> Result<Vec<Rational>, CliError> {
    let v = parse_vector(text).map_err(|m| CliError::Usage(format!("bad vector '{text}': {m}")))?;
    if v.len() != dim {
        return Err(CliError::Usage(format!("vector '{text}' has {} entries, expected {dim}", v.len())));
    }
    Ok(v)
}

fn circuit(text: &str, dim: usize) -> Result<Circuit, CliError> {
    let v = vector(text, dim)?;
    if v.iter().any(|x| !x.is_integer()) {
        return Err(CliError::Usage(format!("direction '{text}' must be integral")));
    }
    Ok(Circuit::new(v.iter().map(|x| x.to_integer()).collect()))
}

fn rational(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|m| CliError::Usage(format!("bad number '{text}': {m}")))
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Circuits { poly } => {
            let p = load_poly(&poly)?;
            let all = enumerate_circuits(&p, &limits()?)?;
            out!("CIRCUITS {}", all.len());
            for g in all {
                out!("{g}");
            }
            Ok(Outcome::Answer)
        }
        Command::IsCircuit { poly, vector: text } => {
            let p = load_poly(&poly)?;
            let g = circuit(&text, p.dim())?;
            Ok(if is_circuit(&p, g.entries()) {
                out!("YES");
                Outcome::Answer
            } else {
                out!("NO");
                Outcome::Negative
            })
        }
        Command::Maxstep { poly, point, circuit: text } => {
            let p = load_poly(&poly)?;
            let x = vector(&point, p.dim())?;
            let g = circuit(&text, p.dim())?;
            Ok(match max_step(&p, &x, &g)? {
                StepOutcome::Step { length, point } => {
                    out!("STEP {length} {}", format_vector(&point));
                    Outcome::Answer
                }
                StepOutcome::Unbounded => {
                    out!("UNBOUNDED");
                    Outcome::Answer
                }
                StepOutcome::NotAStep => {
                    out!("NOT-A-STEP");
                    Outcome::Negative
                }
            })
        }
        Command::WalkVerify { poly, walk, sign_compatible } => {
            let p = load_poly(&poly)?;
            let (w, target) = CircuitWalk::parse(&read(&walk)?).map_err(file_error(&walk))?;
            let verdict = verify_walk(&p, &w, &target, sign_compatible)?;
            out!("{verdict}");
            Ok(if verdict.is_accept() { Outcome::Answer } else { Outcome::Negative })
        }
        Command::Distance { poly, v, w, k, variant } => {
            let p = load_poly(&poly)?;
            let (x, y) = (vector(&v, p.dim())?, vector(&w, p.dim())?);
            let lim = limits()?;
            let result = match variant {
                Variant::Circ => circuit_distance(&p, &x, &y, k, &lim)?,
                Variant::Scm => scm_circuit_distance(&p, &x, &y, k, &lim)?,
                Variant::ScDecomp => sc_decomp_distance(&p, &x, &y, k, &lim)?,
            };
            Ok(report_distance(&result))
        }
        Command::GeomDistance { poly, v, w, p: norm, cap } => {
            let p = load_poly(&poly)?;
            let (x, y) = (vector(&v, p.dim())?, vector(&w, p.dim())?);
            let norm = Norm::parse(&norm).map_err(CliError::Usage)?;
            Ok(match geometric_distance(&p, &x, &y, norm, cap, &limits()?)? {
                Some(best) => {
                    out!("GDIST {} ~ {:.6}", best.length, best.length.to_f64());
                    for s in &best.walk.steps {
                        out!("step {} * {}", s.circuit, s.length);
                    }
                    debug_assert_eq!(walk_length(&best.walk, norm), best.length);
                    Outcome::Answer
                }
                None => {
                    out!("NONE");
                    Outcome::Negative
                }
            })
        }
        Command::FacetStep { poly, u, facet, method } => {
            let p = load_poly(&poly)?;
            let x = vector(&u, p.dim())?;
            match method {
                Method::Brute => Ok(report_found(facet_step_bruteforce(&p, &x, facet, &limits()?)?)),
                Method::Tu => Ok(report_tu(tu_facet_step(&p, &x, facet, &tu_options()?)?)),
                Method::Nf => Err(CliError::Usage("facet-step supports --method brute|tu".into())),
            }
        }
        Command::IncidentFacetStep { poly, u, v, method } => match method {
            Method::Nf => {
                let net = load_network(&poly)?;
                let m = net.arcs().len();
                Ok(report_nf(nf_incident_facet_step(&net, &vector(&u, m)?, &vector(&v, m)?)?))
            }
            _ => {
                let p = load_poly(&poly)?;
                let (x, y) = (vector(&u, p.dim())?, vector(&v, p.dim())?);
                Ok(match method {
                    Method::Brute => report_found(incident_facet_step_bruteforce(&p, &x, &y, &limits()?)?),
                    _ => report_tu(tu_incident_facet_step(&p, &x, &y, &tu_options()?)?),
                })
            }
        },
        Command::ScmStep { poly, v, w, method } => match method {
            Method::Nf => {
                let net = load_network(&poly)?;
                let m = net.arcs().len();
                Ok(report_nf(nf_scm_step(&net, &vector(&v, m)?, &vector(&w, m)?)?))
            }
            _ => {
                let p = load_poly(&poly)?;
                let (x, y) = (vector(&v, p.dim())?, vector(&w, p.dim())?);
                Ok(match method {
                    Method::Brute => report_found(scm_step_bruteforce(&p, &x, &y, &limits()?)?),
                    _ => report_tu(tu_scm_step(&p, &x, &y, &tu_options()?)?),
                })
            }
        },
        Command::Gadget(g) => run_gadget(g),
        Command::ParallelotopeCheck { poly } => {
            let p = load_poly(&poly)?;
            let report = is_nd_parallelotope(&p, &limits()?)?;
            Ok(if report.holds {
                out!("PARALLELOTOPE {} {}", p.dim() - p.eq_rank(), report.d_star);
                Outcome::Answer
            } else {
                out!("NOT-PARALLELOTOPE {}", report.d_star);
                Outcome::Negative
            })
        }
    }
}

fn tu_options() -> Result<TuOptions, CliError> {
    Ok(TuOptions { check_unimodularity: true, limits: limits()? })
}

fn report_distance(result: &DistanceResult) -> Outcome {
    out!("{}", result.verdict);
    if let Some(steps) = &result.witness {
        for s in steps {
            out!("step {} * {}", s.circuit, s.length);
        }
    }
    match result.verdict {
        DistanceVerdict::Dist(_) => Outcome::Answer,
        DistanceVerdict::GreaterThan(_) => Outcome::Negative,
    }
}

fn report_found(found: Option<FoundStep>) -> Outcome {
    match found {
        Some(s) => {
            out!("STEP {} * {}", s.circuit, s.length);
            out!("reaches {}", format_vector(&s.point));
            Outcome::Answer
        }
        None => none(),
    }
}

fn report_tu(found: Option<TuStep>) -> Outcome {
    match found {
        Some(s) => {
            out!("STEP {}", s.circuit);
            match &s.kappa {
                Some(kappa) => out!("row {} kappa {kappa}", s.row),
                None => out!("row {} kept tight", s.row),
            }
            Outcome::Answer
        }
        None => none(),
    }
}

fn report_nf(found: Option<NfStep>) -> Outcome {
    match found {
        Some(s) => {
            out!("STEP {}", s.circuit);
            match &s.kappa {
                Some(kappa) => out!("arc {} kappa {kappa}", s.arc),
                None => out!("arc {} kept at its bound", s.arc),
            }
            Outcome::Answer
        }
        None => none(),
    }
}

fn none() -> Outcome {
    out!("NONE");
    Outcome::Negative
}

fn weight_for(d: &Digraph, weight: Option<String>) -> Result<Rational, CliError> {
    weight.map_or_else(|| Ok(AuxGraph::default_weight(d)), |w| rational(&w))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn run_gadget(g: Gadget) -> CliResult {
    match g {
        Gadget::AuxGraph { digraph, s, t, weight } => {
            let d = load_digraph(&digraph)?;
            let h = build_aux_graph(&d, s, t, weight_for(&d, weight)?)?;
            out!("AUXGRAPH {} {}", h.graph.vertices(), h.graph.edges().len());
            print!("{}", h.to_text());
            let matching = h.kinds.iter().filter(|k| matches!(k, EdgeKind::Matching(_))).count();
            out!("matching edges {matching}");
            Ok(Outcome::Answer)
        }
        Gadget::Circulation { nodes, decomposable, seed, out } => {
            let d = generate_eulerian_2regular(nodes, decomposable, seed, &limits()?)?;
            let p = build_circulation_01(&d);
            let (graph_path, poly_path) = (with_suffix(&out, ".graph"), with_suffix(&out, ".poly"));
            write(&graph_path, &d.to_text())?;
            write(&poly_path, &p.to_text())?;
            let m = d.arcs().len();
            out!("CIRCULATION {nodes} {m}");
            out!("graph {}", graph_path.display());
            out!("poly {}", poly_path.display());
            out!("zero {}", format_vector(&vec![Rational::from_integer(0.into()); m]));
            out!("full {}", format_vector(&vec![Rational::from_integer(1.into()); m]));
            Ok(Outcome::Answer)
        }
        Gadget::Hardness { digraph, s, t, epsilon, weight, out, claim1 } => {
            let d = load_digraph(&digraph)?;
            let eps = rational(&epsilon)?;
            let h = build_aux_graph(&d, s, t, weight_for(&d, weight)?)?;
            let cut = build_p_h_eps(&h, &eps)?;
            let prime = build_p_prime(&h, &eps)?;
            let checks = [
                ("identities", prime.constants.identities_hold()),
                ("z_level", prime.level_of_z_holds(&h.cost)),
                ("z_interior", prime.z_is_interior()),
                ("q_through_z", prime.replacement_rows_through_z()),
                ("q_valid", prime.replacement_rows_valid(&cut)?),
            ];
            let all_hold = checks.iter().all(|(_, ok)| *ok);
            out!("{}", if all_hold { "GADGET OK" } else { "GADGET FAILED" });
            let (cut_path, prime_path) = (with_suffix(&out, ".cut.poly"), with_suffix(&out, ".prime.poly"));
            write(&cut_path, &cut.polytope.to_text())?;
            write(&prime_path, &prime.polytope.to_text())?;
            out!("cut {} facet row {}", cut_path.display(), cut.facet_row);
            out!("prime {}", prime_path.display());
            out!("start {}", format_vector(&cut.start));
            out!("z {}", format_vector(&prime.z));
            out!("{}", prime.constants);
            for (name, ok) in checks {
                out!("check {name} {}", if ok { "ok" } else { "failed" });
            }
            let mut claim_ok = true;
            if claim1 {
                let report = check_claim1(&h, &eps, &limits()?)?;
                claim_ok = report.holds();
                out!("{report}");
            }
            Ok(if all_hold && claim_ok { Outcome::Answer } else { Outcome::Negative })
        }
    }
}
