//! `redodd`: command-line surface over the odd-red perfect matching library.
//! Every subcommand prints a deterministic JSON report to stdout and a short
//! human summary (with wall time) to stderr.
//!
//! Exit codes: 0 success, 1 certification failure, 64 usage error, 65 bad
//! input data. `solve` uses 0 (found), 2 (no odd-red perfect matching),
//! 3 (no perfect matching at all).

use clap::{Args, Parser, Subcommand};
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use redodd_core::bimodular::{
    build_bimodular_system, check_bimodularity, translate_facet, BimodularSystem,
};
use redodd_core::complexity::{
    apply_mu_lambda, apply_mu_lambda_rhs, build_low_complexity_lambda, check_complexity_bounds,
    distinct_count_bound, from_matrix, same_face_check, sample_integral_mu_lambda,
    search_low_distinct, to_matrix,
};
use redodd_core::constraint::ConstraintJson;
use redodd_core::facets::{build_c_induced, certify_dominant_facet, standard_spec, CInducedSpec};
use redodd_core::graph::{complete_graph, enumerate_odd_red_perfect_matchings, GraphJson};
use redodd_core::label::{
    build_counterexample, q_membership_threaded, reduce_maxcut_to_separation, QMembership,
};
use redodd_core::lp::{conv_membership, separator_is_valid, Membership};
use redodd_core::rat::{rat_from_string, rat_to_string, Rat};
use redodd_core::solver::{solve_odd_red_pm, SolverOutcome};
use redodd_core::transfer::{canonical_transform, certify_matching_facet, TransferContext};

const EXIT_CERT_FAILURE: u8 = 1;
const EXIT_NO_ODD_RED: u8 = 2;
const EXIT_NO_PM: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "redodd", version, about = "Odd-red perfect matching toolkit")]
struct Cli {
    /// RNG seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel scans.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// Odd host size n >= 5 (the constraint lives on K_n).
    #[arg(long)]
    n: usize,
    /// Inducing (n-2)-cycle as comma-separated vertices; defaults to
    /// 0,1,...,n-3.
    #[arg(long)]
    cycle: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cycle-induced constraints on the odd cycle dominant.
    Facet {
        #[command(subcommand)]
        cmd: FacetCmd,
    },
    /// Move constraints to the odd-red matching polytope of the doubled graph.
    Transfer {
        #[command(subcommand)]
        cmd: TransferCmd,
    },
    /// Coefficient-complexity bounds and constructions.
    Complexity {
        #[command(subcommand)]
        cmd: ComplexityCmd,
    },
    /// Label-constraint relaxation membership.
    Label {
        #[command(subcommand)]
        cmd: LabelCmd,
    },
    /// Hardness reductions.
    Reduce {
        #[command(subcommand)]
        cmd: ReduceCmd,
    },
    /// Integer-programming formulation with subdeterminants in {-2,0,2}.
    Bimodular {
        #[command(subcommand)]
        cmd: BimodularCmd,
    },
    /// Decide odd-red perfect matching and print one if it exists.
    Solve {
        /// Red-blue bipartite graph (JSON).
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Subcommand)]
enum FacetCmd {
    /// Emit the cycle-induced constraint for K_n.
    BuildCInduced(SpecArgs),
    /// Certify the constraint as a facet of the odd cycle dominant.
    CertifyDominant(SpecArgs),
}

#[derive(Subcommand)]
enum TransferCmd {
    /// Transform the constraint onto the doubled graph.
    Canonical(SpecArgs),
    /// Certify the transformed constraint as a matching-polytope facet.
    Certify(SpecArgs),
}

#[derive(Subcommand)]
enum ComplexityCmd {
    /// Check coefficient lower bounds, optionally over sampled integral
    /// equivalent representations.
    Check {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of random representations to test (0 = canonical only).
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Build the cube-root construction with few distinct coefficients.
    Reduce(SpecArgs),
    /// Random search for representations with few distinct coefficients.
    Search {
        #[command(flatten)]
        spec: SpecArgs,
        /// Search iterations.
        #[arg(long, default_value_t = 200)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum LabelCmd {
    /// Test a fractional point against the label relaxation.
    Membership {
        /// Instance file: {"graph": ..., "point": ["p/q", ...]}.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Emit (and optionally verify) the non-integrality witness.
    Counterexample {
        /// Re-verify: inside the relaxation, outside the matching hull.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Encode a max-cut threshold question as a relaxation membership test.
    Maxcut {
        /// Source graph (JSON; bipartition ignored).
        #[arg(long)]
        graph: PathBuf,
        /// Cut-size threshold.
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum BimodularCmd {
    /// Emit the integer system for a red-blue bipartite graph.
    Build {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Check maximal subdeterminants; accepts a graph or an emitted system.
    Check {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Project a lifted inequality back to edge space.
    Translate {
        /// File: {"graph": ..., "a": ["p/q", ...], "c": "p/q", "b": "p/q"}.
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    graph: GraphJson,
    point: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct TranslateJson {
    graph: GraphJson,
    /// Edge coefficients in sorted edge order.
    a: Vec<String>,
    /// Coefficient of the lifted parity variable.
    c: String,
    /// Right-hand side of the lifted inequality.
    b: String,
}

struct DataError(String);

macro_rules! data_error_from {
    ($($ty:ty),* $(,)?) => {$(
        impl From<$ty> for DataError {
            fn from(e: $ty) -> Self {
                DataError(e.to_string())
            }
        }
    )*};
}

data_error_from!(
    redodd_core::graph::GraphError,
    redodd_core::facets::FacetError,
    redodd_core::transfer::TransferError,
    redodd_core::complexity::ComplexityError,
    redodd_core::label::LabelError,
    redodd_core::bimodular::BimodularError,
    serde_json::Error,
);

fn read_file(path: &PathBuf, digest: &mut Sha256) -> Result<String, DataError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DataError(format!("{}: {e}", path.display())))?;
    digest.update(text.as_bytes());
    Ok(text)
}

fn parse_cycle(args: &SpecArgs) -> Result<CInducedSpec, DataError> {
    match &args.cycle {
        None => Ok(standard_spec(args.n)?),
        Some(csv) => {
            let verts = csv
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| DataError(format!("bad --cycle: {e}")))?;
            Ok(CInducedSpec::new(args.n, verts)?)
        }
    }
}

fn spec_digest(args: &SpecArgs, digest: &mut Sha256) {
    digest.update(args.n.to_le_bytes());
    digest.update(args.cycle.as_deref().unwrap_or("default").as_bytes());
}

fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

fn strings_to_rats(v: &[String]) -> Result<Vec<Rat>, DataError> {
    v.iter()
        .map(|s| rat_from_string(s).map_err(DataError))
        .collect()
}

/// Certificate payload, human-readable outcome, and exit code.
type CmdResult = Result<(Value, String, u8), DataError>;

fn run(cli: &Cli, digest: &mut Sha256) -> CmdResult {
    match &cli.cmd {
        Cmd::Facet { cmd } => match cmd {
            FacetCmd::BuildCInduced(args) => {
                spec_digest(args, digest);
                let spec = parse_cycle(args)?;
                let c = build_c_induced(&spec);
                let host = complete_graph(spec.n);
                let payload = json!({
                    "n": spec.n,
                    "cycle": spec.cycle,
                    "s": spec.s,
                    "t": spec.t,
                    "constraint": ConstraintJson::from_constraint(&c, &host),
                });
                Ok((payload, "built".into(), 0))
            }
            FacetCmd::CertifyDominant(args) => {
                spec_digest(args, digest);
                let spec = parse_cycle(args)?;
                let cert = certify_dominant_facet(&spec);
                let is_facet = cert.is_facet();
                let payload = json!({
                    "n": spec.n,
                    "cycle": spec.cycle,
                    "valid": cert.valid,
                    "linear_rank": cert.linear_rank,
                    "face_dim": cert.face_dim,
                    "required_face_dim": cert.required_face_dim,
                    "tight_cycles": cert.tight_cycles.len(),
                    "constraint": ConstraintJson::from_constraint(
                        &cert.constraint, &complete_graph(spec.n)),
                });
                let (msg, code) = if is_facet {
                    ("facet".into(), 0)
                } else {
                    ("not-facet".into(), EXIT_CERT_FAILURE)
                };
                Ok((payload, msg, code))
            }
        },
        Cmd::Transfer { cmd } => match cmd {
            TransferCmd::Canonical(args) => {
                spec_digest(args, digest);
                let spec = parse_cycle(args)?;
                let ctx = TransferContext::new(complete_graph(spec.n));
                let t = canonical_transform(&build_c_induced(&spec), &ctx)?;
                let payload = json!({
                    "n": spec.n,
                    "cycle": spec.cycle,
                    "graph": GraphJson::from_red_blue(&ctx.doubled),
                    "constraint": ConstraintJson::from_constraint(&t, &ctx.doubled.graph),
                });
                Ok((payload, "transformed".into(), 0))
            }
            TransferCmd::Certify(args) => {
                spec_digest(args, digest);
                let spec = parse_cycle(args)?;
                let ctx = TransferContext::new(complete_graph(spec.n));
                let t = canonical_transform(&build_c_induced(&spec), &ctx)?;
                let cert = certify_matching_facet(&ctx, &t)?;
                let payload = json!({
                    "n": spec.n,
                    "cycle": spec.cycle,
                    "polytope_dim": cert.polytope_dim,
                    "face_dim": cert.face_dim,
                    "generators": cert.n_generators,
                    "tight": cert.n_tight,
                    "valid": cert.violation.is_none(),
                });
                let (msg, code) = if cert.is_facet() {
                    ("facet".into(), 0)
                } else {
                    ("not-facet".into(), EXIT_CERT_FAILURE)
                };
                Ok((payload, msg, code))
            }
        },
        Cmd::Complexity { cmd } => match cmd {
            ComplexityCmd::Check { spec: args, k } => {
                spec_digest(args, digest);
                digest.update(k.to_le_bytes());
                let spec = parse_cycle(args)?;
                let n = spec.n;
                let ctx = TransferContext::new(complete_graph(n));
                let t = canonical_transform(&build_c_induced(&spec), &ctx)?;
                let m = to_matrix(&t, &ctx);
                let base = check_complexity_bounds(&m, n)?;
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let mut sampled_ok = true;
                for _ in 0..*k {
                    let mv = sample_integral_mu_lambda(n, &mut rng);
                    let rep = check_complexity_bounds(&apply_mu_lambda(&m, &mv)?, n)?;
                    sampled_ok &= rep.lower_bounds_ok();
                }
                let ok = base.lower_bounds_ok() && sampled_ok;
                let payload = json!({
                    "n": n,
                    "max_abs": rat_to_string(&base.max_abs),
                    "distinct_count": base.distinct_count,
                    "distinct_count_off_diagonal": base.distinct_count_off_diagonal,
                    "samples": k,
                    "samples_ok": sampled_ok,
                });
                let (msg, code) = if ok {
                    ("bounds-hold".into(), 0)
                } else {
                    ("bounds-violated".into(), EXIT_CERT_FAILURE)
                };
                Ok((payload, msg, code))
            }
            ComplexityCmd::Reduce(args) => {
                spec_digest(args, digest);
                let spec = parse_cycle(args)?;
                let n = spec.n;
                let ctx = TransferContext::new(complete_graph(n));
                let t = canonical_transform(&build_c_induced(&spec), &ctx)?;
                let m = to_matrix(&t, &ctx);
                let mv = build_low_complexity_lambda(n, &spec)?;
                let img = apply_mu_lambda(&m, &mv)?;
                let count = img.distinct_count();
                let bound = distinct_count_bound(n);
                let face_preserved = if n <= 7 {
                    let img_c = from_matrix(&img, apply_mu_lambda_rhs(&t.rhs, &mv), &ctx);
                    Some(same_face_check(&t, &img_c, &ctx))
                } else {
                    None
                };
                let ok = rat(count as i64) <= bound && face_preserved != Some(false);
                let payload = json!({
                    "n": n,
                    "baseline_distinct": m.distinct_count(),
                    "reduced_distinct": count,
                    "bound": rat_to_string(&bound),
                    "face_preserved": face_preserved,
                    "lambda": rats_to_strings(&mv.lambda),
                });
                let (msg, code) = if ok {
                    ("within-bound".into(), 0)
                } else {
                    ("bound-exceeded".into(), EXIT_CERT_FAILURE)
                };
                Ok((payload, msg, code))
            }
            ComplexityCmd::Search { spec: args, k } => {
                spec_digest(args, digest);
                digest.update(k.to_le_bytes());
                let spec = parse_cycle(args)?;
                let n = spec.n;
                let ctx = TransferContext::new(complete_graph(n));
                let t = canonical_transform(&build_c_induced(&spec), &ctx)?;
                let m = to_matrix(&t, &ctx);
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let (best, count) = search_low_distinct(&m, n as i64, *k, &mut rng);
                let payload = json!({
                    "n": n,
                    "iterations": k,
                    "baseline_distinct": m.distinct_count(),
                    "best_distinct": count,
                    "lambda": rats_to_strings(&best.lambda),
                });
                Ok((payload, format!("best distinct count {count}"), 0))
            }
        },
        Cmd::Label { cmd } => match cmd {
            LabelCmd::Membership { graph } => {
                let inst: InstanceJson = serde_json::from_str(&read_file(graph, digest)?)?;
                let h = inst.graph.to_red_blue()?;
                let x = strings_to_rats(&inst.point)?;
                let out = q_membership_threaded(&h, &x, cli.threads)?;
                let (payload, msg) = match out {
                    QMembership::Inside => (json!({"inside": true}), "inside".to_string()),
                    QMembership::NegativeEntry(e) => (
                        json!({"inside": false, "negative_edge": e}),
                        "negative-entry".into(),
                    ),
                    QMembership::DegreeViolation(v) => (
                        json!({"inside": false, "degree_vertex": v}),
                        "degree-violation".into(),
                    ),
                    QMembership::LabelViolation(l) => (
                        json!({"inside": false, "labeling": l.bitstring()}),
                        "label-violation".into(),
                    ),
                };
                Ok((payload, msg, 0))
            }
            LabelCmd::Counterexample { verify } => {
                digest.update([*verify as u8]);
                let (h, y) = build_counterexample();
                let inst = InstanceJson {
                    graph: GraphJson::from_red_blue(&h),
                    point: rats_to_strings(&y),
                };
                if !verify {
                    return Ok((serde_json::to_value(&inst)?, "built".into(), 0));
                }
                let in_q = q_membership_threaded(&h, &y, cli.threads)? == QMembership::Inside;
                let pms = enumerate_odd_red_perfect_matchings(&h)?;
                let points: Vec<Vec<Rat>> = pms
                    .iter()
                    .map(|m| redodd_core::transfer::matching_char_vector(m, &h.graph))
                    .collect();
                let in_p = match conv_membership(&points, &y) {
                    Membership::Inside { .. } => true,
                    Membership::Outside { separator } => {
                        assert!(separator_is_valid(&separator, &points, &y));
                        false
                    }
                };
                let payload = json!({
                    "instance": serde_json::to_value(&inst)?,
                    "in_relaxation": in_q,
                    "in_matching_hull": in_p,
                    "odd_red_matchings": pms.len(),
                });
                let ok = in_q && !in_p;
                let (msg, code) = if ok {
                    ("verified".into(), 0)
                } else {
                    ("verification-failed".into(), EXIT_CERT_FAILURE)
                };
                Ok((payload, msg, code))
            }
        },
        Cmd::Reduce { cmd } => match cmd {
            ReduceCmd::Maxcut { graph, k } => {
                digest.update(k.to_le_bytes());
                let gj: GraphJson = serde_json::from_str(&read_file(graph, digest)?)?;
                let g = redodd_core::graph::Graph::new(gj.n, gj.edges.iter().copied())?;
                let inst = reduce_maxcut_to_separation(&g, *k)?;
                let payload = json!({
                    "k": k,
                    "alpha": rat_to_string(&inst.alpha),
                    "instance": serde_json::to_value(InstanceJson {
                        graph: GraphJson::from_red_blue(&inst.graph),
                        point: rats_to_strings(&inst.x),
                    })?,
                });
                Ok((payload, "reduced".into(), 0))
            }
        },
        Cmd::Bimodular { cmd } => match cmd {
            BimodularCmd::Build { graph } => {
                let gj: GraphJson = serde_json::from_str(&read_file(graph, digest)?)?;
                let h = gj.to_red_blue()?;
                let s = build_bimodular_system(&h);
                Ok((serde_json::to_value(&s)?, "built".into(), 0))
            }
            BimodularCmd::Check { graph } => {
                let text = read_file(graph, digest)?;
                let system = match serde_json::from_str::<BimodularSystem>(&text) {
                    Ok(s) => s,
                    Err(_) => {
                        let gj: GraphJson = serde_json::from_str(&text)?;
                        build_bimodular_system(&gj.to_red_blue()?)
                    }
                };
                let rep = check_bimodularity(&system, 20)?;
                let dets: Vec<i64> = rep.determinant_values.iter().map(|&d| d as i64).collect();
                let payload = json!({
                    "rank": rep.rank,
                    "submatrices_checked": rep.checked,
                    "determinant_values": dets,
                    "bimodular": rep.ok,
                });
                let (msg, code) = if rep.ok {
                    ("bimodular".into(), 0)
                } else {
                    ("not-bimodular".into(), EXIT_CERT_FAILURE)
                };
                Ok((payload, msg, code))
            }
            BimodularCmd::Translate { graph } => {
                let tj: TranslateJson = serde_json::from_str(&read_file(graph, digest)?)?;
                let h = tj.graph.to_red_blue()?;
                let a = strings_to_rats(&tj.a)?;
                if a.len() != h.graph.edges.len() {
                    return Err(DataError(format!(
                        "coefficient count {} does not match edge count {}",
                        a.len(),
                        h.graph.edges.len()
                    )));
                }
                let c = rat_from_string(&tj.c).map_err(DataError)?;
                let b = rat_from_string(&tj.b).map_err(DataError)?;
                let t = translate_facet(&a, &c, &b, &h);
                let payload = json!({
                    "constraint": ConstraintJson::from_constraint(&t, &h.graph),
                });
                Ok((payload, "translated".into(), 0))
            }
        },
        Cmd::Solve { graph } => {
            let gj: GraphJson = serde_json::from_str(&read_file(graph, digest)?)?;
            let h = gj.to_red_blue()?;
            let res = solve_odd_red_pm(&h)?;
            let (payload, msg, code) = match res.outcome {
                SolverOutcome::Found(m) => {
                    let edges: Vec<_> = m.edges.iter().copied().collect();
                    (
                        json!({
                            "matching": edges,
                            "red_count": m.red_count(&h),
                            "iterations": res.iterations,
                        }),
                        "found".to_string(),
                        0,
                    )
                }
                SolverOutcome::NoOddRedPM => (
                    json!({"iterations": res.iterations}),
                    "no-odd-red-perfect-matching".into(),
                    EXIT_NO_ODD_RED,
                ),
                SolverOutcome::NoPerfectMatching => (
                    json!({"iterations": res.iterations}),
                    "no-perfect-matching".into(),
                    EXIT_NO_PM,
                ),
            };
            Ok((payload, msg, code))
        }
    }
}

fn rat(n: i64) -> Rat {
    redodd_core::rat::rat(n)
}

fn command_name(cli: &Cli) -> &'static str {
    match &cli.cmd {
        Cmd::Facet { cmd: FacetCmd::BuildCInduced(_) } => "facet build-c-induced",
        Cmd::Facet { cmd: FacetCmd::CertifyDominant(_) } => "facet certify-dominant",
        Cmd::Transfer { cmd: TransferCmd::Canonical(_) } => "transfer canonical",
        Cmd::Transfer { cmd: TransferCmd::Certify(_) } => "transfer certify",
        Cmd::Complexity { cmd: ComplexityCmd::Check { .. } } => "complexity check",
        Cmd::Complexity { cmd: ComplexityCmd::Reduce(_) } => "complexity reduce",
        Cmd::Complexity { cmd: ComplexityCmd::Search { .. } } => "complexity search",
        Cmd::Label { cmd: LabelCmd::Membership { .. } } => "label membership",
        Cmd::Label { cmd: LabelCmd::Counterexample { .. } } => "label counterexample",
        Cmd::Reduce { cmd: ReduceCmd::Maxcut { .. } } => "reduce maxcut",
        Cmd::Bimodular { cmd: BimodularCmd::Build { .. } } => "bimodular build",
        Cmd::Bimodular { cmd: BimodularCmd::Check { .. } } => "bimodular check",
        Cmd::Bimodular { cmd: BimodularCmd::Translate { .. } } => "bimodular translate",
        Cmd::Solve { .. } => "solve",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let name = command_name(&cli);
    let mut digest = Sha256::new();
    digest.update(name.as_bytes());
    digest.update(cli.seed.to_le_bytes());
    digest.update(cli.threads.to_le_bytes());
    let (certificate, outcome, code) = match run(&cli, &mut digest) {
        Ok(r) => r,
        Err(DataError(msg)) => {
            eprintln!("redodd {name}: {msg}");
            return ExitCode::from(EXIT_DATA);
        }
    };
    let report = json!({
        "command": name,
        "inputs_digest": hex::encode(digest.finalize()),
        "seed": cli.seed,
        "outcome": outcome,
        "certificate": certificate,
    });
    let text = serde_json::to_string_pretty(&report).expect("report is serializable");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("redodd {name}: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_DATA);
        }
    } else {
        println!("{text}");
    }
    eprintln!(
        "redodd {name}: {outcome} ({:.3}s)",
        started.elapsed().as_secs_f64()
    );
    ExitCode::from(code)
}
