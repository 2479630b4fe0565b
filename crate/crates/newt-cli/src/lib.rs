//! Command-line front end for the Newton algorithm on ideals of `Q[x, y]`.
//!
//! Every command reads ideal files (one generator per line, `#` comments),
//! runs the pipeline and writes a text, JSON or DOT report. [`execute`] is
//! the whole program minus process I/O, so tests can drive it directly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use algebra_core::{parse_ideal, parse_poly, AlgebraError, BPoly, IdealGens};
use clap::{Args, Parser, Subcommand};
use newton::geometry::{diagram_json, diagram_of_polys, faces, initial_decomposition};
use newton::invariants::{
    degree_function, hs_multiplicity, hs_via_areas, invariant_report, mult_m,
    same_integral_closure, valuation_nv,
};
use newton::process::{
    maps_json, merge_processes, processes_equivalent, reconstruct_tree, zariski_factorization,
};
use newton::{run, AnalysisResult, NewtonError, NewtonTree, RunConfig};
use oracle::{e_oracle, mult_oracle, RandomSource};
use serde_json::json;

/// Exit code of a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code when a face polynomial has roots outside `Q`.
pub const EXIT_FIELD: i32 = 2;
/// Exit code for unreadable files, parse errors and unsuitable ideals.
pub const EXIT_INPUT: i32 = 3;
/// Exit code when two independent computations disagree.
pub const EXIT_CROSS_CHECK: i32 = 4;

/// Newton trees, Newton processes and invariants of plane ideals.
#[derive(Parser, Debug)]
#[command(name = "newt", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed of the random source used by the oracles.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Recursion guard of the Newton algorithm.
    #[arg(long, global = true, default_value_t = RunConfig::default().max_depth)]
    pub max_depth: usize,
}

/// One ideal file.
#[derive(Args, Debug)]
pub struct Input {
    /// Ideal file: one generator per line.
    pub file: PathBuf,
}

/// One ideal file and a polynomial.
#[derive(Args, Debug)]
pub struct PolyInput {
    /// Ideal file: one generator per line.
    pub file: PathBuf,
    /// The polynomial to evaluate, e.g. `y^2-x^3`.
    #[arg(long)]
    pub poly: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Newton polygon: vertices and faces with their dicritical degrees.
    Polygon(Input),
    /// Decorated Newton tree.
    Tree {
        #[command(flatten)]
        input: Input,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Canonical Newton process.
    Process(Input),
    /// Depth, multiplicities, Łojasiewicz exponent and Rees valuations.
    Invariants(Input),
    /// `N_v(f)` at every vertex of the tree.
    Valuation(PolyInput),
    /// Degree function `d_I(f)`.
    Degree(PolyInput),
    /// Whether two ideals have the same integral closure.
    ClosureEq {
        /// First ideal file.
        first: PathBuf,
        /// Second ideal file.
        second: PathBuf,
    },
    /// Factorization of the integral closure.
    Factor(Input),
    /// Tree of a generic curve of the ideal.
    Gencurve {
        #[command(flatten)]
        input: Input,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Self-check: independent computations must agree.
    Check(Input),
}

/// Exit code and standard output or error text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failure with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: String) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message,
        }
    }
}

impl From<NewtonError> for Failure {
    fn from(e: NewtonError) -> Failure {
        let code = match e {
            NewtonError::GroundFieldInsufficient { .. } => EXIT_FIELD,
            NewtonError::CrossCheckFailure(_) => EXIT_CROSS_CHECK,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

/// Parses the arguments and runs the command.
pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn config(cli: &Cli) -> RunConfig {
    RunConfig {
        max_depth: cli.max_depth,
        ..RunConfig::default()
    }
}

fn read_ideal(path: &Path) -> CliResult<IdealGens> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    parse_ideal(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_poly(text: &str) -> CliResult<BPoly> {
    parse_poly(text).map_err(|e: AlgebraError| Failure::input(format!("--poly {text}: {e}")))
}

fn analyse(path: &Path, cfg: RunConfig) -> CliResult<(IdealGens, AnalysisResult)> {
    let i = read_ideal(path)?;
    let a = run(&i, cfg)?;
    Ok((i, a))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> CliResult<(i32, String)> {
    let cfg = config(cli);
    let ok = |s: String| Ok((EXIT_OK, s));
    match &cli.command {
        Command::Polygon(input) => ok(polygon(&read_ideal(&input.file)?, cli.json)),
        Command::Tree { input, dot } => {
            let (_, a) = analyse(&input.file, cfg)?;
            ok(tree_output(&a.tree, cli.json, *dot))
        }
        Command::Process(input) => {
            let (_, a) = analyse(&input.file, cfg)?;
            ok(if cli.json {
                format!("{}\n", a.process.to_json())
            } else {
                format!("{}\n", a.process)
            })
        }
        Command::Invariants(input) => {
            let (_, a) = analyse(&input.file, cfg)?;
            ok(invariants(&a, cfg, cli.json)?)
        }
        Command::Valuation(input) => {
            let (_, a) = analyse(&input.file, cfg)?;
            let f = read_poly(&input.poly)?;
            ok(valuations(&a, &f, cfg, cli.json)?)
        }
        Command::Degree(input) => {
            let (_, a) = analyse(&input.file, cfg)?;
            let f = read_poly(&input.poly)?;
            let d = degree_function(&a, &f, cfg)?;
            ok(if cli.json {
                pretty(&json!({ "poly": f.to_string(), "degree": d }))
            } else {
                format!("d({f}) = {d}\n")
            })
        }
        Command::ClosureEq { first, second } => {
            let (i, j) = (read_ideal(first)?, read_ideal(second)?);
            let equal = same_integral_closure(&i, &j, cfg)?;
            ok(if cli.json {
                pretty(&json!({ "equal": equal }))
            } else if equal {
                "EQUAL\n".into()
            } else {
                "NOT EQUAL\n".into()
            })
        }
        Command::Factor(input) => {
            let (_, a) = analyse(&input.file, cfg)?;
            let z = zariski_factorization(&a.process).to_string();
            ok(if cli.json {
                pretty(&json!({ "closure": z, "process": a.process.to_string() }))
            } else {
                format!("{z}\n")
            })
        }
        Command::Gencurve { input, dot } => {
            let (_, a) = analyse(&input.file, cfg)?;
            ok(tree_output(&a.tree.generic_curve_tree(), cli.json, *dot))
        }
        Command::Check(input) => {
            let (i, a) = analyse(&input.file, cfg)?;
            let (passed, text) = check(&i, &a, cfg, cli.seed, cli.json);
            Ok((if passed { EXIT_OK } else { EXIT_CROSS_CHECK }, text))
        }
    }
}

fn polygon(i: &IdealGens, as_json: bool) -> String {
    if as_json {
        return format!("{}\n", diagram_json(i));
    }
    let gens = i.full_generators();
    let diag = diagram_of_polys(&gens);
    let verts: Vec<String> = diag
        .vertices
        .iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect();
    let mut out = format!("vertices: {}\n", verts.join(" "));
    for f in faces(&diag) {
        let d = initial_decomposition(&gens, &f).d;
        let _ = writeln!(
            out,
            "face {}a+{}b={}: lattice points {}, d = {d}",
            f.p, f.q, f.n, f.delta
        );
    }
    out
}

fn tree_output(t: &NewtonTree, as_json: bool, dot: bool) -> String {
    if dot {
        return t.to_dot();
    }
    if as_json {
        return format!("{}\n", t.to_json());
    }
    let mut out = String::new();
    for v in &t.vertices {
        let _ = writeln!(
            out,
            "vertex {}: N = {}, d = {}, above {}, below {}",
            v.id, v.n, v.d, v.q, v.p
        );
    }
    for e in &t.edges {
        let _ = writeln!(out, "edge {} -> {} ({:?})", e.from, e.to, e.kind);
    }
    for a in &t.arrows {
        let at = a.at.map_or_else(|| "-".to_string(), |v| v.to_string());
        let _ = writeln!(out, "arrow {:?} at {at}: multiplicity {}", a.kind, a.mult);
    }
    let _ = writeln!(out, "canonical: {}", t.canonical_form());
    out
}

fn invariants(a: &AnalysisResult, cfg: RunConfig, as_json: bool) -> CliResult<String> {
    let report = invariant_report(a, cfg)?;
    let closure = zariski_factorization(&a.process).to_string();
    if as_json {
        let mut v = report.to_json();
        v["closure"] = json!(closure);
        v["process"] = json!(a.process.to_string());
        return Ok(pretty(&v));
    }
    let opt = |o: Option<u64>| o.map_or_else(|| "undefined".to_string(), |v| v.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "depth: {}", report.depth);
    let _ = writeln!(out, "non-degenerate: {}", report.nondegenerate);
    let _ = writeln!(out, "mult_m: {}", opt(report.mult_m));
    let _ = writeln!(out, "e: {}", opt(report.e));
    let _ = writeln!(out, "e by areas: {}", opt(report.e_area));
    let _ = writeln!(out, "j: {}", report.j);
    let _ = writeln!(
        out,
        "lojasiewicz: {}",
        report
            .lojasiewicz
            .as_ref()
            .map_or_else(|| "undefined".to_string(), ToString::to_string)
    );
    if let Some(rees) = &report.rees {
        for v in &rees.valuations {
            let maps: Vec<String> = v.maps.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "rees valuation at vertex {}: N = {}, d = {}, rho = {}, maps {}",
                v.vertex,
                v.n,
                v.d,
                v.rho,
                maps.join(",")
            );
        }
    }
    let _ = writeln!(out, "closure: {closure}");
    let _ = writeln!(out, "process: {}", a.process);
    Ok(out)
}

fn valuations(a: &AnalysisResult, f: &BPoly, cfg: RunConfig, as_json: bool) -> CliResult<String> {
    let mut rows = Vec::new();
    for v in 0..a.tree.vertices.len() {
        let nv = valuation_nv(a, v, f, cfg)?;
        rows.push((v, nv));
    }
    if as_json {
        let list: Vec<serde_json::Value> = rows
            .iter()
            .map(|&(v, nv)| {
                json!({
                    "vertex": v,
                    "maps": maps_json(&newton::invariants::vertex_maps(&a.layout.vertices[v])),
                    "value": nv,
                })
            })
            .collect();
        return Ok(pretty(
            &json!({ "poly": f.to_string(), "valuations": list }),
        ));
    }
    let mut out = String::new();
    for (v, nv) in rows {
        let _ = writeln!(out, "N_{v}({f}) = {nv}");
    }
    Ok(out)
}

/// One self-check: its name, whether it passed, and a detail line.
type CheckLine = (&'static str, bool, String);

fn check_lines(i: &IdealGens, a: &AnalysisResult, cfg: RunConfig, seed: u64) -> Vec<CheckLine> {
    let mut lines = Vec::new();
    let t = &a.tree;
    lines.push((
        "decorations",
        t.check_N_decorations() && t.check_gluing(),
        format!("{} vertices", t.vertices.len()),
    ));
    lines.push(match reconstruct_tree(&a.process) {
        Ok(r) => (
            "reconstruction",
            r.isomorphic(t),
            "tree of the process".into(),
        ),
        Err(e) => ("reconstruction", false, e.to_string()),
    });
    if newton::invariants::is_finite_codim(a) {
        let e = hs_multiplicity(a);
        let area = hs_via_areas(a);
        lines.push(match (&e, &area) {
            (Ok(e), Ok(s)) => ("area", e == s, format!("e = {e}, by areas {s}")),
            _ => ("area", false, "multiplicity unavailable".into()),
        });
        let mut rnd = RandomSource::new(seed);
        lines.push(match (&e, e_oracle(i, &mut rnd)) {
            (Ok(e), Ok(o)) => (
                "oracle e",
                *e == o,
                format!("e = {e}, resultant oracle {o}"),
            ),
            (_, Err(err)) => ("oracle e", false, err.to_string()),
            (Err(err), _) => ("oracle e", false, err.to_string()),
        });
        let m = mult_m(a);
        let mo = mult_oracle(i, &mut rnd);
        lines.push(match m {
            Ok(m) => (
                "oracle order",
                m == mo,
                format!("mult_m = {m}, oracle {mo}"),
            ),
            Err(err) => ("oracle order", false, err.to_string()),
        });
    }
    let square = i.product(i);
    lines.push(match run(&square, cfg) {
        Ok(sq) => {
            let merged = merge_processes(&a.process, &a.process);
            (
                "product rule",
                processes_equivalent(&sq.process, &merged),
                format!("process of I^2 is {}", sq.process),
            )
        }
        Err(e) => ("product rule", false, e.to_string()),
    });
    lines
}

fn check(
    i: &IdealGens,
    a: &AnalysisResult,
    cfg: RunConfig,
    seed: u64,
    as_json: bool,
) -> (bool, String) {
    let lines = check_lines(i, a, cfg, seed);
    let passed = lines.iter().all(|l| l.1);
    let text = if as_json {
        let list: Vec<serde_json::Value> = lines
            .iter()
            .map(|(name, ok, detail)| json!({ "check": name, "pass": ok, "detail": detail }))
            .collect();
        pretty(&json!({ "seed": seed, "pass": passed, "checks": list }))
    } else {
        let mut out = String::new();
        for (name, ok, detail) in &lines {
            let _ = writeln!(
                out,
                "{} {name}: {detail}",
                if *ok { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(out, "seed {seed}");
        out
    };
    (passed, text)
}
