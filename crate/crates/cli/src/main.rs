//! `hrg`: validation, analysis, constructions, Ã₂ tooling and orbit tests.
//!
//! Exit codes: 0 yes/pass, 1 no/fail, 2 inconclusive, 64 usage or malformed input.

mod pipeline;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hrg_core::a2::{self, A2Group, LambdaT, Side, Triella};
use hrg_core::catalog::{self, NonHausdorffE, FIXTURE_FILES};
use hrg_core::constructions::group::Group;
use hrg_core::groupoid::{embeddability_report, CocycleHint, Verdict};
use hrg_core::orbit::{example_4_5_stream, ray_stream, separation_test, tree_fixture, SeparationSummary};
use hrg_core::{validate_presentation, Degree, Error, KGraph, Presentation};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const USAGE: u8 = 64;
const DEFAULT_SEED: u64 = 20_240_501;

#[derive(Parser)]
#[command(name = "hrg", version, about = "Higher-rank graph toolkit")]
struct Cli {
    /// Seed for every randomized run.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the k-graph axioms of a presentation file.
    Validate { file: PathBuf },
    /// Embeddability report: exit 0 embeds, 1 does not, 2 inconclusive.
    Analyze(AnalyzeArgs),
    /// Run a construction pipeline and print the resulting presentation.
    Build {
        pipeline: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Ã₂-groups from triellas.
    A2 {
        #[command(subcommand)]
        command: A2Command,
    },
    /// Orbit-space tests on path streams.
    Orbit {
        #[command(subcommand)]
        command: OrbitCommand,
    },
    /// The fixture catalog.
    Fixtures {
        #[command(subcommand)]
        command: FixtureCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Completion passes for the collapse search.
    #[arg(long, default_value_t = 10)]
    depth: usize,
    /// Degree bound n, applied as (n, …, n), for cocycle injectivity checks.
    #[arg(long, default_value_t = 2)]
    degree_bound: u32,
    /// Integer cocycle hint `id=value,id=value`; unlisted edges get 0. Repeatable.
    #[arg(long)]
    hint: Vec<String>,
}

#[derive(Subcommand)]
enum A2Command {
    /// Right (or left) normal form and shape of a word such as "a0 a4^-1 a6".
    Normalize {
        #[arg(long, default_value = "A1")]
        preset: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        word: String,
    },
    /// Λ_T as presentation JSON, with a cocycle sidecar next to it.
    LambdaT {
        #[arg(long, default_value = "A1")]
        preset: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// M₁ and M₂ of Λ_T as CSV, vertices in shortlex order.
    Matrices {
        #[arg(long, default_value = "A1")]
        preset: String,
        #[arg(long, default_value = "M")]
        out_prefix: String,
    },
    /// Exhaustive single-connectivity checks on a window of Σ_T.
    Sigma {
        #[arg(long, default_value = "A1")]
        preset: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Confluence oracle for the normal-form engine.
    Oracle {
        #[arg(long, default_value = "A1")]
        preset: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 6)]
        closure_len: usize,
    },
    /// Unique-factorization round trips on random elements.
    Factorize {
        #[arg(long, default_value = "A1")]
        preset: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Largest m and n in the sampled shapes (m, n).
        #[arg(long, default_value_t = 3)]
        max_shape: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

#[derive(Subcommand)]
enum OrbitCommand {
    /// Look for N = n𝟏 with x(N), y(N) lacking a common upper bound.
    Separate {
        /// `lambda-E-4.5` or `tree-fixture`.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        radius: usize,
    },
}

#[derive(Subcommand)]
enum FixtureCommand {
    /// Fixture names and file names.
    List,
    /// Print one fixture as JSON.
    Show { name: String },
    /// Write every fixture file into a directory (default: the fixture directory).
    Emit {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// A random 1-graph.
    Random {
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 16)]
        max_edges: usize,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MalformedInput(_)
            | Error::ColorOutOfRange { .. }
            | Error::UnknownName(_)
            | Error::UnknownVertex(_)
            | Error::UnknownEdge(_)
            | Error::UnsupportedOrder(_)
            | Error::Io(_) => USAGE,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: message.into() }
}

type Outcome = std::result::Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("hrg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let seed = cli.seed;
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Analyze(args) => analyze(&args),
        Command::Build { pipeline, out, format } => build(&pipeline, out.as_deref(), format),
        Command::A2 { command } => run_a2(command, seed),
        Command::Orbit { command } => run_orbit(command),
        Command::Fixtures { command } => fixtures(command, seed),
    }
}

/// Write to stdout; a closed pipe is not an error worth a panic.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    out(&text);
}

fn fixture_dir() -> PathBuf {
    std::env::var_os("HRG_FIXTURES").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("fixtures"))
}

/// A path as given, or else a file of that name (with or without `.json`) in the fixture directory.
fn resolve(file: &Path) -> PathBuf {
    if file.exists() {
        return file.to_path_buf();
    }
    let dir = fixture_dir();
    let name = file.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    for candidate in [dir.join(&name), dir.join(format!("{name}.json"))] {
        if candidate.exists() {
            return candidate;
        }
    }
    file.to_path_buf()
}

fn load(file: &Path) -> Result<Presentation, Failure> {
    Ok(Presentation::load(&resolve(file))?)
}

fn validate(file: &Path) -> Outcome {
    let p = load(file)?;
    let report = validate_presentation(&p)?;
    #[derive(Serialize)]
    struct Out<'a> {
        ok: bool,
        k: usize,
        vertices: usize,
        edges: usize,
        squares: usize,
        hexagon_paths_checked: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        failure: Option<&'a hrg_core::kgraph::ValidationFailure>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    }
    print_json(&Out {
        ok: report.ok,
        k: p.k,
        vertices: p.vertices.len(),
        edges: p.edges.len(),
        squares: p.squares.len(),
        hexagon_paths_checked: report.hexagon_paths_checked,
        failure: report.failure.as_ref(),
        reason: report.failure.as_ref().map(|f| f.describe()),
    });
    Ok(if report.ok { 0 } else { 1 })
}

fn analyze(args: &AnalyzeArgs) -> Outcome {
    let p = load(&args.file)?;
    let report = validate_presentation(&p)?;
    if let Some(f) = report.failure {
        return Err(Failure { code: 1, message: format!("not a k-graph: {}", f.describe()) });
    }
    let g = KGraph::new(&p)?;
    let mut hints = Vec::new();
    for (i, spec) in args.hint.iter().enumerate() {
        let mut labels = Vec::new();
        for part in spec.split(',').filter(|s| !s.is_empty()) {
            let (id, value) = part.split_once('=').ok_or_else(|| usage(format!("hint entry {part:?} is not id=value")))?;
            let value: i64 = value.trim().parse().map_err(|_| usage(format!("hint value {value:?} is not an integer")))?;
            labels.push((id.trim(), value));
        }
        hints.push(CocycleHint::integer(&g, &format!("hint{}", i + 1), &labels)?);
    }
    let bound = Degree(vec![args.degree_bound; g.rank()]);
    let r = embeddability_report(&g, args.depth, &bound, &hints);
    print_json(&r);
    Ok(match r.verdict {
        Verdict::Embeds => 0,
        Verdict::NotEmbeds => 1,
        Verdict::Inconclusive => 2,
    })
}

fn build(file: &Path, out: Option<&Path>, format: Format) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(Error::from)?;
    let pipeline: pipeline::Pipeline = serde_json::from_str(&text).map_err(Error::from)?;
    let base = file.parent().unwrap_or(Path::new("."));
    let p = pipeline::run(&pipeline, base).map_err(|(step, e)| {
        let f = Failure::from(e);
        Failure { code: f.code, message: format!("step {step}: {}", f.message) }
    })?;
    let text = match format {
        Format::Json => p.to_json(),
        Format::Dot => p.to_dot(),
    };
    emit(out, &text)?;
    Ok(0)
}

fn emit(dest: Option<&Path>, text: &str) -> Result<(), Failure> {
    match dest {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::from(Error::from(e))),
        None => {
            out(text);
            Ok(())
        }
    }
}

fn triella(preset: &str) -> Result<std::sync::Arc<Triella>, Failure> {
    Ok(std::sync::Arc::new(Triella::preset(preset)?))
}

fn lambda(preset: &str) -> Result<LambdaT, Failure> {
    Ok(a2::lambda_t(triella(preset)?)?)
}

fn run_a2(command: A2Command, seed: u64) -> Outcome {
    match command {
        A2Command::Normalize { preset, side, word } => {
            let t = triella(&preset)?;
            let w = a2::SignedWord::parse(&word)?;
            if let Some(l) = w.0.iter().find(|l| l.point as usize >= t.points()) {
                return Err(usage(format!("letter {l} names no point of the plane")));
            }
            let side = match side {
                SideArg::Right => Side::Right,
                SideArg::Left => Side::Left,
            };
            let nf = t.normalize_side(&w, side);
            let (m, n) = nf.letter_counts();
            out(&format!("{nf} ({m},{n})\n"));
            Ok(0)
        }
        A2Command::LambdaT { preset, out } => {
            let l = lambda(&preset)?;
            std::fs::write(&out, l.presentation.to_json()).map_err(Error::from)?;
            #[derive(Serialize)]
            struct Sidecar {
                b: BTreeMap<String, String>,
                c: BTreeMap<String, String>,
            }
            let table = l.cocycle_table();
            let sidecar = Sidecar {
                b: table.iter().map(|(e, (b, _))| (e.clone(), b.clone())).collect(),
                c: table.iter().map(|(e, (_, c))| (e.clone(), c.clone())).collect(),
            };
            let side_path = out.with_extension("cocycles.json");
            let mut text = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
            text.push('\n');
            std::fs::write(&side_path, text).map_err(Error::from)?;
            print_json(&serde_json::json!({
                "presentation": out.display().to_string(),
                "cocycles": side_path.display().to_string(),
                "vertices": l.graph.vertex_count(),
                "edges": l.graph.edge_count(),
                "squares": l.presentation.squares.len(),
            }));
            Ok(0)
        }
        A2Command::Matrices { preset, out_prefix } => {
            let l = lambda(&preset)?;
            let (m, commute, zero_one) = l.matrices();
            let ids: Vec<&str> = (0..l.graph.vertex_count()).map(|v| l.graph.vertex_id(v)).collect();
            let mut files = Vec::new();
            for (i, mat) in m.iter().enumerate() {
                let mut text = format!(",{}\n", ids.join(","));
                for (row, id) in mat.iter().zip(&ids) {
                    let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                    text.push_str(&format!("{id},{}\n", cells.join(",")));
                }
                let path = format!("{out_prefix}{}.csv", i + 1);
                std::fs::write(&path, text).map_err(Error::from)?;
                files.push(path);
            }
            print_json(&serde_json::json!({ "files": files, "size": ids.len(), "commute": commute, "product_zero_one": zero_one }));
            Ok(if commute && zero_one { 0 } else { 1 })
        }
        A2Command::Sigma { preset, radius } => {
            let s = a2::SigmaT::new(std::sync::Arc::new(lambda(&preset)?));
            let r = a2::check_window(&s, radius)?;
            print_json(&r);
            Ok(if r.clean() { 0 } else { 1 })
        }
        A2Command::Oracle { preset, max_len, closure_len } => {
            if closure_len < max_len {
                return Err(usage("--closure-len must be at least --max-len"));
            }
            let r = a2::confluence_oracle(&*triella(&preset)?, max_len, closure_len);
            print_json(&r);
            Ok(if r.clean() { 0 } else { 1 })
        }
        A2Command::Factorize { preset, samples, max_shape } => {
            let g = A2Group::new(triella(&preset)?);
            let mut rng = StdRng::seed_from_u64(seed);
            let mut failures = Vec::new();
            for _ in 0..samples {
                let (m, n) = (rng.gen_range(0..=max_shape), rng.gen_range(0..=max_shape));
                let w = g.random_element(&mut rng, m, n);
                let (m1, n1) = (rng.gen_range(0..=m), rng.gen_range(0..=n));
                let (a, b) = (Degree(vec![m1 as u32, n1 as u32]), Degree(vec![(m - m1) as u32, (n - n1) as u32]));
                let ok = match g.unique_factorize(&w, &a, &b) {
                    Ok((h, k)) => g.mul(&h, &k) == w && g.shape(&h) == a && g.shape(&k) == b,
                    Err(_) => false,
                };
                if !ok && failures.len() < 8 {
                    failures.push(format!("{w} at ({m1},{n1})"));
                }
            }
            print_json(&serde_json::json!({ "seed": seed, "samples": samples, "failures": failures }));
            Ok(if failures.is_empty() { 0 } else { 1 })
        }
    }
}

#[derive(Serialize)]
struct OrbitOut {
    graph: String,
    x: String,
    y: String,
    #[serde(flatten)]
    summary: SeparationSummary,
}

fn run_orbit(command: OrbitCommand) -> Outcome {
    let OrbitCommand::Separate { graph, x, y, n_max, radius } = command;
    let summary = match graph.as_str() {
        "lambda-E-4.5" | "E-4.5" => {
            let (sx, sy) = (example_4_5_stream(&x)?, example_4_5_stream(&y)?);
            separation_test(&NonHausdorffE, &sx, &sy, n_max, radius).map(|v| v.summary())
        }
        "tree-fixture" => {
            let (cover, root) = tree_fixture()?;
            let alias = |s: &str| match s {
                "p1" => "ray:1".to_string(),
                "p2" => "ray:2".to_string(),
                other => other.to_string(),
            };
            let sx = ray_stream(&alias(&x), root.clone())?;
            let sy = ray_stream(&alias(&y), root)?;
            separation_test(&cover, &sx, &sy, n_max, radius).map(|v| v.summary())
        }
        other => return Err(usage(format!("unknown graph {other:?}; expected lambda-E-4.5 or tree-fixture"))),
    };
    match summary {
        Ok(summary) => {
            let code = if summary.verdict == "separated" { 0 } else { 2 };
            print_json(&OrbitOut { graph, x, y, summary });
            Ok(code)
        }
        Err(Error::ShiftEquivalentDetected { p, q }) => {
            print_json(&serde_json::json!({ "graph": graph, "x": x, "y": y, "verdict": "shift_equivalent", "p": p, "q": q }));
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn fixtures(command: FixtureCommand, seed: u64) -> Outcome {
    match command {
        FixtureCommand::List => {
            for (name, file) in FIXTURE_FILES {
                out(&format!("{name}\t{file}\n"));
            }
            Ok(0)
        }
        FixtureCommand::Show { name } => {
            let p = catalog::finite(&name).ok_or_else(|| usage(format!("unknown fixture {name:?}")))?;
            out(&p.to_json());
            Ok(0)
        }
        FixtureCommand::Emit { dir } => {
            let dir = dir.unwrap_or_else(fixture_dir);
            std::fs::create_dir_all(&dir).map_err(Error::from)?;
            for (name, file) in FIXTURE_FILES {
                let p = catalog::finite(name).expect("catalog names resolve");
                std::fs::write(dir.join(file), p.to_json()).map_err(Error::from)?;
                out(&format!("{}\n", dir.join(file).display()));
            }
            Ok(0)
        }
        FixtureCommand::Random { max_vertices, max_edges } => {
            let mut rng = StdRng::seed_from_u64(seed);
            out(&catalog::random_one_graph(&mut rng, max_vertices, max_edges).to_json());
            Ok(0)
        }
    }
}
