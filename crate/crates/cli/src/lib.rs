//! Command dispatch for the `matrovar` binary.
//!
//! Every command builds a JSON report with the keys `command`, `name`,
//! `seed`, `pass` and `result` (or `error`). Keys are sorted, and the report
//! carries no timing, so identical inputs give byte-identical output.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use matrovar::chains::{self, ChainKind};
use matrovar::config::config_report;
use matrovar::fixtures;
use matrovar::gca::generate_gm;
use matrovar::linalg::rational::format_vector;
use matrovar::linalg::{parse_rational, seeded_rng, Rational, SampleParams};
use matrovar::matroid::{matroid_from_json, VectorMap};
use matrovar::realize::{self, BoundKind};
use matrovar::{Error, Matroid, Realization};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "matrovar",
    version,
    about = "Matroid realization spaces with exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Matroid JSON file.
    #[arg(long, short, global = true, conflicts_with = "fixture")]
    pub input: Option<PathBuf>,
    /// Built-in fixture name (see `matrovar fixtures`).
    #[arg(long, short, global = true)]
    pub fixture: Option<String>,
    /// Realization JSON file.
    #[arg(long, short, global = true)]
    pub realization: Option<PathBuf>,
    /// Lifting point as comma-separated rationals.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Absolute bound on sampled integer coordinates.
    #[arg(long, global = true, default_value_t = 1000)]
    pub bound: u64,
    #[arg(long, global = true, default_value_t = 64)]
    pub retries: usize,
    /// Maximum substitution depth for `gm`.
    #[arg(long, global = true, default_value_t = 3)]
    pub depth: usize,
    /// Number of random minors sampled by `certify`.
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Deletion-sequence mode for `chain`.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long = "bound-kind", global = true, value_enum, default_value_t = Bound::Thm25)]
    pub bound_kind: Bound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse and validate a matroid.
    Validate,
    /// Subspace classes, degrees and the sets S and P.
    Report,
    /// Nilpotent and solvable chains.
    Chain,
    /// Solvable, nilpotent, forest, strong-nilpotent and special flags.
    Classify,
    /// The lifting-dimension invariant of a weak-nilpotent matroid.
    Dim,
    /// Realize a nilpotent or solvable special matroid.
    Realize,
    /// Realize a solvable special matroid stably.
    StableRealize,
    /// Symbolic liftability matrix.
    Liftmat,
    /// Lifting dimension at a realization and lifting point.
    Liftdim,
    /// Rank bound certificate for the evaluated liftability matrix.
    Certify,
    /// Bracket polynomials generated by point substitution.
    Gm,
    /// Check that a realization realizes the matroid.
    CheckRealization,
    /// Lift a collection lying in a hyperplane.
    LiftSample,
    /// List fixtures, or print one as matroid JSON.
    Fixtures,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Report => "report",
            Command::Chain => "chain",
            Command::Classify => "classify",
            Command::Dim => "dim",
            Command::Realize => "realize",
            Command::StableRealize => "stable-realize",
            Command::Liftmat => "liftmat",
            Command::Liftdim => "liftdim",
            Command::Certify => "certify",
            Command::Gm => "gm",
            Command::CheckRealization => "check-realization",
            Command::LiftSample => "lift-sample",
            Command::Fixtures => "fixtures",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Nilpotent,
    Solvable,
}

impl From<Mode> for ChainKind {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Nilpotent => ChainKind::Nilpotent,
            Mode::Solvable => ChainKind::Solvable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bound {
    /// `rank ≤ |M| − dim(M)`, weak-nilpotent matroids only.
    Thm25,
    /// `rank ≤ |M| − rank(M)`.
    Prop68,
}

impl From<Bound> for BoundKind {
    fn from(b: Bound) -> Self {
        match b {
            Bound::Thm25 => BoundKind::Thm25,
            Bound::Prop68 => BoundKind::Prop68,
        }
    }
}

/// Failure of a command, tagged with its exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Math(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Math(_) => EXIT_FAILURE,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Input(_) => "input",
            Failure::Math(_) => "mathematical",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Math(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Math(e.to_string())
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.code == EXIT_OK
    }

    pub fn result(&self) -> &Value {
        &self.report["result"]
    }
}

struct Payload {
    result: Value,
    pass: bool,
}

fn ok(result: Value) -> Result<Payload, Failure> {
    Ok(Payload { result, pass: true })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: Error) -> Failure {
    match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

struct Context<'a> {
    opts: &'a Options,
    params: SampleParams,
}

impl Context<'_> {
    fn matroid(&self) -> Result<Matroid, Failure> {
        match (&self.opts.input, &self.opts.fixture) {
            (Some(path), _) => {
                let m = matroid_from_json(&read(path)?).map_err(|e| with_path(path, e))?;
                Ok(match m.name() {
                    Some(_) => m,
                    None => {
                        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
                        m.with_name(stem.unwrap_or_default())
                    }
                })
            }
            (None, Some(name)) => fixtures::find(name)
                .ok_or_else(|| Failure::Input(format!("unknown fixture {name:?}")))?
                .matroid()
                .map_err(Failure::from),
            (None, None) => Err(Failure::Input(
                "one of --input or --fixture is required".into(),
            )),
        }
    }

    fn given_realization(&self) -> Result<Option<Realization>, Failure> {
        self.opts
            .realization
            .as_deref()
            .map(|path| Realization::from_json(&read(path)?).map_err(|e| with_path(path, e)))
            .transpose()
    }

    fn realization(
        &self,
        m: &Matroid,
        rng: &mut matrovar::linalg::SeededRng,
    ) -> Result<Realization, Failure> {
        match self.given_realization()? {
            Some(r) => Ok(realize::verify(m, r)?),
            None => Ok(realize::realize(m, rng, self.params)?),
        }
    }

    fn lifting_point(
        &self,
        vectors: &VectorMap,
        ambient: usize,
        rng: &mut matrovar::linalg::SeededRng,
    ) -> Result<Vec<Rational>, Failure> {
        match &self.opts.q {
            Some(text) => {
                let q = text
                    .split(',')
                    .map(|s| parse_rational(s.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
                if q.len() != ambient {
                    return Err(Error::DimensionMismatch {
                        expected: ambient,
                        found: q.len(),
                    }
                    .into());
                }
                Ok(q)
            }
            None => Ok(realize::sample_lifting_point(
                vectors,
                ambient,
                rng,
                self.params,
            )?),
        }
    }
}

fn fixture_list() -> Value {
    let list: Vec<Value> = fixtures::FIXTURES
        .iter()
        .map(|f| {
            json!({
                "name": f.name,
                "ground_set": f.ground_set,
                "rank": f.rank,
                "notes": f.notes,
            })
        })
        .collect();
    Value::Array(list)
}

fn dispatch(command: Command, cx: &Context) -> Result<Payload, Failure> {
    let mut rng = seeded_rng(cx.opts.seed);
    if command == Command::Fixtures {
        return match &cx.opts.fixture {
            Some(name) => {
                let f = fixtures::find(name)
                    .ok_or_else(|| Failure::Input(format!("unknown fixture {name:?}")))?;
                ok(to_value(&f.spec()))
            }
            None => ok(fixture_list()),
        };
    }
    let m = cx.matroid()?;
    match command {
        Command::Fixtures => unreachable!(),
        Command::Validate => {
            m.check_circuit_elimination()?;
            ok(json!({
                "ground_set": m.ground_size(),
                "rank": m.rank(),
                "circuits": m.circuits().len(),
                "paving": m.is_paving(),
                "valid": true,
            }))
        }
        Command::Report => ok(config_report(&m).to_json()),
        Command::Chain => {
            let mut out = json!({
                "nilpotent": to_value(&chains::nilpotent_chain(&m)),
                "solvable": to_value(&chains::solvable_chain(&m)),
            });
            if let Some(mode) = cx.opts.mode {
                out["deletion_sequence"] = to_value(&chains::deletion_sequence(&m, mode.into())?);
            }
            ok(out)
        }
        Command::Classify => ok(to_value(&chains::classify(&m))),
        Command::Dim => {
            let cert = chains::lifting_dimension_invariant(&m)?;
            ok(json!({
                "dim": cert.dim_value,
                "constants": cert.constants,
                "terminal_rank": cert.terminal_rank,
                "chain_prefix": to_value(&cert.chain_prefix),
            }))
        }
        Command::Realize => {
            let r = realize::realize(&m, &mut rng, cx.params)?;
            ok(json!({ "realization": to_value(&r) }))
        }
        Command::StableRealize => ok(to_value(&realize::realize_stable_special(
            &m, &mut rng, cx.params,
        )?)),
        Command::Liftmat => {
            let lm = realize::liftability_matrix(&m);
            let mut out = to_value(&lm);
            out["shape"] = json!([lm.rows.len(), lm.cols.len()]);
            ok(out)
        }
        Command::Liftdim => {
            let r = cx.realization(&m, &mut rng)?;
            let q = cx.lifting_point(&r.vectors, r.dim, &mut rng)?;
            let value = realize::lifting_dimension_at(&m, &r.vectors, &q)?;
            let invariant = chains::lifting_dimension_invariant(&m)
                .ok()
                .map(|c| c.dim_value);
            ok(json!({
                "lifting_dimension": value,
                "invariant": invariant,
                "q": format_vector(&q),
                "realization": to_value(&r),
            }))
        }
        Command::Certify => {
            let r = cx.realization(&m, &mut rng)?;
            let q = cx.lifting_point(&r.vectors, r.dim, &mut rng)?;
            let samples = (cx.opts.samples > 0).then_some((cx.opts.samples, &mut rng));
            let cert =
                realize::minor_rank_certificate(&m, &r, &q, cx.opts.bound_kind.into(), samples)?;
            let pass = cert.holds;
            let mut out = to_value(&cert);
            out["q"] = json!(format_vector(&q));
            Ok(Payload { result: out, pass })
        }
        Command::Gm => {
            let gm = generate_gm(&m, cx.opts.depth)?;
            let mut out = to_value(&gm);
            out["polynomials"] = json!(gm
                .polynomials()
                .map(ToString::to_string)
                .collect::<Vec<_>>());
            ok(out)
        }
        Command::CheckRealization => {
            let r = cx
                .given_realization()?
                .ok_or_else(|| Failure::Input("--realization is required".into()))?;
            let check = realize::is_realization(&m, &r)?;
            let pass = check.realizes;
            Ok(Payload {
                result: to_value(&check),
                pass,
            })
        }
        Command::LiftSample => {
            let vectors = match cx.given_realization()? {
                Some(r) => r.vectors,
                None => realize::random_hyperplane_collection(&m, &mut rng, cx.params)?.0,
            };
            let q = cx.lifting_point(&vectors, m.rank(), &mut rng)?;
            let lift = realize::sample_lift(&m, &vectors, &q, &mut rng, cx.params)?;
            let pass = lift.is_some();
            let collection = Realization::new(m.rank(), vectors);
            Ok(Payload {
                result: json!({
                    "collection": to_value(&collection),
                    "q": format_vector(&q),
                    "lift": lift.as_ref().map(to_value),
                }),
                pass,
            })
        }
    }
}

/// Runs one command and assembles its report.
pub fn run(command: Command, opts: &Options) -> Outcome {
    let cx = Context {
        opts,
        params: SampleParams {
            bound: opts.bound,
            retries: opts.retries,
        },
    };
    let name = match command {
        Command::Fixtures => opts
            .fixture
            .clone()
            .map(Value::String)
            .unwrap_or(Value::Null),
        _ => cx
            .matroid()
            .ok()
            .and_then(|m| m.name().map(str::to_owned))
            .map_or(Value::Null, Value::String),
    };
    let mut report = json!({
        "command": command.name(),
        "name": name,
        "seed": opts.seed,
    });
    let code = match dispatch(command, &cx) {
        Ok(p) => {
            report["result"] = p.result;
            report["pass"] = json!(p.pass);
            if p.pass {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(f) => {
            report["pass"] = json!(false);
            report["error"] = json!({ "kind": f.kind(), "message": f.message() });
            f.code()
        }
    };
    Outcome { report, code }
}

/// Human-readable rendering of a report.
pub fn render_text(report: &Value, elapsed: std::time::Duration) -> String {
    let field = |k: &str| match &report[k] {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        v => v.to_string(),
    };
    let mut out = format!(
        "command: {}\nname:    {}\nseed:    {}\npass:    {}\nelapsed: {:.3}s\n",
        field("command"),
        field("name"),
        field("seed"),
        field("pass"),
        elapsed.as_secs_f64()
    );
    if let Some(err) = report.get("error") {
        out.push_str(&format!(
            "error:   {} ({})\n",
            err["message"].as_str().unwrap_or(""),
            err["kind"].as_str().unwrap_or("")
        ));
    }
    if let Some(result) = report.get("result") {
        out.push_str("result:\n");
        out.push_str(&serde_json::to_string_pretty(result).expect("reports serialize"));
        out.push('\n');
    }
    out
}
