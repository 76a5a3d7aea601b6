//! Command-line front end over `delpezzo-core`.
//!
//! Every subcommand returns a JSON payload; exact rationals are always strings.

mod commands;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// 0 ok, 1 data error, 2 usage error.
    #[serde(skip)]
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(payload: Value, diagnostics: Vec<String>) -> Self {
        CommandResult { status: Status::Ok, payload, diagnostics, exit_code: 0 }
    }

    fn failed(failure: Failure) -> Self {
        let (code, msg) = match failure {
            Failure::Data(m) => (1, m),
            Failure::Usage(m) => (2, m),
        };
        CommandResult { status: Status::Error, payload: Value::Null, diagnostics: vec![msg], exit_code: code }
    }

    /// The payload as it goes to stdout: pretty JSON, or raw text for help output.
    pub fn render_payload(&self) -> Option<String> {
        match &self.payload {
            Value::Null => None,
            Value::String(s) => Some(s.clone()),
            v => Some(serde_json::to_string_pretty(v).expect("values always serialize")),
        }
    }
}

/// Why a command did not produce a payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Failure {
    Data(String),
    Usage(String),
}

impl Failure {
    pub(crate) fn data(e: impl std::fmt::Display) -> Self {
        Failure::Data(e.to_string())
    }
}

/// A successful command: its payload, notes for stderr, and whether every
/// check it ran passed.
pub(crate) struct Outcome {
    pub payload: Value,
    pub diagnostics: Vec<String>,
    pub passed: bool,
}

impl Outcome {
    pub(crate) fn new(payload: impl Serialize) -> Result<Self, Failure> {
        let payload = serde_json::to_value(payload).map_err(Failure::data)?;
        Ok(Outcome { payload, diagnostics: Vec::new(), passed: true })
    }

    pub(crate) fn check(mut self, passed: bool, what: &str) -> Self {
        if !passed {
            self.passed = false;
            self.diagnostics.push(format!("check failed: {what}"));
        }
        self
    }
}

#[derive(Debug, Parser)]
#[command(name = "delpezzo", version, about = "Exact computations for del Pezzo transitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chern data of the nine transitions, with Δχ recomputed.
    Table(TableArgs),
    /// Chern numbers of P(L ⊕ O) over a surface.
    Chern(ChernArgs),
    /// A degree-three genus on the catalog triples.
    Genus(GenusArgs),
    /// Toric fans of the del Pezzo degenerations, or validation of a given fan.
    Toric(ToricArgs),
    /// General position certificate for eight plane points over Q[t].
    Genpos(GenposArgs),
    /// Weighted partitions, set partitions, or a bar transform.
    Partitions(PartitionsArgs),
    /// The Nakajima pairing on weighted partitions.
    Nakajima(NakajimaArgs),
    /// Rational reconstruction of a power series.
    Rational(RationalArgs),
    /// Substitution −q = e^{iu} into a rational function of q.
    Bridge(BridgeArgs),
    /// Assembles absolute partition functions from relative tables.
    Degenerate(DegenerateArgs),
    /// Seeded synthetic degeneration runs.
    Harness(HarnessArgs),
    /// The degree zero homomorphism identity for each transition.
    Dt0(Dt0Args),
}

#[derive(Debug, Args)]
struct TableArgs {
    /// One of 1, 2, 3, 4, 5, 6I, 6II, 7, 8.
    #[arg(long)]
    label: Option<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").args(["degree", "json"])))]
struct ChernArgs {
    /// Del Pezzo degree with L = K; all of 1..=8 when omitted.
    #[arg(long)]
    degree: Option<i64>,
    /// `{"surface": {"K_squared", "euler"}, "bundle": {"L_dot_L", "L_dot_K"}}`.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("genus").args(["weights", "l_genus"])))]
struct GenusArgs {
    /// `a1,a2,a3`; Todd when omitted.
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    l_genus: bool,
    /// Use a1³ - a1a2 + a3 for the c3 coefficient instead of a1³ - 3a1a2 + 3a3.
    #[arg(long)]
    as_printed: bool,
    #[arg(long)]
    label: Option<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").args(["k", "json"])))]
struct ToricArgs {
    /// Number of blown-up points; all of 0..=8 when omitted.
    #[arg(long)]
    k: Option<usize>,
    /// A fan `{"rays": [[x, y], ...], "labels": [...]}`.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").args(["sigma", "json"]).required(true)))]
struct GenposArgs {
    /// The built-in eight points σ₁, …, σ₈.
    #[arg(long)]
    sigma: bool,
    /// A list of eight points `{"coords": [p_x, p_y, p_z]}`.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Sample parameter; the smallest good positive integer is searched otherwise.
    #[arg(long)]
    t: Option<String>,
    /// Upper bound for the sample search.
    #[arg(long, default_value_t = 64)]
    search: i64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("what").args(["size", "set", "json"]).multiple(true).required(true)))]
struct PartitionsArgs {
    #[arg(long)]
    size: Option<u32>,
    /// Preset name (point, curve, p2, p1xp1, pN) or an inline JSON ring.
    #[arg(long, default_value = "p2")]
    ring: String,
    /// Also list the set partitions of `{0, …, r-1}`.
    #[arg(long)]
    set: Option<usize>,
    /// Bar transform input `{"alpha", "classes", "chern", "matrix" | "trunc"}`.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("pair").args(["eta", "nu"]).multiple(true).requires_all(["eta", "nu"])))]
struct NakajimaArgs {
    #[arg(long)]
    size: Option<u32>,
    #[arg(long, default_value = "p2")]
    ring: String,
    /// Weighted partition `"2:h,1:pt"`.
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    nu: Option<String>,
}

#[derive(Debug, Args)]
struct RationalArgs {
    /// Consecutive coefficients, e.g. `0,1,-2,3`.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// Exponent of the first coefficient.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    start: i64,
    #[arg(long)]
    num_degree: Option<usize>,
    #[arg(long)]
    den_degree: Option<usize>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").args(["num", "json"]).required(true)))]
struct BridgeArgs {
    /// Numerator coefficients in q, lowest first.
    #[arg(long, allow_hyphen_values = true, requires = "den")]
    num: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    den: Option<String>,
    /// A rational function `{"num": [...], "den": [...]}`.
    #[arg(long, conflicts_with = "den")]
    json: Option<PathBuf>,
    /// Last exponent of u kept.
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    order: i64,
}

#[derive(Debug, Args)]
struct DegenerateArgs {
    /// Lattice, ring, class, insertions and relative tables.
    #[arg(long)]
    json: PathBuf,
    /// Overrides the correspondence order given in the file.
    #[arg(long)]
    order: Option<i64>,
}

#[derive(Debug, Args)]
struct HarnessArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Consecutive seeds starting at `--seed`.
    #[arg(long, default_value_t = 1)]
    runs: u64,
    #[arg(long, default_value_t = 3)]
    max_rho: u32,
    #[arg(long, default_value_t = 2)]
    insertions: usize,
    #[arg(long, default_value_t = 12)]
    order: i64,
    /// Alter one relative entry per run; each run must then fail at that splitting.
    #[arg(long)]
    corrupt: bool,
    /// Include the full per-splitting reports.
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct Dt0Args {
    #[arg(long)]
    label: Option<String>,
    #[arg(long, default_value_t = 15)]
    order: i64,
}

/// Parses `argv` (program name first) and runs the named subcommand.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandResult::ok(Value::String(e.to_string()), Vec::new())
                }
                _ => CommandResult::failed(Failure::Usage(e.render().to_string())),
            };
        }
    };
    let outcome = match cli.command {
        Command::Table(a) => commands::table(a.label.as_deref()),
        Command::Chern(a) => commands::chern(a.degree, a.json.as_deref()),
        Command::Genus(a) => commands::genus(a.weights.as_deref(), a.l_genus, a.as_printed, a.label.as_deref()),
        Command::Toric(a) => commands::toric(a.k, a.json.as_deref()),
        Command::Genpos(a) => commands::genpos(a.sigma, a.json.as_deref(), a.t.as_deref(), a.search),
        Command::Partitions(a) => commands::partitions(a.size, &a.ring, a.set, a.json.as_deref()),
        Command::Nakajima(a) => commands::nakajima(a.size, &a.ring, a.eta.as_deref(), a.nu.as_deref()),
        Command::Rational(a) => commands::rational(&a.coeffs, a.start, a.num_degree, a.den_degree),
        Command::Bridge(a) => commands::bridge(a.num.as_deref(), a.den.as_deref(), a.json.as_deref(), a.order),
        Command::Degenerate(a) => commands::degenerate(&a.json, a.order),
        Command::Harness(a) => {
            commands::harness(a.seed, a.runs, a.max_rho, a.insertions, a.order, a.corrupt, a.verbose)
        }
        Command::Dt0(a) => commands::dt0(a.label.as_deref(), a.order),
    };
    match outcome {
        Ok(o) if o.passed => CommandResult::ok(o.payload, o.diagnostics),
        Ok(o) => CommandResult { status: Status::Error, payload: o.payload, diagnostics: o.diagnostics, exit_code: 1 },
        Err(f) => CommandResult::failed(f),
    }
}

/// Reads and parses a JSON file; parse errors carry the file name, line and column.
pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}
