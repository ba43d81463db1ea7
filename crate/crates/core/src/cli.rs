//! Command-line front end. Every invocation yields a [`RunReport`] and an exit
//! code: 0 success, 1 definitive absence, 2 soft failure or exhausted
//! budget, 3 invalid input or usage.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::balance::{
    balanceable_check, balancing_number_with, find_balanced_budgeted, BalancingValue, Budget,
    Guest, NumberOptions,
};
use crate::constructions::{
    certificate, construct_clique_partition, construct_path_blocker,
    construct_pattern_blowup_blocker, construct_separator, parity_obstruction_check, Avoidance,
    Certificate, ConstructionSpec,
};
use crate::error::{Error, Result};
use crate::euler::{
    embed_balanced_long_path_with, vertex_budget_with, walk_parity_report, Multiplicity,
};
use crate::graph::ColoredGraph;
use crate::heuristics::{
    find_pattern_member_exact_with, find_pattern_member_traced, PatternMatch, PipelineConfig,
};
use crate::patterns::{
    enumerate_patterns, enumerate_patterns_with, EnumerateOptions, PatternCatalogue,
    PatternTemplate,
};

pub const SCHEMA_VERSION: u32 = 1;
/// Default node budget for searches when neither a flag nor the config sets one.
pub const BUDGET_ENV: &str = "COLORPAT_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "colorpat",
    version,
    about = "Patterns and balanced subgraphs in edge-colored complete graphs"
)]
pub struct Cli {
    /// Print the full JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// TOML file with defaults for budget, seed, trials and workers.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Patterns(PatternsCmd),
    #[command(subcommand)]
    Balance(BalanceCmd),
    #[command(subcommand)]
    Construct(ConstructCmd),
    #[command(subcommand)]
    Euler(EulerCmd),
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Debug, Subcommand)]
pub enum PatternsCmd {
    /// All pattern classes for `r` colors.
    Enumerate {
        #[arg(long)]
        r: usize,
        /// Write the catalogue JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Checks a template (or every template of a catalogue) for validity.
    Validate { file: PathBuf },
    /// Blow-up of a template with parts of size `t`, in the graph text format.
    Blowup {
        file: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BalanceCmd {
    /// Exact search for a balanced copy of the guest in a host.
    Find {
        #[arg(long)]
        host: PathBuf,
        /// `path:L`, `cycle:L` or `file:G`.
        #[arg(long)]
        guest: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Exact balancing number with a certificate.
    Number {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        guest: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Searches the guest in a blow-up of every pattern.
    CheckBalanceable {
        #[arg(long)]
        guest: String,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Guest to certify absence of; each construction has a default.
    #[arg(long)]
    pub guest: Option<String>,
    /// Certify even above the automatic size limit.
    #[arg(long)]
    pub force: bool,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Write the graph here instead of into the output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCmd {
    /// Three colors on `n` vertices without a balanced path of `3k` edges.
    PathBlocker {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        cert: CertifyArgs,
    },
    /// `l` cliques, one color per pair of cliques and one shared inside.
    CliquePartition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        /// Edges per color of the default path guest.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        cert: CertifyArgs,
    },
    /// Blow-up of the separator pattern.
    Separator {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        cert: CertifyArgs,
    },
    /// Blow-up of a template checked not to contain the guest.
    PatternBlowup {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        cert: CertifyArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Relaxed,
    Uniform,
}

impl From<ModeArg> for Multiplicity {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Relaxed => Multiplicity::Relaxed,
            ModeArg::Uniform => Multiplicity::Uniform,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum EulerCmd {
    /// Balanced path with `2k` edges per color in a blow-up of the template.
    Embed {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        k: usize,
        /// Part size; defaults to the smallest that fits.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum, default_value = "relaxed")]
        mode: ModeArg,
    },
    /// Degree parities forced on the parts by a balanced path.
    Parity {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchCmd {
    /// Finds a pattern member with parts of size `t` in the host.
    Pattern {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        t: usize,
        /// Exhaustive search instead of the randomized pipeline.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

/// Values read from `--config`; flags win over these.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Absent,
    SoftFailure,
    Invalid,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Absent => 1,
            Status::SoftFailure => 2,
            Status::Invalid => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub version: String,
    /// Arguments as given, enough to rerun the command.
    pub command: Vec<String>,
    /// SHA-256 of every file read, keyed by path.
    pub inputs: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub status: Status,
    pub exit_code: i32,
    pub payload: Value,
    pub counters: BTreeMap<String, u64>,
    pub wall_ms: u128,
    pub error: Option<String>,
    #[serde(skip)]
    pub text: String,
}

impl RunReport {
    /// The report as shown without `--json`.
    pub fn render_text(&self) -> String {
        let mut s = self.text.clone();
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        let counters: Vec<String> = self
            .counters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(
            s,
            "status: {:?} (exit {}), {} ms{}{}",
            self.status,
            self.exit_code,
            self.wall_ms,
            if counters.is_empty() {
                String::new()
            } else {
                format!(", {}", counters.join(" "))
            },
            self.seed.map(|x| format!(", seed {x}")).unwrap_or_default(),
        );
        s
    }
}

struct Outcome {
    status: Status,
    payload: Value,
    text: String,
    counters: BTreeMap<String, u64>,
    seed: Option<u64>,
}

impl Outcome {
    fn new(status: Status, payload: Value, text: String) -> Self {
        Self {
            status,
            payload,
            text,
            counters: BTreeMap::new(),
            seed: None,
        }
    }

    fn count(mut self, name: &str, v: u64) -> Self {
        self.counters.insert(name.to_string(), v);
        self
    }
}

struct Ctx {
    inputs: BTreeMap<String, String>,
    config: FileConfig,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path)?;
        let digest: String = Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        self.inputs.insert(path.display().to_string(), digest);
        String::from_utf8(bytes).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })
    }

    fn budget(&self, flag: Option<u64>) -> Budget {
        let env = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok());
        Budget {
            limit: flag.or(self.config.budget).or(env),
        }
    }

    fn guest(&mut self, spec: &str) -> Result<Guest> {
        match spec.strip_prefix("file:") {
            Some(path) => Guest::parse_text(&self.read(Path::new(path))?),
            None => spec.parse(),
        }
    }

    fn host(&mut self, path: &Path) -> Result<ColoredGraph> {
        ColoredGraph::parse_text(&self.read(path)?)
    }

    fn template(&mut self, path: &Path) -> Result<PatternTemplate> {
        PatternTemplate::from_json(&self.read(path)?)
    }
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::BudgetExceeded { .. } | Error::CatalogueBudget { .. } => Status::SoftFailure,
        _ => Status::Invalid,
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> (i32, RunReport)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();
    let mut report = RunReport {
        schema_version: SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: echo,
        inputs: BTreeMap::new(),
        seed: None,
        status: Status::Invalid,
        exit_code: Status::Invalid.code(),
        payload: Value::Null,
        counters: BTreeMap::new(),
        wall_ms: 0,
        error: None,
        text: String::new(),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => Status::Invalid.code(),
            };
            report.status = if code == 0 {
                Status::Ok
            } else {
                Status::Invalid
            };
            report.exit_code = code;
            report.text = e.render().to_string();
            if code != 0 {
                report.error = Some(e.kind().to_string());
            }
            return (code, report);
        }
    };
    let mut ctx = Ctx {
        inputs: BTreeMap::new(),
        config: FileConfig::default(),
    };
    let result = (|| {
        if let Some(path) = &cli.config {
            let text = ctx.read(path)?;
            ctx.config = toml::from_str(&text).map_err(|e| Error::Parse {
                line: 0,
                msg: format!("config: {e}"),
            })?;
        }
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(w) = cli.workers.or(ctx.config.workers) {
            pool = pool.num_threads(w);
        }
        let pool = pool
            .build()
            .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
        pool.install(|| run(&cli.command, &mut ctx))
    })();
    match result {
        Ok(o) => {
            report.status = o.status;
            report.payload = o.payload;
            report.text = o.text;
            report.counters = o.counters;
            report.seed = o.seed;
        }
        Err(e) => {
            report.status = status_of(&e);
            report.error = Some(e.to_string());
        }
    }
    report.exit_code = report.status.code();
    report.inputs = ctx.inputs;
    report.wall_ms = start.elapsed().as_millis();
    (report.exit_code, report)
}

/// Runs the process arguments, prints the report and returns the exit code.
pub fn main_entry() -> i32 {
    let args: Vec<OsString> = std::env::args_os().collect();
    let json = args.iter().any(|a| a == "--json");
    let (code, report) = dispatch(args);
    // help and version output stay plain text
    let plain = report.payload.is_null() && report.error.is_none();
    if json && !plain {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else if report.status == Status::Invalid {
        eprint!("{}", report.render_text());
    } else {
        print!("{}", report.render_text());
    }
    code
}

fn run(cmd: &Command, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        Command::Patterns(c) => run_patterns(c, ctx),
        Command::Balance(c) => run_balance(c, ctx),
        Command::Construct(c) => run_construct(c, ctx),
        Command::Euler(c) => run_euler(c, ctx),
        Command::Search(c) => run_search(c, ctx),
    }
}

fn catalogue_text(cat: &PatternCatalogue) -> String {
    let mut s = String::new();
    for (i, (t, key)) in cat.templates.iter().zip(&cat.keys).enumerate() {
        let _ = writeln!(
            s,
            "  [{i}] k={} M={:?} key={}",
            t.k(),
            t.matrix(),
            key.to_hex()
        );
    }
    s
}

fn write_out(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn run_patterns(cmd: &PatternsCmd, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        PatternsCmd::Enumerate { r, out, budget } => {
            let mut opts = EnumerateOptions::default();
            if let Some(b) = ctx.budget(*budget).limit {
                opts.node_budget = b;
            }
            let (cat, status) = match enumerate_patterns_with(*r, &opts) {
                Ok(c) => (c, Status::Ok),
                Err(Error::CatalogueBudget { partial, .. }) => (*partial, Status::SoftFailure),
                Err(e) => return Err(e),
            };
            let json = cat.to_json();
            if let Some(p) = out {
                write_out(p, &json)?;
            }
            let text = format!(
                "r={r}: {} pattern classes\n{}",
                cat.len(),
                catalogue_text(&cat)
            );
            let payload = json!({
                "r": r,
                "count": cat.len(),
                "complete": status == Status::Ok,
                "catalogue": serde_json::from_str::<Value>(&json)?,
            });
            Ok(Outcome::new(status, payload, text).count("nodes", cat.nodes))
        }
        PatternsCmd::Validate { file } => {
            let raw = ctx.read(file)?;
            let templates = match PatternTemplate::from_json(&raw) {
                Ok(t) => vec![t],
                Err(_) => PatternCatalogue::from_json(&raw)?.templates,
            };
            let mut text = String::new();
            let mut all_valid = true;
            let rows: Vec<Value> = templates
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let rep = t.validate();
                    all_valid &= rep.valid;
                    let _ = writeln!(
                        text,
                        "[{i}] k={} {}{}",
                        t.k(),
                        if rep.valid { "valid" } else { "invalid" },
                        if rep.valid { String::new() } else { format!(": {:?}", rep.violations) }
                    );
                    json!({
                        "template": t,
                        "valid": rep.valid,
                        "violations": rep.violations,
                        "key": t.key().to_hex(),
                        "private_colors": (0..t.k()).map(|p| t.private_colors(p)).collect::<Vec<_>>(),
                        "mergeable_parts": t.mergeable_parts(),
                    })
                })
                .collect();
            let status = if all_valid {
                Status::Ok
            } else {
                Status::Absent
            };
            Ok(Outcome::new(
                status,
                json!({ "valid": all_valid, "templates": rows }),
                text,
            ))
        }
        PatternsCmd::Blowup { file, t, out } => {
            let tpl = ctx.template(file)?;
            if *t == 0 {
                return Err(Error::InvalidParameter("part size must be positive".into()));
            }
            let g = tpl.blow_up(*t);
            let graph = g.to_text();
            let text = match out {
                Some(p) => {
                    write_out(p, &graph)?;
                    format!("wrote {} vertices to {}\n", g.n(), p.display())
                }
                None => graph.clone(),
            };
            let payload = json!({
                "n": g.n(),
                "r": g.r(),
                "t": t,
                "graph": if out.is_some() { Value::Null } else { Value::String(graph) },
            });
            Ok(Outcome::new(Status::Ok, payload, text))
        }
    }
}

fn run_balance(cmd: &BalanceCmd, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        BalanceCmd::Find {
            host,
            guest,
            r,
            budget,
        } => {
            let g = ctx.host(host)?;
            let guest = ctx.guest(guest)?;
            let (found, stats) = find_balanced_budgeted(&g, &guest, *r, ctx.budget(*budget))?;
            let (status, text) = match &found {
                Some(e) => (
                    Status::Ok,
                    format!(
                        "balanced {guest}: vertices {:?}, profile {:?}\n",
                        e.map, e.profile
                    ),
                ),
                None => (Status::Absent, format!("no balanced {guest}\n")),
            };
            let payload =
                json!({ "guest": guest.to_string(), "found": found.is_some(), "embedding": found });
            Ok(Outcome::new(status, payload, text).count("nodes", stats.nodes))
        }
        BalanceCmd::Number {
            n,
            guest,
            r,
            budget,
        } => {
            let guest = ctx.guest(guest)?;
            let opts = NumberOptions {
                node_budget: ctx.budget(*budget).limit,
            };
            let cert = balancing_number_with(*n, &guest, *r, &opts)?;
            let verified = cert.complete && cert.verify()?;
            let mut payload = cert.to_json();
            if let Some(obj) = payload.as_object_mut() {
                obj.remove("wall_ms");
                obj.insert("verified".into(), json!(verified));
            }
            let value = match cert.value {
                Some(BalancingValue::Value(m)) => m.to_string(),
                Some(BalancingValue::AllColoringsContain) => "ALL_COLORINGS_CONTAIN".into(),
                None => "unknown".into(),
            };
            let mut text = format!(
                "n={n} r={r} {guest}: {value}{}\n",
                if cert.complete {
                    ""
                } else {
                    " (lower bound, budget exhausted)"
                }
            );
            if let Some(w) = &cert.witness {
                let _ = write!(text, "witness:\n{}", w.to_text());
            }
            let status = if cert.complete {
                Status::Ok
            } else {
                Status::SoftFailure
            };
            Ok(Outcome::new(status, payload, text).count("nodes", cert.nodes))
        }
        BalanceCmd::CheckBalanceable { guest, r } => {
            let guest = ctx.guest(guest)?;
            let rep = balanceable_check(&guest, *r)?;
            let mut text = String::new();
            for (i, o) in rep.outcomes.iter().enumerate() {
                let _ = writeln!(
                    text,
                    "[{i}] M={:?}: {}",
                    o.template.matrix(),
                    o.embedding
                        .as_ref()
                        .map_or("no balanced copy".to_string(), |e| format!("{:?}", e.map))
                );
            }
            let _ = writeln!(text, "{guest} balanceable for r={r}: {}", rep.balanceable);
            let status = if rep.balanceable {
                Status::Ok
            } else {
                Status::Absent
            };
            Ok(Outcome::new(status, serde_json::to_value(&rep)?, text))
        }
    }
}

fn finish_construction(
    ctx: &mut Ctx,
    spec: ConstructionSpec,
    g: &ColoredGraph,
    guest: Option<Guest>,
    args: &CertifyArgs,
    extra: Value,
) -> Result<Outcome> {
    let cert = match &guest {
        Some(gu) => certificate(spec, g, gu, args.force, ctx.budget(args.budget))?,
        None => Certificate {
            spec,
            guest: "none".into(),
            histogram: g.histogram(),
            avoidance: Avoidance::Skipped {
                reason: "no guest given".into(),
            },
        },
    };
    let status = match cert.avoidance {
        Avoidance::Absent { .. } => Status::Ok,
        Avoidance::Present { .. } => Status::Absent,
        Avoidance::Skipped { .. } => Status::SoftFailure,
    };
    let graph = g.to_text();
    let mut text = match &args.out {
        Some(p) => {
            write_out(p, &graph)?;
            format!("wrote {} vertices to {}\n", g.n(), p.display())
        }
        None => graph.clone(),
    };
    let cert_json = serde_json::to_value(&cert)?;
    let mut block = json!({ "certificate": cert_json });
    if let (Some(b), Some(e)) = (block.as_object_mut(), extra.as_object()) {
        b.extend(e.clone());
    }
    let _ = writeln!(text, "{}", serde_json::to_string_pretty(&block)?);
    let mut payload = block;
    payload["graph"] = if args.out.is_some() {
        Value::Null
    } else {
        Value::String(graph)
    };
    let mut o = Outcome::new(status, payload, text);
    if let Avoidance::Absent { nodes } = cert.avoidance {
        o = o.count("nodes", nodes);
    }
    Ok(o)
}

fn run_construct(cmd: &ConstructCmd, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        ConstructCmd::PathBlocker { n, k, cert } => {
            let g = construct_path_blocker(*n, *k)?;
            let guest = match &cert.guest {
                Some(s) => ctx.guest(s)?,
                None => Guest::path(3 * k),
            };
            let spec = ConstructionSpec::PathBlocker3Color { n: *n, k: *k };
            finish_construction(ctx, spec, &g, Some(guest), cert, json!({}))
        }
        ConstructCmd::CliquePartition { n, l, k, cert } => {
            let g = construct_clique_partition(*n, *l)?;
            let parity = parity_obstruction_check(&g, *l, *k)?;
            let guest = match &cert.guest {
                Some(s) => ctx.guest(s)?,
                None => Guest::path(g.r() * k),
            };
            let spec = ConstructionSpec::CliquePartition { n: *n, l: *l };
            finish_construction(
                ctx,
                spec,
                &g,
                Some(guest),
                cert,
                json!({ "parity_obstruction": parity, "k": k }),
            )
        }
        ConstructCmd::Separator { n, r, cert } => {
            let g = construct_separator(*n, *r)?;
            let guest = cert.guest.as_deref().map(|s| ctx.guest(s)).transpose()?;
            finish_construction(
                ctx,
                ConstructionSpec::Separator { n: *n, r: *r },
                &g,
                guest,
                cert,
                json!({}),
            )
        }
        ConstructCmd::PatternBlowup { template, n, cert } => {
            let t = ctx.template(template)?;
            let spec_guest = cert
                .guest
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("pattern-blowup needs --guest".into()))?;
            let guest = ctx.guest(spec_guest)?;
            let g = match construct_pattern_blowup_blocker(&t, &guest, *n) {
                Ok(g) => g,
                Err(Error::Precondition(msg)) => {
                    let payload = json!({ "blocks": false, "reason": msg });
                    return Ok(Outcome::new(Status::Absent, payload, format!("{msg}\n")));
                }
                Err(e) => return Err(e),
            };
            let spec = ConstructionSpec::PatternBlowup {
                n: *n,
                r: t.r(),
                t: n / t.k(),
                guest: guest.to_string(),
            };
            finish_construction(ctx, spec, &g, Some(guest), cert, json!({ "template": t }))
        }
    }
}

fn run_euler(cmd: &EulerCmd, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        EulerCmd::Embed {
            template,
            k,
            t,
            mode,
        } => {
            let tpl = ctx.template(template)?;
            let mode = Multiplicity::from(*mode);
            let size = match t {
                Some(t) => *t,
                None => vertex_budget_with(&tpl, *k, mode)?
                    .into_iter()
                    .max()
                    .unwrap_or(1),
            };
            let e = embed_balanced_long_path_with(&tpl, size, *k, mode)?;
            let text = format!(
                "balanced path with {} edges in blow-up t={size}: {:?}\nprofile {:?}\n",
                e.embedding.map.len() - 1,
                e.embedding.map,
                e.embedding.profile
            );
            let payload = json!({
                "t": size,
                "k": k,
                "mode": mode,
                "vertices": e.embedding.map,
                "profile": e.embedding.profile,
                "walk": e.walk.parts,
                "insertions": e.insertions,
                "part_usage": e.part_usage,
            });
            Ok(Outcome::new(Status::Ok, payload, text))
        }
        EulerCmd::Parity { template, k } => {
            let tpl = ctx.template(template)?;
            let rep = walk_parity_report(&tpl, *k);
            let mut text = String::new();
            for p in &rep.parts {
                let _ = writeln!(
                    text,
                    "part {}: {}",
                    p.part,
                    p.degree.map_or("unconstrained".to_string(), |d| format!(
                        "degree {d} ({})",
                        if d % 2 == 1 { "odd" } else { "even" }
                    ))
                );
            }
            let _ = writeln!(
                text,
                "forced odd parts: {}, feasible: {}",
                rep.forced_odd, rep.feasible
            );
            let status = if rep.feasible {
                Status::Ok
            } else {
                Status::Absent
            };
            Ok(Outcome::new(status, serde_json::to_value(&rep)?, text))
        }
    }
}

fn match_json(m: &Option<PatternMatch>) -> Value {
    match m {
        Some(m) => json!({ "template": m.template, "parts": m.parts, "vertices": m.embedding.map }),
        None => Value::Null,
    }
}

fn run_search(cmd: &SearchCmd, ctx: &mut Ctx) -> Result<Outcome> {
    let SearchCmd::Pattern {
        host,
        t,
        exact,
        seed,
        trials,
        budget,
    } = cmd;
    let g = ctx.host(host)?;
    let r = g.r();
    if *exact {
        let cat = enumerate_patterns(r)?;
        let found = find_pattern_member_exact_with(&g, &cat, *t, ctx.budget(*budget).limit)?;
        let status = if found.is_some() {
            Status::Ok
        } else {
            Status::Absent
        };
        let text = match &found {
            Some(m) => format!("member: M={:?} parts {:?}\n", m.template.matrix(), m.parts),
            None => format!("no pattern member with parts of size {t}\n"),
        };
        let transcript = vec![format!("exhaustive search over {} templates", cat.len())];
        let payload = json!({ "method": "exact", "found": found.is_some(), "member": match_json(&found), "transcript": transcript });
        return Ok(Outcome::new(status, payload, text));
    }
    let mut cfg = PipelineConfig::for_t(*t);
    cfg.seed = seed.or(ctx.config.seed).unwrap_or(0);
    if let Some(tr) = trials.or(ctx.config.trials) {
        cfg.trials = tr;
    }
    if let Some(b) = budget.or(ctx.config.budget) {
        cfg.grid_budget = b;
    }
    let (found, transcript) = find_pattern_member_traced(&g, r, &cfg)?;
    let status = if found.is_some() {
        Status::Ok
    } else {
        Status::SoftFailure
    };
    let mut text = transcript.join("\n") + "\n";
    if let Some(m) = &found {
        let _ = writeln!(
            text,
            "member: M={:?} parts {:?}",
            m.template.matrix(),
            m.parts
        );
    }
    let payload = json!({
        "method": "pipeline",
        "config": cfg,
        "found": found.is_some(),
        "member": match_json(&found),
        "transcript": &transcript,
    });
    let mut o = Outcome::new(status, payload, text).count("attempts", transcript.len() as u64);
    o.seed = Some(cfg.seed);
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_error_is_code_3() {
        let (code, rep) = dispatch(["colorpat", "patterns", "enumerate"]);
        assert_eq!(code, 3);
        assert!(rep.error.is_some());
        let (code, _) = dispatch(["colorpat", "bogus"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn enumerate_reports_nine() {
        let (code, rep) = dispatch(["colorpat", "patterns", "enumerate", "--r", "3"]);
        assert_eq!(code, 0);
        assert_eq!(rep.payload["count"], 9);
        assert_eq!(rep.schema_version, SCHEMA_VERSION);
    }

    #[test]
    fn number_payload_is_reproducible() {
        let args = [
            "colorpat", "balance", "number", "--n", "4", "--guest", "path:3", "--r", "3",
        ];
        let (a, ra) = dispatch(args);
        let (b, rb) = dispatch(args);
        assert_eq!((a, b), (0, 0));
        assert_eq!(ra.payload, rb.payload);
        assert_eq!(ra.payload["value"], 2);
    }
}
