//! `pegtool` command line. [`run`] does all the work so tests can drive it
//! without spawning a process.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use peg_core::engine::{query_target, reach_set, Distribution, Mode, SearchBudget, Verdict};
use peg_core::graph::{diameter_and_longest_path, leaves, FamilySpec, Graph};
use peg_core::solvers::{
    caterpillar_distribution, fibonacci_distribution, leaf_removal_scan, lobster_distribution,
    optimal_pegging_number, peg_probability, pegging_number, verify_pegs, PegVerdict,
};
use peg_core::weights::binary::binary_adversarial_distribution;
use peg_core::weights::{distribution_weight, weight_unreachability_certificate};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{Cache, CacheRecord};
use crate::parse::{parse_argument, GraphSpec};
use crate::suites::{self, Context};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

pub const DEFAULT_SEED: u64 = 2024;

#[derive(Debug, Parser)]
#[command(name = "pegtool", version, about = "Exact experiments with the graph pegging game")]
pub struct Cli {
    /// Stored-state limit per search.
    #[arg(long, global = true, default_value_t = SearchBudget::DEFAULT_STATES)]
    pub budget_states: usize,
    /// Expansion limit for the witness search.
    #[arg(long, global = true, default_value_t = SearchBudget::DEFAULT_EXPANSIONS)]
    pub budget_expansions: usize,
    /// JSONL results cache.
    #[arg(long, global = true, env = "PEGTOOL_CACHE")]
    pub cache: Option<PathBuf>,
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph and print its basic data.
    Gen { spec: String },
    /// Which vertices a set of pegs can reach.
    Reach {
        spec: String,
        /// Comma-separated vertex ids, or `all`.
        #[arg(long)]
        pegs: String,
        #[arg(long, default_value = "proper")]
        mode: Mode,
        /// Decide a single vertex instead of all of them.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Exact p(G) or P(G).
    Solve {
        spec: String,
        #[arg(long, value_enum)]
        quantity: QuantityArg,
    },
    /// Build a known distribution for a family.
    Construct {
        spec: String,
        #[arg(long, value_enum)]
        kind: ConstructKind,
    },
    /// Fraction of k-peg distributions that peg the graph.
    Prob {
        spec: String,
        #[arg(short)]
        k: usize,
        /// Samples when exact enumeration is too large.
        #[arg(short, default_value_t = 10_000)]
        s: u64,
    },
    /// Run a verification suite (or `all`).
    Verify { suite: String },
    /// p(T) before and after deleting each leaf.
    ScanLeaf { spec: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    #[value(name = "p")]
    Optimal,
    #[value(name = "P")]
    Pegging,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Fib,
    Caterpillar,
    Lobster,
    Adversarial,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] peg_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(peg_core::Error::BudgetExhausted(_)) => EXIT_UNKNOWN,
            _ => EXIT_USAGE,
        }
    }
}

impl From<crate::parse::ParseError> for CliError {
    fn from(e: crate::parse::ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

struct Session<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

#[derive(Serialize)]
struct Header<'a> {
    tool_version: &'a str,
    command: &'a str,
    seed: u64,
    budget: SearchBudget,
}

impl Session<'_> {
    fn budget(&self) -> SearchBudget {
        SearchBudget::new(self.cli.budget_states, self.cli.budget_expansions)
    }

    fn header(&mut self, command: &str) -> Result<(), CliError> {
        let h = Header {
            tool_version: peg_core::VERSION,
            command,
            seed: self.cli.seed,
            budget: self.budget(),
        };
        if self.cli.json {
            writeln!(self.out, "{}", serde_json::to_string(&h).expect("header serializes"))?;
        } else {
            writeln!(
                self.out,
                "# pegtool {} {} seed={} budget_states={} budget_expansions={}",
                h.tool_version, command, h.seed, h.budget.max_states, h.budget.max_expansions
            )?;
        }
        Ok(())
    }

    fn emit(&mut self, value: &Value, text: impl FnOnce(&Value) -> String) -> Result<(), CliError> {
        if self.cli.json {
            writeln!(self.out, "{}", serde_json::to_string(value).expect("value serializes"))?;
        } else {
            writeln!(self.out, "{}", text(value))?;
        }
        Ok(())
    }

    /// Looks `task` up in the cache, otherwise computes and stores it. A
    /// stale record (older tool version) is recomputed.
    fn cached(
        &mut self,
        spec: &GraphSpec,
        task: &str,
        params: Value,
        compute: impl FnOnce() -> Result<Value, CliError>,
    ) -> Result<Value, CliError> {
        let Some(path) = self.cli.cache.clone() else {
            return compute();
        };
        let cache = Cache::new(path);
        let key = spec.key();
        match cache.get(&key, task, &params) {
            Ok(lookup) => {
                for w in &lookup.warnings {
                    writeln!(self.err, "warning: {w}")?;
                }
                match lookup.hit {
                    Some(hit) if !hit.stale => return Ok(hit.record.result),
                    Some(_) => writeln!(self.err, "warning: cached {task} result is from an older version; recomputing")?,
                    None => {}
                }
            }
            Err(e) => writeln!(self.err, "warning: cache unreadable: {e}")?,
        }
        let result = compute()?;
        if let Err(e) = cache.put(&CacheRecord::new(key, task, params, result.clone())) {
            writeln!(self.err, "warning: cache not updated: {e}")?;
        }
        Ok(result)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let mut s = Session {
        cli: &cli,
        out,
        err,
    };
    match dispatch(&mut s) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(s.err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(s: &mut Session) -> Result<i32, CliError> {
    let budget = s.budget();
    match &s.cli.command {
        Command::Gen { spec } => {
            let spec = parse_argument(spec)?;
            let g = spec.build()?;
            s.header("gen")?;
            let v = graph_summary(&spec, &g);
            s.emit(&v, |v| {
                format!(
                    "{}: {} vertices, {} edges, tree={}, diameter={}, leaves={}\nedges: {}",
                    spec, v["vertices"], v["edges"].as_array().map_or(0, Vec::len), v["tree"], v["diameter"],
                    v["leaves"], v["edges"]
                )
            })?;
            Ok(EXIT_OK)
        }
        Command::Reach {
            spec,
            pegs,
            mode,
            target,
        } => {
            let spec = parse_argument(spec)?;
            let g = spec.build()?;
            let d = parse_pegs(pegs, &g)?;
            s.header("reach")?;
            let (records, states) = match target {
                Some(t) => {
                    g.check_vertex(*t)?;
                    let verdict = if *mode == Mode::Proper {
                        let o = query_target(&g, &d, *t, budget)?;
                        (o.verdict, o.states)
                    } else {
                        let o = reach_set(&g, &d, *mode, budget)?;
                        (o.verdicts[*t].clone(), o.states)
                    };
                    (vec![verdict.0.record(*t)], verdict.1)
                }
                None => {
                    let mut o = reach_set(&g, &d, *mode, budget)?;
                    // The exhaustive search leaves nothing open on success,
                    // but a truncated one can still be settled by weight.
                    for (t, v) in o.verdicts.iter_mut().enumerate() {
                        if v.is_unknown() {
                            if let Some(c) = weight_unreachability_certificate(&g, &d, t)? {
                                *v = Verdict::Unreachable {
                                    evidence: peg_core::engine::Evidence::WeightCertificate { weight: c.weight },
                                };
                            }
                        }
                    }
                    (o.records(), o.states)
                }
            };
            let unknown = records.iter().any(|r| r.status == "unknown");
            let reachable: Vec<usize> = records.iter().filter(|r| r.status == "reachable").map(|r| r.vertex).collect();
            let v = json!({ "graph": spec.to_string(), "pegs": d, "mode": mode, "states": states,
                            "reachable": reachable, "verdicts": records });
            s.emit(&v, |v| {
                let mut lines = vec![format!("reachable: {}", v["reachable"])];
                for r in v["verdicts"].as_array().into_iter().flatten() {
                    let mut line = format!("  {}: {}", r["vertex"], r["status"].as_str().unwrap_or(""));
                    if let Some(w) = r.get("witness") {
                        line.push_str(&format!(" via {}", format_moves(w)));
                    }
                    if let Some(e) = r.get("evidence").filter(|e| !e.is_null()) {
                        line.push_str(&format!(" ({e})"));
                    }
                    lines.push(line);
                }
                lines.join("\n")
            })?;
            Ok(if unknown { EXIT_UNKNOWN } else { EXIT_OK })
        }
        Command::Solve { spec, quantity } => {
            let spec = parse_argument(spec)?;
            let g = spec.build()?;
            s.header("solve")?;
            let task = match quantity {
                QuantityArg::Optimal => "solve:p",
                QuantityArg::Pegging => "solve:P",
            };
            let timing = s.cli.timing;
            let q = *quantity;
            let v = s.cached(&spec, task, json!({ "budget": budget }), || {
                let mut report = match q {
                    QuantityArg::Optimal => optimal_pegging_number(&g, budget)?,
                    QuantityArg::Pegging => pegging_number(&g, budget)?,
                };
                if !timing {
                    report.millis = 0;
                }
                Ok(serde_json::to_value(report).expect("report serializes"))
            })?;
            let name = if q == QuantityArg::Optimal { "p" } else { "P" };
            s.emit(&v, |v| {
                let mut text = format!("{name}({spec}) = {}", v["value"]);
                if !v["witness"].is_null() {
                    text.push_str(&format!("\nwitness: {}", v["witness"]));
                }
                if !v["counterexample"].is_null() {
                    text.push_str(&format!("\ncounterexample: {}", v["counterexample"]));
                }
                text.push_str(&format!("\nlower bound: {} ({})", v["lower_bound"], plain(&v["lower_bound_kind"])));
                text
            })?;
            Ok(if v["value"].is_null() { EXIT_UNKNOWN } else { EXIT_OK })
        }
        Command::Construct { spec, kind } => {
            let spec = parse_argument(spec)?;
            s.header("construct")?;
            let v = construct(&spec, *kind, budget)?;
            s.emit(&v, |v| {
                let mut lines = vec![format!("{} distribution on {}", plain(&v["kind"]), spec)];
                for (k, val) in v.as_object().into_iter().flatten() {
                    if k != "kind" {
                        lines.push(format!("  {k}: {}", plain(val)));
                    }
                }
                lines.join("\n")
            })?;
            Ok(match v.get("verdict").and_then(Value::as_str) {
                Some("unknown") => EXIT_UNKNOWN,
                Some("does_not_peg") => EXIT_CHECK_FAILED,
                _ => EXIT_OK,
            })
        }
        Command::Prob { spec, k, s: samples } => {
            let spec = parse_argument(spec)?;
            let g = spec.build()?;
            s.header("prob")?;
            let (k, samples, seed) = (*k, *samples, s.cli.seed);
            let params = json!({ "k": k, "samples": samples, "seed": seed, "budget": budget });
            let v = s.cached(&spec, "prob", params, || {
                let r = peg_probability(&g, k, samples, seed, budget)?;
                Ok(serde_json::to_value(r).expect("report serializes"))
            })?;
            s.emit(&v, |v| {
                format!(
                    "k={}: {} of {} distributions peg ({}), estimate {} ± {}, undecided {}",
                    v["k"], v["pegging"], v["trials"],
                    if v["exact"].as_bool() == Some(true) { "exact" } else { "sampled" },
                    v["estimate"], v["stderr"], v["unknown"]
                )
            })?;
            Ok(if v["unknown"].as_u64().unwrap_or(0) > 0 { EXIT_UNKNOWN } else { EXIT_OK })
        }
        Command::Verify { suite } => {
            let ctx = Context {
                budget,
                seed: s.cli.seed,
            };
            let mut report = suites::run_suite(suite, &ctx).map_err(|e| CliError::Usage(e.to_string()))?;
            s.header("verify")?;
            if !s.cli.timing {
                for r in &mut report.results {
                    r.millis = None;
                }
            }
            for r in &report.results {
                let v = serde_json::to_value(r).expect("result serializes");
                s.emit(&v, |_| {
                    let mut line = format!(
                        "[{}] criterion {} {} ({:?}): {}",
                        r.suite,
                        r.criterion,
                        r.name,
                        r.basis,
                        if r.passed { "PASS" } else { "FAIL" }
                    );
                    if let Some(ms) = r.millis {
                        line.push_str(&format!(" {ms} ms"));
                    }
                    line
                })?;
            }
            let failed = report.results.iter().filter(|r| !r.passed).count();
            let summary = json!({ "suite": suite, "checks": report.results.len(), "failed": failed });
            s.emit(&summary, |v| format!("{} checks, {} failed", v["checks"], v["failed"]))?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::ScanLeaf { spec } => {
            let spec = parse_argument(spec)?;
            let g = spec.build()?;
            s.header("scan-leaf")?;
            let v = s.cached(&spec, "scan-leaf", json!({ "budget": budget }), || {
                let rows = leaf_removal_scan(&g, budget)?;
                Ok(serde_json::to_value(rows).expect("rows serialize"))
            })?;
            let rows = v.as_array().cloned().unwrap_or_default();
            let mut undecided = false;
            for row in &rows {
                undecided |= row["p_before"].is_null() || row["p_after"].is_null();
                s.emit(row, |r| {
                    format!(
                        "leaf {}: p {} -> {}{}",
                        r["leaf"], r["p_before"], r["p_after"],
                        if r["increased"].as_bool() == Some(true) { " (increased)" } else { "" }
                    )
                })?;
            }
            Ok(if undecided { EXIT_UNKNOWN } else { EXIT_OK })
        }
    }
}

fn graph_summary(spec: &GraphSpec, g: &Graph) -> Value {
    let (d, path) = diameter_and_longest_path(g);
    json!({
        "graph": spec.to_string(),
        "key": spec.key(),
        "vertices": g.vertex_count(),
        "tree": g.is_tree(),
        "connected": g.is_connected(),
        "diameter": d,
        "longest_path": path,
        "leaves": leaves(g),
        "edges": g.edges().collect::<Vec<_>>(),
    })
}

fn plain(v: &Value) -> String {
    v.as_str().map_or_else(|| v.to_string(), str::to_string)
}

fn format_moves(w: &Value) -> String {
    let moves: Vec<String> = w
        .as_array()
        .into_iter()
        .flatten()
        .map(|m| format!("{}>{}>{}", m["from"], m["over"], m["to"]))
        .collect();
    if moves.is_empty() {
        "no moves".into()
    } else {
        moves.join(" ")
    }
}

fn parse_pegs(text: &str, g: &Graph) -> Result<Distribution, CliError> {
    if text.trim() == "all" {
        return Ok(Distribution::from_vertices(g.vertices()));
    }
    let mut d = Distribution::new();
    for (i, part) in text.split(',').enumerate() {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: usize = part
            .parse()
            .map_err(|_| CliError::Usage(format!("--pegs item {}: `{part}` is not a vertex id", i + 1)))?;
        g.check_vertex(v)?;
        if !d.insert(v) {
            return Err(CliError::Usage(format!("--pegs lists vertex {v} twice")));
        }
    }
    if d.is_empty() {
        return Err(CliError::Usage("--pegs is empty".into()));
    }
    Ok(d)
}

fn construct(spec: &GraphSpec, kind: ConstructKind, budget: SearchBudget) -> Result<Value, CliError> {
    let family = match spec {
        GraphSpec::Family(f) => Some(f),
        GraphSpec::Edges { .. } => None,
    };
    match kind {
        ConstructKind::Fib => {
            let Some(&FamilySpec::Ary { branching, height }) = family else {
                return Err(CliError::Usage("fib needs an ary:<b>,<h> graph".into()));
            };
            let d = fibonacci_distribution(branching, height)?;
            let g = spec.build()?;
            let report = verify_pegs(&g, &d, budget)?;
            Ok(json!({ "kind": "fib", "size": d.len(), "pegs": d,
                       "verdict": verdict_name(report.verdict), "states": report.states }))
        }
        ConstructKind::Caterpillar | ConstructKind::Lobster => {
            let g = spec.build()?;
            let d = if kind == ConstructKind::Caterpillar {
                caterpillar_distribution(&g)?
            } else {
                lobster_distribution(&g)?
            };
            let (diameter, _) = diameter_and_longest_path(&g);
            let name = if kind == ConstructKind::Caterpillar { "caterpillar" } else { "lobster" };
            // Both constructions verify themselves before returning.
            Ok(json!({ "kind": name, "diameter": diameter, "size": d.len(), "pegs": d, "verdict": "pegs" }))
        }
        ConstructKind::Adversarial => {
            let Some(&FamilySpec::Ary { branching: 2, height }) = family else {
                return Err(CliError::Usage("adversarial needs an ary:2,<h> graph".into()));
            };
            let a = binary_adversarial_distribution(height)?;
            let g = spec.build()?;
            let check = distribution_weight(&g, a.target, &a.refined)?;
            if check != a.refined_weight {
                return Err(CliError::Usage("internal weight mismatch".into()));
            }
            Ok(json!({
                "kind": "adversarial",
                "height": height,
                "target": a.target,
                "base_pegs": a.base.len(),
                "base_weight": a.base_weight,
                "base_weight_hint": a.base_weight.to_f64(),
                "refined_pegs": a.refined.len(),
                "refined_weight": a.refined_weight,
                "refined_weight_hint": a.refined_weight.to_f64(),
                "empty_vertices": a.refined_empty,
                "claimed_empty_vertices": a.claimed_empty,
                "pegging_lower_bound": a.pegging_lower_bound(),
                "census": a.census,
            }))
        }
    }
}

fn verdict_name(v: PegVerdict) -> &'static str {
    match v {
        PegVerdict::Pegs => "pegs",
        PegVerdict::DoesNotPeg => "does_not_peg",
        PegVerdict::Unknown => "unknown",
    }
}
