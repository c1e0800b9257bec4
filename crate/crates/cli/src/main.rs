//! `superchar`: command-line front-end over the exact invariant library.
//!
//! Every invocation prints one report. JSON reports carry
//! `"schema":"superchar/1"`, rationals are strings, keys are sorted. Exit
//! codes: 0 ok, 1 domain error, 2 usage error.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superchar::closed_forms::{branch_candidates, invariant_table, BranchPair};
use superchar::module::{kac_dimension, tensor_vector_decompose, ModuleCache};
use superchar::operator::BranchingModule;
use superchar::tower::tower_scalars;
use superchar::verify::{verify_branching, KacReport};
use superchar::{build_kac_module, characteristic_roots, Error, GModule, Signature, Weight};

const SCHEMA: &str = "superchar/1";

#[derive(Parser, Debug)]
#[command(name = "superchar", version, about = "Exact characteristic-identity invariants of gl(m|n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Directory for cached Kac modules; unset means build every time.
    #[arg(long, env = "SUPERCHAR_CACHE", global = true)]
    cache_dir: Option<PathBuf>,
    /// Add wall-clock time to the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

/// `--m/--n` are optional; when given they must match the weights.
#[derive(Args, Debug, Clone, Copy)]
struct Sig {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic roots α_r and ᾱ_r of a gl(m|n) weight.
    Roots {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// gl(m|n) weights allowed by betweenness under a gl(m|n+1) weight.
    Branch {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        top: String,
    },
    /// Closed-form invariant table for a gl(m|n+1) ⊃ gl(m|n) pair.
    Table {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        top: String,
        #[arg(long, allow_hyphen_values = true)]
        sub: String,
    },
    /// Measure every invariant on a Kac module and compare with the formulas.
    VerifyKac {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        top: String,
    },
    /// Corner invariants τ_k, σ_k and Casimir identities on a Kac module.
    Tower {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        top: String,
        /// Highest power K.
        #[arg(long, default_value_t = superchar::tower::DEFAULT_ORDER)]
        order: usize,
    },
    /// Decompose V⊗V(Λ) and V*⊗V(Λ) for a gl(m|n) Kac module.
    TensorCheck {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roots { .. } => "roots",
            Command::Branch { .. } => "branch",
            Command::Table { .. } => "table",
            Command::VerifyKac { .. } => "verify-kac",
            Command::Tower { .. } => "tower",
            Command::TensorCheck { .. } => "tensor-check",
        }
    }
}

/// A command's result: a JSON payload and the same data as flat rows.
struct Output {
    payload: Value,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    /// Set when the command ran but its checks failed.
    failure: Option<Error>,
}

impl Output {
    fn ok(payload: Value, columns: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Output { payload, columns, rows, failure: None }
    }
}

fn parse_weight(text: &str, expected: Option<Signature>) -> Result<Weight, Error> {
    let w: Weight = text.parse()?;
    match expected {
        Some(sig) if sig != w.signature() => {
            Err(Error::SignatureMismatch { expected: sig.to_string(), got: w.signature().to_string() })
        }
        _ => Ok(w),
    }
}

/// The signature named by `--m/--n`, shifted by `extra_odd` for top weights.
fn expected(sig: Sig, extra_odd: usize) -> Result<Option<Signature>, Error> {
    match (sig.m, sig.n) {
        (None, None) => Ok(None),
        (Some(m), Some(n)) => Signature::new(m, n + extra_odd).map(Some),
        _ => Err(Error::Parse("--m and --n must be given together".into())),
    }
}

fn kac_module(cache: Option<&ModuleCache>, top: &Weight) -> Result<GModule, Error> {
    match cache {
        Some(c) => c.kac_module(top),
        None => build_kac_module(top),
    }
}

fn run(cmd: &Command, cache: Option<&ModuleCache>) -> Result<Output, Error> {
    match cmd {
        Command::Roots { sig, weight } => {
            let w = parse_weight(weight, expected(*sig, 0)?)?;
            let roots = characteristic_roots(&w);
            let rows = (0..roots.len())
                .map(|i| vec![(i + 1).to_string(), roots.vector_roots[i].to_string(), roots.adjoint_roots[i].to_string()])
                .collect();
            let payload = json!({
                "weight": w,
                "alpha": roots.vector_roots,
                "alphabar": roots.adjoint_roots,
                "distinct": roots.coinciding_pair().is_none(),
            });
            Ok(Output::ok(payload, vec!["r", "alpha", "alphabar"], rows))
        }
        Command::Branch { sig, top } => {
            let top = parse_weight(top, expected(*sig, 1)?)?;
            let cands = branch_candidates(&top)?;
            let rows = cands.iter().map(|c| vec![c.to_string()]).collect();
            let payload = json!({ "top": top, "count": cands.len(), "candidates": cands });
            Ok(Output::ok(payload, vec!["weight"], rows))
        }
        Command::Table { sig, top, sub } => {
            let top = parse_weight(top, expected(*sig, 1)?)?;
            let sub = parse_weight(sub, expected(*sig, 0)?)?;
            let table = invariant_table(&BranchPair::new(&top, &sub)?)?;
            let rows = table.rows().into_iter().map(Vec::from).collect();
            let columns = vec!["r", "c", "cbar", "gamma", "gammabar", "delta", "deltabar", "strP", "strPbar"];
            Ok(Output::ok(json!(table), columns, rows))
        }
        Command::VerifyKac { sig, top } => {
            let top = parse_weight(top, expected(*sig, 1)?)?;
            let bm = BranchingModule::new(kac_module(cache, &top)?)?;
            let report = verify_branching(&bm)?;
            Ok(verify_output(&report))
        }
        Command::Tower { sig, top, order } => {
            let top = parse_weight(top, expected(*sig, 1)?)?;
            let report = tower_scalars(&kac_module(cache, &top)?, *order)?;
            let mut rows = Vec::new();
            for c in &report.components {
                for k in 0..=report.order {
                    let cell = |v: &[superchar::Scalar]| v.get(k).map_or_else(String::new, ToString::to_string);
                    rows.push(vec![c.weight.to_string(), k.to_string(), cell(&c.tau), cell(&c.sigma), cell(&c.casimir_sub)]);
                }
            }
            let failures = report.failures();
            let failure = (!failures.is_empty()).then(|| Error::ConsistencyFailure(failures.join(", ")));
            let payload = json!({ "report": report, "passed": failure.is_none() });
            Ok(Output { payload, columns: vec!["component", "k", "tau", "sigma", "I"], rows, failure })
        }
        Command::TensorCheck { sig, weight } => {
            let w = parse_weight(weight, expected(*sig, 0)?)?;
            let k = kac_module(cache, &w)?;
            let size = w.signature().size();
            let mut rows = Vec::new();
            let mut sides = serde_json::Map::new();
            let mut problems = Vec::new();
            for (label, dual) in [("vector", false), ("dual", true)] {
                let d = tensor_vector_decompose(&k, dual)?;
                let total: usize = d.parts.iter().map(|c| c.dim()).sum();
                let mut ws = d.weights();
                ws.sort();
                ws.dedup();
                if total != size * k.dim() || ws.len() != d.parts.len() {
                    problems.push(format!("{label}: dims sum {total}, {} distinct of {}", ws.len(), d.parts.len()));
                }
                let parts: Vec<Value> = d.parts.iter().map(|c| json!({ "weight": c.weight, "dim": c.dim() })).collect();
                rows.extend(d.parts.iter().map(|c| vec![label.to_string(), c.weight.to_string(), c.dim().to_string()]));
                sides.insert(label.into(), json!({ "components": parts, "total_dim": total }));
            }
            let payload = json!({
                "weight": w,
                "dim": k.dim(),
                "kac_dimension": kac_dimension(&w),
                "vector": sides["vector"],
                "dual": sides["dual"],
                "passed": problems.is_empty(),
            });
            let failure = (!problems.is_empty()).then(|| Error::ConsistencyFailure(problems.join("; ")));
            Ok(Output { payload, columns: vec!["side", "weight", "dim"], rows, failure })
        }
    }
}

/// One row per comparison and per check: the pass/fail matrix.
fn verify_output(report: &KacReport) -> Output {
    let mut rows = Vec::new();
    for c in &report.components {
        for x in &c.comparisons {
            let measured = x.measured.as_ref().map_or_else(|_| "error".to_string(), ToString::to_string);
            let result = if x.undetermined {
                "undetermined"
            } else if x.agree {
                "pass"
            } else {
                "FAIL"
            };
            rows.push(vec![c.weight.to_string(), x.invariant.to_string(), x.r.to_string(), measured, x.formula.to_string(), result.into()]);
        }
        for (name, ok) in &c.checks {
            rows.push(vec![c.weight.to_string(), name.clone(), String::new(), String::new(), String::new(), pass(*ok)]);
        }
    }
    for (name, ok) in &report.checks {
        rows.push(vec![report.top.to_string(), name.clone(), String::new(), String::new(), String::new(), pass(*ok)]);
    }
    let failures = report.failures();
    let payload = json!({
        "report": report,
        "passed": failures.is_empty(),
        "failures": failures,
        "undetermined": report.undetermined_count(),
    });
    let failure = (!failures.is_empty()).then(|| Error::ConsistencyFailure(format!("{} failed checks", failures.len())));
    Output { payload, columns: vec!["component", "item", "r", "measured", "formula", "result"], rows, failure }
}

fn pass(ok: bool) -> String {
    if ok { "pass" } else { "FAIL" }.into()
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_rows(format: Format, columns: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&columns.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
        }
        Format::Table => {
            let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
            for row in rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(columns.to_vec()));
            for row in rows {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
        Format::Json => unreachable!("json is rendered from the payload"),
    }
    out
}

fn error_line(e: &Error) -> String {
    format!("ERROR {}: {e}\n", e.name())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cache = cli.cache_dir.as_ref().map(ModuleCache::new);
    let start = Instant::now();

    // Domain code asserts internal invariants; report a tripped one as an
    // error rather than a crash.
    panic::set_hook(Box::new(|_| {}));
    let result = panic::catch_unwind(AssertUnwindSafe(|| run(&cli.command, cache.as_ref())))
        .unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal panic".into());
            Err(Error::ConsistencyFailure(msg))
        });

    let (output, error) = match result {
        Ok(mut out) => {
            let failure = out.failure.take();
            (Some(out), failure)
        }
        Err(e) => (None, Some(e)),
    };

    let text = match cli.format {
        Format::Json => {
            let mut report = json!({
                "schema": SCHEMA,
                "command": cli.command.name(),
                "status": if error.is_none() { "ok" } else { "error" },
            });
            if let Some(out) = &output {
                report["payload"] = out.payload.clone();
            }
            if let Some(e) = &error {
                report["error"] = json!({ "name": e.name(), "detail": e.to_string() });
            }
            if cli.timing {
                report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
        }
        format => {
            let mut text = output.as_ref().map_or_else(String::new, |o| render_rows(format, &o.columns, &o.rows));
            if let Some(e) = &error {
                text.push_str(&error_line(e));
            }
            if cli.timing {
                text.push_str(&format!("# {} ms\n", start.elapsed().as_millis()));
            }
            text
        }
    };
    print!("{text}");
    if error.is_none() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
