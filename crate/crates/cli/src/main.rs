use std::io::Write;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use realforms::classification::{classify, verify_witness, ClassificationResult, Verdict};
use realforms::intersection::enumerate_negative_classes;
use realforms::kernel::VarFlag;
use realforms::suite::{describe, run_check, SuiteParams, CHECKS};
use realforms::surfaces::{y_configuration, Param};

const DEFAULT_GRID: [&str; 10] = [
    "1/3", "-1/3", "1/2", "-1/2", "2", "-2", "3", "-3", "2/5", "5/2",
];

#[derive(Parser)]
#[command(
    name = "realforms",
    version,
    about = "Exact verification of a family of surfaces and their real forms"
)]
#[command(
    after_help = "Gröbner computations stop after REALFORMS_STEP_BUDGET reduction steps when that variable is set."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Number of worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification checks (`all` or a list of check ids).
    Verify {
        checks: Vec<String>,
        /// Rational `p`, `-p`, `p/q`, or `symbolic`.
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true, value_parser = alpha_param)]
        alpha: Param,
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true, value_parser = beta_param)]
        beta: Param,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..))]
        d_max: i64,
    },
    /// Decide whether the real forms for two parameter values are isomorphic.
    Classify {
        #[arg(allow_hyphen_values = true, value_parser = rational_param)]
        alpha: Param,
        #[arg(allow_hyphen_values = true, value_parser = rational_param)]
        beta: Param,
    },
    /// Classify every pair from a grid of rationals.
    Grid {
        /// Comma-separated rationals; defaults to a 10-element grid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_param)]
        values: Vec<Param>,
    },
    /// List the negative curves of the blown-up plane.
    Enumerate {
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true, value_parser = alpha_param)]
        alpha: Param,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..))]
        d_max: i64,
    },
}

fn param(text: &str, name: &str) -> Result<Param, String> {
    let p = Param::parse(text, name).map_err(|e| e.to_string())?;
    p.check_admissible().map_err(|e| e.to_string())?;
    Ok(p)
}

fn alpha_param(text: &str) -> Result<Param, String> {
    param(text, "alpha")
}

fn beta_param(text: &str) -> Result<Param, String> {
    param(text, "beta")
}

fn rational_param(text: &str) -> Result<Param, String> {
    if text.trim() == "symbolic" {
        return Err("a rational value is required here".into());
    }
    param(text, "alpha")
}

#[derive(Serialize)]
struct Entry {
    check_id: String,
    paper_ref: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failures: Vec<String>,
    elapsed_ms: u64,
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
    errors: usize,
}

#[derive(Serialize)]
struct SuiteReport {
    tool: &'static str,
    version: &'static str,
    params: Value,
    checks: Vec<Entry>,
    summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<String>>,
    exit_code: u8,
}

impl SuiteReport {
    fn new(params: Value, mut checks: Vec<Entry>, matrix: Option<Vec<String>>) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let count = |s: &str| checks.iter().filter(|e| e.status == s).count();
        let summary = Summary {
            total: checks.len(),
            passed: count("pass"),
            failed: count("fail"),
            errors: count("error"),
        };
        let exit_code = u8::from(summary.passed != summary.total);
        Self {
            tool: "realforms",
            version: env!("CARGO_PKG_VERSION"),
            params,
            checks,
            summary,
            matrix,
            exit_code,
        }
    }

    fn print(&self, format: Format) {
        match format {
            Format::Json => emit_json(self),
            Format::Text => {
                let mut out = String::new();
                for e in &self.checks {
                    out += &format!(
                        "{:<5} {:<16} {:>7} ms  {}\n",
                        e.status, e.check_id, e.elapsed_ms, e.paper_ref
                    );
                    for f in &e.failures {
                        out += &format!("      failed: {f}\n");
                    }
                }
                for row in self.matrix.iter().flatten() {
                    out += &format!("{row}\n");
                }
                let s = &self.summary;
                out += &format!(
                    "{} checks: {} passed, {} failed, {} errors\n",
                    s.total, s.passed, s.failed, s.errors
                );
                emit(&out);
            }
        }
    }
}

fn emit(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn emit_json<T: Serialize>(v: &T) {
    emit(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

/// Runs `f(0..n)` on up to `jobs` threads; results keep index order.
fn run_parallel<T: Send>(n: usize, jobs: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..n).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.min(n).max(1) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                if k >= n {
                    break;
                }
                let r = f(k);
                slots.lock().expect("no poisoned workers")[k] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("workers joined")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

fn cmd_verify(ids: &[String], params: SuiteParams, jobs: usize, format: Format) -> u8 {
    let selected: Vec<&str> = if ids.is_empty() || ids.iter().any(|s| s == "all") {
        CHECKS.iter().map(|c| c.0).collect()
    } else {
        ids.iter().map(String::as_str).collect()
    };
    if let Some(bad) = selected.iter().find(|id| describe(id).is_none()) {
        let known: Vec<&str> = CHECKS.iter().map(|c| c.0).collect();
        eprintln!(
            "error: unknown check id {bad:?}; known ids: all, {}",
            known.join(", ")
        );
        return 2;
    }
    let entries = run_parallel(selected.len(), jobs, |k| {
        let id = selected[k];
        let t = Instant::now();
        let r = run_check(id, &params);
        let elapsed_ms = t.elapsed().as_millis() as u64;
        let (status, witness, failures) = match r {
            Ok(out) => {
                let failures: Vec<String> = out
                    .report
                    .failures()
                    .map(|c| format!("{}: {}", c.id, c.statement))
                    .collect();
                (
                    if failures.is_empty() { "pass" } else { "fail" },
                    out.witness,
                    failures,
                )
            }
            Err(e) => ("error", Some(json!(e.to_string())), Vec::new()),
        };
        Entry {
            check_id: id.into(),
            paper_ref: describe(id).unwrap_or_default().into(),
            status,
            witness,
            failures,
            elapsed_ms,
        }
    });
    let p = json!({"alpha": params.alpha.to_string(), "beta": params.beta.to_string(), "d_max": params.d_max});
    let rep = SuiteReport::new(p, entries, None);
    rep.print(format);
    rep.exit_code
}

fn cmd_classify(alpha: &Param, beta: &Param, format: Format) -> u8 {
    match classify(alpha, beta) {
        Ok(r) => {
            match format {
                Format::Json => emit_json(&r),
                Format::Text => emit(&format!(
                    "{} vs {}: {:?}{}\n",
                    r.alpha,
                    r.beta,
                    r.verdict,
                    r.witness
                        .as_ref()
                        .map(|w| format!(" {w}"))
                        .unwrap_or_default()
                )),
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn grid_entry(a: &Param, b: &Param) -> (bool, Option<ClassificationResult>, Option<String>) {
    match classify(a, b) {
        Ok(r) => {
            let (qa, qb) = (
                a.as_rational().expect("rational"),
                b.as_rational().expect("rational"),
            );
            let expect = qa == qb || (qa * qb).is_one();
            let witness_ok = match &r.witness {
                Some(w) => verify_witness(w, a, b).unwrap_or(false),
                None => true,
            };
            (
                (r.verdict == Verdict::Isomorphic) == expect && witness_ok,
                Some(r),
                None,
            )
        }
        Err(e) => (false, None, Some(e.to_string())),
    }
}

fn cmd_grid(values: Vec<Param>, jobs: usize, format: Format) -> u8 {
    let values = if values.is_empty() {
        DEFAULT_GRID
            .iter()
            .map(|s| rational_param(s).expect("default grid parses"))
            .collect()
    } else {
        values
    };
    let n = values.len();
    let results = run_parallel(n * n, jobs, |k| {
        let t = Instant::now();
        let out = grid_entry(&values[k / n], &values[k % n]);
        (out, t.elapsed().as_millis() as u64)
    });
    let mut matrix = Vec::new();
    let mut entries = Vec::new();
    for (k, ((ok, r, err), ms)) in results.into_iter().enumerate() {
        let (i, j) = (k / n, k % n);
        if j == 0 {
            matrix.push(String::new());
        }
        let cell = match &r {
            Some(r) if r.verdict == Verdict::Isomorphic => 'I',
            Some(_) => '.',
            None => '?',
        };
        matrix.last_mut().expect("row started").push(cell);
        let status = if err.is_some() {
            "error"
        } else if ok {
            "pass"
        } else {
            "fail"
        };
        let witness = match (r, err) {
            (Some(r), _) => serde_json::to_value(r).ok(),
            (None, e) => e.map(Value::String),
        };
        entries.push(Entry {
            check_id: format!("grid-{i:03}-{j:03}"),
            paper_ref: format!("classification of ({}, {})", values[i], values[j]),
            status,
            witness,
            failures: if ok {
                Vec::new()
            } else {
                vec!["verdict disagrees with α=β or αβ=1".into()]
            },
            elapsed_ms: ms,
        });
    }
    let p = json!({"grid": values.iter().map(ToString::to_string).collect::<Vec<_>>()});
    let rep = SuiteReport::new(p, entries, Some(matrix));
    rep.print(format);
    rep.exit_code
}

fn cmd_enumerate(alpha: &Param, d_max: i64, format: Format) -> u8 {
    let run = || -> realforms::Result<_> {
        let c = y_configuration(alpha, alpha, VarFlag::Real)?;
        enumerate_negative_classes(&c, d_max)
    };
    match run() {
        Ok(e) => {
            match format {
                Format::Json => emit_json(&e),
                Format::Text => {
                    let mut out = String::new();
                    for r in &e.records {
                        out += &format!("{:<28} d={} m={:?}\n", r.name, r.class.d, r.class.m);
                    }
                    out += &format!("{} records\n", e.records.len());
                    emit(&out);
                }
            }
            u8::from(!e.report.passed())
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let jobs = cli.jobs as usize;
    let code = match cli.cmd {
        Cmd::Verify {
            checks,
            alpha,
            beta,
            d_max,
        } => cmd_verify(
            &checks,
            SuiteParams { alpha, beta, d_max },
            jobs,
            cli.format,
        ),
        Cmd::Classify { alpha, beta } => cmd_classify(&alpha, &beta, cli.format),
        Cmd::Grid { values } => cmd_grid(values, jobs, cli.format),
        Cmd::Enumerate { alpha, d_max } => cmd_enumerate(&alpha, d_max, cli.format),
    };
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_results_keep_order() {
        let out = run_parallel(17, 4, |k| k * k);
        assert_eq!(out, (0..17).map(|k| k * k).collect::<Vec<_>>());
        assert!(run_parallel(0, 3, |k| k).is_empty());
    }

    #[test]
    fn parameter_syntax() {
        assert!(alpha_param("symbolic").unwrap().is_symbolic());
        assert_eq!(rational_param("-3/4").unwrap(), Param::ratio(-3, 4));
        assert!(rational_param("symbolic").is_err());
        assert!(rational_param("1.5").is_err());
        assert!(rational_param("2/2").is_err());
        assert!(rational_param("0").is_err());
    }
}
