//! `dbrk`: runs experiment plans and single tasks, writing CSV tables and JSON summaries.

mod output;
mod plan;
mod tasks;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::output::{float, write_atomic, Summary};
use crate::plan::{Job, PlanError, PlanFile, TaskEntry, TaskKind};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "dbrk", version, about = "Derivative reproducing kernel experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a JSON plan.
    Run {
        plan: PathBuf,
        /// Tasks run concurrently; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
        /// Report runtime_ms as 0 so that repeated runs are byte-identical.
        #[arg(long)]
        deterministic: bool,
    },
    /// Table of A_{n,r} against its closed form.
    Anr(TaskArgs),
    /// Coefficient identities and lambda relations at x0.
    Identities(TaskArgs),
    /// Boundary condition report at x0.
    Condition(TaskArgs),
    /// Integral representation of a kernel's derivatives.
    Represent(TaskArgs),
    /// Boundary norm formula against quadrature.
    Norm(TaskArgs),
    /// Difference norm along x0 + it.
    Converge(TaskArgs),
    /// Odd-s coefficient sums, reported only.
    Probe(TaskArgs),
}

#[derive(Args, Default)]
struct TaskArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long, value_name = "RE,IM", allow_hyphen_values = true)]
    omega: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    /// Comma-separated radii, strictly decreasing.
    #[arg(long, value_delimiter = ',')]
    schedule: Option<Vec<f64>>,
    #[arg(long)]
    exact: bool,
    /// CSV path; the summary is written next to it as .json. Without it the CSV goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON function description; defaults to zeros 1+2i and -2+i.
    #[arg(long)]
    function: Option<PathBuf>,
    /// Kernel point w of the represented function k_{w,m}.
    #[arg(long, value_name = "RE,IM", allow_hyphen_values = true)]
    source: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    deterministic: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            plan,
            jobs,
            deterministic,
        } => run_plan(&plan, jobs, deterministic),
        Command::Anr(a) => run_single(TaskKind::Anr, a),
        Command::Identities(a) => run_single(TaskKind::Identities, a),
        Command::Condition(a) => run_single(TaskKind::Condition, a),
        Command::Represent(a) => run_single(TaskKind::Represent, a),
        Command::Norm(a) => run_single(TaskKind::Norm, a),
        Command::Converge(a) => run_single(TaskKind::Converge, a),
        Command::Probe(a) => run_single(TaskKind::Probe, a),
    }
}

fn usage_error(err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(EXIT_USAGE)
}

struct Outcome {
    summary: Summary,
    csv: Vec<u8>,
}

fn execute(job: &Job, deterministic: bool) -> Outcome {
    let start = Instant::now();
    let result = tasks::execute(job);
    let runtime_ms = if deterministic {
        0
    } else {
        start.elapsed().as_millis() as u64
    };
    let (table, pass, max_residual, error) = match result {
        Ok(r) => (r.table, r.pass, r.max_residual, None),
        Err(e) => (output::Table::new(tasks::columns(job.kind)), false, None, Some(e.to_string())),
    };
    let csv = table.to_csv().expect("in-memory CSV");
    Outcome {
        summary: Summary {
            task: job.name.clone(),
            kind: job.kind.as_str(),
            pass,
            max_residual,
            runtime_ms,
            error,
        },
        csv,
    }
}

fn write_outcome(job: &Job, o: &Outcome) -> anyhow::Result<()> {
    write_atomic(&job.output, &o.csv)?;
    write_atomic(&job.summary_path(), &o.summary.to_json()?)?;
    Ok(())
}

fn status_line(o: &Outcome) -> String {
    let s = &o.summary;
    let verdict = if s.pass { "PASS" } else { "FAIL" };
    let residual = s.max_residual.map(float).unwrap_or_else(|| "-".into());
    match &s.error {
        Some(e) => format!("{verdict} {} ({}) error: {e}", s.task, s.kind),
        None => format!("{verdict} {} ({}) max_residual={residual}", s.task, s.kind),
    }
}

fn run_plan(path: &std::path::Path, jobs: Option<usize>, deterministic: bool) -> ExitCode {
    let plan = match plan::load_plan(path) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let threads = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return usage_error("--jobs must be at least 1");
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let results: Vec<(Outcome, Option<String>)> = pool.install(|| {
        plan.par_iter()
            .map(|job| {
                let o = execute(job, deterministic);
                let io = write_outcome(job, &o).err().map(|e| format!("{}: {e}", job.output.display()));
                (o, io)
            })
            .collect()
    });
    let mut failed = false;
    let mut stdout = std::io::stdout().lock();
    for (o, io) in &results {
        let _ = writeln!(stdout, "{}", status_line(o));
        if let Some(e) = io {
            eprintln!("error: {e}");
            failed = true;
        }
        failed |= !o.summary.pass;
    }
    if failed {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}

fn split_pair(text: &str, flag: &str) -> Result<Value, String> {
    match text.split_once(',') {
        Some((re, im)) => Ok(json!([re.trim(), im.trim()])),
        None => Err(format!("--{flag} expects RE,IM, got {text:?}")),
    }
}

/// Maps the flags of a subcommand onto the params object of a plan task.
fn params_from_args(kind: TaskKind, a: &TaskArgs) -> Result<Value, String> {
    let mut p = Map::new();
    let mut unused = Vec::new();
    let n_key = match kind {
        TaskKind::Anr | TaskKind::Condition | TaskKind::Represent | TaskKind::Norm => "n_max",
        _ => "n",
    };
    if let Some(n) = a.n {
        p.insert(n_key.into(), json!(n));
    }
    if let Some(x0) = &a.x0 {
        match kind {
            TaskKind::Anr => unused.push("--x0"),
            TaskKind::Represent => {
                p.insert("x0s".into(), json!([x0]));
                if a.omega.is_none() {
                    p.insert("omegas".into(), json!([]));
                }
            }
            _ => {
                p.insert("x0".into(), json!(x0));
            }
        }
    }
    if let Some(om) = &a.omega {
        if kind == TaskKind::Represent {
            p.insert("omegas".into(), json!([split_pair(om, "omega")?]));
        } else {
            unused.push("--omega");
        }
    }
    if let Some(tol) = a.tol {
        match kind {
            TaskKind::Represent => {
                p.insert("tol_interior".into(), json!(tol));
                p.insert("tol_boundary".into(), json!(tol));
            }
            TaskKind::Identities | TaskKind::Norm | TaskKind::Converge => {
                p.insert("tol".into(), json!(tol));
            }
            _ => unused.push("--tol"),
        }
    }
    if let Some(s) = &a.schedule {
        if kind == TaskKind::Converge {
            p.insert("schedule".into(), json!(s));
        } else {
            unused.push("--schedule");
        }
    }
    if a.exact {
        match kind {
            TaskKind::Identities | TaskKind::Converge | TaskKind::Probe => {
                p.insert("exact".into(), json!(true));
            }
            _ => unused.push("--exact"),
        }
    }
    if let Some(src) = &a.source {
        if kind == TaskKind::Represent {
            p.insert("source".into(), split_pair(src, "source")?);
        } else {
            unused.push("--source");
        }
    }
    if let Some(m) = a.m {
        if kind == TaskKind::Represent {
            p.insert("m".into(), json!(m));
        } else {
            unused.push("--m");
        }
    }
    if a.function.is_some() && kind == TaskKind::Anr {
        unused.push("--function");
    }
    if !unused.is_empty() {
        return Err(format!("{} not used by {kind}", unused.join(", ")));
    }
    Ok(Value::Object(p))
}

fn run_single(kind: TaskKind, a: TaskArgs) -> ExitCode {
    let params = match params_from_args(kind, &a) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let function = match &a.function {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage_error(format!("{}: {e}", path.display())),
            };
            match serde_json::from_str(&text) {
                Ok(f) => Some(f),
                Err(e) => return usage_error(format!("{}: {e}", path.display())),
            }
        }
        None => None,
    };
    let to_stdout = a.out.is_none();
    let entry = TaskEntry {
        kind,
        name: Some(kind.as_str().into()),
        output: a.out.clone().unwrap_or_else(|| PathBuf::from(format!("{kind}.csv"))),
        function,
        params,
    };
    let jobs = match plan::validate(
        PlanFile {
            function: None,
            tasks: vec![entry],
        },
        std::path::Path::new(""),
    ) {
        Ok(j) => j,
        Err(PlanError(lines)) => return usage_error(lines.join("\n")),
    };
    let job = &jobs[0];
    let o = execute(job, a.deterministic);
    if to_stdout {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(&o.csv);
        eprint!("{}", String::from_utf8_lossy(&o.summary.to_json().expect("summary JSON")));
    } else {
        if let Err(e) = write_outcome(job, &o) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
        println!("{}", status_line(&o));
    }
    if let Some(e) = &o.summary.error {
        eprintln!("error: {e}");
    }
    if o.summary.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
