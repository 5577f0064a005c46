//! Experiment plans: the JSON file format and its validation into runnable jobs.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use dbrk_core::analytic::{ExactComplex, FunctionDescription, UnitBallFunction};
use dbrk_core::real::ExactReal;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Largest kernel order accepted by any task.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    /// Default function for every task that needs one.
    #[serde(default)]
    pub function: Option<FunctionDescription>,
    pub tasks: Vec<TaskEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskEntry {
    pub kind: TaskKind,
    #[serde(default)]
    pub name: Option<String>,
    /// CSV path; the JSON summary goes next to it with a `.json` extension.
    pub output: PathBuf,
    #[serde(default)]
    pub function: Option<FunctionDescription>,
    #[serde(default = "empty_object")]
    pub params: Value,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    Anr,
    Identities,
    Condition,
    Represent,
    Norm,
    Converge,
    Probe,
}

impl TaskKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::Anr => "anr",
            TaskKind::Identities => "identities",
            TaskKind::Condition => "condition",
            TaskKind::Represent => "represent",
            TaskKind::Norm => "norm",
            TaskKind::Converge => "converge",
            TaskKind::Probe => "probe",
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn zero() -> ExactReal {
    ExactReal::zero()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnrParams {
    #[serde(default = "AnrParams::default_n_max")]
    pub n_max: usize,
}

impl AnrParams {
    fn default_n_max() -> usize {
        10
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentitiesParams {
    #[serde(default = "one")]
    pub n: usize,
    #[serde(default = "zero")]
    pub x0: ExactReal,
    #[serde(default)]
    pub exact: bool,
    #[serde(default = "IdentitiesParams::default_tol")]
    pub tol: f64,
}

impl IdentitiesParams {
    fn default_tol() -> f64 {
        1e-10
    }
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionParams {
    #[serde(default = "zero")]
    pub x0: ExactReal,
    #[serde(default = "ConditionParams::default_n_max")]
    pub n_max: usize,
}

impl ConditionParams {
    fn default_n_max() -> usize {
        3
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentParams {
    #[serde(default = "RepresentParams::default_source")]
    pub source: ExactComplex,
    #[serde(default)]
    pub m: usize,
    #[serde(default = "RepresentParams::default_n_max")]
    pub n_max: usize,
    #[serde(default = "RepresentParams::default_omegas")]
    pub omegas: Vec<ExactComplex>,
    #[serde(default)]
    pub x0s: Vec<ExactReal>,
    #[serde(default = "RepresentParams::default_tol_interior")]
    pub tol_interior: f64,
    #[serde(default = "RepresentParams::default_tol_boundary")]
    pub tol_boundary: f64,
}

impl RepresentParams {
    fn default_source() -> ExactComplex {
        ExactComplex::new(ExactReal::from_ratio(1, 4), ExactReal::from_ratio(3, 4))
    }

    fn default_n_max() -> usize {
        3
    }

    /// The 3x3 grid `{-1, 0, 1} + i{1/2, 1, 2}`.
    pub fn default_omegas() -> Vec<ExactComplex> {
        let mut grid = Vec::new();
        for re in [-1, 0, 1] {
            for (p, q) in [(1, 2), (1, 1), (2, 1)] {
                grid.push(ExactComplex::new(ExactReal::from(re as i64), ExactReal::from_ratio(p, q)));
            }
        }
        grid
    }

    fn default_tol_interior() -> f64 {
        1e-8
    }

    fn default_tol_boundary() -> f64 {
        1e-6
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormParams {
    #[serde(default = "zero")]
    pub x0: ExactReal,
    #[serde(default = "NormParams::default_n_max")]
    pub n_max: usize,
    #[serde(default = "NormParams::default_tol")]
    pub tol: f64,
}

impl NormParams {
    fn default_n_max() -> usize {
        2
    }

    fn default_tol() -> f64 {
        1e-8
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeParams {
    #[serde(default = "zero")]
    pub x0: ExactReal,
    #[serde(default = "one")]
    pub n: usize,
    #[serde(default = "dbrk_core::experiments::default_schedule")]
    pub schedule: Vec<f64>,
    #[serde(default)]
    pub exact: bool,
    #[serde(default = "ConvergeParams::default_tol")]
    pub tol: f64,
    /// Number of trailing rows that must decrease strictly.
    #[serde(default = "ConvergeParams::default_tail")]
    pub tail: usize,
}

impl ConvergeParams {
    fn default_tol() -> f64 {
        1e-8
    }

    fn default_tail() -> usize {
        6
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeParams {
    #[serde(default = "zero")]
    pub x0: ExactReal,
    #[serde(default = "ProbeParams::default_n")]
    pub n: usize,
    #[serde(default)]
    pub exact: bool,
}

impl ProbeParams {
    fn default_n() -> usize {
        3
    }
}

#[derive(Clone, Debug)]
pub enum Params {
    Anr(AnrParams),
    Identities(IdentitiesParams),
    Condition(ConditionParams),
    Represent(RepresentParams),
    Norm(NormParams),
    Converge(ConvergeParams),
    Probe(ProbeParams),
}

/// A validated task, ready to run.
#[derive(Clone, Debug)]
pub struct Job {
    pub name: String,
    pub kind: TaskKind,
    pub output: PathBuf,
    pub function: UnitBallFunction,
    pub params: Params,
}

impl Job {
    pub fn summary_path(&self) -> PathBuf {
        self.output.with_extension("json")
    }
}

/// All problems found in a plan, one line each.
#[derive(Debug)]
pub struct PlanError(pub Vec<String>);

impl fmt::Display for PlanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{line}")?;
        }
        Ok(())
    }
}

impl std::error::Error for PlanError {}

/// Zeros `1 + 2i` and `-2 + i`, used when neither the task nor the plan gives a function.
pub fn default_function() -> UnitBallFunction {
    UnitBallFunction::blaschke(&[(1.0, 2.0), (-2.0, 1.0)]).expect("valid default function")
}

pub fn load_plan(path: &Path) -> Result<Vec<Job>, PlanError> {
    let text = std::fs::read_to_string(path).map_err(|e| PlanError(vec![format!("{}: {e}", path.display())]))?;
    let plan: PlanFile =
        serde_json::from_str(&text).map_err(|e| PlanError(vec![format!("{}: {e}", path.display())]))?;
    let base = path.parent().unwrap_or(Path::new(""));
    validate(plan, base)
}

/// Checks every task and resolves relative output paths against `base`.
pub fn validate(plan: PlanFile, base: &Path) -> Result<Vec<Job>, PlanError> {
    let mut errors = Vec::new();
    if plan.tasks.is_empty() {
        errors.push("plan has no tasks".to_string());
    }
    let default = match plan.function {
        Some(desc) => match UnitBallFunction::from_description(desc) {
            Ok(b) => Some(b),
            Err(e) => {
                errors.push(format!("function: {e}"));
                None
            }
        },
        None => Some(default_function()),
    };
    let mut jobs = Vec::new();
    let mut names = BTreeSet::new();
    let mut outputs = BTreeSet::new();
    for (i, entry) in plan.tasks.into_iter().enumerate() {
        let at = format!("tasks[{i}]");
        let name = entry.name.clone().unwrap_or_else(|| format!("{}-{i}", entry.kind));
        if !names.insert(name.clone()) {
            errors.push(format!("{at}: duplicate task name {name:?}"));
        }
        let output = if entry.output.is_absolute() {
            entry.output.clone()
        } else {
            base.join(&entry.output)
        };
        if output.extension().is_some_and(|e| e == "json") {
            errors.push(format!("{at}.output: the CSV path may not end in .json"));
        }
        if !outputs.insert(output.clone()) || !outputs.insert(output.with_extension("json")) {
            errors.push(format!("{at}.output: {} is used by another task", output.display()));
        }
        let function = match entry.function {
            Some(desc) => match UnitBallFunction::from_description(desc) {
                Ok(b) => Some(b),
                Err(e) => {
                    errors.push(format!("{at}.function: {e}"));
                    None
                }
            },
            None => default.clone(),
        };
        match (build_params(entry.kind, entry.params), function) {
            (Ok(params), Some(function)) => {
                let job = Job {
                    name,
                    kind: entry.kind,
                    output,
                    function,
                    params,
                };
                errors.extend(check_job(&job).into_iter().map(|e| format!("{at}.params: {e}")));
                jobs.push(job);
            }
            (Err(e), _) => errors.push(format!("{at}.params: {e}")),
            (Ok(_), None) => {}
        }
    }
    if errors.is_empty() {
        Ok(jobs)
    } else {
        Err(PlanError(errors))
    }
}

fn parse<T: DeserializeOwned>(v: Value) -> Result<T, String> {
    serde_json::from_value(v).map_err(|e| e.to_string())
}

pub fn build_params(kind: TaskKind, v: Value) -> Result<Params, String> {
    Ok(match kind {
        TaskKind::Anr => Params::Anr(parse(v)?),
        TaskKind::Identities => Params::Identities(parse(v)?),
        TaskKind::Condition => Params::Condition(parse(v)?),
        TaskKind::Represent => Params::Represent(parse(v)?),
        TaskKind::Norm => Params::Norm(parse(v)?),
        TaskKind::Converge => Params::Converge(parse(v)?),
        TaskKind::Probe => Params::Probe(parse(v)?),
    })
}

fn check_order(errors: &mut Vec<String>, what: &str, n: usize) {
    if n > MAX_ORDER {
        errors.push(format!("{what} = {n} exceeds {MAX_ORDER}"));
    }
}

fn check_tol(errors: &mut Vec<String>, what: &str, tol: f64) {
    if !(tol > 0.0 && tol.is_finite()) {
        errors.push(format!("{what} must be positive and finite, got {tol}"));
    }
}

fn check_exact(errors: &mut Vec<String>, exact: bool, b: &UnitBallFunction) {
    if exact && !b.is_blaschke_only() {
        errors.push("exact arithmetic needs a finite Blaschke product (phases allowed)".into());
    }
}

/// Parameter-range problems of one job.
pub fn check_job(job: &Job) -> Vec<String> {
    let mut errors = Vec::new();
    let b = &job.function;
    match &job.params {
        Params::Anr(p) => check_order(&mut errors, "n_max", p.n_max),
        Params::Identities(p) => {
            check_order(&mut errors, "n", p.n);
            check_tol(&mut errors, "tol", p.tol);
            check_exact(&mut errors, p.exact, b);
        }
        Params::Condition(p) => check_order(&mut errors, "n_max", p.n_max),
        Params::Represent(p) => {
            check_order(&mut errors, "n_max", p.n_max);
            check_order(&mut errors, "m", p.m);
            check_tol(&mut errors, "tol_interior", p.tol_interior);
            check_tol(&mut errors, "tol_boundary", p.tol_boundary);
            if p.source.im.value() <= 0.0 {
                errors.push("source must lie in the upper half-plane".into());
            }
            if p.omegas.iter().any(|w| w.im.value() <= 0.0) {
                errors.push("every omega must lie in the upper half-plane".into());
            }
            if p.omegas.is_empty() && p.x0s.is_empty() {
                errors.push("no evaluation points".into());
            }
        }
        Params::Norm(p) => {
            check_order(&mut errors, "n_max", p.n_max);
            check_tol(&mut errors, "tol", p.tol);
        }
        Params::Converge(p) => {
            check_order(&mut errors, "n", p.n);
            check_tol(&mut errors, "tol", p.tol);
            check_exact(&mut errors, p.exact, b);
            if p.schedule.is_empty() {
                errors.push("schedule is empty".into());
            }
            if p.schedule.iter().any(|t| !(*t > 0.0 && t.is_finite())) || p.schedule.windows(2).any(|w| w[1] >= w[0]) {
                errors.push("schedule must be positive and strictly decreasing".into());
            }
            if p.tail < 2 {
                errors.push("tail must be at least 2".into());
            }
        }
        Params::Probe(p) => {
            check_order(&mut errors, "n", p.n);
            check_exact(&mut errors, p.exact, b);
        }
    }
    errors
}
