//! Running one validated job into a table and a verdict.

use dbrk_core::analytic::{ExactComplex, UnitBallFunction};
use dbrk_core::combinatorics::{anr, anr_closed};
use dbrk_core::experiments::{
    ahern_clark_report, boundary_jet, coefficient_identities, lambda_suite, norm_convergence_trace, odd_s_probe,
    IndexedValue, LambdaSuite,
};
use dbrk_core::kernels::{norm_sq_boundary, norm_sq_boundary_exact, Kernel, KernelSpec, Precision};
use dbrk_core::quadrature::{representation_boundary, representation_interior, QuadratureConfig};
use dbrk_core::real::ExactReal;
use dbrk_core::scalar::{GaussianRational, Scalar};
use num_complex::Complex64;

use crate::output::{float, rational, Cells, Table};
use crate::plan::*;

pub struct TaskResult {
    pub table: Table,
    pub pass: bool,
    pub max_residual: Option<f64>,
}

/// Column names of the CSV each task kind writes.
pub fn columns(kind: TaskKind) -> &'static [&'static str] {
    match kind {
        TaskKind::Anr => &["n", "r", "anr", "closed_form", "match"],
        TaskKind::Identities => &["family", "index", "residual_re", "residual_im", "magnitude", "pass"],
        TaskKind::Condition => &[
            "n",
            "blaschke_term",
            "blaschke_exact",
            "singular_term",
            "log_term",
            "total",
            "finite",
            "tail_bound",
        ],
        TaskKind::Represent => &[
            "target",
            "point_re",
            "point_im",
            "n",
            "value_re",
            "value_im",
            "closed_re",
            "closed_im",
            "l2_re",
            "l2_im",
            "rho_re",
            "rho_im",
            "rel_error",
            "error_estimate",
            "pass",
        ],
        TaskKind::Norm => &[
            "n",
            "condition",
            "norm_sq",
            "norm_sq_times_pi_exact",
            "quadrature",
            "l2_part",
            "rho_part",
            "rel_error",
            "pass",
        ],
        TaskKind::Converge => &[
            "t",
            "norm_sq_omega",
            "difference_sq",
            "difference_sq_times_pi_exact",
            "arithmetic",
        ],
        TaskKind::Probe => &["s", "sum_re", "sum_im", "magnitude"],
    }
}

pub fn execute(job: &Job) -> dbrk_core::Result<TaskResult> {
    let mut table = Table::new(columns(job.kind));
    let b = &job.function;
    let (pass, max_residual) = match &job.params {
        Params::Anr(p) => run_anr(p, &mut table)?,
        Params::Identities(p) => run_identities(b, p, &mut table)?,
        Params::Condition(p) => run_condition(b, p, &mut table),
        Params::Represent(p) => run_represent(b, p, &mut table)?,
        Params::Norm(p) => run_norm(b, p, &mut table)?,
        Params::Converge(p) => run_converge(b, p, &mut table)?,
        Params::Probe(p) => run_probe(b, p, &mut table)?,
    };
    Ok(TaskResult {
        table,
        pass,
        max_residual,
    })
}

fn bool_cell(v: bool) -> String {
    v.to_string()
}

fn run_anr(p: &AnrParams, table: &mut Table) -> dbrk_core::Result<(bool, Option<f64>)> {
    let mut worst: f64 = 0.0;
    for n in 0..=p.n_max {
        for r in 0..=2 * n + 1 {
            let a = anr(n, r)?;
            let c = anr_closed(n, r)?;
            let diff = (&a - &c).to_string().parse::<f64>().unwrap_or(f64::INFINITY).abs();
            worst = worst.max(diff);
            table.push(vec![n.to_string(), r.to_string(), a.to_string(), c.to_string(), bool_cell(a == c)]);
        }
    }
    Ok((worst == 0.0, Some(worst)))
}

fn exact_coeffs(b: &UnitBallFunction, x0: &ExactReal, order: usize) -> dbrk_core::Result<Vec<GaussianRational>> {
    Ok(b.without_phases().exact_jet(&ExactComplex::real(x0.clone()), order)?.taylor_coeffs())
}

fn identity_rows<T: Scalar + Cells>(
    table: &mut Table,
    coeffs: &[IndexedValue<T>],
    suite: &LambdaSuite<T>,
    tol: f64,
    exact: bool,
) -> (bool, f64) {
    let mut pass = true;
    let mut worst: f64 = 0.0;
    for c in coeffs {
        let m = c.value.magnitude();
        let ok = if exact { c.value.is_exactly_zero() } else { m <= tol };
        pass &= ok;
        worst = worst.max(m);
        let [re, im] = c.value.cells();
        table.push(vec!["coefficient".into(), c.index.to_string(), re, im, float(m), bool_cell(ok)]);
    }
    for (s, (rel, res)) in suite.relations.iter().zip(&suite.residuals).enumerate() {
        let ok = if exact { rel.exact_zero } else { rel.pass };
        pass &= ok;
        worst = worst.max(rel.residual);
        let [re, im] = res.cells();
        table.push(vec!["lambda".into(), s.to_string(), re, im, float(rel.residual), bool_cell(ok)]);
    }
    (pass, worst)
}

fn run_identities(b: &UnitBallFunction, p: &IdentitiesParams, table: &mut Table) -> dbrk_core::Result<(bool, Option<f64>)> {
    let order = 2 * p.n + 1;
    let (pass, worst) = if p.exact {
        let a = exact_coeffs(b, &p.x0, order)?;
        let coeffs = coefficient_identities(&a, p.n)?;
        let suite = lambda_suite(&a, p.n, 0.0)?;
        identity_rows(table, &coeffs, &suite, 0.0, true)
    } else {
        let a = boundary_jet(b, p.x0.value(), order)?.taylor_coeffs();
        let coeffs = coefficient_identities(&a, p.n)?;
        let suite = lambda_suite(&a, p.n, p.tol)?;
        identity_rows(table, &coeffs, &suite, p.tol, false)
    };
    Ok((pass, Some(worst)))
}

fn run_condition(b: &UnitBallFunction, p: &ConditionParams, table: &mut Table) -> (bool, Option<f64>) {
    for n in 0..=p.n_max {
        let r = ahern_clark_report(b, &p.x0, n);
        table.push(vec![
            n.to_string(),
            float(r.blaschke_term),
            rational(&r.blaschke_exact),
            float(r.singular_term),
            float(r.log_term),
            float(r.total),
            bool_cell(r.finite),
            r.tail_bound.map(float).unwrap_or_default(),
        ]);
    }
    (true, None)
}

fn run_represent(b: &UnitBallFunction, p: &RepresentParams, table: &mut Table) -> dbrk_core::Result<(bool, Option<f64>)> {
    let cfg = QuadratureConfig::default();
    let source = KernelSpec::interior(p.source.clone(), p.m)?;
    let f = Kernel::new(b, source.clone())?;
    let mut pass = true;
    let mut worst: f64 = 0.0;
    let mut row = |target: &str, point: Complex64, n: usize, r: dbrk_core::quadrature::Representation, tol: f64| {
        let closed = f.z_derivative(point, n)?.value;
        let rel = (r.value - closed).norm() / closed.norm();
        let ok = rel < tol;
        pass &= ok;
        worst = worst.max(rel);
        let mut cells = vec![target.to_string(), float(point.re), float(point.im), n.to_string()];
        for z in [r.value, closed, r.l2_part, r.rho_part] {
            cells.extend(z.cells());
        }
        cells.extend([float(rel), float(r.error_estimate), bool_cell(ok)]);
        table.push(cells);
        Ok::<_, dbrk_core::Error>(())
    };
    for n in 0..=p.n_max {
        for om in &p.omegas {
            let r = representation_interior(b, &source, om, n, &cfg)?;
            row("interior", om.value(), n, r, p.tol_interior)?;
        }
        for x0 in &p.x0s {
            let r = representation_boundary(b, &source, x0, n, &cfg)?;
            row("boundary", Complex64::new(x0.value(), 0.0), n, r, p.tol_boundary)?;
        }
    }
    Ok((pass, Some(worst)))
}

fn run_norm(b: &UnitBallFunction, p: &NormParams, table: &mut Table) -> dbrk_core::Result<(bool, Option<f64>)> {
    let cfg = QuadratureConfig::default();
    let mut pass = true;
    let mut worst: f64 = 0.0;
    for n in 0..=p.n_max {
        if !ahern_clark_report(b, &p.x0, n).finite {
            let mut cells = vec![n.to_string(), bool_cell(false)];
            cells.resize(columns(TaskKind::Norm).len(), String::new());
            table.push(cells);
            continue;
        }
        let formula = norm_sq_boundary(&boundary_jet(b, p.x0.value(), 2 * n + 1)?, n)?;
        let exact = if b.is_blaschke_only() {
            let jet = b.without_phases().exact_jet(&ExactComplex::real(p.x0.clone()), 2 * n + 1)?;
            rational(&norm_sq_boundary_exact(&jet, n)?)
        } else {
            String::new()
        };
        let spec = KernelSpec::boundary(p.x0.clone(), n);
        let r = representation_boundary(b, &spec, &p.x0, n, &cfg)?;
        let rel = (formula - r.value.re).abs() / r.value.re.abs();
        let ok = rel < p.tol;
        pass &= ok;
        worst = worst.max(rel);
        table.push(vec![
            n.to_string(),
            bool_cell(true),
            float(formula),
            exact,
            float(r.value.re),
            float(r.l2_part.re),
            float(r.rho_part.re),
            float(rel),
            bool_cell(ok),
        ]);
    }
    Ok((pass, Some(worst)))
}

fn run_converge(b: &UnitBallFunction, p: &ConvergeParams, table: &mut Table) -> dbrk_core::Result<(bool, Option<f64>)> {
    let precision = if p.exact { Precision::Exact } else { Precision::Auto };
    let tr = norm_convergence_trace(b, &p.x0, p.n, &p.schedule, precision)?;
    let arithmetic = tr.arithmetic.to_string();
    for row in &tr.rows {
        table.push(vec![
            float(row.t),
            float(row.norm_sq_omega),
            float(row.difference_sq),
            row.exact_difference.as_ref().map(rational).unwrap_or_default(),
            arithmetic.clone(),
        ]);
    }
    let last = tr.final_difference().unwrap_or(f64::INFINITY);
    Ok((last < p.tol && tr.decreasing_tail(p.tail), Some(last)))
}

fn run_probe(b: &UnitBallFunction, p: &ProbeParams, table: &mut Table) -> dbrk_core::Result<(bool, Option<f64>)> {
    fn rows<T: Scalar + Cells>(table: &mut Table, values: Vec<IndexedValue<T>>) {
        for v in values {
            let [re, im] = v.value.cells();
            table.push(vec![v.index.to_string(), re, im, float(v.value.magnitude())]);
        }
    }
    if p.exact {
        rows(table, odd_s_probe(&exact_coeffs(b, &p.x0, 2 * p.n)?, p.n)?);
    } else {
        rows(table, odd_s_probe(&boundary_jet(b, p.x0.value(), 2 * p.n)?.taylor_coeffs(), p.n)?);
    }
    Ok((true, None))
}
