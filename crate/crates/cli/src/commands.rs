//! One function per subcommand. Each returns the rendered artifact and an
//! exit status; the binary decides where the bytes go.

use serde_json::{json, Value};
use talenti_core::isoperimetry::HalfSpaceProblem;
use talenti_core::weights::{default_grid, validate_condition_ii, DEFAULT_GRID_POINTS};
use talenti_core::Error;

use crate::config::{ConfigError, RunConfig};
use crate::output;
use crate::suites::{self, ComparisonTolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Usage = 1,
    Failed = 2,
    Numerical = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// An artifact plus the status it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub body: String,
    /// one-line human summary
    pub summary: String,
}

#[derive(Debug)]
pub enum Failure {
    Config(ConfigError),
    Core(Error),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn status(&self) -> Status {
        match self {
            Failure::Config(_) => Status::Usage,
            Failure::Core(Error::Solver { .. } | Error::UnboundedSolution(_) | Error::Range { .. }) => {
                Status::Numerical
            }
            Failure::Core(_) => Status::Usage,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Config(e) => e.to_string(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

const ORIENTATION_NOTE: &str =
    "v vanishes on the boundary of R_E and increases with x1; |grad v| = F(Phi(x1)) / (w^2 lambda)";

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Failed
    }
}

/// Working interval for drift condition: from the weight's domain start (or 0) to `T_max`.
fn condition_problem(cfg: &RunConfig) -> Result<HalfSpaceProblem<f64>, Failure> {
    Ok(HalfSpaceProblem::new(cfg.weight()?, cfg.potential()?, cfg.measure()?)?)
}

/// Smallest admissible `x₁` for generated shapes.
fn lower_bound(cfg: &RunConfig) -> f64 {
    match cfg.weight {
        crate::config::WeightSpec::Power { cutoff, .. } => cutoff,
        _ => 0.0,
    }
}

pub fn check_weights(cfg: &RunConfig) -> CmdResult {
    let w = cfg.weight()?;
    let v = cfg.potential()?;
    // a weight check makes sense without a finite measure; fall back to [lo, 10]
    let hi = match cfg.measure() {
        Ok(m) => m.t_max(),
        Err(_) => 10.0,
    };
    let (wlo, whi) = w.domain();
    let mut lo = wlo.max(0.0);
    if w.check_domain(lo).is_err() {
        lo += 1e-9 * (1.0 + lo.abs());
    }
    let grid = default_grid(lo, hi.min(whi), DEFAULT_GRID_POINTS);
    let report = validate_condition_ii(&w, &v, &grid)?;
    let mut doc = output::envelope(&cfg.hash(), "check-weights");
    doc.insert("interval".into(), json!([lo, hi.min(whi)]));
    doc.insert("condition".into(), output::condition_json(&report));
    let ok = report.passed();
    Ok(Outcome {
        status: verdict(ok),
        body: output::pretty(&Value::Object(doc)),
        summary: format!("drift condition: {}", output::status_name(report.status)),
    })
}

pub fn isoperimetry(cfg: &RunConfig, trials: u64, seed: u64) -> CmdResult {
    let problem = condition_problem(cfg)?;
    if !problem.condition.passed() {
        return Ok(Outcome {
            status: Status::Failed,
            body: String::new(),
            summary: format!(
                "drift condition fails ({}); no trials run",
                output::status_name(problem.condition.status)
            ),
        });
    }
    let rows = suites::isoperimetry_suite(&problem, lower_bound(cfg), trials, seed)?;
    let failures = rows.iter().filter(|r| !(r.report.holds && r.report.calibration_holds)).count();
    Ok(Outcome {
        status: verdict(failures == 0),
        body: output::iso_csv(&rows),
        summary: format!("isoperimetry: {} trials, {failures} failures", rows.len()),
    })
}

pub fn hardy(cfg: &RunConfig, trials: u64, seed: u64) -> CmdResult {
    let m = cfg.measure()?;
    let rows = suites::hardy_suite(&m, trials, seed)?;
    let failures = rows.iter().filter(|r| !r.holds).count();
    Ok(Outcome {
        status: verdict(failures == 0),
        body: output::hardy_csv(&rows),
        summary: format!("hardy: {} trials, {failures} failures", rows.len()),
    })
}

pub fn solve(cfg: &RunConfig) -> CmdResult {
    let d = cfg.domain()?;
    let src = cfg.source()?.clone();
    let (_, u, stats) =
        suites::solve_on(&d, &cfg.weight()?, &cfg.potential()?, &|x, y| src.eval(x, y), cfg.tolerances.solver)?;
    let mut body = Vec::new();
    u.write_csv(&mut body).expect("in-memory write");
    Ok(Outcome {
        status: Status::Pass,
        body: String::from_utf8(body).expect("ascii csv"),
        summary: format!(
            "solve: {} nodes, {} iterations, relative residual {:.3e}",
            d.node_count(),
            stats.iterations,
            stats.relative_residual
        ),
    })
}

pub fn symmetrize(cfg: &RunConfig) -> CmdResult {
    let d = cfg.domain()?;
    let v = cfg.potential()?;
    let src = cfg.source()?.clone();
    let cells = talenti_core::elliptic::sample_mass_function(&d, &v, |x, y| src.eval(x, y))?;
    let vs = talenti_core::talenti::symmetrized_solution(&cells, d.weighted_area(&v), &cfg.weight()?, &cfg.measure()?)?;
    let mut body = Vec::new();
    vs.write_csv(&mut body).expect("in-memory write");
    Ok(Outcome {
        status: Status::Pass,
        body: String::from_utf8(body).expect("ascii csv"),
        summary: format!("symmetrize: t_E = {:.6}, {} nodes, v_max = {:.6e}", vs.t_e(), vs.nodes().len(), vs.v_max()),
    })
}

pub fn compare(cfg: &RunConfig) -> CmdResult {
    let d = cfg.domain()?;
    let w = cfg.weight()?;
    let v = cfg.potential()?;
    let m = cfg.measure()?;
    let problem = HalfSpaceProblem::new(w.clone(), v, m.clone())?;
    let src = cfg.source()?.clone();
    let tol = ComparisonTolerances {
        solver: cfg.tolerances.solver,
        pointwise: cfg.tolerances.comparison,
        qnorm: cfg.tolerances.qnorm,
    };
    let run = suites::comparison_run(&d, &w, &v, &m, &|x, y| src.eval(x, y), &cfg.q, tol)?;
    let mut doc = output::envelope(&cfg.hash(), "compare");
    doc.insert("condition".into(), output::condition_json(&problem.condition));
    doc.insert("source_strictly_positive".into(), json!(run.source_positive));
    doc.insert("orientation".into(), json!(ORIENTATION_NOTE));
    doc.insert(
        "solver".into(),
        json!({"iterations": run.stats.iterations, "relative_residual": run.stats.relative_residual}),
    );
    doc.insert("report".into(), output::comparison_json(&run.report, &run.diagnostics));
    let ok = run.report.pointwise_holds && run.report.qnorms_hold();
    Ok(Outcome {
        status: verdict(ok),
        body: output::pretty(&Value::Object(doc)),
        summary: format!(
            "compare: max(u* - v) = {:.3e}, q-norms {}",
            run.report.max_violation,
            if run.report.qnorms_hold() { "hold" } else { "fail" }
        ),
    })
}
