//! Seeded verification suites shared by the commands and the acceptance run.

use rand::Rng;
use rayon::prelude::*;
use talenti_core::elliptic::{
    assemble, sample_mass_function, solve, GridField, RectilinearDomain, SolveStats, SolverOptions,
};
use talenti_core::isoperimetry::{random_star_polygon, HalfSpaceProblem, IsoReport};
use talenti_core::measure1d::ReducedMeasure;
use talenti_core::rearrange::{hardy_littlewood, layer_cake_check, LayerCake, MassFunction};
use talenti_core::seeds::{trial_rng, trial_seed};
use talenti_core::talenti::{
    compare_pointwise, compare_qnorm, estimate_chain_check, symmetrized_solution, ComparisonReport, DiagnosticReport,
    SymmetrizedSolution,
};
use talenti_core::weights::{PotentialSplit, WeightProfile};
use talenti_core::Error;

use std::sync::Arc;

/// Random cell decomposition of at most `0.9 μ(ℝᵈ₊)` with values in `[0, 1)`.
/// A fifth of the values are drawn from a short list so that ties occur.
pub fn random_mass_function<R: Rng>(rng: &mut R, masses: &[f64]) -> MassFunction<f64> {
    let values =
        masses
            .iter()
            .map(|_| {
                if rng.random_bool(0.2) {
                    [0.0, 0.25, 0.5][rng.random_range(0..3)]
                } else {
                    rng.random_range(0.0..1.0)
                }
            })
            .collect();
    MassFunction::new(values, masses.to_vec()).expect("generated cells are valid")
}

pub fn random_masses<R: Rng>(rng: &mut R, total: f64) -> Vec<f64> {
    let n = rng.random_range(1..=48usize);
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    let target = rng.random_range(0.1..0.9) * total;
    raw.iter().map(|m| m * target / sum).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyRow {
    pub trial: u64,
    pub seed: u64,
    pub cells: usize,
    pub equal_case: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub const HARDY_TOL: f64 = 1e-10;

/// Hardy–Littlewood trials; every tenth trial uses `g = f`, where equality must hold.
pub fn hardy_suite(measure: &ReducedMeasure<f64>, trials: u64, seed: u64) -> Result<Vec<HardyRow>, Error> {
    (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(seed, k);
            let masses = random_masses(&mut rng, measure.total());
            let f = random_mass_function(&mut rng, &masses);
            let equal_case = k % 10 == 0;
            let g = if equal_case { f.clone() } else { random_mass_function(&mut rng, &masses) };
            let (lhs, rhs) = hardy_littlewood(&f, &g, measure)?;
            let holds = lhs <= rhs + HARDY_TOL && (!equal_case || (lhs - rhs).abs() <= HARDY_TOL);
            Ok(HardyRow { trial: k, seed: trial_seed(seed, k), cells: masses.len(), equal_case, lhs, rhs, holds })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerCakeRow {
    pub trial: u64,
    pub t: f64,
    pub members: LayerCake<f64>,
    pub spread: f64,
}

/// Layer-cake trials at random axial levels `t ∈ [0, 0.9 T_max)`.
pub fn layer_cake_suite(measure: &ReducedMeasure<f64>, trials: u64, seed: u64) -> Result<Vec<LayerCakeRow>, Error> {
    (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(seed, k);
            let masses = random_masses(&mut rng, measure.total());
            let f = random_mass_function(&mut rng, &masses);
            let t = rng.random_range(0.0..0.9 * measure.t_max());
            let members = layer_cake_check(&f, measure, t)?;
            Ok(LayerCakeRow { trial: k, t, members, spread: members.max_relative_spread() })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsoRow {
    pub seed: u64,
    pub report: IsoReport<f64>,
}

/// One random star-shaped polygon per trial, placed right of `lower`.
pub fn isoperimetry_suite(
    problem: &HalfSpaceProblem<f64>,
    lower: f64,
    trials: u64,
    seed: u64,
) -> Result<Vec<IsoRow>, Error> {
    (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(seed, k);
            let a = random_star_polygon(&mut rng, lower);
            Ok(IsoRow { seed: trial_seed(seed, k), report: problem.check(&a)? })
        })
        .collect()
}

/// Everything produced by one solve-and-compare run on a domain.
#[derive(Debug, Clone)]
pub struct ComparisonRun {
    pub domain: Arc<RectilinearDomain<f64>>,
    pub u: GridField<f64>,
    pub stats: SolveStats,
    pub source_cells: MassFunction<f64>,
    pub source_positive: bool,
    pub symmetrized: SymmetrizedSolution<f64>,
    pub report: ComparisonReport<f64>,
    pub diagnostics: DiagnosticReport<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct ComparisonTolerances {
    pub solver: f64,
    pub pointwise: f64,
    pub qnorm: f64,
}

pub fn solve_on<F: Fn(f64, f64) -> f64 + Sync>(
    domain: &Arc<RectilinearDomain<f64>>,
    w: &WeightProfile<f64>,
    v: &PotentialSplit<f64>,
    f: &F,
    solver_tol: f64,
) -> Result<(GridField<f64>, GridField<f64>, SolveStats), Error> {
    let op = assemble(domain.clone(), w, v)?;
    let field = GridField::sample(domain.clone(), f)?;
    if field.values().iter().any(|x| *x < 0.0) {
        return Err(Error::Argument("the source must be nonnegative".into()));
    }
    let opts = SolverOptions { tol: solver_tol, ..SolverOptions::default() };
    let (u, stats) = solve(&op, &field, v, opts)?;
    Ok((field, u, stats))
}

/// Solves on `domain`, builds `v` for the same source and runs both comparisons.
pub fn comparison_run<F: Fn(f64, f64) -> f64 + Sync>(
    domain: &Arc<RectilinearDomain<f64>>,
    w: &WeightProfile<f64>,
    v: &PotentialSplit<f64>,
    measure: &ReducedMeasure<f64>,
    f: &F,
    qs: &[f64],
    tol: ComparisonTolerances,
) -> Result<ComparisonRun, Error> {
    let (field, u, stats) = solve_on(domain, w, v, f, tol.solver)?;
    let source_cells = sample_mass_function(domain, v, f)?;
    let source_positive = field.values().iter().all(|x| *x > 0.0) && source_cells.values().iter().all(|x| *x > 0.0);
    let symmetrized = symmetrized_solution(&source_cells, domain.weighted_area(v), w, measure)?;
    let mut report = compare_pointwise(&u, &symmetrized, v, tol.pointwise)?;
    report.qnorms = compare_qnorm(&u, &symmetrized, v, qs, tol.qnorm)?;
    let diagnostics = estimate_chain_check(&u, &source_cells, &symmetrized, v)?;
    Ok(ComparisonRun {
        domain: domain.clone(),
        u,
        stats,
        source_cells,
        source_positive,
        symmetrized,
        report,
        diagnostics,
    })
}
