//! The explicit solution of the symmetrized problem on the half-space
//! `R_E = {x₁ > t_E}` with `μ(R_E) = μ(E)`, and the comparison of a discrete
//! solution `u` on `E` against it.
//!
//! With `F(s) = ∫₀^s f⋆` and `h = w λ`,
//!
//! ```text
//! v(z) = ∫_{Φ(z)}^{μ(E)} F(s) / h(Φ⁻¹ s)² ds = ∫_{t_E}^z F(Φ(ζ)) / (w² λ)(ζ) dζ,
//! ```
//!
//! so `v(t_E) = 0`, `v` grows away from the boundary of `R_E` and the flux
//! `w² λ v′` equals `F(Φ(z))`. The tabulation integrates the second form
//! panel by panel, with the abscissae `Φ⁻¹(Sⱼ)` of the `f⋆` breakpoints as
//! panel ends so that the integrand is smooth on every panel.

use std::io::{self, Write};

use crate::elliptic::{cell_gradient, gradient_qnorm, to_mass_function, GridField};
use crate::error::{Error, Result};
use crate::interp::Hermite;
use crate::measure1d::ReducedMeasure;
use crate::quadrature::gauss_kronrod;
use crate::rearrange::{decreasing_rearrangement, distribution, right_rearrangement, MassFunction, StepProfile};
use crate::scalar::Real;
use crate::weights::{PotentialSplit, WeightProfile};

/// Spacing of the uniform part of the tabulation.
pub const TABULATION_STEP: f64 = 1e-3;

/// Labels attached to every comparison report.
pub const INTERPRETATION_FLAGS: [&str; 2] = ["acca-integrand=density", "v-orientation=nondecreasing"];

/// `s ↦ ∫₀^s f⋆` for a step profile, exact and `O(log n)` per call.
#[derive(Debug, Clone)]
struct Primitive<T> {
    breakpoints: Vec<T>,
    values: Vec<T>,
    cumulative: Vec<T>,
}

impl<T: Real> Primitive<T> {
    fn new(star: &StepProfile<T>) -> Self {
        let breakpoints = star.breakpoints().to_vec();
        let values = star.values().to_vec();
        let mut cumulative = Vec::with_capacity(breakpoints.len());
        cumulative.push(T::zero());
        for (i, &v) in values.iter().enumerate() {
            let prev = cumulative[i];
            cumulative.push(prev + v * (breakpoints[i + 1] - breakpoints[i]));
        }
        Self { breakpoints, values, cumulative }
    }

    fn eval(&self, s: T) -> T {
        if self.values.is_empty() || s <= T::zero() {
            return T::zero();
        }
        let b = &self.breakpoints;
        if s >= *b.last().unwrap() {
            return *self.cumulative.last().unwrap();
        }
        let j = b.partition_point(|p| *p <= s).max(1);
        self.cumulative[j - 1] + self.values[j - 1] * (s - b[j - 1])
    }

    fn sup(&self) -> T {
        self.values.first().copied().unwrap_or(T::zero())
    }
}

#[derive(Debug, Clone)]
pub struct SymmetrizedSolution<T> {
    t_e: T,
    mu_e: T,
    weight: WeightProfile<T>,
    measure: ReducedMeasure<T>,
    star: StepProfile<T>,
    primitive: Primitive<T>,
    nodes: Vec<T>,
    values: Vec<T>,
    slopes: Vec<T>,
    profile: Option<Hermite<T>>,
    quadrature_error: T,
}

/// Builds `v` for the source `f` on a set of mass `mu_e`.
pub fn symmetrized_solution<T: Real>(
    f: &MassFunction<T>,
    mu_e: T,
    w: &WeightProfile<T>,
    measure: &ReducedMeasure<T>,
) -> Result<SymmetrizedSolution<T>> {
    let floor = measure.min_invertible_mass();
    if !(mu_e > floor && mu_e <= measure.total() * (T::one() + T::lit(1e-12))) {
        return Err(Error::Range { mass: mu_e.as_f64(), lo: floor.as_f64(), hi: measure.total().as_f64() });
    }
    let supp = f.total_mass();
    if (supp - mu_e).abs() > T::lit(1e-8) * mu_e {
        return Err(Error::Consistency(format!("source carries mass {supp} but the domain has {mu_e}")));
    }
    let t_e = measure.invert_phi(mu_e.min(measure.total()))?;
    w.check_domain(t_e)?;
    let t_max = measure.t_max();
    let star = decreasing_rearrangement(f);
    let primitive = Primitive::new(&star);

    let mut nodes = uniform_nodes(t_e, t_max);
    for &s in &star.breakpoints()[1..] {
        if s > floor && s < mu_e {
            let z = measure.invert_phi(s)?;
            if z > t_e && z < t_max {
                nodes.push(z);
            }
        }
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nodes.dedup_by(|b, a| *b - *a <= T::lit(1e-12) * (T::one() + a.abs()));

    let mut vs = SymmetrizedSolution {
        t_e,
        mu_e,
        weight: w.clone(),
        measure: measure.clone(),
        star,
        primitive,
        nodes: Vec::new(),
        values: Vec::new(),
        slopes: Vec::new(),
        profile: None,
        quadrature_error: T::zero(),
    };
    let panels = T::from_usize(nodes.len().max(2) - 1).unwrap();
    let tol = T::lit(1e-10) * vs.primitive.sup() * mu_e / panels;
    let mut values = Vec::with_capacity(nodes.len());
    let mut slopes = Vec::with_capacity(nodes.len());
    let mut acc = T::zero();
    let mut err = T::zero();
    for (k, &z) in nodes.iter().enumerate() {
        if k > 0 {
            let piece = gauss_kronrod(|x| vs.slope(x), nodes[k - 1], z, tol);
            acc = acc + piece.value;
            err = err + piece.error;
        }
        let d = vs.slope(z);
        if !acc.is_finite() || !d.is_finite() {
            return Err(Error::UnboundedSolution(format!(
                "v diverges near z = {z}; finite on {} of {} tabulation nodes starting at t_E = {t_e}",
                k,
                nodes.len()
            )));
        }
        values.push(acc);
        slopes.push(d);
    }
    vs.profile = Some(Hermite::new(nodes.clone(), values.clone(), slopes.clone())?);
    vs.nodes = nodes;
    vs.values = values;
    vs.slopes = slopes;
    vs.quadrature_error = err;
    Ok(vs)
}

fn uniform_nodes<T: Real>(lo: T, hi: T) -> Vec<T> {
    let n = ((hi - lo) / T::lit(TABULATION_STEP)).ceil().to_usize().unwrap_or(1).max(1);
    let step = (hi - lo) / T::from_usize(n).unwrap();
    (0..=n).map(|i| if i == n { hi } else { lo + step * T::from_usize(i).unwrap() }).collect()
}

impl<T: Real> SymmetrizedSolution<T> {
    /// Closed-form `v′(z) = F(Φ(z)) / (w(z)² λ(z))`, no range checks.
    fn slope(&self, z: T) -> T {
        let w = self.weight.value(z);
        self.primitive.eval(self.measure.phi(z)) / (w * w * self.measure.density(z))
    }

    pub fn t_e(&self) -> T {
        self.t_e
    }

    pub fn mu_e(&self) -> T {
        self.mu_e
    }

    pub fn weight(&self) -> &WeightProfile<T> {
        &self.weight
    }

    pub fn measure(&self) -> &ReducedMeasure<T> {
        &self.measure
    }

    /// `f⋆` on `(0, μ(E)]`.
    pub fn decreasing(&self) -> &StepProfile<T> {
        &self.star
    }

    /// `F(s) = ∫₀^s f⋆`.
    pub fn source_primitive(&self, s: T) -> T {
        self.primitive.eval(s)
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn node_values(&self) -> &[T] {
        &self.values
    }

    pub fn node_slopes(&self) -> &[T] {
        &self.slopes
    }

    /// Sum of the per-panel quadrature error estimates.
    pub fn quadrature_error(&self) -> T {
        self.quadrature_error
    }

    /// `v(z)`: zero for `z ≤ t_E`, cubic Hermite on the tabulation, frozen beyond `T_max`.
    pub fn value(&self, z: T) -> T {
        if z <= self.t_e {
            return T::zero();
        }
        let last = *self.nodes.last().unwrap();
        if z >= last {
            return *self.values.last().unwrap();
        }
        self.profile.as_ref().unwrap().eval(z)
    }

    /// Slope of the tabulated interpolant (as opposed to the closed form).
    pub fn interpolated_slope(&self, z: T) -> T {
        let (lo, hi) = (self.t_e, *self.nodes.last().unwrap());
        self.profile.as_ref().unwrap().eval3(z.max(lo).min(hi)).1
    }

    pub fn v_max(&self) -> T {
        *self.values.last().unwrap()
    }

    /// `z ↦ v(z)` is nondecreasing, so `{v > t} = {z > z_t}`; returns `z_t`.
    pub fn level_abscissa(&self, t: T) -> T {
        if t < T::zero() {
            return T::neg_infinity();
        }
        if t >= self.v_max() {
            return *self.nodes.last().unwrap();
        }
        let k = self.values.partition_point(|v| *v <= t);
        let (mut a, mut b) = (self.nodes[k - 1], self.nodes[k]);
        for _ in 0..200 {
            let m = (a + b) * T::lit(0.5);
            if m <= a || m >= b {
                break;
            }
            if self.value(m) > t {
                b = m;
            } else {
                a = m;
            }
        }
        b
    }

    /// `μ({v > t})` on `R_E`.
    pub fn distribution(&self, t: T) -> T {
        if t < T::zero() {
            return self.mu_e;
        }
        self.measure.phi(self.level_abscissa(t)).min(self.mu_e)
    }

    /// `z,v,dv_dz` rows at the tabulation nodes.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "z,v,dv_dz")?;
        for ((z, v), d) in self.nodes.iter().zip(&self.values).zip(&self.slopes) {
            writeln!(out, "{:.16e},{:.16e},{:.16e}", z.as_f64(), v.as_f64(), d.as_f64())?;
        }
        Ok(())
    }
}

/// `dv/dz = F(Φ(z)) / (w(z)² λ(z)) ≥ 0` on `[t_E, T_max]`.
pub fn v_gradient<T: Real>(vs: &SymmetrizedSolution<T>, z: T) -> Result<T> {
    if !(z >= vs.t_e && z <= vs.measure.t_max()) {
        return Err(Error::Domain(format!(
            "dv/dz requested at z = {z} outside [t_E, T_max] = [{}, {}]",
            vs.t_e,
            vs.measure.t_max()
        )));
    }
    Ok(vs.slope(z))
}

/// Defect `(w²λv′)′ + f⋆(Φ(z)) λ(z)` of the reduced equation, with the flux taken from
/// the closed form and differentiated by a fourth-order central difference.
pub fn reduced_residual<T: Real>(vs: &SymmetrizedSolution<T>, z: T) -> Result<T> {
    let step = T::lit(1e-3);
    let lo = vs.t_e + T::lit(2.0) * step;
    let hi = vs.measure.t_max() - T::lit(2.0) * step;
    if !(z >= lo && z <= hi) {
        return Err(Error::Domain(format!("reduced residual needs an interior abscissa (got {z})")));
    }
    let flux = |x: T| vs.primitive.eval(vs.measure.phi(x));
    let d = (flux(z - T::lit(2.0) * step) - T::lit(8.0) * flux(z - step) + T::lit(8.0) * flux(z + step)
        - flux(z + T::lit(2.0) * step))
        / (T::lit(12.0) * step);
    Ok(d + vs.star.eval(vs.measure.phi(z)) * vs.measure.density(z))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QNorm<T> {
    pub q: T,
    /// `∫_E |∇u|^q w^q dμ`
    pub lhs: T,
    /// `∫_{R_E} |∇v|^q w^q dμ`
    pub rhs: T,
    /// `rhs − lhs`
    pub slack: T,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport<T> {
    pub t_e: T,
    pub mu_e: T,
    pub hc: T,
    /// `sup (u* − v)`, attained at a jump of `u*`
    pub max_violation: T,
    pub violation_at: T,
    pub pointwise_holds: bool,
    /// `sup_t |μ_u(t) − μ_{u*}(t)| / μ(E)` over 64 levels
    pub equimeasurability_error: T,
    /// `sup_t (μ_{u*}(t) − μ_v(t)) / μ(E)` over 64 levels
    pub distribution_excess: T,
    pub qnorms: Vec<QNorm<T>>,
    pub interpretation_flags: Vec<&'static str>,
}

impl<T: Real> ComparisonReport<T> {
    pub fn qnorms_hold(&self) -> bool {
        self.qnorms.iter().all(|q| q.holds)
    }
}

fn check_mass<T: Real>(u: &GridField<T>, vs: &SymmetrizedSolution<T>, v: &PotentialSplit<T>) -> Result<()> {
    let mass = u.domain().weighted_area(v);
    if (mass - vs.mu_e).abs() > T::lit(1e-8) * vs.mu_e {
        return Err(Error::Consistency(format!(
            "domain of u has mass {mass}, symmetrized solution was built for {}",
            vs.mu_e
        )));
    }
    Ok(())
}

/// `u* ≤ v` with tolerance `tol` on the violation.
pub fn compare_pointwise<T: Real>(
    u: &GridField<T>,
    vs: &SymmetrizedSolution<T>,
    v: &PotentialSplit<T>,
    tol: T,
) -> Result<ComparisonReport<T>> {
    check_mass(u, vs, v)?;
    let mf = to_mass_function(u, v)?;
    let rear = right_rearrangement(&mf, &vs.measure)?;

    // v is nondecreasing and u* is constant on [jump_j, jump_{j-1}): the sup sits at a left end
    let mut max_violation = T::neg_infinity();
    let mut violation_at = vs.t_e;
    for (&value, &z) in rear.decreasing().values().iter().zip(rear.jumps()) {
        let gap = value - vs.value(z);
        if gap > max_violation {
            max_violation = gap;
            violation_at = z;
        }
    }
    if !max_violation.is_finite() {
        max_violation = T::zero();
    }

    let top = mf.max_value();
    let mut equi = T::zero();
    let mut excess = T::neg_infinity();
    for k in 0..64 {
        let t = top * T::from_usize(k).unwrap() / T::lit(64.0);
        let a = distribution(&mf, t);
        let b = rear.distribution(t, &vs.measure);
        equi = equi.max((a - b).abs());
        excess = excess.max(b - vs.distribution(t));
    }
    Ok(ComparisonReport {
        t_e: vs.t_e,
        mu_e: vs.mu_e,
        hc: u.domain().hc(),
        max_violation,
        violation_at,
        pointwise_holds: max_violation <= tol,
        equimeasurability_error: equi / vs.mu_e,
        distribution_excess: excess / vs.mu_e,
        qnorms: Vec::new(),
        interpretation_flags: INTERPRETATION_FLAGS.to_vec(),
    })
}

/// `∫_{t_E}^{T_max} (v′)^q w^q λ dz`.
pub fn symmetrized_qnorm<T: Real>(vs: &SymmetrizedSolution<T>, q: T) -> Result<T> {
    if !(q > T::zero() && q <= T::lit(2.0)) {
        return Err(Error::Argument(format!("q must lie in (0, 2] (got {q})")));
    }
    let integrand = |z: T| {
        let d = vs.slope(z);
        if d > T::zero() {
            (d * vs.weight.value(z)).powf(q) * vs.measure.density(z)
        } else {
            T::zero()
        }
    };
    let scale = vs.primitive.sup() * vs.mu_e;
    let tol = T::lit(1e-12) * (scale + T::min_positive_value()) / T::from_usize(vs.nodes.len()).unwrap();
    let mut acc = T::zero();
    for pair in vs.nodes.windows(2) {
        acc = acc + gauss_kronrod(integrand, pair[0], pair[1], tol).value;
    }
    Ok(acc)
}

/// Gradient-norm comparison for every `q` in `qs`; `holds` iff `lhs ≤ rhs + rel_tol·rhs`.
pub fn compare_qnorm<T: Real>(
    u: &GridField<T>,
    vs: &SymmetrizedSolution<T>,
    v: &PotentialSplit<T>,
    qs: &[T],
    rel_tol: T,
) -> Result<Vec<QNorm<T>>> {
    check_mass(u, vs, v)?;
    qs.iter()
        .map(|&q| {
            let lhs = gradient_qnorm(u, &vs.weight, v, q)?;
            let rhs = symmetrized_qnorm(vs, q)?;
            Ok(QNorm { q, lhs, rhs, slack: rhs - lhs, holds: lhs <= rhs + rel_tol * rhs })
        })
        .collect()
}

/// Per-level diagnostics of the chain of estimates behind the comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelDiagnostic<T> {
    pub t: T,
    /// `μ({|u| > t})`
    pub mass: T,
    /// `∫_{|u|>t} |∇u|² w² dμ`
    pub energy_above: T,
    /// `∫ f (|u| − t)₊ dμ`, equal to `energy_above` for the exact solution
    pub work_above: T,
    /// centred difference `−d/dt energy_above`
    pub energy_rate: T,
    /// `∫_{|u|>t} f dμ`
    pub source_above: T,
    /// `|P({u* > t}) − h(μ_{u*}(t))| / h`
    pub perimeter_defect: T,
    /// `h(μ_u)² / ((−μ_u′) F(μ_u))`, at most one up to discretization
    pub differential_ratio_u: T,
    /// the same quantity for `v`, equal to one
    pub differential_ratio_v: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticReport<T> {
    pub levels: Vec<LevelDiagnostic<T>>,
}

pub const DIAGNOSTIC_LEVELS: usize = 32;

/// Diagnostics at 32 levels spanning `(0, max|u|)`; `f` must be sampled on the cells of `u`'s domain.
pub fn estimate_chain_check<T: Real>(
    u: &GridField<T>,
    f: &MassFunction<T>,
    vs: &SymmetrizedSolution<T>,
    v: &PotentialSplit<T>,
) -> Result<DiagnosticReport<T>> {
    let dom = u.domain();
    let mf = to_mass_function(u, v)?;
    if f.len() != mf.len() {
        return Err(Error::Consistency(format!("source has {} cells, domain has {}", f.len(), mf.len())));
    }
    let top = mf.max_value();
    if top == T::zero() {
        return Ok(DiagnosticReport { levels: Vec::new() });
    }
    let w = &vs.weight;
    let energy: Vec<T> = dom
        .cells()
        .map(|(i, j)| {
            let [gx, gy] = cell_gradient(u, i, j);
            let wc = w.value(dom.cell_center(i, j)[0]);
            (gx * gx + gy * gy) * wc * wc
        })
        .collect();
    let vals = mf.values();
    let masses = mf.masses();
    let above = |t: T| -> T { (0..vals.len()).filter(|&c| vals[c] > t).map(|c| energy[c] * masses[c]).sum() };
    let rear = right_rearrangement(&mf, &vs.measure)?;
    let n = T::from_usize(DIAGNOSTIC_LEVELS).unwrap();
    let delta = top / (T::lit(2.0) * n);
    let mut levels = Vec::with_capacity(DIAGNOSTIC_LEVELS);
    for k in 0..DIAGNOSTIC_LEVELS {
        let t = top * (T::from_usize(k).unwrap() + T::lit(0.5)) / n;
        let mass = distribution(&mf, t);
        let energy_above = above(t);
        let work_above =
            (0..vals.len()).filter(|&c| vals[c] > t).map(|c| f.values()[c] * (vals[c] - t) * masses[c]).sum();
        let energy_rate = (above(t - delta) - above(t + delta)) / (T::lit(2.0) * delta);
        let source_above = (0..vals.len()).filter(|&c| vals[c] > t).map(|c| f.values()[c] * masses[c]).sum();

        let m_star = rear.distribution(t, &vs.measure);
        let perimeter_defect = if m_star > vs.measure.min_invertible_mass() {
            let count = rear.decreasing().values().partition_point(|x| *x > t);
            let z = rear.jumps()[count - 1];
            let p = w.value(z) * vs.measure.density(z);
            let h = vs.measure.h_of_mass(w, m_star)?;
            (p - h).abs() / h
        } else {
            T::zero()
        };

        let differential_ratio_u = if mass > vs.measure.min_invertible_mass() {
            let rate = (distribution(&mf, t - delta) - distribution(&mf, t + delta)) / (T::lit(2.0) * delta);
            let h = vs.measure.h_of_mass(w, mass)?;
            let big_f = vs.primitive.eval(mass);
            if rate > T::zero() && big_f > T::zero() {
                h * h / (rate * big_f)
            } else {
                T::infinity()
            }
        } else {
            T::nan()
        };

        let differential_ratio_v = if t < vs.v_max() {
            let z = vs.level_abscissa(t);
            let lam = vs.measure.density(z);
            let wz = w.value(z);
            // −μ_v′(t) = λ(z_t) / v′(z_t), with v′ from the tabulated interpolant
            let rate = lam / vs.interpolated_slope(z);
            let m = vs.measure.phi(z);
            (wz * lam) * (wz * lam) / (rate * vs.primitive.eval(m))
        } else {
            T::nan()
        };

        levels.push(LevelDiagnostic {
            t,
            mass,
            energy_above,
            work_above,
            energy_rate,
            source_above,
            perimeter_defect,
            differential_ratio_u,
            differential_ratio_v,
        });
    }
    Ok(DiagnosticReport { levels })
}
