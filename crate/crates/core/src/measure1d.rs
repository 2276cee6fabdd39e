//! The measure `μ = e^V dx` on the half-space `{x₁ > 0}` reduced to the
//! first coordinate: density `λ(t) = e^{V₁(t)} M₂`, tail mass
//! `Φ(t) = μ({x₁ > t})`, its inverse and the half-space perimeter `h(m)`.

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre10, simpson};
use crate::scalar::{gaussian_tail, Real};
use crate::weights::{AxialPotential, PotentialSplit, WeightProfile};

/// Relative tail mass admitted beyond the truncation abscissa by default.
pub const DEFAULT_TAIL_FRACTION: f64 = 1e-12;

/// Target panel width of the `Φ` table.
const PANEL_WIDTH: f64 = 1.0 / 128.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedMeasure<T> {
    potential: PotentialSplit<T>,
    cross_mass: T,
    knots: Vec<T>,
    tail_mass: Vec<T>,
    eps_tail: T,
}

impl<T: Real> ReducedMeasure<T> {
    /// Tabulates `Φ` on `[0, T_max]` where the mass beyond `T_max` is at most `eps_tail`
    /// (default `1e-12 · total`).
    pub fn build(potential: &PotentialSplit<T>, eps_tail: Option<T>) -> Result<Self> {
        let cross_mass = potential.cross_mass().ok_or_else(|| {
            Error::MeasureNotFinite(format!(
                "transverse potential has infinite mass over R^{}",
                potential.dimension() - 1
            ))
        })?;
        if matches!(potential.axial(), AxialPotential::Zero) {
            return Err(Error::MeasureNotFinite("V1 = 0 gives infinite mass on the half-line".into()));
        }
        let total_estimate = cross_mass * axial_tail(potential, T::zero());
        let eps = eps_tail.unwrap_or(T::lit(DEFAULT_TAIL_FRACTION) * total_estimate);
        if !(eps > T::zero()) || eps > T::lit(1e-6) * total_estimate {
            return Err(Error::Argument(format!(
                "eps_tail must lie in (0, 1e-6 * total] (got {eps}, total {total_estimate})"
            )));
        }

        let tail_at = |t: T| cross_mass * axial_tail(potential, t);
        let mut hi = T::one();
        while tail_at(hi) > eps {
            hi = hi * T::lit(2.0);
        }
        let mut lo = T::zero();
        for _ in 0..200 {
            let mid = (lo + hi) * T::lit(0.5);
            if mid <= lo || mid >= hi {
                break;
            }
            if tail_at(mid) > eps {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t_max = hi;

        let panels = (t_max / T::lit(PANEL_WIDTH)).ceil().to_usize().unwrap_or(1).max(1);
        let step = t_max / T::from_usize(panels).unwrap();
        let knots: Vec<T> =
            (0..=panels).map(|i| if i == panels { t_max } else { step * T::from_usize(i).unwrap() }).collect();
        let panel_tol = T::lit(1e-12) * total_estimate;
        let mut tail_mass = vec![T::zero(); panels + 1];
        tail_mass[panels] = tail_at(t_max);
        for i in (0..panels).rev() {
            let piece = simpson(|s| potential.v1(s).exp(), knots[i], knots[i + 1], panel_tol / cross_mass);
            tail_mass[i] = tail_mass[i + 1] + cross_mass * piece.value;
        }
        Ok(Self { potential: *potential, cross_mass, knots, tail_mass, eps_tail: eps })
    }

    pub fn potential(&self) -> &PotentialSplit<T> {
        &self.potential
    }

    /// `μ(ℝᵈ₊) = Φ(0)`.
    pub fn total(&self) -> T {
        self.tail_mass[0]
    }

    pub fn t_max(&self) -> T {
        *self.knots.last().unwrap()
    }

    pub fn eps_tail(&self) -> T {
        self.eps_tail
    }

    pub fn cross_mass(&self) -> T {
        self.cross_mass
    }

    /// `λ(t) = e^{V₁(t)} M₂`, the mass per unit length in `x₁`.
    #[inline]
    pub fn density(&self, t: T) -> T {
        self.cross_mass * self.potential.v1(t).exp()
    }

    /// `Φ(t) = μ({x₁ > t})`; equals the total mass for `t ≤ 0`.
    pub fn phi(&self, t: T) -> T {
        if t <= T::zero() {
            return self.total();
        }
        let n = self.knots.len() - 1;
        if t >= self.knots[n] {
            return self.cross_mass * axial_tail(&self.potential, t);
        }
        let i = self.panel_of(t);
        let (a, b) = (self.knots[i], self.knots[i + 1]);
        // integrate over the shorter side of the panel
        if t - a <= b - t {
            self.tail_mass[i] - self.cross_mass * gauss_legendre10(|s| self.potential.v1(s).exp(), a, t)
        } else {
            self.tail_mass[i + 1] + self.cross_mass * gauss_legendre10(|s| self.potential.v1(s).exp(), t, b)
        }
    }

    fn panel_of(&self, t: T) -> usize {
        let n = self.knots.len() - 1;
        match self.knots.binary_search_by(|k| k.partial_cmp(&t).unwrap_or(std::cmp::Ordering::Less)) {
            Ok(i) => i.min(n - 1),
            Err(i) => i.saturating_sub(1).min(n - 1),
        }
    }

    /// Smallest mass that can be inverted, `Φ(T_max) ≤ eps_tail`.
    pub fn min_invertible_mass(&self) -> T {
        *self.tail_mass.last().unwrap()
    }

    /// `Φ⁻¹(m)` by bracketed bisection on the table, refined by safeguarded Newton steps.
    pub fn invert_phi(&self, m: T) -> Result<T> {
        let total = self.total();
        let lo = self.min_invertible_mass();
        let slack = T::lit(1e-12) * total;
        if !(m >= lo && m <= total + slack) {
            return Err(Error::Range { mass: m.as_f64(), lo: lo.as_f64(), hi: total.as_f64() });
        }
        if m >= total {
            return Ok(T::zero());
        }
        // tail_mass is decreasing: find i with tail_mass[i] >= m >= tail_mass[i+1]
        let n = self.knots.len() - 1;
        let (mut a, mut b) = (0usize, n);
        while b - a > 1 {
            let mid = (a + b) / 2;
            if self.tail_mass[mid] >= m {
                a = mid;
            } else {
                b = mid;
            }
        }
        let (mut left, mut right) = (self.knots[a], self.knots[b]);
        let (fl, fr) = (self.tail_mass[a] - m, self.tail_mass[b] - m);
        let mut t = if fl == fr { left } else { left + (right - left) * fl / (fl - fr) };
        // the table is accurate relative to the tail mass itself
        let target = T::lit(4.0) * T::epsilon() * m;
        for _ in 0..100 {
            let f = self.phi(t) - m;
            if f.abs() <= target {
                break;
            }
            if f > T::zero() {
                left = t;
            } else {
                right = t;
            }
            let newton = t + f / self.density(t);
            t = if newton > left && newton < right { newton } else { (left + right) * T::lit(0.5) };
            if right - left <= T::epsilon() * (T::one() + right.abs()) {
                break;
            }
        }
        Ok(t)
    }

    /// `h(m) = w(Φ⁻¹(m)) λ(Φ⁻¹(m))`: weighted perimeter of the half-space holding mass `m`.
    pub fn h_of_mass(&self, w: &WeightProfile<T>, m: T) -> Result<T> {
        let t = self.invert_phi(m)?;
        w.check_domain(t)?;
        Ok(w.value(t) * self.density(t))
    }
}

/// `∫_t^∞ e^{V₁(s)} ds` for `t ≥ 0`, in closed form for every finite-mass family.
fn axial_tail<T: Real>(potential: &PotentialSplit<T>, t: T) -> T {
    match potential.axial() {
        AxialPotential::Zero => T::infinity(),
        AxialPotential::Gaussian { c } | AxialPotential::SignedParabola { c } => gaussian_tail(c, t),
        AxialPotential::Linear { c } => (-c * t).exp() / c,
    }
}

/// Free-function form of [`ReducedMeasure::build`].
pub fn build_measure<T: Real>(potential: &PotentialSplit<T>, eps_tail: Option<T>) -> Result<ReducedMeasure<T>> {
    ReducedMeasure::build(potential, eps_tail)
}
