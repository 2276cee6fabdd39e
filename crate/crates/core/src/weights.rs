//! Weight profiles `w(x₁)`, split potentials `V = V₁(x₁) + V₂(x′)`, the drift
//! `g = −w′ − w ∂₁V` and the admissibility checks on `(w, V)`.

use crate::error::{Error, Result};
use crate::interp::Hermite;
use crate::scalar::Real;

/// Lower cutoff applied to power weights when none is given.
pub const DEFAULT_POWER_CUTOFF: f64 = 1e-3;

/// Number of sample points used by [`default_grid`].
pub const DEFAULT_GRID_POINTS: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightFamily<T> {
    /// `w ≡ level`
    Constant { level: T },
    /// `w(t) = e^{−a t}`
    Exponential { a: T },
    /// `w(t) = b + e^{−a t}`
    ShiftedExponential { a: T, b: T },
    /// `w(t) = t^{−a}` on `(cutoff, ∞)`
    Power { a: T, cutoff: T },
    /// Monotone cubic interpolation of tabulated values.
    Tabulated(Hermite<T>),
}

/// A strictly positive C¹ weight of the first coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightProfile<T> {
    family: WeightFamily<T>,
}

impl<T: Real> WeightProfile<T> {
    pub fn constant(level: T) -> Result<Self> {
        if !(level > T::zero()) || !level.is_finite() {
            return Err(Error::Argument(format!("constant weight level must be > 0 (got {level})")));
        }
        Ok(Self { family: WeightFamily::Constant { level } })
    }

    pub fn exponential(a: T) -> Result<Self> {
        positive("exponential decay rate a", a)?;
        Ok(Self { family: WeightFamily::Exponential { a } })
    }

    pub fn shifted_exponential(a: T, b: T) -> Result<Self> {
        positive("shifted exponential decay rate a", a)?;
        if !(b >= T::zero()) || !b.is_finite() {
            return Err(Error::Argument(format!("shifted exponential offset b must be >= 0 (got {b})")));
        }
        Ok(Self { family: WeightFamily::ShiftedExponential { a, b } })
    }

    pub fn power(a: T, cutoff: T) -> Result<Self> {
        positive("power exponent a", a)?;
        positive("power cutoff", cutoff)?;
        Ok(Self { family: WeightFamily::Power { a, cutoff } })
    }

    /// Tabulated weight through `(breakpoints, values)`; all values must be positive.
    pub fn tabulated(breakpoints: Vec<T>, values: Vec<T>) -> Result<Self> {
        if values.iter().any(|v| !(*v > T::zero())) {
            return Err(Error::Argument("tabulated weight values must be > 0".into()));
        }
        let spline = Hermite::monotone(breakpoints, values)?;
        Ok(Self { family: WeightFamily::Tabulated(spline) })
    }

    pub fn family(&self) -> &WeightFamily<T> {
        &self.family
    }

    /// Open/closed domain bounds `(lo, hi)`; `lo` is exclusive for power weights.
    pub fn domain(&self) -> (T, T) {
        match &self.family {
            WeightFamily::Power { cutoff, .. } => (*cutoff, T::infinity()),
            WeightFamily::Tabulated(s) => s.domain(),
            _ => (T::neg_infinity(), T::infinity()),
        }
    }

    pub fn check_domain(&self, t: T) -> Result<()> {
        let ok = match &self.family {
            WeightFamily::Power { cutoff, .. } => t > *cutoff,
            WeightFamily::Tabulated(s) => {
                let (lo, hi) = s.domain();
                t >= lo && t <= hi
            }
            _ => t.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            let (lo, hi) = self.domain();
            Err(Error::Domain(format!("t = {t} outside weight domain ({lo}, {hi})")))
        }
    }

    /// `(w, w′, w″)` at `t`; the caller guarantees `t` is in the domain.
    pub fn eval3(&self, t: T) -> (T, T, T) {
        match &self.family {
            WeightFamily::Constant { level } => (*level, T::zero(), T::zero()),
            WeightFamily::Exponential { a } => {
                let e = (-*a * t).exp();
                (e, -*a * e, *a * *a * e)
            }
            WeightFamily::ShiftedExponential { a, b } => {
                let e = (-*a * t).exp();
                (*b + e, -*a * e, *a * *a * e)
            }
            WeightFamily::Power { a, .. } => {
                let w = t.powf(-*a);
                let d = -*a * w / t;
                let dd = *a * (*a + T::one()) * w / (t * t);
                (w, d, dd)
            }
            WeightFamily::Tabulated(s) => s.eval3(t),
        }
    }

    #[inline]
    pub fn value(&self, t: T) -> T {
        self.eval3(t).0
    }

    #[inline]
    pub fn derivative(&self, t: T) -> T {
        self.eval3(t).1
    }
}

fn positive<T: Real>(name: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!("{name} must be > 0 (got {v})")))
    }
}

/// Axial part `V₁(x₁)` of a split potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxialPotential<T> {
    Zero,
    /// `−c t²`
    Gaussian {
        c: T,
    },
    /// `−c t|t|`
    SignedParabola {
        c: T,
    },
    /// `−c t`
    Linear {
        c: T,
    },
}

/// Transverse part `V₂(x′)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransversePotential<T> {
    Zero,
    /// `−c |x′|²`
    Gaussian {
        c: T,
    },
}

/// Potential `V(x) = V₁(x₁) + V₂(x′)` on `ℝᵈ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSplit<T> {
    axial: AxialPotential<T>,
    transverse: TransversePotential<T>,
    dimension: usize,
}

impl<T: Real> PotentialSplit<T> {
    pub fn new(axial: AxialPotential<T>, transverse: TransversePotential<T>, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Argument("dimension must be >= 1".into()));
        }
        match axial {
            AxialPotential::Zero => {}
            AxialPotential::Gaussian { c } | AxialPotential::SignedParabola { c } | AxialPotential::Linear { c } => {
                positive("axial potential constant c", c)?
            }
        }
        if let TransversePotential::Gaussian { c } = transverse {
            positive("transverse potential constant c", c)?;
        }
        Ok(Self { axial, transverse, dimension })
    }

    pub fn axial(&self) -> AxialPotential<T> {
        self.axial
    }

    pub fn transverse(&self) -> TransversePotential<T> {
        self.transverse
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn v1(&self, t: T) -> T {
        match self.axial {
            AxialPotential::Zero => T::zero(),
            AxialPotential::Gaussian { c } => -c * t * t,
            AxialPotential::SignedParabola { c } => -c * t * t.abs(),
            AxialPotential::Linear { c } => -c * t,
        }
    }

    /// `V₁′(t)`; continuous for every family.
    pub fn v1_derivative(&self, t: T) -> T {
        let two = T::lit(2.0);
        match self.axial {
            AxialPotential::Zero => T::zero(),
            AxialPotential::Gaussian { c } => -two * c * t,
            AxialPotential::SignedParabola { c } => -two * c * t.abs(),
            AxialPotential::Linear { c } => -c,
        }
    }

    /// `V₁″(t)`, or `None` at a kink.
    pub fn v1_second_derivative(&self, t: T) -> Option<T> {
        let two = T::lit(2.0);
        match self.axial {
            AxialPotential::Zero | AxialPotential::Linear { .. } => Some(T::zero()),
            AxialPotential::Gaussian { c } => Some(-two * c),
            AxialPotential::SignedParabola { c } => {
                if t == T::zero() {
                    None
                } else {
                    Some(-two * c * t.signum())
                }
            }
        }
    }

    /// Abscissae where `V₁` fails to be twice differentiable.
    pub fn kinks(&self) -> Vec<T> {
        match self.axial {
            AxialPotential::SignedParabola { .. } => vec![T::zero()],
            _ => Vec::new(),
        }
    }

    /// `V₂(x′)` for `x′ ∈ ℝ^{d−1}`.
    pub fn v2(&self, transverse: &[T]) -> T {
        match self.transverse {
            TransversePotential::Zero => T::zero(),
            TransversePotential::Gaussian { c } => -c * transverse.iter().map(|&y| y * y).sum::<T>(),
        }
    }

    /// Full potential in the plane, `V(x₁, x₂)`.
    pub fn v_plane(&self, x1: T, x2: T) -> T {
        self.v1(x1) + self.v2(&[x2])
    }

    /// `∫ e^{V₂}` over `ℝ^{d−1}`, or `None` when infinite.
    pub fn cross_mass(&self) -> Option<T> {
        if self.dimension == 1 {
            return Some(T::one());
        }
        match self.transverse {
            TransversePotential::Zero => None,
            TransversePotential::Gaussian { c } => {
                let k = T::from_usize(self.dimension - 1).unwrap();
                Some((T::PI() / c).powf(k * T::lit(0.5)))
            }
        }
    }

    /// `∫_lo^hi e^{V₂(y)} dy` in the plane (`d = 2`).
    pub fn transverse_interval(&self, lo: T, hi: T) -> T {
        match self.transverse {
            TransversePotential::Zero => (hi - lo).max(T::zero()),
            TransversePotential::Gaussian { c } => crate::scalar::gaussian_interval(c, lo, hi),
        }
    }
}

/// `g(t) = −w′(t) − w(t) V₁′(t)`.
pub fn drift_g<T: Real>(w: &WeightProfile<T>, v: &PotentialSplit<T>, t: T) -> Result<T> {
    w.check_domain(t)?;
    Ok(drift_unchecked(w, v, t))
}

#[inline]
pub(crate) fn drift_unchecked<T: Real>(w: &WeightProfile<T>, v: &PotentialSplit<T>, t: T) -> T {
    let (wv, wd, _) = w.eval3(t);
    -wd - wv * v.v1_derivative(t)
}

/// Normalised residual `(w″ + V₁″ w + V₁′ w′) / w` at `t`; drift condition requires it `≥ 0`.
///
/// Dividing by `w > 0` keeps the sign and makes the analytic families reduce
/// to their polynomial criteria, e.g. `a² − 2c + 2ac|t|` for exponential
/// weights with a Gaussian or signed-parabola potential on `t ≥ 0`.
pub fn check_ode_condition<T: Real>(w: &WeightProfile<T>, v: &PotentialSplit<T>, t: T) -> Result<T> {
    w.check_domain(t)?;
    let vdd =
        v.v1_second_derivative(t).ok_or_else(|| Error::Domain(format!("V1 is not twice differentiable at t = {t}")))?;
    let (wv, wd, wdd) = w.eval3(t);
    Ok((wdd + vdd * wv + v.v1_derivative(t) * wd) / wv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionStatus {
    /// The closed-form criterion of the family holds on `[0, ∞)` and the grid agrees.
    Proved,
    /// No closed form; every grid sample passed.
    EmpiricalPass,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub criterion: String,
    /// Value of the criterion expression where one exists (must be `≥ 0`).
    pub margin: Option<f64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport<T> {
    pub nonnegative: bool,
    pub nonincreasing: bool,
    /// First grid point with `g < 0`.
    pub negative_witness: Option<T>,
    /// First consecutive grid pair with `g(t_{i+1}) > g(t_i)`.
    pub increase_witness: Option<(T, T)>,
    pub closed_form: Option<ClosedForm>,
    pub status: ConditionStatus,
    pub grid_points: usize,
}

impl<T> ValidationReport<T> {
    pub fn passed(&self) -> bool {
        self.status != ConditionStatus::Fail
    }
}

/// Uniform grid with `n` points on `[lo, hi]`.
pub fn default_grid<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let n = n.max(2);
    let step = (hi - lo) / T::from_usize(n - 1).unwrap();
    (0..n).map(|i| lo + step * T::from_usize(i).unwrap()).collect()
}

/// Grid check of "g non-negative and non-increasing", plus the closed-form
/// criterion when the family has one and the grid lies in `[0, ∞)`.
pub fn validate_condition_ii<T: Real>(
    w: &WeightProfile<T>,
    v: &PotentialSplit<T>,
    grid: &[T],
) -> Result<ValidationReport<T>> {
    if grid.is_empty() {
        return Err(Error::Argument("drift condition grid is empty".into()));
    }
    if grid.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::Argument("drift condition grid must be strictly increasing".into()));
    }
    let values = grid.iter().map(|&t| drift_g(w, v, t)).collect::<Result<Vec<T>>>()?;
    let scale = values.iter().fold(T::one(), |m, g| m.max(g.abs()));
    let tol = T::lit(1e-12) * scale;

    let negative_witness = grid.iter().zip(&values).find(|(_, g)| **g < -tol).map(|(&t, _)| t);
    let increase_witness = (1..values.len()).find(|&i| values[i] > values[i - 1] + tol).map(|i| (grid[i - 1], grid[i]));
    let nonnegative = negative_witness.is_none();
    let nonincreasing = increase_witness.is_none();

    let closed_form = if grid[0] >= T::zero() { closed_form(w, v) } else { None };
    let grid_pass = nonnegative && nonincreasing;
    let status = match &closed_form {
        Some(cf) if cf.holds && grid_pass => ConditionStatus::Proved,
        Some(_) => ConditionStatus::Fail,
        None if grid_pass => ConditionStatus::EmpiricalPass,
        None => ConditionStatus::Fail,
    };
    Ok(ValidationReport {
        nonnegative,
        nonincreasing,
        negative_witness,
        increase_witness,
        closed_form,
        status,
        grid_points: grid.len(),
    })
}

/// Closed-form verdict of drift condition on the half-line `[0, ∞)`.
fn closed_form<T: Real>(w: &WeightProfile<T>, v: &PotentialSplit<T>) -> Option<ClosedForm> {
    use AxialPotential as A;
    use WeightFamily as W;
    let c = match v.axial() {
        A::Zero => 0.0,
        A::Gaussian { c } | A::SignedParabola { c } | A::Linear { c } => c.as_f64(),
    };
    let always = |criterion: &str| ClosedForm { criterion: criterion.to_string(), margin: None, holds: true };
    let never = |criterion: &str| ClosedForm { criterion: criterion.to_string(), margin: None, holds: false };
    let cf = match (w.family(), v.axial()) {
        (W::Tabulated(_), _) => return None,
        (W::Constant { .. }, A::Zero) => always("g = 0"),
        (W::Constant { .. }, A::Linear { .. }) => always("g = c*level is constant"),
        (W::Constant { .. }, _) => never("g = 2c*level*|t| increases"),
        (W::Exponential { .. } | W::ShiftedExponential { .. }, A::Zero) => always("g = a e^{-at} decreases"),
        (W::Exponential { .. } | W::ShiftedExponential { .. }, A::Linear { .. }) => {
            always("g = a e^{-at} + c w decreases")
        }
        (W::Exponential { a }, _) => {
            let a = a.as_f64();
            let margin = a * a - 2.0 * c;
            ClosedForm { criterion: "a^2 - 2c >= 0".into(), margin: Some(margin), holds: margin >= 0.0 }
        }
        (W::ShiftedExponential { a, b }, _) => {
            let (a, b) = (a.as_f64(), b.as_f64());
            if b == 0.0 {
                let margin = a * a - 2.0 * c;
                ClosedForm { criterion: "a^2 - 2c >= 0".into(), margin: Some(margin), holds: margin >= 0.0 }
            } else {
                // g(t) = a e^{-at} + 2ct(b + e^{-at}) grows like 2cbt
                ClosedForm {
                    criterion: "b > 0: g grows like 2cbt on [0, inf); origin criterion a^2 - 2c(1+b)".into(),
                    margin: Some(a * a - 2.0 * c * (1.0 + b)),
                    holds: false,
                }
            }
        }
        (W::Power { .. }, A::Zero | A::Linear { .. }) => always("g = a t^{-a-1} (+ c t^{-a}) decreases"),
        (W::Power { a, .. }, _) => {
            let a = a.as_f64();
            ClosedForm { criterion: "a >= 1".into(), margin: Some(a - 1.0), holds: a >= 1.0 }
        }
    };
    Some(cf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signed(c: f64) -> PotentialSplit<f64> {
        PotentialSplit::new(AxialPotential::SignedParabola { c }, TransversePotential::Gaussian { c }, 2).unwrap()
    }

    fn gaussian(c: f64) -> PotentialSplit<f64> {
        PotentialSplit::new(AxialPotential::Gaussian { c }, TransversePotential::Gaussian { c }, 2).unwrap()
    }

    fn flat() -> PotentialSplit<f64> {
        PotentialSplit::new(AxialPotential::Zero, TransversePotential::Zero, 2).unwrap()
    }

    #[test]
    fn drift_at_origin_exponential_signed_parabola() {
        let w = WeightProfile::exponential(2.0).unwrap();
        // g(t) = e^{-at}(a + 2c|t|)
        assert!((drift_g(&w, &signed(1.0), 0.0).unwrap() - 2.0).abs() < 1e-15);
        let t = 0.7;
        let expected = (-2.0f64 * t).exp() * (2.0 + 2.0 * t);
        assert!((drift_g(&w, &signed(1.0), t).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn drift_vanishes_for_flat_data() {
        let w = WeightProfile::constant(1.0).unwrap();
        for t in [0.0, 1.5, 40.0] {
            assert_eq!(drift_g(&w, &flat(), t).unwrap(), 0.0);
        }
    }

    #[test]
    fn drift_matches_finite_differences_mixed_gaussian() {
        let (a, b, c) = (3.0f64, 0.1, 1.0);
        let w = WeightProfile::shifted_exponential(a, b).unwrap();
        let wf = |t: f64| b + (-a * t).exp();
        let v1 = |t: f64| -c * t * t;
        let h = 1e-6;
        let t = 1.0;
        let fd_w = (wf(t + h) - wf(t - h)) / (2.0 * h);
        let fd_v = (v1(t + h) - v1(t - h)) / (2.0 * h);
        let oracle = -fd_w - wf(t) * fd_v;
        assert!((drift_g(&w, &gaussian(c), t).unwrap() - oracle).abs() <= 1e-8);
    }

    #[test]
    fn power_weight_domain() {
        let w = WeightProfile::power(1.5, 1e-3).unwrap();
        assert!(matches!(drift_g(&w, &gaussian(1.0), 1e-3), Err(Error::Domain(_))));
        assert!(matches!(drift_g(&w, &gaussian(1.0), -1.0), Err(Error::Domain(_))));
        assert!(drift_g(&w, &gaussian(1.0), 0.5).is_ok());
    }

    #[test]
    fn condition_ii_examples() {
        let grid = default_grid(0.0, 6.0, DEFAULT_GRID_POINTS);
        let ok = validate_condition_ii(&WeightProfile::exponential(2.0).unwrap(), &signed(1.0), &grid).unwrap();
        assert_eq!(ok.status, ConditionStatus::Proved);
        assert_eq!(ok.closed_form.as_ref().unwrap().margin, Some(2.0));

        let bad = validate_condition_ii(&WeightProfile::exponential(1.0).unwrap(), &signed(1.0), &grid).unwrap();
        assert_eq!(bad.status, ConditionStatus::Fail);
        assert_eq!(bad.closed_form.as_ref().unwrap().margin, Some(-1.0));
        assert!(!bad.nonincreasing);
        assert_eq!(bad.increase_witness.unwrap().0, 0.0);

        let zero = validate_condition_ii(&WeightProfile::constant(1.0).unwrap(), &flat(), &grid).unwrap();
        assert!(zero.nonnegative && zero.nonincreasing && zero.passed());
    }

    #[test]
    fn tabulated_weight_is_empirical_only() {
        let xs = vec![0.0, 1.0, 2.0, 3.0, 6.0];
        let ys: Vec<f64> = xs.iter().map(|&x: &f64| (-2.0 * x).exp()).collect();
        let w = WeightProfile::tabulated(xs, ys).unwrap();
        let grid = default_grid(0.0, 6.0, 512);
        let r = validate_condition_ii(&w, &flat(), &grid).unwrap();
        assert!(r.closed_form.is_none());
        assert_ne!(r.status, ConditionStatus::Proved);
        assert!(r.nonnegative);
        assert!(drift_g(&w, &flat(), 6.5).is_err());
    }

    #[test]
    fn mixed_gaussian_with_offset_fails_on_half_line() {
        let w = WeightProfile::shifted_exponential(2.0, 0.1).unwrap();
        let grid = default_grid(0.0, 5.0, 2048);
        let r = validate_condition_ii(&w, &gaussian(1.0), &grid).unwrap();
        assert!(!r.nonincreasing);
        let (t0, _) = r.increase_witness.unwrap();
        assert!(t0 > 1.8 && t0 < 2.1, "first increase near t = 1.95, got {t0}");
        assert!(r.nonnegative);
    }

    #[test]
    fn empty_grid_rejected() {
        let w = WeightProfile::constant(1.0).unwrap();
        assert!(matches!(validate_condition_ii(&w, &flat(), &[]), Err(Error::Argument(_))));
    }

    #[test]
    fn ode_residual_examples() {
        let w2 = WeightProfile::exponential(2.0).unwrap();
        let r = check_ode_condition(&w2, &signed(1.0), 0.5).unwrap();
        assert!((r - 4.0).abs() < 1e-13);
        let k = WeightProfile::constant(3.0).unwrap();
        assert_eq!(check_ode_condition(&k, &flat(), 2.0).unwrap(), 0.0);
        let w1 = WeightProfile::exponential(1.0).unwrap();
        assert!((check_ode_condition(&w1, &gaussian(1.0), 0.0).unwrap() + 1.0).abs() < 1e-15);
        assert!(matches!(check_ode_condition(&w1, &signed(1.0), 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn drift_continuous_across_signed_parabola_kink() {
        let w = WeightProfile::exponential(2.0).unwrap();
        let v = signed(1.0);
        let left = drift_g(&w, &v, -1e-14).unwrap();
        let right = drift_g(&w, &v, 1e-14).unwrap();
        assert!((left - right).abs() <= 1e-12);
    }

    #[test]
    fn cross_mass() {
        assert!((gaussian(1.0).cross_mass().unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert!(flat().cross_mass().is_none());
        let d1 = PotentialSplit::new(AxialPotential::Gaussian { c: 1.0 }, TransversePotential::Zero, 1).unwrap();
        assert_eq!(d1.cross_mass(), Some(1.0));
    }
}
