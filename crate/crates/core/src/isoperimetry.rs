//! Weighted perimeter `P_{w,V}(A) = ∫_{∂A} w(x₁) e^V dH¹` of planar polygons,
//! comparison with the right half-space of equal `μ`-mass, and the
//! quantitative gap `∫_{AΔR_A} |g − g(t_A)| dμ`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{clip_axial, integrate_axial, Keep, Polygon};
use crate::measure1d::ReducedMeasure;
use crate::quadrature::gauss_kronrod;
use crate::scalar::Real;
use crate::weights::{
    default_grid, drift_unchecked, validate_condition_ii, PotentialSplit, ValidationReport, WeightProfile,
    DEFAULT_GRID_POINTS,
};

const EDGE_TOL: f64 = 1e-12;
const AREA_TOL: f64 = 1e-12;

fn check_polygon_domain<T: Real>(a: &Polygon<T>, w: &WeightProfile<T>) -> Result<()> {
    for p in a.vertices() {
        w.check_domain(p[0]).map_err(|e| Error::Geometry(format!("polygon vertex outside weight domain: {e}")))?;
    }
    Ok(())
}

fn check_plane<T: Real>(v: &PotentialSplit<T>) -> Result<()> {
    if v.dimension() != 2 {
        return Err(Error::Argument(format!("polygons live in the plane, potential has d = {}", v.dimension())));
    }
    Ok(())
}

/// Line integral of `w(x₁) e^V` along each edge, in vertex order.
pub fn edge_integrals<T: Real>(a: &Polygon<T>, w: &WeightProfile<T>, v: &PotentialSplit<T>) -> Result<Vec<T>> {
    check_plane(v)?;
    check_polygon_domain(a, w)?;
    let tol = T::lit(EDGE_TOL);
    Ok(a.edges()
        .map(|(p, q)| {
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            let len = (dx * dx + dy * dy).sqrt();
            let density = |s: T| {
                let (x, y) = (p[0] + s * dx, p[1] + s * dy);
                w.value(x) * v.v_plane(x, y).exp()
            };
            gauss_kronrod(density, T::zero(), T::one(), tol / len.max(T::one())).value * len
        })
        .collect())
}

/// `P_{w,V}(A)`.
pub fn weighted_perimeter<T: Real>(a: &Polygon<T>, w: &WeightProfile<T>, v: &PotentialSplit<T>) -> Result<T> {
    Ok(edge_integrals(a, w, v)?.into_iter().sum())
}

/// `μ(A) = ∫_A e^V dx`.
pub fn weighted_area<T: Real>(a: &Polygon<T>, v: &PotentialSplit<T>) -> Result<T> {
    check_plane(v)?;
    Ok(integrate_axial(a.vertices(), v, |_| T::one(), &v.kinks(), area_tol(v)).value)
}

fn area_tol<T: Real>(v: &PotentialSplit<T>) -> T {
    let scale = v.cross_mass().unwrap_or(T::one());
    T::lit(AREA_TOL) * scale
}

/// `t_A = Φ⁻¹(μ(A))`.
pub fn half_space_level<T: Real>(a: &Polygon<T>, measure: &ReducedMeasure<T>) -> Result<T> {
    let mass = weighted_area(a, measure.potential())?;
    measure.invert_phi(mass)
}

/// `∫_A g dμ`, the calibration lower bound for `P_{w,V}(A)`.
pub fn calibration_integral<T: Real>(a: &Polygon<T>, w: &WeightProfile<T>, v: &PotentialSplit<T>) -> Result<T> {
    check_plane(v)?;
    check_polygon_domain(a, w)?;
    Ok(integrate_axial(a.vertices(), v, |x| drift_unchecked(w, v, x), &v.kinks(), area_tol(v)).value)
}

/// `∫_{AΔR_A} |g(x₁) − g(t_A)| dμ` with `R_A = {x₁ > t_A}`.
pub fn quantitative_gap<T: Real>(
    a: &Polygon<T>,
    t_a: T,
    w: &WeightProfile<T>,
    v: &PotentialSplit<T>,
    measure: &ReducedMeasure<T>,
) -> Result<T> {
    check_plane(v)?;
    check_polygon_domain(a, w)?;
    w.check_domain(t_a)?;
    let g_a = drift_unchecked(w, v, t_a);
    let integrand = |x: T| (drift_unchecked(w, v, x) - g_a).abs();
    let tol = area_tol(v);
    let mut cuts = v.kinks();
    cuts.push(t_a);

    let below = clip_axial(a.vertices(), t_a, Keep::Below);
    let above = clip_axial(a.vertices(), t_a, Keep::Above);
    if (!below.is_empty() && below.len() < 3) || (!above.is_empty() && above.len() < 3) {
        return Err(Error::Geometry(format!(
            "degenerate clip at t_A = {t_a}: {} / {} vertices",
            below.len(),
            above.len()
        )));
    }
    let left_part = integrate_axial(&below, v, integrand, &cuts, tol).value;
    let inside_right = integrate_axial(&above, v, integrand, &cuts, tol).value;
    // R_A \ A = R_A minus R_A ∩ A, the first by the reduced measure
    let t_max = measure.t_max();
    let whole_right = if t_max > t_a {
        gauss_kronrod(|z| integrand(z) * measure.density(z), t_a, t_max, tol).value
    } else {
        T::zero()
    };
    let right_part = (whole_right - inside_right).max(T::zero());
    Ok(left_part + right_part)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsoReport<T> {
    pub vertices: usize,
    pub mu_a: T,
    pub t_a: T,
    pub p_a: T,
    pub p_ra: T,
    pub gap_bound: T,
    /// `∫_A g dμ`
    pub calibration: T,
    /// `P_A − P_RA − max(0, gap_bound)`
    pub slack: T,
    pub holds: bool,
    pub calibration_holds: bool,
    /// drift condition verdict for `(w, V)`; when false the report makes no claim
    pub hypotheses_met: bool,
}

/// A fixed `(w, V, μ)` with its drift condition verdict, reused across polygons.
#[derive(Debug, Clone)]
pub struct HalfSpaceProblem<T> {
    pub weight: WeightProfile<T>,
    pub potential: PotentialSplit<T>,
    pub measure: ReducedMeasure<T>,
    pub condition: ValidationReport<T>,
}

impl<T: Real> HalfSpaceProblem<T> {
    /// Validates drift condition on the default grid over the working
    /// interval `[max(0, weight domain start), T_max]`.
    pub fn new(weight: WeightProfile<T>, potential: PotentialSplit<T>, measure: ReducedMeasure<T>) -> Result<Self> {
        check_plane(&potential)?;
        let (wlo, whi) = weight.domain();
        let mut lo = wlo.max(T::zero());
        if lo == wlo && !(weight.check_domain(lo).is_ok()) {
            lo = lo + T::lit(1e-9) * (T::one() + lo.abs());
        }
        let hi = measure.t_max().min(whi);
        let grid = default_grid(lo, hi, DEFAULT_GRID_POINTS);
        let condition = validate_condition_ii(&weight, &potential, &grid)?;
        Ok(Self { weight, potential, measure, condition })
    }

    pub fn check(&self, a: &Polygon<T>) -> Result<IsoReport<T>> {
        isoperimetric_check(a, &self.weight, &self.potential, &self.measure, self.condition.passed())
    }
}

/// Full comparison of `A` with `R_A`.
pub fn isoperimetric_check<T: Real>(
    a: &Polygon<T>,
    w: &WeightProfile<T>,
    v: &PotentialSplit<T>,
    measure: &ReducedMeasure<T>,
    hypotheses_met: bool,
) -> Result<IsoReport<T>> {
    let p_a = weighted_perimeter(a, w, v)?;
    let mu_a = weighted_area(a, v)?;
    let t_a = measure.invert_phi(mu_a)?;
    let p_ra = measure.h_of_mass(w, mu_a)?;
    let gap_bound = quantitative_gap(a, t_a, w, v, measure)?;
    let calibration = calibration_integral(a, w, v)?;
    let tol = T::lit(1e-8) * (T::one() + p_a);
    let slack = p_a - p_ra - gap_bound.max(T::zero());
    Ok(IsoReport {
        vertices: a.len(),
        mu_a,
        t_a,
        p_a,
        p_ra,
        gap_bound,
        calibration,
        slack,
        holds: slack >= -tol,
        calibration_holds: calibration <= p_a + tol,
        hypotheses_met,
    })
}

/// Random star-shaped polygon about a centre in `[0.3, 2.5] × [−1, 1]` with
/// 5–12 vertices and radii in `[0.1, 1.0]`, rejection-sampled so every
/// vertex satisfies `x₁ > lower`.
pub fn random_star_polygon<T: Real, R: Rng>(rng: &mut R, lower: T) -> Polygon<T> {
    let lower = lower.as_f64().max(0.0);
    loop {
        let cx = rng.random_range(0.3..2.5);
        let cy = rng.random_range(-1.0..1.0);
        let n = rng.random_range(5..=12usize);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let vertices: Vec<[T; 2]> = angles
            .iter()
            .map(|&th| {
                let r = rng.random_range(0.1..1.0);
                [T::lit(cx + r * th.cos()), T::lit(cy + r * th.sin())]
            })
            .collect();
        if vertices.iter().any(|p| p[0].as_f64() <= lower) {
            continue;
        }
        if let Ok(p) = Polygon::new(vertices) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{AxialPotential, TransversePotential};

    fn flat() -> PotentialSplit<f64> {
        PotentialSplit::new(AxialPotential::Zero, TransversePotential::Zero, 2).unwrap()
    }

    fn mixed() -> (WeightProfile<f64>, PotentialSplit<f64>, ReducedMeasure<f64>) {
        let w = WeightProfile::exponential(2.0).unwrap();
        let v =
            PotentialSplit::new(AxialPotential::SignedParabola { c: 1.0 }, TransversePotential::Gaussian { c: 1.0 }, 2)
                .unwrap();
        let m = ReducedMeasure::build(&v, None).unwrap();
        (w, v, m)
    }

    #[test]
    fn euclidean_square() {
        let sq = Polygon::rectangle(1.0, 2.0, 0.0, 1.0).unwrap();
        let w = WeightProfile::constant(1.0).unwrap();
        assert!((weighted_perimeter(&sq, &w, &flat()).unwrap() - 4.0).abs() < 1e-12);
        assert!((weighted_area(&sq, &flat()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_mass_level_is_zero() {
        let (_, _, m) = mixed();
        assert_eq!(m.invert_phi(m.total()).unwrap(), 0.0);
    }

    #[test]
    fn gaussian_slab_level_closed_form() {
        let (_, v, m) = mixed();
        // slab [a, b] x [-L, L], L large enough that the cross-section is complete
        let (a, b, l) = (0.4, 6.0, 9.0);
        let slab = Polygon::rectangle(a, b, -l, l).unwrap();
        let t_a = half_space_level(&slab, &m).unwrap();
        // μ(slab) = √π · √π/2 (erfc(a) − erfc(b)) ⇒ Φ(t_A) = (π/2) erfc(t_A)
        let mass = std::f64::consts::PI / 2.0 * (libm::erfc(a) - libm::erfc(b));
        assert!((weighted_area(&slab, &v).unwrap() - mass).abs() < 1e-12);
        assert!((std::f64::consts::PI / 2.0 * libm::erfc(t_a) - mass).abs() < 1e-11);
        assert!((m.phi(t_a) - mass).abs() < 1e-10 * m.total());
    }

    #[test]
    fn half_space_slab_is_equality_case() {
        let (w, v, m) = mixed();
        let t = 0.8;
        let slab = Polygon::rectangle(t, m.t_max(), -9.0, 9.0).unwrap();
        let r = isoperimetric_check(&slab, &w, &v, &m, true).unwrap();
        assert!((r.t_a - t).abs() < 1e-9, "{r:?}");
        assert!(r.gap_bound.abs() < 1e-9);
        assert!((r.p_a - r.p_ra).abs() < 1e-9 * r.p_a);
        assert!(r.holds);
    }

    #[test]
    fn left_edge_recovers_half_space_perimeter() {
        let (w, v, m) = mixed();
        let t = 0.55;
        let slab = Polygon::rectangle(t, 3.0, -9.0, 9.0).unwrap();
        let edges = edge_integrals(&slab, &w, &v).unwrap();
        let left = edges[3];
        let h = m.h_of_mass(&w, m.phi(t)).unwrap();
        assert!((left - h).abs() <= 1e-6 * h);
    }

    #[test]
    fn random_polygon_separates_from_half_space() {
        let (w, v, m) = mixed();
        let mut rng = crate::seeds::trial_rng(7, 0);
        for _ in 0..20 {
            let p = random_star_polygon(&mut rng, 0.0);
            let r = isoperimetric_check(&p, &w, &v, &m, true).unwrap();
            assert!(r.holds && r.calibration_holds, "{r:?}");
            assert!(r.gap_bound >= 0.0);
            assert!(r.p_a >= r.p_ra);
        }
    }

    #[test]
    fn violated_hypotheses_are_flagged() {
        let w = WeightProfile::exponential(1.0).unwrap();
        let v =
            PotentialSplit::new(AxialPotential::SignedParabola { c: 1.0 }, TransversePotential::Gaussian { c: 1.0 }, 2)
                .unwrap();
        let m = ReducedMeasure::build(&v, None).unwrap();
        let problem = HalfSpaceProblem::new(w, v, m).unwrap();
        assert!(!problem.condition.passed());
        let r = problem.check(&Polygon::rectangle(0.5, 1.0, 0.0, 0.5).unwrap()).unwrap();
        assert!(!r.hypotheses_met);
    }

    #[test]
    fn power_weight_rejects_polygons_near_axis() {
        let w = WeightProfile::power(1.0, 0.2).unwrap();
        let v = PotentialSplit::new(AxialPotential::Gaussian { c: 1.0 }, TransversePotential::Gaussian { c: 1.0 }, 2)
            .unwrap();
        let p = Polygon::rectangle(0.1, 1.0, 0.0, 1.0).unwrap();
        assert!(matches!(weighted_perimeter(&p, &w, &v), Err(Error::Geometry(_))));
    }
}
