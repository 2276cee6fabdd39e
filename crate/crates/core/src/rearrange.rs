//! Distribution functions and rearrangements with respect to `μ`.
//!
//! A [`MassFunction`] is a finite list of `(value, mass)` cells; it is the
//! common substrate for grid fields and sampled sources. The decreasing
//! rearrangement `f⋆` lives on the mass axis `(0, μ(supp f)]`, the right
//! rearrangement `f*` on the `x₁` axis through `f*(x₁) = f⋆(Φ(x₁))`.

use crate::error::{Error, Result};
use crate::measure1d::ReducedMeasure;
use crate::quadrature::gauss_kronrod;
use crate::scalar::Real;

/// Which endpoint of each piece belongs to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Continuity {
    /// pieces are `(bᵢ, bᵢ₊₁]`
    Left,
    /// pieces are `[bᵢ, bᵢ₊₁)`
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    None,
    NonIncreasing,
    NonDecreasing,
}

/// Piecewise constant function on `[b₀, b_k]`, zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct StepProfile<T> {
    breakpoints: Vec<T>,
    values: Vec<T>,
    continuity: Continuity,
    monotonicity: Monotonicity,
}

impl<T: Real> StepProfile<T> {
    pub fn new(
        breakpoints: Vec<T>,
        values: Vec<T>,
        continuity: Continuity,
        monotonicity: Monotonicity,
    ) -> Result<Self> {
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::Argument(format!(
                "step profile needs one more breakpoint than values ({} vs {})",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Argument("step profile breakpoints must be strictly increasing".into()));
        }
        let ok = match monotonicity {
            Monotonicity::None => true,
            Monotonicity::NonIncreasing => values.windows(2).all(|w| w[1] <= w[0]),
            Monotonicity::NonDecreasing => values.windows(2).all(|w| w[1] >= w[0]),
        };
        if !ok {
            return Err(Error::Argument(format!("step profile values violate {monotonicity:?}")));
        }
        Ok(Self { breakpoints, values, continuity, monotonicity })
    }

    fn empty(continuity: Continuity, monotonicity: Monotonicity) -> Self {
        Self { breakpoints: vec![T::zero()], values: Vec::new(), continuity, monotonicity }
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn continuity(&self) -> Continuity {
        self.continuity
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    /// Right end of the support.
    pub fn end(&self) -> T {
        *self.breakpoints.last().unwrap()
    }

    pub fn eval(&self, x: T) -> T {
        let b = &self.breakpoints;
        let k = self.values.len();
        if k == 0 {
            return T::zero();
        }
        let inside = match self.continuity {
            Continuity::Left => x > b[0] && x <= b[k],
            Continuity::Right => x >= b[0] && x < b[k],
        };
        if !inside {
            return T::zero();
        }
        // number of breakpoints strictly below x (left) or at most x (right)
        let count = match self.continuity {
            Continuity::Left => b.partition_point(|p| *p < x),
            Continuity::Right => b.partition_point(|p| *p <= x),
        };
        self.values[count - 1]
    }

    /// `∫_lo^hi` of the profile.
    pub fn integral(&self, lo: T, hi: T) -> T {
        if !(hi > lo) {
            return T::zero();
        }
        let mut acc = T::zero();
        for (i, &v) in self.values.iter().enumerate() {
            let a = self.breakpoints[i].max(lo);
            let b = self.breakpoints[i + 1].min(hi);
            if b > a {
                acc = acc + v * (b - a);
            }
        }
        acc
    }

    /// Lebesgue measure of `{x : profile(x) > t}`.
    pub fn measure_above(&self, t: T) -> T {
        let mut acc = T::zero();
        for (i, &v) in self.values.iter().enumerate() {
            if v > t {
                acc = acc + (self.breakpoints[i + 1] - self.breakpoints[i]);
            }
        }
        acc
    }

    /// `∫ f g` for two profiles on the merged partition.
    pub fn integral_of_product(&self, other: &Self) -> T {
        let mut cuts: Vec<T> = self.breakpoints.iter().chain(other.breakpoints.iter()).copied().collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        let mut acc = T::zero();
        for w in cuts.windows(2) {
            let mid = (w[0] + w[1]) * T::lit(0.5);
            let p = self.eval(mid) * other.eval(mid);
            if p != T::zero() {
                acc = acc + p * (w[1] - w[0]);
            }
        }
        acc
    }
}

/// Discrete nonnegative function: `f = vᵢ` on a cell of mass `mᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction<T> {
    values: Vec<T>,
    masses: Vec<T>,
}

impl<T: Real> MassFunction<T> {
    pub fn new(values: Vec<T>, masses: Vec<T>) -> Result<Self> {
        if values.len() != masses.len() {
            return Err(Error::Argument(format!("{} values but {} masses", values.len(), masses.len())));
        }
        if let Some(v) = values.iter().find(|v| !(**v >= T::zero()) || !v.is_finite()) {
            return Err(Error::Argument(format!("mass function values must be finite and >= 0 (got {v})")));
        }
        if let Some(m) = masses.iter().find(|m| !(**m > T::zero()) || !m.is_finite()) {
            return Err(Error::Argument(format!("cell masses must be finite and > 0 (got {m})")));
        }
        Ok(Self { values, masses })
    }

    /// Indicator of a set of mass `mass` carried by one cell.
    pub fn indicator(mass: T) -> Result<Self> {
        Self::new(vec![T::one()], vec![mass])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn total_mass(&self) -> T {
        self.masses.iter().copied().sum()
    }

    /// `∫ f dμ`.
    pub fn integral(&self) -> T {
        self.values.iter().zip(&self.masses).map(|(&v, &m)| v * m).sum()
    }

    pub fn max_value(&self) -> T {
        self.values.iter().fold(T::zero(), |a, &b| a.max(b))
    }

    /// Distinct values in decreasing order with the mass carried by each.
    pub fn merged_levels(&self) -> Vec<(T, T)> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&i, &j| self.values[j].partial_cmp(&self.values[i]).unwrap().then(i.cmp(&j)));
        let mut levels: Vec<(T, T)> = Vec::new();
        for i in order {
            let (v, m) = (self.values[i], self.masses[i]);
            match levels.last_mut() {
                Some(last) if last.0 == v => last.1 = last.1 + m,
                _ => levels.push((v, m)),
            }
        }
        levels
    }

    /// Both functions must live on the same cells.
    fn check_same_cells(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Consistency(format!(
                "cell decompositions differ in size ({} vs {})",
                self.len(),
                other.len()
            )));
        }
        for (i, (&a, &b)) in self.masses.iter().zip(&other.masses).enumerate() {
            if (a - b).abs() > T::lit(1e-12) * a.max(b) {
                return Err(Error::Consistency(format!("cell {i} has masses {a} and {b}")));
            }
        }
        Ok(())
    }
}

/// `μ_f(t) = μ({f > t})`.
pub fn distribution<T: Real>(f: &MassFunction<T>, t: T) -> T {
    f.values.iter().zip(&f.masses).filter(|(v, _)| **v > t).map(|(_, m)| *m).sum()
}

/// `μ_f` as a right-continuous step profile in the threshold variable on `[0, max f]`.
pub fn distribution_profile<T: Real>(f: &MassFunction<T>) -> StepProfile<T> {
    let levels = f.merged_levels();
    if levels.iter().all(|(v, _)| *v <= T::zero()) {
        return StepProfile::empty(Continuity::Right, Monotonicity::NonIncreasing);
    }
    // mass at or above each level, accumulated from the top
    let mut above: Vec<T> = Vec::with_capacity(levels.len());
    let mut acc = T::zero();
    for (_, m) in &levels {
        acc = acc + *m;
        above.push(acc);
    }
    let mut breakpoints = vec![T::zero()];
    let mut values = Vec::with_capacity(levels.len());
    for (j, (v, _)) in levels.iter().enumerate().rev() {
        if *v > T::zero() {
            // thresholds in [previous level, v) see every cell with value >= v
            breakpoints.push(*v);
            values.push(above[j]);
        }
    }
    StepProfile { breakpoints, values, continuity: Continuity::Right, monotonicity: Monotonicity::NonIncreasing }
}

/// `f⋆(s) = inf{t > 0 : μ_f(t) < s}` on `(0, μ(supp f)]`.
///
/// The pieces are left-open, so `{s : f⋆(s) > t} = (0, μ_f(t)]` exactly.
pub fn decreasing_rearrangement<T: Real>(f: &MassFunction<T>) -> StepProfile<T> {
    let levels = f.merged_levels();
    if levels.is_empty() {
        return StepProfile::empty(Continuity::Left, Monotonicity::NonIncreasing);
    }
    let mut breakpoints = Vec::with_capacity(levels.len() + 1);
    let mut values = Vec::with_capacity(levels.len());
    breakpoints.push(T::zero());
    let mut acc = T::zero();
    for (v, m) in levels {
        acc = acc + m;
        breakpoints.push(acc);
        values.push(v);
    }
    StepProfile { breakpoints, values, continuity: Continuity::Left, monotonicity: Monotonicity::NonIncreasing }
}

/// Right increasing rearrangement `f*(x₁) = f⋆(Φ(x₁))`.
#[derive(Debug, Clone, PartialEq)]
pub struct RightRearrangement<T> {
    star: StepProfile<T>,
    /// `zⱼ = Φ⁻¹(Sⱼ)` for each cumulative mass breakpoint `Sⱼ`, `j ≥ 1`, clamped to `T_max`.
    jumps: Vec<T>,
}

impl<T: Real> RightRearrangement<T> {
    pub fn decreasing(&self) -> &StepProfile<T> {
        &self.star
    }

    /// Left ends of the pieces: `f* = values[j]` on `[jumps[j], jumps[j-1])`.
    pub fn jumps(&self) -> &[T] {
        &self.jumps
    }

    /// Level `t_f = Φ⁻¹(μ(supp f))` left of which `f*` vanishes.
    pub fn support_start(&self) -> T {
        self.jumps.last().copied().unwrap_or(T::infinity())
    }

    pub fn eval(&self, x1: T, measure: &ReducedMeasure<T>) -> T {
        self.star.eval(measure.phi(x1))
    }

    /// `μ({f* > t})` computed through the jump abscissae and `Φ`.
    pub fn distribution(&self, t: T, measure: &ReducedMeasure<T>) -> T {
        let values = self.star.values();
        // values are decreasing: the pieces above t are a prefix
        let count = values.partition_point(|v| *v > t);
        if count == 0 {
            T::zero()
        } else {
            measure.phi(self.jumps[count - 1])
        }
    }
}

pub fn right_rearrangement<T: Real>(f: &MassFunction<T>, measure: &ReducedMeasure<T>) -> Result<RightRearrangement<T>> {
    let mass = f.total_mass();
    let total = measure.total();
    if mass > total * (T::one() + T::lit(1e-8)) {
        return Err(Error::Consistency(format!("function carries mass {mass} but the half-space has {total}")));
    }
    let star = decreasing_rearrangement(f);
    let floor = measure.min_invertible_mass();
    let jumps = star.breakpoints()[1..]
        .iter()
        .map(|&s| if s <= floor { Ok(measure.t_max()) } else { measure.invert_phi(s.min(total)) })
        .collect::<Result<Vec<T>>>()?;
    Ok(RightRearrangement { star, jumps })
}

/// The three members of the layer-cake identity at axial level `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerCake<T> {
    /// `∫₀^{Φ(t)} f⋆(s) ds`
    pub lhs: T,
    /// `∫₀^∞ min(μ_f(τ), Φ(t)) dτ`
    pub mid: T,
    /// `∫_{x₁ > t} f* dμ`, by quadrature of `f* λ` in `x₁`
    pub rhs: T,
}

impl<T: Real> LayerCake<T> {
    pub fn max_relative_spread(&self) -> T {
        let scale = self.lhs.abs().max(self.mid.abs()).max(self.rhs.abs());
        if scale == T::zero() {
            return T::zero();
        }
        let d = (self.lhs - self.mid).abs().max((self.mid - self.rhs).abs()).max((self.lhs - self.rhs).abs());
        d / scale
    }
}

pub fn layer_cake_check<T: Real>(f: &MassFunction<T>, measure: &ReducedMeasure<T>, t: T) -> Result<LayerCake<T>> {
    let rear = right_rearrangement(f, measure)?;
    let cap = measure.phi(t);
    let lhs = rear.decreasing().integral(T::zero(), cap);

    let dist = distribution_profile(f);
    let mut mid = T::zero();
    for (i, &m) in dist.values().iter().enumerate() {
        mid = mid + (dist.breakpoints()[i + 1] - dist.breakpoints()[i]) * m.min(cap);
    }

    let tol = T::lit(1e-15) * measure.total();
    let t_max = measure.t_max();
    let mut rhs = T::zero();
    let mut upper = T::infinity();
    for (j, &v) in rear.decreasing().values().iter().enumerate() {
        let lower = rear.jumps()[j].max(t);
        if upper > lower && v != T::zero() {
            let top = upper.min(t_max);
            let mut piece =
                if top > lower { gauss_kronrod(|z| measure.density(z), lower, top, tol).value } else { T::zero() };
            if upper > t_max {
                piece = piece + measure.phi(t_max.max(lower));
            }
            rhs = rhs + v * piece;
        }
        upper = upper.min(rear.jumps()[j]);
        if upper <= t {
            break;
        }
    }
    Ok(LayerCake { lhs, mid, rhs })
}

/// `(∫ f g dμ, ∫₀^{μ} f⋆ g⋆ ds)`.
pub fn hardy_littlewood<T: Real>(
    f: &MassFunction<T>,
    g: &MassFunction<T>,
    measure: &ReducedMeasure<T>,
) -> Result<(T, T)> {
    f.check_same_cells(g)?;
    let mass = f.total_mass();
    if mass > measure.total() * (T::one() + T::lit(1e-8)) {
        return Err(Error::Consistency(format!(
            "cells carry mass {mass} beyond the half-space mass {}",
            measure.total()
        )));
    }
    let lhs = f.values.iter().zip(&g.values).zip(&f.masses).map(|((&a, &b), &m)| a * b * m).sum();
    let rhs = decreasing_rearrangement(f).integral_of_product(&decreasing_rearrangement(g));
    Ok((lhs, rhs))
}

/// `(∫_A f dμ, ∫₀^{μ(A)} f⋆ ds)` for the cells selected by `subset`.
pub fn hardy_set_bound<T: Real>(f: &MassFunction<T>, subset: &[bool], measure: &ReducedMeasure<T>) -> Result<(T, T)> {
    if subset.len() != f.len() {
        return Err(Error::Consistency(format!("subset mask has {} entries for {} cells", subset.len(), f.len())));
    }
    if f.total_mass() > measure.total() * (T::one() + T::lit(1e-8)) {
        return Err(Error::Consistency("cells carry more mass than the half-space".into()));
    }
    let mut lhs = T::zero();
    let mut mass = T::zero();
    for ((&v, &m), &inside) in f.values.iter().zip(&f.masses).zip(subset) {
        if inside {
            lhs = lhs + v * m;
            mass = mass + m;
        }
    }
    let rhs = decreasing_rearrangement(f).integral(T::zero(), mass);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{AxialPotential, PotentialSplit, TransversePotential};
    use proptest::prelude::*;

    fn measure() -> ReducedMeasure<f64> {
        let v = PotentialSplit::new(AxialPotential::Gaussian { c: 1.0 }, TransversePotential::Gaussian { c: 1.0 }, 2)
            .unwrap();
        ReducedMeasure::build(&v, None).unwrap()
    }

    #[test]
    fn indicator_distribution_and_rearrangement() {
        let f = MassFunction::indicator(0.3).unwrap();
        assert_eq!(distribution(&f, 0.5), 0.3);
        assert_eq!(distribution(&f, 1.0), 0.0);
        assert_eq!(distribution(&f, -1.0), 0.3);
        let star = decreasing_rearrangement(&f);
        assert_eq!(star.breakpoints(), &[0.0, 0.3]);
        assert_eq!(star.values(), &[1.0]);
        assert_eq!(star.eval(0.3), 1.0);
        assert_eq!(star.eval(0.300001), 0.0);
        assert_eq!(star.eval(0.0), 0.0);
    }

    #[test]
    fn indicator_right_rearrangement_is_half_space() {
        let mu = measure();
        let f = MassFunction::indicator(0.3).unwrap();
        let r = right_rearrangement(&f, &mu).unwrap();
        let t_a = r.support_start();
        assert!((mu.phi(t_a) - 0.3).abs() < 1e-13);
        assert_eq!(r.eval(t_a + 1e-9, &mu), 1.0);
        assert_eq!(r.eval(t_a - 1e-6, &mu), 0.0);
    }

    #[test]
    fn constant_function_rearranges_to_constant() {
        let f: MassFunction<f64> = MassFunction::new(vec![2.5; 4], vec![0.1, 0.2, 0.3, 0.05]).unwrap();
        let star = decreasing_rearrangement(&f);
        assert_eq!(star.values(), &[2.5]);
        assert!((star.end() - 0.65).abs() < 1e-15);
    }

    #[test]
    fn mass_mismatch_is_reported() {
        let mu = measure();
        let f = MassFunction::new(vec![1.0], vec![2.0]).unwrap();
        assert!(matches!(right_rearrangement(&f, &mu), Err(Error::Consistency(_))));
    }

    #[test]
    fn disjoint_indicators() {
        let mu = measure();
        let f = MassFunction::new(vec![1.0, 0.0], vec![0.2, 0.4]).unwrap();
        let g = MassFunction::new(vec![0.0, 1.0], vec![0.2, 0.4]).unwrap();
        let (lhs, rhs) = hardy_littlewood(&f, &g, &mu).unwrap();
        assert_eq!(lhs, 0.0);
        assert!((rhs - 0.2).abs() < 1e-15);
    }

    #[test]
    fn decomposition_mismatch() {
        let mu = measure();
        let f = MassFunction::new(vec![1.0, 0.0], vec![0.2, 0.4]).unwrap();
        let g = MassFunction::new(vec![1.0, 0.0], vec![0.2, 0.5]).unwrap();
        assert!(matches!(hardy_littlewood(&f, &g, &mu), Err(Error::Consistency(_))));
        let h = MassFunction::new(vec![1.0], vec![0.2]).unwrap();
        assert!(matches!(hardy_littlewood(&f, &h, &mu), Err(Error::Consistency(_))));
    }

    #[test]
    fn set_bound_edge_cases() {
        let mu = measure();
        let f = MassFunction::new(vec![3.0, 1.0, 2.0], vec![0.1, 0.2, 0.3]).unwrap();
        let (l, r) = hardy_set_bound(&f, &[true, true, true], &mu).unwrap();
        assert!((l - r).abs() < 1e-15);
        assert_eq!(hardy_set_bound(&f, &[false; 3], &mu).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn layer_cake_indicator_at_origin() {
        let mu = measure();
        let f = MassFunction::indicator(0.3).unwrap();
        let lc = layer_cake_check(&f, &mu, 0.0).unwrap();
        for v in [lc.lhs, lc.mid, lc.rhs] {
            assert!((v - 0.3).abs() < 1e-12, "{lc:?}");
        }
    }

    #[test]
    fn layer_cake_in_the_tail() {
        let mu = measure();
        let f = MassFunction::new(vec![2.0, 1.0], vec![0.5, 0.6]).unwrap();
        let lc = layer_cake_check(&f, &mu, mu.t_max()).unwrap();
        let bound = mu.eps_tail() * 2.0;
        assert!(lc.lhs <= bound && lc.mid <= bound && lc.rhs <= bound * 1.0001, "{lc:?}");
    }

    #[test]
    fn layer_cake_with_zero_cells() {
        let mu = measure();
        let f = MassFunction::new(vec![0.0, 0.5, 0.25, 0.0, 0.9], vec![0.1, 0.2, 0.1, 0.3, 0.05]).unwrap();
        let dist = distribution_profile(&f);
        assert_eq!(dist.values(), &[0.35, 0.25, 0.05]);
        for t in [0.0, 0.3, 0.8] {
            let lc = layer_cake_check(&f, &mu, t).unwrap();
            assert!(lc.max_relative_spread() < 1e-10, "{lc:?}");
        }
    }

    fn cells() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (1usize..40).prop_flat_map(|n| {
            (
                proptest::collection::vec(prop_oneof![0.0..5.0f64, Just(1.0), Just(0.0)], n),
                proptest::collection::vec(1e-3..0.03f64, n),
            )
        })
    }

    proptest! {
        #[test]
        fn layer_cake_agrees((values, masses) in cells(), t in 0.0..4.0f64) {
            let f = MassFunction::new(values, masses).unwrap();
            let lc = layer_cake_check(&f, &measure(), t).unwrap();
            prop_assert!(lc.max_relative_spread() <= 1e-9, "{:?}", lc);
        }

        #[test]
        fn equimeasurable((values, masses) in cells(), ts in proptest::collection::vec(-0.5..5.5f64, 20)) {
            let f = MassFunction::new(values, masses).unwrap();
            let star = decreasing_rearrangement(&f);
            let total = f.total_mass();
            for t in ts {
                let a = distribution(&f, t);
                let b = star.measure_above(t);
                prop_assert!((a - b).abs() <= 1e-12 * total);
                if t >= 0.0 {
                    // {s : f⋆(s) > t} = (0, μ_f(t)]
                    prop_assert!(a == 0.0 || star.eval(a * (1.0 - 1e-12)) > t);
                    prop_assert!(star.eval(a + 1e-9) <= t);
                }
            }
        }

        #[test]
        fn star_is_nonincreasing_and_left_continuous((values, masses) in cells()) {
            let f = MassFunction::new(values, masses).unwrap();
            let star = decreasing_rearrangement(&f);
            prop_assert!(star.values().windows(2).all(|w| w[1] < w[0]));
            for (i, &b) in star.breakpoints()[1..].iter().enumerate() {
                prop_assert_eq!(star.eval(b), star.values()[i]);
            }
        }

        #[test]
        fn hardy_littlewood_holds((values, masses) in cells(), seed in any::<u64>()) {
            let mu = measure();
            let g_values: Vec<f64> = values.iter().enumerate()
                .map(|(i, v)| (seed.wrapping_mul(i as u64 + 1) % 97) as f64 / 19.0 + v * 0.1)
                .collect();
            let f = MassFunction::new(values, masses.clone()).unwrap();
            let g = MassFunction::new(g_values, masses).unwrap();
            let (lhs, rhs) = hardy_littlewood(&f, &g, &mu).unwrap();
            prop_assert!(lhs <= rhs + 1e-10);
            let (ff, rr) = hardy_littlewood(&f, &f, &mu).unwrap();
            prop_assert!((ff - rr).abs() <= 1e-10);
        }
    }
}
