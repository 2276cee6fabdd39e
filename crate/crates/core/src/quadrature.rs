//! One-dimensional quadrature: adaptive Simpson, adaptive Gauss–Kronrod (7/15)
//! and a fixed ten-point Gauss–Legendre rule for short smooth panels.

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
}

impl<T: Real> Estimate<T> {
    pub fn zero() -> Self {
        Self { value: T::zero(), error: T::zero() }
    }
}

impl<T: Real> std::ops::Add for Estimate<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { value: self.value + rhs.value, error: self.error + rhs.error }
    }
}

const SIMPSON_MAX_DEPTH: usize = 48;

/// Adaptive Simpson with Richardson correction, absolute tolerance `tol`.
pub fn simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> Estimate<T> {
    if a == b {
        return Estimate::zero();
    }
    let two = T::lit(2.0);
    let m = (a + b) / two;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb);
    simpson_step(&f, a, m, b, fa, fm, fb, whole, tol, SIMPSON_MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    m: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: usize,
) -> Estimate<T> {
    let two = T::lit(2.0);
    let (lm, rm) = ((a + m) / two, (m + b) / two);
    let (flm, frm) = (f(lm), f(rm));
    let six = T::lit(6.0);
    let four = T::lit(4.0);
    let left = (m - a) / six * (fa + four * flm + fm);
    let right = (b - m) / six * (fm + four * frm + fb);
    let delta = left + right - whole;
    let fifteen = T::lit(15.0);
    // stop once the panel is too narrow to split in this precision
    let degenerate = lm <= a || rm >= b || m <= lm || m >= rm;
    if depth == 0 || degenerate || delta.abs() <= fifteen * tol {
        return Estimate { value: left + right + delta / fifteen, error: delta.abs() / fifteen };
    }
    let half = tol / two;
    simpson_step(f, a, lm, m, fa, flm, fm, left, half, depth - 1)
        + simpson_step(f, m, rm, b, fm, frm, fb, right, half, depth - 1)
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
const G7_WEIGHTS: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Estimate<T> {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    let fc = f(mid);
    let mut kronrod = fc * T::lit(GK_WEIGHTS[7]);
    let mut gauss = fc * T::lit(G7_WEIGHTS[3]);
    for i in 0..7 {
        let dx = half * T::lit(GK_NODES[i]);
        let pair = f(mid - dx) + f(mid + dx);
        kronrod = kronrod + pair * T::lit(GK_WEIGHTS[i]);
        if i % 2 == 1 {
            gauss = gauss + pair * T::lit(G7_WEIGHTS[i / 2]);
        }
    }
    Estimate { value: kronrod * half, error: ((kronrod - gauss) * half).abs() }
}

const GK_MAX_DEPTH: usize = 40;

/// Adaptive Gauss–Kronrod quadrature by recursive bisection to absolute tolerance `tol`.
pub fn gauss_kronrod<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> Estimate<T> {
    if a == b {
        return Estimate::zero();
    }
    let whole = gk15(&f, a, b);
    gk_step(&f, a, b, whole, tol, GK_MAX_DEPTH)
}

fn gk_step<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, whole: Estimate<T>, tol: T, depth: usize) -> Estimate<T> {
    let m = (a + b) * T::lit(0.5);
    if whole.error <= tol || depth == 0 || m <= a || m >= b {
        return whole;
    }
    let left = gk15(f, a, m);
    let right = gk15(f, m, b);
    let refined = left + right;
    if (refined.value - whole.value).abs() <= tol && refined.error <= tol {
        return refined;
    }
    let half = tol * T::lit(0.5);
    gk_step(f, a, m, left, half, depth - 1) + gk_step(f, m, b, right, half, depth - 1)
}

const GL10_NODES: [f64; 5] = [
    0.148_874_338_981_631_2,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const GL10_WEIGHTS: [f64; 5] = [
    0.295_524_224_714_752_9,
    0.269_266_719_309_996_4,
    0.219_086_362_515_982,
    0.149_451_349_150_580_6,
    0.066_671_344_308_688_1,
];

/// Fixed ten-point Gauss–Legendre rule on `[a, b]` (exact for degree 19).
pub fn gauss_legendre10<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T) -> T {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    let mut acc = T::zero();
    for i in 0..5 {
        let dx = half * T::lit(GL10_NODES[i]);
        acc = acc + T::lit(GL10_WEIGHTS[i]) * (f(mid - dx) + f(mid + dx));
    }
    acc * half
}

/// Composite trapezoid-free Simpson rule with `n` (even) panels, for oracles and sanity checks.
pub fn composite_simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, n: usize) -> T {
    let n = if n % 2 == 1 { n + 1 } else { n.max(2) };
    let h = (b - a) / T::from_usize(n).unwrap();
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let x = a + h * T::from_usize(i).unwrap();
        let c = if i % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
        acc = acc + c * f(x);
    }
    acc * h / T::lit(3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_polynomial_is_exact() {
        let e = simpson(|x: f64| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12);
        assert!((e.value - 0.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_kronrod_gaussian() {
        let e = gauss_kronrod(|x: f64| (-x * x).exp(), 0.0, 8.0, 1e-14);
        assert!((e.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
        assert!(e.error < 1e-13);
    }

    #[test]
    fn kink_handled_by_adaptivity() {
        let e = gauss_kronrod(|x: f64| (x - 0.3).abs(), 0.0, 1.0, 1e-12);
        assert!((e.value - (0.045 + 0.245)).abs() < 1e-11);
        let s = simpson(|x: f64| (x - 0.3).abs(), 0.0, 1.0, 1e-12);
        assert!((s.value - 0.29).abs() < 1e-10);
    }

    #[test]
    fn legendre_degree_19() {
        let v = gauss_legendre10(|x: f64| x.powi(18), -1.0, 1.0);
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn composite_simpson_converges() {
        let v: f64 = composite_simpson(|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1000);
        assert!((v - 2.0).abs() < 1e-11);
    }
}
