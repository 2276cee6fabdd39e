//! Piecewise cubic Hermite interpolation.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Cubic Hermite interpolant through `(x_i, y_i)` with prescribed slopes `d_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hermite<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    ds: Vec<T>,
}

impl<T: Real> Hermite<T> {
    pub fn new(xs: Vec<T>, ys: Vec<T>, ds: Vec<T>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != ys.len() || xs.len() != ds.len() {
            return Err(Error::Argument(format!(
                "hermite interpolant needs >= 2 matching knots (got {}, {}, {})",
                xs.len(),
                ys.len(),
                ds.len()
            )));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Argument("hermite knots must be strictly increasing".into()));
        }
        Ok(Self { xs, ys, ds })
    }

    /// Monotonicity-preserving interpolant (Fritsch–Carlson slopes).
    pub fn monotone(xs: Vec<T>, ys: Vec<T>) -> Result<Self> {
        let n = xs.len();
        if n < 2 || ys.len() != n {
            return Err(Error::Argument("monotone interpolant needs >= 2 matching knots".into()));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Argument("monotone interpolant knots must be strictly increasing".into()));
        }
        let secants: Vec<T> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])).collect();
        let mut ds = vec![T::zero(); n];
        ds[0] = secants[0];
        ds[n - 1] = secants[n - 2];
        for i in 1..n - 1 {
            let (s0, s1) = (secants[i - 1], secants[i]);
            ds[i] = if s0 * s1 <= T::zero() {
                T::zero()
            } else {
                // weighted harmonic mean
                let h0 = xs[i] - xs[i - 1];
                let h1 = xs[i + 1] - xs[i];
                let w0 = T::lit(2.0) * h1 + h0;
                let w1 = h1 + T::lit(2.0) * h0;
                (w0 + w1) / (w0 / s0 + w1 / s1)
            };
        }
        Ok(Self { xs, ys, ds })
    }

    pub fn domain(&self) -> (T, T) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    pub fn knots(&self) -> &[T] {
        &self.xs
    }

    pub fn values(&self) -> &[T] {
        &self.ys
    }

    pub fn slopes(&self) -> &[T] {
        &self.ds
    }

    fn segment(&self, x: T) -> usize {
        let n = self.xs.len();
        match self.xs.binary_search_by(|p| p.partial_cmp(&x).unwrap_or(std::cmp::Ordering::Less)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }

    /// Value, first and second derivative at `x` (extrapolates the end cubics outside the knots).
    pub fn eval3(&self, x: T) -> (T, T, T) {
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (d0, d1) = (self.ds[i] * h, self.ds[i + 1] * h);
        let one = T::one();
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let six = T::lit(6.0);
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = two * t3 - three * t2 + one;
        let h10 = t3 - two * t2 + t;
        let h01 = -two * t3 + three * t2;
        let h11 = t3 - t2;
        let value = h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1;
        let dh00 = six * t2 - six * t;
        let dh10 = three * t2 - T::lit(4.0) * t + one;
        let dh01 = -six * t2 + six * t;
        let dh11 = three * t2 - two * t;
        let slope = (dh00 * y0 + dh10 * d0 + dh01 * y1 + dh11 * d1) / h;
        let ddh00 = T::lit(12.0) * t - six;
        let ddh10 = six * t - T::lit(4.0);
        let ddh01 = -T::lit(12.0) * t + six;
        let ddh11 = six * t - two;
        let curvature = (ddh00 * y0 + ddh10 * d0 + ddh01 * y1 + ddh11 * d1) / (h * h);
        (value, slope, curvature)
    }

    pub fn eval(&self, x: T) -> T {
        self.eval3(x).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_reproduces_cubic() {
        let f = |x: f64| x * x * x - x;
        let df = |x: f64| 3.0 * x * x - 1.0;
        let xs = vec![0.0, 0.5, 1.3, 2.0];
        let ys = xs.iter().map(|&x| f(x)).collect();
        let ds = xs.iter().map(|&x| df(x)).collect();
        let h = Hermite::new(xs, ys, ds).unwrap();
        for &x in &[0.1, 0.77, 1.9] {
            let (v, d, dd) = h.eval3(x);
            assert!((v - f(x)).abs() < 1e-12);
            assert!((d - df(x)).abs() < 1e-12);
            assert!((dd - 6.0 * x).abs() < 1e-10);
        }
    }

    #[test]
    fn monotone_data_stays_monotone() {
        let xs = vec![0.0, 1.0, 2.0, 3.0, 4.0];
        let ys = vec![5.0, 4.9, 1.0, 0.9, 0.0];
        let h = Hermite::monotone(xs, ys).unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..=400 {
            let v = h.eval(k as f64 / 100.0);
            assert!(v <= prev + 1e-14);
            prev = v;
        }
    }

    #[test]
    fn rejects_unsorted_knots() {
        assert!(Hermite::monotone(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
    }
}
