//! Compressed sparse row storage and Jacobi-preconditioned conjugate gradients.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<T> {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<T>,
}

impl<T: Real> CsrMatrix<T> {
    /// Builds from per-row `(column, value)` lists; duplicate columns are summed.
    pub fn from_rows(rows: Vec<Vec<(usize, T)>>) -> Self {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|e| e.0);
            let mut last: Option<usize> = None;
            for (c, v) in row {
                if last == Some(c) {
                    let k = vals.len() - 1;
                    vals[k] = vals[k] + v;
                } else {
                    cols.push(c);
                    vals.push(v);
                    last = Some(c);
                }
            }
            row_ptr.push(cols.len());
        }
        Self { n, row_ptr, cols, vals }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        self.cols[a..b].iter().copied().zip(self.vals[a..b].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.row(i).find(|(c, _)| *c == j).map(|(_, v)| v).unwrap_or(T::zero())
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn mul_vec(&self, x: &[T], out: &mut [T]) {
        for (i, o) in out.iter_mut().enumerate().take(self.n) {
            let mut acc = T::zero();
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc = acc + self.vals[k] * x[self.cols[k]];
            }
            *o = acc;
        }
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.n];
        self.mul_vec(x, &mut out);
        out
    }
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iterations: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveStats {
    pub iterations: usize,
    /// `‖b − Ax‖ / ‖b‖` of the returned iterate.
    pub relative_residual: f64,
    /// Preconditioned residual `√(rᵀM⁻¹r) / √(bᵀM⁻¹b)`.
    pub preconditioned_residual: f64,
}

/// Solves `A x = b` for symmetric positive definite `A` with a diagonal preconditioner.
///
/// Iterates until both the true and the preconditioned relative residuals are below `tol`.
pub fn pcg<T: Real>(a: &CsrMatrix<T>, b: &[T], opts: SolverOptions) -> Result<(Vec<T>, SolveStats)> {
    let n = a.dim();
    let mut x = vec![T::zero(); n];
    let b_norm = norm(b);
    if b_norm == T::zero() {
        return Ok((x, SolveStats { iterations: 0, relative_residual: 0.0, preconditioned_residual: 0.0 }));
    }
    let inv_diag: Vec<T> =
        a.diagonal().into_iter().map(|d| if d > T::zero() { T::one() / d } else { T::one() }).collect();
    let tol = T::lit(opts.tol);
    let mut r = b.to_vec();
    let mut z: Vec<T> = r.iter().zip(&inv_diag).map(|(&ri, &di)| ri * di).collect();
    let mut p = z.clone();
    let mut q = vec![T::zero(); n];
    let mut rz = dot(&r, &z);
    let rz0 = rz;
    let mut history = Vec::new();
    for it in 1..=opts.max_iterations {
        a.mul_vec(&p, &mut q);
        let pq = dot(&p, &q);
        if !(pq > T::zero()) {
            return Err(Error::Solver { iterations: it, residual: (norm(&r) / b_norm).as_f64(), history });
        }
        let alpha = rz / pq;
        for i in 0..n {
            x[i] = x[i] + alpha * p[i];
            r[i] = r[i] - alpha * q[i];
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let rel = norm(&r) / b_norm;
        let prel = (rz_new / rz0).abs().sqrt();
        history.push(rel.as_f64());
        if rel <= tol && prel <= tol {
            // confirm with the true residual
            let ax = a.apply(&x);
            let true_rel = norm(&b.iter().zip(&ax).map(|(&bi, &ai)| bi - ai).collect::<Vec<_>>()) / b_norm;
            if true_rel <= tol {
                return Ok((
                    x,
                    SolveStats {
                        iterations: it,
                        relative_residual: true_rel.as_f64(),
                        preconditioned_residual: prel.as_f64(),
                    },
                ));
            }
            // restart from the recomputed residual
            r = b.iter().zip(&ax).map(|(&bi, &ai)| bi - ai).collect();
            z = r.iter().zip(&inv_diag).map(|(&ri, &di)| ri * di).collect();
            p = z.clone();
            rz = dot(&r, &z);
            continue;
        }
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    let residual = history.last().copied().unwrap_or(f64::NAN);
    Err(Error::Solver { iterations: opts.max_iterations, residual, history })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplace_1d(n: usize) -> CsrMatrix<f64> {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![(i, 2.0)];
                if i > 0 {
                    r.push((i - 1, -1.0));
                }
                if i + 1 < n {
                    r.push((i + 1, -1.0));
                }
                r
            })
            .collect();
        CsrMatrix::from_rows(rows)
    }

    #[test]
    fn pcg_solves_tridiagonal() {
        let a = laplace_1d(50);
        let x_true: Vec<f64> = (0..50).map(|i| (i as f64 * 0.3).sin()).collect();
        let b = a.apply(&x_true);
        let (x, stats) = pcg(&a, &b, SolverOptions::default()).unwrap();
        assert!(stats.relative_residual <= 1e-10);
        for (u, v) in x.iter().zip(&x_true) {
            assert!((u - v).abs() < 1e-7);
        }
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let a = laplace_1d(5);
        let (x, stats) = pcg(&a, &[0.0; 5], SolverOptions::default()).unwrap();
        assert!(x.iter().all(|&v| v == 0.0));
        assert_eq!(stats.iterations, 0);
    }

    #[test]
    fn non_convergence_reports_history() {
        let a = laplace_1d(200);
        let b = vec![1.0; 200];
        let err = pcg(&a, &b, SolverOptions { tol: 1e-14, max_iterations: 3 }).unwrap_err();
        match err {
            Error::Solver { iterations, history, .. } => {
                assert_eq!(iterations, 3);
                assert_eq!(history.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicates_are_summed() {
        let m = CsrMatrix::from_rows(vec![vec![(0, 1.0), (0, 2.0)]]);
        assert_eq!(m.get(0, 0), 3.0);
        assert_eq!(m.nnz(), 1);
    }
}
