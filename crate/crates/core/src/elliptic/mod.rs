//! Five-point finite differences for `−div(w² e^V ∇u) = f e^V` with
//! homogeneous Dirichlet data on grid-aligned domains in the half-plane.
//!
//! Unknowns sit at the grid vertices strictly inside the union of the
//! included cells; vertices on the boundary carry `u = 0`. The assembled
//! matrix is the symmetric form `Σ_faces κ (u_p − u_q)²` with
//! `κ = w² e^V` at face midpoints, i.e. `hc²` times the difference operator,
//! and the right-hand side is `f e^V hc²` at the nodes.

pub mod sparse;

use std::io::{self, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre10;
use crate::rearrange::MassFunction;
use crate::scalar::Real;
use crate::weights::{PotentialSplit, WeightProfile};

pub use sparse::{CsrMatrix, SolveStats, SolverOptions};

const NO_NODE: usize = usize::MAX;

/// Union of closed grid cells `[x₁₀ + i hc, x₁₀ + (i+1) hc] × [x₂₀ + j hc, …]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RectilinearDomain<T> {
    origin: [T; 2],
    hc: T,
    n1: usize,
    n2: usize,
    mask: Vec<bool>,
    /// node (i, j), `0 ≤ i ≤ n1`, `0 ≤ j ≤ n2` → interior index or `NO_NODE`
    node_index: Vec<usize>,
    interior: Vec<(usize, usize)>,
}

impl<T: Real> RectilinearDomain<T> {
    /// `mask[i + n1 * j]` marks cell `(i, j)` as part of the domain.
    pub fn new(origin: [T; 2], hc: T, n1: usize, n2: usize, mask: Vec<bool>) -> Result<Self> {
        if !(hc > T::zero()) || !hc.is_finite() {
            return Err(Error::Argument(format!("cell size must be > 0 (got {hc})")));
        }
        if mask.len() != n1 * n2 {
            return Err(Error::Argument(format!("mask has {} cells, expected {}x{}", mask.len(), n1, n2)));
        }
        if origin[0] < T::zero() {
            return Err(Error::Geometry(format!("domain starts at x1 = {} < 0", origin[0])));
        }
        let included: Vec<usize> = (0..mask.len()).filter(|&k| mask[k]).collect();
        if included.is_empty() {
            return Err(Error::Geometry("domain mask is empty".into()));
        }
        // 4-connectivity
        let mut seen = vec![false; mask.len()];
        let mut stack = vec![included[0]];
        seen[included[0]] = true;
        let mut count = 0;
        while let Some(k) = stack.pop() {
            count += 1;
            let (i, j) = (k % n1, k / n1);
            let mut visit = |ii: usize, jj: usize| {
                let kk = ii + n1 * jj;
                if mask[kk] && !seen[kk] {
                    seen[kk] = true;
                    stack.push(kk);
                }
            };
            if i > 0 {
                visit(i - 1, j);
            }
            if i + 1 < n1 {
                visit(i + 1, j);
            }
            if j > 0 {
                visit(i, j - 1);
            }
            if j + 1 < n2 {
                visit(i, j + 1);
            }
        }
        if count != included.len() {
            return Err(Error::Geometry("domain mask is not 4-connected".into()));
        }

        let cell = |i: isize, j: isize| {
            i >= 0 && j >= 0 && (i as usize) < n1 && (j as usize) < n2 && mask[i as usize + n1 * j as usize]
        };
        let mut node_index = vec![NO_NODE; (n1 + 1) * (n2 + 1)];
        let mut interior = Vec::new();
        for j in 0..=n2 {
            for i in 0..=n1 {
                let (ii, jj) = (i as isize, j as isize);
                if cell(ii - 1, jj - 1) && cell(ii, jj - 1) && cell(ii - 1, jj) && cell(ii, jj) {
                    node_index[i + (n1 + 1) * j] = interior.len();
                    interior.push((i, j));
                }
            }
        }
        Ok(Self { origin, hc, n1, n2, mask, node_index, interior })
    }

    /// Rectangle `[x0, x1] × [y0, y1]` whose sides are multiples of `hc`.
    pub fn rectangle(x0: T, x1: T, y0: T, y1: T, hc: T) -> Result<Self> {
        let n1 = cells_between(x0, x1, hc)?;
        let n2 = cells_between(y0, y1, hc)?;
        Self::new([x0, y0], hc, n1, n2, vec![true; n1 * n2])
    }

    /// Rectangle `[x0, x1] × [y0, y1]` with the corner box `[cx, x1] × [cy, y1]` removed.
    pub fn l_shape(x0: T, x1: T, y0: T, y1: T, cx: T, cy: T, hc: T) -> Result<Self> {
        let n1 = cells_between(x0, x1, hc)?;
        let n2 = cells_between(y0, y1, hc)?;
        let ci = cells_between(x0, cx, hc)?;
        let cj = cells_between(y0, cy, hc)?;
        if ci == 0 || ci >= n1 || cj == 0 || cj >= n2 {
            return Err(Error::Geometry("L-shape notch must lie strictly inside the rectangle".into()));
        }
        let mask = (0..n1 * n2).map(|k| !(k % n1 >= ci && k / n1 >= cj)).collect();
        Self::new([x0, y0], hc, n1, n2, mask)
    }

    pub fn hc(&self) -> T {
        self.hc
    }

    pub fn origin(&self) -> [T; 2] {
        self.origin
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn is_cell(&self, i: usize, j: usize) -> bool {
        i < self.n1 && j < self.n2 && self.mask[i + self.n1 * j]
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n1 * self.n2).filter(|&k| self.mask[k]).map(move |k| (k % self.n1, k / self.n1))
    }

    pub fn cell_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn interior_nodes(&self) -> &[(usize, usize)] {
        &self.interior
    }

    pub fn node_count(&self) -> usize {
        self.interior.len()
    }

    /// Interior index of grid vertex `(i, j)`.
    pub fn node(&self, i: usize, j: usize) -> Option<usize> {
        if i > self.n1 || j > self.n2 {
            return None;
        }
        let k = self.node_index[i + (self.n1 + 1) * j];
        (k != NO_NODE).then_some(k)
    }

    pub fn x1(&self, i: usize) -> T {
        self.origin[0] + self.hc * T::from_usize(i).unwrap()
    }

    pub fn x2(&self, j: usize) -> T {
        self.origin[1] + self.hc * T::from_usize(j).unwrap()
    }

    pub fn node_position(&self, i: usize, j: usize) -> [T; 2] {
        [self.x1(i), self.x2(j)]
    }

    pub fn cell_center(&self, i: usize, j: usize) -> [T; 2] {
        let half = self.hc * T::lit(0.5);
        [self.x1(i) + half, self.x2(j) + half]
    }

    /// Exact `μ`-mass of every included cell, in [`cells`](Self::cells) order.
    pub fn cell_masses(&self, v: &PotentialSplit<T>) -> Vec<T> {
        let cols: Vec<T> =
            (0..self.n1).map(|i| gauss_legendre10(|s| v.v1(s).exp(), self.x1(i), self.x1(i + 1))).collect();
        let rows: Vec<T> = (0..self.n2).map(|j| v.transverse_interval(self.x2(j), self.x2(j + 1))).collect();
        self.cells().map(|(i, j)| cols[i] * rows[j]).collect()
    }

    /// `μ(E)`.
    pub fn weighted_area(&self, v: &PotentialSplit<T>) -> T {
        self.cell_masses(v).into_iter().sum()
    }

    /// Smallest and largest `x₁` covered by included cells.
    pub fn x1_range(&self) -> (T, T) {
        let (mut lo, mut hi) = (usize::MAX, 0);
        for (i, _) in self.cells() {
            lo = lo.min(i);
            hi = hi.max(i + 1);
        }
        (self.x1(lo), self.x1(hi))
    }
}

fn cells_between<T: Real>(a: T, b: T, hc: T) -> Result<usize> {
    let n = (b - a) / hc;
    let r = n.round();
    if !(r >= T::zero()) || (n - r).abs() > T::lit(1e-9) * (T::one() + r) {
        return Err(Error::Geometry(format!("extent [{a}, {b}] is not a multiple of hc = {hc}")));
    }
    r.to_usize().ok_or_else(|| Error::Geometry("extent too large".into()))
}

/// Discrete values at the interior nodes; zero on the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField<T> {
    domain: Arc<RectilinearDomain<T>>,
    values: Vec<T>,
}

impl<T: Real> GridField<T> {
    pub fn new(domain: Arc<RectilinearDomain<T>>, values: Vec<T>) -> Result<Self> {
        if values.len() != domain.node_count() {
            return Err(Error::Argument(format!("{} values for {} interior nodes", values.len(), domain.node_count())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Argument("grid field values must be finite".into()));
        }
        Ok(Self { domain, values })
    }

    pub fn zeros(domain: Arc<RectilinearDomain<T>>) -> Self {
        let n = domain.node_count();
        Self { domain, values: vec![T::zero(); n] }
    }

    /// Samples `f(x₁, x₂)` at the interior nodes.
    pub fn sample<F: Fn(T, T) -> T>(domain: Arc<RectilinearDomain<T>>, f: F) -> Result<Self> {
        let values = domain.interior_nodes().iter().map(|&(i, j)| f(domain.x1(i), domain.x2(j))).collect();
        Self::new(domain, values)
    }

    pub fn domain(&self) -> &Arc<RectilinearDomain<T>> {
        &self.domain
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value at grid vertex `(i, j)` (zero on and outside the boundary).
    pub fn at(&self, i: usize, j: usize) -> T {
        self.domain.node(i, j).map(|k| self.values[k]).unwrap_or(T::zero())
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Bilinear value at the centre of cell `(i, j)`.
    pub fn cell_center_value(&self, i: usize, j: usize) -> T {
        (self.at(i, j) + self.at(i + 1, j) + self.at(i, j + 1) + self.at(i + 1, j + 1)) * T::lit(0.25)
    }

    /// `x1,x2,u` rows, one per interior node, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x1,x2,u")?;
        for (k, &(i, j)) in self.domain.interior_nodes().iter().enumerate() {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e}",
                self.domain.x1(i).as_f64(),
                self.domain.x2(j).as_f64(),
                self.values[k].as_f64()
            )?;
        }
        Ok(())
    }
}

/// Assembled symmetric positive definite operator of the weak form.
#[derive(Debug, Clone)]
pub struct EllipticOperator<T> {
    domain: Arc<RectilinearDomain<T>>,
    matrix: CsrMatrix<T>,
}

impl<T: Real> EllipticOperator<T> {
    pub fn domain(&self) -> &Arc<RectilinearDomain<T>> {
        &self.domain
    }

    /// Entries are `hc²` times the five-point difference operator.
    pub fn matrix(&self) -> &CsrMatrix<T> {
        &self.matrix
    }

    /// `⟨A u, u⟩ = Σ_faces κ (u_p − u_q)²`.
    pub fn energy(&self, u: &GridField<T>) -> T {
        sparse::dot(&self.matrix.apply(u.values()), u.values())
    }
}

/// Five-point assembly with `κ = w(x₁)² e^{V(x)}` at face midpoints.
pub fn assemble<T: Real>(
    domain: Arc<RectilinearDomain<T>>,
    w: &WeightProfile<T>,
    v: &PotentialSplit<T>,
) -> Result<EllipticOperator<T>> {
    if v.dimension() != 2 {
        return Err(Error::Assembly(format!("planar solver needs d = 2 (got {})", v.dimension())));
    }
    let (lo, hi) = domain.x1_range();
    for x in [lo, hi] {
        w.check_domain(x).map_err(|e| Error::Assembly(format!("coefficient undefined on the domain: {e}")))?;
    }
    let half = domain.hc() * T::lit(0.5);
    let kappa = |x1: T, x2: T| -> Result<T> {
        let wv = w.value(x1);
        let k = wv * wv * v.v_plane(x1, x2).exp();
        if k > T::zero() && k.is_finite() {
            Ok(k)
        } else {
            Err(Error::Assembly(format!("coefficient w^2 e^V = {k} at ({x1}, {x2}) is not positive")))
        }
    };
    let mut rows = Vec::with_capacity(domain.node_count());
    for &(i, j) in domain.interior_nodes() {
        let [x1, x2] = domain.node_position(i, j);
        let p = domain.node(i, j).unwrap();
        let faces = [
            (i + 1, j, kappa(x1 + half, x2)?),
            (i - 1, j, kappa(x1 - half, x2)?),
            (i, j + 1, kappa(x1, x2 + half)?),
            (i, j - 1, kappa(x1, x2 - half)?),
        ];
        let mut row = Vec::with_capacity(5);
        let mut diag = T::zero();
        for (ii, jj, k) in faces {
            diag = diag + k;
            if let Some(q) = domain.node(ii, jj) {
                row.push((q, -k));
            }
        }
        row.push((p, diag));
        rows.push(row);
    }
    Ok(EllipticOperator { domain, matrix: CsrMatrix::from_rows(rows) })
}

/// Right-hand side `f e^V hc²` at the interior nodes.
pub fn load_vector<T: Real>(f: &GridField<T>, v: &PotentialSplit<T>) -> Vec<T> {
    let d = f.domain();
    let h2 = d.hc() * d.hc();
    d.interior_nodes()
        .iter()
        .zip(f.values())
        .map(|(&(i, j), &fv)| {
            let [x1, x2] = d.node_position(i, j);
            fv * v.v_plane(x1, x2).exp() * h2
        })
        .collect()
}

/// Solves the Dirichlet problem with source samples `f` by PCG.
pub fn solve<T: Real>(
    op: &EllipticOperator<T>,
    f: &GridField<T>,
    v: &PotentialSplit<T>,
    opts: SolverOptions,
) -> Result<(GridField<T>, SolveStats)> {
    if !Arc::ptr_eq(op.domain(), f.domain()) && **op.domain() != **f.domain() {
        return Err(Error::Consistency("source and operator live on different domains".into()));
    }
    let b = load_vector(f, v);
    let (x, stats) = sparse::pcg(op.matrix(), &b, opts)?;
    Ok((GridField { domain: op.domain().clone(), values: x }, stats))
}

/// `Σ_nodes f u e^V hc²`, the discrete `∫ f u dμ`.
pub fn source_work<T: Real>(f: &GridField<T>, u: &GridField<T>, v: &PotentialSplit<T>) -> T {
    sparse::dot(&load_vector(f, v), u.values())
}

/// Cell-centred gradient from the average of the two face differences per direction.
pub fn cell_gradient<T: Real>(u: &GridField<T>, i: usize, j: usize) -> [T; 2] {
    let h = u.domain().hc();
    let two = T::lit(2.0);
    let gx = (u.at(i + 1, j) - u.at(i, j) + u.at(i + 1, j + 1) - u.at(i, j + 1)) / (two * h);
    let gy = (u.at(i, j + 1) - u.at(i, j) + u.at(i + 1, j + 1) - u.at(i + 1, j)) / (two * h);
    [gx, gy]
}

/// `∫_E |∇u|^q w^q dμ` with cell-centred gradients and exact cell masses.
pub fn gradient_qnorm<T: Real>(u: &GridField<T>, w: &WeightProfile<T>, v: &PotentialSplit<T>, q: T) -> Result<T> {
    if !(q > T::zero() && q <= T::lit(2.0)) {
        return Err(Error::Argument(format!("q must lie in (0, 2] (got {q})")));
    }
    let d = u.domain();
    let masses = d.cell_masses(v);
    let mut acc = T::zero();
    for ((i, j), m) in d.cells().zip(masses) {
        let [gx, gy] = cell_gradient(u, i, j);
        let g = (gx * gx + gy * gy).sqrt();
        if g > T::zero() {
            let wc = w.value(d.cell_center(i, j)[0]);
            acc = acc + (g * wc).powf(q) * m;
        }
    }
    Ok(acc)
}

/// Cells with value `|u|` at the cell centre and their exact `μ`-masses.
pub fn to_mass_function<T: Real>(u: &GridField<T>, v: &PotentialSplit<T>) -> Result<MassFunction<T>> {
    let d = u.domain();
    let values = d.cells().map(|(i, j)| u.cell_center_value(i, j).abs()).collect();
    MassFunction::new(values, d.cell_masses(v))
}

/// Samples of `f` at the cell centres with their masses.
pub fn sample_mass_function<T: Real, F: Fn(T, T) -> T>(
    domain: &RectilinearDomain<T>,
    v: &PotentialSplit<T>,
    f: F,
) -> Result<MassFunction<T>> {
    let values = domain
        .cells()
        .map(|(i, j)| {
            let [x1, x2] = domain.cell_center(i, j);
            f(x1, x2)
        })
        .collect();
    MassFunction::new(values, domain.cell_masses(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{AxialPotential, TransversePotential};

    fn flat() -> PotentialSplit<f64> {
        PotentialSplit::new(AxialPotential::Zero, TransversePotential::Zero, 2).unwrap()
    }

    fn mixed() -> (WeightProfile<f64>, PotentialSplit<f64>) {
        (
            WeightProfile::shifted_exponential(2.0, 0.1).unwrap(),
            PotentialSplit::new(AxialPotential::Gaussian { c: 1.0 }, TransversePotential::Gaussian { c: 1.0 }, 2)
                .unwrap(),
        )
    }

    #[test]
    fn flat_stencil_is_standard_laplacian() {
        let d = Arc::new(RectilinearDomain::rectangle(0.0, 1.0, 0.0, 1.0, 0.25).unwrap());
        let op = assemble(d.clone(), &WeightProfile::constant(1.0).unwrap(), &flat()).unwrap();
        let c = d.node(2, 2).unwrap();
        let a = op.matrix();
        assert_eq!(a.get(c, c), 4.0);
        for (i, j) in [(1, 2), (3, 2), (2, 1), (2, 3)] {
            assert_eq!(a.get(c, d.node(i, j).unwrap()), -1.0);
        }
        assert_eq!(a.row(c).count(), 5);
    }

    #[test]
    fn single_interior_node_hand_assembly() {
        let (w, v) = mixed();
        let h = 0.125;
        let d = Arc::new(RectilinearDomain::rectangle(0.5, 0.75, 0.25, 0.5, h).unwrap());
        assert_eq!(d.node_count(), 1);
        let op = assemble(d, &w, &v).unwrap();
        let (x, y) = (0.625, 0.375);
        let k = |a: f64, b: f64| {
            let wv = 0.1 + (-2.0 * a).exp();
            wv * wv * (-a * a - b * b).exp()
        };
        let mean = (k(x + h / 2.0, y) + k(x - h / 2.0, y) + k(x, y + h / 2.0) + k(x, y - h / 2.0)) / 4.0;
        // stored scaled by hc²: 4 κ̄ / hc² · hc²
        assert!((op.matrix().get(0, 0) - 4.0 * mean).abs() < 1e-15);
    }

    #[test]
    fn operator_is_symmetric() {
        let (w, v) = mixed();
        let d = Arc::new(RectilinearDomain::l_shape(0.25, 1.25, -0.5, 0.5, 0.75, 0.0, 1.0 / 16.0).unwrap());
        let op = assemble(d.clone(), &w, &v).unwrap();
        let n = d.node_count();
        let x: Vec<f64> = (0..n).map(|k| ((k * 37 % 11) as f64).sin()).collect();
        let y: Vec<f64> = (0..n).map(|k| ((k * 13 % 7) as f64).cos()).collect();
        let lhs = sparse::dot(&op.matrix().apply(&x), &y);
        let rhs = sparse::dot(&x, &op.matrix().apply(&y));
        assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn zero_source_gives_zero() {
        let (w, v) = mixed();
        let d = Arc::new(RectilinearDomain::rectangle(0.5, 1.0, 0.0, 0.5, 1.0 / 32.0).unwrap());
        let op = assemble(d.clone(), &w, &v).unwrap();
        let (u, _) = solve(&op, &GridField::zeros(d), &v, SolverOptions::default()).unwrap();
        assert!(u.values().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn mixed_gaussian_residual_and_max_principle() {
        let (w, v) = mixed();
        let d = Arc::new(RectilinearDomain::rectangle(0.5, 1.5, 0.25, 1.0, 1.0 / 32.0).unwrap());
        let op = assemble(d.clone(), &w, &v).unwrap();
        let f = GridField::sample(d.clone(), |x, y| (-((x - 1.0).powi(2) + (y - 0.5).powi(2)) / 0.18).exp()).unwrap();
        let (u, stats) = solve(&op, &f, &v, SolverOptions::default()).unwrap();
        let b = load_vector(&f, &v);
        let au = op.matrix().apply(u.values());
        let r: f64 = b.iter().zip(&au).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        let bn: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(r / bn <= 1e-10 && stats.relative_residual <= 1e-10);
        assert!(u.values().iter().all(|&x| x >= 0.0));
        let e = op.energy(&u);
        let work = source_work(&f, &u, &v);
        assert!((e - work).abs() <= 1e-8 * work);
    }

    #[test]
    fn linear_patch_gradient() {
        let d = Arc::new(RectilinearDomain::rectangle(1.0, 2.0, 0.0, 1.0, 0.125).unwrap());
        let u = GridField::sample(d.clone(), |x, _| x).unwrap();
        // one interior cell away from the boundary every gradient is exactly e1
        let (i, j) = (3, 3);
        let g: [f64; 2] = cell_gradient(&u, i, j);
        assert!((g[0] - 1.0).abs() < 1e-12 && g[1].abs() < 1e-12);
        let w = WeightProfile::constant(1.0).unwrap();
        assert!(gradient_qnorm(&u, &w, &flat(), 2.5).is_err());
        assert!(gradient_qnorm(&u, &w, &flat(), 0.0).is_err());
        assert_eq!(gradient_qnorm(&GridField::zeros(d), &w, &flat(), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn mass_function_carries_domain_mass() {
        let (_, v) = mixed();
        let d = Arc::new(RectilinearDomain::l_shape(0.25, 1.25, -0.5, 0.5, 0.75, 0.0, 1.0 / 64.0).unwrap());
        let u = GridField::zeros(d.clone());
        let mf = to_mass_function(&u, &v).unwrap();
        assert_eq!(mf.len(), d.cell_count());
        let poly = crate::geometry::Polygon::new(vec![
            [0.25, -0.5],
            [1.25, -0.5],
            [1.25, 0.0],
            [0.75, 0.0],
            [0.75, 0.5],
            [0.25, 0.5],
        ])
        .unwrap();
        let area = crate::isoperimetry::weighted_area(&poly, &v).unwrap();
        assert!((mf.total_mass() - area).abs() <= 1e-4 * area);
    }

    #[test]
    fn domain_validation() {
        assert!(RectilinearDomain::<f64>::new([0.0, 0.0], 0.1, 2, 1, vec![false, false]).is_err());
        assert!(RectilinearDomain::<f64>::new([0.0, 0.0], 0.1, 3, 1, vec![true, false, true]).is_err());
        assert!(RectilinearDomain::<f64>::rectangle(0.0, 1.03, 0.0, 1.0, 0.25).is_err());
        assert!(RectilinearDomain::<f64>::new([-0.1, 0.0], 0.1, 1, 1, vec![true]).is_err());
    }

    #[test]
    fn csv_rows() {
        let d = Arc::new(RectilinearDomain::rectangle(0.0, 0.5, 0.0, 0.5, 0.25).unwrap());
        let u = GridField::sample(d, |x, y| x + y).unwrap();
        let mut buf = Vec::new();
        u.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "x1,x2,u\n2.5000000000000000e-1,2.5000000000000000e-1,5.0000000000000000e-1\n");
    }
}
