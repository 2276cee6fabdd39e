//! Planar polygons, axial half-plane clipping and integrals of
//! `φ(x₁) e^{V}` over polygonal regions by vertical strips.

use crate::error::{Error, Result};
use crate::quadrature::{gauss_kronrod, Estimate};
use crate::scalar::Real;
use crate::weights::PotentialSplit;

pub type Point<T> = [T; 2];

const SNAP: f64 = 1e-12;

/// Simple, counterclockwise polygon in the closed half-plane `{x₁ ≥ 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Real> Polygon<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self> {
        if vertices.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(Error::Geometry("polygon has non-finite vertices".into()));
        }
        let vertices = snap_collinear(vertices);
        if vertices.len() < 3 {
            return Err(Error::Geometry("polygon needs at least three non-collinear vertices".into()));
        }
        if let Some(p) = vertices.iter().find(|p| p[0] < T::zero()) {
            return Err(Error::Geometry(format!("vertex ({}, {}) lies outside x1 >= 0", p[0], p[1])));
        }
        let area = signed_area(&vertices);
        if !(area > T::zero()) {
            return Err(Error::Geometry(format!(
                "polygon must be positively oriented with nonzero area (signed area {area})"
            )));
        }
        if let Some((i, j)) = self_intersection(&vertices) {
            return Err(Error::Geometry(format!("edges {i} and {j} intersect")));
        }
        Ok(Self { vertices })
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: T, x1: T, y0: T, y1: T) -> Result<Self> {
        Self::new(vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn min_x1(&self) -> T {
        self.vertices.iter().fold(T::infinity(), |m, p| m.min(p[0]))
    }

    pub fn max_x1(&self) -> T {
        self.vertices.iter().fold(T::neg_infinity(), |m, p| m.max(p[0]))
    }

    /// Euclidean area.
    pub fn area(&self) -> T {
        signed_area(&self.vertices)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point<T>, Point<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Even-odd point membership.
    pub fn contains(&self, p: Point<T>) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

fn signed_area<T: Real>(v: &[Point<T>]) -> T {
    let n = v.len();
    let mut acc = T::zero();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        acc = acc + a[0] * b[1] - b[0] * a[1];
    }
    acc * T::lit(0.5)
}

fn cross<T: Real>(o: Point<T>, a: Point<T>, b: Point<T>) -> T {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Drops repeated vertices and vertices collinear with their neighbours.
fn snap_collinear<T: Real>(mut v: Vec<Point<T>>) -> Vec<Point<T>> {
    let snap = T::lit(SNAP);
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut removed = false;
        for i in 0..n {
            let (p, q, r) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            let scale = (q[0] - p[0]).abs().max((q[1] - p[1]).abs()) * (r[0] - q[0]).abs().max((r[1] - q[1]).abs());
            let same = (q[0] - p[0]).abs() <= snap && (q[1] - p[1]).abs() <= snap;
            let dot = (q[0] - p[0]) * (r[0] - q[0]) + (q[1] - p[1]) * (r[1] - q[1]);
            // only straight continuations are snapped; spikes stay and fail the simplicity test
            if same || (cross(p, q, r).abs() <= snap * scale && dot > T::zero()) {
                v.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return v;
        }
    }
}

fn segments_intersect<T: Real>(a: Point<T>, b: Point<T>, c: Point<T>, d: Point<T>) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > T::zero() && d2 < T::zero()) || (d1 < T::zero() && d2 > T::zero()))
        && ((d3 > T::zero() && d4 < T::zero()) || (d3 < T::zero() && d4 > T::zero()))
    {
        return true;
    }
    let on = |p: Point<T>, q: Point<T>, r: Point<T>| {
        r[0] >= p[0].min(q[0]) && r[0] <= p[0].max(q[0]) && r[1] >= p[1].min(q[1]) && r[1] <= p[1].max(q[1])
    };
    (d1 == T::zero() && on(c, d, a))
        || (d2 == T::zero() && on(c, d, b))
        || (d3 == T::zero() && on(a, b, c))
        || (d4 == T::zero() && on(a, b, d))
}

fn self_intersection<T: Real>(v: &[Point<T>]) -> Option<(usize, usize)> {
    let n = v.len();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (c, d) = (v[j], v[(j + 1) % n]);
            if adjacent {
                // adjacent edges may only share their common vertex
                let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if cross(shared, p, q) == T::zero() {
                    let u = [p[0] - shared[0], p[1] - shared[1]];
                    let w = [q[0] - shared[0], q[1] - shared[1]];
                    if u[0] * w[0] + u[1] * w[1] > T::zero() {
                        return Some((i, j));
                    }
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Side of an axial cut `x₁ = level` that is kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    Below,
    Above,
}

/// Sutherland–Hodgman clip of a vertex ring against `x₁ ≤ level` or `x₁ ≥ level`.
///
/// For non-convex input the result may contain zero-width bridges along the
/// cut line; they are vertical and do not affect strip integrals.
pub fn clip_axial<T: Real>(ring: &[Point<T>], level: T, keep: Keep) -> Vec<Point<T>> {
    let inside = |p: &Point<T>| match keep {
        Keep::Below => p[0] <= level,
        Keep::Above => p[0] >= level,
    };
    let mut out = Vec::with_capacity(ring.len() + 4);
    let n = ring.len();
    if n == 0 {
        return out;
    }
    for i in 0..n {
        let cur = ring[i];
        let prev = ring[(i + n - 1) % n];
        let (ci, pi) = (inside(&cur), inside(&prev));
        if ci != pi {
            let s = (level - prev[0]) / (cur[0] - prev[0]);
            out.push([level, prev[1] + s * (cur[1] - prev[1])]);
        }
        if ci {
            out.push(cur);
        }
    }
    out
}

/// `∫_R φ(x₁) e^{V(x)} dx` over the region bounded by `ring` (even-odd rule),
/// splitting at every vertex abscissa and at `cuts`.
pub fn integrate_axial<T: Real, F: Fn(T) -> T>(
    ring: &[Point<T>],
    potential: &PotentialSplit<T>,
    phi: F,
    cuts: &[T],
    tol: T,
) -> Estimate<T> {
    let n = ring.len();
    if n < 3 {
        return Estimate::zero();
    }
    let (lo, hi) = ring.iter().fold((T::infinity(), T::neg_infinity()), |(a, b), p| (a.min(p[0]), b.max(p[0])));
    let mut xs: Vec<T> = ring.iter().map(|p| p[0]).collect();
    xs.extend(cuts.iter().copied().filter(|c| *c > lo && *c < hi));
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    let strips = xs.len().saturating_sub(1).max(1);
    let strip_tol = tol / T::from_usize(strips).unwrap();

    let mut total = Estimate::zero();
    let mut spanning: Vec<(Point<T>, Point<T>)> = Vec::new();
    for w in xs.windows(2) {
        let (xa, xb) = (w[0], w[1]);
        spanning.clear();
        for i in 0..n {
            let (p, q) = (ring[i], ring[(i + 1) % n]);
            let (l, r) = if p[0] <= q[0] { (p, q) } else { (q, p) };
            if l[0] <= xa && r[0] >= xb && r[0] > l[0] {
                spanning.push((l, r));
            }
        }
        if spanning.len() < 2 {
            continue;
        }
        let mid = (xa + xb) * T::lit(0.5);
        let y_at = |e: &(Point<T>, Point<T>), x: T| e.0[1] + (x - e.0[0]) * (e.1[1] - e.0[1]) / (e.1[0] - e.0[0]);
        spanning.sort_by(|a, b| y_at(a, mid).partial_cmp(&y_at(b, mid)).unwrap());
        let edges = &spanning;
        let integrand = |x: T| {
            let mut cross_section = T::zero();
            for pair in edges.chunks_exact(2) {
                cross_section = cross_section + potential.transverse_interval(y_at(&pair[0], x), y_at(&pair[1], x));
            }
            phi(x) * potential.v1(x).exp() * cross_section
        };
        total = total + gauss_kronrod(integrand, xa, xb, strip_tol);
    }
    total
}
