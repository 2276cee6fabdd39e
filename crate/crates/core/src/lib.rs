//! Weighted rearrangements with respect to `μ = e^V dx`, half-space
//! isoperimetry for the perimeter `∫_{∂A} w(x₁) e^V`, and Talenti-type
//! comparison for `−div(w² e^V ∇u) = f e^V` on domains in the half-plane.
//!
//! All numerical code is generic over [`Real`]; the aliases at the crate
//! root fix the scalar to `f64`.

// guards such as `!(x > 0)` are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod elliptic;
pub mod error;
pub mod geometry;
pub mod interp;
pub mod isoperimetry;
pub mod measure1d;
pub mod quadrature;
pub mod rearrange;
pub mod scalar;
pub mod seeds;
pub mod talenti;
pub mod weights;

pub use error::{Error, Result};
pub use scalar::Real;

pub type WeightProfile = weights::WeightProfile<f64>;
pub type PotentialSplit = weights::PotentialSplit<f64>;
pub type ReducedMeasure = measure1d::ReducedMeasure<f64>;
pub type Polygon = geometry::Polygon<f64>;
pub type MassFunction = rearrange::MassFunction<f64>;
pub type StepProfile = rearrange::StepProfile<f64>;
pub type IsoReport = isoperimetry::IsoReport<f64>;
pub type RectilinearDomain = elliptic::RectilinearDomain<f64>;
pub type GridField = elliptic::GridField<f64>;
pub type SymmetrizedSolution = talenti::SymmetrizedSolution<f64>;
