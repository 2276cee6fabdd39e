use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("measure not finite: {0}")]
    MeasureNotFinite(String),
    #[error("mass {mass} outside admissible range [{lo}, {hi}]")]
    Range { mass: f64, lo: f64, hi: f64 },
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("assembly error: {0}")]
    Assembly(String),
    #[error("solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    Solver { iterations: usize, residual: f64, history: Vec<f64> },
    #[error("unbounded symmetrized solution: {0}")]
    UnboundedSolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
