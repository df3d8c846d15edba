use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("kernel {kernel} has a pole at x = {x}")]
    Pole { kernel: &'static str, x: f64 },
    #[error("kernel {kernel} has a pole at term {index} (x = {x})")]
    OrbitPole { kernel: &'static str, index: u64, x: f64 },
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("rotation {p}/{q} is not in lowest terms")]
    NotCoprime { p: i64, q: u64 },
    #[error("precision too low: need {required} bits, have {available}")]
    Precision { required: u64, available: u64 },
    #[error("level {level} exceeds the limit {max}")]
    LevelTooLarge { level: u32, max: u32 },
    #[error("{0} terms exceed the direct summation limit")]
    CountOverflow(u64),
    #[error("order {order} exceeds the table order {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("offset {value} of term {term} lies outside the validated radius {radius}")]
    OutsideRadius { term: usize, value: f64, radius: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
