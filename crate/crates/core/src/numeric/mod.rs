//! Numerical building blocks: compensated summation, fixed-point circle
//! phases, arbitrary precision fixed-point reals and small regressions.

mod fit;
mod fixed;
mod phase;
mod sum;

pub use fit::{linear_fit, quadratic_fit, LinearFit, QuadraticFit};
pub use fixed::Fixed;
pub use phase::Phase;
pub use sum::CompensatedSum;

/// Largest absolute difference between two equally long slices.
pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Mean absolute difference between two equally long slices.
pub fn mean_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.len() as f64
}
