/// Least squares line `y = intercept + slope * x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
}

/// Least squares parabola through the origin, `y = coefficient * x^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticFit {
    pub coefficient: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let r_squared = r_squared(ys, |i| intercept + slope * xs[i]);
    LinearFit { intercept, slope, r_squared }
}

pub fn quadratic_fit(xs: &[f64], ys: &[f64]) -> QuadraticFit {
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| x * x * y).sum();
    let den: f64 = xs.iter().map(|x| x.powi(4)).sum();
    let coefficient = if den > 0.0 { num / den } else { 0.0 };
    let r_squared = r_squared(ys, |i| coefficient * xs[i] * xs[i]);
    QuadraticFit { coefficient, r_squared }
}

fn r_squared(ys: &[f64], model: impl Fn(usize) -> f64) -> f64 {
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = ys.iter().enumerate().map(|(i, y)| (y - model(i)).powi(2)).sum();
    if ss_tot == 0.0 {
        return if ss_res == 0.0 { 1.0 } else { 0.0 };
    }
    1.0 - ss_res / ss_tot
}
