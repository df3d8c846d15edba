use num_complex::Complex64;
use std::f64::consts::PI;

use crate::numeric::CompensatedSum;
use crate::{Error, Result};

fn upper_half(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("imaginary part must be positive, got {tau}")))
    }
}

/// `cot z`, via the exponential that decays on the side of `z`.
pub fn complex_cot(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im >= 0.0 {
        let e = (2.0 * i * z).exp();
        i * (e + 1.0) / (e - 1.0)
    } else {
        let e = (-2.0 * i * z).exp();
        i * (1.0 + e) / (1.0 - e)
    }
}

/// `1 + 2 sum_{n=1}^{K} w^{n^2}` with `w = e^{i pi tau}`.
pub fn theta_series(tau: Complex64, k_max: u32) -> Result<Complex64> {
    upper_half(tau)?;
    let i = Complex64::i();
    let mut s = Complex64::new(1.0, 0.0);
    for n in (1..=k_max).rev() {
        let n2 = (n as f64) * (n as f64);
        s += 2.0 * (i * PI * n2 * tau).exp();
    }
    Ok(s)
}

/// `sum_{k=1}^{K} cot(pi (k tau + offset))`.
pub fn complex_cot_sum(tau: Complex64, offset: f64, k_max: u32) -> Result<Complex64> {
    upper_half(tau)?;
    Ok(sum_terms(k_max, |k| complex_cot(PI * (tau * k as f64 + offset))))
}

/// `sum_{k=1}^{K} sec(pi k tau)`, written with the decaying exponential
/// `sec z = 2 e^{iz} / (1 + e^{2iz})`.
pub fn complex_sec_sum(tau: Complex64, k_max: u32) -> Result<Complex64> {
    upper_half(tau)?;
    let i = Complex64::i();
    Ok(sum_terms(k_max, |k| {
        let e = (i * PI * tau * k as f64).exp();
        2.0 * e / (1.0 + e * e)
    }))
}

fn sum_terms(k_max: u32, f: impl Fn(u32) -> Complex64) -> Complex64 {
    let (mut re, mut im) = (CompensatedSum::new(), CompensatedSum::new());
    for k in 1..=k_max {
        let t = f(k);
        re.add(t.re);
        im.add(t.im);
    }
    Complex64::new(re.value(), im.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA_I: f64 = 1.086_434_811_213_308;

    #[test]
    fn theta_at_i() {
        let t = theta_series(Complex64::i(), 8).unwrap();
        assert!((t.re - THETA_I).abs() < 1e-14 && t.im.abs() < 1e-15);
        assert_eq!(theta_series(Complex64::i(), 0).unwrap(), Complex64::new(1.0, 0.0));
        let far = theta_series(Complex64::new(0.0, 40.0), 5).unwrap();
        assert!((far - 1.0).norm() < 1e-15);
        assert!(theta_series(Complex64::new(1.0, 0.0), 5).is_err());
    }

    #[test]
    fn cot_agrees_with_real_values() {
        let z = Complex64::new(0.7, 1e-300);
        assert!((complex_cot(z).re - 0.7f64.tan().recip()).abs() < 1e-14);
        let w = Complex64::new(0.4, -0.9);
        let direct = w.cos() / w.sin();
        assert!((complex_cot(w) - direct).norm() < 1e-14);
        let w = Complex64::new(0.4, 0.9);
        assert!((complex_cot(w) - w.cos() / w.sin()).norm() < 1e-14);
    }

    #[test]
    fn half_offset_is_minus_tan() {
        let tau = Complex64::i();
        let a = complex_cot_sum(tau, 0.5, 3).unwrap();
        let b: Complex64 = (1..=3).map(|k| -(PI * tau * k as f64).tan()).sum();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn cot_sum_converges() {
        // terms approach -i geometrically
        let tau = Complex64::i();
        let a = complex_cot_sum(tau, 0.0, 20).unwrap() + Complex64::i() * 20.0;
        let b = complex_cot_sum(tau, 0.0, 30).unwrap() + Complex64::i() * 30.0;
        assert!((a - b).norm() < 1e-15);
    }

    #[test]
    fn sec_sum_gives_theta_square() {
        let tau = Complex64::i();
        let r = 1.0 + 2.0 * complex_sec_sum(tau, 40).unwrap();
        let t = theta_series(tau, 10).unwrap();
        assert!((r - t * t).norm() < 1e-14);
    }
}
