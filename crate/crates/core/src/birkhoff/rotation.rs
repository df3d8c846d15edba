use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::fibarith::ALPHA;
use crate::numeric::Phase;
use crate::{Error, Result};

/// The rotation number of a circle translation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RotationSpec {
    /// `alpha = (sqrt 5 - 1) / 2`, carried to 127 bits.
    Golden,
    /// `p / q` in lowest terms; orbits are exact.
    Rational { p: i64, q: u64 },
    /// A double, used exactly as given.
    Real { value: f64 },
}

impl RotationSpec {
    pub fn rational(p: i64, q: u64) -> Result<RotationSpec> {
        if q == 0 {
            return Err(Error::Domain("rotation denominator is zero".into()));
        }
        if p.unsigned_abs().gcd(&q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(RotationSpec::Rational { p, q })
    }

    pub fn value(&self) -> f64 {
        match *self {
            RotationSpec::Golden => ALPHA,
            RotationSpec::Rational { p, q } => p as f64 / q as f64,
            RotationSpec::Real { value } => value,
        }
    }

    /// Orbit of `theta` under the rotation.
    pub fn orbit(&self, theta: f64) -> Result<Orbit> {
        if !theta.is_finite() {
            return Err(Error::Domain(format!("offset {theta} is not finite")));
        }
        let start = Phase::from_f64(theta);
        Ok(match *self {
            RotationSpec::Golden => Orbit { start, step: Step::Fixed(Phase::GOLDEN) },
            RotationSpec::Real { value } => {
                if !value.is_finite() {
                    return Err(Error::Domain(format!("rotation {value} is not finite")));
                }
                Orbit { start, step: Step::Fixed(Phase::from_f64(value)) }
            }
            RotationSpec::Rational { p, q } => {
                let m = 2 * q as i128;
                let p2 = (p as i128).rem_euclid(m) as u128;
                Orbit { start, step: Step::Ratio { p2, q } }
            }
        })
    }
}

impl fmt::Display for RotationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotationSpec::Golden => f.write_str("golden"),
            RotationSpec::Rational { p, q } => write!(f, "{p}/{q}"),
            RotationSpec::Real { value } => write!(f, "{value}"),
        }
    }
}

impl FromStr for RotationSpec {
    type Err = Error;

    /// `golden`, `p/q` (lowest terms), or a decimal.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("golden") {
            return Ok(RotationSpec::Golden);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let q: u64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            return RotationSpec::rational(p, q);
        }
        let value: f64 = s.parse().map_err(|_| Error::Parse(format!("bad rotation {s:?}")))?;
        if !value.is_finite() {
            return Err(Error::Parse(format!("bad rotation {s:?}")));
        }
        Ok(RotationSpec::Real { value })
    }
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Fixed(Phase),
    Ratio { p2: u128, q: u64 },
}

/// Points `theta + k beta` of an orbit, generated without accumulation.
#[derive(Clone, Copy, Debug)]
pub struct Orbit {
    start: Phase,
    step: Step,
}

impl Orbit {
    #[inline]
    pub fn phase(&self, k: u64) -> Phase {
        match self.step {
            Step::Fixed(s) => self.start + s.times(k as u128),
            Step::Ratio { p2, q } => {
                let r = (k as u128 % (2 * q as u128)) * p2;
                self.start + Phase::from_ratio(r, q)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_grammar() {
        assert_eq!("golden".parse::<RotationSpec>().unwrap(), RotationSpec::Golden);
        assert_eq!("2/5".parse::<RotationSpec>().unwrap(), RotationSpec::Rational { p: 2, q: 5 });
        assert_eq!("-1/3".parse::<RotationSpec>().unwrap(), RotationSpec::Rational { p: -1, q: 3 });
        assert!(matches!("3/6".parse::<RotationSpec>(), Err(Error::NotCoprime { .. })));
        assert!("1/0".parse::<RotationSpec>().is_err());
        assert_eq!("0.25".parse::<RotationSpec>().unwrap(), RotationSpec::Real { value: 0.25 });
        assert!("abc".parse::<RotationSpec>().is_err());
        assert!("nan".parse::<RotationSpec>().is_err());
    }

    #[test]
    fn rational_orbit_is_exact() {
        let o = RotationSpec::rational(3, 7).unwrap().orbit(0.0).unwrap();
        assert!(o.phase(7).is_integer());
        assert!(o.phase(14).is_integer());
        assert!(!o.phase(5).is_integer());
        assert!((o.phase(5).frac() - (15.0f64 / 7.0).fract()).abs() < 1e-15);
        // mod 2 parity survives: 7 * 3/7 = 3 is odd
        assert_eq!(o.phase(7), Phase::ONE);
    }

    #[test]
    fn display_round_trip() {
        for s in ["golden", "5/8", "0.3"] {
            assert_eq!(s.parse::<RotationSpec>().unwrap().to_string(), s);
        }
    }
}
