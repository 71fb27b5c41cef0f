//! Angle literals: plain radians (`1.25`, `-3e-1`) or multiples of π
//! (`pi`, `pi/2`, `-pi/4`, `3pi/2`, `3*pi/2`).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

pub fn parse_phi(text: &str) -> Result<f64> {
    let s = text.trim();
    let bad = || Error::InvalidArgument(format!("invalid angle {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let value = match s.find("pi") {
        None => s.parse::<f64>().map_err(|_| bad())?,
        Some(at) => {
            let (coeff, rest) = (&s[..at], &s[at + 2..]);
            let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
            let numerator: f64 = match coeff {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<i64>().map_err(|_| bad())? as f64,
            };
            let denominator: f64 = match rest {
                "" => 1.0,
                r => {
                    let d = r
                        .strip_prefix('/')
                        .ok_or_else(bad)?
                        .parse::<u32>()
                        .map_err(|_| bad())?;
                    if d == 0 {
                        return Err(bad());
                    }
                    d as f64
                }
            };
            // exact constants for the two canonical angles
            match (numerator, denominator) {
                (n, d) if n == 1.0 && d == 1.0 => PI,
                (n, d) if n == 1.0 && d == 2.0 => FRAC_PI_2,
                (n, d) => n * PI / d,
            }
        }
    };
    if !value.is_finite() {
        return Err(Error::NonFinite("angle"));
    }
    Ok(value)
}

/// Short file-name-safe label: `pi`, `pi_2`, or the decimal value.
pub fn phi_label(phi: f64) -> String {
    if phi == PI {
        "pi".into()
    } else if phi == FRAC_PI_2 {
        "pi_2".into()
    } else {
        format!("phi{phi}")
    }
}

/// Human label for a gate-family member, e.g. `QA-KS(pi/2)`.
pub fn phi_display(phi: f64) -> String {
    if phi == PI {
        "pi".into()
    } else if phi == FRAC_PI_2 {
        "pi/2".into()
    } else {
        format!("{phi}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_phi("pi").unwrap(), PI);
        assert_eq!(parse_phi("pi/2").unwrap(), FRAC_PI_2);
        assert_eq!(parse_phi(" 3.141592653589793 ").unwrap(), PI);
        assert_eq!(parse_phi("-pi").unwrap(), -PI);
        assert_eq!(parse_phi("3pi/2").unwrap(), 3.0 * PI / 2.0);
        assert_eq!(parse_phi("3*pi/2").unwrap(), 3.0 * PI / 2.0);
        assert_eq!(parse_phi("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_phi("0").unwrap(), 0.0);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "pie", "pi/0", "pi/x", "2.5pi", "nan", "inf", "pi2", "x"] {
            assert!(parse_phi(s).is_err(), "{s}");
        }
    }

    #[test]
    fn labels() {
        assert_eq!(phi_label(PI), "pi");
        assert_eq!(phi_label(FRAC_PI_2), "pi_2");
        assert_eq!(phi_label(0.5), "phi0.5");
        assert_eq!(phi_display(FRAC_PI_2), "pi/2");
    }
}
