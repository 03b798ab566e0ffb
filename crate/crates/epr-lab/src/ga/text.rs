//! Diagnostic text form of multivectors: `"2 + 3e12 - 1e123"`.
//!
//! Coefficients are rendered in plain decimal (never scientific notation,
//! so the `e` of a blade label is unambiguous) and round-trip exactly
//! through [`str::parse`].

use std::fmt;
use std::str::FromStr;

use super::{GaError, Multivector, BLADE_COUNT, BLADE_LABELS};

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for i in 0..BLADE_COUNT {
            let c = self.coeff(i);
            if c == 0.0 {
                continue;
            }
            if wrote {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{c}")?;
            }
            if i > 0 {
                f.write_str(BLADE_LABELS[i])?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FromStr for Multivector {
    type Err = GaError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| GaError::Parse {
            input: input.to_owned(),
            reason: reason.to_owned(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut coeffs = [0.0f64; BLADE_COUNT];
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'-' => {
                    rest = &rest[1..];
                    -1.0
                }
                b'+' => {
                    rest = &rest[1..];
                    1.0
                }
                _ => 1.0,
            };
            let end = rest
                .find(['+', '-'])
                .unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(err("empty term"));
            }
            // The first 'e' starts the blade label; plain-decimal numbers
            // never contain one.
            let (num, blade) = match term.find('e') {
                Some(pos) => term.split_at(pos),
                None => (term, ""),
            };
            let coeff = if num.is_empty() {
                1.0
            } else {
                f64::from_str(num).map_err(|_| err("invalid coefficient"))?
            };
            let index = if blade.is_empty() {
                0
            } else {
                BLADE_LABELS
                    .iter()
                    .position(|l| *l == blade)
                    .ok_or_else(|| err("unknown blade label"))?
            };
            coeffs[index] += sign * coeff;
        }
        Ok(Multivector::from_coeffs(coeffs))
    }
}
