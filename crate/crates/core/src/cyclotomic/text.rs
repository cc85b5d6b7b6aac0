//! Text and JSON forms of cyclotomic numbers.
//!
//! The text form is a sum of terms `c*z^k` in the generator `z = ζ_M`,
//! e.g. `1 + z`, `-1/2*z^3`, `z^-1`. The JSON form is
//! `{"conductor": M, "coeffs": ["p/q", …]}` in the power basis.

use std::fmt;
use std::str::FromStr;

use malachite_base::num::basic::traits::{One, Zero};
use malachite_q::Rational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CycloError, CycloNum};

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if *c == Rational::ZERO {
                continue;
            }
            let neg = *c < Rational::ZERO;
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if abs != Rational::ONE {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<Rational, CycloError> {
    Rational::from_str(s.trim()).map_err(|_| CycloError::Parse(format!("bad rational {s:?}")))
}

impl CycloNum {
    /// Parses the text form in `Q(ζ_conductor)`.
    pub fn parse(conductor: u32, s: &str) -> Result<Self, CycloError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(CycloError::Parse("empty expression".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = CycloNum::zero(conductor);
        for t in terms {
            let (sign, body) = match t.as_bytes()[0] {
                b'-' => (-1, &t[1..]),
                b'+' => (1, &t[1..]),
                _ => (1, t),
            };
            if body.is_empty() {
                return Err(CycloError::Parse(format!("dangling sign in {s:?}")));
            }
            let (coef, power) = match body.find('z') {
                None => (parse_rational(body)?, 0i64),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let c = if c.is_empty() { Rational::ONE } else { parse_rational(c)? };
                    let rest = &body[pos + 1..];
                    let p = if rest.is_empty() {
                        1
                    } else if let Some(e) = rest.strip_prefix('^') {
                        e.parse::<i64>().map_err(|_| CycloError::Parse(format!("bad exponent in {t:?}")))?
                    } else {
                        return Err(CycloError::Parse(format!("unexpected {rest:?}")));
                    };
                    (c, p)
                }
            };
            let c = if sign < 0 { -coef } else { coef };
            acc += &CycloNum::root_of_unity(conductor, power).scale(&c);
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloJson { conductor: self.conductor(), coeffs: self.coeffs().iter().map(|c| c.to_string()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CycloJson::deserialize(d)?;
        if raw.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| parse_rational(c).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != super::totient(raw.conductor) {
            return Err(D::Error::custom(format!(
                "conductor {} needs {} coefficients, got {}",
                raw.conductor,
                super::totient(raw.conductor),
                coeffs.len()
            )));
        }
        CycloNum::from_coeffs(raw.conductor, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for m in [1u32, 3, 4, 5, 12] {
            for s in ["0", "1", "-z", "1 + z", "3/2*z^2 - 1/7", "z^-1"] {
                let v = CycloNum::parse(m, s).unwrap();
                assert_eq!(CycloNum::parse(m, &v.to_string()).unwrap(), v, "{s} in {m}");
            }
        }
        let i = CycloNum::parse(4, "1+z").unwrap();
        assert_eq!(i.to_string(), "1 + z");
        assert!(CycloNum::parse(4, "1/0").is_err());
        assert!(CycloNum::parse(4, "").is_err());
        assert!(CycloNum::parse(4, "2*y").is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = CycloNum::parse(5, "1/3 - 2*z^3").unwrap();
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(js, r#"{"conductor":5,"coeffs":["1/3","0","0","-2"]}"#);
        let back: CycloNum = serde_json::from_str(&js).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<CycloNum>(r#"{"conductor":3,"coeffs":["1/0","0"]}"#).is_err());
        assert!(serde_json::from_str::<CycloNum>(r#"{"conductor":3,"coeffs":["1"]}"#).is_err());
    }
}
