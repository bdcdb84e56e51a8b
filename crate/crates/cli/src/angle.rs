//! Angle expressions: plain decimals or rational multiples of pi such as
//! `pi`, `3pi/2`, `-pi/4`, `0.5*pi`, `2 pi / 3`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(pub f64);

impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_angle(s).map(Angle)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn number(s: &str, whole: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("bad number {s:?} in angle {whole:?}"))?;
    if !v.is_finite() {
        return Err(format!("angle {whole:?} is not finite"));
    }
    Ok(v)
}

pub fn parse_angle(input: &str) -> Result<f64, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(&s)),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, Some(number(d, input)?)),
        None => (body, None),
    };
    let value = match numer.find("pi") {
        Some(at) => {
            if !numer[at + 2..].is_empty() {
                return Err(format!("unexpected text after pi in {input:?}"));
            }
            let coeff = numer[..at].trim_end_matches('*');
            let k = if coeff.is_empty() { 1.0 } else { number(coeff, input)? };
            k * PI
        }
        None => number(numer, input)?,
    };
    match denom {
        Some(d) if d == 0.0 => Err(format!("division by zero in angle {input:?}")),
        Some(d) => Ok(sign * value / d),
        None => Ok(sign * value),
    }
}

/// Accept either a JSON number or an angle expression string.
pub fn deserialize_angle<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    struct AngleVisitor;

    impl Visitor<'_> for AngleVisitor {
        type Value = f64;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a number or an angle expression like \"3pi/2\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            parse_angle(v).map_err(E::custom)
        }
    }

    d.deserialize_any(AngleVisitor)
}
