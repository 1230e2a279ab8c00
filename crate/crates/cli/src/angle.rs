//! Cone-angle expressions.
//!
//! ```text
//! expr := [sign] (INT ['/' INT])? ['*'] 'pi'  |  FLOAT
//! ```
//!
//! Forms with `pi` are exact. A bare float is read as radians and replaced
//! by the closest rational multiple of pi with denominator at most
//! [`MAX_APPROX_DENOM`].

use std::f64::consts::PI;
use std::fmt;

use conevol_core::{ExactScalar, PiScalar, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub const MAX_APPROX_DENOM: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleMode {
    PiRational,
    RadiansFloat,
}

impl fmt::Display for AngleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AngleMode::PiRational => "pi-rational",
            AngleMode::RadiansFloat => "radians-float",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleExpr {
    pub raw: String,
    pub parsed: ExactScalar,
    pub mode: AngleMode,
    /// `parsed - input` in radians, for float input.
    pub approximation_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse angle {input:?} at position {position}: {message}")]
pub struct AngleParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

pub fn parse_angle(text: &str) -> Result<AngleExpr, AngleParseError> {
    // (char, position in the original text), whitespace dropped
    let chars: Vec<(char, usize)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (c.to_ascii_lowercase(), i))
        .collect();
    let err = |position: usize, message: &str| AngleParseError {
        input: text.to_string(),
        position,
        message: message.to_string(),
    };
    if chars.is_empty() {
        return Err(err(0, "empty angle"));
    }

    let compact: String = chars.iter().map(|(c, _)| *c).collect();
    if compact.contains('p') {
        let coeff = PiRationalParser {
            chars: &chars,
            at: 0,
            end: text.chars().count(),
        }
        .parse()
        .map_err(|(pos, msg)| err(pos, msg))?;
        return Ok(AngleExpr {
            raw: text.to_string(),
            parsed: PiScalar::angle(coeff),
            mode: AngleMode::PiRational,
            approximation_error: None,
        });
    }

    let radians: f64 = compact.parse().map_err(|_| {
        err(
            chars[0].1,
            "expected a rational multiple of pi or a number of radians",
        )
    })?;
    if !radians.is_finite() {
        return Err(err(chars[0].1, "angle must be finite"));
    }
    let ratio = Rational::from_float(radians / PI).expect("finite");
    let coeff = best_approximation(&ratio, MAX_APPROX_DENOM);
    let parsed = PiScalar::angle(coeff);
    let approx = parsed.to_float().map(|v| v - radians).ok();
    Ok(AngleExpr {
        raw: text.to_string(),
        parsed,
        mode: AngleMode::RadiansFloat,
        approximation_error: approx,
    })
}

struct PiRationalParser<'a> {
    chars: &'a [(char, usize)],
    at: usize,
    end: usize,
}

type Step<T> = Result<T, (usize, &'static str)>;

impl PiRationalParser<'_> {
    fn parse(mut self) -> Step<Rational> {
        let negative = match self.peek() {
            Some('-') => {
                self.at += 1;
                true
            }
            Some('+') => {
                self.at += 1;
                false
            }
            _ => false,
        };

        let mut coeff = Rational::from_integer(1.into());
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.digits()?;
            let mut den = BigInt::from(1);
            if self.peek() == Some('/') {
                self.at += 1;
                den = self.digits()?;
                if den.is_zero() {
                    return Err((self.chars[self.at - 1].1, "zero denominator"));
                }
            }
            coeff = Rational::new(num, den);
        }
        if self.peek() == Some('*') {
            self.at += 1;
        }
        if self.peek() != Some('p') || self.peek_at(1) != Some('i') {
            return Err((self.position(), "expected 'pi'"));
        }
        self.at += 2;
        if self.at != self.chars.len() {
            return Err((self.position(), "unexpected trailing input"));
        }
        Ok(if negative { -coeff } else { coeff })
    }

    fn digits(&mut self) -> Step<BigInt> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return Err((self.position(), "expected digits"));
        }
        let s: String = self.chars[start..self.at].iter().map(|(c, _)| *c).collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn peek(&self) -> Option<char> {
        self.peek_at(0)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.at + k).map(|(c, _)| *c)
    }

    fn position(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |(_, p)| *p)
    }
}

/// Closest rational to `x` with denominator at most `max_denom`, via
/// continued-fraction convergents and the final semiconvergent.
pub fn best_approximation(x: &Rational, max_denom: u64) -> Rational {
    let limit = BigInt::from(max_denom.max(1));
    if x.denom() <= &limit {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) = (
        BigInt::from(0),
        BigInt::from(1),
        BigInt::from(1),
        BigInt::from(0),
    );
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > limit {
            break;
        }
        let p2 = &p0 + &a * &p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let r = &n - &a * &d;
        (n, d) = (d, r);
    }
    let k = (&limit - &q0).div_floor(&q1);
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    if (&conv - x).abs() <= (&semi - x).abs() {
        conv
    } else {
        semi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use conevol_core::rational_new;
    use proptest::prelude::*;

    fn exact(n: i64, d: i64) -> ExactScalar {
        PiScalar::angle(rational_new(n, d).unwrap())
    }

    #[test]
    fn grammar_examples() {
        let a = parse_angle("2/3*pi").unwrap();
        assert_eq!(a.parsed, exact(2, 3));
        assert_eq!(a.mode, AngleMode::PiRational);
        assert_eq!(parse_angle("pi").unwrap().parsed, exact(1, 1));
        assert_eq!(parse_angle(" - 5 / 6 PI ").unwrap().parsed, exact(-5, 6));
        assert_eq!(parse_angle("+3pi").unwrap().parsed, exact(3, 1));
        assert_eq!(parse_angle("*pi").unwrap().parsed, exact(1, 1));
        assert_eq!(parse_angle("4/6*Pi").unwrap().parsed, exact(2, 3));
    }

    #[test]
    fn float_input_snaps_to_rational_pi() {
        let a = parse_angle("1.0471975512").unwrap();
        assert_eq!(a.mode, AngleMode::RadiansFloat);
        assert_eq!(a.parsed, exact(1, 3));
        assert!(a.approximation_error.unwrap().abs() < 1e-10);

        let a = parse_angle("-2").unwrap();
        assert!(a.parsed.coeff() < &Rational::from_integer(0.into()));
        assert!(a.parsed.coeff().denom() <= &BigInt::from(MAX_APPROX_DENOM));
    }

    #[test]
    fn malformed_inputs() {
        let e = parse_angle("2/0*pi").unwrap_err();
        assert_eq!(e.message, "zero denominator");
        assert_eq!(e.position, 2);

        let e = parse_angle("2/*pi").unwrap_err();
        assert_eq!((e.position, e.message.as_str()), (2, "expected digits"));

        let e = parse_angle("2/3*p").unwrap_err();
        assert_eq!(e.message, "expected 'pi'");
        assert_eq!(e.position, 4);

        let e = parse_angle("pi2").unwrap_err();
        assert_eq!(
            (e.position, e.message.as_str()),
            (2, "unexpected trailing input")
        );

        assert!(parse_angle("").is_err());
        assert!(parse_angle("abc").is_err());
        assert!(parse_angle("inf").is_err());
        assert!(parse_angle("NaN").is_err());
        assert!(parse_angle("1.5.2").is_err());
        assert!(parse_angle("2**pi").is_err());
    }

    // Brute force over every denominator up to the bound.
    fn brute_distance(x: &Rational, max_denom: i64) -> Rational {
        let mut best: Option<Rational> = None;
        for d in 1..=max_denom {
            let dr = Rational::from_integer(d.into());
            let centre = (x * &dr).round().to_integer();
            for n in [&centre - 1, centre.clone(), &centre + 1] {
                let dist = (Rational::new(n, d.into()) - x).abs();
                if best.as_ref().is_none_or(|b| &dist < b) {
                    best = Some(dist);
                }
            }
        }
        best.unwrap()
    }

    proptest! {
        #[test]
        fn approximation_is_best(n in -100_000i64..100_000, d in 1i64..100_000, bound in 1u64..300) {
            let x = Rational::new(n.into(), d.into());
            let got = best_approximation(&x, bound);
            prop_assert!(got.denom() <= &BigInt::from(bound));
            prop_assert_eq!((&got - &x).abs(), brute_distance(&x, bound as i64));
        }

        #[test]
        fn render_parse_fixed_point(n in -100_000i64..100_000, d in 1i64..100_000) {
            prop_assume!(n != 0);
            let a = PiScalar::angle(Rational::new(n.into(), d.into()));
            let once = parse_angle(&a.to_string()).unwrap();
            prop_assert_eq!(&once.parsed, &a);
            prop_assert_eq!(once.mode, AngleMode::PiRational);
            let twice = parse_angle(&once.parsed.to_string()).unwrap();
            prop_assert_eq!(twice.parsed, once.parsed);
        }
    }

    #[test]
    fn zero_renders_and_reparses_as_zero() {
        let z = parse_angle("0*pi").unwrap().parsed;
        assert!(z.is_zero());
        assert_eq!(parse_angle(&z.to_string()).unwrap().parsed, z);
    }
}
