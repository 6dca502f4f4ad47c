//! Integrability exponents in `(0, ∞]` and exact rational index arithmetic.
//!
//! Index predicates compare quantities such as `1/p + 1/r` against 1 or `s`
//! against `d(1/r + 1/p - 1)`; those comparisons are done in exact rational
//! arithmetic so that boundary tuples are classified correctly. `1/∞ = 0`.

use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// Exact rational number used for smoothness indices and orders.
pub type Rational = Ratio<i128>;

/// Parses `"3"`, `"-0.25"`, `"4/3"` or `"1e-2"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::InvalidIndex(alloc::format!("cannot parse `{text}` as a rational"));
    if let Some((num, den)) = t.split_once('/') {
        let n: i128 = num.trim().parse().map_err(|_| bad())?;
        let d: i128 = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if int_part.len() + frac_part.len() > 30 || exp.abs() > 30 {
        return Err(bad());
    }
    let mut num: i128 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        num = num * 10 + (c as u8 - b'0') as i128;
    }
    let scale = exp - frac_part.len() as i32;
    let mut r = Rational::from_integer(num);
    let ten = Rational::from_integer(10);
    for _ in 0..scale.abs() {
        r = if scale > 0 { r * ten } else { r / ten };
    }
    Ok(if neg { -r } else { r })
}

/// Rational approximation of a finite float (continued fractions).
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::InvalidIndex(alloc::format!("{x} is not finite")));
    }
    Rational::approximate_float(x)
        .ok_or_else(|| Error::InvalidIndex(alloc::format!("{x} has no rational approximation")))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Integrability exponent `p ∈ (0, ∞]`, stored through its reciprocal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent {
    recip: Rational,
}

impl Exponent {
    pub const INFINITY: Exponent = Exponent {
        recip: Ratio::new_raw(0, 1),
    };

    pub fn finite(p: Rational) -> Result<Self> {
        if p <= Rational::zero() {
            return Err(Error::InvalidIndex(alloc::format!("exponent {p} must be positive")));
        }
        Ok(Self { recip: p.recip() })
    }

    pub fn from_int(p: i128) -> Result<Self> {
        Self::finite(Rational::from_integer(p))
    }

    /// Accepts `+∞` as well as positive floats.
    pub fn from_f64(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Self::INFINITY)
        } else {
            Self::finite(rational_from_f64(p)?)
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    #[inline]
    pub fn recip(&self) -> Rational {
        self.recip
    }

    #[inline]
    pub fn is_infinite(&self) -> bool {
        self.recip.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            rational_to_f64(&self.recip.recip())
        }
    }

    /// `1/p'` with `1/p + 1/p' = 1`; `p' = ∞` whenever `p ≤ 1`.
    pub fn conjugate_recip(&self) -> Rational {
        let c = Rational::from_integer(1) - self.recip;
        if c.is_negative() {
            Rational::zero()
        } else {
            c
        }
    }

    pub fn conjugate(&self) -> Exponent {
        Exponent {
            recip: self.conjugate_recip(),
        }
    }

    /// True for `1 ≤ p ≤ ∞`.
    pub fn is_banach(&self) -> bool {
        self.recip <= Rational::from_integer(1)
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        other.recip.cmp(&self.recip)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            let p = self.recip.recip();
            if p.is_integer() {
                write!(f, "{}", p.numer())
            } else {
                write!(f, "{}/{}", p.numer(), p.denom())
            }
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "infinity" | "∞" => Ok(Self::INFINITY),
            other => Self::finite(parse_rational(other)?),
        }
    }
}
