//! Exact probabilities and the probability scalar used by model parameters.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbabilityError {
    #[error("probability {0} is outside [0, 1]")]
    OutOfRange(String),
    #[error("cannot parse probability {0:?}")]
    Parse(String),
    #[error("exact computation needs a rational probability \"a/b\", got {0:?}")]
    NotRational(String),
}

/// Scalar used for model probabilities: `f64` for Monte Carlo, `Rational`
/// for exact evaluation.
pub trait Probability: Clone + fmt::Debug + fmt::Display + Send + Sync {
    fn to_f64(&self) -> f64;
    fn in_unit_interval(&self) -> bool;
    /// `1 - self`.
    fn complement(&self) -> Self;
}

impl Probability for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }

    fn in_unit_interval(&self) -> bool {
        (0.0..=1.0).contains(self)
    }

    fn complement(&self) -> Self {
        1.0 - self
    }
}

impl Probability for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn in_unit_interval(&self) -> bool {
        !self.is_negative() && *self <= Rational::one()
    }

    fn complement(&self) -> Self {
        Rational::one() - self
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a/b"` or an integer literal as an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ProbabilityError> {
    let s = s.trim();
    let parse_int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| ProbabilityError::NotRational(s.to_string()));
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let den = parse_int(b)?;
            if den.is_zero() {
                return Err(ProbabilityError::Parse(s.to_string()));
            }
            Rational::new(parse_int(a)?, den)
        }
        None => Rational::from_integer(parse_int(s)?),
    };
    Ok(r)
}

/// Parses a probability given either as `"a/b"` or as a decimal.
pub fn parse_probability_f64(s: &str) -> Result<f64, ProbabilityError> {
    let t = s.trim();
    let v = if t.contains('/') {
        Probability::to_f64(&parse_rational(t)?)
    } else {
        t.parse::<f64>().map_err(|_| ProbabilityError::Parse(s.to_string()))?
    };
    if !v.in_unit_interval() {
        return Err(ProbabilityError::OutOfRange(s.to_string()));
    }
    Ok(v)
}

pub fn parse_probability_exact(s: &str) -> Result<Rational, ProbabilityError> {
    let r = parse_rational(s)?;
    if !r.in_unit_interval() {
        return Err(ProbabilityError::OutOfRange(s.to_string()));
    }
    Ok(r)
}

/// An exact probability in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProb(Rational);

impl ExactProb {
    pub fn new(value: Rational) -> Result<Self, ProbabilityError> {
        if !value.in_unit_interval() {
            return Err(ProbabilityError::OutOfRange(value.to_string()));
        }
        Ok(ExactProb(value))
    }

    /// Wraps a value known to lie in `[0, 1]`.
    pub(crate) fn from_unchecked(value: Rational) -> Self {
        debug_assert!(value.in_unit_interval(), "{value}");
        ExactProb(value)
    }

    pub fn zero() -> Self {
        ExactProb(Rational::zero())
    }

    pub fn one() -> Self {
        ExactProb(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        Probability::to_f64(&self.0)
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for ExactProb {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

/// `base^exp` for a rational base; `0^0 = 1`.
pub(crate) fn pow(base: &Rational, exp: u64) -> Rational {
    num_traits::pow::pow(base.clone(), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("1/3").unwrap(), rational(1, 3));
        assert_eq!(parse_rational("2/4").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("1").unwrap(), rational(1, 1));
        assert!(matches!(parse_rational("0.5"), Err(ProbabilityError::NotRational(_))));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_probability_exact("4/3").is_err());
        assert_eq!(parse_probability_f64("0.25").unwrap(), 0.25);
        assert_eq!(parse_probability_f64("1/4").unwrap(), 0.25);
        assert!(parse_probability_f64("-0.1").is_err());
    }

    #[test]
    fn exact_prob_display_and_range() {
        assert_eq!(ExactProb::new(rational(2, 64)).unwrap().to_string(), "1/32");
        assert!(ExactProb::new(rational(3, 2)).is_err());
        assert_eq!(ExactProb::one().to_string(), "1");
        assert_eq!(pow(&rational(0, 1), 0), rational(1, 1));
    }
}
