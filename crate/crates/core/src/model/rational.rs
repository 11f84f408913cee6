//! Exact truth values in the closed unit interval.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("value {0} is outside [0,1]")]
    OutOfRange(String),
}

/// A truth value `n/d` with `0 <= n/d <= 1`, always kept in reduced form.
///
/// Equality is exact. All arithmetic that the logic needs (Łukasiewicz
/// connectives, products, min/max) maps `[0,1]` back into `[0,1]`, so the
/// operations below never leave the interval.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational01(BigRational);

impl Rational01 {
    pub fn zero() -> Self {
        Rational01(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational01(BigRational::one())
    }

    pub fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    /// Panics when `num/den` is not a value in `[0,1]`; use [`Rational01::new`]
    /// for untrusted input.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()))
            .unwrap_or_else(|e| panic!("from_ratio({num}, {den}): {e}"))
    }

    pub fn new(value: BigRational) -> Result<Self, RationalError> {
        if value.is_negative() || value > BigRational::one() {
            return Err(RationalError::OutOfRange(value.to_string()));
        }
        Ok(Rational01(value))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `1 - x`
    pub fn complement(&self) -> Self {
        Rational01(BigRational::one() - &self.0)
    }

    /// Łukasiewicz t-norm `max(0, x + y - 1)`.
    pub fn t_norm(&self, other: &Self) -> Self {
        let v = &self.0 + &other.0 - BigRational::one();
        if v.is_negative() {
            Self::zero()
        } else {
            Rational01(v)
        }
    }

    /// Residuum `min(1, 1 - x + y)`.
    pub fn residuum(&self, other: &Self) -> Self {
        if self.0 <= other.0 {
            Self::one()
        } else {
            Rational01(BigRational::one() - &self.0 + &other.0)
        }
    }

    /// Bounded sum `min(1, x + y)`.
    pub fn bounded_sum(&self, other: &Self) -> Self {
        let v = &self.0 + &other.0;
        if v > BigRational::one() {
            Self::one()
        } else {
            Rational01(v)
        }
    }

    /// Real product; closed on `[0,1]`.
    pub fn product(&self, other: &Self) -> Self {
        Rational01(&self.0 * &other.0)
    }

    /// Plain-decimal rendering: exact when the expansion terminates,
    /// otherwise rounded to `digits` places.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        decimal_string(&self.0, digits)
    }
}

fn decimal_string(value: &BigRational, digits: usize) -> String {
    let numer = value.numer();
    let denom = value.denom();
    let int_part = numer / denom;
    let mut rem = numer % denom;
    if rem.is_zero() {
        return int_part.to_string();
    }
    let ten = BigInt::from(10);
    let mut frac = String::new();
    for _ in 0..digits {
        rem *= &ten;
        frac.push(char::from(b'0' + (&rem / denom).to_u8().unwrap_or(0)));
        rem %= denom;
        if rem.is_zero() {
            return format!("{int_part}.{frac}");
        }
    }
    // round half up on the next digit
    rem *= &ten;
    let next = (&rem / denom).to_u8().unwrap_or(0);
    if next >= 5 {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled: BigInt = int_part * &scale + frac.parse::<BigInt>().unwrap_or_default() + 1;
        let int_part = &scaled / &scale;
        let frac = (&scaled % &scale).to_string();
        let frac = format!("{frac:0>digits$}");
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            return int_part.to_string();
        }
        return format!("{int_part}.{frac}");
    }
    format!("{int_part}.{}", frac.trim_end_matches('0'))
}

/// Parses `"3/5"`, `"0.6"`, `"1"` or `".5"` exactly.
fn parse_exact(text: &str) -> Result<BigRational, RationalError> {
    let s = text.trim();
    let malformed = || RationalError::Malformed(text.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| malformed())?;
        let d: BigInt = d.trim().parse().map_err(|_| malformed())?;
        if d.is_zero() {
            return Err(RationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    let digits_only = |p: &str| p.chars().all(|c| c.is_ascii_digit());
    let (negative, int) = match int.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, int),
    };
    if (int.is_empty() && frac.is_empty()) || !digits_only(int) || !digits_only(frac) {
        return Err(malformed());
    }
    let mut all = String::from(int);
    all.push_str(frac);
    let numer: BigInt = if all.is_empty() {
        BigInt::zero()
    } else {
        all.parse().map_err(|_| malformed())?
    };
    let denom = BigInt::from(10u32).pow(frac.len() as u32);
    let v = BigRational::new(numer, denom);
    Ok(if negative { -v } else { v })
}

impl FromStr for Rational01 {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rational01::new(parse_exact(s)?)
    }
}

impl fmt::Display for Rational01 {
    /// Always `n/d`, including `0/1` and `1/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An exact non-negative rational that is not confined to `[0,1]`; used for
/// statistics bounds and scenario parameters.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalError> {
    parse_exact(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_input_is_exact() {
        let v: Rational01 = "0.6".parse().unwrap();
        assert_eq!(v, Rational01::from_ratio(3, 5));
        assert_eq!("3/5".parse::<Rational01>().unwrap(), v);
        assert_eq!(".5".parse::<Rational01>().unwrap(), Rational01::half());
        assert_eq!("1".parse::<Rational01>().unwrap(), Rational01::one());
    }

    #[test]
    fn rejects_out_of_range_and_garbage() {
        assert!(matches!(
            "1.2".parse::<Rational01>(),
            Err(RationalError::OutOfRange(_))
        ));
        assert!(matches!(
            "-0.1".parse::<Rational01>(),
            Err(RationalError::OutOfRange(_))
        ));
        assert!(matches!(
            "1/0".parse::<Rational01>(),
            Err(RationalError::ZeroDenominator(_))
        ));
        assert!(matches!(
            "abc".parse::<Rational01>(),
            Err(RationalError::Malformed(_))
        ));
        assert!(matches!(
            ".".parse::<Rational01>(),
            Err(RationalError::Malformed(_))
        ));
    }

    #[test]
    fn lukasiewicz_operations() {
        let x = Rational01::from_ratio(4, 5);
        let y = Rational01::from_ratio(9, 10);
        assert_eq!(x.t_norm(&y), Rational01::from_ratio(7, 10));
        assert_eq!(y.residuum(&x), Rational01::from_ratio(9, 10));
        assert_eq!(x.residuum(&y), Rational01::one());
        assert_eq!(x.bounded_sum(&y), Rational01::one());
        assert_eq!(Rational01::zero().complement(), Rational01::one());
        assert_eq!(x.product(&y), Rational01::from_ratio(18, 25));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Rational01::zero().to_string(), "0/1");
        assert_eq!(Rational01::one().to_string(), "1/1");
        assert_eq!(Rational01::from_ratio(4, 5).to_decimal_string(6), "0.8");
        assert_eq!(
            Rational01::from_ratio(193, 250).to_decimal_string(6),
            "0.772"
        );
        assert_eq!(
            Rational01::from_ratio(1, 3).to_decimal_string(6),
            "0.333333"
        );
        assert_eq!(
            Rational01::from_ratio(2, 3).to_decimal_string(6),
            "0.666667"
        );
        assert_eq!(
            Rational01::from_ratio(9_999_999, 10_000_000).to_decimal_string(6),
            "1"
        );
    }
}
