//! Polynomials with integer coefficients in half-integer powers of `q`.
//!
//! An exponent is stored as the numerator `n` of `n/2`, so `q` is the term
//! with numerator 2 and `q^{1/2}` the term with numerator 1.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer polynomial in `q^{1/2}`. Zero coefficients are never stored, so
/// structural equality is value equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfExpPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl HalfExpPoly {
    pub fn zero() -> Self {
        HalfExpPoly::default()
    }

    pub fn one() -> Self {
        HalfExpPoly::monomial(0, 1)
    }

    /// `q`
    pub fn q() -> Self {
        HalfExpPoly::monomial(2, 1)
    }

    /// `coeff * q^{half_exp/2}`
    pub fn monomial(half_exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = HalfExpPoly::zero();
        p.add_term(half_exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(numerator, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = HalfExpPoly::zero();
        for (n, c) in terms {
            p.add_term(n, c.into());
        }
        p
    }

    fn add_term(&mut self, half_exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(half_exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&half_exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of `q^{half_exp/2}`.
    pub fn coeff(&self, half_exp: i64) -> BigInt {
        self.terms.get(&half_exp).cloned().unwrap_or_default()
    }

    /// True iff every exponent is a nonnegative integer power of `q`.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|&n| n >= 0 && n % 2 == 0)
    }

    /// Largest exponent numerator, `None` for the zero polynomial.
    pub fn max_half_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    /// Multiplies by `q^{half_exp/2}`.
    pub fn shift(&self, half_exp: i64) -> Self {
        HalfExpPoly {
            terms: self.terms.iter().map(|(&n, c)| (n + half_exp, c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return HalfExpPoly::zero();
        }
        HalfExpPoly {
            terms: self.terms.iter().map(|(&n, c)| (n, c * factor)).collect(),
        }
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl Add for &HalfExpPoly {
    type Output = HalfExpPoly;

    fn add(self, rhs: &HalfExpPoly) -> HalfExpPoly {
        let mut out = self.clone();
        for (&n, c) in &rhs.terms {
            out.add_term(n, c.clone());
        }
        out
    }
}

impl Add for HalfExpPoly {
    type Output = HalfExpPoly;

    fn add(self, rhs: HalfExpPoly) -> HalfExpPoly {
        &self + &rhs
    }
}

impl Neg for &HalfExpPoly {
    type Output = HalfExpPoly;

    fn neg(self) -> HalfExpPoly {
        HalfExpPoly {
            terms: self.terms.iter().map(|(&n, c)| (n, -c)).collect(),
        }
    }
}

impl Neg for HalfExpPoly {
    type Output = HalfExpPoly;

    fn neg(self) -> HalfExpPoly {
        -&self
    }
}

impl Sub for &HalfExpPoly {
    type Output = HalfExpPoly;

    fn sub(self, rhs: &HalfExpPoly) -> HalfExpPoly {
        let mut out = self.clone();
        for (&n, c) in &rhs.terms {
            out.add_term(n, -c);
        }
        out
    }
}

impl Sub for HalfExpPoly {
    type Output = HalfExpPoly;

    fn sub(self, rhs: HalfExpPoly) -> HalfExpPoly {
        &self - &rhs
    }
}

impl Mul for &HalfExpPoly {
    type Output = HalfExpPoly;

    fn mul(self, rhs: &HalfExpPoly) -> HalfExpPoly {
        let mut out = HalfExpPoly::zero();
        for (&n1, c1) in &self.terms {
            for (&n2, c2) in &rhs.terms {
                out.add_term(n1 + n2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for HalfExpPoly {
    type Output = HalfExpPoly;

    fn mul(self, rhs: HalfExpPoly) -> HalfExpPoly {
        &self * &rhs
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, n: i64) -> fmt::Result {
    match n {
        1 => write!(f, "q^(1/2)"),
        2 => write!(f, "q"),
        n if n % 2 == 0 => write!(f, "q^{}", n / 2),
        n => write!(f, "q^({n}/2)"),
    }
}

/// Text form: `1 + q`, `3*q^(1/2)`, `1 + 2*q + q^2`; terms ascend by exponent
/// and the zero polynomial prints as `0`.
impl fmt::Display for HalfExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&n, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if n == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if c.is_one() {
            } else if (-c).is_one() {
                write!(f, "-")?;
            } else {
                write!(f, "{c}*")?;
            }
            write_power(f, n)?;
        }
        Ok(())
    }
}

fn parse_power(s: &str) -> Result<i64> {
    let bad = || Error::Parse(alloc::format!("bad power of q: {s:?}"));
    let rest = s.strip_prefix('q').ok_or_else(bad)?;
    if rest.is_empty() {
        return Ok(2);
    }
    let exp = rest.strip_prefix('^').ok_or_else(bad)?;
    if let Some(inner) = exp.strip_prefix('(').and_then(|e| e.strip_suffix(')')) {
        let (num, den) = inner.split_once('/').ok_or_else(bad)?;
        if den.trim() != "2" {
            return Err(bad());
        }
        return num.trim().parse().map_err(|_| bad());
    }
    exp.parse::<i64>().map(|k| 2 * k).map_err(|_| bad())
}

fn parse_term(term: &str) -> Result<(i64, BigInt)> {
    let term = term.trim();
    let bad = || Error::Parse(alloc::format!("bad polynomial term: {term:?}"));
    if term.is_empty() {
        return Err(bad());
    }
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-1, rest.trim_start()),
        None => (1, term),
    };
    let (coeff, power) = if let Some((c, p)) = body.split_once('*') {
        (c.trim().parse::<BigInt>().map_err(|_| bad())?, parse_power(p.trim())?)
    } else if body.starts_with('q') {
        (BigInt::one(), parse_power(body)?)
    } else {
        (body.parse::<BigInt>().map_err(|_| bad())?, 0)
    };
    Ok((power, coeff * sign))
}

impl FromStr for HalfExpPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".to_string()));
        }
        // Normalize " - " into "+ -" so both spellings split the same way.
        let normalized: String = s.replace(" - ", " + -");
        let mut p = HalfExpPoly::zero();
        for term in normalized.split(" + ") {
            let (n, c) = parse_term(term)?;
            p.add_term(n, c);
        }
        Ok(p)
    }
}

impl From<i64> for HalfExpPoly {
    fn from(c: i64) -> Self {
        HalfExpPoly::monomial(0, c)
    }
}

/// `(numerator, coefficient)` pairs in ascending exponent order.
pub fn to_pairs(p: &HalfExpPoly) -> Vec<(i64, BigInt)> {
    p.terms.iter().map(|(&n, c)| (n, c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HalfExpPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&HalfExpPoly::one() + &HalfExpPoly::q(), p("1 + q"));
        assert_eq!(p("1 + q") + p("-q"), HalfExpPoly::one());
        let half = HalfExpPoly::monomial(1, 1);
        assert_eq!(&half + &half, HalfExpPoly::monomial(1, 2));
    }

    #[test]
    fn mul_examples() {
        let half = HalfExpPoly::monomial(1, 1);
        assert_eq!(&half * &half, HalfExpPoly::q());
        assert_eq!(p("1 + q") * HalfExpPoly::one(), p("1 + q"));
        assert_eq!(p("1 + q") * p("1 + q"), p("1 + 2*q + q^2"));
    }

    #[test]
    fn coeff_examples() {
        assert_eq!(p("1 + q").coeff(2), BigInt::from(1));
        assert_eq!(p("1 + q").coeff(1), BigInt::from(0));
        assert_eq!(HalfExpPoly::monomial(1, 3).coeff(1), BigInt::from(3));
    }

    #[test]
    fn integrality() {
        assert!(p("1 + q").is_integral());
        assert!(!HalfExpPoly::monomial(1, 1).is_integral());
        assert!(HalfExpPoly::zero().is_integral());
        assert!(!HalfExpPoly::monomial(-2, 1).is_integral());
    }

    #[test]
    fn text_form() {
        assert_eq!(HalfExpPoly::zero().to_string(), "0");
        assert_eq!(p("1 + q").to_string(), "1 + q");
        assert_eq!(HalfExpPoly::monomial(1, 3).to_string(), "3*q^(1/2)");
        assert_eq!(HalfExpPoly::monomial(3, 1).to_string(), "q^(3/2)");
        assert_eq!(p("1 + 2*q + q^2").to_string(), "1 + 2*q + q^2");
        assert_eq!(p("1 - q").to_string(), "1 + -q");
        assert_eq!(p("-2 + -3*q^(5/2)").coeff(5), BigInt::from(-3));
        assert_eq!(p("0"), HalfExpPoly::zero());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<HalfExpPoly>().is_err());
        assert!("1 + x".parse::<HalfExpPoly>().is_err());
        assert!("q^(1/3)".parse::<HalfExpPoly>().is_err());
        assert!("2*".parse::<HalfExpPoly>().is_err());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = HalfExpPoly::from_terms([(2, 1), (2, -1), (0, 0)]);
        assert!(a.is_zero());
        assert_eq!(a, HalfExpPoly::zero());
    }
}
