//! Dense univariate polynomials over an exact coefficient ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};

/// Coefficients stored constant term first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<R> {
    coefs: Vec<R>,
}

/// Polynomial with exact rational coefficients.
pub type RationalPolynomial = Polynomial<BigRational>;

impl<R: Clone + Zero + PartialEq> Polynomial<R> {
    pub fn new(mut coefs: Vec<R>) -> Self {
        while coefs.last().is_some_and(Zero::is_zero) {
            coefs.pop();
        }
        Polynomial { coefs }
    }

    pub fn zero() -> Self {
        Polynomial { coefs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coefs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coefs.len().checked_sub(1)
    }

    pub fn coefs(&self) -> &[R] {
        &self.coefs
    }

    pub fn coef(&self, i: usize) -> R {
        self.coefs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coefs.last()
    }
}

impl<R: Clone + Zero + One + PartialEq> Polynomial<R> {
    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coefs = vec![R::zero(); n + 1];
        coefs[n] = R::one();
        Polynomial { coefs }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }
}

impl<R> Polynomial<R>
where
    R: Clone + Zero + One + PartialEq + Sub<Output = R> + Mul<Output = R>,
{
    /// Quotient by a monic divisor, with remainder.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = match divisor.degree() {
            Some(d) if divisor.is_monic() => d,
            _ => return Err(invalid("divisor must be monic and nonzero")),
        };
        let mut rem = self.coefs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![R::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].clone();
            if q.is_zero() {
                continue;
            }
            for (i, d) in divisor.coefs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - q.clone() * d.clone();
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }
}

impl<R: Clone + Zero + PartialEq + Add<Output = R>> Add for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        let n = self.coefs.len().max(rhs.coefs.len());
        Polynomial::new((0..n).map(|i| self.coef(i) + rhs.coef(i)).collect())
    }
}

impl<R: Clone + Zero + PartialEq + Sub<Output = R>> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        let n = self.coefs.len().max(rhs.coefs.len());
        Polynomial::new((0..n).map(|i| self.coef(i) - rhs.coef(i)).collect())
    }
}

impl<R: Clone + Zero + PartialEq + Neg<Output = R>> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        Polynomial::new(self.coefs.iter().cloned().map(Neg::neg).collect())
    }
}

impl<R: Clone + Zero + PartialEq + Mul<Output = R>> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![R::zero(); self.coefs.len() + rhs.coefs.len() - 1];
        for (i, a) in self.coefs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl RationalPolynomial {
    pub fn from_integers(coefs: &[i64]) -> Self {
        Polynomial::new(coefs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// Builds from `(numerator, denominator)` pairs, constant term first.
    pub fn from_fractions(coefs: &[(i64, i64)]) -> Result<Self> {
        let mut out = Vec::with_capacity(coefs.len());
        for &(n, d) in coefs {
            if d == 0 {
                return Err(invalid("zero denominator"));
            }
            out.push(BigRational::new(BigInt::from(n), BigInt::from(d)));
        }
        Ok(Polynomial::new(out))
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coefs.iter().all(BigRational::is_integer)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coefs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn eval_complex(&self, z: Complex<f64>) -> Complex<f64> {
        self.to_f64().iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Coefficients as `"num/den"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coefs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    pub fn from_strings(items: &[String]) -> Result<Self> {
        let coefs = items.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(coefs))
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || invalid(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        RationalPolynomial::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

impl<R: fmt::Display + Zero + One + PartialEq> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coefs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "({c})x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: fmt::Display + Zero + One + PartialEq> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_reports_degree() {
        let p = RationalPolynomial::from_integers(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(RationalPolynomial::from_integers(&[0]).degree(), None);
    }

    #[test]
    fn division_recovers_factors() {
        let a = RationalPolynomial::from_integers(&[-1, 1]);
        let b = RationalPolynomial::from_fractions(&[(1, 2), (3, 1), (1, 1)]).unwrap();
        let p = &a * &b;
        let (q, r) = p.div_rem_monic(&a).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        let (_, r) = (&p + &RationalPolynomial::from_integers(&[5])).div_rem_monic(&a).unwrap();
        assert_eq!(r, RationalPolynomial::from_integers(&[5]));
    }

    #[test]
    fn json_uses_fraction_strings() {
        let p = RationalPolynomial::from_fractions(&[(1, 1), (1, 1), (1, 4), (1, 1), (1, 1)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/1","1/1","1/4","1/1","1/1"]"#);
        let back: RationalPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<RationalPolynomial>(r#"["1/0"]"#).is_err());
    }

    #[test]
    fn display() {
        let p = RationalPolynomial::from_fractions(&[(1, 1), (0, 1), (-1, 2), (1, 1)]).unwrap();
        assert_eq!(p.to_string(), "x^3 + (-1/2)x^2 + 1");
    }
}
