use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{power_str, write_term, Rational};
use crate::error::{Error, Result};

/// Laurent polynomial in `λ` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * λ^k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn lambda() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(k, c)| (k, super::int(c))))
    }

    pub(crate) fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent.
    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent.
    pub fn bot(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    /// Multiplication by `λ^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// `λ ↦ λ⁻¹`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Integer powers; negative powers only exist for monomials.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            let mut acc = Self::one();
            for _ in 0..k {
                acc = &acc * self;
            }
            return Ok(acc);
        }
        if self.terms.len() != 1 {
            return Err(Error::validation(
                "negative powers are defined only for Laurent monomials",
            ));
        }
        let (&e, c) = self.terms.iter().next().expect("one term");
        let base = Self::monomial(c.recip(), -e);
        base.pow(-k)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &-rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut out, i == 0, c, &power_str("L", *k));
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_shift() {
        let p = LaurentPoly::from_int_terms(&[(1, 1), (-1, 1)]);
        let got = &p * &LaurentPoly::lambda();
        assert_eq!(got, LaurentPoly::from_int_terms(&[(2, 1), (0, 1)]));
        assert_eq!(p.top(), Some(1));
        assert_eq!(p.bot(), Some(-1));
    }

    #[test]
    fn negative_powers() {
        let l = LaurentPoly::monomial(super::super::int(2), 1);
        assert_eq!(l.pow(-2).unwrap(), LaurentPoly::monomial(super::super::rat(1, 4), -2));
        let p = LaurentPoly::from_int_terms(&[(1, 1), (0, 1)]);
        assert!(p.pow(-1).is_err());
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_int_terms(&[(1, 1), (-1, 1), (0, -3)]);
        assert_eq!(p.to_string(), "L - 3 + L^-1");
    }
}
