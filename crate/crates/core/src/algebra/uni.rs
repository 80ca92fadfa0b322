use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{power_str, write_term, ArithOp, Rational, Ring, Var};
use crate::error::{Error, Result};

/// Dense univariate polynomial over `Q` in a tagged variable.
///
/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial has an empty coefficient vector and degree `None`.
///
/// Two polynomials compare equal when their coefficients agree and either their
/// tags agree or both are constants: a constant does not depend on its tag.
#[derive(Debug, Clone)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<Rational>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.var == other.var || self.coeffs.len() <= 1)
    }
}

impl Eq for UniPoly {}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Rational::one())
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::new(var, vec![c])
    }

    /// `c * var^k`.
    pub fn monomial(var: Var, c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero(var);
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { var, coeffs }
    }

    /// The polynomial `var` itself.
    pub fn variable(var: Var) -> Self {
        Self::monomial(var, Rational::one(), 1)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Same coefficients, new tag (e.g. the substitution `u ↦ x`).
    pub fn with_var(&self, var: Var) -> Self {
        UniPoly { var, coeffs: self.coeffs.clone() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    fn result_var(&self, other: &Self) -> Result<Var> {
        if self.var == other.var || other.is_constant() {
            Ok(self.var)
        } else if self.is_constant() {
            Ok(other.var)
        } else {
            Err(Error::validation(format!(
                "variable mismatch: polynomial in {} combined with polynomial in {}",
                self.var, other.var
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let var = self.result_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Ok(Self::new(var, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let var = self.result_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(var));
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self::new(var, coeffs))
    }

    /// Ring arithmetic with an explicit variable check.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { var: self.var, coeffs }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        Self::new(self.var, coeffs)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// `self(var ↦ -var)`.
    pub fn negate_var(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        UniPoly { var: self.var, coeffs }
    }

    /// Euclidean division over `Q`. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let var = self.result_var(divisor).unwrap_or(self.var);
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = divisor.lead().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(var), Self::new(var, rem));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * d;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(var, quot), Self::new(var, rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    /// Clears denominators and removes the integer content, keeping the sign
    /// of the leading coefficient positive.
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (scale, _) = super::bi::integer_normalizer(self.coeffs.iter(), &self.lead());
        self.scale(&scale)
    }
}

/// Monic gcd over `Q`; `gcd(0, 0) = 0`.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.try_add(rhs).expect("UniPoly addition")
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.try_sub(rhs).expect("UniPoly subtraction")
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.try_mul(rhs).expect("UniPoly multiplication")
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Ring for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.var)
    }
    fn one_like(&self) -> Self {
        UniPoly::one(self.var)
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(&mut out, first, c, &power_str(self.var.name(), k as i64));
            first = false;
        }
        f.write_str(&out)
    }
}
