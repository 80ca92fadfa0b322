//! Differential operators `Σ p_i(s) ∂^i` with polynomial coefficients, and
//! their action on `Q[z]` through `∂ ↦ z`, `s ↦ -d/dz`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{power_str, write_term, Rational, UniPoly, Var};

/// Normal-ordered element of the Weyl algebra: `coeffs[i]` multiplies `∂^i`
/// from the left. No trailing zero coefficients; the zero operator has none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylOp {
    coeffs: Vec<UniPoly>,
}

impl WeylOp {
    pub fn new(coeffs: Vec<UniPoly>) -> Self {
        let mut coeffs: Vec<UniPoly> = coeffs.into_iter().map(|c| c.with_var(Var::S)).collect();
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        WeylOp { coeffs }
    }

    pub fn zero() -> Self {
        WeylOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![UniPoly::constant(Var::S, c)])
    }

    /// `∂^k`.
    pub fn d_power(k: usize) -> Self {
        Self::term(UniPoly::one(Var::S), k)
    }

    /// `s`.
    pub fn s() -> Self {
        Self::term(UniPoly::variable(Var::S), 0)
    }

    /// `p(s) ∂^k`.
    pub fn term(p: UniPoly, k: usize) -> Self {
        let mut coeffs = vec![UniPoly::zero(Var::S); k];
        coeffs.push(p);
        Self::new(coeffs)
    }

    /// Builds from integer data: `rows[i]` lists the coefficients of `p_i(s)`.
    pub fn from_int_coeffs(rows: &[&[i64]]) -> Self {
        Self::new(rows.iter().map(|r| UniPoly::from_ints(Var::S, r)).collect())
    }

    /// The constant-coefficient operator `p(∂)`.
    pub fn from_d_polynomial(p: &UniPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| UniPoly::constant(Var::S, c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> UniPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| UniPoly::zero(Var::S))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `∂`-degree, `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> UniPoly {
        self.coeffs.last().cloned().unwrap_or_else(|| UniPoly::zero(Var::S))
    }

    pub fn has_constant_leading_coefficient(&self) -> bool {
        !self.is_zero() && self.leading_coefficient().is_constant()
    }

    /// Largest `s`-degree among the coefficients.
    pub fn s_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(UniPoly::degree).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `[self, other] = self·other - other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Action on `Q[z]`: `Σ_i p_i(-d/dz)(z^i · v)`.
    pub fn z_action(&self, v: &UniPoly) -> UniPoly {
        let v = v.with_var(Var::Z);
        let mut out = UniPoly::zero(Var::Z);
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let mut w = v.shift(i);
            // p(-d/dz) w = Σ_k p_k (-1)^k w^{(k)}
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let c = if k % 2 == 1 { -c } else { c.clone() };
                    out = &out + &w.scale(&c);
                }
                w = w.derivative();
                if w.is_zero() {
                    break;
                }
            }
        }
        out
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

impl Mul for &WeylOp {
    type Output = WeylOp;

    /// Normal-ordered product via the Leibniz rule
    /// `∂^i q(s) = Σ_k C(i, k) q^{(k)}(s) ∂^{i-k}`.
    fn mul(self, rhs: &WeylOp) -> WeylOp {
        if self.is_zero() || rhs.is_zero() {
            return WeylOp::zero();
        }
        let mut out = vec![UniPoly::zero(Var::S); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in rhs.coeffs.iter().enumerate() {
                let mut dq = q.clone();
                for k in 0..=i {
                    if dq.is_zero() {
                        break;
                    }
                    let c = Rational::from_integer(binomial(i, k));
                    out[i + j - k] = &out[i + j - k] + &(p * &dq).scale(&c);
                    dq = dq.derivative();
                }
            }
        }
        WeylOp::new(out)
    }
}

impl Add for &WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: &WeylOp) -> WeylOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        WeylOp::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: &WeylOp) -> WeylOp {
        self + &-rhs
    }
}

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        WeylOp { coeffs: self.coeffs.iter().map(|p| -p).collect() }
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (i, p) in self.coeffs.iter().enumerate().rev() {
            for (k, c) in p.coeffs().iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let mono = [power_str("s", k as i64), power_str("D", i as i64)]
                    .into_iter()
                    .filter(|m| !m.is_empty())
                    .collect::<Vec<_>>()
                    .join("*");
                write_term(&mut out, first, c, &mono);
                first = false;
            }
        }
        f.write_str(&out)
    }
}
