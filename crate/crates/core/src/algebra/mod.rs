//! Exact polynomial arithmetic over the rationals.
//!
//! Univariate polynomials carry a variable tag, bivariate polynomials live in
//! `Q[x, y]`, and Laurent polynomials in `Q[λ, λ⁻¹]`. Determinants and
//! resultants are generic over the [`Ring`] trait so the same elimination code
//! runs over `Q`, `Q[u]` and `Q[x, y]`.

mod bi;
mod laurent;
mod matrix;
mod resultant;
mod uni;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use bi::{bi_gcd, squarefree_primitive, BiPoly};
pub use laurent::LaurentPoly;
pub use matrix::{det_bareiss, det_cofactor, determinant, PolyMatrix};
pub use resultant::{sylvester_matrix, sylvester_resultant};
pub use uni::{uni_gcd, UniPoly};

/// The exact base field.
pub type Rational = BigRational;

/// Variable tags for univariate polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    U,
    S,
    X,
    Y,
    T,
    Z,
    #[serde(rename = "L")]
    Lambda,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::S => "s",
            Var::X => "x",
            Var::Y => "y",
            Var::T => "t",
            Var::Z => "z",
            Var::Lambda => "L",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which ring operation [`poly_arith`]-style entry points perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Minimal commutative ring interface used by the generic elimination code.
///
/// Zero and one are produced from an existing element so that tagged
/// polynomial types can carry their variable along.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `Some(q)` with `self = q * divisor` when the division is exact.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
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
        if Zero::is_zero(divisor) {
            None
        } else {
            Some(self / divisor)
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Writes one term `c*m` of a polynomial in canonical text form.
///
/// `monomial` is empty for the constant term. The sign is written by the
/// caller-facing separator logic: the first term carries a leading `-`, later
/// terms are joined with ` + ` or ` - `.
pub(crate) fn write_term(
    out: &mut String,
    first: bool,
    coeff: &Rational,
    monomial: &str,
) {
    let negative = coeff.is_negative();
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let abs = coeff.abs();
    if monomial.is_empty() {
        out.push_str(&fmt_rational(&abs));
    } else if abs.is_one() {
        out.push_str(monomial);
    } else {
        out.push_str(&fmt_rational(&abs));
        out.push('*');
        out.push_str(monomial);
    }
}

pub(crate) fn power_str(name: &str, exp: i64) -> String {
    match exp {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{exp}"),
    }
}

/// `p/q` with `/1` omitted.
/// Parses `n` or `n/d` with an optional leading `-`.
pub fn parse_rational(text: &str) -> crate::error::Result<Rational> {
    let bad = || crate::error::Error::validation(format!("'{text}' is not a rational number"));
    let t = text.trim();
    let (num, den) = t.split_once('/').unwrap_or((t, "1"));
    let digits = |s: &str| {
        let s = s.strip_prefix('-').unwrap_or(s);
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num) || !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
