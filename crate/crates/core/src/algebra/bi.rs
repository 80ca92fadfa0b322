use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{power_str, uni_gcd, write_term, Rational, Ring, UniPoly, Var};
use crate::error::{Error, Result};

/// Exponent pair `(e_x, e_y)`.
pub type Exps = (u32, u32);

/// Sparse polynomial in `Q[x, y]`.
///
/// Terms are ordered lexicographically with `y > x`: the leading term is the
/// one with the largest `y`-exponent, ties broken by the `x`-exponent. The same
/// order drives the canonical text and JSON forms and the sign normalization
/// of [`BiPoly::normalized`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<Exps, Rational>,
}

fn order_key(e: &Exps) -> (u32, u32) {
    (e.1, e.0)
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, ex: u32, ey: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((ex, ey), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exps, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds from integer coefficients, `[(e_x, e_y, c)]`.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(ex, ey, c)| ((ex, ey), super::int(c))))
    }

    /// Embeds a univariate polynomial in `x` or `y`.
    pub fn from_uni(p: &UniPoly) -> Result<Self> {
        let into_x = match p.var() {
            Var::X => true,
            Var::Y => false,
            _ if p.is_constant() => true,
            other => {
                return Err(Error::validation(format!(
                    "cannot embed a polynomial in {other} into Q[x, y]"
                )))
            }
        };
        Ok(Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            let k = k as u32;
            (if into_x { (k, 0) } else { (0, k) }, c.clone())
        })))
    }

    pub(crate) fn add_term(&mut self, e: Exps, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical (descending) order.
    pub fn sorted_terms(&self) -> Vec<(Exps, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by_key(|t| std::cmp::Reverse(order_key(&t.0)));
        v
    }

    pub fn coeff(&self, ex: u32, ey: u32) -> Rational {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    /// Leading term under the lex order with `y > x`.
    pub fn leading_term(&self) -> Option<(Exps, Rational)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| order_key(e))
            .map(|(e, c)| (*e, c.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn map_exps(&self, f: impl Fn(Exps, &Rational) -> (Exps, Rational)) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| f(*e, c)))
    }

    /// `f(x, y) ↦ f(y, x)`.
    pub fn swap_xy(&self) -> Self {
        self.map_exps(|(ex, ey), c| ((ey, ex), c.clone()))
    }

    /// `f(x, y) ↦ f(-y, x)`.
    pub fn fourier_xy(&self) -> Self {
        self.map_exps(|(ex, ey), c| ((ey, ex), if ex % 2 == 1 { -c } else { c.clone() }))
    }

    /// `f(x, y) ↦ f(-x, y)`.
    pub fn negate_x(&self) -> Self {
        self.map_exps(|(ex, ey), c| ((ex, ey), if ex % 2 == 1 { -c } else { c.clone() }))
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e.0 > 0).map(|(&(ex, ey), c)| {
            ((ex - 1, ey), c * Rational::from_integer(ex.into()))
        }))
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e.1 > 0).map(|(&(ex, ey), c)| {
            ((ex, ey - 1), c * Rational::from_integer(ey.into()))
        }))
    }

    /// View as a polynomial in `y` with coefficients in `Q[x]`, lowest first.
    pub fn to_y_coeffs(&self) -> Vec<UniPoly> {
        let Some(dy) = self.degree_y() else {
            return Vec::new();
        };
        let mut dense: Vec<Vec<Rational>> = vec![Vec::new(); dy as usize + 1];
        for (&(ex, ey), c) in &self.terms {
            let row = &mut dense[ey as usize];
            if row.len() <= ex as usize {
                row.resize(ex as usize + 1, Rational::zero());
            }
            row[ex as usize] = c.clone();
        }
        dense.into_iter().map(|c| UniPoly::new(Var::X, c)).collect()
    }

    pub fn from_y_coeffs(coeffs: &[UniPoly]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().flat_map(|(ey, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(ex, c)| ((ex as u32, ey as u32), c.clone()))
        }))
    }

    /// Exact division in `Q[x, y]`; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &BiPoly) -> Option<BiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d = divisor.to_y_coeffs();
        let dn = d.len() - 1;
        let mut rem = self.to_y_coeffs();
        if rem.len() < d.len() {
            return None;
        }
        let mut quot = vec![UniPoly::zero(Var::X); rem.len() - dn];
        for k in (dn..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = Ring::exact_div(&rem[k], &d[dn])?;
            for (j, dj) in d.iter().enumerate() {
                rem[k - dn + j] = &rem[k - dn + j] - &(&q * dj);
            }
            quot[k - dn] = q;
        }
        rem.iter().all(UniPoly::is_zero).then(|| Self::from_y_coeffs(&quot))
    }

    /// Primitive integer normalization: integer coefficients with content 1
    /// and a positive leading coefficient (lex order, `y > x`).
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            None => Self::zero(),
            Some((_, lead)) => {
                let (scale, _) = integer_normalizer(self.terms.values(), &lead);
                self.scale(&scale)
            }
        }
    }

    /// Removes the largest monomial `x^i y^j` dividing every term, returning
    /// the quotient and `(i, j)`.
    pub fn strip_monomial_factor(&self) -> (Self, Exps) {
        let ix = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let iy = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (
            self.map_exps(|(ex, ey), c| ((ex - ix, ey - iy), c.clone())),
            (ix, iy),
        )
    }

    /// Canonical JSON form: terms in canonical order as
    /// `{"exps": [e_x, e_y], "num": "...", "den": "..."}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|((ex, ey), c)| {
                    serde_json::json!({
                        "exps": [ex, ey],
                        "num": c.numer().to_string(),
                        "den": c.denom().to_string(),
                    })
                })
                .collect(),
        )
    }

    /// Decodes the canonical JSON form. Terms may appear in any order;
    /// duplicate exponents, zero or negative denominators and malformed
    /// integers are rejected.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let terms = value
            .as_array()
            .ok_or_else(|| Error::validation("polynomial JSON must be an array of terms"))?;
        let mut out = BTreeMap::new();
        for (i, term) in terms.iter().enumerate() {
            let bad = |what: &str| Error::validation(format!("term {i}: {what}"));
            let obj = term.as_object().ok_or_else(|| bad("not an object"))?;
            let exps = obj
                .get("exps")
                .and_then(|e| e.as_array())
                .ok_or_else(|| bad("missing exps array"))?;
            if exps.len() != 2 {
                return Err(bad("exps must have two entries"));
            }
            let exp = |v: &serde_json::Value| {
                v.as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| bad("exponent must be a non-negative 32-bit integer"))
            };
            let e = (exp(&exps[0])?, exp(&exps[1])?);
            let int_field = |name: &str| -> Result<BigInt> {
                let s = obj
                    .get(name)
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| bad(&format!("missing string field {name}")))?;
                parse_decimal(s).ok_or_else(|| bad(&format!("{name} is not a decimal integer")))
            };
            let num = int_field("num")?;
            let den = int_field("den")?;
            if !den.is_positive() {
                return Err(bad("denominator must be positive"));
            }
            let c = Rational::new(num, den);
            if out.insert(e, c).is_some() {
                return Err(bad("duplicate exponent"));
            }
        }
        Ok(Self::from_terms(out))
    }
}

fn parse_decimal(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Scale factor turning a list of rationals into coprime integers whose
/// designated leading entry is positive. Also returns the lcm of denominators.
pub(crate) fn integer_normalizer<'a>(
    coeffs: impl Iterator<Item = &'a Rational> + Clone,
    lead: &Rational,
) -> (Rational, BigInt) {
    let den_lcm = coeffs
        .clone()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num_gcd = coeffs.fold(BigInt::zero(), |acc, c| {
        let n = (c.numer() * &den_lcm) / c.denom();
        acc.gcd(&n)
    });
    let mut scale = Rational::new(den_lcm.clone(), num_gcd);
    if lead.is_negative() {
        scale = -scale;
    }
    (scale, den_lcm)
}

fn y_content(coeffs: &[UniPoly]) -> UniPoly {
    coeffs
        .iter()
        .fold(UniPoly::zero(Var::X), |acc, c| uni_gcd(&acc, c))
}

fn y_primitive_part(coeffs: &[UniPoly]) -> Vec<UniPoly> {
    let content = y_content(coeffs);
    if content.is_zero() {
        return Vec::new();
    }
    coeffs
        .iter()
        .map(|c| Ring::exact_div(c, &content).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder of `a` by `b` as polynomials in `y` over `Q[x]`.
fn y_pseudo_rem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let bn = b.len() - 1;
    let lc = &b[bn];
    let mut r: Vec<UniPoly> = a.to_vec();
    while r.len() > bn {
        let top = r.len() - 1;
        let lead = r[top].clone();
        let shift = top - bn;
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&lead * bj);
        }
        while r.last().is_some_and(UniPoly::is_zero) {
            r.pop();
        }
    }
    r
}

/// Greatest common divisor in `Q[x, y]`, normalized by [`BiPoly::normalized`].
///
/// Computed in `Q[x][y]` with a primitive remainder sequence: contents are
/// univariate gcds in `Q[x]`, and each pseudo-remainder is reduced to its
/// primitive part before the next step.
pub fn bi_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let ac = a.to_y_coeffs();
    let bc = b.to_y_coeffs();
    let content = uni_gcd(&y_content(&ac), &y_content(&bc));
    let mut f = y_primitive_part(&ac);
    let mut g = y_primitive_part(&bc);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = y_pseudo_rem(&f, &g);
        f = g;
        g = y_primitive_part(&r);
    }
    let pp = BiPoly::from_y_coeffs(&y_primitive_part(&f));
    let content = BiPoly::from_uni(&content).expect("content is a polynomial in x");
    (&pp * &content).normalized()
}

/// Squarefree primitive part: the canonical representative of the complex
/// vanishing locus of `f`.
///
/// Over a field of characteristic zero `gcd(f, ∂f/∂x, ∂f/∂y)` is the product
/// of the irreducible factors of `f` with multiplicity lowered by one, so
/// dividing it out leaves each factor exactly once.
pub fn squarefree_primitive(f: &BiPoly) -> Result<BiPoly> {
    if f.is_zero() {
        return Err(Error::validation("squarefree part of the zero polynomial"));
    }
    let partials = bi_gcd(&f.derivative_x(), &f.derivative_y());
    let repeated = if partials.is_zero() { f.normalized() } else { bi_gcd(f, &partials) };
    let sf = f
        .div_exact(&repeated)
        .expect("gcd divides the polynomial");
    Ok(sf.normalized())
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                out.add_term((ea.0 + eb.0, ea.1 + eb.1), a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Ring for BiPoly {
    fn zero_like(&self) -> Self {
        BiPoly::zero()
    }
    fn one_like(&self) -> Self {
        BiPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
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
        self.div_exact(divisor)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, ((ex, ey), c)) in self.sorted_terms().iter().enumerate() {
            let xs = power_str("x", *ex as i64);
            let ys = power_str("y", *ey as i64);
            let mono = match (xs.is_empty(), ys.is_empty()) {
                (true, _) => ys,
                (false, true) => xs,
                (false, false) => format!("{xs}*{ys}"),
            };
            write_term(&mut out, i == 0, c, &mono);
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    /// y^2 + y - (x-1)^3
    fn example_curve() -> BiPoly {
        let xm1 = &BiPoly::x() - &BiPoly::one();
        &(&BiPoly::y().pow(2) + &BiPoly::y()) - &xm1.pow(3)
    }

    fn cusp() -> BiPoly {
        &BiPoly::y().pow(2) - &BiPoly::x().pow(3)
    }

    #[test]
    fn canonical_text() {
        assert_eq!(example_curve().to_string(), "y^2 + y - x^3 + 3*x^2 - 3*x + 1");
        let p = BiPoly::from_terms([((1, 1), rat(-3, 2)), ((0, 0), int(1))]);
        assert_eq!(p.to_string(), "-3/2*x*y + 1");
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let a = &cusp() * &(&BiPoly::x() + &BiPoly::y());
        let b = &cusp() * &(&BiPoly::x() - &BiPoly::y());
        assert_eq!(bi_gcd(&a, &b), cusp());
    }

    #[test]
    fn gcd_idempotent_and_coprime() {
        let f = example_curve().scale(&rat(-3, 7));
        assert_eq!(bi_gcd(&f, &f), example_curve());
        assert_eq!(bi_gcd(&example_curve(), &BiPoly::x()), BiPoly::one());
    }

    #[test]
    fn gcd_with_pure_x_content() {
        // (x^2 - 1)(y - x) and (x - 1)(y + 2)
        let a = &(&BiPoly::x().pow(2) - &BiPoly::one()) * &(&BiPoly::y() - &BiPoly::x());
        let b = &(&BiPoly::x() - &BiPoly::one()) * &(&BiPoly::y() + &BiPoly::constant(int(2)));
        assert_eq!(bi_gcd(&a, &b), &BiPoly::x() - &BiPoly::one());
    }

    #[test]
    fn squarefree_examples() {
        let d = &BiPoly::y() - &BiPoly::x();
        assert_eq!(squarefree_primitive(&d.pow(2)).unwrap(), d);
        assert_eq!(squarefree_primitive(&example_curve()).unwrap(), example_curve());
        assert_eq!(squarefree_primitive(&cusp().scale(&int(6))).unwrap(), cusp());
        assert!(squarefree_primitive(&BiPoly::zero()).is_err());
        // mixed multiplicities: x^2 (y-1)^3 (y+x)
        let f = &(&BiPoly::x().pow(2) * &(&BiPoly::y() - &BiPoly::one()).pow(3))
            * &(&BiPoly::y() + &BiPoly::x());
        let expect = (&(&BiPoly::x() * &(&BiPoly::y() - &BiPoly::one()))
            * &(&BiPoly::y() + &BiPoly::x()))
            .normalized();
        assert_eq!(squarefree_primitive(&f).unwrap(), expect);
    }

    #[test]
    fn swap_and_fourier() {
        let swapped = example_curve().swap_xy();
        let xp = &(&BiPoly::x().pow(2) + &BiPoly::x()) - &(&BiPoly::y() - &BiPoly::one()).pow(3);
        assert_eq!(swapped, xp);
        assert_eq!(BiPoly::x().fourier_xy(), -&BiPoly::y());
        let f = example_curve();
        let f4 = f.fourier_xy().fourier_xy().fourier_xy().fourier_xy();
        assert_eq!(f4, f);
    }

    #[test]
    fn exact_division() {
        let f = &cusp() * &example_curve();
        assert_eq!(f.div_exact(&cusp()), Some(example_curve()));
        assert_eq!(example_curve().div_exact(&cusp()), None);
    }

    #[test]
    fn json_round_trip_and_rejects() {
        let f = example_curve().scale(&rat(2, 3));
        let j = f.to_json();
        assert_eq!(j[0]["exps"], serde_json::json!([0, 2]));
        assert_eq!(j[0]["num"], "2");
        assert_eq!(j[0]["den"], "3");
        assert_eq!(BiPoly::from_json(&j).unwrap(), f);
        let dup = serde_json::json!([
            {"exps": [1, 0], "num": "1", "den": "1"},
            {"exps": [1, 0], "num": "2", "den": "1"}
        ]);
        assert!(BiPoly::from_json(&dup).is_err());
        let zero_den = serde_json::json!([{"exps": [0, 0], "num": "1", "den": "0"}]);
        assert!(BiPoly::from_json(&zero_den).is_err());
        let plus = serde_json::json!([{"exps": [0, 0], "num": "+1", "den": "1"}]);
        assert!(BiPoly::from_json(&plus).is_err());
    }
}
