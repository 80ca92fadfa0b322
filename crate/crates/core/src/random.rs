//! Seeded generators for the randomized property suites.
//!
//! Every case draws from its own ChaCha stream: the master seed keys the
//! generator and the case index selects the stream, so a case can be replayed
//! from `(seed, index)` alone and cases can run in any order.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{LaurentPoly, Rational, UniPoly, Var};
use crate::weyl::WeylOp;

/// Independent generator for case `index` under `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn nonzero_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// `n/d` with `n, d` drawn from `[-bound, bound] \ {0}`.
pub fn nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(BigInt::from(nonzero_int(rng, bound)), BigInt::from(nonzero_int(rng, bound)))
}

/// Numerator in `[-bound, bound]`, denominator in `[1, bound]`; zero is likely.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    if rng.gen_bool(0.3) {
        return Rational::zero();
    }
    Rational::new(BigInt::from(rng.gen_range(-bound..=bound)), BigInt::from(rng.gen_range(1..=bound)))
}

fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Random differential operator of the given order: constant leading
/// coefficient, lower coefficients of `s`-degree at most `max_s_degree`.
pub fn weyl_operator<R: Rng>(rng: &mut R, order: usize, max_s_degree: usize) -> WeylOp {
    let mut coeffs = Vec::with_capacity(order + 1);
    for _ in 0..order {
        let deg = rng.gen_range(0..=max_s_degree);
        coeffs.push(UniPoly::new(Var::S, (0..=deg).map(|_| small_rational(rng, 5)).collect()));
    }
    coeffs.push(UniPoly::constant(Var::S, nonzero_rational(rng, 5)));
    WeylOp::new(coeffs)
}

/// Pair of operators with orders in `1..=4` and coefficient `s`-degree at most 2.
pub fn weyl_pair<R: Rng>(rng: &mut R) -> (WeylOp, WeylOp) {
    let p = rng.gen_range(1..=4);
    let q = rng.gen_range(1..=4);
    (weyl_operator(rng, p, 2), weyl_operator(rng, q, 2))
}

/// Parameters `(γ, a₀..a_{d₂}, b₀..b_{d₁})` of a Laurent pair
/// `P = γλ⁻¹ + Σ b_i λ^i`, `Q = γλ + Σ a_i λ^{-i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentParams {
    pub gamma: Rational,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl LaurentParams {
    pub fn p(&self) -> LaurentPoly {
        let mut p = LaurentPoly::monomial(self.gamma.clone(), -1);
        for (i, b) in self.b.iter().enumerate() {
            p = &p + &LaurentPoly::monomial(b.clone(), i as i64);
        }
        p
    }

    pub fn q(&self) -> LaurentPoly {
        let mut q = LaurentPoly::monomial(self.gamma.clone(), 1);
        for (i, a) in self.a.iter().enumerate() {
            q = &q + &LaurentPoly::monomial(a.clone(), -(i as i64));
        }
        q
    }
}

fn coefficient_list<R: Rng>(rng: &mut R, degree: usize, draw: impl Fn(&mut R) -> Rational, top: Rational) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..degree).map(|_| draw(rng)).collect();
    v.push(top);
    v
}

/// Rational Laurent pair with `d₁, d₂ ∈ {1, 2, 3}`.
pub fn laurent_params<R: Rng>(rng: &mut R) -> LaurentParams {
    let d1 = rng.gen_range(1..=3);
    let d2 = rng.gen_range(1..=3);
    let gamma = nonzero_rational(rng, 5);
    let top_a = nonzero_rational(rng, 5);
    let top_b = nonzero_rational(rng, 5);
    LaurentParams {
        gamma,
        a: coefficient_list(rng, d2, |r| small_rational(r, 5), top_a),
        b: coefficient_list(rng, d1, |r| small_rational(r, 5), top_b),
    }
}

/// Integer Laurent pair with coefficients in `[-3, 3]`, `d₁, d₂ ≤ 3`.
pub fn beh_params<R: Rng>(rng: &mut R) -> LaurentParams {
    let d1 = rng.gen_range(1..=3);
    let d2 = rng.gen_range(1..=3);
    let gamma = Rational::from_integer(BigInt::from(nonzero_int(rng, 3)));
    let top_a = Rational::from_integer(BigInt::from(nonzero_int(rng, 3)));
    let top_b = Rational::from_integer(BigInt::from(nonzero_int(rng, 3)));
    LaurentParams {
        gamma,
        a: coefficient_list(rng, d2, |r| small_int(r, 3), top_a),
        b: coefficient_list(rng, d1, |r| small_int(r, 3), top_b),
    }
}

/// Polynomial in `λ` of the given degree with integer coefficients in `[-3, 3]`.
pub fn lambda_polynomial<R: Rng>(rng: &mut R, degree: usize) -> LaurentPoly {
    let mut terms: Vec<(i64, Rational)> = (0..degree).map(|k| (k as i64, small_int(rng, 3))).collect();
    terms.push((degree as i64, Rational::from_integer(BigInt::from(nonzero_int(rng, 3)))));
    LaurentPoly::from_terms(terms)
}

/// Pair of polynomials in `λ` with degrees in `2..=4`.
pub fn polynomial_pair<R: Rng>(rng: &mut R) -> (LaurentPoly, LaurentPoly) {
    let dp = rng.gen_range(2..=4);
    let dq = rng.gen_range(2..=4);
    (lambda_polynomial(rng, dp), lambda_polynomial(rng, dq))
}

/// Laurent polynomial with support in `[e, f]`, `e ∈ [-2, -1]`, `f ∈ [1, 2]`,
/// nonzero extreme coefficients.
pub fn laurent_multiplier<R: Rng>(rng: &mut R) -> LaurentPoly {
    let e = rng.gen_range(-2..=-1);
    let f = rng.gen_range(1..=2);
    let terms = (e..=f).map(|k| {
        let c = if k == e || k == f {
            Rational::from_integer(BigInt::from(nonzero_int(rng, 3)))
        } else {
            small_int(rng, 3)
        };
        (k, c)
    });
    LaurentPoly::from_terms(terms.collect::<Vec<_>>())
}

/// Element of `Q[z]` of degree at most `max_degree`.
pub fn z_element<R: Rng>(rng: &mut R, max_degree: usize) -> UniPoly {
    let deg = rng.gen_range(0..=max_degree);
    UniPoly::new(Var::Z, (0..=deg).map(|_| small_rational(rng, 5)).collect())
}

/// Element of `Q[λ, λ⁻¹]` supported in `[lo, hi]`.
pub fn lambda_element<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> LaurentPoly {
    let terms: Vec<(i64, Rational)> = (lo..=hi).map(|k| (k, small_rational(rng, 5))).collect();
    LaurentPoly::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u32> = (0..4).map(|_| case_rng(7, 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| case_rng(7, 3).gen()).collect();
        assert_eq!(a, b);
        let x: u64 = case_rng(7, 3).gen();
        let y: u64 = case_rng(7, 4).gen();
        let z: u64 = case_rng(8, 3).gen();
        assert_ne!(x, y);
        assert_ne!(x, z);
    }

    #[test]
    fn generated_shapes() {
        let mut rng = case_rng(0, 0);
        for _ in 0..50 {
            let (p, q) = weyl_pair(&mut rng);
            assert!(p.has_constant_leading_coefficient() && q.has_constant_leading_coefficient());
            assert!((1..=4).contains(&p.order().unwrap()));
            assert!(p.s_degree().unwrap() <= 2);
            let params = beh_params(&mut rng);
            let p = params.p();
            assert_eq!(p.bot(), Some(-1));
            assert_eq!(p.top(), Some(params.b.len() as i64 - 1));
            let m = laurent_multiplier(&mut rng);
            assert!(m.bot().unwrap() < 0 && m.top().unwrap() > 0);
            assert!(z_element(&mut rng, 12).degree().unwrap_or(0) <= 12);
        }
    }
}
