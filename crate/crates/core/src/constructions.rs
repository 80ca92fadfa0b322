//! Concrete families: the monomial matrices `M_{q,p}`, the large-`N`
//! two-matrix-model instances built from a Laurent pair, and the resultant
//! description of a pair of multiplication operators.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{
    fmt_rational, sylvester_resultant, BiPoly, LaurentPoly, PolyMatrix, Rational, UniPoly, Var,
};
use crate::error::{Error, Result};
use crate::modrep::{ModuleStructure, Operator};
use crate::spectral::SpectralCurve;
use crate::weyl::WeylOp;

/// `M_{∂^q, ∂^p}`: the `∂^q` action in the `∂^p` module structure on `Q[z]`.
pub fn build_mqp(p: usize, q: usize) -> Result<PolyMatrix> {
    if p == 0 || q == 0 {
        return Err(Error::validation("M_{q,p} needs p, q >= 1"));
    }
    ModuleStructure::new(Operator::Weyl(WeylOp::d_power(p)), None)?
        .matrix_rep(&Operator::Weyl(WeylOp::d_power(q)))
}

/// Companion-shaped matrix with ones on the superdiagonal and last row
/// `(-c_d/γ, …, -c_1/γ, (var - c_0)/γ)`.
fn companion(coeffs: &[Rational], gamma: &Rational, var: Var) -> PolyMatrix {
    let d = coeffs.len() - 1;
    let n = d + 1;
    let mut m = PolyMatrix::zeros(n, n, var);
    for i in 0..n - 1 {
        m.set(i, i + 1, UniPoly::one(var));
    }
    let inv = gamma.recip();
    for k in 0..d {
        m.set(n - 1, k, UniPoly::constant(var, -&coeffs[d - k] * &inv));
    }
    let last = UniPoly::new(var, vec![-&coeffs[0] * &inv, inv]);
    m.set(n - 1, n - 1, last);
    m
}

/// `c_0·1 + c_1·M + … + c_k·M^k`.
fn matrix_polynomial(m: &PolyMatrix, coeffs: &[Rational]) -> Result<PolyMatrix> {
    let n = m.rows();
    let mut acc = PolyMatrix::zeros(n, n, m.var());
    let mut power = PolyMatrix::identity(n, m.var());
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            power = power.try_mul(m)?;
        }
        acc = acc.try_add(&power.scale(c))?;
    }
    Ok(acc)
}

/// A Laurent pair
/// `P = γλ⁻¹ + Σ_{i≤d₁} b_i λ^i`, `Q = γλ + Σ_{i≤d₂} a_i λ^{-i}`
/// together with the companion matrices and the two dual matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehInstance {
    pub gamma: Rational,
    pub a_coeffs: Vec<Rational>,
    pub b_coeffs: Vec<Rational>,
    pub n: i64,
    pub p: LaurentPoly,
    pub q: LaurentPoly,
    /// Companion matrix in `x` built from `γ` and the `a_i`.
    pub a_mat: PolyMatrix,
    /// Companion matrix in `y` built from `γ` and the `b_i`.
    pub b_mat: PolyMatrix,
    /// `γA⁻¹ + Σ b_i A^i`, size `d₂+1`, entries in `x`.
    pub d1: PolyMatrix,
    /// `γB⁻¹ + Σ a_i B^i`, size `d₁+1`, entries in `y`.
    pub d2: PolyMatrix,
}

impl BehInstance {
    pub fn d1_degree(&self) -> usize {
        self.b_coeffs.len() - 1
    }

    pub fn d2_degree(&self) -> usize {
        self.a_coeffs.len() - 1
    }

    /// Window start of the `Q`-structure basis `λ^{N-d₂}, …, λ^N`.
    pub fn q_window_start(&self) -> i64 {
        self.n - self.d2_degree() as i64
    }

    /// Window start of the `P`-structure basis `λ^{N-1}, …, λ^{N-1+d₁}`.
    pub fn p_window_start(&self) -> i64 {
        self.n - 1
    }

    pub fn to_json(&self) -> Value {
        let rats = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>();
        json!({
            "gamma": fmt_rational(&self.gamma),
            "a": rats(&self.a_coeffs),
            "b": rats(&self.b_coeffs),
            "N": self.n,
            "P": self.p.to_string(),
            "Q": self.q.to_string(),
            "A": self.a_mat.to_json(),
            "B": self.b_mat.to_json(),
            "D1": self.d1.to_json(),
            "D2": self.d2.to_json(),
            "charpoly_D1": self.d1.characteristic_polynomial().ok().map(|f| f.to_json()),
            "charpoly_D2": self.d2.characteristic_polynomial().ok().map(|f| f.to_json()),
        })
    }
}

/// Builds a [`BehInstance`]; `n` defaults to `d₂ + 1`.
pub fn build_beh(
    gamma: Rational,
    a_coeffs: Vec<Rational>,
    b_coeffs: Vec<Rational>,
    n: Option<i64>,
) -> Result<BehInstance> {
    if gamma.is_zero() {
        return Err(Error::validation("gamma must be nonzero"));
    }
    if a_coeffs.len() < 2 {
        return Err(Error::validation("d2 must be positive: give at least a0, a1"));
    }
    if b_coeffs.len() < 2 {
        return Err(Error::validation("d1 must be positive: give at least b0, b1"));
    }
    let d2 = a_coeffs.len() - 1;
    let d1 = b_coeffs.len() - 1;
    if a_coeffs[d2].is_zero() {
        return Err(Error::validation("a_{d2} must be nonzero"));
    }
    if b_coeffs[d1].is_zero() {
        return Err(Error::validation("b_{d1} must be nonzero"));
    }
    let n = n.unwrap_or(d2 as i64 + 1);
    if n < d2 as i64 {
        return Err(Error::validation(format!("N = {n} must be at least d2 = {d2}")));
    }

    let mut p = LaurentPoly::monomial(gamma.clone(), -1);
    for (i, b) in b_coeffs.iter().enumerate() {
        p = &p + &LaurentPoly::monomial(b.clone(), i as i64);
    }
    let mut q = LaurentPoly::monomial(gamma.clone(), 1);
    for (i, a) in a_coeffs.iter().enumerate() {
        q = &q + &LaurentPoly::monomial(a.clone(), -(i as i64));
    }

    let a_mat = companion(&a_coeffs, &gamma, Var::X);
    let b_mat = companion(&b_coeffs, &gamma, Var::Y);
    let d1 = matrix_polynomial(&a_mat, &b_coeffs)?.try_add(&a_mat.inverse_unimodular()?.scale(&gamma))?;
    let d2 = matrix_polynomial(&b_mat, &a_coeffs)?.try_add(&b_mat.inverse_unimodular()?.scale(&gamma))?;

    Ok(BehInstance { gamma, a_coeffs, b_coeffs, n, p, q, a_mat, b_mat, d1, d2 })
}

/// Comparison of `det(y·1 - D₁(x))` with `det(x·1 - D₂(y))`, plus the
/// entrywise identification of `D₁`, `D₂` with matrix representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehReport {
    /// Equal vanishing loci.
    pub holds: bool,
    pub lhs: SpectralCurve,
    pub rhs: SpectralCurve,
    /// `c` with `lhs = c · rhs`, when such a constant exists.
    pub scalar: Option<Rational>,
    /// `D₁(x)` equals the transpose of `M_{P,Q}(x)` on the `Q`-window.
    pub d1_matches_matrix_rep: bool,
    /// `D₂(y)` equals the transpose of `M_{Q,P}(y)` on the `P`-window taken
    /// in descending order.
    pub d2_matches_matrix_rep: bool,
}

impl BehReport {
    pub fn all_ok(&self) -> bool {
        self.holds && self.d1_matches_matrix_rep && self.d2_matches_matrix_rep
    }

    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "scalar": self.scalar.as_ref().map(fmt_rational),
            "D1_matches_matrix_rep": self.d1_matches_matrix_rep,
            "D2_matches_matrix_rep": self.d2_matches_matrix_rep,
        })
    }
}

/// The `M_{P,Q}` and `M_{Q,P}` matrices of an instance on its windows, with
/// `u` renamed to `x` and `y` respectively.
pub fn beh_matrix_reps(inst: &BehInstance) -> Result<(PolyMatrix, PolyMatrix)> {
    let q_struct = ModuleStructure::new(Operator::Laurent(inst.q.clone()), Some(inst.q_window_start()))?;
    let p_struct = ModuleStructure::new(Operator::Laurent(inst.p.clone()), Some(inst.p_window_start()))?;
    let m_pq = q_struct.matrix_rep(&Operator::Laurent(inst.p.clone()))?.with_var(Var::X);
    let m_qp = p_struct.matrix_rep(&Operator::Laurent(inst.q.clone()))?.with_var(Var::Y);
    Ok((m_pq, m_qp))
}

pub fn beh_duality_check(inst: &BehInstance) -> Result<BehReport> {
    let lhs = SpectralCurve::of_matrix(&inst.d1)?;
    let rhs = SpectralCurve::of_matrix(&inst.d2)?;
    let holds = lhs.normal == rhs.normal;
    let scalar = proportionality(&lhs.raw, &rhs.raw);
    let (m_pq, m_qp) = beh_matrix_reps(inst)?;
    Ok(BehReport {
        holds,
        d1_matches_matrix_rep: inst.d1 == m_pq.transpose(),
        d2_matches_matrix_rep: inst.d2 == m_qp.reverse_basis().transpose(),
        lhs,
        rhs,
        scalar,
    })
}

/// `c` with `f = c·g`.
fn proportionality(f: &BiPoly, g: &BiPoly) -> Option<Rational> {
    let (ef, cf) = f.leading_term()?;
    let (eg, cg) = g.leading_term()?;
    if ef != eg {
        return None;
    }
    let c = cf / cg;
    (g.scale(&c) == *f).then_some(c)
}

/// Result of eliminating `λ` from `P(λ) - x` and `Q(λ) - y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultantCurve {
    /// The resultant after removing monomial factors.
    pub curve: BiPoly,
    /// Squarefree primitive part of `curve`.
    pub normal: BiPoly,
    /// Exponents `(i, j)` of the removed factor `x^i y^j`.
    pub stripped: (u32, u32),
}

impl ResultantCurve {
    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.curve.to_json(),
            "normal": self.normal.to_json(),
            "stripped_monomial": [self.stripped.0, self.stripped.1],
        })
    }
}

/// `λ^{max(0,-bot)} (f(λ) - t)` as coefficients in `Q[x, y]`, lowest first.
fn cleared(f: &LaurentPoly, t: &BiPoly) -> Result<Vec<BiPoly>> {
    if f.is_constant() {
        return Err(Error::validation(format!("resultant needs a non-constant operator, got {f}")));
    }
    let bot = f.bot().expect("non-constant");
    let shift = (-bot).max(0);
    let top = f.top().expect("non-constant") + shift;
    let mut coeffs = vec![BiPoly::zero(); top.max(shift) as usize + 1];
    for (k, c) in f.terms() {
        coeffs[(k + shift) as usize] = BiPoly::constant(c.clone());
    }
    coeffs[shift as usize] = &coeffs[shift as usize] - t;
    Ok(coeffs)
}

/// `Res_λ(P - x, Q - y)` for multiplication operators by polynomials or
/// Laurent polynomials. Negative powers are cleared first; monomial factors
/// `x^i y^j` that clearing can introduce are divided out.
pub fn resultant_curve(p: &LaurentPoly, q: &LaurentPoly) -> Result<ResultantCurve> {
    let f = cleared(p, &BiPoly::x())?;
    let g = cleared(q, &BiPoly::y())?;
    let res = sylvester_resultant(&f, &g)?;
    if res.is_zero() {
        return Err(Error::validation("resultant vanishes identically"));
    }
    let (curve, stripped) = res.strip_monomial_factor();
    let normal = crate::algebra::squarefree_primitive(&curve)?;
    Ok(ResultantCurve { curve, normal, stripped })
}

/// The multiplication operator by `f` on its natural carrier: Laurent
/// polynomials with negative exponents act on `Q[λ, λ⁻¹]`; polynomials act on
/// `Q[λ]`, identified with `Q[z]` by `λ ↦ z` so that `f` becomes `f(∂)`.
pub fn multiplication_operator(f: &LaurentPoly) -> Operator {
    match f.bot() {
        Some(b) if b < 0 => Operator::Laurent(f.clone()),
        _ => {
            let top = f.top().unwrap_or(0).max(0) as usize;
            let coeffs = (0..=top).map(|k| f.coeff(k as i64)).collect();
            Operator::Weyl(WeylOp::from_d_polynomial(&UniPoly::new(Var::S, coeffs)))
        }
    }
}

/// `(1/γ)·y^{d₂}·(Q(y) - x)`: the expected characteristic polynomial of the
/// companion matrix `A(x)`, with `y` as the eigenvalue variable.
pub fn companion_law(inst: &BehInstance) -> BiPoly {
    let d2 = inst.d2_degree() as i64;
    let shifted = inst.q.shift(d2);
    let mut out = BiPoly::from_terms(shifted.terms().map(|(k, c)| ((0, *k as u32), c.clone())));
    out = &out - &BiPoly::monomial(Rational::one(), 1, d2 as u32);
    out.scale(&inst.gamma.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use num_traits::Signed;
    use crate::spectral::duality_check_with_windows;
    use crate::spectral::WindowConfig;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| int(c)).collect()
    }

    fn smallest() -> BehInstance {
        build_beh(int(1), ints(&[1, 1]), ints(&[1, 1]), Some(1)).unwrap()
    }

    #[test]
    fn mqp_displays() {
        assert_eq!(
            build_mqp(3, 2).unwrap(),
            PolyMatrix::from_int_rows(Var::U, &[&[&[], &[0, 1], &[]], &[&[], &[], &[0, 1]], &[&[1], &[], &[]]])
        );
        assert_eq!(
            build_mqp(2, 3).unwrap(),
            PolyMatrix::from_int_rows(Var::U, &[&[&[], &[0, 0, 1]], &[&[0, 1], &[]]])
        );
        assert_eq!(build_mqp(1, 4).unwrap(), PolyMatrix::from_int_rows(Var::U, &[&[&[0, 0, 0, 0, 1]]]));
        assert!(build_mqp(0, 2).is_err());
    }

    #[test]
    fn smallest_instance_matrices() {
        let inst = smallest();
        let x = |c: &[i64]| UniPoly::from_ints(Var::X, c);
        let a = PolyMatrix::from_rows(Var::X, vec![vec![x(&[]), x(&[1])], vec![x(&[-1]), x(&[-1, 1])]]).unwrap();
        assert_eq!(inst.a_mat, a);
        let a_inv = PolyMatrix::from_rows(Var::X, vec![vec![x(&[-1, 1]), x(&[-1])], vec![x(&[1]), x(&[])]]).unwrap();
        let expect_d1 = a_inv.try_add(&PolyMatrix::identity(2, Var::X)).unwrap().try_add(&a).unwrap();
        assert_eq!(inst.d1, expect_d1);
        assert!(inst.a_mat.det().unwrap().is_constant());
        let report = beh_duality_check(&inst).unwrap();
        assert!(report.all_ok());
    }

    #[test]
    fn companion_determinant_is_constant() {
        let inst = build_beh(rat(3, 2), ints(&[2, -1, 5]), ints(&[1, 4]), None).unwrap();
        // det A = ±a_{d2}/γ
        let det = inst.a_mat.det().unwrap();
        assert!(det.is_constant());
        assert_eq!(det.lead().abs(), int(5) / rat(3, 2));
        assert_eq!(inst.a_mat.characteristic_polynomial().unwrap(), companion_law(&inst));
    }

    #[test]
    fn assumptions_enforced() {
        assert!(build_beh(int(1), ints(&[1, 0]), ints(&[1, 1]), None).is_err());
        assert!(build_beh(int(0), ints(&[1, 1]), ints(&[1, 1]), None).is_err());
        assert!(build_beh(int(1), ints(&[1]), ints(&[1, 1]), None).is_err());
        assert!(build_beh(int(1), ints(&[1, 1, 1]), ints(&[1, 1]), Some(1)).is_err());
    }

    #[test]
    fn asymmetric_instance() {
        let inst = build_beh(int(2), ints(&[1, 3, -2]), ints(&[2, -1, 1, 5]), None).unwrap();
        let r = beh_duality_check(&inst).unwrap();
        assert!(r.holds);
        assert!(r.d1_matches_matrix_rep);
        assert!(r.d2_matches_matrix_rep);
        assert!(r.scalar.is_some());
    }

    #[test]
    fn resultant_examples() {
        let sq = LaurentPoly::from_int_terms(&[(2, 1)]);
        let cube = LaurentPoly::from_int_terms(&[(3, 1)]);
        let r = resultant_curve(&sq, &cube).unwrap();
        assert_eq!(r.curve, BiPoly::from_int_terms(&[(0, 2, 1), (3, 0, -1)]));
        let lin = LaurentPoly::lambda();
        let r = resultant_curve(&lin, &lin).unwrap();
        assert_eq!(r.normal, BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, -1)]));
        assert!(resultant_curve(&LaurentPoly::one(), &lin).is_err());
    }

    #[test]
    fn smallest_laurent_resultant_matches_curve() {
        let inst = smallest();
        let r = resultant_curve(&inst.p, &inst.q).unwrap();
        let report = beh_duality_check(&inst).unwrap();
        assert_eq!(r.normal, report.lhs.normal);
        let d = duality_check_with_windows(
            &Operator::Laurent(inst.p.clone()),
            &Operator::Laurent(inst.q.clone()),
            WindowConfig { p: Some(inst.p_window_start()), q: Some(inst.q_window_start()) },
        )
        .unwrap();
        assert!(d.holds);
    }

    #[test]
    fn polynomial_multiplication_uses_z_carrier() {
        let f = LaurentPoly::from_int_terms(&[(2, 1), (0, -3)]);
        match multiplication_operator(&f) {
            Operator::Weyl(w) => assert_eq!(w, WeylOp::from_int_coeffs(&[&[-3], &[], &[1]])),
            other => panic!("unexpected {other:?}"),
        }
    }
}
