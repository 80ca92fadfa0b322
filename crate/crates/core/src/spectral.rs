//! Spectral curves `det(y·1 - M_{B,A}(x)) = 0`, locus comparison, the
//! duality `X_{Q,P} = X̌_{P,Q}`, and the quantization predicates.

use serde_json::{json, Value};

use crate::algebra::{squarefree_primitive, BiPoly, PolyMatrix, Var};
use crate::error::{Error, Result};
use crate::modrep::{ModuleStructure, Operator};
use crate::weyl::WeylOp;

/// A characteristic polynomial together with its locus normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralCurve {
    /// `det(y·1 - M(x))` exactly as computed.
    pub raw: BiPoly,
    /// Squarefree primitive part of `raw`.
    pub normal: BiPoly,
    /// Size of the matrix, which is also the `y`-degree of `raw`.
    pub rank: usize,
}

impl SpectralCurve {
    pub fn from_raw(raw: BiPoly, rank: usize) -> Result<Self> {
        let normal = squarefree_primitive(&raw)?;
        Ok(SpectralCurve { raw, normal, rank })
    }

    /// Characteristic polynomial of a square matrix in `u`, `x` or `y`.
    pub fn of_matrix(m: &PolyMatrix) -> Result<Self> {
        Self::from_raw(m.characteristic_polynomial()?, m.rows())
    }

    /// The curve cut out by `f(y, x)`.
    pub fn swapped(&self) -> Result<Self> {
        Self::from_raw(self.raw.swap_xy(), self.rank)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "raw": self.raw.to_json(),
            "normal": self.normal.to_json(),
            "rank": self.rank,
        })
    }
}

/// Optional Laurent window starts for the two module structures of a pair.
/// Ignored (must be unset or zero) for operators on `Q[z]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WindowConfig {
    pub p: Option<i64>,
    pub q: Option<i64>,
}

/// `X_{B,A}`: builds `M_{B,A}`, substitutes `u ↦ x` and takes
/// `det(y·1 - M(x))`.
pub fn spectral_curve(action: &Operator, op: &Operator, window_start: Option<i64>) -> Result<SpectralCurve> {
    let m = ModuleStructure::new(action.clone(), window_start)?;
    let rep = m.matrix_rep(op)?;
    SpectralCurve::of_matrix(&rep.with_var(Var::X))
}

/// Whether two nonzero polynomials have the same complex vanishing locus.
pub fn curves_equal_as_loci(f: &BiPoly, g: &BiPoly) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::validation("locus comparison with the zero polynomial"));
    }
    Ok(squarefree_primitive(f)? == squarefree_primitive(g)?)
}

/// Outcome of comparing `X_{Q,P}` with `X̌_{P,Q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub holds: bool,
    /// `X_{Q,P}`: the `Q`-action with respect to the `P`-structure.
    pub x_qp: SpectralCurve,
    /// `X_{P,Q}` (unswapped).
    pub x_pq: SpectralCurve,
}

impl DualityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "X_QP": self.x_qp.to_json(),
            "X_PQ": self.x_pq.to_json(),
            "X_PQ_swapped": self.x_pq.raw.swap_xy().to_json(),
        })
    }
}

pub fn duality_check(p: &Operator, q: &Operator) -> Result<DualityReport> {
    duality_check_with_windows(p, q, WindowConfig::default())
}

pub fn duality_check_with_windows(p: &Operator, q: &Operator, windows: WindowConfig) -> Result<DualityReport> {
    let x_qp = spectral_curve(p, q, windows.p)?;
    let x_pq = spectral_curve(q, p, windows.q)?;
    let holds = curves_equal_as_loci(&x_qp.raw, &x_pq.raw.swap_xy())?;
    Ok(DualityReport { holds, x_qp, x_pq })
}

/// `F(P, Q) = (-Q, P)`.
pub fn fourier_pair(p: &WeylOp, q: &WeylOp) -> (WeylOp, WeylOp) {
    (-q, p.clone())
}

/// `M_{P,Q}`: the `P`-action with respect to the `Q`-structure on `Q[z]`.
pub fn pair_matrix(pair: &(WeylOp, WeylOp)) -> Result<PolyMatrix> {
    ModuleStructure::new(Operator::Weyl(pair.1.clone()), None)?.matrix_rep(&Operator::Weyl(pair.0.clone()))
}

/// `X_{(P,Q)}`: the curve of `M_{P,Q}`.
pub fn pair_curve(pair: &(WeylOp, WeylOp)) -> Result<SpectralCurve> {
    SpectralCurve::of_matrix(&pair_matrix(pair)?.with_var(Var::X))
}

fn degrees_match(pair0: &(WeylOp, WeylOp), pair1: &(WeylOp, WeylOp)) -> bool {
    pair0.0.order() == pair1.0.order() && pair0.1.order() == pair1.1.order()
}

fn string_equation(pair1: &(WeylOp, WeylOp)) -> bool {
    pair1.0.commutator(&pair1.1) == WeylOp::one()
}

/// Conditions for `pair1` to quantize `pair0` with exact matrix equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizationReport {
    pub degrees_ok: bool,
    pub string_eq_ok: bool,
    pub matrix_eq_ok: bool,
    pub verdict: bool,
    /// Whether the classical pair commutes. Reported, not enforced.
    pub classical_commutes: bool,
    pub classical_matrix: PolyMatrix,
    pub quantum_matrix: PolyMatrix,
}

impl QuantizationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degrees_ok": self.degrees_ok,
            "string_eq_ok": self.string_eq_ok,
            "matrix_eq_ok": self.matrix_eq_ok,
            "verdict": self.verdict,
            "classical_commutes": self.classical_commutes,
            "M_classical": self.classical_matrix.to_json(),
            "M_quantum": self.quantum_matrix.to_json(),
        })
    }
}

pub fn is_quantization(pair0: &(WeylOp, WeylOp), pair1: &(WeylOp, WeylOp)) -> Result<QuantizationReport> {
    let classical_matrix = pair_matrix(pair0)?;
    let quantum_matrix = pair_matrix(pair1)?;
    let degrees_ok = degrees_match(pair0, pair1);
    let string_eq_ok = string_equation(pair1);
    let matrix_eq_ok = classical_matrix == quantum_matrix;
    Ok(QuantizationReport {
        degrees_ok,
        string_eq_ok,
        matrix_eq_ok,
        verdict: degrees_ok && string_eq_ok && matrix_eq_ok,
        classical_commutes: pair0.0.commutator(&pair0.1).is_zero(),
        classical_matrix,
        quantum_matrix,
    })
}

/// Conditions for a spectral quantization: matrix equality relaxed to equal
/// vanishing loci of the characteristic polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralQuantizationReport {
    pub degrees_ok: bool,
    pub string_eq_ok: bool,
    pub spectral_eq_ok: bool,
    pub verdict: bool,
    pub classical_commutes: bool,
    pub classical_curve: SpectralCurve,
    pub quantum_curve: SpectralCurve,
}

impl SpectralQuantizationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degrees_ok": self.degrees_ok,
            "string_eq_ok": self.string_eq_ok,
            "spectral_eq_ok": self.spectral_eq_ok,
            "verdict": self.verdict,
            "classical_commutes": self.classical_commutes,
            "X_classical": self.classical_curve.to_json(),
            "X_quantum": self.quantum_curve.to_json(),
        })
    }
}

pub fn is_spectral_quantization(
    pair0: &(WeylOp, WeylOp),
    pair1: &(WeylOp, WeylOp),
) -> Result<SpectralQuantizationReport> {
    let classical_curve = pair_curve(pair0)?;
    let quantum_curve = pair_curve(pair1)?;
    let degrees_ok = degrees_match(pair0, pair1);
    let string_eq_ok = string_equation(pair1);
    let spectral_eq_ok = classical_curve.normal == quantum_curve.normal;
    Ok(SpectralQuantizationReport {
        degrees_ok,
        string_eq_ok,
        spectral_eq_ok,
        verdict: degrees_ok && string_eq_ok && spectral_eq_ok,
        classical_commutes: pair0.0.commutator(&pair0.1).is_zero(),
        classical_curve,
        quantum_curve,
    })
}

/// `X_{F(P₁,Q₁)}` against `F(X_{(P₁,Q₁)})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierReport {
    pub holds: bool,
    /// `X_{F(P₁,Q₁)}`.
    pub transformed_pair_curve: SpectralCurve,
    /// `F(X_{(P₁,Q₁)})`, i.e. `f(-y, x)`.
    pub transformed_curve: SpectralCurve,
}

impl FourierReport {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "X_of_fourier_pair": self.transformed_pair_curve.to_json(),
            "fourier_of_X": self.transformed_curve.to_json(),
        })
    }
}

/// The identity `X_{F(P₁,Q₁)} = F(X_{(P₁,Q₁)})` as loci. It only uses the
/// duality of spectral curves, so it is evaluated for any pair whose two
/// operators both define module structures, whether or not `[P₁,Q₁] = 1`.
pub fn fourier_curve_theorem_check(pair1: &(WeylOp, WeylOp)) -> Result<FourierReport> {
    let fp = fourier_pair(&pair1.0, &pair1.1);
    let transformed_pair_curve = pair_curve(&fp)?;
    let x = pair_curve(pair1)?;
    let transformed_curve = SpectralCurve::from_raw(x.raw.fourier_xy(), x.rank)?;
    let holds = transformed_pair_curve.normal == transformed_curve.normal;
    Ok(FourierReport { holds, transformed_pair_curve, transformed_curve })
}
