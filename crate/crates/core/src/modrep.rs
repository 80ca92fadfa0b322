//! Free `Q[u]`-module structures on `Q[z]` and `Q[λ, λ⁻¹]` induced by an
//! operator, reduction to a basis, and the matrices `M_{B,A}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::{LaurentPoly, PolyMatrix, Rational, UniPoly, Var};
use crate::error::{Error, Result};
use crate::weyl::WeylOp;

/// The two vector spaces operators act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    /// `Q[z]`, acted on by the Weyl algebra.
    PolyInZ,
    /// `Q[λ, λ⁻¹]`, acted on by multiplication.
    LaurentInLambda,
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Carrier::PolyInZ => "Q[z]",
            Carrier::LaurentInLambda => "Q[L, L^-1]",
        })
    }
}

/// A linear endomorphism of one of the carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operator {
    Weyl(WeylOp),
    /// Multiplication by a Laurent polynomial.
    Laurent(LaurentPoly),
}

impl Operator {
    pub fn carrier(&self) -> Carrier {
        match self {
            Operator::Weyl(_) => Carrier::PolyInZ,
            Operator::Laurent(_) => Carrier::LaurentInLambda,
        }
    }

    pub fn apply(&self, w: &Element) -> Result<Element> {
        match (self, w) {
            (Operator::Weyl(a), Element::Z(v)) => Ok(Element::Z(a.z_action(v))),
            (Operator::Laurent(a), Element::Lambda(v)) => Ok(Element::Lambda(a * v)),
            _ => Err(carrier_mismatch(self.carrier(), w.carrier())),
        }
    }

    pub fn neg(&self) -> Operator {
        match self {
            Operator::Weyl(a) => Operator::Weyl(-a),
            Operator::Laurent(a) => Operator::Laurent(-a),
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Weyl(a) => a.fmt(f),
            Operator::Laurent(a) => a.fmt(f),
        }
    }
}

fn carrier_mismatch(a: Carrier, b: Carrier) -> Error {
    Error::validation(format!("carrier mismatch: operator on {a} applied to element of {b}"))
}

/// An element of a carrier space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Z(UniPoly),
    Lambda(LaurentPoly),
}

impl Element {
    pub fn carrier(&self) -> Carrier {
        match self {
            Element::Z(_) => Carrier::PolyInZ,
            Element::Lambda(_) => Carrier::LaurentInLambda,
        }
    }

    pub fn zero(carrier: Carrier) -> Self {
        match carrier {
            Carrier::PolyInZ => Element::Z(UniPoly::zero(Var::Z)),
            Carrier::LaurentInLambda => Element::Lambda(LaurentPoly::zero()),
        }
    }

    fn add(&self, other: &Element) -> Result<Element> {
        match (self, other) {
            (Element::Z(a), Element::Z(b)) => Ok(Element::Z(a + b)),
            (Element::Lambda(a), Element::Lambda(b)) => Ok(Element::Lambda(a + b)),
            _ => Err(carrier_mismatch(self.carrier(), other.carrier())),
        }
    }

    fn scale(&self, c: &Rational) -> Element {
        match self {
            Element::Z(a) => Element::Z(a.scale(c)),
            Element::Lambda(a) => Element::Lambda(a.scale(c)),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Z(v) => v.fmt(f),
            Element::Lambda(v) => v.fmt(f),
        }
    }
}

/// Coordinates `Σ_i entries[i](A) · v_i` of an element with respect to a
/// module basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffVector {
    pub entries: Vec<UniPoly>,
}

impl CoeffVector {
    pub fn zero(rank: usize) -> Self {
        CoeffVector { entries: vec![UniPoly::zero(Var::U); rank] }
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.entries[i] = UniPoly::one(Var::U);
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `Q[u]`-module structure on a carrier with `u` acting by `action`.
///
/// For `Q[z]` the basis is `1, z, …, z^{rank-1}`; for Laurent polynomials it
/// is the window `λ^{w0}, …, λ^{w0+rank-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleStructure {
    action: Operator,
    rank: usize,
    window_start: i64,
}

impl ModuleStructure {
    /// Validates the standing assumptions and fixes the basis.
    ///
    /// A Weyl action must have positive order and a constant leading
    /// coefficient. A Laurent action needs a negative lowest and a positive
    /// highest exponent; its window defaults to start at the lowest exponent.
    pub fn new(action: Operator, window_start: Option<i64>) -> Result<Self> {
        match &action {
            Operator::Weyl(a) => {
                let order = a
                    .order()
                    .ok_or_else(|| Error::validation("module action is the zero operator"))?;
                if order == 0 {
                    return Err(Error::validation(format!(
                        "module action {a} has order 0; a positive D-degree is required"
                    )));
                }
                if !a.has_constant_leading_coefficient() {
                    return Err(Error::validation(format!(
                        "module action {a} has non-constant leading coefficient {}",
                        a.leading_coefficient()
                    )));
                }
                if let Some(k) = window_start.filter(|&k| k != 0) {
                    return Err(Error::validation(format!(
                        "window start {k} given for a Q[z] action; the basis is always 1, z, ..."
                    )));
                }
                Ok(ModuleStructure { action, rank: order, window_start: 0 })
            }
            Operator::Laurent(a) => {
                let (Some(e), Some(f)) = (a.bot(), a.top()) else {
                    return Err(Error::validation("module action is the zero operator"));
                };
                if e >= 0 || f <= 0 {
                    return Err(Error::validation(format!(
                        "Laurent action {a} needs lowest exponent < 0 < highest exponent (got {e} and {f})"
                    )));
                }
                let rank = (f - e) as usize;
                Ok(ModuleStructure { action, rank, window_start: window_start.unwrap_or(e) })
            }
        }
    }

    pub fn action(&self) -> &Operator {
        &self.action
    }

    pub fn carrier(&self) -> Carrier {
        self.action.carrier()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn window_start(&self) -> i64 {
        self.window_start
    }

    /// Basis element `v_{i+1}` (zero-based `i`).
    pub fn basis_element(&self, i: usize) -> Element {
        match self.carrier() {
            Carrier::PolyInZ => Element::Z(UniPoly::monomial(Var::Z, Rational::from_integer(1.into()), i)),
            Carrier::LaurentInLambda => Element::Lambda(LaurentPoly::monomial(
                Rational::from_integer(1.into()),
                self.window_start + i as i64,
            )),
        }
    }

    /// The unique coordinates of `w` in the module basis.
    pub fn reduce(&self, w: &Element) -> Result<CoeffVector> {
        match (&self.action, w) {
            (Operator::Weyl(a), Element::Z(v)) => Ok(self.reduce_z(a, v)),
            (Operator::Laurent(a), Element::Lambda(v)) => Ok(self.reduce_laurent(a, v)),
            _ => Err(carrier_mismatch(self.carrier(), w.carrier())),
        }
    }

    fn reduce_z(&self, a: &WeylOp, v: &UniPoly) -> CoeffVector {
        let p = self.rank;
        let mut out = CoeffVector::zero(p);
        let mut w = v.with_var(Var::Z);
        // A^m(z^r), built incrementally per residue r
        let mut powers: HashMap<usize, Vec<UniPoly>> = HashMap::new();
        while let Some(n) = w.degree().filter(|&n| n >= p) {
            let (m, r) = (n / p, n % p);
            let chain = powers
                .entry(r)
                .or_insert_with(|| vec![UniPoly::monomial(Var::Z, Rational::from_integer(1.into()), r)]);
            while chain.len() <= m {
                let next = a.z_action(chain.last().expect("non-empty"));
                chain.push(next);
            }
            let image = &chain[m];
            // image has degree n and leading coefficient c^m
            let k = w.lead() / image.lead();
            w = &w - &image.scale(&k);
            out.entries[r] = &out.entries[r] + &UniPoly::monomial(Var::U, k, m);
        }
        for (r, coeff) in w.coeffs().iter().enumerate() {
            out.entries[r] = &out.entries[r] + &UniPoly::constant(Var::U, coeff.clone());
        }
        out
    }

    fn reduce_laurent(&self, a: &LaurentPoly, v: &LaurentPoly) -> CoeffVector {
        let e = a.bot().expect("validated action");
        let f = a.top().expect("validated action");
        let lo = self.window_start;
        let hi = lo + self.rank as i64 - 1;
        let c_top = a.coeff(f);
        let c_bot = a.coeff(e);
        let mut state: BTreeMap<i64, UniPoly> = v
            .terms()
            .map(|(k, c)| (*k, UniPoly::constant(Var::U, c.clone())))
            .collect();
        let u = UniPoly::variable(Var::U);

        let add = |state: &mut BTreeMap<i64, UniPoly>, k: i64, p: UniPoly| {
            let slot = state.entry(k).or_insert_with(|| UniPoly::zero(Var::U));
            *slot = &*slot + &p;
            if slot.is_zero() {
                state.remove(&k);
            }
        };

        // λ^j = (u λ^{j-f} - Σ_{i≠f} c_i λ^{j-f+i}) / c_f lowers the top exponent
        while let Some((&j, _)) = state.iter().next_back().filter(|(&j, _)| j > hi) {
            let coeff = state.remove(&j).expect("present");
            let scaled = coeff.scale(&c_top.recip());
            add(&mut state, j - f, &scaled * &u);
            for (&i, ci) in a.terms().filter(|(&i, _)| i != f) {
                add(&mut state, j - f + i, scaled.scale(&-ci));
            }
        }
        // λ^j = (u λ^{j-e} - Σ_{i≠e} c_i λ^{j-e+i}) / c_e raises the bottom exponent
        while let Some((&j, _)) = state.iter().next().filter(|(&j, _)| j < lo) {
            let coeff = state.remove(&j).expect("present");
            let scaled = coeff.scale(&c_bot.recip());
            add(&mut state, j - e, &scaled * &u);
            for (&i, ci) in a.terms().filter(|(&i, _)| i != e) {
                add(&mut state, j - e + i, scaled.scale(&-ci));
            }
        }

        let mut out = CoeffVector::zero(self.rank);
        for (k, p) in state {
            out.entries[(k - lo) as usize] = p;
        }
        out
    }

    /// `Σ_i c[i](A) · v_i`.
    pub fn reconstruct(&self, c: &CoeffVector) -> Result<Element> {
        if c.len() != self.rank {
            return Err(Error::validation(format!(
                "coefficient vector has length {} but the module has rank {}",
                c.len(),
                self.rank
            )));
        }
        let mut total = Element::zero(self.carrier());
        for (i, p) in c.entries.iter().enumerate() {
            // Horner: p(A) v = c_0 v + A(c_1 v + A(c_2 v + ...))
            let v = self.basis_element(i);
            let mut acc = Element::zero(self.carrier());
            for (k, coeff) in p.coeffs().iter().enumerate().rev() {
                acc = acc.add(&v.scale(coeff))?;
                if k > 0 {
                    acc = self.action.apply(&acc)?;
                }
            }
            total = total.add(&acc)?;
        }
        Ok(total)
    }

    /// `M_{B,A}` with `A` the module action: column `i` holds the coordinates
    /// of `B · v_i`.
    pub fn matrix_rep(&self, b: &Operator) -> Result<PolyMatrix> {
        if b.carrier() != self.carrier() {
            return Err(carrier_mismatch(self.carrier(), b.carrier()));
        }
        let columns = (0..self.rank)
            .map(|i| Ok(self.reduce(&b.apply(&self.basis_element(i))?)?.entries))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_columns(Var::U, columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn weyl(rows: &[&[i64]]) -> Operator {
        Operator::Weyl(WeylOp::from_int_coeffs(rows))
    }

    fn structure(rows: &[&[i64]]) -> ModuleStructure {
        ModuleStructure::new(weyl(rows), None).unwrap()
    }

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::U, c)
    }

    /// ∂² + s + 1
    fn p_example() -> ModuleStructure {
        structure(&[&[1, 1], &[], &[1]])
    }

    #[test]
    fn ranks() {
        assert_eq!(p_example().rank(), 2);
        assert_eq!(structure(&[&[], &[1]]).rank(), 1);
        let beh_q = LaurentPoly::from_int_terms(&[(1, 2), (0, 1), (-1, 1), (-2, 3)]);
        let m = ModuleStructure::new(Operator::Laurent(beh_q), None).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.window_start(), -2);
    }

    #[test]
    fn standing_assumptions_enforced() {
        assert!(ModuleStructure::new(Operator::Weyl(WeylOp::zero()), None).is_err());
        assert!(ModuleStructure::new(weyl(&[&[3]]), None).is_err());
        // s ∂² has a non-constant leading coefficient
        let err = ModuleStructure::new(weyl(&[&[], &[], &[0, 1]]), None).unwrap_err();
        assert!(err.to_string().contains("non-constant leading coefficient"));
        let poly = LaurentPoly::from_int_terms(&[(2, 1), (0, 1)]);
        assert!(ModuleStructure::new(Operator::Laurent(poly), None).is_err());
        let negative = LaurentPoly::from_int_terms(&[(-2, 1), (-1, 1)]);
        assert!(ModuleStructure::new(Operator::Laurent(negative), None).is_err());
        assert!(ModuleStructure::new(weyl(&[&[], &[1]]), Some(2)).is_err());
    }

    #[test]
    fn reduce_cube() {
        let m = p_example();
        let z3 = Element::Z(UniPoly::from_ints(Var::Z, &[0, 0, 0, 1]));
        let c = m.reduce(&z3).unwrap();
        assert_eq!(c.entries, vec![u(&[1]), u(&[-1, 1])]);
        assert_eq!(m.reconstruct(&c).unwrap(), z3);
    }

    #[test]
    fn basis_reduces_to_units() {
        let m = structure(&[&[-2], &[], &[], &[1]]);
        for i in 0..3 {
            assert_eq!(m.reduce(&m.basis_element(i)).unwrap(), CoeffVector::unit(3, i));
            assert_eq!(m.reconstruct(&CoeffVector::unit(3, i)).unwrap(), m.basis_element(i));
        }
    }

    #[test]
    fn reconstruct_u_is_action() {
        let m = p_example();
        let mut c = CoeffVector::zero(2);
        c.entries[0] = u(&[0, 1]);
        let expect = m.action().apply(&m.basis_element(0)).unwrap();
        assert_eq!(m.reconstruct(&c).unwrap(), expect);
        assert!(m.reconstruct(&CoeffVector::zero(3)).is_err());
    }

    #[test]
    fn round_trip_z7() {
        let m = structure(&[&[-2], &[], &[], &[1]]);
        let w = Element::Z(UniPoly::monomial(Var::Z, int(1), 7));
        let c = m.reduce(&w).unwrap();
        assert_eq!(m.reconstruct(&c).unwrap(), w);
    }

    #[test]
    fn laurent_reduce_lambda_squared() {
        let q = LaurentPoly::from_int_terms(&[(1, 1), (-1, 1)]);
        let m = ModuleStructure::new(Operator::Laurent(q), Some(0)).unwrap();
        let w = Element::Lambda(LaurentPoly::monomial(int(1), 2));
        let c = m.reduce(&w).unwrap();
        assert_eq!(c.entries, vec![u(&[-1]), u(&[0, 1])]);
        assert_eq!(m.reconstruct(&c).unwrap(), w);
        // below the window
        let low = Element::Lambda(LaurentPoly::monomial(int(3), -4));
        let c = m.reduce(&low).unwrap();
        assert_eq!(m.reconstruct(&c).unwrap(), low);
    }

    #[test]
    fn zero_reduces_to_zero() {
        let m = p_example();
        assert_eq!(m.reduce(&Element::zero(Carrier::PolyInZ)).unwrap(), CoeffVector::zero(2));
    }

    #[test]
    fn golden_matrices() {
        let p = weyl(&[&[1, 1], &[], &[1]]);
        let q = weyl(&[&[-2], &[], &[], &[1]]);
        let m_qp = ModuleStructure::new(p.clone(), None).unwrap().matrix_rep(&q).unwrap();
        assert_eq!(m_qp, PolyMatrix::from_int_rows(Var::U, &[&[&[-1], &[1, -2, 1]], &[&[-1, 1], &[]]]));
        let m_pq = ModuleStructure::new(q, None).unwrap().matrix_rep(&p).unwrap();
        assert_eq!(
            m_pq,
            PolyMatrix::from_int_rows(
                Var::U,
                &[&[&[1], &[1, 1], &[]], &[&[], &[1], &[0, 1]], &[&[1], &[], &[1]]]
            )
        );
    }

    #[test]
    fn carrier_mismatch_rejected() {
        let m = p_example();
        let op = Operator::Laurent(LaurentPoly::lambda());
        assert!(m.matrix_rep(&op).is_err());
        assert!(m.reduce(&Element::Lambda(LaurentPoly::one())).is_err());
    }
}
