//! Randomized invariant suites.
//!
//! Each case is a pure function of `(suite, seed, index)`, so runners may
//! evaluate cases in any order or in parallel and still report identically.

use serde_json::{json, Value};

use crate::constructions::{
    beh_duality_check, build_beh, companion_law, multiplication_operator, resultant_curve,
};
use crate::error::Result;
use crate::modrep::{Element, ModuleStructure, Operator};
use crate::random::{self, case_rng};
use crate::spectral::{
    duality_check, fourier_curve_theorem_check, is_quantization, is_spectral_quantization, SpectralCurve,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    WeylDuality,
    LaurentDuality,
    Fourier,
    Beh,
    PolynomialResultant,
    LaurentResultant,
    RoundTripZ,
    RoundTripLaurent,
    ZAction,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::WeylDuality,
        Suite::LaurentDuality,
        Suite::Fourier,
        Suite::Beh,
        Suite::PolynomialResultant,
        Suite::LaurentResultant,
        Suite::RoundTripZ,
        Suite::RoundTripLaurent,
        Suite::ZAction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::WeylDuality => "weyl-duality",
            Suite::LaurentDuality => "laurent-duality",
            Suite::Fourier => "fourier",
            Suite::Beh => "beh",
            Suite::PolynomialResultant => "polynomial-resultant",
            Suite::LaurentResultant => "laurent-resultant",
            Suite::RoundTripZ => "round-trip-z",
            Suite::RoundTripLaurent => "round-trip-laurent",
            Suite::ZAction => "z-action",
        }
    }

    pub fn default_count(self) -> usize {
        match self {
            Suite::WeylDuality | Suite::LaurentDuality | Suite::Fourier | Suite::ZAction => 100,
            Suite::Beh | Suite::PolynomialResultant => 50,
            Suite::LaurentResultant => 20,
            Suite::RoundTripZ | Suite::RoundTripLaurent => 200,
        }
    }

    fn tag(self) -> u64 {
        Suite::ALL.iter().position(|s| *s == self).expect("listed") as u64
    }

    /// Runs case `index`. The stream id combines the suite and the index.
    pub fn run_case(self, seed: u64, index: u64) -> CaseOutcome {
        let mut rng = case_rng(seed, (self.tag() << 32) | index);
        let mut witness = String::new();
        let result = match self {
            Suite::WeylDuality => weyl_duality(&mut rng, &mut witness),
            Suite::LaurentDuality => laurent_duality(&mut rng, &mut witness),
            Suite::Fourier => fourier(&mut rng, &mut witness),
            Suite::Beh => beh(&mut rng, &mut witness),
            Suite::PolynomialResultant => polynomial_resultant(&mut rng, &mut witness),
            Suite::LaurentResultant => laurent_resultant(&mut rng, &mut witness),
            Suite::RoundTripZ => round_trip_z(&mut rng, &mut witness),
            Suite::RoundTripLaurent => round_trip_laurent(&mut rng, &mut witness),
            Suite::ZAction => z_action(&mut rng, &mut witness),
        };
        let failure = match result {
            Ok(None) => None,
            Ok(Some(msg)) => Some(msg),
            Err(e) => Some(format!("error: {e}")),
        };
        CaseOutcome { index, witness, failure }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// Outcome of one case. `witness` describes the inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseOutcome {
    pub index: u64,
    pub witness: String,
    pub failure: Option<String>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    /// Outcomes ordered by case index.
    pub cases: Vec<CaseOutcome>,
}

impl SuiteReport {
    pub fn from_cases(suite: Suite, seed: u64, mut cases: Vec<CaseOutcome>) -> Self {
        cases.sort_by_key(|c| c.index);
        SuiteReport { suite, seed, cases }
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(CaseOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.cases.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "seed": self.seed,
            "count": self.cases.len(),
            "passed": self.passed(),
            "failures": self.failures().map(|c| json!({
                "case": c.index,
                "witness": c.witness,
                "reason": c.failure,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs `count` cases one after another.
pub fn run_suite(suite: Suite, seed: u64, count: usize) -> SuiteReport {
    let cases = (0..count as u64).map(|i| suite.run_case(seed, i)).collect();
    SuiteReport::from_cases(suite, seed, cases)
}

type Check = Result<Option<String>>;

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Option<String> {
    bad.then(msg)
}

fn duality_and_degrees(p: &Operator, q: &Operator, rank_p: usize, rank_q: usize) -> Check {
    let r = duality_check(p, q)?;
    if !r.holds {
        return Ok(Some(format!("loci differ: X_QP = {}, X_PQ = {}", r.x_qp.raw, r.x_pq.raw)));
    }
    let (dy, dx) = (r.x_qp.raw.degree_y(), r.x_pq.raw.degree_y());
    let (ex, ey) = (r.x_qp.raw.degree_x(), r.x_pq.raw.degree_x());
    let expect = (Some(rank_p as u32), Some(rank_q as u32));
    Ok(fail_if((dy, dx) != expect || (ey, ex) != expect, || {
        format!("degree law: X_QP has degrees (x {ex:?}, y {dy:?}), X_PQ has (x {ey:?}, y {dx:?}); ranks {rank_p}, {rank_q}")
    }))
}

fn weyl_duality(rng: &mut impl rand::Rng, w: &mut String) -> Check {
    let (p, q) = random::weyl_pair(rng);
    *w = format!("P = {p}; Q = {q}");
    let (rp, rq) = (p.order().unwrap_or(0), q.order().unwrap_or(0));
    duality_and_degrees(&Operator::Weyl(p), &Operator::Weyl(q), rp, rq)
}

fn laurent_duality(rng: &mut impl rand::Rng, w: &mut String) -> Check {
    let params = random::laurent_params(rng);
    let (p, q) = (params.p(), params.q());
    *w = format!("P = {p}; Q = {q}");
    let rank = |f: &crate::algebra::LaurentPoly| (f.top().unwrap_or(0) - f.bot().unwrap_or(0)) as usize;
    let (rp, rq) = (rank(&p), rank(&q));
    duality_and_degrees(&Operator::Laurent(p), &Operator::Laurent(q), rp, rq)
}

fn fourier(rng: &mut impl rand::Rng, w: &mut String) -> Check {
    let pair = random::weyl_pair(rng);
    *w = format!("P = {}; Q = {}", pair.0, pair.1);
    let r = fourier_curve_theorem_check(&pair)?;
    if !r.holds {
        return Ok(Some(format!(
            "X of transformed pair {} vs transformed curve {}",
            r.transformed_pair_curve.raw, r.transformed_curve.raw
        )));
    }
    let q = is_quantization(&pair, &pair)?;
    let sq = is_spectral_quantization(&pair, &pair)?;
    Ok(fail_if(q.verdict && !sq.verdict, || "quantization without spectral quantization".into()))
}

fn beh(rng: &mut impl rand::Rng, w: &mut String) -> Check {
    let params = random::beh_params(rng);
    *w = format!("gamma = {}; P = {}; Q = {}", params.gamma, params.p(), params.q());
    let inst = build_beh(params.gamma, params.a, params.b, None)?;
    let r = beh_duality_check(&inst)?;
    if !r.holds {
        return Ok(Some(format!("lhs {} vs rhs {}", r.lhs.raw, r.rhs.raw)));
    }
    if !r.d1_matches_matrix_rep || !r.d2_matches_matrix_rep {
        return Ok(Some(format!(
            "entrywise comparison with matrix_rep: D1 {}, D2 {}",
            r.d1_matches_matrix_rep, r.d2_matches_matrix_rep
        )));
    }
    let law = companion_law(&inst);
    let charpoly = inst.a_mat.characteristic_polynomial()?;
    Ok(fail_if(charpoly != law, || format!("companion law: {charpoly} vs {law}")))
}

fn resultant_bridge(p: &crate::algebra::LaurentPoly, q: &crate::algebra::LaurentPoly) -> Check {
    let (a, b) = (multiplication_operator(p), multiplication_operator(q));
    let res = resultant_curve(p, q)?;
    let x_qp = crate::spectral::spectral_curve(&a, &b, None)?;
    let x_pq: SpectralCurve = crate::spectral::spectral_curve(&b, &a, None)?.swapped()?;
    Ok(fail_if(res.normal != x_qp.normal || res.normal != x_pq.normal, || {
        format!("resultant {} vs X_QP {} vs swapped X_PQ {}", res.normal, x_qp.normal, x_pq.normal)
    }))
}

fn polynomial_resultant(rng: &mut impl rand::Rng, w: &mut String) -> Check {
    let (p, q) = random::polynomial_pair(rng);
    *w = format!("P = {p}; Q = {q}");
    resultant_bridge(&p, &q)
}

fn laurent_resultant(rng: &mut impl rand::Rng, w: &mut String) -> Check {
    let (p, q) = (random::laurent_multiplier(rng), random::laurent_multiplier(rng));
    *w = format!("P = {p}; Q = {q}");
    resultant_bridge(&p, &q)
}

fn round_trip(m: &ModuleStructure, v: &Element) -> Check {
    let c = m.reduce(v)?;
    let back = m.reconstruct(&c)?;
    if back != *v {
        return Ok(Some(format!("reconstruct(reduce(w)) = {back}")));
    }
    let av = m.action().apply(v)?;
    let cu = m.reduce(&av)?;
    let shifted: Vec<_> = c.entries.iter().map(|e| e.shift(1)).collect();
    Ok(fail_if(cu.entries != shifted, || "reduce(A w) differs from u reduce(w)".into()))
}

fn round_trip_z(rng: &mut impl rand::Rng, w: &mut String) -> Check {
    let order = rng.gen_range(1..=4);
    let a = random::weyl_operator(rng, order, 2);
    let v = random::z_element(rng, 12);
    *w = format!("A = {a}; w = {v}");
    let m = ModuleStructure::new(Operator::Weyl(a), None)?;
    round_trip(&m, &Element::Z(v))
}

fn round_trip_laurent(rng: &mut impl rand::Rng, w: &mut String) -> Check {
    let a = random::laurent_multiplier(rng);
    let start = rng.gen_range(-2..=2);
    let v = random::lambda_element(rng, -6, 6);
    *w = format!("A = {a}; window start {start}; w = {v}");
    let m = ModuleStructure::new(Operator::Laurent(a), Some(start))?;
    round_trip(&m, &Element::Lambda(v))
}

fn z_action(rng: &mut impl rand::Rng, w: &mut String) -> Check {
    let (oa, ob) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
    let a = random::weyl_operator(rng, oa, 2);
    let b = random::weyl_operator(rng, ob, 2);
    let v = random::z_element(rng, 6);
    *w = format!("a = {a}; b = {b}; v = {v}");
    let lhs = (&a * &b).z_action(&v);
    let rhs = a.z_action(&b.z_action(&v));
    Ok(fail_if(lhs != rhs, || format!("(ab)v = {lhs}, a(bv) = {rhs}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_a_few_cases() {
        for suite in Suite::ALL {
            let r = run_suite(suite, 1, 3);
            assert!(r.all_passed(), "{}: {:?}", suite.name(), r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn cases_replay() {
        assert_eq!(Suite::Beh.run_case(5, 2), Suite::Beh.run_case(5, 2));
        assert_ne!(Suite::Beh.run_case(5, 2).witness, Suite::Beh.run_case(5, 3).witness);
    }

    #[test]
    fn names_parse() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
