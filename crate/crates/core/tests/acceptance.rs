//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use spectral_duality::algebra::{det_cofactor, squarefree_primitive, BiPoly, PolyMatrix, Rational, Var};
use spectral_duality::constructions::{beh_duality_check, build_beh, build_mqp};
use spectral_duality::modrep::{ModuleStructure, Operator};
use spectral_duality::spectral::{
    curves_equal_as_loci, fourier_curve_theorem_check, fourier_pair, is_quantization, is_spectral_quantization,
    spectral_curve,
};
use spectral_duality::suite::{run_suite, Suite};
use spectral_duality::weyl::WeylOp;

const SEED: u64 = 0;

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn w(rows: &[&[i64]]) -> WeylOp {
    WeylOp::from_int_coeffs(rows)
}

fn x() -> BiPoly {
    BiPoly::x()
}

fn y() -> BiPoly {
    BiPoly::y()
}

fn one() -> BiPoly {
    BiPoly::one()
}

/// `P = D^2 + s + 1`, `Q = D^3 - 2`.
fn example_pair() -> (WeylOp, WeylOp) {
    (w(&[&[1, 1], &[], &[1]]), w(&[&[-2], &[], &[], &[1]]))
}

fn classical_pair() -> (WeylOp, WeylOp) {
    (w(&[&[1], &[-2], &[1]]), w(&[&[], &[1]]))
}

fn quantum_pair() -> (WeylOp, WeylOp) {
    (w(&[&[0, -1], &[], &[1]]), w(&[&[1], &[1]]))
}

fn rep(action: &WeylOp, op: &WeylOp) -> PolyMatrix {
    ModuleStructure::new(Operator::Weyl(action.clone()), None)
        .and_then(|m| m.matrix_rep(&Operator::Weyl(op.clone())))
        .expect("valid structure")
}

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, what: &str) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn suites(list: &[Suite]) -> Outcome {
    for &s in list {
        let r = run_suite(s, SEED, s.default_count());
        let first = r.failures().next().cloned();
        if let Some(f) = first {
            return Err(format!(
                "{} case {} failed ({}): {}",
                s.name(),
                f.index,
                f.witness,
                f.failure.as_deref().unwrap_or("")
            ));
        }
    }
    Ok(())
}

fn golden_matrices() -> Outcome {
    let (p, q) = example_pair();
    ensure(
        rep(&p, &q) == PolyMatrix::from_int_rows(Var::U, &[&[&[-1], &[1, -2, 1]], &[&[-1, 1], &[]]]),
        "M_{Q,P}",
    )?;
    ensure(
        rep(&q, &p)
            == PolyMatrix::from_int_rows(
                Var::U,
                &[&[&[1], &[1, 1], &[]], &[&[], &[1], &[0, 1]], &[&[1], &[], &[1]]],
            ),
        "M_{P,Q}",
    )?;
    let (p0, q0) = classical_pair();
    ensure(
        rep(&p0, &q0) == PolyMatrix::from_int_rows(Var::U, &[&[&[], &[-1, 1]], &[&[1], &[2]]]),
        "M_{Q0,P0}",
    )?;
    let (p1, q1) = quantum_pair();
    ensure(
        rep(&p1, &q1) == PolyMatrix::from_int_rows(Var::U, &[&[&[1], &[0, 1]], &[&[1], &[1]]]),
        "M_{Q1,P1}",
    )?;
    let m23 = PolyMatrix::from_int_rows(Var::U, &[&[&[], &[0, 1], &[]], &[&[], &[], &[0, 1]], &[&[1], &[], &[]]]);
    ensure(build_mqp(3, 2).map_err(|e| e.to_string())? == m23, "M_{2,3}")?;
    let m32 = PolyMatrix::from_int_rows(Var::U, &[&[&[], &[0, 0, 1]], &[&[0, 1], &[]]]);
    ensure(build_mqp(2, 3).map_err(|e| e.to_string())? == m32, "M_{3,2}")
}

fn golden_curves() -> Outcome {
    let (p, q) = example_pair();
    let (po, qo) = (Operator::Weyl(p), Operator::Weyl(q));
    let cube = (&x() - &one()).pow(3);
    let expect_qp = &(&y().pow(2) + &y()) - &cube;
    // (x-1)^3 - y^2 - y as written with x the eigenvalue
    let expect_pq_swapped = &(&cube - &y().pow(2)) - &y();
    let x_qp = spectral_curve(&po, &qo, None).map_err(|e| e.to_string())?;
    let x_pq = spectral_curve(&qo, &po, None).map_err(|e| e.to_string())?;
    ensure(x_qp.raw == expect_qp, "X_{Q,P} raw")?;
    ensure(x_pq.raw.swap_xy() == expect_pq_swapped, "X_{P,Q} raw")?;
    ensure(
        curves_equal_as_loci(&x_qp.raw, &x_pq.raw.swap_xy()).map_err(|e| e.to_string())?,
        "swap relation",
    )
}

fn duality_suites() -> Outcome {
    suites(&[Suite::WeylDuality, Suite::LaurentDuality])
}

fn fourier_and_quantization() -> Outcome {
    let err = |e: spectral_duality::Error| e.to_string();
    let (c, qn) = (classical_pair(), quantum_pair());
    ensure(fourier_curve_theorem_check(&qn).map_err(err)?.holds, "Fourier curve check on the quantization example")?;
    ensure(is_quantization(&c, &qn).map_err(err)?.verdict, "(P1,Q1) quantizes (P0,Q0)")?;
    let (fc, fq) = (fourier_pair(&c.0, &c.1), fourier_pair(&qn.0, &qn.1));
    let q = is_quantization(&fc, &fq).map_err(err)?;
    ensure(!q.matrix_eq_ok && !q.verdict, "Fourier pair matrices differ")?;
    ensure(is_spectral_quantization(&fc, &fq).map_err(err)?.verdict, "Fourier pair spectral quantization")?;
    suites(&[Suite::Fourier])
}

fn beh() -> Outcome {
    let inst = build_beh(int(1), vec![int(1), int(1)], vec![int(1), int(1)], Some(1)).map_err(|e| e.to_string())?;
    let r = beh_duality_check(&inst).map_err(|e| e.to_string())?;
    ensure(r.holds && r.d1_matches_matrix_rep && r.d2_matches_matrix_rep, "smallest instance")?;
    suites(&[Suite::Beh])
}

fn resultants() -> Outcome {
    suites(&[Suite::PolynomialResultant, Suite::LaurentResultant])
}

/// `det(t - M_ξ)` by cofactor expansion over `Q[x, y]`, `u ↦ x`, `t ↦ y`.
fn xi_charpoly(xi: &Rational) -> BiPoly {
    let c = |v: &Rational| BiPoly::constant(v.clone());
    let zero = BiPoly::zero();
    let m = [
        [zero.clone(), x(), x().scale(&-xi)],
        [c(xi), zero.clone(), x()],
        [one(), zero.clone(), zero.clone()],
    ];
    let rows: Vec<Vec<BiPoly>> = (0..3)
        .map(|i| (0..3).map(|j| if i == j { &y() - &m[i][j] } else { -&m[i][j] }).collect())
        .collect();
    det_cofactor(&rows).expect("square")
}

fn round_trips() -> Outcome {
    suites(&[Suite::RoundTripZ, Suite::RoundTripLaurent, Suite::ZAction])?;
    let target = &y().pow(3) - &x().pow(2);
    for xi in [int(0), int(1), int(-2), Rational::new(BigInt::from(7), BigInt::from(3))] {
        let d = xi_charpoly(&xi);
        ensure(d == target || d == -&target, &format!("xi = {xi}"))?;
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn monomial_curve(action: usize, op: usize) -> Result<BiPoly, String> {
    spectral_curve(
        &Operator::Weyl(WeylOp::d_power(action)),
        &Operator::Weyl(WeylOp::d_power(op)),
        None,
    )
    .map(|c| c.normal)
    .map_err(|e| e.to_string())
}

/// `M_{q,p}` has eigenvalues `ζ x^{q/p}`, so its curve is `y^p = x^q`; the
/// dual matrix `M_{p,q}` gives `y^q = x^p`.
fn mqp_law() -> Outcome {
    let law = |a: usize, b: usize| squarefree_primitive(&(&y().pow(a as u32) - &x().pow(b as u32))).expect("nonzero");
    for p in 1..=5usize {
        for q in 1..=5usize {
            if gcd(p, q) != 1 {
                continue;
            }
            ensure(monomial_curve(p, q)? == law(p, q), &format!("M_{{q,p}} at (p, q) = ({p}, {q})"))?;
            ensure(monomial_curve(q, p)? == law(q, p), &format!("M_{{p,q}} at (p, q) = ({p}, {q})"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden matrices", Duration::from_secs(1), golden_matrices),
        ("golden curves", Duration::from_secs(1), golden_curves),
        ("duality suites", Duration::from_secs(60), duality_suites),
        ("Fourier and quantization", Duration::from_secs(60), fourier_and_quantization),
        ("large-N duality", Duration::from_secs(120), beh),
        ("resultant bridge", Duration::from_secs(60), resultants),
        ("round trips and representations", Duration::from_secs(30), round_trips),
        ("M_{q,p} curve law", Duration::from_secs(10), mqp_law),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= *limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over time limit {limit:?})"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {}: {name}: {verdict} in {:.3}s (limit {}s)", i + 1, elapsed.as_secs_f64(), limit.as_secs());
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
