//! The acceptance suite: every release-gating check as a runnable
//! criterion. The `acceptance` integration test asserts each one; the CLI
//! `verify-all` subcommand runs the same list and aggregates.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::anyon::{
    braid_generator, braid_generator_in_basis, dimension_function_to_braid, enumerate_paths,
    hexagon_check, pentagon_check, FRData,
};
use crate::bratteli::{
    cone_compare, from_continued_fraction, DigitConvention, DimensionFunction,
};
use crate::fusion::{
    decompose_nonneg, k0_class_of_power, rm_anyon_system, verify_axioms, verlinde_check,
    FusionError, FusionSystem, K0Class,
};
use crate::intmat::IntMatrix;
use crate::linalg::CMatrix;
use crate::qtorus::{convergent_gates, dilog_pentagon_residual, weyl_pentagon_check};
use crate::quadratic::{cf_expand, fixing_matrix, CFExpansion, QuadraticIrrational, UnimodularMatrix};
use crate::tol;
use crate::util::{fib, SplitMix64};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CriterionOutcome {
    fn new(id: usize, name: &str, passed: bool, details: String) -> Self {
        CriterionOutcome {
            id,
            name: name.to_string(),
            passed,
            details,
        }
    }
}

/// Run every acceptance criterion; the seed drives the randomized sweep of
/// criterion 6 (and only that).
pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(seed),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
        criterion_12(),
    ]
}

/// Golden continued fraction: cf(τ) = ([], [1]) and the fixing matrix is
/// [[1,1],[1,0]], exactly.
fn criterion_1() -> CriterionOutcome {
    let tau = QuadraticIrrational::golden();
    let cf = cf_expand(&tau);
    let cf_ok = cf.preperiod.is_empty() && cf.period == vec![BigInt::one()];
    let fix = fixing_matrix(&tau);
    let fix_ok = fix.matrix == UnimodularMatrix::new(1, 1, 1, 0).unwrap();
    CriterionOutcome::new(
        1,
        "golden continued fraction and fixing matrix",
        cf_ok && fix_ok,
        format!("cf = {}, g = {}", cf, fix.matrix),
    )
}

/// Fibonacci dimensions: the golden diagram's total path count at level n
/// is Fib(n+1) for n ≤ 25, exactly.
fn criterion_2() -> CriterionOutcome {
    let cf = cf_expand(&QuadraticIrrational::golden());
    let diagram = match from_continued_fraction(&cf, 26, DigitConvention::DigitTop) {
        Ok(d) => d,
        Err(e) => return CriterionOutcome::new(2, "fibonacci dimensions", false, e.to_string()),
    };
    let mut ok = true;
    for n in 0..26 {
        if diagram.total_paths(n) != fib(n + 1) {
            ok = false;
            break;
        }
    }
    CriterionOutcome::new(
        2,
        "fibonacci dimensions Fib(n+1) for n ≤ 25",
        ok,
        format!("level 25 total = {}", diagram.total_paths(25)),
    )
}

/// Conjugation equivalence of the two digit-matrix orientations.
fn criterion_3() -> CriterionOutcome {
    let swap = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
    let flipped = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 1]]);
    let target = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]);
    let got = swap.mul(&flipped).mul(&swap);
    CriterionOutcome::new(
        3,
        "swap conjugation of the flipped incidence",
        got == target,
        format!("swap·[[0,1],[1,1]]·swap = {:?}", got.row(0)),
    )
}

/// Fusion axioms hold exactly and the Verlinde residual stays ≤ 1e−9 for
/// the Fibonacci and the trace-2/3 systems.
fn criterion_4() -> CriterionOutcome {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for t in [1u64, 2, 3] {
        let sys = FusionSystem::two_label(t);
        if !verify_axioms(&sys).all_passed {
            ok = false;
        }
        match verlinde_check(&sys) {
            Ok(r) => worst = worst.max(r),
            Err(_) => ok = false,
        }
    }
    CriterionOutcome::new(
        4,
        "fusion axioms and Verlinde for traces 1, 2, 3",
        ok && worst <= tol::VERLINDE,
        format!("max Verlinde residual = {:.3e}", worst),
    )
}

/// S̃-matrix checks for θ ∈ {τ, 1+√2, (3+√13)/2}.
fn criterion_5() -> CriterionOutcome {
    let thetas = [
        QuadraticIrrational::golden(),
        QuadraticIrrational::new(1, 1, 2).unwrap(),
        QuadraticIrrational::new(3, 2, 13).unwrap(),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for theta in &thetas {
        let sys = match rm_anyon_system(theta) {
            Ok(s) => s,
            Err(e) => {
                return CriterionOutcome::new(5, "S̃-matrix", false, e.to_string());
            }
        };
        let sym = sys.s_symmetry_residual();
        let inv = sys.s_involution_residual();
        let eig = sys.s_eigen_residual();
        // Exact eigenvalues of N₁ equal those of g; compare as floats too.
        let (hi, lo) = sys.n1_eigenvalues();
        let lam = sys.lambda.to_f64();
        let eig_match = (hi.to_f64() - lam).abs() <= tol::UNITARY
            && (lo.to_f64() - (sys.trace.to_string().parse::<f64>().unwrap() - lam)).abs()
                <= tol::UNITARY
            && hi == sys.lambda;
        if sym > tol::UNITARY || inv > tol::UNITARY || eig > tol::SPECTRAL || !eig_match {
            ok = false;
        }
        details.push(format!(
            "Tr={}: sym {:.1e}, S²−I {:.1e}, eigen {:.1e}",
            sys.trace, sym, inv, eig
        ));
    }
    CriterionOutcome::new(5, "S̃-matrix for three moduli", ok, details.join("; "))
}

/// K₀-class ring identities over randomized admissible (θ, g).
fn criterion_6(seed: u64) -> CriterionOutcome {
    let mut rng = SplitMix64::new(seed);
    let mut ok = true;
    let mut tested = 0;
    while tested < 20 {
        // Odd period length gives det −1; digits ≤ 6.
        let len = [1usize, 3, 5][rng.next_below(3) as usize];
        let word: Vec<i64> = (0..len).map(|_| rng.next_range(1, 6)).collect();
        let cf = match CFExpansion::from_i64(&[], &word) {
            Ok(c) => c,
            Err(_) => continue,
        };
        // The word must be its own minimal period for g to match cf_expand;
        // non-minimal words just shrink to their primitive block, which is
        // fine for the identity but changes g, so skip them.
        let theta = cf.value();
        let g = cf.period_matrix();
        if crate::quadratic::moebius_act(&g, &theta) != theta {
            ok = false;
            break;
        }
        tested += 1;

        let c1 = k0_class_of_power(&g, &theta, 1);
        let c2 = k0_class_of_power(&g, &theta, 2);
        let tr = g.trace();
        // [E_{g²}] = Tr(g)[E_g] + [1], exact integers.
        if c2.n != &tr * &c1.n + BigInt::one() || c2.m != &tr * &c1.m {
            ok = false;
            break;
        }

        // [E_{g³}] decomposes with a = Tr(g)²+1, b = Tr(g).
        let c3 = k0_class_of_power(&g, &theta, 3);
        match decompose_nonneg(&c3, &g, &theta) {
            Ok((a, b)) => {
                if a != &tr * &tr + BigInt::one() || b != tr {
                    ok = false;
                    break;
                }
            }
            Err(_) => {
                ok = false;
                break;
            }
        }

        // [E_{g⁻¹}] does not decompose nonnegatively.
        let cm1 = k0_class_of_power(&g, &theta, -1);
        if !matches!(
            decompose_nonneg(&cm1, &g, &theta),
            Err(FusionError::NotDecomposable)
        ) {
            ok = false;
            break;
        }

        // Unit sanity: [1] = (0, 1).
        let unit = K0Class::unit(theta.clone());
        match decompose_nonneg(&unit, &g, &theta) {
            Ok((a, b)) if a.is_zero() && b.is_one() => {}
            _ => {
                ok = false;
                break;
            }
        }
    }
    CriterionOutcome::new(
        6,
        "K₀-class ring identities over 20 randomized (θ, g)",
        ok,
        format!("{} pairs checked (seed {})", tested, seed),
    )
}

/// Pentagon/hexagon for the golden data, plus perturbation sensitivity.
fn criterion_7() -> CriterionOutcome {
    let golden = FRData::golden();
    let pent = pentagon_check(&golden);
    let hex = hexagon_check(&golden);
    let mut min_perturbed = f64::INFINITY;
    for i in 0..2 {
        for j in 0..2 {
            let mut d = FRData::golden();
            d.f[(i, j)] += Complex64::new(1e-3, 0.0);
            min_perturbed = min_perturbed.min(pentagon_check(&d));
        }
    }
    let ok = pent <= tol::PENTAGON && hex <= tol::PENTAGON && min_perturbed > 1e-4;
    CriterionOutcome::new(
        7,
        "golden pentagon and hexagon with sensitivity",
        ok,
        format!(
            "pentagon {:.2e}, hexagon {:.2e}, weakest perturbation {:.2e}",
            pent, hex, min_perturbed
        ),
    )
}

/// Braid representation checks for n ≤ 8.
fn criterion_8() -> CriterionOutcome {
    let d = FRData::golden();
    let mut ok = true;
    let mut worst_unitary: f64 = 0.0;
    let mut worst_braid: f64 = 0.0;
    let mut worst_far: f64 = 0.0;
    let mut max_dim = 0usize;
    for n in 2..=8 {
        let gens: Vec<CMatrix> = (1..n).map(|i| braid_generator(i, n, &d)).collect();
        max_dim = max_dim.max(gens[0].rows());
        for b in &gens {
            worst_unitary = worst_unitary.max(b.unitary_residual());
        }
        for i in 0..gens.len().saturating_sub(1) {
            let lhs = gens[i].mul(&gens[i + 1]).mul(&gens[i]);
            let rhs = gens[i + 1].mul(&gens[i]).mul(&gens[i + 1]);
            worst_braid = worst_braid.max(lhs.sub(&rhs).op_norm());
        }
        for i in 0..gens.len() {
            for j in (i + 2)..gens.len() {
                worst_far = worst_far.max(gens[i].mul(&gens[j]).sub(&gens[j].mul(&gens[i])).op_norm());
            }
        }
    }
    if worst_unitary > tol::UNITARY || worst_braid > tol::BRAID_RELATION || worst_far > tol::FAR_COMMUTATION {
        ok = false;
    }

    // σ₁ = R and σ₂ = F⁻¹RF exactly as constructed, on the 2-dim sector.
    let basis = enumerate_paths(&FusionSystem::fibonacci(), 3).charge_sector(1);
    let b1 = braid_generator_in_basis(1, &basis, &d).unwrap();
    let b2 = braid_generator_in_basis(2, &basis, &d).unwrap();
    let expect2 = d.f.adjoint().mul(&d.r_matrix()).mul(&d.f);
    let sector_ok = b1.data() == d.r_matrix().data() && b2.data() == expect2.data();
    if !sector_ok {
        ok = false;
    }

    CriterionOutcome::new(
        8,
        "braid representation for n ≤ 8",
        ok,
        format!(
            "dim ≤ {}, unitary {:.1e}, braid {:.1e}, far {:.1e}, sector {}",
            max_dim, worst_unitary, worst_braid, worst_far, sector_ok
        ),
    )
}

/// Clock/shift commutation along the convergents of τ up to q = 144.
fn criterion_9() -> CriterionOutcome {
    let tau = QuadraticIrrational::golden();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut last_q = String::new();
    for n in 1..=12 {
        match convergent_gates(&tau, n) {
            Ok(g) => {
                worst = worst.max(g.pair.commutation_residual());
                last_q = g.q.to_string();
            }
            Err(e) => {
                return CriterionOutcome::new(9, "clock/shift gates", false, e.to_string());
            }
        }
    }
    if worst > tol::CLOCK_SHIFT || last_q != "144" {
        ok = false;
    }
    CriterionOutcome::new(
        9,
        "clock/shift commutation up to q = 144",
        ok,
        format!("max ‖UV − ξVU‖ = {:.2e}, final q = {}", worst, last_q),
    )
}

/// Weyl-algebra pentagon at degree 10 for three values of q.
fn criterion_10() -> CriterionOutcome {
    let qs = [
        Complex64::new(0.3, 0.0),
        Complex64::new(0.5, 0.1),
        Complex64::new(-0.4, 0.0),
    ];
    let mut worst: f64 = 0.0;
    for q in qs {
        match weyl_pentagon_check(q, 10) {
            Ok(r) => worst = worst.max(r),
            Err(e) => return CriterionOutcome::new(10, "weyl pentagon", false, e.to_string()),
        }
    }
    CriterionOutcome::new(
        10,
        "weyl pentagon at degree 10",
        worst <= tol::WEYL_PENTAGON,
        format!("max coefficient residual = {:.2e}", worst),
    )
}

/// Dimension functions: f₁ gives the Fibonacci diagram, Fib braid
/// exponents, and word(f₁+f_τ) is the exponent-wise sum.
fn criterion_11() -> CriterionOutcome {
    let cf = cf_expand(&QuadraticIrrational::golden());
    let diagram = match from_continued_fraction(&cf, 14, DigitConvention::DigitTop) {
        Ok(d) => d,
        Err(e) => return CriterionOutcome::new(11, "dimension functions", false, e.to_string()),
    };
    let f1 = match DimensionFunction::f_one(&diagram, 13) {
        Ok(f) => f,
        Err(e) => return CriterionOutcome::new(11, "dimension functions", false, e.to_string()),
    };
    // Exact columns (Fib(k), Fib(k−1)) and a defined root of 1.
    let mut ok = f1.root == Some(BigInt::one()) && f1.check_relations();
    for (k, (t, b)) in f1.columns.iter().enumerate() {
        if *t != fib(k + 1) || *b != fib(k) {
            ok = false;
        }
    }

    let w1 = match dimension_function_to_braid(&f1, 9) {
        Ok(w) => w,
        Err(e) => return CriterionOutcome::new(11, "dimension functions", false, e.to_string()),
    };
    for k in 0..10 {
        if BigInt::from(w1.abelian_exponent(2 * k + 1)) != fib(k) {
            ok = false;
        }
    }

    let ft = DimensionFunction::f_tau(&diagram, 13).unwrap();
    let wt = dimension_function_to_braid(&ft, 9).unwrap();
    let wsum = dimension_function_to_braid(&f1.add(&ft), 9).unwrap();
    for k in 0..10 {
        let gen = 2 * k + 1;
        if wsum.abelian_exponent(gen) != w1.abelian_exponent(gen) + wt.abelian_exponent(gen) {
            ok = false;
        }
    }

    CriterionOutcome::new(
        11,
        "dimension functions and braid words",
        ok,
        "f₁ columns, Fib exponents and additivity checked to σ₁₉".to_string(),
    )
}

/// Diagnostics complete and serialize with their logs; their numerical
/// outcomes are recorded, not asserted.
fn criterion_12() -> CriterionOutcome {
    let theta = QuadraticIrrational::new(2, 3, 10).unwrap();
    let g = UnimodularMatrix::new(5, 2, 3, 1).unwrap();
    let cone = match cone_compare(&theta, &g, 3, 4) {
        Ok(r) => r,
        Err(e) => return CriterionOutcome::new(12, "diagnostics", false, e.to_string()),
    };
    let cone_json = serde_json::to_string(&cone).unwrap_or_default();
    let cone_ok = cone_json.contains("grid_disagreements") && cone.grid_points > 0;

    let u = Complex64::from_polar(1.0, std::f64::consts::PI / 5.0);
    let v = Complex64::from_polar(1.0, std::f64::consts::PI / 7.0);
    let mut dilog_ok = true;
    let mut residuals = Vec::new();
    for q in [2usize, 3] {
        match dilog_pentagon_residual(1, q, u, v) {
            Ok(rep) => {
                let json = serde_json::to_string(&rep).unwrap_or_default();
                if !rep.completed || rep.branch_log.is_empty() || !json.contains("branch_log") {
                    dilog_ok = false;
                } else {
                    residuals.push(format!("q={}: {:.3e}", q, rep.residual));
                }
            }
            Err(e) => {
                dilog_ok = false;
                residuals.push(format!("q={}: error {}", q, e));
            }
        }
    }

    CriterionOutcome::new(
        12,
        "diagnostic reports complete with logs",
        cone_ok && dilog_ok,
        format!(
            "cone isomorphism found: {}; dilog residuals [{}] (recorded, not asserted)",
            cone.isomorphism.is_some(),
            residuals.join(", ")
        ),
    )
}
