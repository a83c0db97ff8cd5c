//! Clock/shift approximants of the quantum-torus generators, truncated
//! Weyl-algebra series for the |q| < 1 quantum-dilogarithm pentagon, and the
//! root-of-unity dilogarithm with branch-decision logging.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{normal_eigen, CMatrix, LinalgError};
use crate::quadratic::{cf_expand, QuadraticIrrational};

#[derive(Debug, Error)]
pub enum QTorusError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("argument {base:?} of {factor} lies on the branch cut")]
    BranchCut { factor: String, base: (f64, f64) },
    #[error(transparent)]
    IllConditioned(#[from] LinalgError),
}

// ---------------------------------------------------------------------------
// Clock and shift matrices
// ---------------------------------------------------------------------------

/// The q×q clock/shift pair: U = diag(1, ξ, …, ξ^{q−1}) with
/// ξ = e^{2πi p/q}, and the cyclic downshift V (V·e_j = e_{j+1}), chosen so
/// that UV = ξ·VU holds exactly.
#[derive(Debug, Clone)]
pub struct ClockShiftPair {
    pub p: i64,
    pub q: usize,
    pub xi: Complex64,
    pub u: CMatrix,
    pub v: CMatrix,
}

/// Largest matrix dimension the gates will materialize.
pub const MAX_GATE_DIM: usize = 4096;

pub fn clock_shift(p: i64, q: usize) -> Result<ClockShiftPair, QTorusError> {
    if q < 1 {
        return Err(QTorusError::BadParams("q must be ≥ 1".into()));
    }
    if q > MAX_GATE_DIM {
        return Err(QTorusError::BadParams(format!(
            "q = {} exceeds the gate dimension limit {}",
            q, MAX_GATE_DIM
        )));
    }
    let p_red = p.rem_euclid(q as i64);
    if (p_red as u64).gcd(&(q as u64)) != 1 && q > 1 {
        return Err(QTorusError::BadParams(format!(
            "p/q = {}/{} is not in lowest terms",
            p, q
        )));
    }
    let phase = |num: i128| -> Complex64 {
        let r = num.rem_euclid(q as i128) as f64;
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r / q as f64)
    };
    let mut u = CMatrix::zeros(q, q);
    for j in 0..q {
        u[(j, j)] = phase(p_red as i128 * j as i128);
    }
    let mut v = CMatrix::zeros(q, q);
    for j in 0..q {
        v[((j + 1) % q, j)] = Complex64::one();
    }
    Ok(ClockShiftPair {
        p: p_red,
        q,
        xi: phase(p_red as i128),
        u,
        v,
    })
}

impl ClockShiftPair {
    /// ‖UV − ξVU‖ (pure rounding; the identity is structural).
    pub fn commutation_residual(&self) -> f64 {
        let lhs = self.u.mul(&self.v);
        let rhs = self.v.mul(&self.u).scale(self.xi);
        lhs.sub(&rhs).op_norm()
    }
}

/// The n-th convergent pₙ/qₙ of the continued fraction of θ (1-indexed:
/// n = 1 gives a₀/1) and the clock/shift pair of that size.
#[derive(Debug, Clone)]
pub struct ConvergentGates {
    pub n: usize,
    pub p: num_bigint::BigInt,
    pub q: num_bigint::BigInt,
    pub pair: ClockShiftPair,
}

/// Approximate quantum-torus generators from the n-th convergent of θ.
///
/// The gate size is the convergent denominator qₙ and the clock phase is
/// e^{2πi pₙ/qₙ}; consecutive convergents are automatically coprime.
pub fn convergent_gates(
    theta: &QuadraticIrrational,
    n: usize,
) -> Result<ConvergentGates, QTorusError> {
    if n < 1 {
        return Err(QTorusError::BadParams("convergent index starts at 1".into()));
    }
    let cf = cf_expand(theta);
    let (mut p_prev, mut q_prev) = (num_bigint::BigInt::one(), num_bigint::BigInt::zero());
    let (mut p, mut q) = (cf.digit(0), num_bigint::BigInt::one());
    for k in 1..n {
        let c = cf.digit(k);
        let p_next = &c * &p + &p_prev;
        let q_next = &c * &q + &q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    let q_usize = usize::try_from(&q)
        .map_err(|_| QTorusError::BadParams("convergent denominator too large".into()))?;
    let p_mod = (&p % &q).to_string().parse::<i64>().unwrap_or(0);
    let pair = clock_shift(if q_usize == 1 { 0 } else { p_mod }, q_usize)?;
    Ok(ConvergentGates { n, p, q, pair })
}

// ---------------------------------------------------------------------------
// Truncated Weyl series
// ---------------------------------------------------------------------------

/// Truncated element Σ c_{ab}·UᵃVᵇ (a+b ≤ max_degree) of the Weyl algebra
/// with UV = q·VU; multiplication reorders through VᵇUᵃ = q^{−ab}·UᵃVᵇ at
/// the coefficient level, so products are exact through the truncation
/// degree.
#[derive(Debug, Clone)]
pub struct TruncatedWeylSeries {
    pub q: Complex64,
    pub max_degree: usize,
    coeffs: Vec<Complex64>,
}

impl TruncatedWeylSeries {
    fn idx(&self, a: usize, b: usize) -> usize {
        a * (self.max_degree + 1) + b
    }

    pub fn zero(q: Complex64, max_degree: usize) -> Self {
        TruncatedWeylSeries {
            q,
            max_degree,
            coeffs: vec![Complex64::zero(); (max_degree + 1) * (max_degree + 1)],
        }
    }

    pub fn one(q: Complex64, max_degree: usize) -> Self {
        let mut s = TruncatedWeylSeries::zero(q, max_degree);
        let i = s.idx(0, 0);
        s.coeffs[i] = Complex64::one();
        s
    }

    pub fn monomial(q: Complex64, max_degree: usize, a: usize, b: usize, c: Complex64) -> Self {
        assert!(a + b <= max_degree);
        let mut s = TruncatedWeylSeries::zero(q, max_degree);
        let i = s.idx(a, b);
        s.coeffs[i] = c;
        s
    }

    pub fn coeff(&self, a: usize, b: usize) -> Complex64 {
        if a + b > self.max_degree {
            Complex64::zero()
        } else {
            self.coeffs[a * (self.max_degree + 1) + b]
        }
    }

    pub fn mul(&self, other: &TruncatedWeylSeries) -> TruncatedWeylSeries {
        assert_eq!(self.max_degree, other.max_degree);
        let d = self.max_degree;
        let mut out = TruncatedWeylSeries::zero(self.q, d);
        for a1 in 0..=d {
            for b1 in 0..=(d - a1) {
                let c1 = self.coeff(a1, b1);
                if c1.norm_sqr() == 0.0 {
                    continue;
                }
                for a2 in 0..=(d - a1 - b1) {
                    for b2 in 0..=(d - a1 - b1 - a2) {
                        let c2 = other.coeff(a2, b2);
                        if c2.norm_sqr() == 0.0 {
                            continue;
                        }
                        // V^{b1}·U^{a2} = q^{−a2·b1}·U^{a2}·V^{b1}
                        let reorder = self.q.powi(-((a2 * b1) as i32));
                        let i = out.idx(a1 + a2, b1 + b2);
                        out.coeffs[i] += c1 * c2 * reorder;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &TruncatedWeylSeries) -> TruncatedWeylSeries {
        assert_eq!(self.max_degree, other.max_degree);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Σₙ aₙ·xⁿ for scalar coefficients aₙ, truncated.
    pub fn compose(coeffs: &[Complex64], x: &TruncatedWeylSeries) -> TruncatedWeylSeries {
        let mut out = TruncatedWeylSeries::zero(x.q, x.max_degree);
        let mut power = TruncatedWeylSeries::one(x.q, x.max_degree);
        for (n, &a) in coeffs.iter().enumerate() {
            if n > 0 {
                power = power.mul(x);
            }
            for (o, p) in out.coeffs.iter_mut().zip(power.coeffs.iter()) {
                *o += a * p;
            }
        }
        out
    }
}

/// Series coefficients of Ψ_q(x) = (x; q)_∞ = ∏ₖ(1 − qᵏx) through degree d:
/// aₙ = (−1)ⁿ q^{n(n−1)/2} / ∏_{k=1..n}(1 − qᵏ).
pub fn qpochhammer_coeffs(q: Complex64, degree: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(degree + 1);
    let mut qfact = Complex64::one(); // (q; q)_n
    let mut qpow = Complex64::one(); // q^n
    let mut tri = Complex64::one(); // q^{n(n−1)/2}
    let mut sign = 1.0;
    out.push(Complex64::one());
    for n in 1..=degree {
        qpow *= q;
        qfact *= Complex64::one() - qpow;
        if n > 1 {
            // q^{n(n−1)/2} gains q^{n−1} going from n−1 to n.
            tri *= qpow / q;
        }
        sign = -sign;
        out.push(Complex64::new(sign, 0.0) * tri / qfact);
        let _ = n;
    }
    out
}

/// Ψ_q evaluated on a truncated Weyl series.
pub fn psi_series(x: &TruncatedWeylSeries) -> TruncatedWeylSeries {
    let coeffs = qpochhammer_coeffs(x.q, x.max_degree);
    TruncatedWeylSeries::compose(&coeffs, x)
}

/// Coefficientwise residual of the Weyl-algebra pentagon
/// Ψ_q(V)·Ψ_q(U) = Ψ_q(U)·Ψ_q(−VU)·Ψ_q(V), exact through the truncation
/// degree; nonzero output is pure floating-point noise.
pub fn weyl_pentagon_check(q: Complex64, degree: usize) -> Result<f64, QTorusError> {
    if q.norm() >= 1.0 {
        return Err(QTorusError::BadParams("|q| must be < 1".into()));
    }
    if degree > 16 {
        return Err(QTorusError::BadParams("degree capped at 16".into()));
    }
    if degree == 0 {
        // Both sides truncate to the scalar 1.
        return Ok(0.0);
    }
    let u = TruncatedWeylSeries::monomial(q, degree, 1, 0, Complex64::one());
    let v = TruncatedWeylSeries::monomial(q, degree, 0, 1, Complex64::one());
    // −VU normal-ordered: −q^{−1}·UV.
    let mvu = if degree >= 2 {
        TruncatedWeylSeries::monomial(q, degree, 1, 1, -Complex64::one() / q)
    } else {
        TruncatedWeylSeries::zero(q, degree)
    };

    let lhs = psi_series(&v).mul(&psi_series(&u));
    let rhs = psi_series(&u).mul(&psi_series(&mvu)).mul(&psi_series(&v));
    Ok(lhs.sub(&rhs).max_coeff_abs())
}

/// Same expansion with the middle factor Ψ_q(−VU) dropped; used to confirm
/// the check has teeth.
pub fn weyl_pentagon_without_middle(q: Complex64, degree: usize) -> Result<f64, QTorusError> {
    if q.norm() >= 1.0 {
        return Err(QTorusError::BadParams("|q| must be < 1".into()));
    }
    let u = TruncatedWeylSeries::monomial(q, degree, 1, 0, Complex64::one());
    let v = TruncatedWeylSeries::monomial(q, degree, 0, 1, Complex64::one());
    let lhs = psi_series(&v).mul(&psi_series(&u));
    let rhs = psi_series(&u).mul(&psi_series(&v));
    Ok(lhs.sub(&rhs).max_coeff_abs())
}

// ---------------------------------------------------------------------------
// Quantum dilogarithm at roots of unity
// ---------------------------------------------------------------------------

/// Primitive N-th root of unity e^{2πi·numer/denom} with gcd = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub numer: i64,
    pub denom: u32,
}

impl RootOfUnity {
    pub fn new(numer: i64, denom: u32) -> Result<Self, QTorusError> {
        if denom == 0 {
            return Err(QTorusError::BadParams("denominator must be ≥ 1".into()));
        }
        let reduced = numer.rem_euclid(denom as i64) as u64;
        if denom > 1 && reduced.gcd(&(denom as u64)) != 1 {
            return Err(QTorusError::BadParams(format!(
                "e^(2πi·{}/{}) is not a primitive root",
                numer, denom
            )));
        }
        Ok(RootOfUnity { numer, denom })
    }

    pub fn order(&self) -> u32 {
        self.denom
    }

    pub fn power(&self, k: i64) -> Complex64 {
        let num = (self.numer as i128 * k as i128).rem_euclid(self.denom as i128) as f64;
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * num / self.denom as f64)
    }

    pub fn value(&self) -> Complex64 {
        self.power(1)
    }
}

/// One principal-branch power evaluation, for the audit trail.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchEntry {
    pub factor: String,
    pub base: [f64; 2],
    pub exponent: f64,
    /// Principal argument of the base, the branch-sensitive quantity.
    pub phase: f64,
}

pub type BranchLog = Vec<BranchEntry>;

/// Principal power w^α with the cut on the negative real axis; exact hits
/// on the cut are refused rather than silently resolved.
fn principal_pow(
    w: Complex64,
    alpha: f64,
    factor: &str,
    log: &mut BranchLog,
) -> Result<Complex64, QTorusError> {
    if w.im == 0.0 && w.re <= 0.0 {
        return Err(QTorusError::BranchCut {
            factor: factor.to_string(),
            base: (w.re, w.im),
        });
    }
    log.push(BranchEntry {
        factor: factor.to_string(),
        base: [w.re, w.im],
        exponent: alpha,
        phase: w.arg(),
    });
    Ok((w.ln() * alpha).exp())
}

/// Φ_ζ(z) = (1−z^N)^{(N−1)/2N} · ∏_{k=1}^{N−1} (1−ζᵏz)^{−k/N} with
/// principal-branch powers, plus the log of every branch decision.
pub fn qdilog_root_of_unity(
    zeta: &RootOfUnity,
    z: Complex64,
) -> Result<(Complex64, BranchLog), QTorusError> {
    let n = zeta.order() as i64;
    let zn = z.powi(n as i32);
    if (zn - Complex64::one()).norm() < 1e-15 {
        return Err(QTorusError::BadParams("z^N = 1".into()));
    }
    let mut log = BranchLog::new();
    let mut value = principal_pow(
        Complex64::one() - zn,
        (n as f64 - 1.0) / (2.0 * n as f64),
        "1 - z^N",
        &mut log,
    )?;
    for k in 1..n {
        let base = Complex64::one() - zeta.power(k) * z;
        let factor = format!("1 - ζ^{}·z", k);
        value *= principal_pow(base, -(k as f64) / n as f64, &factor, &mut log)?;
    }
    Ok((value, log))
}

/// Functional calculus Φ_ζ(A) for a normal matrix (here always a scalar
/// multiple of a unitary): diagonalize, apply the scalar Φ_ζ, conjugate
/// back. The eigendecomposition residual is re-checked against 1e−10.
pub fn qdilog_matrix(
    zeta: &RootOfUnity,
    a: &CMatrix,
) -> Result<(CMatrix, BranchLog), QTorusError> {
    let (evs, w) = normal_eigen(a)?;
    let mut log = BranchLog::new();
    let mut phis = Vec::with_capacity(evs.len());
    for ev in &evs {
        let (phi, mut entries) = qdilog_root_of_unity(zeta, *ev)?;
        log.append(&mut entries);
        phis.push(phi);
    }
    let out = w.mul(&CMatrix::diagonal(&phis)).mul(&w.adjoint());
    // Reconstruction residual of the input from the same eigensystem.
    let recon = w
        .mul(&CMatrix::diagonal(&evs))
        .mul(&w.adjoint())
        .sub(a)
        .op_norm();
    if recon > 1e-10 * a.frobenius_norm().max(1.0) {
        return Err(QTorusError::IllConditioned(LinalgError::IllConditioned {
            residual: recon,
        }));
    }
    Ok((out, log))
}

// ---------------------------------------------------------------------------
// Root-of-unity pentagon diagnostic
// ---------------------------------------------------------------------------

/// Diagnostic result of the matrix pentagon identity for Φ_{ξ} at the
/// clock/shift realization. Reported, never asserted: the identity's
/// validity depends on branch conventions the formula leaves open.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DilogPentagonReport {
    pub p: i64,
    pub q: usize,
    pub u: [f64; 2],
    pub v: [f64; 2],
    pub residual: f64,
    pub lhs_norm: f64,
    pub rhs_norm: f64,
    pub branch_log: BranchLog,
    pub completed: bool,
}

/// Evaluate both sides of
/// Φ(vV)·Φ(uU) = Φ(u/(1−v^q)^{1/q}·U)·Φ(−uv/(1−u^q−v^q)^{1/q}·UV)·Φ(v/(1−u^q)^{1/q}·V)
/// on the q×q clock/shift pair and report the operator-norm difference
/// together with every branch decision taken.
pub fn dilog_pentagon_residual(
    p: i64,
    q: usize,
    u: Complex64,
    v: Complex64,
) -> Result<DilogPentagonReport, QTorusError> {
    let gates = clock_shift(p, q)?;
    let zeta = RootOfUnity::new(gates.p, q as u32)?;
    let qn = q as i32;

    let uq = u.powi(qn);
    let vq = v.powi(qn);
    let one = Complex64::one();
    if (uq - one).norm() < 1e-12 || (vq - one).norm() < 1e-12 {
        return Err(QTorusError::BadParams("u^q = 1 or v^q = 1".into()));
    }
    if (one - uq - vq).norm() < 1e-12 {
        return Err(QTorusError::BadParams("1 - u^q - v^q = 0".into()));
    }

    let mut log = BranchLog::new();
    let root_v = principal_pow(one - vq, 1.0 / q as f64, "(1 - v^q)^{1/q}", &mut log)?;
    let root_u = principal_pow(one - uq, 1.0 / q as f64, "(1 - u^q)^{1/q}", &mut log)?;
    let root_uv = principal_pow(
        one - uq - vq,
        1.0 / q as f64,
        "(1 - u^q - v^q)^{1/q}",
        &mut log,
    )?;

    let uu = gates.u.scale(u);
    let vv = gates.v.scale(v);
    let uv = gates.u.mul(&gates.v);

    let (lhs_v, mut l1) = qdilog_matrix(&zeta, &vv)?;
    let (lhs_u, mut l2) = qdilog_matrix(&zeta, &uu)?;
    log.append(&mut l1);
    log.append(&mut l2);
    let lhs = lhs_v.mul(&lhs_u);

    let (rhs_1, mut l3) = qdilog_matrix(&zeta, &gates.u.scale(u / root_v))?;
    let (rhs_2, mut l4) = qdilog_matrix(&zeta, &uv.scale(-u * v / root_uv))?;
    let (rhs_3, mut l5) = qdilog_matrix(&zeta, &gates.v.scale(v / root_u))?;
    log.append(&mut l3);
    log.append(&mut l4);
    log.append(&mut l5);
    let rhs = rhs_1.mul(&rhs_2).mul(&rhs_3);

    Ok(DilogPentagonReport {
        p: gates.p,
        q,
        u: [u.re, u.im],
        v: [v.re, v.im],
        residual: lhs.sub(&rhs).op_norm(),
        lhs_norm: lhs.op_norm(),
        rhs_norm: rhs.op_norm(),
        branch_log: log,
        completed: true,
    })
}
