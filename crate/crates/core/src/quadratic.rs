//! Exact arithmetic in real quadratic fields.
//!
//! A [`QuadraticIrrational`] is a value `(P + √D)/Q` kept in the classical
//! canonical form `Q | D − P²`, which makes the continued-fraction recursion
//! integer-valued and period detection exact. [`QuadExpr`] is the companion
//! field element `x + y√D` with rational `x, y`, used for eigenvalues,
//! positivity functionals and K₀ classes. All integers are arbitrary
//! precision: convergent denominators grow exponentially.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

use crate::util::serde_big;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuadError {
    #[error("D must be positive, got {0}")]
    NonpositiveD(BigInt),
    #[error("D must not be a perfect square, got {0}")]
    SquareD(BigInt),
    #[error("Q must be nonzero")]
    ZeroQ,
    #[error("determinant must be ±1, got {0}")]
    NotUnimodular(BigInt),
    #[error("matrix admits no factorization into reduced generators")]
    NotReduced,
    #[error("mixed radicands {0} and {1} in exact arithmetic")]
    MixedRadicands(BigInt, BigInt),
    #[error("invalid continued fraction digits: {0}")]
    BadDigits(String),
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

/// ⌊√D⌋ for positive D.
fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

/// A large h dividing g with h² | d, by trial division over small factors.
/// The search is capped: representations stay canonical either way (the
/// divisibility invariant is restored afterwards and equality is decided by
/// value), so an unreduced large square factor only costs representation
/// size.
fn square_part_divisor(g: &BigInt, d: &BigInt) -> BigInt {
    const FACTOR_CAP: u32 = 4096;
    let mut h = BigInt::one();
    let mut g = g.abs();
    let mut f = BigInt::from(2);
    let cap = BigInt::from(FACTOR_CAP);
    while &f * &f <= g && f <= cap {
        loop {
            let hf = &h * &f;
            let hf2 = &hf * &hf;
            if (&g % &f).is_zero() && (d % &hf2).is_zero() {
                h = hf;
                g = &g / &f;
            } else {
                break;
            }
        }
        f += 1;
    }
    h
}

// ---------------------------------------------------------------------------
// QuadExpr: x + y√D with rational x, y
// ---------------------------------------------------------------------------

/// Exact element `x + y√D` of a real quadratic field.
///
/// Values with `y = 0` are rational; their radicand is normalized to 2 so
/// that equality and arithmetic never depend on a stale `D`.
#[derive(Debug, Clone)]
pub struct QuadExpr {
    x: BigRational,
    y: BigRational,
    d: BigInt,
}

impl QuadExpr {
    pub fn new(x: BigRational, y: BigRational, d: BigInt) -> Result<Self, QuadError> {
        if y.is_zero() {
            return Ok(QuadExpr::rational(x));
        }
        if !d.is_positive() {
            return Err(QuadError::NonpositiveD(d));
        }
        if is_perfect_square(&d) {
            return Err(QuadError::SquareD(d));
        }
        Ok(QuadExpr { x, y, d })
    }

    pub fn rational(x: BigRational) -> Self {
        QuadExpr {
            x,
            y: BigRational::zero(),
            d: BigInt::from(2),
        }
    }

    pub fn from_int(n: i64) -> Self {
        QuadExpr::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        QuadExpr::from_int(0)
    }

    pub fn one() -> Self {
        QuadExpr::from_int(1)
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Merge radicands for a binary operation; errors only when two genuinely
    /// irrational operands live over different fields.
    fn common_d(&self, other: &QuadExpr) -> Result<BigInt, QuadError> {
        if self.y.is_zero() {
            Ok(other.d.clone())
        } else if other.y.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(QuadError::MixedRadicands(self.d.clone(), other.d.clone()))
        }
    }

    pub fn add(&self, other: &QuadExpr) -> Result<QuadExpr, QuadError> {
        let d = self.common_d(other)?;
        QuadExpr::new(&self.x + &other.x, &self.y + &other.y, d)
    }

    pub fn sub(&self, other: &QuadExpr) -> Result<QuadExpr, QuadError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QuadExpr {
        QuadExpr {
            x: -self.x.clone(),
            y: -self.y.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, other: &QuadExpr) -> Result<QuadExpr, QuadError> {
        let d = self.common_d(other)?;
        let dr = BigRational::from_integer(d.clone());
        let x = &self.x * &other.x + &self.y * &other.y * &dr;
        let y = &self.x * &other.y + &self.y * &other.x;
        QuadExpr::new(x, y, d)
    }

    pub fn scale_int(&self, k: &BigInt) -> QuadExpr {
        let kr = BigRational::from_integer(k.clone());
        QuadExpr {
            x: &self.x * &kr,
            y: &self.y * &kr,
            d: self.d.clone(),
        }
    }

    /// Galois conjugate `x − y√D`.
    pub fn conjugate(&self) -> QuadExpr {
        QuadExpr {
            x: self.x.clone(),
            y: -self.y.clone(),
            d: self.d.clone(),
        }
    }

    /// Field norm `x² − D·y²`.
    pub fn norm(&self) -> BigRational {
        let dr = BigRational::from_integer(self.d.clone());
        &self.x * &self.x - &self.y * &self.y * &dr
    }

    pub fn inv(&self) -> Result<QuadExpr, QuadError> {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm();
        let conj = self.conjugate();
        QuadExpr::new(&conj.x / &n, &conj.y / &n, self.d.clone())
    }

    pub fn div(&self, other: &QuadExpr) -> Result<QuadExpr, QuadError> {
        self.mul(&other.inv()?)
    }

    /// Exact sign: −1, 0 or +1.
    pub fn signum(&self) -> i32 {
        let sx = rational_sign(&self.x);
        let sy = rational_sign(&self.y);
        if sy == 0 {
            return sx;
        }
        if sx == 0 {
            return sy;
        }
        if sx == sy {
            return sx;
        }
        // Opposite signs: compare |x| against |y|√D via squares.
        let dr = BigRational::from_integer(self.d.clone());
        let x2 = &self.x * &self.x;
        let y2d = &self.y * &self.y * &dr;
        match x2.cmp(&y2d) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            // x² = y²·D with y ≠ 0 would make √D rational.
            Ordering::Equal => unreachable!("√D rational"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn to_f64(&self) -> f64 {
        let x = rational_to_f64(&self.x);
        let y = rational_to_f64(&self.y);
        let d = bigint_to_f64(&self.d);
        x + y * d.sqrt()
    }
}

/// Value equality, independent of the representation of rationals (y = 0)
/// and valid across different-but-compatible radicands such as √2 vs √8/2.
impl PartialEq for QuadExpr {
    fn eq(&self, other: &QuadExpr) -> bool {
        if self.x != other.x {
            return false;
        }
        let sy = rational_sign(&self.y);
        let so = rational_sign(&other.y);
        if sy != so {
            return false;
        }
        if sy == 0 {
            return true;
        }
        let dl = BigRational::from_integer(self.d.clone());
        let dr = BigRational::from_integer(other.d.clone());
        &self.y * &self.y * dl == &other.y * &other.y * dr
    }
}

impl Eq for QuadExpr {}

impl fmt::Display for QuadExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "{} + {}·√{}", self.x, self.y, self.d)
        }
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    // num-bigint's conversion saturates; fine for display/approximation.
    n.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    bigint_to_f64(r.numer()) / bigint_to_f64(r.denom())
}

// ---------------------------------------------------------------------------
// QuadraticIrrational: (P + √D)/Q in canonical form
// ---------------------------------------------------------------------------

/// A real quadratic irrationality `(P + √D)/Q` with `Q | D − P²`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadraticIrrational {
    #[serde(rename = "P", with = "serde_big")]
    p: BigInt,
    #[serde(rename = "Q", with = "serde_big")]
    q: BigInt,
    #[serde(rename = "D", with = "serde_big")]
    d: BigInt,
}

impl QuadraticIrrational {
    pub fn new(p: i64, q: i64, d: i64) -> Result<Self, QuadError> {
        QuadraticIrrational::from_bigints(BigInt::from(p), BigInt::from(q), BigInt::from(d))
    }

    pub fn from_bigints(p: BigInt, q: BigInt, d: BigInt) -> Result<Self, QuadError> {
        if q.is_zero() {
            return Err(QuadError::ZeroQ);
        }
        if !d.is_positive() {
            return Err(QuadError::NonpositiveD(d));
        }
        if is_perfect_square(&d) {
            return Err(QuadError::SquareD(d));
        }
        let mut v = QuadraticIrrational { p, q, d };
        v.reduce();
        v.normalize_divisibility();
        Ok(v)
    }

    /// The golden ratio τ = (1+√5)/2.
    pub fn golden() -> Self {
        QuadraticIrrational::new(1, 2, 5).expect("golden ratio is valid")
    }

    /// Strip a common factor h from P and Q when h² divides D.
    fn reduce(&mut self) {
        let g = self.p.gcd(&self.q);
        if g > BigInt::one() {
            let h = square_part_divisor(&g, &self.d);
            if h > BigInt::one() {
                self.p = &self.p / &h;
                self.q = &self.q / &h;
                self.d = &self.d / (&h * &h);
            }
        }
    }

    /// Enforce Q | D − P² by the classical rescaling (P,Q,D) → (P|Q|, Q|Q|, DQ²).
    fn normalize_divisibility(&mut self) {
        let rem = (&self.d - &self.p * &self.p) % &self.q;
        if !rem.is_zero() {
            let a = self.q.abs();
            self.p = &self.p * &a;
            self.d = &self.d * &self.q * &self.q;
            self.q = &self.q * &a;
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn to_quad_expr(&self) -> QuadExpr {
        let x = BigRational::new(self.p.clone(), self.q.clone());
        let y = BigRational::new(BigInt::one(), self.q.clone());
        QuadExpr::new(x, y, self.d.clone()).expect("type invariants")
    }

    /// Exact value from `x + y√D` with `y ≠ 0`.
    pub fn from_quad_expr(e: &QuadExpr) -> Result<Self, QuadError> {
        assert!(!e.is_rational(), "rational value is not a quadratic irrational");
        // Common denominator: x = u/w, y = v/w with w > 0.
        let w = e.x().denom().lcm(e.y().denom());
        let u = e.x().numer() * (&w / e.x().denom());
        let v = e.y().numer() * (&w / e.y().denom());
        let s = if v.is_negative() { -BigInt::one() } else { BigInt::one() };
        // (u + v√D)/w = (u·s + √(v²D)) / (w·s)
        QuadraticIrrational::from_bigints(&u * &s, &w * &s, &v * &v * e.radicand())
    }

    pub fn to_f64(&self) -> f64 {
        self.to_quad_expr().to_f64()
    }

    /// Galois conjugate (P − √D)/Q as a field element.
    pub fn conjugate_expr(&self) -> QuadExpr {
        self.to_quad_expr().conjugate()
    }

    /// Exact ⌊(P+√D)/Q⌋.
    pub fn floor(&self) -> BigInt {
        let s = isqrt(&self.d);
        if self.q.is_positive() {
            (&self.p + &s).div_floor(&self.q)
        } else {
            // For Q < 0: ⌊x⌋ = ⌊(P + ⌊√D⌋ + 1)/Q⌋ since √D is irrational.
            (&self.p + &s + BigInt::one()).div_floor(&self.q)
        }
    }
}

impl PartialEq for QuadraticIrrational {
    fn eq(&self, other: &Self) -> bool {
        self.to_quad_expr() == other.to_quad_expr()
    }
}

impl Eq for QuadraticIrrational {}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + √{})/{}", self.p, self.d, self.q)
    }
}

// ---------------------------------------------------------------------------
// UnimodularMatrix
// ---------------------------------------------------------------------------

/// 2×2 integer matrix with determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularMatrix {
    #[serde(with = "serde_big")]
    pub a: BigInt,
    #[serde(with = "serde_big")]
    pub b: BigInt,
    #[serde(with = "serde_big")]
    pub c: BigInt,
    #[serde(with = "serde_big")]
    pub d: BigInt,
}

impl UnimodularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, QuadError> {
        UnimodularMatrix::from_bigints(
            BigInt::from(a),
            BigInt::from(b),
            BigInt::from(c),
            BigInt::from(d),
        )
    }

    pub fn from_bigints(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, QuadError> {
        let det = &a * &d - &b * &c;
        if det.abs() != BigInt::one() {
            return Err(QuadError::NotUnimodular(det));
        }
        Ok(UnimodularMatrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        UnimodularMatrix::new(1, 0, 0, 1).unwrap()
    }

    /// Continued-fraction digit matrix `[[c,1],[1,0]]`.
    pub fn digit(c: &BigInt) -> Self {
        UnimodularMatrix {
            a: c.clone(),
            b: BigInt::one(),
            c: BigInt::one(),
            d: BigInt::zero(),
        }
    }

    /// Reduced-semigroup generator `[[0,1],[1,k]]`.
    pub fn reduced_generator(k: &BigInt) -> Self {
        UnimodularMatrix {
            a: BigInt::zero(),
            b: BigInt::one(),
            c: BigInt::one(),
            d: k.clone(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, other: &UnimodularMatrix) -> UnimodularMatrix {
        UnimodularMatrix {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn inverse(&self) -> UnimodularMatrix {
        let det = self.det();
        // det = ±1, so the adjugate divided by det stays integral.
        UnimodularMatrix {
            a: &self.d * &det,
            b: -&self.b * &det,
            c: -&self.c * &det,
            d: &self.a * &det,
        }
    }

    pub fn pow(&self, e: i64) -> UnimodularMatrix {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = UnimodularMatrix::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.a.is_negative() && !self.b.is_negative() && !self.c.is_negative() && !self.d.is_negative()
    }

    pub fn is_identity(&self) -> bool {
        self == &UnimodularMatrix::identity()
    }

    pub fn to_int_matrix(&self) -> crate::intmat::IntMatrix {
        crate::intmat::IntMatrix::from_rows(vec![
            vec![self.a.clone(), self.b.clone()],
            vec![self.c.clone(), self.d.clone()],
        ])
    }

    pub fn entries_i64(&self) -> Option<[i64; 4]> {
        Some([
            i64::try_from(&self.a).ok()?,
            i64::try_from(&self.b).ok()?,
            i64::try_from(&self.c).ok()?,
            i64::try_from(&self.d).ok()?,
        ])
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

// ---------------------------------------------------------------------------
// Continued fractions
// ---------------------------------------------------------------------------

/// Eventually periodic continued fraction `[a₀, …, a_{r−1}; b₁, …, b_ℓ]`.
///
/// The period is minimal. All digits after the first are ≥ 1; the leading
/// digit is ⌊θ⌋ and may be zero or negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFExpansion {
    #[serde(with = "serde_big::vec")]
    pub preperiod: Vec<BigInt>,
    #[serde(with = "serde_big::vec")]
    pub period: Vec<BigInt>,
}

impl CFExpansion {
    /// Validates digits and normalizes the period to its primitive block
    /// (a k-fold repeated period describes the same value).
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self, QuadError> {
        if period.is_empty() {
            return Err(QuadError::BadDigits("empty period".into()));
        }
        for (i, d) in preperiod.iter().enumerate() {
            if i > 0 && *d < BigInt::one() {
                return Err(QuadError::BadDigits(format!("preperiod digit {} < 1", d)));
            }
        }
        if period.iter().any(|d| *d < BigInt::one()) {
            return Err(QuadError::BadDigits("period digit < 1".into()));
        }
        let block = period.len() / largest_repetition(&period);
        Ok(CFExpansion {
            preperiod,
            period: period[..block].to_vec(),
        })
    }

    pub fn from_i64(preperiod: &[i64], period: &[i64]) -> Result<Self, QuadError> {
        CFExpansion::new(
            preperiod.iter().map(|&v| BigInt::from(v)).collect(),
            period.iter().map(|&v| BigInt::from(v)).collect(),
        )
    }

    /// Digit stream a₀, a₁, … with the period repeated forever.
    pub fn digit(&self, n: usize) -> BigInt {
        if n < self.preperiod.len() {
            self.preperiod[n].clone()
        } else {
            self.period[(n - self.preperiod.len()) % self.period.len()].clone()
        }
    }

    /// Product of the digit matrices `[[bᵢ,1],[1,0]]` over one period.
    pub fn period_matrix(&self) -> UnimodularMatrix {
        self.period
            .iter()
            .fold(UnimodularMatrix::identity(), |acc, b| acc.mul(&UnimodularMatrix::digit(b)))
    }

    /// Product of the digit matrices over the preperiod (identity when empty).
    pub fn preperiod_matrix(&self) -> UnimodularMatrix {
        self.preperiod
            .iter()
            .fold(UnimodularMatrix::identity(), |acc, a| acc.mul(&UnimodularMatrix::digit(a)))
    }

    /// Exact value of the expansion: the round trip inverse of [`cf_expand`].
    pub fn value(&self) -> QuadraticIrrational {
        // Purely periodic tail y = G(y) with G = [[A,B],[C,E]]:
        //   C·y² + (E−A)·y − B = 0, take the root > 1.
        let g = self.period_matrix();
        let disc = (&g.a - &g.d).pow(2) + BigInt::from(4) * &g.b * &g.c;
        let tail = QuadraticIrrational::from_bigints(
            &g.a - &g.d,
            BigInt::from(2) * &g.c,
            disc,
        )
        .expect("period product yields a valid quadratic");
        moebius_act(&self.preperiod_matrix(), &tail)
    }
}

impl fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre: Vec<String> = self.preperiod.iter().map(|d| d.to_string()).collect();
        let per: Vec<String> = self.period.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}; ({})…]", pre.join(", "), per.join(", "))
    }
}

/// Continued-fraction expansion with exact period detection.
///
/// Runs the classical (P, Q) recursion and stops at the first repeated
/// complete-quotient state; determinism of the recursion makes that period
/// minimal.
pub fn cf_expand(theta: &QuadraticIrrational) -> CFExpansion {
    let mut p = theta.p().clone();
    let mut q = theta.q().clone();
    let d = theta.d().clone();

    let mut digits: Vec<BigInt> = Vec::new();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();

    loop {
        let key = (p.clone(), q.clone());
        if let Some(&start) = seen.get(&key) {
            let preperiod = digits[..start].to_vec();
            let period = digits[start..].to_vec();
            return CFExpansion { preperiod, period };
        }
        seen.insert(key, digits.len());

        let state = QuadraticIrrational {
            p: p.clone(),
            q: q.clone(),
            d: d.clone(),
        };
        let c = state.floor();
        digits.push(c.clone());

        let p_next = &c * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
    }
}

/// Fractional linear action `(aθ+b)/(cθ+d)`, exact and canonicalized.
pub fn moebius_act(g: &UnimodularMatrix, theta: &QuadraticIrrational) -> QuadraticIrrational {
    let t = theta.to_quad_expr();
    let num = t
        .scale_int(&g.a)
        .add(&QuadExpr::rational(BigRational::from_integer(g.b.clone())))
        .expect("same field");
    let den = t
        .scale_int(&g.c)
        .add(&QuadExpr::rational(BigRational::from_integer(g.d.clone())))
        .expect("same field");
    let value = num.div(&den).expect("cθ+d ≠ 0 for irrational θ");
    QuadraticIrrational::from_quad_expr(&value).expect("Möbius image of a quadratic is quadratic")
}

// ---------------------------------------------------------------------------
// Fixing matrices
// ---------------------------------------------------------------------------

/// A matrix fixing θ, with the facts downstream constructions check.
#[derive(Debug, Clone)]
pub struct FixingMatrix {
    pub matrix: UnimodularMatrix,
    /// Number of concatenated minimal periods used.
    pub periods_used: u32,
    pub period_length: usize,
    pub det: BigInt,
    pub entries_nonnegative: bool,
}

/// The fixing matrix built from one minimal period of the expansion.
///
/// For an eventually periodic expansion the period product is conjugated
/// through the preperiod convergents, so the result fixes θ itself rather
/// than the periodic tail; the conjugated matrix may have negative entries,
/// which callers check through `entries_nonnegative`.
pub fn fixing_matrix(theta: &QuadraticIrrational) -> FixingMatrix {
    fixing_matrix_options(theta, 1)
        .into_iter()
        .next()
        .expect("m = 1 always exists")
}

/// Fixing matrices for m = 1..=max_m concatenated periods.
///
/// When the minimal period has even length every power has determinant +1;
/// surfacing all powers lets callers pick an admissible representative
/// themselves, or fail loudly when none exists.
pub fn fixing_matrix_options(theta: &QuadraticIrrational, max_m: u32) -> Vec<FixingMatrix> {
    let cf = cf_expand(theta);
    let conv = cf.preperiod_matrix();
    let conv_inv = conv.inverse();
    let period = cf.period_matrix();
    let len = cf.period.len();

    let mut out = Vec::new();
    let mut power = UnimodularMatrix::identity();
    for m in 1..=max_m {
        power = power.mul(&period);
        let g = conv.mul(&power).mul(&conv_inv);
        debug_assert_eq!(moebius_act(&g, theta), *theta);
        out.push(FixingMatrix {
            det: g.det(),
            entries_nonnegative: g.is_nonnegative(),
            matrix: g,
            periods_used: m,
            period_length: len,
        });
    }
    out
}

// ---------------------------------------------------------------------------
// Reduced matrices
// ---------------------------------------------------------------------------

/// Factorization of g as a word in the reduced generators `[[0,1],[1,k]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedFactorization {
    pub digits: Vec<BigInt>,
    /// ℓ(g): the word length.
    pub length: usize,
    /// k(g): the largest k with g = hᵏ, read off the word's cyclic structure.
    pub primitive_power: usize,
}

/// Factor g into reduced generators, or report that no factorization exists.
///
/// Peels the last generator: if g = h·`[[0,1],[1,k]]` then h is determined by
/// k, and the admissible k at each step lie in a window of width one, so a
/// two-way backtracking search terminates after linearly many steps.
pub fn reduced_factorization(g: &UnimodularMatrix) -> Result<ReducedFactorization, QuadError> {
    if !g.is_nonnegative() {
        return Err(QuadError::NotReduced);
    }
    let mut digits_rev: Vec<BigInt> = Vec::new();
    if !peel(g, &mut digits_rev) {
        return Err(QuadError::NotReduced);
    }
    let digits: Vec<BigInt> = digits_rev.into_iter().rev().collect();
    let length = digits.len();
    let primitive_power = largest_repetition(&digits);
    Ok(ReducedFactorization {
        digits,
        length,
        primitive_power,
    })
}

fn is_reduced_generator(g: &UnimodularMatrix) -> Option<BigInt> {
    if g.a.is_zero() && g.b.is_one() && g.c.is_one() && g.d >= BigInt::one() {
        Some(g.d.clone())
    } else {
        None
    }
}

fn peel(g: &UnimodularMatrix, acc: &mut Vec<BigInt>) -> bool {
    if let Some(k) = is_reduced_generator(g) {
        acc.push(k);
        return true;
    }
    // For longer words every entry is ≥ 1 and columns are nondecreasing
    // left to right, pinning the last digit k to b−ka ∈ [0,a], d−kc ∈ [0,c].
    if g.a < BigInt::one() || g.c < BigInt::one() {
        return false;
    }
    let k_hi = g.b.div_floor(&g.a).min(g.d.div_floor(&g.c));
    let k_lo = (&g.b - &g.a).div_ceil(&g.a).max((&g.d - &g.c).div_ceil(&g.c));
    let mut k = k_hi.clone();
    while k >= k_lo && k >= BigInt::one() {
        let h = UnimodularMatrix {
            a: &g.b - &k * &g.a,
            b: g.a.clone(),
            c: &g.d - &k * &g.c,
            d: g.c.clone(),
        };
        if h.is_nonnegative() {
            acc.push(k.clone());
            if peel(&h, acc) {
                return true;
            }
            acc.pop();
        }
        k -= 1;
    }
    false
}

/// Largest k such that `word` is a k-fold repetition of a shorter block.
fn largest_repetition(word: &[BigInt]) -> usize {
    let n = word.len();
    for k in (1..=n).rev() {
        if !n.is_multiple_of(k) {
            continue;
        }
        let block = n / k;
        if (0..n).all(|i| word[i] == word[i % block]) {
            return k;
        }
    }
    1
}

// ---------------------------------------------------------------------------
// Eigenvalues
// ---------------------------------------------------------------------------

/// Exact eigenvalues of g, Perron root first.
///
/// Hyperbolic matrices get a conjugate pair over ℚ(√disc); when the
/// discriminant is a perfect square the pair is rational (and integral).
///
/// Panics for elliptic matrices (negative non-square discriminant), which
/// have no real eigenvalues.
pub fn eigen_quad(g: &UnimodularMatrix) -> (QuadExpr, QuadExpr) {
    let t = g.trace();
    let disc = &t * &t - BigInt::from(4) * g.det();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let tr = BigRational::from_integer(t.clone());
    if is_perfect_square(&disc) {
        let s = isqrt(&disc);
        let sr = BigRational::from_integer(s);
        let lo = (&tr - &sr) * &half;
        let hi = (&tr + &sr) * &half;
        (QuadExpr::rational(hi), QuadExpr::rational(lo))
    } else {
        assert!(
            disc.is_positive(),
            "elliptic matrix has no real eigenvalues"
        );
        let x = &tr * &half;
        let plus = QuadExpr::new(x.clone(), half.clone(), disc.clone()).expect("disc nonsquare");
        let minus = QuadExpr::new(x, -half, disc).expect("disc nonsquare");
        (plus, minus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(p: i64, q: i64, d: i64) -> QuadraticIrrational {
        QuadraticIrrational::new(p, q, d).unwrap()
    }

    #[test]
    fn golden_expansion_is_period_one() {
        let cf = cf_expand(&QuadraticIrrational::golden());
        assert!(cf.preperiod.is_empty());
        assert_eq!(cf.period, vec![BigInt::one()]);
    }

    #[test]
    fn silver_expansion() {
        // 1+√2 = [2; 2, 2, …], purely periodic.
        let cf = cf_expand(&qi(1, 1, 2));
        assert!(cf.preperiod.is_empty());
        assert_eq!(cf.period, vec![BigInt::from(2)]);
    }

    #[test]
    fn sqrt2_expansion_has_preperiod() {
        let cf = cf_expand(&qi(0, 1, 2));
        assert_eq!(cf.preperiod, vec![BigInt::one()]);
        assert_eq!(cf.period, vec![BigInt::from(2)]);
    }

    #[test]
    fn expansion_of_theta_with_q_dividing() {
        // (2+√10)/3 = [1, 1, 2] purely periodic.
        let cf = cf_expand(&qi(2, 3, 10));
        assert!(cf.preperiod.is_empty());
        assert_eq!(
            cf.period,
            vec![BigInt::one(), BigInt::one(), BigInt::from(2)]
        );
    }

    #[test]
    fn negative_theta_expands_and_round_trips() {
        let theta = qi(-7, 3, 11);
        let cf = cf_expand(&theta);
        assert_eq!(cf.value(), theta);
        // Leading digit is the floor, negative here.
        assert!(cf.preperiod[0] < BigInt::zero() || theta.to_f64() >= 0.0);
    }

    #[test]
    fn round_trip_small_suite() {
        for (p, q, d) in [(1, 2, 5), (1, 1, 2), (0, 1, 2), (2, 3, 10), (3, 2, 13), (-1, 2, 7), (5, -3, 19)] {
            let theta = qi(p, q, d);
            let cf = cf_expand(&theta);
            assert_eq!(cf.value(), theta, "round trip failed for ({p},{q},{d})");
        }
    }

    #[test]
    fn moebius_identity_and_inverse() {
        let theta = qi(1, 2, 5);
        let id = UnimodularMatrix::identity();
        assert_eq!(moebius_act(&id, &theta), theta);

        let g = UnimodularMatrix::new(1, 1, 1, 0).unwrap();
        assert_eq!(moebius_act(&g, &theta), theta); // g fixes τ

        // [[0,1],[1,0]] sends 1+√2 to √2 − 1.
        let swap = UnimodularMatrix::new(0, 1, 1, 0).unwrap();
        assert_eq!(moebius_act(&swap, &qi(1, 1, 2)), qi(-1, 1, 2));
    }

    #[test]
    fn fixing_matrix_golden() {
        let fix = fixing_matrix(&QuadraticIrrational::golden());
        assert_eq!(fix.matrix, UnimodularMatrix::new(1, 1, 1, 0).unwrap());
        assert_eq!(fix.det, BigInt::from(-1));
        assert!(fix.entries_nonnegative);
        assert_eq!(fix.period_length, 1);
    }

    #[test]
    fn fixing_matrix_silver_and_period3() {
        let fix = fixing_matrix(&qi(1, 1, 2));
        assert_eq!(fix.matrix, UnimodularMatrix::new(2, 1, 1, 0).unwrap());

        let fix3 = fixing_matrix(&qi(2, 3, 10));
        assert_eq!(fix3.matrix, UnimodularMatrix::new(5, 2, 3, 1).unwrap());
        assert_eq!(fix3.det, BigInt::from(-1));
    }

    #[test]
    fn fixing_matrix_with_preperiod_fixes_theta_itself() {
        let theta = qi(0, 1, 2); // √2
        let fix = fixing_matrix(&theta);
        assert_eq!(moebius_act(&fix.matrix, &theta), theta);
        assert_eq!(fix.det, BigInt::from(-1));
    }

    #[test]
    fn fixing_matrix_powers_alternate_sign() {
        let opts = fixing_matrix_options(&QuadraticIrrational::golden(), 4);
        let dets: Vec<i64> = opts.iter().map(|f| i64::try_from(&f.det).unwrap()).collect();
        assert_eq!(dets, vec![-1, 1, -1, 1]);
    }

    #[test]
    fn reduced_factorization_examples() {
        let single = UnimodularMatrix::new(0, 1, 1, 3).unwrap();
        let f = reduced_factorization(&single).unwrap();
        assert_eq!(f.digits, vec![BigInt::from(3)]);
        assert_eq!((f.length, f.primitive_power), (1, 1));

        // [[0,1],[1,1]]² = [[1,1],[1,2]]
        let sq = UnimodularMatrix::new(1, 1, 1, 2).unwrap();
        let f = reduced_factorization(&sq).unwrap();
        assert_eq!(f.digits, vec![BigInt::one(), BigInt::one()]);
        assert_eq!((f.length, f.primitive_power), (2, 2));

        let shear = UnimodularMatrix::new(1, 1, 0, 1).unwrap();
        assert_eq!(reduced_factorization(&shear), Err(QuadError::NotReduced));
    }

    #[test]
    fn reduced_factorization_large_digits() {
        let word = [1000i64, 1, 737];
        let g = word.iter().fold(UnimodularMatrix::identity(), |acc, &k| {
            acc.mul(&UnimodularMatrix::reduced_generator(&BigInt::from(k)))
        });
        let f = reduced_factorization(&g).unwrap();
        let got: Vec<i64> = f.digits.iter().map(|d| i64::try_from(d).unwrap()).collect();
        assert_eq!(got, word);
    }

    #[test]
    fn reduced_recovers_all_short_words() {
        // Exhaustive over digit lists of length ≤ 4 with digits ≤ 3; the
        // property suite pushes this to length 6, digits 5.
        fn words(len: usize, max: i64) -> Vec<Vec<i64>> {
            if len == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for w in words(len - 1, max) {
                for k in 1..=max {
                    let mut w2 = w.clone();
                    w2.push(k);
                    out.push(w2);
                }
            }
            out
        }
        for len in 1..=4 {
            for w in words(len, 3) {
                let g = w.iter().fold(UnimodularMatrix::identity(), |acc, &k| {
                    acc.mul(&UnimodularMatrix::reduced_generator(&BigInt::from(k)))
                });
                let f = reduced_factorization(&g).unwrap();
                let got: Vec<i64> = f.digits.iter().map(|d| i64::try_from(d).unwrap()).collect();
                assert_eq!(got, w);
            }
        }
    }

    #[test]
    fn eigen_quad_examples() {
        let fib = UnimodularMatrix::new(1, 1, 1, 0).unwrap();
        let (hi, lo) = eigen_quad(&fib);
        assert_eq!(hi, QuadraticIrrational::golden().to_quad_expr());
        assert!((hi.to_f64() - 1.618033988749895).abs() < 1e-12);
        assert!((lo.to_f64() + 0.618033988749895).abs() < 1e-12);

        let silver = UnimodularMatrix::new(2, 1, 1, 0).unwrap();
        let (hi, _) = eigen_quad(&silver);
        assert_eq!(hi, qi(1, 1, 2).to_quad_expr());

        let swap = UnimodularMatrix::new(0, 1, 1, 0).unwrap();
        let (hi, lo) = eigen_quad(&swap);
        assert_eq!(hi, QuadExpr::from_int(1));
        assert_eq!(lo, QuadExpr::from_int(-1));
    }

    #[test]
    fn eigen_product_and_sum_are_det_and_trace() {
        for (a, b, c, d) in [(1i64, 1, 1, 0), (2, 1, 1, 0), (5, 2, 3, 1), (3, 2, 1, 1)] {
            let g = UnimodularMatrix::new(a, b, c, d).unwrap();
            let (hi, lo) = eigen_quad(&g);
            let prod = hi.mul(&lo).unwrap();
            let sum = hi.add(&lo).unwrap();
            assert_eq!(prod, QuadExpr::rational(BigRational::from_integer(g.det())));
            assert_eq!(sum, QuadExpr::rational(BigRational::from_integer(g.trace())));
        }
    }

    #[test]
    fn quad_expr_sign_cases() {
        let d5 = BigInt::from(5);
        let mk = |x: i64, y: (i64, i64)| {
            QuadExpr::new(
                BigRational::from_integer(BigInt::from(x)),
                BigRational::new(BigInt::from(y.0), BigInt::from(y.1)),
                d5.clone(),
            )
            .unwrap()
        };
        assert_eq!(mk(-2, (1, 1)).signum(), 1); // √5 > 2
        assert_eq!(mk(-3, (1, 1)).signum(), -1); // √5 < 3
        assert_eq!(mk(3, (-1, 1)).signum(), 1);
        assert_eq!(mk(2, (-1, 1)).signum(), -1);
        assert_eq!(QuadExpr::zero().signum(), 0);
    }

    #[test]
    fn cross_radicand_equality() {
        // 1 + √2 as (x=1, y=1, d=2) and (x=1, y=1/2, d=8).
        let a = QuadExpr::new(
            BigRational::from_integer(BigInt::one()),
            BigRational::from_integer(BigInt::one()),
            BigInt::from(2),
        )
        .unwrap();
        let b = QuadExpr::new(
            BigRational::from_integer(BigInt::one()),
            BigRational::new(BigInt::one(), BigInt::from(2)),
            BigInt::from(8),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_form_divisibility() {
        // (1+√7)/3 does not satisfy Q | D−P²; normalization rescales it.
        let t = qi(1, 3, 7);
        let rem = (t.d() - t.p() * t.p()) % t.q();
        assert!(rem.is_zero());
        assert!((t.to_f64() - (1.0 + 7f64.sqrt()) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        assert!(QuadraticIrrational::new(1, 2, 4).is_err()); // square
        assert!(QuadraticIrrational::new(1, 0, 5).is_err()); // zero Q
        assert!(QuadraticIrrational::new(1, 2, -5).is_err()); // negative D
        assert!(UnimodularMatrix::new(2, 0, 0, 2).is_err()); // det 4
    }
}
