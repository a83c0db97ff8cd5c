//! Bratteli diagrams and the K-theoretic invariants attached to them:
//! telescoping, path counting, ordered K₀ of stationary 2×2 systems, the
//! per-eigenvalue quasi-isomorphism type of direct limits, and dimension
//! functions on the golden-ratio diagram.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::quadratic::{moebius_act, CFExpansion, QuadExpr, QuadraticIrrational, UnimodularMatrix};

#[derive(Debug, Error)]
pub enum BratteliError {
    #[error("incidence matrix is not primitive")]
    NotPrimitive,
    #[error("incidence matrix is not injective (det = 0)")]
    NotInjective,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("bad telescope cuts: {0}")]
    BadCuts(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("diagram is not the multiplicity-one golden-ratio diagram")]
    NotFibonacciType,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Orientation of the digit matrices in the continued-fraction diagram.
/// The two are related by a swap conjugation and give isomorphic limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DigitConvention {
    /// φₙ = `[[cₙ, 1], [1, 0]]`; top rank at level n is the convergent qₙ.
    DigitTop,
    /// φₙ = `[[0, 1], [1, cₙ]]`; rows swapped relative to `DigitTop`.
    DigitBottom,
}

// ---------------------------------------------------------------------------
// BratteliDiagram
// ---------------------------------------------------------------------------

/// Leveled graph with nonnegative-integer incidence matrices; level 0 has a
/// single vertex. The matrix φₙ has shape |Vₙ| × |Vₙ₊₁| and its entries are
/// the edge multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BratteliDiagram {
    level_sizes: Vec<usize>,
    incidence: Vec<IntMatrix>,
}

impl BratteliDiagram {
    pub fn new(incidence: Vec<IntMatrix>) -> Result<Self, BratteliError> {
        let mut level_sizes = vec![1usize];
        for (n, phi) in incidence.iter().enumerate() {
            if phi.rows() != *level_sizes.last().unwrap() {
                return Err(BratteliError::ShapeMismatch(format!(
                    "incidence {} has {} rows, expected {}",
                    n,
                    phi.rows(),
                    level_sizes.last().unwrap()
                )));
            }
            if !phi.is_nonnegative() {
                return Err(BratteliError::ShapeMismatch(format!(
                    "incidence {} has negative entries",
                    n
                )));
            }
            level_sizes.push(phi.cols());
        }
        Ok(BratteliDiagram {
            level_sizes,
            incidence,
        })
    }

    /// Single-vertex diagram (one level, no edges).
    pub fn trivial() -> Self {
        BratteliDiagram {
            level_sizes: vec![1],
            incidence: vec![],
        }
    }

    /// Stationary diagram: `root` is the 1×k multiplicity row from the root,
    /// followed by `n_levels − 2` copies of the k×k matrix φ.
    pub fn stationary(
        phi: &IntMatrix,
        root: &[BigInt],
        n_levels: usize,
    ) -> Result<Self, BratteliError> {
        assert!(phi.is_square());
        if n_levels < 1 {
            return Err(BratteliError::ShapeMismatch("need at least one level".into()));
        }
        if n_levels == 1 {
            return Ok(BratteliDiagram::trivial());
        }
        let mut incidence = vec![IntMatrix::from_rows(vec![root.to_vec()])];
        for _ in 0..n_levels.saturating_sub(2) {
            incidence.push(phi.clone());
        }
        BratteliDiagram::new(incidence)
    }

    pub fn n_levels(&self) -> usize {
        self.level_sizes.len()
    }

    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    pub fn incidence(&self) -> &[IntMatrix] {
        &self.incidence
    }

    /// Rank vector at a level: per-vertex count of root-to-vertex paths with
    /// multiplicity, via r₀ = (1), rₙ₊₁ = φₙᵀ rₙ.
    pub fn path_counts(&self, level: usize) -> Vec<BigInt> {
        assert!(level < self.n_levels(), "level out of range");
        let mut r = vec![BigInt::one()];
        for phi in self.incidence.iter().take(level) {
            r = phi.transpose().mul_vec(&r);
        }
        r
    }

    pub fn total_paths(&self, level: usize) -> BigInt {
        self.path_counts(level).iter().sum()
    }

    /// Collapse levels, keeping only those listed in `cuts` (which must be
    /// strictly increasing and start at 0). The new incidence matrices are
    /// the products of the collapsed ones, so path counts at retained levels
    /// are unchanged.
    pub fn telescope(&self, cuts: &[usize]) -> Result<BratteliDiagram, BratteliError> {
        if cuts.is_empty() || cuts[0] != 0 {
            return Err(BratteliError::BadCuts("cuts must start at level 0".into()));
        }
        if cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BratteliError::BadCuts("cuts must be strictly increasing".into()));
        }
        if *cuts.last().unwrap() >= self.n_levels() {
            return Err(BratteliError::BadCuts("cut beyond last level".into()));
        }
        let mut incidence = Vec::with_capacity(cuts.len() - 1);
        for w in cuts.windows(2) {
            let mut prod = self.incidence[w[0]].clone();
            for k in (w[0] + 1)..w[1] {
                prod = prod.mul(&self.incidence[k]);
            }
            incidence.push(prod);
        }
        BratteliDiagram::new(incidence)
    }

    /// GraphViz export; vertices are labeled with their path counts, edges
    /// with their multiplicities.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bratteli {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (n, &size) in self.level_sizes.iter().enumerate() {
            let ranks = self.path_counts(n);
            for v in 0..size {
                out.push_str(&format!("  v{}_{} [label=\"{}\"];\n", n, v, ranks[v]));
            }
        }
        for (n, phi) in self.incidence.iter().enumerate() {
            for i in 0..phi.rows() {
                for j in 0..phi.cols() {
                    let m = &phi[(i, j)];
                    if m.is_zero() {
                        continue;
                    }
                    out.push_str(&format!(
                        "  v{}_{} -> v{}_{} [label=\"{}\"];\n",
                        n,
                        i,
                        n + 1,
                        j,
                        m
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Wire format: {"levels":[…], "incidence":[`[[…]]`]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BratteliJson {
    pub levels: Vec<usize>,
    pub incidence: Vec<Vec<Vec<serde_json::Number>>>,
}

impl From<&BratteliDiagram> for BratteliJson {
    fn from(d: &BratteliDiagram) -> Self {
        BratteliJson {
            levels: d.level_sizes.clone(),
            incidence: d
                .incidence
                .iter()
                .map(|phi| {
                    (0..phi.rows())
                        .map(|i| {
                            (0..phi.cols())
                                .map(|j| {
                                    serde_json::Number::from_string_unchecked(
                                        phi[(i, j)].to_string(),
                                    )
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<&BratteliJson> for BratteliDiagram {
    type Error = BratteliError;
    fn try_from(j: &BratteliJson) -> Result<Self, BratteliError> {
        use std::str::FromStr;
        let incidence = j
            .incidence
            .iter()
            .map(|rows| {
                IntMatrix::from_rows(
                    rows.iter()
                        .map(|r| {
                            r.iter()
                                .map(|n| BigInt::from_str(&n.to_string()).unwrap())
                                .collect()
                        })
                        .collect(),
                )
            })
            .collect();
        BratteliDiagram::new(incidence)
    }
}

/// The diagram of the AF algebra attached to a continued fraction.
///
/// The digit stream drops the integer part a₀ (which does not affect the
/// algebra), so the top-row ranks are exactly the convergent denominators
/// qₙ of the expansion: root edge [c₁, 1], then `[[cₙ, 1],[1, 0]]`.
pub fn from_continued_fraction(
    cf: &CFExpansion,
    n_levels: usize,
    convention: DigitConvention,
) -> Result<BratteliDiagram, BratteliError> {
    if n_levels < 1 {
        return Err(BratteliError::ShapeMismatch("need at least one level".into()));
    }
    if n_levels == 1 {
        return Ok(BratteliDiagram::trivial());
    }
    let digit = |k: usize| cf.digit(k + 1); // drop a₀
    let mut incidence = Vec::with_capacity(n_levels - 1);
    let c1 = digit(0);
    incidence.push(match convention {
        DigitConvention::DigitTop => IntMatrix::from_rows(vec![vec![c1, BigInt::one()]]),
        DigitConvention::DigitBottom => IntMatrix::from_rows(vec![vec![BigInt::one(), c1]]),
    });
    for n in 1..n_levels - 1 {
        let c = digit(n);
        let phi = match convention {
            DigitConvention::DigitTop => IntMatrix::from_rows(vec![
                vec![c, BigInt::one()],
                vec![BigInt::one(), BigInt::zero()],
            ]),
            DigitConvention::DigitBottom => IntMatrix::from_rows(vec![
                vec![BigInt::zero(), BigInt::one()],
                vec![BigInt::one(), c],
            ]),
        };
        incidence.push(phi);
    }
    BratteliDiagram::new(incidence)
}

// ---------------------------------------------------------------------------
// Ordered K₀ of stationary 2×2 systems
// ---------------------------------------------------------------------------

/// How the exact Perron functional is scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FunctionalNormalization {
    /// (v₁, 1): the (θ, 1)-style functional.
    SecondOne,
    /// (1, v₂): the (1, λ)-style functional.
    FirstOne,
}

/// Ordered K₀ of the stationary system with a primitive 2×2 incidence.
///
/// The positive cone is {h : ⟨v, h⟩ > 0} ∪ {0} with v the right Perron
/// eigenvector, stored exactly; membership is an exact sign evaluation.
#[derive(Debug, Clone)]
pub struct OrderedK0 {
    pub rank: usize,
    pub functional: (QuadExpr, QuadExpr),
    /// Canonical vector pairing to 1 under the functional.
    pub order_unit: Vec<BigInt>,
    pub normalization: FunctionalNormalization,
}

impl OrderedK0 {
    /// Exact positivity: h = 0 or ⟨v, h⟩ > 0.
    pub fn is_positive(&self, h: &[BigInt]) -> bool {
        assert_eq!(h.len(), self.rank);
        if h.iter().all(|x| x.is_zero()) {
            return true;
        }
        self.pairing(h).is_positive()
    }

    pub fn pairing(&self, h: &[BigInt]) -> QuadExpr {
        self.functional
            .0
            .scale_int(&h[0])
            .add(&self.functional.1.scale_int(&h[1]))
            .expect("same field")
    }
}

/// Ordered K₀ of the stationary diagram with incidence φ.
///
/// φ must be primitive; for 2×2 matrices the Wielandt bound makes φ and φ²
/// enough to check.
pub fn k0_stationary(
    phi: &IntMatrix,
    normalization: FunctionalNormalization,
) -> Result<OrderedK0, BratteliError> {
    assert!(phi.is_square() && phi.rows() == 2, "stationary K₀ is 2×2 only");
    if !phi.is_nonnegative() || !(phi.is_positive() || phi.pow(2).is_positive()) {
        return Err(BratteliError::NotPrimitive);
    }
    let a = phi[(0, 0)].clone();
    let b = phi[(0, 1)].clone();
    let c = phi[(1, 0)].clone();
    let d = phi[(1, 1)].clone();
    // Right Perron eigenvector of [[a,b],[c,d]] is (b, λ−a); primitivity
    // forces b ≥ 1 and λ > a, so both components are positive.
    let trace = &a + &d;
    let det = &a * &d - &b * &c;
    let disc = &trace * &trace - BigInt::from(4) * &det;
    let lambda = perron_root(&trace, &disc);
    let v1 = QuadExpr::rational(BigRational::from_integer(b));
    let v2 = lambda
        .sub(&QuadExpr::rational(BigRational::from_integer(a)))
        .expect("same field");
    let (f1, f2, unit) = match normalization {
        FunctionalNormalization::SecondOne => {
            let s = v1.div(&v2).expect("λ > a");
            (s, QuadExpr::one(), vec![BigInt::zero(), BigInt::one()])
        }
        FunctionalNormalization::FirstOne => {
            let s = v2.div(&v1).expect("b ≥ 1");
            (QuadExpr::one(), s, vec![BigInt::one(), BigInt::zero()])
        }
    };
    Ok(OrderedK0 {
        rank: 2,
        functional: (f1, f2),
        order_unit: unit,
        normalization,
    })
}

/// Larger root of λ² − t·λ + det, i.e. (t + √disc)/2, exactly.
fn perron_root(trace: &BigInt, disc: &BigInt) -> QuadExpr {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let tr = BigRational::from_integer(trace.clone());
    let sq = disc.sqrt();
    if &sq * &sq == *disc {
        QuadExpr::rational((tr + BigRational::from_integer(sq)) * half)
    } else {
        QuadExpr::new(tr * &half, half, disc.clone()).expect("nonsquare disc")
    }
}

// ---------------------------------------------------------------------------
// Cone comparison (incidence-g cone vs incidence-N₁ cone)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridDisagreement {
    pub point: (i64, i64),
    pub positive_under_g: bool,
    pub positive_under_n1: bool,
}

/// Outcome of comparing the ordered K₀ data built from incidence g with the
/// one built from incidence N₁ = `[[Tr g, 1],[1, 0]]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeCompareReport {
    pub theta: QuadraticIrrational,
    pub g: UnimodularMatrix,
    pub trace: i64,
    /// Right Perron functional of g, the (θ, 1) direction (as floats).
    pub functional_g: [f64; 2],
    /// Right Perron functional of N₁ as written, the (λ, 1) direction.
    pub functional_n1: [f64; 2],
    /// The (1, λ) direction: the Perron eigenvector of the swap-conjugate
    /// `[[0,1],[1,Tr g]]`, the other convention in circulation for N₁.
    pub functional_n1_swap: [f64; 2],
    /// Unimodular order isomorphism intertwining the g-cone and the (λ,1)
    /// N₁-cone, if one exists with entries bounded by `search_bound`.
    pub isomorphism: Option<UnimodularMatrix>,
    pub search_bound: i64,
    /// Grid comparison of the predicates θn+m ≥ 0 and n+mλ ≥ 0.
    pub grid_radius: i64,
    pub grid_points: usize,
    pub grid_agreements: usize,
    pub grid_disagreements: Vec<GridDisagreement>,
}

/// Compare the stationary cones built from incidence g and from incidence
/// N₁, searching small unimodular matrices for an order isomorphism and
/// grid-sampling the two competing positivity predicates.
pub fn cone_compare(
    theta: &QuadraticIrrational,
    g: &UnimodularMatrix,
    search_bound: i64,
    grid_radius: i64,
) -> Result<ConeCompareReport, BratteliError> {
    if moebius_act(g, theta) != *theta {
        return Err(BratteliError::HypothesisViolated("g does not fix θ".into()));
    }
    if !g.is_nonnegative() {
        return Err(BratteliError::HypothesisViolated(
            "g has negative entries".into(),
        ));
    }
    if g.det() != BigInt::from(-1) {
        return Err(BratteliError::HypothesisViolated("det(g) ≠ −1".into()));
    }

    let theta_expr = theta.to_quad_expr();
    let lambda = theta_expr
        .scale_int(&g.c)
        .add(&QuadExpr::rational(BigRational::from_integer(g.d.clone())))
        .expect("same field");

    // Cone functionals: v_g = (θ, 1) is the right Perron eigenvector of g,
    // v_n = (λ, 1) the one of N₁ = [[Tr g, 1],[1, 0]].
    let one = QuadExpr::one();
    let v_g = (theta_expr.clone(), one.clone());
    let v_n = (lambda.clone(), one.clone());

    // Order isomorphism M: h positive in the g-cone ⟺ Mh positive in the
    // N₁-cone, i.e. Mᵀ·v_n is a positive multiple of v_g. The identity is
    // tested first so the simplest witness wins; intertwiners are never
    // unique (composing with a fixing matrix yields another).
    let intertwines = |m: &UnimodularMatrix| -> bool {
        let p1 = v_n.0.scale_int(&m.a).add(&v_n.1.scale_int(&m.c)).unwrap();
        let p2 = v_n.0.scale_int(&m.b).add(&v_n.1.scale_int(&m.d)).unwrap();
        p1.mul(&v_g.1).unwrap() == p2.mul(&v_g.0).unwrap()
            && p1.signum() == v_g.0.signum()
            && p2.signum() == v_g.1.signum()
    };
    let mut isomorphism = None;
    if intertwines(&UnimodularMatrix::identity()) {
        isomorphism = Some(UnimodularMatrix::identity());
    } else {
        'search: for m11 in -search_bound..=search_bound {
            for m12 in -search_bound..=search_bound {
                for m21 in -search_bound..=search_bound {
                    for m22 in -search_bound..=search_bound {
                        let det = m11 * m22 - m12 * m21;
                        if det != 1 && det != -1 {
                            continue;
                        }
                        let m = UnimodularMatrix::new(m11, m12, m21, m22).unwrap();
                        if intertwines(&m) {
                            isomorphism = Some(m);
                            break 'search;
                        }
                    }
                }
            }
        }
    }

    // Grid sampling of the two predicates.
    let mut disagreements = Vec::new();
    let mut agreements = 0usize;
    let mut points = 0usize;
    for n in -grid_radius..=grid_radius {
        for m in -grid_radius..=grid_radius {
            points += 1;
            let h = [BigInt::from(n), BigInt::from(m)];
            let pair_g = theta_expr
                .scale_int(&h[0])
                .add(&one.scale_int(&h[1]))
                .unwrap();
            let pair_n = one
                .scale_int(&h[0])
                .add(&lambda.scale_int(&h[1]))
                .unwrap();
            let pos_g = pair_g.signum() >= 0;
            let pos_n = pair_n.signum() >= 0;
            if pos_g == pos_n {
                agreements += 1;
            } else {
                disagreements.push(GridDisagreement {
                    point: (n, m),
                    positive_under_g: pos_g,
                    positive_under_n1: pos_n,
                });
            }
        }
    }

    Ok(ConeCompareReport {
        theta: theta.clone(),
        g: g.clone(),
        trace: i64::try_from(&g.trace()).unwrap_or(i64::MAX),
        functional_g: [theta_expr.to_f64(), 1.0],
        functional_n1: [lambda.to_f64(), 1.0],
        functional_n1_swap: [1.0, lambda.to_f64()],
        isomorphism,
        search_bound,
        grid_radius,
        grid_points: points,
        grid_agreements: agreements,
        grid_disagreements: disagreements,
    })
}

// ---------------------------------------------------------------------------
// Quasi-isomorphism type of the direct limit
// ---------------------------------------------------------------------------

/// One summand L_λ^{⊕ multiplicity} of the direct limit, with λ running over
/// the roots of `min_poly`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct K0Summand {
    /// Coefficients of the monic minimal polynomial, constant term first.
    #[serde(with = "crate::util::serde_big::vec")]
    pub min_poly: Vec<BigInt>,
    pub degree: usize,
    pub multiplicity: usize,
    /// |norm(λ)| = 1, in which case L_λ = O_λ.
    pub is_unit: bool,
    pub descriptor: String,
}

/// Quasi-isomorphism type of lim(ℤᴺ, φ): ⊕_λ L_λ^{⊕n_λ} with
/// L_λ = O_λ[λ⁻¹], grouped by minimal polynomial.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct K0QuasiType {
    pub dimension: usize,
    pub summands: Vec<K0Summand>,
}

/// Quasi-isomorphism type of the direct limit along a square nonnegative
/// integer matrix, from the factorization of its characteristic polynomial.
pub fn k0_quasi_type(phi: &IntMatrix) -> Result<K0QuasiType, BratteliError> {
    assert!(phi.is_square());
    let n = phi.rows();
    let coeffs = char_poly(phi);
    if coeffs[0].is_zero() {
        return Err(BratteliError::NotInjective);
    }
    let factors = factor_monic(&coeffs)?;
    let mut summands = Vec::new();
    for (f, mult) in factors {
        let degree = f.len() - 1;
        let is_unit = f[0].abs().is_one();
        let descriptor = if is_unit {
            "L_λ = O_λ".to_string()
        } else if degree == 1 {
            format!("L_λ = Z[1/{}]", (-&f[0]).abs())
        } else {
            "L_λ = O_λ[λ⁻¹]".to_string()
        };
        summands.push(K0Summand {
            min_poly: f,
            degree,
            multiplicity: mult,
            is_unit,
            descriptor,
        });
    }
    debug_assert_eq!(
        summands.iter().map(|s| s.degree * s.multiplicity).sum::<usize>(),
        n
    );
    Ok(K0QuasiType {
        dimension: n,
        summands,
    })
}

/// Characteristic polynomial coefficients (constant term first, monic) via
/// Faddeev–LeVerrier; exact over ℚ, integral for integer input.
pub fn char_poly(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows();
    type RatMat = Vec<Vec<BigRational>>;
    let to_rat = |m: &IntMatrix| -> RatMat {
        (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| BigRational::from_integer(m[(i, j)].clone()))
                    .collect()
            })
            .collect()
    };
    let ar = to_rat(a);
    let matmul = |x: &RatMat, y: &RatMat| -> RatMat {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let tr = |x: &RatMat| -> BigRational { (0..n).map(|i| x[i][i].clone()).sum() };

    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = ar.clone();
    for k in 1..=n {
        let ak = -tr(&m) / BigRational::from_integer(BigInt::from(k as i64));
        coeffs[n - k] = ak.clone();
        if k < n {
            // M ← A·(M + aₖ·I)
            let mut shifted = m.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = &row[i] + &ak;
            }
            m = matmul(&ar, &shifted);
        }
    }
    coeffs
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

fn poly_eval(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Divide p by (x − r); p(r) must be zero.
fn poly_deflate(p: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + r * &carry;
        q[k] = carry.clone();
    }
    debug_assert!(poly_eval(p, r).is_zero());
    q
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut f = BigInt::one();
    while &f * &f <= n {
        if (&n % &f).is_zero() {
            out.push(f.clone());
            let q = &n / &f;
            if q != f {
                out.push(q);
            }
        }
        f += 1;
    }
    out.sort();
    out
}

/// Factor a monic integer polynomial (constant term first) into irreducible
/// monic factors with multiplicities. Degrees up to 4 after integer-root
/// peeling are handled; larger fusion systems are out of scope here.
fn factor_monic(p: &[BigInt]) -> Result<Vec<(Vec<BigInt>, usize)>, BratteliError> {
    let mut factors: Vec<Vec<BigInt>> = Vec::new();
    let mut rest = p.to_vec();

    // Integer roots divide the constant term.
    'outer: while rest.len() > 1 {
        if rest[0].is_zero() {
            factors.push(vec![BigInt::zero(), BigInt::one()]);
            rest = poly_deflate(&rest, &BigInt::zero());
            continue;
        }
        for d in divisors(&rest[0]) {
            for r in [d.clone(), -d] {
                if poly_eval(&rest, &r).is_zero() {
                    factors.push(vec![-&r, BigInt::one()]);
                    rest = poly_deflate(&rest, &r);
                    continue 'outer;
                }
            }
        }
        break;
    }

    match rest.len() - 1 {
        0 => {}
        2 | 3 => factors.push(rest), // no rational roots ⇒ irreducible
        4 => match split_quartic(&rest) {
            Some((f1, f2)) => {
                factors.push(f1);
                factors.push(f2);
            }
            None => factors.push(rest),
        },
        d => {
            return Err(BratteliError::Unsupported(format!(
                "factoring degree-{} polynomials is not implemented",
                d
            )))
        }
    }

    // Group identical factors.
    let mut grouped: Vec<(Vec<BigInt>, usize)> = Vec::new();
    for f in factors {
        if let Some(entry) = grouped.iter_mut().find(|(g, _)| *g == f) {
            entry.1 += 1;
        } else {
            grouped.push((f, 1));
        }
    }
    Ok(grouped)
}

/// Split a monic quartic with no rational roots into two monic quadratics
/// over ℤ, if possible.
fn split_quartic(p: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let (e0, e1, e2, e3) = (&p[0], &p[1], &p[2], &p[3]);
    for b in divisors(e0) {
        for b in [b.clone(), -b] {
            if (e0 % &b).is_zero() {
                let d = e0 / &b;
                // (x²+ax+b)(x²+cx+d): a+c = e3, ac = e2−b−d, ad+bc = e1.
                let s = e3.clone();
                let prod = e2 - &b - &d;
                let disc = &s * &s - BigInt::from(4) * &prod;
                if disc.is_negative() {
                    continue;
                }
                let sq = disc.sqrt();
                if &sq * &sq != disc {
                    continue;
                }
                for sign in [BigInt::one(), -BigInt::one()] {
                    let two_a = &s + &sign * &sq;
                    if (&two_a % BigInt::from(2)).is_zero() {
                        let a: BigInt = two_a / BigInt::from(2);
                        let c = &s - &a;
                        if &a * &d + &b * &c == *e1 {
                            return Some((
                                vec![b.clone(), a.clone(), BigInt::one()],
                                vec![d.clone(), c.clone(), BigInt::one()],
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Dimension functions on the golden-ratio diagram
// ---------------------------------------------------------------------------

/// Integer function on the vertices of the multiplicity-one golden-ratio
/// diagram satisfying f(Λ) = Σ f(λ)·κ(λ, Λ), maximally extended; only the
/// root can stay undefined (it needs both level-1 values equal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionFunction {
    pub root: Option<BigInt>,
    /// (top, bottom) values per column (level 1 onward).
    pub columns: Vec<(BigInt, BigInt)>,
}

impl DimensionFunction {
    /// Extend a seed (top, bottom) given at 1-based column `seed_col` over
    /// `n_columns` columns, forward by the Fibonacci recurrences and
    /// backward over ℤ (always solvable on columns; the root extends only
    /// when consistent).
    pub fn extend(
        diagram: &BratteliDiagram,
        seed_col: usize,
        seed: (BigInt, BigInt),
        n_columns: usize,
    ) -> Result<Self, BratteliError> {
        if !is_golden_diagram(diagram) {
            return Err(BratteliError::NotFibonacciType);
        }
        assert!(
            seed_col >= 1 && seed_col <= n_columns,
            "seed column out of range"
        );
        let mut columns = vec![(BigInt::zero(), BigInt::zero()); n_columns];
        columns[seed_col - 1] = seed;
        // Forward: (t, b) → (t + b, t).
        for k in seed_col..n_columns {
            let (t, b) = columns[k - 1].clone();
            columns[k] = (&t + &b, t);
        }
        // Backward: (t, b) ← (b, t − b).
        for k in (1..seed_col).rev() {
            let (t, b) = columns[k].clone();
            columns[k - 1] = (b.clone(), &t - &b);
        }
        let root = if columns[0].0 == columns[0].1 {
            Some(columns[0].0.clone())
        } else {
            None
        };
        Ok(DimensionFunction { root, columns })
    }

    /// The generator f₁ (class of 1 in K₀): columns (Fib(k), Fib(k−1)).
    pub fn f_one(diagram: &BratteliDiagram, n_columns: usize) -> Result<Self, BratteliError> {
        DimensionFunction::extend(diagram, 1, (BigInt::one(), BigInt::one()), n_columns)
    }

    /// The generator f_τ (class of τ): columns (Fib(k+2), Fib(k+1)), root
    /// undefined.
    pub fn f_tau(diagram: &BratteliDiagram, n_columns: usize) -> Result<Self, BratteliError> {
        DimensionFunction::extend(diagram, 1, (BigInt::from(3), BigInt::from(2)), n_columns)
    }

    /// Pointwise sum; the root of the sum is re-derived from the summed
    /// columns (maximal extension of the sum).
    pub fn add(&self, other: &DimensionFunction) -> DimensionFunction {
        assert_eq!(self.columns.len(), other.columns.len());
        let columns: Vec<(BigInt, BigInt)> = self
            .columns
            .iter()
            .zip(other.columns.iter())
            .map(|((t1, b1), (t2, b2))| (t1 + t2, b1 + b2))
            .collect();
        let root = if !columns.is_empty() && columns[0].0 == columns[0].1 {
            Some(columns[0].0.clone())
        } else {
            None
        };
        DimensionFunction { root, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|(t, b)| t.is_zero() && b.is_zero())
    }

    /// Flat vertex listing: root, then (top, bottom) per column.
    pub fn values_flat(&self) -> Vec<Option<BigInt>> {
        let mut out = vec![self.root.clone()];
        for (t, b) in &self.columns {
            out.push(Some(t.clone()));
            out.push(Some(b.clone()));
        }
        out
    }

    /// Check f(Λ) = Σ f(λ)κ(λ, Λ) at every defined vertex.
    pub fn check_relations(&self) -> bool {
        for w in self.columns.windows(2) {
            let (ref t0, ref b0) = w[0];
            let (ref t1, ref b1) = w[1];
            if *t1 != t0 + b0 || b1 != t0 {
                return false;
            }
        }
        if let Some(r) = &self.root {
            if !self.columns.is_empty() {
                let (ref t1, ref b1) = self.columns[0];
                if t1 != r || b1 != r {
                    return false;
                }
            }
        }
        true
    }

    /// Braid-word exponents: the bottom-row values. For f₁ these are the
    /// Fibonacci numbers, and they are additive in the function, which is
    /// what the braid map needs.
    pub fn braid_exponents(&self, count: usize) -> Vec<BigInt> {
        assert!(count <= self.columns.len(), "not enough columns");
        self.columns[..count]
            .iter()
            .map(|(_, b)| b.clone())
            .collect()
    }
}

/// Check the defining relation f(Λ) = Σ_{λ↗Λ} f(λ)·κ(λ, Λ) for a value
/// assignment on an arbitrary diagram (one integer vector per level,
/// `None` for undefined vertices). A relation is enforced exactly when the
/// target and all its predecessors with nonzero multiplicity are defined;
/// extension beyond the golden diagram is out of scope, verification is
/// not.
pub fn check_dimension_relation(
    diagram: &BratteliDiagram,
    values: &[Vec<Option<BigInt>>],
) -> bool {
    if values.len() != diagram.n_levels() {
        return false;
    }
    for (level, vals) in values.iter().enumerate() {
        if vals.len() != diagram.level_sizes()[level] {
            return false;
        }
    }
    for (n, phi) in diagram.incidence().iter().enumerate() {
        for target in 0..phi.cols() {
            let Some(expect) = &values[n + 1][target] else {
                continue;
            };
            let mut sum = BigInt::zero();
            let mut all_defined = true;
            for source in 0..phi.rows() {
                let kappa = &phi[(source, target)];
                if kappa.is_zero() {
                    continue;
                }
                match &values[n][source] {
                    Some(v) => sum += v * kappa,
                    None => {
                        all_defined = false;
                        break;
                    }
                }
            }
            if all_defined && &sum != expect {
                return false;
            }
        }
    }
    true
}

/// True for diagrams whose 2×2 steps are all `[[1,1],[1,0]]` with root edge
/// `[1,1]` (any length ≥ 2).
pub fn is_golden_diagram(d: &BratteliDiagram) -> bool {
    if d.n_levels() < 2 {
        return false;
    }
    let inc = d.incidence();
    let root_ok = inc[0].rows() == 1
        && inc[0].cols() == 2
        && inc[0][(0, 0)].is_one()
        && inc[0][(0, 1)].is_one();
    if !root_ok {
        return false;
    }
    let fib = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]);
    inc[1..].iter().all(|phi| *phi == fib)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::cf_expand;
    use crate::util::fib;

    fn golden_diagram(levels: usize) -> BratteliDiagram {
        let cf = cf_expand(&QuadraticIrrational::golden());
        from_continued_fraction(&cf, levels, DigitConvention::DigitTop).unwrap()
    }

    #[test]
    fn golden_ranks_are_fibonacci() {
        let d = golden_diagram(6);
        let tops: Vec<i64> = (0..6)
            .map(|n| i64::try_from(&d.path_counts(n)[0]).unwrap())
            .collect();
        assert_eq!(tops, vec![1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn pell_ranks() {
        let cf = cf_expand(&QuadraticIrrational::new(1, 1, 2).unwrap());
        let d = from_continued_fraction(&cf, 5, DigitConvention::DigitTop).unwrap();
        let tops: Vec<i64> = (0..5)
            .map(|n| i64::try_from(&d.path_counts(n)[0]).unwrap())
            .collect();
        assert_eq!(tops, vec![1, 2, 5, 12, 29]);
    }

    #[test]
    fn single_level_diagram() {
        let cf = cf_expand(&QuadraticIrrational::golden());
        let d = from_continued_fraction(&cf, 1, DigitConvention::DigitTop).unwrap();
        assert_eq!(d.n_levels(), 1);
        assert_eq!(d.path_counts(0), vec![BigInt::one()]);
    }

    #[test]
    fn flipped_convention_swaps_rows() {
        let cf = cf_expand(&QuadraticIrrational::golden());
        let top = from_continued_fraction(&cf, 6, DigitConvention::DigitTop).unwrap();
        let bot = from_continued_fraction(&cf, 6, DigitConvention::DigitBottom).unwrap();
        for n in 0..6 {
            let mut a = top.path_counts(n);
            let b = bot.path_counts(n);
            a.reverse();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn golden_totals_are_fib_n_plus_1() {
        let d = golden_diagram(12);
        for n in 0..12 {
            assert_eq!(d.total_paths(n), fib(n + 1), "level {}", n);
        }
    }

    #[test]
    fn telescope_every_two_levels() {
        let d = golden_diagram(8);
        let cuts: Vec<usize> = vec![0, 1, 3, 5, 7];
        let t = d.telescope(&cuts).unwrap();
        let sq = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        for phi in &t.incidence()[1..] {
            assert_eq!(*phi, sq);
        }
        for (new_level, &old_level) in cuts.iter().enumerate() {
            assert_eq!(t.path_counts(new_level), d.path_counts(old_level));
        }
    }

    #[test]
    fn telescope_period_three_preserves_counts() {
        let theta = QuadraticIrrational::new(2, 3, 10).unwrap();
        let cf = cf_expand(&theta);
        let d = from_continued_fraction(&cf, 8, DigitConvention::DigitTop).unwrap();
        let cuts = [0usize, 1, 4, 7];
        let t = d.telescope(&cuts).unwrap();
        // Telescoped step is a product of one full period of digit matrices.
        assert!(t.incidence()[1].is_positive());
        for (new_level, &old_level) in cuts.iter().enumerate() {
            assert_eq!(t.path_counts(new_level), d.path_counts(old_level));
        }
    }

    #[test]
    fn telescope_identity() {
        let d = golden_diagram(5);
        let cuts: Vec<usize> = (0..5).collect();
        assert_eq!(d.telescope(&cuts).unwrap(), d);
    }

    #[test]
    fn path_counts_match_brute_force() {
        // Brute force: expand every edge with its multiplicity.
        fn brute(d: &BratteliDiagram, level: usize) -> Vec<BigInt> {
            let mut counts = vec![BigInt::one()];
            for phi in d.incidence().iter().take(level) {
                let mut next = vec![BigInt::zero(); phi.cols()];
                for (i, c) in counts.iter().enumerate() {
                    for (j, slot) in next.iter_mut().enumerate() {
                        let mult = &phi[(i, j)];
                        let mut k = BigInt::zero();
                        while &k < mult {
                            *slot += c;
                            k += 1;
                        }
                    }
                }
                counts = next;
            }
            counts
        }
        let silver = cf_expand(&QuadraticIrrational::new(1, 1, 2).unwrap());
        let d = from_continued_fraction(&silver, 6, DigitConvention::DigitTop).unwrap();
        for n in 0..6 {
            assert_eq!(d.path_counts(n), brute(&d, n), "level {}", n);
        }
    }

    #[test]
    fn k0_fibonacci_cone() {
        let phi = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]);
        let k0 = k0_stationary(&phi, FunctionalNormalization::SecondOne).unwrap();
        // Functional is (τ, 1).
        assert_eq!(
            k0.functional.0,
            QuadraticIrrational::golden().to_quad_expr()
        );
        assert_eq!(k0.functional.1, QuadExpr::one());
        // (1, −1) is positive since τ − 1 > 0; (−1, 1) is not.
        assert!(k0.is_positive(&[BigInt::one(), BigInt::from(-1)]));
        assert!(!k0.is_positive(&[BigInt::from(-1), BigInt::one()]));
        // Zero is positive; the order unit pairs to 1.
        assert!(k0.is_positive(&[BigInt::zero(), BigInt::zero()]));
        assert_eq!(k0.pairing(&k0.order_unit.clone()), QuadExpr::one());
    }

    #[test]
    fn k0_rejects_imprimitive() {
        let swap = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert!(matches!(
            k0_stationary(&swap, FunctionalNormalization::SecondOne),
            Err(BratteliError::NotPrimitive)
        ));
    }

    #[test]
    fn cone_not_both_h_and_minus_h() {
        let phi = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 0]]);
        let k0 = k0_stationary(&phi, FunctionalNormalization::SecondOne).unwrap();
        for n in -4i64..=4 {
            for m in -4i64..=4 {
                if n == 0 && m == 0 {
                    continue;
                }
                let h = [BigInt::from(n), BigInt::from(m)];
                let neg = [BigInt::from(-n), BigInt::from(-m)];
                assert!(!(k0.is_positive(&h) && k0.is_positive(&neg)), "({n},{m})");
            }
        }
    }

    #[test]
    fn cone_compare_fibonacci_identity() {
        let theta = QuadraticIrrational::golden();
        let g = UnimodularMatrix::new(1, 1, 1, 0).unwrap();
        let r = cone_compare(&theta, &g, 2, 3).unwrap();
        assert_eq!(r.isomorphism, Some(UnimodularMatrix::identity()));
        // The two conventions disagree at (1, −1).
        assert!(r.grid_disagreements.iter().any(|d| d.point == (1, -1)));
    }

    #[test]
    fn cone_compare_silver_identity() {
        let theta = QuadraticIrrational::new(1, 1, 2).unwrap();
        let g = UnimodularMatrix::new(2, 1, 1, 0).unwrap();
        let r = cone_compare(&theta, &g, 2, 3).unwrap();
        assert_eq!(r.isomorphism, Some(UnimodularMatrix::identity()));
    }

    #[test]
    fn cone_compare_rejects_bad_hypotheses() {
        let theta = QuadraticIrrational::golden();
        let g = UnimodularMatrix::new(2, 1, 1, 0).unwrap(); // fixes 1+√2, not τ
        assert!(cone_compare(&theta, &g, 2, 2).is_err());
    }

    #[test]
    fn quasi_type_fibonacci() {
        let phi = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]);
        let t = k0_quasi_type(&phi).unwrap();
        assert_eq!(t.summands.len(), 1);
        let s = &t.summands[0];
        let expect: Vec<BigInt> = [-1, -1, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(s.min_poly, expect); // x² − x − 1
        assert_eq!((s.degree, s.multiplicity), (2, 1));
        assert!(s.is_unit);
        assert_eq!(s.descriptor, "L_λ = O_λ");
    }

    #[test]
    fn quasi_type_diagonal() {
        let phi = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let t = k0_quasi_type(&phi).unwrap();
        assert_eq!(t.summands.len(), 2);
        let descs: Vec<&str> = t.summands.iter().map(|s| s.descriptor.as_str()).collect();
        assert!(descs.contains(&"L_λ = Z[1/2]"));
        assert!(descs.contains(&"L_λ = Z[1/3]"));
        assert!(t.summands.iter().all(|s| !s.is_unit));
    }

    #[test]
    fn quasi_type_identity() {
        let t = k0_quasi_type(&IntMatrix::identity(2)).unwrap();
        assert_eq!(t.summands.len(), 1);
        let s = &t.summands[0];
        let expect: Vec<BigInt> = [-1, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(s.min_poly, expect);
        assert_eq!(s.multiplicity, 2);
        assert!(s.is_unit);
    }

    #[test]
    fn quasi_type_rejects_singular() {
        let phi = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            k0_quasi_type(&phi),
            Err(BratteliError::NotInjective)
        ));
    }

    #[test]
    fn char_poly_quartic_splits() {
        // Block diagonal with blocks [[0,1],[1,1]] and [[0,1],[1,2]]; the
        // characteristic polynomial is (x²−x−1)(x²−2x−1), verified by
        // evaluation rather than hand expansion.
        let m = IntMatrix::from_i64_rows(&[
            &[0, 1, 0, 0],
            &[1, 1, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, 1, 2],
        ]);
        let p = char_poly(&m);
        for x in -3i64..=3 {
            let xb = BigInt::from(x);
            let lhs = poly_eval(&p, &xb);
            let f1 = &xb * &xb - &xb - 1;
            let f2 = &xb * &xb - 2 * &xb - 1;
            assert_eq!(lhs, f1 * f2);
        }
        let t = k0_quasi_type(&m).unwrap();
        assert_eq!(t.summands.len(), 2);
        assert!(t.summands.iter().all(|s| s.degree == 2 && s.is_unit));
    }

    #[test]
    fn dimension_function_f1() {
        let d = golden_diagram(10);
        let f1 = DimensionFunction::f_one(&d, 9).unwrap();
        assert_eq!(f1.root, Some(BigInt::one()));
        let flat: Vec<i64> = f1
            .values_flat()
            .into_iter()
            .flatten()
            .map(|v| i64::try_from(&v).unwrap())
            .collect();
        assert_eq!(&flat[..9], &[1, 1, 1, 2, 1, 3, 2, 5, 3]);
        assert!(f1.check_relations());
    }

    #[test]
    fn dimension_function_f_tau() {
        let d = golden_diagram(10);
        let ft = DimensionFunction::f_tau(&d, 9).unwrap();
        assert_eq!(ft.root, None);
        let flat: Vec<i64> = ft.values_flat()[1..7]
            .iter()
            .map(|v| i64::try_from(v.as_ref().unwrap()).unwrap())
            .collect();
        assert_eq!(flat, vec![3, 2, 5, 3, 8, 5]);
        assert!(ft.check_relations());
        let tops: Vec<i64> = ft.columns[..4]
            .iter()
            .map(|(t, _)| i64::try_from(t).unwrap())
            .collect();
        assert_eq!(tops, vec![3, 5, 8, 13]);
    }

    #[test]
    fn dimension_function_zero_seed() {
        let d = golden_diagram(8);
        let z = DimensionFunction::extend(&d, 3, (BigInt::zero(), BigInt::zero()), 7).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.root, Some(BigInt::zero()));
    }

    #[test]
    fn dimension_function_backward_extension() {
        let d = golden_diagram(8);
        // Seed f₁ at column 4 = (5, 3); backward extension recovers the
        // earlier columns and the root.
        let f = DimensionFunction::extend(&d, 4, (BigInt::from(5), BigInt::from(3)), 7).unwrap();
        let f1 = DimensionFunction::f_one(&d, 7).unwrap();
        assert_eq!(f, f1);
    }

    #[test]
    fn dimension_function_sum_is_pointwise() {
        let d = golden_diagram(10);
        let f1 = DimensionFunction::f_one(&d, 9).unwrap();
        let ft = DimensionFunction::f_tau(&d, 9).unwrap();
        let sum = f1.add(&ft);
        assert!(sum.check_relations());
        assert_eq!(sum.root, None); // 4 ≠ 3 at column 1
        for (k, ((t, b), ((t1, b1), (t2, b2)))) in sum
            .columns
            .iter()
            .zip(f1.columns.iter().zip(ft.columns.iter()))
            .enumerate()
        {
            assert_eq!(t, &(t1 + t2), "top {}", k);
            assert_eq!(b, &(b1 + b2), "bottom {}", k);
        }
    }

    #[test]
    fn dimension_relation_general_multiplicity() {
        // Stationary [[2,1],[1,0]] diagram: rank vectors themselves are a
        // dimension function, and perturbing one value breaks the relation.
        let phi = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 0]]);
        let root = [BigInt::from(2), BigInt::one()];
        let d = BratteliDiagram::stationary(&phi, &root, 6).unwrap();
        let values: Vec<Vec<Option<BigInt>>> = (0..6)
            .map(|n| d.path_counts(n).into_iter().map(Some).collect())
            .collect();
        assert!(check_dimension_relation(&d, &values));

        let mut broken = values.clone();
        broken[3][0] = broken[3][0].clone().map(|v| v + 1);
        assert!(!check_dimension_relation(&d, &broken));

        // Undefined vertices suspend the relations they touch.
        let mut partial = values;
        partial[0][0] = None;
        assert!(check_dimension_relation(&d, &partial));
    }

    #[test]
    fn dimension_relation_matches_golden_checker() {
        let d = golden_diagram(8);
        let f1 = DimensionFunction::f_one(&d, 7).unwrap();
        let mut values: Vec<Vec<Option<BigInt>>> = vec![vec![f1.root.clone()]];
        for (t, b) in &f1.columns {
            values.push(vec![Some(t.clone()), Some(b.clone())]);
        }
        assert!(check_dimension_relation(&d, &values));
    }

    #[test]
    fn dot_export_mentions_ranks_and_multiplicities() {
        let d = golden_diagram(4);
        let dot = d.to_dot();
        assert!(dot.contains("digraph"));
        assert!(dot.contains("label=\"3\"")); // rank 3 appears at level 3
        assert!(dot.contains("->"));
    }

    #[test]
    fn json_round_trip() {
        let d = golden_diagram(5);
        let j = BratteliJson::from(&d);
        let text = serde_json::to_string(&j).unwrap();
        let back: BratteliJson = serde_json::from_str(&text).unwrap();
        let d2 = BratteliDiagram::try_from(&back).unwrap();
        assert_eq!(d, d2);
    }
}
