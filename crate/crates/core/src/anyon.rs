//! Fusion-path state spaces, F/R matrices with pentagon and hexagon
//! verification, braid-group representations on the path basis, and the map
//! from dimension functions to braid words.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bratteli::DimensionFunction;
use crate::fusion::FusionSystem;
use crate::linalg::{hermitian_eigen, CMatrix, OperatorJson};
use crate::util::SplitMix64;

#[derive(Debug, Error)]
pub enum AnyonError {
    #[error("basis is not closed under the braid action: {0}")]
    BasisNotClosed(String),
    #[error("braid exponent overflows i64")]
    ExponentOverflow,
}

// ---------------------------------------------------------------------------
// Fusion path bases
// ---------------------------------------------------------------------------

/// Basis of the n-anyon state space: admissible intermediate-charge
/// sequences (y₁, …, y_{n−1}) for fusing n copies of x₁ left to right,
/// ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionPathBasis {
    pub n_anyons: usize,
    pub anyon_label: usize,
    pub paths: Vec<Vec<usize>>,
    /// Path count weighted by fusion multiplicities; equals `paths.len()`
    /// for multiplicity-free systems.
    pub weighted_count: BigInt,
}

impl FusionPathBasis {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    /// Final charge of a path (the type of the n-fold fusion product).
    pub fn final_charge(&self, idx: usize) -> usize {
        self.paths[idx].last().copied().unwrap_or(self.anyon_label)
    }

    /// Restrict to the paths with a given total charge. The braid action
    /// never changes the total charge, so sectors carry subrepresentations.
    pub fn charge_sector(&self, charge: usize) -> FusionPathBasis {
        let paths: Vec<Vec<usize>> = self
            .paths
            .iter()
            .filter(|p| p.last().copied().unwrap_or(self.anyon_label) == charge)
            .cloned()
            .collect();
        let count = BigInt::from(paths.len());
        FusionPathBasis {
            n_anyons: self.n_anyons,
            anyon_label: self.anyon_label,
            paths,
            weighted_count: count,
        }
    }
}

/// Enumerate the admissible fusion paths of n identical anyons.
///
/// The braided type is x₁ (x₀ for the one-label system). The weighted count
/// multiplies the fusion coefficients along each path and agrees with the
/// path counts of the corresponding stationary Bratteli diagram.
pub fn enumerate_paths(f: &FusionSystem, n: usize) -> FusionPathBasis {
    assert!(n >= 1, "need at least one anyon");
    let label = if f.rank() >= 2 { 1 } else { 0 };
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut weighted = BigInt::zero();

    // DFS; sorting afterwards keeps the listing lexicographic.
    let mut stack: Vec<(Vec<usize>, BigInt)> = vec![(Vec::new(), BigInt::one())];
    while let Some((prefix, weight)) = stack.pop() {
        if prefix.len() == n - 1 {
            weighted += &weight;
            paths.push(prefix);
            continue;
        }
        let current = *prefix.last().unwrap_or(&label);
        for next in (0..f.rank()).rev() {
            let mult = f.n_coeff(current, label, next);
            if mult > 0 {
                let mut p = prefix.clone();
                p.push(next);
                stack.push((p, &weight * BigInt::from(mult)));
            }
        }
    }
    paths.sort();
    FusionPathBasis {
        n_anyons: n,
        anyon_label: label,
        paths,
        weighted_count: weighted,
    }
}

// ---------------------------------------------------------------------------
// F/R data
// ---------------------------------------------------------------------------

/// The F/R data of a two-label multiplicity-free theory: the scalar
/// F^{111}_0 = t, the 2×2 block F^{111}_1, and the braiding phases
/// R = diag(R₁, R_τ).
#[derive(Debug, Clone)]
pub struct FRData {
    pub t: Complex64,
    pub f: CMatrix,
    pub r: [Complex64; 2],
}

impl FRData {
    pub fn new(t: Complex64, f: CMatrix, r: [Complex64; 2]) -> Self {
        assert_eq!((f.rows(), f.cols()), (2, 2));
        FRData { t, f, r }
    }

    /// The golden solution: t = 1, F = `[[τ⁻¹, τ^{−1/2}],[τ^{−1/2}, −τ⁻¹]]`,
    /// R = diag(e^{4πi/5}, −e^{2πi/5}).
    pub fn golden() -> Self {
        let tau = (1.0 + 5.0f64.sqrt()) / 2.0;
        let f = CMatrix::from_real_rows(&[
            &[1.0 / tau, tau.powf(-0.5)],
            &[tau.powf(-0.5), -1.0 / tau],
        ]);
        let r1 = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 5.0);
        let rt = -Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 5.0);
        FRData::new(Complex64::one(), f, [r1, rt])
    }

    /// How far the data is from unitary (max over |t|−1, ‖F†F−I‖, |rᵢ|−1).
    pub fn unitarity_residual(&self) -> f64 {
        let mut worst = (self.t.norm() - 1.0).abs();
        worst = worst.max(self.f.unitary_residual());
        for r in &self.r {
            worst = worst.max((r.norm() - 1.0).abs());
        }
        worst
    }

    pub fn r_matrix(&self) -> CMatrix {
        CMatrix::diagonal(&[self.r[0], self.r[1]])
    }
}

/// Max operator-norm residual of the two pentagon matrix equations of the
/// two-label theory:
///
///   diag(1,t)·diag(1,t) = F·diag(1,t)·F
///   (1⊕F)·(swap⊕1)·(1⊕F) = Q·(1⊕F)·Q,  Q = `[[p,0,q],[0,t,0],[r,0,s]]`.
pub fn pentagon_check(d: &FRData) -> f64 {
    let t = d.t;
    let f = &d.f;
    let (p, q) = (f[(0, 0)], f[(0, 1)]);
    let (r, s) = (f[(1, 0)], f[(1, 1)]);

    let one = Complex64::one();
    let dt = CMatrix::diagonal(&[one, t]);
    let lhs1 = dt.mul(&dt);
    let rhs1 = f.mul(&dt).mul(f);
    let res1 = lhs1.sub(&rhs1).op_norm();

    let zero = Complex64::zero();
    let big_f = CMatrix::from_rows(&[&[one, zero, zero], &[zero, p, q], &[zero, r, s]]);
    let swap = CMatrix::from_rows(&[&[zero, one, zero], &[one, zero, zero], &[zero, zero, one]]);
    let qmat = CMatrix::from_rows(&[&[p, zero, q], &[zero, t, zero], &[r, zero, s]]);
    let lhs2 = big_f.mul(&swap).mul(&big_f);
    let rhs2 = qmat.mul(&big_f).mul(&qmat);
    let res2 = lhs2.sub(&rhs2).op_norm();

    res1.max(res2)
}

/// Pentagon residual of the one-label theory, where every F-symbol is the
/// scalar 1: |1·1 − 1·1·1|.
pub fn one_label_pentagon_residual() -> f64 {
    let f = Complex64::one();
    ((f * f) - (f * f * f)).norm()
}

/// Max residual of the hexagon instances for the two-label theory.
///
/// All-x₁ externals give one instance per total charge u:
///   u = x₁:  R·F·R = F·diag(R^{x₁x₀}, R^{x₁x₁})·F = F·diag(1, R_τ)·F
///   u = x₀:  R_τ·t·R_τ = t·R₁·t
/// plus the clockwise versions with R ↦ R⁻¹.
pub fn hexagon_check(d: &FRData) -> f64 {
    let f = &d.f;
    let t = d.t;
    let one = Complex64::one();
    let mut worst: f64 = 0.0;

    for invert in [false, true] {
        let (r1, rt) = if invert {
            (one / d.r[0], one / d.r[1])
        } else {
            (d.r[0], d.r[1])
        };
        let r = CMatrix::diagonal(&[r1, rt]);
        let mid = CMatrix::diagonal(&[one, rt]);
        let lhs = r.mul(f).mul(&r);
        let rhs = f.mul(&mid).mul(f);
        worst = worst.max(lhs.sub(&rhs).op_norm());

        let scalar = (rt * rt * t) - (t * t * r1);
        worst = worst.max(scalar.norm());
    }
    worst
}

// ---------------------------------------------------------------------------
// Braid representation
// ---------------------------------------------------------------------------

/// Braid generator B_{i,n} on the full n-anyon path basis (Fibonacci
/// rules). Identity for i > n−1.
pub fn braid_generator(i: usize, n: usize, d: &FRData) -> CMatrix {
    let basis = enumerate_paths(&FusionSystem::fibonacci(), n);
    braid_generator_in_basis(i, &basis, d).expect("full basis is closed")
}

/// Braid generator on an explicit path basis (typically a charge sector).
///
/// σ₁ is diagonal with phase R_{y₁}. For i ≥ 2 the generator acts on the
/// label y_{i−1}: when the neighbors (y_{i−2}, y_i) are both x₁ the move is
/// the 2×2 block F⁻¹RF on y_{i−1} ∈ {x₀, x₁}; otherwise the two braided
/// anyons fuse through a definite channel and the move is that R phase.
pub fn braid_generator_in_basis(
    i: usize,
    basis: &FusionPathBasis,
    d: &FRData,
) -> Result<CMatrix, AnyonError> {
    assert!(i >= 1, "generators are 1-indexed");
    let n = basis.n_anyons;
    let dim = basis.dim();
    if i > n.saturating_sub(1) {
        return Ok(CMatrix::identity(dim));
    }

    let index_of = |path: &[usize]| basis.paths.iter().position(|p| p == path);

    let mut out = CMatrix::zeros(dim, dim);
    if i == 1 {
        for (col, path) in basis.paths.iter().enumerate() {
            let y1 = path[0];
            out[(col, col)] = d.r[y1];
        }
        return Ok(out);
    }

    // Block of the local move on y_{i−1} ∈ {0, 1}.
    let f = &d.f;
    let finv = f.adjoint(); // F is unitary
    let block = finv.mul(&d.r_matrix()).mul(f);

    for (col, path) in basis.paths.iter().enumerate() {
        let left = if i >= 3 { path[i - 3] } else { 1 };
        let right = path[i - 1];
        match (left, right) {
            (1, 1) => {
                let y = path[i - 2];
                for y_new in 0..2 {
                    let amp = block[(y_new, y)];
                    if amp.norm() == 0.0 {
                        continue;
                    }
                    let mut target = path.clone();
                    target[i - 2] = y_new;
                    let row = index_of(&target).ok_or_else(|| {
                        AnyonError::BasisNotClosed(format!(
                            "target path {:?} missing from basis",
                            target
                        ))
                    })?;
                    out[(row, col)] += amp;
                }
            }
            (0, 0) => out[(col, col)] = d.r[0],
            _ => out[(col, col)] = d.r[1],
        }
    }
    Ok(out)
}

/// A word in the braid generators with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub factors: Vec<BraidFactor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidFactor {
    pub gen: usize,
    pub exp: i64,
}

impl BraidWord {
    pub fn new(factors: Vec<(usize, i64)>) -> Self {
        BraidWord {
            factors: factors
                .into_iter()
                .map(|(gen, exp)| BraidFactor { gen, exp })
                .collect(),
        }
        .normalized()
    }

    pub fn empty() -> Self {
        BraidWord { factors: vec![] }
    }

    /// Merge adjacent equal generators and drop zero exponents.
    pub fn normalized(&self) -> BraidWord {
        let mut out: Vec<BraidFactor> = Vec::new();
        for f in &self.factors {
            assert!(f.gen >= 1, "generator indices are positive");
            if f.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.gen == f.gen => {
                    last.exp += f.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(f.clone()),
            }
        }
        BraidWord { factors: out }
    }

    /// Concatenation (group product).
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        BraidWord { factors }.normalized()
    }

    /// Exponent of a generator after full abelian merging (valid for words
    /// in pairwise commuting generators, like the odd-index words produced
    /// by dimension functions).
    pub fn abelian_exponent(&self, gen: usize) -> i64 {
        self.factors
            .iter()
            .filter(|f| f.gen == gen)
            .map(|f| f.exp)
            .sum()
    }
}

/// Evaluate a braid word on the n-anyon space: the product of generator
/// powers, left to right. Negative exponents use the adjoint (the
/// generators are unitary); powers go by repeated squaring.
pub fn apply_braid_word(w: &BraidWord, n: usize, d: &FRData) -> CMatrix {
    let basis = enumerate_paths(&FusionSystem::fibonacci(), n);
    let dim = basis.dim();
    let mut acc = CMatrix::identity(dim);
    for f in &w.factors {
        let b = braid_generator_in_basis(f.gen, &basis, d).expect("full basis");
        let base = if f.exp >= 0 { b } else { b.adjoint() };
        acc = acc.mul(&matrix_power(&base, f.exp.unsigned_abs()));
    }
    acc
}

fn matrix_power(base: &CMatrix, mut e: u64) -> CMatrix {
    let mut result = CMatrix::identity(base.rows());
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&sq);
        }
        sq = sq.mul(&sq);
        e >>= 1;
    }
    result
}

/// Conjugation action σ_w · M = B_w · M · B_w⁻¹. On block-diagonal M this
/// is the direct sum of the actions on the irreducible blocks.
pub fn conjugate_action(w: &BraidWord, n: usize, d: &FRData, m: &CMatrix) -> CMatrix {
    let b = apply_braid_word(w, n, d);
    b.mul(m).mul(&b.adjoint())
}

/// Braid word of a dimension function: σ₁^{e₀}σ₃^{e₁}…σ_{2L+1}^{e_L} with
/// the exponents read off the bottom row of the maximally extended
/// function. For f₁ the exponents are the Fibonacci numbers, and the map is
/// additive because bottom-row values add and distinct odd generators
/// commute.
pub fn dimension_function_to_braid(
    f: &DimensionFunction,
    truncation: usize,
) -> Result<BraidWord, AnyonError> {
    let exps = f.braid_exponents(truncation + 1);
    let mut factors = Vec::new();
    for (k, e) in exps.iter().enumerate() {
        let exp = i64::try_from(e).map_err(|_| AnyonError::ExponentOverflow)?;
        factors.push((2 * k + 1, exp));
    }
    Ok(BraidWord::new(factors))
}

// ---------------------------------------------------------------------------
// Exploratory pentagon search
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PentagonCandidate {
    pub t: [f64; 2],
    pub f: OperatorJson,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PentagonSearchOutcome {
    pub trace: u64,
    pub candidates: Vec<PentagonCandidate>,
    pub best_residual: f64,
    pub note: String,
}

/// Residual-minimization search for pentagon solutions in the two-label
/// multiplicity-free ansatz (scalar t and unitary 2×2 F).
///
/// For trace 1 this is the Fibonacci ansatz and the search descends toward
/// the golden solution. Traces ≥ 2 put multiplicity Tr(g) ≥ 2 on x₁⊗x₁,
/// outside this ansatz, so the search reports no candidates rather than
/// asserting anything about solvability.
pub fn pentagon_search(
    trace: u64,
    seed: u64,
    starts: usize,
    iters: usize,
) -> PentagonSearchOutcome {
    if trace != 1 {
        return PentagonSearchOutcome {
            trace,
            candidates: vec![],
            best_residual: f64::NAN,
            note: format!(
                "x1⊗x1 has multiplicity {} ≥ 2; the multiplicity-free two-label \
                 F-block ansatz does not apply, no candidates searched",
                trace
            ),
        };
    }

    let mut rng = SplitMix64::new(seed);
    let r_dummy = FRData::golden().r;
    let objective = |params: &[f64; 9]| -> (f64, FRData) {
        let t = Complex64::from_polar(1.0, params[0]);
        let raw = CMatrix::from_rows(&[
            &[
                Complex64::new(params[1], params[2]),
                Complex64::new(params[3], params[4]),
            ],
            &[
                Complex64::new(params[5], params[6]),
                Complex64::new(params[7], params[8]),
            ],
        ]);
        let f = unitarize(&raw);
        let data = FRData::new(t, f, r_dummy);
        (pentagon_check(&data), data)
    };

    let mut best: Option<(f64, FRData)> = None;
    let mut candidates = Vec::new();
    for _ in 0..starts {
        let mut params = [0.0f64; 9];
        for p in params.iter_mut() {
            *p = 2.0 * rng.next_f64() - 1.0;
        }
        params[0] *= std::f64::consts::PI;
        let (mut value, mut data) = objective(&params);

        // Wide exploration, then coordinate descent with per-sweep step
        // halving until the step bottoms out or the budget runs dry.
        let mut budget = iters;
        let explore = iters / 4;
        let mut step = 0.3f64;
        for _ in 0..explore {
            let axis = rng.next_below(9) as usize;
            let delta = step * (2.0 * rng.next_f64() - 1.0);
            let mut trial = params;
            trial[axis] += delta;
            let (tv, td) = objective(&trial);
            if tv < value {
                value = tv;
                data = td;
                params = trial;
            } else {
                step *= 0.99;
            }
        }
        budget = budget.saturating_sub(explore);
        let mut s = step.max(0.05);
        while budget > 0 && s > 1e-12 && value > 1e-13 {
            let mut improved = false;
            'sweep: for axis in 0..9 {
                for sign in [1.0, -1.0] {
                    let mut trial = params;
                    trial[axis] += sign * s;
                    let (tv, td) = objective(&trial);
                    budget = budget.saturating_sub(1);
                    if tv < value {
                        value = tv;
                        data = td;
                        params = trial;
                        improved = true;
                    }
                    if budget == 0 {
                        break 'sweep;
                    }
                }
            }
            if !improved {
                s *= 0.5;
            }
        }
        if value < 1e-6 {
            candidates.push(PentagonCandidate {
                t: [data.t.re, data.t.im],
                f: OperatorJson::from(&data.f),
                residual: value,
            });
        }
        if best.as_ref().map(|(b, _)| value < *b).unwrap_or(true) {
            best = Some((value, data));
        }
    }
    candidates.sort_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap());
    candidates.truncate(4);
    let best_residual = best.map(|(v, _)| v).unwrap_or(f64::NAN);
    PentagonSearchOutcome {
        trace,
        candidates,
        best_residual,
        note: "multiplicity-free two-label ansatz; candidates below 1e-6".into(),
    }
}

/// Closest unitary to m: polar factor via the Hermitian square root of m†m.
fn unitarize(m: &CMatrix) -> CMatrix {
    let gram = m.adjoint().mul(m);
    let (eigs, w) = hermitian_eigen(&gram);
    let inv_sqrt: Vec<Complex64> = eigs
        .iter()
        .map(|&e| Complex64::new(1.0 / e.max(1e-12).sqrt(), 0.0))
        .collect();
    let h = w.mul(&CMatrix::diagonal(&inv_sqrt)).mul(&w.adjoint());
    m.mul(&h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bratteli::{from_continued_fraction, DigitConvention};
    use crate::quadratic::{cf_expand, QuadraticIrrational};
    use crate::tol;
    use crate::util::fib;

    #[test]
    fn fibonacci_path_counts() {
        let f = FusionSystem::fibonacci();
        for n in 1..=10 {
            let basis = enumerate_paths(&f, n);
            assert_eq!(BigInt::from(basis.dim()), fib(n), "n = {}", n);
            assert_eq!(basis.weighted_count, fib(n));
        }
        // n = 3 explicitly: 3 paths, lexicographic.
        let basis = enumerate_paths(&f, 3);
        assert_eq!(basis.paths, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        // n = 1: one empty path.
        assert_eq!(enumerate_paths(&f, 1).paths, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn weighted_count_matches_bratteli_ranks() {
        // Trace-2 system against the [[2,1],[1,0]] continued-fraction
        // diagram: n anyons ↔ level n−1 totals.
        let silver = QuadraticIrrational::new(1, 1, 2).unwrap();
        let diagram =
            from_continued_fraction(&cf_expand(&silver), 8, DigitConvention::DigitTop).unwrap();
        let sys = FusionSystem::two_label(2);
        for n in 1..=6 {
            let basis = enumerate_paths(&sys, n);
            assert_eq!(
                basis.weighted_count,
                diagram.total_paths(n - 1),
                "n = {}",
                n
            );
        }
    }

    #[test]
    fn golden_pentagon_holds() {
        let d = FRData::golden();
        assert!(pentagon_check(&d) <= tol::PENTAGON);
        assert_eq!(one_label_pentagon_residual(), 0.0);
    }

    #[test]
    fn identity_f_fails_pentagon() {
        let d = FRData::new(Complex64::one(), CMatrix::identity(2), FRData::golden().r);
        assert!(pentagon_check(&d) > 0.1);
    }

    #[test]
    fn golden_hexagon_holds() {
        let d = FRData::golden();
        assert!(hexagon_check(&d) <= tol::PENTAGON);
    }

    #[test]
    fn trivial_r_fails_hexagon() {
        let golden = FRData::golden();
        let d = FRData::new(
            golden.t,
            golden.f.clone(),
            [Complex64::one(), Complex64::one()],
        );
        assert!(hexagon_check(&d) > 0.1);
    }

    #[test]
    fn pentagon_sensitive_to_perturbations() {
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let mut d = FRData::golden();
            d.f[(i, j)] += Complex64::new(1e-3, 0.0);
            assert!(
                pentagon_check(&d) > 1e-4,
                "perturbing F[{i}][{j}] left the residual small"
            );
        }
    }

    #[test]
    fn sigma1_sigma2_on_two_dim_sector() {
        let d = FRData::golden();
        // Total-charge-x₁ sector of 3 anyons is 2-dimensional: paths
        // (0,1) and (1,1), so y₁ ∈ {0,1} indexes the block.
        let basis = enumerate_paths(&FusionSystem::fibonacci(), 3).charge_sector(1);
        assert_eq!(basis.dim(), 2);
        let b1 = braid_generator_in_basis(1, &basis, &d).unwrap();
        assert_eq!(b1[(0, 0)], d.r[0]);
        assert_eq!(b1[(1, 1)], d.r[1]);
        assert_eq!(b1[(0, 1)], Complex64::zero());

        let b2 = braid_generator_in_basis(2, &basis, &d).unwrap();
        let expect = d.f.adjoint().mul(&d.r_matrix()).mul(&d.f);
        assert_eq!(b2.data(), expect.data());
    }

    #[test]
    fn braid_generators_unitary_and_relations() {
        let d = FRData::golden();
        for n in 2..=6 {
            let gens: Vec<CMatrix> = (1..n).map(|i| braid_generator(i, n, &d)).collect();
            for b in &gens {
                assert!(b.unitary_residual() <= tol::UNITARY, "n = {}", n);
            }
            for i in 0..gens.len().saturating_sub(1) {
                let lhs = gens[i].mul(&gens[i + 1]).mul(&gens[i]);
                let rhs = gens[i + 1].mul(&gens[i]).mul(&gens[i + 1]);
                assert!(
                    lhs.sub(&rhs).op_norm() <= tol::BRAID_RELATION,
                    "braid relation failed at i = {}, n = {}",
                    i + 1,
                    n
                );
            }
            for i in 0..gens.len() {
                for j in (i + 2)..gens.len() {
                    let lhs = gens[i].mul(&gens[j]);
                    let rhs = gens[j].mul(&gens[i]);
                    assert!(lhs.sub(&rhs).op_norm() <= tol::FAR_COMMUTATION);
                }
            }
        }
    }

    #[test]
    fn braid_generator_out_of_range_is_identity() {
        let d = FRData::golden();
        let b = braid_generator(5, 3, &d);
        assert_eq!(b, CMatrix::identity(3));
    }

    #[test]
    fn braid_words_compose() {
        let d = FRData::golden();
        let empty = apply_braid_word(&BraidWord::empty(), 4, &d);
        assert_eq!(empty, CMatrix::identity(5));

        // σ₁σ₂σ₁ = σ₂σ₁σ₂ on 3 anyons.
        let w1 = BraidWord::new(vec![(1, 1), (2, 1), (1, 1)]);
        let w2 = BraidWord::new(vec![(2, 1), (1, 1), (2, 1)]);
        let m1 = apply_braid_word(&w1, 3, &d);
        let m2 = apply_braid_word(&w2, 3, &d);
        assert!(m1.sub(&m2).op_norm() <= tol::BRAID_RELATION);

        // Inverses cancel.
        let w = BraidWord::new(vec![(1, 2), (2, -1), (2, 1), (1, -2)]);
        let m = apply_braid_word(&w, 4, &d);
        assert!(m.sub(&CMatrix::identity(5)).op_norm() <= 1e-12);
    }

    #[test]
    fn braid_action_preserves_charge_sectors() {
        // The projector onto the total-charge-x₁ paths commutes with every
        // generator: the representation is the direct sum of its sector
        // blocks.
        let d = FRData::golden();
        for n in 2..=6 {
            let basis = enumerate_paths(&FusionSystem::fibonacci(), n);
            let mut proj = CMatrix::zeros(basis.dim(), basis.dim());
            for idx in 0..basis.dim() {
                if basis.final_charge(idx) == 1 {
                    proj[(idx, idx)] = Complex64::one();
                }
            }
            for i in 1..n {
                let b = braid_generator(i, n, &d);
                let conj = b.mul(&proj).mul(&b.adjoint());
                assert!(conj.sub(&proj).op_norm() <= 1e-12, "i={i}, n={n}");
            }
        }
    }

    #[test]
    fn braid_phases_have_order_ten() {
        // R₁ = e^{4πi/5} has order 5 and R_τ = −e^{2πi/5} order 10, so
        // σ₁^{10} = I; huge exponents reduce through repeated squaring.
        let d = FRData::golden();
        let ten = apply_braid_word(&BraidWord::new(vec![(1, 10)]), 2, &d);
        assert!(ten.sub(&CMatrix::identity(2)).op_norm() <= 1e-12);
        // Repeated squaring doubles the phase error per squaring, so keep
        // the exponent where ~2^20·eps still sits far below the bound.
        let big = apply_braid_word(&BraidWord::new(vec![(1, 1_000_000)]), 2, &d);
        assert!(big.sub(&CMatrix::identity(2)).op_norm() <= 1e-8);
        assert!(big.unitary_residual() <= 1e-10);
    }

    #[test]
    fn conjugation_preserves_trace() {
        let d = FRData::golden();
        let w = BraidWord::new(vec![(1, 1), (2, 2), (3, -1)]);
        let mut m = CMatrix::zeros(5, 5);
        for i in 0..5 {
            for j in 0..5 {
                m[(i, j)] = Complex64::new((i + 2 * j) as f64, (i as f64) - 1.0);
            }
        }
        let conj = conjugate_action(&w, 4, &d, &m);
        assert!((conj.trace() - m.trace()).norm() <= 1e-12);
    }

    #[test]
    fn word_normalization_merges() {
        let w = BraidWord::new(vec![(1, 1), (1, 2), (3, 0), (5, -1), (5, 1)]);
        assert_eq!(w.factors.len(), 1);
        assert_eq!((w.factors[0].gen, w.factors[0].exp), (1, 3));
    }

    #[test]
    fn dimension_function_words() {
        let cf = cf_expand(&QuadraticIrrational::golden());
        let diagram = from_continued_fraction(&cf, 12, DigitConvention::DigitTop).unwrap();
        let f1 = DimensionFunction::f_one(&diagram, 11).unwrap();
        let w = dimension_function_to_braid(&f1, 7).unwrap();
        // Exponents are Fib(0), Fib(1), … = 1, 1, 2, 3, 5, 8, 13, 21.
        let exps: Vec<i64> = (0..8).map(|k| w.abelian_exponent(2 * k + 1)).collect();
        assert_eq!(exps, vec![1, 1, 2, 3, 5, 8, 13, 21]);

        // Additivity: word(f + f') has exponent-wise sums.
        let ft = DimensionFunction::f_tau(&diagram, 11).unwrap();
        let wt = dimension_function_to_braid(&ft, 7).unwrap();
        let sum_word = dimension_function_to_braid(&f1.add(&ft), 7).unwrap();
        for k in 0..8 {
            let gen = 2 * k + 1;
            assert_eq!(
                sum_word.abelian_exponent(gen),
                w.abelian_exponent(gen) + wt.abelian_exponent(gen),
                "σ_{}",
                gen
            );
        }

        // The zero function maps to the empty word.
        let zero =
            DimensionFunction::extend(&diagram, 1, (BigInt::zero(), BigInt::zero()), 11).unwrap();
        let wz = dimension_function_to_braid(&zero, 7).unwrap();
        assert_eq!(wz, BraidWord::empty());
    }

    #[test]
    fn pentagon_search_trace_one_finds_golden_orbit() {
        // Deterministic seed; one of the starts lands in the golden basin
        // and the coordinate descent takes it below the candidate
        // threshold. Candidates are gauge transforms of the golden data:
        // |entries| match, the off-diagonal phase is free.
        let outcome = pentagon_search(1, 11, 8, 2000);
        assert_eq!(outcome.trace, 1);
        assert!(outcome.best_residual < 1e-6, "{}", outcome.best_residual);
        assert!(!outcome.candidates.is_empty());
        let tau = (1.0 + 5.0f64.sqrt()) / 2.0;
        let f = CMatrix::from(&outcome.candidates[0].f);
        assert!((f[(0, 0)].norm() - 1.0 / tau).abs() < 1e-4);
        assert!((f[(0, 1)].norm() - tau.powf(-0.5)).abs() < 1e-4);
    }

    #[test]
    fn pentagon_search_higher_trace_is_empty() {
        let outcome = pentagon_search(2, 11, 4, 50);
        assert!(outcome.candidates.is_empty());
        assert!(outcome.note.contains("multiplicity"));
    }

    #[test]
    fn braid_word_json_shape() {
        let w = BraidWord::new(vec![(1, 1), (3, 2)]);
        let text = serde_json::to_string(&w.factors).unwrap();
        assert_eq!(text, r#"[{"gen":1,"exp":1},{"gen":3,"exp":2}]"#);
    }
}
