//! Dense complex matrices sized for this crate: fusion matrices, braid
//! generators and clock/shift gates, all at most a few hundred rows.
//!
//! Eigen-decompositions go through a complex Hermitian Jacobi sweep; normal
//! matrices (every operator here is a scalar multiple of a unitary) are
//! diagonalized by feeding a random Hermitian combination of the matrix and
//! its adjoint to the same sweep.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::util::SplitMix64;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not diagonalizable to tolerance (residual {residual:.3e})")]
    IllConditioned { residual: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols));
        CMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let conv: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)).collect())
            .collect();
        CMatrix::from_rows(&conv.iter().map(|r| r.as_slice()).collect::<Vec<_>>())
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = CMatrix::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Operator (spectral) norm: √λ_max(A†A) via a Hermitian Jacobi sweep.
    pub fn op_norm(&self) -> f64 {
        if self.data.iter().all(|v| v.norm_sqr() == 0.0) {
            return 0.0;
        }
        let gram = self.adjoint().mul(self);
        let (eigs, _) = hermitian_eigen(&gram);
        eigs.iter().cloned().fold(0.0_f64, f64::max).max(0.0).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn pow(&self, e: u32) -> CMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = CMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Distance from unitarity, ‖A†A − I‖.
    pub fn unitary_residual(&self) -> f64 {
        self.adjoint()
            .mul(self)
            .sub(&CMatrix::identity(self.rows))
            .op_norm()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Reorder columns by `perm` (new column j = old column `perm[j]`).
    pub fn permute_columns(&self, perm: &[usize]) -> CMatrix {
        assert_eq!(perm.len(), self.cols);
        let mut out = CMatrix::zeros(self.rows, self.cols);
        for (newj, &oldj) in perm.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, newj)] = self[(i, oldj)];
            }
        }
        out
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-major export with a shape header, the operator wire format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorJson {
    pub rows: usize,
    pub cols: usize,
    /// Entries as [re, im] pairs in row-major order.
    pub data: Vec<[f64; 2]>,
}

impl From<&CMatrix> for OperatorJson {
    fn from(m: &CMatrix) -> Self {
        OperatorJson {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl From<&OperatorJson> for CMatrix {
    fn from(o: &OperatorJson) -> Self {
        assert_eq!(o.data.len(), o.rows * o.cols);
        CMatrix {
            rows: o.rows,
            cols: o.cols,
            data: o.data.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
        }
    }
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns (eigenvalues, unitary of column eigenvectors), with
/// `A = W · diag(λ) · W†`, eigenvalues in descending order.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let mut w = CMatrix::identity(n);

    let off = |m: &CMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let scale = m.frobenius_norm().max(1.0);
    for _sweep in 0..60 {
        if off(&m) <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.norm() <= 1e-18 * scale {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let abs = apq.norm();
                let phase = apq / abs;
                let tau = (aqq - app) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Two-sided rotation on rows/columns p, q; the same rotation
                // accumulates into the eigenvector matrix w.
                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = c * mip - s * phase.conj() * miq;
                    m[(i, q)] = s * phase * mip + c * miq;
                }
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = c * mpj - s * phase * mqj;
                    m[(q, j)] = s * phase.conj() * mpj + c * mqj;
                }
                for i in 0..n {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    w[(i, p)] = c * wip - s * phase.conj() * wiq;
                    w[(i, q)] = s * phase * wip + c * wiq;
                }
            }
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (m[(i, i)].re, i)).collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let perm: Vec<usize> = pairs.iter().map(|&(_, i)| i).collect();
    let eigs: Vec<f64> = pairs.iter().map(|&(v, _)| v).collect();
    (eigs, w.permute_columns(&perm))
}

/// Unitary diagonalization of a normal matrix.
///
/// Feeds deterministic random Hermitian combinations of (A+A†)/2 and
/// (A−A†)/2i to the Jacobi sweep until the eigenbasis reproduces A; retries
/// break accidental eigenvalue collisions of the combination.
pub fn normal_eigen(a: &CMatrix) -> Result<(Vec<Complex64>, CMatrix), LinalgError> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let scale = a.frobenius_norm().max(1.0);
    let mut rng = SplitMix64::new(0x5eed_1a1b);
    let mut last_residual = f64::INFINITY;

    for _attempt in 0..8 {
        let alpha = 0.5 + rng.next_f64();
        let beta = 0.5 + rng.next_f64();
        let adj = a.adjoint();
        let herm = a.add(&adj).scale(Complex64::new(0.5 * alpha, 0.0));
        let skew = a.sub(&adj).scale(Complex64::new(0.0, -0.5 * beta));
        let combo = herm.add(&skew);
        let (_, w) = hermitian_eigen(&combo);

        let d = w.adjoint().mul(a).mul(&w);
        let mut evs = Vec::with_capacity(n);
        let mut offdiag: f64 = 0.0;
        for i in 0..n {
            evs.push(d[(i, i)]);
            for j in 0..n {
                if i != j {
                    offdiag = offdiag.max(d[(i, j)].norm());
                }
            }
        }
        let residual = offdiag / scale;
        if residual < 1e-11 {
            return Ok((evs, w));
        }
        last_residual = last_residual.min(residual);
    }
    Err(LinalgError::IllConditioned {
        residual: last_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn op_norm_of_unitary_is_one() {
        let f = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!((f.op_norm() - 1.0).abs() < 1e-12);
        assert!(f.unitary_residual() < 1e-12);
    }

    #[test]
    fn hermitian_eigen_2x2() {
        let a = CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 0.0]]);
        let (eigs, w) = hermitian_eigen(&a);
        let tau = (1.0 + 5.0_f64.sqrt()) / 2.0;
        assert!((eigs[0] - tau).abs() < 1e-12);
        assert!((eigs[1] + 1.0 / tau).abs() < 1e-12);
        let lam = CMatrix::diagonal(&[c(eigs[0], 0.0), c(eigs[1], 0.0)]);
        let resid = w.mul(&lam).mul(&w.adjoint()).sub(&a).op_norm();
        assert!(resid < 1e-12);
    }

    #[test]
    fn hermitian_eigen_complex_entries() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
        let a = CMatrix::from_rows(&[
            &[c(2.0, 0.0), c(0.0, 1.0)],
            &[c(0.0, -1.0), c(2.0, 0.0)],
        ]);
        let (eigs, w) = hermitian_eigen(&a);
        assert!((eigs[0] - 3.0).abs() < 1e-12);
        assert!((eigs[1] - 1.0).abs() < 1e-12);
        assert!(w.unitary_residual() < 1e-12);
    }

    #[test]
    fn normal_eigen_diagonalizes_a_shift() {
        // 4×4 cyclic shift: eigenvalues are the 4th roots of unity.
        let mut v = CMatrix::zeros(4, 4);
        for j in 0..4 {
            v[((j + 1) % 4, j)] = c(1.0, 0.0);
        }
        let (evs, w) = normal_eigen(&v).unwrap();
        let lam = CMatrix::diagonal(&evs);
        let resid = w.mul(&lam).mul(&w.adjoint()).sub(&v).op_norm();
        assert!(resid < 1e-10);
        let mut mags: Vec<f64> = evs.iter().map(|z| z.norm()).collect();
        mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(mags.iter().all(|m| (m - 1.0).abs() < 1e-10));
    }

    #[test]
    fn operator_json_round_trip() {
        let f = CMatrix::from_rows(&[&[c(0.5, -1.0), c(0.0, 2.0)], &[c(1.0, 0.0), c(0.0, 0.0)]]);
        let j = OperatorJson::from(&f);
        let back = CMatrix::from(&j);
        assert_eq!(f, back);
    }
}
