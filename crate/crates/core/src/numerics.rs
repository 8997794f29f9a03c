//! Dense complex linear algebra at the small fixed sizes the library needs:
//! 2×2 Hermitian eigensystems, singular value decomposition of 2×d
//! coefficient matrices via the 2×2 Gram matrix, and a definition-path
//! Uhlmann fidelity used as an independent oracle for the closed forms.
//!
//! System A is fixed at dimension 2 throughout; only system B carries the
//! free dimension d ≥ 2.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::DensityMatrixQubit;

/// Frobenius norms below this are treated as the zero matrix.
pub const ZERO_MATRIX_EPS: f64 = 1e-14;

/// Singular values closer than this are handled by the degenerate branch.
const DEGENERATE_GAP: f64 = 1e-12;

/// Relative cutoff below which a singular direction is treated as rank
/// deficient and its right vector is completed instead of derived.
const RANK_EPS: f64 = 1e-13;

/// A 2×2 Hermitian operator stored as its two real diagonal entries and the
/// upper off-diagonal entry; the lower one is implicitly the conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianQubitOperator {
    pub a00: f64,
    pub a11: f64,
    pub a01: Complex64,
}

/// Eigenvalues and an orthonormal eigenbasis of a 2×2 Hermitian operator.
#[derive(Debug, Clone, Copy)]
pub struct EigenSystem2 {
    pub plus: f64,
    pub minus: f64,
    pub vec_plus: [Complex64; 2],
    pub vec_minus: [Complex64; 2],
}

impl HermitianQubitOperator {
    pub fn new(a00: f64, a11: f64, a01: Complex64) -> Self {
        Self { a00, a11, a01 }
    }

    /// Eigenvalue pair (plus ≥ minus).
    ///
    /// plus + minus = a00 + a11 and plus·minus = a00·a11 − |a01|²; the
    /// discriminant (a00−a11)² + 4|a01|² is non-negative by construction, so
    /// the computation is total.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let tr = self.a00 + self.a11;
        let delta = self.a00 - self.a11;
        let disc = (delta * delta + 4.0 * self.a01.norm_sqr()).sqrt();
        ((tr + disc) / 2.0, (tr - disc) / 2.0)
    }

    /// Eigenvalues plus a phase-fixed orthonormal eigenbasis.
    pub fn eigensystem(&self) -> EigenSystem2 {
        let (plus, minus) = self.eigenvalues();
        let b = self.a01;
        // Two algebraically equivalent eigenvector candidates; picking the
        // larger avoids cancellation when one diagonal entry sits near plus.
        let c1 = [b, Complex64::new(plus - self.a00, 0.0)];
        let c2 = [Complex64::new(plus - self.a11, 0.0), b.conj()];
        let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
        let n2 = c2[0].norm_sqr() + c2[1].norm_sqr();
        let mut vp = if n1 >= n2 { c1 } else { c2 };
        let norm = n1.max(n2).sqrt();
        if norm == 0.0 {
            // Scalar matrix: any orthonormal basis is an eigenbasis.
            return EigenSystem2 {
                plus,
                minus,
                vec_plus: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                vec_minus: [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            };
        }
        vp[0] /= norm;
        vp[1] /= norm;
        fix_phase(&mut vp);
        let mut vm = [-vp[1].conj(), vp[0].conj()];
        fix_phase(&mut vm);
        EigenSystem2 {
            plus,
            minus,
            vec_plus: vp,
            vec_minus: vm,
        }
    }
}

/// A 2×d complex matrix, row-major: row = system-A index i ∈ {0,1},
/// column = system-B index j ∈ {0,…,d−1}.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix2xD {
    dim_b: usize,
    entries: Vec<Complex64>,
}

impl Matrix2xD {
    /// Entry count must equal 2·dim_b, dim_b ≥ 2, and every component must
    /// be finite.
    pub fn new(dim_b: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim_b < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: dim_b,
            });
        }
        if entries.len() != 2 * dim_b {
            return Err(Error::DimensionMismatch {
                expected: 2 * dim_b,
                actual: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim_b, entries })
    }

    pub fn from_rows(row0: &[Complex64], row1: &[Complex64]) -> Result<Self> {
        if row0.len() != row1.len() {
            return Err(Error::DimensionMismatch {
                expected: row0.len(),
                actual: row1.len(),
            });
        }
        let mut entries = Vec::with_capacity(2 * row0.len());
        entries.extend_from_slice(row0);
        entries.extend_from_slice(row1);
        Self::new(row0.len(), entries)
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim_b + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.dim_b..(i + 1) * self.dim_b]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Gram matrix C·C† of the two rows.
    pub fn gram(&self) -> HermitianQubitOperator {
        let r0 = self.row(0);
        let r1 = self.row(1);
        let g00: f64 = r0.iter().map(|z| z.norm_sqr()).sum();
        let g11: f64 = r1.iter().map(|z| z.norm_sqr()).sum();
        let g01: Complex64 = r0.iter().zip(r1).map(|(a, b)| a * b.conj()).sum();
        HermitianQubitOperator::new(g00, g11, g01)
    }

    /// ℓ₂ norm of the 2×2 minors, which equals the product s0·s1 of the
    /// singular values. Unlike the Gram determinant this involves no
    /// large-term cancellation, so it resolves s1 all the way down to the
    /// roundoff floor for near-rank-1 matrices.
    fn minor_norm(&self) -> f64 {
        let r0 = self.row(0);
        let r1 = self.row(1);
        let mut acc = 0.0;
        for j in 1..self.dim_b {
            for l in 0..j {
                acc += (r0[j] * r1[l] - r0[l] * r1[j]).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Singular value decomposition C = U·diag(s0,s1)·V†, computed from the
    /// eigensystem of the 2×2 Gram matrix C·C†.
    ///
    /// `u[r][k]` holds component r of the k-th left singular vector and
    /// `v_rows[k]` is the k-th row of V† (so `C[i][j] = Σ_k s_k·u[i][k]·
    /// v_rows[k][j]`), with s0 ≥ s1 ≥ 0. Degenerate singular values take
    /// their right vectors from Gram-Schmidt on the rows of C in row order;
    /// a vanishing second singular value takes its right vector from the
    /// computational-basis completion.
    pub fn svd(&self) -> Result<Svd2xD> {
        // Work on a copy scaled by the largest entry magnitude: the Gram
        // sums square the entries and the minor norm squares them twice, so
        // raw magnitudes beyond ~1e76 would overflow (and tiny ones
        // underflow the rank detection). Singular vectors are
        // scale-invariant; the singular values scale back linearly.
        let peak = self
            .entries
            .iter()
            .map(|z| z.re.abs().max(z.im.abs()))
            .fold(0.0f64, f64::max);
        if peak == 0.0 {
            return Err(Error::ZeroMatrix);
        }
        let scaled = Self {
            dim_b: self.dim_b,
            entries: self.entries.iter().map(|z| z / peak).collect(),
        };
        let fnorm = scaled.frobenius_norm();
        if fnorm * peak < ZERO_MATRIX_EPS {
            return Err(Error::ZeroMatrix);
        }
        let mut svd = scaled.svd_unit_scale(fnorm)?;
        svd.s.0 *= peak;
        svd.s.1 *= peak;
        Ok(svd)
    }

    /// The decomposition proper, on a matrix whose largest entry component
    /// has magnitude 1.
    fn svd_unit_scale(&self, fnorm: f64) -> Result<Svd2xD> {
        let eig = self.gram().eigensystem();
        let mu0 = eig.plus.max(0.0);
        let s0 = mu0.sqrt();
        // (tr − disc)/2 loses half the digits once mu1 ≪ mu0; the minor
        // route s1 = (s0·s1)/s0 stays accurate down to the roundoff floor.
        let s1 = (self.minor_norm() / s0).min(s0);

        if (s0 - s1).abs() < DEGENERATE_GAP {
            return self.svd_degenerate(s0, s1);
        }

        let u_cols = [eig.vec_plus, eig.vec_minus];
        let svals = [s0, s1];
        let mut v_rows: Vec<Vec<Complex64>> = Vec::with_capacity(2);
        for u_k in &u_cols {
            // k-th row of V† is u_k† C rescaled to unit norm.
            let mut row: Vec<Complex64> = (0..self.dim_b)
                .map(|j| u_k[0].conj() * self.get(0, j) + u_k[1].conj() * self.get(1, j))
                .collect();
            let norm = vec_norm(&row);
            if norm <= RANK_EPS * fnorm {
                // Rank-deficient direction: any unit vector orthogonal to
                // the rows already collected is valid.
                row = complete_one(&v_rows, self.dim_b);
                fix_phase(&mut row);
            } else {
                scale(&mut row, 1.0 / norm);
                for prev in &v_rows {
                    project_out(&mut row, prev);
                }
                let n = vec_norm(&row);
                scale(&mut row, 1.0 / n);
            }
            v_rows.push(row);
        }
        let v1 = v_rows.pop().expect("two rows");
        let v0 = v_rows.pop().expect("two rows");
        Ok(Svd2xD {
            u: [
                [u_cols[0][0], u_cols[1][0]],
                [u_cols[0][1], u_cols[1][1]],
            ],
            s: (svals[0], svals[1]),
            v_rows: [v0, v1],
        })
    }

    fn svd_degenerate(&self, s0: f64, s1: f64) -> Result<Svd2xD> {
        // Equal singular values: the rows of C are orthogonal with equal
        // norms; orthonormalizing them in row order gives a deterministic
        // right basis, and the left vectors follow from C.
        let mut v_rows: Vec<Vec<Complex64>> = Vec::with_capacity(2);
        for i in 0..2 {
            let mut row = self.row(i).to_vec();
            for prev in &v_rows {
                project_out(&mut row, prev);
            }
            let n = vec_norm(&row);
            if n <= RANK_EPS {
                row = complete_one(&v_rows, self.dim_b);
            } else {
                scale(&mut row, 1.0 / n);
            }
            fix_phase(&mut row);
            v_rows.push(row);
        }
        let svals = [s0, s1];
        let mut u = [[Complex64::new(0.0, 0.0); 2]; 2];
        for k in 0..2 {
            let mut col = [Complex64::new(0.0, 0.0); 2];
            for (r, c) in col.iter_mut().enumerate() {
                *c = (0..self.dim_b)
                    .map(|j| self.get(r, j) * v_rows[k][j].conj())
                    .sum::<Complex64>()
                    / svals[k];
            }
            let n = (col[0].norm_sqr() + col[1].norm_sqr()).sqrt();
            col[0] /= n;
            col[1] /= n;
            if k == 1 {
                // Re-orthogonalize against column 0.
                let overlap = u[0][0].conj() * col[0] + u[1][0].conj() * col[1];
                col[0] -= overlap * u[0][0];
                col[1] -= overlap * u[1][0];
                let n = (col[0].norm_sqr() + col[1].norm_sqr()).sqrt();
                col[0] /= n;
                col[1] /= n;
            }
            u[0][k] = col[0];
            u[1][k] = col[1];
        }
        let v1 = v_rows.pop().expect("two rows");
        let v0 = v_rows.pop().expect("two rows");
        Ok(Svd2xD {
            u,
            s: (svals[0], svals[1]),
            v_rows: [v0, v1],
        })
    }
}

/// Result of [`Matrix2xD::svd`].
#[derive(Debug, Clone)]
pub struct Svd2xD {
    /// 2×2 unitary; column k is the k-th left singular vector.
    pub u: [[Complex64; 2]; 2],
    /// Singular values, s.0 ≥ s.1 ≥ 0.
    pub s: (f64, f64),
    /// Rows of V†: two orthonormal d-vectors.
    pub v_rows: [Vec<Complex64>; 2],
}

impl Svd2xD {
    pub fn s_at(&self, k: usize) -> f64 {
        match k {
            0 => self.s.0,
            _ => self.s.1,
        }
    }
}

/// Uhlmann fidelity F(ρ,σ) = (Tr √(√ρ σ √ρ))² for qubit density matrices,
/// computed on the definition path via explicit eigendecompositions. Serves
/// as the independent oracle for the closed-form local fidelity.
pub fn uhlmann_fidelity(rho: &DensityMatrixQubit, sigma: &DensityMatrixQubit) -> f64 {
    let eig = HermitianQubitOperator::new(rho.p00, rho.p11, rho.p01).eigensystem();
    let w0 = eig.plus.max(0.0).sqrt();
    let w1 = eig.minus.max(0.0).sqrt();
    // √ρ = W diag(√w) W†
    let mut sqrt_rho = [[Complex64::new(0.0, 0.0); 2]; 2];
    let cols = [eig.vec_plus, eig.vec_minus];
    let roots = [w0, w1];
    for r in 0..2 {
        for c in 0..2 {
            sqrt_rho[r][c] = (0..2)
                .map(|k| roots[k] * cols[k][r] * cols[k][c].conj())
                .sum();
        }
    }
    let sig = [
        [Complex64::new(sigma.p00, 0.0), sigma.p01],
        [sigma.p01.conj(), Complex64::new(sigma.p11, 0.0)],
    ];
    let a = mat2_mul(&sqrt_rho, &sig);
    let t = mat2_mul(&a, &sqrt_rho);
    let (tp, _) = HermitianQubitOperator::new(t[0][0].re, t[1][1].re, t[0][1]).eigenvalues();
    let tp = tp.max(0.0);
    // The small eigenvalue through (tr − disc)/2 loses half its digits when
    // either state is close to pure; the sandwich preserves determinants,
    // so t₋ = det(ρ)·det(σ)/t₊ stays accurate.
    let det_t = rho.determinant().max(0.0) * sigma.determinant().max(0.0);
    let tm = if tp > 0.0 { det_t / tp } else { 0.0 };
    let f = (tp.sqrt() + tm.sqrt()).powi(2);
    f.clamp(0.0, 1.0)
}

fn mat2_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

/// Rotate a vector by a global phase so its largest-magnitude entry is real
/// and non-negative; ties break toward the lowest index.
pub(crate) fn fix_phase(v: &mut [Complex64]) {
    let mut idx = 0;
    let mut best = 0.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm_sqr();
        if m > best {
            best = m;
            idx = i;
        }
    }
    let m = v[idx].norm();
    if m > 0.0 {
        let phase = v[idx] / m;
        let rot = phase.conj();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
}

pub(crate) fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn scale(v: &mut [Complex64], f: f64) {
    for z in v.iter_mut() {
        *z *= f;
    }
}

/// Subtract the projection of `v` onto the unit vector `onto`.
pub(crate) fn project_out(v: &mut [Complex64], onto: &[Complex64]) {
    let overlap: Complex64 = onto.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
    for (z, o) in v.iter_mut().zip(onto) {
        *z -= overlap * o;
    }
}

/// Extend an orthonormal set to `dim` vectors by Gram-Schmidt over the
/// computational basis in index order, skipping near-dependent candidates
/// (threshold 1e-8, with a 1e-13 fallback sweep). Each appended vector is
/// phase-fixed.
pub(crate) fn complete_orthonormal(basis: &mut Vec<Vec<Complex64>>, dim: usize) {
    for threshold in [1e-8, 1e-13] {
        for j in 0..dim {
            if basis.len() == dim {
                return;
            }
            let mut cand = vec![Complex64::new(0.0, 0.0); dim];
            cand[j] = Complex64::new(1.0, 0.0);
            for b in basis.iter() {
                project_out(&mut cand, b);
            }
            let n = vec_norm(&cand);
            if n > threshold {
                scale(&mut cand, 1.0 / n);
                // second pass tightens orthogonality
                for b in basis.iter() {
                    project_out(&mut cand, b);
                }
                let n = vec_norm(&cand);
                scale(&mut cand, 1.0 / n);
                fix_phase(&mut cand);
                basis.push(cand);
            }
        }
    }
    assert!(
        basis.len() == dim,
        "orthonormal completion failed: {} of {dim} vectors",
        basis.len()
    );
}

/// One unit vector of dimension `dim` orthogonal to everything in `basis`.
fn complete_one(basis: &[Vec<Complex64>], dim: usize) -> Vec<Complex64> {
    for threshold in [1e-8, 1e-13] {
        for j in 0..dim {
            let mut cand = vec![Complex64::new(0.0, 0.0); dim];
            cand[j] = Complex64::new(1.0, 0.0);
            for b in basis {
                project_out(&mut cand, b);
            }
            let n = vec_norm(&cand);
            if n > threshold {
                scale(&mut cand, 1.0 / n);
                for b in basis {
                    project_out(&mut cand, b);
                }
                let n = vec_norm(&cand);
                scale(&mut cand, 1.0 / n);
                return cand;
            }
        }
    }
    unreachable!("fewer than dim orthonormal vectors always leave room for one more")
}
