//! Bipartite pure states on a 2×d system, their Schmidt decomposition, the
//! canonical frame it induces, and reduced states on the qubit side.
//!
//! Conventions used throughout: the Schmidt coefficient λ lives in [0, 1/2],
//! the reference state reconstructs as √λ|00⟩ + √(1−λ)|11⟩ in the frame's
//! bases, and a separable state (λ = 0) puts its support in the (1,1) slot.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{complete_orthonormal, Matrix2xD};

/// Tolerance for accepting the norm of externally supplied amplitudes; loose
/// enough to admit states round-tripped through decimal JSON.
pub const STATE_NORM_TOL: f64 = 1e-8;

/// Orthonormality tolerance for bases and unitaries handed to this module.
pub const ORTHO_TOL: f64 = 1e-12;

/// A pure state of a 2×d bipartite system, stored as its coefficient matrix
/// in the computational product basis (row = qubit index, column = B index).
#[derive(Debug, Clone, PartialEq)]
pub struct BipartitePureState {
    coeffs: Matrix2xD,
}

impl BipartitePureState {
    /// Validates dimensions and requires the amplitudes to be normalized to
    /// within [`STATE_NORM_TOL`].
    pub fn new(dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let coeffs = Matrix2xD::new(dim_b, amplitudes)?;
        let norm = coeffs.frobenius_norm();
        if norm < 1e-14 {
            return Err(Error::ZeroState);
        }
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { coeffs })
    }

    /// As [`BipartitePureState::new`] but rescales the amplitudes to unit
    /// norm instead of rejecting them.
    pub fn new_normalized(dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let coeffs = Matrix2xD::new(dim_b, amplitudes)?;
        let norm = coeffs.frobenius_norm();
        if norm < 1e-14 {
            return Err(Error::ZeroState);
        }
        let scaled = coeffs.entries().iter().map(|z| z / norm).collect();
        Ok(Self {
            coeffs: Matrix2xD::new(dim_b, scaled)?,
        })
    }

    pub(crate) fn from_matrix(coeffs: Matrix2xD) -> Self {
        Self { coeffs }
    }

    pub fn dim_b(&self) -> usize {
        self.coeffs.dim_b()
    }

    pub fn coeffs(&self) -> &Matrix2xD {
        &self.coeffs
    }

    pub fn amplitude(&self, i: usize, j: usize) -> Complex64 {
        self.coeffs.get(i, j)
    }

    /// Schmidt decomposition: λ is the smaller squared singular value of the
    /// coefficient matrix (hence λ ∈ [0, 1/2]), and the returned frame's
    /// bases carry the corresponding singular directions so that
    /// √λ|00⟩ + √(1−λ)|11⟩ reconstructs this state.
    pub fn schmidt(&self) -> SchmidtForm {
        let svd = self
            .coeffs
            .svd()
            .expect("a validated state has nonzero coefficients");
        let lambda = (svd.s.1 * svd.s.1).clamp(0.0, 0.5);
        // The smaller singular direction takes the 0 slot, the larger the 1
        // slot; for λ = 0 this leaves the state in the (1,1) slot.
        let basis_a = [
            [svd.u[0][1], svd.u[0][0]],
            [svd.u[1][1], svd.u[1][0]],
        ];
        let [v0, v1] = svd.v_rows;
        SchmidtForm {
            lambda,
            basis_a,
            basis_b: [v1, v0],
        }
    }

    /// Reduced state on the qubit side: literal partial-trace sums over the
    /// B index, normalized by their trace to absorb the construction-time
    /// norm slack.
    pub fn reduced_qubit(&self) -> DensityMatrixQubit {
        let r0 = self.coeffs.row(0);
        let r1 = self.coeffs.row(1);
        let p00: f64 = r0.iter().map(|z| z.norm_sqr()).sum();
        let p11: f64 = r1.iter().map(|z| z.norm_sqr()).sum();
        let p01: Complex64 = r0.iter().zip(r1).map(|(a, b)| a * b.conj()).sum();
        let tr = p00 + p11;
        DensityMatrixQubit {
            p00: p00 / tr,
            p11: p11 / tr,
            p01: p01 / tr,
        }
    }

    /// Apply a d×d unitary on the B side: coefficient rows are
    /// right-multiplied by the transpose of `u`.
    pub fn apply_local_unitary_b(&self, u: &[Vec<Complex64>]) -> Result<Self> {
        let d = self.dim_b();
        check_unitary(u, d)?;
        let mut entries = Vec::with_capacity(2 * d);
        for i in 0..2 {
            let row = self.coeffs.row(i);
            for target in u.iter().take(d) {
                entries.push(row.iter().zip(target).map(|(c, m)| c * m).sum());
            }
        }
        let coeffs = Matrix2xD::new(d, entries)?;
        debug_assert!((coeffs.frobenius_norm() - self.coeffs.frobenius_norm()).abs() < 1e-12);
        Ok(Self { coeffs })
    }

    /// Squared overlap of raw coefficient matrices, ⟨self|other⟩.
    pub fn overlap(&self, other: &Self) -> Result<Complex64> {
        if self.dim_b() != other.dim_b() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_b(),
                actual: other.dim_b(),
            });
        }
        Ok(self
            .coeffs
            .entries()
            .iter()
            .zip(other.coeffs.entries())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Schmidt coefficient and the local bases realizing the canonical form
/// √λ|00⟩ + √(1−λ)|11⟩ of some reference state.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtForm {
    lambda: f64,
    /// `basis_a[r][i]` is component r of the A-side basis vector |i⟩.
    basis_a: [[Complex64; 2]; 2],
    /// Two orthonormal d-vectors: the B-side basis vectors |0⟩ and |1⟩.
    basis_b: [Vec<Complex64>; 2],
}

impl SchmidtForm {
    /// Build a frame from explicit bases, validating λ ∈ [0, 1/2] and
    /// orthonormality of both bases to [`ORTHO_TOL`].
    pub fn new(
        lambda: f64,
        basis_a: [[Complex64; 2]; 2],
        basis_b: [Vec<Complex64>; 2],
    ) -> Result<Self> {
        if !(0.0..=0.5).contains(&lambda) {
            return Err(Error::InvalidLambda { lambda });
        }
        if basis_b[0].len() != basis_b[1].len() || basis_b[0].len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: basis_b[0].len().max(2),
                actual: basis_b[1].len(),
            });
        }
        let mut residual: f64 = 0.0;
        for i in 0..2 {
            for k in 0..2 {
                let dot_a: Complex64 = (0..2)
                    .map(|r| basis_a[r][i].conj() * basis_a[r][k])
                    .sum();
                let dot_b: Complex64 = basis_b[i]
                    .iter()
                    .zip(&basis_b[k])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expect = if i == k { 1.0 } else { 0.0 };
                residual = residual
                    .max((dot_a - expect).norm())
                    .max((dot_b - expect).norm());
            }
        }
        if residual > ORTHO_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self {
            lambda,
            basis_a,
            basis_b,
        })
    }

    /// The frame whose bases are the computational ones: basis A is the
    /// identity and basis B holds the first two computational vectors.
    pub fn computational(lambda: f64, dim_b: usize) -> Result<Self> {
        if !(0.0..=0.5).contains(&lambda) {
            return Err(Error::InvalidLambda { lambda });
        }
        if dim_b < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: dim_b,
            });
        }
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut b0 = vec![zero; dim_b];
        let mut b1 = vec![zero; dim_b];
        b0[0] = one;
        b1[1] = one;
        Ok(Self {
            lambda,
            basis_a: [[one, zero], [zero, one]],
            basis_b: [b0, b1],
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn dim_b(&self) -> usize {
        self.basis_b[0].len()
    }

    pub fn basis_a(&self) -> &[[Complex64; 2]; 2] {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &[Vec<Complex64>; 2] {
        &self.basis_b
    }

    /// The state this frame encodes: √λ|00⟩ + √(1−λ)|11⟩.
    pub fn reconstruct(&self) -> BipartitePureState {
        let d = self.dim_b();
        let (r0, r1) = (self.lambda.sqrt(), (1.0 - self.lambda).sqrt());
        let mut entries = vec![Complex64::new(0.0, 0.0); 2 * d];
        for r in 0..2 {
            for s in 0..d {
                entries[r * d + s] =
                    r0 * self.basis_a[r][0] * self.basis_b[0][s] + r1 * self.basis_a[r][1] * self.basis_b[1][s];
            }
        }
        BipartitePureState::from_matrix(
            Matrix2xD::new(d, entries).expect("frame dimensions are valid"),
        )
    }

    /// Coefficients of `phi` in this frame's product basis, with the B basis
    /// extended to all d columns by deterministic completion.
    pub fn express(&self, phi: &BipartitePureState) -> Result<Matrix2xD> {
        let d = self.dim_b();
        if phi.dim_b() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: phi.dim_b(),
            });
        }
        let full_b = self.completed_basis_b();
        // Contract the A side first: t[i][s] = Σ_r conj(A[r][i])·Φ[r][s].
        let mut t = vec![Complex64::new(0.0, 0.0); 2 * d];
        for i in 0..2 {
            for s in 0..d {
                t[i * d + s] = self.basis_a[0][i].conj() * phi.amplitude(0, s)
                    + self.basis_a[1][i].conj() * phi.amplitude(1, s);
            }
        }
        let mut entries = Vec::with_capacity(2 * d);
        for i in 0..2 {
            for bj in &full_b {
                entries.push(
                    bj.iter()
                        .zip(&t[i * d..(i + 1) * d])
                        .map(|(b, v)| b.conj() * v)
                        .sum(),
                );
            }
        }
        Matrix2xD::new(d, entries)
    }

    /// Inverse of [`SchmidtForm::express`]: build the computational-basis
    /// state whose frame coefficients are `c`.
    pub fn embed(&self, c: &Matrix2xD) -> Result<BipartitePureState> {
        let d = self.dim_b();
        if c.dim_b() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: c.dim_b(),
            });
        }
        let full_b = self.completed_basis_b();
        let mut entries = vec![Complex64::new(0.0, 0.0); 2 * d];
        for i in 0..2 {
            for (j, bj) in full_b.iter().enumerate() {
                let cij = c.get(i, j);
                if cij.norm_sqr() == 0.0 {
                    continue;
                }
                for r in 0..2 {
                    let a = self.basis_a[r][i];
                    for s in 0..d {
                        entries[r * d + s] += cij * a * bj[s];
                    }
                }
            }
        }
        let coeffs = Matrix2xD::new(d, entries)?;
        let norm = coeffs.frobenius_norm();
        if norm < 1e-14 {
            return Err(Error::ZeroState);
        }
        Ok(BipartitePureState::from_matrix(coeffs))
    }

    fn completed_basis_b(&self) -> Vec<Vec<Complex64>> {
        let mut full = vec![self.basis_b[0].clone(), self.basis_b[1].clone()];
        complete_orthonormal(&mut full, self.dim_b());
        full
    }
}

/// A 2×2 density matrix: Hermitian, positive semidefinite, unit trace.
/// `p01` is the (0,1) entry; the (1,0) entry is implicitly its conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrixQubit {
    pub p00: f64,
    pub p11: f64,
    pub p01: Complex64,
}

impl DensityMatrixQubit {
    pub fn new(p00: f64, p11: f64, p01: Complex64) -> Result<Self> {
        if !(p00.is_finite() && p11.is_finite() && p01.re.is_finite() && p01.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if (p00 + p11 - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDensity(format!(
                "trace {} deviates from 1",
                p00 + p11
            )));
        }
        if p00 < -1e-12 || p11 < -1e-12 {
            return Err(Error::InvalidDensity(format!(
                "negative diagonal ({p00}, {p11})"
            )));
        }
        let det = p00 * p11 - p01.norm_sqr();
        if det < -1e-12 {
            return Err(Error::InvalidDensity(format!("negative determinant {det}")));
        }
        Ok(Self { p00, p11, p01 })
    }

    pub fn determinant(&self) -> f64 {
        self.p00 * self.p11 - self.p01.norm_sqr()
    }
}

fn check_unitary(u: &[Vec<Complex64>], d: usize) -> Result<()> {
    if u.len() != d || u.iter().any(|row| row.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: u.len(),
        });
    }
    let mut residual: f64 = 0.0;
    for a in 0..d {
        for b in a..d {
            let dot: Complex64 = (0..d).map(|r| u[r][a].conj() * u[r][b]).sum();
            let expect = if a == b { 1.0 } else { 0.0 };
            residual = residual.max((dot - expect).norm());
        }
    }
    if residual > ORTHO_TOL {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cr(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    pub(crate) fn epr_plus() -> BipartitePureState {
        let s = 0.5f64.sqrt();
        BipartitePureState::new(2, vec![cr(s), cr(0.0), cr(0.0), cr(s)]).unwrap()
    }

    pub(crate) fn epr_minus() -> BipartitePureState {
        let s = 0.5f64.sqrt();
        BipartitePureState::new(2, vec![cr(s), cr(0.0), cr(0.0), cr(-s)]).unwrap()
    }

    #[test]
    fn construct_basis_state() {
        let st = BipartitePureState::new(2, vec![cr(1.0), cr(0.0), cr(0.0), cr(0.0)]).unwrap();
        assert_eq!(st.dim_b(), 2);
        assert_eq!(st.amplitude(0, 0), cr(1.0));
    }

    #[test]
    fn construct_epr_pair() {
        let st = epr_plus();
        assert!((st.coeffs().frobenius_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reject_unnormalized_without_flag() {
        let err = BipartitePureState::new(2, vec![cr(1.0), cr(0.0), cr(0.0), cr(1.0)]);
        assert!(matches!(err, Err(Error::NotNormalized { .. })));
        // the normalizing constructor accepts the same amplitudes
        let ok =
            BipartitePureState::new_normalized(2, vec![cr(1.0), cr(0.0), cr(0.0), cr(1.0)])
                .unwrap();
        assert!((ok.amplitude(0, 0).re - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn reject_dimension_mismatch_and_zero() {
        assert!(matches!(
            BipartitePureState::new(2, vec![cr(1.0); 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            BipartitePureState::new(2, vec![cr(0.0); 4]),
            Err(Error::ZeroState)
        ));
        assert!(matches!(
            BipartitePureState::new(2, vec![cr(f64::NAN), cr(0.0), cr(0.0), cr(0.0)]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn schmidt_of_product_state_is_zero() {
        let st = BipartitePureState::new(2, vec![cr(1.0), cr(0.0), cr(0.0), cr(0.0)]).unwrap();
        let f = st.schmidt();
        assert_eq!(f.lambda(), 0.0);
        assert_close_states(&f.reconstruct(), &st, 1e-12);
    }

    #[test]
    fn schmidt_of_epr_is_half() {
        let f = epr_plus().schmidt();
        assert!((f.lambda() - 0.5).abs() < 1e-15);
        assert_close_states(&f.reconstruct(), &epr_plus(), 1e-12);
    }

    #[test]
    fn schmidt_diagonal_coefficients() {
        let st = BipartitePureState::new(2, vec![cr(0.8), cr(0.0), cr(0.0), cr(0.6)]).unwrap();
        let f = st.schmidt();
        // squared singular values 0.64 and 0.36; the smaller becomes λ
        assert!((f.lambda() - 0.36).abs() < 1e-14);
        assert_close_states(&f.reconstruct(), &st, 1e-12);
    }

    #[test]
    fn express_self_reproduces_schmidt_pattern() {
        let st = BipartitePureState::new(2, vec![cr(0.8), cr(0.0), cr(0.0), cr(0.6)]).unwrap();
        let f = st.schmidt();
        let c = f.express(&st).unwrap();
        assert!((c.get(0, 0) - cr(f.lambda().sqrt())).norm() < 1e-12);
        assert!((c.get(1, 1) - cr((1.0 - f.lambda()).sqrt())).norm() < 1e-12);
        assert!(c.get(0, 1).norm() < 1e-12);
        assert!(c.get(1, 0).norm() < 1e-12);
    }

    #[test]
    fn express_epr_minus_in_epr_plus_frame() {
        let f = epr_plus().schmidt();
        let c = f.express(&epr_minus()).unwrap();
        let s = 0.5f64.sqrt();
        assert!((c.get(0, 0).norm() - s).abs() < 1e-12);
        assert!((c.get(1, 1).norm() - s).abs() < 1e-12);
        assert!(c.get(0, 1).norm() < 1e-12);
        assert!(c.get(1, 0).norm() < 1e-12);
        // The phase-invariant content: the diagonal product is −1/2.
        let z = c.get(0, 0) * c.get(1, 1).conj();
        assert!((z.re + 0.5).abs() < 1e-12);
        assert!(z.im.abs() < 1e-12);
    }

    #[test]
    fn express_state_supported_outside_frame_vectors() {
        // ψ lives on B columns {0,1}; φ on column 2 only, so its frame
        // coefficients sit in completion columns j ≥ 2.
        let psi = BipartitePureState::new(
            3,
            vec![cr(0.6), cr(0.0), cr(0.0), cr(0.0), cr(0.8), cr(0.0)],
        )
        .unwrap();
        let phi = BipartitePureState::new(
            3,
            vec![cr(0.0), cr(0.0), cr(1.0), cr(0.0), cr(0.0), cr(0.0)],
        )
        .unwrap();
        let f = psi.schmidt();
        let c = f.express(&phi).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(c.get(i, j).norm() < 1e-12, "({i},{j}) should vanish");
            }
        }
        let tail: f64 = (0..2).map(|i| c.get(i, 2).norm_sqr()).sum();
        assert!((tail - 1.0).abs() < 1e-12);
    }

    #[test]
    fn embed_inverts_express() {
        let psi = BipartitePureState::new_normalized(
            3,
            vec![c(0.3, 0.1), c(0.0, -0.4), cr(0.2), cr(0.5), c(0.1, 0.6), cr(0.0)],
        )
        .unwrap();
        let phi = BipartitePureState::new_normalized(
            3,
            vec![cr(0.1), c(0.2, 0.2), cr(0.3), c(-0.4, 0.1), cr(0.5), c(0.0, 0.6)],
        )
        .unwrap();
        let f = psi.schmidt();
        let cm = f.express(&phi).unwrap();
        let back = f.embed(&cm).unwrap();
        assert_close_states(&back, &phi, 1e-12);
    }

    #[test]
    fn reduced_of_basis_state() {
        let st = BipartitePureState::new(2, vec![cr(1.0), cr(0.0), cr(0.0), cr(0.0)]).unwrap();
        let rho = st.reduced_qubit();
        assert_eq!((rho.p00, rho.p11), (1.0, 0.0));
        assert_eq!(rho.p01, cr(0.0));
    }

    #[test]
    fn reduced_of_epr_is_maximally_mixed() {
        let rho = epr_plus().reduced_qubit();
        assert!((rho.p00 - 0.5).abs() < 1e-15);
        assert!((rho.p11 - 0.5).abs() < 1e-15);
        assert!(rho.p01.norm() < 1e-15);
    }

    #[test]
    fn reduced_diagonal_sums() {
        let st = BipartitePureState::new(2, vec![cr(0.6), cr(0.0), cr(0.0), cr(0.8)]).unwrap();
        let rho = st.reduced_qubit();
        assert!((rho.p00 - 0.36).abs() < 1e-15);
        assert!((rho.p11 - 0.64).abs() < 1e-15);
    }

    #[test]
    fn unitary_identity_is_noop() {
        let st = epr_plus();
        let u = vec![vec![cr(1.0), cr(0.0)], vec![cr(0.0), cr(1.0)]];
        let moved = st.apply_local_unitary_b(&u).unwrap();
        assert_close_states(&moved, &st, 0.0);
    }

    #[test]
    fn unitary_swap_permutes_columns() {
        let st = epr_plus();
        let u = vec![vec![cr(0.0), cr(1.0)], vec![cr(1.0), cr(0.0)]];
        let moved = st.apply_local_unitary_b(&u).unwrap();
        let s = 0.5f64.sqrt();
        assert!((moved.amplitude(0, 1) - cr(s)).norm() < 1e-15);
        assert!((moved.amplitude(1, 0) - cr(s)).norm() < 1e-15);
        assert!(moved.amplitude(0, 0).norm() < 1e-15);
        assert!(moved.amplitude(1, 1).norm() < 1e-15);
    }

    #[test]
    fn non_unitary_rejected() {
        let st = epr_plus();
        let u = vec![vec![cr(1.0), cr(0.0)], vec![cr(0.0), cr(2.0)]];
        assert!(matches!(
            st.apply_local_unitary_b(&u),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrixQubit::new(0.5, 0.5, cr(0.5)).is_ok());
        assert!(matches!(
            DensityMatrixQubit::new(0.5, 0.5, cr(0.6)),
            Err(Error::InvalidDensity(_))
        ));
        assert!(matches!(
            DensityMatrixQubit::new(0.8, 0.1, cr(0.0)),
            Err(Error::InvalidDensity(_))
        ));
    }

    #[test]
    fn separable_reference_lands_in_slot_one_one() {
        // |11⟩ must come back as exactly the computational frame.
        let psi = BipartitePureState::new(2, vec![cr(0.0), cr(0.0), cr(0.0), cr(1.0)]).unwrap();
        let f = psi.schmidt();
        assert_eq!(f.lambda(), 0.0);
        let expect = SchmidtForm::computational(0.0, 2).unwrap();
        for r in 0..2 {
            for i in 0..2 {
                assert!((f.basis_a()[r][i] - expect.basis_a()[r][i]).norm() < 1e-14);
            }
        }
        for k in 0..2 {
            for s in 0..2 {
                assert!((f.basis_b()[k][s] - expect.basis_b()[k][s]).norm() < 1e-14);
            }
        }
    }

    pub(crate) fn assert_close_states(a: &BipartitePureState, b: &BipartitePureState, tol: f64) {
        assert_eq!(a.dim_b(), b.dim_b());
        for (x, y) in a.coeffs().entries().iter().zip(b.coeffs().entries()) {
            assert!((x - y).norm() <= tol, "entries differ: {x} vs {y}");
        }
    }
}
