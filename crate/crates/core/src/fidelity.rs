//! Global and local fidelity of a pure state pair.
//!
//! The global fidelity is the squared overlap |⟨ψ|φ⟩|². The local fidelity
//! — the fidelity of the two reduced qubit states — admits a closed form in
//! ψ's Schmidt frame:
//!
//!   F_local = λ·Σ|c0j|² + 2√(λ(1−λ))·√(Σ_{j>l}|c0j·c1l − c0l·c1j|²)
//!           + (1−λ)·Σ|c1j|²
//!
//! where λ is ψ's Schmidt coefficient and c are φ's frame coefficients. The
//! middle radicand equals (Σ|c0j|²)(Σ|c1j|²) − |Σ c0j·c1j*|² (both sides of
//! that identity are exposed in [`gram_identity_sides`]).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::Matrix2xD;
use crate::states::BipartitePureState;

/// Column count up to which the antisymmetrized O(d²) middle term is
/// evaluated literally; beyond it the equivalent O(d) Gram form is used.
const ANTISYM_DIRECT_MAX: usize = 32;

/// Both fidelities of a state pair; `global ≤ local` up to roundoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityPair {
    pub global: f64,
    pub local: f64,
}

impl FidelityPair {
    pub fn compute(psi: &BipartitePureState, phi: &BipartitePureState) -> Result<Self> {
        Ok(Self {
            global: global_fidelity(psi, phi)?,
            local: local_fidelity(psi, phi)?,
        })
    }

    pub fn gap(&self) -> f64 {
        self.local - self.global
    }
}

/// |⟨ψ|φ⟩|², the fidelity on the full bipartite system.
pub fn global_fidelity(psi: &BipartitePureState, phi: &BipartitePureState) -> Result<f64> {
    let overlap = psi.overlap(phi)?;
    Ok(overlap.norm_sqr().clamp(0.0, 1.0))
}

/// Fidelity of the reduced qubit states, evaluated through ψ's Schmidt frame
/// and the qubit closed form a00 + a11 + 2√(a00·a11 − |a01|²), with
/// a00 = λ·⟨0|ρ_φ|0⟩, a01 = √(λ(1−λ))·⟨0|ρ_φ|1⟩, a11 = (1−λ)·⟨1|ρ_φ|1⟩.
pub fn local_fidelity(psi: &BipartitePureState, phi: &BipartitePureState) -> Result<f64> {
    if psi.dim_b() != phi.dim_b() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim_b(),
            actual: phi.dim_b(),
        });
    }
    let frame = psi.schmidt();
    let c = frame.express(phi)?;
    Ok(local_fidelity_a_chain(frame.lambda(), &c))
}

/// Core of [`local_fidelity`] once λ and the frame coefficients are known:
/// build a00, a01, a11 from the reduced-state matrix elements and apply the
/// qubit closed form a00 + a11 + 2√(a00·a11 − |a01|²).
pub(crate) fn local_fidelity_a_chain(lam: f64, c: &Matrix2xD) -> f64 {
    let r0 = c.row(0);
    let r1 = c.row(1);
    let q00: f64 = r0.iter().map(|z| z.norm_sqr()).sum();
    let q11: f64 = r1.iter().map(|z| z.norm_sqr()).sum();
    let q01: Complex64 = r0.iter().zip(r1).map(|(a, b)| a * b.conj()).sum();
    let a00 = lam * q00;
    let a11 = (1.0 - lam) * q11;
    let a01_sq = lam * (1.0 - lam) * q01.norm_sqr();
    let det = a00 * a11 - a01_sq;
    debug_assert!(det > -1e-12, "PSD determinant out of range: {det}");
    (a00 + a11 + 2.0 * det.max(0.0).sqrt()).clamp(0.0, 1.0)
}

/// The local-fidelity closed form evaluated directly from λ and frame
/// coefficients (no state machinery).
pub fn local_fidelity_closed_form(lambda: f64, c: &Matrix2xD) -> Result<f64> {
    if !(0.0..=0.5).contains(&lambda) {
        return Err(Error::InvalidLambda { lambda });
    }
    let r0 = c.row(0);
    let r1 = c.row(1);
    let sum0: f64 = r0.iter().map(|z| z.norm_sqr()).sum();
    let sum1: f64 = r1.iter().map(|z| z.norm_sqr()).sum();
    let middle_sq = if c.dim_b() <= ANTISYM_DIRECT_MAX {
        antisym_sum(r0, r1)
    } else {
        let cross: Complex64 = r0.iter().zip(r1).map(|(a, b)| a * b.conj()).sum();
        (sum0 * sum1 - cross.norm_sqr()).max(0.0)
    };
    let f = lambda * sum0
        + 2.0 * (lambda * (1.0 - lambda)).sqrt() * middle_sq.sqrt()
        + (1.0 - lambda) * sum1;
    Ok(f.clamp(0.0, 1.0))
}

/// Both sides of the row-pair identity
/// Σ_{j>l}|c0j·c1l − c0l·c1j|² = (Σ|c0j|²)(Σ|c1j|²) − |Σ c1j*·c0j|²,
/// each computed independently.
pub fn gram_identity_sides(row0: &[Complex64], row1: &[Complex64]) -> Result<(f64, f64)> {
    if row0.len() != row1.len() {
        return Err(Error::DimensionMismatch {
            expected: row0.len(),
            actual: row1.len(),
        });
    }
    let lhs = antisym_sum(row0, row1);
    let sum0: f64 = row0.iter().map(|z| z.norm_sqr()).sum();
    let sum1: f64 = row1.iter().map(|z| z.norm_sqr()).sum();
    let cross: Complex64 = row0.iter().zip(row1).map(|(a, b)| a * b.conj()).sum();
    let rhs = sum0 * sum1 - cross.norm_sqr();
    Ok((lhs, rhs))
}

fn antisym_sum(row0: &[Complex64], row1: &[Complex64]) -> f64 {
    let d = row0.len();
    let mut acc = 0.0;
    for j in 1..d {
        for l in 0..j {
            acc += (row0[j] * row1[l] - row0[l] * row1[j]).norm_sqr();
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cr(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn epr(sign: f64) -> BipartitePureState {
        let s = 0.5f64.sqrt();
        BipartitePureState::new(2, vec![cr(s), cr(0.0), cr(0.0), cr(sign * s)]).unwrap()
    }

    #[test]
    fn global_identical_is_one() {
        let st = epr(1.0);
        assert_eq!(global_fidelity(&st, &st).unwrap(), 1.0);
    }

    #[test]
    fn global_epr_pair_is_zero() {
        assert_eq!(global_fidelity(&epr(1.0), &epr(-1.0)).unwrap(), 0.0);
    }

    #[test]
    fn global_uniform_coefficients_is_half() {
        // |√(1/2)·(1/2) + √(1/2)·(1/2)|² = 1/2, and the raw overlap path
        // must agree with the Schmidt-frame expression to 1e-12.
        let phi = BipartitePureState::new(2, vec![cr(0.5); 4]).unwrap();
        let psi = epr(1.0);
        let f = global_fidelity(&psi, &phi).unwrap();
        assert!((f - 0.5).abs() < 1e-14);
        let frame = psi.schmidt();
        let cm = frame.express(&phi).unwrap();
        let lam = frame.lambda();
        let via_frame =
            (lam.sqrt() * cm.get(0, 0) + (1.0 - lam).sqrt() * cm.get(1, 1)).norm_sqr();
        assert!((f - via_frame).abs() < 1e-12);
    }

    #[test]
    fn local_epr_pair_is_one() {
        assert!((local_fidelity(&epr(1.0), &epr(-1.0)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn local_identical_is_one() {
        let st = BipartitePureState::new(2, vec![cr(0.8), cr(0.0), cr(0.0), cr(0.6)]).unwrap();
        assert!((local_fidelity(&st, &st).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn local_uniform_coefficients_is_half() {
        // λΣ|c0j|² = 1/4, cross term vanishes (c00c11 = c01c10), rest 1/4.
        let phi = BipartitePureState::new(2, vec![cr(0.5); 4]).unwrap();
        assert!((local_fidelity(&epr(1.0), &phi).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn closed_form_at_lambda_zero_is_row1_mass() {
        let cm = Matrix2xD::from_rows(
            &[cr(0.5), c(0.1, 0.3)],
            &[c(0.2, -0.4), cr(0.6)],
        )
        .unwrap();
        let expect: f64 = cm.row(1).iter().map(|z| z.norm_sqr()).sum();
        assert!((local_fidelity_closed_form(0.0, &cm).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn closed_form_epr_minus_coefficients_is_one() {
        let s = 0.5f64.sqrt();
        let cm = Matrix2xD::from_rows(&[cr(s), cr(0.0)], &[cr(0.0), cr(-s)]).unwrap();
        assert!((local_fidelity_closed_form(0.5, &cm).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_oracle_on_self_pair() {
        // ψ = φ case: frame coefficients (0.6, 0.8) on the diagonal with
        // λ = 0.36 give exactly 1; cross-check against the Uhlmann path on
        // identical reductions.
        let cm = Matrix2xD::from_rows(&[cr(0.6), cr(0.0)], &[cr(0.0), cr(0.8)]).unwrap();
        let f = local_fidelity_closed_form(0.36, &cm).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        let st = BipartitePureState::new(2, vec![cr(0.6), cr(0.0), cr(0.0), cr(0.8)]).unwrap();
        let rho = st.reduced_qubit();
        let oracle = crate::numerics::uhlmann_fidelity(&rho, &rho);
        assert!((f - oracle).abs() < 1e-10);
    }

    #[test]
    fn closed_form_rejects_bad_lambda() {
        let cm = Matrix2xD::from_rows(&[cr(1.0), cr(0.0)], &[cr(0.0), cr(0.0)]).unwrap();
        assert!(matches!(
            local_fidelity_closed_form(0.7, &cm),
            Err(Error::InvalidLambda { .. })
        ));
    }

    #[test]
    fn gram_sides_identical_rows_vanish() {
        let row = [cr(0.3), c(0.2, 0.5), cr(-0.1)];
        let (lhs, rhs) = gram_identity_sides(&row, &row).unwrap();
        assert!(lhs.abs() < 1e-15);
        assert!(rhs.abs() < 1e-12);
    }

    #[test]
    fn gram_sides_orthonormal_rows() {
        let r0 = [cr(1.0), cr(0.0)];
        let r1 = [cr(0.0), cr(1.0)];
        assert_eq!(gram_identity_sides(&r0, &r1).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn gram_sides_mismatched_lengths() {
        let r0 = [cr(1.0), cr(0.0)];
        let r1 = [cr(0.0)];
        assert!(matches!(
            gram_identity_sides(&r0, &r1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pair_orders_global_below_local() {
        let phi = BipartitePureState::new(2, vec![cr(0.5); 4]).unwrap();
        let pair = FidelityPair::compute(&epr(1.0), &phi).unwrap();
        assert!(pair.global <= pair.local + 1e-10);
        assert!((pair.gap() - 0.0).abs() < 1e-12);
    }
}
