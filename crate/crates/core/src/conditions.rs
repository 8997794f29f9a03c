//! The four necessary-and-sufficient conditions for the global and local
//! fidelities of a pure 2×d pair to coincide, evaluated in the reference
//! state's Schmidt frame:
//!
//!   1. √λ·|c01| = √(1−λ)·|c10|
//!   2. c00·c11* is real and non-negative
//!   3. c_ij = 0 for every column j ≥ 2
//!   4. |c00·c11| − |c01·c10| = |c00·c11 − c01·c10|
//!
//! Residuals are reported literally; flags compare each residual against a
//! tolerance scaled by max(1, magnitude of the compared terms). For an
//! entangled reference state the conjunction of the four flags decides
//! equality; for a separable reference (λ = 0) the single support condition
//! of [`separable_equality_condition`] governs instead.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fidelity::{global_fidelity, local_fidelity_a_chain};
use crate::numerics::Matrix2xD;
use crate::states::BipartitePureState;

/// Default residual tolerance for condition checks.
pub const DEFAULT_CONDITION_TOL: f64 = 1e-9;

/// Residuals, pass flags, diagnostic ratios, and the combined verdict of the
/// four equality conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    /// Literal residuals of conditions 1–4, in order.
    pub residuals: [f64; 4],
    /// residual ≤ tol·max(1, scale), per condition.
    pub flags: [bool; 4],
    /// |c11|/|c00| signed by the phase relation, when |c00| exceeds tol.
    pub k: Option<f64>,
    /// |c01·c10|/|c00·c11|, when |c00·c11| exceeds tol.
    pub p: Option<f64>,
    /// Conjunction of the four flags.
    pub verdict: bool,
}

/// Evaluate the four conditions for frame coefficients `c` of the candidate
/// state against a reference state with Schmidt coefficient `lambda`.
pub fn check_equality_conditions(
    lambda: f64,
    c: &Matrix2xD,
    tol: f64,
) -> Result<ConditionReport> {
    if !(0.0..=0.5).contains(&lambda) {
        return Err(Error::InvalidLambda { lambda });
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTolerance { tol });
    }
    let c00 = c.get(0, 0);
    let c01 = c.get(0, 1);
    let c10 = c.get(1, 0);
    let c11 = c.get(1, 1);

    let term_a = lambda.sqrt() * c01.norm();
    let term_b = (1.0 - lambda).sqrt() * c10.norm();
    let r1 = (term_a - term_b).abs();
    let f1 = r1 <= tol * term_a.max(term_b).max(1.0);

    // Condition 2 as "c00·c11* real and non-negative": algebraically the
    // same as Re(z) = |z| but immune to the cancellation in |z| − Re(z)
    // for tiny z. The residual is still reported in the |z| − Re(z) form.
    let z = c00 * c11.conj();
    let r2 = (z.norm() - z.re).abs();
    let scale2 = z.norm().max(1.0);
    let f2 = z.im.abs() <= tol * scale2 && z.re >= -tol * scale2;

    let mut r3 = 0.0;
    for j in 2..c.dim_b() {
        r3 += c.get(0, j).norm_sqr() + c.get(1, j).norm_sqr();
    }
    let f3 = r3 <= tol;

    let x = (c00 * c11).norm();
    let y = (c01 * c10).norm();
    let w = (c00 * c11 - c01 * c10).norm();
    let r4 = (x - y - w).abs();
    let f4 = r4 <= tol * x.max(y).max(1.0);

    let k = if c00.norm() > tol {
        let sign = if (c00.conj() * c11).re >= 0.0 { 1.0 } else { -1.0 };
        Some(sign * c11.norm() / c00.norm())
    } else {
        None
    };
    let p = if x > tol { Some(y / x) } else { None };

    let flags = [f1, f2, f3, f4];
    Ok(ConditionReport {
        residuals: [r1, r2, r3, r4],
        flags,
        k,
        p,
        verdict: flags.iter().all(|&f| f),
    })
}

/// True iff the computed fidelities agree to within `tol`.
pub fn numeric_equality_verdict(
    psi: &BipartitePureState,
    phi: &BipartitePureState,
    tol: f64,
) -> Result<bool> {
    let analysis = analyze_pair(psi, phi, DEFAULT_CONDITION_TOL)?;
    Ok((analysis.f_local - analysis.f_global).abs() <= tol)
}

/// Equality test for a separable reference state |11⟩: the candidate's
/// row-1 support must be confined to column 1, i.e. Σ_{j≠1}|c1j|² ≤ tol.
pub fn separable_equality_condition(c: &Matrix2xD, tol: f64) -> bool {
    let mass: f64 = c
        .row(1)
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != 1)
        .map(|(_, z)| z.norm_sqr())
        .sum();
    mass <= tol
}

/// If Re(α·β*) = |α·β| within tol·|αβ| and |α| > tol, β is a non-negative
/// real multiple of α; returns that factor provided the reconstruction
/// residual |β − k·α| stays within 10·tol.
pub fn phase_aligned_factor(alpha: Complex64, beta: Complex64, tol: f64) -> Option<f64> {
    let z = alpha * beta.conj();
    let mag = z.norm();
    if (z.re - mag).abs() > tol * mag {
        return None;
    }
    if alpha.norm() <= tol {
        return None;
    }
    let k = beta.norm() / alpha.norm();
    if (beta - k * alpha).norm() > 10.0 * tol {
        return None;
    }
    Some(k)
}

/// If |α| − |β| = |α − β| within tol and |α| > tol, β lies on the ray
/// through α with a factor in [0, 1]; returns that factor provided the
/// reconstruction residual |β − p·α| stays within 10·tol.
pub fn same_ray_factor(alpha: Complex64, beta: Complex64, tol: f64) -> Option<f64> {
    let lhs = alpha.norm() - beta.norm();
    let rhs = (alpha - beta).norm();
    if (lhs - rhs).abs() > tol {
        return None;
    }
    if alpha.norm() <= tol {
        return None;
    }
    let p = beta.norm() / alpha.norm();
    if (beta - p * alpha).norm() > 10.0 * tol {
        return None;
    }
    Some(p)
}

/// Everything one check of a state pair produces: both fidelities, the
/// reference state's Schmidt coefficient, φ's frame coefficients, and the
/// condition report.
#[derive(Debug, Clone, PartialEq)]
pub struct PairAnalysis {
    pub f_global: f64,
    pub f_local: f64,
    pub lambda: f64,
    /// φ expressed in ψ's Schmidt frame.
    pub frame_coeffs: Matrix2xD,
    pub report: ConditionReport,
    /// The applicable equality checker's verdict: the four conditions for an
    /// entangled reference, the single support condition when λ ≤ tol (the
    /// four-condition proof divides by √(λ(1−λ)), so the separable case is
    /// governed by the support condition alone).
    pub conditions_verdict: bool,
}

impl PairAnalysis {
    pub fn gap(&self) -> f64 {
        self.f_local - self.f_global
    }

    /// Fidelity agreement at the given tolerance.
    pub fn numeric_verdict(&self, tol: f64) -> bool {
        (self.f_local - self.f_global).abs() <= tol
    }
}

/// Single-pass analysis of a pair: Schmidt-decompose ψ once, express φ in
/// the frame, and derive both fidelities and the condition report from it.
pub fn analyze_pair(
    psi: &BipartitePureState,
    phi: &BipartitePureState,
    tol: f64,
) -> Result<PairAnalysis> {
    if psi.dim_b() != phi.dim_b() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim_b(),
            actual: phi.dim_b(),
        });
    }
    let frame = psi.schmidt();
    let c = frame.express(phi)?;
    let lambda = frame.lambda();
    let f_global = global_fidelity(psi, phi)?;
    let f_local = local_fidelity_a_chain(lambda, &c);
    let report = check_equality_conditions(lambda, &c, tol)?;
    let conditions_verdict = if lambda <= tol {
        separable_equality_condition(&c, tol)
    } else {
        report.verdict
    };
    Ok(PairAnalysis {
        f_global,
        f_local,
        lambda,
        frame_coeffs: c,
        report,
        conditions_verdict,
    })
}
