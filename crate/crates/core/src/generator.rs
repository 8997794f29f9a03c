//! Constructive side of the equality analysis: parametric families of
//! states guaranteed to satisfy fidelity equality against a given reference
//! state, plus deterministic Haar-random sampling for falsification scans.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::numerics::{project_out, vec_norm, Matrix2xD};
use crate::states::{BipartitePureState, SchmidtForm};

/// Parameters of the equality-achieving family for an entangled reference
/// state (Schmidt coefficient λ > 0). Up to normalization the frame
/// coefficients are
///
///   (c00, c01, c10, c11) = (1, √(x·p·k)·α, √(p·k/x)·α*, k),
///
/// with x = √(1−λ)/√λ and α = e^{i(θ01−θ10)/2}. Every member satisfies the
/// four equality conditions; it is separable exactly when p = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualityFamilyParams {
    pub lambda: f64,
    pub k: f64,
    pub p: f64,
    pub theta01: f64,
    pub theta10: f64,
}

impl EqualityFamilyParams {
    pub fn new(lambda: f64, k: f64, p: f64, theta01: f64, theta10: f64) -> Result<Self> {
        if !(lambda.is_finite() && k.is_finite() && p.is_finite())
            || !theta01.is_finite()
            || !theta10.is_finite()
        {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if lambda == 0.0 {
            return Err(Error::InvalidParams(
                "lambda = 0 describes a separable reference; use the separable family".into(),
            ));
        }
        if !(0.0..=0.5).contains(&lambda) {
            return Err(Error::InvalidParams(format!(
                "lambda {lambda} outside (0, 1/2]"
            )));
        }
        if k < 0.0 {
            return Err(Error::InvalidParams(format!("k {k} must be non-negative")));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParams(format!("p {p} outside [0, 1]")));
        }
        Ok(Self {
            lambda,
            k,
            p,
            theta01,
            theta10,
        })
    }

    /// The unit-modulus phase carried by the off-diagonal slots.
    pub fn alpha(&self) -> Complex64 {
        Complex64::from_polar(1.0, (self.theta01 - self.theta10) / 2.0)
    }

    /// Normalized frame coefficients of the family member (columns ≥ 2 are
    /// zero).
    pub fn coefficients(&self, dim_b: usize) -> Result<Matrix2xD> {
        let x = ((1.0 - self.lambda).sqrt() / self.lambda.sqrt()).sqrt();
        // x here is already the square root of √(1−λ)/√λ
        let alpha = self.alpha();
        let amp01 = x * (self.p * self.k).sqrt();
        let amp10 = (self.p * self.k).sqrt() / x;
        let c00 = Complex64::new(1.0, 0.0);
        let c01 = amp01 * alpha;
        let c10 = amp10 * alpha.conj();
        let c11 = Complex64::new(self.k, 0.0);
        let norm = (c00.norm_sqr() + c01.norm_sqr() + c10.norm_sqr() + c11.norm_sqr()).sqrt();
        let mut entries = vec![Complex64::new(0.0, 0.0); 2 * dim_b];
        entries[0] = c00 / norm;
        entries[1] = c01 / norm;
        entries[dim_b] = c10 / norm;
        entries[dim_b + 1] = c11 / norm;
        Matrix2xD::new(dim_b, entries)
    }

    /// Build the family member as a state in the computational basis of the
    /// given frame. The frame's Schmidt coefficient must match `lambda`.
    pub fn generate(&self, frame: &SchmidtForm) -> Result<BipartitePureState> {
        self.check_frame(frame)?;
        let c = self.coefficients(frame.dim_b())?;
        frame.embed(&c)
    }

    /// The p = 1 member in explicit product form
    /// (|0⟩ + √(k/x²)·α*·|1⟩) ⊗ (|0⟩ + √(k·x²)·α·|1⟩), normalized; must
    /// agree entrywise with [`EqualityFamilyParams::generate`].
    pub fn product_state(&self, frame: &SchmidtForm) -> Result<BipartitePureState> {
        if self.p != 1.0 {
            return Err(Error::InvalidParams(format!(
                "product form requires p = 1 exactly, got {}",
                self.p
            )));
        }
        self.check_frame(frame)?;
        let d = frame.dim_b();
        let x = ((1.0 - self.lambda).sqrt() / self.lambda.sqrt()).sqrt();
        let alpha = self.alpha();
        let a1 = (self.k.sqrt() / x) * alpha.conj();
        let b1 = (self.k.sqrt() * x) * alpha;
        let factor_a = [Complex64::new(1.0, 0.0), a1];
        let factor_b = [Complex64::new(1.0, 0.0), b1];
        let mut entries = vec![Complex64::new(0.0, 0.0); 2 * d];
        for i in 0..2 {
            for j in 0..2 {
                entries[i * d + j] = factor_a[i] * factor_b[j];
            }
        }
        let norm = vec_norm(&entries);
        for z in entries.iter_mut() {
            *z /= norm;
        }
        frame.embed(&Matrix2xD::new(d, entries)?)
    }

    fn check_frame(&self, frame: &SchmidtForm) -> Result<()> {
        if (frame.lambda() - self.lambda).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "frame lambda {} does not match parameter lambda {}",
                frame.lambda(),
                self.lambda
            )));
        }
        Ok(())
    }
}

/// Parameters of the equality family for a separable reference |11⟩: the
/// candidate is c11·|11⟩ + Σ_j c0j·|0j⟩, which yields equal fidelities
/// |c11|² on both levels.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableFamilyParams {
    pub c11: Complex64,
    pub tail: Vec<Complex64>,
}

impl SeparableFamilyParams {
    pub fn new(c11: Complex64, tail: Vec<Complex64>) -> Result<Self> {
        if !(c11.re.is_finite() && c11.im.is_finite())
            || tail
                .iter()
                .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let norm_sq = c11.norm_sqr() + tail.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if (norm_sq.sqrt() - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized {
                norm: norm_sq.sqrt(),
            });
        }
        Ok(Self { c11, tail })
    }

    pub fn generate(&self, dim_b: usize) -> Result<BipartitePureState> {
        if dim_b < 2 || self.tail.len() != dim_b {
            return Err(Error::DimensionMismatch {
                expected: dim_b.max(2),
                actual: self.tail.len(),
            });
        }
        let mut entries = self.tail.clone();
        entries.resize(2 * dim_b, Complex64::new(0.0, 0.0));
        entries[dim_b + 1] = self.c11;
        BipartitePureState::new(dim_b, entries)
    }

    /// The reference state |11⟩ this family is built against.
    pub fn reference(dim_b: usize) -> Result<BipartitePureState> {
        if dim_b < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: dim_b,
            });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); 2 * dim_b];
        entries[dim_b + 1] = Complex64::new(1.0, 0.0);
        BipartitePureState::new(dim_b, entries)
    }
}

/// A Haar-random pure state on the 2×d system: 2d independent standard
/// complex Gaussian amplitudes from a counter-based stream keyed by `seed`,
/// normalized. Identical (dim_b, seed) yields bit-identical states.
pub fn haar_sample(dim_b: usize, seed: u64) -> BipartitePureState {
    assert!(dim_b >= 2, "dim_b must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let amps: Vec<Complex64> = (0..2 * dim_b)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if vec_norm(&amps) > 1e-14 {
            return BipartitePureState::new_normalized(dim_b, amps)
                .expect("gaussian amplitudes are finite and nonzero");
        }
    }
}

/// A Haar-random d×d unitary: Gram-Schmidt (two passes) on rows of a
/// standard complex Gaussian matrix, deterministic per seed.
pub fn haar_unitary(dim: usize, seed: u64) -> Vec<Vec<Complex64>> {
    assert!(dim >= 1, "dim must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while rows.len() < dim {
        let mut cand: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        for prev in &rows {
            project_out(&mut cand, prev);
        }
        let n = vec_norm(&cand);
        if n < 1e-8 {
            continue; // essentially impossible; draw a fresh row
        }
        for z in cand.iter_mut() {
            *z /= n;
        }
        for prev in &rows {
            project_out(&mut cand, prev);
        }
        let n = vec_norm(&cand);
        for z in cand.iter_mut() {
            *z /= n;
        }
        rows.push(cand);
    }
    rows
}
