//! Fixed-seed verification suites wired to the `selftest` CLI command: the
//! row-pair identity, the closed-form local fidelity against the Uhlmann
//! oracle, and the eigenvalue trace/determinant reconstruction.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::fidelity::{gram_identity_sides, local_fidelity_closed_form};
use crate::generator::haar_sample;
use crate::numerics::{uhlmann_fidelity, HermitianQubitOperator};

const CASES_PER_SUITE: usize = 2000;
const GRAM_SEED: u64 = 0x6772_616d;
const ORACLE_SEED: u64 = 0x6f72_6163;
const EIGEN_SEED: u64 = 0x6569_6765;

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub max_residual: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Run all three suites at the given tolerance. `inject_fault` flips one
/// sign in the first identity case, proving the harness can fail.
pub fn run_selftest(tol: f64, inject_fault: bool) -> Result<Vec<SuiteResult>> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTolerance { tol });
    }
    Ok(vec![
        gram_suite(tol, inject_fault),
        oracle_suite(tol),
        eigen_suite(tol),
    ])
}

fn gram_suite(tol: f64, inject_fault: bool) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(GRAM_SEED);
    let mut failures = 0;
    let mut max_residual: f64 = 0.0;
    for case in 0..CASES_PER_SUITE {
        let d = 2 + case % 15; // dimensions 2..=16
        let row0 = random_row(&mut rng, d);
        let row1 = random_row(&mut rng, d);
        let (mut lhs, rhs) = gram_identity_sides(&row0, &row1).expect("equal lengths");
        if inject_fault && case == 0 {
            lhs = -lhs;
        }
        let residual = (lhs - rhs).abs() / rhs.abs().max(1.0);
        max_residual = max_residual.max(residual);
        if residual > tol {
            failures += 1;
        }
    }
    SuiteResult {
        name: "gram-identity",
        cases: CASES_PER_SUITE,
        failures,
        max_residual,
    }
}

fn oracle_suite(tol: f64) -> SuiteResult {
    let dims = [2usize, 3, 5, 8];
    let mut failures = 0;
    let mut max_residual: f64 = 0.0;
    for case in 0..CASES_PER_SUITE {
        let d = dims[case % dims.len()];
        let psi = haar_sample(d, ORACLE_SEED.wrapping_add(2 * case as u64));
        let phi = haar_sample(d, ORACLE_SEED.wrapping_add(2 * case as u64 + 1));
        let frame = psi.schmidt();
        let c = frame.express(&phi).expect("matching dimensions");
        let closed = local_fidelity_closed_form(frame.lambda(), &c).expect("valid lambda");
        let oracle = uhlmann_fidelity(&psi.reduced_qubit(), &phi.reduced_qubit());
        let residual = (closed - oracle).abs();
        max_residual = max_residual.max(residual);
        if residual > tol {
            failures += 1;
        }
    }
    SuiteResult {
        name: "closed-form-vs-oracle",
        cases: CASES_PER_SUITE,
        failures,
        max_residual,
    }
}

fn eigen_suite(tol: f64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(EIGEN_SEED);
    let mut failures = 0;
    let mut max_residual: f64 = 0.0;
    for _ in 0..CASES_PER_SUITE {
        let h = HermitianQubitOperator::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
        );
        let (plus, minus) = h.eigenvalues();
        let tr = h.a00 + h.a11;
        let det = h.a00 * h.a11 - h.a01.norm_sqr();
        let r_tr = (plus + minus - tr).abs() / tr.abs().max(1.0);
        let r_det = (plus * minus - det).abs() / det.abs().max(1.0);
        let residual = r_tr.max(r_det);
        max_residual = max_residual.max(residual);
        if residual > tol {
            failures += 1;
        }
    }
    SuiteResult {
        name: "eigenvalue-trace-det",
        cases: CASES_PER_SUITE,
        failures,
        max_residual,
    }
}

fn random_row(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}
