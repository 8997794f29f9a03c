//! Property-based checks over arbitrary (not just Haar-distributed)
//! amplitude vectors.

use fideq_core::fidelity::{global_fidelity, gram_identity_sides, local_fidelity};
use fideq_core::json::{parse_state, state_to_json};
use fideq_core::states::BipartitePureState;
use fideq_core::Complex64;

use proptest::collection::vec;
use proptest::prelude::*;

fn amplitudes(d: usize) -> impl Strategy<Value = Vec<Complex64>> {
    vec((-1.0f64..1.0, -1.0f64..1.0), 2 * d)
        .prop_filter("needs nonzero norm", |v| {
            v.iter().map(|(re, im)| re * re + im * im).sum::<f64>() > 1e-2
        })
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

fn state(d: usize) -> impl Strategy<Value = BipartitePureState> {
    amplitudes(d).prop_map(move |a| BipartitePureState::new_normalized(d, a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn schmidt_lambda_in_range_and_reconstructs(psi in (2usize..=8).prop_flat_map(state)) {
        let frame = psi.schmidt();
        prop_assert!((0.0..=0.5).contains(&frame.lambda()));
        let back = frame.reconstruct();
        for (a, b) in psi.coeffs().entries().iter().zip(back.coeffs().entries()) {
            prop_assert!((a - b).norm() <= 1e-10);
        }
    }

    #[test]
    fn fidelity_pair_is_ordered(
        (psi, phi) in (2usize..=8).prop_flat_map(|d| (state(d), state(d)))
    ) {
        let fg = global_fidelity(&psi, &phi).unwrap();
        let fl = local_fidelity(&psi, &phi).unwrap();
        prop_assert!((0.0..=1.0).contains(&fg));
        prop_assert!((0.0..=1.0).contains(&fl));
        prop_assert!(fg <= fl + 1e-10);
    }

    #[test]
    fn gram_sides_agree(
        (row0, row1) in (2usize..=16).prop_flat_map(|d| (amplitudes(d), amplitudes(d)))
    ) {
        // amplitudes(d) yields rows of length 2d; equal lengths by construction
        let (lhs, rhs) = gram_identity_sides(&row0, &row1).unwrap();
        let scale = rhs.abs().max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale * 16.0);
    }

    #[test]
    fn json_roundtrip_is_bit_exact(psi in (2usize..=6).prop_flat_map(state)) {
        let text = state_to_json(&psi);
        let back = parse_state(&text).unwrap();
        prop_assert_eq!(psi.coeffs().entries(), back.coeffs().entries());
    }
}
