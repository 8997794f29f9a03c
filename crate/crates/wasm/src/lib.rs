//! Browser bindings for the demo page: check a state pair, explore the
//! equality-achieving family, and scan gap distributions of random pairs.
//!
//! Every function takes plain numbers or JSON strings and returns a JSON
//! string, so the page needs no glue beyond `JSON.parse`. Errors come back
//! as `{"error": "..."}` rather than exceptions.

use wasm_bindgen::prelude::*;

use fideq_core::conditions::analyze_pair;
use fideq_core::generator::{haar_sample, EqualityFamilyParams};
use fideq_core::json::{analysis_to_json, fmt_f64, parse_state, report_to_json, state_to_json};
use fideq_core::states::SchmidtForm;

fn error_json(msg: &str) -> String {
    format!("{{\"error\":\"{}\"}}", escape(msg))
}

fn escape(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            '"' => vec!['\\', '"'],
            '\\' => vec!['\\', '\\'],
            '\n' => vec!['\\', 'n'],
            c if (c as u32) < 0x20 => vec![' '],
            c => vec![c],
        })
        .collect()
}

/// Fidelities, gap, Schmidt coefficient, and the condition report for two
/// states in the state JSON schema.
#[wasm_bindgen]
pub fn check_pair(psi_json: &str, phi_json: &str, tol: f64) -> String {
    let run = || -> fideq_core::Result<String> {
        let psi = parse_state(psi_json)?;
        let phi = parse_state(phi_json)?;
        let a = analyze_pair(&psi, &phi, tol)?;
        Ok(analysis_to_json(&a))
    };
    run().unwrap_or_else(|e| error_json(&e.to_string()))
}

/// Build the equality-family member for (λ, k, p, θ01, θ10) against the
/// canonical reference √λ|00⟩ + √(1−λ)|11⟩ and report everything the
/// explorer panel shows: both states, fidelities, the condition report, and
/// the second singular value (the entanglement indicator).
#[wasm_bindgen]
pub fn explore_family(lambda: f64, k: f64, p: f64, theta01: f64, theta10: f64) -> String {
    let run = || -> fideq_core::Result<String> {
        let params = EqualityFamilyParams::new(lambda, k, p, theta01, theta10)?;
        let frame = SchmidtForm::computational(lambda, 2)?;
        let psi = frame.reconstruct();
        let phi = params.generate(&frame)?;
        let a = analyze_pair(&psi, &phi, 1e-9)?;
        let s2 = phi.coeffs().svd().map(|svd| svd.s.1).unwrap_or(0.0);
        Ok(format!(
            "{{\"psi\":{},\"phi\":{},\"fGlobal\":{},\"fLocal\":{},\"gap\":{},\
             \"secondSingular\":{},\"report\":{}}}",
            state_to_json(&psi),
            state_to_json(&phi),
            fmt_f64(a.f_global),
            fmt_f64(a.f_local),
            fmt_f64(a.gap()),
            fmt_f64(s2),
            report_to_json(&a.report)
        ))
    };
    run().unwrap_or_else(|e| error_json(&e.to_string()))
}

/// Gap distribution over Haar-random pairs: per-sample gaps plus summary
/// statistics. Row i draws its pair from seeds (seed + 2i, seed + 2i + 1).
#[wasm_bindgen]
pub fn scan_gaps(dim_b: u32, samples: u32, seed: u32) -> String {
    if !(2..=64).contains(&dim_b) {
        return error_json("dim_b must be between 2 and 64");
    }
    if !(1..=100_000).contains(&samples) {
        return error_json("samples must be between 1 and 100000");
    }
    let d = dim_b as usize;
    let base = seed as u64;
    let mut gaps = Vec::with_capacity(samples as usize);
    let mut min_gap = f64::INFINITY;
    let mut max_gap = f64::NEG_INFINITY;
    let mut hits = 0usize;
    for i in 0..samples as u64 {
        let psi = haar_sample(d, base.wrapping_add(2 * i));
        let phi = haar_sample(d, base.wrapping_add(2 * i + 1));
        let a = match analyze_pair(&psi, &phi, 1e-9) {
            Ok(a) => a,
            Err(e) => return error_json(&e.to_string()),
        };
        let gap = a.gap();
        min_gap = min_gap.min(gap);
        max_gap = max_gap.max(gap);
        if a.numeric_verdict(1e-9) {
            hits += 1;
        }
        gaps.push(gap);
    }
    let list: Vec<String> = gaps.iter().map(|g| fmt_f64(*g)).collect();
    format!(
        "{{\"gaps\":[{}],\"minGap\":{},\"maxGap\":{},\"equalityHits\":{}}}",
        list.join(","),
        fmt_f64(min_gap),
        fmt_f64(max_gap),
        hits
    )
}
