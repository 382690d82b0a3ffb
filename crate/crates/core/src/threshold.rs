//! Threshold from the self-consistency condition `A ε² + B ε < 1`, where `B`
//! weights malignant pairs and `A` bounds weight-3 fault sets, with memory
//! errors scaled by `γ`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{LocationCensus, LocationType};
use crate::malignancy::AlphaMatrix;

pub const FORMULA_VERSION: u32 = 1;

const IDLE: usize = 7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThresholdError {
    #[error("gamma must be finite and non-negative, got {0}")]
    BadGamma(f64),
    #[error("A and B are both zero")]
    Degenerate,
}

fn check_gamma(gamma: f64) -> Result<(), ThresholdError> {
    if gamma.is_finite() && gamma >= 0.0 {
        Ok(())
    } else {
        Err(ThresholdError::BadGamma(gamma))
    }
}

/// B = Σ_{i≤j≤6} α_ij + γ Σ_{i≤6} α_i7 + γ² α_77.
pub fn effective_b(alpha: &AlphaMatrix, gamma: f64) -> Result<f64, ThresholdError> {
    check_gamma(gamma)?;
    let mut gates = 0u64;
    let mut mixed = 0u64;
    for i in 1..IDLE {
        for j in i..IDLE {
            gates += alpha.get(i, j);
        }
        mixed += alpha.get(i, IDLE);
    }
    Ok(gates as f64 + gamma * mixed as f64 + gamma * gamma * alpha.get(IDLE, IDLE) as f64)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// A = C(g,3) + C(g,2) w γ + g C(w,2) γ² + C(w,3) γ³ for `g` gate locations
/// and `w` idle locations.
pub fn effective_a_counts(g: u64, w: u64, gamma: f64) -> Result<f64, ThresholdError> {
    check_gamma(gamma)?;
    let b = |n, k| binomial(n, k) as f64;
    Ok(b(g, 3) + b(g, 2) * w as f64 * gamma + g as f64 * b(w, 2) * gamma * gamma + b(w, 3) * gamma.powi(3))
}

pub fn effective_a(census: &LocationCensus, gamma: f64) -> Result<f64, ThresholdError> {
    effective_a_counts(census.gate_total, census.idle(), gamma)
}

/// Positive root of `A ε² + B ε = 1`.
pub fn solve_threshold(a: f64, b: f64) -> Result<f64, ThresholdError> {
    if a == 0.0 && b == 0.0 {
        return Err(ThresholdError::Degenerate);
    }
    if a == 0.0 {
        return Ok(1.0 / b);
    }
    // 2 / (B + sqrt(B² + 4A)) avoids cancellation for large B.
    Ok(2.0 / (b + (b * b + 4.0 * a).sqrt()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdInput {
    pub label: String,
    pub alpha: AlphaMatrix,
    pub census: LocationCensus,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub epsilon: f64,
    pub inputs: ThresholdInput,
    pub formula_version: u32,
}

pub fn threshold_report(input: &ThresholdInput) -> Result<ThresholdReport, ThresholdError> {
    let a = effective_a(&input.census, input.gamma)?;
    let b = effective_b(&input.alpha, input.gamma)?;
    Ok(ThresholdReport { a, b, epsilon: solve_threshold(a, b)?, inputs: input.clone(), formula_version: FORMULA_VERSION })
}

pub fn threshold_table(inputs: &[ThresholdInput]) -> Result<Vec<ThresholdReport>, ThresholdError> {
    inputs.iter().map(threshold_report).collect()
}

/// α with every pair involving one of `types` zeroed.
pub fn restrict_alpha(alpha: &AlphaMatrix, types: &[LocationType]) -> AlphaMatrix {
    let mut out = alpha.clone();
    for t in types {
        let k = t.number();
        for other in 1..=7 {
            *out.get_mut(k, other) = 0;
        }
    }
    out
}

/// Drops SWAP and IDLE locations from both α and the census.
pub fn no_swap_no_memory(alpha: &AlphaMatrix, census: &LocationCensus) -> (AlphaMatrix, LocationCensus) {
    let drop = [LocationType::Swap, LocationType::Idle];
    (restrict_alpha(alpha, &drop), census.without(LocationType::Swap).without(LocationType::Idle))
}

/// Renders reports as a fixed-width table.
pub fn render_table(reports: &[ThresholdReport]) -> String {
    let mut s = format!("{:<28} {:>6} {:>14} {:>10} {:>11}\n", "label", "gamma", "A", "B", "epsilon");
    for r in reports {
        s.push_str(&format!(
            "{:<28} {:>6} {:>14.1} {:>10.2} {:>11.3e}\n",
            r.inputs.label, r.inputs.gamma, r.a, r.b, r.epsilon
        ));
    }
    s
}
