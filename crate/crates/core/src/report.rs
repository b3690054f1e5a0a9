//! Effective sizes from every method side by side.

use serde::{Deserialize, Serialize};

use crate::cat::CatParams;
use crate::decoherence::effective_size_decoherence;
use crate::distillation::distillation_bound;
use crate::error::Result;
use crate::loss::effective_size_loss;

/// Field order is the JSON key order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveSizeReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub epsilon: f64,
    pub n_decoherence: f64,
    pub n_distill_mean: f64,
    pub n_distill_upper_exact: f64,
    /// Small-ε approximation; not confined to [0, N] away from ε ≪ 1.
    pub n_distill_upper_asymptotic: f64,
    pub n_loss: f64,
    #[serde(rename = "reference_N_eps_sq")]
    pub reference_n_eps_sq: f64,
}

impl EffectiveSizeReport {
    pub fn new(params: &CatParams) -> Result<Self> {
        let bound = distillation_bound(params)?;
        let e = params.epsilon();
        Ok(Self {
            n: params.n(),
            epsilon: e,
            n_decoherence: effective_size_decoherence(params),
            n_distill_mean: bound.lower_bound_mean,
            n_distill_upper_exact: bound.exact_bound,
            n_distill_upper_asymptotic: bound.asymptotic_bound,
            n_loss: effective_size_loss(params),
            reference_n_eps_sq: params.n_f64() * e * e,
        })
    }

    /// The operational effective sizes (decoherence, distillation mean and exact
    /// upper bound, loss).
    pub fn measures(&self) -> [f64; 4] {
        [
            self.n_decoherence,
            self.n_distill_mean,
            self.n_distill_upper_exact,
            self.n_loss,
        ]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
