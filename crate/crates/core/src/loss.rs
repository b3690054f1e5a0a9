//! Suppression of the off-diagonal term under independent qubit loss.
//!
//! Losing a GHZ qubit removes the coherence entirely; tracing out k qubits of the
//! cat state only multiplies it by cos(ε)^k. Suppressions are relative to the
//! no-loss off-diagonal magnitude.

use serde::{Deserialize, Serialize};

use crate::cat::{mul_ln, CatParams};
use crate::decoherence::{linear_grid, validate_grid};
use crate::error::{Error, Result};

/// Central-difference step in λ for the numeric rate.
pub const RATE_STEP: f64 = 1e-6;

/// Independent per-qubit loss with probability λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossModel {
    lambda: f64,
}

impl LossModel {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidLossProbability(lambda));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// (1−λ)ⁿ: only the no-loss branch keeps a coherence.
pub fn ghz_loss_suppression(n: u64, loss: &LossModel) -> Result<f64> {
    if n == 0 {
        return Err(Error::TooFewQubits { min: 1, got: 0 });
    }
    Ok(mul_ln(n as f64, (-loss.lambda).ln_1p()).exp())
}

/// N·ln(1 − λ(1 − cos ε)), valid for any real λ near 0.
fn ln_cat_suppression(params: &CatParams, lambda: f64) -> f64 {
    mul_ln(params.n_f64(), (-lambda * params.one_minus_cos()).ln_1p())
}

/// E[cos(ε)^k] over k ~ Binomial(N, λ) = (1 − λ(1 − cos ε))^N.
pub fn cat_loss_suppression(params: &CatParams, loss: &LossModel) -> f64 {
    ln_cat_suppression(params, loss.lambda).exp()
}

/// The typical-value form e^{−λN(1−cos ε)} and its ratio to the exact expectation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypicalValueDiagnostic {
    pub expectation: f64,
    pub typical: f64,
    pub ratio: f64,
}

pub fn typical_value_diagnostic(params: &CatParams, loss: &LossModel) -> TypicalValueDiagnostic {
    let ln_exp = ln_cat_suppression(params, loss.lambda);
    let ln_typ = -loss.lambda * params.n_f64() * params.one_minus_cos();
    TypicalValueDiagnostic {
        expectation: ln_exp.exp(),
        typical: ln_typ.exp(),
        ratio: (ln_typ - ln_exp).exp(),
    }
}

/// N(1 − cos ε): the GHZ size n whose loss rate n matches the cat's at λ → 0.
pub fn effective_size_loss(params: &CatParams) -> f64 {
    params.n_f64() * params.one_minus_cos()
}

/// −d/dλ ln(suppression) at λ = 0 by central difference.
pub fn effective_size_loss_numeric(params: &CatParams) -> f64 {
    let h = RATE_STEP;
    -(ln_cat_suppression(params, h) - ln_cat_suppression(params, -h)) / (2.0 * h)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossCurve {
    pub lambdas: Vec<f64>,
    pub ghz_suppression: Vec<f64>,
    pub cat_suppression: Vec<f64>,
}

pub const LOSS_CSV_HEADER: &str = "lambda,ghz_suppression,cat_suppression";

impl LossCurve {
    pub fn to_csv(&self) -> String {
        crate::output::csv_table(
            LOSS_CSV_HEADER,
            &[&self.lambdas, &self.ghz_suppression, &self.cat_suppression],
        )
    }
}

/// Tabulates both suppressions on an ascending λ grid starting at 0.
pub fn loss_curve(params: &CatParams, n_ref: u64, grid: &[f64]) -> Result<LossCurve> {
    validate_grid(grid)?;
    let models = grid
        .iter()
        .map(|&l| LossModel::new(l))
        .collect::<Result<Vec<_>>>()?;
    Ok(LossCurve {
        lambdas: grid.to_vec(),
        ghz_suppression: models
            .iter()
            .map(|m| ghz_loss_suppression(n_ref, m))
            .collect::<Result<_>>()?,
        cat_suppression: models
            .iter()
            .map(|m| cat_loss_suppression(params, m))
            .collect(),
    })
}

/// Uniform λ grid on [0, λ_max].
pub fn loss_grid(lambda_max: f64, steps: usize) -> Vec<f64> {
    linear_grid(lambda_max, steps)
}
