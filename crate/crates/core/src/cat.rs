//! The superposition |ψ⟩ = (|φ₁⟩^⊗N + |φ₂⟩^⊗N)/√K with |φ₁⟩ = |0⟩ and
//! |φ₂⟩ = cos ε|0⟩ + sin ε|1⟩.
//!
//! Every power of cos ε is evaluated as exp(k·ln cos ε), with ln cos ε taken from
//! ln(1 − 2 sin²(ε/2)) so that N ~ 10⁶ and ε ~ 10⁻³ neither underflow nor cancel.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{binary_spectrum_entropy, DensityOperator2, QubitOperator};

/// k·ln x with the convention 0·ln 0 = 0, so that x⁰ = 1 for every x.
pub(crate) fn mul_ln(k: f64, ln_x: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k * ln_x
    }
}

/// Number of qubits N and the single-qubit angle ε ∈ [0, π/2].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatParams {
    n: u64,
    epsilon: f64,
}

impl CatParams {
    pub fn new(n: u64, epsilon: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewQubits { min: 1, got: n });
        }
        if !epsilon.is_finite() || !(0.0..=FRAC_PI_2).contains(&epsilon) {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        Ok(Self { n, epsilon })
    }

    /// Builds from the overlap deficit δ = 1 − |⟨φ₁|φ₂⟩|², using ε = asin(√δ).
    pub fn from_overlap_deficit(n: u64, deficit: f64) -> Result<Self> {
        if !deficit.is_finite() || !(0.0..=1.0).contains(&deficit) {
            return Err(Error::InvalidOverlapDeficit(deficit));
        }
        Self::new(n, deficit.sqrt().asin().min(FRAC_PI_2))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn n_f64(&self) -> f64 {
        self.n as f64
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn cos_eps(&self) -> f64 {
        self.epsilon.cos()
    }

    pub fn sin_eps(&self) -> f64 {
        self.epsilon.sin()
    }

    /// 1 − cos ε; half-angle form 2 sin²(ε/2) when cos ε ≥ ½, direct otherwise.
    pub fn one_minus_cos(&self) -> f64 {
        let c = self.cos_eps();
        if c < 0.5 {
            1.0 - c
        } else {
            let h = (0.5 * self.epsilon).sin();
            2.0 * h * h
        }
    }

    /// ln cos ε.
    pub fn ln_cos(&self) -> f64 {
        let c = self.cos_eps();
        if c < 0.5 {
            c.ln()
        } else {
            (-self.one_minus_cos()).ln_1p()
        }
    }

    /// ln(1 − cos ε).
    pub fn ln_one_minus_cos(&self) -> f64 {
        let c = self.cos_eps();
        if c < 0.5 {
            (-c).ln_1p()
        } else {
            self.one_minus_cos().ln()
        }
    }

    /// ln(cos ε)^k for real k ≥ 0.
    pub fn ln_cos_pow(&self, k: f64) -> f64 {
        mul_ln(k, self.ln_cos())
    }

    /// N·ln cos ε.
    pub fn log_cn(&self) -> f64 {
        self.ln_cos_pow(self.n_f64())
    }

    /// cos(ε)^N.
    pub fn cos_pow_n(&self) -> f64 {
        self.log_cn().exp()
    }

    /// |φ₁⟩ and |φ₂⟩ as amplitude pairs.
    pub fn phi1(&self) -> [Complex64; 2] {
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
    }

    pub fn phi2(&self) -> [Complex64; 2] {
        [
            Complex64::from(self.cos_eps()),
            Complex64::from(self.sin_eps()),
        ]
    }

    /// b₀ = |φ₁⟩⟨φ₂| = cos ε|0⟩⟨0| + sin ε|0⟩⟨1|.
    pub fn coherence_operator(&self) -> QubitOperator {
        QubitOperator::outer(self.phi1(), self.phi2())
    }

    fn require_two_qubits(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::TooFewQubits {
                min: 2,
                got: self.n,
            });
        }
        Ok(())
    }
}

/// Overlap of the two branches, |⟨φ₁|φ₂⟩|^{2N} = cos(ε)^{2N}, as a value and its log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermOverlap {
    pub value: f64,
    pub ln_value: f64,
}

pub fn term_overlap(params: &CatParams) -> TermOverlap {
    let ln_value = 2.0 * params.log_cn();
    TermOverlap {
        value: ln_value.exp(),
        ln_value,
    }
}

/// K = 2 + ⟨φ₁|φ₂⟩^N + ⟨φ₂|φ₁⟩^N = 2(1 + cos(ε)^N).
pub fn normalization_k(params: &CatParams) -> f64 {
    2.0 * (1.0 + params.cos_pow_n())
}

/// Reduced density operator of qubit 1:
/// ρ₁ = [(1+c²+2c^N)|0⟩⟨0| + sc(1+c^{N−2})(|0⟩⟨1|+|1⟩⟨0|) + s²|1⟩⟨1|] / (2+2c^N).
pub fn reduced_rho1(params: &CatParams) -> Result<DensityOperator2> {
    params.require_two_qubits()?;
    let (c, s) = (params.cos_eps(), params.sin_eps());
    let c_n = params.cos_pow_n();
    let c_n2 = params.ln_cos_pow(params.n_f64() - 2.0).exp();
    let denom = 2.0 + 2.0 * c_n;
    let diag0 = (1.0 + c * c + 2.0 * c_n) / denom;
    let off = s * c * (1.0 + c_n2) / denom;
    let diag1 = s * s / denom;
    DensityOperator2::new(QubitOperator::from_real([[diag0, off], [off, diag1]]))
}

/// Spectrum of ρ₁ as `[λ_max, λ_min]`.
///
/// det ρ₁ simplifies to s²(1 − c^{2(N−1)})/(2+2c^N)², which is evaluated directly
/// so the small eigenvalue keeps its relative precision when ε ≪ 1.
pub fn rho1_eigenvalues(params: &CatParams) -> Result<[f64; 2]> {
    params.require_two_qubits()?;
    let s = params.sin_eps();
    let denom = 2.0 + 2.0 * params.cos_pow_n();
    let one_minus = -params.ln_cos_pow(2.0 * (params.n_f64() - 1.0)).exp_m1();
    let det = (s * s * one_minus / (denom * denom)).max(0.0);
    let large = 0.5 * (1.0 + (1.0 - 4.0 * det).max(0.0).sqrt());
    Ok([large, det / large])
}

/// S₁ = −tr(ρ₁ log₂ ρ₁) in bits.
pub fn entropy_s1(params: &CatParams) -> Result<f64> {
    rho1_eigenvalues(params).map(binary_spectrum_entropy)
}

/// Leading small-ε form of S₁, −ε² log₂(ε)/2 (0 at ε = 0).
pub fn entropy_s1_asymptotic(params: &CatParams) -> f64 {
    let e = params.epsilon();
    if e == 0.0 {
        0.0
    } else {
        -e * e * e.log2() / 2.0
    }
}
