//! Single-qubit decoherence channels at dimensionless time γt.
//!
//! Each channel is available both as a Kraus set (used by the dense oracle) and
//! as a closed-form linear action on arbitrary 2×2 operators (the fast path).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QubitOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    /// E(ρ) = p₀ρ + (1−p₀)σ_z ρ σ_z with p₀ = (1 + e^{−γt})/2.
    Dephasing,
    /// Ẽ(ρ) = Σ pᵢ σᵢ ρ σᵢ with p₀ = (3μ+1)/4 and p₁ = p₂ = p₃ = (1−μ)/4.
    Depolarizing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 2] = [ChannelKind::Dephasing, ChannelKind::Depolarizing];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    kind: ChannelKind,
    gamma_t: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, gamma_t: f64) -> Result<Self> {
        if !gamma_t.is_finite() || gamma_t < 0.0 {
            return Err(Error::InvalidGammaT(gamma_t));
        }
        Ok(Self { kind, gamma_t })
    }

    pub fn dephasing(gamma_t: f64) -> Result<Self> {
        Self::new(ChannelKind::Dephasing, gamma_t)
    }

    pub fn depolarizing(gamma_t: f64) -> Result<Self> {
        Self::new(ChannelKind::Depolarizing, gamma_t)
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn gamma_t(&self) -> f64 {
        self.gamma_t
    }

    /// μ = e^{−γt}, the factor applied to coherences.
    pub fn mu(&self) -> f64 {
        (-self.gamma_t).exp()
    }

    /// Pauli weights (p₀, …) of the Kraus decomposition.
    pub fn pauli_weights(&self) -> Vec<f64> {
        let mu = self.mu();
        match self.kind {
            ChannelKind::Dephasing => vec![(1.0 + mu) / 2.0, (1.0 - mu) / 2.0],
            ChannelKind::Depolarizing => {
                let q = (1.0 - mu) / 4.0;
                vec![(3.0 * mu + 1.0) / 4.0, q, q, q]
            }
        }
    }

    /// Kraus operators √pᵢ σᵢ.
    pub fn kraus(&self) -> Vec<QubitOperator> {
        let paulis: &[QubitOperator] = match self.kind {
            ChannelKind::Dephasing => &[QubitOperator::identity(), QubitOperator::pauli_z()],
            ChannelKind::Depolarizing => &[
                QubitOperator::identity(),
                QubitOperator::pauli_x(),
                QubitOperator::pauli_y(),
                QubitOperator::pauli_z(),
            ],
        };
        self.pauli_weights()
            .iter()
            .zip(paulis)
            .map(|(p, s)| s.scale_real(p.max(0.0).sqrt()))
            .collect()
    }

    /// Σ K† K, which must be the identity.
    pub fn kraus_completeness(&self) -> QubitOperator {
        self.kraus()
            .iter()
            .fold(QubitOperator::zero(), |acc, k| acc + k.adjoint() * *k)
    }

    /// Σ K X K† over the Kraus set.
    pub fn apply_kraus(&self, x: &QubitOperator) -> QubitOperator {
        self.kraus()
            .iter()
            .fold(QubitOperator::zero(), |acc, k| acc + *k * *x * k.adjoint())
    }

    /// Closed-form action on any operator X.
    ///
    /// Dephasing scales the off-diagonal entries by μ; depolarizing maps
    /// X ↦ μX + (1−μ) tr(X) I/2.
    pub fn apply(&self, x: &QubitOperator) -> QubitOperator {
        let mu = self.mu();
        match self.kind {
            ChannelKind::Dephasing => {
                let mut out = *x;
                out.entries[0][1] *= mu;
                out.entries[1][0] *= mu;
                out
            }
            ChannelKind::Depolarizing => {
                let mixed = QubitOperator::identity().scale(x.trace() * (0.5 * (1.0 - mu)));
                x.scale_real(mu) + mixed
            }
        }
    }

    /// Choi matrix Σ_ij |i⟩⟨j| ⊗ E(|i⟩⟨j|), row-major 4×4.
    pub fn choi_matrix(&self) -> [[Complex64; 4]; 4] {
        let mut choi = [[Complex64::new(0.0, 0.0); 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                let image = self.apply(&QubitOperator::dyad(i, j));
                for r in 0..2 {
                    for c in 0..2 {
                        choi[2 * i + r][2 * j + c] = image.get(r, c);
                    }
                }
            }
        }
        choi
    }
}

/// ‖X‖₁, the sum of singular values.
pub fn trace_norm(x: &QubitOperator) -> f64 {
    x.trace_norm()
}
