//! Effective GHZ size of superpositions |ψ⟩ ∝ |φ₁⟩^⊗N + |φ₂⟩^⊗N with
//! |⟨φ₁|φ₂⟩|² = cos²ε.
//!
//! Three operational measures compare |ψ⟩ with an ideal n-qubit GHZ state:
//!
//! * [`decoherence`]: the rate at which the off-diagonal block decays under
//!   independent dephasing or depolarizing noise (n = N sin²ε);
//! * [`distillation`]: the mean GHZ size produced by local filtering of a single
//!   copy, and the entropy bound on many-copy distillation;
//! * [`loss`]: suppression of the off-diagonal block under random qubit loss
//!   (n = N(1 − cos ε)).
//!
//! All three scale like Nε². The [`oracle`] module rebuilds every closed form
//! from dense state vectors and operators for small N, and [`validation`] runs
//! those comparisons over a fixed grid.
//!
//! Qubit 1 is the most significant bit of every amplitude index.

pub mod binomial;
pub mod cat;
pub mod channels;
pub mod decoherence;
pub mod distillation;
pub mod error;
pub mod linalg;
pub mod loss;
pub mod oracle;
pub mod output;
pub mod report;
pub mod validation;

pub use cat::{entropy_s1, normalization_k, reduced_rho1, term_overlap, CatParams, TermOverlap};
pub use channels::{trace_norm, ChannelKind, ChannelSpec};
pub use decoherence::{
    cat_offdiag_norm, decay_curve, effective_size_decoherence, ghz_offdiag_norm, DecayCurve,
};
pub use distillation::{
    build_filter, distillation_bound, expected_n, outcome_distribution, simulate_protocol,
    success_probability, DistillationBound, DistributionRecord, FilterMeasurement,
    MonteCarloResult, OutcomeDistribution,
};
pub use error::{Error, Result};
pub use linalg::{DensityOperator2, QubitOperator};
pub use loss::{
    cat_loss_suppression, effective_size_loss, ghz_loss_suppression, loss_curve, LossCurve,
    LossModel,
};
pub use report::EffectiveSizeReport;
