//! Oracle-equivalence checks over the standard small-N grid.
//!
//! Each check compares a closed form against its brute-force counterpart and
//! records the worst error seen against a fixed tolerance.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cat::{normalization_k, reduced_rho1, CatParams};
use crate::channels::{ChannelKind, ChannelSpec};
use crate::decoherence::{cat_offdiag_norm, ghz_offdiag_norm};
use crate::distillation::{build_filter, expected_n, outcome_distribution};
use crate::error::{Error, Result};
use crate::linalg::QubitOperator;
use crate::loss::{cat_loss_suppression, LossModel};
use crate::oracle::{self, DenseOperator, DenseState, ENUMERATION_CAP};

pub const EPSILON_GRID: [f64; 4] = [0.1, 0.3, FRAC_PI_4, FRAC_PI_2 - 0.1];
pub const GAMMA_T_GRID: [f64; 3] = [0.05, 0.5, 2.0];
pub const LAMBDA_GRID: [f64; 3] = [0.1, 0.3, 0.7];

pub const TOL_DECOHERENCE: f64 = 1e-9;
pub const TOL_CHANNEL_EQUIVALENCE: f64 = 1e-12;
pub const TOL_GHZ_RATE: f64 = 1e-12;
pub const TOL_NORMALIZATION: f64 = 1e-12;
pub const TOL_RHO1: f64 = 1e-12;
pub const TOL_DISTRIBUTION: f64 = 1e-10;
pub const TOL_SUM: f64 = 1e-12;
pub const TOL_FIDELITY: f64 = 1e-10;
pub const TOL_COMPLETENESS: f64 = 1e-12;
pub const TOL_EXPECTATION: f64 = 1e-10;
pub const TOL_LOSS: f64 = 1e-9;

/// Outcome of one named check, aggregated over its grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    /// Grid point with the largest error.
    pub worst_case: String,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{:.3e}\t{:.0e}\t{}\t{}",
            self.name,
            self.cases,
            self.max_error,
            self.tolerance,
            if self.passed() { "PASS" } else { "FAIL" },
            self.worst_case
        )
    }
}

pub const TABLE_HEADER: &str = "check\tcases\tmax_error\ttolerance\tresult\tworst_case";

struct Tracker {
    result: CheckResult,
}

impl Tracker {
    fn new(name: &str, tolerance: f64) -> Self {
        Self {
            result: CheckResult {
                name: name.to_string(),
                cases: 0,
                max_error: 0.0,
                tolerance,
                worst_case: String::new(),
            },
        }
    }

    fn record(&mut self, error: f64, case: impl FnOnce() -> String) {
        self.result.cases += 1;
        // NaN counts as a failure
        if error.is_nan() || error > self.result.max_error {
            self.result.max_error = if error.is_nan() { f64::INFINITY } else { error };
            self.result.worst_case = case();
        }
    }

    fn finish(self) -> CheckResult {
        self.result
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}

fn grid(max_n: u64, min_n: u64) -> impl Iterator<Item = CatParams> {
    (min_n..=max_n).flat_map(|n| {
        EPSILON_GRID
            .iter()
            .map(move |&e| CatParams::new(n, e).expect("grid point"))
    })
}

/// Oracle trace norm of E^⊗N(b₀^⊗N) against d^{N/2}, both channels.
pub fn check_decoherence(max_n: u64) -> Result<CheckResult> {
    let mut t = Tracker::new("decoherence_closed_form", TOL_DECOHERENCE);
    for params in grid(max_n, 2) {
        let block = DenseOperator::tensor_power(&params.coherence_operator(), params.n())?;
        for g in GAMMA_T_GRID {
            for kind in ChannelKind::ALL {
                let ch = ChannelSpec::new(kind, g)?;
                let dense = oracle::dense_trace_norm(&oracle::apply_product_channel(&block, &ch)?)?;
                let closed = cat_offdiag_norm(&params, g, kind)?;
                t.record(rel(dense, closed), || {
                    format!("N={} eps={} gt={g} {kind:?}", params.n(), params.epsilon())
                });
            }
        }
    }
    Ok(t.finish())
}

/// ‖bₜ‖₁ under dephasing and depolarizing must coincide.
pub fn check_channel_equivalence() -> Result<CheckResult> {
    let mut t = Tracker::new("channel_equivalence", TOL_CHANNEL_EQUIVALENCE);
    for e in EPSILON_GRID {
        let b0 = CatParams::new(1, e)?.coherence_operator();
        for g in GAMMA_T_GRID {
            let deph = ChannelSpec::dephasing(g)?.apply_kraus(&b0).trace_norm();
            let depo = ChannelSpec::depolarizing(g)?.apply_kraus(&b0).trace_norm();
            t.record((deph - depo).abs(), || format!("eps={e} gt={g}"));
        }
    }
    Ok(t.finish())
}

/// Oracle ‖E^⊗n(|0⟩⟨1|^⊗n)‖₁ against e^{−nγt}.
pub fn check_ghz_rate(max_n: u64) -> Result<CheckResult> {
    let mut t = Tracker::new("ghz_rate", TOL_GHZ_RATE);
    let a0 = QubitOperator::dyad(0, 1);
    for n in 1..=max_n {
        let block = DenseOperator::tensor_power(&a0, n)?;
        for g in GAMMA_T_GRID {
            for kind in ChannelKind::ALL {
                let ch = ChannelSpec::new(kind, g)?;
                let dense = oracle::dense_trace_norm(&oracle::apply_product_channel(&block, &ch)?)?;
                t.record(rel(dense, ghz_offdiag_norm(n, g)?), || {
                    format!("n={n} gt={g} {kind:?}")
                });
            }
        }
    }
    Ok(t.finish())
}

/// ‖raw superposition‖² against K.
pub fn check_normalization(max_n: u64) -> Result<CheckResult> {
    let mut t = Tracker::new("normalization_k", TOL_NORMALIZATION);
    for params in grid(max_n, 1) {
        let raw = oracle::raw_cat_superposition(&params)?.norm().powi(2);
        t.record(rel(raw, normalization_k(&params)), || {
            format!("N={} eps={}", params.n(), params.epsilon())
        });
    }
    Ok(t.finish())
}

/// Closed-form ρ₁ against the partial trace of the dense state.
pub fn check_reduced_rho1(max_n: u64) -> Result<CheckResult> {
    let mut t = Tracker::new("reduced_rho1", TOL_RHO1);
    for params in grid(max_n, 2) {
        let dense = oracle::partial_trace_to_first(&oracle::build_cat_state(&params)?)?;
        let closed = reduced_rho1(&params)?;
        t.record(dense.operator().max_abs_diff(closed.operator()), || {
            format!("N={} eps={}", params.n(), params.epsilon())
        });
    }
    Ok(t.finish())
}

/// Exhaustive measurement tree: qₙ, Σqₙ, GHZ fidelity of success branches,
/// completeness of the filter.
pub fn check_distillation(max_n: u64) -> Result<Vec<CheckResult>> {
    let mut dist = Tracker::new("distillation_q", TOL_DISTRIBUTION);
    let mut sum = Tracker::new("distillation_sum", TOL_SUM);
    let mut fid = Tracker::new("distillation_ghz_fidelity", TOL_FIDELITY);
    let mut complete = Tracker::new("filter_completeness", TOL_COMPLETENESS);
    let mut mean = Tracker::new("expected_n", TOL_EXPECTATION);
    for params in grid(max_n.min(ENUMERATION_CAP as u64), 1) {
        let case = || format!("N={} eps={}", params.n(), params.epsilon());
        let tree = oracle::enumerate_protocol(&params)?;
        let closed = outcome_distribution(&params).q();
        let worst = tree
            .q
            .iter()
            .zip(&closed)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        dist.record(worst, case);
        sum.record((closed.iter().sum::<f64>() - 1.0).abs(), case);
        for b in tree
            .branches
            .iter()
            .filter(|b| b.successes() >= 1 && b.probability > 0.0)
        {
            let f = b
                .state
                .as_ref()
                .map_or(0.0, |s| s.ghz_fidelity_on(&b.success_set()));
            fid.record((f - 1.0).abs(), || {
                format!("{} branch={:?}", case(), b.outcomes)
            });
        }
        let f = build_filter(&params)?;
        complete.record(
            f.completeness().max_abs_diff(&QubitOperator::identity()),
            case,
        );
        let tree_mean: f64 = tree.q.iter().enumerate().map(|(n, q)| n as f64 * q).sum();
        mean.record(rel(tree_mean, expected_n(&params)), case);
    }
    Ok(vec![
        dist.finish(),
        sum.finish(),
        fid.finish(),
        complete.finish(),
        mean.finish(),
    ])
}

/// After Ā on party 1 the state is |χ⟩ ⊗ (cat state on N−1 parties).
pub fn check_residual_factorization(max_n: u64) -> Result<CheckResult> {
    let mut t = Tracker::new("residual_factorization", TOL_FIDELITY);
    for params in grid(max_n.min(ENUMERATION_CAP as u64), 2) {
        let (_, a_bar) = oracle::filter_from_definition(&params)?;
        let after = oracle::build_cat_state(&params)?
            .apply_local(&a_bar, 1)
            .normalized();
        let chi = DenseState {
            n_qubits: 1,
            amplitudes: a_bar.apply(params.phi1()).to_vec(),
        }
        .normalized();
        let rest = oracle::build_cat_state(&CatParams::new(params.n() - 1, params.epsilon())?)?;
        let f = after.fidelity(&chi.tensor(&rest));
        t.record((f - 1.0).abs(), || {
            format!("N={} eps={}", params.n(), params.epsilon())
        });
    }
    Ok(t.finish())
}

/// Exhaustive loss-subset sum against (1 − λ(1−cos ε))^N.
pub fn check_loss(max_n: u64) -> Result<CheckResult> {
    let mut t = Tracker::new("loss_suppression", TOL_LOSS);
    for params in grid(max_n.min(ENUMERATION_CAP as u64), 1) {
        for lam in LAMBDA_GRID {
            let model = LossModel::new(lam)?;
            let dense = oracle::enumerate_loss(&params, &model)?;
            let closed = cat_loss_suppression(&params, &model);
            t.record((dense - closed).abs(), || {
                format!("N={} eps={} lambda={lam}", params.n(), params.epsilon())
            });
        }
    }
    Ok(t.finish())
}

/// Runs every oracle check for N up to `max_n` (2 ≤ max_n ≤ 8).
pub fn run_validation(max_n: u64) -> Result<Vec<CheckResult>> {
    if max_n > ENUMERATION_CAP as u64 {
        return Err(Error::SizeCap {
            what: "validation grid",
            n: max_n,
            cap: ENUMERATION_CAP as u64,
        });
    }
    if max_n < 2 {
        return Err(Error::TooFewQubits { min: 2, got: max_n });
    }
    let mut out = vec![
        check_decoherence(max_n)?,
        check_channel_equivalence()?,
        check_ghz_rate(max_n)?,
        check_normalization(max_n)?,
        check_reduced_rho1(max_n)?,
    ];
    out.extend(check_distillation(max_n)?);
    out.push(check_residual_factorization(max_n)?);
    out.push(check_loss(max_n)?);
    Ok(out)
}
