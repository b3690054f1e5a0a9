//! Single-copy GHZ distillation by local filtering, and the entropy bound on
//! asymptotic distillation.
//!
//! Every party applies the two-outcome measurement {A, Ā}. A maps |φ₁⟩ ↦ k|0⟩ and
//! |φ₂⟩ ↦ k|1⟩; Ā has rank one, so a failed party factors out and leaves a cat
//! state on the rest. The parties that succeed share an ideal GHZ state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::cat::{entropy_s1, entropy_s1_asymptotic, CatParams};
use crate::error::{Error, Result};
use crate::linalg::QubitOperator;

/// Log-probabilities below this are reported as exactly 0.
pub const LN_UNDERFLOW: f64 = -700.0;

/// The local filter {A, Ā} with A†A + Ā†Ā = I.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterMeasurement {
    pub a: QubitOperator,
    pub a_bar: QubitOperator,
    /// k² = 1 − cos ε, the success weight ⟨φᵢ|A†A|φᵢ⟩.
    pub k_sq: f64,
}

impl FilterMeasurement {
    /// A†A + Ā†Ā.
    pub fn completeness(&self) -> QubitOperator {
        self.a.adjoint() * self.a + self.a_bar.adjoint() * self.a_bar
    }
}

/// A = (√(1−c)/s)·[[s, −c], [0, 1]] and Ā = √(I − A†A).
pub fn build_filter(params: &CatParams) -> Result<FilterMeasurement> {
    if params.epsilon() == 0.0 {
        return Err(Error::DegenerateFilter);
    }
    let (c, s) = (params.cos_eps(), params.sin_eps());
    // √(1−c)/s = 1/(√2 cos(ε/2)) without the cancellation in 1 − c
    let scale = 1.0 / (std::f64::consts::SQRT_2 * (0.5 * params.epsilon()).cos());
    let a = QubitOperator::from_real([[s, -c], [0.0, 1.0]]).scale_real(scale);
    let a_bar = (QubitOperator::identity() - a.adjoint() * a).psd_sqrt();
    Ok(FilterMeasurement {
        a,
        a_bar,
        k_sq: params.one_minus_cos(),
    })
}

/// Probability that party j (1-based) obtains outcome A.
///
/// Before any success this is (1−c)/(1+c^{N−j+1}); once some party has succeeded
/// it is 1−c.
pub fn success_probability(params: &CatParams, j: u64, any_prior_success: bool) -> Result<f64> {
    let n = params.n();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    Ok(success_probability_unchecked(params, j, any_prior_success))
}

fn success_probability_unchecked(params: &CatParams, j: u64, any_prior_success: bool) -> f64 {
    let p_tilde = params.one_minus_cos();
    if any_prior_success {
        p_tilde
    } else {
        let remaining = (params.n() - j + 1) as f64;
        p_tilde / (1.0 + params.ln_cos_pow(remaining).exp())
    }
}

/// ln Σ exp(xᵢ).
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Distribution of the number n of parties that end up in the GHZ state,
/// held as ln qₙ for n = 0..=N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    ln_q: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn from_ln(ln_q: Vec<f64>) -> Self {
        Self { ln_q }
    }

    pub fn n_qubits(&self) -> u64 {
        self.ln_q.len() as u64 - 1
    }

    pub fn ln_q(&self) -> &[f64] {
        &self.ln_q
    }

    /// Probabilities, with entries whose log is below [`LN_UNDERFLOW`] set to 0.
    pub fn q(&self) -> Vec<f64> {
        self.ln_q
            .iter()
            .map(|&l| if l < LN_UNDERFLOW { 0.0 } else { l.exp() })
            .collect()
    }

    /// ln Σ qₙ.
    pub fn ln_total(&self) -> f64 {
        log_sum_exp(&self.ln_q)
    }

    /// Σ n·qₙ.
    pub fn mean(&self) -> f64 {
        let terms: Vec<f64> = self
            .ln_q
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, l)| l + (n as f64).ln())
            .collect();
        log_sum_exp(&terms).exp()
    }
}

/// qₙ = (1−c)ⁿ c^{N−n} C(N,n)/(1+c^N) for n ≥ 1 and q₀ = 2c^N/(1+c^N).
pub fn outcome_distribution(params: &CatParams) -> OutcomeDistribution {
    let n = params.n();
    if params.epsilon() == 0.0 {
        let mut ln_q = vec![f64::NEG_INFINITY; n as usize + 1];
        ln_q[0] = 0.0;
        return OutcomeDistribution { ln_q };
    }
    let (p, q) = (params.one_minus_cos(), params.cos_eps());
    let (ln_p, ln_c) = (params.ln_one_minus_cos(), params.ln_cos());
    let ln_norm = params.log_cn().exp().ln_1p();
    let ln_q = (0..=n)
        .map(|k| {
            if k == 0 {
                std::f64::consts::LN_2 + params.log_cn() - ln_norm
            } else {
                binomial::ln_pmf(k, n, p, q, ln_p, ln_c) - ln_norm
            }
        })
        .collect();
    OutcomeDistribution { ln_q }
}

/// ⟨n⟩ = (1−c)N/(1+c^N).
pub fn expected_n(params: &CatParams) -> f64 {
    params.one_minus_cos() * params.n_f64() / (1.0 + params.cos_pow_n())
}

/// Small-ε, large-Nε² form Nε²/2.
pub fn expected_n_asymptotic(params: &CatParams) -> f64 {
    0.5 * params.n_f64() * params.epsilon() * params.epsilon()
}

/// Histogram of GHZ sizes over Monte Carlo trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloResult {
    pub counts: Vec<u64>,
    pub trials: u64,
    pub seed: u64,
}

impl MonteCarloResult {
    pub fn frequencies(&self) -> Vec<f64> {
        let t = self.trials as f64;
        self.counts.iter().map(|&c| c as f64 / t).collect()
    }

    pub fn mean(&self) -> f64 {
        let total: u64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(n, &c)| n as u64 * c)
            .sum();
        total as f64 / self.trials as f64
    }
}

/// Random stream for one trial: ChaCha20 keyed by `seed` (via `seed_from_u64`)
/// with the trial index as the stream number.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs one pass of the sequential protocol and returns the number of successes.
fn run_trial(params: &CatParams, rng: &mut impl Rng) -> u64 {
    let mut successes = 0;
    for j in 1..=params.n() {
        let p = success_probability_unchecked(params, j, successes > 0);
        if rng.random::<f64>() < p {
            successes += 1;
        }
    }
    successes
}

/// Monte Carlo simulation of the protocol on the compact state
/// (parties remaining, any success so far).
///
/// The counts depend only on `(params, trials, seed)`; trials run in parallel.
pub fn simulate_protocol(params: &CatParams, trials: u64, seed: u64) -> Result<MonteCarloResult> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let bins = params.n() as usize + 1;
    let counts = if params.epsilon() == 0.0 {
        let mut counts = vec![0; bins];
        counts[0] = trials;
        counts
    } else {
        (0..trials)
            .into_par_iter()
            .fold(
                || vec![0u64; bins],
                |mut acc, t| {
                    acc[run_trial(params, &mut trial_rng(seed, t)) as usize] += 1;
                    acc
                },
            )
            .reduce(
                || vec![0u64; bins],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    Ok(MonteCarloResult {
        counts,
        trials,
        seed,
    })
}

/// Bounds on the mean number Σ pₙ n of distilled GHZ parties per copy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistillationBound {
    /// N·S₁(ρ₁), from monotonicity of the single-party entropy.
    pub exact_bound: f64,
    /// −Nε² log₂(ε)/2.
    pub asymptotic_bound: f64,
    /// ⟨n⟩ achieved by the single-copy filter protocol.
    pub lower_bound_mean: f64,
}

pub fn distillation_bound(params: &CatParams) -> Result<DistillationBound> {
    let n = params.n_f64();
    Ok(DistillationBound {
        exact_bound: n * entropy_s1(params)?,
        asymptotic_bound: n * entropy_s1_asymptotic(params),
        lower_bound_mean: expected_n(params),
    })
}

/// Which route produced a [`DistributionRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionSource {
    Exact,
    Mc,
}

/// JSON form `{"N", "epsilon", "q", "source", "trials", "seed"}`; `trials` and
/// `seed` are null for exact distributions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionRecord {
    #[serde(rename = "N")]
    pub n: u64,
    pub epsilon: f64,
    pub q: Vec<f64>,
    pub source: DistributionSource,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

impl DistributionRecord {
    pub fn exact(params: &CatParams, dist: &OutcomeDistribution) -> Self {
        Self {
            n: params.n(),
            epsilon: params.epsilon(),
            q: dist.q(),
            source: DistributionSource::Exact,
            trials: None,
            seed: None,
        }
    }

    pub fn monte_carlo(params: &CatParams, mc: &MonteCarloResult) -> Self {
        Self {
            n: params.n(),
            epsilon: params.epsilon(),
            q: mc.frequencies(),
            source: DistributionSource::Mc,
            trials: Some(mc.trials),
            seed: Some(mc.seed),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn p(n: u64, e: f64) -> CatParams {
        CatParams::new(n, e).unwrap()
    }

    #[test]
    fn filter_rejects_identical_states() {
        assert_eq!(build_filter(&p(3, 0.0)), Err(Error::DegenerateFilter));
    }

    #[test]
    fn filter_is_identity_for_orthogonal_states() {
        let f = build_filter(&p(3, FRAC_PI_2)).unwrap();
        assert!(f.a.max_abs_diff(&QubitOperator::identity()) < 1e-15);
        assert!(f.a_bar.max_abs_diff(&QubitOperator::zero()) < 1e-7);
        assert!(f.a_bar.frobenius_sq() < 1e-14);
    }

    #[test]
    fn filter_maps_onto_computational_basis() {
        let params = p(3, 0.6);
        let f = build_filter(&params).unwrap();
        let k = f.k_sq.sqrt();
        let a1 = f.a.apply(params.phi1());
        let a2 = f.a.apply(params.phi2());
        assert!((a1[0] - k).norm() < 1e-15 && a1[1].norm() < 1e-15);
        assert!(a2[0].norm() < 1e-15 && (a2[1] - k).norm() < 1e-15);
    }

    #[test]
    fn filter_success_on_phi1_at_sixty_degrees() {
        let params = p(2, FRAC_PI_3);
        let f = build_filter(&params).unwrap();
        let v = f.a.apply(params.phi1());
        let born = v[0].norm_sqr() + v[1].norm_sqr();
        assert_relative_eq!(born, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn success_probability_examples() {
        for j in 1..=4 {
            assert_relative_eq!(
                success_probability(&p(4, FRAC_PI_2), j, false).unwrap(),
                1.0,
                epsilon = 1e-15
            );
            assert_relative_eq!(
                success_probability(&p(4, 0.3), j, true).unwrap(),
                1.0 - 0.3f64.cos(),
                max_relative = 1e-14
            );
        }
        assert_relative_eq!(
            success_probability(&p(2, FRAC_PI_3), 1, false).unwrap(),
            0.4,
            epsilon = 1e-15
        );
        assert!(success_probability(&p(2, 0.3), 0, false).is_err());
        assert!(success_probability(&p(2, 0.3), 3, true).is_err());
    }

    #[test]
    fn two_qubit_distribution() {
        let q = outcome_distribution(&p(2, FRAC_PI_3)).q();
        assert_relative_eq!(q[0], 0.4, epsilon = 1e-14);
        assert_relative_eq!(q[1], 0.4, epsilon = 1e-14);
        assert_relative_eq!(q[2], 0.2, epsilon = 1e-14);
        assert_relative_eq!(expected_n(&p(2, FRAC_PI_3)), 0.8, epsilon = 1e-14);
    }

    #[test]
    fn distribution_endpoints() {
        let q = outcome_distribution(&p(6, FRAC_PI_2)).q();
        assert_relative_eq!(q[6], 1.0, epsilon = 1e-14);
        assert!(q[..6].iter().all(|&x| x < 1e-14));
        let q = outcome_distribution(&p(6, 0.0)).q();
        assert_eq!(q, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(expected_n(&p(6, 0.0)), 0.0);
        assert_relative_eq!(expected_n(&p(6, FRAC_PI_2)), 6.0, epsilon = 1e-12);
    }

    /// Sequential-protocol tree over (parties left, success seen): an oracle for
    /// Eq.-free probabilities that only uses the per-step success rule.
    fn tree_distribution(params: &CatParams) -> Vec<f64> {
        let n = params.n() as usize;
        // state: (successes so far) -> probability
        let mut probs = vec![0.0; n + 1];
        probs[0] = 1.0;
        for j in 1..=params.n() {
            let mut next = vec![0.0; n + 1];
            for (s, &w) in probs.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                let pj = success_probability(params, j, s > 0).unwrap();
                next[s + 1] += w * pj;
                next[s] += w * (1.0 - pj);
            }
            probs = next;
        }
        probs
    }

    #[test]
    fn closed_form_matches_sequential_tree() {
        for &(n, e) in &[(1, 0.4), (2, FRAC_PI_3), (5, 0.2), (9, 1.1), (30, 0.7)] {
            let params = p(n, e);
            let exact = outcome_distribution(&params).q();
            let tree = tree_distribution(&params);
            for (a, b) in exact.iter().zip(&tree) {
                assert!((a - b).abs() < 1e-12, "{n} {e}: {exact:?} vs {tree:?}");
            }
        }
    }

    #[test]
    fn headline_distribution_sums_to_one() {
        let params = p(1_000_000, 1e-3);
        let d = outcome_distribution(&params);
        assert!(d.ln_total().abs() < 1e-12);
        assert_relative_eq!(d.mean(), expected_n(&params), max_relative = 1e-10);
        // 50-digit reference: 0.31122964945694571707…
        assert_relative_eq!(
            expected_n(&params),
            0.311_229_649_456_945_7,
            max_relative = 1e-12
        );
        let q = d.q();
        assert_eq!(q[q.len() - 1], 0.0);
        assert!(d.ln_q()[q.len() - 1].is_finite());
    }

    #[test]
    fn monte_carlo_trivial_and_deterministic() {
        let r = simulate_protocol(&p(5, FRAC_PI_2), 200, 7).unwrap();
        assert_eq!(r.counts[5], 200);
        let a = simulate_protocol(&p(8, 0.5), 2_000, 42).unwrap();
        let b = simulate_protocol(&p(8, 0.5), 2_000, 42).unwrap();
        assert_eq!(a, b);
        let c = simulate_protocol(&p(8, 0.5), 2_000, 43).unwrap();
        assert_ne!(a.counts, c.counts);
        assert!(simulate_protocol(&p(8, 0.5), 0, 1).is_err());
        assert_eq!(simulate_protocol(&p(8, 0.0), 10, 1).unwrap().counts[0], 10);
    }

    #[test]
    fn monte_carlo_two_qubits_within_standard_errors() {
        let trials = 100_000;
        let r = simulate_protocol(&p(2, FRAC_PI_3), trials, 2024).unwrap();
        for (emp, exact) in r.frequencies().iter().zip([0.4, 0.4, 0.2]) {
            let se = (exact * (1.0 - exact) / trials as f64).sqrt();
            assert!((emp - exact).abs() <= 4.0 * se, "{emp} vs {exact}");
        }
    }

    #[test]
    fn monte_carlo_mean_within_clt_bound() {
        let params = p(8, 0.5);
        let trials = 10_000;
        let r = simulate_protocol(&params, trials, 99).unwrap();
        let q = outcome_distribution(&params).q();
        let mean = expected_n(&params);
        let var: f64 = q
            .iter()
            .enumerate()
            .map(|(n, qn)| qn * (n as f64 - mean).powi(2))
            .sum();
        assert!((r.mean() - mean).abs() <= 4.0 * (var / trials as f64).sqrt());
    }

    #[test]
    fn monte_carlo_passes_chi_squared() {
        use statrs::distribution::{ChiSquared, ContinuousCDF};
        let params = p(6, 0.8);
        let trials = 100_000;
        let r = simulate_protocol(&params, trials, 5).unwrap();
        let q = outcome_distribution(&params).q();
        let stat: f64 = r
            .counts
            .iter()
            .zip(&q)
            .map(|(&obs, &qn)| {
                let e = qn * trials as f64;
                (obs as f64 - e).powi(2) / e
            })
            .sum();
        let critical = ChiSquared::new((q.len() - 1) as f64)
            .unwrap()
            .inverse_cdf(1.0 - 1e-3);
        assert!(stat < critical, "chi2 {stat} >= {critical}");
    }

    #[test]
    fn bound_examples() {
        let b = distillation_bound(&p(12, FRAC_PI_2)).unwrap();
        assert_relative_eq!(b.exact_bound, 12.0, epsilon = 1e-12);
        assert_relative_eq!(b.lower_bound_mean, 12.0, epsilon = 1e-12);
        let b = distillation_bound(&p(10_000_000, 1e-3)).unwrap();
        assert!(b.lower_bound_mean <= b.exact_bound);
        assert_relative_eq!(
            b.asymptotic_bound,
            49.828_921_423_310_44,
            max_relative = 1e-12
        );
        assert!(distillation_bound(&p(1, 0.3)).is_err());
    }

    #[test]
    fn record_json_shape() {
        let params = p(2, FRAC_PI_3);
        let rec = DistributionRecord::exact(&params, &outcome_distribution(&params));
        let json = rec.to_json();
        assert!(
            json.starts_with(r#"{"N":2,"epsilon":1.0471975511965979,"q":["#),
            "{json}"
        );
        assert!(
            json.ends_with(r#""source":"exact","trials":null,"seed":null}"#),
            "{json}"
        );
        let mc = simulate_protocol(&params, 10, u64::MAX).unwrap();
        let rec = DistributionRecord::monte_carlo(&params, &mc);
        let back: DistributionRecord = serde_json::from_str(&rec.to_json()).unwrap();
        assert_eq!(back, rec);
    }

    proptest! {
        #[test]
        fn filter_invariants(e in 1e-6f64..=FRAC_PI_2) {
            let params = p(4, e);
            let f = build_filter(&params).unwrap();
            prop_assert!(f.completeness().max_abs_diff(&QubitOperator::identity()) < 1e-12);
            let [_, low] = (f.a_bar.adjoint() * f.a_bar).hermitian_eigenvalues();
            prop_assert!(low.abs() <= 1e-12);
            let gram = f.a.adjoint() * f.a;
            for phi in [params.phi1(), params.phi2()] {
                prop_assert!((gram.sandwich(phi, phi) - Complex64::from(f.k_sq)).norm() < 1e-12);
            }
            let [hi, lo] = gram.hermitian_eigenvalues();
            let c = e.cos();
            prop_assert!((hi - 1.0).abs() < 1e-12);
            prop_assert!((lo - (1.0 - c) / (1.0 + c)).abs() < 1e-12);
        }

        #[test]
        fn distribution_normalized_and_mean_matches(n in 1u64..5_000, e in 1e-4f64..=FRAC_PI_2) {
            let params = p(n, e);
            let d = outcome_distribution(&params);
            prop_assert!(d.ln_total().abs() < 1e-12);
            prop_assert!(d.q().iter().all(|&x| x >= 0.0));
            let mean = expected_n(&params);
            prop_assert!((d.mean() - mean).abs() <= 1e-10 * mean);
        }

        #[test]
        fn success_probabilities_are_probabilities(n in 1u64..1_000, e in 0.0f64..=FRAC_PI_2, flag: bool) {
            let params = p(n, e);
            for j in [1, n / 2 + 1, n] {
                let pr = success_probability(&params, j, flag).unwrap();
                prop_assert!((0.0..=1.0).contains(&pr));
            }
        }
    }
}
