//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use catsize_core::channels::{ChannelKind, ChannelSpec};
use catsize_core::decoherence::{cat_offdiag_norm, ghz_offdiag_norm};
use catsize_core::distillation::{
    build_filter, distillation_bound, expected_n, expected_n_asymptotic, outcome_distribution,
    simulate_protocol,
};
use catsize_core::loss::{effective_size_loss, effective_size_loss_numeric};
use catsize_core::oracle;
use catsize_core::validation::{self, CheckResult, EPSILON_GRID, GAMMA_T_GRID};
use catsize_core::{reduced_rho1, CatParams, EffectiveSizeReport, QubitOperator};

struct Outcome {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn p(n: u64, e: f64) -> CatParams {
    CatParams::new(n, e).expect("valid parameters")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn checks_pass(results: &[CheckResult]) -> (bool, String) {
    let ok = results.iter().all(CheckResult::passed);
    let detail = results
        .iter()
        .map(|r| format!("{} {:.2e}/{:.0e}", r.name, r.max_error, r.tolerance))
        .collect::<Vec<_>>()
        .join("; ");
    (ok, detail)
}

fn c1_decoherence() -> Outcome {
    let start = Instant::now();
    let r = validation::check_decoherence(8).expect("oracle grid");
    let elapsed = start.elapsed();
    Outcome {
        id: "1",
        title: "decoherence closed form d^{N/2} vs dense oracle",
        passed: r.passed() && r.cases == 7 * 4 * 3 * 2 && elapsed < Duration::from_secs(300),
        detail: format!(
            "{} cases, max rel err {:.2e} (tol 1e-9), {:.1?}",
            r.cases, r.max_error, elapsed
        ),
    }
}

fn c2_channel_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    for e in EPSILON_GRID {
        let b0 = p(1, e).coherence_operator();
        for g in GAMMA_T_GRID {
            let deph = ChannelSpec::dephasing(g).unwrap().apply(&b0).trace_norm();
            let depo = ChannelSpec::depolarizing(g)
                .unwrap()
                .apply(&b0)
                .trace_norm();
            worst = worst.max((deph - depo).abs());
            for n in 2..=8 {
                let a = cat_offdiag_norm(&p(n, e), g, ChannelKind::Dephasing).unwrap();
                let b = cat_offdiag_norm(&p(n, e), g, ChannelKind::Depolarizing).unwrap();
                worst = worst.max((a - b).abs());
            }
        }
    }
    let oracle_check = validation::check_channel_equivalence().unwrap();
    Outcome {
        id: "2",
        title: "dephasing and depolarizing give identical ||b_t||_1",
        passed: worst <= 1e-12 && oracle_check.passed(),
        detail: format!(
            "closed form {worst:.2e}, Kraus {:.2e} (tol 1e-12)",
            oracle_check.max_error
        ),
    }
}

fn c3_ghz_rate() -> Outcome {
    let dense = validation::check_ghz_rate(8).unwrap();
    let mut worst: f64 = 0.0;
    for n in [1u64, 8, 100, 10_000, 1_000_000] {
        for g in [1e-6, 0.05, 0.5, 2.0] {
            worst = worst.max(rel(
                ghz_offdiag_norm(n, g).unwrap(),
                (-(n as f64) * g).exp(),
            ));
        }
    }
    Outcome {
        id: "3",
        title: "GHZ coherence decays as e^{-n gamma t}",
        passed: dense.passed() && worst <= 1e-12,
        detail: format!(
            "oracle n<=8 {:.2e}, closed form {worst:.2e} (tol 1e-12)",
            dense.max_error
        ),
    }
}

fn c4_distillation() -> Outcome {
    let results = validation::check_distillation(8).unwrap();
    let wanted = [
        "distillation_q",
        "distillation_sum",
        "distillation_ghz_fidelity",
        "filter_completeness",
    ];
    let picked: Vec<CheckResult> = results
        .into_iter()
        .filter(|r| wanted.contains(&r.name.as_str()))
        .collect();
    let (ok, detail) = checks_pass(&picked);
    Outcome {
        id: "4",
        title: "protocol tree reproduces q_n, GHZ fidelity, completeness",
        passed: ok && picked.len() == 4,
        detail,
    }
}

fn c5a_expectation_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let grid = (1..=8).flat_map(|n| EPSILON_GRID.map(|e| (n, e)));
    for (n, e) in grid.chain([
        (100, 0.2),
        (5_000, 0.05),
        (1_000_000, 1e-3),
        (10_000_000, 1e-3),
    ]) {
        let params = p(n, e);
        worst = worst.max(rel(
            outcome_distribution(&params).mean(),
            expected_n(&params),
        ));
    }
    Outcome {
        id: "5a",
        title: "<n> = (1-c)N/(1+c^N) equals sum n q_n",
        passed: worst <= 1e-10,
        detail: format!("max rel err {worst:.2e} (tol 1e-10)"),
    }
}

fn c5b_expectation_asymptote() -> Outcome {
    let params = p(1_000_000, 1e-3);
    let (mean, target) = (expected_n(&params), expected_n_asymptotic(&params));
    let err = rel(mean, target);
    Outcome {
        id: "5b",
        title: "<n> within 0.1% of N eps^2/2 at N=1e6, eps=1e-3",
        passed: err <= 1e-3,
        detail: format!("<n> = {mean:.6}, N eps^2/2 = {target}, rel diff {err:.3} (tol 1e-3)"),
    }
}

fn c6_monte_carlo() -> Outcome {
    let params = p(2, FRAC_PI_3);
    let trials = 100_000;
    let start = Instant::now();
    let a = simulate_protocol(&params, trials, 20_021_106).unwrap();
    let elapsed = start.elapsed();
    let b = simulate_protocol(&params, trials, 20_021_106).unwrap();
    let mut worst_z: f64 = 0.0;
    for (emp, exact) in a.frequencies().iter().zip([0.4, 0.4, 0.2]) {
        let se = (exact * (1.0 - exact) / trials as f64).sqrt();
        worst_z = worst_z.max((emp - exact).abs() / se);
    }
    Outcome {
        id: "6",
        title: "Monte Carlo 1e5 trials within 4 standard errors, deterministic",
        passed: worst_z <= 4.0 && a == b && elapsed < Duration::from_secs(10),
        detail: format!(
            "max |z| {worst_z:.2}, deterministic {}, {elapsed:.1?}",
            a == b
        ),
    }
}

fn c7a_reduced_state() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=10 {
        for e in EPSILON_GRID.into_iter().chain([0.4, FRAC_PI_2]) {
            let params = p(n, e);
            let dense =
                oracle::partial_trace_to_first(&oracle::build_cat_state(&params).unwrap()).unwrap();
            let closed = reduced_rho1(&params).unwrap();
            worst = worst.max(dense.operator().max_abs_diff(closed.operator()));
        }
    }
    Outcome {
        id: "7a",
        title: "rho_1 closed form equals oracle partial trace (N<=10)",
        passed: worst <= 1e-12,
        detail: format!("max entry err {worst:.2e} (tol 1e-12)"),
    }
}

fn c7b_entropy_asymptote() -> Outcome {
    let b = distillation_bound(&p(10_000_000, 1e-3)).unwrap();
    let err = rel(b.exact_bound, b.asymptotic_bound);
    Outcome {
        id: "7b",
        title: "N S_1 within 2% of -N eps^2 log2(eps)/2 at N=1e7, eps=1e-3",
        passed: err <= 0.02,
        detail: format!(
            "N S_1 = {:.4}, asymptote = {:.4}, rel diff {err:.3} (tol 0.02)",
            b.exact_bound, b.asymptotic_bound
        ),
    }
}

fn c7c_bound_ordering() -> Outcome {
    let mut violations = 0;
    let mut cases = 0;
    for e in [1e-4f64, 1e-3, 0.01, 0.05, 0.1, 0.2] {
        for n_eps_sq in [10.0, 30.0, 100.0, 1000.0] {
            let n = (n_eps_sq / (e * e)).ceil() as u64;
            let b = distillation_bound(&p(n, e)).unwrap();
            cases += 1;
            if b.lower_bound_mean > b.exact_bound {
                violations += 1;
            }
        }
    }
    Outcome {
        id: "7c",
        title: "<n> <= N S_1 on the N eps^2 >= 10 grid",
        passed: violations == 0,
        detail: format!("{violations} violations in {cases} cases"),
    }
}

fn c8_loss() -> Outcome {
    let oracle_check = validation::check_loss(8).unwrap();
    let params = p(1_000_000, 1e-3);
    let n_loss = effective_size_loss(&params);
    let rate_err = rel(effective_size_loss_numeric(&params), n_loss);
    let half = 0.5 * 1e6 * 1e-6;
    let approx_err = rel(n_loss, half);
    Outcome {
        id: "8",
        title: "loss: subset oracle, rate matching, N(1-cos eps) ~ N eps^2/2",
        passed: oracle_check.passed() && rate_err <= 1e-6 && approx_err <= 1e-6,
        detail: format!(
            "oracle {:.2e} (tol 1e-9), rate {rate_err:.2e}, vs N eps^2/2 {approx_err:.2e} (tol 1e-6)",
            oracle_check.max_error
        ),
    }
}

fn c9a_headline() -> Outcome {
    let start = Instant::now();
    let r = EffectiveSizeReport::new(&p(1_000_000, 1e-3)).unwrap();
    let elapsed = start.elapsed();
    let below_ghz10 = r.measures().iter().all(|&m| m < 10.0) && r.n_distill_upper_asymptotic < 10.0;
    Outcome {
        id: "9a",
        title: "N=1e6, eps=1e-3: n_decoherence ~ 1, every measure below GHZ_10",
        passed: (r.n_decoherence - 1.0).abs() <= 1e-5
            && below_ghz10
            && elapsed < Duration::from_secs(1),
        detail: format!(
            "n_dec {:.8}, n_mean {:.4}, upper {:.4}, n_loss {:.6}, {elapsed:.1?}",
            r.n_decoherence, r.n_distill_mean, r.n_distill_upper_exact, r.n_loss
        ),
    }
}

fn c9b_headline_mean() -> Outcome {
    let r = EffectiveSizeReport::new(&p(1_000_000, 1e-3)).unwrap();
    let err = rel(r.n_distill_mean, 0.5);
    Outcome {
        id: "9b",
        title: "N=1e6, eps=1e-3: n_distill_mean ~ 0.5",
        passed: err <= 1e-3,
        detail: format!(
            "n_distill_mean = {:.6}, rel diff from 0.5 {err:.3} (tol 1e-3)",
            r.n_distill_mean
        ),
    }
}

fn c10_trivial() -> Outcome {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut worst_q: f64 = 0.0;
    for n in [2u64, 3, 8, 50, 1_000, 1_000_000] {
        let params = p(n, FRAC_PI_2);
        let r = EffectiveSizeReport::new(&params).unwrap();
        for m in r.measures() {
            worst = worst.max((m - n as f64).abs());
        }
        // Floating-point π/2 leaves cos ε ≈ 6.1e-17, so exact arithmetic gives q_N = (1 − c)^N.
        let q = outcome_distribution(&params).q();
        let q_err = (q[n as usize] - 1.0).abs();
        ok &= q_err <= n as f64 * params.cos_eps().abs() + 1e-12;
        worst_q = worst_q.max(q_err);
    }
    ok &= worst <= 1e-6;
    let filter = build_filter(&p(5, FRAC_PI_2)).unwrap();
    ok &= filter.a.max_abs_diff(&QubitOperator::identity()) < 1e-12;
    let mut amp_err: f64 = 0.0;
    for n in 1..=oracle::STATE_CAP as u64 {
        let cat = oracle::build_cat_state(&p(n, FRAC_PI_2)).unwrap();
        let ghz = oracle::build_ghz_state(n).unwrap();
        for (a, b) in cat.amplitudes.iter().zip(&ghz.amplitudes) {
            amp_err = amp_err.max((a - b).norm());
        }
    }
    ok &= amp_err <= 1e-15;
    Outcome {
        id: "10",
        title: "eps = pi/2 reduces every measure to GHZ_N",
        passed: ok,
        detail: format!("max |measure - N| {worst:.2e} (tol 1e-6), max |q_N - 1| {worst_q:.2e}, max amplitude err {amp_err:.2e} (tol 1e-15)"),
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 15] = [
        c1_decoherence,
        c2_channel_equivalence,
        c3_ghz_rate,
        c4_distillation,
        c5a_expectation_identity,
        c5b_expectation_asymptote,
        c6_monte_carlo,
        c7a_reduced_state,
        c7b_entropy_asymptote,
        c7c_bound_ordering,
        c8_loss,
        c9a_headline,
        c9b_headline_mean,
        c10_trivial,
        || {
            let r = validation::run_validation(8).unwrap();
            let (ok, _) = checks_pass(&r);
            Outcome {
                id: "V",
                title: "full oracle validation grid (max_n = 8)",
                passed: ok,
                detail: format!("{} checks", r.len()),
            }
        },
    ];
    let mut failures = 0;
    for run in criteria {
        let o = run();
        if !o.passed {
            failures += 1;
        }
        println!(
            "[{}] criterion {:>3}: {} -- {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail
        );
    }
    println!("acceptance: {} criteria, {failures} failed", criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
