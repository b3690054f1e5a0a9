//! Binomial probabilities in log space with full relative accuracy for large n,
//! by Loader's saddle-point expansion (Stirling remainder plus deviance terms).

use std::f64::consts::PI;

/// ln(n!) − ln(√(2πn)(n/e)ⁿ) at n = 0..=15.
#[allow(clippy::excessive_precision)]
const STIRLING_REMAINDER: [f64; 16] = [
    0.0,
    0.081_061_466_795_327_258_219_670_2,
    0.041_340_695_955_409_294_093_822_1,
    0.027_677_925_684_998_339_148_789_29,
    0.020_790_672_103_765_093_111_522_77,
    0.016_644_691_189_821_192_163_194_87,
    0.013_876_128_823_070_747_998_745_73,
    0.011_896_709_945_891_770_095_055_72,
    0.010_411_265_261_972_096_497_478_567,
    0.009_255_462_182_712_732_917_728_637,
    0.008_330_563_433_362_871_256_469_318,
    0.007_573_675_487_951_840_794_972_024,
    0.006_942_840_107_209_529_865_664_152,
    0.006_408_994_188_004_207_068_439_631,
    0.005_951_370_112_758_847_735_624_416,
    0.005_554_733_551_962_801_371_038_690,
];

fn stirling_remainder(n: u64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n < 16 {
        return STIRLING_REMAINDER[n as usize];
    }
    let x = n as f64;
    let xx = x * x;
    if n > 500 {
        (S0 - S1 / xx) / x
    } else if n > 80 {
        (S0 - (S1 - S2 / xx) / xx) / x
    } else if n > 35 {
        (S0 - (S1 - (S2 - S3 / xx) / xx) / xx) / x
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / xx) / xx) / xx) / xx) / x
    }
}

/// Deviance term x·ln(x/m) + m − x, by series when x ≈ m.
fn deviance(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let d = x - m;
        let mut v = d / (x + m);
        let mut s = d * v;
        let mut ej = 2.0 * x * v;
        v *= v;
        for j in 1..1000 {
            ej *= v;
            let next = s + ej / (2 * j + 1) as f64;
            if next == s {
                return s;
            }
            s = next;
        }
        return s;
    }
    x * (x / m).ln() + m - x
}

/// ln P(K = k) for K ~ Binomial(n, p), given p, q = 1 − p and their logs
/// (supplied separately so callers can keep them accurate near 0 and 1).
pub fn ln_pmf(k: u64, n: u64, p: f64, q: f64, ln_p: f64, ln_q: f64) -> f64 {
    debug_assert!(k <= n);
    if k == 0 {
        return if n == 0 { 0.0 } else { n as f64 * ln_q };
    }
    if k == n {
        return n as f64 * ln_p;
    }
    if p == 0.0 || q == 0.0 {
        return f64::NEG_INFINITY;
    }
    let (kf, nf) = (k as f64, n as f64);
    let lc = stirling_remainder(n)
        - stirling_remainder(k)
        - stirling_remainder(n - k)
        - deviance(kf, nf * p)
        - deviance(nf - kf, nf * q);
    let lf = (2.0 * PI).ln() + kf.ln() + (-kf / nf).ln_1p();
    lc - 0.5 * lf
}
