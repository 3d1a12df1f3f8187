//! Real block-fading BPSK channel: `r_t = h_f·s_t + n_t` with bit 0 sent
//! as +1, `E[h²] = 1`, unit symbol energy and `N0 = 1/(R·Eb/N0)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    /// Information bits per transmitted bit.
    pub rate: f64,
    pub f: usize,
    /// Transmitted length.
    pub n: usize,
}

impl ChannelConfig {
    pub fn n0(&self) -> f64 {
        1.0 / (self.rate * db_to_linear(self.ebn0_db))
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Fading block (0-based) of transmitted position `t` (0-based); the
/// 1-based form is ⌈F·t/N⌉.
pub fn block_of_symbol(t: usize, n: usize, f: usize) -> usize {
    t * f / n
}

/// F independent Rayleigh amplitudes with unit second moment.
pub fn sample_fading<R: Rng + ?Sized>(f: usize, rng: &mut R) -> Vec<f64> {
    (0..f).map(|_| Exp1.sample(rng)).map(|e: f64| e.sqrt()).collect()
}

/// Transmits bits `c` (punctured positions already removed).
pub fn transmit<R: Rng + ?Sized>(c: &[u8], h: &[f64], cfg: &ChannelConfig, rng: &mut R) -> Vec<f64> {
    assert_eq!(c.len(), cfg.n, "codeword length must equal the transmitted length");
    assert_eq!(h.len(), cfg.f, "one fading coefficient per block");
    let sigma = (cfg.n0() / 2.0).sqrt();
    c.iter()
        .enumerate()
        .map(|(t, &bit)| {
            let s = if bit == 0 { 1.0 } else { -1.0 };
            let noise: f64 = StandardNormal.sample(rng);
            h[block_of_symbol(t, cfg.n, cfg.f)] * s + sigma * noise
        })
        .collect()
}

/// `L_t = 4·h_f·r_t/N0`.
pub fn llr_from_received(r: &[f64], h: &[f64], cfg: &ChannelConfig) -> Vec<f64> {
    let scale = 4.0 / cfg.n0();
    r.iter().enumerate().map(|(t, &x)| scale * h[block_of_symbol(t, r.len(), h.len())] * x).collect()
}

/// `I_G = (1/F) Σ ½ log2(1 + 2R·Eb/N0·h_f²)`.
pub fn gaussian_mutual_info(h: &[f64], rate: f64, ebn0_db: f64) -> f64 {
    let a = 2.0 * rate * db_to_linear(ebn0_db);
    h.iter().map(|&x| 0.5 * (a * x * x).ln_1p() / std::f64::consts::LN_2).sum::<f64>() / h.len() as f64
}

const OUTAGE_CHUNK: usize = 1 << 16;

/// Monte Carlo estimate of `P(I_G < R)`. Chunks of samples use separate
/// streams of `seed`, so the result does not depend on the thread count.
pub fn outage_probability(rate: f64, ebn0_db: f64, f: usize, samples: u64, seed: u64) -> f64 {
    let chunks = samples.div_ceil(OUTAGE_CHUNK as u64);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let len = (samples - i * OUTAGE_CHUNK as u64).min(OUTAGE_CHUNK as u64);
            let mut h = vec![0.0; f];
            (0..len)
                .filter(|_| {
                    for x in h.iter_mut() {
                        let e: f64 = Exp1.sample(&mut rng);
                        *x = e.sqrt();
                    }
                    gaussian_mutual_info(&h, rate, ebn0_db) < rate
                })
                .count() as u64
        })
        .sum();
    hits as f64 / samples as f64
}

/// Outage probability by quadrature over the exponential density of
/// `h²`, for F ∈ {1, 2}.
pub fn outage_quadrature(rate: f64, ebn0_db: f64, f: usize) -> Option<f64> {
    let a = 2.0 * rate * db_to_linear(ebn0_db);
    match f {
        1 => Some(-(-(2f64.powf(2.0 * rate) - 1.0) / a).exp_m1()),
        2 => {
            // (1 + a·x1)(1 + a·x2) < T
            let t = 2f64.powf(4.0 * rate);
            let upper = (t - 1.0) / a;
            let g = |x: f64| {
                let y = ((t / (1.0 + a * x)) - 1.0) / a;
                (-x).exp() * -(-y.max(0.0)).exp_m1()
            };
            Some(simpson(g, 0.0, upper, 20_000))
        }
        _ => None,
    }
}

fn simpson(g: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals + intervals % 2;
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| g(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (g(a) + g(b) + inner) * h / 3.0
}
