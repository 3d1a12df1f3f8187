use std::sync::OnceLock;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootldpc::codec::{
    bec_peel, depuncture, derive_generator, encode_accumulator, puncture, CheckRule, GeneratorMatrix, SpaDecoder,
    SpaOptions,
};
use rootldpc::families::{build, BuildSpec, CodeDesign, Family};

struct Fixture {
    design: CodeDesign,
    generator: GeneratorMatrix,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        let s = |family, n, f, rate| BuildSpec { family, n, f, rate, seed: 3 };
        [
            s(Family::RandomRoot, 256, 2, None),
            s(Family::QcRoot, 144, 3, None),
            s(Family::QcRoot, 128, 4, None),
            s(Family::IraRoot, 128, 2, None),
            s(Family::IraRoot, 90, 3, None),
            s(Family::IraaRoot, 192, 2, Some((1, 2))),
            s(Family::IraaRoot, 150, 3, Some((1, 5))),
            s(Family::Cdrc, 128, 2, None),
            s(Family::Cdrc, 90, 3, None),
            s(Family::Cdrc, 128, 4, None),
            s(Family::Peg, 128, 2, Some((1, 2))),
        ]
        .iter()
        .map(|spec| {
            let design = build(spec).unwrap();
            let generator = derive_generator(&design).unwrap();
            Fixture { design, generator }
        })
        .collect()
    })
}

fn message(k: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    (0..k).map(|_| rng.random_range(0..2)).collect()
}

/// BPSK over independent per-block gains plus AWGN, as decoder LLRs.
fn noisy_llr(d: &CodeDesign, c: &[u8], sigma: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let gains: Vec<f64> = (0..d.f).map(|_| rng.random_range(0.05..1.5)).collect();
    let tx = puncture(c, d);
    let t = tx.len();
    let rx: Vec<f64> = tx
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let g = gains[i * d.f / t];
            let n: f64 = rng.sample(rand_distr::StandardNormal);
            2.0 * g * (1.0 - 2.0 * b as f64) / (sigma * sigma) + 2.0 * g * n / sigma
        })
        .collect();
    depuncture(&rx, d).unwrap()
}

#[test]
fn accumulator_encoding_matches_generator_for_a_thousand_messages() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for fx in fixtures().iter().filter(|fx| fx.design.family.has_accumulator()) {
        for _ in 0..1000 {
            let u = message(fx.design.k, &mut rng);
            assert_eq!(encode_accumulator(&fx.design, &u).unwrap(), fx.generator.encode(&u).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn converged_words_satisfy_every_check(seed in any::<u64>(), sigma in 0.5f64..1.2, min_sum in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for fx in fixtures() {
            let d = &fx.design;
            let c = fx.generator.encode(&message(d.k, &mut rng)).unwrap();
            let llr = noisy_llr(d, &c, sigma, &mut rng);
            let rule = if min_sum { CheckRule::MinSum } else { CheckRule::SumProduct };
            let out = SpaDecoder::new(&d.h).decode_with(&llr, &SpaOptions { max_iter: 20, early_stop: true, rule });
            prop_assert!(out.iterations >= 1 && out.iterations <= 20);
            if out.converged {
                prop_assert!(d.h.syndrome_is_zero(&out.hard));
            }
        }
    }

    #[test]
    fn less_noise_keeps_correct_decisions(seed in any::<u64>(), sigma in 0.6f64..1.0, scale in 1.0f64..4.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for fx in fixtures() {
            let d = &fx.design;
            let c = fx.generator.encode(&message(d.k, &mut rng)).unwrap();
            let gains: Vec<f64> = (0..d.f).map(|_| rng.random_range(0.05..1.5)).collect();
            let noise: Vec<f64> = (0..d.n).map(|_| rng.sample(rand_distr::StandardNormal)).collect();
            // same fading and noise realization at a smaller noise level
            let llr_at = |s: f64| -> Vec<f64> {
                (0..d.n)
                    .map(|i| match d.block_of_column[i] {
                        None => 0.0,
                        Some(b) => {
                            let g = gains[b];
                            2.0 * g * (g * (1.0 - 2.0 * c[i] as f64) + s * noise[i]) / (s * s)
                        }
                    })
                    .collect()
            };
            let mut dec = SpaDecoder::new(&d.h);
            let out = dec.decode(&llr_at(sigma), 20);
            if out.converged && out.hard == c {
                let again = dec.decode(&llr_at(sigma / scale), 20);
                prop_assert!(again.converged && again.hard == c, "{} N={}", d.family, d.n);
            }
        }
    }

    #[test]
    fn min_sum_ignores_llr_scale(seed in any::<u64>(), sigma in 0.5f64..1.2, scale in 0.1f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let opts = SpaOptions { max_iter: 10, early_stop: true, rule: CheckRule::MinSum };
        for fx in fixtures() {
            let d = &fx.design;
            let c = fx.generator.encode(&message(d.k, &mut rng)).unwrap();
            let llr = noisy_llr(d, &c, sigma, &mut rng);
            let mut dec = SpaDecoder::new(&d.h);
            let a = dec.decode_with(&llr, &opts);
            let b = dec.decode_with(&llr.iter().map(|x| x * scale).collect::<Vec<_>>(), &opts);
            prop_assert_eq!((a.hard, a.iterations), (b.hard, b.iterations));
        }
    }

    #[test]
    fn one_iteration_on_a_block_erasure_equals_one_peeling_pass(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for fx in fixtures() {
            let d = &fx.design;
            let c = fx.generator.encode(&message(d.k, &mut rng)).unwrap();
            let block = rng.random_range(0..d.f);
            let erased: Vec<bool> = (0..d.n).map(|v| d.block_of_column[v].is_none_or(|b| b == block)).collect();
            let llr: Vec<f64> = (0..d.n).map(|v| if erased[v] { 0.0 } else if c[v] == 0 { 1e3 } else { -1e3 }).collect();
            let opts = SpaOptions { max_iter: 1, early_stop: false, rule: CheckRule::SumProduct };
            let out = SpaDecoder::new(&d.h).decode_with(&llr, &opts);
            let peel = bec_peel(&d.h, &erased);
            for v in 0..d.n {
                let by_peel = peel.resolved_at[v].is_some_and(|p| p <= 1);
                prop_assert_eq!(out.posterior[v] != 0.0, by_peel, "{} column {}", d.family, v);
                if by_peel {
                    prop_assert_eq!(out.hard[v], c[v]);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cdrc_f2_resolves_every_bit_after_a_block_erasure(seed in 0u64..10_000) {
        let d = build(&BuildSpec { family: Family::Cdrc, n: 256, f: 2, rate: None, seed }).unwrap();
        for block in 0..2 {
            let erased: Vec<bool> = d.block_of_column.iter().map(|&b| b == Some(block)).collect();
            prop_assert!(bec_peel(&d.h, &erased).residual().is_empty(), "block {}", block);
        }
    }
}
