use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{FerPoint, Metric, RunRecord, SimConfig, SimError};
use crate::channel::{llr_from_received, outage_probability, sample_fading, transmit, ChannelConfig};
use crate::codec::{depuncture, derive_generator, puncture, GeneratorMatrix, SpaDecoder, SpaOptions};
use crate::families::{build, CodeDesign};

/// Random stream of frame `frame` at grid point `point`.
pub fn substream(master: u64, point: u64, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(point << 40 | frame);
    rng
}

/// Everything a frame needs, shared read-only across workers.
#[derive(Clone, Debug)]
pub struct SimContext {
    pub design: CodeDesign,
    pub generator: GeneratorMatrix,
    pub decoder: SpaDecoder,
    pub opts: SpaOptions,
    pub metric: Metric,
    pub noiseless: bool,
    pub master_seed: u64,
}

impl SimContext {
    pub fn new(design: CodeDesign, cfg: &SimConfig) -> Result<Self, SimError> {
        let generator = derive_generator(&design)?;
        let decoder = SpaDecoder::new(&design.h);
        Ok(SimContext {
            design,
            generator,
            decoder,
            opts: SpaOptions { max_iter: cfg.max_iter, early_stop: true, rule: cfg.check_rule() },
            metric: cfg.metric,
            noiseless: cfg.noiseless,
            master_seed: cfg.master_seed,
        })
    }

    pub fn channel(&self, ebn0_db: f64) -> ChannelConfig {
        ChannelConfig {
            ebn0_db: if self.noiseless { f64::INFINITY } else { ebn0_db },
            rate: self.design.rate(),
            f: self.design.f,
            n: self.design.transmitted_len(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameResult {
    pub frame_error: bool,
    pub bit_errors: u64,
    pub iterations: usize,
}

/// Message → encode → puncture → channel → LLR → depuncture → decode.
/// The stream draws K message bits (64 per word), F fading amplitudes,
/// then the noise.
pub fn simulate_frame(ctx: &SimContext, decoder: &mut SpaDecoder, point: u64, frame: u64, ebn0_db: f64) -> FrameResult {
    let d = &ctx.design;
    let mut rng = substream(ctx.master_seed, point, frame);
    let mut u = Vec::with_capacity(d.k);
    while u.len() < d.k {
        let w: u64 = rng.random();
        u.extend((0..64.min(d.k - u.len())).map(|i| (w >> i & 1) as u8));
    }
    let c = ctx.generator.encode(&u).expect("message length is K");
    let tx = puncture(&c, d);
    let ch = ctx.channel(ebn0_db);
    let h = sample_fading(d.f, &mut rng);
    let r = transmit(&tx, &h, &ch, &mut rng);
    let llr = depuncture(&llr_from_received(&r, &h, &ch), d).expect("transmitted length");
    let out = decoder.decode_with(&llr, &ctx.opts);
    let bit_errors = match ctx.metric {
        Metric::Info => d.info_columns.iter().filter(|&&col| out.hard[col] != c[col]).count(),
        Metric::Word => out.hard.iter().zip(&c).filter(|(a, b)| a != b).count(),
    } as u64;
    FrameResult { frame_error: bit_errors > 0, bit_errors, iterations: out.iterations }
}

const FIRST_BATCH: u64 = 64;
const MAX_BATCH: u64 = 16_384;

/// Runs frames 0, 1, 2, … until `min_frame_errors` errors or `max_frames`
/// frames. Batches run in parallel, but counting is sequential in frame
/// order, so the stop point and the result do not depend on the worker
/// count.
pub fn run_fer_point(ctx: &SimContext, cfg: &SimConfig, point: u64, ebn0_db: f64) -> FerPoint {
    let start = Instant::now();
    let (mut frames, mut frame_errors, mut bit_errors, mut iterations_total) = (0u64, 0u64, 0u64, 0u64);
    let mut batch = FIRST_BATCH;
    'outer: while frames < cfg.max_frames && frame_errors < cfg.min_frame_errors {
        let end = (frames + batch).min(cfg.max_frames);
        let results: Vec<FrameResult> = (frames..end)
            .into_par_iter()
            .map_init(|| ctx.decoder.clone(), |dec, frame| simulate_frame(ctx, dec, point, frame, ebn0_db))
            .collect();
        for r in results {
            frames += 1;
            iterations_total += r.iterations as u64;
            bit_errors += r.bit_errors;
            frame_errors += u64::from(r.frame_error);
            if frame_errors >= cfg.min_frame_errors {
                break 'outer;
            }
        }
        batch = (batch * 2).min(MAX_BATCH);
    }
    let bits_per_frame = match ctx.metric {
        Metric::Info => ctx.design.k,
        Metric::Word => ctx.design.n,
    } as f64;
    let frames_f = frames.max(1) as f64;
    FerPoint {
        ebn0_db,
        frames,
        frame_errors,
        bit_errors,
        fer: frame_errors as f64 / frames_f,
        ber: bit_errors as f64 / (frames_f * bits_per_frame),
        avg_iters: iterations_total as f64 / frames_f,
        iterations_total,
        wall_clock_s: start.elapsed().as_secs_f64(),
    }
}

/// Builds the configured code and runs every grid point.
pub fn run_fer_curve(cfg: &SimConfig) -> Result<RunRecord, SimError> {
    cfg.check()?;
    let design = build(&cfg.build_spec())?;
    run_fer_curve_with(design, cfg)
}

/// Runs every grid point on an existing design.
pub fn run_fer_curve_with(design: CodeDesign, cfg: &SimConfig) -> Result<RunRecord, SimError> {
    cfg.check()?;
    let started = RunRecord::now();
    let ctx = SimContext::new(design, cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| SimError::Config(e.to_string()))?;
    let points: Vec<FerPoint> = pool.install(|| {
        let mut points = Vec::new();
        for (i, &db) in cfg.ebn0_db.iter().enumerate() {
            let p = run_fer_point(&ctx, cfg, i as u64, db);
            let done = p.fer < cfg.fer_floor;
            points.push(p);
            if done {
                break;
            }
        }
        points
    });
    let outage = (cfg.outage_samples > 0).then(|| {
        pool.install(|| {
            points
                .iter()
                .map(|p| p.ebn0_db)
                .enumerate()
                .map(|(i, db)| {
                    outage_probability(
                        ctx.design.rate(),
                        db,
                        ctx.design.f,
                        cfg.outage_samples,
                        cfg.master_seed ^ i as u64,
                    )
                })
                .collect()
        })
    });
    Ok(RunRecord::new(cfg, &ctx.design, points, outage, started))
}
