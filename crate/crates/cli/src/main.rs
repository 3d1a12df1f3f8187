use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use rootldpc::channel::{outage_probability, outage_quadrature};
use rootldpc::families::{
    build, parse_descriptor, validate_structure, write_descriptor, BuildSpec, CodeDesign, Family,
};
use rootldpc::gf2::{alist_read, alist_write};
use rootldpc::sim::{
    avg_iterations_report, estimate_diversity_slope, parse_grid, parse_key_values, parse_rate, read_curve_csv,
    run_fer_curve, write_curve_csv, SimConfig,
};

#[derive(Parser)]
#[command(name = "rootldpc", version, about = "Root-check LDPC codes for block-fading channels")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code and write code.alist and code.desc.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Check the structure of a built or stored code.
    Validate {
        #[command(flatten)]
        code: CodeArgs,
        /// Stored parity-check matrix; needs --descriptor.
        #[arg(long, requires = "descriptor")]
        alist: Option<PathBuf>,
        #[arg(long, requires = "alist")]
        descriptor: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Simulate FER over an Eb/N0 grid and write curve.csv and run.json.
    Fer {
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Outage probability over an Eb/N0 grid.
    Outage {
        /// Rate as `a/b` or a decimal.
        #[arg(long)]
        rate: String,
        #[arg(long)]
        f: usize,
        /// `start:step:stop` or a comma list.
        #[arg(long)]
        ebn0: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diversity slope of a curve.csv between two FER levels.
    Slope {
        curve: PathBuf,
        #[arg(long, default_value_t = 1e-4)]
        fer_min: f64,
        #[arg(long, default_value_t = 1e-1)]
        fer_max: f64,
    },
    /// Mean decoder iterations per point of a curve.csv.
    Iters { curve: PathBuf },
}

#[derive(Args, Clone)]
struct CodeArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    f: Option<usize>,
    /// Rate as `a/b`; only the baselines and IRAA use it.
    #[arg(long)]
    rate: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl CodeArgs {
    fn spec(&self) -> Result<BuildSpec> {
        let (Some(family), Some(n), Some(f)) = (self.family, self.n, self.f) else {
            bail!("--family, --n and --f are required");
        };
        let rate = self.rate.as_deref().map(parse_rate).transpose().map_err(anyhow::Error::msg)?;
        Ok(BuildSpec { family, n, f, rate, seed: self.seed })
    }
}

/// Every field is optional so that only flags given on the command line
/// override the `--config` file.
#[derive(Args)]
struct SimArgs {
    /// `key = value` file with the same keys as the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    f: Option<usize>,
    #[arg(long)]
    rate: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    ebn0: Option<String>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    min_frame_errors: Option<u64>,
    #[arg(long)]
    max_frames: Option<String>,
    /// `info` or `word`.
    #[arg(long)]
    metric: Option<String>,
    #[arg(long)]
    master_seed: Option<u64>,
    /// Worker threads, 0 for all cores. Results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    min_sum: bool,
    #[arg(long)]
    noiseless: bool,
    #[arg(long)]
    outage_samples: Option<String>,
    /// Stop after the first point with FER below this.
    #[arg(long)]
    fer_floor: Option<f64>,
}

impl SimArgs {
    fn config(&self) -> Result<SimConfig> {
        let mut kv = match &self.config {
            Some(p) => parse_key_values(&read(p)?)?,
            None => BTreeMap::new(),
        };
        let mut set = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                kv.insert(k.to_string(), v);
            }
        };
        set("family", self.family.clone());
        set("n", self.n.map(|v| v.to_string()));
        set("f", self.f.map(|v| v.to_string()));
        set("rate", self.rate.clone());
        set("seed", self.seed.map(|v| v.to_string()));
        set("ebn0", self.ebn0.clone());
        set("max_iter", self.max_iter.map(|v| v.to_string()));
        set("min_frame_errors", self.min_frame_errors.map(|v| v.to_string()));
        set("max_frames", self.max_frames.clone());
        set("metric", self.metric.clone());
        set("master_seed", self.master_seed.map(|v| v.to_string()));
        set("workers", self.workers.map(|v| v.to_string()));
        set("min_sum", self.min_sum.then(|| "true".into()));
        set("noiseless", self.noiseless.then(|| "true".into()));
        set("outage_samples", self.outage_samples.clone());
        set("fer_floor", self.fer_floor.map(|v| v.to_string()));
        Ok(SimConfig::from_key_values(&kv)?)
    }
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn write(p: &Path, text: &str) -> Result<()> {
    fs::write(p, text).with_context(|| format!("writing {}", p.display()))
}

fn parse_rate_value(s: &str) -> Result<f64> {
    if let Ok((a, b)) = parse_rate(s) {
        return Ok(a as f64 / b as f64);
    }
    let r: f64 = s.parse().with_context(|| format!("bad rate {s:?}"))?;
    if !(r > 0.0 && r < 1.0) {
        bail!("rate must be in (0, 1), got {s}");
    }
    Ok(r)
}

fn load_design(alist: &Path, descriptor: &Path) -> Result<CodeDesign> {
    let h = alist_read(&read(alist)?)?;
    let desc = parse_descriptor(&read(descriptor)?)?;
    Ok(desc.into_design(h)?)
}

fn summary(d: &CodeDesign) -> String {
    format!("{} N={} K={} M={} F={} rate={:.4} attempts={}", d.family, d.n, d.k, d.m(), d.f, d.rate(), d.attempts)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Build { code, out } => {
            let d = build(&code.spec()?)?;
            fs::create_dir_all(&out)?;
            write(&out.join("code.alist"), &alist_write(&d.h))?;
            write(&out.join("code.desc"), &write_descriptor(&d))?;
            println!("{}", summary(&d));
        }
        Cmd::Validate { code, alist, descriptor, json } => {
            let d = match (alist, descriptor) {
                (Some(a), Some(s)) => load_design(&a, &s)?,
                _ => build(&code.spec()?)?,
            };
            let report = validate_structure(&d);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{}", summary(&d));
                println!("parity rank: {} of {}", report.parity_rank, d.m());
                let ok = report.root_check_ok.iter().filter(|&&b| b).count();
                println!("root checks: {ok} of {} information columns", report.root_check_ok.len());
                if d.qc_block_size.is_some() {
                    println!("circulant blocks: {}", if report.qc_blocks_ok { "ok" } else { "broken" });
                }
                for v in &report.violations {
                    println!("violation: {v:?}");
                }
                println!("{}", if report.is_clean() { "OK" } else { "INVALID" });
            }
            return Ok(report.is_clean());
        }
        Cmd::Fer { sim, out } => {
            let cfg = sim.config()?;
            let record = run_fer_curve(&cfg)?;
            fs::create_dir_all(&out)?;
            write(&out.join("curve.csv"), &write_curve_csv(&record)?)?;
            write(&out.join("run.json"), &serde_json::to_string_pretty(&record)?)?;
            for p in &record.points {
                println!(
                    "{:>7} dB  frames {:>9}  errors {:>6}  FER {:.3e}  iters {:.2}",
                    p.ebn0_db, p.frames, p.frame_errors, p.fer, p.avg_iters
                );
            }
        }
        Cmd::Outage { rate, f, ebn0, samples, seed, out } => {
            let r = parse_rate_value(&rate)?;
            let grid = parse_grid(&ebn0).map_err(anyhow::Error::msg)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["ebn0_db", "outage_mc", "outage_quadrature"])?;
            for (i, &db) in grid.iter().enumerate() {
                let mc = outage_probability(r, db, f, samples, seed ^ i as u64);
                let q = outage_quadrature(r, db, f).map(|q| q.to_string()).unwrap_or_default();
                w.write_record([db.to_string(), mc.to_string(), q])?;
            }
            let text = String::from_utf8(w.into_inner()?)?;
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
        }
        Cmd::Slope { curve, fer_min, fer_max } => {
            let points = read_curve_csv(&read(&curve)?)?;
            let s = estimate_diversity_slope(&points, fer_min, fer_max)?;
            println!("{s}");
        }
        Cmd::Iters { curve } => {
            let points = read_curve_csv(&read(&curve)?)?;
            println!("ebn0_db,avg_iters");
            for (db, it) in avg_iterations_report(&points) {
                println!("{db},{it}");
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
