//! `qcomm` — reproducible experiments and verification sweeps.
//!
//! Every subcommand builds an [`ExperimentConfig`] (flags or `run --config
//! FILE`), executes it, and appends one JSON record per result to the
//! results file (`--out`, default stdout). Exit codes: 0 success, 2 usage,
//! 3 validation, 4 I/O.

use clap::{Args, Parser, Subcommand};
use qcomm_cli::commands;
use qcomm_cli::config::ExperimentConfig;
use qcomm_cli::record::write_json_lines;
use qcomm_cli::CliError;
use std::io::Write;

#[derive(Parser)]
#[command(name = "qcomm", version, about = "protocol experiments and verification sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Master seed; QCOMM_SEED overrides.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Results file to append JSON records to (default: stdout).
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the quantum Fourier-sampling protocol and report the l1 error.
    DfsQuantum {
        #[command(flatten)]
        common: Common,
        /// Qubit count.
        #[arg(long, alias = "N")]
        n: u64,
        #[arg(long, default_value_t = 100_000)]
        shots: u64,
        /// Load the instance from a JSON file instead of sampling one.
        #[arg(long)]
        instance: Option<String>,
        /// Dump sampled outcomes as CSV (shot, s, t).
        #[arg(long)]
        samples_csv: Option<String>,
    },
    /// One-way state transmission through the amplitude-grid codec.
    DqsEpsnet {
        #[command(flatten)]
        common: Common,
        #[arg(long, alias = "N")]
        n: u64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 200)]
        instances: u64,
    },
    /// Shared-codebook runs of the vector-in-subspace protocol.
    Raz {
        #[command(flatten)]
        common: Common,
        /// Unpadded instance dimension.
        #[arg(long, alias = "N")]
        n: u64,
        /// Projector rank before padding (default N/4).
        #[arg(long)]
        rank: Option<u64>,
        /// Codebook size.
        #[arg(long)]
        k: u64,
        /// Promise instances per label.
        #[arg(long, default_value_t = 500)]
        trials: u64,
        /// Generate instances on the exact promise boundary.
        #[arg(long)]
        boundary: bool,
    },
    /// Doubling search for the minimal codebook size per dimension.
    RazCalibrate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated dimensions.
        #[arg(long, default_value = "8,16,32,64")]
        ns: String,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        /// Target success rate.
        #[arg(long, default_value_t = 2.0 / 3.0)]
        target: f64,
        #[arg(long, default_value_t = 20)]
        max_log2k: u64,
    },
    /// Entangled double-output sampling; checks the XOR law and marginals.
    Ddfs {
        #[command(flatten)]
        common: Common,
        #[arg(long, alias = "N")]
        n: u64,
        #[arg(long, default_value_t = 100_000)]
        shots: u64,
        /// Dump sampled pairs as CSV (shot, s, t).
        #[arg(long)]
        samples_csv: Option<String>,
    },
    /// The sampled-positions gap-orthogonality tester.
    SqrtSampler {
        #[command(flatten)]
        common: Common,
        /// String length.
        #[arg(long, default_value_t = 64)]
        len: u64,
        /// Probes per run (default √len).
        #[arg(long)]
        queries: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Plant a disagreement fraction 1/2 + delta/√len.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<f64>,
    },
    /// Run one verification check and emit its verdict records.
    LemmaVerify {
        #[command(flatten)]
        common: Common,
        /// One of: fact1, fact2, shift-map, calculus, binomial-bounds,
        /// squared-sum, tail-bound, overlap-law, sign-map.
        #[arg(long)]
        check: String,
        /// Length parameter N where the check takes one.
        #[arg(long, alias = "N")]
        n: Option<u64>,
        /// Correlation; shift-map accepts a rational like -1/3.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<f64>,
        #[arg(long)]
        dim: Option<u64>,
        #[arg(long)]
        rank: Option<u64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        step: Option<f64>,
        /// Comma-separated m values for squared-sum.
        #[arg(long)]
        ms: Option<String>,
        /// Comma-separated lengths for the fact2 ratio sweep.
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long)]
        len: Option<u64>,
        /// Extra parameters as key=value (repeatable).
        #[arg(short = 'P', long = "param", value_parser = parse_pair)]
        params: Vec<(String, serde_json::Value)>,
    },
    /// Skewed anticoncentration sweeps over rectangle families.
    Rectangles {
        #[command(flatten)]
        common: Common,
        #[arg(long, alias = "N", default_value_t = 12)]
        n: u64,
        #[arg(long, default_value_t = 10.0)]
        b: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Comma-separated skew exponents.
        #[arg(long, default_value = "-3,-1,0,1,3", allow_hyphen_values = true)]
        skews: String,
        /// Rectangles per family.
        #[arg(long, default_value_t = 200)]
        count: u64,
        /// Comma-separated families: random, ball, threshold, leaves.
        #[arg(long, default_value = "random,ball,threshold")]
        families: String,
        /// exact or mc.
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Monte Carlo samples per measure (mc mode).
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        /// Emit one record per rectangle/skew on top of the aggregates.
        #[arg(long)]
        per_rect: bool,
    },
    /// Aggregate a JSON-lines results file into a CSV for plotting.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: String,
        #[arg(long)]
        output: String,
    },
    /// Execute a config file (JSON or key=value).
    Run {
        /// Path to the config file.
        #[arg(long)]
        config: String,
    },
}

fn parse_pair(text: &str) -> Result<(String, serde_json::Value), String> {
    let (key, value) = text
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got {text:?}"))?;
    let parsed = serde_json::from_str::<serde_json::Value>(value)
        .unwrap_or_else(|_| serde_json::Value::String(value.to_string()));
    Ok((key.to_string(), parsed))
}

fn build_config(command: Command) -> Result<ExperimentConfig, CliError> {
    let config = match command {
        Command::DfsQuantum {
            common,
            n,
            shots,
            instance,
            samples_csv,
        } => {
            let mut c = ExperimentConfig::new("dfs-quantum", common.seed)
                .with("n", n)
                .with("shots", shots);
            if let Some(path) = instance {
                c = c.with("instance", path);
            }
            if let Some(path) = samples_csv {
                c = c.with("samples-csv", path);
            }
            c.out = common.out;
            c
        }
        Command::DqsEpsnet {
            common,
            n,
            eps,
            instances,
        } => {
            let mut c = ExperimentConfig::new("dqs-epsnet", common.seed)
                .with("n", n)
                .with("eps", eps)
                .with("instances", instances);
            c.out = common.out;
            c
        }
        Command::Raz {
            common,
            n,
            rank,
            k,
            trials,
            boundary,
        } => {
            let mut c = ExperimentConfig::new("raz", common.seed)
                .with("n", n)
                .with("k", k)
                .with("trials", trials)
                .with("boundary", boundary);
            if let Some(rank) = rank {
                c = c.with("rank", rank);
            }
            c.out = common.out;
            c
        }
        Command::RazCalibrate {
            common,
            ns,
            trials,
            target,
            max_log2k,
        } => {
            let mut c = ExperimentConfig::new("raz-calibrate", common.seed)
                .with("ns", ns)
                .with("trials", trials)
                .with("target", target)
                .with("max-log2k", max_log2k);
            c.out = common.out;
            c
        }
        Command::Ddfs {
            common,
            n,
            shots,
            samples_csv,
        } => {
            let mut c = ExperimentConfig::new("ddfs", common.seed)
                .with("n", n)
                .with("shots", shots);
            if let Some(path) = samples_csv {
                c = c.with("samples-csv", path);
            }
            c.out = common.out;
            c
        }
        Command::SqrtSampler {
            common,
            len,
            queries,
            trials,
            delta,
        } => {
            let mut c = ExperimentConfig::new("sqrt-sampler", common.seed)
                .with("len", len)
                .with("trials", trials);
            if let Some(q) = queries {
                c = c.with("queries", q);
            }
            if let Some(d) = delta {
                c = c.with("delta", d);
            }
            c.out = common.out;
            c
        }
        Command::LemmaVerify {
            common,
            check,
            n,
            p,
            q1,
            q2,
            eta,
            dim,
            rank,
            delta,
            trials,
            samples,
            cap,
            step,
            ms,
            sweep,
            len,
            params,
        } => {
            let mut c = ExperimentConfig::new("lemma-verify", common.seed).with("check", check);
            let as_json = |text: String| {
                serde_json::from_str::<serde_json::Value>(&text)
                    .unwrap_or(serde_json::Value::String(text))
            };
            if let Some(v) = n {
                c = c.with("n", v);
            }
            if let Some(v) = p {
                c = c.with("p", as_json(v));
            }
            if let Some(v) = q1 {
                c = c.with("q1", as_json(v));
            }
            if let Some(v) = q2 {
                c = c.with("q2", as_json(v));
            }
            if let Some(v) = eta {
                c = c.with("eta", v);
            }
            if let Some(v) = dim {
                c = c.with("dim", v);
            }
            if let Some(v) = rank {
                c = c.with("rank", v);
            }
            if let Some(v) = delta {
                c = c.with("delta", v);
            }
            if let Some(v) = trials {
                c = c.with("trials", v);
            }
            if let Some(v) = samples {
                c = c.with("samples", v);
            }
            if let Some(v) = cap {
                c = c.with("cap", v);
            }
            if let Some(v) = step {
                c = c.with("step", v);
            }
            if let Some(v) = ms {
                c = c.with("ms", v);
            }
            if let Some(v) = sweep {
                c = c.with("sweep", v);
            }
            if let Some(v) = len {
                c = c.with("len", v);
            }
            for (key, value) in params {
                c.params.insert(key, value);
            }
            c.out = common.out;
            c
        }
        Command::Rectangles {
            common,
            n,
            b,
            delta,
            skews,
            count,
            families,
            mode,
            samples,
            per_rect,
        } => {
            let mut c = ExperimentConfig::new("rectangles", common.seed)
                .with("n", n)
                .with("b", b)
                .with("delta", delta)
                .with("skews", skews)
                .with("count", count)
                .with("families", families)
                .with("mode", mode)
                .with("samples", samples)
                .with("per-rect", per_rect);
            c.out = common.out;
            c
        }
        Command::Report {
            common,
            input,
            output,
        } => {
            let mut c = ExperimentConfig::new("report", common.seed)
                .with("input", input)
                .with("output", output);
            c.out = common.out;
            c
        }
        Command::Run { config } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::Io(format!("{config}: {e}")))?;
            ExperimentConfig::parse(&text)?
        }
    };
    config.with_env_seed()
}

fn execute() -> Result<(), CliError> {
    let cli = Cli::parse();
    let config = build_config(cli.command)?;
    let records = commands::run(&config)?;
    match &config.out {
        Some(path) => {
            let file = std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            write_json_lines(&records, file)?;
            eprintln!("appended {} record(s) to {path}", records.len());
        }
        None => {
            let stdout = std::io::stdout();
            write_json_lines(&records, stdout.lock())?;
            std::io::stdout().flush()?;
        }
    }
    Ok(())
}

fn main() {
    if let Err(error) = execute() {
        eprintln!("error: {error}");
        std::process::exit(error.exit_code());
    }
}
