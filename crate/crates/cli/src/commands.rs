//! Command dispatch: every subcommand is a pure function of its
//! [`ExperimentConfig`], emitting [`ReportRecord`]s.

use crate::config::ExperimentConfig;
use crate::record::{read_json_lines, records_to_csv, ReportRecord};
use crate::CliError;
use num_bigint::BigInt;
use num_rational::BigRational;
use qcomm_core::classical::gridnet::{dqs_epsnet_protocol, epsnet_decoded_state, grid_encode, GridNetCodec};
use qcomm_core::classical::raz::{calibrate_codebook_size, raz_success_rate};
use qcomm_core::classical::sampler::{
    cosh_acceptance_approximation, sqrt_sampler, sqrt_sampler_exact_prob,
};
use qcomm_core::lemma::laws::{
    overlap_law_check, rademacher_square_l1_cost, randomproj_tail_check,
};
use qcomm_core::lemma::calculus::{f_function_grid, FD_TOL};
use qcomm_core::lemma::gaussian::{gaussian_xi_sample, sign_map, signs, GaussianXiParams};
use qcomm_core::lemma::rects::RectangleFamily;
use qcomm_core::lemma::skew::{skewed_anticoncentration_check, SkewCheckConfig, SkewMode};
use qcomm_core::lemma::verdict::CheckVerdict;
use qcomm_core::lemma::xi::{
    expected_squared_overlap, expected_squared_overlap_from_pmf, overlap_support,
    padded_overlap_ratio_max, shift_semigroup_exact, xi_overlap_pmf, xi_prime_overlap_pmf,
};
use qcomm_core::math::dist::OutcomeDistribution;
use qcomm_core::math::haar::haar_random_state;
use qcomm_core::math::measurement::Measurement;
use qcomm_core::math::special::check_binomial_bounds;
use qcomm_core::quantum::ddfs::ddfs_quantum_sample;
use qcomm_core::quantum::dfs::{dfs_distribution, dfs_quantum_simulate, DfsInstance};
use qcomm_core::quantum::dqs::{dqs_distribution, DqsInstance};
use qcomm_core::rng;
use rand::Rng;
use std::time::Instant;

pub const COMMANDS: &[&str] = &[
    "dfs-quantum",
    "dqs-epsnet",
    "raz",
    "raz-calibrate",
    "ddfs",
    "sqrt-sampler",
    "lemma-verify",
    "rectangles",
    "report",
];

/// Runs one configured experiment and returns its records (wall time
/// filled in).
pub fn run(config: &ExperimentConfig) -> Result<Vec<ReportRecord>, CliError> {
    let start = Instant::now();
    let mut records = match config.command.as_str() {
        "dfs-quantum" => dfs_quantum(config),
        "dqs-epsnet" => dqs_epsnet(config),
        "raz" => raz(config),
        "raz-calibrate" => raz_calibrate(config),
        "ddfs" => ddfs(config),
        "sqrt-sampler" => sampler(config),
        "lemma-verify" => lemma_verify(config),
        "rectangles" => rectangles(config),
        "report" => report(config),
        other => Err(CliError::Usage(format!(
            "unknown command {other:?}; expected one of {COMMANDS:?}"
        ))),
    }?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    for r in &mut records {
        r.wall_time_ms = elapsed;
    }
    Ok(records)
}

fn dfs_quantum(config: &ExperimentConfig) -> Result<Vec<ReportRecord>, CliError> {
    let qubits = config.u64_param("n", None)? as usize;
    let shots = config.u64_param("shots", Some(100_000))? as usize;
    let mut rng = rng::master(config.seed);
    let inst = match config.params.get("instance") {
        Some(serde_json::Value::String(path)) => {
            let text = std::fs::read_to_string(path)?;
            DfsInstance::from_json(&text)?
        }
        _ => DfsInstance::random(qubits, &mut rng)?,
    };
    let samples = dfs_quantum_simulate(&inst, shots, &mut rng)?;
    let exact = dfs_distribution(&inst)?;
    let empirical = OutcomeDistribution::empirical(&samples)?;
    let record = ReportRecord::new("dfs-quantum", config.seed)
        .param("n", inst.qubits() as u64)
        .param("shots", shots as u64)
        .metric("l1_error", empirical.l1_distance(&exact))
        .metric("outcomes", exact.support().count() as f64);
    maybe_write_samples_csv(config, samples.iter().map(|&s| (s, None)))?;
    Ok(vec![record])
}

fn ddfs(config: &ExperimentConfig) -> Result<Vec<ReportRecord>, CliError> {
    let qubits = config.u64_param("n", None)? as usize;
    let shots = config.u64_param("shots", Some(100_000))? as usize;
    let mut rng = rng::master(config.seed);
    let inst = DfsInstance::random(qubits, &mut rng)?;
    let pairs = ddfs_quantum_sample(&inst, shots, &mut rng)?;
    let exact = dfs_distribution(&inst)?;
    let xors: Vec<u64> = pairs.iter().map(|&(s, t)| s ^ t).collect();
    let xor_l1 = OutcomeDistribution::empirical(&xors)?.l1_distance(&exact);
    let ss: Vec<u64> = pairs.iter().map(|&(s, _)| s).collect();
    let dim = inst.dimension();
    let uniform = OutcomeDistribution::from_dense(&vec![1.0 / dim as f64; dim])?;
    let marginal_l1 = OutcomeDistribution::empirical(&ss)?.l1_distance(&uniform);
    maybe_write_samples_csv(config, pairs.iter().map(|&(s, t)| (s, Some(t))))?;
    Ok(vec![ReportRecord::new("ddfs", config.seed)
        .param("n", qubits as u64)
        .param("shots", shots as u64)
        .metric("xor_l1_error", xor_l1)
        .metric("marginal_l1_error", marginal_l1)])
}

/// Writes sampled outcomes as CSV rows `(shot, s, t)` when the config names
/// a `samples-csv` path (the `t` column is empty for single-output runs).
fn maybe_write_samples_csv(
    config: &ExperimentConfig,
    rows: impl Iterator<Item = (u64, Option<u64>)>,
) -> Result<(), CliError> {
    let Some(serde_json::Value::String(path)) = config.params.get("samples-csv") else {
        return Ok(());
    };
    let file = std::fs::File::create(path)?;
    let mut writer = csv::Writer::from_writer(file);
    writer
        .write_record(["shot", "s", "t"])
        .map_err(|e| CliError::Io(e.to_string()))?;
    for (shot, (s, t)) in rows.enumerate() {
        let t_text = t.map(|t| t.to_string()).unwrap_or_default();
        writer
            .write_record([shot.to_string(), s.to_string(), t_text])
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    writer.flush()?;
    Ok(())
}

fn dqs_epsnet(config: &ExperimentConfig) -> Result<Vec<ReportRecord>, CliError> {
    let qubits = config.u64_param("n", None)? as usize;
    let eps = config.f64_param("eps", None)?;
    let instances = config.u64_param("instances", Some(200))?;
    let codec = GridNetCodec::new(qubits, eps)?;
    let dim = 1usize << qubits;
    let mut rng = rng::master(config.seed);
    let mut max_l1: f64 = 0.0;
    let mut bits_sent = 0u64;
    let mut encoding_hex = String::new();
    for i in 0..instances {
        let psi = haar_random_state(dim, &mut rng)?;
        let m = Measurement::random_projective(dim, dim / 2, &mut rng)?;
        let inst = DqsInstance::new(psi.clone(), m.clone())?;
        let run = dqs_epsnet_protocol(&inst, &codec, &mut rng)?;
        bits_sent = run.bits_sent();
        let ideal = dqs_distribution(&inst)?;
        let decoded = epsnet_decoded_state(&psi, &codec)?;
        let realized = dqs_distribution(&DqsInstance::new(decoded, m)?)?;
        max_l1 = max_l1.max(ideal.l1_distance(&realized));
        if i == 0 {
            encoding_hex = grid_encode(&psi.canonicalized(), &codec)?.to_hex();
        }
    }
    Ok(vec![ReportRecord::new("dqs-epsnet", config.seed)
        .param("n", qubits as u64)
        .param("eps", eps)
        .param("instances", instances)
        .metric("max_l1_error", max_l1)
        .metric("bits_sent", bits_sent as f64)
        .metric("quant_step", codec.quant_step())
        .holds(max_l1 <= eps)
        .artifact("first_encoding_hex", encoding_hex)])
}

fn raz(config: &ExperimentConfig) -> Result<Vec<ReportRecord>, CliError> {
    let dim = config.u64_param("n", None)? as usize;
    let rank = config.u64_param("rank", Some((dim as u64 / 4).max(1)))? as usize;
    let size = config.u64_param("k", None)? as usize;
    let trials = config.u64_param("trials", Some(500))?;
    let boundary = config.bool_param("boundary", false)?;
    let stats = raz_success_rate(
        dim,
        rank,
        boundary,
        config.seed ^ 0xc0de_b00c,
        size,
        trials,
        config.seed,
    )?;
    Ok(vec![ReportRecord::new("raz", config.seed)
        .param("n", dim as u64)
        .param("rank", rank as u64)
        .param("k", size as u64)
        .param("boundary", boundary)
        .metric("success_rate", stats.success_rate)
        .metric("wilson_lower_95", stats.wilson_lower_95)
        .metric("bits_sent", stats.bits_sent as f64)
        .metric("trials", stats.trials as f64)
        .holds(stats.success_rate >= 2.0 / 3.0)])
}

fn raz_calibrate(config: &ExperimentConfig) -> Result<Vec<ReportRecord>, CliError> {
    let ns = config.list_param("ns", "8,16,32,64")?;
    let trials = config.u64_param("trials", Some(500))?;
    let target = config.f64_param("target", Some(2.0 / 3.0))?;
    let max_log2 = config.u64_param("max-log2k", Some(20))? as u32;
    let mut records = Vec::new();
    let mut points = Vec::new();
    for text in &ns {
        let dim: usize = text
            .parse()
            .map_err(|_| CliError::Validation(format!("bad N value {text:?}")))?;
        let rank = (dim / 4).max(1);
        let row = calibrate_codebook_size(dim, rank, target, trials, max_log2, config.seed)?;
        points.push(((dim as f64).sqrt(), row.log2_size as f64));
        records.push(
            ReportRecord::new("raz-calibrate", config.seed)
                .param("n", dim as u64)
                .param("rank", rank as u64)
                .param("target", target)
                .metric("k", row.codebook_size as f64)
                .metric("log2_k", row.log2_size as f64)
                .metric("success_rate", row.success_rate)
                .holds(row.resolved),
        );
    }
    if points.len() >= 2 {
        let slope = least_squares_slope(&points);
        records.push(
            ReportRecord::new("raz-calibrate", config.seed)
                .param("trend", "log2k-vs-sqrt-n")
                .metric("fitted_slope", slope),
        );
    }
    Ok(records)
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let covariance: f64 = points
        .iter()
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let variance: f64 = points.iter().map(|(x, _)| (x - mean_x) * (x - mean_x)).sum();
    covariance / variance
}

fn sampler(config: &ExperimentConfig) -> Result<Vec<ReportRecord>, CliError> {
    let len = config.u64_param("len", Some(64))? as usize;
    let queries = config.u64_param("queries", Some((len as f64).sqrt() as u64))? as usize;
    let trials = config.u64_param("trials", Some(100_000))?;
    let mut rng = rng::master(config.seed);
    // Either a planted disagreement fraction via delta, or random strings.
    let (x, y, delta) = match config.params.get("delta") {
        Some(v) => {
            let delta = v
                .as_f64()
                .ok_or_else(|| CliError::Validation("delta must be a number".to_string()))?;
            let fraction = 0.5 + delta / (len as f64).sqrt();
            if !(0.0..=1.0).contains(&fraction) {
                return Err(CliError::Validation(format!(
                    "delta {delta} puts the disagreement fraction at {fraction}, outside [0, 1]"
                )));
            }
            let differ = (fraction * len as f64).round() as usize;
            let x = qcomm_core::SignVector::random(len, &mut rng);
            let mut flipped: Vec<i8> = x.entries().to_vec();
            for e in flipped.iter_mut().take(differ) {
                *e = -*e;
            }
            (x, qcomm_core::SignVector::new(flipped)?, Some(delta))
        }
        None => (
            qcomm_core::SignVector::random(len, &mut rng),
            qcomm_core::SignVector::random(len, &mut rng),
            None,
        ),
    };
    let agree = x.agreements(&y)? as f64 / len as f64;
    let exact = sqrt_sampler_exact_prob(agree, queries);
    let mut accepts = 0u64;
    let mut bits = 0u64;
    for _ in 0..trials {
        let run = sqrt_sampler(&x, &y, queries, &mut rng)?;
        accepts += run.output as u64;
        bits = run.bits_sent();
    }
    let empirical = accepts as f64 / trials as f64;
    let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
    let mut record = ReportRecord::new("sqrt-sampler", config.seed)
        .param("len", len as u64)
        .param("queries", queries as u64)
        .param("trials", trials)
        .metric("agree_fraction", agree)
        .metric("exact_accept", exact)
        .metric("empirical_accept", empirical)
        .metric("bits_sent", bits as f64)
        .holds((empirical - exact).abs() <= 3.0 * sigma.max(1e-6));
    if let Some(delta) = delta {
        record = record
            .param("delta", delta)
            .metric("cosh_approximation", cosh_acceptance_approximation(len, delta));
    }
    Ok(vec![record])
}

fn verdict_record(seed: u64, verdict: CheckVerdict) -> ReportRecord {
    let mut record = ReportRecord::new("lemma-verify", seed)
        .param("check", verdict.check.clone())
        .metric("lhs", verdict.lhs)
        .metric("rhs", verdict.rhs)
        .metric("margin", verdict.margin)
        .metric("samples", verdict.samples as f64)
        .holds(verdict.holds);
    for (key, value) in verdict.params {
        record = record.param(&key, value);
    }
    record
}

fn lemma_verify(config: &ExperimentConfig) -> Result<Vec<ReportRecord>, CliError> {
    let check = config.str_param("check", None)?;
    let verdicts: Vec<CheckVerdict> = match check.as_str() {
        "fact1" => check_fact1(config)?,
        "fact2" => check_fact2(config)?,
        "shift-map" => check_shift_map(config)?,
        "calculus" => check_calculus(config)?,
        "binomial-bounds" => check_binomial(config)?,
        "squared-sum" => check_squared_sum(config)?,
        "tail-bound" => check_tail_bound(config)?,
        "overlap-law" => check_overlap_law(config)?,
        "sign-map" => check_sign_map(config)?,
        other => {
            return Err(CliError::Validation(format!(
                "unknown check {other:?}; expected one of fact1, fact2, shift-map, calculus, \
                 binomial-bounds, squared-sum, tail-bound, overlap-law, sign-map"
            )))
        }
    };
    Ok(verdicts
        .into_iter()
        .map(|v| verdict_record(config.seed, v))
        .collect())
}

fn check_fact1(config: &ExperimentConfig) -> Result<Vec<CheckVerdict>, CliError> {
    let len = config.u64_param("n", None)? as usize;
    let p = config.f64_param("p", None)?;
    let lhs = expected_squared_overlap(len, p);
    let rhs = expected_squared_overlap_from_pmf(len, p);
    Ok(vec![CheckVerdict::exact(
        "mean-squared-overlap",
        lhs,
        rhs,
        (lhs - rhs).abs() <= 1e-12,
    )
    .with_param("N", len as u64)
    .with_param("p", p)])
}

fn check_fact2(config: &ExperimentConfig) -> Result<Vec<CheckVerdict>, CliError> {
    let len = config.u64_param("n", Some(100))? as usize;
    let p = config.f64_param("p", Some(0.01))?;
    let mut worst_gap: f64 = 0.0;
    for delta in overlap_support(len) {
        worst_gap = worst_gap.max((xi_prime_overlap_pmf(len, p, delta)? - xi_overlap_pmf(len, p, delta)).abs());
    }
    let mut verdicts = vec![CheckVerdict::exact(
        "padded-overlap-law",
        worst_gap,
        0.0,
        worst_gap == 0.0,
    )
    .with_param("N", len as u64)
    .with_param("p", p)];
    let lens = config.list_param("sweep", "100,400,1600")?;
    let mut maxima = Vec::new();
    for text in &lens {
        let sweep_len: usize = text
            .parse()
            .map_err(|_| CliError::Validation(format!("bad sweep length {text:?}")))?;
        let max = padded_overlap_ratio_max(sweep_len, p)?;
        maxima.push((sweep_len, max.ratio, max.within_hypothesis));
    }
    let mean = maxima.iter().map(|&(_, r, _)| r).sum::<f64>() / maxima.len() as f64;
    for (sweep_len, ratio, within) in maxima {
        verdicts.push(
            CheckVerdict::exact("padded-ratio-max", ratio, mean, ratio >= 0.8 * mean && ratio <= 1.2 * mean)
                .with_param("N", sweep_len as u64)
                .with_param("p", p)
                .with_param("within_hypothesis", within),
        );
    }
    Ok(verdicts)
}

fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map(BigInt::from)
            .map_err(|_| CliError::Validation(format!("bad rational component {t:?}")))
    };
    match text.split_once('/') {
        Some((num, den)) => Ok(BigRational::new(parse_int(num)?, parse_int(den)?)),
        None => Ok(BigRational::from(parse_int(text)?)),
    }
}

fn check_shift_map(config: &ExperimentConfig) -> Result<Vec<CheckVerdict>, CliError> {
    let p = parse_rational(&config.str_param("p", Some("-1/3"))?)?;
    let q1 = parse_rational(&config.str_param("q1", Some("1/4"))?)?;
    let q2 = parse_rational(&config.str_param("q2", Some("1/2"))?)?;
    let (sequential, direct, equal) = shift_semigroup_exact(&p, &q1, &q2);
    let to_f64 = |r: &BigRational| -> f64 {
        let num: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
        let den: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
        num / den
    };
    Ok(vec![CheckVerdict::exact(
        "shift-semigroup",
        to_f64(&sequential),
        to_f64(&direct),
        equal,
    )
    .with_param("p", p.to_string())
    .with_param("q1", q1.to_string())
    .with_param("q2", q2.to_string())])
}

fn check_calculus(config: &ExperimentConfig) -> Result<Vec<CheckVerdict>, CliError> {
    let step = config.f64_param("step", Some(1e-4))?;
    let grid = f_function_grid(step)?;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_fd: f64 = 0.0;
    let mut bounds = true;
    for rec in &grid {
        worst_excess = worst_excess.max(rec.f + rec.x * rec.x);
        worst_fd = worst_fd.max((rec.f_second - rec.f_second_fd).abs());
        bounds &= rec.bound_holds;
    }
    Ok(vec![
        CheckVerdict::exact("entropy-bound", worst_excess, 1e-12, bounds)
            .with_param("step", step)
            .with_param("points", grid.len() as u64),
        CheckVerdict::exact("second-derivative-fd", worst_fd, FD_TOL, worst_fd <= FD_TOL)
            .with_param("step", step),
    ])
}

fn check_binomial(config: &ExperimentConfig) -> Result<Vec<CheckVerdict>, CliError> {
    let cap = config.u64_param("cap", Some(200))?;
    let mut violations = 0u64;
    let mut checked = 0u64;
    for n in 2..=cap {
        for k in 1..n {
            checked += 1;
            if !check_binomial_bounds(n, k)?.holds {
                violations += 1;
            }
        }
    }
    Ok(vec![CheckVerdict::exact(
        "binomial-entropy-bounds",
        violations as f64,
        0.0,
        violations == 0,
    )
    .with_param("cap", cap)
    .with_param("checked", checked)])
}

fn check_squared_sum(config: &ExperimentConfig) -> Result<Vec<CheckVerdict>, CliError> {
    let ms = config.list_param("ms", "1,2,4,8,16,32,64")?;
    let mut verdicts = Vec::new();
    let mut band = Vec::new();
    for text in &ms {
        let m: u32 = text
            .parse()
            .map_err(|_| CliError::Validation(format!("bad m value {text:?}")))?;
        let cost = rademacher_square_l1_cost(m)?;
        if m >= 8 {
            band.push(cost.value / m as f64);
        }
        verdicts.push(
            CheckVerdict::exact("squared-sum-cost", cost.value, cost.optimal_q as f64, true)
                .with_param("m", m),
        );
    }
    if band.len() >= 2 {
        let lo = band.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = band.iter().cloned().fold(0.0f64, f64::max);
        verdicts.push(
            CheckVerdict::exact("squared-sum-cost-band", hi, lo, hi / lo <= 2.0)
                .with_param("band_ratio", hi / lo),
        );
    }
    Ok(verdicts)
}

fn check_tail_bound(config: &ExperimentConfig) -> Result<Vec<CheckVerdict>, CliError> {
    let dim = config.u64_param("dim", Some(16))? as usize;
    let rank = config.u64_param("rank", Some(4))? as usize;
    let delta = config.f64_param("delta", Some(1.0))?;
    let trials = config.u64_param("trials", Some(100_000))?;
    let rep = randomproj_tail_check(dim, rank, delta, trials, config.seed)?;
    Ok(vec![CheckVerdict::exact(
        "projector-tail-bound",
        rep.empirical_tail,
        rep.bound + 3.0 * rep.std_error,
        rep.holds,
    )
    .with_param("dim", dim as u64)
    .with_param("rank", rank as u64)
    .with_param("delta", delta)
    .with_sampling(trials, config.seed)])
}

fn check_overlap_law(config: &ExperimentConfig) -> Result<Vec<CheckVerdict>, CliError> {
    let dim = config.u64_param("dim", Some(8))? as usize;
    let samples = config.u64_param("samples", Some(100_000))?;
    let rep = overlap_law_check(dim, samples, config.seed)?;
    Ok(vec![CheckVerdict::exact(
        "haar-overlap-law",
        rep.ks_distance,
        0.01,
        rep.ks_distance < 0.01 && rep.max_tail_z < 3.0,
    )
    .with_param("dim", dim as u64)
    .with_param("max_tail_z", rep.max_tail_z)
    .with_sampling(samples, config.seed)])
}

fn check_sign_map(config: &ExperimentConfig) -> Result<Vec<CheckVerdict>, CliError> {
    let eta = config.f64_param("eta", Some(0.3))?;
    let samples = config.u64_param("samples", Some(1_000_000))?;
    let len = config.u64_param("len", Some(6))? as usize;
    let p = sign_map(eta)?;
    let target = (1.0 + p) / 2.0;
    let params = GaussianXiParams::new(len, eta)?;
    let mut rng = rng::master(config.seed);
    let mut agree = 0u64;
    let mut drawn = 0u64;
    while drawn < samples {
        let (xs, ys) = gaussian_xi_sample(params, &mut rng);
        let (sx, sy) = (signs(&xs), signs(&ys));
        agree += sx.iter().zip(&sy).filter(|(a, b)| a == b).count() as u64;
        drawn += len as u64;
    }
    let rate = agree as f64 / drawn as f64;
    let sigma = (target * (1.0 - target) / drawn as f64).sqrt();
    Ok(vec![CheckVerdict::exact(
        "gaussian-sign-map",
        rate,
        target,
        (rate - target).abs() <= 3.0 * sigma,
    )
    .with_param("eta", eta)
    .with_param("p", p)
    .with_sampling(drawn, config.seed)])
}

fn rectangles(config: &ExperimentConfig) -> Result<Vec<ReportRecord>, CliError> {
    let len = config.u64_param("n", Some(12))? as usize;
    let b = config.f64_param("b", Some(10.0))?;
    let delta = config.f64_param("delta", Some(0.1))?;
    let count = config.u64_param("count", Some(200))?;
    let samples = config.u64_param("samples", Some(200_000))?;
    let mode = match config.str_param("mode", Some("exact"))?.as_str() {
        "exact" => SkewMode::Exact,
        "mc" => SkewMode::MonteCarlo,
        other => {
            return Err(CliError::Validation(format!(
                "mode must be exact or mc, got {other:?}"
            )))
        }
    };
    let skews: Vec<f64> = config
        .list_param("skews", "-3,-1,0,1,3")?
        .iter()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::Validation(format!("bad skew {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    let families = config.list_param("families", "random,ball,threshold")?;
    let per_rect = config.bool_param("per-rect", false)?;
    let mut rng = rng::master(config.seed);
    let mut records = Vec::new();
    for family_name in &families {
        let mut checked = 0u64;
        let mut skipped = 0u64;
        let mut violations = 0u64;
        let mut min_margin = f64::INFINITY;
        for index in 0..count {
            let family = match family_name.as_str() {
                "random" => RectangleFamily::RandomDensity {
                    density: 0.7 + 0.25 * rng.gen_range(0.0..1.0),
                },
                "ball" => RectangleFamily::HammingBall {
                    radius: rng.gen_range((len as u32 / 2 + 1)..=(len as u32)),
                },
                "threshold" => RectangleFamily::Threshold {
                    threshold: -rng.gen_range(2..=len as i64),
                },
                "leaves" => RectangleFamily::ProtocolLeaves { depth: 2 },
                other => {
                    return Err(CliError::Validation(format!(
                        "unknown family {other:?}; expected random, ball, threshold, leaves"
                    )))
                }
            };
            for rect in family.generate(len, &mut rng)? {
                for &s in &skews {
                    let cfg = SkewCheckConfig {
                        len,
                        b,
                        s,
                        delta,
                        mode,
                        samples,
                    };
                    let outcome = skewed_anticoncentration_check(&cfg, &rect, &mut rng)?;
                    if outcome.skipped {
                        skipped += 1;
                        continue;
                    }
                    checked += 1;
                    min_margin = min_margin.min(outcome.margin);
                    if !outcome.holds {
                        violations += 1;
                    }
                    if per_rect {
                        let verdict =
                            outcome.verdict(&cfg, family_name, config.seed.wrapping_add(index));
                        records.push(verdict_record(config.seed, verdict));
                    }
                }
            }
        }
        records.push(
            ReportRecord::new("rectangles", config.seed)
                .param("n", len as u64)
                .param("b", b)
                .param("delta", delta)
                .param("family", family_name.clone())
                .metric("checked", checked as f64)
                .metric("skipped", skipped as f64)
                .metric("violations", violations as f64)
                .metric(
                    "min_margin",
                    if min_margin.is_finite() { min_margin } else { f64::NAN },
                )
                .holds(violations == 0),
        );
    }
    Ok(records)
}

fn report(config: &ExperimentConfig) -> Result<Vec<ReportRecord>, CliError> {
    let input = config.str_param("input", None)?;
    let output = config.str_param("output", None)?;
    let text = std::fs::read_to_string(&input)?;
    let records = read_json_lines(&text)?;
    let file = std::fs::File::create(&output)?;
    records_to_csv(&records, file)?;
    Ok(vec![ReportRecord::new("report", config.seed)
        .param("input", input)
        .param("output", output)
        .metric("records", records.len() as f64)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_command_is_usage_error() {
        let config = ExperimentConfig::new("frobnicate", 1);
        assert_eq!(run(&config).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn fact1_spot_value() {
        let config = ExperimentConfig::new("lemma-verify", 7)
            .with("check", "fact1")
            .with("n", 4)
            .with("p", 0.5);
        let records = run(&config).unwrap();
        assert_eq!(records.len(), 1);
        let lhs = records[0].metrics["lhs"];
        let rhs = records[0].metrics["rhs"];
        assert!((lhs - 7.0 / 16.0).abs() < 1e-12);
        assert!((rhs - 7.0 / 16.0).abs() < 1e-12);
        assert_eq!(records[0].holds, Some(true));
    }

    #[test]
    fn missing_parameters_are_validation_errors() {
        let config = ExperimentConfig::new("dfs-quantum", 7);
        assert_eq!(run(&config).unwrap_err().exit_code(), 3);
    }
}
