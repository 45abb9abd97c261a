//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).
//!
//! Criterion 14 (byte-identical reproducibility of CLI records) lives in the
//! CLI crate's acceptance tests, next to the machinery it exercises.

use qcomm_core::classical::gridnet::{epsnet_decoded_state, dqs_epsnet_protocol, GridNetCodec};
use qcomm_core::classical::raz::{calibrate_codebook_size, raz_success_rate, CalibrationRow};
use qcomm_core::classical::sampler::{cosh_acceptance_approximation, sqrt_sampler, sqrt_sampler_exact_prob};
use qcomm_core::lemma::laws::{overlap_law_check, rademacher_square_l1_cost, randomproj_tail_check};
use qcomm_core::lemma::calculus::{f_function_grid, FD_TOL};
use qcomm_core::lemma::rects::RectangleFamily;
use qcomm_core::lemma::skew::{skewed_anticoncentration_check, SkewCheckConfig, SkewMode};
use qcomm_core::lemma::xi::{
    expected_squared_overlap, expected_squared_overlap_from_pmf, overlap_support,
    padded_overlap_ratio_max, shift_semigroup_exact, shifted_correlation, xi_overlap_pmf,
    xi_prime_overlap_pmf, xi_sample, XiParams,
};
use qcomm_core::math::dist::OutcomeDistribution;
use qcomm_core::math::haar::haar_random_state;
use qcomm_core::math::measurement::Measurement;
use qcomm_core::math::sign::SignVector;
use qcomm_core::math::special::check_binomial_bounds;
use qcomm_core::protocol::randomized::{
    acceptance_accounting, acceptance_probability_direct, JointDistribution, RandomizedProtocol,
};
use qcomm_core::quantum::ddfs::{alice_marginal, ddfs_joint_pmf, ddfs_quantum_sample, xor_pushforward};
use qcomm_core::quantum::dfs::{dfs_distribution, dfs_statevector_pmf, DfsInstance};
use qcomm_core::quantum::dqs::{dqs_distribution, DqsInstance};
use qcomm_core::rng::master;
use qcomm_core::lemma::xi::shift_pairs;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

fn report(number: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("[criterion {number:2}] {name}: {verdict} — {detail}");
}

/// Double-sum evaluation of the target distribution, independent of the
/// transform implementation.
fn brute_force_target(inst: &DfsInstance) -> Vec<f64> {
    let dim = inst.dimension();
    (0..dim)
        .map(|s| {
            let coeff: f64 = (0..dim)
                .map(|x| {
                    let sign = if (s & x).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                    sign * (inst.f().get(x) * inst.g().get(x)) as f64
                })
                .sum::<f64>()
                / dim as f64;
            coeff * coeff
        })
        .collect()
}

#[test]
fn c01_fourier_sampling_three_route_equivalence() {
    let mut worst: f64 = 0.0;
    let mut check = |inst: &DfsInstance| {
        let closed = dfs_distribution(inst).unwrap();
        let pipeline = dfs_statevector_pmf(inst).unwrap();
        let brute = OutcomeDistribution::from_dense(&brute_force_target(inst)).unwrap();
        worst = worst
            .max(closed.l1_distance(&brute))
            .max(closed.l1_distance(&pipeline));
    };
    for fi in 0..16u64 {
        for gi in 0..16u64 {
            check(
                &DfsInstance::new(SignVector::from_index(fi, 4), SignVector::from_index(gi, 4))
                    .unwrap(),
            );
        }
    }
    let mut rng = master(1001);
    for qubits in 3..=6 {
        for _ in 0..250 {
            check(&DfsInstance::random(qubits, &mut rng).unwrap());
        }
    }
    let pass = worst <= 1e-10;
    report(
        1,
        "closed form ≡ brute force ≡ statevector pipeline",
        pass,
        &format!("max l1 gap {worst:.2e} over 256 exhaustive + 1000 random instances"),
    );
    assert!(pass);
}

#[test]
fn c02_double_output_joint_law() {
    let mut rng = master(1002);
    let mut worst_marginal: f64 = 0.0;
    let mut worst_push: f64 = 0.0;
    for qubits in 1..=3 {
        for _ in 0..20 {
            let inst = DfsInstance::random(qubits, &mut rng).unwrap();
            let joint = ddfs_joint_pmf(&inst).unwrap();
            let dim = inst.dimension() as u64;
            let marginal = alice_marginal(&joint, qubits);
            for s in 0..dim {
                worst_marginal = worst_marginal.max((marginal.prob(s) - 1.0 / dim as f64).abs());
            }
            let target = dfs_distribution(&inst).unwrap();
            worst_push = worst_push.max(xor_pushforward(&joint, qubits).l1_distance(&target));
        }
    }
    let inst = DfsInstance::random(3, &mut rng).unwrap();
    let pairs = ddfs_quantum_sample(&inst, 100_000, &mut rng).unwrap();
    let xors: Vec<u64> = pairs.iter().map(|&(s, t)| s ^ t).collect();
    let emp_gap = OutcomeDistribution::empirical(&xors)
        .unwrap()
        .l1_distance(&dfs_distribution(&inst).unwrap());
    let pass = worst_marginal <= 1e-12 && worst_push <= 1e-12 && emp_gap <= 0.02;
    report(
        2,
        "double-output law: uniform marginal, exact XOR pushforward",
        pass,
        &format!(
            "marginal gap {worst_marginal:.2e}, pushforward gap {worst_push:.2e}, empirical l1 {emp_gap:.4}"
        ),
    );
    assert!(pass);
}

#[test]
fn c03_state_codec_soundness_and_accounting() {
    let mut rng = master(1003);
    let mut detail = String::new();
    let mut pass = true;
    for &qubits in &[1usize, 2] {
        for &eps in &[0.1f64, 0.2, 0.3] {
            let codec = GridNetCodec::new(qubits, eps).unwrap();
            let dim = 1 << qubits;
            let mut worst: f64 = 0.0;
            for _ in 0..200 {
                let psi = haar_random_state(dim, &mut rng).unwrap();
                let m = Measurement::random_projective(dim, dim / 2, &mut rng).unwrap();
                let ideal = dqs_distribution(&DqsInstance::new(psi.clone(), m.clone()).unwrap()).unwrap();
                let decoded = epsnet_decoded_state(&psi, &codec).unwrap();
                let realized = dqs_distribution(&DqsInstance::new(decoded, m).unwrap()).unwrap();
                worst = worst.max(ideal.l1_distance(&realized));
            }
            // One live protocol run to pin the bit accounting.
            let psi = haar_random_state(dim, &mut rng).unwrap();
            let m = Measurement::random_projective(dim, dim / 2, &mut rng).unwrap();
            let run = dqs_epsnet_protocol(&DqsInstance::new(psi, m).unwrap(), &codec, &mut rng).unwrap();
            let formula = 2 * (1u64 << qubits) * codec.bits_per_component() as u64;
            let cell_ok = worst <= eps && run.bits_sent() == formula && codec.total_bits() == formula;
            pass &= cell_ok;
            detail.push_str(&format!("n={qubits} eps={eps}: l1 {worst:.4}/{} bits {}; ", eps, formula));
        }
    }
    report(3, "state codec soundness (exact pmf comparison) and bit accounting", pass, &detail);
    assert!(pass);
}

#[test]
fn c04_codebook_protocol_success_and_scaling() {
    let seed = 7u64;
    let rows: Vec<CalibrationRow> = [8usize, 16, 32, 64]
        .iter()
        .map(|&n| calibrate_codebook_size(n, (n / 4).max(1), 2.0 / 3.0, 500, 20, seed).unwrap())
        .collect();
    let resolved = rows.iter().all(|r| r.resolved);
    let monotone = rows.windows(2).all(|w| w[0].codebook_size <= w[1].codebook_size);
    // Sublinear trend: bits per input dimension must shrink across the sweep.
    let sublinear = (rows[3].log2_size as f64 / 64.0) < (rows[0].log2_size as f64 / 8.0);
    // Fresh evaluation at the calibrated size for N = 16 (padded to 32).
    let k16 = rows[1].codebook_size;
    let eval = raz_success_rate(16, 4, false, seed ^ 0xc0de_b00c, k16, 500, 8888).unwrap();
    let ci_ok = eval.wilson_lower_95 >= 0.6;
    let pass = resolved && monotone && sublinear && ci_ok;
    let ks: Vec<usize> = rows.iter().map(|r| r.codebook_size).collect();
    report(
        4,
        "codebook protocol: calibrated success and sublinear scaling",
        pass,
        &format!(
            "K = {ks:?} for N = [8,16,32,64]; eval at N=16,K={k16}: rate {:.3} (wilson LB {:.3}, target ≥ 0.6) over {} trials",
            eval.success_rate, eval.wilson_lower_95, eval.trials
        ),
    );
    assert!(pass);
}

#[test]
fn c05_mean_squared_overlap_identity() {
    let mut worst: f64 = 0.0;
    for len in 2..=64usize {
        for tenths in -9..=9 {
            let p = tenths as f64 / 10.0;
            worst = worst
                .max((expected_squared_overlap(len, p) - expected_squared_overlap_from_pmf(len, p)).abs());
        }
    }
    let spot = expected_squared_overlap(4, 0.5);
    let spot_ok = (spot - 7.0 / 16.0).abs() <= 1e-12
        && (expected_squared_overlap_from_pmf(4, 0.5) - 7.0 / 16.0).abs() <= 1e-12;
    let pass = worst <= 1e-12 && spot_ok;
    report(
        5,
        "mean squared overlap: closed form vs pmf-weighted sum",
        pass,
        &format!("max gap {worst:.2e} over N ≤ 64 × p grid; spot N=4,p=1/2 → {spot} (7/16)"),
    );
    assert!(pass);
}

#[test]
fn c06_padded_law_and_ratio_stability() {
    // Padded overlap law must equal the unpadded law bit-for-bit.
    let mut exact_equal = true;
    for len in [2usize, 4, 16, 64] {
        for tenths in [-9i32, -3, 0, 3, 9] {
            let p = tenths as f64 / 10.0;
            for delta in overlap_support(len) {
                if xi_prime_overlap_pmf(len, p, delta).unwrap() != xi_overlap_pmf(len, p, delta) {
                    exact_equal = false;
                }
            }
        }
    }
    // Ratio sweep: the max over the support must be stable in N.
    let mut stable = true;
    let mut detail = String::new();
    for &p in &[0.0f64, 0.005, 0.01] {
        let maxima: Vec<f64> = [100usize, 400, 1600]
            .iter()
            .map(|&len| padded_overlap_ratio_max(len, p).unwrap().ratio)
            .collect();
        let mean = maxima.iter().sum::<f64>() / maxima.len() as f64;
        let ok = maxima.iter().all(|&m| m >= 0.8 * mean && m <= 1.2 * mean);
        stable &= ok;
        detail.push_str(&format!("p={p}: max ratio {maxima:?}; "));
    }
    let pass = exact_equal && stable;
    report(
        6,
        "padded construction: exact overlap law, stable uniform-comparison constant",
        pass,
        &format!("exact equality {exact_equal}; {detail}"),
    );
    assert!(pass);
}

#[test]
fn c07_shift_map_semigroup_and_statistics() {
    // Exact rational semigroup identity over a parameter grid.
    let ratio = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let ps = [ratio(-1, 1), ratio(-1, 3), ratio(0, 1), ratio(2, 5), ratio(1, 1)];
    let qs = [ratio(0, 1), ratio(1, 4), ratio(1, 3), ratio(2, 3), ratio(1, 1)];
    let mut exact = true;
    for p in &ps {
        for q1 in &qs {
            for q2 in &qs {
                exact &= shift_semigroup_exact(p, q1, q2).2;
            }
        }
    }
    // Statistical check at 10^6 coordinate draws.
    let mut rng = master(1007);
    let (p, q1, q2) = (-0.2f64, 0.3f64, 0.5f64);
    let target = (1.0 + shifted_correlation(shifted_correlation(p, q1), q2)) / 2.0;
    let len = 10usize;
    let draws = 1_000_000u64;
    let mut agree = 0u64;
    for _ in 0..draws / len as u64 {
        let (x, y) = xi_sample(XiParams::new(len, p).unwrap(), &mut rng);
        let (x, y) = shift_pairs(&x, &y, q1, &mut rng).unwrap();
        let (x, y) = shift_pairs(&x, &y, q2, &mut rng).unwrap();
        agree += x.agreements(&y).unwrap() as u64;
    }
    let rate = agree as f64 / draws as f64;
    let sigma = (target * (1.0 - target) / draws as f64).sqrt();
    let stat_ok = (rate - target).abs() <= 3.0 * sigma;
    let pass = exact && stat_ok;
    report(
        7,
        "shift map: exact semigroup identity and agreement statistics",
        pass,
        &format!("rational identity {exact}; rate {rate:.5} vs {target:.5} (3σ = {:.5})", 3.0 * sigma),
    );
    assert!(pass);
}

#[test]
fn c08_skewed_anticoncentration_sweep() {
    let mut rng = master(1008);
    let len = 12usize;
    let skews = [-3.0f64, -1.0, 0.0, 1.0, 3.0];
    let mut rectangles = Vec::new();
    for _ in 0..600 {
        let density = 0.7 + 0.25 * rng.gen::<f64>();
        rectangles.extend(
            RectangleFamily::RandomDensity { density }
                .generate(len, &mut rng)
                .unwrap(),
        );
    }
    for _ in 0..200 {
        let radius = rng.gen_range(7..=12);
        rectangles.extend(
            RectangleFamily::HammingBall { radius }
                .generate(len, &mut rng)
                .unwrap(),
        );
    }
    for _ in 0..200 {
        let threshold = -rng.gen_range(2..=12);
        rectangles.extend(
            RectangleFamily::Threshold { threshold }
                .generate(len, &mut rng)
                .unwrap(),
        );
    }
    // Protocol-leaf rectangles are part of the adversarial mix; at this
    // largeness threshold they are mostly skipped, which the counters show.
    rectangles.extend(
        RectangleFamily::ProtocolLeaves { depth: 2 }
            .generate(len, &mut rng)
            .unwrap(),
    );
    let mut checked = 0u64;
    let mut skipped = 0u64;
    let mut violations = 0u64;
    let mut min_margin = f64::INFINITY;
    for rect in &rectangles {
        for &s in &skews {
            let cfg = SkewCheckConfig {
                len,
                b: 10.0,
                s,
                delta: 0.1,
                mode: SkewMode::Exact,
                samples: 0,
            };
            let outcome = skewed_anticoncentration_check(&cfg, rect, &mut rng).unwrap();
            if outcome.skipped {
                skipped += 1;
            } else {
                checked += 1;
                min_margin = min_margin.min(outcome.margin);
                if !outcome.holds {
                    violations += 1;
                }
            }
        }
    }
    let pass = violations == 0 && checked >= 5000;
    report(
        8,
        "skewed anticoncentration: exhaustive exact sweep over large rectangles",
        pass,
        &format!(
            "{checked} rectangle/skew checks ({} rectangles, {skipped} below threshold), violations {violations}, min margin {min_margin:.4}",
            rectangles.len()
        ),
    );
    assert!(pass);
}

#[test]
fn c09_entropy_calculus_and_binomial_bounds() {
    let grid = f_function_grid(1e-4).unwrap();
    let mut bound_ok = true;
    let mut fd_worst: f64 = 0.0;
    for rec in &grid {
        bound_ok &= rec.bound_holds;
        fd_worst = fd_worst.max((rec.f_second - rec.f_second_fd).abs());
    }
    let fd_ok = fd_worst <= FD_TOL;
    let mut binom_ok = true;
    for n in 2..=200u64 {
        for k in 1..n {
            binom_ok &= check_binomial_bounds(n, k).unwrap().holds;
        }
    }
    let pass = bound_ok && fd_ok && binom_ok;
    report(
        9,
        "entropy-difference calculus and binomial coefficient bounds",
        pass,
        &format!(
            "{} grid points: bounds {bound_ok}, worst fd gap {fd_worst:.2e}; entropy-form bounds to N=200: {binom_ok}",
            grid.len()
        ),
    );
    assert!(pass);
}

#[test]
fn c10_haar_overlap_law_and_projector_tail() {
    let mut law_ok = true;
    let mut detail = String::new();
    for dim in [2usize, 4, 8, 16] {
        let rep = overlap_law_check(dim, 100_000, 1010).unwrap();
        law_ok &= rep.ks_distance < 0.01 && rep.max_tail_z < 3.0;
        detail.push_str(&format!("dim {dim}: ks {:.4} z {:.2}; ", rep.ks_distance, rep.max_tail_z));
    }
    let mut tail_ok = true;
    let mut cells = 0;
    for dim in [8usize, 16, 32] {
        for rank in [1usize, dim / 4, dim / 2, dim] {
            for delta in [0.0f64, 0.5, 1.0, 2.0] {
                let rep = randomproj_tail_check(dim, rank, delta, 100_000, 1011).unwrap();
                tail_ok &= rep.holds;
                cells += 1;
            }
        }
    }
    let pass = law_ok && tail_ok;
    report(
        10,
        "Haar overlap law and subspace-mass tail bound",
        pass,
        &format!("{detail}tail bound held on {cells}/{cells} grid cells"),
    );
    assert!(pass);
}

#[test]
fn c11_rademacher_square_cost_scaling() {
    let m1 = rademacher_square_l1_cost(1).unwrap().value;
    let m2 = rademacher_square_l1_cost(2).unwrap().value;
    let per_m: Vec<f64> = [8u32, 16, 32, 64]
        .iter()
        .map(|&m| rademacher_square_l1_cost(m).unwrap().value / m as f64)
        .collect();
    let lo = per_m.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = per_m.iter().cloned().fold(0.0f64, f64::max);
    let pass = m1 == 0.0 && m2 == 2.0 && hi / lo <= 2.0;
    report(
        11,
        "squared-sum approximation cost: exact values and linear scaling band",
        pass,
        &format!("m=1 → {m1}, m=2 → {m2}; value/m over m ∈ [8..64]: {per_m:?} (band ratio {:.3})", hi / lo),
    );
    assert!(pass);
}

#[test]
fn c12_rectangle_accounting_identity() {
    let mut rng = master(1012);
    let mut worst: f64 = 0.0;
    let mut eta_ok = true;
    for trial in 0..20 {
        let depth = rng.gen_range(1..=5);
        let trees = rng.gen_range(1..=6);
        let protocol = RandomizedProtocol::random(32, 32, depth, trees, &mut rng).unwrap();
        let mu = if trial % 2 == 0 {
            JointDistribution::uniform(32, 32)
        } else {
            JointDistribution::random(32, 32, &mut rng)
        };
        let acc = acceptance_accounting(&protocol, &mu).unwrap();
        let direct = acceptance_probability_direct(&protocol, &mu);
        worst = worst.max((acc.total - direct).abs());
        eta_ok &= acc.eta < acc.eta_bound;
    }
    let pass = worst <= 1e-12 && eta_ok;
    report(
        12,
        "acceptance accounting equals direct enumeration; small-rectangle bucket bounded",
        pass,
        &format!("max |accounting − direct| = {worst:.2e} over 20 protocols; eta bound held: {eta_ok}"),
    );
    assert!(pass);
}

#[test]
fn c13_position_sampler_exact_empirical_and_asymptotic() {
    // Empirical vs exact at 3σ.
    let mut rng = master(1013);
    let len = 64usize;
    let x = SignVector::random(len, &mut rng);
    let y = SignVector::random(len, &mut rng);
    let agree = x.agreements(&y).unwrap() as f64 / len as f64;
    let k = 8usize;
    let exact = sqrt_sampler_exact_prob(agree, k);
    let trials = 200_000u64;
    let accepts = (0..trials)
        .filter(|_| sqrt_sampler(&x, &y, k, &mut rng).unwrap().output)
        .count() as f64;
    let rate = accepts / trials as f64;
    let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
    let empirical_ok = (rate - exact).abs() <= 3.0 * sigma.max(1e-5);

    // Closed form vs the asymptotic cosh approximation on the stated domain
    // N ≥ 64, |Δ| ≤ 2, at 5% relative error.
    let mut table = String::new();
    let mut worst_rel: f64 = 0.0;
    for &n in &[64usize, 256, 1024, 4096] {
        let root = (n as f64).sqrt() as usize;
        for &delta in &[0.0f64, 0.5, 1.0, 2.0] {
            let a = 0.5 - delta / (n as f64).sqrt();
            let exact = sqrt_sampler_exact_prob(a, root);
            let approx = cosh_acceptance_approximation(n, delta);
            let rel = (exact - approx).abs() / exact;
            worst_rel = worst_rel.max(rel);
            table.push_str(&format!("(N={n}, Δ={delta}): rel {rel:.3}; "));
        }
    }
    let approx_ok = worst_rel <= 0.05;
    let pass = empirical_ok && approx_ok;
    report(
        13,
        "position sampler: exact vs empirical (3σ) and vs cosh asymptotics (5%)",
        pass,
        &format!(
            "empirical {rate:.5} vs exact {exact:.5} (ok {empirical_ok}); worst cosh relative error {worst_rel:.3} — {table}"
        ),
    );
    assert!(
        empirical_ok,
        "empirical acceptance {rate} departs from exact {exact} beyond 3σ"
    );
    assert!(
        approx_ok,
        "cosh approximation misses 5% relative error on the stated domain: worst {worst_rel:.3} ({table})"
    );
}
