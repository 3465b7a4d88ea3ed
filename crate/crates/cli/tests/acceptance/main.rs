//! One pass/fail line per acceptance criterion; the test fails if any line does.
//! Command-line behavior checks live in [`cli`].

mod cli;

use std::process::Command;
use std::time::{Duration, Instant};

use ftgates::gates::GateWord;
use ftgates::random::haar_su2;
use ftgates::sim::StateVector;
use ftgates::su2::{pauli_power, Axis};
use ftgates::suites::{
    cyclotomic_suite, eigenprep_stats, identities_suite, rho_suite, ring_suite, t_gadget_min_fidelity,
    toffoli_state_error, SuiteConfig,
};
use ftgates::synth::{approx_su2, lambda_frame};
use ftgates::Unitary;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Line {
    passed: bool,
    detail: String,
}

fn line(passed: bool, detail: impl Into<String>) -> Line {
    Line { passed, detail: detail.into() }
}

fn criterion_1() -> Line {
    let f = lambda_frame();
    let cos = (f.lambda * std::f64::consts::PI).cos();
    let d_cos = (cos - (2.0 + 2f64.sqrt()) / 4.0).abs();
    let dot = f.axis1.dot(&f.axis2).abs();
    line(d_cos < 1e-14 && dot < 1e-12, format!("lambda={:.17} |cos-(2+√2)/4|={d_cos:e} |n1·n2|={dot:e}", f.lambda))
}

fn criterion_2() -> Line {
    let r = cyclotomic_suite().unwrap();
    let summary: Vec<String> = r.checks.iter().map(|c| format!("{}={}", c.name, c.passed)).collect();
    line(r.passed, summary.join(" "))
}

fn criterion_3() -> Line {
    let cfg = SuiteConfig::default();
    let r = ring_suite(&cfg).unwrap();
    let words = r.check("gaussian_words").unwrap();
    let t = r.check("t_has_no_gaussian_form").unwrap();
    line(
        words.passed && t.passed,
        format!(
            "{} words of length <= {}: {} failures; T rejected={}",
            cfg.ring_words, cfg.ring_max_len, words.value, t.passed
        ),
    )
}

fn criterion_4() -> Line {
    let r = identities_suite().unwrap();
    let reports = r.identities.unwrap();
    let ok = reports.len() == 9 && reports.iter().all(|i| i.holds && i.exact_zero && i.numeric_residual < 1e-12);
    let worst = reports.iter().map(|i| i.numeric_residual).fold(0.0, f64::max);
    line(ok, format!("{} identities, all exact-zero={}, worst numeric residual {worst:e}", reports.len(), ok))
}

fn criterion_5() -> Line {
    let f = t_gadget_min_fidelity(100, 0).unwrap();
    line(f > 1.0 - 1e-12, format!("min fidelity over 100 inputs x 2 branches: 1 - {:e}", 1.0 - f))
}

fn criterion_6() -> Line {
    let trials = 10_000;
    let s = eigenprep_stats(trials, 0).unwrap();
    let sig_half = s.sigmas_from(0.5);
    let sig_born = s.sigmas_from(s.plus_probability);
    let tof = toffoli_state_error(0).unwrap();
    let ok = sig_half < 5.0 && s.max_eigen_residual < 1e-10 && tof < 1e-12;
    line(
        ok,
        format!(
            "freq(+)={:.4} over {trials}: {sig_half:.1}σ from 1/2, {sig_born:.2}σ from Born weight (2+√2)/4={:.4}; \
             eigen residual {:e}; |AND>/|NAND> error {tof:e}",
            s.frequency(),
            s.plus_probability,
            s.max_eigen_residual,
        ),
    )
}

fn criterion_7() -> Line {
    let r = rho_suite().unwrap();
    let value = |k: &str| r.check(k).unwrap().value;
    let spec = value("r2_spectrum").max(value("r3_spectrum"));
    let fixed = ["r1", "r2", "r3"].iter().map(|k| value(&format!("{k}_fixed_state"))).fold(0.0, f64::max);
    let consts = value("basis_form.r2.constant").max(value("basis_form.r3.constant"));
    let ok = spec < 1e-10 && fixed < 1e-12 && consts < 1e-6;
    line(ok, format!("spectrum error {spec:e}, fixed-state residual {fixed:e}, constant error {consts:e}"))
}

/// Matrix of a single-qubit word from its action on `|0⟩` and `|1⟩`.
fn simulated(w: &GateWord) -> [[Complex<f64>; 2]; 2] {
    let col = |j| StateVector::<f64>::basis(1, j).unwrap().apply_word(w, 0).unwrap();
    let (c0, c1) = (col(0), col(1));
    [[c0.amplitude(0), c1.amplitude(0)], [c0.amplitude(1), c1.amplitude(1)]]
}

/// `min_θ ||U - e^{iθ} V||` for 2x2 unitaries, from the eigenphases of `U V†`.
fn phase_free_distance(u: &[[Complex<f64>; 2]; 2], v: &Unitary<f64>) -> f64 {
    let mut w = [[Complex::new(0.0, 0.0); 2]; 2];
    for (i, row) in w.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = (0..2).map(|k| u[i][k] * v.entry(j, k).conj()).sum();
        }
    }
    let tr = w[0][0] + w[1][1];
    let det = w[0][0] * w[1][1] - w[0][1] * w[1][0];
    let disc = (tr * tr - det * 4.0).sqrt();
    let (a, b) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    let mut arc = (a.arg() - b.arg()).abs();
    if arc > std::f64::consts::PI {
        arc = std::f64::consts::TAU - arc;
    }
    2.0 * (arc / 4.0).sin()
}

fn median(mut v: Vec<usize>) -> f64 {
    v.sort_unstable();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0
    }
}

fn criterion_8() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut targets = vec![pauli_power::<f64>(Axis::Z, 0.125), pauli_power(Axis::X, 1.0 / 3.0)];
    targets.extend((0..10).map(|_| haar_su2(&mut rng)));
    let mut worst_margin: f64 = 0.0;
    let mut ok = true;
    for t in &targets {
        let r = approx_su2(t, 0.05).unwrap();
        let d = phase_free_distance(&simulated(&r.word), t);
        ok &= d < 0.05;
        worst_margin = worst_margin.max(d);
    }
    let scaling: Vec<Unitary<f64>> = (0..50).map(|_| haar_su2(&mut rng)).collect();
    let epsilons = [0.1, 0.05, 0.025];
    let medians: Vec<f64> = epsilons
        .iter()
        .map(|&e| median(scaling.iter().map(|t| approx_su2(t, e).unwrap().word.len()).collect()))
        .collect();
    let c = medians[0] * epsilons[0].powi(3);
    let bounded = medians.iter().zip(epsilons).all(|(m, e)| *m <= c / e.powi(3));
    let monotone = medians.windows(2).all(|w| w[0] <= w[1]);
    line(
        ok && bounded && monotone,
        format!("12 targets at eps=0.05, worst re-verified error {worst_margin:.4}; medians {medians:?} vs C/eps^3 with C={c:.3}"),
    )
}

fn criterion_9() -> Line {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("psi.json");
    std::fs::write(&state, "[[0.6, 0.0], [0.0, 0.8]]").unwrap();
    let circuit = dir.path().join("c.json");
    std::fs::write(
        &circuit,
        r#"{"width": 2, "gates": [{"name": "H", "targets": [0]}, {"name": "CNOT", "targets": [0, 1]}],
            "measurements": [{"basis": "z", "qubit": 0}, {"basis": "z", "qubit": 1}]}"#,
    )
    .unwrap();
    let s = state.to_str().unwrap();
    let c = circuit.to_str().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["constants"],
        vec!["synth", "--target", "z8", "--eps", "0.05"],
        vec!["simulate", "--input", c, "--seed", "7"],
        vec!["gadget", "t", "--input", s, "--seed", "3"],
        vec!["gadget", "eigenprep", "--u", "uphi", "--seed", "5"],
        vec!["gadget", "eigenprep", "--u", "toffoli", "--seed", "9"],
        vec!["verify", "--suite", "rho", "--seed", "1"],
    ];
    let bin = env!("CARGO_BIN_EXE_ftgates");
    let mut mismatches = Vec::new();
    for args in &invocations {
        let a = Command::new(bin).args(args).output().unwrap();
        let b = Command::new(bin).args(args).output().unwrap();
        if a.stdout != b.stdout || a.stdout.is_empty() || !a.status.success() {
            mismatches.push(args.join(" "));
        }
    }
    line(mismatches.is_empty(), format!("{} invocations run twice; differing: {mismatches:?}", invocations.len()))
}

type Criterion = (u8, &'static str, Duration, fn() -> Line);

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (1, "constants", Duration::from_secs(1), criterion_1),
        (2, "irrationality verdicts", Duration::from_secs(5), criterion_2),
        (3, "ring closure", Duration::from_secs(60), criterion_3),
        (4, "identity suite", Duration::from_secs(5), criterion_4),
        (5, "T-gadget equivalence", Duration::from_secs(5), criterion_5),
        (6, "eigenstate preparation", Duration::from_secs(60), criterion_6),
        (7, "rho spectra", Duration::from_secs(5), criterion_7),
        (8, "synthesis", Duration::from_secs(600), criterion_8),
        (9, "determinism", Duration::from_secs(60), criterion_9),
    ];
    let mut failed = Vec::new();
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let l = run();
        let elapsed = start.elapsed();
        let passed = l.passed && elapsed < budget;
        println!(
            "criterion {n} [{name}]: {} ({:.2}s of {}s) {}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            l.detail
        );
        if !passed {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
