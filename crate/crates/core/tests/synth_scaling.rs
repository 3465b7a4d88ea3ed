use ftgates::random::haar_su2;
use ftgates::su2::{pauli_power, proj_distance, Axis};
use ftgates::synth::{approx_su2, lambda_frame};
use ftgates::{Gate, Unitary};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn median(mut v: Vec<usize>) -> f64 {
    v.sort_unstable();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0
    }
}

fn targets(n: usize, seed: u64) -> Vec<Unitary<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| haar_su2(&mut rng)).collect()
}

#[test]
fn median_length_grows_polynomially() {
    let ts = targets(50, 8);
    let epsilons = [0.1, 0.05, 0.025];
    let mut medians = Vec::new();
    for &eps in &epsilons {
        let mut lens = Vec::new();
        for t in &ts {
            let r = approx_su2(t, eps).unwrap();
            let d = proj_distance(&r.word.numeric::<f64>().unwrap(), t).unwrap();
            assert!(d < eps);
            assert!(r.word.gates.iter().all(|g| matches!(g.gate, Gate::H | Gate::T | Gate::Tdag)));
            lens.push(r.word.len());
        }
        medians.push(median(lens));
    }
    assert!(medians.windows(2).all(|w| w[0] <= w[1]), "{medians:?}");
    let c = medians[0] * epsilons[0].powi(3);
    for (m, e) in medians.iter().zip(epsilons) {
        assert!(*m <= c / e.powi(3), "medians {medians:?} exceed {c}/eps^3");
    }
}

#[test]
fn each_tolerance_is_met_independently() {
    let t = pauli_power::<f64>(Axis::X, 1.0 / 3.0);
    for eps in [0.2, 0.1, 0.05, 0.02, 0.01] {
        let r = approx_su2(&t, eps).unwrap();
        assert!(r.achieved_error < eps);
    }
}

#[test]
fn first_generator_rotation() {
    let f = lambda_frame();
    let g1 = f.gen1_word.numeric::<f64>().unwrap();
    let want = f.rotation(f.lambda * std::f64::consts::PI, &f.axis1);
    assert!(proj_distance(&g1, &want).unwrap() < 1e-12);
    let cos = g1.trace().re / 2.0;
    assert!((cos.abs() - (2.0 + 2f64.sqrt()) / 4.0).abs() < 1e-12);
}
