use ftgates::gates::Gate;
use ftgates::random::{haar_state, random_word};
use ftgates::sim::{Circuit, Outcome, StateVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ALPHABET: [Gate; 12] = [
    Gate::H,
    Gate::T,
    Gate::Tdag,
    Gate::S,
    Gate::Y,
    Gate::CNOT,
    Gate::CZ,
    Gate::CS,
    Gate::CSX,
    Gate::SWAP,
    Gate::TOFFOLI,
    Gate::CCY,
];

#[test]
fn thousand_gate_circuits_preserve_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5 {
        let psi = haar_state::<f64, _>(4, &mut rng);
        let w = random_word(&ALPHABET, 4, 1000, &mut rng);
        let out = psi.apply_word(&w, 0).unwrap();
        assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn gate_then_inverse_is_identity(seed in any::<u64>(), gi in 0usize..ALPHABET.len()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = haar_state::<f64, _>(4, &mut rng);
        let g = ALPHABET[gi];
        let qs = rand::seq::index::sample(&mut rng, 4, g.arity()).into_vec();
        let out = psi.apply(&g.matrix(), &qs).unwrap().apply(&g.inverse().matrix(), &qs).unwrap();
        let d = out.amplitudes().iter().zip(psi.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(d < 1e-10);
    }

    #[test]
    fn branch_probabilities_sum_to_one(seed in any::<u64>(), q in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = haar_state::<f64, _>(3, &mut rng);
        let p0 = psi.measure_z(q, &mut rng, Some(0)).unwrap().probability;
        let p1 = psi.measure_z(q, &mut rng, Some(1)).unwrap().probability;
        prop_assert!((p0 + p1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cat_branches_sum_to_one(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = haar_state::<f64, _>(1, &mut rng);
        let cat = StateVector::<f64>::prepare(ftgates::sim::Preparation::Cat(2)).unwrap();
        let joint = cat.kron(&psi).unwrap().apply_controlled(&Gate::H.matrix(), &[1], &[2]).unwrap();
        let p = joint.measure_cat_basis(&[0, 1], &mut rng, Some(Outcome::Plus)).unwrap().probability;
        let m = joint.measure_cat_basis(&[0, 1], &mut rng, Some(Outcome::Minus)).unwrap().probability;
        prop_assert!((p + m - 1.0).abs() < 1e-12);
    }
}

#[test]
fn seeded_circuit_runs_are_bit_identical() {
    let src = r#"{"width": 4,
        "gates": [{"name": "H", "targets": [0]}, {"name": "H", "targets": [1]}, {"name": "T", "targets": [1]},
                  {"name": "CNOT", "targets": [0, 2]}, {"name": "TOFFOLI", "targets": [0, 1, 3]}, {"name": "H", "targets": [1]}],
        "measurements": [{"basis": "z", "qubit": 0}, {"basis": "z", "qubit": 1}, {"basis": "z", "qubit": 3}]}"#;
    let c: Circuit = serde_json::from_str(src).unwrap();
    for seed in 0..20 {
        let a = c.run(&mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let b = c.run(&mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
