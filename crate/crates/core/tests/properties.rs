use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use proptest::sample::subsequence;

use qaks_core::noise::{depolarize_qubit, run_noisy, sweep};
use qaks_core::qaks::kickback_amplitude;
use qaks_core::{
    avg_gate_fidelity, build_qaks, embed, Circuit, Complex, ComplexMatrix, DensityMatrix,
    GateKind, NoiseModel, PGrid, Statevector,
};
use qaks_core::tensor::state_fidelity;

fn complex() -> impl Strategy<Value = Complex> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex::new(re, im))
}

fn matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), dim * dim).prop_map(move |v| ComplexMatrix::new(dim, v).unwrap())
}

fn state(n: usize) -> impl Strategy<Value = Statevector> {
    prop::collection::vec(complex(), 1 << n)
        .prop_filter("nonzero", |v| v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3)
        .prop_map(|v| Statevector::normalized(v).unwrap())
}

/// Mixture of two random pure states.
fn density(n: usize) -> impl Strategy<Value = DensityMatrix> {
    (state(n), state(n), 0.0..1.0f64).prop_map(|(a, b, w)| {
        let m = DensityMatrix::from_pure(&a)
            .matrix()
            .scale(Complex::new(w, 0.0))
            .add(&DensityMatrix::from_pure(&b).matrix().scale(Complex::new(1.0 - w, 0.0)))
            .unwrap();
        DensityMatrix::new(m).unwrap()
    })
}

fn angle() -> impl Strategy<Value = f64> {
    -TAU..TAU
}

fn gate_on(n: usize) -> impl Strategy<Value = (GateKind, Vec<usize>)> {
    let kinds = prop_oneof![
        Just(GateKind::H),
        Just(GateKind::X),
        Just(GateKind::Y),
        Just(GateKind::Z),
        Just(GateKind::S),
        Just(GateKind::T),
        angle().prop_map(GateKind::P),
        Just(GateKind::Cnot),
        angle().prop_map(GateKind::Cp),
        Just(GateKind::Ccx),
    ];
    kinds.prop_flat_map(move |k| {
        let wires = subsequence((0..n).collect::<Vec<_>>(), k.arity()).prop_shuffle();
        (Just(k), wires)
    })
}

fn circuit(n: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(gate_on(n), 0..max_len).prop_map(move |ops| {
        let mut c = Circuit::new(n).unwrap();
        for (k, q) in ops {
            c.push(k, &q).unwrap();
        }
        c
    })
}

fn max_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.sub(b).unwrap().max_abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matmul_is_associative(a in matrix(4), b in matrix(4), c in matrix(4)) {
        let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        prop_assert!(max_diff(&left, &right) < 1e-12);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(2), c in matrix(2), d in matrix(2)) {
        let left = a.kron(&b).matmul(&c.kron(&d)).unwrap();
        let right = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap());
        prop_assert!(max_diff(&left, &right) < 1e-12);
    }

    #[test]
    fn dagger_reverses_products(a in matrix(4), b in matrix(4)) {
        let left = a.matmul(&b).unwrap().dagger();
        let right = b.dagger().matmul(&a.dagger()).unwrap();
        prop_assert!(max_diff(&left, &right) < 1e-12);
    }

    #[test]
    fn trace_distance_is_a_metric(a in density(2), b in density(2), c in density(2)) {
        let ab = a.trace_distance(&b).unwrap();
        let ba = b.trace_distance(&a).unwrap();
        let ac = a.trace_distance(&c).unwrap();
        let cb = c.trace_distance(&b).unwrap();
        prop_assert!((ab - ba).abs() < 1e-10);
        prop_assert!((0.0..=1.0 + 1e-10).contains(&ab));
        prop_assert!(ab <= ac + cb + 1e-10);
        prop_assert!(a.trace_distance(&a).unwrap() < 1e-10);
    }

    #[test]
    fn partial_trace_preserves_trace_and_positivity(rho in density(3), keep in subsequence(vec![0usize, 1, 2], 1..=3)) {
        let reduced = rho.partial_trace(&keep).unwrap();
        prop_assert_eq!(reduced.n_qubits(), keep.len());
        prop_assert!((reduced.matrix().trace() - Complex::new(1.0, 0.0)).norm() < 1e-12);
        prop_assert!(reduced.check_physical(1e-9).is_ok());
    }

    #[test]
    fn embedded_gates_are_unitary((kind, wires) in gate_on(4)) {
        let u = embed(kind, &wires, 4).unwrap();
        prop_assert!(u.unitarity_deviation() < 1e-13);
    }

    #[test]
    fn statevector_path_matches_unitary(c in circuit(4, 12), psi in state(4)) {
        let via_state = c.apply_to_state(&psi).unwrap();
        let via_matrix = c.unitary().unwrap().apply(psi.amps()).unwrap();
        for (x, y) in via_state.amps().iter().zip(&via_matrix) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn appending_circuits_multiplies_unitaries(a in circuit(3, 8), b in circuit(3, 8)) {
        let mut ab = a.clone();
        ab.append(&b).unwrap();
        let product = b.unitary().unwrap().matmul(&a.unitary().unwrap()).unwrap();
        prop_assert!(max_diff(&ab.unitary().unwrap(), &product) < 1e-12);
    }

    #[test]
    fn circuit_text_round_trips(c in circuit(5, 16)) {
        let parsed = Circuit::parse(&c.to_text()).unwrap();
        prop_assert_eq!(parsed, c);
    }

    #[test]
    fn depolarizing_keeps_states_physical(rho in density(2), q in 0usize..2, p in 0.0..=1.0f64) {
        let out = depolarize_qubit(&rho, q, p).unwrap();
        prop_assert!(out.check_physical(1e-9).is_ok());
        prop_assert!(out.trace_distance(&rho).unwrap() <= p + 1e-10);
    }

    #[test]
    fn noisy_runs_stay_physical(c in circuit(3, 6), rho in density(3), p in 0.0..=0.5f64) {
        let out = run_noisy(&c, &rho, NoiseModel::new(p).unwrap()).unwrap();
        prop_assert!(out.check_physical(1e-9).is_ok());
    }

    #[test]
    fn noiseless_run_is_unitary_conjugation(c in circuit(3, 6), psi in state(3)) {
        let rho = run_noisy(&c, &DensityMatrix::from_pure(&psi), NoiseModel::noiseless()).unwrap();
        let expected = DensityMatrix::from_pure(&c.apply_to_state(&psi).unwrap());
        prop_assert!(rho.trace_distance(&expected).unwrap() < 1e-10);
    }

    #[test]
    fn qaks_unitary_with_fixed_subspace(phi in angle()) {
        let g = build_qaks(phi).unwrap();
        prop_assert!(g.unitary().unitarity_deviation() < 1e-12);
        for b in [0b000usize, 0b100] {
            for (i, a) in g.output_of(b).iter().enumerate() {
                let want = if i == b { 1.0 } else { 0.0 };
                prop_assert!((a - Complex::new(want, 0.0)).norm() < 1e-13);
            }
        }
        prop_assert!((g.dynamic_kickback() - kickback_amplitude(phi).abs()).abs() < 1e-12);
    }

    #[test]
    fn qaks_is_periodic(phi in angle()) {
        let a = build_qaks(phi).unwrap();
        let b = build_qaks(phi + TAU).unwrap();
        prop_assert!(max_diff(a.unitary(), b.unitary()) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fidelity_is_seeded_and_bounded(seed in any::<u64>(), p in 0.0..0.3f64) {
        let c = build_qaks(PI).unwrap().circuit().clone();
        let model = NoiseModel::new(p).unwrap();
        let a = avg_gate_fidelity("g", &c, model, 4, seed).unwrap();
        let b = avg_gate_fidelity("g", &c, model, 4, seed).unwrap();
        prop_assert_eq!(a.mean_fidelity.to_bits(), b.mean_fidelity.to_bits());
        prop_assert!((0.0..=1.0 + 1e-12).contains(&a.mean_fidelity));
    }

    #[test]
    fn sweep_is_nonincreasing_in_p(seed in any::<u64>()) {
        let circuits = qaks_core::experiments::gate_circuits().unwrap();
        let samples = sweep(&circuits, &PGrid::default(), 20, seed).unwrap();
        for (label, _) in &circuits {
            let curve: Vec<f64> = samples
                .iter()
                .filter(|s| &s.circuit_label == label)
                .map(|s| s.mean_fidelity)
                .collect();
            prop_assert_eq!(curve.len(), 10);
            for w in curve.windows(2) {
                prop_assert!(w[1] <= w[0] + 0.01, "{label}: {curve:?}");
            }
        }
    }

    #[test]
    fn single_layer_fidelity_is_monotone(psi in state(3), p in 0.0..0.7f64, dp in 0.0..0.05f64) {
        let c = Circuit::new(3).unwrap().with(GateKind::Ccx, &[0, 1, 2]).unwrap();
        let ideal = c.apply_to_state(&psi).unwrap();
        let rho0 = DensityMatrix::from_pure(&psi);
        let f = |p: f64| {
            let rho = run_noisy(&c, &rho0, NoiseModel::new(p).unwrap()).unwrap();
            state_fidelity(&ideal, &rho).unwrap()
        };
        prop_assert!(f(p + dp) <= f(p) + 1e-12);
    }
}
