//! Quantum embedding checks: Born statistics, factorization, marginal
//! consistency, and the rebit demonstration.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use testspace::composite::{check_nonsignalling, direct_product, marginal};
use testspace::quantum::{
    embed_local, is_symmetric_quantum, partial_trace, rebit_counterexample, ComplexMatrix,
    DensityOperator, ProjectiveTest,
};
use testspace::Complex64;

fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityOperator {
    let entries: Vec<Complex64> = (0..dim * dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let g = ComplexMatrix::new(dim, entries).unwrap();
    let psd = g.mul(&g.dagger());
    let trace = psd.trace().re;
    DensityOperator::new(psd.scale(Complex64::new(1.0 / trace, 0.0))).unwrap()
}

fn xz_tests() -> [ProjectiveTest; 2] {
    [
        ProjectiveTest::qubit_axis(1.0, 0.0, 0.0).unwrap(),
        ProjectiveTest::qubit_axis(0.0, 0.0, 1.0).unwrap(),
    ]
}

#[test]
fn embeddings_of_random_two_qubit_states_are_nonsignalling() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let tests = xz_tests();
    for _ in 0..20 {
        let rho = random_density(&mut rng, 4);
        let js = embed_local(&rho, 2, &tests).unwrap();
        assert!(check_nonsignalling(&js).passes(1e-9));
        assert!(common::oracle_nonsignalling_deviation(&js) <= 1e-9);
    }
}

#[test]
fn embedding_factorizes_over_product_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let tests = xz_tests();
    for _ in 0..20 {
        let a = random_density(&mut rng, 2);
        let b = random_density(&mut rng, 2);
        let joint = embed_local(&a.kron(&b), 2, &tests).unwrap();
        let separate = direct_product(&[
            embed_local(&a, 2, &tests)
                .unwrap()
                .as_single_state()
                .unwrap(),
            embed_local(&b, 2, &tests)
                .unwrap()
                .as_single_state()
                .unwrap(),
        ])
        .unwrap();
        assert!(joint.approx_eq(&separate, 1e-9));
    }
}

/// Tracing out a system before embedding agrees with marginalizing the
/// embedded state.
#[test]
fn partial_trace_commutes_with_marginals() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let tests = xz_tests();
    for _ in 0..20 {
        let rho = random_density(&mut rng, 4);
        let js = embed_local(&rho, 2, &tests).unwrap();
        for (keep, discard) in [(0usize, 1usize), (1, 0)] {
            let reduced_quantum =
                embed_local(&partial_trace(&rho, 2, &[discard]).unwrap(), 2, &tests).unwrap();
            let reduced_testspace = marginal(&js, &[keep]).unwrap();
            assert!(reduced_quantum.approx_eq(&reduced_testspace, 1e-9));
        }
    }
}

fn singlet() -> DensityOperator {
    let h = 0.5;
    DensityOperator::new(
        ComplexMatrix::from_real(
            4,
            &[
                0.0, 0.0, 0.0, 0.0, //
                0.0, h, -h, 0.0, //
                0.0, -h, h, 0.0, //
                0.0, 0.0, 0.0, 0.0,
            ],
        )
        .unwrap(),
    )
    .unwrap()
}

#[test]
fn singlet_embeds_with_anticorrelated_matched_bases() {
    let tests = xz_tests();
    let js = embed_local(&singlet(), 2, &tests).unwrap();
    // Outcomes 0,1 belong to the x test, 2,3 to the z test. Matched
    // bases never agree and split the rest evenly.
    for (same, cross) in [((0, 0), (0, 1)), ((2, 2), (2, 3))] {
        assert!(js.entry(&[same.0, same.1]).abs() < 1e-12);
        assert!((js.entry(&[cross.0, cross.1]) - 0.5).abs() < 1e-12);
    }
    // The singlet is entangled yet its embedding is nonsignalling.
    assert!(check_nonsignalling(&js).passes(1e-9));
    // Reduced state is maximally mixed.
    let reduced = partial_trace(&singlet(), 2, &[1]).unwrap();
    let mixed = DensityOperator::maximally_mixed(2).unwrap();
    let gap = reduced
        .matrix()
        .entries()
        .iter()
        .zip(mixed.matrix().entries())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).norm_sqr().sqrt()));
    assert!(gap < 1e-12);
    // Not symmetric under swapping the two qubits? The singlet is
    // antisymmetric as a vector but symmetric as a density operator.
    assert!(
        is_symmetric_quantum(&singlet(), 2, 1e-12)
            .unwrap()
            .symmetric
    );
}

#[test]
fn rebit_structure_persists_at_four_copies() {
    let report = rebit_counterexample(4, 8).unwrap();
    assert!(report.state_imaginary_part < 1e-12);
    assert!(report.quantum_symmetric);
    assert!(report.quantum_marginal_gap < 1e-12);
    assert!(report.symmetric);
    assert!(report.embedding_deviation < 1e-9);
    assert!(report.recovery_residual < 1e-9);
    assert!((report.recovered_mixed_weight - 1.0).abs() < 1e-6);
    assert!((report.correlator - 1.0).abs() < 1e-9);
    assert!(report.best_separable_correlator.abs() < 1e-9);
    assert!((report.gap - 1.0).abs() < 1e-9);
}
