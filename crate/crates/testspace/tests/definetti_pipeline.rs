//! End-to-end mixture pipeline: generation, exchangeability, recovery,
//! posterior updates, and the support certificate, with oracle checks.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use testspace::composite::{conditional, JointState};
use testspace::definetti::{
    certify_support, check_exchangeable, generate_exchangeable, induced_classical,
    posterior_update, recover_mixture, Mixture, Observation, RecoverOptions, SequencePrefix,
};
use testspace::space::TestSpace;
use testspace::statespace::{build_frame, State, StatePolytope};

/// A deterministic mixture over a random subset of polytope vertices.
fn random_vertex_mixture(space: &TestSpace, rng: &mut ChaCha8Rng) -> Mixture {
    let vertices = StatePolytope::analyze(space).unwrap().vertices().unwrap();
    let count = rng.gen_range(1..=vertices.len().min(4));
    let mut picked: Vec<State> = Vec::new();
    while picked.len() < count {
        let v = &vertices[rng.gen_range(0..vertices.len())];
        if !picked.iter().any(|s| s.approx_eq(v, 1e-12)) {
            picked.push(v.clone());
        }
    }
    let raw: Vec<f64> = (0..picked.len())
        .map(|_| rng.gen_range(0.05..1.0))
        .collect();
    let total: f64 = raw.iter().sum();
    Mixture::new(
        raw.iter()
            .zip(picked)
            .map(|(w, s)| (w / total, s))
            .collect(),
    )
    .unwrap()
}

fn prefix_up_to(mixture: &Mixture, n: usize) -> SequencePrefix {
    let levels: Vec<JointState> = (1..=n)
        .map(|k| generate_exchangeable(mixture, k).unwrap())
        .collect();
    SequencePrefix::new(levels).unwrap()
}

#[test]
fn generated_mixtures_round_trip_through_recovery() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let pool = [
        TestSpace::classical(3).unwrap(),
        TestSpace::process(2, 2).unwrap(),
        TestSpace::overlapping_example(),
    ];
    for case in 0..9 {
        let space = &pool[case % pool.len()];
        let mixture = random_vertex_mixture(space, &mut rng);
        for n in 2..=3 {
            let prefix = prefix_up_to(&mixture, n);
            let report = check_exchangeable(&prefix, 1e-10);
            assert!(
                report.passes(),
                "case {case} n={n}: exchangeability deviation {:.3e}",
                report.max_deviation()
            );
            let deepest = prefix.levels().last().unwrap();
            let recovery = recover_mixture(deepest, &RecoverOptions::default()).unwrap();
            assert!(
                recovery.residual <= 1e-7,
                "case {case} n={n}: residual {:.3e}",
                recovery.residual
            );
            if recovery.unique {
                for component in mixture.components() {
                    let recovered = recovery
                        .mixture
                        .components()
                        .iter()
                        .find(|c| c.state().approx_eq(component.state(), 1e-7))
                        .map(|c| c.weight())
                        .unwrap_or(0.0);
                    assert!(
                        (recovered - component.weight()).abs() <= 1e-5,
                        "case {case} n={n}: planted weight {} recovered as {}",
                        component.weight(),
                        recovered
                    );
                }
            }
        }
    }
}

/// The induced classical table of a generated state is the mixture of
/// powers of the single-system coordinate vectors.
#[test]
fn induced_distribution_matches_the_mixture_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, space) in common::builtin_spaces() {
        let frame = build_frame(&space).unwrap();
        let mixture = random_vertex_mixture(&space, &mut rng);
        for n in 2..=3usize {
            let js = generate_exchangeable(&mixture, n).unwrap();
            let dist = induced_classical(&frame, &js).unwrap();
            // Independent expectation: weighted outer powers of the
            // per-component coordinates.
            let d = frame.dimension();
            let mut expected = vec![0.0; d.pow(n as u32)];
            for component in mixture.components() {
                let coords = frame.state_coordinates(component.state()).unwrap();
                let mut power = vec![1.0];
                for _ in 0..n {
                    let mut next = Vec::with_capacity(power.len() * d);
                    for &p in &power {
                        for &c in &coords {
                            next.push(p * c);
                        }
                    }
                    power = next;
                }
                for (e, p) in expected.iter_mut().zip(&power) {
                    *e += component.weight() * p;
                }
            }
            let gap = dist
                .table()
                .iter()
                .zip(&expected)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            assert!(gap <= 1e-9, "{name} n={n}: induced table gap {gap:.3e}");
        }
    }
}

/// On a target outside the candidate hull the solver must do at least as
/// well as an exhaustive grid over the weight simplex.
#[test]
fn recovery_is_at_least_as_good_as_a_grid_search() {
    let js = testspace::composite::pr_box().unwrap();
    let recovery = recover_mixture(&js, &RecoverOptions::default()).unwrap();
    assert!(
        recovery.residual > 1e-3,
        "the box should not be a mixture of deterministic strategies"
    );
    let space = TestSpace::process(2, 2).unwrap();
    let vertices = StatePolytope::analyze(&space).unwrap().vertices().unwrap();
    let columns: Vec<Vec<f64>> = vertices
        .iter()
        .map(|v| {
            let mut power = Vec::with_capacity(16);
            for a in v.probs() {
                for b in v.probs() {
                    power.push(a * b);
                }
            }
            power
        })
        .collect();
    let oracle = common::oracle_grid_residual(&columns, js.tensor(), 6);
    assert!(
        recovery.residual <= oracle + 1e-9,
        "solver residual {:.6} worse than grid {:.6}",
        recovery.residual,
        oracle
    );
}

#[test]
fn posterior_updates_are_batch_sequential_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (_, space) in common::builtin_spaces() {
        let polytope = StatePolytope::analyze(&space).unwrap();
        let states = polytope.sample_states(3, rng.gen()).unwrap();
        let prior = Mixture::new(states.into_iter().map(|s| (1.0 / 3.0, s)).collect()).unwrap();
        // A record of observations across the space's tests.
        let mut record = Vec::new();
        for _ in 0..4 {
            let test = rng.gen_range(0..space.test_count());
            let members = &space.tests()[test];
            let outcome = members[rng.gen_range(0..members.len())];
            record.push(Observation { test, outcome });
        }
        let batch = posterior_update(&prior, &record).unwrap();
        let mut sequential = prior.clone();
        for obs in &record {
            sequential = posterior_update(&sequential, &[*obs]).unwrap();
        }
        assert_eq!(batch.components().len(), sequential.components().len());
        for (a, b) in batch.components().iter().zip(sequential.components()) {
            assert!(a.state().approx_eq(b.state(), 1e-12));
            assert!((a.weight() - b.weight()).abs() <= 1e-12);
        }
    }
}

/// Observing one run of a two-run exchangeable state: conditioning the
/// joint state directly must agree with updating the mixture and
/// averaging (the two routes to the same predictive state).
#[test]
fn posterior_predictive_agrees_with_joint_conditioning() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let pool = [
        TestSpace::classical(2).unwrap(),
        TestSpace::classical(4).unwrap(),
        TestSpace::process(2, 2).unwrap(),
        TestSpace::overlapping_example(),
    ];
    for case in 0..20 {
        let space = &pool[case % pool.len()];
        let polytope = StatePolytope::analyze(space).unwrap();
        let states = polytope.sample_states(2, rng.gen()).unwrap();
        let raw: Vec<f64> = (0..2).map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let mixture = Mixture::new(
            raw.iter()
                .zip(states)
                .map(|(w, s)| (w / total, s))
                .collect(),
        )
        .unwrap();
        let js = generate_exchangeable(&mixture, 2).unwrap();
        let test = rng.gen_range(0..space.test_count());
        let members = &space.tests()[test];
        let outcome = members[rng.gen_range(0..members.len())];
        let average = mixture.average_state().unwrap();
        if average.probability(outcome) <= 1e-6 {
            continue; // conditioning undefined on impossible outcomes
        }
        let conditioned = conditional(&js, outcome).unwrap();
        let predictive = posterior_update(&mixture, &[Observation { test, outcome }])
            .unwrap()
            .average_state()
            .unwrap();
        assert!(
            conditioned.approx_eq(&predictive, 1e-10),
            "case {case}: conditioning and posterior predictive disagree"
        );
    }
}

/// Genuine mixtures can never push the never-occurs certificate above
/// one; the canonical pseudo-state example does.
#[test]
fn certificate_separates_states_from_pseudo_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, space) in common::builtin_spaces() {
        let polytope = StatePolytope::analyze(&space).unwrap();
        let states = polytope.sample_states(3, rng.gen()).unwrap();
        let components: Vec<_> = states
            .iter()
            .map(|s| {
                (
                    1.0 / states.len() as f64,
                    polytope.span_vector(s.probs().to_vec()).unwrap(),
                )
            })
            .collect();
        for (t, test) in space.tests().iter().enumerate() {
            for &outcome in test {
                for n in [2usize, 6, 12] {
                    let cert = certify_support(&components, t, outcome, n).unwrap();
                    assert!(
                        cert.value <= 1.0 + 1e-9,
                        "{name}: genuine mixture certified {:.6} > 1",
                        cert.value
                    );
                }
            }
        }
    }
    // The pinned pseudo-state example crosses one at n = 12.
    let space = TestSpace::classical(2).unwrap();
    let polytope = StatePolytope::analyze(&space).unwrap();
    let pseudo = polytope.span_vector(vec![-0.25, 1.25]).unwrap();
    let genuine = polytope.span_vector(vec![0.5, 0.5]).unwrap();
    let mixed = vec![(0.1, pseudo), (0.9, genuine)];
    let cert = certify_support(&mixed, 0, 0, 12).unwrap();
    assert!(cert.value > 1.0);
    assert!(cert.components[0].state_check.violation.is_some());
}
