//! Exchangeable sequences and mixture recovery.
//!
//! An exchangeable sequence of joint states describes many runs of the
//! same uncharacterized preparation: each prefix is symmetric under
//! permuting the runs, nonsignalling between them, and consistent under
//! dropping a run. For test spaces this is precisely the situation where
//! a mixture explanation exists: the prefix behaves like an unknown
//! single-system state drawn once from a distribution and then repeated
//! independently.
//!
//! This module provides both directions plus the boundary:
//!
//! - [`generate_exchangeable`] builds the `n`-run joint state of a known
//!   [`Mixture`], the weighted sum of product powers.
//! - [`recover_mixture`] inverts that: given a symmetric joint state it
//!   finds, by simplex-constrained least squares over a candidate support
//!   of states, the mixture whose product powers reproduce the tensor.
//! - [`certify_support`] is the boundary test. Any genuine mixture keeps
//!   the probability of "outcome `e` never occurs in `n` runs of test
//!   `s`" at most one; a claimed mixture over *pseudo-states* (span
//!   elements with a negative probability somewhere) can push the same
//!   formula above one for even `n`, certifying that no probabilistic
//!   reading of the weights exists.
//! - [`posterior_update`] conditions a mixture on observed outcomes,
//!   reweighting components by their likelihoods: learning about the
//!   unknown preparation from data.
//!
//! Recovered weights are meaningful only when the fit is identifiable;
//! [`Recovery::unique`] reports whether the candidate product powers were
//! linearly independent, in which case the optimal weights are unique.

use alloc::vec;
use alloc::vec::Vec;

use crate::composite::{self, check_nonsignalling, is_symmetric, JointState, ProductSpace};
use crate::error::{Error, Result};
use crate::index;
use crate::limits;
use crate::linalg;
use crate::space::TestSpace;
use crate::statespace::{SpanVector, State, StateCheck, StatePolytope};
use crate::tol;

/// One weighted component of a mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureComponent {
    weight: f64,
    state: State,
}

impl MixtureComponent {
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn state(&self) -> &State {
        &self.state
    }
}

/// A finitely supported probability distribution over states of one test
/// space: strictly positive weights summing to one.
///
/// Construction merges components whose states agree within
/// [`tol::EQUALITY`], so a mixture never lists the same state twice.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture {
    space: TestSpace,
    components: Vec<MixtureComponent>,
}

impl Mixture {
    pub fn new(components: Vec<(f64, State)>) -> Result<Mixture> {
        if components.is_empty() {
            return Err(Error::EmptyMixture);
        }
        let space = components[0].1.space().clone();
        for (i, (weight, state)) in components.iter().enumerate() {
            if state.space() != &space {
                return Err(Error::SpaceMismatch {
                    context: "mixture components",
                });
            }
            if *weight <= 0.0 || !weight.is_finite() {
                return Err(Error::WeightNotPositive {
                    index: i,
                    weight: *weight,
                });
            }
        }
        let sum: f64 = components.iter().map(|(w, _)| w).sum();
        if (sum - 1.0).abs() > tol::EQUALITY {
            return Err(Error::WeightsNotNormalized { sum });
        }
        let mut merged: Vec<MixtureComponent> = Vec::new();
        for (weight, state) in components {
            match merged
                .iter_mut()
                .find(|c| c.state.approx_eq(&state, tol::EQUALITY))
            {
                Some(existing) => existing.weight += weight,
                None => merged.push(MixtureComponent { weight, state }),
            }
        }
        Ok(Mixture {
            space,
            components: merged,
        })
    }

    /// The mixture concentrated on a single state.
    pub fn delta(state: State) -> Mixture {
        Mixture {
            space: state.space().clone(),
            components: vec![MixtureComponent { weight: 1.0, state }],
        }
    }

    pub fn space(&self) -> &TestSpace {
        &self.space
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    /// The barycenter: the single state the mixture averages to.
    pub fn average_state(&self) -> Result<State> {
        let m = self.space.outcome_count();
        let mut probs = vec![0.0; m];
        for component in &self.components {
            for (p, v) in probs.iter_mut().zip(component.state.probs()) {
                *p += component.weight * v;
            }
        }
        State::new(self.space.clone(), probs)
    }
}

/// A joint probability table over `copies` draws from `symbols` outcomes,
/// row-major with the first draw slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalDist {
    symbols: usize,
    copies: usize,
    table: Vec<f64>,
}

impl ClassicalDist {
    pub fn new(symbols: usize, copies: usize, table: Vec<f64>) -> Result<ClassicalDist> {
        if symbols == 0 {
            return Err(Error::InvalidCount {
                what: "symbol count",
                got: 0,
                min: 1,
            });
        }
        if copies == 0 {
            return Err(Error::InvalidCount {
                what: "copy count",
                got: 0,
                min: 1,
            });
        }
        let expected = symbols.checked_pow(copies as u32).unwrap_or(usize::MAX);
        if table.len() != expected {
            return Err(Error::TensorShapeMismatch {
                expected,
                got: table.len(),
            });
        }
        let mut table = table;
        for (i, v) in table.iter_mut().enumerate() {
            if *v < -tol::EQUALITY || !v.is_finite() {
                return Err(Error::NegativeProbability {
                    index: i,
                    value: *v,
                });
            }
            *v = v.max(0.0);
        }
        let sum: f64 = table.iter().sum();
        if (sum - 1.0).abs() > tol::EQUALITY {
            return Err(Error::DistributionNotNormalized { sum });
        }
        Ok(ClassicalDist {
            symbols,
            copies,
            table,
        })
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn entry(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.copies);
        let dims = vec![self.symbols; self.copies];
        let strides = index::strides(&dims);
        self.table[index::flat(idx, &strides)]
    }
}

/// The first `levels` of a sequence of joint states on powers of one
/// space: entry `k` is the joint state of the first `k + 1` runs.
#[derive(Debug, Clone)]
pub struct SequencePrefix {
    space: TestSpace,
    levels: Vec<JointState>,
}

impl SequencePrefix {
    pub fn new(levels: Vec<JointState>) -> Result<SequencePrefix> {
        if levels.is_empty() {
            return Err(Error::InvalidCount {
                what: "prefix level count",
                got: 0,
                min: 1,
            });
        }
        for (k, level) in levels.iter().enumerate() {
            if !level.product().is_homogeneous() {
                return Err(Error::HeterogeneousFactors);
            }
            if level.system_count() != k + 1 {
                return Err(Error::FactorCountMismatch {
                    expected: k + 1,
                    got: level.system_count(),
                });
            }
        }
        let space = levels[0].product().factors()[0].clone();
        if levels.iter().any(|l| l.product().factors()[0] != space) {
            return Err(Error::SpaceMismatch {
                context: "sequence prefix levels",
            });
        }
        Ok(SequencePrefix { space, levels })
    }

    pub fn space(&self) -> &TestSpace {
        &self.space
    }

    pub fn levels(&self) -> &[JointState] {
        &self.levels
    }

    /// Number of runs covered by the deepest level.
    pub fn max_copies(&self) -> usize {
        self.levels.len()
    }
}

/// The three defining clauses of exchangeability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// Invariance under permuting the runs.
    Symmetry,
    /// No run's test choice moves the statistics of the others.
    Nonsignalling,
    /// Dropping the last run of level `k + 1` reproduces level `k`.
    MarginalConsistency,
}

impl core::fmt::Display for Clause {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Clause::Symmetry => write!(f, "symmetry"),
            Clause::Nonsignalling => write!(f, "nonsignalling"),
            Clause::MarginalConsistency => write!(f, "marginal consistency"),
        }
    }
}

/// One clause evaluated at one prefix level.
#[derive(Debug, Clone, PartialEq)]
pub struct ClauseCheck {
    /// Number of runs in the level the clause was evaluated on.
    pub copies: usize,
    pub clause: Clause,
    pub deviation: f64,
    pub pass: bool,
}

/// Clause-by-clause exchangeability report for a sequence prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct ExchangeabilityReport {
    pub tol: f64,
    pub checks: Vec<ClauseCheck>,
}

impl ExchangeabilityReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| m.max(c.deviation))
    }

    /// The failing check with the largest deviation, if any fail.
    pub fn worst_failure(&self) -> Option<&ClauseCheck> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .max_by(|a, b| a.deviation.partial_cmp(&b.deviation).expect("finite"))
    }
}

/// Evaluates the exchangeability clauses on every level of a prefix.
///
/// Symmetry and nonsignalling are checked on each level; marginal
/// consistency compares each level against its successor with the last
/// run summed over its first test (by the nonsignalling clause, any other
/// test gives the same sum up to the reported deviations).
pub fn check_exchangeable(prefix: &SequencePrefix, tol: f64) -> ExchangeabilityReport {
    let mut checks = Vec::new();
    for (k, level) in prefix.levels().iter().enumerate() {
        let copies = k + 1;
        let symmetry =
            is_symmetric(level, tol).expect("prefix levels are homogeneous by construction");
        checks.push(ClauseCheck {
            copies,
            clause: Clause::Symmetry,
            deviation: symmetry.deviation,
            pass: symmetry.deviation <= tol,
        });
        let ns = check_nonsignalling(level).max_deviation();
        checks.push(ClauseCheck {
            copies,
            clause: Clause::Nonsignalling,
            deviation: ns,
            pass: ns <= tol,
        });
        if k + 1 < prefix.levels().len() {
            let next = &prefix.levels()[k + 1];
            let dropped = composite::sum_out_test(next, k + 1, 0);
            let gap = dropped
                .iter()
                .zip(level.tensor())
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            checks.push(ClauseCheck {
                copies,
                clause: Clause::MarginalConsistency,
                deviation: gap,
                pass: gap <= tol,
            });
        }
    }
    ExchangeabilityReport { tol, checks }
}

/// The `n`-run joint state of a mixture: component states raised to the
/// `n`-th product power and averaged with the mixture weights. Every
/// prefix of the family is exchangeable by construction.
pub fn generate_exchangeable(mixture: &Mixture, n: usize) -> Result<JointState> {
    if n == 0 {
        return Err(Error::InvalidCount {
            what: "run count",
            got: 0,
            min: 1,
        });
    }
    let product = ProductSpace::power(mixture.space(), n)?;
    let total = product.entry_count()?;
    let mut tensor = vec![0.0; total];
    for component in mixture.components() {
        let power = power_tensor(component.state().probs(), n);
        for (t, p) in tensor.iter_mut().zip(&power) {
            *t += component.weight() * p;
        }
    }
    JointState::new(product, tensor)
}

/// Dense `n`-fold tensor power of a probability vector, row-major.
fn power_tensor(probs: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![1.0];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * probs.len());
        for &prefix in &out {
            for &p in probs {
                next.push(prefix * p);
            }
        }
        out = next;
    }
    out
}

/// The classical joint distribution a frame induces on a nonsignalling
/// joint state: apply one frame member per run. Lossless: the joint state
/// is recoverable from the table by [`composite::tensor_reconstruct`].
pub fn induced_classical(
    frame: &crate::statespace::Frame,
    js: &JointState,
) -> Result<ClassicalDist> {
    let coords = composite::tensor_coordinates(frame, js)?;
    ClassicalDist::new(frame.dimension(), js.system_count(), coords)
}

/// Candidate support and solver knobs for [`recover_mixture`].
#[derive(Debug, Clone)]
pub struct RecoverOptions {
    /// Include the polytope vertices in the candidate support.
    pub include_vertices: bool,
    /// Extra candidate states, tried after the vertices.
    pub extra_support: Vec<State>,
    /// Number of deterministic relative-interior samples to append.
    pub random_support: usize,
    /// Seed for the interior samples.
    pub seed: u64,
}

impl Default for RecoverOptions {
    fn default() -> Self {
        RecoverOptions {
            include_vertices: true,
            extra_support: Vec::new(),
            random_support: 0,
            seed: 42,
        }
    }
}

/// Result of a mixture recovery.
#[derive(Debug, Clone)]
pub struct Recovery {
    /// The recovered mixture, weights pruned below [`tol::WEIGHT_PRUNE`].
    pub mixture: Mixture,
    /// Euclidean norm of the tensor residual at the optimum.
    pub residual: f64,
    /// Whether the candidate product powers were linearly independent, in
    /// which case the optimal weights are unique and identifiable.
    pub unique: bool,
    /// Projected-gradient plus polish iterations spent.
    pub iterations: usize,
}

/// Recovers a mixture whose `n`-fold product powers reproduce a symmetric
/// joint state: minimizes the Euclidean distance between the weighted
/// power tensors and the target over the probability simplex of weights.
///
/// The candidate support is the polytope vertex set, optionally extended;
/// when the target truly is a mixture over the candidates the residual
/// reaches the numerical floor, and [`Recovery::unique`] reports whether
/// the weights mean anything on their own.
pub fn recover_mixture(js: &JointState, options: &RecoverOptions) -> Result<Recovery> {
    if !js.product().is_homogeneous() {
        return Err(Error::HeterogeneousFactors);
    }
    let space = js.product().factors()[0].clone();
    let n = js.system_count();
    let symmetry = is_symmetric(js, tol::EQUALITY)?;
    if !symmetry.symmetric {
        return Err(Error::NotSymmetric {
            deviation: symmetry.deviation,
        });
    }

    let mut candidates: Vec<State> = Vec::new();
    let polytope = StatePolytope::analyze(&space)?;
    if options.include_vertices {
        candidates.extend(polytope.vertices()?);
    }
    for state in &options.extra_support {
        if state.space() != &space {
            return Err(Error::SpaceMismatch {
                context: "recovery support",
            });
        }
        candidates.push(state.clone());
    }
    if options.random_support > 0 {
        candidates.extend(polytope.sample_states(options.random_support, options.seed)?);
    }
    let mut support: Vec<State> = Vec::new();
    for candidate in candidates {
        if !support
            .iter()
            .any(|s| s.approx_eq(&candidate, tol::EQUALITY))
        {
            support.push(candidate);
        }
    }
    if support.is_empty() {
        return Err(Error::InvalidCount {
            what: "candidate support size",
            got: 0,
            min: 1,
        });
    }

    let entries = js.tensor().len();
    let k = support.len();
    if k.saturating_mul(entries) > limits::MAX_TENSOR_ENTRIES {
        return Err(Error::SizeLimitExceeded {
            what: "recovery design matrix",
            required: k.saturating_mul(entries),
            limit: limits::MAX_TENSOR_ENTRIES,
        });
    }
    let columns: Vec<Vec<f64>> = support.iter().map(|s| power_tensor(s.probs(), n)).collect();

    // Normal-equation data: Gram matrix and linear term.
    let gram: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| linalg::dot(&columns[i], &columns[j]))
                .collect()
        })
        .collect();
    let lin: Vec<f64> = columns
        .iter()
        .map(|c| linalg::dot(c, js.tensor()))
        .collect();

    let eigenvalues = linalg::symmetric_eigenvalues(&gram);
    let largest = eigenvalues.last().copied().unwrap_or(0.0).max(1e-300);
    let unique = eigenvalues[0] > 1e-10 * largest.max(1.0);

    let solved = simplex_least_squares(&gram, &lin, largest);

    // Honest residual, straight from the columns.
    let mut fitted = vec![0.0; entries];
    for (w, column) in solved.weights.iter().zip(&columns) {
        if *w != 0.0 {
            for (f, c) in fitted.iter_mut().zip(column) {
                *f += w * c;
            }
        }
    }
    let residual = libm::sqrt(
        fitted
            .iter()
            .zip(js.tensor())
            .map(|(f, y)| (f - y) * (f - y))
            .sum::<f64>(),
    );

    let mut kept: Vec<(f64, State)> = solved
        .weights
        .iter()
        .zip(&support)
        .filter(|(&w, _)| w > tol::WEIGHT_PRUNE)
        .map(|(&w, s)| (w, s.clone()))
        .collect();
    let total: f64 = kept.iter().map(|(w, _)| w).sum();
    if kept.is_empty() || total <= 0.0 {
        return Err(Error::EmptyMixture);
    }
    for (w, _) in kept.iter_mut() {
        *w /= total;
    }
    let mixture = Mixture::new(kept)?;
    Ok(Recovery {
        mixture,
        residual,
        unique,
        iterations: solved.iterations,
    })
}

struct LsqSolution {
    weights: Vec<f64>,
    iterations: usize,
}

/// Minimizes `w' G w / 2 - h . w` over the probability simplex:
/// projected gradient to get near the optimum, then an active-set polish
/// that solves the equality-constrained problem on the positive support
/// exactly and verifies the optimality conditions.
fn simplex_least_squares(gram: &[Vec<f64>], lin: &[f64], largest_eigenvalue: f64) -> LsqSolution {
    let k = lin.len();
    if k == 1 {
        return LsqSolution {
            weights: vec![1.0],
            iterations: 0,
        };
    }
    let step = 1.0 / largest_eigenvalue.max(1e-300) * 0.99;
    let mut w = vec![1.0 / k as f64; k];
    let mut iterations = 0usize;
    for _ in 0..50_000 {
        iterations += 1;
        let grad: Vec<f64> = (0..k).map(|i| linalg::dot(&gram[i], &w) - lin[i]).collect();
        let proposal: Vec<f64> = w.iter().zip(&grad).map(|(wi, gi)| wi - step * gi).collect();
        let next = project_to_simplex(&proposal);
        let moved = next
            .iter()
            .zip(&w)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        w = next;
        if moved <= 1e-15 {
            break;
        }
    }

    // Active-set polish: exact KKT solve on the support face.
    let mut active: Vec<usize> = (0..k).filter(|&i| w[i] > 1e-12).collect();
    if active.is_empty() {
        active = (0..k).collect();
    }
    for _ in 0..200 {
        iterations += 1;
        let s = active.len();
        // Bordered system: gradient equal on the support, weights sum 1.
        let mut system: Vec<Vec<f64>> = Vec::with_capacity(s + 1);
        for &i in &active {
            let mut row: Vec<f64> = active.iter().map(|&j| gram[i][j]).collect();
            row.push(-1.0);
            system.push(row);
        }
        let mut last = vec![1.0; s];
        last.push(0.0);
        system.push(last);
        let mut rhs: Vec<f64> = active.iter().map(|&i| lin[i]).collect();
        rhs.push(1.0);
        let Some(solution) = linalg::solve(&system, &rhs) else {
            break;
        };
        let face_weights = &solution[..s];
        let multiplier = solution[s];
        if let Some((slot, _)) = face_weights
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < -1e-12)
            .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite"))
        {
            active.remove(slot);
            if active.is_empty() {
                break;
            }
            continue;
        }
        let mut candidate = vec![0.0; k];
        for (&i, &v) in active.iter().zip(face_weights) {
            candidate[i] = v.max(0.0);
        }
        // Optimality: no inactive index offers a lower gradient than the
        // common support gradient value (the multiplier).
        let grad: Vec<f64> = (0..k)
            .map(|i| linalg::dot(&gram[i], &candidate) - lin[i])
            .collect();
        let scale = grad.iter().fold(1.0f64, |m, g| m.max(g.abs()));
        let violator = (0..k)
            .filter(|i| !active.contains(i))
            .filter(|&i| grad[i] < multiplier - 1e-11 * scale)
            .min_by(|&a, &b| grad[a].partial_cmp(&grad[b]).expect("finite"));
        match violator {
            Some(i) => {
                active.push(i);
                active.sort_unstable();
            }
            None => {
                w = candidate;
                break;
            }
        }
    }
    LsqSolution {
        weights: w,
        iterations,
    }
}

/// Euclidean projection onto the probability simplex.
fn project_to_simplex(point: &[f64]) -> Vec<f64> {
    let mut sorted = point.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let mut cumulative = 0.0;
    let mut threshold = 0.0;
    for (i, &v) in sorted.iter().enumerate() {
        cumulative += v;
        let candidate = (cumulative - 1.0) / (i + 1) as f64;
        if v - candidate > 0.0 {
            threshold = candidate;
        }
    }
    point.iter().map(|&v| (v - threshold).max(0.0)).collect()
}

/// Per-component detail of a support certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentCertificate {
    pub weight: f64,
    /// Mass the component assigns to the test minus the outcome.
    pub complement_mass: f64,
    /// `weight * complement_mass^copies`.
    pub contribution: f64,
    /// Whether the component is a genuine state, with a witness if not.
    pub state_check: StateCheck,
}

/// The "outcome never occurs" certificate for a weighted family of span
/// elements.
///
/// For genuine states the certified value is the probability that
/// `outcome` fails to occur in `copies` independent runs of `test`, hence
/// at most one. A value above one is a proof that the family steps
/// outside the states: some component must assign a negative probability
/// somewhere. Even `copies` keeps every contribution nonnegative, so the
/// certificate cannot exceed one by sign cancellation.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportCertificate {
    pub test: usize,
    pub outcome: usize,
    pub copies: usize,
    /// The certified value; greater than one certifies pseudo-states.
    pub value: f64,
    pub components: Vec<ComponentCertificate>,
}

impl SupportCertificate {
    pub fn exceeds_unity(&self) -> bool {
        self.value > 1.0
    }
}

/// Evaluates the never-occurs certificate for weighted span elements at
/// an even number of runs.
pub fn certify_support(
    components: &[(f64, SpanVector)],
    test: usize,
    outcome: usize,
    copies: usize,
) -> Result<SupportCertificate> {
    if components.is_empty() {
        return Err(Error::EmptyMixture);
    }
    if copies < 2 || !copies.is_multiple_of(2) {
        return Err(Error::EvenPowerRequired { n: copies });
    }
    let space = components[0].1.space().clone();
    for (i, (weight, vector)) in components.iter().enumerate() {
        if vector.space() != &space {
            return Err(Error::SpaceMismatch {
                context: "certificate components",
            });
        }
        if *weight <= 0.0 || !weight.is_finite() {
            return Err(Error::WeightNotPositive {
                index: i,
                weight: *weight,
            });
        }
    }
    let sum: f64 = components.iter().map(|(w, _)| w).sum();
    if (sum - 1.0).abs() > tol::EQUALITY {
        return Err(Error::WeightsNotNormalized { sum });
    }
    if test >= space.test_count() {
        return Err(Error::UnknownTest {
            test,
            count: space.test_count(),
        });
    }
    let members = &space.tests()[test];
    if !members.contains(&outcome) {
        return Err(Error::OutcomeNotInTest { outcome, test });
    }
    let mut value = 0.0;
    let mut details = Vec::with_capacity(components.len());
    for (weight, vector) in components {
        let complement_mass: f64 = members
            .iter()
            .filter(|&&m| m != outcome)
            .map(|&m| vector.values()[m])
            .sum();
        let contribution = weight * libm::pow(complement_mass, copies as f64);
        value += contribution;
        details.push(ComponentCertificate {
            weight: *weight,
            complement_mass,
            contribution,
            state_check: vector.check_state(tol::EQUALITY),
        });
    }
    Ok(SupportCertificate {
        test,
        outcome,
        copies,
        value,
        components: details,
    })
}

/// One observed outcome of one test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Observation {
    pub test: usize,
    pub outcome: usize,
}

/// Bayesian update of a mixture on a record of observed outcomes:
/// component weights are multiplied by the likelihood of the record under
/// the component state and renormalized. Components driven to exactly
/// zero are dropped.
pub fn posterior_update(mixture: &Mixture, observations: &[Observation]) -> Result<Mixture> {
    let space = mixture.space();
    for obs in observations {
        if obs.test >= space.test_count() {
            return Err(Error::UnknownTest {
                test: obs.test,
                count: space.test_count(),
            });
        }
        if obs.outcome >= space.outcome_count() {
            return Err(Error::UnknownOutcome {
                outcome: obs.outcome,
                count: space.outcome_count(),
            });
        }
        if !space.tests()[obs.test].contains(&obs.outcome) {
            return Err(Error::OutcomeNotInTest {
                outcome: obs.outcome,
                test: obs.test,
            });
        }
    }
    let likelihoods: Vec<f64> = mixture
        .components()
        .iter()
        .map(|component| {
            observations
                .iter()
                .map(|obs| component.state().probability(obs.outcome))
                .product::<f64>()
        })
        .collect();
    let predictive: f64 = mixture
        .components()
        .iter()
        .zip(&likelihoods)
        .map(|(component, lik)| component.weight() * lik)
        .sum();
    if predictive <= tol::ZERO_PROBABILITY {
        return Err(Error::ZeroProbabilityObservation {
            probability: predictive,
        });
    }
    let kept: Vec<(f64, State)> = mixture
        .components()
        .iter()
        .zip(&likelihoods)
        .filter(|(_, &lik)| lik > 0.0)
        .map(|(component, &lik)| {
            (
                component.weight() * lik / predictive,
                component.state().clone(),
            )
        })
        .collect();
    Mixture::new(kept)
}
