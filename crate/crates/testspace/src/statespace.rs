//! States, the state polytope, and informationally complete frames.
//!
//! A state assigns each outcome a probability so that every test sums to
//! one. The states of a space form a polytope: the solution set of the
//! test equalities intersected with the nonnegative orthant. This module
//! computes the three views of that polytope the rest of the crate is
//! built on:
//!
//! - its *dimension* `d`, the linear dimension of the span of all states;
//! - its *vertices*, the extreme states, enumerated exactly;
//! - a *frame*, `d` linear functionals that (a) take values in `[0, 1]` on
//!   every state, (b) sum to the unit functional, and (c) are linearly
//!   independent on the span.
//!
//! Property (c) makes the frame informationally complete: the `d` numbers
//!   `a_1(w), ..., a_d(w)` determine the state `w` uniquely. Properties
//! (a) and (b) make those numbers an honest probability vector, so the
//! frame behaves like one repeatable measurement whose statistics reveal
//! the state. Frames are what let joint states be handled with classical
//! tools later: a joint state turns into a plain joint distribution over
//! frame indices and comes back losslessly.
//!
//! The construction picks `d` linearly independent outcome indicators by
//! greedy pivoting (outcome indicators always span the dual of the state
//! span), replaces the most redundant one by the unit functional minus the
//! others so the family sums to the unit, and then shifts and rescales by
//! the worst minimum over the polytope, found by linear programming, to
//! push every member into `[0, 1]`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::index::for_each_combination;
use crate::limits;
use crate::linalg;
use crate::rng::SplitMix64;
use crate::simplex::{self, LpResult};
use crate::space::TestSpace;
use crate::tol;

/// Clamps entries within `ENTRY_SLACK` of `[0, 1]` onto the interval and
/// rejects anything farther out.
pub(crate) fn clamp_unit_entries(values: &mut [f64]) -> Result<()> {
    for (i, v) in values.iter_mut().enumerate() {
        if *v < -tol::ENTRY_SLACK || *v > 1.0 + tol::ENTRY_SLACK || !v.is_finite() {
            return Err(Error::EntryOutOfRange {
                index: i,
                value: *v,
            });
        }
        *v = v.clamp(0.0, 1.0);
    }
    Ok(())
}

/// A probability assignment on a test space: one probability per outcome,
/// each test summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    space: TestSpace,
    probs: Vec<f64>,
}

impl State {
    /// Validates and clamps `probs` into a state of `space`.
    pub fn new(space: TestSpace, probs: Vec<f64>) -> Result<State> {
        space.ensure_valid()?;
        if probs.len() != space.outcome_count() {
            return Err(Error::TensorShapeMismatch {
                expected: space.outcome_count(),
                got: probs.len(),
            });
        }
        let mut probs = probs;
        clamp_unit_entries(&mut probs)?;
        for (t, test) in space.tests().iter().enumerate() {
            let sum: f64 = test.iter().map(|&m| probs[m]).sum();
            if (sum - 1.0).abs() > tol::EQUALITY {
                return Err(Error::TestNotNormalized { test: t, sum });
            }
        }
        Ok(State { space, probs })
    }

    /// The deterministic state putting all mass on `outcome`, when that
    /// assignment is actually a state of the space.
    pub fn point_mass(space: TestSpace, outcome: usize) -> Result<State> {
        if outcome >= space.outcome_count() {
            return Err(Error::UnknownOutcome {
                outcome,
                count: space.outcome_count(),
            });
        }
        let mut probs = vec![0.0; space.outcome_count()];
        probs[outcome] = 1.0;
        State::new(space, probs)
    }

    pub fn space(&self) -> &TestSpace {
        &self.space
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn probability(&self, outcome: usize) -> f64 {
        self.probs[outcome]
    }

    /// True when both states live on the same space and agree entrywise
    /// within `tol`.
    pub fn approx_eq(&self, other: &State, tol: f64) -> bool {
        self.space == other.space
            && self
                .probs
                .iter()
                .zip(&other.probs)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// The first constraint a candidate state breaks.
#[derive(Debug, Clone, PartialEq)]
pub enum StateViolation {
    /// Entry `outcome` is negative beyond tolerance.
    Negative { outcome: usize, value: f64 },
    /// Test `test` sums to `sum` instead of one.
    TestSum { test: usize, sum: f64 },
}

impl core::fmt::Display for StateViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            StateViolation::Negative { outcome, value } => {
                write!(f, "outcome {outcome} has negative value {value:.6e}")
            }
            StateViolation::TestSum { test, sum } => {
                write!(f, "test {test} sums to {sum:.12} instead of 1")
            }
        }
    }
}

/// Outcome of a state membership check, with a witness on failure.
#[derive(Debug, Clone, PartialEq)]
pub struct StateCheck {
    pub ok: bool,
    pub violation: Option<StateViolation>,
}

fn check_state_values(space: &TestSpace, values: &[f64], tol: f64) -> StateCheck {
    for (i, &v) in values.iter().enumerate() {
        if v < -tol {
            return StateCheck {
                ok: false,
                violation: Some(StateViolation::Negative {
                    outcome: i,
                    value: v,
                }),
            };
        }
    }
    for (t, test) in space.tests().iter().enumerate() {
        let sum: f64 = test.iter().map(|&m| values[m]).sum();
        if (sum - 1.0).abs() > tol {
            return StateCheck {
                ok: false,
                violation: Some(StateViolation::TestSum { test: t, sum }),
            };
        }
    }
    StateCheck {
        ok: true,
        violation: None,
    }
}

/// Checks whether `values` is a state of `space` within `tol`, returning
/// the first violated constraint otherwise.
pub fn is_state(space: &TestSpace, values: &[f64], tol: f64) -> Result<StateCheck> {
    space.ensure_valid()?;
    if values.len() != space.outcome_count() {
        return Err(Error::TensorShapeMismatch {
            expected: space.outcome_count(),
            got: values.len(),
        });
    }
    Ok(check_state_values(space, values, tol))
}

/// The linear description of the state polytope: one equality row per
/// test (dotted with a state it gives one) plus nonnegativity of every
/// outcome coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeConstraints {
    outcome_count: usize,
    rows: Vec<Vec<f64>>,
}

impl PolytopeConstraints {
    pub fn outcome_count(&self) -> usize {
        self.outcome_count
    }

    /// Indicator row per test; `row . x = 1` for every state `x`.
    pub fn equality_rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Number of nonnegativity constraints (one per outcome).
    pub fn nonnegativity_count(&self) -> usize {
        self.outcome_count
    }
}

/// Builds the polytope description of a valid space.
pub fn polytope_constraints(space: &TestSpace) -> Result<PolytopeConstraints> {
    space.ensure_valid()?;
    Ok(PolytopeConstraints {
        outcome_count: space.outcome_count(),
        rows: test_rows(space),
    })
}

fn test_rows(space: &TestSpace) -> Vec<Vec<f64>> {
    space
        .tests()
        .iter()
        .map(|test| {
            let mut row = vec![0.0; space.outcome_count()];
            for &m in test {
                row[m] = 1.0;
            }
            row
        })
        .collect()
}

/// An element of the linear span of the states, not necessarily a state
/// itself. Produced by [`StatePolytope::span_vector`] and
/// [`Frame::vector_from_coordinates`], which both guarantee membership in
/// the span.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanVector {
    space: TestSpace,
    values: Vec<f64>,
}

impl SpanVector {
    pub fn space(&self) -> &TestSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Whether this vector is an actual state, with a witness otherwise.
    pub fn check_state(&self, tol: f64) -> StateCheck {
        check_state_values(&self.space, &self.values, tol)
    }

    /// Converts to a [`State`], failing on any violated constraint.
    pub fn to_state(&self) -> Result<State> {
        State::new(self.space.clone(), self.values.clone())
    }
}

/// The analyzed state polytope of one test space.
///
/// Holds the facts every downstream computation reuses: an independent
/// subset of the test equalities, the polytope dimension, an orthonormal
/// basis of the span of states, the implicitly zero outcomes (those with
/// probability zero in every state), and one relative-interior point.
#[derive(Debug, Clone)]
pub struct StatePolytope {
    space: TestSpace,
    rows: Vec<Vec<f64>>,
    dim: usize,
    basis: Vec<Vec<f64>>,
    implicit_zero: Vec<bool>,
    interior: Vec<f64>,
}

const ROW_TOL: f64 = 1e-10;

impl StatePolytope {
    /// Analyzes the state polytope of `space`.
    ///
    /// One linear program per outcome finds the outcome's maximum
    /// probability over the polytope. The first program doubles as the
    /// feasibility check, maxima at zero reveal the implicitly zero
    /// outcomes, and averaging the maximizers gives a relative-interior
    /// point, positive on every outcome that can be positive at all.
    pub fn analyze(space: &TestSpace) -> Result<StatePolytope> {
        space.ensure_valid()?;
        let m = space.outcome_count();
        let all_rows = test_rows(space);
        let keep = linalg::independent_rows(&all_rows, ROW_TOL);
        // Dropping dependent test rows is only sound when their implied
        // right-hand sides are consistent; an augmented-rank jump means
        // the equalities alone are contradictory.
        let augmented: Vec<Vec<f64>> = all_rows
            .iter()
            .map(|r| {
                let mut row = r.clone();
                row.push(1.0);
                row
            })
            .collect();
        if linalg::rank(&augmented, ROW_TOL) != keep.len() {
            return Err(Error::EmptyStateSpace);
        }
        let rows: Vec<Vec<f64>> = keep.iter().map(|&i| all_rows[i].clone()).collect();
        let ones = vec![1.0; rows.len()];

        let mut maxima = Vec::with_capacity(m);
        let mut interior = vec![0.0; m];
        for i in 0..m {
            let mut cost = vec![0.0; m];
            cost[i] = -1.0;
            match simplex::minimize(&rows, &ones, &cost) {
                LpResult::Optimal { x, objective } => {
                    maxima.push(-objective);
                    for (acc, xi) in interior.iter_mut().zip(&x) {
                        *acc += xi / m as f64;
                    }
                }
                LpResult::Infeasible => return Err(Error::EmptyStateSpace),
                _ => {
                    return Err(Error::SingularSystem {
                        context: "state polytope scan",
                    })
                }
            }
        }

        let implicit_zero: Vec<bool> = maxima.iter().map(|&v| v <= tol::EQUALITY).collect();
        // Extend the test rows with an indicator row per implicitly zero
        // outcome; the affine hull of the polytope is cut out by exactly
        // these equalities, so the span of states is the span of one
        // interior point plus the null space of the extended system.
        let mut extended = rows.clone();
        for (i, &zero) in implicit_zero.iter().enumerate() {
            if zero {
                let mut row = vec![0.0; m];
                row[i] = 1.0;
                extended.push(row);
            }
        }
        let null = linalg::nullspace(&extended, m, ROW_TOL);
        let mut generators = Vec::with_capacity(1 + null.len());
        generators.push(interior.clone());
        generators.extend(null.iter().cloned());
        let basis = linalg::orthonormalize(&generators, ROW_TOL);
        if basis.len() != 1 + null.len() {
            return Err(Error::SingularSystem {
                context: "state span basis",
            });
        }
        let dim = basis.len();
        Ok(StatePolytope {
            space: space.clone(),
            rows,
            dim,
            basis,
            implicit_zero,
            interior,
        })
    }

    pub fn space(&self) -> &TestSpace {
        &self.space
    }

    /// Linear dimension of the span of all states.
    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Orthonormal basis of the span of states, `dimension()` vectors.
    pub fn span_basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Outcomes that carry probability zero in every state.
    pub fn implicit_zeros(&self) -> Vec<usize> {
        self.implicit_zero
            .iter()
            .enumerate()
            .filter(|(_, &z)| z)
            .map(|(i, _)| i)
            .collect()
    }

    /// A relative-interior state: positive on every outcome that is
    /// positive in some state.
    pub fn interior_state(&self) -> Result<State> {
        State::new(self.space.clone(), self.interior.clone())
    }

    /// Wraps `values` as a span element after checking membership in the
    /// span of states within [`tol::EQUALITY`].
    pub fn span_vector(&self, values: Vec<f64>) -> Result<SpanVector> {
        if values.len() != self.space.outcome_count() {
            return Err(Error::TensorShapeMismatch {
                expected: self.space.outcome_count(),
                got: values.len(),
            });
        }
        let mut residual = values.clone();
        for b in &self.basis {
            let coeff = linalg::dot(&residual, b);
            for (r, bi) in residual.iter_mut().zip(b) {
                *r -= coeff * bi;
            }
        }
        let scale = linalg::max_abs(&values).max(1.0);
        let off = linalg::max_abs(&residual);
        if off > tol::EQUALITY * scale {
            return Err(Error::NotInSpan { residual: off });
        }
        Ok(SpanVector {
            space: self.space.clone(),
            values,
        })
    }

    /// Checks a raw value vector for state membership within `tol`.
    pub fn check_state(&self, values: &[f64], tol: f64) -> Result<StateCheck> {
        is_state(&self.space, values, tol)
    }

    /// Enumerates the vertices (extreme states) of the polytope exactly,
    /// sorted lexicographically by coordinates.
    ///
    /// Every vertex is a basic feasible solution: pick as many outcome
    /// columns as there are independent test rows, solve the square
    /// system, keep nonnegative solutions that satisfy every original
    /// test. Guarded by [`limits::MAX_VERTEX_OUTCOMES`] because the subset
    /// count grows binomially.
    pub fn vertices(&self) -> Result<Vec<State>> {
        let m = self.space.outcome_count();
        if m > limits::MAX_VERTEX_OUTCOMES {
            return Err(Error::SizeLimitExceeded {
                what: "vertex enumeration",
                required: m,
                limit: limits::MAX_VERTEX_OUTCOMES,
            });
        }
        let r = self.rows.len();
        let ones = vec![1.0; r];
        let mut candidates: Vec<Vec<f64>> = Vec::new();
        for_each_combination(m, r, |cols| {
            let square: Vec<Vec<f64>> = self
                .rows
                .iter()
                .map(|row| cols.iter().map(|&c| row[c]).collect())
                .collect();
            if let Some(solution) = linalg::solve(&square, &ones) {
                if solution.iter().all(|&v| v >= -tol::EQUALITY) {
                    let mut full = vec![0.0; m];
                    for (&c, &v) in cols.iter().zip(&solution) {
                        full[c] = v.max(0.0);
                    }
                    let all_tests_ok = self.space.tests().iter().all(|test| {
                        let sum: f64 = test.iter().map(|&o| full[o]).sum();
                        (sum - 1.0).abs() <= tol::EQUALITY
                    });
                    if all_tests_ok {
                        candidates.push(full);
                    }
                }
            }
            true
        });
        candidates.sort_by(|a, b| a.partial_cmp(b).expect("vertex coordinates are finite"));
        let mut kept: Vec<Vec<f64>> = Vec::new();
        for cand in candidates {
            let duplicate = kept.iter().any(|k| {
                k.iter()
                    .zip(&cand)
                    .all(|(a, b)| (a - b).abs() <= tol::EQUALITY)
            });
            if !duplicate {
                kept.push(cand);
            }
        }
        kept.into_iter()
            .map(|v| State::new(self.space.clone(), v))
            .collect()
    }

    /// Deterministic relative-interior samples: convex combinations of
    /// the vertices with strictly positive random weights.
    pub fn sample_states(&self, count: usize, seed: u64) -> Result<Vec<State>> {
        let vertices = self.vertices()?;
        let mut rng = SplitMix64::new(seed);
        let m = self.space.outcome_count();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            // Exponential draws normalize to a point of the simplex with
            // every weight strictly positive.
            let weights: Vec<f64> = vertices
                .iter()
                .map(|_| -libm::log(rng.next_unit()))
                .collect();
            let total: f64 = weights.iter().sum();
            let mut probs = vec![0.0; m];
            for (w, vertex) in weights.iter().zip(&vertices) {
                for (p, v) in probs.iter_mut().zip(vertex.probs()) {
                    *p += w / total * v;
                }
            }
            out.push(State::new(self.space.clone(), probs)?);
        }
        Ok(out)
    }

    /// Builds an informationally complete frame for this polytope.
    pub fn frame(&self) -> Result<Frame> {
        let m = self.space.outcome_count();
        let d = self.dim;
        let mut unit = vec![0.0; m];
        for &o in &self.space.tests()[0] {
            unit[o] = 1.0;
        }

        let (members, shift) = if d == 1 {
            // A one-dimensional span means a unique state; the unit
            // functional alone is a frame for it, no shift needed.
            (vec![unit.clone()], 0.0)
        } else {
            let tilde = self.independent_covectors(&unit)?;
            // Worst minimum of any member over the polytope, by linear
            // programming; shifting by it and renormalizing lands every
            // member in [0, 1] on every state. The shift stays below 1/d
            // because the members sum to the unit functional, so the
            // denominator is safely positive.
            let mut shift = f64::INFINITY;
            for cov in &tilde {
                shift = shift.min(self.minimize_over_polytope(cov)?);
            }
            let denom = 1.0 - d as f64 * shift;
            if denom <= tol::ENTRY_SLACK {
                return Err(Error::IllConditionedBasis {
                    condition: f64::INFINITY,
                });
            }
            let members = tilde
                .iter()
                .map(|cov| {
                    cov.iter()
                        .zip(&unit)
                        .map(|(&c, &u)| (c - shift * u) / denom)
                        .collect()
                })
                .collect();
            (members, shift)
        };
        self.assemble_frame(members, shift)
    }

    /// Greedily picks `d` outcome indicators that stay independent on the
    /// span, then replaces the most dispensable one with `unit` minus the
    /// others so the family sums to the unit functional.
    fn independent_covectors(&self, unit: &[f64]) -> Result<Vec<Vec<f64>>> {
        let m = self.space.outcome_count();
        let d = self.dim;
        // Action of each outcome indicator on the span basis.
        let actions: Vec<Vec<f64>> = (0..m)
            .map(|i| self.basis.iter().map(|b| b[i]).collect())
            .collect();
        let mut residual = actions.clone();
        let mut selected: Vec<usize> = Vec::new();
        for _ in 0..d {
            let mut best: Option<(usize, f64)> = None;
            for (i, res) in residual.iter().enumerate() {
                if selected.contains(&i) {
                    continue;
                }
                let norm = linalg::norm2(res);
                let better = match best {
                    None => true,
                    Some((_, best_norm)) => norm > best_norm + 1e-12,
                };
                if better {
                    best = Some((i, norm));
                }
            }
            let (pick, norm) = best.ok_or(Error::SingularSystem {
                context: "frame candidate supply",
            })?;
            if norm <= 1e-9 {
                return Err(Error::SingularSystem {
                    context: "frame candidate span",
                });
            }
            let q: Vec<f64> = residual[pick].iter().map(|v| v / norm).collect();
            for res in residual.iter_mut() {
                let coeff = linalg::dot(res, &q);
                for (r, qi) in res.iter_mut().zip(&q) {
                    *r -= coeff * qi;
                }
            }
            selected.push(pick);
        }

        // Expand the unit functional over the selected indicators: the
        // indicator with the largest coefficient is the safest one to
        // replace by unit-minus-the-rest.
        let unit_action: Vec<f64> = self.basis.iter().map(|b| linalg::dot(unit, b)).collect();
        let columns: Vec<Vec<f64>> = (0..d)
            .map(|j| (0..d).map(|i| actions[selected[i]][j]).collect())
            .collect();
        let alpha = linalg::solve(&columns, &unit_action).ok_or(Error::SingularSystem {
            context: "unit functional expansion",
        })?;
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| {
            alpha[b]
                .abs()
                .partial_cmp(&alpha[a].abs())
                .expect("coefficients are finite")
                .then(a.cmp(&b))
        });

        let mut best_condition = f64::INFINITY;
        for &last in &order {
            if alpha[last].abs() <= 1e-12 {
                continue;
            }
            let mut arrangement: Vec<usize> = (0..d).filter(|&i| i != last).collect();
            arrangement.push(last);
            let mut tilde: Vec<Vec<f64>> = Vec::with_capacity(d);
            for &slot in arrangement.iter().take(d - 1) {
                let mut cov = vec![0.0; m];
                cov[selected[slot]] = 1.0;
                tilde.push(cov);
            }
            let mut closing = unit.to_vec();
            for cov in tilde.iter() {
                for (c, v) in closing.iter_mut().zip(cov) {
                    *c -= v;
                }
            }
            tilde.push(closing);
            let action_matrix: Vec<Vec<f64>> = tilde
                .iter()
                .map(|cov| self.basis.iter().map(|b| linalg::dot(cov, b)).collect())
                .collect();
            match linalg::condition_1(&action_matrix) {
                Some(cond) if cond <= tol::CONDITION_LIMIT => return Ok(tilde),
                Some(cond) => best_condition = best_condition.min(cond),
                None => {}
            }
        }
        Err(Error::IllConditionedBasis {
            condition: best_condition,
        })
    }

    fn minimize_over_polytope(&self, cost: &[f64]) -> Result<f64> {
        let ones = vec![1.0; self.rows.len()];
        match simplex::minimize(&self.rows, &ones, cost) {
            LpResult::Optimal { objective, .. } => Ok(objective),
            LpResult::Infeasible => Err(Error::EmptyStateSpace),
            _ => Err(Error::SingularSystem {
                context: "frame shift program",
            }),
        }
    }

    fn assemble_frame(&self, members: Vec<Vec<f64>>, shift: f64) -> Result<Frame> {
        let d = self.dim;
        // Invert the action of the members on the span basis once, so
        // reconstruction from frame coordinates is a matrix product.
        let gram: Vec<Vec<f64>> = members
            .iter()
            .map(|cov| self.basis.iter().map(|b| linalg::dot(cov, b)).collect())
            .collect();
        let inverse = linalg::invert(&gram).ok_or(Error::IllConditionedBasis {
            condition: f64::INFINITY,
        })?;
        let m = self.space.outcome_count();
        let recon: Vec<Vec<f64>> = (0..d)
            .map(|i| {
                let mut column = vec![0.0; m];
                for (j, basis_vec) in self.basis.iter().enumerate() {
                    let coeff = inverse[j][i];
                    for (c, b) in column.iter_mut().zip(basis_vec) {
                        *c += coeff * b;
                    }
                }
                column
            })
            .collect();
        Ok(Frame {
            space: self.space.clone(),
            members,
            shift,
            recon,
        })
    }
}

/// An informationally complete frame: `dimension()` functionals that are
/// nonnegative on every state, sum to the unit functional, and are
/// linearly independent on the span of states.
#[derive(Debug, Clone)]
pub struct Frame {
    space: TestSpace,
    members: Vec<Vec<f64>>,
    shift: f64,
    recon: Vec<Vec<f64>>,
}

impl Frame {
    pub fn space(&self) -> &TestSpace {
        &self.space
    }

    /// Number of members, equal to the polytope dimension.
    pub fn dimension(&self) -> usize {
        self.members.len()
    }

    /// Member covectors; member `i` evaluates a state by a dot product
    /// with its probability vector.
    pub fn members(&self) -> &[Vec<f64>] {
        &self.members
    }

    /// The shift constant `c` used in the construction (zero for a
    /// one-dimensional span).
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Frame coordinates of a span element.
    pub fn coordinates(&self, vector: &SpanVector) -> Result<Vec<f64>> {
        if vector.space() != &self.space {
            return Err(Error::SpaceMismatch {
                context: "frame coordinates",
            });
        }
        Ok(self.apply(vector.values()))
    }

    /// Frame coordinates of a state: a probability vector of length
    /// `dimension()`.
    pub fn state_coordinates(&self, state: &State) -> Result<Vec<f64>> {
        if state.space() != &self.space {
            return Err(Error::SpaceMismatch {
                context: "frame coordinates",
            });
        }
        Ok(self.apply(state.probs()))
    }

    pub(crate) fn apply(&self, values: &[f64]) -> Vec<f64> {
        self.members
            .iter()
            .map(|cov| linalg::dot(cov, values))
            .collect()
    }

    /// Reconstructs the unique span element with the given frame
    /// coordinates; inverse of [`Frame::coordinates`].
    pub fn vector_from_coordinates(&self, coords: &[f64]) -> Result<SpanVector> {
        if coords.len() != self.members.len() {
            return Err(Error::TensorShapeMismatch {
                expected: self.members.len(),
                got: coords.len(),
            });
        }
        let m = self.space.outcome_count();
        let mut values = vec![0.0; m];
        for (coeff, column) in coords.iter().zip(&self.recon) {
            for (v, c) in values.iter_mut().zip(column) {
                *v += coeff * c;
            }
        }
        Ok(SpanVector {
            space: self.space.clone(),
            values,
        })
    }
}

/// Dimension of the state polytope of `space`.
pub fn dimension(space: &TestSpace) -> Result<usize> {
    Ok(StatePolytope::analyze(space)?.dimension())
}

/// Vertices of the state polytope of `space`.
pub fn vertices(space: &TestSpace) -> Result<Vec<State>> {
    StatePolytope::analyze(space)?.vertices()
}

/// Builds an informationally complete frame for `space`.
pub fn build_frame(space: &TestSpace) -> Result<Frame> {
    StatePolytope::analyze(space)?.frame()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn space_of(labels: &[&str], tests: &[&[usize]]) -> TestSpace {
        TestSpace::new(
            labels.iter().map(|l| l.to_string()).collect(),
            tests.iter().map(|t| t.to_vec()).collect(),
        )
    }

    #[test]
    fn classical_dimension_matches_outcome_count() {
        for d in 1..=5 {
            let space = TestSpace::classical(d).unwrap();
            assert_eq!(dimension(&space).unwrap(), d);
        }
    }

    #[test]
    fn process_dimension_matches_closed_form() {
        for d in 1..=3 {
            for k in 1..=3 {
                let space = TestSpace::process(d, k).unwrap();
                assert_eq!(dimension(&space).unwrap(), d * k - k + 1);
            }
        }
    }

    #[test]
    fn overlapping_example_dimension_is_five() {
        let space = TestSpace::overlapping_example();
        assert_eq!(dimension(&space).unwrap(), 5);
    }

    #[test]
    fn implicit_zero_detected_and_dimension_drops() {
        // a + b = 1 and a + b + c = 1 force c = 0 in every state.
        let space = space_of(&["a", "b", "c"], &[&[0, 1], &[0, 1, 2]]);
        let polytope = StatePolytope::analyze(&space).unwrap();
        assert_eq!(polytope.implicit_zeros(), vec![2]);
        assert_eq!(polytope.dimension(), 2);
    }

    #[test]
    fn contradictory_tests_give_empty_polytope() {
        // a = 1 and b = 1 contradict a + b = 1.
        let space = space_of(&["a", "b"], &[&[0], &[1], &[0, 1]]);
        assert!(matches!(
            StatePolytope::analyze(&space),
            Err(Error::EmptyStateSpace)
        ));
    }

    #[test]
    fn classical_vertices_are_point_masses_in_order() {
        let space = TestSpace::classical(3).unwrap();
        let verts = vertices(&space).unwrap();
        assert_eq!(verts.len(), 3);
        // Lexicographic by coordinates: (0,0,1), (0,1,0), (1,0,0).
        assert_eq!(verts[0].probs(), &[0.0, 0.0, 1.0]);
        assert_eq!(verts[1].probs(), &[0.0, 1.0, 0.0]);
        assert_eq!(verts[2].probs(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn process_vertices_are_deterministic_strategies() {
        let space = TestSpace::process(2, 2).unwrap();
        let verts = vertices(&space).unwrap();
        assert_eq!(verts.len(), 4);
        for v in &verts {
            assert!(v.probs().iter().all(|&p| p == 0.0 || p == 1.0));
        }
    }

    #[test]
    fn interior_state_is_strictly_positive_without_implicit_zeros() {
        let space = TestSpace::overlapping_example();
        let polytope = StatePolytope::analyze(&space).unwrap();
        assert!(polytope.implicit_zeros().is_empty());
        let interior = polytope.interior_state().unwrap();
        assert!(interior.probs().iter().all(|&p| p > 0.0));
    }

    #[test]
    fn state_constructor_enforces_test_sums() {
        let space = TestSpace::classical(2).unwrap();
        assert!(State::new(space.clone(), vec![0.7, 0.3]).is_ok());
        assert!(matches!(
            State::new(space.clone(), vec![0.7, 0.4]),
            Err(Error::TestNotNormalized { .. })
        ));
        assert!(matches!(
            State::new(space.clone(), vec![1.2, -0.2]),
            Err(Error::EntryOutOfRange { .. })
        ));
        // Entries within the clamp slack are pulled onto [0, 1].
        let state = State::new(space, vec![1.0 + 1e-13, -1e-13]).unwrap();
        assert_eq!(state.probs(), &[1.0, 0.0]);
    }

    #[test]
    fn point_mass_requires_the_assignment_to_be_a_state() {
        let classical = TestSpace::classical(3).unwrap();
        let state = State::point_mass(classical, 1).unwrap();
        assert_eq!(state.probs(), &[0.0, 1.0, 0.0]);
        // Outcome c of the overlapping example belongs only to the first
        // test, so all mass on it starves the other two tests.
        let overlapping = TestSpace::overlapping_example();
        assert!(State::point_mass(overlapping, 2).is_err());
    }

    #[test]
    fn is_state_reports_witnesses() {
        let space = TestSpace::classical(2).unwrap();
        let ok = is_state(&space, &[0.5, 0.5], tol::EQUALITY).unwrap();
        assert!(ok.ok && ok.violation.is_none());
        let negative = is_state(&space, &[-0.25, 1.25], tol::EQUALITY).unwrap();
        assert_eq!(
            negative.violation,
            Some(StateViolation::Negative {
                outcome: 0,
                value: -0.25
            })
        );
        let unbalanced = is_state(&space, &[0.7, 0.7], tol::EQUALITY).unwrap();
        assert!(matches!(
            unbalanced.violation,
            Some(StateViolation::TestSum { test: 0, .. })
        ));
    }

    #[test]
    fn span_vector_rejects_off_span_vectors() {
        let space = TestSpace::overlapping_example();
        let polytope = StatePolytope::analyze(&space).unwrap();
        // The indicator of outcome c evaluates differently under the
        // three tests, so it cannot lie in the span of states.
        let mut off = vec![0.0; 7];
        off[2] = 1.0;
        assert!(matches!(
            polytope.span_vector(off),
            Err(Error::NotInSpan { .. })
        ));
        // Every state is in the span.
        let interior = polytope.interior_state().unwrap();
        assert!(polytope.span_vector(interior.probs().to_vec()).is_ok());
    }

    #[test]
    fn frame_has_dimension_members_and_round_trips() {
        for space in [
            TestSpace::classical(4).unwrap(),
            TestSpace::process(2, 2).unwrap(),
            TestSpace::overlapping_example(),
        ] {
            let polytope = StatePolytope::analyze(&space).unwrap();
            let frame = polytope.frame().unwrap();
            assert_eq!(frame.dimension(), polytope.dimension());
            for state in polytope.vertices().unwrap() {
                let coords = frame.state_coordinates(&state).unwrap();
                let sum: f64 = coords.iter().sum();
                assert!((sum - 1.0).abs() < 1e-9, "coordinates must sum to 1");
                for &c in &coords {
                    assert!(
                        (-1e-9..=1.0 + 1e-9).contains(&c),
                        "coordinate {c} outside [0, 1]"
                    );
                }
                let back = frame.vector_from_coordinates(&coords).unwrap();
                for (a, b) in back.values().iter().zip(state.probs()) {
                    assert!((a - b).abs() < 1e-9, "round trip must reproduce the state");
                }
            }
        }
    }

    #[test]
    fn one_dimensional_space_gets_the_unit_frame() {
        let space = TestSpace::classical(1).unwrap();
        let polytope = StatePolytope::analyze(&space).unwrap();
        assert_eq!(polytope.dimension(), 1);
        let frame = polytope.frame().unwrap();
        assert_eq!(frame.dimension(), 1);
        assert_eq!(frame.shift(), 0.0);
        let state = polytope.interior_state().unwrap();
        let coords = frame.state_coordinates(&state).unwrap();
        assert!((coords[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic_and_interior() {
        let space = TestSpace::overlapping_example();
        let polytope = StatePolytope::analyze(&space).unwrap();
        let a = polytope.sample_states(5, 42).unwrap();
        let b = polytope.sample_states(5, 42).unwrap();
        assert_eq!(a.len(), 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.probs(), y.probs());
            assert!(x.probs().iter().all(|&p| p > 0.0));
        }
        let c = polytope.sample_states(5, 7).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.probs() != y.probs()));
    }

    #[test]
    fn constraints_describe_the_polytope() {
        let space = TestSpace::overlapping_example();
        let constraints = polytope_constraints(&space).unwrap();
        assert_eq!(constraints.outcome_count(), 7);
        assert_eq!(constraints.equality_rows().len(), 3);
        assert_eq!(constraints.nonnegativity_count(), 7);
        let polytope = StatePolytope::analyze(&space).unwrap();
        let interior = polytope.interior_state().unwrap();
        for row in constraints.equality_rows() {
            let sum: f64 = row.iter().zip(interior.probs()).map(|(r, p)| r * p).sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn vertex_guard_rejects_oversized_spaces() {
        let space = TestSpace::classical(limits::MAX_VERTEX_OUTCOMES + 1).unwrap();
        let polytope = StatePolytope::analyze(&space).unwrap();
        assert!(matches!(
            polytope.vertices(),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }
}
