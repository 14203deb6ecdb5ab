//! Joint states on Cartesian products of test spaces.
//!
//! A product of `n` test spaces has outcome tuples for outcomes and one
//! test per choice of a test on each factor. A [`JointState`] stores the
//! full probability tensor over outcome tuples, row-major with the first
//! system slowest, and requires every joint test to sum to one.
//!
//! Joint states need not factorize and need not even be nonsignalling:
//! the tensor normalization allows states where the marginal on one side
//! depends on the test chosen far away. [`check_nonsignalling`] measures
//! exactly that dependence, one report entry per system whose test choice
//! is varied. Marginals only exist when the discarded systems do not
//! signal, so [`marginal`] checks before it sums.
//!
//! Permutations of systems act on homogeneous products (all factors one
//! space); [`is_symmetric`] checks invariance on the adjacent
//! transpositions that generate the full permutation group, and
//! [`symmetrize`] projects onto the symmetric states by group averaging.
//!
//! [`tensor_coordinates`] turns a nonsignalling joint state into a joint
//! probability distribution over frame indices, one frame member applied
//! per axis; [`tensor_reconstruct`] inverts it. This pair is the bridge
//! between joint states and classical joint distributions that mixture
//! recovery rides on.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::index;
use crate::limits;
use crate::space::TestSpace;
use crate::statespace::{clamp_unit_entries, Frame, State};
use crate::tol;

/// A Cartesian product of finitely many test spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpace {
    factors: Vec<TestSpace>,
}

impl ProductSpace {
    /// Builds a product from at least one structurally valid factor.
    pub fn new(factors: Vec<TestSpace>) -> Result<ProductSpace> {
        if factors.is_empty() {
            return Err(Error::InvalidCount {
                what: "product factor count",
                got: 0,
                min: 1,
            });
        }
        for factor in &factors {
            factor.ensure_valid()?;
        }
        Ok(ProductSpace { factors })
    }

    /// The `n`-fold power of one space.
    pub fn power(space: &TestSpace, n: usize) -> Result<ProductSpace> {
        if n == 0 {
            return Err(Error::InvalidCount {
                what: "power exponent",
                got: 0,
                min: 1,
            });
        }
        ProductSpace::new(vec![space.clone(); n])
    }

    /// Concatenates the factor lists of two products; the product
    /// operation is associative by construction.
    pub fn join(a: &ProductSpace, b: &ProductSpace) -> ProductSpace {
        let mut factors = a.factors.clone();
        factors.extend(b.factors.iter().cloned());
        ProductSpace { factors }
    }

    pub fn factors(&self) -> &[TestSpace] {
        &self.factors
    }

    pub fn system_count(&self) -> usize {
        self.factors.len()
    }

    /// Outcome count per factor, the tensor axis lengths.
    pub fn outcome_dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.outcome_count()).collect()
    }

    /// Total tensor entries, guarded by [`limits::MAX_TENSOR_ENTRIES`].
    pub fn entry_count(&self) -> Result<usize> {
        let count = index::volume(&self.outcome_dims()).unwrap_or(usize::MAX);
        if count > limits::MAX_TENSOR_ENTRIES {
            return Err(Error::SizeLimitExceeded {
                what: "joint tensor",
                required: count,
                limit: limits::MAX_TENSOR_ENTRIES,
            });
        }
        Ok(count)
    }

    /// Whether every factor is the same space.
    pub fn is_homogeneous(&self) -> bool {
        self.factors.windows(2).all(|w| w[0] == w[1])
    }

    fn ensure_homogeneous(&self) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(Error::HeterogeneousFactors)
        }
    }
}

/// A state on a product space: the full probability tensor over outcome
/// tuples, row-major with system `1` varying slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    product: ProductSpace,
    tensor: Vec<f64>,
}

impl JointState {
    /// Validates and clamps `tensor` into a joint state: entries in
    /// `[0, 1]` and every joint test summing to one.
    pub fn new(product: ProductSpace, tensor: Vec<f64>) -> Result<JointState> {
        let expected = product.entry_count()?;
        if tensor.len() != expected {
            return Err(Error::TensorShapeMismatch {
                expected,
                got: tensor.len(),
            });
        }
        let mut tensor = tensor;
        clamp_unit_entries(&mut tensor)?;
        let dims = product.outcome_dims();
        let strides = index::strides(&dims);
        let test_counts: Vec<usize> = product.factors.iter().map(|f| f.test_count()).collect();
        let mut failure: Option<Error> = None;
        index::for_each(&test_counts, |tuple| {
            if failure.is_some() {
                return;
            }
            let member_counts: Vec<usize> = tuple
                .iter()
                .enumerate()
                .map(|(sys, &t)| product.factors[sys].tests()[t].len())
                .collect();
            let mut sum = 0.0;
            index::for_each(&member_counts, |pick| {
                let offset: usize = pick
                    .iter()
                    .enumerate()
                    .map(|(sys, &p)| product.factors[sys].tests()[tuple[sys]][p] * strides[sys])
                    .sum();
                sum += tensor[offset];
            });
            if (sum - 1.0).abs() > tol::EQUALITY {
                failure = Some(Error::TestTupleNotNormalized {
                    tests: tuple.to_vec(),
                    sum,
                });
            }
        });
        if let Some(err) = failure {
            return Err(err);
        }
        Ok(JointState { product, tensor })
    }

    /// Views a single-system state as a one-factor joint state.
    pub fn from_state(state: &State) -> JointState {
        JointState {
            product: ProductSpace {
                factors: vec![state.space().clone()],
            },
            tensor: state.probs().to_vec(),
        }
    }

    /// Extracts the single-system state of a one-factor joint state.
    pub fn as_single_state(&self) -> Option<State> {
        if self.product.system_count() == 1 {
            State::new(self.product.factors[0].clone(), self.tensor.clone()).ok()
        } else {
            None
        }
    }

    pub fn product(&self) -> &ProductSpace {
        &self.product
    }

    pub fn tensor(&self) -> &[f64] {
        &self.tensor
    }

    pub fn system_count(&self) -> usize {
        self.product.system_count()
    }

    /// Tensor entry at an outcome tuple; panics on a malformed index, as
    /// slice indexing does.
    pub fn entry(&self, idx: &[usize]) -> f64 {
        let dims = self.product.outcome_dims();
        assert_eq!(idx.len(), dims.len());
        let strides = index::strides(&dims);
        self.tensor[index::flat(idx, &strides)]
    }

    /// True when both joint states share a product and agree entrywise
    /// within `tol`.
    pub fn approx_eq(&self, other: &JointState, tol: f64) -> bool {
        self.product == other.product
            && self
                .tensor
                .iter()
                .zip(&other.tensor)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// The uncorrelated joint state of independently prepared systems: the
/// outer product of the given states.
pub fn direct_product(states: &[State]) -> Result<JointState> {
    if states.is_empty() {
        return Err(Error::InvalidCount {
            what: "direct product state count",
            got: 0,
            min: 1,
        });
    }
    let product = ProductSpace::new(states.iter().map(|s| s.space().clone()).collect())?;
    let total = product.entry_count()?;
    let dims = product.outcome_dims();
    let mut tensor = Vec::with_capacity(total);
    index::for_each(&dims, |idx| {
        let p: f64 = idx
            .iter()
            .enumerate()
            .map(|(sys, &o)| states[sys].probability(o))
            .product();
        tensor.push(p);
    });
    JointState::new(product, tensor)
}

/// The `n`-fold direct product of one state with itself.
pub fn product_power(state: &State, n: usize) -> Result<JointState> {
    if n == 0 {
        return Err(Error::InvalidCount {
            what: "power exponent",
            got: 0,
            min: 1,
        });
    }
    direct_product(&vec![state.clone(); n])
}

/// Nonsignalling deviation attributable to one system's test choice.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitCheck {
    /// The system whose test choice is varied.
    pub varied_system: usize,
    /// Largest entrywise change in the joint distribution of all other
    /// systems when the varied system switches tests.
    pub deviation: f64,
    /// The pair of tests achieving the deviation, when the system has
    /// more than one test.
    pub worst_tests: Option<(usize, usize)>,
}

/// Per-system nonsignalling report for a joint state.
#[derive(Debug, Clone, PartialEq)]
pub struct NonsignallingReport {
    pub checks: Vec<SplitCheck>,
}

impl NonsignallingReport {
    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| m.max(c.deviation))
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }

    /// The split with the largest deviation, if any check was performed.
    pub fn worst(&self) -> Option<&SplitCheck> {
        self.checks
            .iter()
            .max_by(|a, b| a.deviation.partial_cmp(&b.deviation).expect("finite"))
    }

    pub(crate) fn signalling_error(&self, fallback: &'static str) -> Error {
        match self.worst() {
            Some(check) => Error::SignallingState {
                varied_system: check.varied_system,
                test_a: check.worst_tests.map(|(a, _)| a).unwrap_or(0),
                test_b: check.worst_tests.map(|(_, b)| b).unwrap_or(0),
                deviation: check.deviation,
            },
            None => Error::SpaceMismatch { context: fallback },
        }
    }
}

/// Sums the tensor over one test of one system, leaving the joint
/// distribution of the remaining systems (in tensor layout with the
/// summed axis removed).
pub(crate) fn sum_out_test(js: &JointState, system: usize, test: usize) -> Vec<f64> {
    let dims = js.product.outcome_dims();
    let strides = index::strides(&dims);
    let mut reduced_dims = dims.clone();
    reduced_dims.remove(system);
    let reduced_strides = index::strides(&reduced_dims);
    let mut out = vec![0.0; reduced_dims.iter().product::<usize>().max(1)];
    let members = &js.product.factors[system].tests()[test];
    index::for_each(&reduced_dims, |rest| {
        let mut base = 0usize;
        for (axis, &o) in rest.iter().enumerate() {
            let full_axis = if axis < system { axis } else { axis + 1 };
            base += o * strides[full_axis];
        }
        let target = index::flat(rest, &reduced_strides);
        for &m in members {
            out[target] += js.tensor[base + m * strides[system]];
        }
    });
    out
}

/// Measures, for every system, how much the joint distribution of the
/// other systems moves when that system's test choice changes.
///
/// A deviation of zero for every system is the nonsignalling property:
/// local test choices are invisible elsewhere. The per-system check on
/// single test switches is equivalent to the full condition over subsets
/// of systems, by telescoping one switch at a time.
pub fn check_nonsignalling(js: &JointState) -> NonsignallingReport {
    let mut checks = Vec::new();
    for system in 0..js.system_count() {
        let test_count = js.product.factors[system].test_count();
        if test_count < 2 {
            checks.push(SplitCheck {
                varied_system: system,
                deviation: 0.0,
                worst_tests: None,
            });
            continue;
        }
        let reduced: Vec<Vec<f64>> = (0..test_count)
            .map(|t| sum_out_test(js, system, t))
            .collect();
        let mut deviation = 0.0f64;
        let mut worst = (0, 1);
        for a in 0..test_count {
            for b in a + 1..test_count {
                let gap = reduced[a]
                    .iter()
                    .zip(&reduced[b])
                    .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
                if gap > deviation {
                    deviation = gap;
                    worst = (a, b);
                }
            }
        }
        checks.push(SplitCheck {
            varied_system: system,
            deviation,
            worst_tests: Some(worst),
        });
    }
    NonsignallingReport { checks }
}

/// Marginal joint state on the kept systems, which must be listed in
/// strictly increasing order.
///
/// Fails with [`Error::SignallingState`] when any discarded system's test
/// choice leaks into the kept marginal: in that case no canonical
/// marginal exists. The check varies one discarded system at a time under
/// every test context of the other discarded systems, which covers the
/// whole discarded block one switch at a time.
pub fn marginal(js: &JointState, keep: &[usize]) -> Result<JointState> {
    let n = js.system_count();
    if keep.is_empty() {
        return Err(Error::InvalidCount {
            what: "kept system count",
            got: 0,
            min: 1,
        });
    }
    for &k in keep {
        if k >= n {
            return Err(Error::UnknownSystem {
                system: k,
                count: n,
            });
        }
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::SystemsNotIncreasing);
    }
    if keep.len() == n {
        return Ok(js.clone());
    }
    let discard: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
    let dims = js.product.outcome_dims();
    let strides = index::strides(&dims);
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let kept_strides = index::strides(&kept_dims);
    let kept_total: usize = kept_dims.iter().product();

    // One reduced tensor per tuple of tests on the discarded block.
    let discard_test_counts: Vec<usize> = discard
        .iter()
        .map(|&d| js.product.factors[d].test_count())
        .collect();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    index::for_each(&discard_test_counts, |tuple| tuples.push(tuple.to_vec()));
    let mut reduced: Vec<Vec<f64>> = Vec::with_capacity(tuples.len());
    for tuple in &tuples {
        let mut out = vec![0.0; kept_total];
        let member_dims: Vec<usize> = discard
            .iter()
            .zip(tuple)
            .map(|(&d, &t)| js.product.factors[d].tests()[t].len())
            .collect();
        index::for_each(&kept_dims, |kept_idx| {
            let mut base = 0usize;
            for (slot, &o) in kept_idx.iter().enumerate() {
                base += o * strides[keep[slot]];
            }
            let target = index::flat(kept_idx, &kept_strides);
            let mut sum = 0.0;
            index::for_each(&member_dims, |pick| {
                let mut offset = base;
                for (slot, &p) in pick.iter().enumerate() {
                    let d = discard[slot];
                    offset += js.product.factors[d].tests()[tuple[slot]][p] * strides[d];
                }
                sum += js.tensor[offset];
            });
            out[target] += sum;
        });
        reduced.push(out);
    }

    // Compare tuples differing in exactly one discarded system's test.
    for (i, tuple_a) in tuples.iter().enumerate() {
        for (j, tuple_b) in tuples.iter().enumerate().skip(i + 1) {
            let differing: Vec<usize> = (0..discard.len())
                .filter(|&s| tuple_a[s] != tuple_b[s])
                .collect();
            if differing.len() != 1 {
                continue;
            }
            let slot = differing[0];
            let gap = reduced[i]
                .iter()
                .zip(&reduced[j])
                .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
            if gap > tol::EQUALITY {
                return Err(Error::SignallingState {
                    varied_system: discard[slot],
                    test_a: tuple_a[slot].min(tuple_b[slot]),
                    test_b: tuple_a[slot].max(tuple_b[slot]),
                    deviation: gap,
                });
            }
        }
    }

    let kept_factors: Vec<TestSpace> = keep
        .iter()
        .map(|&k| js.product.factors[k].clone())
        .collect();
    JointState::new(ProductSpace::new(kept_factors)?, reduced.swap_remove(0))
}

/// State of the second system given an outcome of the first, for a
/// nonsignalling two-system joint state.
///
/// The construction divides the joint probabilities by the marginal
/// probability of the conditioning outcome, so outcomes at the numerical
/// noise floor are rejected rather than amplified.
pub fn conditional(js: &JointState, outcome: usize) -> Result<State> {
    let n = js.system_count();
    if n != 2 {
        return Err(Error::NotBipartite { systems: n });
    }
    let dims = js.product.outcome_dims();
    if outcome >= dims[0] {
        return Err(Error::UnknownOutcome {
            outcome,
            count: dims[0],
        });
    }
    let report = check_nonsignalling(js);
    if !report.passes(tol::EQUALITY) {
        return Err(report.signalling_error("conditional"));
    }
    let first = marginal(js, &[0])?;
    let p = first.tensor()[outcome];
    if p <= tol::ZERO_PROBABILITY {
        return Err(Error::ZeroProbabilityOutcome {
            outcome,
            probability: p,
        });
    }
    let second = js.product.factors[1].clone();
    let row_start = outcome * dims[1];
    let probs: Vec<f64> = js.tensor[row_start..row_start + dims[1]]
        .iter()
        .map(|&v| v / p)
        .collect();
    State::new(second, probs)
}

/// Applies `members` (rows of covectors over an axis of length `m`) along
/// `axis` of a dense row-major tensor with the given dims.
fn contract_axis(
    data: &[f64],
    dims: &[usize],
    axis: usize,
    members: &[Vec<f64>],
) -> (Vec<f64>, Vec<usize>) {
    let m = dims[axis];
    let out_len = members.len();
    let mut new_dims = dims.to_vec();
    new_dims[axis] = out_len;
    let strides = index::strides(dims);
    let new_strides = index::strides(&new_dims);
    let mut out = vec![0.0; new_dims.iter().product()];
    let mut rest_dims = dims.to_vec();
    rest_dims.remove(axis);
    index::for_each(&rest_dims, |rest| {
        let mut base = 0usize;
        let mut new_base = 0usize;
        for (slot, &o) in rest.iter().enumerate() {
            let full_axis = if slot < axis { slot } else { slot + 1 };
            base += o * strides[full_axis];
            new_base += o * new_strides[full_axis];
        }
        for (a, member) in members.iter().enumerate() {
            let mut acc = 0.0;
            for (o, &w) in member.iter().enumerate().take(m) {
                if w != 0.0 {
                    acc += w * data[base + o * strides[axis]];
                }
            }
            out[new_base + a * new_strides[axis]] = acc;
        }
    });
    (out, new_dims)
}

/// Joint distribution of frame indices for a nonsignalling joint state on
/// a homogeneous product: one frame member applied per axis.
///
/// The result has `d^n` entries (`d` the frame dimension), row-major with
/// the first system slowest, and determines the joint state uniquely; see
/// [`tensor_reconstruct`].
pub fn tensor_coordinates(frame: &Frame, js: &JointState) -> Result<Vec<f64>> {
    js.product.ensure_homogeneous()?;
    if frame.space() != &js.product.factors[0] {
        return Err(Error::SpaceMismatch {
            context: "tensor coordinates",
        });
    }
    let report = check_nonsignalling(js);
    if !report.passes(tol::EQUALITY) {
        return Err(report.signalling_error("tensor coordinates"));
    }
    let mut data = js.tensor.clone();
    let mut dims = js.product.outcome_dims();
    for axis in 0..dims.len() {
        let (next, next_dims) = contract_axis(&data, &dims, axis, frame.members());
        data = next;
        dims = next_dims;
    }
    Ok(data)
}

/// Reconstructs the joint state with the given frame-coordinate tensor,
/// the inverse of [`tensor_coordinates`].
///
/// Coordinates that do not come from an actual joint state surface as
/// construction errors from the tensor validation.
pub fn tensor_reconstruct(frame: &Frame, coords: &[f64], n: usize) -> Result<JointState> {
    let product = ProductSpace::power(frame.space(), n)?;
    product.entry_count()?;
    let d = frame.dimension();
    let expected = d.checked_pow(n as u32).unwrap_or(usize::MAX);
    if coords.len() != expected {
        return Err(Error::TensorShapeMismatch {
            expected,
            got: coords.len(),
        });
    }
    // Rows of the reconstruction operator: entry o of the span element
    // with frame coordinates e_i.
    let m = frame.space().outcome_count();
    let mut rows: Vec<Vec<f64>> = vec![vec![0.0; d]; m];
    for i in 0..d {
        let mut unit = vec![0.0; d];
        unit[i] = 1.0;
        let column = frame.vector_from_coordinates(&unit)?;
        for (o, &v) in column.values().iter().enumerate() {
            rows[o][i] = v;
        }
    }
    let mut data = coords.to_vec();
    let mut dims = vec![d; n];
    for axis in 0..n {
        let (next, next_dims) = contract_axis(&data, &dims, axis, &rows);
        data = next;
        dims = next_dims;
    }
    JointState::new(product, data)
}

/// Permuted joint state: `out(e_1, .., e_n) = in(e_{perm(1)}, ..,
/// e_{perm(n)})`, on a homogeneous product.
pub fn permute(js: &JointState, perm: &[usize]) -> Result<JointState> {
    js.product.ensure_homogeneous()?;
    let n = js.system_count();
    if perm.len() != n {
        return Err(Error::InvalidPermutation);
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidPermutation);
        }
        seen[p] = true;
    }
    let dims = js.product.outcome_dims();
    let strides = index::strides(&dims);
    let mut tensor = vec![0.0; js.tensor.len()];
    let mut gathered = vec![0usize; n];
    let mut write = 0usize;
    index::for_each(&dims, |idx| {
        for (slot, &p) in perm.iter().enumerate() {
            gathered[slot] = idx[p];
        }
        tensor[write] = js.tensor[index::flat(&gathered, &strides)];
        write += 1;
    });
    Ok(JointState {
        product: js.product.clone(),
        tensor,
    })
}

/// Result of a symmetry check.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryCheck {
    pub symmetric: bool,
    /// Largest entrywise change under any adjacent transposition of
    /// systems; the transpositions generate all permutations.
    pub deviation: f64,
}

/// Checks invariance of a homogeneous joint state under permutations of
/// its systems, within `tol`.
pub fn is_symmetric(js: &JointState, tol: f64) -> Result<SymmetryCheck> {
    js.product.ensure_homogeneous()?;
    let n = js.system_count();
    let mut deviation = 0.0f64;
    for k in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(k, k + 1);
        let swapped = permute(js, &perm)?;
        let gap = js
            .tensor
            .iter()
            .zip(swapped.tensor())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        deviation = deviation.max(gap);
    }
    Ok(SymmetryCheck {
        symmetric: deviation <= tol,
        deviation,
    })
}

/// Projects a homogeneous joint state onto the symmetric states by
/// averaging over all `n!` system permutations.
pub fn symmetrize(js: &JointState) -> Result<JointState> {
    js.product.ensure_homogeneous()?;
    let n = js.system_count();
    if n > limits::MAX_SYMMETRIZE_SYSTEMS {
        return Err(Error::SizeLimitExceeded {
            what: "symmetrization",
            required: n,
            limit: limits::MAX_SYMMETRIZE_SYSTEMS,
        });
    }
    let perms = index::permutations(n);
    let weight = 1.0 / perms.len() as f64;
    let mut accum = vec![0.0; js.tensor.len()];
    for perm in &perms {
        let permuted = permute(js, perm)?;
        for (a, v) in accum.iter_mut().zip(permuted.tensor()) {
            *a += weight * v;
        }
    }
    JointState::new(js.product.clone(), accum)
}

/// The Popescu-Rohrlich box: a bipartite state on two binary-input,
/// binary-output process spaces with outputs satisfying
/// `a XOR b = x AND y`, each admissible pair with probability one half.
///
/// Nonsignalling yet more strongly correlated than any quantum state; the
/// standard witness that nonsignalling alone does not pin down quantum
/// theory.
pub fn pr_box() -> Result<JointState> {
    let factor = TestSpace::process(2, 2)?;
    let product = ProductSpace::new(vec![factor.clone(), factor])?;
    let mut tensor = vec![0.0; 16];
    for x in 0..2usize {
        for y in 0..2usize {
            for a in 0..2usize {
                for b in 0..2usize {
                    if a ^ b == x & y {
                        let row = x * 2 + a;
                        let col = y * 2 + b;
                        tensor[row * 4 + col] = 0.5;
                    }
                }
            }
        }
    }
    JointState::new(product, tensor)
}

/// A deliberately signalling bipartite box: the second system's output
/// equals the first system's input, uniformly over the second input.
///
/// Varying the first system's test visibly moves the second marginal, so
/// nonsignalling checks must flag system `0` and leave system `1` clean.
pub fn one_way_signalling_box() -> Result<JointState> {
    let factor = TestSpace::process(2, 2)?;
    let product = ProductSpace::new(vec![factor.clone(), factor])?;
    let mut tensor = vec![0.0; 16];
    for x in 0..2usize {
        for y in 0..2usize {
            for a in 0..2usize {
                for b in 0..2usize {
                    if b == x {
                        let row = x * 2 + a;
                        let col = y * 2 + b;
                        tensor[row * 4 + col] = 0.5;
                    }
                }
            }
        }
    }
    JointState::new(product, tensor)
}
