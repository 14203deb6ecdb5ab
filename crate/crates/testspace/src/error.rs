//! Crate-wide error type.

use alloc::vec::Vec;

use crate::space::Violation;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the crate can report.
///
/// Structural problems with a test space itself are collected in
/// [`Violation`] values rather than errors, so that validation can report
/// all defects at once; [`Error::InvalidSpace`] wraps that list when an
/// operation requires a well-formed space and does not get one.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// No probability assignment satisfies every test of the space.
    #[error("the state space is empty: no assignment satisfies every test")]
    EmptyStateSpace,

    /// A guarded operation would exceed its hard size limit.
    #[error("{what}: size {required} exceeds the limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        required: usize,
        limit: usize,
    },

    /// The operation requires a structurally valid test space.
    #[error("invalid test space: {} violation(s), first: {}", .0.len(), .0[0])]
    InvalidSpace(Vec<Violation>),

    /// A count parameter is below its minimum.
    #[error("{what} must be at least {min}, got {got}")]
    InvalidCount {
        what: &'static str,
        got: usize,
        min: usize,
    },

    /// A probability entry lies outside `[0, 1]` past the clamp slack.
    #[error("entry {index} is {value:.6e}, outside [0, 1]")]
    EntryOutOfRange { index: usize, value: f64 },

    /// A single-system test does not sum to one.
    #[error("test {test} sums to {sum:.12} instead of 1")]
    TestNotNormalized { test: usize, sum: f64 },

    /// A joint test tuple does not sum to one.
    #[error("test tuple {tests:?} sums to {sum:.12} instead of 1")]
    TestTupleNotNormalized { tests: Vec<usize>, sum: f64 },

    /// A tensor or coordinate vector has the wrong number of entries.
    #[error("expected {expected} entries, got {got}")]
    TensorShapeMismatch { expected: usize, got: usize },

    /// A vector is not in the span of the states of the space.
    #[error("vector lies outside the span of states (residual {residual:.3e})")]
    NotInSpan { residual: f64 },

    /// Two objects that must share a test space do not.
    #[error("test space mismatch in {context}")]
    SpaceMismatch { context: &'static str },

    /// A list of states does not line up with the product's factors.
    #[error("expected {expected} factor state(s), got {got}")]
    FactorCountMismatch { expected: usize, got: usize },

    /// The operation requires every factor of the product to be identical.
    #[error("product factors are not all identical")]
    HeterogeneousFactors,

    /// A subsystem index is out of range.
    #[error("system {system} out of range for {count} system(s)")]
    UnknownSystem { system: usize, count: usize },

    /// A subsystem index was listed twice.
    #[error("system {system} listed more than once")]
    DuplicateSystem { system: usize },

    /// Kept-system lists must be strictly increasing.
    #[error("system list must be strictly increasing")]
    SystemsNotIncreasing,

    /// A permutation array is not a bijection on `0..n`.
    #[error("not a permutation of the systems")]
    InvalidPermutation,

    /// The operation is only defined for exactly two systems.
    #[error("operation requires exactly 2 systems, got {systems}")]
    NotBipartite { systems: usize },

    /// A joint state signals: a marginal depends on a distant test choice.
    #[error(
        "signalling joint state: marginal with system {varied_system} discarded \
         moves by {deviation:.3e} between its tests {test_a} and {test_b}"
    )]
    SignallingState {
        varied_system: usize,
        test_a: usize,
        test_b: usize,
        deviation: f64,
    },

    /// A joint state that must be permutation symmetric is not.
    #[error("joint state is not symmetric (deviation {deviation:.3e})")]
    NotSymmetric { deviation: f64 },

    /// Conditioning on an outcome whose probability is numerically zero.
    #[error("outcome {outcome} has probability {probability:.3e}, too small to condition on")]
    ZeroProbabilityOutcome { outcome: usize, probability: f64 },

    /// The observed record has numerically zero probability under a mixture.
    #[error("observed record has predictive probability {probability:.3e} under the mixture")]
    ZeroProbabilityObservation { probability: f64 },

    /// A test index is out of range.
    #[error("test {test} out of range for {count} test(s)")]
    UnknownTest { test: usize, count: usize },

    /// An outcome index is out of range.
    #[error("outcome {outcome} out of range for {count} outcome(s)")]
    UnknownOutcome { outcome: usize, count: usize },

    /// The named outcome does not belong to the named test.
    #[error("outcome {outcome} is not a member of test {test}")]
    OutcomeNotInTest { outcome: usize, test: usize },

    /// Mixture weights must be strictly positive.
    #[error("mixture weight {index} is {weight:.6e}, not strictly positive")]
    WeightNotPositive { index: usize, weight: f64 },

    /// Mixture weights must sum to one.
    #[error("mixture weights sum to {sum:.12} instead of 1")]
    WeightsNotNormalized { sum: f64 },

    /// A mixture needs at least one component.
    #[error("mixture has no components")]
    EmptyMixture,

    /// A classical distribution entry is negative past the clamp slack.
    #[error("distribution entry {index} is {value:.6e}, negative")]
    NegativeProbability { index: usize, value: f64 },

    /// A classical distribution does not sum to one.
    #[error("distribution sums to {sum:.12} instead of 1")]
    DistributionNotNormalized { sum: f64 },

    /// No acceptably conditioned frame basis could be found.
    #[error("frame basis is ill conditioned (condition {condition:.3e})")]
    IllConditionedBasis { condition: f64 },

    /// An internal linear solve hit a singular system.
    #[error("singular linear system in {context}")]
    SingularSystem { context: &'static str },

    /// The operation is only sound for even powers.
    #[error("requires an even number of copies of at least 2, got {n}")]
    EvenPowerRequired { n: usize },

    /// A search grid is too coarse to be meaningful.
    #[error("grid of {grid} points is too coarse, need at least {min}")]
    GridTooCoarse { grid: usize, min: usize },

    /// Two linear-algebra dimensions disagree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A matrix that must be Hermitian is not.
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    /// A density operator must have unit trace.
    #[error("trace is {trace:.12} instead of 1")]
    TraceNotOne { trace: f64 },

    /// A density operator must be positive semidefinite.
    #[error("matrix has negative eigenvalue {value:.6e}")]
    NegativeEigenvalue { value: f64 },

    /// A projector in a projective test is not idempotent.
    #[error("projector {projector} is not idempotent (deviation {deviation:.3e})")]
    NotIdempotent { projector: usize, deviation: f64 },

    /// Two projectors in a projective test are not orthogonal.
    #[error("projectors {first} and {second} are not orthogonal (deviation {deviation:.3e})")]
    NotOrthogonal {
        first: usize,
        second: usize,
        deviation: f64,
    },

    /// The projectors of a test do not sum to the identity.
    #[error("projectors do not sum to the identity (deviation {deviation:.3e})")]
    IncompleteTest { deviation: f64 },

    /// A matrix dimension is not the expected power of the local dimension.
    #[error("dimension {dim} is not a positive power of the local dimension {local}")]
    NotPowerDimension { dim: usize, local: usize },
}
