//! Quantum models as test spaces, and the real-amplitude counterexample.
//!
//! A finite collection of projective measurements on a Hilbert space is a
//! test space: outcomes are the projectors, tests are the measurements,
//! and every density operator induces a state through the Born rule.
//! [`embed_local`] performs that translation for product measurements on
//! several copies of one system, so the exchangeability and recovery
//! machinery of [`crate::definetti`] applies to quantum states directly.
//!
//! The translation also exposes a sharp boundary. For *rebits*, qubits
//! restricted to real-amplitude measurements, an exchangeable sequence
//! need not be a mixture of product powers of rebit states:
//! [`rebit_counterexample`] builds an equal mixture of the two circular
//! polarizations, whose every real measurement record matches the
//! maximally mixed state, yet whose underlying correlations (visible the
//! moment the imaginary axis is measured) are not separable. The demo
//! quantifies both halves: the induced test-space state is exchangeable
//! and is recovered as the point mass on the maximally mixed state, while
//! the y-axis correlator sits at distance one from every mixture of real
//! product states.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::composite::{JointState, ProductSpace, SymmetryCheck};
use crate::definetti::{
    check_exchangeable, recover_mixture, Clause, RecoverOptions, SequencePrefix,
};
use crate::error::{Error, Result};
use crate::index;
use crate::limits;
use crate::linalg;
use crate::space::TestSpace;
use crate::tol;

/// A dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<ComplexMatrix> {
        if entries.len() != dim * dim {
            return Err(Error::TensorShapeMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(ComplexMatrix { dim, entries })
    }

    /// Builds a matrix from separate real and imaginary parts.
    pub fn from_parts(dim: usize, re: &[f64], im: &[f64]) -> Result<ComplexMatrix> {
        if re.len() != dim * dim || im.len() != re.len() {
            return Err(Error::TensorShapeMismatch {
                expected: dim * dim,
                got: re.len().max(im.len()),
            });
        }
        let entries = re
            .iter()
            .zip(im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        Ok(ComplexMatrix { dim, entries })
    }

    pub fn from_real(dim: usize, re: &[f64]) -> Result<ComplexMatrix> {
        let im = vec![0.0; re.len()];
        ComplexMatrix::from_parts(dim, re, &im)
    }

    pub fn zeros(dim: usize) -> ComplexMatrix {
        ComplexMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Matrix product; panics if the dimensions disagree.
    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions disagree");
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.entries[i * d + j] += a * other.entries[k * d + j];
                }
            }
        }
        out
    }

    /// Entrywise sum; panics if the dimensions disagree.
    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions disagree");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            dim: self.dim,
            entries,
        }
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    /// Kronecker product, left factor on the slow index.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut out = ComplexMatrix::zeros(d);
        for ia in 0..da {
            for ja in 0..da {
                let a = self.entries[ia * da + ja];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for ib in 0..db {
                    for jb in 0..db {
                        out.entries[(ia * db + ib) * d + (ja * db + jb)] =
                            a * other.entries[ib * db + jb];
                    }
                }
            }
        }
        out
    }

    /// Largest modulus of `A - A†` over all entries.
    pub fn hermiticity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let gap = self.entries[i * d + j] - self.entries[j * d + i].conj();
                worst = worst.max(libm::sqrt(gap.norm_sqr()));
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Largest absolute imaginary part over all entries.
    pub fn max_imag(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, e| m.max(e.im.abs()))
    }

    /// Eigenvalues, ascending, for a Hermitian matrix. Computed through
    /// the real symmetric doubling `[[Re, -Im], [Im, Re]]`, whose
    /// spectrum is that of the matrix with every eigenvalue doubled up.
    fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let d = self.dim;
        let mut real = vec![vec![0.0; 2 * d]; 2 * d];
        for i in 0..d {
            for j in 0..d {
                let e = self.entries[i * d + j];
                real[i][j] = e.re;
                real[i][j + d] = -e.im;
                real[i + d][j] = e.im;
                real[i + d][j + d] = e.re;
            }
        }
        let doubled = linalg::symmetric_eigenvalues(&real);
        doubled.into_iter().step_by(2).collect()
    }
}

/// The Pauli x matrix.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).expect("fixed shape")
}

/// The Pauli y matrix.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_parts(2, &[0.0; 4], &[0.0, -1.0, 1.0, 0.0]).expect("fixed shape")
}

/// The Pauli z matrix.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).expect("fixed shape")
}

/// A density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<DensityOperator> {
        let hermitian = matrix.hermiticity_deviation();
        if hermitian > tol::EQUALITY {
            return Err(Error::NotHermitian {
                deviation: hermitian,
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol::EQUALITY {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let eigenvalues = matrix.hermitian_eigenvalues();
        if let Some(&smallest) = eigenvalues.first() {
            if smallest < -tol::EQUALITY {
                return Err(Error::NegativeEigenvalue { value: smallest });
            }
        }
        Ok(DensityOperator { matrix })
    }

    /// The maximally mixed state `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<DensityOperator> {
        if dim == 0 {
            return Err(Error::InvalidCount {
                what: "Hilbert space dimension",
                got: 0,
                min: 1,
            });
        }
        let scale = Complex64::new(1.0 / dim as f64, 0.0);
        DensityOperator::new(ComplexMatrix::identity(dim).scale(scale))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    /// Tensor product of two density operators.
    pub fn kron(&self, other: &DensityOperator) -> DensityOperator {
        DensityOperator {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.matrix.hermitian_eigenvalues()
    }
}

/// A projective measurement: pairwise orthogonal idempotent Hermitian
/// projectors summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveTest {
    projectors: Vec<ComplexMatrix>,
}

impl ProjectiveTest {
    pub fn new(projectors: Vec<ComplexMatrix>) -> Result<ProjectiveTest> {
        if projectors.is_empty() {
            return Err(Error::InvalidCount {
                what: "projector count",
                got: 0,
                min: 1,
            });
        }
        let dim = projectors[0].dim;
        for (i, p) in projectors.iter().enumerate() {
            if p.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim,
                });
            }
            let hermitian = p.hermiticity_deviation();
            if hermitian > tol::EQUALITY {
                return Err(Error::NotHermitian {
                    deviation: hermitian,
                });
            }
            let idempotent = matrix_gap(&p.mul(p), p);
            if idempotent > tol::EQUALITY {
                return Err(Error::NotIdempotent {
                    projector: i,
                    deviation: idempotent,
                });
            }
        }
        for i in 0..projectors.len() {
            for j in (i + 1)..projectors.len() {
                let product = projectors[i].mul(&projectors[j]);
                let gap = matrix_gap(&product, &ComplexMatrix::zeros(dim));
                if gap > tol::EQUALITY {
                    return Err(Error::NotOrthogonal {
                        first: i,
                        second: j,
                        deviation: gap,
                    });
                }
            }
        }
        let mut sum = ComplexMatrix::zeros(dim);
        for p in &projectors {
            sum = sum.add(p);
        }
        let complete = matrix_gap(&sum, &ComplexMatrix::identity(dim));
        if complete > tol::EQUALITY {
            return Err(Error::IncompleteTest {
                deviation: complete,
            });
        }
        Ok(ProjectiveTest { projectors })
    }

    /// The measurement in the standard basis of dimension `dim`.
    pub fn computational_basis(dim: usize) -> Result<ProjectiveTest> {
        if dim == 0 {
            return Err(Error::InvalidCount {
                what: "Hilbert space dimension",
                got: 0,
                min: 1,
            });
        }
        let projectors = (0..dim)
            .map(|i| {
                let mut p = ComplexMatrix::zeros(dim);
                p.set(i, i, Complex64::new(1.0, 0.0));
                p
            })
            .collect();
        ProjectiveTest::new(projectors)
    }

    /// The two-outcome qubit measurement along the Bloch axis
    /// `(nx, ny, nz)`: projectors `(I ± n·σ) / 2`. The axis must be a
    /// unit vector or the projectors fail idempotence.
    pub fn qubit_axis(nx: f64, ny: f64, nz: f64) -> Result<ProjectiveTest> {
        let half = Complex64::new(0.5, 0.0);
        let direction = pauli_x()
            .scale(Complex64::new(nx, 0.0))
            .add(&pauli_y().scale(Complex64::new(ny, 0.0)))
            .add(&pauli_z().scale(Complex64::new(nz, 0.0)));
        let plus = ComplexMatrix::identity(2).add(&direction).scale(half);
        let minus = ComplexMatrix::identity(2)
            .add(&direction.scale(Complex64::new(-1.0, 0.0)))
            .scale(half);
        ProjectiveTest::new(vec![plus, minus])
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn outcome_count(&self) -> usize {
        self.projectors.len()
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim
    }
}

/// Largest entrywise modulus of `a - b`.
fn matrix_gap(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.entries
        .iter()
        .zip(&b.entries)
        .fold(0.0f64, |m, (x, y)| m.max(libm::sqrt((x - y).norm_sqr())))
}

/// Born-rule outcome probabilities of a projective test on a state.
pub fn born(rho: &DensityOperator, test: &ProjectiveTest) -> Result<Vec<f64>> {
    if test.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: test.dim(),
        });
    }
    Ok(test
        .projectors
        .iter()
        .map(|p| trace_product(p, &rho.matrix).re.clamp(0.0, 1.0))
        .collect())
}

/// `Tr(a b)` without forming the product matrix.
fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let d = a.dim;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            sum += a.entries[i * d + j] * b.entries[j * d + i];
        }
    }
    sum
}

/// Number of `local`-dimensional factors in a space of dimension `dim`.
fn factor_count(dim: usize, local: usize) -> Result<usize> {
    if local < 2 {
        return Err(Error::InvalidCount {
            what: "local dimension",
            got: local,
            min: 2,
        });
    }
    let mut n = 0usize;
    let mut size = 1usize;
    while size < dim {
        size = size.saturating_mul(local);
        n += 1;
    }
    if size != dim || n == 0 {
        return Err(Error::NotPowerDimension { dim, local });
    }
    Ok(n)
}

/// Partial trace over the listed systems of a state on `n` copies of a
/// `local_dim`-dimensional system. `discard` must be strictly increasing
/// and leave at least one system.
pub fn partial_trace(
    rho: &DensityOperator,
    local_dim: usize,
    discard: &[usize],
) -> Result<DensityOperator> {
    let n = factor_count(rho.dim(), local_dim)?;
    if discard.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::SystemsNotIncreasing);
    }
    if let Some(&system) = discard.iter().find(|&&s| s >= n) {
        return Err(Error::UnknownSystem { system, count: n });
    }
    let keep: Vec<usize> = (0..n).filter(|s| !discard.contains(s)).collect();
    if keep.is_empty() {
        return Err(Error::InvalidCount {
            what: "kept system count",
            got: 0,
            min: 1,
        });
    }
    let full_dims = vec![local_dim; n];
    let full_strides = index::strides(&full_dims);
    let keep_dims = vec![local_dim; keep.len()];
    let keep_strides = index::strides(&keep_dims);
    let trace_dims = vec![local_dim; discard.len()];
    let out_dim: usize = keep_dims.iter().product();
    let mut out = ComplexMatrix::zeros(out_dim);
    index::for_each(&keep_dims, |row| {
        let row = row.to_vec();
        index::for_each(&keep_dims, |col| {
            let mut sum = Complex64::new(0.0, 0.0);
            index::for_each(&trace_dims, |traced| {
                let mut full_row = vec![0usize; n];
                let mut full_col = vec![0usize; n];
                for (slot, &system) in keep.iter().enumerate() {
                    full_row[system] = row[slot];
                    full_col[system] = col[slot];
                }
                for (slot, &system) in discard.iter().enumerate() {
                    full_row[system] = traced[slot];
                    full_col[system] = traced[slot];
                }
                let r = index::flat(&full_row, &full_strides);
                let c = index::flat(&full_col, &full_strides);
                sum += rho.matrix.entries[r * rho.dim() + c];
            });
            let flat_row = index::flat(&row, &keep_strides);
            let flat_col = index::flat(col, &keep_strides);
            out.entries[flat_row * out_dim + flat_col] = sum;
        });
    });
    DensityOperator::new(out)
}

/// Checks invariance of a multipartite density operator under permuting
/// its `local_dim`-dimensional factors, within `tol`. As in the
/// test-space check, adjacent transpositions generate everything.
pub fn is_symmetric_quantum(
    rho: &DensityOperator,
    local_dim: usize,
    tol: f64,
) -> Result<SymmetryCheck> {
    let n = factor_count(rho.dim(), local_dim)?;
    let dims = vec![local_dim; n];
    let strides = index::strides(&dims);
    let d = rho.dim();
    let mut deviation = 0.0f64;
    for k in 0..n.saturating_sub(1) {
        index::for_each(&dims, |row| {
            let row = row.to_vec();
            let mut swapped_row = row.clone();
            swapped_row.swap(k, k + 1);
            index::for_each(&dims, |col| {
                let mut swapped_col = col.to_vec();
                swapped_col.swap(k, k + 1);
                let original = rho.matrix.entries
                    [index::flat(&row, &strides) * d + index::flat(col, &strides)];
                let permuted = rho.matrix.entries
                    [index::flat(&swapped_row, &strides) * d + index::flat(&swapped_col, &strides)];
                let gap = libm::sqrt((original - permuted).norm_sqr());
                if gap > deviation {
                    deviation = gap;
                }
            });
        });
    }
    Ok(SymmetryCheck {
        symmetric: deviation <= tol,
        deviation,
    })
}

/// The test space of a finite list of projective measurements on one
/// system: outcome `m{t}o{p}` is projector `p` of measurement `t`.
pub fn measurement_space(tests: &[ProjectiveTest]) -> Result<TestSpace> {
    if tests.is_empty() {
        return Err(Error::InvalidCount {
            what: "measurement count",
            got: 0,
            min: 1,
        });
    }
    let dim = tests[0].dim();
    for t in tests {
        if t.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: t.dim(),
            });
        }
    }
    let mut labels: Vec<String> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (t, test) in tests.iter().enumerate() {
        let start = labels.len();
        for p in 0..test.outcome_count() {
            labels.push(format!("m{t}o{p}"));
        }
        blocks.push((start..labels.len()).collect());
    }
    let space = TestSpace::new(labels, blocks);
    space.ensure_valid()?;
    Ok(space)
}

fn embed_detail(
    rho: &DensityOperator,
    local_dim: usize,
    tests: &[ProjectiveTest],
) -> Result<(JointState, f64)> {
    let n = factor_count(rho.dim(), local_dim)?;
    if n > limits::MAX_QUANTUM_SYSTEMS {
        return Err(Error::SizeLimitExceeded {
            what: "quantum system count",
            required: n,
            limit: limits::MAX_QUANTUM_SYSTEMS,
        });
    }
    for t in tests {
        if t.dim() != local_dim {
            return Err(Error::DimensionMismatch {
                expected: local_dim,
                got: t.dim(),
            });
        }
    }
    let space = measurement_space(tests)?;
    let product = ProductSpace::power(&space, n)?;
    let total = product.entry_count()?;
    // Projector for each flattened outcome of the single-system space.
    let projectors: Vec<&ComplexMatrix> = tests.iter().flat_map(|t| t.projectors.iter()).collect();
    let dims = vec![space.outcome_count(); n];
    let mut tensor = Vec::with_capacity(total);
    let mut max_imag = 0.0f64;
    index::for_each(&dims, |tuple| {
        let mut joint = projectors[tuple[0]].clone();
        for &outcome in &tuple[1..] {
            joint = joint.kron(projectors[outcome]);
        }
        let p = trace_product(&joint, &rho.matrix);
        max_imag = max_imag.max(p.im.abs());
        tensor.push(p.re);
    });
    let js = JointState::new(product, tensor)?;
    Ok((js, max_imag))
}

/// The test-space state a density operator on `n` copies of a
/// `local_dim`-dimensional system induces on product measurements drawn
/// from `tests`: each entry is the Born probability of one projector
/// tuple. The result lives on the `n`-fold power of
/// [`measurement_space`].
pub fn embed_local(
    rho: &DensityOperator,
    local_dim: usize,
    tests: &[ProjectiveTest],
) -> Result<JointState> {
    embed_detail(rho, local_dim, tests).map(|(js, _)| js)
}

/// Everything the rebit demonstration measures.
#[derive(Debug, Clone)]
pub struct RebitReport {
    /// Number of copies in the deepest embedded level.
    pub n: usize,
    /// Size of the search grid over real product states.
    pub grid: usize,
    /// Largest imaginary part of the mixture's density matrix itself;
    /// exactly zero in exact arithmetic for even `n`.
    pub state_imaginary_part: f64,
    /// Whether the density operator is invariant under permuting copies.
    pub quantum_symmetric: bool,
    /// Entrywise gap between tracing out the last copy and the
    /// one-shorter mixture, at the density-operator level.
    pub quantum_marginal_gap: f64,
    /// Largest imaginary part met while embedding; should be noise.
    pub max_imaginary_part: f64,
    /// Whether every embedded level is permutation symmetric.
    pub symmetric: bool,
    /// Worst deviation across the exchangeability clauses of the
    /// embedded prefix.
    pub exchangeability_deviation: f64,
    /// Worst marginal-consistency deviation between adjacent levels.
    pub marginal_consistency: f64,
    /// Entrywise distance between the embedding of the mixture and the
    /// embedding of the maximally mixed product; zero means the real
    /// measurements cannot tell them apart.
    pub embedding_deviation: f64,
    /// Residual of recovering the embedded state as a mixture.
    pub recovery_residual: f64,
    /// Recovered weight on the embedded maximally mixed state.
    pub recovered_mixed_weight: f64,
    /// `Tr((σy ⊗ σy) ω₂)` for the two-copy reduction of the mixture.
    pub correlator: f64,
    /// Largest y-y correlator over the grid of real product states.
    pub best_separable_correlator: f64,
    /// `correlator - best_separable_correlator`.
    pub gap: f64,
}

/// Builds the rebit counterexample and measures it end to end.
///
/// The state is the equal mixture of `n`-fold products of the two
/// y-eigenstates `(I ± σy) / 2`. Restricted to the real measurements
/// (the x and z axes) its embedding is exchangeable and indistinguishable
/// from the maximally mixed product, and mixture recovery indeed returns
/// the point mass on the maximally mixed state. Yet its two-copy y-y
/// correlator equals one, while every real product state reaches zero:
/// the underlying quantum state is not a mixture of products of rebit
/// states, so exchangeability alone cannot force a product-mixture form
/// once the model is squeezed into a smaller theory.
///
/// `n` must be even (odd products of y-eigenstates embed differently)
/// and at least 2; `grid` controls the separable search and must be at
/// least 8.
pub fn rebit_counterexample(n: usize, grid: usize) -> Result<RebitReport> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::EvenPowerRequired { n });
    }
    if n > limits::MAX_QUANTUM_SYSTEMS {
        return Err(Error::SizeLimitExceeded {
            what: "quantum system count",
            required: n,
            limit: limits::MAX_QUANTUM_SYSTEMS,
        });
    }
    const MIN_GRID: usize = 8;
    if grid < MIN_GRID {
        return Err(Error::GridTooCoarse {
            grid,
            min: MIN_GRID,
        });
    }

    let tests = [
        ProjectiveTest::qubit_axis(1.0, 0.0, 0.0)?,
        ProjectiveTest::qubit_axis(0.0, 0.0, 1.0)?,
    ];
    let half = Complex64::new(0.5, 0.0);
    let plus = DensityOperator::new(ComplexMatrix::identity(2).add(&pauli_y()).scale(half))?;
    let minus = DensityOperator::new(
        ComplexMatrix::identity(2)
            .add(&pauli_y().scale(Complex64::new(-1.0, 0.0)))
            .scale(half),
    )?;

    // Level k: the equal mixture of k-fold products of the y-eigenstates.
    let mixture_power = |k: usize| -> Result<DensityOperator> {
        let mut plus_power = plus.matrix().clone();
        let mut minus_power = minus.matrix().clone();
        for _ in 1..k {
            plus_power = plus_power.kron(plus.matrix());
            minus_power = minus_power.kron(minus.matrix());
        }
        DensityOperator::new(plus_power.add(&minus_power).scale(half))
    };

    // Density-operator-level exchangeability evidence.
    let deepest_density = mixture_power(n)?;
    let state_imaginary_part = deepest_density.matrix().max_imag();
    let quantum_symmetric = is_symmetric_quantum(&deepest_density, 2, tol::EQUALITY)?.symmetric;
    let quantum_marginal_gap = matrix_gap(
        partial_trace(&deepest_density, 2, &[n - 1])?.matrix(),
        mixture_power(n - 1)?.matrix(),
    );

    let mut max_imag = 0.0f64;
    let mut levels = Vec::with_capacity(n);
    for k in 1..=n {
        let (js, imag) = embed_detail(&mixture_power(k)?, 2, &tests)?;
        max_imag = max_imag.max(imag);
        levels.push(js);
    }
    let deepest = levels.last().expect("n >= 2").clone();
    let prefix = SequencePrefix::new(levels)?;
    let report = check_exchangeable(&prefix, tol::EQUALITY);
    let symmetric = report
        .checks
        .iter()
        .filter(|c| c.clause == Clause::Symmetry)
        .all(|c| c.pass);
    let marginal_consistency = report
        .checks
        .iter()
        .filter(|c| c.clause == Clause::MarginalConsistency)
        .fold(0.0f64, |m, c| m.max(c.deviation));

    // The punchline, first half: the embedding equals that of the
    // maximally mixed product.
    let mixed = DensityOperator::maximally_mixed(2)?;
    let mut mixed_power = mixed.matrix().clone();
    for _ in 1..n {
        mixed_power = mixed_power.kron(mixed.matrix());
    }
    let (mixed_js, _) = embed_detail(&DensityOperator::new(mixed_power)?, 2, &tests)?;
    let embedding_deviation = deepest
        .tensor()
        .iter()
        .zip(mixed_js.tensor())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));

    let mixed_single = embed_local(&mixed, 2, &tests)?
        .as_single_state()
        .expect("single system");
    let options = RecoverOptions {
        extra_support: vec![mixed_single.clone()],
        ..RecoverOptions::default()
    };
    let recovery = recover_mixture(&deepest, &options)?;
    let recovered_mixed_weight = recovery
        .mixture
        .components()
        .iter()
        .find(|c| c.state().approx_eq(&mixed_single, tol::EQUALITY))
        .map(|c| c.weight())
        .unwrap_or(0.0);

    // Second half: the y-y correlator separates the mixture from every
    // mixture of real product states.
    let two_copy = if n == 2 {
        mixture_power(2)?
    } else {
        let discard: Vec<usize> = (2..n).collect();
        partial_trace(&mixture_power(n)?, 2, &discard)?
    };
    let yy = pauli_y().kron(&pauli_y());
    let correlator = trace_product(&yy, two_copy.matrix()).re;

    // Real product states: the Bloch x-z circle plus the center.
    let mut single_correlators = Vec::with_capacity(grid + 1);
    for step in 0..grid {
        let angle = core::f64::consts::TAU * step as f64 / grid as f64;
        let state = DensityOperator::new(
            ComplexMatrix::identity(2)
                .add(&pauli_x().scale(Complex64::new(libm::cos(angle), 0.0)))
                .add(&pauli_z().scale(Complex64::new(libm::sin(angle), 0.0)))
                .scale(half),
        )?;
        single_correlators.push(trace_product(&pauli_y(), state.matrix()).re);
    }
    single_correlators.push(trace_product(&pauli_y(), mixed.matrix()).re);
    let mut best_separable = f64::NEG_INFINITY;
    for &a in &single_correlators {
        for &b in &single_correlators {
            best_separable = best_separable.max(a * b);
        }
    }

    Ok(RebitReport {
        n,
        grid,
        state_imaginary_part,
        quantum_symmetric,
        quantum_marginal_gap,
        max_imaginary_part: max_imag,
        symmetric,
        exchangeability_deviation: report.max_deviation(),
        marginal_consistency,
        embedding_deviation,
        recovery_residual: recovery.residual,
        recovered_mixed_weight,
        correlator,
        best_separable_correlator: best_separable,
        gap: correlator - best_separable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composite::direct_product;

    fn pure_z0() -> DensityOperator {
        DensityOperator::new(ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.0]).unwrap()).unwrap()
    }

    #[test]
    fn matrix_algebra_basics() {
        let x = pauli_x();
        let y = pauli_y();
        let z = pauli_z();
        // xy = iz, the standard algebra.
        let xy = x.mul(&y);
        let iz = z.scale(Complex64::new(0.0, 1.0));
        assert!(matrix_gap(&xy, &iz) < 1e-15);
        assert!((x.trace().re).abs() < 1e-15);
        assert!(x.is_hermitian(0.0) && y.is_hermitian(0.0) && z.is_hermitian(0.0));
        assert_eq!(y.dagger(), y);
        let kron = x.kron(&z);
        assert_eq!(kron.dim(), 4);
        assert_eq!(kron.get(0, 2), Complex64::new(1.0, 0.0));
        assert_eq!(kron.get(1, 3), Complex64::new(-1.0, 0.0));
        assert!(matches!(
            ComplexMatrix::new(2, vec![Complex64::new(1.0, 0.0); 3]),
            Err(Error::TensorShapeMismatch { .. })
        ));
    }

    #[test]
    fn density_operator_validation() {
        assert!(DensityOperator::maximally_mixed(4).is_ok());
        assert!(matches!(
            DensityOperator::new(ComplexMatrix::from_real(2, &[1.0, 0.5, 0.0, 0.0]).unwrap()),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            DensityOperator::new(ComplexMatrix::identity(2)),
            Err(Error::TraceNotOne { .. })
        ));
        assert!(matches!(
            DensityOperator::new(ComplexMatrix::from_real(2, &[1.5, 0.0, 0.0, -0.5]).unwrap()),
            Err(Error::NegativeEigenvalue { .. })
        ));
        let eigen = pure_z0().eigenvalues();
        assert!((eigen[0] - 0.0).abs() < 1e-12 && (eigen[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projective_test_validation() {
        assert!(ProjectiveTest::computational_basis(3).is_ok());
        assert!(ProjectiveTest::qubit_axis(0.0, 1.0, 0.0).is_ok());
        // A non-unit axis gives non-idempotent candidates.
        assert!(matches!(
            ProjectiveTest::qubit_axis(0.5, 0.0, 0.5),
            Err(Error::NotIdempotent { .. })
        ));
        // Two copies of the same projector are not orthogonal.
        let p = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            ProjectiveTest::new(vec![p.clone(), p.clone()]),
            Err(Error::NotOrthogonal { .. })
        ));
        // A lone projector does not complete the identity.
        assert!(matches!(
            ProjectiveTest::new(vec![p]),
            Err(Error::IncompleteTest { .. })
        ));
    }

    #[test]
    fn born_rule_on_known_states() {
        let z = ProjectiveTest::qubit_axis(0.0, 0.0, 1.0).unwrap();
        let x = ProjectiveTest::qubit_axis(1.0, 0.0, 0.0).unwrap();
        let rho = pure_z0();
        let pz = born(&rho, &z).unwrap();
        assert!((pz[0] - 1.0).abs() < 1e-12 && pz[1].abs() < 1e-12);
        let px = born(&rho, &x).unwrap();
        assert!((px[0] - 0.5).abs() < 1e-12 && (px[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_recovers_factors() {
        let a = pure_z0();
        let b = DensityOperator::new(ComplexMatrix::from_real(2, &[0.25, 0.0, 0.0, 0.75]).unwrap())
            .unwrap();
        let ab = a.kron(&b);
        let left = partial_trace(&ab, 2, &[1]).unwrap();
        assert!(matrix_gap(left.matrix(), a.matrix()) < 1e-12);
        let right = partial_trace(&ab, 2, &[0]).unwrap();
        assert!(matrix_gap(right.matrix(), b.matrix()) < 1e-12);
        assert!((left.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(matches!(
            partial_trace(&ab, 2, &[0, 1]),
            Err(Error::InvalidCount { .. })
        ));
        assert!(matches!(
            partial_trace(&ab, 2, &[2]),
            Err(Error::UnknownSystem { .. })
        ));
        // Dimension 2 splits into no whole number of 3-level factors.
        assert!(matches!(
            partial_trace(&a, 3, &[0]),
            Err(Error::NotPowerDimension { .. })
        ));
    }

    #[test]
    fn quantum_symmetry_check() {
        let a = pure_z0();
        let b = DensityOperator::new(ComplexMatrix::from_real(2, &[0.25, 0.0, 0.0, 0.75]).unwrap())
            .unwrap();
        let sym = is_symmetric_quantum(&a.kron(&a), 2, 1e-12).unwrap();
        assert!(sym.symmetric);
        let asym = is_symmetric_quantum(&a.kron(&b), 2, 1e-12).unwrap();
        assert!(!asym.symmetric);
        assert!(asym.deviation > 0.7);
    }

    #[test]
    fn embedding_matches_born_probabilities() {
        let tests = [
            ProjectiveTest::qubit_axis(0.0, 0.0, 1.0).unwrap(),
            ProjectiveTest::qubit_axis(1.0, 0.0, 0.0).unwrap(),
        ];
        let rho = pure_z0();
        let js = embed_local(&rho, 2, &tests).unwrap();
        let state = js.as_single_state().unwrap();
        assert!((state.probability(0) - 1.0).abs() < 1e-12);
        assert!((state.probability(2) - 0.5).abs() < 1e-12);
        // Product states embed to direct products.
        let b = DensityOperator::new(ComplexMatrix::from_real(2, &[0.25, 0.0, 0.0, 0.75]).unwrap())
            .unwrap();
        let joint = embed_local(&rho.kron(&b), 2, &tests).unwrap();
        let separate = direct_product(&[
            state,
            embed_local(&b, 2, &tests)
                .unwrap()
                .as_single_state()
                .unwrap(),
        ])
        .unwrap();
        assert!(joint.approx_eq(&separate, 1e-12));
    }

    #[test]
    fn measurement_space_shape() {
        let tests = [
            ProjectiveTest::qubit_axis(1.0, 0.0, 0.0).unwrap(),
            ProjectiveTest::qubit_axis(0.0, 0.0, 1.0).unwrap(),
        ];
        let space = measurement_space(&tests).unwrap();
        assert_eq!(space.outcome_count(), 4);
        assert_eq!(space.tests(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(space.label(2), "m1o0");
    }

    #[test]
    fn rebit_demo_exhibits_the_gap() {
        let report = rebit_counterexample(2, 16).unwrap();
        // The mixture itself is real, symmetric, and marginal-consistent.
        assert!(report.state_imaginary_part < 1e-15);
        assert!(report.quantum_symmetric);
        assert!(report.quantum_marginal_gap < 1e-15);
        assert!(report.max_imaginary_part < 1e-12);
        assert!(report.symmetric);
        assert!(report.exchangeability_deviation < 1e-9);
        assert!(report.marginal_consistency < 1e-12);
        // Real measurements cannot see the difference...
        assert!(report.embedding_deviation < 1e-12);
        assert!(report.recovery_residual < 1e-7);
        assert!((report.recovered_mixed_weight - 1.0).abs() < 1e-7);
        // ...but the y-y correlator can.
        assert!((report.correlator - 1.0).abs() < 1e-12);
        assert!(report.best_separable_correlator.abs() < 1e-12);
        assert!((report.gap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rebit_demo_validates_arguments() {
        assert!(matches!(
            rebit_counterexample(3, 16),
            Err(Error::EvenPowerRequired { n: 3 })
        ));
        assert!(matches!(
            rebit_counterexample(0, 16),
            Err(Error::EvenPowerRequired { n: 0 })
        ));
        assert!(matches!(
            rebit_counterexample(2, 4),
            Err(Error::GridTooCoarse { grid: 4, min: 8 })
        ));
        assert!(matches!(
            rebit_counterexample(12, 16),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }
}
