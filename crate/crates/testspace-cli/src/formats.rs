//! On-disk JSON documents and their conversions to library types.
//!
//! Every document that mentions a test space accepts either an inline
//! space object or a path string; paths are resolved relative to the
//! directory of the document that references them, so a bundle of files
//! can be moved around as a unit.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use testspace::composite::{JointState, ProductSpace};
use testspace::definetti::Mixture;
use testspace::quantum::{ComplexMatrix, DensityOperator};
use testspace::space::TestSpace;
use testspace::statespace::State;

/// A test space: distinct outcome labels plus tests as label subsets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub outcomes: Vec<String>,
    pub tests: Vec<Vec<String>>,
}

/// Either an inline space document or a path to one.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Path(String),
    Inline(SpaceDoc),
}

/// A single-system state over a referenced space.
#[derive(Debug, Clone, Deserialize)]
pub struct StateDoc {
    pub space: SpaceRef,
    pub probs: Vec<f64>,
}

/// A joint state: factor spaces plus the row-major probability tensor
/// (first system slowest).
#[derive(Debug, Clone, Deserialize)]
pub struct JointDoc {
    pub factors: Vec<SpaceRef>,
    pub tensor: Vec<f64>,
}

/// Input to `check-exchangeable`: either explicit levels (one joint
/// state per number of copies, shortest first) or a single joint state
/// whose lower levels are derived by marginalization.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PrefixDoc {
    Levels(Vec<JointDoc>),
    Single(JointDoc),
}

/// Candidate support for recovery: a plain list of states or a mixture
/// document whose weights are ignored.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SupportDoc {
    States(Vec<StateDoc>),
    Mixture(MixtureDoc),
}

impl SupportDoc {
    pub fn to_states(&self, base: &Path) -> Result<Vec<State>, String> {
        match self {
            SupportDoc::States(docs) => docs.iter().map(|d| d.to_state(base)).collect(),
            SupportDoc::Mixture(doc) => doc.to_states(base),
        }
    }
}

/// One weighted component of a mixture.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub weight: f64,
    pub probs: Vec<f64>,
}

/// A finite mixture of states over one space.
#[derive(Debug, Clone, Deserialize)]
pub struct MixtureDoc {
    pub space: SpaceRef,
    pub components: Vec<ComponentDoc>,
}

/// Frame export: member functionals as rows over the outcome set.
#[derive(Debug, Clone, Serialize)]
pub struct FrameDoc {
    pub d: usize,
    pub c: f64,
    pub members: Vec<Vec<f64>>,
}

/// Recovery report: residual, identifiability, and the mixture found.
#[derive(Debug, Clone, Serialize)]
pub struct RecoveryDoc {
    pub residual: f64,
    pub unique: bool,
    pub iterations: usize,
    pub components: Vec<ComponentDoc>,
}

/// A density operator as real and imaginary square matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityDoc {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// Reads and parses one JSON document.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

/// The directory a document's relative references resolve against.
pub fn base_dir(path: &Path) -> PathBuf {
    path.parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."))
}

impl SpaceDoc {
    /// Builds the library space, mapping test member labels to outcome
    /// indices. Fails on labels that name no outcome; structural
    /// validity is checked separately so that `validate` can report it.
    pub fn to_space(&self) -> Result<TestSpace, String> {
        let index_of = |label: &str| self.outcomes.iter().position(|o| o == label);
        let mut tests = Vec::with_capacity(self.tests.len());
        for (t, members) in self.tests.iter().enumerate() {
            let mut indices = Vec::with_capacity(members.len());
            for label in members {
                let Some(i) = index_of(label) else {
                    return Err(format!("test {t} references unknown outcome {label:?}"));
                };
                indices.push(i);
            }
            tests.push(indices);
        }
        Ok(TestSpace::new(self.outcomes.clone(), tests))
    }

    pub fn from_space(space: &TestSpace) -> SpaceDoc {
        SpaceDoc {
            outcomes: space.outcomes().to_vec(),
            tests: space
                .tests()
                .iter()
                .map(|test| test.iter().map(|&o| space.label(o).to_string()).collect())
                .collect(),
        }
    }
}

impl SpaceRef {
    /// Resolves the reference to a valid test space. `base` is the
    /// directory of the referencing document.
    pub fn resolve(&self, base: &Path) -> Result<TestSpace, String> {
        let doc = match self {
            SpaceRef::Inline(doc) => doc.clone(),
            SpaceRef::Path(path) => read_json::<SpaceDoc>(&base.join(path))?,
        };
        let space = doc.to_space()?;
        space
            .ensure_valid()
            .map_err(|e| format!("invalid test space: {e}"))?;
        Ok(space)
    }
}

impl StateDoc {
    pub fn to_state(&self, base: &Path) -> Result<State, String> {
        let space = self.space.resolve(base)?;
        State::new(space, self.probs.clone()).map_err(|e| format!("invalid state: {e}"))
    }
}

impl JointDoc {
    pub fn to_joint(&self, base: &Path) -> Result<JointState, String> {
        let factors: Result<Vec<TestSpace>, String> =
            self.factors.iter().map(|f| f.resolve(base)).collect();
        let product =
            ProductSpace::new(factors?).map_err(|e| format!("invalid product space: {e}"))?;
        JointState::new(product, self.tensor.clone())
            .map_err(|e| format!("invalid joint state: {e}"))
    }
}

impl MixtureDoc {
    pub fn to_mixture(&self, base: &Path) -> Result<Mixture, String> {
        let space = self.space.resolve(base)?;
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let state = State::new(space.clone(), c.probs.clone())
                .map_err(|e| format!("invalid component state: {e}"))?;
            components.push((c.weight, state));
        }
        Mixture::new(components).map_err(|e| format!("invalid mixture: {e}"))
    }

    /// The component states alone, for seeding recovery supports.
    pub fn to_states(&self, base: &Path) -> Result<Vec<State>, String> {
        let space = self.space.resolve(base)?;
        self.components
            .iter()
            .map(|c| {
                State::new(space.clone(), c.probs.clone())
                    .map_err(|e| format!("invalid support state: {e}"))
            })
            .collect()
    }
}

impl RecoveryDoc {
    pub fn from_mixture(mixture: &Mixture, residual: f64, unique: bool, iterations: usize) -> Self {
        RecoveryDoc {
            residual,
            unique,
            iterations,
            components: mixture
                .components()
                .iter()
                .map(|c| ComponentDoc {
                    weight: c.weight(),
                    probs: c.state().probs().to_vec(),
                })
                .collect(),
        }
    }
}

impl DensityDoc {
    /// Validates through the library constructor, so Hermiticity, unit
    /// trace, and positivity are enforced on load.
    // The binary currently only writes densities; loading is kept for
    // the format's contract and covered by the tests below.
    #[allow(dead_code)]
    pub fn to_operator(&self) -> Result<DensityOperator, String> {
        let d = self.dim;
        if self.re.len() != d || self.im.len() != d {
            return Err(format!("density matrix is not {d} x {d}"));
        }
        let mut re = Vec::with_capacity(d * d);
        let mut im = Vec::with_capacity(d * d);
        for (r, i) in self.re.iter().zip(&self.im) {
            if r.len() != d || i.len() != d {
                return Err(format!("density matrix is not {d} x {d}"));
            }
            re.extend_from_slice(r);
            im.extend_from_slice(i);
        }
        let matrix = ComplexMatrix::from_parts(d, &re, &im)
            .map_err(|e| format!("invalid density matrix: {e}"))?;
        DensityOperator::new(matrix).map_err(|e| format!("invalid density operator: {e}"))
    }

    pub fn from_operator(rho: &DensityOperator) -> DensityDoc {
        let d = rho.dim();
        let mut re = vec![vec![0.0; d]; d];
        let mut im = vec![vec![0.0; d]; d];
        for row in 0..d {
            for col in 0..d {
                let z = rho.matrix().get(row, col);
                re[row][col] = z.re;
                im[row][col] = z.im;
            }
        }
        DensityDoc { dim: d, re, im }
    }
}
