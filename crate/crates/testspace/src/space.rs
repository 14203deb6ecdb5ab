//! Test spaces: finite outcome sets covered by tests.
//!
//! A [`TestSpace`] lists its outcomes once and identifies each test by the
//! indices of its member outcomes. Outcomes may belong to several tests;
//! that sharing is exactly what distinguishes one test space from a plain
//! family of independent experiments, because a state must give a shared
//! outcome the same probability in every test containing it.
//!
//! Construction never fails: [`TestSpace::validate`] reports every
//! structural defect at once as [`Violation`] values, and operations that
//! need a well-formed space check first. Two canonical families are built
//! in, classical spaces (one test) and process spaces (one test per input,
//! pairwise disjoint), plus a seven-outcome example with three overlapping
//! tests that exercises everything the simple families cannot.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A structural defect found by [`TestSpace::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The space declares no tests at all.
    NoTests,
    /// Test `test` has no members.
    EmptyTest { test: usize },
    /// Test `test` lists outcome `outcome` more than once.
    RepeatedMember { test: usize, outcome: usize },
    /// Test `test` refers to outcome index `index`, which does not exist.
    MemberOutOfRange { test: usize, index: usize },
    /// Outcome `outcome` belongs to no test.
    UncoveredOutcome { outcome: usize },
    /// Outcomes `first` and `second` share the same label.
    DuplicateLabel { first: usize, second: usize },
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Violation::NoTests => write!(f, "space declares no tests"),
            Violation::EmptyTest { test } => write!(f, "test {test} is empty"),
            Violation::RepeatedMember { test, outcome } => {
                write!(f, "test {test} repeats outcome {outcome}")
            }
            Violation::MemberOutOfRange { test, index } => {
                write!(f, "test {test} refers to missing outcome index {index}")
            }
            Violation::UncoveredOutcome { outcome } => {
                write!(f, "outcome {outcome} belongs to no test")
            }
            Violation::DuplicateLabel { first, second } => {
                write!(f, "outcomes {first} and {second} share a label")
            }
        }
    }
}

/// A finite set of labelled outcomes and the tests that cover them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSpace {
    outcomes: Vec<String>,
    tests: Vec<Vec<usize>>,
}

impl TestSpace {
    /// Builds a space from outcome labels and tests given as index lists.
    ///
    /// Nothing is checked here; call [`TestSpace::validate`] to collect
    /// structural defects.
    pub fn new(outcomes: Vec<String>, tests: Vec<Vec<usize>>) -> TestSpace {
        TestSpace { outcomes, tests }
    }

    /// The classical space on `d` outcomes: a single test `{x1, .., xd}`.
    pub fn classical(d: usize) -> Result<TestSpace> {
        if d == 0 {
            return Err(Error::InvalidCount {
                what: "classical outcome count",
                got: 0,
                min: 1,
            });
        }
        let outcomes = (1..=d).map(|i| format!("x{i}")).collect();
        let tests = vec![(0..d).collect()];
        Ok(TestSpace { outcomes, tests })
    }

    /// The process space with `k` inputs and `d` outputs per input: one
    /// test per input `y`, holding the outcomes `(x, y)` for each output
    /// `x`. Tests are pairwise disjoint, so a state is a row of `k`
    /// unrelated distributions, which is what makes this the raw model of
    /// an unconstrained input-output process.
    pub fn process(d: usize, k: usize) -> Result<TestSpace> {
        if d == 0 {
            return Err(Error::InvalidCount {
                what: "process output count",
                got: 0,
                min: 1,
            });
        }
        if k == 0 {
            return Err(Error::InvalidCount {
                what: "process input count",
                got: 0,
                min: 1,
            });
        }
        let mut outcomes = Vec::with_capacity(d * k);
        let mut tests = Vec::with_capacity(k);
        for y in 1..=k {
            let start = outcomes.len();
            for x in 1..=d {
                outcomes.push(format!("x{x}y{y}"));
            }
            tests.push((start..start + d).collect());
        }
        Ok(TestSpace { outcomes, tests })
    }

    /// Seven outcomes `a..g` under three overlapping tests
    /// `{a,b,c,d}`, `{a,e,g}`, `{b,e,f}`.
    ///
    /// The overlaps force genuine constraints between tests: the state
    /// polytope is five dimensional rather than the nine dimensions three
    /// free distributions would have, which makes this the standard
    /// smoke test for everything downstream of plain classical spaces.
    pub fn overlapping_example() -> TestSpace {
        let outcomes = ["a", "b", "c", "d", "e", "f", "g"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let tests = vec![vec![0, 1, 2, 3], vec![0, 4, 6], vec![1, 4, 5]];
        TestSpace { outcomes, tests }
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn tests(&self) -> &[Vec<usize>] {
        &self.tests
    }

    pub fn outcome_count(&self) -> usize {
        self.outcomes.len()
    }

    pub fn test_count(&self) -> usize {
        self.tests.len()
    }

    /// Label of outcome `i`; panics when out of range, as slices do.
    pub fn label(&self, outcome: usize) -> &str {
        &self.outcomes[outcome]
    }

    /// Index of the outcome carrying `label`, if any.
    pub fn outcome_index(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|l| l == label)
    }

    /// Collects every structural defect. An empty result means the space
    /// is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        if self.tests.is_empty() {
            violations.push(Violation::NoTests);
        }
        let mut covered = vec![false; self.outcomes.len()];
        for (t, test) in self.tests.iter().enumerate() {
            if test.is_empty() {
                violations.push(Violation::EmptyTest { test: t });
            }
            let mut seen = vec![false; self.outcomes.len()];
            for &member in test {
                if member >= self.outcomes.len() {
                    violations.push(Violation::MemberOutOfRange {
                        test: t,
                        index: member,
                    });
                    continue;
                }
                if seen[member] {
                    violations.push(Violation::RepeatedMember {
                        test: t,
                        outcome: member,
                    });
                }
                seen[member] = true;
                covered[member] = true;
            }
        }
        for (o, &is_covered) in covered.iter().enumerate() {
            if !is_covered {
                violations.push(Violation::UncoveredOutcome { outcome: o });
            }
        }
        for (i, label) in self.outcomes.iter().enumerate() {
            if let Some(j) = self.outcomes[..i].iter().position(|l| l == label) {
                violations.push(Violation::DuplicateLabel {
                    first: j,
                    second: i,
                });
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Errors with the full violation list when the space is malformed.
    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpace(violations))
        }
    }

    /// Greechie diagram of the space in Graphviz DOT, outcomes as nodes
    /// and each test as a chain of edges in one colour.
    ///
    /// The output is a pure function of the space, byte for byte, so it
    /// can be diffed across runs.
    pub fn greechie_dot(&self) -> Result<String> {
        self.ensure_valid()?;
        const PALETTE: [&str; 10] = [
            "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
            "#1f78b4", "#b2182b",
        ];
        let mut dot = String::new();
        dot.push_str("graph testspace {\n");
        dot.push_str("  layout=neato;\n");
        dot.push_str("  node [shape=circle, fontsize=12];\n");
        for (i, label) in self.outcomes.iter().enumerate() {
            let escaped = label.replace('\\', "\\\\").replace('"', "\\\"");
            dot.push_str(&format!("  o{i} [label=\"{escaped}\"];\n"));
        }
        for (t, test) in self.tests.iter().enumerate() {
            let colour = PALETTE[t % PALETTE.len()];
            for pair in test.windows(2) {
                dot.push_str(&format!(
                    "  o{} -- o{} [color=\"{colour}\"];\n",
                    pair[0], pair[1]
                ));
            }
        }
        dot.push_str("}\n");
        Ok(dot)
    }
}
