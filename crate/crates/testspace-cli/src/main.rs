//! Command-line interface over the test-space library.
//!
//! Exit codes: 0 when the command succeeds and every check passes, 1
//! when a check fails (signalling detected, exchangeability clause
//! violated, demo expectation missed, posterior undefined), 2 on usage
//! errors or files that do not exist, parse, or validate.

mod formats;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use formats::{
    base_dir, read_json, DensityDoc, FrameDoc, MixtureDoc, PrefixDoc, RecoveryDoc, SpaceDoc,
};
use testspace::composite::{
    check_nonsignalling, is_symmetric, marginal, pr_box, JointState, NonsignallingReport,
};
use testspace::definetti::{
    check_exchangeable, posterior_update, recover_mixture, Clause, ExchangeabilityReport,
    Observation, RecoverOptions, SequencePrefix,
};
use testspace::quantum::{pauli_y, rebit_counterexample, ComplexMatrix, DensityOperator};
use testspace::space::TestSpace;
use testspace::statespace::{build_frame, StatePolytope};
use testspace::{Complex64, Error};

#[derive(Parser)]
#[command(
    name = "testspace",
    version,
    about = "Finite test spaces: validation, frames, composition checks, mixture recovery",
    after_help = "Exit codes: 0 pass, 1 check failure, 2 usage or parse error."
)]
struct Cli {
    /// Emit machine-readable JSON reports instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Numeric tolerance for pass/fail decisions
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for sampled candidate supports
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a test-space file is structurally valid
    Validate { space: PathBuf },
    /// Print the dimension of the state polytope
    Dim { space: PathBuf },
    /// Build the informationally complete frame of a space
    Frame { space: PathBuf },
    /// Emit the Greechie diagram of a space in DOT format
    Greechie { space: PathBuf },
    /// Check a joint state for signalling between systems
    CheckNs { joint: PathBuf },
    /// Check exchangeability of a joint state or an explicit sequence
    /// of levels (clauses: 1 symmetry, 2 nonsignalling, 3 marginal
    /// consistency)
    CheckExchangeable { prefix: PathBuf },
    /// Recover a mixture of product powers from a symmetric joint state
    Recover {
        joint: PathBuf,
        /// Expected number of systems; mismatches are usage errors
        #[arg(long)]
        n: Option<usize>,
        /// Mixture file whose component states extend the candidate
        /// support beyond the polytope vertices
        #[arg(long)]
        support: Option<PathBuf>,
    },
    /// Update a mixture on observations given as TEST:OUTCOME, where
    /// TEST is a test index and OUTCOME an outcome label or index
    Posterior {
        mixture: PathBuf,
        #[arg(required = true)]
        observations: Vec<String>,
    },
    /// Run a built-in demonstration
    Demo {
        #[command(subcommand)]
        demo: DemoCommand,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// The nonsignalling, symmetric box that is no mixture of products
    PrBox,
    /// The real-amplitude pair whose exchangeable embedding defeats
    /// single-state mixture recovery
    Rebit {
        /// Number of copies (even, at least 2)
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Resolution of the separable-correlator search
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// The seven-outcome three-test overlapping space
    Fig1,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    match &cli.command {
        Command::Validate { space } => cmd_validate(cli, space),
        Command::Dim { space } => cmd_dim(cli, space),
        Command::Frame { space } => cmd_frame(cli, space),
        Command::Greechie { space } => cmd_greechie(cli, space),
        Command::CheckNs { joint } => cmd_check_ns(cli, joint),
        Command::CheckExchangeable { prefix } => cmd_check_exchangeable(cli, prefix),
        Command::Recover { joint, n, support } => cmd_recover(cli, joint, *n, support.as_deref()),
        Command::Posterior {
            mixture,
            observations,
        } => cmd_posterior(cli, mixture, observations),
        Command::Demo { demo } => match demo {
            DemoCommand::PrBox => demo_pr_box(cli),
            DemoCommand::Rebit { n, grid } => demo_rebit(cli, *n, *grid),
            DemoCommand::Fig1 => demo_fig1(cli),
        },
    }
}

/// Loads a space file and requires it to be structurally valid.
fn load_space(path: &Path) -> Result<TestSpace, String> {
    let doc: SpaceDoc = read_json(path)?;
    let space = doc.to_space()?;
    space
        .ensure_valid()
        .map_err(|e| format!("invalid test space: {e}"))?;
    Ok(space)
}

fn format_probs(probs: &[f64]) -> String {
    let inner: Vec<String> = probs.iter().map(|p| format!("{p:.6}")).collect();
    format!("[{}]", inner.join(", "))
}

fn clause_number(clause: Clause) -> usize {
    match clause {
        Clause::Symmetry => 1,
        Clause::Nonsignalling => 2,
        Clause::MarginalConsistency => 3,
    }
}

fn cmd_validate(cli: &Cli, path: &Path) -> Result<u8, String> {
    let doc: SpaceDoc = read_json(path)?;
    // Unknown labels and structural defects are what this verb reports,
    // so they are findings (exit 1), not usage errors.
    let space = match doc.to_space() {
        Ok(space) => space,
        Err(message) => {
            if cli.json {
                println!("{}", json!({ "valid": false, "violations": [message] }));
            } else {
                println!("invalid: {message}");
            }
            return Ok(1);
        }
    };
    let violations = space.validate();
    if violations.is_empty() {
        if cli.json {
            println!(
                "{}",
                json!({
                    "valid": true,
                    "outcomes": space.outcome_count(),
                    "tests": space.test_count(),
                })
            );
        } else {
            println!(
                "valid: {} outcomes, {} tests",
                space.outcome_count(),
                space.test_count()
            );
        }
        Ok(0)
    } else {
        let messages: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        if cli.json {
            println!("{}", json!({ "valid": false, "violations": messages }));
        } else {
            for message in &messages {
                println!("invalid: {message}");
            }
        }
        Ok(1)
    }
}

fn cmd_dim(cli: &Cli, path: &Path) -> Result<u8, String> {
    let space = load_space(path)?;
    match StatePolytope::analyze(&space) {
        Ok(polytope) => {
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "dimension": polytope.dimension(),
                        "outcomes": space.outcome_count(),
                        "tests": space.test_count(),
                    })
                );
            } else {
                println!(
                    "dimension: {} ({} outcomes, {} tests)",
                    polytope.dimension(),
                    space.outcome_count(),
                    space.test_count()
                );
            }
            Ok(0)
        }
        Err(Error::EmptyStateSpace) => {
            if cli.json {
                println!("{}", json!({ "dimension": null, "empty": true }));
            } else {
                println!("state polytope is empty: the tests admit no state");
            }
            Ok(1)
        }
        Err(e) => Err(format!("analysis failed: {e}")),
    }
}

fn cmd_frame(cli: &Cli, path: &Path) -> Result<u8, String> {
    let space = load_space(path)?;
    let frame = build_frame(&space).map_err(|e| format!("frame construction failed: {e}"))?;
    let doc = FrameDoc {
        d: frame.dimension(),
        c: frame.shift(),
        members: frame.members().to_vec(),
    };
    if cli.json {
        println!("{}", serde_json::to_string(&doc).expect("serializable"));
    } else {
        println!("frame: d = {}, shift c = {:.6}", doc.d, doc.c);
        for (i, member) in doc.members.iter().enumerate() {
            println!("  a_{} = {}", i + 1, format_probs(member));
        }
    }
    Ok(0)
}

fn cmd_greechie(cli: &Cli, path: &Path) -> Result<u8, String> {
    let space = load_space(path)?;
    let dot = space
        .greechie_dot()
        .map_err(|e| format!("diagram export failed: {e}"))?;
    if cli.json {
        println!("{}", json!({ "dot": dot }));
    } else {
        print!("{dot}");
    }
    Ok(0)
}

fn ns_report_json(report: &NonsignallingReport, tol: f64) -> serde_json::Value {
    json!({
        "pass": report.passes(tol),
        "tol": tol,
        "max_deviation": report.max_deviation(),
        "checks": report.checks.iter().map(|c| json!({
            "system": c.varied_system,
            "deviation": c.deviation,
            "tests": c.worst_tests.map(|(a, b)| vec![a, b]),
        })).collect::<Vec<_>>(),
    })
}

fn cmd_check_ns(cli: &Cli, path: &Path) -> Result<u8, String> {
    let doc: formats::JointDoc = read_json(path)?;
    let js = doc.to_joint(&base_dir(path))?;
    let report = check_nonsignalling(&js);
    let pass = report.passes(cli.tol);
    if cli.json {
        println!("{}", ns_report_json(&report, cli.tol));
    } else if pass {
        println!(
            "nonsignalling: PASS (max deviation {:.3e} <= tol {:.1e})",
            report.max_deviation(),
            cli.tol
        );
    } else {
        let worst = report.worst().expect("failing report has a worst split");
        let tests = worst
            .worst_tests
            .map(|(a, b)| format!(" between its tests {a} and {b}"))
            .unwrap_or_default();
        println!(
            "signalling: system {} moves the other systems' statistics{tests} \
             (deviation {:.3e} > tol {:.1e})",
            worst.varied_system, worst.deviation, cli.tol
        );
    }
    Ok(if pass { 0 } else { 1 })
}

fn exchangeability_json(report: &ExchangeabilityReport) -> serde_json::Value {
    json!({
        "pass": report.passes(),
        "tol": report.tol,
        "max_deviation": report.max_deviation(),
        "clauses": report.checks.iter().map(|c| json!({
            "copies": c.copies,
            "clause": clause_number(c.clause),
            "name": c.clause.to_string(),
            "deviation": c.deviation,
            "pass": c.pass,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_check_exchangeable(cli: &Cli, path: &Path) -> Result<u8, String> {
    let doc: PrefixDoc = read_json(path)?;
    let base = base_dir(path);
    let levels: Vec<JointState> = match &doc {
        PrefixDoc::Levels(docs) => docs
            .iter()
            .map(|d| d.to_joint(&base))
            .collect::<Result<_, _>>()?,
        PrefixDoc::Single(doc) => {
            // Derive the lower levels by marginalizing onto the leading
            // systems; a signalling state fails here, which is exactly
            // exchangeability clause 2.
            let js = doc.to_joint(&base)?;
            let mut levels = Vec::with_capacity(js.system_count());
            for k in 1..=js.system_count() {
                let keep: Vec<usize> = (0..k).collect();
                match marginal(&js, &keep) {
                    Ok(level) => levels.push(level),
                    Err(Error::SignallingState {
                        varied_system,
                        test_a,
                        test_b,
                        deviation,
                    }) => {
                        let message = format!(
                            "exchangeability clause 2 (nonsignalling): system {varied_system} \
                             signals between tests {test_a} and {test_b} \
                             (deviation {deviation:.3e})"
                        );
                        if cli.json {
                            println!("{}", json!({ "pass": false, "failure": message }));
                        } else {
                            println!("FAIL {message}");
                        }
                        return Ok(1);
                    }
                    Err(e) => return Err(format!("marginalization failed: {e}")),
                }
            }
            levels
        }
    };
    let prefix = SequencePrefix::new(levels).map_err(|e| format!("invalid level sequence: {e}"))?;
    let report = check_exchangeable(&prefix, cli.tol);
    if cli.json {
        println!("{}", exchangeability_json(&report));
    } else {
        for check in &report.checks {
            println!(
                "{} clause {} ({}) at n={}: deviation {:.3e}",
                if check.pass { "pass" } else { "FAIL" },
                clause_number(check.clause),
                check.clause,
                check.copies,
                check.deviation
            );
        }
        if let Some(worst) = report.worst_failure() {
            println!(
                "FAIL exchangeability clause {} ({}): deviation {:.3e} at n={} \
                 (tol {:.1e})",
                clause_number(worst.clause),
                worst.clause,
                worst.deviation,
                worst.copies,
                report.tol
            );
        } else {
            println!(
                "exchangeable: PASS through n={} (max deviation {:.3e} <= tol {:.1e})",
                prefix.max_copies(),
                report.max_deviation(),
                report.tol
            );
        }
    }
    Ok(if report.passes() { 0 } else { 1 })
}

fn cmd_recover(
    cli: &Cli,
    path: &Path,
    n: Option<usize>,
    support: Option<&Path>,
) -> Result<u8, String> {
    let doc: formats::JointDoc = read_json(path)?;
    let js = doc.to_joint(&base_dir(path))?;
    if let Some(expected) = n {
        if js.system_count() != expected {
            return Err(format!(
                "--n {expected} does not match the joint state's {} systems",
                js.system_count()
            ));
        }
    }
    let extra_support = match support {
        Some(path) => {
            let doc: formats::SupportDoc = read_json(path)?;
            doc.to_states(&base_dir(path))?
        }
        None => Vec::new(),
    };

    let mut options = RecoverOptions {
        include_vertices: true,
        extra_support,
        random_support: 0,
        seed: cli.seed,
    };
    let mut sampled = false;
    let mut recovery = match recover_mixture(&js, &options) {
        Ok(recovery) => recovery,
        Err(Error::NotSymmetric { deviation }) => {
            let message = format!(
                "joint state is not symmetric (deviation {deviation:.3e}), \
                 so it is no mixture of product powers"
            );
            if cli.json {
                println!("{}", json!({ "pass": false, "failure": message }));
            } else {
                println!("FAIL {message}");
            }
            return Ok(1);
        }
        Err(e) => return Err(format!("recovery failed: {e}")),
    };
    // Vertex supports cannot represent every mixture; when they miss the
    // tolerance, retry once with seeded interior samples appended.
    if recovery.residual > cli.tol {
        options.random_support = 32;
        let retry = recover_mixture(&js, &options).map_err(|e| format!("recovery failed: {e}"))?;
        if retry.residual < recovery.residual {
            recovery = retry;
            sampled = true;
        }
    }

    let report = RecoveryDoc::from_mixture(
        &recovery.mixture,
        recovery.residual,
        recovery.unique,
        recovery.iterations,
    );
    if cli.json {
        let mut value = serde_json::to_value(&report).expect("serializable");
        value["sampled_support"] = json!(sampled);
        println!("{value}");
    } else {
        println!("residual: {:.3e}", report.residual);
        println!("unique: {}", report.unique);
        if sampled {
            println!(
                "support: vertices plus 32 seeded interior samples (seed {})",
                cli.seed
            );
        }
        println!("components: {}", report.components.len());
        for c in &report.components {
            println!("  weight {:.6} at {}", c.weight, format_probs(&c.probs));
        }
    }
    Ok(0)
}

fn parse_observation(space: &TestSpace, raw: &str) -> Result<Observation, String> {
    let Some((test_part, outcome_part)) = raw.split_once(':') else {
        return Err(format!("observation {raw:?} is not TEST:OUTCOME"));
    };
    let test: usize = test_part
        .parse()
        .map_err(|_| format!("observation {raw:?}: test index {test_part:?} is not a number"))?;
    let outcome = match space.outcome_index(outcome_part) {
        Some(o) => o,
        None => outcome_part.parse().map_err(|_| {
            format!("observation {raw:?}: {outcome_part:?} names no outcome and is no index")
        })?,
    };
    Ok(Observation { test, outcome })
}

fn cmd_posterior(cli: &Cli, path: &Path, raw_observations: &[String]) -> Result<u8, String> {
    let doc: MixtureDoc = read_json(path)?;
    let mixture = doc.to_mixture(&base_dir(path))?;
    let observations: Vec<Observation> = raw_observations
        .iter()
        .map(|raw| parse_observation(mixture.space(), raw))
        .collect::<Result<_, _>>()?;

    let posterior = match posterior_update(&mixture, &observations) {
        Ok(posterior) => posterior,
        Err(Error::ZeroProbabilityObservation { .. }) => {
            let message =
                "posterior undefined: the record has probability 0 under the prior mixture";
            if cli.json {
                println!("{}", json!({ "pass": false, "failure": message }));
            } else {
                println!("FAIL {message}");
            }
            return Ok(1);
        }
        Err(e) => return Err(format!("posterior update failed: {e}")),
    };
    let predictive = posterior
        .average_state()
        .map_err(|e| format!("predictive state failed: {e}"))?;

    if cli.json {
        println!(
            "{}",
            json!({
                "space": serde_json::to_value(SpaceDoc::from_space(mixture.space()))
                    .expect("serializable"),
                "components": posterior.components().iter().map(|c| json!({
                    "weight": c.weight(),
                    "probs": c.state().probs(),
                })).collect::<Vec<_>>(),
                "predictive": predictive.probs(),
            })
        );
    } else {
        println!("posterior components: {}", posterior.components().len());
        for c in posterior.components() {
            println!(
                "  weight {:.6} at {}",
                c.weight(),
                format_probs(c.state().probs())
            );
        }
        println!("predictive: {}", format_probs(predictive.probs()));
    }
    Ok(0)
}

fn demo_pr_box(cli: &Cli) -> Result<u8, String> {
    let js = pr_box().map_err(|e| format!("construction failed: {e}"))?;
    let ns = check_nonsignalling(&js);
    let symmetry = is_symmetric(&js, cli.tol).map_err(|e| format!("symmetry check failed: {e}"))?;
    let recovery = recover_mixture(&js, &RecoverOptions::default())
        .map_err(|e| format!("recovery failed: {e}"))?;

    // The whole point: nonsignalling and symmetric, yet far from every
    // mixture of direct products.
    let pass = ns.passes(cli.tol) && symmetry.symmetric && recovery.residual > 1e-3;
    if cli.json {
        println!(
            "{}",
            json!({
                "pass": pass,
                "nonsignalling": ns.passes(cli.tol),
                "max_ns_deviation": ns.max_deviation(),
                "symmetric": symmetry.symmetric,
                "product_mixture_residual": recovery.residual,
            })
        );
    } else {
        println!("a pair of binary-input binary-output systems, perfectly correlated");
        println!(
            "nonsignalling: {} (max deviation {:.3e})",
            if ns.passes(cli.tol) { "PASS" } else { "FAIL" },
            ns.max_deviation()
        );
        println!(
            "symmetric: {} (deviation {:.3e})",
            if symmetry.symmetric { "PASS" } else { "FAIL" },
            symmetry.deviation
        );
        println!(
            "best product-mixture residual: {:.3e} (no mixture of direct products matches)",
            recovery.residual
        );
        println!("demo pr-box: {}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { 1 })
}

/// The two-copy state of the rebit demonstration, for the JSON report.
fn rebit_two_copy_density() -> Result<DensityOperator, String> {
    let identity = ComplexMatrix::identity(2);
    let half = Complex64::new(0.5, 0.0);
    let plus = DensityOperator::new(identity.add(&pauli_y()).scale(half))
        .map_err(|e| format!("construction failed: {e}"))?;
    let minus = DensityOperator::new(
        identity
            .add(&pauli_y().scale(Complex64::new(-1.0, 0.0)))
            .scale(half),
    )
    .map_err(|e| format!("construction failed: {e}"))?;
    let mixed = plus
        .kron(&plus)
        .matrix()
        .scale(half)
        .add(&minus.kron(&minus).matrix().scale(half));
    DensityOperator::new(mixed).map_err(|e| format!("construction failed: {e}"))
}

fn demo_rebit(cli: &Cli, n: usize, grid: usize) -> Result<u8, String> {
    let report = rebit_counterexample(n, grid).map_err(|e| format!("demo failed: {e}"))?;
    let tol = cli.tol;
    let pass = report.state_imaginary_part <= 1e-12
        && report.quantum_symmetric
        && report.quantum_marginal_gap <= 1e-12
        && report.symmetric
        && report.exchangeability_deviation <= tol
        && report.embedding_deviation <= tol
        && (report.correlator - 1.0).abs() <= 1e-6
        && report.best_separable_correlator.abs() <= 1e-6
        && report.recovery_residual <= tol.max(1e-9)
        && (report.recovered_mixed_weight - 1.0).abs() <= 1e-4;
    if cli.json {
        println!(
            "{}",
            json!({
                "pass": pass,
                "n": report.n,
                "grid": report.grid,
                "state_imaginary_part": report.state_imaginary_part,
                "quantum_symmetric": report.quantum_symmetric,
                "quantum_marginal_gap": report.quantum_marginal_gap,
                "max_imaginary_part": report.max_imaginary_part,
                "symmetric": report.symmetric,
                "exchangeability_deviation": report.exchangeability_deviation,
                "marginal_consistency": report.marginal_consistency,
                "embedding_deviation": report.embedding_deviation,
                "recovery_residual": report.recovery_residual,
                "recovered_mixed_weight": report.recovered_mixed_weight,
                "correlator": report.correlator,
                "best_separable_correlator": report.best_separable_correlator,
                "gap": report.gap,
                "two_copy_density": serde_json::to_value(DensityDoc::from_operator(
                    &rebit_two_copy_density()?
                )).expect("serializable"),
            })
        );
    } else {
        println!(
            "an equal mixture of two conjugate single-system states, taken to {} copies,",
            report.n
        );
        println!("measured along the two real axes only:");
        println!(
            "  real, permutation invariant, marginal consistent at the operator level: {}",
            if report.state_imaginary_part <= 1e-12
                && report.quantum_symmetric
                && report.quantum_marginal_gap <= 1e-12
            {
                "yes"
            } else {
                "no"
            }
        );
        println!(
            "  embedded statistics exchangeable: {} (deviation {:.3e})",
            if report.symmetric { "yes" } else { "no" },
            report.exchangeability_deviation
        );
        println!(
            "  matched-axis correlator: {:.6} (best over real product mixtures: {:.3e})",
            report.correlator, report.best_separable_correlator
        );
        println!("  correlation gap: {:.6}", report.gap);
        println!("  restricted statistics recover the point mass on the maximally mixed state:");
        println!(
            "    weight {:.6}, residual {:.3e}",
            report.recovered_mixed_weight, report.recovery_residual
        );
        println!("so the two-axis statistics are exchangeable yet no single-state mixture of");
        println!("the underlying pair reproduces them: the mixing measure is not unique.");
        println!("demo rebit: {}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { 1 })
}

fn demo_fig1(cli: &Cli) -> Result<u8, String> {
    let space = TestSpace::overlapping_example();
    space
        .ensure_valid()
        .map_err(|e| format!("built-in space invalid: {e}"))?;
    let polytope = StatePolytope::analyze(&space).map_err(|e| format!("analysis failed: {e}"))?;
    let frame = build_frame(&space).map_err(|e| format!("frame construction failed: {e}"))?;
    let dot = space
        .greechie_dot()
        .map_err(|e| format!("diagram export failed: {e}"))?;
    let pass = polytope.dimension() == 5 && frame.dimension() == 5;
    if cli.json {
        println!(
            "{}",
            json!({
                "pass": pass,
                "space": serde_json::to_value(SpaceDoc::from_space(&space)).expect("serializable"),
                "outcomes": space.outcome_count(),
                "tests": space.test_count(),
                "dimension": polytope.dimension(),
                "frame": serde_json::to_value(FrameDoc {
                    d: frame.dimension(),
                    c: frame.shift(),
                    members: frame.members().to_vec(),
                }).expect("serializable"),
                "dot": dot,
            })
        );
    } else {
        println!(
            "valid: {} outcomes, {} tests",
            space.outcome_count(),
            space.test_count()
        );
        println!("dimension: {}", polytope.dimension());
        println!(
            "frame: d = {}, shift c = {:.6}",
            frame.dimension(),
            frame.shift()
        );
        print!("{dot}");
        println!("demo fig1: {}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { 1 })
}
