//! Task execution: turn a validated scenario into a report.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use emdk_core::conformance::{self, ConventionOverride};
use emdk_core::media::{classify_intrinsic, post_invariant, post_invariant_via_zeta, extract_zeta, ClassifyOptions};
use emdk_core::sampling::random_coframe_variation;
use emdk_core::sem::{abraham_drive, abraham_tensor, minkowski_sym_tensor};
use emdk_core::fields::{decompose_f, decompose_g, poynting};
use emdk_core::variation::verify_variation;

use crate::report::{Conventions, NamedError, Provenance, Report, TaskResult};
use crate::scenario::{Scenario, ScenarioError, Task};

pub const VARIATION_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub seed: u64,
    pub strict: bool,
    pub fd_step: f64,
    pub tol_classify: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            strict: false,
            fd_step: emdk_core::variation::DEFAULT_FD_STEP,
            tol_classify: 1e-10,
        }
    }
}

/// Outcome of a run: the report plus any numerical failures that should
/// drive a nonzero exit code.
pub struct RunOutcome {
    pub report: Report,
    pub numerical_failures: Vec<String>,
}

fn one_form_components(f: &emdk_core::PForm) -> [f64; 4] {
    let c = f.components();
    [c[0], c[1], c[2], c[3]]
}

fn three_form_rows(tau: &emdk_core::DriveForms) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for (a, row) in out.iter_mut().enumerate() {
        let c = tau.tau[a].components();
        row.copy_from_slice(c);
    }
    out
}

pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Result<RunOutcome, ScenarioError> {
    let z = scenario.medium.constitutive()?;
    let v = scenario.medium.velocity()?;
    let f = scenario.field.value()?;
    let observer = scenario.observer_velocity();
    let g = z.apply(&f);

    let mut results = Vec::new();
    let mut failures = Vec::new();

    for task in &scenario.tasks {
        match task {
            Task::Decompose => {
                let fd = decompose_f(&f, &observer);
                let gd = decompose_g(&g, &observer);
                results.push(TaskResult::Decompose {
                    frame: "global orthonormal; fields relative to the observer".into(),
                    e: one_form_components(&fd.e),
                    b: one_form_components(&fd.b),
                    d: one_form_components(&gd.e),
                    h: one_form_components(&gd.b),
                });
            }
            Task::SemAbraham => {
                let tensor = abraham_tensor(&f, &z, &v)?;
                let drive = abraham_drive(&f, &z, &v)?;
                let s = poynting(&f, &g, &v);
                results.push(TaskResult::SemAbraham {
                    frame: "global orthonormal".into(),
                    tensor: tensor.to_rows(),
                    drive_forms: three_form_rows(&drive),
                    poynting: one_form_components(&s),
                });
            }
            Task::SemMinkowski => {
                let tensor = minkowski_sym_tensor(&f, &z);
                results.push(TaskResult::SemMinkowski {
                    frame: "global orthonormal".into(),
                    tensor: tensor.to_rows(),
                });
            }
            Task::PostInvariant => {
                results.push(TaskResult::PostInvariant {
                    chi: post_invariant(&z),
                    chi_via_blocks: post_invariant_via_zeta(&z, &v),
                });
            }
            Task::Classify => {
                let classify_opts = ClassifyOptions {
                    tol_rel: opts.tol_classify,
                    seed: opts.seed,
                    ..ClassifyOptions::default()
                };
                let c = classify_intrinsic(&z, &classify_opts)?;
                if c.verdict == emdk_core::Verdict::Undecided {
                    failures.push("classification is undecided".into());
                }
                results.push(TaskResult::Classify {
                    verdict: c.verdict.as_str().into(),
                    best_rapidity: c.best_rapidity,
                    residual: c.residual,
                    threshold: c.threshold,
                    restarts: c.restarts,
                    converged_restarts: c.converged_restarts,
                });
            }
            Task::VerifyVariation => {
                let blocks = extract_zeta(&z, &v);
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                let var = random_coframe_variation(&mut rng, 1.0);
                let check = verify_variation(&blocks, &f, &var, opts.fd_step)?;
                let passed = check.residual <= VARIATION_TOLERANCE;
                if opts.strict && !passed {
                    failures.push(format!(
                        "variation residual {:e} above {:e}",
                        check.residual, VARIATION_TOLERANCE
                    ));
                }
                results.push(TaskResult::VerifyVariation {
                    lhs: check.lhs,
                    rhs: check.rhs,
                    residual: check.residual,
                    tolerance: VARIATION_TOLERANCE,
                    passed,
                });
            }
            Task::Selftest => {
                results.push(selftest_result(opts.seed, 200, ConventionOverride::None, &mut failures));
            }
        }
    }

    Ok(RunOutcome {
        report: Report {
            provenance: provenance(opts),
            results,
        },
        numerical_failures: failures,
    })
}

pub fn provenance(opts: &RunOptions) -> Provenance {
    Provenance {
        tool: "emdk".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        conventions: Conventions::current(),
        seed: opts.seed,
        fd_step: opts.fd_step,
        classify_tolerance: opts.tol_classify,
    }
}

pub fn selftest_result(
    seed: u64,
    samples: usize,
    flip: ConventionOverride,
    failures: &mut Vec<String>,
) -> TaskResult {
    let report = conformance::selftest(seed, samples, flip);
    let identities = report
        .identities
        .entries()
        .iter()
        .map(|(name, err)| NamedError {
            name: (*name).into(),
            max_error: *err,
        })
        .collect();
    let passed = report.passed();
    if !passed {
        failures.push(format!(
            "self-test failed: identities {:e}, round trips {:e}, variation {:e}",
            report.identities.max(),
            report.round_trips.max(),
            report.variation_residual
        ));
    }
    TaskResult::Selftest {
        identities,
        round_trip_error: report.round_trips.max(),
        variation_residual: report.variation_residual,
        passed,
    }
}
