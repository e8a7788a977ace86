//! Monte Carlo validation: sample from a known tetrahedron, estimate, align
//! the estimate with the truth, and report the standard error of the
//! estimate over seeds and sample sizes.

use crate::error::{Error, Result};
use crate::estimator::{estimate_vertices, Diagnostic, EstimatorConfig, PERMUTATIONS};
use crate::geometry::Tetrahedron;
use crate::num::cast;
use crate::sampler::{sample_batch, SeededGenerator};
use crate::Real;
use std::io::Write;
use std::time::Instant;

/// Outcome of one sample-estimate-match run.
#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome<T> {
    Estimated {
        /// RMS vertex-coordinate error over the matched vertices,
        /// `sqrt(sum of 12 squared coordinate differences / 12)`.
        sigma_est: T,
        /// Euclidean distance truth-to-estimate per matched vertex.
        vertex_errors: [T; 4],
        /// Diagnostics echoed from the estimator.
        diagnostics: Vec<Diagnostic>,
    },
    /// The estimator (or sampler) failed; sweeps record this rather than
    /// aborting.
    Failed { reason: String },
}

/// One validation trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport<T> {
    pub n: usize,
    pub seed: u64,
    pub outcome: TrialOutcome<T>,
    /// Wall-clock seconds; informational only and excluded from any
    /// determinism comparison.
    pub elapsed_seconds: f64,
}

impl<T: Real> TrialReport<T> {
    pub fn sigma_est(&self) -> Option<T> {
        match &self.outcome {
            TrialOutcome::Estimated { sigma_est, .. } => Some(*sigma_est),
            TrialOutcome::Failed { .. } => None,
        }
    }

    pub fn failed(&self) -> bool {
        matches!(self.outcome, TrialOutcome::Failed { .. })
    }
}

/// Per-size aggregates over the successful trials of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeSummary<T> {
    pub n: usize,
    pub median: Option<T>,
    pub mean: Option<T>,
    pub min: Option<T>,
    pub max: Option<T>,
    pub failures: usize,
}

/// All trials of a sweep, ordered by (size index, trial index), plus the
/// per-size aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport<T> {
    pub trials_per_size: usize,
    pub trials: Vec<TrialReport<T>>,
    pub summaries: Vec<SizeSummary<T>>,
}

/// Align `est`'s vertices with `truth`: the permutation `perm` minimizing
/// the total squared distance when truth vertex `i` is paired with
/// `est.vertices[perm[i]]`. Exhaustive over the 24 permutations; ties keep
/// the lexicographically first.
pub fn match_vertices<T: Real>(truth: &Tetrahedron<T>, est: &Tetrahedron<T>) -> [usize; 4] {
    let mut best = PERMUTATIONS[0];
    let mut best_cost = T::infinity();
    for perm in PERMUTATIONS {
        let mut cost = T::zero();
        for (t, &e) in truth.vertices.iter().zip(perm.iter()) {
            let d = t.distance(&est.vertices[e]);
            cost = cost + d * d;
        }
        if cost < best_cost {
            best_cost = cost;
            best = perm;
        }
    }
    best
}

/// RMS coordinate error between aligned tetrahedra:
/// `sqrt(sum over vertices of squared coordinate differences / 12)`.
/// `est_matched` must already be vertex-aligned with `truth`.
pub fn standard_error<T: Real>(truth: &Tetrahedron<T>, est_matched: &Tetrahedron<T>) -> T {
    let mut acc = T::zero();
    for i in 0..4 {
        let t = truth.vertices[i];
        let e = est_matched.vertices[i];
        acc = acc + (t.x - e.x) * (t.x - e.x);
        acc = acc + (t.y - e.y) * (t.y - e.y);
        acc = acc + (t.z - e.z) * (t.z - e.z);
    }
    (acc / cast(12.0)).sqrt()
}

/// One trial: sample `n` points with the given seed, estimate, align,
/// score. Estimation failures are recorded in the outcome, not returned.
pub fn run_trial<T: Real>(
    truth: &Tetrahedron<T>,
    n: usize,
    seed: u64,
    config: &EstimatorConfig<T>,
) -> TrialReport<T> {
    let start = Instant::now();
    let outcome = (|| -> Result<TrialOutcome<T>> {
        let mut gen = SeededGenerator::new(seed);
        let points = sample_batch(truth, n, &mut gen)?;
        let result = estimate_vertices(&points, config)?;
        let perm = match_vertices(truth, &result.vertices);
        let matched = result.vertices.permuted(perm);
        let vertex_errors =
            std::array::from_fn(|i| truth.vertices[i].distance(&matched.vertices[i]));
        Ok(TrialOutcome::Estimated {
            sigma_est: standard_error(truth, &matched),
            vertex_errors,
            diagnostics: result.diagnostics,
        })
    })()
    .unwrap_or_else(|e| TrialOutcome::Failed {
        reason: e.to_string(),
    });
    TrialReport {
        n,
        seed,
        outcome,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

/// Run `trials` trials at every size. Trial seeds are `base_seed + index`
/// with `index` counting trials globally in report order, so a sweep is
/// reproducible from its base seed alone.
pub fn sweep<T: Real>(
    truth: &Tetrahedron<T>,
    sizes: &[usize],
    trials: usize,
    base_seed: u64,
    config: &EstimatorConfig<T>,
) -> Result<SweepReport<T>> {
    if sizes.is_empty() {
        return Err(Error::InvalidConfig("empty size list".to_string()));
    }
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be >= 1".to_string()));
    }
    let mut reports = Vec::with_capacity(sizes.len() * trials);
    let mut summaries = Vec::with_capacity(sizes.len());
    let mut index: u64 = 0;
    for &n in sizes {
        let mut sigmas: Vec<T> = Vec::with_capacity(trials);
        let mut failures = 0usize;
        for _ in 0..trials {
            let report = run_trial(truth, n, base_seed.wrapping_add(index), config);
            index += 1;
            match report.sigma_est() {
                Some(s) => sigmas.push(s),
                None => failures += 1,
            }
            reports.push(report);
        }
        summaries.push(summarize(n, &mut sigmas, failures));
    }
    Ok(SweepReport {
        trials_per_size: trials,
        trials: reports,
        summaries,
    })
}

fn summarize<T: Real>(n: usize, sigmas: &mut [T], failures: usize) -> SizeSummary<T> {
    if sigmas.is_empty() {
        return SizeSummary {
            n,
            median: None,
            mean: None,
            min: None,
            max: None,
            failures,
        };
    }
    sigmas.sort_unstable_by(|a, b| a.partial_cmp(b).expect("sigma_est is finite"));
    let k = sigmas.len();
    let median = if k % 2 == 1 {
        sigmas[k / 2]
    } else {
        (sigmas[k / 2 - 1] + sigmas[k / 2]) / cast(2.0)
    };
    let mut sum = T::zero();
    for &s in sigmas.iter() {
        sum = sum + s;
    }
    SizeSummary {
        n,
        median: Some(median),
        mean: Some(sum / cast(k as f64)),
        min: Some(sigmas[0]),
        max: Some(sigmas[k - 1]),
        failures,
    }
}

impl<T: Real> SweepReport<T> {
    /// Per-trial CSV: `n,trial,seed,sigma_est,failed`. `sigma_est` is empty
    /// for failed trials; `failed` is 0/1. Output is byte-deterministic for
    /// a given sweep.
    pub fn write_trials_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,trial,seed,sigma_est,failed")?;
        for (i, t) in self.trials.iter().enumerate() {
            let trial_idx = i % self.trials_per_size;
            match t.sigma_est() {
                Some(s) => writeln!(w, "{},{},{},{},0", t.n, trial_idx, t.seed, s)?,
                None => writeln!(w, "{},{},{},,1", t.n, trial_idx, t.seed)?,
            }
        }
        Ok(())
    }

    /// Per-size CSV: `n,median,mean,min,max,failures`; statistics columns
    /// are empty when every trial at that size failed.
    pub fn write_summary_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,median,mean,min,max,failures")?;
        for s in &self.summaries {
            let fmt = |v: &Option<T>| v.map(|x| x.to_string()).unwrap_or_default();
            writeln!(
                w,
                "{},{},{},{},{},{}",
                s.n,
                fmt(&s.median),
                fmt(&s.mean),
                fmt(&s.min),
                fmt(&s.max),
                s.failures
            )?;
        }
        Ok(())
    }

    pub fn summary_for(&self, n: usize) -> Option<&SizeSummary<T>> {
        self.summaries.iter().find(|s| s.n == n)
    }
}

/// The elapsed-time field is wall clock; everything else must reproduce
/// bit-for-bit for equal inputs. This equality ignores elapsed time.
pub fn deterministic_eq<T: Real>(a: &TrialReport<T>, b: &TrialReport<T>) -> bool {
    a.n == b.n && a.seed == b.seed && a.outcome == b.outcome
}
