//! Benchmark records, accuracy measures, and performance/data profiles.
//!
//! A run is reduced to its history of best values. For a tolerance `tau`,
//! `N` is the first evaluation count whose normalized accuracy reaches
//! `1 - tau`; profiles compare these counts across solvers.

pub mod baseline;
mod bench;

pub use bench::{
    budget_for, load_records, run_benchmark, run_one, write_outputs, write_profile_csv,
    BenchmarkOutput, BenchmarkSpec, SolverKind,
};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub solver: String,
    pub problem: String,
    pub n: usize,
    pub seed: u64,
    #[serde(with = "crate::real17::history")]
    pub eval_history: Vec<(usize, f64)>,
    #[serde(with = "crate::real17")]
    pub f_init: f64,
    #[serde(with = "crate::real17")]
    pub f_best_known: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunRecord {
    /// Best value after `n_evals` evaluations.
    pub fn best_at(&self, n_evals: usize) -> f64 {
        let i = self.eval_history.partition_point(|&(k, _)| k <= n_evals);
        if i == 0 {
            self.f_init
        } else {
            self.eval_history[i - 1].1
        }
    }
}

/// Normalized accuracy after `n_evals` evaluations, clamped to `[0, 1]`.
pub fn facc(record: &RunRecord, n_evals: usize) -> Result<f64> {
    facc_value(record, record.best_at(n_evals))
}

fn facc_value(record: &RunRecord, best: f64) -> Result<f64> {
    let den = record.f_best_known - record.f_init;
    if den == 0.0 || !den.is_finite() {
        return Err(Error::DegenerateRecord);
    }
    let v = (best - record.f_init) / den;
    Ok(if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) })
}

/// First evaluation count at which accuracy reaches `1 - tau`.
pub fn n_to_accuracy(record: &RunRecord, tau: f64) -> Option<usize> {
    record.eval_history.iter().find_map(|&(k, best)| {
        facc_value(record, best)
            .ok()
            .filter(|&a| a >= 1.0 - tau)
            .map(|_| k)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    Performance,
    Data,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub solver: String,
    pub kind: ProfileKind,
    pub abscissae: Vec<f64>,
    pub fractions: Vec<f64>,
}

/// Median evaluations-to-accuracy of one solver on one problem, `+inf` when
/// unsolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Score {
    pub solver: String,
    pub problem: String,
    pub n: usize,
    pub evals: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Aggregates seeds by median `N`. Output keeps the order in which
/// `(solver, problem, n)` first appear; degenerate and failed runs count as
/// unsolved.
pub fn scores(records: &[RunRecord], tau: f64) -> Vec<Score> {
    let mut order: Vec<(String, String, usize)> = Vec::new();
    let mut groups: HashMap<(String, String, usize), Vec<f64>> = HashMap::new();
    for r in records {
        let key = (r.solver.clone(), r.problem.clone(), r.n);
        if facc_value(r, r.f_init).is_err() {
            log::warn!(
                "{} on {} (n={}, seed {}): degenerate record excluded",
                r.solver,
                r.problem,
                r.n,
                r.seed
            );
        }
        let evals = n_to_accuracy(r, tau).map_or(f64::INFINITY, |k| k as f64);
        groups
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(evals);
    }
    order
        .into_iter()
        .map(|key| {
            let evals = median(groups.remove(&key).expect("grouped"));
            let (solver, problem, n) = key;
            Score {
                solver,
                problem,
                n,
                evals,
            }
        })
        .collect()
}

struct Table {
    solvers: Vec<String>,
    /// `(problem, n)` solved by at least one solver, each with one entry
    /// per solver.
    problems: Vec<((String, usize), Vec<f64>)>,
}

fn table(scores: &[Score]) -> Table {
    let mut solvers: Vec<String> = Vec::new();
    let mut problems: Vec<((String, usize), Vec<f64>)> = Vec::new();
    for s in scores {
        if !solvers.contains(&s.solver) {
            solvers.push(s.solver.clone());
        }
        let key = (s.problem.clone(), s.n);
        if !problems.iter().any(|(k, _)| *k == key) {
            problems.push((key, Vec::new()));
        }
    }
    for (key, row) in problems.iter_mut() {
        *row = solvers
            .iter()
            .map(|sv| {
                scores
                    .iter()
                    .find(|s| s.solver == *sv && s.problem == key.0 && s.n == key.1)
                    .map_or(f64::INFINITY, |s| s.evals)
            })
            .collect();
    }
    problems.retain(|((name, n), row)| {
        let solved = row.iter().any(|v| v.is_finite());
        if !solved {
            log::warn!("{name} (n={n}) was solved by no solver; excluded from the profiles");
        }
        solved
    });
    Table { solvers, problems }
}

fn fraction(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}

/// Performance profiles from aggregated scores. Abscissae are 1 and every
/// finite ratio observed for any solver.
pub fn performance_profile_from_scores(scores: &[Score]) -> Vec<ProfileCurve> {
    let t = table(scores);
    let ratios: Vec<Vec<f64>> = t
        .problems
        .iter()
        .map(|(_, row)| {
            let best = row.iter().copied().fold(f64::INFINITY, f64::min);
            row.iter().map(|v| v / best).collect()
        })
        .collect();
    let mut alphas: Vec<f64> = std::iter::once(1.0)
        .chain(ratios.iter().flatten().copied().filter(|r| r.is_finite()))
        .collect();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    let total = t.problems.len();
    t.solvers
        .iter()
        .enumerate()
        .map(|(s, name)| ProfileCurve {
            solver: name.clone(),
            kind: ProfileKind::Performance,
            fractions: alphas
                .iter()
                .map(|&a| fraction(ratios.iter().filter(|r| r[s] <= a).count(), total))
                .collect(),
            abscissae: alphas.clone(),
        })
        .collect()
}

/// Data profiles from aggregated scores on the given `beta` grid.
pub fn data_profile_from_scores(scores: &[Score], betas: &[f64]) -> Vec<ProfileCurve> {
    let t = table(scores);
    let total = t.problems.len();
    t.solvers
        .iter()
        .enumerate()
        .map(|(s, name)| ProfileCurve {
            solver: name.clone(),
            kind: ProfileKind::Data,
            abscissae: betas.to_vec(),
            fractions: betas
                .iter()
                .map(|&b| {
                    let hits = t
                        .problems
                        .iter()
                        .filter(|((_, n), row)| row[s] <= b * (*n as f64 + 1.0))
                        .count();
                    fraction(hits, total)
                })
                .collect(),
        })
        .collect()
}

pub fn performance_profile(records: &[RunRecord], tau: f64) -> Vec<ProfileCurve> {
    performance_profile_from_scores(&scores(records, tau))
}

pub fn data_profile(records: &[RunRecord], tau: f64, betas: &[f64]) -> Vec<ProfileCurve> {
    data_profile_from_scores(&scores(records, tau), betas)
}

/// `count` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && count >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == count - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

/// The data-profile grid: 200 log-spaced points in `[0.1, budget_mult]`.
pub fn beta_grid(budget_mult: f64) -> Vec<f64> {
    log_grid(0.1, budget_mult.max(0.1), 200)
}
