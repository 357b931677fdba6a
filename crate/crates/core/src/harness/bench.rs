use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use super::baseline::nelder_mead;
use super::{beta_grid, data_profile, performance_profile, ProfileCurve, RunRecord};
use crate::error::{Error, Result};
use crate::problems::make_problem;
use crate::solver::{solve, CountingObjective, SolverConfig};

const BASELINE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverKind {
    Mosub,
    Baseline,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Mosub => "mosub",
            SolverKind::Baseline => "baseline",
        }
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mosub" => Ok(SolverKind::Mosub),
            "baseline" => Ok(SolverKind::Baseline),
            _ => Err(Error::Harness(format!("unknown solver `{s}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkSpec {
    /// `(problem name, dimension)` pairs.
    pub problems: Vec<(String, usize)>,
    pub solvers: Vec<SolverKind>,
    /// Each run gets `budget_mult * (n + 1)` evaluations.
    pub budget_mult: f64,
    pub tau: f64,
    pub seeds: Vec<u64>,
    /// Settings for `mosub`; seed and budget are overridden per run.
    pub config: SolverConfig,
}

#[derive(Debug, Clone)]
pub struct BenchmarkOutput {
    pub records: Vec<RunRecord>,
    pub performance: Vec<ProfileCurve>,
    pub data: Vec<ProfileCurve>,
}

pub fn budget_for(budget_mult: f64, n: usize) -> usize {
    ((budget_mult * (n as f64 + 1.0)).floor() as usize).max(1)
}

/// Runs one solver on one problem and returns its record, with
/// `f_best_known` still set to the run's own best value.
pub fn run_one(
    solver: SolverKind,
    problem: &str,
    n: usize,
    seed: u64,
    budget_mult: f64,
    config: &SolverConfig,
) -> Result<RunRecord> {
    let prob = make_problem(problem, n)?;
    let budget = budget_for(budget_mult, n);
    let mut obj = CountingObjective::new(prob.objective);
    let outcome = match solver {
        SolverKind::Mosub => {
            let cfg = SolverConfig {
                seed,
                max_fevals: budget,
                ..config.clone()
            };
            solve(&mut obj, &prob.x_start, &cfg).map(|r| (r.f_init, r.eval_history))
        }
        SolverKind::Baseline => nelder_mead(&mut obj, &prob.x_start, budget, BASELINE_TOL)
            .map(|r| (r.f_init, r.eval_history)),
    };
    let (f_init, eval_history, error) = match outcome {
        Ok((f, h)) => (f, h, None),
        Err(e) => {
            let f = prob.eval(&prob.x_start);
            log::warn!("{} on {problem} (n={n}, seed {seed}) failed: {e}", solver.name());
            (f, vec![(1, f)], Some(e.to_string()))
        }
    };
    let f_best_known = eval_history.last().map_or(f_init, |h| h.1);
    Ok(RunRecord {
        solver: solver.name().to_string(),
        problem: problem.to_string(),
        n,
        seed,
        eval_history,
        f_init,
        f_best_known,
        error,
    })
}

/// Runs every solver on every problem for every seed (in parallel), sets
/// each problem's best known value, and computes both profiles.
pub fn run_benchmark(spec: &BenchmarkSpec) -> Result<BenchmarkOutput> {
    if spec.solvers.is_empty() {
        return Err(Error::Harness("no solvers given".into()));
    }
    if spec.problems.is_empty() || spec.seeds.is_empty() {
        return Err(Error::Harness("no problems or seeds given".into()));
    }
    if !(spec.tau > 0.0 && spec.tau < 1.0) {
        return Err(Error::Harness("tau must lie in (0, 1)".into()));
    }
    let mut refs = Vec::with_capacity(spec.problems.len());
    for (name, n) in &spec.problems {
        refs.push(make_problem(name, *n)?.f_ref.analytic());
    }
    let jobs: Vec<(SolverKind, usize, u64)> = spec
        .solvers
        .iter()
        .flat_map(|&s| {
            (0..spec.problems.len()).flat_map(move |p| spec.seeds.iter().map(move |&seed| (s, p, seed)))
        })
        .collect();
    let mut records = jobs
        .par_iter()
        .map(|&(s, p, seed)| {
            let (name, n) = &spec.problems[p];
            run_one(s, name, *n, seed, spec.budget_mult, &spec.config)
        })
        .collect::<Result<Vec<_>>>()?;

    for ((name, n), f_ref) in spec.problems.iter().zip(&refs) {
        let seen = records
            .iter()
            .filter(|r| r.problem == *name && r.n == *n)
            .map(|r| r.f_best_known)
            .fold(f64::INFINITY, f64::min);
        let best = f_ref.map_or(seen, |v| v.min(seen));
        for r in records.iter_mut().filter(|r| r.problem == *name && r.n == *n) {
            r.f_best_known = best;
        }
    }
    let performance = performance_profile(&records, spec.tau);
    let data = data_profile(&records, spec.tau, &beta_grid(spec.budget_mult));
    Ok(BenchmarkOutput {
        records,
        performance,
        data,
    })
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Harness(e.to_string())
}

pub fn write_profile_csv(path: &Path, curves: &[ProfileCurve]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(io_err)?;
    w.write_record(["solver", "abscissa", "fraction"]).map_err(io_err)?;
    for c in curves {
        for (a, f) in c.abscissae.iter().zip(&c.fractions) {
            w.write_record([c.solver.as_str(), &format!("{a:.16e}"), &format!("{f:.16e}")])
                .map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)
}

/// Writes `records.json`, `perf_profile.csv` and `data_profile.csv` into `dir`.
pub fn write_outputs(dir: &Path, out: &BenchmarkOutput) -> Result<()> {
    fs::create_dir_all(dir).map_err(io_err)?;
    let json = serde_json::to_string_pretty(&out.records).map_err(io_err)?;
    fs::write(dir.join("records.json"), json).map_err(io_err)?;
    write_profile_csv(&dir.join("perf_profile.csv"), &out.performance)?;
    write_profile_csv(&dir.join("data_profile.csv"), &out.data)
}

pub fn load_records(path: &Path) -> Result<Vec<RunRecord>> {
    let text = fs::read_to_string(path).map_err(io_err)?;
    serde_json::from_str(&text).map_err(io_err)
}
