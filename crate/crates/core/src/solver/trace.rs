//! JSON document describing one solver run.

use serde::{Deserialize, Serialize};

use super::{IterationRecord, SolveResult, SolverConfig, StepKind, Termination};
use crate::quadmodel::Quad2D;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelCoefficients {
    #[serde(with = "crate::real17")]
    pub q0: f64,
    #[serde(with = "crate::real17")]
    pub a: f64,
    #[serde(with = "crate::real17")]
    pub b: f64,
    #[serde(with = "crate::real17")]
    pub c: f64,
    #[serde(with = "crate::real17")]
    pub d: f64,
    #[serde(with = "crate::real17")]
    pub e: f64,
}

impl From<Quad2D> for ModelCoefficients {
    fn from(q: Quad2D) -> Self {
        ModelCoefficients {
            q0: q.q0,
            a: q.a,
            b: q.b,
            c: q.c,
            d: q.d,
            e: q.e,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceIteration {
    pub k: usize,
    #[serde(with = "crate::real17")]
    pub f: f64,
    #[serde(with = "crate::real17")]
    pub delta: f64,
    #[serde(with = "crate::real17::option")]
    pub rho: Option<f64>,
    pub step_kind: StepKind,
    pub n_evals_after: usize,
    pub degraded_update: bool,
    pub model: Option<ModelCoefficients>,
}

impl From<&IterationRecord> for TraceIteration {
    fn from(r: &IterationRecord) -> Self {
        TraceIteration {
            k: r.k,
            f: r.f_k,
            delta: r.delta_k,
            rho: r.rho_k,
            step_kind: r.step_kind,
            n_evals_after: r.n_evals_after,
            degraded_update: r.degraded_update,
            model: r.model.map(Into::into),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub problem: String,
    pub n: usize,
    pub seed: u64,
    pub config: SolverConfig,
    pub termination: Termination,
    pub n_evals: usize,
    #[serde(with = "crate::real17")]
    pub best_value: f64,
    pub iterations: Vec<TraceIteration>,
    #[serde(with = "crate::real17::history")]
    pub eval_history: Vec<(usize, f64)>,
}

impl TraceDocument {
    pub fn new(problem: &str, cfg: &SolverConfig, result: &SolveResult) -> Self {
        TraceDocument {
            problem: problem.to_string(),
            n: result.best_point.len(),
            seed: cfg.seed,
            config: cfg.clone(),
            termination: result.termination,
            n_evals: result.n_evals,
            best_value: result.best_value,
            iterations: result.trace.iter().map(Into::into).collect(),
            eval_history: result.eval_history.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialization cannot fail")
    }
}
