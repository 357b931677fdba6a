//! Classic unconstrained test functions with standard starting points.
//!
//! Formulas follow the usual CUTE definitions (Bongartz, Conn, Gould and
//! Toint, 1995); the chained Rosenbrock variant is the one of Toint (1978),
//! written `sum 4 (x_i^2 - x_{i+1})^2 + (x_i - 1)^2`.

use crate::error::{Error, Result};

/// Reference optimal value used to normalize accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceValue {
    Analytic(f64),
    /// No closed form; the benchmark uses the best value any run found.
    BestFound,
}

impl ReferenceValue {
    pub fn analytic(self) -> Option<f64> {
        match self {
            ReferenceValue::Analytic(v) => Some(v),
            ReferenceValue::BestFound => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub name: &'static str,
    pub dim: usize,
    pub objective: fn(&[f64]) -> f64,
    pub x_start: Vec<f64>,
    pub f_ref: ReferenceValue,
    pub minimizer: Option<Vec<f64>>,
}

impl Problem {
    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }
}

/// A registry entry: name and the dimensions it accepts.
#[derive(Debug, Clone, Copy)]
pub struct ProblemInfo {
    pub name: &'static str,
    pub rule: &'static str,
    accepts: fn(usize) -> bool,
}

impl ProblemInfo {
    pub fn accepts(&self, n: usize) -> bool {
        (self.accepts)(n)
    }
}

const REGISTRY: [ProblemInfo; 8] = [
    ProblemInfo { name: "sphere", rule: "n >= 2", accepts: |n| n >= 2 },
    ProblemInfo { name: "chrosen", rule: "n >= 2", accepts: |n| n >= 2 },
    ProblemInfo { name: "srosenbr", rule: "n even, n >= 2", accepts: |n| n >= 2 && n % 2 == 0 },
    ProblemInfo { name: "arwhead", rule: "n >= 2", accepts: |n| n >= 2 },
    ProblemInfo { name: "woods", rule: "n divisible by 4", accepts: |n| n >= 4 && n % 4 == 0 },
    ProblemInfo { name: "dqrtic", rule: "n >= 2", accepts: |n| n >= 2 },
    ProblemInfo { name: "power", rule: "n >= 2", accepts: |n| n >= 2 },
    ProblemInfo { name: "bdqrtic", rule: "n >= 5", accepts: |n| n >= 5 },
];

pub fn registry() -> &'static [ProblemInfo] {
    &REGISTRY
}

pub fn make_problem(name: &str, n: usize) -> Result<Problem> {
    let info = REGISTRY
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownProblem(name.to_string()))?;
    if !info.accepts(n) {
        return Err(Error::InvalidDimension {
            name: name.to_string(),
            n,
            rule: info.rule,
        });
    }
    let ones = vec![1.0; n];
    let zero = ReferenceValue::Analytic(0.0);
    let (objective, x_start, f_ref, minimizer): (fn(&[f64]) -> f64, _, _, _) = match info.name {
        "sphere" => (sphere, ones, zero, Some(vec![0.0; n])),
        "chrosen" => (chrosen, vec![-1.0; n], zero, Some(vec![1.0; n])),
        "srosenbr" => {
            let start = (0..n).map(|i| if i % 2 == 0 { -1.2 } else { 1.0 }).collect();
            (srosenbr, start, zero, Some(ones))
        }
        "arwhead" => {
            let mut xm = ones.clone();
            xm[n - 1] = 0.0;
            (arwhead, ones, zero, Some(xm))
        }
        "woods" => {
            let start = (0..n).map(|i| if i % 2 == 0 { -3.0 } else { -1.0 }).collect();
            (woods, start, zero, Some(ones))
        }
        "dqrtic" => {
            let xm = (1..=n).map(|i| i as f64).collect();
            (dqrtic, vec![2.0; n], zero, Some(xm))
        }
        "power" => (power, ones, zero, Some(vec![0.0; n])),
        "bdqrtic" => (bdqrtic, ones, ReferenceValue::BestFound, None),
        _ => unreachable!("registry entry without a definition"),
    };
    Ok(Problem {
        name: info.name,
        dim: n,
        objective,
        x_start,
        f_ref,
        minimizer,
    })
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn chrosen(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 4.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

pub fn srosenbr(x: &[f64]) -> f64 {
    x.chunks_exact(2)
        .map(|p| 100.0 * (p[1] - p[0] * p[0]).powi(2) + (1.0 - p[0]).powi(2))
        .sum()
}

pub fn arwhead(x: &[f64]) -> f64 {
    let (last, head) = x.split_last().expect("n >= 2");
    let xn2 = last * last;
    head.iter()
        .map(|v| (v * v + xn2).powi(2) - 4.0 * v + 3.0)
        .sum()
}

pub fn woods(x: &[f64]) -> f64 {
    x.chunks_exact(4)
        .map(|b| {
            100.0 * (b[1] - b[0] * b[0]).powi(2)
                + (1.0 - b[0]).powi(2)
                + 90.0 * (b[3] - b[2] * b[2]).powi(2)
                + (1.0 - b[2]).powi(2)
                + 10.0 * (b[1] + b[3] - 2.0).powi(2)
                + 0.1 * (b[1] - b[3]).powi(2)
        })
        .sum()
}

pub fn dqrtic(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (v - (i + 1) as f64).powi(4))
        .sum()
}

pub fn power(x: &[f64]) -> f64 {
    let s: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v * v)
        .sum();
    s * s
}

pub fn bdqrtic(x: &[f64]) -> f64 {
    let n = x.len();
    let xn2 = x[n - 1] * x[n - 1];
    x.windows(4)
        .take(n - 4)
        .map(|w| {
            let q = w[0] * w[0]
                + 2.0 * w[1] * w[1]
                + 3.0 * w[2] * w[2]
                + 4.0 * w[3] * w[3]
                + 5.0 * xn2;
            (3.0 - 4.0 * w[0]).powi(2) + q * q
        })
        .sum()
}
