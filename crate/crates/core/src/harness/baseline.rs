//! Nelder–Mead simplex search used as the comparison solver.

use crate::error::{Error, Result};
use crate::solver::{comparable, CountingObjective};

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineResult {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub f_init: f64,
    pub n_evals: usize,
    pub budget_exhausted: bool,
    pub eval_history: Vec<(usize, f64)>,
}

/// Minimizes `obj` from `x0` with at most `max_fevals` distinct evaluations.
///
/// The initial simplex perturbs each coordinate by 5% (or 0.00025 for a zero
/// coordinate). Stops when the simplex values and vertices collapse below
/// `tol` or the budget runs out.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    obj: &mut CountingObjective<F>,
    x0: &[f64],
    max_fevals: usize,
    tol: f64,
) -> Result<BaselineResult> {
    obj.set_budget(Some(max_fevals));
    let f_init = obj.eval(x0)?;
    let budget_exhausted = match search(obj, x0, f_init, tol) {
        Ok(()) => false,
        Err(Error::BudgetExhausted(_)) => true,
        Err(e) => return Err(e),
    };
    let (best_point, best_value) = obj
        .best()
        .map(|(x, v)| (x.to_vec(), v))
        .expect("start point evaluated");
    Ok(BaselineResult {
        best_point,
        best_value,
        f_init,
        n_evals: obj.n_evals(),
        budget_exhausted,
        eval_history: obj.history().to_vec(),
    })
}

fn search<F: FnMut(&[f64]) -> f64>(
    obj: &mut CountingObjective<F>,
    x0: &[f64],
    f0: f64,
    tol: f64,
) -> Result<()> {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), comparable(f0)));
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] = if v[i] != 0.0 { 1.05 * v[i] } else { 0.00025 };
        let f = comparable(obj.eval(&v)?);
        simplex.push((v, f));
    }
    let mut eval = |x: &[f64]| obj.eval(x).map(comparable);
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        let spread = simplex[1..]
            .iter()
            .flat_map(|(v, _)| v.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if (worst - best).abs() <= tol * (1.0 + best.abs()) && spread <= tol {
            return Ok(());
        }

        let mut centroid = vec![0.0; n];
        for (v, _) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let toward = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = toward(REFLECT);
        let fr = eval(&xr)?;
        if fr < best {
            let xe = toward(REFLECT * EXPAND);
            let fe = eval(&xe)?;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            let xc = toward(REFLECT * CONTRACT);
            let fc = eval(&xc)?;
            (xc, fc)
        } else {
            let xc = toward(-CONTRACT);
            let fc = eval(&xc)?;
            (xc, fc)
        };
        if fc < worst.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        let x_best = simplex[0].0.clone();
        for (v, f) in simplex.iter_mut().skip(1) {
            for (x, b) in v.iter_mut().zip(&x_best) {
                *x = b + SHRINK * (*x - b);
            }
            *f = eval(v)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_a_quadratic() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2);
        let mut obj = CountingObjective::new(f);
        let r = nelder_mead(&mut obj, &[0.0, 0.0], 500, 1e-10).unwrap();
        assert!(r.best_value < 1e-8, "{}", r.best_value);
        assert!(!r.budget_exhausted);
    }

    #[test]
    fn respects_budget() {
        let mut obj = CountingObjective::new(|x: &[f64]| x.iter().map(|v| v * v).sum());
        let r = nelder_mead(&mut obj, &[1.0; 5], 17, 0.0).unwrap();
        assert!(r.budget_exhausted);
        assert_eq!(r.n_evals, 17);
    }
}
