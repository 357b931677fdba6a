use std::collections::HashMap;

use crate::error::{Error, Result};

/// Black-box objective wrapper that caches values by exact point and counts
/// distinct evaluations.
///
/// Repeated queries at bit-identical points are served from the cache and do
/// not count. Once `budget` distinct points have been evaluated, further cache
/// misses fail with [`Error::BudgetExhausted`].
pub struct CountingObjective<F> {
    f: F,
    cache: HashMap<Vec<u64>, f64>,
    n_evals: usize,
    budget: Option<usize>,
    best: Option<(Vec<f64>, f64)>,
    history: Vec<(usize, f64)>,
}

/// Non-finite values order as `+inf`.
pub fn comparable(v: f64) -> f64 {
    if v.is_nan() || v == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        v
    }
}

fn key(x: &[f64]) -> Vec<u64> {
    x.iter().map(|v| v.to_bits()).collect()
}

impl<F: FnMut(&[f64]) -> f64> CountingObjective<F> {
    pub fn new(f: F) -> Self {
        CountingObjective {
            f,
            cache: HashMap::new(),
            n_evals: 0,
            budget: None,
            best: None,
            history: Vec::new(),
        }
    }

    pub fn with_budget(f: F, budget: usize) -> Self {
        CountingObjective {
            budget: Some(budget),
            ..Self::new(f)
        }
    }

    pub fn set_budget(&mut self, budget: Option<usize>) {
        self.budget = budget;
    }

    pub fn eval(&mut self, x: &[f64]) -> Result<f64> {
        let k = key(x);
        if let Some(&v) = self.cache.get(&k) {
            return Ok(v);
        }
        if let Some(b) = self.budget {
            if self.n_evals >= b {
                return Err(Error::BudgetExhausted(b));
            }
        }
        let v = (self.f)(x);
        self.n_evals += 1;
        self.cache.insert(k, v);
        let c = comparable(v);
        let improved = match &self.best {
            None => true,
            Some((_, b)) => c < *b,
        };
        if improved {
            self.best = Some((x.to_vec(), c));
        }
        let best_f = self.best.as_ref().map(|b| b.1).unwrap_or(c);
        self.history.push((self.n_evals, best_f));
        Ok(v)
    }

    /// Cached value at `x`, if any.
    pub fn cached(&self, x: &[f64]) -> Option<f64> {
        self.cache.get(&key(x)).copied()
    }

    pub fn n_evals(&self) -> usize {
        self.n_evals
    }

    pub fn remaining(&self) -> Option<usize> {
        self.budget.map(|b| b.saturating_sub(self.n_evals))
    }

    /// Best point and its value (non-finite values counted as `+inf`).
    pub fn best(&self) -> Option<(&[f64], f64)> {
        self.best.as_ref().map(|(x, v)| (x.as_slice(), *v))
    }

    /// `(evaluation index, best value so far)` after every counted evaluation.
    pub fn history(&self) -> &[(usize, f64)] {
        &self.history
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;

    #[test]
    fn cache_hits_do_not_count() {
        let calls = Cell::new(0);
        let mut obj = CountingObjective::new(|x: &[f64]| {
            calls.set(calls.get() + 1);
            x[0] * x[0]
        });
        assert_eq!(obj.eval(&[2.0, 0.0]).unwrap(), 4.0);
        assert_eq!(obj.eval(&[2.0, 0.0]).unwrap(), 4.0);
        assert_eq!(obj.n_evals(), 1);
        assert_eq!(calls.get(), 1);
        obj.eval(&[1.0, 0.0]).unwrap();
        assert_eq!(obj.n_evals(), 2);
        assert_eq!(obj.history(), &[(1, 4.0), (2, 1.0)]);
        assert_eq!(obj.best().unwrap().1, 1.0);
    }

    #[test]
    fn budget_is_enforced_on_misses_only() {
        let mut obj = CountingObjective::with_budget(|x: &[f64]| x[0], 2);
        obj.eval(&[1.0]).unwrap();
        obj.eval(&[2.0]).unwrap();
        assert_eq!(obj.eval(&[3.0]), Err(Error::BudgetExhausted(2)));
        assert_eq!(obj.eval(&[1.0]).unwrap(), 1.0);
        assert_eq!(obj.n_evals(), 2);
    }

    #[test]
    fn non_finite_values_rank_last() {
        let mut obj = CountingObjective::new(|x: &[f64]| if x[0] > 0.0 { f64::NAN } else { 5.0 });
        obj.eval(&[1.0]).unwrap();
        obj.eval(&[-1.0]).unwrap();
        assert_eq!(obj.best().unwrap(), (&[-1.0][..], 5.0));
        assert_eq!(obj.history()[0].1, f64::INFINITY);
    }
}
