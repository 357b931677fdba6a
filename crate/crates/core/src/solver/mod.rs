//! The two-dimensional model-based subspace method.
//!
//! Each iteration works in the plane `x_k + span{d1, d2}`: `d1` is the
//! direction of the last accepted step and `d2` a fresh random direction
//! orthogonal to it. The model along `d1` is inherited from the previous
//! iteration; three new points along `d2` complete it to a 2-D quadratic.
//! The trust-region step on that model (and, if it disappoints, on a refit
//! "modified" model) proposes the next iterate. After the step a full
//! six-point fit in the new frame supplies the next 1-D model.
//!
//! Iterates never increase `f`. All randomness comes from the config seed,
//! so a given problem, start and config reproduce the same trace bit for bit.

mod objective;
pub mod trace;

pub use objective::{comparable, CountingObjective};

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    axpy, derive_next_frame, dot, from_plane, norm, orthonormal_complement, project_1d, sub,
    to_plane, Frame, PlaneCoords, SeededRng,
};
use crate::quadmodel::{
    build_full_2d, build_qk, fit_initial_1d, poised_subset_indices, restrict_to_axis,
    InterpPoint, Quad1D, Quad2D,
};
use crate::trs::{solve_trs, TrsResult};

/// Starting direction for the initialization line search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialDirection {
    FirstAxis,
    Vector(#[serde(with = "crate::real17::vec")] Vec<f64>),
}

/// Stop once `f_acc` relative to `f_best_known` reaches `facc`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetAccuracy {
    #[serde(with = "crate::real17")]
    pub facc: f64,
    #[serde(with = "crate::real17")]
    pub f_best_known: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    #[serde(with = "crate::real17")]
    pub delta1: f64,
    #[serde(with = "crate::real17")]
    pub delta_low: f64,
    #[serde(with = "crate::real17")]
    pub delta_upper: f64,
    #[serde(with = "crate::real17")]
    pub gamma1: f64,
    #[serde(with = "crate::real17")]
    pub gamma2: f64,
    #[serde(with = "crate::real17")]
    pub eta: f64,
    #[serde(with = "crate::real17")]
    pub eta0: f64,
    pub d_init: InitialDirection,
    pub max_fevals: usize,
    pub seed: u64,
    pub target: Option<TargetAccuracy>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            delta1: 1.0,
            delta_low: 1e-4,
            delta_upper: 1e4,
            gamma1: 10.0,
            gamma2: 0.1,
            eta: 0.2,
            eta0: 0.1,
            d_init: InitialDirection::FirstAxis,
            max_fevals: 10_000,
            seed: 0,
            target: None,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if !(self.delta_low > 0.0 && self.delta_low <= self.delta1 && self.delta1 <= self.delta_upper)
        {
            return bad("need 0 < delta_low <= delta1 <= delta_upper");
        }
        if !(self.gamma1 > 1.0) {
            return bad("gamma1 must exceed 1");
        }
        if !(self.gamma2 > 0.0 && self.gamma2 < 1.0) {
            return bad("gamma2 must lie in (0, 1)");
        }
        if !(self.eta0 <= self.eta) || !self.eta.is_finite() || !self.eta0.is_finite() {
            return bad("need eta0 <= eta");
        }
        if self.max_fevals == 0 {
            return bad("max_fevals must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// Trust-region point accepted on the ratio test.
    Success,
    /// One of the three interpolation points was the best candidate.
    InterpPointSuccess,
    /// Accepted after refitting the modified model.
    ModifiedSuccess,
    /// No new point beat the incumbent; radius and `d1` kept.
    StallDuplicate,
    /// Ratio test failed after the modified model; iterate kept, radius shrunk.
    StallReject,
}

impl StepKind {
    pub fn is_stall(self) -> bool {
        matches!(self, StepKind::StallDuplicate | StepKind::StallReject)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    RadiusBelowLow,
    BudgetExhausted,
    TargetReached,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub k: usize,
    pub x_k: Vec<f64>,
    pub f_k: f64,
    pub delta_k: f64,
    pub rho_k: Option<f64>,
    pub step_kind: StepKind,
    pub n_evals_after: usize,
    pub degraded_update: bool,
    /// The 2-D model of this iteration, when it could be formed.
    pub model: Option<Quad2D>,
    pub f_next: f64,
    /// `None` on the iteration that terminated on the radius test.
    pub delta_next: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub f_init: f64,
    pub n_evals: usize,
    pub termination: Termination,
    pub trace: Vec<IterationRecord>,
    pub eval_history: Vec<(usize, f64)>,
}

/// Everything the end-of-iteration model update produced.
#[derive(Debug)]
pub struct UpdateView<'a> {
    pub frame: &'a Frame,
    pub model_plus: Quad2D,
    pub q_sub_next: Quad1D,
    pub delta_next: f64,
    pub degraded: bool,
}

/// Per-iteration state handed to an [`IterationObserver`].
#[derive(Debug)]
pub struct IterationView<'a> {
    pub k: usize,
    pub frame: &'a Frame,
    pub delta: f64,
    pub f_k: f64,
    pub x_prev: Option<&'a [f64]>,
    pub q_sub: Quad1D,
    pub model: Option<Quad2D>,
    pub trs: Option<TrsResult>,
    pub step_kind: StepKind,
    pub rho: Option<f64>,
    pub x_next: &'a [f64],
    pub f_next: f64,
    pub update: Option<UpdateView<'a>>,
}

pub trait IterationObserver {
    fn observe(&mut self, view: &IterationView<'_>);
}

impl IterationObserver for () {
    fn observe(&mut self, _: &IterationView<'_>) {}
}

impl<T: FnMut(&IterationView<'_>)> IterationObserver for T {
    fn observe(&mut self, view: &IterationView<'_>) {
        self(view)
    }
}

/// Minimizes `obj` from `x0`. The config's `max_fevals` replaces any budget
/// already set on the objective.
pub fn solve<F: FnMut(&[f64]) -> f64>(
    obj: &mut CountingObjective<F>,
    x0: &[f64],
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    solve_observed(obj, x0, cfg, &mut ())
}

pub fn solve_observed<F: FnMut(&[f64]) -> f64>(
    obj: &mut CountingObjective<F>,
    x0: &[f64],
    cfg: &SolverConfig,
    observer: &mut dyn IterationObserver,
) -> Result<SolveResult> {
    cfg.validate()?;
    let n = x0.len();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig("starting point must be finite".into()));
    }
    obj.set_budget(Some(cfg.max_fevals));
    let f_init = obj.eval(x0)?;
    if !f_init.is_finite() {
        return Err(Error::NonFiniteStart);
    }
    let target_value = cfg
        .target
        .map(|t| f_init + t.facc * (t.f_best_known - f_init));

    let mut trace = Vec::new();
    let termination = {
        let mut run = Run {
            obj: &mut *obj,
            cfg,
            rng: SeededRng::new(cfg.seed),
            target_value,
            trace: &mut trace,
        };
        match run.execute(x0, f_init, observer) {
            Ok(t) => t,
            Err(Error::BudgetExhausted(_)) => Termination::BudgetExhausted,
            Err(e) => return Err(e),
        }
    };
    let (best_point, best_value) = obj
        .best()
        .map(|(x, v)| (x.to_vec(), v))
        .expect("at least the start point was evaluated");
    Ok(SolveResult {
        best_point,
        best_value,
        f_init,
        n_evals: obj.n_evals(),
        termination,
        trace,
        eval_history: obj.history().to_vec(),
    })
}

struct Run<'a, F> {
    obj: &'a mut CountingObjective<F>,
    cfg: &'a SolverConfig,
    rng: SeededRng,
    target_value: Option<f64>,
    trace: &'a mut Vec<IterationRecord>,
}

/// Iterate data carried between iterations.
struct State {
    k: usize,
    x_k: Vec<f64>,
    f_k: f64,
    x_prev: Option<Vec<f64>>,
    d1: Vec<f64>,
    q_sub: Quad1D,
    delta: f64,
}

#[derive(Clone)]
struct Candidate {
    x: Vec<f64>,
    f: Option<f64>,
}

impl Candidate {
    fn known(x: &[f64], f: f64) -> Self {
        Candidate {
            x: x.to_vec(),
            f: Some(f),
        }
    }

    fn lazy(x: Vec<f64>) -> Self {
        Candidate { x, f: None }
    }
}

/// Outcome of the trial step.
struct Trial {
    kind: StepKind,
    x_next: Vec<f64>,
    f_next: f64,
    rho: Option<f64>,
    degraded: bool,
}

fn ratio(model: &Quad2D, p: PlaneCoords, f_new: f64, f_k: f64) -> f64 {
    let num = f_new - f_k;
    let den = model.eval(p) - model.q0;
    if den.abs() <= 1e-14 * (1.0 + f_k.abs()) {
        if num < 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    } else {
        num / den
    }
}

impl<F: FnMut(&[f64]) -> f64> Run<'_, F> {
    fn eval(&mut self, x: &[f64]) -> Result<f64> {
        self.obj.eval(x).map(comparable)
    }

    fn target_reached(&self) -> bool {
        match (self.target_value, self.obj.best()) {
            (Some(t), Some((_, b))) => b <= t,
            _ => false,
        }
    }

    fn execute(
        &mut self,
        x0: &[f64],
        f0: f64,
        observer: &mut dyn IterationObserver,
    ) -> Result<Termination> {
        let mut state = self.initialize(x0, f0)?;
        loop {
            if self.target_reached() {
                return Ok(Termination::TargetReached);
            }
            if let Some(t) = self.iteration(&mut state, observer)? {
                return Ok(t);
            }
        }
    }

    /// Three points on the initial line, the best of them as `x_1`, and the
    /// 1-D model along the direction from the worst point to `x_1`.
    fn initialize(&mut self, x0: &[f64], f0: f64) -> Result<State> {
        let n = x0.len();
        let d = match &self.cfg.d_init {
            InitialDirection::FirstAxis => {
                let mut e = vec![0.0; n];
                e[0] = 1.0;
                e
            }
            InitialDirection::Vector(v) => {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: v.len(),
                    });
                }
                let nv = norm(v);
                if !(nv > 0.0 && nv.is_finite()) {
                    return Err(Error::InvalidConfig("initial direction must be nonzero".into()));
                }
                v.iter().map(|x| x / nv).collect()
            }
        };
        let delta = self.cfg.delta1;
        let ya = x0.to_vec();
        let fa = comparable(f0);
        let yb = axpy(x0, delta, &d);
        let fb = self.eval(&yb)?;
        let yc = if fa <= fb {
            axpy(x0, 2.0 * delta, &d)
        } else {
            axpy(x0, -delta, &d)
        };
        let fc = self.eval(&yc)?;
        let ys = [ya, yb, yc];
        let fs = [fa, fb, fc];
        let mut imin = 0;
        let mut imax = 2;
        for i in 0..3 {
            if fs[i] < fs[imin] {
                imin = i;
            }
        }
        for i in (0..3).rev() {
            if fs[i] > fs[imax] {
                imax = i;
            }
        }
        if imin == imax {
            // all equal: first for the minimizer, last for the maximizer
            imin = 0;
            imax = 2;
        }
        let x1 = ys[imin].clone();
        let f1 = fs[imin];
        let toward = sub(&x1, &ys[imax]);
        let len = norm(&toward);
        let d1: Vec<f64> = toward.iter().map(|v| v / len).collect();
        let mut t = [0.0; 3];
        for i in 0..3 {
            t[i] = if i == imin {
                0.0
            } else {
                project_1d(&x1, &d1, &ys[i])?
            };
        }
        let q_sub = match fit_initial_1d(t, fs) {
            Ok(q) if q.is_finite() => q,
            _ => Quad1D::new(f1, 0.0, 0.0),
        };
        Ok(State {
            k: 1,
            x_k: x1,
            f_k: f1,
            x_prev: None,
            d1,
            q_sub,
            delta,
        })
    }

    fn is_duplicate(state: &State, x: &[f64]) -> bool {
        x == state.x_k.as_slice() || state.x_prev.as_deref() == Some(x)
    }

    /// Six-point model in `frame` over the first poised subset of the
    /// candidates (in order, duplicates removed). `pinned` must be in every
    /// subset. Unevaluated candidates are evaluated only when chosen; points
    /// with non-finite values are dropped.
    fn fit_six(
        &mut self,
        frame: &Frame,
        candidates: Vec<Candidate>,
        pinned: &[f64],
    ) -> Result<Option<Quad2D>> {
        let mut list: Vec<Candidate> = Vec::with_capacity(candidates.len());
        for mut c in candidates {
            if list.iter().any(|d| d.x == c.x) {
                continue;
            }
            if c.f.is_none() {
                c.f = self.obj.cached(&c.x).map(comparable);
            }
            list.push(c);
        }
        loop {
            list.retain(|c| c.f.map_or(true, f64::is_finite));
            let coords = list
                .iter()
                .map(|c| to_plane(frame, &c.x))
                .collect::<Result<Vec<_>>>()?;
            let Some(pin) = list.iter().position(|c| c.x == pinned) else {
                return Ok(None);
            };
            let available: Vec<bool> = list.iter().map(|c| c.f.is_some()).collect();
            let Some(idx) = poised_subset_indices(&coords, &[pin], &available) else {
                return Ok(None);
            };
            let mut dropped = false;
            for &i in &idx {
                if list[i].f.is_none() {
                    let v = self.eval(&list[i].x.clone())?;
                    list[i].f = Some(v);
                    dropped |= !v.is_finite();
                }
            }
            if dropped {
                continue;
            }
            let pts = idx.map(|i| InterpPoint {
                coords: coords[i],
                fval: list[i].f.expect("evaluated"),
            });
            return Ok(build_full_2d(&pts).ok().filter(Quad2D::is_finite));
        }
    }

    fn reserve_points(frame: &Frame, delta: f64) -> [Vec<f64>; 2] {
        let h = FRAC_1_SQRT_2 * delta;
        [
            from_plane(frame, PlaneCoords::new(h, h)),
            from_plane(frame, PlaneCoords::new(delta, 0.0)),
        ]
    }

    fn iteration(
        &mut self,
        state: &mut State,
        observer: &mut dyn IterationObserver,
    ) -> Result<Option<Termination>> {
        let delta = state.delta;
        let f_k = state.f_k;

        // interpolation set
        let d2 = orthonormal_complement(&state.d1, &mut self.rng)?;
        let frame = Frame::new(state.x_k.clone(), state.d1.clone(), d2)?;
        let p1 = PlaneCoords::new(0.0, delta);
        let y1 = from_plane(&frame, p1);
        let f1 = self.eval(&y1)?;
        let p2 = if f1 <= f_k {
            PlaneCoords::new(0.0, 2.0 * delta)
        } else {
            PlaneCoords::new(0.0, -delta)
        };
        let y2 = from_plane(&frame, p2);
        let f2 = self.eval(&y2)?;
        let beta_min = if f1 <= f2 { p1.beta } else { p2.beta };
        let p3 = PlaneCoords::new(delta, beta_min);
        let y3 = from_plane(&frame, p3);
        let f3 = self.eval(&y3)?;
        let ys = [(y1, f1, p1), (y2, f2, p2), (y3, f3, p3)];

        // model
        let pts = [
            InterpPoint { coords: p1, fval: f1 },
            InterpPoint { coords: p2, fval: f2 },
            InterpPoint { coords: p3, fval: f3 },
        ];
        let model = Some(build_qk(&state.q_sub, &pts)?).filter(Quad2D::is_finite);

        // trial step
        let trs = model.map(|m| solve_trs(&m, delta));
        let trial = self.trial_step(state, &frame, model, trs, &ys)?;

        // update
        let mut record = IterationRecord {
            k: state.k,
            x_k: state.x_k.clone(),
            f_k,
            delta_k: delta,
            rho_k: trial.rho,
            step_kind: trial.kind,
            n_evals_after: self.obj.n_evals(),
            degraded_update: trial.degraded,
            model,
            f_next: trial.f_next,
            delta_next: None,
        };

        if delta < self.cfg.delta_low {
            observer.observe(&IterationView {
                k: state.k,
                frame: &frame,
                delta,
                f_k,
                x_prev: state.x_prev.as_deref(),
                q_sub: state.q_sub,
                model,
                trs,
                step_kind: trial.kind,
                rho: trial.rho,
                x_next: &trial.x_next,
                f_next: trial.f_next,
                update: None,
            });
            self.trace.push(record);
            return Ok(Some(Termination::RadiusBelowLow));
        }

        let delta_next = match trial.kind {
            StepKind::StallDuplicate => delta,
            _ if trial.rho.is_some_and(|r| r >= self.cfg.eta) => {
                (self.cfg.gamma1 * delta).min(self.cfg.delta_upper)
            }
            _ => self.cfg.gamma2 * delta,
        };
        let next_frame = if trial.x_next != state.x_k {
            derive_next_frame(&frame, &trial.x_next)?
        } else {
            frame.clone()
        };

        let [y4, y5] = Self::reserve_points(&frame, delta);
        let mut cands = Vec::with_capacity(8);
        if let Some(p) = &state.x_prev {
            cands.push(Candidate::lazy(p.clone()));
        }
        cands.push(Candidate::known(&state.x_k, f_k));
        cands.push(Candidate::known(&trial.x_next, trial.f_next));
        for (y, f, _) in &ys {
            cands.push(Candidate::known(y, *f));
        }
        cands.push(Candidate::lazy(y4));
        cands.push(Candidate::lazy(y5));
        let fitted = self.fit_six(&next_frame, cands, &trial.x_next)?;
        let mut degraded = trial.degraded;
        let mut model_plus = match fitted {
            Some(q) => q,
            None => {
                degraded = true;
                log::debug!("iteration {}: no poised set for the updated model", state.k);
                match model {
                    Some(m) => reexpress_in(&m, &frame, &next_frame)?,
                    None => Quad2D::default(),
                }
            }
        };
        model_plus.q0 = trial.f_next;
        if !model_plus.is_finite() {
            degraded = true;
            model_plus = Quad2D {
                q0: trial.f_next,
                ..Quad2D::default()
            };
        }
        let q_sub_next = restrict_to_axis(&model_plus);

        record.degraded_update = degraded;
        record.delta_next = Some(delta_next);
        record.n_evals_after = self.obj.n_evals();
        observer.observe(&IterationView {
            k: state.k,
            frame: &frame,
            delta,
            f_k,
            x_prev: state.x_prev.as_deref(),
            q_sub: state.q_sub,
            model,
            trs,
            step_kind: trial.kind,
            rho: trial.rho,
            x_next: &trial.x_next,
            f_next: trial.f_next,
            update: Some(UpdateView {
                frame: &next_frame,
                model_plus,
                q_sub_next,
                delta_next,
                degraded,
            }),
        });
        self.trace.push(record);

        let x_old = std::mem::replace(&mut state.x_k, trial.x_next);
        state.x_prev = Some(x_old);
        state.f_k = trial.f_next;
        state.d1 = next_frame.d1().to_vec();
        state.q_sub = q_sub_next;
        state.delta = delta_next;
        state.k += 1;
        Ok(None)
    }

    fn trial_step(
        &mut self,
        state: &State,
        frame: &Frame,
        model: Option<Quad2D>,
        trs: Option<TrsResult>,
        ys: &[(Vec<f64>, f64, PlaneCoords); 3],
    ) -> Result<Trial> {
        let f_k = state.f_k;
        let stall = |kind, rho, degraded| Trial {
            kind,
            x_next: state.x_k.clone(),
            f_next: f_k,
            rho,
            degraded,
        };

        // candidates in order: incumbent, trust-region point, y1, y2, y3
        let mut best: (Vec<f64>, f64, PlaneCoords, bool) =
            (state.x_k.clone(), f_k, PlaneCoords::ORIGIN, false);
        let mut pre = None;
        if let Some(t) = &trs {
            let x_pre = from_plane(frame, t.point);
            let f_pre = self.eval(&x_pre)?;
            if f_pre < best.1 {
                best = (x_pre.clone(), f_pre, t.point, false);
            }
            pre = Some((x_pre, f_pre, t.point));
        }
        for (y, f, p) in ys {
            if *f < best.1 {
                best = (y.clone(), *f, *p, true);
            }
        }
        let (x_plus, f_plus, p_plus, from_set) = best;

        let (Some(model), Some((x_pre, f_pre, p_pre))) = (model, pre) else {
            // non-finite model values: step away, shrinking the radius
            if x_plus == state.x_k {
                return Ok(stall(StepKind::StallReject, None, true));
            }
            return Ok(Trial {
                kind: StepKind::InterpPointSuccess,
                x_next: x_plus,
                f_next: f_plus,
                rho: None,
                degraded: true,
            });
        };

        let improved = x_plus != state.x_k;
        if !improved && Self::is_duplicate(state, &x_pre) {
            return Ok(stall(StepKind::StallDuplicate, None, false));
        }
        // with no improvement the ratio is judged at the trial point
        let (p_rho, f_rho) = if improved { (p_plus, f_plus) } else { (p_pre, f_pre) };
        let rho = ratio(&model, p_rho, f_rho, f_k);
        if improved && (rho >= self.cfg.eta || from_set) {
            return Ok(Trial {
                kind: if from_set {
                    StepKind::InterpPointSuccess
                } else {
                    StepKind::Success
                },
                x_next: x_plus,
                f_next: f_plus,
                rho: Some(rho),
                degraded: false,
            });
        }

        // modified model on already evaluated points (plus a reserve point)
        let [y4, y5] = Self::reserve_points(frame, state.delta);
        let mut cands = Vec::with_capacity(8);
        if let Some(p) = &state.x_prev {
            cands.push(Candidate::lazy(p.clone()));
        }
        cands.push(Candidate::known(&state.x_k, f_k));
        if improved {
            cands.push(Candidate::known(&x_plus, f_plus));
        } else {
            cands.push(Candidate::known(&x_pre, f_pre));
        }
        for (y, f, _) in ys {
            cands.push(Candidate::known(y, *f));
        }
        cands.push(Candidate::lazy(y4));
        cands.push(Candidate::lazy(y5));
        let Some(q_mod) = self.fit_six(frame, cands, &state.x_k)? else {
            log::debug!("iteration {}: no poised set for the modified model", state.k);
            return Ok(stall(StepKind::StallReject, Some(rho), true));
        };
        let t_mod = solve_trs(&q_mod, state.delta);
        let x_mod = from_plane(frame, t_mod.point);
        if Self::is_duplicate(state, &x_mod) {
            return Ok(stall(StepKind::StallDuplicate, Some(rho), false));
        }
        let f_mod = self.eval(&x_mod)?;
        let (x_plus, f_plus, p_plus) = if f_mod < f_plus {
            (x_mod, f_mod, t_mod.point)
        } else {
            (x_plus, f_plus, p_plus)
        };
        if x_plus == state.x_k {
            return Ok(stall(StepKind::StallReject, Some(rho), false));
        }
        let rho = ratio(&model, p_plus, f_plus, f_k);
        if rho >= self.cfg.eta0 {
            Ok(Trial {
                kind: StepKind::ModifiedSuccess,
                x_next: x_plus,
                f_next: f_plus,
                rho: Some(rho),
                degraded: false,
            })
        } else {
            Ok(stall(StepKind::StallReject, Some(rho), false))
        }
    }
}

/// `model` (in `old` coordinates) written in the coordinates of `new`, a
/// frame spanning the same plane.
fn reexpress_in(model: &Quad2D, old: &Frame, new: &Frame) -> Result<Quad2D> {
    let shift = to_plane(old, new.origin())?;
    let r = [
        [dot(new.d1(), old.d1()), dot(new.d2(), old.d1())],
        [dot(new.d1(), old.d2()), dot(new.d2(), old.d2())],
    ];
    Ok(model.reexpress(shift, r))
}
