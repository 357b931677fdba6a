//! Independent oracles and checks shared by the integration tests.
#![allow(dead_code)]

use mosub::geometry::{from_plane, norm, sub, to_plane, PlaneCoords};
use mosub::quadmodel::{Quad2D, LagrangeBasis};
use mosub::solver::{IterationView, StepKind};
use mosub::trs::{sym_eigen2, TrsResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closed-form basis for the layout `(0, D), (0, -D), (D, D)`, written out
/// by hand from the 3x3 interpolation system.
pub fn closed_form_case1(q0: f64, a: f64, b: f64, d: f64) -> [[f64; 4]; 3] {
    let c01 = q0;
    let c02 = q0;
    let c03 = q0 + a * d + b * d * d;
    let d2 = d * d;
    // [constant, beta, beta^2, alpha beta]
    [
        [c01, 1.0 / (2.0 * d), (1.0 - 2.0 * c01) / (2.0 * d2), -1.0 / d2],
        [c02, -1.0 / (2.0 * d), (1.0 - 2.0 * c02) / (2.0 * d2), 0.0],
        [c03, 0.0, -c03 / d2, 1.0 / d2],
    ]
}

/// Closed-form basis for the layout `(0, D), (0, 2D), (D, D)`.
pub fn closed_form_case2(q0: f64, a: f64, b: f64, d: f64) -> [[f64; 4]; 3] {
    let c01 = q0;
    let c02 = q0;
    let c03 = q0 + a * d + b * d * d;
    let d2 = d * d;
    [
        [c01, (4.0 - 3.0 * c01) / (2.0 * d), (-2.0 + c01) / (2.0 * d2), -1.0 / d2],
        [c02, -(1.0 + 3.0 * c02) / (2.0 * d), (1.0 + c02) / (2.0 * d2), 0.0],
        [c03, -3.0 * c03 / (2.0 * d), c03 / (2.0 * d2), 1.0 / d2],
    ]
}

pub fn layout(case: u8, d: f64) -> [PlaneCoords; 3] {
    let second = if case == 1 { -d } else { 2.0 * d };
    [
        PlaneCoords::new(0.0, d),
        PlaneCoords::new(0.0, second),
        PlaneCoords::new(d, d),
    ]
}

/// Largest componentwise deviation between a computed basis and a closed
/// form, scaled by `1 + |closed form|`.
pub fn basis_deviation(basis: &LagrangeBasis, closed: &[[f64; 4]; 3]) -> f64 {
    let mut worst = 0.0f64;
    for (ell, want) in basis.ell.iter().zip(closed) {
        assert_eq!(ell.a, 0.0);
        assert_eq!(ell.b, 0.0);
        let got = [ell.q0, ell.c, ell.d, ell.e];
        for (g, w) in got.iter().zip(want) {
            worst = worst.max((g - w).abs() / (1.0 + w.abs()));
        }
    }
    worst
}

/// Maximum of `|q|` over the delta-box by a 401 x 401 grid, each of the best
/// grid points then polished by a shrinking pattern search inside its cell.
pub fn grid_max_abs(q: &Quad2D, delta: f64) -> (f64, f64) {
    const M: usize = 401;
    let h = 2.0 * delta / (M - 1) as f64;
    let at = |i: usize| -delta + h * i as f64;
    // the eight largest grid values
    let mut top: Vec<(f64, f64, f64)> = Vec::with_capacity(9);
    for i in 0..M {
        for j in 0..M {
            let (x, y) = (at(i), at(j));
            let v = q.eval(PlaneCoords::new(x, y)).abs();
            if top.len() < 8 || v > top[top.len() - 1].0 {
                let pos = top.partition_point(|c| c.0 >= v);
                top.insert(pos, (v, x, y));
                top.truncate(8);
            }
        }
    }
    let raw = top[0].0;
    let clamp = |v: f64| v.clamp(-delta, delta);
    let mut polished = raw;
    for &(v0, x0, y0) in &top {
        let (mut x, mut y, mut v) = (x0, y0, v0);
        let mut step = h;
        for _ in 0..200 {
            let mut moved = false;
            for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
                let (nx, ny) = (clamp(x + dx * step), clamp(y + dy * step));
                let nv = q.eval(PlaneCoords::new(nx, ny)).abs();
                if nv > v {
                    (x, y, v) = (nx, ny, nv);
                    moved = true;
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        polished = polished.max(v);
    }
    (raw, polished)
}

pub fn random_quad(r: &mut impl Rng, scale: f64) -> Quad2D {
    let mut c = || scale * (2.0 * r.random::<f64>() - 1.0);
    Quad2D::new(c(), c(), c(), c(), c(), c())
}

/// A quadratic whose gradient is orthogonal to the lowest-curvature
/// eigenvector and small enough for the hard case to occur on the
/// `delta`-disk.
pub fn hard_case_quad(r: &mut impl Rng, delta: f64) -> Quad2D {
    let theta = r.random::<f64>() * std::f64::consts::PI;
    let (s, c) = theta.sin_cos();
    let l0 = -(0.1 + 3.0 * r.random::<f64>());
    let l1 = l0 + 0.5 + 3.0 * r.random::<f64>();
    // H = V diag(l0, l1) V^T with v0 = (c, s), v1 = (-s, c)
    let h00 = l0 * c * c + l1 * s * s;
    let h11 = l0 * s * s + l1 * c * c;
    let h01 = (l0 - l1) * c * s;
    // gradient along v1 with |g| < (l1 - l0) * delta
    let gmag = (2.0 * r.random::<f64>() - 1.0) * 0.9 * (l1 - l0) * delta;
    let g = [-s * gmag, c * gmag];
    Quad2D::new(r.random::<f64>(), g[0], 0.5 * h00, g[1], 0.5 * h11, h01)
}

pub struct KktReport {
    pub stationarity: f64,
    pub min_shifted_eig: f64,
    pub complementarity: f64,
    pub feasibility: f64,
}

pub fn kkt(q: &Quad2D, r: &TrsResult, delta: f64) -> KktReport {
    let h = q.hessian();
    let g = q.gradient();
    let l = r.lagrange_multiplier;
    let p = [r.point.alpha, r.point.beta];
    let res = [
        (h[0][0] + l) * p[0] + h[0][1] * p[1] + g[0],
        h[1][0] * p[0] + (h[1][1] + l) * p[1] + g[1],
    ];
    let eig = sym_eigen2(h);
    KktReport {
        stationarity: res[0].hypot(res[1]) / (1.0 + g[0].hypot(g[1])),
        min_shifted_eig: eig.values[0] + l,
        complementarity: (l * (r.point.norm() - delta)).abs(),
        feasibility: r.point.norm() - delta,
    }
}

/// Smallest value of `q` over `samples` uniform points of the `delta`-disk.
pub fn sampled_disk_min(q: &Quad2D, delta: f64, samples: usize, r: &mut impl Rng) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..samples {
        let rad = delta * r.random::<f64>().sqrt();
        let ang = 2.0 * std::f64::consts::PI * r.random::<f64>();
        let p = PlaneCoords::new(rad * ang.cos(), rad * ang.sin());
        best = best.min(q.eval(p));
    }
    // the boundary, where most minimizers lie
    for i in 0..samples.min(4096) {
        let ang = 2.0 * std::f64::consts::PI * i as f64 / samples.min(4096) as f64;
        best = best.min(q.eval(PlaneCoords::new(delta * ang.cos(), delta * ang.sin())));
    }
    best
}

/// Violations of the per-iteration descent and model-decrease relations.
#[derive(Default, Debug)]
pub struct ChainCheck {
    pub iterations: usize,
    pub failures: Vec<String>,
}

impl ChainCheck {
    pub fn observe(&mut self, v: &IterationView<'_>, eta: f64, slack: f64) {
        self.iterations += 1;
        let k = v.k;
        let mut fail = |m: String| self.failures.push(format!("k={k}: {m}"));
        if v.f_next > v.f_k {
            fail(format!("ascent {} -> {}", v.f_k, v.f_next));
        }
        // next model on its own disk (its center value is f(x_k))
        if let (Some(_), Some(t)) = (v.model, v.trs) {
            if t.value > v.f_k + slack {
                fail(format!("min Q_k = {} above f(x_k) = {}", t.value, v.f_k));
            }
        }
        if v.step_kind == StepKind::Success {
            let m = v.model.expect("success needs a model");
            let p = to_plane(v.frame, v.x_next).expect("x_next in plane");
            let bound = v.f_k - eta * (m.q0 - m.eval(p));
            if v.f_next > bound + slack {
                fail(format!("sufficient decrease: {} > {}", v.f_next, bound));
            }
        }
        if let Some(u) = &v.update {
            let t = mosub::trs::solve_trs(&u.model_plus, v.delta);
            if t.value > v.f_next + slack {
                fail(format!("min Q+ = {} above f(x_k+1) = {}", t.value, v.f_next));
            }
            let m1 = u.q_sub_next.min_on_interval(-v.delta, v.delta);
            if m1 > v.f_next + slack {
                fail(format!("min Q_sub = {m1} above f(x_k+1) = {}", v.f_next));
            }
            // disk centered at x_k, when it contains x_{k+1}
            let step = norm(&sub(v.x_next, v.frame.origin()));
            if step <= v.delta {
                let c = to_plane(u.frame, v.frame.origin()).expect("x_k in plane");
                let shifted = u.model_plus.reexpress(c, [[1.0, 0.0], [0.0, 1.0]]);
                let t = mosub::trs::solve_trs(&shifted, v.delta);
                if t.value > v.f_next + slack {
                    fail(format!("min Q+ around x_k = {} above {}", t.value, v.f_next));
                }
            }
        }
    }
}

/// Largest relative mismatch between the iteration model and `f` on a 5 x 5
/// grid of the current trust-region box.
pub fn grid_mismatch(v: &IterationView<'_>, f: &dyn Fn(&[f64]) -> f64) -> f64 {
    let m = v.model.expect("finite model");
    let mut worst = 0.0f64;
    for i in 0..5 {
        for j in 0..5 {
            let p = PlaneCoords::new(
                v.delta * (-1.0 + 0.5 * i as f64),
                v.delta * (-1.0 + 0.5 * j as f64),
            );
            let fx = f(&from_plane(v.frame, p));
            worst = worst.max((m.eval(p) - fx).abs() / (1.0 + fx.abs()));
        }
    }
    worst
}

/// `f(x) = x^T A x / 2 + g^T x` with `A = B^T B / n + I`.
pub struct ConvexQuadratic {
    pub a: Vec<Vec<f64>>,
    pub g: Vec<f64>,
}

impl ConvexQuadratic {
    pub fn random(n: usize, seed: u64) -> Self {
        let mut r = rng(seed);
        let b: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| 2.0 * r.random::<f64>() - 1.0).collect())
            .collect();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = (0..n).map(|k| b[k][i] * b[k][j]).sum::<f64>() / n as f64;
            }
            a[i][i] += 1.0;
        }
        let g = (0..n).map(|_| 2.0 * r.random::<f64>() - 1.0).collect();
        ConvexQuadratic { a, g }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut v = 0.0;
        for (i, row) in self.a.iter().enumerate() {
            let ax: f64 = row.iter().zip(x).map(|(a, x)| a * x).sum();
            v += 0.5 * x[i] * ax + self.g[i] * x[i];
        }
        v
    }
}
