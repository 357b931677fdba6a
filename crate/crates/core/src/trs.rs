//! Exact solution of the two-dimensional trust-region subproblem
//!
//! ```text
//! min Q(alpha, beta)  subject to  alpha^2 + beta^2 <= delta^2
//! ```
//!
//! Works in the eigenbasis of the 2x2 model Hessian. The boundary case solves
//! the secular equation `||(H + lambda I)^{-1} g|| = delta` on
//! `lambda > max(0, -lambda_min)` with a safeguarded Newton iteration on
//! `1/||p(lambda)|| - 1/delta`; the hard case adds the `lambda_min`
//! eigenvector to reach the boundary.

use serde::{Deserialize, Serialize};

use crate::geometry::PlaneCoords;
use crate::quadmodel::Quad2D;

const SECULAR_RTOL: f64 = 1e-12;
const MAX_SECULAR_ITERS: usize = 200;
const HARD_CASE_RTOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrsResult {
    pub point: PlaneCoords,
    pub value: f64,
    pub lagrange_multiplier: f64,
    pub on_boundary: bool,
    pub hard_case: bool,
}

/// Eigen-decomposition of a symmetric 2x2 matrix, eigenvalues ascending.
/// Each eigenvector has a nonnegative first component (second component
/// positive when the first is zero).
#[derive(Debug, Clone, Copy)]
pub struct SymEigen2 {
    pub values: [f64; 2],
    pub vectors: [[f64; 2]; 2],
}

pub fn sym_eigen2(h: [[f64; 2]; 2]) -> SymEigen2 {
    let (p, q, r) = (h[0][0], h[0][1], h[1][1]);
    let mean = 0.5 * (p + r);
    let half_diff = 0.5 * (p - r);
    let rad = half_diff.hypot(q);
    let values = [mean - rad, mean + rad];
    let vectors = if q == 0.0 {
        if p <= r {
            [[1.0, 0.0], [0.0, 1.0]]
        } else {
            [[0.0, 1.0], [1.0, 0.0]]
        }
    } else {
        // rotation angle of the principal axes; theta in (-pi/2, pi/2]
        let theta = 0.5 * q.atan2(half_diff);
        let (s, c) = theta.sin_cos();
        // (c, s) belongs to the larger eigenvalue
        let big = [c, s];
        let small = [-s, c];
        [canonical(small), canonical(big)]
    };
    SymEigen2 { values, vectors }
}

fn canonical(v: [f64; 2]) -> [f64; 2] {
    if v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0) {
        [-v[0], -v[1]]
    } else {
        v
    }
}

fn combine(vs: &[[f64; 2]; 2], w: [f64; 2]) -> PlaneCoords {
    PlaneCoords::new(
        w[0] * vs[0][0] + w[1] * vs[1][0],
        w[0] * vs[0][1] + w[1] * vs[1][1],
    )
}

/// Global minimizer of `q` over the disk of radius `delta`.
pub fn solve_trs(q: &Quad2D, delta: f64) -> TrsResult {
    assert!(delta > 0.0, "trust-region radius must be positive");
    let g = q.gradient();
    let eig = sym_eigen2(q.hessian());
    let [l0, l1] = eig.values;
    let [v0, v1] = eig.vectors;
    // gradient in the eigenbasis
    let gt = [g[0] * v0[0] + g[1] * v0[1], g[0] * v1[0] + g[1] * v1[1]];
    let gnorm = g[0].hypot(g[1]);

    let finish = |point: PlaneCoords, lambda: f64, on_boundary: bool, hard_case: bool| TrsResult {
        point,
        value: q.eval(point),
        lagrange_multiplier: lambda,
        on_boundary,
        hard_case,
    };

    if l0 > 0.0 {
        let newton = [-gt[0] / l0, -gt[1] / l1];
        if newton[0].hypot(newton[1]) <= delta {
            return finish(combine(&eig.vectors, newton), 0.0, false, false);
        }
    }

    let lo = (-l0).max(0.0);
    let scale = gnorm + delta * l0.abs().max(l1.abs());
    if gt[0].abs() <= HARD_CASE_RTOL * scale {
        // candidate hard case: lambda = lo, component along v0 is free
        let w1 = if l1 + lo > 0.0 { -gt[1] / (l1 + lo) } else { 0.0 };
        if w1.abs() <= delta {
            let tau = (delta * delta - w1 * w1).max(0.0).sqrt();
            let tau = if gt[0] > 0.0 { -tau } else { tau };
            let point = clamp_to_disk(combine(&eig.vectors, [tau, w1]), delta);
            return finish(point, lo, true, true);
        }
    }

    let step = |lambda: f64| [-gt[0] / (l0 + lambda), -gt[1] / (l1 + lambda)];
    let norm_at = |lambda: f64| {
        let s = step(lambda);
        s[0].hypot(s[1])
    };
    let mut a = lo;
    let mut b = lo + gnorm / delta + 1.0;
    while norm_at(b) > delta {
        b = lo + 2.0 * (b - lo);
    }
    let mut lambda = b;
    for _ in 0..MAX_SECULAR_ITERS {
        let s = step(lambda);
        let pn = s[0].hypot(s[1]);
        if (pn - delta).abs() <= SECULAR_RTOL * delta {
            break;
        }
        if pn > delta {
            a = lambda;
        } else {
            b = lambda;
        }
        // psi(lambda) = 1/||p|| - 1/delta, psi' = (sum gt_i^2/(l_i+lambda)^3)/||p||^3
        let cube = |v: f64| v * v * v;
        let d3 = gt[0] * gt[0] / cube(l0 + lambda) + gt[1] * gt[1] / cube(l1 + lambda);
        let psi = 1.0 / pn - 1.0 / delta;
        let dpsi = d3 / cube(pn);
        let mut next = lambda - psi / dpsi;
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        if next == lambda || b - a <= f64::EPSILON * b.abs().max(1.0) {
            break;
        }
        lambda = next;
    }
    let point = clamp_to_disk(combine(&eig.vectors, step(lambda)), delta);
    finish(point, lambda, true, false)
}

fn clamp_to_disk(p: PlaneCoords, delta: f64) -> PlaneCoords {
    let n = p.norm();
    if n > delta {
        PlaneCoords::new(p.alpha * delta / n, p.beta * delta / n)
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn convex_interior() {
        let r = solve_trs(&Quad2D::new(0.0, 0.0, 1.0, 0.0, 1.0, 0.0), 1.0);
        assert_eq!(r.point, PlaneCoords::ORIGIN);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.lagrange_multiplier, 0.0);
        assert!(!r.on_boundary);
    }

    #[test]
    fn linear_objective_hits_boundary() {
        let r = solve_trs(&Quad2D::new(0.0, -1.0, 0.0, 0.0, 0.0, 0.0), 2.0);
        assert!((r.point.alpha - 2.0).abs() < 1e-12 && r.point.beta.abs() < 1e-12);
        assert!((r.value + 2.0).abs() < 1e-12);
        assert!(r.on_boundary);
        assert!((r.lagrange_multiplier - 0.5).abs() < 1e-10);
    }

    #[test]
    fn bilinear_saddle() {
        let r = solve_trs(&Quad2D::new(0.0, 0.0, 0.0, 0.0, 0.0, 1.0), 1.0);
        assert!((r.value + 0.5).abs() < 1e-12);
        assert!((r.point.alpha - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((r.point.beta + FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(r.hard_case);
    }

    #[test]
    fn concave_radial_is_hard_case() {
        let r = solve_trs(&Quad2D::new(0.0, 0.0, -1.0, 0.0, -1.0, 0.0), 1.0);
        assert!((r.value + 1.0).abs() < 1e-12);
        assert!((r.point.norm() - 1.0).abs() < 1e-12);
        assert!(r.hard_case && r.on_boundary);
        assert_eq!(r.lagrange_multiplier, 2.0);
    }

    #[test]
    fn eigen_ordering_and_signs() {
        let e = sym_eigen2([[2.0, 1.0], [1.0, 2.0]]);
        assert!((e.values[0] - 1.0).abs() < 1e-15 && (e.values[1] - 3.0).abs() < 1e-15);
        for v in e.vectors {
            assert!(v[0] >= 0.0);
            assert!((v[0].hypot(v[1]) - 1.0).abs() < 1e-15);
        }
        let e = sym_eigen2([[3.0, 0.0], [0.0, -1.0]]);
        assert_eq!(e.values, [-1.0, 3.0]);
        assert_eq!(e.vectors, [[0.0, 1.0], [1.0, 0.0]]);
    }

    #[test]
    fn indefinite_with_gradient() {
        // -alpha^2 + beta^2 + 0.1 alpha; minimum on the boundary near (-1, 0)
        let r = solve_trs(&Quad2D::new(0.0, 0.1, -1.0, 0.0, 1.0, 0.0), 1.0);
        assert!((r.point.alpha + 1.0).abs() < 1e-12);
        assert!((r.value - (-1.0 - 0.1)).abs() < 1e-12);
        assert!((r.lagrange_multiplier - 2.1).abs() < 1e-10);
    }
}
