//! One- and two-dimensional quadratic interpolation models.
//!
//! A [`Quad2D`] is `q0 + a*alpha + b*alpha^2 + c*beta + d*beta^2 + e*alpha*beta`
//! in the plane coordinates of some frame; a [`Quad1D`] is its restriction to
//! the `alpha` axis. The per-iteration model keeps `(q0, a, b)` from the
//! 1-D model and fits only `(c, d, e)` on three new points; the full
//! six-coefficient fit is used for the updated and the modified models.

mod poised;

pub use poised::{
    lagrange_basis, max_abs_on_box, poised_subset_indices, poisedness_lambda,
    select_poised_subset, LagrangeBasis,
};

use nalgebra::{DMatrix, DVector, SMatrix, SVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PlaneCoords;

/// Systems whose scaled 1-norm condition estimate reaches this are rejected.
pub const CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quad1D {
    pub q0: f64,
    pub a: f64,
    pub b: f64,
}

impl Quad1D {
    pub fn new(q0: f64, a: f64, b: f64) -> Self {
        Quad1D { q0, a, b }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.q0 + self.a * t + self.b * t * t
    }

    pub fn is_finite(&self) -> bool {
        self.q0.is_finite() && self.a.is_finite() && self.b.is_finite()
    }

    /// Minimum over the interval `[lo, hi]`.
    pub fn min_on_interval(&self, lo: f64, hi: f64) -> f64 {
        let mut best = self.eval(lo).min(self.eval(hi));
        if self.b != 0.0 {
            let t = -self.a / (2.0 * self.b);
            if t > lo && t < hi {
                best = best.min(self.eval(t));
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quad2D {
    pub q0: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl Quad2D {
    pub fn new(q0: f64, a: f64, b: f64, c: f64, d: f64, e: f64) -> Self {
        Quad2D { q0, a, b, c, d, e }
    }

    pub fn eval(&self, p: PlaneCoords) -> f64 {
        let (x, y) = (p.alpha, p.beta);
        self.q0 + self.a * x + self.b * x * x + self.c * y + self.d * y * y + self.e * x * y
    }

    /// Gradient at the origin.
    pub fn gradient(&self) -> [f64; 2] {
        [self.a, self.c]
    }

    pub fn hessian(&self) -> [[f64; 2]; 2] {
        [[2.0 * self.b, self.e], [self.e, 2.0 * self.d]]
    }

    pub fn is_finite(&self) -> bool {
        self.coefficients().iter().all(|v| v.is_finite())
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.q0, self.a, self.b, self.c, self.d, self.e]
    }

    pub fn scale(&self, s: f64) -> Quad2D {
        let [q0, a, b, c, d, e] = self.coefficients().map(|v| v * s);
        Quad2D { q0, a, b, c, d, e }
    }

    /// The same polynomial in new coordinates `p'` related by
    /// `p = shift + R p'`, where `R = [[r00, r01], [r10, r11]]`.
    pub fn reexpress(&self, shift: PlaneCoords, r: [[f64; 2]; 2]) -> Quad2D {
        let g = self.gradient();
        let h = self.hessian();
        let (s0, s1) = (shift.alpha, shift.beta);
        // gradient at the shift point, in old coordinates
        let gs = [
            g[0] + h[0][0] * s0 + h[0][1] * s1,
            g[1] + h[1][0] * s0 + h[1][1] * s1,
        ];
        let gn = [
            r[0][0] * gs[0] + r[1][0] * gs[1],
            r[0][1] * gs[0] + r[1][1] * gs[1],
        ];
        // R^T H R
        let mut hn = [[0.0; 2]; 2];
        for (i, row) in hn.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let mut acc = 0.0;
                for (k, hk) in h.iter().enumerate() {
                    for (l, hkl) in hk.iter().enumerate() {
                        acc += r[k][i] * hkl * r[l][j];
                    }
                }
                *v = acc;
            }
        }
        Quad2D {
            q0: self.eval(shift),
            a: gn[0],
            b: 0.5 * hn[0][0],
            c: gn[1],
            d: 0.5 * hn[1][1],
            e: 0.5 * (hn[0][1] + hn[1][0]),
        }
    }
}

pub fn eval2d(q: &Quad2D, p: PlaneCoords) -> f64 {
    q.eval(p)
}

/// A plane point together with its objective value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterpPoint {
    pub coords: PlaneCoords,
    pub fval: f64,
}

impl InterpPoint {
    pub fn new(alpha: f64, beta: f64, fval: f64) -> Self {
        InterpPoint {
            coords: PlaneCoords::new(alpha, beta),
            fval,
        }
    }
}

/// Solves `m x = rhs` by LU with partial pivoting after rejecting systems
/// whose 1-norm condition estimate reaches [`CONDITION_LIMIT`].
pub(crate) fn solve_checked<const N: usize>(
    m: &SMatrix<f64, N, N>,
    rhs: &SVector<f64, N>,
) -> Result<SVector<f64, N>> {
    let cond = condition_estimate(m);
    if !(cond < CONDITION_LIMIT) {
        return Err(Error::Singular(cond));
    }
    let x = dynamic(m)
        .lu()
        .solve(&DVector::from_column_slice(rhs.as_slice()))
        .ok_or(Error::Singular(f64::INFINITY))?;
    Ok(SVector::from_column_slice(x.as_slice()))
}

fn dynamic<const N: usize>(m: &SMatrix<f64, N, N>) -> DMatrix<f64> {
    DMatrix::from_column_slice(N, N, m.as_slice())
}

pub(crate) fn condition_estimate<const N: usize>(m: &SMatrix<f64, N, N>) -> f64 {
    if !m.iter().all(|v| v.is_finite()) {
        return f64::INFINITY;
    }
    match dynamic(m).lu().try_inverse() {
        Some(inv) => one_norm(m) * inv.column_iter().map(|c| c.abs().sum()).fold(0.0, f64::max),
        None => f64::INFINITY,
    }
}

fn one_norm<const N: usize>(m: &SMatrix<f64, N, N>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Largest coordinate magnitude among the points; used to scale the
/// interpolation systems to unit size.
pub(crate) fn coordinate_scale(points: impl IntoIterator<Item = PlaneCoords>) -> f64 {
    points.into_iter().map(|p| p.norm_inf()).fold(0.0, f64::max)
}

/// The quadratic in `t` through three `(t, f)` pairs, one with `t = 0`.
pub fn fit_initial_1d(t: [f64; 3], f: [f64; 3]) -> Result<Quad1D> {
    for i in 0..3 {
        for j in i + 1..3 {
            if t[i] == t[j] {
                return Err(Error::DuplicateAbscissae);
            }
        }
    }
    let zero = t.iter().position(|&v| v == 0.0).ok_or_else(|| {
        Error::InvalidConfig("one of the abscissae must be zero".to_string())
    })?;
    let q0 = f[zero];
    let others: Vec<usize> = (0..3).filter(|&i| i != zero).collect();
    let s = others.iter().map(|&i| t[i].abs()).fold(0.0, f64::max);
    let m = SMatrix::<f64, 2, 2>::from_fn(|r, c| {
        let u = t[others[r]] / s;
        if c == 0 {
            u
        } else {
            u * u
        }
    });
    let rhs = SVector::<f64, 2>::from_fn(|r, _| f[others[r]] - q0);
    let x = solve_checked(&m, &rhs).map_err(|_| Error::DuplicateAbscissae)?;
    Ok(Quad1D {
        q0,
        a: x[0] / s,
        b: x[1] / (s * s),
    })
}

/// Completes `q_sub` to a 2-D model by fitting `(c, d, e)` so that the model
/// interpolates the three points; `(q0, a, b)` are copied from `q_sub`.
pub fn build_qk(q_sub: &Quad1D, pts: &[InterpPoint; 3]) -> Result<Quad2D> {
    let s = coordinate_scale(pts.iter().map(|p| p.coords));
    if !(s > 0.0) {
        return Err(Error::Singular(f64::INFINITY));
    }
    let m = SMatrix::<f64, 3, 3>::from_fn(|r, c| {
        let (x, y) = (pts[r].coords.alpha / s, pts[r].coords.beta / s);
        match c {
            0 => y,
            1 => y * y,
            _ => x * y,
        }
    });
    let rhs = SVector::<f64, 3>::from_fn(|r, _| {
        let al = pts[r].coords.alpha;
        pts[r].fval - q_sub.eval(al)
    });
    let x = solve_checked(&m, &rhs)?;
    Ok(Quad2D {
        q0: q_sub.q0,
        a: q_sub.a,
        b: q_sub.b,
        c: x[0] / s,
        d: x[1] / (s * s),
        e: x[2] / (s * s),
    })
}

fn full_basis_row(p: PlaneCoords, s: f64) -> [f64; 6] {
    let (x, y) = (p.alpha / s, p.beta / s);
    [1.0, x, x * x, y, y * y, x * y]
}

pub(crate) fn full_system(coords: &[PlaneCoords; 6]) -> Option<(SMatrix<f64, 6, 6>, f64)> {
    let s = coordinate_scale(coords.iter().copied());
    if !(s > 0.0) || !s.is_finite() {
        return None;
    }
    let m = SMatrix::<f64, 6, 6>::from_fn(|r, c| full_basis_row(coords[r], s)[c]);
    Some((m, s))
}

/// Unique quadratic interpolating six plane points.
pub fn build_full_2d(pts: &[InterpPoint; 6]) -> Result<Quad2D> {
    let coords = pts.map(|p| p.coords);
    let (m, s) = full_system(&coords).ok_or(Error::Singular(f64::INFINITY))?;
    let rhs = SVector::<f64, 6>::from_fn(|r, _| pts[r].fval);
    let x = solve_checked(&m, &rhs)?;
    let s2 = s * s;
    Ok(Quad2D {
        q0: x[0],
        a: x[1] / s,
        b: x[2] / s2,
        c: x[3] / s,
        d: x[4] / s2,
        e: x[5] / s2,
    })
}

/// `Q(alpha, 0)` as a 1-D model.
pub fn restrict_to_axis(q: &Quad2D) -> Quad1D {
    Quad1D {
        q0: q.q0,
        a: q.a,
        b: q.b,
    }
}
