//! Points in R^n, affine two-dimensional frames and the coordinate maps
//! between the full space and a frame's plane.
//!
//! A [`Frame`] is an origin together with two orthonormal directions. Plane
//! coordinates `(alpha, beta)` of a point `y` are the inner products of
//! `y - origin` with the two directions; the inverse lift is
//! `origin + alpha * d1 + beta * d2`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;
const ORTHO_TOL: f64 = 1e-10;
const RESAMPLE_LIMIT: usize = 100;
const RESIDUAL_FLOOR: f64 = 1e-8;

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// `x + t * d`
pub fn axpy(x: &[f64], t: f64, d: &[f64]) -> Vec<f64> {
    x.iter().zip(d).map(|(a, b)| a + t * b).collect()
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// Coordinates of a point inside a frame's plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneCoords {
    pub alpha: f64,
    pub beta: f64,
}

impl PlaneCoords {
    pub const ORIGIN: PlaneCoords = PlaneCoords {
        alpha: 0.0,
        beta: 0.0,
    };

    pub fn new(alpha: f64, beta: f64) -> Self {
        PlaneCoords { alpha, beta }
    }

    pub fn norm(&self) -> f64 {
        self.alpha.hypot(self.beta)
    }

    pub fn norm_inf(&self) -> f64 {
        self.alpha.abs().max(self.beta.abs())
    }
}

/// Affine plane `origin + span{d1, d2}` with orthonormal directions.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    origin: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl Frame {
    pub fn new(origin: Vec<f64>, d1: Vec<f64>, d2: Vec<f64>) -> Result<Self> {
        let n = origin.len();
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        check_dim(n, d1.len())?;
        check_dim(n, d2.len())?;
        for d in [&d1, &d2] {
            let nd = norm(d);
            if (nd - 1.0).abs() > UNIT_TOL {
                return Err(Error::NotUnit(nd));
            }
        }
        let cross = dot(&d1, &d2);
        if cross.abs() > ORTHO_TOL {
            return Err(Error::InvalidConfig(format!(
                "frame directions are not orthogonal (inner product {cross:e})"
            )));
        }
        Ok(Frame { origin, d1, d2 })
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn d1(&self) -> &[f64] {
        &self.d1
    }

    pub fn d2(&self) -> &[f64] {
        &self.d2
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    /// Distance from `y` to the plane.
    pub fn off_plane_residual(&self, y: &[f64]) -> Result<f64> {
        let p = to_plane(self, y)?;
        let mut r = sub(y, &self.origin);
        for ((ri, a), b) in r.iter_mut().zip(&self.d1).zip(&self.d2) {
            *ri -= p.alpha * a + p.beta * b;
        }
        Ok(norm(&r))
    }
}

/// Plane coordinates `(<y - origin, d1>, <y - origin, d2>)`.
pub fn to_plane(frame: &Frame, y: &[f64]) -> Result<PlaneCoords> {
    check_dim(frame.dim(), y.len())?;
    let mut alpha = 0.0;
    let mut beta = 0.0;
    for ((yi, oi), (a, b)) in y
        .iter()
        .zip(&frame.origin)
        .zip(frame.d1.iter().zip(&frame.d2))
    {
        let r = yi - oi;
        alpha += r * a;
        beta += r * b;
    }
    Ok(PlaneCoords { alpha, beta })
}

pub fn from_plane(frame: &Frame, p: PlaneCoords) -> Vec<f64> {
    frame
        .origin
        .iter()
        .zip(frame.d1.iter().zip(&frame.d2))
        .map(|(o, (a, b))| o + p.alpha * a + p.beta * b)
        .collect()
}

/// Coordinate of `y` along the line `origin + span{d}`.
pub fn project_1d(origin: &[f64], d: &[f64], y: &[f64]) -> Result<f64> {
    check_dim(origin.len(), d.len())?;
    check_dim(origin.len(), y.len())?;
    Ok(origin
        .iter()
        .zip(d)
        .zip(y)
        .map(|((o, di), yi)| (yi - o) * di)
        .sum())
}

/// Source of standard-normal samples used to draw random directions.
pub trait RandomSource {
    fn fill_standard_normal(&mut self, out: &mut [f64]);
}

/// ChaCha-backed reproducible random source.
#[derive(Debug, Clone)]
pub struct SeededRng {
    rng: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl RandomSource for SeededRng {
    fn fill_standard_normal(&mut self, out: &mut [f64]) {
        for v in out.iter_mut() {
            *v = StandardNormal.sample(&mut self.rng);
        }
    }
}

/// Unit vector orthogonal to `d1`: a standard-normal sample with its `d1`
/// component removed, normalized.
pub fn orthonormal_complement(d1: &[f64], rng: &mut dyn RandomSource) -> Result<Vec<f64>> {
    let n = d1.len();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let nd = norm(d1);
    if (nd - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit(nd));
    }
    let mut v = vec![0.0; n];
    for _ in 0..RESAMPLE_LIMIT {
        rng.fill_standard_normal(&mut v);
        if let Some(d2) = orthogonalize(&v, d1) {
            return Ok(d2);
        }
    }
    Err(Error::DegenerateDirection)
}

/// Normalized component of `v` orthogonal to unit `u`, or `None` if that
/// component is (numerically) zero.
fn orthogonalize(v: &[f64], u: &[f64]) -> Option<Vec<f64>> {
    let mut w = axpy(v, -dot(v, u), u);
    // second pass keeps the inner product at rounding level
    let again = dot(&w, u);
    for (wi, ui) in w.iter_mut().zip(u) {
        *wi -= again * ui;
    }
    let nw = norm(&w);
    if !(nw >= RESIDUAL_FLOOR) {
        return None;
    }
    w.iter_mut().for_each(|wi| *wi /= nw);
    Some(w)
}

/// Frame for the next iteration after an accepted step to `x_next`.
///
/// The new first direction points from the old origin to `x_next`; the second
/// is the old `d2` (or, if that is parallel to the step, the old `d1`) with the
/// new first direction projected out. Both frames describe the same plane.
pub fn derive_next_frame(frame: &Frame, x_next: &[f64]) -> Result<Frame> {
    check_dim(frame.dim(), x_next.len())?;
    let residual = frame.off_plane_residual(x_next)?;
    if residual > RESIDUAL_FLOOR * (1.0 + norm(x_next)) {
        return Err(Error::OffPlane { residual });
    }
    let step = sub(x_next, &frame.origin);
    let len = norm(&step);
    if len == 0.0 {
        return Err(Error::ZeroStep);
    }
    let d1: Vec<f64> = step.iter().map(|s| s / len).collect();
    let d2 = orthogonalize(&frame.d2, &d1)
        .or_else(|| orthogonalize(&frame.d1, &d1))
        .ok_or(Error::ZeroStep)?;
    Frame::new(x_next.to_vec(), d1, d2)
}
