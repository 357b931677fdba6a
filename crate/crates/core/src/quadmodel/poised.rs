//! Lagrange-type basis functions for the three-point completion fit, the
//! resulting poisedness constant on an infinity-norm box, and the choice of a
//! poised six-point subset for full fits.

use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};

use super::{coordinate_scale, full_system, solve_checked, condition_estimate};
use super::{InterpPoint, Quad1D, Quad2D, CONDITION_LIMIT};
use crate::error::{Error, Result};
use crate::geometry::PlaneCoords;

/// Basis functions `l_i = c0_i + c_i beta + d_i beta^2 + e_i alpha beta`
/// with `l_j(point_i) = delta_ij`.
///
/// `c0_i = q0 + a alpha_i + b alpha_i^2` is the inherited part of the model at
/// the i-th point; it is stored both separately and as the constant term of
/// `ell[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LagrangeBasis {
    pub ell: [Quad2D; 3],
    pub c0: [f64; 3],
}

impl LagrangeBasis {
    pub fn eval(&self, i: usize, p: PlaneCoords) -> f64 {
        self.ell[i].eval(p)
    }
}

pub fn lagrange_basis(q_sub: &Quad1D, pts: &[PlaneCoords; 3]) -> Result<LagrangeBasis> {
    let s = coordinate_scale(pts.iter().copied());
    if !(s > 0.0) {
        return Err(Error::Singular(f64::INFINITY));
    }
    let w = SMatrix::<f64, 3, 3>::from_fn(|r, c| {
        let (x, y) = (pts[r].alpha / s, pts[r].beta / s);
        match c {
            0 => y,
            1 => y * y,
            _ => x * y,
        }
    });
    let c0 = pts.map(|p| q_sub.eval(p.alpha));
    let mut ell = [Quad2D::default(); 3];
    for i in 0..3 {
        let rhs = SVector::<f64, 3>::from_fn(|r, _| if r == i { 1.0 } else { 0.0 } - c0[i]);
        let x = solve_checked(&w, &rhs)?;
        ell[i] = Quad2D {
            q0: c0[i],
            a: 0.0,
            b: 0.0,
            c: x[0] / s,
            d: x[1] / (s * s),
            e: x[2] / (s * s),
        };
    }
    Ok(LagrangeBasis { ell, c0 })
}

/// Exact maximum of `|q|` over `{|alpha| <= delta, |beta| <= delta}`.
///
/// The extremes of a quadratic on a box are attained at an interior stationary
/// point or at an extreme of one of the four edge restrictions, each of which
/// is a 1-D quadratic.
pub fn max_abs_on_box(q: &Quad2D, delta: f64) -> f64 {
    let mut best = 0.0f64;
    let mut consider = |p: PlaneCoords| {
        best = best.max(q.eval(p).abs());
    };
    let edge_extremes = |lin: f64, quad: f64| -> Vec<f64> {
        let mut ts = vec![-delta, delta];
        if quad != 0.0 {
            let t = -lin / (2.0 * quad);
            if t.abs() < delta {
                ts.push(t);
            }
        }
        ts
    };
    for side in [-delta, delta] {
        // alpha fixed on the side, beta free
        for beta in edge_extremes(q.c + q.e * side, q.d) {
            consider(PlaneCoords::new(side, beta));
        }
        // beta fixed on the side, alpha free
        for alpha in edge_extremes(q.a + q.e * side, q.b) {
            consider(PlaneCoords::new(alpha, side));
        }
    }
    let h = q.hessian();
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    if det != 0.0 {
        let alpha = (-q.a * h[1][1] + q.c * h[0][1]) / det;
        let beta = (-q.c * h[0][0] + q.a * h[1][0]) / det;
        let p = PlaneCoords::new(alpha, beta);
        if p.norm_inf() <= delta {
            consider(p);
        }
    }
    best
}

/// Smallest `Lambda` for which the basis is `Lambda`-poised on the
/// `delta`-box.
pub fn poisedness_lambda(basis: &LagrangeBasis, delta: f64) -> f64 {
    basis
        .ell
        .iter()
        .map(|l| max_abs_on_box(l, delta))
        .fold(0.0, f64::max)
}

fn is_poised(coords: &[PlaneCoords], idx: &[usize; 6]) -> bool {
    let sel = idx.map(|i| coords[i]);
    match full_system(&sel) {
        Some((m, _)) => condition_estimate(&m) < CONDITION_LIMIT,
        None => false,
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Six-point subsets of `coords` in preference order: the first six
/// candidates, then subsets that bring in later candidates one at a time (in
/// candidate order) in place of the earliest removable base point, then two at
/// a time. Indices in `pinned` are never removed.
fn preference_order(m: usize, pinned: &[usize]) -> Vec<[usize; 6]> {
    let base: Vec<usize> = (0..6.min(m)).collect();
    let reserves: Vec<usize> = (6.min(m)..m).collect();
    let removable: Vec<usize> = base.iter().copied().filter(|i| !pinned.contains(i)).collect();
    let mut out = Vec::new();
    if m < 6 {
        return out;
    }
    for k in 0..=reserves.len() {
        for added in combinations(&reserves, k) {
            for removed in combinations(&removable, k) {
                let mut set: Vec<usize> = base
                    .iter()
                    .copied()
                    .filter(|i| !removed.contains(i))
                    .chain(added.iter().copied())
                    .collect();
                set.sort_unstable();
                out.push(set.try_into().expect("six indices"));
            }
        }
    }
    out
}

/// First poised six-point subset of distinct candidates.
///
/// Subsets whose points are all `available` (already evaluated) are tried
/// first, in preference order; then every subset in preference order.
pub fn poised_subset_indices(
    coords: &[PlaneCoords],
    pinned: &[usize],
    available: &[bool],
) -> Option<[usize; 6]> {
    let order = preference_order(coords.len(), pinned);
    let all_available = |s: &[usize; 6]| s.iter().all(|&i| available.get(i).copied().unwrap_or(true));
    order
        .iter()
        .filter(|s| all_available(s))
        .chain(order.iter())
        .find(|s| is_poised(coords, s))
        .copied()
}

/// Deduplicates candidates by exact coordinates and returns the first poised
/// six-point subset in preference order.
pub fn select_poised_subset(candidates: &[InterpPoint]) -> Result<[InterpPoint; 6]> {
    let mut distinct: Vec<InterpPoint> = Vec::with_capacity(candidates.len());
    for c in candidates {
        if !distinct.iter().any(|d| d.coords == c.coords) {
            distinct.push(*c);
        }
    }
    if distinct.len() < 6 {
        return Err(Error::NoPoisedSubset(distinct.len()));
    }
    let coords: Vec<PlaneCoords> = distinct.iter().map(|p| p.coords).collect();
    let idx = poised_subset_indices(&coords, &[], &[])
        .ok_or(Error::NoPoisedSubset(distinct.len()))?;
    Ok(idx.map(|i| distinct[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> PlaneCoords {
        PlaneCoords::new(x, y)
    }

    fn case1(delta: f64) -> [PlaneCoords; 3] {
        [pt(0.0, delta), pt(0.0, -delta), pt(delta, delta)]
    }

    #[test]
    fn case1_unit_basis() {
        let b = lagrange_basis(&Quad1D::new(0.0, 0.0, 0.0), &case1(1.0)).unwrap();
        let want = [
            Quad2D::new(0.0, 0.0, 0.0, 0.5, 0.5, -1.0),
            Quad2D::new(0.0, 0.0, 0.0, -0.5, 0.5, 0.0),
            Quad2D::new(0.0, 0.0, 0.0, 0.0, 0.0, 1.0),
        ];
        for (g, w) in b.ell.iter().zip(want) {
            for (x, y) in g.coefficients().iter().zip(w.coefficients()) {
                assert!((x - y).abs() < 1e-14, "{g:?} vs {w:?}");
            }
        }
        assert!((b.eval(0, pt(0.0, 1.0)) - 1.0).abs() < 1e-14);
        assert!(b.eval(0, pt(0.0, -1.0)).abs() < 1e-14);
        assert!(b.eval(0, pt(1.0, 1.0)).abs() < 1e-14);
    }

    #[test]
    fn delta_property_with_inherited_part() {
        let q = Quad1D::new(1.3, -0.4, 2.2);
        let pts = [pt(0.0, 0.7), pt(0.0, 1.4), pt(0.7, 0.7)];
        let b = lagrange_basis(&q, &pts).unwrap();
        for i in 0..3 {
            for (j, p) in pts.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((b.eval(i, *p) - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn lambda_of_case1_is_two() {
        let b = lagrange_basis(&Quad1D::new(0.0, 0.0, 0.0), &case1(1.0)).unwrap();
        assert!((poisedness_lambda(&b, 1.0) - 2.0).abs() < 1e-12);
        assert!((b.eval(0, pt(-1.0, 1.0)) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lambda_of_bilinear_term() {
        let q = Quad2D::new(0.0, 0.0, 0.0, 0.0, 0.0, 1.0);
        assert_eq!(max_abs_on_box(&q, 1.0), 1.0);
    }

    #[test]
    fn lambda_scale_invariant_for_case1() {
        let zero = Quad1D::new(0.0, 0.0, 0.0);
        let l1 = poisedness_lambda(&lagrange_basis(&zero, &case1(1.0)).unwrap(), 1.0);
        let l2 = poisedness_lambda(&lagrange_basis(&zero, &case1(2.0)).unwrap(), 2.0);
        assert!((l1 - l2).abs() < 1e-12);
    }

    #[test]
    fn interior_extremum_found() {
        // 1 - alpha^2 - beta^2 peaks at the origin
        let q = Quad2D::new(1.0, 0.0, -1.0, 0.0, -1.0, 0.0);
        assert_eq!(max_abs_on_box(&q, 0.5), 1.0);
    }

    fn values(coords: &[PlaneCoords]) -> Vec<InterpPoint> {
        coords
            .iter()
            .map(|&c| InterpPoint { coords: c, fval: c.alpha - c.beta })
            .collect()
    }

    #[test]
    fn generic_layout_prefers_base_subset() {
        let d = 1.0;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // x_{k-1}, x_k, x_{k+1}, y1, y2, y3, y4, y5 in the old frame
        let c = [
            pt(-1.0, 0.0),
            pt(0.0, 0.0),
            pt(0.3, 0.6),
            pt(0.0, d),
            pt(0.0, -d),
            pt(d, d),
            pt(h * d, h * d),
            pt(d, 0.0),
        ];
        let cand = values(&c);
        let got = select_poised_subset(&cand).unwrap();
        assert_eq!(got.to_vec(), cand[..6].to_vec());
    }

    #[test]
    fn stall_duplicate_brings_in_reserve() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // x_{k+1} = x_k duplicates the origin
        let c = [
            pt(-1.0, 0.0),
            pt(0.0, 0.0),
            pt(0.0, 0.0),
            pt(0.0, 1.0),
            pt(0.0, -1.0),
            pt(1.0, 1.0),
            pt(h, h),
            pt(1.0, 0.0),
        ];
        let got = select_poised_subset(&values(&c)).unwrap();
        assert!(got.iter().any(|p| p.coords == pt(h, h)));
        assert_eq!(got.iter().filter(|p| p.coords == pt(0.0, 0.0)).count(), 1);
    }

    #[test]
    fn swaps_reserve_for_earliest_removable_point() {
        // base has four points on the alpha axis: not poised
        let c = [
            pt(-2.0, 0.0),
            pt(-1.0, 0.0),
            pt(0.0, 0.0),
            pt(1.0, 0.0),
            pt(0.0, 1.0),
            pt(0.0, -1.0),
            pt(1.0, 1.0),
        ];
        let idx = poised_subset_indices(&c, &[2], &[]).unwrap();
        assert_eq!(idx, [1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn too_few_candidates() {
        let c = [pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0), pt(1.0, 1.0), pt(2.0, 2.0)];
        assert_eq!(select_poised_subset(&values(&c)), Err(Error::NoPoisedSubset(5)));
    }

    #[test]
    fn preference_order_counts() {
        // 8 candidates, one pinned: 1 + 2*5 + 10 subsets
        assert_eq!(preference_order(8, &[2]).len(), 21);
        assert_eq!(preference_order(6, &[]).len(), 1);
    }
}
