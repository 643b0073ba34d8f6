//! Derivative-free constrained search over boxes, simplices, and the
//! coupling polytope with fixed marginals.
//!
//! The objectives treated here are piecewise smooth with clipped-linear
//! kinks and extended-real plateaus, so the search is exhaustive instead of
//! gradient-based: evaluate a coarse grid, keep the best point, shrink the
//! box around it, repeat. Everything is deterministic: fixed iteration
//! order, ties broken by the lexicographically smallest grid index, and an
//! incumbent carried across levels so each level improves or equals the
//! previous one.

use crate::ext::{ExtReal, NEG_INF, POS_INF};
use crate::prob::{JointXX, ProbVec};
use crate::Error;

/// Grid-search parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    /// Coarse points per free dimension (dimension-adapted above 2D).
    pub resolution: usize,
    /// Number of shrink-and-rescan refinement levels after the coarse pass.
    pub depth: usize,
    /// Box shrink factor per refinement level.
    pub shrink: f64,
    /// Slack for feasibility comparisons at grid points.
    pub tol_feas: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { resolution: 33, depth: 4, shrink: 0.2, tol_feas: 1e-9 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), Error> {
        if self.resolution < 3 {
            return Err(Error::InvalidGrid("resolution must be at least 3".into()));
        }
        if self.depth < 1 {
            return Err(Error::InvalidGrid("depth must be at least 1".into()));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::InvalidGrid("shrink must lie in (0, 1)".into()));
        }
        Ok(())
    }

    /// Points per dimension actually used for a `dim`-dimensional box.
    ///
    /// Full resolution up to two dimensions; higher dimensions are scaled
    /// down so a level stays near `resolution^2` evaluations. Monotone in
    /// `resolution`, never below 3.
    pub fn points_per_dim(&self, dim: usize) -> usize {
        if dim <= 2 {
            self.resolution
        } else {
            let scaled = (self.resolution as f64).powf(2.0 / dim as f64).floor() as usize;
            scaled.clamp(3, self.resolution)
        }
    }
}

/// An axis-aligned search domain.
#[derive(Clone, Debug)]
pub struct SearchBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl SearchBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        debug_assert_eq!(lo.len(), hi.len());
        debug_assert!(lo.iter().zip(hi.iter()).all(|(a, b)| a <= b));
        SearchBox { lo, hi }
    }

    pub fn unit(dim: usize) -> Self {
        SearchBox { lo: vec![0.0; dim], hi: vec![1.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }
}

/// Iterates a grid over `box_` in lexicographic index order, endpoints
/// included; zero-width dimensions collapse to a single coordinate.
fn for_each_grid_point(
    box_: &SearchBox,
    points: usize,
    mut visit: impl FnMut(&[f64]),
) {
    let dim = box_.dim();
    if dim == 0 {
        visit(&[]);
        return;
    }
    let counts: Vec<usize> = (0..dim)
        .map(|d| if box_.hi[d] > box_.lo[d] { points.max(1) } else { 1 })
        .collect();
    let mut idx = vec![0usize; dim];
    let mut coords = vec![0.0; dim];
    loop {
        for d in 0..dim {
            coords[d] = if counts[d] == 1 {
                box_.lo[d]
            } else {
                box_.lo[d]
                    + (box_.hi[d] - box_.lo[d]) * idx[d] as f64 / (counts[d] - 1) as f64
            };
        }
        visit(&coords);
        // odometer increment
        let mut d = dim;
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < counts[d] {
                break;
            }
            idx[d] = 0;
        }
    }
}

fn shrink_around(box_: &SearchBox, center: &[f64], outer: &SearchBox, shrink: f64) -> SearchBox {
    let dim = box_.dim();
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for d in 0..dim {
        let half = 0.5 * (box_.hi[d] - box_.lo[d]) * shrink;
        lo.push((center[d] - half).max(outer.lo[d]));
        hi.push((center[d] + half).min(outer.hi[d]));
    }
    SearchBox { lo, hi }
}

/// Nested-grid minimization of `objective` over `box_`.
///
/// `anchors` are extra candidate points evaluated after the coarse grid;
/// they win only by strict improvement, so the grid tie-break stays intact.
/// Returns the best point found and its value.
pub fn refine_min(
    objective: impl Fn(&[f64]) -> ExtReal,
    box_: &SearchBox,
    spec: &GridSpec,
    anchors: &[Vec<f64>],
) -> (Vec<f64>, ExtReal) {
    let points = spec.points_per_dim(box_.dim());
    let mut best_arg: Option<Vec<f64>> = None;
    let mut best_val = POS_INF;
    let mut current = box_.clone();
    for level in 0..=spec.depth {
        for_each_grid_point(&current, points, |p| {
            let v = objective(p);
            if v < best_val {
                best_val = v;
                best_arg = Some(p.to_vec());
            }
        });
        if level == 0 {
            for a in anchors {
                let v = objective(a);
                if v < best_val {
                    best_val = v;
                    best_arg = Some(a.clone());
                }
            }
        }
        match &best_arg {
            Some(c) => current = shrink_around(&current, c, box_, spec.shrink),
            // nothing beat +inf yet; zoom on the box as a whole
            None => current = shrink_around(&current, &center_of(&current), box_, spec.shrink),
        }
    }
    match best_arg {
        Some(arg) => (arg, best_val),
        None => (center_of(box_), POS_INF),
    }
}

/// Nested-grid maximization; see [`refine_min`].
pub fn refine_max(
    objective: impl Fn(&[f64]) -> ExtReal,
    box_: &SearchBox,
    spec: &GridSpec,
    anchors: &[Vec<f64>],
) -> (Vec<f64>, ExtReal) {
    let (arg, v) = refine_min(|p| objective(p).neg(), box_, spec, anchors);
    (arg, v.neg())
}

fn center_of(b: &SearchBox) -> Vec<f64> {
    b.lo.iter().zip(b.hi.iter()).map(|(l, h)| 0.5 * (l + h)).collect()
}

/// Constrained maximization: `max objective(p)` subject to
/// `constraint(p) <= threshold + tol_feas`.
///
/// Grid points violating the constraint are skipped but remembered: after
/// refinement, the segment between the best feasible point and the best
/// infeasible improver is bisected on the constraint boundary and the
/// feasible end is taken as a final candidate. Returns an error only when
/// no feasible point is found anywhere (including `anchors`).
pub fn constrained_max(
    objective: impl Fn(&[f64]) -> ExtReal,
    constraint: impl Fn(&[f64]) -> f64,
    threshold: f64,
    box_: &SearchBox,
    spec: &GridSpec,
    anchors: &[Vec<f64>],
) -> Result<(Vec<f64>, ExtReal), Error> {
    let points = spec.points_per_dim(box_.dim());
    let feas = |p: &[f64]| constraint(p) <= threshold + spec.tol_feas;

    let mut best_arg: Option<Vec<f64>> = None;
    let mut best_val = NEG_INF;
    let mut improver: Option<(Vec<f64>, ExtReal)> = None;

    let mut current = box_.clone();
    for level in 0..=spec.depth {
        for_each_grid_point(&current, points, |p| {
            let v = objective(p);
            if feas(p) {
                if best_arg.is_none() || v > best_val {
                    best_val = v;
                    best_arg = Some(p.to_vec());
                }
            } else if v > best_val && improver.as_ref().map_or(true, |(_, iv)| v > *iv) {
                improver = Some((p.to_vec(), v));
            }
        });
        if level == 0 {
            for a in anchors {
                if feas(a) {
                    let v = objective(a);
                    if best_arg.is_none() || v > best_val {
                        best_val = v;
                        best_arg = Some(a.clone());
                    }
                }
            }
        }
        match &best_arg {
            Some(c) => current = shrink_around(&current, c, box_, spec.shrink),
            None => current = shrink_around(&current, &center_of(&current), box_, spec.shrink),
        }
    }

    let mut best_arg = best_arg.ok_or(Error::NoFeasiblePoint)?;

    // Walk toward the boundary if an infeasible point still dominates.
    if let Some((bad, bad_val)) = improver {
        if bad_val > best_val {
            let mut lo = best_arg.clone();
            let mut hi = bad;
            for _ in 0..60 {
                let mid: Vec<f64> =
                    lo.iter().zip(hi.iter()).map(|(a, b)| 0.5 * (a + b)).collect();
                if feas(&mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let v = objective(&lo);
            if v > best_val {
                best_val = v;
                best_arg = lo;
            }
        }
    }
    Ok((best_arg, best_val))
}

/// Constrained minimization; see [`constrained_max`].
pub fn constrained_min(
    objective: impl Fn(&[f64]) -> ExtReal,
    constraint: impl Fn(&[f64]) -> f64,
    threshold: f64,
    box_: &SearchBox,
    spec: &GridSpec,
    anchors: &[Vec<f64>],
) -> Result<(Vec<f64>, ExtReal), Error> {
    let (arg, v) =
        constrained_max(|p| objective(p).neg(), constraint, threshold, box_, spec, anchors)?;
    Ok((arg, v.neg()))
}

/// Free-coordinate parameterization of the polytope of joints with fixed
/// row marginal `row` and column marginal `col`.
///
/// The first `(nr-1) x (nc-1)` block of the joint is free; the last row and
/// column are determined by the marginals. A parameter vector is valid when
/// every determined cell is nonnegative.
#[derive(Clone, Debug)]
pub struct CouplingParam {
    row: Vec<f64>,
    col: Vec<f64>,
}

impl CouplingParam {
    /// Couplings of a composition with itself, `{Q_XX' : Q_X' = Q_X = qx}`.
    pub fn square(qx: &ProbVec) -> Self {
        CouplingParam { row: qx.as_slice().to_vec(), col: qx.as_slice().to_vec() }
    }

    /// Couplings of two (possibly different) marginals.
    pub fn rect(row: &[f64], col: &[f64]) -> Self {
        CouplingParam { row: row.to_vec(), col: col.to_vec() }
    }

    pub fn dim(&self) -> usize {
        (self.row.len() - 1) * (self.col.len() - 1)
    }

    /// Search box for the free block. When both alphabets are binary this
    /// is the exact one-parameter family
    /// `q00 in [max(0, row0 + col0 - 1), min(row0, col0)]`.
    pub fn search_box(&self) -> SearchBox {
        let (nr, nc) = (self.row.len(), self.col.len());
        if nr == 2 && nc == 2 {
            let lo = (self.row[0] + self.col[0] - 1.0).max(0.0);
            let hi = self.row[0].min(self.col[0]);
            SearchBox::new(vec![lo], vec![hi])
        } else {
            let mut lo = Vec::with_capacity(self.dim());
            let mut hi = Vec::with_capacity(self.dim());
            for i in 0..nr - 1 {
                for j in 0..nc - 1 {
                    lo.push(0.0);
                    hi.push(self.row[i].min(self.col[j]));
                }
            }
            SearchBox::new(lo, hi)
        }
    }

    /// The free coordinates of the product coupling (always valid).
    pub fn product_param(&self) -> Vec<f64> {
        let (nr, nc) = (self.row.len(), self.col.len());
        let mut p = Vec::with_capacity(self.dim());
        for i in 0..nr - 1 {
            for j in 0..nc - 1 {
                p.push(self.row[i] * self.col[j]);
            }
        }
        p
    }

    /// Corner points of the search box; useful extra anchors when the
    /// finite-metric subset of the polytope touches the boundary.
    pub fn corner_params(&self) -> Vec<Vec<f64>> {
        let b = self.search_box();
        let d = b.dim();
        if d == 0 || d > 6 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(1 << d);
        for mask in 0u32..(1 << d) {
            let p: Vec<f64> = (0..d)
                .map(|i| if mask >> i & 1 == 0 { b.lo[i] } else { b.hi[i] })
                .collect();
            out.push(p);
        }
        out
    }

    /// Reconstructs the full matrix (row-major) from free coordinates;
    /// `None` when a determined cell would be negative.
    pub fn matrix(&self, param: &[f64]) -> Option<Vec<f64>> {
        let (nr, nc) = (self.row.len(), self.col.len());
        debug_assert_eq!(param.len(), (nr - 1) * (nc - 1));
        let mut m = vec![0.0; nr * nc];
        for i in 0..nr - 1 {
            let mut row_rest = self.row[i];
            for j in 0..nc - 1 {
                let v = param[i * (nc - 1) + j];
                m[i * nc + j] = v;
                row_rest -= v;
            }
            if row_rest < -1e-12 {
                return None;
            }
            m[i * nc + (nc - 1)] = row_rest.max(0.0);
        }
        for j in 0..nc {
            let mut col_rest = self.col[j];
            for i in 0..nr - 1 {
                col_rest -= m[i * nc + j];
            }
            if col_rest < -1e-12 {
                return None;
            }
            m[(nr - 1) * nc + j] = col_rest.max(0.0);
        }
        Some(m)
    }

    /// Square couplings as [`JointXX`].
    pub fn joint(&self, param: &[f64]) -> Option<JointXX> {
        debug_assert_eq!(self.row.len(), self.col.len());
        let k = self.row.len();
        self.matrix(param).and_then(|m| JointXX::new(k, k, m).ok())
    }
}

/// Elements of the coupling polytope of `qx`, sampled at `resolution`
/// points per free dimension (dimension-adapted), product coupling
/// included. Every yield satisfies the marginal constraints exactly up to
/// clipping of determined cells.
pub fn iterate_transport_polytope(qx: &ProbVec, spec: &GridSpec) -> Vec<JointXX> {
    let param = CouplingParam::square(qx);
    let box_ = param.search_box();
    let points = spec.points_per_dim(box_.dim());
    let mut out = Vec::new();
    let mut saw_product = false;
    let prod = param.product_param();
    for_each_grid_point(&box_, points, |p| {
        if let Some(j) = param.joint(p) {
            if p == prod.as_slice() {
                saw_product = true;
            }
            out.push(j);
        }
    });
    if !saw_product {
        if let Some(j) = param.joint(&prod) {
            out.push(j);
        }
    }
    out
}
