//! The inner variational functionals from which every exponent curve is
//! assembled.
//!
//! For a fixed output composition `Q_Y`, `alpha` and `beta_fn` maximize the
//! decoding gain over couplings of `(Q_X, Q_Y)`; `alpha` under the mutual
//! information cap `I <= R`, `beta_fn` with the cap folded into a clipped
//! bonus `[R - I]_+`. For a fixed codeword-pair joint `Q_XX'`, `gamma_fn`
//! and `lambda_fn` minimize over conditional output laws `Q_{Y|XX'}` the
//! channel-divergence cost plus the (clipped, resp. unclipped) gap between
//! the best competing score and the competitor's own score.
//!
//! Conditional search spaces are pre-reduced: an output `y` can carry mass
//! in cell `(x, x')` only if `W(y|x) > 0` (otherwise the divergence term is
//! `+inf`) and the metric coefficient `c(x', y)` is finite (otherwise the
//! competitor score is `-inf` and the candidate's objective is `+inf`).
//! When a positive-mass cell has no admissible output at all, the candidate
//! pair joint is infeasible and the functional is `+inf`.

use dashmap::DashMap;

use crate::ext::{ExtReal, NEG_INF, POS_INF};
use crate::gld::{eval_metric, GldMetric};
use crate::opt::{constrained_max, refine_max, refine_min, CouplingParam, SearchBox};
use crate::prob::{ChannelMatrix, CondYgivenXX, JointXX, JointXY, ProbVec};
use crate::ModelConfig;

/// Quantization scale for cache keys on output compositions.
const QUANT: f64 = (1u64 << 33) as f64;

fn quantize(q: &[f64]) -> Vec<u64> {
    q.iter().map(|v| (v * QUANT).round() as u64).collect()
}

fn dequantize(key: &[u64]) -> Vec<f64> {
    let mut v: Vec<f64> = key.iter().map(|&k| k as f64 / QUANT).collect();
    let s: f64 = v.iter().sum();
    for x in &mut v {
        *x /= s;
    }
    v
}

/// A functional's optimum together with the conditional that achieved it.
#[derive(Clone, Debug)]
pub struct FunctionalValue {
    pub value: ExtReal,
    /// Optimizing conditional output law; `None` when the candidate pair
    /// joint admits no feasible conditional at all.
    pub argopt: Option<CondYgivenXX>,
}

/// Evaluator with memoized inner maximizations.
///
/// All methods are pure functions of the configuration; the caches only
/// memoize results keyed by quantized arguments, so evaluation order (and
/// hence threading) never changes a value.
pub struct Functionals {
    cfg: ModelConfig,
    alpha_cache: DashMap<(u64, Vec<u64>), ExtReal>,
    beta_cache: DashMap<(u64, Vec<u64>), ExtReal>,
    aml_cache: DashMap<(u64, Vec<u64>), ExtReal>,
    tables: DashMap<(u64, Column), std::sync::Arc<Vec<ExtReal>>>,
}

/// Interpolation-table granularity over the binary output simplex.
const TABLE_CELLS: usize = 4096;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Column {
    Alpha,
    Beta,
    Aml,
}

impl Functionals {
    pub fn new(cfg: &ModelConfig) -> Self {
        Functionals {
            cfg: cfg.clone(),
            alpha_cache: DashMap::new(),
            beta_cache: DashMap::new(),
            aml_cache: DashMap::new(),
            tables: DashMap::new(),
        }
    }

    /// Grid for the innermost coupling maximizations. The conditional
    /// search above already pays `resolution x depth` evaluations per
    /// functional, so the score maximizations inside each of those get a
    /// thinner grid; still monotone in the configured resolution.
    fn coupling_grid(&self) -> crate::opt::GridSpec {
        let g = self.cfg.grid;
        crate::opt::GridSpec {
            resolution: (g.resolution / 2 + 1).clamp(9, g.resolution),
            ..g
        }
    }

    pub fn config(&self) -> &ModelConfig {
        &self.cfg
    }

    /// Node values of one score maximization over the binary output
    /// simplex, for piecewise-linear interpolation.
    fn table(&self, r: f64, which: Column) -> std::sync::Arc<Vec<ExtReal>> {
        let key = (r.to_bits(), which);
        if let Some(t) = self.tables.get(&key) {
            return t.clone();
        }
        let nodes: Vec<ExtReal> = (0..=TABLE_CELLS)
            .map(|i| {
                let t = i as f64 / TABLE_CELLS as f64;
                let qy = [t, 1.0 - t];
                match which {
                    Column::Alpha => self.alpha_uncached(r, &qy),
                    Column::Beta => self.beta_uncached(r, &qy),
                    Column::Aml => self.aml_uncached(r, &qy),
                }
            })
            .collect();
        self.tables
            .entry(key)
            .or_insert(std::sync::Arc::new(nodes))
            .clone()
    }

    /// Interpolated lookup over the binary output simplex. Cells touching
    /// a non-finite node fall back to exact evaluation: the score
    /// maximizations jump to `-inf` where the feasible set loses its
    /// finite-metric points, and interpolating across that edge would
    /// smear the jump.
    fn lookup(&self, r: f64, qy: &[f64], which: Column) -> Option<ExtReal> {
        if qy.len() != 2 {
            return None;
        }
        let t = qy[0].clamp(0.0, 1.0);
        let table = self.table(r, which);
        let pos = t * TABLE_CELLS as f64;
        let idx = (pos.floor() as usize).min(TABLE_CELLS - 1);
        let (v0, v1) = (table[idx], table[idx + 1]);
        if v0.is_finite() && v1.is_finite() {
            let frac = pos - idx as f64;
            Some(ExtReal::finite(v0.value() + frac * (v1.value() - v0.value())))
        } else if v0 == v1 {
            // interior of the infinite region; the feasible-score set is an
            // interval in the binary case, so no finite sliver hides here
            Some(v0)
        } else {
            None
        }
    }

    /// `alpha(R, Q_Y)`: `max { g(Q) - I(Q) }` over couplings of
    /// `(Q_X, Q_Y)` with `I(Q) <= R`, plus `R`. `-inf` when the metric is
    /// `-inf` on the whole feasible set.
    pub fn alpha(&self, r: f64, qy: &[f64]) -> ExtReal {
        if let Some(v) = self.lookup(r, qy, Column::Alpha) {
            return v;
        }
        let key = (r.to_bits(), quantize(qy));
        if let Some(v) = self.alpha_cache.get(&key) {
            return *v;
        }
        let v = self.alpha_uncached(r, &dequantize(&key.1));
        self.alpha_cache.insert(key, v);
        v
    }

    fn alpha_uncached(&self, r: f64, qy: &[f64]) -> ExtReal {
        let coup = CouplingParam::rect(self.cfg.qx.as_slice(), qy);
        let metric = &self.cfg.metric;
        let objective = |p: &[f64]| match coupling_score(&coup, p, metric) {
            Some((g, i)) => g.sub(ExtReal::finite(i)),
            None => NEG_INF,
        };
        let constraint = |p: &[f64]| match coupling_score(&coup, p, metric) {
            Some((_, i)) => i,
            None => f64::INFINITY,
        };
        let mut anchors = vec![coup.product_param()];
        anchors.extend(coup.corner_params());
        let best = constrained_max(
            objective,
            constraint,
            r,
            &coup.search_box(),
            &self.coupling_grid(),
            &anchors,
        );
        match best {
            // the product coupling (I = 0) is always feasible for r >= 0
            Ok((_, v)) => v.add(ExtReal::finite(r)),
            Err(_) => NEG_INF,
        }
    }

    /// `beta(R, Q_Y)`: `max { g(Q) + [R - I(Q)]_+ }` over couplings of
    /// `(Q_X, Q_Y)`, unconstrained.
    pub fn beta(&self, r: f64, qy: &[f64]) -> ExtReal {
        if let Some(v) = self.lookup(r, qy, Column::Beta) {
            return v;
        }
        let key = (r.to_bits(), quantize(qy));
        if let Some(v) = self.beta_cache.get(&key) {
            return *v;
        }
        let v = self.beta_uncached(r, &dequantize(&key.1));
        self.beta_cache.insert(key, v);
        v
    }

    fn beta_uncached(&self, r: f64, qy: &[f64]) -> ExtReal {
        let coup = CouplingParam::rect(self.cfg.qx.as_slice(), qy);
        let metric = &self.cfg.metric;
        let objective = |p: &[f64]| match coupling_score(&coup, p, metric) {
            Some((g, i)) => g.add(ExtReal::finite((r - i).max(0.0))),
            None => NEG_INF,
        };
        let mut anchors = vec![coup.product_param()];
        anchors.extend(coup.corner_params());
        let (_, v) = refine_max(objective, &coup.search_box(), &self.coupling_grid(), &anchors);
        v
    }

    /// `a(R, Q_Y)`: like `alpha` but maximizing the expected channel
    /// log-likelihood `E_Q[ln W(Y|X~)]` itself (no `- I` term, no `+ R`).
    pub fn a_ml(&self, r: f64, qy: &[f64]) -> ExtReal {
        if let Some(v) = self.lookup(r, qy, Column::Aml) {
            return v;
        }
        let key = (r.to_bits(), quantize(qy));
        if let Some(v) = self.aml_cache.get(&key) {
            return *v;
        }
        let v = self.aml_uncached(r, &dequantize(&key.1));
        self.aml_cache.insert(key, v);
        v
    }

    fn aml_uncached(&self, r: f64, qy: &[f64]) -> ExtReal {
        let ml = GldMetric::log_likelihood(&self.cfg.channel);
        let coup = CouplingParam::rect(self.cfg.qx.as_slice(), qy);
        let objective = |p: &[f64]| match coupling_score(&coup, p, &ml) {
            Some((g, _)) => g,
            None => NEG_INF,
        };
        let constraint = |p: &[f64]| match coupling_score(&coup, p, &ml) {
            Some((_, i)) => i,
            None => f64::INFINITY,
        };
        let mut anchors = vec![coup.product_param()];
        anchors.extend(coup.corner_params());
        match constrained_max(
            objective,
            constraint,
            r,
            &coup.search_box(),
            &self.coupling_grid(),
            &anchors,
        ) {
            Ok((_, v)) => v,
            Err(_) => NEG_INF,
        }
    }

    /// `Gamma(Q_XX', R)`: minimum over conditional output laws of the
    /// divergence-plus-leakage cost with the clipped score gap
    /// `[max{g(Q_XY), alpha(R, Q_Y)} - g(Q_X'Y)]_+`.
    pub fn gamma(&self, qxx: &JointXX, r: f64) -> FunctionalValue {
        self.min_over_conditionals(qxx, r, ScoreGap::Clipped)
    }

    /// `Lambda(Q_XX', R)`: same search with the unclipped gap
    /// `beta(R, Q_Y) - g(Q_X'Y)`. Dominates `gamma` pointwise.
    pub fn lambda(&self, qxx: &JointXX, r: f64) -> FunctionalValue {
        self.min_over_conditionals(qxx, r, ScoreGap::Unclipped)
    }

    fn min_over_conditionals(&self, qxx: &JointXX, r: f64, gap: ScoreGap) -> FunctionalValue {
        assert!(
            qxx.is_coupling_of(&self.cfg.qx, crate::prob::MARGINAL_TOL),
            "pair joint must lie in the coupling polytope of the composition"
        );
        let search = match CondSearch::build(qxx, &self.cfg.channel, &self.cfg.metric) {
            Some(s) => s,
            None => return FunctionalValue { value: POS_INF, argopt: None },
        };
        let objective = |p: &[f64]| self.cond_objective(&search, qxx, r, gap, p);
        let anchors = vec![search.channel_anchor()];
        let (arg, value) =
            refine_min(objective, &SearchBox::unit(search.dim()), &self.cfg.grid, &anchors);
        let argopt = search.conditional(&arg);
        FunctionalValue { value, argopt }
    }

    fn cond_objective(
        &self,
        search: &CondSearch,
        qxx: &JointXX,
        r: f64,
        gap: ScoreGap,
        param: &[f64],
    ) -> ExtReal {
        let eval = match search.evaluate(qxx, param) {
            Some(e) => e,
            None => return POS_INF,
        };
        let metric = &self.cfg.metric;
        let g_xpy = eval_metric(metric, &eval.q_xpy);
        // A competitor score of -inf makes the gap term +inf; when the
        // reference score is -inf as well the candidate corresponds to an
        // output sequence impossible under both hypotheses and is excluded.
        if g_xpy.is_neg_inf() {
            return POS_INF;
        }
        let gap_term = match gap {
            ScoreGap::Clipped => {
                let g_xy = eval_metric(metric, &eval.q_xy);
                let reference = g_xy.max(self.alpha(r, &eval.q_y));
                if reference.is_neg_inf() {
                    0.0
                } else {
                    (reference.value() - g_xpy.value()).max(0.0)
                }
            }
            ScoreGap::Unclipped => {
                let mut b = self.beta(r, &eval.q_y);
                if b.is_neg_inf() {
                    // The competitor marginal itself is a feasible coupling,
                    // so beta is at least its own score; use that floor when
                    // the grid search returned -inf.
                    let i = crate::info::mutual_info(&eval.q_xpy);
                    b = g_xpy.add(ExtReal::finite((r - i).max(0.0)));
                }
                b.value() - g_xpy.value()
            }
        };
        ExtReal::finite(eval.divergence + gap_term)
    }
}

#[derive(Clone, Copy)]
enum ScoreGap {
    Clipped,
    Unclipped,
}

/// Metric score and mutual information of a coupling, `None` outside the
/// polytope.
fn coupling_score(
    coup: &CouplingParam,
    param: &[f64],
    metric: &GldMetric,
) -> Option<(ExtReal, f64)> {
    let m = coup.matrix(param)?;
    let (nx, ny) = (metric.num_inputs(), metric.num_outputs());
    debug_assert_eq!(m.len(), nx * ny);
    let joint = JointXY::new(nx, ny, m).ok()?;
    let g = eval_metric(metric, &joint);
    let i = crate::info::mutual_info(&joint);
    Some((g, i))
}

/// Pre-reduced search space over conditional output laws `Q_{Y|XX'}`.
pub(crate) struct CondSearch {
    k: usize,
    ny: usize,
    /// `(x, x', admissible outputs)` for positive-mass cells with a choice.
    free_cells: Vec<(usize, usize, Vec<usize>)>,
    /// Fully determined conditional rows, indexed `x * k + x'`.
    fixed: Vec<Vec<f64>>,
    w_rows: Vec<Vec<f64>>,
}

pub(crate) struct CondEval {
    pub divergence: f64,
    pub q_xy: JointXY,
    pub q_xpy: JointXY,
    pub q_y: Vec<f64>,
}

impl CondSearch {
    /// `None` when some positive-mass cell has no admissible output.
    pub(crate) fn build(qxx: &JointXX, w: &ChannelMatrix, metric: &GldMetric) -> Option<Self> {
        let k = w.num_inputs();
        let ny = w.num_outputs();
        let w_rows: Vec<Vec<f64>> =
            (0..k).map(|x| (0..ny).map(|y| w.prob(x, y)).collect()).collect();
        let mut free_cells = Vec::new();
        let mut fixed = vec![Vec::new(); k * k];
        for x in 0..k {
            for xp in 0..k {
                if qxx.get(x, xp) <= 0.0 {
                    // irrelevant cell; pin to the channel row
                    fixed[x * k + xp] = w_rows[x].clone();
                    continue;
                }
                let support: Vec<usize> = (0..ny)
                    .filter(|&y| w.prob(x, y) > 0.0 && !metric.coeff(xp, y).is_neg_inf())
                    .collect();
                match support.len() {
                    0 => return None,
                    1 => {
                        let mut row = vec![0.0; ny];
                        row[support[0]] = 1.0;
                        fixed[x * k + xp] = row;
                    }
                    _ => free_cells.push((x, xp, support)),
                }
            }
        }
        Some(CondSearch { k, ny, free_cells, fixed, w_rows })
    }

    pub(crate) fn dim(&self) -> usize {
        self.free_cells.iter().map(|(_, _, s)| s.len() - 1).sum()
    }

    /// Parameters reproducing the channel itself on each free cell
    /// (restricted to the admissible outputs and renormalized).
    pub(crate) fn channel_anchor(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.dim());
        for (x, _, support) in &self.free_cells {
            let total: f64 = support.iter().map(|&y| self.w_rows[*x][y]).sum();
            for &y in &support[..support.len() - 1] {
                p.push(self.w_rows[*x][y] / total);
            }
        }
        p
    }

    /// Parameters reproducing the competitor's channel row `W(.|x')` on
    /// each free cell (restricted and renormalized). A natural feasible
    /// start when the competitor score is constrained from below.
    pub(crate) fn competitor_anchor(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.dim());
        for (_, xp, support) in &self.free_cells {
            let total: f64 = support.iter().map(|&y| self.w_rows[*xp][y]).sum();
            for &y in &support[..support.len() - 1] {
                p.push(self.w_rows[*xp][y] / total);
            }
        }
        p
    }

    fn cell_rows(&self, param: &[f64]) -> Option<Vec<Vec<f64>>> {
        let mut rows = self.fixed.clone();
        let mut off = 0;
        for (x, xp, support) in &self.free_cells {
            let d = support.len() - 1;
            let coords = &param[off..off + d];
            off += d;
            let mut row = vec![0.0; self.ny];
            let mut rest = 1.0;
            for (i, &y) in support[..d].iter().enumerate() {
                let v = coords[i];
                if !(0.0..=1.0).contains(&v) {
                    return None;
                }
                row[y] = v;
                rest -= v;
            }
            if rest < -1e-12 {
                return None;
            }
            row[support[d]] = rest.max(0.0);
            rows[x * self.k + xp] = row;
        }
        Some(rows)
    }

    /// Divergence cost and induced marginals at a parameter point; `None`
    /// outside the simplex product.
    pub(crate) fn evaluate(&self, qxx: &JointXX, param: &[f64]) -> Option<CondEval> {
        let rows = self.cell_rows(param)?;
        let k = self.k;
        let ny = self.ny;
        let mut divergence = 0.0;
        let mut q_xy = vec![0.0; k * ny];
        let mut q_xpy = vec![0.0; k * ny];
        let mut q_y = vec![0.0; ny];
        for x in 0..k {
            for xp in 0..k {
                let mass = qxx.get(x, xp);
                if mass <= 0.0 {
                    continue;
                }
                let row = &rows[x * k + xp];
                for y in 0..ny {
                    let p = row[y];
                    if p <= 0.0 {
                        continue;
                    }
                    // support pre-reduction guarantees W(y|x) > 0 here
                    divergence += mass * p * (p / self.w_rows[x][y]).ln();
                    let mp = mass * p;
                    q_xy[x * ny + y] += mp;
                    q_xpy[xp * ny + y] += mp;
                    q_y[y] += mp;
                }
            }
        }
        Some(CondEval {
            divergence,
            q_xy: JointXY::new(k, ny, q_xy).ok()?,
            q_xpy: JointXY::new(k, ny, q_xpy).ok()?,
            q_y,
        })
    }

    pub(crate) fn conditional(&self, param: &[f64]) -> Option<CondYgivenXX> {
        let rows = self.cell_rows(param)?;
        CondYgivenXX::new(self.k, self.ny, rows).ok()
    }
}

/// `alpha(R, Q_Y)` with a one-shot evaluator; see [`Functionals::alpha`].
pub fn alpha(r: f64, qy: &ProbVec, cfg: &ModelConfig) -> ExtReal {
    Functionals::new(cfg).alpha(r, qy.as_slice())
}

/// `beta(R, Q_Y)` with a one-shot evaluator; see [`Functionals::beta`].
pub fn beta_fn(r: f64, qy: &ProbVec, cfg: &ModelConfig) -> ExtReal {
    Functionals::new(cfg).beta(r, qy.as_slice())
}

/// `a(R, Q_Y)` for likelihood decoding; see [`Functionals::a_ml`].
pub fn a_ml(r: f64, qy: &ProbVec, w: &ChannelMatrix, qx: &ProbVec) -> ExtReal {
    let cfg = ModelConfig::ml(w.clone(), qx.clone()).expect("channel/composition mismatch");
    Functionals::new(&cfg).a_ml(r, qy.as_slice())
}

/// `Gamma(Q_XX', R)` with a one-shot evaluator; see [`Functionals::gamma`].
pub fn gamma_fn(qxx: &JointXX, r: f64, cfg: &ModelConfig) -> FunctionalValue {
    Functionals::new(cfg).gamma(qxx, r)
}

/// `Lambda(Q_XX', R)` with a one-shot evaluator; see [`Functionals::lambda`].
pub fn lambda_fn(qxx: &JointXX, r: f64, cfg: &ModelConfig) -> FunctionalValue {
    Functionals::new(cfg).lambda(qxx, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opt::GridSpec;

    fn z_channel() -> ChannelMatrix {
        ChannelMatrix::new(vec![vec![1.0, 0.0], vec![0.001, 0.999]]).unwrap()
    }

    fn z_cfg() -> ModelConfig {
        ModelConfig::ml(z_channel(), ProbVec::uniform(2)).unwrap()
    }

    fn zero_cfg() -> ModelConfig {
        let w = z_channel();
        let m = GldMetric::zero(2, 2);
        ModelConfig::new(w, ProbVec::uniform(2), m, GridSpec::default()).unwrap()
    }

    #[test]
    fn alpha_at_zero_rate_is_product_score() {
        // I <= 0 forces the product coupling
        let cfg = z_cfg();
        let qy = ProbVec::new(vec![0.7, 0.3]).unwrap();
        let a = alpha(0.0, &qy, &cfg);
        // product coupling puts mass on the forbidden (0,1) cell
        assert!(a.is_neg_inf());

        // with a full-support channel the product score is finite
        let w = ChannelMatrix::new(vec![vec![0.8, 0.2], vec![0.3, 0.7]]).unwrap();
        let cfg = ModelConfig::ml(w.clone(), ProbVec::uniform(2)).unwrap();
        let a = alpha(0.0, &qy, &cfg);
        let mut expect = 0.0;
        for x in 0..2 {
            for y in 0..2 {
                expect += 0.5 * qy.get(y) * w.prob(x, y).ln();
            }
        }
        // the feasibility slack tol_feas admits couplings with I up to
        // 1e-9, which moves the boundary optimum O(sqrt(tol)) off product
        assert!((a.value() - expect).abs() < 1e-4);
    }

    #[test]
    fn alpha_zero_metric_equals_rate() {
        let cfg = zero_cfg();
        let qy = ProbVec::new(vec![0.4, 0.6]).unwrap();
        for r in [0.0, 0.1, 0.5] {
            let a = alpha(r, &qy, &cfg);
            assert!((a.value() - r).abs() < 1e-9, "alpha={a} at r={r}");
        }
    }

    #[test]
    fn alpha_uniform_qy_small_rate_is_neg_inf() {
        // every coupling with I <= 0.2 < ln2 and uniform marginals uses the
        // forbidden transition
        let cfg = z_cfg();
        let qy = ProbVec::uniform(2);
        assert!(alpha(0.2, &qy, &cfg).is_neg_inf());
    }

    #[test]
    fn alpha_nondecreasing_in_rate() {
        let cfg = z_cfg();
        let qy = ProbVec::new(vec![0.75, 0.25]).unwrap();
        let mut last = NEG_INF;
        for r in [0.0, 0.2, 0.4, 0.6, 0.8] {
            let a = alpha(r, &qy, &cfg);
            assert!(a >= last.sub(ExtReal::finite(1e-9)));
            last = a;
        }
    }

    #[test]
    fn beta_zero_metric_equals_rate() {
        let cfg = zero_cfg();
        let qy = ProbVec::new(vec![0.3, 0.7]).unwrap();
        for r in [0.0, 0.25, 1.0] {
            let b = beta_fn(r, &qy, &cfg);
            assert!((b.value() - r).abs() < 1e-9);
        }
    }

    #[test]
    fn beta_uniform_qy_identity_coupling() {
        // only the identity coupling avoids the forbidden transition; its
        // mutual information ln 2 exceeds the rates tried, so the clipped
        // bonus vanishes
        let cfg = z_cfg();
        let qy = ProbVec::uniform(2);
        for r in [0.0, 0.2, 0.5] {
            let b = beta_fn(r, &qy, &cfg);
            assert!((b.value() - 0.5 * 0.999f64.ln()).abs() < 1e-9, "beta={b} at r={r}");
        }
    }

    #[test]
    fn beta_dominates_alpha() {
        let cfg = z_cfg();
        for qy0 in [0.5, 0.6, 0.75, 0.9] {
            let qy = ProbVec::new(vec![qy0, 1.0 - qy0]).unwrap();
            for r in [0.0, 0.1, 0.3, 0.7] {
                let a = alpha(r, &qy, &cfg);
                let b = beta_fn(r, &qy, &cfg);
                assert!(b >= a.sub(ExtReal::finite(1e-9)), "beta {b} < alpha {a}");
            }
        }
    }

    #[test]
    fn a_ml_values() {
        let w = z_channel();
        let qx = ProbVec::uniform(2);
        // uniform Q_Y below ln 2: same support argument as alpha
        assert!(a_ml(0.3, &ProbVec::uniform(2), &w, &qx).is_neg_inf());

        // identity channel at r >= ln 2: identity coupling feasible, ln W = 0
        let ident = ChannelMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let v = a_ml(0.75, &ProbVec::uniform(2), &ident, &qx);
        assert!(v.value().abs() < 1e-9, "a_ml={v}");

        // r = 0 forces the product coupling
        let w2 = ChannelMatrix::new(vec![vec![0.8, 0.2], vec![0.3, 0.7]]).unwrap();
        let qy = ProbVec::new(vec![0.6, 0.4]).unwrap();
        let v = a_ml(0.0, &qy, &w2, &qx);
        let mut expect = 0.0;
        for x in 0..2 {
            for y in 0..2 {
                expect += 0.5 * qy.get(y) * w2.prob(x, y).ln();
            }
        }
        assert!((v.value() - expect).abs() < 1e-4);
    }

    #[test]
    fn gamma_zero_metric_product_zero_rate() {
        // choose the channel itself: divergence 0, leakage 0, gap [0-0]_+ = 0
        let cfg = zero_cfg();
        let qxx = JointXX::product(&cfg.qx);
        let g = gamma_fn(&qxx, 0.0, &cfg);
        assert!(g.value.value().abs() < 1e-9, "gamma={}", g.value);
    }

    #[test]
    fn gamma_product_zero_rate_matches_pairwise_bhattacharyya() {
        // zero-rate expurgated oracle: 2 * (1/4) * (-ln sqrt(0.001))
        let cfg = z_cfg();
        let qxx = JointXX::product(&cfg.qx);
        let g = gamma_fn(&qxx, 0.0, &cfg);
        let oracle = 2.0 * 0.25 * -(0.001f64.sqrt().ln());
        assert!((g.value.value() - oracle).abs() < 5e-4, "gamma={} oracle={oracle}", g.value);
    }

    #[test]
    fn gamma_diagonal_is_zero() {
        // X' = X: alpha = -inf, the clip term is [g - g]_+ = 0, divergence
        // minimized at the channel
        let cfg = z_cfg();
        let diag = JointXX::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        let g = gamma_fn(&diag, 0.2, &cfg);
        assert!(g.value.value().abs() < 1e-9, "gamma={}", g.value);
    }

    #[test]
    fn lambda_zero_metric_equals_rate() {
        let cfg = zero_cfg();
        let qxx = JointXX::product(&cfg.qx);
        for r in [0.0, 0.15, 0.4] {
            let l = lambda_fn(&qxx, r, &cfg);
            assert!((l.value.value() - r).abs() < 1e-9, "lambda={} at r={r}", l.value);
        }
    }

    #[test]
    fn lambda_dominates_gamma() {
        let cfg = z_cfg();
        for q00 in [0.0, 0.1, 0.25, 0.4, 0.5] {
            let qxx =
                JointXX::new(2, 2, vec![q00, 0.5 - q00, 0.5 - q00, q00]).unwrap();
            for r in [0.05, 0.2, 0.4] {
                let g = gamma_fn(&qxx, r, &cfg).value;
                let l = lambda_fn(&qxx, r, &cfg).value;
                assert!(
                    l >= g.sub(ExtReal::finite(1e-9)),
                    "lambda {l} < gamma {g} at q00={q00}, r={r}"
                );
            }
        }
    }

    #[test]
    fn gamma_nondecreasing_in_rate() {
        let cfg = z_cfg();
        let qxx = JointXX::product(&cfg.qx);
        let mut last = NEG_INF;
        for r in [0.0, 0.1, 0.2, 0.4] {
            let g = gamma_fn(&qxx, r, &cfg).value;
            assert!(g >= last.sub(ExtReal::finite(1e-9)));
            last = g;
        }
    }

    #[test]
    fn full_support_channel_keeps_functionals_finite() {
        let w = ChannelMatrix::new(vec![vec![0.7, 0.3], vec![0.1, 0.9]]).unwrap();
        let cfg = ModelConfig::ml(w, ProbVec::uniform(2)).unwrap();
        for q00 in [0.0, 0.2, 0.25, 0.5] {
            let qxx = JointXX::new(2, 2, vec![q00, 0.5 - q00, 0.5 - q00, q00]).unwrap();
            for r in [0.0, 0.2] {
                let g = gamma_fn(&qxx, r, &cfg).value;
                let l = lambda_fn(&qxx, r, &cfg).value;
                assert!(g.is_finite(), "gamma infinite at q00={q00}, r={r}");
                assert!(l.is_finite(), "lambda infinite at q00={q00}, r={r}");
                assert!(g.value() >= -1e-12);
            }
        }
    }

    #[test]
    fn witness_reproduces_value() {
        let cfg = z_cfg();
        let qxx = JointXX::new(2, 2, vec![0.3, 0.2, 0.2, 0.3]).unwrap();
        let fv = gamma_fn(&qxx, 0.15, &cfg);
        let cond = fv.argopt.expect("feasible candidate has a witness");
        // re-evaluate the objective at the witness
        let fns = Functionals::new(&cfg);
        let search = CondSearch::build(&qxx, &cfg.channel, &cfg.metric).unwrap();
        let mut param = Vec::new();
        for (x, xp, support) in &search.free_cells {
            for &y in &support[..support.len() - 1] {
                param.push(cond.prob(*x, *xp, y));
            }
        }
        let v = fns.cond_objective(&search, &qxx, 0.15, ScoreGap::Clipped, &param);
        assert!((v.value() - fv.value.value()).abs() < 1e-8);
    }
}
