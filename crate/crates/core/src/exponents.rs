//! Top-level exponent curves and large-deviations rate functions.
//!
//! Every curve is an optimization over the coupling polytope
//! `{Q_XX' : both marginals = Q_X}` of an objective assembled from the
//! functionals `Gamma`, `Lambda` and the pair mutual information `I`:
//!
//! * typical-code exponent: `min {Gamma + I - R}` over `I <= 2R`,
//! * expurgated exponent: the same over `I <= R`,
//! * its `Lambda` companion: `min {Lambda + I - R}` over `I <= 2R`,
//! * phase-transition threshold: `min {Gamma - [2R - I]_+} + R`,
//! * lower-tail rate at level `E_0`: `min [I - 2R]_+` over the couplings
//!   whose enumerator shortfall is typical, `[2R - I]_+ >= Gamma + R - E_0`
//!   (`Lambda` variant for the lower bound),
//! * upper-tail double-exponential rates: maxima over the couplings whose
//!   contribution already beats `E_0`.
//!
//! Evaluations at one rate share a memoized map from coupling parameters to
//! `(I, Gamma, Lambda)`, so scanning an `E_0` grid costs little more than a
//! single curve point. Minimizer parameters of the scalar curves are kept
//! and fed back as anchors to the tail searches; this pins the tails' phase
//! transitions to the same numeric thresholds the curves report.

use dashmap::DashMap;

use crate::ext::{ExtReal, NEG_INF, POS_INF};
use crate::functionals::{FunctionalValue, Functionals};
use crate::gld::{eval_metric, GldMetric};
use crate::info::mutual_info;
use crate::opt::{constrained_min, refine_min, CouplingParam, SearchBox};
use crate::prob::{ChannelMatrix, CondYgivenX, CondYgivenXX, Joint2, JointXX, ProbVec};
use crate::{Error, ModelConfig};

const QUANT: f64 = (1u64 << 33) as f64;

/// An exponent value with the distribution(s) that achieved it.
///
/// `value` is `+inf` exactly when `feasible` is false for min-type
/// exponents (empty constraint set means super-exponential decay).
#[derive(Clone, Debug)]
pub struct ExponentResult {
    pub value: ExtReal,
    pub witness: Option<Witness>,
    pub feasible: bool,
}

/// Optimizing distributions behind an exponent value.
#[derive(Clone, Debug)]
pub struct Witness {
    /// Outer minimizer over the coupling polytope, when the exponent has one.
    pub qxx: Option<JointXX>,
    /// Inner conditional output law given the codeword pair.
    pub cond_pair: Option<CondYgivenXX>,
    /// Inner conditional output law given a single input (random-coding case).
    pub cond_channel: Option<CondYgivenX>,
}

/// A sweep of one exponent over a strictly increasing abscissa grid.
#[derive(Clone, Debug)]
pub struct ExponentCurve {
    pub grid: Vec<f64>,
    pub values: Vec<ExponentResult>,
}

impl ExponentCurve {
    pub fn new(grid: Vec<f64>, values: Vec<ExponentResult>) -> Self {
        assert!(grid.windows(2).all(|w| w[0] < w[1]), "grid must be strictly increasing");
        assert_eq!(grid.len(), values.len());
        ExponentCurve { grid, values }
    }
}

struct PointEntry {
    /// Quantized coupling coordinates the entry was evaluated at.
    coords: Vec<f64>,
    /// Pair mutual information; `+inf` marks parameters off the polytope.
    i: f64,
    gamma: std::sync::OnceLock<ExtReal>,
    lambda: std::sync::OnceLock<ExtReal>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Scalar {
    Trc,
    Expurgated,
    Tilde,
    E0Min,
}

/// Shared evaluator for all exponent operations of one model.
pub struct Engine {
    fns: Functionals,
    coupling: CouplingParam,
    points: DashMap<(u64, Vec<u64>), std::sync::Arc<PointEntry>>,
    scalars: DashMap<(Scalar, u64), (ExtReal, Vec<f64>)>,
    ml_inner: DashMap<(u64, Vec<u64>), ExtReal>,
}

impl Engine {
    pub fn new(cfg: &ModelConfig) -> Self {
        Engine {
            fns: Functionals::new(cfg),
            coupling: CouplingParam::square(&cfg.qx),
            points: DashMap::new(),
            scalars: DashMap::new(),
            ml_inner: DashMap::new(),
        }
    }

    pub fn config(&self) -> &ModelConfig {
        self.fns.config()
    }

    fn cfg(&self) -> &ModelConfig {
        self.fns.config()
    }

    /// Memoized per-(rate, coupling) evaluations. `Gamma` and `Lambda`
    /// are computed on first demand; the mutual information eagerly.
    /// Parameters outside the polytope evaluate to `+inf` everywhere.
    fn entry(&self, r: f64, param: &[f64]) -> std::sync::Arc<PointEntry> {
        let key = (
            r.to_bits(),
            param.iter().map(|v| (v * QUANT).round() as u64).collect::<Vec<u64>>(),
        );
        if let Some(p) = self.points.get(&key) {
            return p.clone();
        }
        let coords: Vec<f64> = key.1.iter().map(|&k| k as f64 / QUANT).collect();
        let i = match self.coupling.joint(&coords) {
            Some(qxx) => mutual_info(&qxx),
            None => f64::INFINITY,
        };
        let entry = std::sync::Arc::new(PointEntry {
            coords,
            i,
            gamma: std::sync::OnceLock::new(),
            lambda: std::sync::OnceLock::new(),
        });
        self.points.entry(key).or_insert(entry).clone()
    }

    fn i_at(&self, r: f64, param: &[f64]) -> f64 {
        self.entry(r, param).i
    }

    fn gamma_at(&self, r: f64, param: &[f64]) -> ExtReal {
        let e = self.entry(r, param);
        if !e.i.is_finite() {
            return POS_INF;
        }
        *e.gamma.get_or_init(|| {
            let qxx = self.coupling.joint(&e.coords).expect("finite I implies valid joint");
            self.fns.gamma(&qxx, r).value
        })
    }

    fn lambda_at(&self, r: f64, param: &[f64]) -> ExtReal {
        let e = self.entry(r, param);
        if !e.i.is_finite() {
            return POS_INF;
        }
        *e.lambda.get_or_init(|| {
            let qxx = self.coupling.joint(&e.coords).expect("finite I implies valid joint");
            self.fns.lambda(&qxx, r).value
        })
    }

    fn family_box(&self) -> SearchBox {
        self.coupling.search_box()
    }

    /// Product coupling plus, on binary alphabets, the boundary couplings
    /// where the pair mutual information crosses `level`.
    fn family_anchors(&self, levels: &[f64]) -> Vec<Vec<f64>> {
        let mut anchors = vec![self.coupling.product_param()];
        if self.cfg().qx.len() != 2 {
            return anchors;
        }
        let b = self.family_box();
        let (lo, hi) = (b.lo[0], b.hi[0]);
        let prod = anchors[0][0];
        let mi_at = |t: f64| {
            self.coupling
                .joint(&[t])
                .map(|j| mutual_info(&j))
                .unwrap_or(f64::INFINITY)
        };
        for &level in levels {
            if level <= 0.0 {
                continue;
            }
            // I is convex along the family with minimum 0 at the product
            // point; bisect each side for the crossing.
            for (mut a, mut c) in [(lo, prod), (hi, prod)] {
                if mi_at(a) < level {
                    continue;
                }
                for _ in 0..60 {
                    let m = 0.5 * (a + c);
                    if mi_at(m) >= level {
                        a = m;
                    } else {
                        c = m;
                    }
                }
                anchors.push(vec![a]);
                anchors.push(vec![c]);
            }
        }
        anchors
    }

    fn witness_at(&self, r: f64, param: &[f64], lambda: bool) -> Option<Witness> {
        let qxx = self.coupling.joint(param)?;
        let fv: FunctionalValue =
            if lambda { self.fns.lambda(&qxx, r) } else { self.fns.gamma(&qxx, r) };
        Some(Witness { qxx: Some(qxx), cond_pair: fv.argopt, cond_channel: None })
    }

    fn scalar(&self, which: Scalar, r: f64) -> (ExtReal, Vec<f64>) {
        let key = (which, r.to_bits());
        if let Some(v) = self.scalars.get(&key) {
            return v.clone();
        }
        let spec = self.cfg().grid;
        let result = match which {
            Scalar::Trc | Scalar::Expurgated | Scalar::Tilde => {
                let cap = match which {
                    Scalar::Expurgated => r,
                    _ => 2.0 * r,
                };
                let use_lambda = which == Scalar::Tilde;
                let objective = |p: &[f64]| {
                    let i = self.i_at(r, p);
                    if !i.is_finite() {
                        return POS_INF;
                    }
                    let f = if use_lambda { self.lambda_at(r, p) } else { self.gamma_at(r, p) };
                    f.add(ExtReal::finite(i - r))
                };
                let constraint = |p: &[f64]| self.i_at(r, p);
                let anchors = self.family_anchors(&[cap]);
                constrained_min(objective, constraint, cap, &self.family_box(), &spec, &anchors)
                    .map(|(arg, v)| (v, arg))
                    .unwrap_or((POS_INF, Vec::new()))
            }
            Scalar::E0Min => {
                let objective = |p: &[f64]| {
                    let i = self.i_at(r, p);
                    if !i.is_finite() {
                        return POS_INF;
                    }
                    self.gamma_at(r, p).add(ExtReal::finite(r - (2.0 * r - i).max(0.0)))
                };
                let anchors = self.family_anchors(&[2.0 * r]);
                let (arg, v) = refine_min(objective, &self.family_box(), &spec, &anchors);
                (v, arg)
            }
        };
        self.scalars.insert(key, result.clone());
        result
    }

    /// Classical constant-composition random-coding exponent under
    /// likelihood decoding: `min_{Q_{Y|X}} D(Q_{Y|X} || W | Q_X) + [I(X;Y) - R]_+`.
    pub fn random_coding_exponent(&self, r: f64) -> ExponentResult {
        let cfg = self.cfg();
        let (k, ny) = (cfg.channel.num_inputs(), cfg.channel.num_outputs());
        // per-input admissible outputs: supp W(.|x)
        let supports: Vec<Vec<usize>> = (0..k)
            .map(|x| (0..ny).filter(|&y| cfg.channel.prob(x, y) > 0.0).collect())
            .collect();
        let dim: usize = supports.iter().map(|s| s.len() - 1).sum();
        let rows_at = |p: &[f64]| -> Option<Vec<Vec<f64>>> {
            let mut rows = vec![vec![0.0; ny]; k];
            let mut off = 0;
            for x in 0..k {
                let s = &supports[x];
                let d = s.len() - 1;
                let mut rest = 1.0;
                for (idx, &y) in s[..d].iter().enumerate() {
                    let v = p[off + idx];
                    if !(0.0..=1.0).contains(&v) {
                        return None;
                    }
                    rows[x][y] = v;
                    rest -= v;
                }
                if rest < -1e-12 {
                    return None;
                }
                rows[x][s[d]] = rest.max(0.0);
                off += d;
            }
            Some(rows)
        };
        let objective = |p: &[f64]| -> ExtReal {
            let rows = match rows_at(p) {
                Some(rw) => rw,
                None => return POS_INF,
            };
            let mut d = 0.0;
            let mut joint = vec![0.0; k * ny];
            for x in 0..k {
                let mass = cfg.qx.get(x);
                if mass <= 0.0 {
                    continue;
                }
                for y in 0..ny {
                    let p_y = rows[x][y];
                    if p_y > 0.0 {
                        d += mass * p_y * (p_y / cfg.channel.prob(x, y)).ln();
                        joint[x * ny + y] += mass * p_y;
                    }
                }
            }
            let jv = match crate::prob::JointXY::new(k, ny, joint) {
                Ok(j) => j,
                Err(_) => return POS_INF,
            };
            let i = mutual_info(&jv);
            ExtReal::finite(d + (i - r).max(0.0))
        };
        // anchor: the channel itself
        let mut anchor = Vec::with_capacity(dim);
        for x in 0..k {
            let s = &supports[x];
            for &y in &s[..s.len() - 1] {
                anchor.push(cfg.channel.prob(x, y));
            }
        }
        let (arg, value) =
            refine_min(objective, &SearchBox::unit(dim), &cfg.grid, &[anchor]);
        let cond = rows_at(&arg).and_then(|rows| CondYgivenX::new(rows).ok());
        ExponentResult {
            value,
            witness: Some(Witness { qxx: None, cond_pair: None, cond_channel: cond }),
            feasible: true,
        }
    }

    /// Exponent of the typical random code:
    /// `min {Gamma(Q,R) + I(Q) - R}` over couplings with `I <= 2R`.
    pub fn trc_exponent(&self, r: f64) -> ExponentResult {
        let (value, arg) = self.scalar(Scalar::Trc, r);
        ExponentResult {
            witness: self.witness_at(r, &arg, false),
            feasible: value < POS_INF,
            value,
        }
    }

    /// Expurgated exponent: the same objective over `I <= R`.
    pub fn expurgated_exponent(&self, r: f64) -> ExponentResult {
        let (value, arg) = self.scalar(Scalar::Expurgated, r);
        ExponentResult {
            witness: self.witness_at(r, &arg, false),
            feasible: value < POS_INF,
            value,
        }
    }

    /// `Lambda` companion of the typical-code exponent; dominates it.
    pub fn e_tilde(&self, r: f64) -> ExponentResult {
        let (value, arg) = self.scalar(Scalar::Tilde, r);
        ExponentResult {
            witness: self.witness_at(r, &arg, true),
            feasible: value < POS_INF,
            value,
        }
    }

    /// Phase-transition threshold of the lower tail:
    /// `min {Gamma(Q,R) - [2R - I(Q)]_+} + R` over the whole polytope.
    pub fn e0_min(&self, r: f64) -> ExponentResult {
        let (value, arg) = self.scalar(Scalar::E0Min, r);
        ExponentResult {
            witness: self.witness_at(r, &arg, false),
            feasible: value < POS_INF,
            value,
        }
    }

    /// Likelihood-decoding particularization of the typical-code exponent:
    /// `min {D(Q_{Y|X} || W | Q_X) + I(X,Y; X') - R}` over triples whose
    /// competitor score beats both the true score and the best typical
    /// competitor, with `I(X;X') <= 2R`.
    pub fn trc_exponent_ml(&self, r: f64) -> ExponentResult {
        let objective = |p: &[f64]| -> ExtReal {
            let i = self.i_at(r, p);
            if !i.is_finite() {
                return POS_INF;
            }
            self.ml_inner(r, p).add(ExtReal::finite(i - r))
        };
        let constraint = |p: &[f64]| self.i_at(r, p);
        let anchors = self.family_anchors(&[2.0 * r]);
        let spec = self.cfg().grid;
        let res = constrained_min(objective, constraint, 2.0 * r, &self.family_box(), &spec, &anchors);
        match res {
            Ok((arg, value)) => ExponentResult {
                witness: self.coupling.joint(&arg).map(|qxx| Witness {
                    qxx: Some(qxx),
                    cond_pair: None,
                    cond_channel: None,
                }),
                feasible: value < POS_INF,
                value,
            },
            Err(_) => ExponentResult { value: POS_INF, witness: None, feasible: false },
        }
    }

    /// Inner minimization of the likelihood particularization at one
    /// coupling: `min D + I(X';Y|X)` subject to
    /// `E[ln W(Y|X')] >= max{E[ln W(Y|X)], a(R, Q_Y)}`.
    fn ml_inner(&self, r: f64, param: &[f64]) -> ExtReal {
        let key = (
            r.to_bits(),
            param.iter().map(|v| (v * QUANT).round() as u64).collect::<Vec<u64>>(),
        );
        if let Some(v) = self.ml_inner.get(&key) {
            return *v;
        }
        let coords: Vec<f64> = key.1.iter().map(|&k| k as f64 / QUANT).collect();
        let v = self.ml_inner_uncached(r, &coords);
        self.ml_inner.insert(key, v);
        v
    }

    fn ml_inner_uncached(&self, r: f64, coords: &[f64]) -> ExtReal {
        let cfg = self.cfg();
        let qxx = match self.coupling.joint(coords) {
            Some(q) => q,
            None => return POS_INF,
        };
        let ml = GldMetric::log_likelihood(&cfg.channel);
        // admissible outputs need both W(y|x) > 0 (divergence) and
        // W(y|x') > 0 (competitor expectation finite)
        let search = match crate::functionals::CondSearch::build(&qxx, &cfg.channel, &ml) {
            Some(s) => s,
            None => return POS_INF,
        };
        let objective = |p: &[f64]| match search.evaluate(&qxx, p) {
            Some(e) => ExtReal::finite(e.divergence),
            None => POS_INF,
        };
        let constraint = |p: &[f64]| -> f64 {
            match search.evaluate(&qxx, p) {
                Some(e) => {
                    let g_xpy = eval_metric(&ml, &e.q_xpy);
                    if g_xpy.is_neg_inf() {
                        return f64::INFINITY;
                    }
                    let g_xy = eval_metric(&ml, &e.q_xy);
                    let reference = g_xy.max(self.fns.a_ml(r, &e.q_y));
                    if reference.is_neg_inf() {
                        f64::NEG_INFINITY
                    } else {
                        reference.value() - g_xpy.value()
                    }
                }
                None => f64::INFINITY,
            }
        };
        let anchors = vec![search.channel_anchor(), search.competitor_anchor()];
        match constrained_min(
            objective,
            constraint,
            0.0,
            &SearchBox::unit(search.dim()),
            &cfg.grid,
            &anchors,
        ) {
            Ok((_, v)) => v,
            Err(_) => POS_INF,
        }
    }

    /// Lower-tail exponent, upper bound flavor:
    /// `min [I - 2R]_+` over couplings with `[2R - I]_+ >= Gamma + R - E_0`.
    ///
    /// `+inf` when that set is empty (below the phase transition), zero as
    /// soon as `E_0` reaches the typical-code exponent.
    pub fn lt_upper(&self, r: f64, e0: f64) -> ExponentResult {
        self.lower_tail(r, e0, false)
    }

    /// Lower-tail exponent, lower bound flavor (`Lambda` membership).
    pub fn lt_lower(&self, r: f64, e0: f64) -> ExponentResult {
        self.lower_tail(r, e0, true)
    }

    fn lower_tail(&self, r: f64, e0: f64, use_lambda: bool) -> ExponentResult {
        let spec = self.cfg().grid;
        let objective = |p: &[f64]| -> ExtReal {
            let i = self.i_at(r, p);
            if i.is_finite() {
                ExtReal::finite((i - 2.0 * r).max(0.0))
            } else {
                POS_INF
            }
        };
        // membership: Gamma + R - E0 - [2R - I]_+ <= 0
        let constraint = |p: &[f64]| -> f64 {
            let i = self.i_at(r, p);
            if !i.is_finite() {
                return f64::INFINITY;
            }
            let f = if use_lambda { self.lambda_at(r, p) } else { self.gamma_at(r, p) };
            if f.is_pos_inf() {
                return f64::INFINITY;
            }
            f.value() + r - e0 - (2.0 * r - i).max(0.0)
        };
        let mut anchors = self.family_anchors(&[2.0 * r]);
        let scalar = if use_lambda { Scalar::Tilde } else { Scalar::Trc };
        anchors.push(self.scalar(scalar, r).1);
        anchors.push(self.scalar(Scalar::E0Min, r).1);
        anchors.retain(|a| !a.is_empty());
        match constrained_min(objective, constraint, 0.0, &self.family_box(), &spec, &anchors) {
            Ok((arg, value)) => ExponentResult {
                witness: self.witness_at(r, &arg, use_lambda),
                feasible: true,
                value,
            },
            Err(_) => ExponentResult { value: POS_INF, witness: None, feasible: false },
        }
    }

    /// Upper-tail double-exponential rate, upper bound flavor:
    /// `max min{2R - I, E_0 - Lambda - I + R, R}` over couplings with
    /// `I <= 2R` and `Lambda + I - R <= E_0`. Zero (infeasible) below the
    /// `Lambda` companion curve.
    pub fn ut_upper(&self, r: f64, e0: f64) -> ExponentResult {
        let spec = self.cfg().grid;
        let objective = |p: &[f64]| -> ExtReal {
            let i = self.i_at(r, p);
            if !i.is_finite() {
                return NEG_INF;
            }
            let l = self.lambda_at(r, p);
            if l.is_pos_inf() {
                return NEG_INF;
            }
            ExtReal::finite((2.0 * r - i).min(e0 - l.value() - i + r).min(r))
        };
        let constraint = |p: &[f64]| -> f64 {
            let i = self.i_at(r, p);
            if !i.is_finite() {
                return f64::INFINITY;
            }
            if i > 2.0 * r + 1e-9 {
                return i - 2.0 * r;
            }
            let l = self.lambda_at(r, p);
            if l.is_pos_inf() {
                return f64::INFINITY;
            }
            (i - 2.0 * r).max(l.value() + i - r - e0)
        };
        let mut anchors = self.family_anchors(&[2.0 * r]);
        anchors.push(self.scalar(Scalar::Tilde, r).1);
        anchors.retain(|a| !a.is_empty());
        match crate::opt::constrained_max(
            objective,
            constraint,
            0.0,
            &self.family_box(),
            &spec,
            &anchors,
        ) {
            Ok((arg, value)) => ExponentResult {
                witness: self.witness_at(r, &arg, true),
                feasible: true,
                value,
            },
            Err(_) => ExponentResult { value: ExtReal::ZERO, witness: None, feasible: false },
        }
    }

    /// Upper-tail double-exponential rate, lower bound flavor:
    /// `max {2R - I}` over couplings with `I <= 2R` and
    /// `Gamma + I - R <= E_0`. Valid as a bound for
    /// `E_0` between the typical-code and expurgated exponents.
    pub fn ut_lower(&self, r: f64, e0: f64) -> ExponentResult {
        let spec = self.cfg().grid;
        let objective = |p: &[f64]| -> ExtReal {
            let i = self.i_at(r, p);
            if i.is_finite() {
                ExtReal::finite(2.0 * r - i)
            } else {
                NEG_INF
            }
        };
        let constraint = |p: &[f64]| -> f64 {
            let i = self.i_at(r, p);
            if !i.is_finite() {
                return f64::INFINITY;
            }
            if i > 2.0 * r + 1e-9 {
                return i - 2.0 * r;
            }
            let g = self.gamma_at(r, p);
            if g.is_pos_inf() {
                return f64::INFINITY;
            }
            (i - 2.0 * r).max(g.value() + i - r - e0)
        };
        let mut anchors = self.family_anchors(&[2.0 * r]);
        anchors.push(self.scalar(Scalar::Trc, r).1);
        anchors.retain(|a| !a.is_empty());
        match crate::opt::constrained_max(
            objective,
            constraint,
            0.0,
            &self.family_box(),
            &spec,
            &anchors,
        ) {
            Ok((arg, value)) => ExponentResult {
                witness: self.witness_at(r, &arg, false),
                feasible: true,
                value,
            },
            Err(_) => ExponentResult { value: ExtReal::ZERO, witness: None, feasible: false },
        }
    }

    /// Smallest `E_0` at which the upper-tail upper bound saturates at `R`,
    /// i.e. `min {Lambda(Q,R) + I(Q)}` over couplings with `I <= R`.
    pub fn ut_saturation_threshold(&self, r: f64) -> ExtReal {
        let objective = |p: &[f64]| -> ExtReal {
            let i = self.i_at(r, p);
            if !i.is_finite() {
                return POS_INF;
            }
            self.lambda_at(r, p).add(ExtReal::finite(i))
        };
        let constraint = |p: &[f64]| self.i_at(r, p);
        let anchors = self.family_anchors(&[r]);
        let spec = self.cfg().grid;
        match constrained_min(objective, constraint, r, &self.family_box(), &spec, &anchors) {
            Ok((_, v)) => v,
            Err(_) => POS_INF,
        }
    }
}

/// Large-deviations rate of the pair enumerator exceeding `e^{n s}`:
/// `[I - 2R]_+` when the typical population `[2R - I]_+` reaches `s`,
/// `+inf` otherwise.
pub fn enumerator_ld_rate(r: f64, qxx: &JointXX, s: f64) -> ExtReal {
    let i = mutual_info(qxx);
    if (2.0 * r - i).max(0.0) >= s {
        ExtReal::finite((i - 2.0 * r).max(0.0))
    } else {
        POS_INF
    }
}

/// Per-`n` log-scale envelope of enumerator moments: `j (s - I)` when the
/// type is populated (`I < s`), `s - I` when it is not.
pub fn moment_envelope<J: Joint2>(s: f64, joint: &J, j: u32) -> ExtReal {
    assert!(j >= 1, "moment order must be at least 1");
    let i = mutual_info(joint);
    if i < s {
        ExtReal::finite(j as f64 * (s - i))
    } else {
        ExtReal::finite(s - i)
    }
}

/// One-shot wrappers over a transient [`Engine`].
pub fn random_coding_exponent(r: f64, cfg: &ModelConfig) -> ExponentResult {
    Engine::new(cfg).random_coding_exponent(r)
}

pub fn trc_exponent(r: f64, cfg: &ModelConfig) -> ExponentResult {
    Engine::new(cfg).trc_exponent(r)
}

pub fn trc_exponent_ml(r: f64, w: &ChannelMatrix, qx: &ProbVec) -> Result<ExponentResult, Error> {
    let cfg = ModelConfig::ml(w.clone(), qx.clone())?;
    Ok(Engine::new(&cfg).trc_exponent_ml(r))
}

pub fn expurgated_exponent(r: f64, cfg: &ModelConfig) -> ExponentResult {
    Engine::new(cfg).expurgated_exponent(r)
}

pub fn e_tilde(r: f64, cfg: &ModelConfig) -> ExponentResult {
    Engine::new(cfg).e_tilde(r)
}

pub fn e0_min(r: f64, cfg: &ModelConfig) -> ExponentResult {
    Engine::new(cfg).e0_min(r)
}

pub fn lt_upper(r: f64, e0: f64, cfg: &ModelConfig) -> ExponentResult {
    Engine::new(cfg).lt_upper(r, e0)
}

pub fn lt_lower(r: f64, e0: f64, cfg: &ModelConfig) -> ExponentResult {
    Engine::new(cfg).lt_lower(r, e0)
}

pub fn ut_upper(r: f64, e0: f64, cfg: &ModelConfig) -> ExponentResult {
    Engine::new(cfg).ut_upper(r, e0)
}

pub fn ut_lower(r: f64, e0: f64, cfg: &ModelConfig) -> ExponentResult {
    Engine::new(cfg).ut_lower(r, e0)
}
