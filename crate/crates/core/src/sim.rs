//! Exact small-blocklength validation of the random-coding model: codebook
//! sampling, exact decoding error probabilities, type-class enumerators,
//! their moments and empirical tails.
//!
//! Codebooks are drawn uniformly from one type class using per-trial
//! counter-based RNG streams, so trial `t` of a run is reproducible from
//! `(master seed, t)` alone and trials can be computed in parallel in any
//! order.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::ext::ExtReal;
use crate::gld::{GldMetric};
use crate::prob::{
    composition_counts, enumerate_rational_joint_types, type_class_size, ChannelMatrix, ProbVec,
    TypeMatrix,
};
use crate::Error;

/// Default cap on `|Y|^n * M^2` terms in the exact error-probability sum.
pub const DEFAULT_TERM_BUDGET: u128 = 100_000_000;
/// Default cap on `|T(Q_X)|^M` codebooks in exact ensemble enumeration.
pub const DEFAULT_ENUM_BUDGET: u128 = 10_000_000;

/// Two-sided 99% normal quantile.
const Z_99: f64 = 2.5758293035489004;

/// A constant-composition codebook: `M` words of length `n`, each with the
/// exact composition `n * Q_X`.
#[derive(Clone, Debug)]
pub struct Codebook {
    pub n: usize,
    pub words: Vec<Vec<u8>>,
}

impl Codebook {
    pub fn num_messages(&self) -> usize {
        self.words.len()
    }
}

/// Draws `m` codewords i.i.d. uniform from the type class of `qx` at
/// blocklength `n` by shuffling the composition multiset. Stream `trial`
/// of `seed` is an independent, reproducible RNG.
pub fn sample_codebook(
    n: usize,
    m: usize,
    qx: &ProbVec,
    seed: u64,
    trial: u64,
) -> Result<Codebook, Error> {
    let counts = composition_counts(qx, n)?;
    if m == 0 {
        return Err(Error::InvalidDistribution("codebook needs at least one word".into()));
    }
    let mut base = Vec::with_capacity(n);
    for (sym, &c) in counts.iter().enumerate() {
        base.extend(std::iter::repeat(sym as u8).take(c));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let words = (0..m)
        .map(|_| {
            let mut w = base.clone();
            w.shuffle(&mut rng);
            w
        })
        .collect();
    Ok(Codebook { n, words })
}

fn score_of(word: &[u8], y: &[u8], metric: &GldMetric) -> f64 {
    // n * g(P_hat) computed from raw counts; -inf coefficients poison it
    let mut s = 0.0;
    for (&x, &yy) in word.iter().zip(y.iter()) {
        let c = metric.coeff(x as usize, yy as usize);
        if c.is_neg_inf() {
            return f64::NEG_INFINITY;
        }
        s += c.value();
    }
    s
}

/// Exact error probability of a codebook under the stochastic decoder:
/// the full sum over output sequences of the channel law times the
/// posterior mass of wrong messages. Deterministic; errors out when
/// `|Y|^n * M^2` exceeds `budget`.
pub fn exact_error_prob_with_budget(
    cb: &Codebook,
    w: &ChannelMatrix,
    metric: &GldMetric,
    budget: u128,
) -> Result<f64, Error> {
    let ny = w.num_outputs();
    let m = cb.num_messages();
    let terms = (ny as u128)
        .checked_pow(cb.n as u32)
        .and_then(|t| t.checked_mul((m * m) as u128))
        .ok_or(Error::Overflow("term count exceeds u128"))?;
    if terms > budget {
        return Err(Error::BudgetExceeded { terms, budget });
    }
    if m == 1 {
        return Ok(0.0);
    }

    let minv = 1.0 / m as f64;
    let mut y = vec![0u8; cb.n];
    let mut pe = 0.0;
    let mut wy = vec![0.0f64; m];
    let mut scores = vec![0.0f64; m];
    loop {
        // channel likelihood of y under each message
        let mut any_positive = false;
        for (mm, word) in cb.words.iter().enumerate() {
            let mut p = 1.0;
            for (&x, &yy) in word.iter().zip(y.iter()) {
                p *= w.prob(x as usize, yy as usize);
                if p == 0.0 {
                    break;
                }
            }
            wy[mm] = p;
            any_positive |= p > 0.0;
        }
        if any_positive {
            let mut smax = f64::NEG_INFINITY;
            for (mm, word) in cb.words.iter().enumerate() {
                scores[mm] = score_of(word, &y, metric);
                smax = smax.max(scores[mm]);
            }
            if smax == f64::NEG_INFINITY {
                return Err(Error::AllScoresNegInf);
            }
            let mut denom = 0.0;
            for s in scores.iter_mut() {
                *s = (*s - smax).exp();
                denom += *s;
            }
            for mm in 0..m {
                if wy[mm] > 0.0 {
                    // posterior mass of all wrong messages
                    pe += minv * wy[mm] * (1.0 - scores[mm] / denom);
                }
            }
        }
        // next output sequence, lexicographic
        let mut pos = cb.n;
        loop {
            if pos == 0 {
                return Ok(pe.clamp(0.0, 1.0));
            }
            pos -= 1;
            y[pos] += 1;
            if (y[pos] as usize) < ny {
                break;
            }
            y[pos] = 0;
        }
    }
}

/// [`exact_error_prob_with_budget`] at the default budget.
pub fn exact_error_prob(cb: &Codebook, w: &ChannelMatrix, metric: &GldMetric) -> Result<f64, Error> {
    exact_error_prob_with_budget(cb, w, metric, DEFAULT_TERM_BUDGET)
}

fn pair_counts(a: &[u8], b: &[u8], k: usize) -> Vec<usize> {
    let mut counts = vec![0usize; k * k];
    for (&x, &xp) in a.iter().zip(b.iter()) {
        counts[x as usize * k + xp as usize] += 1;
    }
    counts
}

/// `N(Q_XX')`: the number of ordered codeword pairs whose joint empirical
/// type equals `ty` exactly (integer comparison).
pub fn pair_enumerator(cb: &Codebook, ty: &TypeMatrix) -> u64 {
    let k = ty.nrows();
    debug_assert_eq!(ty.blocklength(), cb.n);
    let mut count = 0;
    for (i, a) in cb.words.iter().enumerate() {
        for (j, b) in cb.words.iter().enumerate() {
            if i != j && pair_counts(a, b, k) == ty.counts() {
                count += 1;
            }
        }
    }
    count
}

/// Pair-enumerator counts of one codebook across every joint type at its
/// blocklength, aligned with [`enumerate_rational_joint_types`].
#[derive(Clone, Debug)]
pub struct EnumeratorReport {
    pub types: Vec<TypeMatrix>,
    pub counts: Vec<u64>,
}

impl EnumeratorReport {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Counts all ordered codeword pairs per joint type: the totals conserve
/// `sum_Q N(Q) = M(M-1)`.
pub fn enumerator_report(cb: &Codebook, k: usize) -> EnumeratorReport {
    let types = enumerate_rational_joint_types(cb.n, k, k);
    let mut index = std::collections::HashMap::new();
    for (i, t) in types.iter().enumerate() {
        index.insert(t.counts().to_vec(), i);
    }
    let mut counts = vec![0u64; types.len()];
    for (i, a) in cb.words.iter().enumerate() {
        for (j, b) in cb.words.iter().enumerate() {
            if i != j {
                counts[index[&pair_counts(a, b, k)]] += 1;
            }
        }
    }
    EnumeratorReport { types, counts }
}

/// `N_y(Q_XY)` for one output sequence: how many codewords have joint
/// empirical type `Q_XY` with `y`. Aligned with
/// [`enumerate_rational_joint_types`] over `|X| x |Y|`; conserves
/// `sum N_y = M`.
pub fn y_enumerator(cb: &Codebook, y: &[u8], k: usize, ny: usize) -> Vec<u64> {
    let types = enumerate_rational_joint_types(cb.n, k, ny);
    let mut index = std::collections::HashMap::new();
    for (i, t) in types.iter().enumerate() {
        index.insert(t.counts().to_vec(), i);
    }
    let mut counts = vec![0u64; types.len()];
    for word in &cb.words {
        let mut c = vec![0usize; k * ny];
        for (&x, &yy) in word.iter().zip(y.iter()) {
            c[x as usize * ny + yy as usize] += 1;
        }
        counts[index[&c]] += 1;
    }
    counts
}

/// Competitor score sums `Z_m(y) = sum_{m' != m} exp{n g(P_hat_{x_m' y})}`
/// for one output sequence, one entry per message.
pub fn z_score_sums(cb: &Codebook, y: &[u8], metric: &GldMetric) -> Vec<f64> {
    let weights: Vec<f64> = cb
        .words
        .iter()
        .map(|w| {
            let s = score_of(w, y, metric);
            if s == f64::NEG_INFINITY {
                0.0
            } else {
                s.exp()
            }
        })
        .collect();
    let total: f64 = weights.iter().sum();
    weights.iter().map(|w| total - w).collect()
}

/// All sequences of the type class with the given per-symbol counts, in
/// lexicographic order.
pub fn enumerate_type_class(n: usize, counts: &[usize]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    let mut remaining = counts.to_vec();
    fn rec(prefix: &mut Vec<u8>, remaining: &mut [usize], n: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for sym in 0..remaining.len() {
            if remaining[sym] > 0 {
                remaining[sym] -= 1;
                prefix.push(sym as u8);
                rec(prefix, remaining, n, out);
                prefix.pop();
                remaining[sym] += 1;
            }
        }
    }
    rec(&mut prefix, &mut remaining, n, &mut out);
    out
}

/// An exact probability as a reduced fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactProb {
    pub num: u128,
    pub den: u128,
}

impl ExactProb {
    pub fn new(num: u128, den: u128) -> Self {
        let g = gcd(num.max(1), den);
        ExactProb { num: num / g, den: den / g }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact `P{N(Q_XX') >= 1}` over the whole codebook ensemble, by
/// enumerating all `|T(Q_X)|^M` codeword tuples. Errors out when the
/// enumeration exceeds `DEFAULT_ENUM_BUDGET`.
pub fn exact_enumerator_hit_prob(
    n: usize,
    m: usize,
    qx: &ProbVec,
    ty: &TypeMatrix,
) -> Result<ExactProb, Error> {
    let counts = composition_counts(qx, n)?;
    let t_size = type_class_size(qx, n)?;
    let total = t_size
        .checked_pow(m as u32)
        .ok_or(Error::Overflow("ensemble size exceeds u128"))?;
    if total > DEFAULT_ENUM_BUDGET {
        return Err(Error::BudgetExceeded { terms: total, budget: DEFAULT_ENUM_BUDGET });
    }
    let class = enumerate_type_class(n, &counts);
    let k = qx.len();
    let size = class.len();
    let mut idx = vec![0usize; m];
    let mut hits: u128 = 0;
    loop {
        'tuple: for i in 0..m {
            for j in 0..m {
                if i != j && pair_counts(&class[idx[i]], &class[idx[j]], k) == ty.counts() {
                    hits += 1;
                    break 'tuple;
                }
            }
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                return Ok(ExactProb::new(hits, total));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < size {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Monte Carlo estimate of `E[N(Q_XX')^k]` with a 99% normal-approximation
/// half-width.
#[derive(Clone, Copy, Debug)]
pub struct MomentEstimate {
    pub mean: f64,
    pub half_width_99: f64,
    pub trials: usize,
}

pub fn moment_estimate(
    n: usize,
    m: usize,
    qx: &ProbVec,
    ty: &TypeMatrix,
    k: u32,
    trials: usize,
    seed: u64,
) -> Result<MomentEstimate, Error> {
    if trials < 100 {
        return Err(Error::InvalidDistribution("moment estimation needs at least 100 trials".into()));
    }
    composition_counts(qx, n)?;
    let samples: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let cb = sample_codebook(n, m, qx, seed, trial).expect("validated composition");
            (pair_enumerator(&cb, ty) as f64).powi(k as i32)
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / trials as f64;
    let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>()
        / (trials as f64 - 1.0);
    let half_width_99 = Z_99 * (var / trials as f64).sqrt();
    Ok(MomentEstimate { mean, half_width_99, trials })
}

/// One sampled codebook's exact error statistics.
#[derive(Clone, Copy, Debug)]
pub struct TrialResult {
    pub trial: u64,
    pub seed: u64,
    pub pe: f64,
    /// `-(1/n) ln P_e`; `+inf` when `P_e = 0`.
    pub exponent: ExtReal,
}

/// Empirical tail masses of the per-codebook exponent at one threshold.
#[derive(Clone, Copy, Debug)]
pub struct ThresholdMass {
    pub e0: f64,
    /// Fraction of finite-exponent trials with exponent <= e0.
    pub p_le: f64,
    /// Fraction of finite-exponent trials with exponent >= e0.
    pub p_ge: f64,
}

/// Empirical distribution of the per-codebook exponent over independent
/// trials.
#[derive(Clone, Debug)]
pub struct TailReport {
    pub trials: Vec<TrialResult>,
    /// Finite exponents, ascending.
    pub sorted_exponents: Vec<f64>,
    /// Trials with `P_e = 0`, excluded from the statistics below.
    pub infinite_count: usize,
    pub median: f64,
    pub thresholds: Vec<ThresholdMass>,
}

impl TailReport {
    /// Interquartile range of the finite exponents.
    pub fn iqr(&self) -> f64 {
        quantile(&self.sorted_exponents, 0.75) - quantile(&self.sorted_exponents, 0.25)
    }

    /// Empirical `P{exponent <= x}` over finite-exponent trials.
    pub fn p_le(&self, x: f64) -> f64 {
        if self.sorted_exponents.is_empty() {
            return 0.0;
        }
        let count = self.sorted_exponents.partition_point(|&e| e <= x);
        count as f64 / self.sorted_exponents.len() as f64
    }
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] * (1.0 - frac) + sorted[hi] * frac
}

/// Samples `trials` codebooks, computes each exact error probability, and
/// reports the empirical distribution of `-(1/n) ln P_e`.
pub fn tail_experiment(
    w: &ChannelMatrix,
    qx: &ProbVec,
    metric: &GldMetric,
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
    thresholds: &[f64],
) -> Result<TailReport, Error> {
    composition_counts(qx, n)?;
    // fail fast on budget before spawning trials
    let probe = sample_codebook(n, m, qx, seed, 0)?;
    exact_error_prob(&probe, w, metric)?;

    let results: Result<Vec<TrialResult>, Error> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let cb = sample_codebook(n, m, qx, seed, trial)?;
            let pe = exact_error_prob(&cb, w, metric)?;
            let exponent = if pe > 0.0 {
                ExtReal::finite(-pe.ln() / n as f64)
            } else {
                crate::ext::POS_INF
            };
            Ok(TrialResult { trial, seed, pe, exponent })
        })
        .collect();
    let trials_out = results?;

    let mut finite: Vec<f64> = trials_out
        .iter()
        .filter(|t| t.exponent.is_finite())
        .map(|t| t.exponent.value())
        .collect();
    finite.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let infinite_count = trials_out.len() - finite.len();
    let median = quantile(&finite, 0.5);
    let total = finite.len().max(1) as f64;
    let masses = thresholds
        .iter()
        .map(|&e0| {
            let le = finite.partition_point(|&e| e <= e0) as f64 / total;
            let ge = (finite.len() - finite.partition_point(|&e| e < e0)) as f64 / total;
            ThresholdMass { e0, p_le: le, p_ge: ge }
        })
        .collect();
    Ok(TailReport {
        trials: trials_out,
        sorted_exponents: finite,
        infinite_count,
        median,
        thresholds: masses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::TypeMatrix;

    fn half() -> ProbVec {
        ProbVec::new(vec![0.5, 0.5]).unwrap()
    }

    fn z_channel() -> ChannelMatrix {
        ChannelMatrix::new(vec![vec![1.0, 0.0], vec![0.001, 0.999]]).unwrap()
    }

    #[test]
    fn codewords_have_exact_composition() {
        let cb = sample_codebook(4, 8, &half(), 7, 0).unwrap();
        for w in &cb.words {
            assert_eq!(w.iter().filter(|&&s| s == 1).count(), 2);
        }
    }

    #[test]
    fn singleton_codebook() {
        let cb = sample_codebook(6, 1, &half(), 1, 0).unwrap();
        assert_eq!(cb.num_messages(), 1);
        assert_eq!(exact_error_prob(&cb, &z_channel(), &GldMetric::log_likelihood(&z_channel())).unwrap(), 0.0);
    }

    #[test]
    fn sampling_is_reproducible_per_stream() {
        let a = sample_codebook(8, 4, &half(), 42, 3).unwrap();
        let b = sample_codebook(8, 4, &half(), 42, 3).unwrap();
        assert_eq!(a.words, b.words);
        let c = sample_codebook(8, 4, &half(), 42, 4).unwrap();
        assert_ne!(a.words, c.words);
    }

    #[test]
    fn sampling_is_uniform_over_the_type_class() {
        // 60000 draws at n=4: each of the 6 members lands 10000 +/- 400 (4 sigma)
        let mut counts = std::collections::HashMap::new();
        for trial in 0..15000u64 {
            let cb = sample_codebook(4, 4, &half(), 99, trial).unwrap();
            for w in &cb.words {
                *counts.entry(w.clone()).or_insert(0u32) += 1;
            }
        }
        assert_eq!(counts.len(), 6);
        for (_, c) in counts {
            assert!((c as f64 - 10000.0).abs() < 400.0, "count {c}");
        }
    }

    #[test]
    fn identical_codewords_give_half_error() {
        let words = vec![vec![0u8, 1, 0, 1], vec![0u8, 1, 0, 1]];
        let cb = Codebook { n: 4, words };
        let w = z_channel();
        let pe = exact_error_prob(&cb, &w, &GldMetric::log_likelihood(&w)).unwrap();
        assert!((pe - 0.5).abs() < 1e-12);
    }

    #[test]
    fn identity_channel_distinct_codewords_never_err() {
        let ident = ChannelMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let words = vec![vec![0u8, 0, 1, 1], vec![1u8, 1, 0, 0]];
        let cb = Codebook { n: 4, words };
        let pe = exact_error_prob(&cb, &ident, &GldMetric::log_likelihood(&ident)).unwrap();
        assert_eq!(pe, 0.0);
    }

    #[test]
    fn budget_is_enforced() {
        let cb = sample_codebook(4, 2, &half(), 5, 0).unwrap();
        let w = z_channel();
        let res = exact_error_prob_with_budget(&cb, &w, &GldMetric::log_likelihood(&w), 10);
        assert!(matches!(res, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn error_prob_invariant_to_relabeling() {
        let w = z_channel();
        let g = GldMetric::log_likelihood(&w);
        let cb = sample_codebook(6, 3, &half(), 11, 2).unwrap();
        let pe = exact_error_prob(&cb, &w, &g).unwrap();
        let mut words = cb.words.clone();
        words.rotate_left(1);
        let cb2 = Codebook { n: 6, words };
        let pe2 = exact_error_prob(&cb2, &w, &g).unwrap();
        assert!((pe - pe2).abs() < 1e-12);
    }

    #[test]
    fn pair_enumerator_identical_words() {
        let words = vec![vec![0u8, 1], vec![0u8, 1]];
        let cb = Codebook { n: 2, words };
        // diagonal type: both ordered pairs match
        let diag = TypeMatrix::new(2, 2, 2, vec![1, 0, 0, 1]).unwrap();
        assert_eq!(pair_enumerator(&cb, &diag), 2);
    }

    #[test]
    fn pair_enumerator_transpose_split() {
        let words = vec![vec![0u8, 0, 1, 1], vec![0u8, 1, 0, 1]];
        let cb = Codebook { n: 4, words };
        let ty = TypeMatrix::new(2, 2, 4, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(pair_enumerator(&cb, &ty), 2); // symmetric type: both orders
        let ty2 = TypeMatrix::new(2, 2, 4, vec![2, 0, 0, 2]).unwrap();
        assert_eq!(pair_enumerator(&cb, &ty2), 0);
    }

    #[test]
    fn enumerator_conservation() {
        for trial in 0..20 {
            let cb = sample_codebook(6, 5, &half(), 17, trial).unwrap();
            let report = enumerator_report(&cb, 2);
            assert_eq!(report.total(), 5 * 4);
        }
    }

    #[test]
    fn z_scores_exclude_own_weight() {
        let w = z_channel();
        let g = GldMetric::log_likelihood(&w);
        let cb = sample_codebook(4, 3, &half(), 5, 0).unwrap();
        let y = vec![0u8, 0, 1, 1];
        let z = z_score_sums(&cb, &y, &g);
        assert_eq!(z.len(), 3);
        let own: Vec<f64> = cb
            .words
            .iter()
            .map(|wd| {
                let s = score_of(wd, &y, &g);
                if s == f64::NEG_INFINITY { 0.0 } else { s.exp() }
            })
            .collect();
        let total: f64 = own.iter().sum();
        for (zi, oi) in z.iter().zip(own.iter()) {
            assert!((zi + oi - total).abs() < 1e-12);
            assert!(*zi >= 0.0);
        }
    }

    #[test]
    fn y_enumerator_conservation() {
        let cb = sample_codebook(6, 5, &half(), 23, 0).unwrap();
        let y = vec![0u8, 1, 0, 1, 1, 0];
        let counts = y_enumerator(&cb, &y, 2, 2);
        assert_eq!(counts.iter().sum::<u64>(), 5);
    }

    #[test]
    fn exact_hit_prob_diagonal_n4() {
        // 6 matching ordered pairs out of 36
        let diag = TypeMatrix::new(2, 2, 4, vec![2, 0, 0, 2]).unwrap();
        let p = exact_enumerator_hit_prob(4, 2, &half(), &diag).unwrap();
        assert_eq!(p, ExactProb::new(1, 6));
    }

    #[test]
    fn exact_hit_prob_pigeonhole() {
        // |T| = 2 at n = 2, three draws must collide
        let diag = TypeMatrix::new(2, 2, 2, vec![1, 0, 0, 1]).unwrap();
        let p = exact_enumerator_hit_prob(2, 3, &half(), &diag).unwrap();
        assert_eq!(p, ExactProb::new(1, 1));
    }

    #[test]
    fn hit_prob_matches_pair_fraction_for_two_words() {
        // for M = 2, P{N >= 1} = pairs(Q) / |T|^2 exactly
        let n = 4;
        let comp = vec![2usize, 2];
        for ty in enumerate_rational_joint_types(n, 2, 2) {
            let pairs = ty.pair_count(&comp).unwrap();
            let p = exact_enumerator_hit_prob(n, 2, &half(), &ty).unwrap();
            assert_eq!(p, ExactProb::new(pairs, 36));
        }
    }

    #[test]
    fn first_moment_matches_exact_value() {
        let n = 4;
        let ty = TypeMatrix::new(2, 2, n, vec![1, 1, 1, 1]).unwrap();
        let comp = vec![2usize, 2];
        let m = 3usize;
        let t = type_class_size(&half(), n).unwrap() as f64;
        let exact = (m * (m - 1)) as f64 * ty.pair_count(&comp).unwrap() as f64 / (t * t);
        let est = moment_estimate(n, m, &half(), &ty, 1, 4000, 31).unwrap();
        assert!(
            (est.mean - exact).abs() <= est.half_width_99,
            "mean {} vs exact {exact} (hw {})",
            est.mean,
            est.half_width_99
        );
    }

    #[test]
    fn tail_experiment_reports() {
        let w = z_channel();
        let g = GldMetric::log_likelihood(&w);
        let rep = tail_experiment(&w, &half(), &g, 4, 2, 200, 13, &[0.2]).unwrap();
        assert_eq!(rep.trials.len(), 200);
        assert_eq!(rep.sorted_exponents.len() + rep.infinite_count, 200);
        for t in &rep.trials {
            assert!(t.pe >= 0.0 && t.pe <= 1.0);
        }
        // reproducible under the same seed
        let rep2 = tail_experiment(&w, &half(), &g, 4, 2, 200, 13, &[0.2]).unwrap();
        assert_eq!(rep.median, rep2.median);
        for (a, b) in rep.trials.iter().zip(rep2.trials.iter()) {
            assert_eq!(a.pe, b.pe);
        }
    }

    #[test]
    fn degenerate_ensemble_single_member_class() {
        // |T| = 1 at composition (1, 0): both words equal, P_e = 1/2
        let point = ProbVec::new(vec![1.0, 0.0]).unwrap();
        let w = z_channel();
        let g = GldMetric::log_likelihood(&w);
        let rep = tail_experiment(&w, &point, &g, 3, 2, 50, 3, &[]).unwrap();
        let expect = -(0.5f64.ln()) / 3.0;
        for t in &rep.trials {
            assert!((t.pe - 0.5).abs() < 1e-12);
            assert!((t.exponent.value() - expect).abs() < 1e-12);
        }
    }
}
