//! The decoding metric and the stochastic decoder it induces.
//!
//! The decoder picks message `m` with probability proportional to
//! `exp{n g(P_hat_{x_m y})}`, where `g` is a linear functional
//! `g(Q) = sum Q(x,y) c(x,y)` of the joint empirical distribution of the
//! candidate codeword and the channel output. Coefficients may be `-inf`
//! (forbidden cells, e.g. `ln W` on zero-probability transitions) but never
//! `+inf`.

use crate::ext::{ExtReal, NEG_INF};
use crate::prob::{ChannelMatrix, Joint2, JointXY};
use crate::Error;

/// Linear decoding metric with extended-real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GldMetric {
    c: Vec<ExtReal>,
    nx: usize,
    ny: usize,
}

impl GldMetric {
    /// Log-likelihood metric `c(x,y) = ln W(y|x)`; zero-probability
    /// transitions get `-inf`.
    pub fn log_likelihood(w: &ChannelMatrix) -> Self {
        Self::scaled_likelihood(w, 1.0)
    }

    /// Scaled likelihood `c(x,y) = beta ln W(y|x)` for `beta > 0`; the
    /// decoder approaches maximum-likelihood as `beta` grows.
    pub fn scaled_likelihood(w: &ChannelMatrix, beta: f64) -> Self {
        assert!(beta > 0.0, "scaled_likelihood requires beta > 0");
        let (nx, ny) = (w.num_inputs(), w.num_outputs());
        let mut c = Vec::with_capacity(nx * ny);
        for x in 0..nx {
            for y in 0..ny {
                let p = w.prob(x, y);
                c.push(if p > 0.0 { ExtReal::finite(beta * p.ln()) } else { NEG_INF });
            }
        }
        GldMetric { c, nx, ny }
    }

    /// The all-zero metric; the decoder becomes uniform over messages.
    pub fn zero(nx: usize, ny: usize) -> Self {
        GldMetric { c: vec![ExtReal::ZERO; nx * ny], nx, ny }
    }

    /// Arbitrary coefficient matrix. Rejects `+inf` entries.
    pub fn custom(nx: usize, ny: usize, c: Vec<ExtReal>) -> Result<Self, Error> {
        if c.len() != nx * ny {
            return Err(Error::InvalidDistribution(format!(
                "metric: {} coefficients for a {nx}x{ny} alphabet",
                c.len()
            )));
        }
        if c.iter().any(|v| v.is_pos_inf()) {
            return Err(Error::InvalidDistribution(
                "metric coefficients must not be +inf".into(),
            ));
        }
        Ok(GldMetric { c, nx, ny })
    }

    /// Parses the same text layout as a channel file; entries may be `-inf`.
    pub fn from_text(text: &str) -> Result<Self, Error> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty metric file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension `{t}`"))))
            .collect::<Result<_, _>>()?;
        if dims.len() != 2 {
            return Err(Error::Parse(format!("expected `<|X|> <|Y|>` header, got `{header}`")));
        }
        let (nx, ny) = (dims[0], dims[1]);
        let mut c = Vec::with_capacity(nx * ny);
        for x in 0..nx {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing metric row {x}")))?;
            for tok in line.split_whitespace() {
                let v = if tok == "-inf" {
                    NEG_INF
                } else {
                    ExtReal::finite(
                        tok.parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad coefficient `{tok}`")))?,
                    )
                };
                c.push(v);
            }
            if c.len() != (x + 1) * ny {
                return Err(Error::Parse(format!("metric row {x} has the wrong width")));
            }
        }
        GldMetric::custom(nx, ny, c)
    }

    pub fn num_inputs(&self) -> usize {
        self.nx
    }

    pub fn num_outputs(&self) -> usize {
        self.ny
    }

    pub fn coeff(&self, x: usize, y: usize) -> ExtReal {
        self.c[x * self.ny + y]
    }
}

/// Evaluates `g(q) = sum q(x,y) c(x,y)` under the `0 * (-inf) = 0` convention.
///
/// `-inf` exactly when `q` puts positive mass on a `-inf` coefficient.
pub fn eval_metric(g: &GldMetric, q: &JointXY) -> ExtReal {
    debug_assert_eq!((q.rows(), q.cols()), (g.nx, g.ny));
    let mut acc = 0.0;
    for x in 0..g.nx {
        for y in 0..g.ny {
            let mass = q.cell(x, y);
            if mass > 0.0 {
                let c = g.coeff(x, y);
                if c.is_neg_inf() {
                    return NEG_INF;
                }
                acc += mass * c.value();
            }
        }
    }
    ExtReal::finite(acc)
}

/// The decoder's posterior over messages from per-message scores
/// `g(P_hat_{x_m y})`: entry `m` proportional to `exp{n g_m}`, computed with
/// a max shift. Messages with score `-inf` get exactly zero.
pub fn gld_posterior(scores: &[ExtReal], n: usize) -> Result<Vec<f64>, Error> {
    let max = scores.iter().copied().max().ok_or(Error::AllScoresNegInf)?;
    if max.is_neg_inf() {
        return Err(Error::AllScoresNegInf);
    }
    let shift = max.value();
    let weights: Vec<f64> = scores
        .iter()
        .map(|s| {
            if s.is_neg_inf() {
                0.0
            } else {
                ((s.value() - shift) * n as f64).exp()
            }
        })
        .collect();
    let total: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / total).collect())
}
