//! Error exponents and large-deviations tails of random constant-composition
//! code ensembles over discrete memoryless channels.
//!
//! A codebook of `M = e^{nR}` codewords is drawn uniformly from a single
//! type class and decoded with a stochastic likelihood decoder whose metric
//! is a linear functional of joint empirical distributions. This crate
//! evaluates, for such ensembles:
//!
//! * the classical random-coding and expurgated exponents,
//! * the exponent of the typical random code and its companion curves,
//! * the exponential rate of drawing a codebook whose error exponent falls
//!   below a threshold (lower tail), and the double-exponential rate of
//!   exceeding one (upper tail),
//! * exact small-blocklength ensemble statistics (error probabilities,
//!   type-class enumerators, their moments and tails) by enumeration and
//!   seeded Monte Carlo.
//!
//! The variational problems behind the curves are non-convex once the
//! clipped decoding-gain terms enter, so every inner and outer optimization
//! goes through the deterministic nested-grid machinery in [`opt`].
//!
//! All rates and exponents are in nats. `+inf` is a first-class exponent
//! value (super-exponential decay); see [`ext::ExtReal`].

pub mod ext;
pub mod prob;
pub mod info;
pub mod gld;
pub mod opt;
pub mod functionals;
pub mod exponents;
pub mod sim;
pub mod cli;

use thiserror::Error as ThisError;

pub use ext::ExtReal;
pub use gld::GldMetric;
pub use opt::GridSpec;
pub use prob::{ChannelMatrix, ProbVec};

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("symbol {symbol} outside alphabet of size {alphabet}")]
    OutOfAlphabet { symbol: usize, alphabet: usize },
    #[error("composition n*q is not integral at blocklength {n} (got {value})")]
    NonIntegralComposition { n: usize, value: f64 },
    #[error("{0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("decoder posterior undefined: all scores are -inf")]
    AllScoresNegInf,
    #[error("no feasible point found in constrained search")]
    NoFeasiblePoint,
    #[error("work budget exceeded: {terms} terms > {budget}")]
    BudgetExceeded { terms: u128, budget: u128 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Everything an exponent or tail evaluation needs to know about the model:
/// the channel, the codeword composition, the decoding metric, and the grid
/// parameters of the optimizer.
#[derive(Clone, Debug)]
pub struct ModelConfig {
    pub channel: ChannelMatrix,
    pub qx: ProbVec,
    pub metric: GldMetric,
    pub grid: GridSpec,
}

impl ModelConfig {
    pub fn new(
        channel: ChannelMatrix,
        qx: ProbVec,
        metric: GldMetric,
        grid: GridSpec,
    ) -> Result<Self, Error> {
        if qx.len() != channel.num_inputs() {
            return Err(Error::InvalidDistribution(format!(
                "composition has {} symbols, channel has {} inputs",
                qx.len(),
                channel.num_inputs()
            )));
        }
        if metric.num_inputs() != channel.num_inputs()
            || metric.num_outputs() != channel.num_outputs()
        {
            return Err(Error::InvalidDistribution(format!(
                "metric is {}x{}, channel is {}x{}",
                metric.num_inputs(),
                metric.num_outputs(),
                channel.num_inputs(),
                channel.num_outputs()
            )));
        }
        grid.validate()?;
        Ok(ModelConfig { channel, qx, metric, grid })
    }

    /// Log-likelihood decoding over `channel` with composition `qx` and
    /// default grid parameters.
    pub fn ml(channel: ChannelMatrix, qx: ProbVec) -> Result<Self, Error> {
        let metric = GldMetric::log_likelihood(&channel);
        ModelConfig::new(channel, qx, metric, GridSpec::default())
    }
}
