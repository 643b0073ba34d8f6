//! C ABI over the exponent engine: opaque model handles, integer error
//! codes, plain scalars across the boundary.
//!
//! The generated header lives at `include/trc.h`. Usage mirrors the Rust
//! API: build a model from a row-stochastic channel matrix and a
//! composition, then query exponent curves, tail rate functions, or run a
//! seeded ensemble simulation. `+inf` exponents arrive as IEEE infinity
//! (`HUGE_VAL`).

use std::ffi::{c_char, c_double, c_int, c_uint};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use trc_core::exponents::Engine;
use trc_core::ext::ExtReal;
use trc_core::gld::GldMetric;
use trc_core::opt::GridSpec;
use trc_core::prob::{ChannelMatrix, ProbVec};
use trc_core::{sim, Error, ModelConfig};

/// Success.
pub const TRC_OK: c_int = 0;
/// Invalid argument (bad dimensions, non-stochastic input, null pointer).
pub const TRC_ERR_INVALID: c_int = 2;
/// Work budget exceeded.
pub const TRC_ERR_BUDGET: c_int = 3;
/// Internal failure.
pub const TRC_ERR_INTERNAL: c_int = 4;

/// Exponent curves selectable through [`trc_exponent`].
#[repr(C)]
#[derive(Clone, Copy)]
pub enum TrcExponentKind {
    /// Classical random-coding exponent.
    TrcExponentRandomCoding = 0,
    /// Exponent of the typical random code.
    TrcExponentTypical = 1,
    /// Likelihood-decoding particularization of the typical-code exponent.
    TrcExponentTypicalMl = 2,
    /// Expurgated exponent.
    TrcExponentExpurgated = 3,
    /// Companion curve with the unclipped score gap.
    TrcExponentTilde = 4,
    /// Phase-transition threshold of the lower tail.
    TrcExponentE0Min = 5,
}

/// Tail rate functions selectable through [`trc_tail`].
#[repr(C)]
#[derive(Clone, Copy)]
pub enum TrcTailKind {
    /// Lower tail, upper bound.
    TrcTailLowerUb = 0,
    /// Lower tail, lower bound.
    TrcTailLowerLb = 1,
    /// Upper tail, upper bound (double-exponential rate).
    TrcTailUpperUb = 2,
    /// Upper tail, lower bound (double-exponential rate).
    TrcTailUpperLb = 3,
}

/// Summary statistics of a seeded ensemble simulation.
#[repr(C)]
pub struct TrcSimSummary {
    /// Median of the per-codebook error exponents (finite trials).
    pub median_exponent: c_double,
    /// Interquartile range of the finite exponents.
    pub iqr: c_double,
    /// Smallest and largest finite exponents.
    pub min_exponent: c_double,
    pub max_exponent: c_double,
    /// Trials with zero error probability (exponent +inf), excluded above.
    pub infinite_count: c_uint,
}

/// Opaque model handle.
pub struct TrcModel {
    engine: Engine,
}

fn build_model(
    channel: *const c_double,
    num_inputs: c_uint,
    num_outputs: c_uint,
    qx: *const c_double,
    metric: Option<GldMetric>,
    resolution: c_uint,
    depth: c_uint,
    shrink: c_double,
) -> Result<TrcModel, Error> {
    if channel.is_null() || qx.is_null() {
        return Err(Error::InvalidDistribution("null pointer".into()));
    }
    let (nx, ny) = (num_inputs as usize, num_outputs as usize);
    let flat = unsafe { slice::from_raw_parts(channel, nx * ny) };
    let rows: Vec<Vec<f64>> = flat.chunks(ny).map(<[f64]>::to_vec).collect();
    let w = ChannelMatrix::new(rows)?;
    let comp = ProbVec::new(unsafe { slice::from_raw_parts(qx, nx) }.to_vec())?;
    let metric = metric.unwrap_or_else(|| GldMetric::log_likelihood(&w));
    let grid = GridSpec {
        resolution: resolution as usize,
        depth: depth as usize,
        shrink,
        tol_feas: 1e-9,
    };
    let cfg = ModelConfig::new(w, comp, metric, grid)?;
    Ok(TrcModel { engine: Engine::new(&cfg) })
}

/// Creates a model with likelihood decoding and default grid parameters
/// when `resolution` is 0. `channel` is row-major `num_inputs x
/// num_outputs`. Returns null on invalid input.
///
/// # Safety
/// `channel` must point to `num_inputs * num_outputs` doubles and `qx` to
/// `num_inputs` doubles.
#[no_mangle]
pub unsafe extern "C" fn trc_model_new(
    channel: *const c_double,
    num_inputs: c_uint,
    num_outputs: c_uint,
    qx: *const c_double,
    resolution: c_uint,
    depth: c_uint,
    shrink: c_double,
) -> *mut TrcModel {
    let (resolution, depth, shrink) = if resolution == 0 {
        (33, 4, 0.2)
    } else {
        (resolution, depth, shrink)
    };
    match catch_unwind(|| {
        build_model(channel, num_inputs, num_outputs, qx, None, resolution, depth, shrink)
    }) {
        Ok(Ok(model)) => Box::into_raw(Box::new(model)),
        _ => std::ptr::null_mut(),
    }
}

/// Creates a model with an explicit metric coefficient matrix (row-major,
/// same shape as the channel; `-INFINITY` entries mark forbidden cells).
///
/// # Safety
/// Pointer contracts as in [`trc_model_new`], plus `metric` must point to
/// `num_inputs * num_outputs` doubles.
#[no_mangle]
pub unsafe extern "C" fn trc_model_new_with_metric(
    channel: *const c_double,
    num_inputs: c_uint,
    num_outputs: c_uint,
    qx: *const c_double,
    metric: *const c_double,
    resolution: c_uint,
    depth: c_uint,
    shrink: c_double,
) -> *mut TrcModel {
    if metric.is_null() {
        return std::ptr::null_mut();
    }
    let (nx, ny) = (num_inputs as usize, num_outputs as usize);
    let coeffs = slice::from_raw_parts(metric, nx * ny);
    let ext: Vec<ExtReal> = coeffs
        .iter()
        .map(|&c| if c == f64::NEG_INFINITY { trc_core::ext::NEG_INF } else { ExtReal::new(c) })
        .collect();
    let metric = match GldMetric::custom(nx, ny, ext) {
        Ok(m) => m,
        Err(_) => return std::ptr::null_mut(),
    };
    let (resolution, depth, shrink) = if resolution == 0 {
        (33, 4, 0.2)
    } else {
        (resolution, depth, shrink)
    };
    match catch_unwind(|| {
        build_model(channel, num_inputs, num_outputs, qx, Some(metric), resolution, depth, shrink)
    }) {
        Ok(Ok(model)) => Box::into_raw(Box::new(model)),
        _ => std::ptr::null_mut(),
    }
}

/// Frees a model handle. Null is a no-op.
///
/// # Safety
/// `model` must have come from a `trc_model_new*` call and not been freed.
#[no_mangle]
pub unsafe extern "C" fn trc_model_free(model: *mut TrcModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Evaluates one exponent curve at `rate` (nats). Writes the value (IEEE
/// infinity for super-exponential) to `out`.
///
/// # Safety
/// `model` must be a live handle; `out` must point to a double.
#[no_mangle]
pub unsafe extern "C" fn trc_exponent(
    model: *const TrcModel,
    kind: TrcExponentKind,
    rate: c_double,
    out: *mut c_double,
) -> c_int {
    if model.is_null() || out.is_null() || !(rate >= 0.0) {
        return TRC_ERR_INVALID;
    }
    let engine = &(*model).engine;
    let result = catch_unwind(AssertUnwindSafe(|| match kind {
        TrcExponentKind::TrcExponentRandomCoding => engine.random_coding_exponent(rate),
        TrcExponentKind::TrcExponentTypical => engine.trc_exponent(rate),
        TrcExponentKind::TrcExponentTypicalMl => engine.trc_exponent_ml(rate),
        TrcExponentKind::TrcExponentExpurgated => engine.expurgated_exponent(rate),
        TrcExponentKind::TrcExponentTilde => engine.e_tilde(rate),
        TrcExponentKind::TrcExponentE0Min => engine.e0_min(rate),
    }));
    match result {
        Ok(r) => {
            *out = r.value.value();
            TRC_OK
        }
        Err(_) => TRC_ERR_INTERNAL,
    }
}

/// Evaluates one tail rate function at `(rate, e0)`.
///
/// # Safety
/// `model` must be a live handle; `out` must point to a double.
#[no_mangle]
pub unsafe extern "C" fn trc_tail(
    model: *const TrcModel,
    kind: TrcTailKind,
    rate: c_double,
    e0: c_double,
    out: *mut c_double,
) -> c_int {
    if model.is_null() || out.is_null() || !(rate >= 0.0) || !e0.is_finite() {
        return TRC_ERR_INVALID;
    }
    let engine = &(*model).engine;
    let result = catch_unwind(AssertUnwindSafe(|| match kind {
        TrcTailKind::TrcTailLowerUb => engine.lt_upper(rate, e0),
        TrcTailKind::TrcTailLowerLb => engine.lt_lower(rate, e0),
        TrcTailKind::TrcTailUpperUb => engine.ut_upper(rate, e0),
        TrcTailKind::TrcTailUpperLb => engine.ut_lower(rate, e0),
    }));
    match result {
        Ok(r) => {
            *out = r.value.value();
            TRC_OK
        }
        Err(_) => TRC_ERR_INTERNAL,
    }
}

/// Runs `trials` seeded codebook draws at blocklength `n` with `codewords`
/// messages, computing each exact error probability, and fills `out` with
/// summary statistics of the per-codebook exponent.
///
/// # Safety
/// `model` must be a live handle; `out` must point to a `TrcSimSummary`.
#[no_mangle]
pub unsafe extern "C" fn trc_simulate_summary(
    model: *const TrcModel,
    n: c_uint,
    codewords: c_uint,
    trials: c_uint,
    seed: u64,
    out: *mut TrcSimSummary,
) -> c_int {
    if model.is_null() || out.is_null() || n == 0 || codewords == 0 || trials == 0 {
        return TRC_ERR_INVALID;
    }
    let cfg = (*model).engine.config().clone();
    let result = catch_unwind(AssertUnwindSafe(|| {
        sim::tail_experiment(
            &cfg.channel,
            &cfg.qx,
            &cfg.metric,
            n as usize,
            codewords as usize,
            trials as usize,
            seed,
            &[],
        )
    }));
    match result {
        Ok(Ok(report)) => {
            let e = &report.sorted_exponents;
            *out = TrcSimSummary {
                median_exponent: report.median,
                iqr: report.iqr(),
                min_exponent: e.first().copied().unwrap_or(f64::NAN),
                max_exponent: e.last().copied().unwrap_or(f64::NAN),
                infinite_count: report.infinite_count as c_uint,
            };
            TRC_OK
        }
        Ok(Err(Error::BudgetExceeded { .. })) => TRC_ERR_BUDGET,
        Ok(Err(_)) => TRC_ERR_INVALID,
        Err(_) => TRC_ERR_INTERNAL,
    }
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn trc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
