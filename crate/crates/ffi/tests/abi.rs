//! Exercises the C entry points exactly as a foreign caller would.

use trc_ffi::*;

const Z_CHANNEL: [f64; 4] = [1.0, 0.0, 0.001, 0.999];
const UNIFORM: [f64; 2] = [0.5, 0.5];

fn new_model() -> *mut TrcModel {
    unsafe { trc_model_new(Z_CHANNEL.as_ptr(), 2, 2, UNIFORM.as_ptr(), 0, 0, 0.0) }
}

#[test]
fn model_lifecycle_and_golden_exponents() {
    let model = new_model();
    assert!(!model.is_null());
    let mut out = 0.0f64;
    unsafe {
        assert_eq!(
            trc_exponent(model, TrcExponentKind::TrcExponentTypical, 0.0, &mut out),
            TRC_OK
        );
        assert!((out - 1.726944).abs() < 5e-3, "trc(0) = {out}");
        assert_eq!(
            trc_exponent(model, TrcExponentKind::TrcExponentExpurgated, 0.1, &mut out),
            TRC_OK
        );
        assert!((out - 0.967795).abs() < 5e-3, "ex(0.1) = {out}");
        assert_eq!(
            trc_exponent(model, TrcExponentKind::TrcExponentRandomCoding, 0.3, &mut out),
            TRC_OK
        );
        assert!((out - 0.362014).abs() < 1e-3, "e_r(0.3) = {out}");
        trc_model_free(model);
    }
}

#[test]
fn tails_cross_their_thresholds() {
    let model = new_model();
    let mut trc = 0.0f64;
    let mut v = 0.0f64;
    unsafe {
        assert_eq!(trc_exponent(model, TrcExponentKind::TrcExponentTypical, 0.2, &mut trc), TRC_OK);
        // lower tail vanishes above the typical-code exponent
        assert_eq!(trc_tail(model, TrcTailKind::TrcTailLowerUb, 0.2, trc + 0.01, &mut v), TRC_OK);
        assert!(v.abs() < 1e-9);
        // and is infinite below the phase transition
        assert_eq!(trc_tail(model, TrcTailKind::TrcTailLowerUb, 0.2, 0.1, &mut v), TRC_OK);
        assert!(v.is_infinite() && v > 0.0);
        // upper tail turns positive above it
        assert_eq!(trc_tail(model, TrcTailKind::TrcTailUpperLb, 0.2, trc + 0.05, &mut v), TRC_OK);
        assert!(v > 0.0);
        trc_model_free(model);
    }
}

#[test]
fn simulation_summary_is_reproducible() {
    let model = new_model();
    let mut a = TrcSimSummary {
        median_exponent: 0.0,
        iqr: 0.0,
        min_exponent: 0.0,
        max_exponent: 0.0,
        infinite_count: 0,
    };
    let mut b = TrcSimSummary {
        median_exponent: 0.0,
        iqr: 0.0,
        min_exponent: 0.0,
        max_exponent: 0.0,
        infinite_count: 0,
    };
    unsafe {
        assert_eq!(trc_simulate_summary(model, 4, 2, 200, 9, &mut a), TRC_OK);
        assert_eq!(trc_simulate_summary(model, 4, 2, 200, 9, &mut b), TRC_OK);
        assert_eq!(a.median_exponent, b.median_exponent);
        assert_eq!(a.iqr, b.iqr);
        assert_eq!(a.infinite_count, b.infinite_count);
        assert!(a.min_exponent > 0.0);
        assert!(a.max_exponent >= a.median_exponent);
        // the budget guard answers instead of hanging
        assert_eq!(trc_simulate_summary(model, 40, 16, 1, 9, &mut a), TRC_ERR_BUDGET);
        trc_model_free(model);
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    unsafe {
        // non-stochastic channel
        let bad = [0.5f64, 0.4, 0.2, 0.8];
        assert!(trc_model_new(bad.as_ptr(), 2, 2, UNIFORM.as_ptr(), 0, 0, 0.0).is_null());
        // null pointers
        assert!(trc_model_new(std::ptr::null(), 2, 2, UNIFORM.as_ptr(), 0, 0, 0.0).is_null());
        let model = new_model();
        let mut out = 0.0f64;
        assert_eq!(
            trc_exponent(model, TrcExponentKind::TrcExponentTypical, -0.5, &mut out),
            TRC_ERR_INVALID
        );
        assert_eq!(
            trc_exponent(
                std::ptr::null(),
                TrcExponentKind::TrcExponentTypical,
                0.1,
                &mut out
            ),
            TRC_ERR_INVALID
        );
        trc_model_free(model);
        trc_model_free(std::ptr::null_mut());
    }
}

#[test]
fn custom_metric_constructor() {
    // the all-zero metric makes the decoder uniform; its companion curve
    // at the product coupling is flat zero
    let metric = [0.0f64; 4];
    let model = unsafe {
        trc_model_new_with_metric(
            Z_CHANNEL.as_ptr(),
            2,
            2,
            UNIFORM.as_ptr(),
            metric.as_ptr(),
            17,
            3,
            0.2,
        )
    };
    assert!(!model.is_null());
    let mut out = 0.0f64;
    unsafe {
        assert_eq!(trc_exponent(model, TrcExponentKind::TrcExponentTilde, 0.2, &mut out), TRC_OK);
        assert!(out.abs() < 1e-6, "zero-metric tilde = {out}");
        trc_model_free(model);
    }
    // +inf coefficients are rejected
    let bad_metric = [0.0f64, f64::INFINITY, 0.0, 0.0];
    let model = unsafe {
        trc_model_new_with_metric(
            Z_CHANNEL.as_ptr(),
            2,
            2,
            UNIFORM.as_ptr(),
            bad_metric.as_ptr(),
            0,
            0,
            0.0,
        )
    };
    assert!(model.is_null());
}

#[test]
fn version_string_is_terminated() {
    let p = trc_version();
    assert!(!p.is_null());
    let s = unsafe { std::ffi::CStr::from_ptr(p) };
    assert!(!s.to_str().unwrap().is_empty());
}
