//! Extended-real arithmetic.
//!
//! Exponents and decoding metrics live on the extended real line
//! `[-inf, +inf]`. The conventions implemented here are the ones that make
//! expectations and rate functions well defined:
//!
//! * `0 * (+/-inf) = 0` (measure-theoretic convention),
//! * `[t]_+ = max{0, t}` with `[-inf]_+ = 0` and `[+inf]_+ = +inf`,
//! * the order is total: `-inf < every finite < +inf`.
//!
//! `(+inf) + (-inf)` is a programming error, never a value; it panics
//! instead of silently producing anything.

use std::cmp::Ordering;
use std::fmt;

/// A finite real number or one of the two infinities. Never NaN.
#[derive(Clone, Copy, PartialEq)]
pub struct ExtReal(f64);

/// Positive infinity.
pub const POS_INF: ExtReal = ExtReal(f64::INFINITY);
/// Negative infinity.
pub const NEG_INF: ExtReal = ExtReal(f64::NEG_INFINITY);

impl ExtReal {
    /// Wraps a float. Infinities are allowed, NaN is not.
    pub fn new(v: f64) -> Self {
        assert!(!v.is_nan(), "ExtReal cannot hold NaN");
        ExtReal(v)
    }

    /// Wraps a float that the caller guarantees to be finite.
    pub fn finite(v: f64) -> Self {
        assert!(v.is_finite(), "ExtReal::finite requires a finite value, got {v}");
        ExtReal(v)
    }

    pub const ZERO: ExtReal = ExtReal(0.0);

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_pos_inf(self) -> bool {
        self.0 == f64::INFINITY
    }

    pub fn is_neg_inf(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// Raw value; infinities map to the IEEE infinities.
    pub fn value(self) -> f64 {
        self.0
    }

    /// `[t]_+ = max{0, t}`, so `[-inf]_+ = 0` and `[+inf]_+ = +inf`.
    pub fn plus_part(self) -> ExtReal {
        if self.0 > 0.0 {
            self
        } else {
            ExtReal(0.0)
        }
    }

    /// `weight * self` under the convention `0 * (+/-inf) = 0`.
    ///
    /// `weight` must be a finite nonnegative number (a probability mass).
    pub fn weighted(self, weight: f64) -> ExtReal {
        debug_assert!(weight >= 0.0 && weight.is_finite());
        if weight == 0.0 {
            ExtReal(0.0)
        } else {
            ExtReal(weight * self.0)
        }
    }

    /// Sum that faults on `(+inf) + (-inf)` instead of yielding NaN.
    pub fn add(self, rhs: ExtReal) -> ExtReal {
        if (self.is_pos_inf() && rhs.is_neg_inf()) || (self.is_neg_inf() && rhs.is_pos_inf()) {
            panic!("ExtReal fault: (+inf) + (-inf) is undefined");
        }
        ExtReal(self.0 + rhs.0)
    }

    /// Difference `self - rhs`; faults on `inf - inf` of the same sign.
    pub fn sub(self, rhs: ExtReal) -> ExtReal {
        self.add(ExtReal(-rhs.0))
    }

    pub fn neg(self) -> ExtReal {
        ExtReal(-self.0)
    }

    pub fn max(self, rhs: ExtReal) -> ExtReal {
        if self.0 >= rhs.0 {
            self
        } else {
            rhs
        }
    }

    pub fn min(self, rhs: ExtReal) -> ExtReal {
        if self.0 <= rhs.0 {
            self
        } else {
            rhs
        }
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        ExtReal::new(v)
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        // Total by construction: NaN is excluded at every entry point.
        self.0.partial_cmp(&other.0).expect("ExtReal is never NaN")
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pos_inf() {
            write!(f, "inf")
        } else if self.is_neg_inf() {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtReal({self})")
    }
}
