//! Flat-grid brute-force evaluation of the exponent curves on the
//! z-channel, independent of the production optimizer: no nested box
//! refinement, no interpolation tables, no shared caches. Used as the
//! regression oracle for the optimizer.
#![allow(dead_code)]

use std::collections::HashMap;

use trc_core::prob::ChannelMatrix;

pub fn z_channel() -> ChannelMatrix {
    ChannelMatrix::new(vec![vec![1.0, 0.0], vec![0.001, 0.999]]).unwrap()
}

/// Flat-grid evaluation of the score maximizations on the z-channel
/// coupling family, memoized per 1e-5 bucket of the output composition.
pub struct BruteForce {
    w: ChannelMatrix,
    alpha_memo: std::cell::RefCell<HashMap<(u64, i64), f64>>,
    beta_memo: std::cell::RefCell<HashMap<(u64, i64), f64>>,
}

pub const BF_NEG_INF: f64 = f64::NEG_INFINITY;

impl BruteForce {
    pub fn new() -> Self {
        BruteForce {
            w: z_channel(),
            alpha_memo: std::cell::RefCell::new(HashMap::new()),
            beta_memo: std::cell::RefCell::new(HashMap::new()),
        }
    }

    /// Metric score and mutual information of the coupling of uniform Q_X
    /// with (qy0, 1-qy0) at parameter t = Q(0,0).
    pub fn coupling_score(&self, t: f64, qy0: f64) -> (f64, f64) {
        let cells = [t, 0.5 - t, qy0 - t, 0.5 - qy0 + t];
        let mut g = 0.0;
        let mut i = 0.0;
        let marg = [0.5, 0.5, qy0, 1.0 - qy0];
        for (idx, &q) in cells.iter().enumerate() {
            if q <= 0.0 {
                continue;
            }
            let (x, y) = (idx / 2, idx % 2);
            let wv = self.w.prob(x, y);
            if wv == 0.0 {
                g = BF_NEG_INF;
            } else if g > BF_NEG_INF {
                g += q * wv.ln();
            }
            i += q * (q / (marg[x] * marg[2 + y])).ln();
        }
        (g, i.max(0.0))
    }

    pub fn alpha(&self, r: f64, qy0: f64) -> f64 {
        let key = (r.to_bits(), (qy0 * 1e5).round() as i64);
        if let Some(&v) = self.alpha_memo.borrow().get(&key) {
            return v;
        }
        let qy0 = key.1 as f64 / 1e5;
        let lo = (qy0 - 0.5).max(0.0);
        let hi = 0.5f64.min(qy0);
        let mut best = BF_NEG_INF;
        let mut best_t = None;
        let mut improver: Option<(f64, f64)> = None;
        for i in 0..=600 {
            let t = lo + (hi - lo) * i as f64 / 600.0;
            let (g, mi) = self.coupling_score(t, qy0);
            if g == BF_NEG_INF {
                continue;
            }
            let v = g - mi;
            if mi <= r + 1e-9 {
                if v > best {
                    best = v;
                    best_t = Some(t);
                }
            } else if improver.map_or(true, |(_, iv)| v > iv) {
                improver = Some((t, v));
            }
        }
        // the constrained maximum often sits on the I = r boundary; walk
        // there from the best feasible grid point
        if let (Some(mut a), Some((mut b, iv))) = (best_t, improver) {
            if iv > best {
                for _ in 0..50 {
                    let mid = 0.5 * (a + b);
                    let (_, mi) = self.coupling_score(mid, qy0);
                    if mi <= r + 1e-9 {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                let (g, mi) = self.coupling_score(a, qy0);
                if g > BF_NEG_INF && mi <= r + 1e-9 {
                    best = best.max(g - mi);
                }
            }
        }
        let v = if best == BF_NEG_INF { BF_NEG_INF } else { best + r };
        self.alpha_memo.borrow_mut().insert(key, v);
        v
    }

    pub fn beta(&self, r: f64, qy0: f64) -> f64 {
        let key = (r.to_bits(), (qy0 * 1e5).round() as i64);
        if let Some(&v) = self.beta_memo.borrow().get(&key) {
            return v;
        }
        let qy0 = key.1 as f64 / 1e5;
        let lo = (qy0 - 0.5).max(0.0);
        let hi = 0.5f64.min(qy0);
        let mut best = BF_NEG_INF;
        for i in 0..=600 {
            let t = lo + (hi - lo) * i as f64 / 600.0;
            let (g, mi) = self.coupling_score(t, qy0);
            if g > BF_NEG_INF {
                best = best.max(g + (r - mi).max(0.0));
            }
        }
        self.beta_memo.borrow_mut().insert(key, best);
        best
    }

    /// Inner cost at pair joint (q00 symmetric family) and conditional
    /// parameter p = Q(y=0 | x=1, x'=1); the three other cells are pinned
    /// to y=0 by the channel zeros and the -inf metric column.
    pub fn inner_objective(&self, q00: f64, r: f64, p: f64, lambda: bool) -> f64 {
        let q01 = 0.5 - q00;
        let w10 = self.w.prob(1, 0);
        let w11 = self.w.prob(1, 1);
        // divergence-plus-leakage of the pinned cells and the free cell
        let mut d = q01 * (1.0 / w10).ln();
        if p > 0.0 {
            d += q00 * p * (p / w10).ln();
        }
        if p < 1.0 {
            d += q00 * (1.0 - p) * ((1.0 - p) / w11).ln();
        }
        let qxy10 = q01 + q00 * p;
        let qxy11 = q00 * (1.0 - p);
        let g_xy = qxy10 * w10.ln() + qxy11 * w11.ln();
        let g_xpy = g_xy; // symmetric family, symmetric pinning
        let qy0 = 0.5 + qxy10;
        if lambda {
            let b = self.beta(r, qy0);
            if b == BF_NEG_INF {
                return f64::INFINITY;
            }
            d + b - g_xpy
        } else {
            let a = self.alpha(r, qy0);
            let reference = g_xy.max(a);
            d + (reference - g_xpy).max(0.0)
        }
    }

    pub fn gamma(&self, q00: f64, r: f64, lambda: bool) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..=1000 {
            let p = i as f64 / 1000.0;
            best = best.min(self.inner_objective(q00, r, p, lambda));
        }
        best
    }

    /// min over the 1e-3-step family of `gamma + I - r` under `I <= cap`,
    /// with the two `I = cap` boundary couplings evaluated explicitly
    /// (the mutual information is convex along the family, zero at the
    /// product point, so each side has one root).
    pub fn curve_min(&self, r: f64, cap: f64, lambda: bool) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..=500 {
            let q00 = 0.5 * i as f64 / 500.0;
            let mi = family_mi(q00);
            if mi > cap + 1e-9 {
                continue;
            }
            best = best.min(self.gamma(q00, r, lambda) + mi - r);
        }
        for (mut out, mut inn) in [(0.0f64, 0.25f64), (0.5, 0.25)] {
            if family_mi(out) <= cap {
                continue;
            }
            for _ in 0..80 {
                let mid = 0.5 * (out + inn);
                if family_mi(mid) <= cap {
                    inn = mid;
                } else {
                    out = mid;
                }
            }
            best = best.min(self.gamma(inn, r, lambda) + family_mi(inn) - r);
        }
        best
    }

    pub fn e0_min(&self, r: f64) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..=500 {
            let q00 = 0.5 * i as f64 / 500.0;
            let mi = family_mi(q00);
            best = best.min(self.gamma(q00, r, false) - (2.0 * r - mi).max(0.0) + r);
        }
        best
    }

    pub fn random_coding(&self, r: f64) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..=100_000 {
            let p = i as f64 / 100_000.0;
            let w10 = self.w.prob(1, 0);
            let w11 = self.w.prob(1, 1);
            let mut d = 0.0;
            if p > 0.0 {
                d += 0.5 * p * (p / w10).ln();
            }
            if p < 1.0 {
                d += 0.5 * (1.0 - p) * ((1.0 - p) / w11).ln();
            }
            // joint (X, Y) with x=0 pinned to y=0
            let qy0 = 0.5 + 0.5 * p;
            let mut mi = 0.5 * (1.0 / qy0).ln();
            if p > 0.0 {
                mi += 0.5 * p * (p / qy0).ln();
            }
            if p < 1.0 {
                mi += 0.5 * (1.0 - p) * ((1.0 - p) / (1.0 - qy0)).ln();
            }
            best = best.min(d + (mi.max(0.0) - r).max(0.0));
        }
        best
    }
}

pub fn family_mi(q00: f64) -> f64 {
    let mut i = 0.0;
    for &(q, m) in &[(q00, 0.25), (0.5 - q00, 0.25), (0.5 - q00, 0.25), (q00, 0.25)] {
        if q > 0.0 {
            i += q * (q / m).ln();
        }
    }
    i.max(0.0)
}

