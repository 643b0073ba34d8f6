//! Information measures over the core probability types.
//!
//! Everything is in nats. Zero-mass cells contribute zero (`0 ln 0 = 0`);
//! divergences of a distribution against a channel with a smaller support
//! are `+inf`.

use crate::ext::{ExtReal, POS_INF};
use crate::prob::{ChannelMatrix, CondYgivenX, Joint2, JointXXY, ProbVec};

/// Shannon entropy `-sum p ln p`, in `[0, ln k]`.
pub fn entropy(p: &ProbVec) -> f64 {
    let mut h = 0.0;
    for q in p.iter() {
        if q > 0.0 {
            h -= q * q.ln();
        }
    }
    h.max(0.0)
}

/// Mutual information of a two-axis joint, `sum Q(a,b) ln [Q(a,b) / (Q_A(a) Q_B(b))]`.
pub fn mutual_info<J: Joint2>(joint: &J) -> f64 {
    let qa = joint.row_marginal();
    let qb = joint.col_marginal();
    let mut i = 0.0;
    for a in 0..joint.rows() {
        for b in 0..joint.cols() {
            let q = joint.cell(a, b);
            if q > 0.0 {
                i += q * (q / (qa[a] * qb[b])).ln();
            }
        }
    }
    i.max(0.0)
}

/// Conditional mutual information `I(X'; Y | X)` of a triple joint:
/// the `Q_X`-average of the mutual information of `(X', Y)` given `X = x`.
pub fn cond_mutual_info(joint: &JointXXY) -> f64 {
    let k = joint.alphabet();
    let ny = joint.num_outputs();
    let mut total = 0.0;
    for x in 0..k {
        let mut qx = 0.0;
        for xp in 0..k {
            for y in 0..ny {
                qx += joint.get(x, xp, y);
            }
        }
        if qx <= 0.0 {
            continue;
        }
        // marginals of (X', Y) conditioned on X = x
        let mut qxp = vec![0.0; k];
        let mut qy = vec![0.0; ny];
        for xp in 0..k {
            for y in 0..ny {
                let w = joint.get(x, xp, y) / qx;
                qxp[xp] += w;
                qy[y] += w;
            }
        }
        let mut i = 0.0;
        for xp in 0..k {
            for y in 0..ny {
                let w = joint.get(x, xp, y) / qx;
                if w > 0.0 {
                    i += w * (w / (qxp[xp] * qy[y])).ln();
                }
            }
        }
        total += qx * i.max(0.0);
    }
    total.max(0.0)
}

/// Mutual information between the pair `(X, Y)` and `X'`.
///
/// By the chain rule this equals `I(X; X') + I(X'; Y | X)`.
pub fn mi_pair_vs_one(joint: &JointXXY) -> f64 {
    let k = joint.alphabet();
    let ny = joint.num_outputs();
    // treat (x, y) as a single axis
    let mut q_pair = vec![0.0; k * ny];
    let mut q_xp = vec![0.0; k];
    for x in 0..k {
        for xp in 0..k {
            for y in 0..ny {
                let w = joint.get(x, xp, y);
                q_pair[x * ny + y] += w;
                q_xp[xp] += w;
            }
        }
    }
    let mut i = 0.0;
    for x in 0..k {
        for xp in 0..k {
            for y in 0..ny {
                let w = joint.get(x, xp, y);
                if w > 0.0 {
                    i += w * (w / (q_pair[x * ny + y] * q_xp[xp])).ln();
                }
            }
        }
    }
    i.max(0.0)
}

/// Conditional divergence `D(Q_{Y|X} || W | Q_X)`.
///
/// `+inf` exactly when some `x` with `Q_X(x) > 0` places conditional mass on
/// an output with `W(y|x) = 0`.
pub fn cond_divergence(qyx: &CondYgivenX, w: &ChannelMatrix, qx: &ProbVec) -> ExtReal {
    let mut d = 0.0;
    for x in 0..qyx.num_inputs() {
        let px = qx.get(x);
        if px <= 0.0 {
            continue;
        }
        for y in 0..qyx.num_outputs() {
            let q = qyx.prob(x, y);
            if q > 0.0 {
                let wv = w.prob(x, y);
                if wv == 0.0 {
                    return POS_INF;
                }
                d += px * q * (q / wv).ln();
            }
        }
    }
    ExtReal::finite(d.max(0.0))
}
