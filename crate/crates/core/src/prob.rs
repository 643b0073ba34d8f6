//! Finite-alphabet probability objects and method-of-types utilities.
//!
//! Alphabets are index sets `0..k`. Joint distributions are stored row-major.
//! All constructors validate nonnegativity and normalization; once built,
//! every value here is immutable.

use crate::Error;

/// Normalization tolerance for constructed distributions.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance for marginal-constraint membership in the coupling polytope.
pub const MARGINAL_TOL: f64 = 1e-9;

fn check_mass(entries: &[f64], tol: f64, what: &str) -> Result<(), Error> {
    for &p in entries {
        if !(p >= 0.0) || !p.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "{what}: entry {p} is not a finite nonnegative probability"
            )));
        }
    }
    let sum: f64 = entries.iter().sum();
    if (sum - 1.0).abs() > tol {
        return Err(Error::InvalidDistribution(format!(
            "{what}: entries sum to {sum}, expected 1 within {tol}"
        )));
    }
    Ok(())
}

/// A probability vector over a finite alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbVec {
    p: Vec<f64>,
}

impl ProbVec {
    pub fn new(entries: Vec<f64>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::InvalidDistribution("empty probability vector".into()));
        }
        check_mass(&entries, NORM_TOL, "ProbVec")?;
        Ok(ProbVec { p: entries })
    }

    pub fn uniform(k: usize) -> Self {
        ProbVec { p: vec![1.0 / k as f64; k] }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.p[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.p.iter().copied()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }
}

/// A discrete memoryless channel: one row distribution over the output
/// alphabet per input symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelMatrix {
    rows: Vec<ProbVec>,
}

impl ChannelMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        if rows.is_empty() {
            return Err(Error::InvalidDistribution("channel has no input symbols".into()));
        }
        let ny = rows[0].len();
        let mut out = Vec::with_capacity(rows.len());
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != ny {
                return Err(Error::InvalidDistribution(format!(
                    "channel row {x} has {} entries, expected {ny}",
                    row.len()
                )));
            }
            check_mass(&row, NORM_TOL, &format!("channel row {x}"))?;
            out.push(ProbVec { p: row });
        }
        Ok(ChannelMatrix { rows: out })
    }

    /// Parses the plain-text channel format: first non-comment line
    /// `<|X|> <|Y|>`, then `|X|` rows of `|Y|` probabilities. Lines starting
    /// with `#` are comments.
    pub fn from_text(text: &str) -> Result<Self, Error> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty channel file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension `{t}`"))))
            .collect::<Result<_, _>>()?;
        if dims.len() != 2 {
            return Err(Error::Parse(format!("expected `<|X|> <|Y|>` header, got `{header}`")));
        }
        let (nx, ny) = (dims[0], dims[1]);
        let mut rows = Vec::with_capacity(nx);
        for x in 0..nx {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing channel row {x}")))?;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad probability `{t}`"))))
                .collect::<Result<_, _>>()?;
            if row.len() != ny {
                return Err(Error::Parse(format!(
                    "channel row {x} has {} entries, expected {ny}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        ChannelMatrix::new(rows)
    }

    pub fn num_inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.rows[x].get(y)
    }

    pub fn row(&self, x: usize) -> &ProbVec {
        &self.rows[x]
    }
}

/// Shared read access to a two-axis joint distribution.
pub trait Joint2 {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn cell(&self, a: usize, b: usize) -> f64;

    fn row_marginal(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.rows()];
        for a in 0..self.rows() {
            for b in 0..self.cols() {
                m[a] += self.cell(a, b);
            }
        }
        m
    }

    fn col_marginal(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.cols()];
        for a in 0..self.rows() {
            for b in 0..self.cols() {
                m[b] += self.cell(a, b);
            }
        }
        m
    }
}

macro_rules! joint2_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name {
            m: Vec<f64>,
            nrows: usize,
            ncols: usize,
        }

        impl $name {
            pub fn new(nrows: usize, ncols: usize, entries: Vec<f64>) -> Result<Self, Error> {
                if entries.len() != nrows * ncols {
                    return Err(Error::InvalidDistribution(format!(
                        "{}: {} entries for a {nrows}x{ncols} joint",
                        stringify!($name),
                        entries.len()
                    )));
                }
                check_mass(&entries, NORM_TOL, stringify!($name))?;
                Ok($name { m: entries, nrows, ncols })
            }

            /// Builds from rows without re-validating layout.
            pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, Error> {
                let nrows = rows.len();
                let ncols = rows.first().map_or(0, Vec::len);
                Self::new(nrows, ncols, rows.concat())
            }

            pub fn get(&self, a: usize, b: usize) -> f64 {
                self.m[a * self.ncols + b]
            }
        }

        impl Joint2 for $name {
            fn rows(&self) -> usize {
                self.nrows
            }
            fn cols(&self) -> usize {
                self.ncols
            }
            fn cell(&self, a: usize, b: usize) -> f64 {
                self.m[a * self.ncols + b]
            }
        }
    };
}

joint2_type!(
    /// Joint distribution of a channel input and output, `Q_{XY}`.
    JointXY
);
joint2_type!(
    /// Joint distribution of two codewords' symbols, `Q_{XX'}`.
    JointXX
);

impl JointXX {
    /// Whether both marginals equal `qx`, i.e. membership in the coupling
    /// polytope of `qx` (both codewords drawn from the same composition).
    pub fn is_coupling_of(&self, qx: &ProbVec, tol: f64) -> bool {
        if self.nrows != qx.len() || self.ncols != qx.len() {
            return false;
        }
        let rm = self.row_marginal();
        let cm = self.col_marginal();
        rm.iter()
            .zip(cm.iter())
            .zip(qx.iter())
            .all(|((&r, &c), q)| (r - q).abs() <= tol && (c - q).abs() <= tol)
    }

    /// The product coupling `qx (x) qx`.
    pub fn product(qx: &ProbVec) -> JointXX {
        let k = qx.len();
        let mut m = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                m.push(qx.get(a) * qx.get(b));
            }
        }
        JointXX { m, nrows: k, ncols: k }
    }
}

/// Joint distribution over `(X, X', Y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointXXY {
    m: Vec<f64>,
    k: usize,
    ny: usize,
}

impl JointXXY {
    pub fn new(k: usize, ny: usize, entries: Vec<f64>) -> Result<Self, Error> {
        if entries.len() != k * k * ny {
            return Err(Error::InvalidDistribution(format!(
                "JointXXY: {} entries for a {k}x{k}x{ny} joint",
                entries.len()
            )));
        }
        check_mass(&entries, NORM_TOL, "JointXXY")?;
        Ok(JointXXY { m: entries, k, ny })
    }

    /// Composes a codeword-pair joint with a conditional output law.
    pub fn compose(qxx: &JointXX, cond: &CondYgivenXX) -> JointXXY {
        let k = qxx.rows();
        let ny = cond.num_outputs();
        let mut m = vec![0.0; k * k * ny];
        for x in 0..k {
            for xp in 0..k {
                let w = qxx.get(x, xp);
                for y in 0..ny {
                    m[(x * k + xp) * ny + y] = w * cond.prob(x, xp, y);
                }
            }
        }
        JointXXY { m, k, ny }
    }

    pub fn alphabet(&self) -> usize {
        self.k
    }

    pub fn num_outputs(&self) -> usize {
        self.ny
    }

    pub fn get(&self, x: usize, xp: usize, y: usize) -> f64 {
        self.m[(x * self.k + xp) * self.ny + y]
    }

    /// Marginal over `(X, Y)`, summing out `X'`.
    pub fn marginal_xy(&self) -> JointXY {
        let mut m = vec![0.0; self.k * self.ny];
        for x in 0..self.k {
            for xp in 0..self.k {
                for y in 0..self.ny {
                    m[x * self.ny + y] += self.get(x, xp, y);
                }
            }
        }
        JointXY { m, nrows: self.k, ncols: self.ny }
    }

    /// Marginal over `(X', Y)`, summing out `X`.
    pub fn marginal_xpy(&self) -> JointXY {
        let mut m = vec![0.0; self.k * self.ny];
        for x in 0..self.k {
            for xp in 0..self.k {
                for y in 0..self.ny {
                    m[xp * self.ny + y] += self.get(x, xp, y);
                }
            }
        }
        JointXY { m, nrows: self.k, ncols: self.ny }
    }

    /// Marginal over `(X, X')`, summing out `Y`.
    pub fn marginal_xx(&self) -> JointXX {
        let mut m = vec![0.0; self.k * self.k];
        for x in 0..self.k {
            for xp in 0..self.k {
                for y in 0..self.ny {
                    m[x * self.k + xp] += self.get(x, xp, y);
                }
            }
        }
        JointXX { m, nrows: self.k, ncols: self.k }
    }

    /// Marginal over `Y`.
    pub fn marginal_y(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.ny];
        for x in 0..self.k {
            for xp in 0..self.k {
                for y in 0..self.ny {
                    m[y] += self.get(x, xp, y);
                }
            }
        }
        m
    }
}

/// Conditional law of the channel output given one input symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct CondYgivenX {
    rows: Vec<Vec<f64>>,
}

impl CondYgivenX {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        for (x, row) in rows.iter().enumerate() {
            check_mass(row, NORM_TOL, &format!("CondYgivenX row {x}"))?;
        }
        Ok(CondYgivenX { rows })
    }

    pub fn from_channel(w: &ChannelMatrix) -> Self {
        CondYgivenX {
            rows: (0..w.num_inputs()).map(|x| w.row(x).as_slice().to_vec()).collect(),
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.rows[x][y]
    }

    /// The joint `qx (x) Q_{Y|X}`.
    pub fn joint_with(&self, qx: &ProbVec) -> JointXY {
        let (nx, ny) = (self.num_inputs(), self.num_outputs());
        let mut m = vec![0.0; nx * ny];
        for x in 0..nx {
            for y in 0..ny {
                m[x * ny + y] = qx.get(x) * self.rows[x][y];
            }
        }
        JointXY { m, nrows: nx, ncols: ny }
    }
}

/// Conditional law of the output given a pair of input symbols, one
/// distribution over `Y` per cell `(x, x')`.
#[derive(Clone, Debug, PartialEq)]
pub struct CondYgivenXX {
    cells: Vec<Vec<f64>>,
    k: usize,
    ny: usize,
}

impl CondYgivenXX {
    pub fn new(k: usize, ny: usize, cells: Vec<Vec<f64>>) -> Result<Self, Error> {
        if cells.len() != k * k {
            return Err(Error::InvalidDistribution(format!(
                "CondYgivenXX: {} cells for a {k}x{k} pair alphabet",
                cells.len()
            )));
        }
        for (i, c) in cells.iter().enumerate() {
            if c.len() != ny {
                return Err(Error::InvalidDistribution(format!(
                    "CondYgivenXX cell {i} has {} entries, expected {ny}",
                    c.len()
                )));
            }
            check_mass(c, NORM_TOL, &format!("CondYgivenXX cell {i}"))?;
        }
        Ok(CondYgivenXX { cells, k, ny })
    }

    /// The channel itself, ignoring the second input: `Q(y|x,x') = W(y|x)`.
    pub fn from_channel(w: &ChannelMatrix) -> Self {
        let k = w.num_inputs();
        let ny = w.num_outputs();
        let mut cells = Vec::with_capacity(k * k);
        for x in 0..k {
            for _xp in 0..k {
                cells.push(w.row(x).as_slice().to_vec());
            }
        }
        CondYgivenXX { cells, k, ny }
    }

    pub fn alphabet(&self) -> usize {
        self.k
    }

    pub fn num_outputs(&self) -> usize {
        self.ny
    }

    pub fn prob(&self, x: usize, xp: usize, y: usize) -> f64 {
        self.cells[x * self.k + xp][y]
    }

    pub fn cell(&self, x: usize, xp: usize) -> &[f64] {
        &self.cells[x * self.k + xp]
    }
}

/// Conditional law of an input symbol given the output, one distribution
/// over `X` per output symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct CondXgivenY {
    rows: Vec<Vec<f64>>,
}

impl CondXgivenY {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        for (y, row) in rows.iter().enumerate() {
            check_mass(row, NORM_TOL, &format!("CondXgivenY row {y}"))?;
        }
        Ok(CondXgivenY { rows })
    }

    pub fn num_outputs(&self) -> usize {
        self.rows.len()
    }

    pub fn num_inputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn prob(&self, y: usize, x: usize) -> f64 {
        self.rows[y][x]
    }

    /// The joint `Q_{XY}(x, y) = qy(y) * Q(x|y)`, laid out with `X` first.
    pub fn joint_with(&self, qy: &ProbVec) -> JointXY {
        let ny = self.num_outputs();
        let nx = self.num_inputs();
        let mut m = vec![0.0; nx * ny];
        for y in 0..ny {
            for x in 0..nx {
                m[x * ny + y] = qy.get(y) * self.rows[y][x];
            }
        }
        JointXY { m, nrows: nx, ncols: ny }
    }
}

/// Joint empirical distribution of a pair of equal-length sequences.
///
/// Entry `(x, y)` is the fraction of positions `t` with
/// `(seq_x[t], seq_y[t]) = (x, y)`; every entry is a multiple of `1/n`.
pub fn empirical_joint(
    seq_x: &[usize],
    seq_y: &[usize],
    nx: usize,
    ny: usize,
) -> Result<JointXY, Error> {
    if seq_x.len() != seq_y.len() {
        return Err(Error::LengthMismatch { left: seq_x.len(), right: seq_y.len() });
    }
    if seq_x.is_empty() {
        return Err(Error::LengthMismatch { left: 0, right: 0 });
    }
    let n = seq_x.len() as f64;
    let mut m = vec![0.0; nx * ny];
    for (&x, &y) in seq_x.iter().zip(seq_y.iter()) {
        if x >= nx {
            return Err(Error::OutOfAlphabet { symbol: x, alphabet: nx });
        }
        if y >= ny {
            return Err(Error::OutOfAlphabet { symbol: y, alphabet: ny });
        }
        m[x * ny + y] += 1.0;
    }
    for v in &mut m {
        *v /= n;
    }
    Ok(JointXY { m, nrows: nx, ncols: ny })
}

/// Converts `n * qx` to integral per-symbol counts, rejecting compositions
/// that are not exactly representable at blocklength `n`.
pub fn composition_counts(qx: &ProbVec, n: usize) -> Result<Vec<usize>, Error> {
    let mut counts = Vec::with_capacity(qx.len());
    let mut total = 0usize;
    for q in qx.iter() {
        let c = q * n as f64;
        let r = c.round();
        if (c - r).abs() > 1e-9 * n as f64 {
            return Err(Error::NonIntegralComposition { n, value: c });
        }
        counts.push(r as usize);
        total += r as usize;
    }
    if total != n {
        return Err(Error::NonIntegralComposition { n, value: total as f64 });
    }
    Ok(counts)
}

/// `|T(Q_X)|`: the number of length-`n` sequences with exact composition
/// `n * qx`, i.e. the multinomial coefficient `n! / prod_x (n qx(x))!`.
pub fn type_class_size(qx: &ProbVec, n: usize) -> Result<u128, Error> {
    let counts = composition_counts(qx, n)?;
    multinomial(n, &counts)
}

/// Multinomial coefficient with overflow detection.
pub fn multinomial(n: usize, counts: &[usize]) -> Result<u128, Error> {
    debug_assert_eq!(counts.iter().sum::<usize>(), n);
    let mut result: u128 = 1;
    let mut seen = 0usize;
    for &c in counts {
        for i in 1..=c {
            seen += 1;
            // result * seen / i stays integral: it is a partial binomial.
            result = result
                .checked_mul(seen as u128)
                .ok_or(Error::Overflow("multinomial coefficient exceeds u128"))?
                / i as u128;
        }
    }
    Ok(result)
}

/// An exact rational joint type at blocklength `n`: integer cell counts
/// summing to `n`. The corresponding distribution has entries `count / n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeMatrix {
    counts: Vec<usize>,
    nrows: usize,
    ncols: usize,
    n: usize,
}

impl TypeMatrix {
    pub fn new(nrows: usize, ncols: usize, n: usize, counts: Vec<usize>) -> Result<Self, Error> {
        if counts.len() != nrows * ncols {
            return Err(Error::InvalidDistribution(format!(
                "TypeMatrix: {} counts for a {nrows}x{ncols} type",
                counts.len()
            )));
        }
        if counts.iter().sum::<usize>() != n {
            return Err(Error::InvalidDistribution(format!(
                "TypeMatrix counts do not sum to n={n}"
            )));
        }
        Ok(TypeMatrix { counts, nrows, ncols, n })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn blocklength(&self) -> usize {
        self.n
    }

    pub fn count(&self, a: usize, b: usize) -> usize {
        self.counts[a * self.ncols + b]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn row_counts(&self) -> Vec<usize> {
        let mut m = vec![0; self.nrows];
        for a in 0..self.nrows {
            for b in 0..self.ncols {
                m[a] += self.count(a, b);
            }
        }
        m
    }

    pub fn col_counts(&self) -> Vec<usize> {
        let mut m = vec![0; self.ncols];
        for a in 0..self.nrows {
            for b in 0..self.ncols {
                m[b] += self.count(a, b);
            }
        }
        m
    }

    /// The rational joint distribution `count / n` as a generic joint.
    pub fn to_joint_xy(&self) -> JointXY {
        JointXY {
            m: self.counts.iter().map(|&c| c as f64 / self.n as f64).collect(),
            nrows: self.nrows,
            ncols: self.ncols,
        }
    }

    /// Same entries viewed as a codeword-pair joint (square shapes only).
    pub fn to_joint_xx(&self) -> JointXX {
        assert_eq!(self.nrows, self.ncols, "pair type must be square");
        JointXX {
            m: self.counts.iter().map(|&c| c as f64 / self.n as f64).collect(),
            nrows: self.nrows,
            ncols: self.ncols,
        }
    }

    /// Number of ordered sequence pairs with this exact joint type whose
    /// first and second components both carry composition `comp`:
    /// the multinomial over cells when the margins match, else 0.
    pub fn pair_count(&self, comp: &[usize]) -> Result<u128, Error> {
        if self.row_counts() != comp || self.col_counts() != comp {
            return Ok(0);
        }
        multinomial(self.n, &self.counts)
    }
}

/// All rational joint types with `nrows * ncols` cells at blocklength `n`,
/// exactly once each, in ascending lexicographic order of the flattened
/// count vector.
pub fn enumerate_rational_joint_types(n: usize, nrows: usize, ncols: usize) -> Vec<TypeMatrix> {
    let cells = nrows * ncols;
    let mut out = Vec::new();
    let mut counts = vec![0usize; cells];
    fn rec(
        counts: &mut Vec<usize>,
        cell: usize,
        remaining: usize,
        out: &mut Vec<TypeMatrix>,
        nrows: usize,
        ncols: usize,
        n: usize,
    ) {
        if cell + 1 == counts.len() {
            counts[cell] = remaining;
            out.push(TypeMatrix {
                counts: counts.clone(),
                nrows,
                ncols,
                n,
            });
            return;
        }
        for c in 0..=remaining {
            counts[cell] = c;
            rec(counts, cell + 1, remaining - c, out, nrows, ncols, n);
        }
    }
    rec(&mut counts, 0, n, &mut out, nrows, ncols, n);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empirical_joint_small_cases() {
        let j = empirical_joint(&[0, 1], &[0, 1], 2, 2).unwrap();
        assert_eq!(j.get(0, 0), 0.5);
        assert_eq!(j.get(0, 1), 0.0);
        assert_eq!(j.get(1, 1), 0.5);

        let j = empirical_joint(&[0, 0, 0, 0], &[1, 1, 1, 1], 2, 2).unwrap();
        assert_eq!(j.get(0, 1), 1.0);
        assert_eq!(j.get(0, 0), 0.0);

        let j = empirical_joint(&[0, 1, 0, 1], &[0, 0, 1, 1], 2, 2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(j.get(a, b), 0.25);
            }
        }
    }

    #[test]
    fn empirical_joint_errors() {
        assert!(matches!(
            empirical_joint(&[0, 1], &[0], 2, 2),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            empirical_joint(&[0, 2], &[0, 0], 2, 2),
            Err(Error::OutOfAlphabet { .. })
        ));
    }

    #[test]
    fn empirical_marginals_match_per_sequence_distributions() {
        let xs = [0usize, 1, 1, 0, 1, 1];
        let ys = [1usize, 0, 1, 1, 0, 0];
        let j = empirical_joint(&xs, &ys, 2, 2).unwrap();
        let rm = j.row_marginal();
        let cm = j.col_marginal();
        assert!((rm[0] - 2.0 / 6.0).abs() < 1e-15);
        assert!((rm[1] - 4.0 / 6.0).abs() < 1e-15);
        assert!((cm[0] - 3.0 / 6.0).abs() < 1e-15);
        assert!((cm[1] - 3.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn type_class_sizes() {
        let half = ProbVec::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(type_class_size(&half, 4).unwrap(), 6);
        let point = ProbVec::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(type_class_size(&point, 2).unwrap(), 1);
        let third = ProbVec::new(vec![1.0 / 3.0, 2.0 / 3.0]).unwrap();
        assert_eq!(type_class_size(&third, 6).unwrap(), 15);
    }

    #[test]
    fn type_class_size_rejects_non_integral() {
        let half = ProbVec::new(vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            type_class_size(&half, 5),
            Err(Error::NonIntegralComposition { .. })
        ));
    }

    #[test]
    fn joint_type_enumeration_counts() {
        assert_eq!(enumerate_rational_joint_types(1, 2, 2).len(), 4);
        assert_eq!(enumerate_rational_joint_types(2, 2, 2).len(), 10);
        // stars and bars: C(n+3, 3) matrices with 4 cells
        for n in 1..=8 {
            let expect = (n + 1) * (n + 2) * (n + 3) / 6;
            assert_eq!(enumerate_rational_joint_types(n, 2, 2).len(), expect);
        }
    }

    #[test]
    fn joint_type_enumeration_is_lexicographic_and_unique() {
        let types = enumerate_rational_joint_types(3, 2, 2);
        for w in types.windows(2) {
            assert!(w[0].counts() < w[1].counts());
        }
    }

    #[test]
    fn type_pairs_sum_to_all_pairs() {
        // sum over joint types of pair_count = |T(Q_X)|^2
        let half = ProbVec::new(vec![0.5, 0.5]).unwrap();
        let n = 6;
        let comp = composition_counts(&half, n).unwrap();
        let t = type_class_size(&half, n).unwrap();
        let total: u128 = enumerate_rational_joint_types(n, 2, 2)
            .iter()
            .map(|ty| ty.pair_count(&comp).unwrap())
            .sum();
        assert_eq!(total, t * t);
    }

    #[test]
    fn joint_types_partition_all_sequence_pairs() {
        // sum over joint types of |pairs with that type| = (|X| |Y|)^n
        for n in [2usize, 4, 5] {
            let total: u128 = enumerate_rational_joint_types(n, 2, 2)
                .iter()
                .map(|ty| multinomial(n, ty.counts()).unwrap())
                .sum();
            assert_eq!(total, 4u128.pow(n as u32));
        }
    }

    #[test]
    fn type_class_size_bounds() {
        // |T(Q)| <= |X|^n and |T(Q)| * #types >= |X|^n
        let half = ProbVec::new(vec![0.5, 0.5]).unwrap();
        for n in [2usize, 4, 6, 8] {
            let t = type_class_size(&half, n).unwrap();
            let num_types = (n + 1) as u128; // marginal types over a binary alphabet
            assert!(t <= 2u128.pow(n as u32));
            assert!(t * num_types >= 2u128.pow(n as u32));
        }
    }

    #[test]
    fn marginalize_product_recovers_factors() {
        let qx = ProbVec::new(vec![0.3, 0.7]).unwrap();
        let prod = JointXX::product(&qx);
        let rm = prod.row_marginal();
        let cm = prod.col_marginal();
        for i in 0..2 {
            assert!((rm[i] - qx.get(i)).abs() < 1e-15);
            assert!((cm[i] - qx.get(i)).abs() < 1e-15);
        }
        assert!(prod.is_coupling_of(&qx, MARGINAL_TOL));
    }

    #[test]
    fn marginalize_diagonal() {
        let diag = JointXX::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_eq!(diag.row_marginal(), vec![0.5, 0.5]);
        assert_eq!(diag.col_marginal(), vec![0.5, 0.5]);
    }

    #[test]
    fn triple_marginals_normalize() {
        let w = ChannelMatrix::new(vec![vec![0.9, 0.1], vec![0.2, 0.8]]).unwrap();
        let qx = ProbVec::uniform(2);
        let qxx = JointXX::product(&qx);
        let cond = CondYgivenXX::from_channel(&w);
        let triple = JointXXY::compose(&qxx, &cond);
        let sum_xy: f64 = (0..2).flat_map(|x| (0..2).map(move |y| (x, y)))
            .map(|(x, y)| triple.marginal_xy().get(x, y))
            .sum();
        assert!((sum_xy - 1.0).abs() < 1e-12);
        let sy: f64 = triple.marginal_y().iter().sum();
        assert!((sy - 1.0).abs() < 1e-12);
    }

    #[test]
    fn channel_text_round_trip() {
        let text = "# z-channel, crossover 0.001\n2 2\n1 0\n0.001 0.999\n";
        let w = ChannelMatrix::from_text(text).unwrap();
        assert_eq!(w.num_inputs(), 2);
        assert_eq!(w.prob(0, 0), 1.0);
        assert_eq!(w.prob(1, 0), 0.001);
        assert!(ChannelMatrix::from_text("2 2\n1 0\n").is_err());
        assert!(ChannelMatrix::from_text("2 2\n1 0\n0.5 0.4\n").is_err());
    }
}
