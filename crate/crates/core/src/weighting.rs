//! Objective attribute weights from the entropy of distances to the
//! per-attribute negative ideal.
//!
//! More dispersed columns carry more information and earn more weight.
//! Stages: negative ideal -> distance matrix -> column-stochastic
//! normalization -> Shannon entropy -> weight share `(1 - E) / sum(1 - E)`.

use crate::aggregation::{GroupMatrix, WeightVector};
use crate::error::{Error, Result};
use crate::ivif::Ivifn;

/// Which distance feeds the entropy pipeline.
///
/// `Hybrid` (quarter-sum plus half-max over all four bounds) is the
/// default and the form the golden tables validate. `SplitMax` keeps the
/// membership and non-membership pairs separate, taking a half-max of
/// each pair; it is exposed for completeness but reproduces the reference
/// tables less faithfully.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceForm {
    #[default]
    Hybrid,
    SplitMax,
}

impl DistanceForm {
    fn eval(self, a: Ivifn, b: Ivifn) -> f64 {
        match self {
            DistanceForm::Hybrid => a.dist_hybrid(b),
            DistanceForm::SplitMax => {
                let dm = [(a.lm() - b.lm()).abs(), (a.rm() - b.rm()).abs()];
                let dn = [(a.ln() - b.ln()).abs(), (a.rn() - b.rn()).abs()];
                0.25 * (dm[0] + dm[1])
                    + 0.25 * (dn[0] + dn[1])
                    + 0.5 * dm[0].max(dm[1])
                    + 0.5 * dn[0].max(dn[1])
            }
        }
    }
}

/// Every intermediate of the entropy-weight derivation.
#[derive(Debug, Clone)]
pub struct EntropyBreakdown {
    /// Per-attribute negative ideal point.
    pub nip: Vec<Ivifn>,
    /// Raw distances to the negative ideal, alternatives x attributes.
    pub dist: Vec<Vec<f64>>,
    /// Column-stochastic distances (degenerate columns all zero).
    pub norm_dist: Vec<Vec<f64>>,
    /// Per-attribute entropy degree in `[0, 1]`.
    pub entropy: Vec<f64>,
    /// Final attribute weights.
    pub weights: WeightVector,
    /// Columns whose distances were all zero (no information).
    pub degenerate: Vec<bool>,
}

/// Componentwise worst value per column: min memberships, max
/// non-memberships.
pub fn negative_ideal(m: &GroupMatrix) -> Result<Vec<Ivifn>> {
    require_normalized(m)?;
    let (rows, cols) = (m.cells.rows(), m.cells.cols());
    if rows == 0 {
        return Err(Error::EmptyMatrix);
    }
    Ok((0..cols)
        .map(|c| {
            let mut lm = f64::INFINITY;
            let mut rm = f64::INFINITY;
            let mut ln = f64::NEG_INFINITY;
            let mut rn = f64::NEG_INFINITY;
            for r in 0..rows {
                let x = m.cells.get(r, c);
                lm = lm.min(x.lm());
                rm = rm.min(x.rm());
                ln = ln.max(x.ln());
                rn = rn.max(x.rn());
            }
            // mins of memberships and maxes of non-memberships taken from
            // valid cells stay valid
            Ivifn::from_ops(lm, rm, ln, rn)
        })
        .collect())
}

/// Distance of every cell to its column's negative ideal.
pub fn entropy_distance_matrix(
    m: &GroupMatrix,
    nip: &[Ivifn],
    form: DistanceForm,
) -> Result<Vec<Vec<f64>>> {
    require_normalized(m)?;
    if nip.len() != m.cells.cols() {
        return Err(Error::AttributeCountMismatch {
            attrs: nip.len(),
            cols: m.cells.cols(),
        });
    }
    Ok((0..m.cells.rows())
        .map(|r| {
            (0..m.cells.cols())
                .map(|c| form.eval(m.cells.get(r, c), nip[c]))
                .collect()
        })
        .collect())
}

/// Divide each entry by its column sum. Degenerate columns (sum 0) are
/// flagged, not rejected; their entries stay 0 and the entropy stage
/// treats them as information-free.
pub fn normalize_distances(dist: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<bool>) {
    let rows = dist.len();
    let cols = if rows > 0 { dist[0].len() } else { 0 };
    let mut sums = vec![0.0; cols];
    for row in dist {
        for (c, &v) in row.iter().enumerate() {
            sums[c] += v;
        }
    }
    let degenerate: Vec<bool> = sums.iter().map(|&s| s == 0.0).collect();
    let normalized = dist
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(c, &v)| if degenerate[c] { 0.0 } else { v / sums[c] })
                .collect()
        })
        .collect();
    (normalized, degenerate)
}

/// Shannon entropy per column scaled by `1 / ln(n)`, with `0 ln 0 = 0`.
/// Degenerate columns get entropy 1 (zero information).
pub fn entropy(norm_dist: &[Vec<f64>], degenerate: &[bool]) -> Result<Vec<f64>> {
    let n = norm_dist.len();
    if n < 2 {
        return Err(Error::TooFewAlternatives { need: 2, got: n });
    }
    let cols = norm_dist[0].len();
    let scale = 1.0 / (n as f64).ln();
    Ok((0..cols)
        .map(|c| {
            if degenerate[c] {
                return 1.0;
            }
            let mut h = 0.0;
            for row in norm_dist {
                let p = row[c];
                if p > 0.0 {
                    h -= p * p.ln();
                }
            }
            (h * scale).min(1.0)
        })
        .collect())
}

/// Full pipeline with the default hybrid distance.
pub fn entropy_weights(m: &GroupMatrix) -> Result<EntropyBreakdown> {
    entropy_weights_with(m, DistanceForm::Hybrid)
}

/// Full pipeline with an explicit distance form.
pub fn entropy_weights_with(m: &GroupMatrix, form: DistanceForm) -> Result<EntropyBreakdown> {
    let n = m.cells.rows();
    if n < 2 {
        return Err(Error::TooFewAlternatives { need: 2, got: n });
    }
    let nip = negative_ideal(m)?;
    let dist = entropy_distance_matrix(m, &nip, form)?;
    let (norm_dist, degenerate) = normalize_distances(&dist);
    if degenerate.iter().all(|&d| d) {
        return Err(Error::AllColumnsDegenerate);
    }
    let ent = entropy(&norm_dist, &degenerate)?;
    let total: f64 = ent.iter().map(|e| 1.0 - e).sum();
    let raw: Vec<f64> = ent.iter().map(|e| (1.0 - e) / total).collect();
    let weights = WeightVector::new(raw)?;
    Ok(EntropyBreakdown {
        nip,
        dist,
        norm_dist,
        entropy: ent,
        weights,
        degenerate,
    })
}

fn require_normalized(m: &GroupMatrix) -> Result<()> {
    if !m.normalized {
        return Err(Error::NotNormalized);
    }
    Ok(())
}
