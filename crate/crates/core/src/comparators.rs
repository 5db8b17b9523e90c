//! Reference ranking methods run against the same normalized group
//! matrix: plain weighted-average scoring, TOPSIS closeness to ideals,
//! taxonomy development values, and TODIM pairwise dominance.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::aggregation::{ivifwa, AttributeKind, AttributeSpec, GroupMatrix, WeightVector};
use crate::edas::rank_descending;
use crate::error::{Error, Result};
use crate::ivif::{cmp_tol, Ivifn};
use crate::par;

/// Per-alternative weighted aggregate with plain score/accuracy ranking.
#[derive(Debug, Clone)]
pub struct IvifwaResult {
    pub aggregate: Vec<Ivifn>,
    pub sf: Vec<f64>,
    pub af: Vec<f64>,
    /// Indices sorted by (score, accuracy) descending.
    pub ranking: Vec<usize>,
}

pub fn ivifwa_rank(m: &GroupMatrix, weights: &WeightVector) -> Result<IvifwaResult> {
    require_normalized(m)?;
    let n = m.cells.rows();
    let aggregate: Vec<Ivifn> = (0..n)
        .map(|r| ivifwa(m.cells.row(r), weights))
        .collect::<Result<_>>()?;
    let sf: Vec<f64> = aggregate.iter().map(|x| x.score_simple()).collect();
    let af: Vec<f64> = aggregate.iter().map(|x| x.accuracy_simple()).collect();
    let mut ranking: Vec<usize> = (0..n).collect();
    ranking.sort_by(|&a, &b| match cmp_tol(sf[b], sf[a]) {
        Ordering::Equal => cmp_tol(af[b], af[a]),
        ord => ord,
    });
    Ok(IvifwaResult {
        aggregate,
        sf,
        af,
        ranking,
    })
}

/// How the TOPSIS weighted matrix and distances are assembled.
///
/// `WeightBeforeNormalization` scales the matrix by the attribute weights
/// *before* cost columns are complemented (equivalently: scale op on
/// benefit columns, power op on cost columns of the normalized matrix),
/// with benefit/cost-aware ideals and no weight inside the distance sum.
/// It is the form the golden tables validate and the default.
///
/// `Printed` double-weights (scaled matrix plus a weight factor inside the
/// distance sum); `DroppedInnerWeight` keeps the scaled normalized matrix
/// but removes the inner factor. Both are kept selectable so the
/// deviation stays observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopsisForm {
    #[default]
    WeightBeforeNormalization,
    Printed,
    DroppedInnerWeight,
}

impl TopsisForm {
    pub fn as_str(self) -> &'static str {
        match self {
            TopsisForm::WeightBeforeNormalization => "weight-before-normalization",
            TopsisForm::Printed => "printed",
            TopsisForm::DroppedInnerWeight => "dropped-inner-weight",
        }
    }
}

/// Distances to the positive/negative ideals and relative closeness.
#[derive(Debug, Clone)]
pub struct TopsisResult {
    pub d_plus: Vec<f64>,
    pub d_minus: Vec<f64>,
    pub closeness: Vec<f64>,
    pub ranking: Vec<usize>,
    /// Which assembly produced this result (recorded in reports).
    pub form: TopsisForm,
    /// True when every alternative coincided with both ideals.
    pub degenerate: bool,
}

pub fn topsis(
    m: &GroupMatrix,
    attrs: &[AttributeSpec],
    weights: &WeightVector,
) -> Result<TopsisResult> {
    topsis_with_form(m, attrs, weights, TopsisForm::default())
}

pub fn topsis_with_form(
    m: &GroupMatrix,
    attrs: &[AttributeSpec],
    weights: &WeightVector,
    form: TopsisForm,
) -> Result<TopsisResult> {
    require_normalized(m)?;
    let (n, k) = (m.cells.rows(), m.cells.cols());
    if n < 2 {
        return Err(Error::TooFewAlternatives { need: 2, got: n });
    }
    if attrs.len() != k {
        return Err(Error::AttributeCountMismatch {
            attrs: attrs.len(),
            cols: k,
        });
    }
    if weights.len() != k {
        return Err(Error::LengthMismatch {
            left: weights.len(),
            right: k,
        });
    }

    // weighted matrix; for the validated form the weighting acts on the
    // pre-normalization values, which on the normalized matrix means the
    // power op for cost columns
    let weighted: Vec<Vec<Ivifn>> = (0..n)
        .map(|r| {
            (0..k)
                .map(|c| {
                    let cell = m.cells.get(r, c);
                    let w = weights.get(c);
                    if w == 0.0 {
                        return Ok(cell);
                    }
                    match form {
                        TopsisForm::WeightBeforeNormalization => match attrs[c].kind {
                            AttributeKind::Benefit => cell.scale(w),
                            AttributeKind::Cost => cell.power(w),
                        },
                        _ => cell.scale(w),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut pis = Vec::with_capacity(k);
    let mut nis = Vec::with_capacity(k);
    for c in 0..k {
        let mut best = weighted[0][c];
        let mut worst = weighted[0][c];
        for row in weighted.iter().skip(1) {
            best = best.join(row[c]);
            worst = worst.meet(row[c]);
        }
        pis.push(best);
        nis.push(worst);
    }

    let prefactor = 1.0 / (4.0 * n as f64);
    let inner = |c: usize| match form {
        TopsisForm::Printed => weights.get(c),
        _ => 1.0,
    };
    let dist_to = |row: &[Ivifn], ideals: &[Ivifn]| -> f64 {
        prefactor
            * (0..k)
                .map(|c| {
                    inner(c)
                        * row[c]
                            .bounds()
                            .iter()
                            .zip(ideals[c].bounds().iter())
                            .map(|(a, b)| (a - b).abs())
                            .sum::<f64>()
                })
                .sum::<f64>()
    };
    let d_plus: Vec<f64> = weighted.iter().map(|row| dist_to(row, &pis)).collect();
    let d_minus: Vec<f64> = weighted.iter().map(|row| dist_to(row, &nis)).collect();
    let degenerate = d_plus
        .iter()
        .zip(d_minus.iter())
        .all(|(&a, &b)| a + b == 0.0);
    let closeness: Vec<f64> = d_plus
        .iter()
        .zip(d_minus.iter())
        .map(|(&a, &b)| if a + b > 0.0 { b / (a + b) } else { 0.5 })
        .collect();
    let ranking = rank_descending(&closeness);
    Ok(TopsisResult {
        d_plus,
        d_minus,
        closeness,
        ranking,
        form,
        degenerate,
    })
}

/// Taxonomy options; flagged alternatives are dropped from the
/// development ranking only when `drop_flagged` is set.
#[derive(Debug, Clone, Copy, Default)]
pub struct TaxonomyOptions {
    pub drop_flagged: bool,
}

/// Pairwise-distance homogenization plus development values (smaller is
/// better).
#[derive(Debug, Clone)]
pub struct TaxonomyResult {
    /// Weighted pairwise distances between alternatives.
    pub dist_matrix: Vec<Vec<f64>>,
    /// Homogenization band: mean of nearest-neighbour distances +/- two
    /// standard deviations.
    pub bounds: (f64, f64),
    /// Alternatives whose nearest-neighbour distance falls outside the band.
    pub flagged: Vec<bool>,
    /// Distance of each alternative to the positive ideal.
    pub k_ro: Vec<f64>,
    /// Development threshold: mean + two standard deviations of `k_ro`.
    pub k_bound: f64,
    /// Development values `k_ro / k_bound`; lower ranks better.
    pub development: Vec<f64>,
    /// Indices sorted ascending by development (flagged ones last when
    /// dropping is enabled).
    pub ranking: Vec<usize>,
}

pub fn taxonomy(m: &GroupMatrix, weights: &WeightVector) -> Result<TaxonomyResult> {
    taxonomy_with(m, weights, TaxonomyOptions::default())
}

pub fn taxonomy_with(
    m: &GroupMatrix,
    weights: &WeightVector,
    opts: TaxonomyOptions,
) -> Result<TaxonomyResult> {
    require_normalized(m)?;
    let (n, k) = (m.cells.rows(), m.cells.cols());
    if n < 2 {
        return Err(Error::TooFewAlternatives { need: 2, got: n });
    }
    if weights.len() != k {
        return Err(Error::LengthMismatch {
            left: weights.len(),
            right: k,
        });
    }

    let weighted_hamming = |a: &[Ivifn], b: &[Ivifn]| -> f64 {
        0.25 * (0..k)
            .map(|c| {
                weights.get(c)
                    * a[c]
                        .bounds()
                        .iter()
                        .zip(b[c].bounds().iter())
                        .map(|(x, y)| (x - y).abs())
                        .sum::<f64>()
            })
            .sum::<f64>()
    };

    let dist_rows = par::map_indices(n, |p| {
        (0..n)
            .map(|q| weighted_hamming(m.cells.row(p), m.cells.row(q)))
            .collect::<Vec<f64>>()
    });

    // nearest-neighbour statistic per row drives the homogeneity band
    let nearest: Vec<f64> = (0..n)
        .map(|p| {
            (0..n)
                .filter(|&q| q != p)
                .map(|q| dist_rows[p][q])
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let (g_mean, g_std) = mean_std(&nearest);
    let bounds = (g_mean - 2.0 * g_std, g_mean + 2.0 * g_std);
    let flagged: Vec<bool> = nearest
        .iter()
        .map(|&g| g < bounds.0 || g > bounds.1)
        .collect();

    let mut ideal = Vec::with_capacity(k);
    for c in 0..k {
        let mut best = m.cells.get(0, c);
        for r in 1..n {
            best = best.join(m.cells.get(r, c));
        }
        ideal.push(best);
    }
    let k_ro: Vec<f64> = (0..n)
        .map(|r| weighted_hamming(m.cells.row(r), &ideal))
        .collect();
    let (k_mean, k_std) = mean_std(&k_ro);
    let k_bound = k_mean + 2.0 * k_std;
    if k_bound == 0.0 {
        return Err(Error::DegenerateTaxonomy);
    }
    let development: Vec<f64> = k_ro.iter().map(|&v| v / k_bound).collect();

    let mut ranking: Vec<usize> = (0..n)
        .filter(|&r| !(opts.drop_flagged && flagged[r]))
        .collect();
    ranking.sort_by(|&a, &b| {
        development[a]
            .partial_cmp(&development[b])
            .unwrap_or(Ordering::Equal)
    });
    Ok(TaxonomyResult {
        dist_matrix: dist_rows,
        bounds,
        flagged,
        k_ro,
        k_bound,
        development,
        ranking,
    })
}

/// Population mean and standard deviation.
fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Pairwise dominance aggregated into a min-max normalized attractiveness.
#[derive(Debug, Clone)]
pub struct TodimResult {
    /// `dominance[p][r]`: total advantage of alternative `p` over `r`
    /// across attributes (positive where `p` wins).
    pub dominance: Vec<Vec<f64>>,
    /// Min-max normalized total dominance per alternative.
    pub xi: Vec<f64>,
    pub theta: f64,
    pub ranking: Vec<usize>,
    /// True when every alternative has identical total dominance.
    pub degenerate: bool,
}

/// TODIM with loss-attenuation parameter `theta > 0`.
///
/// Columns are vector-normalized (memberships and non-memberships each by
/// their own Euclidean column norm); attribute weights are taken relative
/// to the largest weight; per-attribute advantage is
/// `sqrt(relative weight share) * sqrt(quarter-sum distance)`, negated
/// and divided by `theta` on the losing side; cell comparison uses the
/// plain score.
pub fn todim(m: &GroupMatrix, weights: &WeightVector, theta: f64) -> Result<TodimResult> {
    require_normalized(m)?;
    let (n, k) = (m.cells.rows(), m.cells.cols());
    if n < 2 {
        return Err(Error::TooFewAlternatives { need: 2, got: n });
    }
    if weights.len() != k {
        return Err(Error::LengthMismatch {
            left: weights.len(),
            right: k,
        });
    }
    if theta.is_nan() || theta <= 0.0 {
        return Err(Error::ParamOutOfRange {
            param: "theta".into(),
            value: theta,
            range: "(0, inf)".into(),
        });
    }

    // column-wise vector normalization; the rescaled quadruples are
    // working values, not IVIFNs (the two intervals shrink by different
    // factors, so the upper-bound constraint need not survive)
    let mut norm: Vec<Vec<[f64; 4]>> = vec![Vec::with_capacity(k); n];
    for c in 0..k {
        let mut mem = 0.0;
        let mut non = 0.0;
        for r in 0..n {
            let x = m.cells.get(r, c);
            mem += x.lm() * x.lm() + x.rm() * x.rm();
            non += x.ln() * x.ln() + x.rn() * x.rn();
        }
        let dm = mem.sqrt().max(f64::MIN_POSITIVE);
        let dn = non.sqrt().max(f64::MIN_POSITIVE);
        for (r, row) in norm.iter_mut().enumerate() {
            let x = m.cells.get(r, c);
            row.push([x.lm() / dm, x.rm() / dm, x.ln() / dn, x.rn() / dn]);
        }
    }
    let score = |q: &[f64; 4]| (q[0] - q[2] + q[1] - q[3]) / 2.0;

    let w_max = weights.iter().cloned().fold(0.0, f64::max);
    let relative: Vec<f64> = weights.iter().map(|w| w / w_max).collect();
    let rel_sum: f64 = relative.iter().sum();

    let dominance = par::map_indices(n, |p| {
        (0..n)
            .map(|r| {
                (0..k)
                    .map(|c| {
                        let (a, b) = (&norm[p][c], &norm[r][c]);
                        match cmp_tol(score(a), score(b)) {
                            Ordering::Equal => 0.0,
                            ord => {
                                let quarter_sum = 0.25
                                    * a.iter()
                                        .zip(b.iter())
                                        .map(|(x, y)| (x - y).abs())
                                        .sum::<f64>();
                                let phi = (relative[c] / rel_sum).sqrt() * quarter_sum.sqrt();
                                if ord == Ordering::Greater {
                                    phi
                                } else {
                                    -phi / theta
                                }
                            }
                        }
                    })
                    .sum()
            })
            .collect::<Vec<f64>>()
    });

    let totals: Vec<f64> = dominance.iter().map(|row| row.iter().sum()).collect();
    let lo = totals.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = totals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let degenerate = (hi - lo).abs() <= f64::EPSILON * hi.abs().max(1.0);
    let xi: Vec<f64> = if degenerate {
        vec![0.5; n]
    } else {
        totals.iter().map(|&t| (t - lo) / (hi - lo)).collect()
    };
    let ranking = rank_descending(&xi);
    Ok(TodimResult {
        dominance,
        xi,
        theta,
        ranking,
        degenerate,
    })
}

fn require_normalized(m: &GroupMatrix) -> Result<()> {
    if !m.normalized {
        return Err(Error::NotNormalized);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::IvifGrid;
    use approx::assert_abs_diff_eq;

    fn iv(lm: f64, rm: f64, ln: f64, rn: f64) -> Ivifn {
        Ivifn::new(lm, rm, ln, rn).unwrap()
    }

    fn normalized(rows: Vec<Vec<Ivifn>>) -> GroupMatrix {
        GroupMatrix {
            cells: IvifGrid::from_rows(rows).unwrap(),
            normalized: true,
        }
    }

    fn benefit(name: &str) -> AttributeSpec {
        AttributeSpec {
            name: name.into(),
            kind: AttributeKind::Benefit,
        }
    }

    fn three_by_two() -> GroupMatrix {
        normalized(vec![
            vec![iv(0.6, 0.7, 0.1, 0.2), iv(0.2, 0.3, 0.4, 0.5)],
            vec![iv(0.3, 0.4, 0.2, 0.5), iv(0.5, 0.6, 0.25, 0.3)],
            vec![iv(0.1, 0.2, 0.5, 0.6), iv(0.3, 0.5, 0.1, 0.4)],
        ])
    }

    #[test]
    fn ivifwa_rank_ties_break_by_index() {
        let x = iv(0.3, 0.5, 0.1, 0.4);
        let m = normalized(vec![vec![x, x], vec![x, x]]);
        let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
        let res = ivifwa_rank(&m, &w).unwrap();
        assert_eq!(res.sf[0], res.sf[1]);
        assert_eq!(res.af[0], res.af[1]);
        assert_eq!(res.ranking, vec![0, 1]);
    }

    #[test]
    fn topsis_pis_coincidence_gives_full_closeness() {
        // row 0 dominates everywhere, so it coincides with the ideal
        let m = normalized(vec![
            vec![iv(0.6, 0.7, 0.1, 0.2), iv(0.5, 0.6, 0.25, 0.3)],
            vec![iv(0.3, 0.4, 0.2, 0.5), iv(0.2, 0.3, 0.4, 0.5)],
        ]);
        let attrs = vec![benefit("a"), benefit("b")];
        let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
        let res = topsis(&m, &attrs, &w).unwrap();
        assert_eq!(res.d_plus[0], 0.0);
        assert_eq!(res.closeness[0], 1.0);
        assert_eq!(res.ranking[0], 0);
    }

    #[test]
    fn topsis_identical_alternatives_are_degenerate() {
        let x = iv(0.3, 0.5, 0.1, 0.4);
        let m = normalized(vec![vec![x], vec![x]]);
        let attrs = vec![benefit("a")];
        let w = WeightVector::new(vec![1.0]).unwrap();
        let res = topsis(&m, &attrs, &w).unwrap();
        assert!(res.degenerate);
        assert_eq!(res.closeness, vec![0.5, 0.5]);
    }

    #[test]
    fn topsis_constant_distance_sum_across_alternatives() {
        // Hamming distances to componentwise ideals make D+ + D- constant
        let m = three_by_two();
        let attrs = vec![benefit("a"), benefit("b")];
        let w = WeightVector::new(vec![0.4, 0.6]).unwrap();
        let res = topsis(&m, &attrs, &w).unwrap();
        let sums: Vec<f64> = res
            .d_plus
            .iter()
            .zip(res.d_minus.iter())
            .map(|(a, b)| a + b)
            .collect();
        for s in &sums[1..] {
            assert_abs_diff_eq!(s, &sums[0], epsilon = 1e-12);
        }
    }

    #[test]
    fn taxonomy_equal_pair_has_equal_development() {
        let x = iv(0.3, 0.5, 0.1, 0.4);
        let y = iv(0.6, 0.7, 0.1, 0.2);
        let m = normalized(vec![vec![x], vec![x], vec![y]]);
        let w = WeightVector::new(vec![1.0]).unwrap();
        let res = taxonomy(&m, &w).unwrap();
        assert_eq!(res.development[0], res.development[1]);
        // the dominating row coincides with the ideal
        assert_eq!(res.k_ro[2], 0.0);
        assert_eq!(res.development[2], 0.0);
    }

    #[test]
    fn taxonomy_all_identical_is_an_error() {
        let x = iv(0.3, 0.5, 0.1, 0.4);
        let m = normalized(vec![vec![x], vec![x]]);
        let w = WeightVector::new(vec![1.0]).unwrap();
        assert!(matches!(taxonomy(&m, &w), Err(Error::DegenerateTaxonomy)));
    }

    #[test]
    fn taxonomy_distance_matrix_is_symmetric_zero_diagonal() {
        let m = three_by_two();
        let w = WeightVector::new(vec![0.4, 0.6]).unwrap();
        let res = taxonomy(&m, &w).unwrap();
        for p in 0..3 {
            assert_eq!(res.dist_matrix[p][p], 0.0);
            for q in 0..3 {
                assert_abs_diff_eq!(
                    res.dist_matrix[p][q],
                    res.dist_matrix[q][p],
                    epsilon = 1e-15
                );
            }
        }
    }

    #[test]
    fn todim_endpoints_and_self_dominance() {
        let m = three_by_two();
        let w = WeightVector::new(vec![0.4, 0.6]).unwrap();
        let res = todim(&m, &w, 1.0).unwrap();
        for p in 0..3 {
            assert_eq!(res.dominance[p][p], 0.0);
        }
        let max = res.xi.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = res.xi.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(max, 1.0);
        assert_eq!(min, 0.0);
    }

    #[test]
    fn todim_gain_for_one_side_is_loss_for_the_other() {
        let m = three_by_two();
        let w = WeightVector::new(vec![0.4, 0.6]).unwrap();
        let res = todim(&m, &w, 1.0).unwrap();
        for p in 0..3 {
            for r in 0..3 {
                if res.dominance[p][r] > 0.0 {
                    assert!(res.dominance[r][p] <= 0.0);
                }
            }
        }
    }

    #[test]
    fn todim_identical_alternatives_flagged_degenerate() {
        let x = iv(0.3, 0.5, 0.1, 0.4);
        let m = normalized(vec![vec![x], vec![x]]);
        let w = WeightVector::new(vec![1.0]).unwrap();
        let res = todim(&m, &w, 1.0).unwrap();
        assert!(res.degenerate);
        assert_eq!(res.xi, vec![0.5, 0.5]);
    }

    #[test]
    fn todim_rejects_bad_theta() {
        let m = three_by_two();
        let w = WeightVector::new(vec![0.4, 0.6]).unwrap();
        assert!(todim(&m, &w, 0.0).is_err());
    }
}
