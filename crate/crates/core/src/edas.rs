//! CPT-modified EDAS: rank alternatives by weighted positive and negative
//! distances from the per-attribute average solution, with an inverse-S
//! probability weighting of attribute weights and an S-shaped value
//! transform of the distances.
//!
//! Two variants share the trace shape: the fuzzy path consumes a
//! normalized [`GroupMatrix`], the crisp path a real-valued matrix.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::aggregation::{AttributeKind, AttributeSpec, GroupMatrix, WeightVector};
use crate::error::{Error, Result};
use crate::ivif::{cmp_tol, Ivifn};

/// Risk-attitude parameters: probability-weighting curvatures for gains
/// (`alpha`) and losses (`beta`), value-function curvatures (`gamma`,
/// `delta`), and loss aversion (`rho`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CptParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub rho: f64,
}

impl Default for CptParams {
    /// The classical experimentally-fitted values.
    fn default() -> Self {
        CptParams {
            alpha: 0.61,
            beta: 0.69,
            gamma: 0.88,
            delta: 0.88,
            rho: 2.25,
        }
    }
}

impl CptParams {
    pub fn validate(&self) -> Result<()> {
        let curvatures = [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("delta", self.delta),
        ];
        for (name, v) in curvatures {
            if !v.is_finite() || !(0.0 < v && v <= 1.0) {
                return Err(Error::ParamOutOfRange {
                    param: name.into(),
                    value: v,
                    range: "(0, 1]".into(),
                });
            }
        }
        if !self.rho.is_finite() || self.rho <= 1.0 {
            return Err(Error::ParamOutOfRange {
                param: "rho".into(),
                value: self.rho,
                range: "(1, inf)".into(),
            });
        }
        Ok(())
    }
}

/// Gain or loss side of the average-solution split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Gain,
    Loss,
}

/// Inverse-S probability weighting `p^e / (p^e + (1-p)^e)^(1/e)` with the
/// gain or loss curvature; fixes `w(0) = 0`, `w(1) = 1`.
pub fn cpt_weight(p: f64, branch: Branch, params: &CptParams) -> f64 {
    let e = match branch {
        Branch::Gain => params.alpha,
        Branch::Loss => params.beta,
    };
    let num = p.powf(e);
    num / (num + (1.0 - p).powf(e)).powf(1.0 / e)
}

/// Equal-weight average of each column; idempotent on constant columns.
pub fn average_solution(m: &GroupMatrix) -> Result<Vec<Ivifn>> {
    if !m.normalized {
        return Err(Error::NotNormalized);
    }
    let (rows, cols) = (m.cells.rows(), m.cells.cols());
    if rows == 0 {
        return Err(Error::EmptyMatrix);
    }
    let inv_n = 1.0 / rows as f64;
    Ok((0..cols)
        .map(|c| {
            let mut plm = 1.0;
            let mut prm = 1.0;
            let mut pln = 1.0;
            let mut prn = 1.0;
            for r in 0..rows {
                let x = m.cells.get(r, c);
                plm *= 1.0 - x.lm();
                prm *= 1.0 - x.rm();
                pln *= x.ln();
                prn *= x.rn();
            }
            Ivifn::from_ops(
                1.0 - plm.powf(inv_n),
                1.0 - prm.powf(inv_n),
                pln.powf(inv_n),
                prn.powf(inv_n),
            )
        })
        .collect())
}

/// Gain when the cell is at least the average under the total order
/// (equality counts as gain).
pub fn branch_of(cell: Ivifn, avg: Ivifn) -> Branch {
    if cell.compare(&avg) == Ordering::Less {
        Branch::Loss
    } else {
        Branch::Gain
    }
}

/// Positive / negative distance grids, alternatives x attributes.
pub type DistanceGrids = (Vec<Vec<f64>>, Vec<Vec<f64>>);

/// Positive and negative distances from the average. Gains take the
/// hybrid distance to the value-function power `gamma`; losses take it to
/// `delta` and scale by the loss aversion `rho`. Both divide by the
/// average's accuracy, which must be nonzero.
pub fn pda_nda(m: &GroupMatrix, avg: &[Ivifn], params: &CptParams) -> Result<DistanceGrids> {
    if !m.normalized {
        return Err(Error::NotNormalized);
    }
    if avg.len() != m.cells.cols() {
        return Err(Error::AttributeCountMismatch {
            attrs: avg.len(),
            cols: m.cells.cols(),
        });
    }
    let accuracies: Vec<f64> = avg.iter().map(|a| a.accuracy_wc()).collect();
    for (c, &af) in accuracies.iter().enumerate() {
        if af == 0.0 {
            return Err(Error::ZeroAccuracy {
                attribute: format!("column {c}"),
            });
        }
    }
    let (rows, cols) = (m.cells.rows(), m.cells.cols());
    let mut pda = vec![vec![0.0; cols]; rows];
    let mut nda = vec![vec![0.0; cols]; rows];
    for r in 0..rows {
        for c in 0..cols {
            let cell = m.cells.get(r, c);
            // a cell within the tie tolerance of the average counts as
            // coinciding with it and contributes no distance
            let d = match cell.dist_hybrid(avg[c]) {
                d if d <= crate::ivif::TIE_TOL => 0.0,
                d => d,
            };
            match branch_of(cell, avg[c]) {
                Branch::Gain => pda[r][c] = d.powf(params.gamma) / accuracies[c],
                Branch::Loss => nda[r][c] = params.rho * d.powf(params.delta) / accuracies[c],
            }
        }
    }
    Ok((pda, nda))
}

/// CPT-weighted attribute weight per cell: the gain curvature where the
/// cell meets the average, the loss curvature elsewhere.
pub fn relative_weights(
    m: &GroupMatrix,
    avg: &[Ivifn],
    weights: &WeightVector,
    params: &CptParams,
) -> Result<Vec<Vec<f64>>> {
    if !m.normalized {
        return Err(Error::NotNormalized);
    }
    if weights.len() != m.cells.cols() {
        return Err(Error::AttributeCountMismatch {
            attrs: weights.len(),
            cols: m.cells.cols(),
        });
    }
    Ok((0..m.cells.rows())
        .map(|r| {
            (0..m.cells.cols())
                .map(|c| cpt_weight(weights.get(c), branch_of(m.cells.get(r, c), avg[c]), params))
                .collect()
        })
        .collect())
}

/// Full trace of a scoring run.
#[derive(Debug, Clone)]
pub struct EdasTrace {
    /// Per-attribute average solution.
    pub avg: Vec<Ivifn>,
    /// CPT-weighted attribute weights, alternatives x attributes.
    pub rel_weights: Vec<Vec<f64>>,
    pub pda: Vec<Vec<f64>>,
    pub nda: Vec<Vec<f64>>,
    /// Weighted positive / negative distance sums per alternative.
    pub sp: Vec<f64>,
    pub sn: Vec<f64>,
    /// Normalized sums; `nsp` peaks at 1, `nsn` bottoms at 0.
    pub nsp: Vec<f64>,
    pub nsn: Vec<f64>,
    /// Overall assessment scores in `[0, 1]`.
    pub scores: Vec<f64>,
    /// Alternative indices sorted by score descending, ties by index.
    pub ranking: Vec<usize>,
}

/// Score and rank a normalized group matrix.
pub fn score_and_rank(
    m: &GroupMatrix,
    weights: &WeightVector,
    params: &CptParams,
) -> Result<EdasTrace> {
    params.validate()?;
    let n = m.cells.rows();
    if n < 2 {
        return Err(Error::TooFewAlternatives { need: 2, got: n });
    }
    let avg = average_solution(m)?;
    let rel_weights = relative_weights(m, &avg, weights, params)?;
    let (pda, nda) = pda_nda(m, &avg, params)?;
    let (sp, sn): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|r| {
            let a: f64 = (0..weights.len())
                .map(|c| rel_weights[r][c] * pda[r][c])
                .sum();
            let b: f64 = (0..weights.len())
                .map(|c| rel_weights[r][c] * nda[r][c])
                .sum();
            (a, b)
        })
        .unzip();
    let (nsp, nsn, scores) = normalize_and_score(&sp, &sn);
    let ranking = rank_descending(&scores);
    Ok(EdasTrace {
        avg,
        rel_weights,
        pda,
        nda,
        sp,
        sn,
        nsp,
        nsn,
        scores,
        ranking,
    })
}

/// Shared tail of both the fuzzy and crisp paths. Degenerate normalizers
/// take their limit values: all-zero SP gives NSP = 0, all-zero SN gives
/// NSN = 1, so an all-equal problem scores 0.5 everywhere.
fn normalize_and_score(sp: &[f64], sn: &[f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let max_sp = sp.iter().cloned().fold(0.0, f64::max);
    let max_sn = sn.iter().cloned().fold(0.0, f64::max);
    let nsp: Vec<f64> = sp
        .iter()
        .map(|&v| if max_sp > 0.0 { v / max_sp } else { 0.0 })
        .collect();
    let nsn: Vec<f64> = sn
        .iter()
        .map(|&v| if max_sn > 0.0 { 1.0 - v / max_sn } else { 1.0 })
        .collect();
    let scores = nsp
        .iter()
        .zip(nsn.iter())
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    (nsp, nsn, scores)
}

/// Indices sorted by score descending; stable, so ties keep input order.
pub(crate) fn rank_descending(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap_or(Ordering::Equal));
    idx
}

/// Real-valued decision matrix for the crisp path.
#[derive(Debug, Clone, PartialEq)]
pub struct CrispMatrix {
    rows: Vec<Vec<f64>>,
}

impl CrispMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let cols = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::ShapeMismatch {
                    expected_rows: rows.len(),
                    expected_cols: cols,
                    rows: i + 1,
                    cols: r.len(),
                });
            }
            if r.iter().any(|v| !v.is_finite()) {
                return Err(Error::ProblemFile(format!("non-finite entry in row {i}")));
            }
        }
        Ok(CrispMatrix { rows })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.rows[r][c]
    }
}

/// Column means.
pub fn crisp_average(m: &CrispMatrix) -> Vec<f64> {
    let n = m.n_rows() as f64;
    (0..m.n_cols())
        .map(|c| (0..m.n_rows()).map(|r| m.get(r, c)).sum::<f64>() / n)
        .collect()
}

/// Crisp trace: like [`EdasTrace`] but with a real-valued average row.
#[derive(Debug, Clone)]
pub struct CrispEdasTrace {
    pub avg: Vec<f64>,
    pub rel_weights: Vec<Vec<f64>>,
    pub pda: Vec<Vec<f64>>,
    pub nda: Vec<Vec<f64>>,
    pub sp: Vec<f64>,
    pub sn: Vec<f64>,
    pub nsp: Vec<f64>,
    pub nsn: Vec<f64>,
    pub scores: Vec<f64>,
    pub ranking: Vec<usize>,
}

/// Crisp CPT-EDAS. The probability-weighting branch always tests
/// `y >= average`; the gain/loss split of the distances flips for cost
/// attributes (smaller is better there, so `y <= average` is the gain
/// side). Averages must be positive because they normalize the distances.
pub fn crisp_edas(
    m: &CrispMatrix,
    attrs: &[AttributeSpec],
    weights: &WeightVector,
    params: &CptParams,
) -> Result<CrispEdasTrace> {
    params.validate()?;
    let (n, k) = (m.n_rows(), m.n_cols());
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
    let avg = crisp_average(m);
    for (c, &a) in avg.iter().enumerate() {
        if a <= 0.0 {
            return Err(Error::NonPositiveAverage {
                attribute: attrs[c].name.clone(),
                value: a,
            });
        }
    }
    let mut rel_weights = vec![vec![0.0; k]; n];
    let mut pda = vec![vec![0.0; k]; n];
    let mut nda = vec![vec![0.0; k]; n];
    for r in 0..n {
        for c in 0..k {
            let y = m.get(r, c);
            let at_least_avg = cmp_tol(y, avg[c]) != Ordering::Less;
            let weight_branch = if at_least_avg {
                Branch::Gain
            } else {
                Branch::Loss
            };
            rel_weights[r][c] = cpt_weight(weights.get(c), weight_branch, params);
            let gain = match attrs[c].kind {
                AttributeKind::Benefit => at_least_avg,
                AttributeKind::Cost => cmp_tol(y, avg[c]) != Ordering::Greater,
            };
            if gain {
                let d = match attrs[c].kind {
                    AttributeKind::Benefit => (y - avg[c]).max(0.0),
                    AttributeKind::Cost => (avg[c] - y).max(0.0),
                };
                pda[r][c] = d.powf(params.gamma) / avg[c];
            } else {
                let d = match attrs[c].kind {
                    AttributeKind::Benefit => (avg[c] - y).max(0.0),
                    AttributeKind::Cost => (y - avg[c]).max(0.0),
                };
                nda[r][c] = params.rho * d.powf(params.delta) / avg[c];
            }
        }
    }
    let (sp, sn): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|r| {
            let a: f64 = (0..k).map(|c| rel_weights[r][c] * pda[r][c]).sum();
            let b: f64 = (0..k).map(|c| rel_weights[r][c] * nda[r][c]).sum();
            (a, b)
        })
        .unzip();
    let (nsp, nsn, scores) = normalize_and_score(&sp, &sn);
    let ranking = rank_descending(&scores);
    Ok(CrispEdasTrace {
        avg,
        rel_weights,
        pda,
        nda,
        sp,
        sn,
        nsp,
        nsn,
        scores,
        ranking,
    })
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

    #[test]
    fn cpt_weight_fixed_points_and_cases() {
        let p = CptParams::default();
        assert_eq!(cpt_weight(0.0, Branch::Gain, &p), 0.0);
        assert_eq!(cpt_weight(1.0, Branch::Gain, &p), 1.0);
        assert_eq!(cpt_weight(0.0, Branch::Loss, &p), 0.0);
        assert_eq!(cpt_weight(1.0, Branch::Loss, &p), 1.0);
        assert_abs_diff_eq!(cpt_weight(0.280, Branch::Gain, &p), 0.308, epsilon = 5e-4);
        assert_abs_diff_eq!(cpt_weight(0.280, Branch::Loss, &p), 0.314, epsilon = 5e-4);
    }

    #[test]
    fn cpt_weight_derivative_matches_finite_difference() {
        // quotient rule on p^a / (p^a + q^a)^(1/a) with q = 1 - p
        let p = CptParams::default();
        let a = p.alpha;
        let h = 1e-6;
        for &x in &[0.2f64, 0.4, 0.6, 0.8] {
            let (pa, qa) = (x.powf(a), (1.0 - x).powf(a));
            let s = pa + qa;
            let dpa = a * x.powf(a - 1.0);
            let dqa = -a * (1.0 - x).powf(a - 1.0);
            let deriv = (dpa * s.powf(1.0 / a) - pa * s.powf(1.0 / a - 1.0) * (dpa + dqa) / a)
                / s.powf(2.0 / a);
            let fd = (cpt_weight(x + h, Branch::Gain, &p) - cpt_weight(x - h, Branch::Gain, &p))
                / (2.0 * h);
            assert_abs_diff_eq!(deriv, fd, epsilon = 1e-5);
        }
    }

    #[test]
    fn average_of_identical_column_is_that_value() {
        let x = iv(0.3, 0.5, 0.1, 0.4);
        let m = normalized(vec![vec![x], vec![x], vec![x]]);
        let avg = average_solution(&m).unwrap();
        for (a, b) in avg[0].bounds().iter().zip(x.bounds().iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn branch_split_examples() {
        let avg = iv(0.607, 0.720, 0.142, 0.205);
        assert_eq!(branch_of(avg, avg), Branch::Gain); // equality is gain
        assert_eq!(branch_of(iv(0.775, 0.878, 0.050, 0.100), avg), Branch::Gain);
        assert_eq!(branch_of(iv(0.580, 0.682, 0.154, 0.212), avg), Branch::Loss);
    }

    #[test]
    fn pda_nda_reference_cells() {
        // one-column matrix with the group values of the leading attribute
        let rows = vec![
            vec![iv(0.580, 0.682, 0.154, 0.212)],
            vec![iv(0.775, 0.878, 0.050, 0.100)],
        ];
        let m = normalized(rows);
        let avg = vec![iv(0.607, 0.720, 0.142, 0.205)];
        let (pda, nda) = pda_nda(&m, &avg, &CptParams::default()).unwrap();
        assert_abs_diff_eq!(pda[1][0], 1.44, epsilon = 5e-3);
        assert_eq!(nda[1][0], 0.0);
        assert_eq!(pda[0][0], 0.0);
        assert_abs_diff_eq!(nda[0][0], 0.740, epsilon = 5e-3);
    }

    #[test]
    fn cell_equal_to_average_contributes_nothing() {
        let x = iv(0.3, 0.5, 0.1, 0.4);
        let m = normalized(vec![vec![x], vec![x]]);
        let avg = average_solution(&m).unwrap();
        let (pda, nda) = pda_nda(&m, &avg, &CptParams::default()).unwrap();
        assert_eq!(pda[0][0], 0.0);
        assert_eq!(nda[0][0], 0.0);
    }

    #[test]
    fn zero_accuracy_average_is_reported() {
        let m = normalized(vec![vec![Ivifn::MAX], vec![Ivifn::MAX]]);
        let avg = average_solution(&m).unwrap();
        assert!(matches!(
            pda_nda(&m, &avg, &CptParams::default()),
            Err(Error::ZeroAccuracy { .. })
        ));
    }

    #[test]
    fn relative_weight_one_regardless_of_branch() {
        let m = normalized(vec![
            vec![iv(0.6, 0.7, 0.1, 0.2)],
            vec![iv(0.2, 0.3, 0.4, 0.5)],
        ]);
        let avg = average_solution(&m).unwrap();
        let w = WeightVector::new(vec![1.0]).unwrap();
        let g = relative_weights(&m, &avg, &w, &CptParams::default()).unwrap();
        assert_abs_diff_eq!(g[0][0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g[1][0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn equal_curvatures_make_branches_indistinguishable() {
        let m = normalized(vec![
            vec![iv(0.6, 0.7, 0.1, 0.2)],
            vec![iv(0.2, 0.3, 0.4, 0.5)],
        ]);
        let avg = average_solution(&m).unwrap();
        let w = WeightVector::new(vec![1.0]).unwrap();
        let params = CptParams {
            alpha: 0.7,
            beta: 0.7,
            ..CptParams::default()
        };
        let g = relative_weights(&m, &avg, &w, &params).unwrap();
        assert_eq!(g[0][0], g[1][0]);
    }

    #[test]
    fn identical_alternatives_score_half_and_tie_by_index() {
        let x = iv(0.3, 0.5, 0.1, 0.4);
        let m = normalized(vec![vec![x, x], vec![x, x]]);
        let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
        let trace = score_and_rank(&m, &w, &CptParams::default()).unwrap();
        assert_eq!(trace.scores, vec![0.5, 0.5]);
        assert_eq!(trace.ranking, vec![0, 1]);
    }

    #[test]
    fn crisp_average_basics() {
        let m =
            CrispMatrix::from_rows(vec![vec![1.0, 0.2], vec![2.0, 0.8], vec![3.0, 0.5]]).unwrap();
        let avg = crisp_average(&m);
        assert_abs_diff_eq!(avg[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(avg[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn crisp_edas_single_benefit_column() {
        let m = CrispMatrix::from_rows(vec![vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        let attrs = vec![benefit("a")];
        let w = WeightVector::new(vec![1.0]).unwrap();
        let trace = crisp_edas(&m, &attrs, &w, &CptParams::default()).unwrap();
        // gain cell y = 3: (3 - 2)^0.88 / 2 = 0.5
        assert_abs_diff_eq!(trace.pda[2][0], 0.5, epsilon = 1e-12);
        // loss cell y = 1: 2.25 * (2 - 1)^0.88 / 2 = 1.125
        assert_abs_diff_eq!(trace.nda[0][0], 1.125, epsilon = 1e-12);
        // y = 2 sits on the average: gain branch with zero distance
        assert_eq!(trace.pda[1][0], 0.0);
        assert_eq!(trace.nda[1][0], 0.0);
        assert_eq!(trace.ranking[0], 2);
    }

    #[test]
    fn crisp_edas_all_equal_rows() {
        let m = CrispMatrix::from_rows(vec![vec![2.0, 3.0], vec![2.0, 3.0]]).unwrap();
        let attrs = vec![benefit("a"), benefit("b")];
        let w = WeightVector::new(vec![0.4, 0.6]).unwrap();
        let trace = crisp_edas(&m, &attrs, &w, &CptParams::default()).unwrap();
        assert!(trace.pda.iter().flatten().all(|&v| v == 0.0));
        assert!(trace.nda.iter().flatten().all(|&v| v == 0.0));
        assert_eq!(trace.scores, vec![0.5, 0.5]);
    }

    #[test]
    fn crisp_edas_rejects_nonpositive_average() {
        let m = CrispMatrix::from_rows(vec![vec![-1.0], vec![1.0]]).unwrap();
        let attrs = vec![benefit("a")];
        let w = WeightVector::new(vec![1.0]).unwrap();
        assert!(matches!(
            crisp_edas(&m, &attrs, &w, &CptParams::default()),
            Err(Error::NonPositiveAverage { .. })
        ));
    }

    #[test]
    fn crisp_edas_cost_attribute_inverts_gain_side() {
        let m = CrispMatrix::from_rows(vec![vec![1.0], vec![3.0]]).unwrap();
        let attrs = vec![AttributeSpec {
            name: "c".into(),
            kind: AttributeKind::Cost,
        }];
        let w = WeightVector::new(vec![1.0]).unwrap();
        let trace = crisp_edas(&m, &attrs, &w, &CptParams::default()).unwrap();
        // smaller is better: y = 1 is the gain side
        assert!(trace.pda[0][0] > 0.0);
        assert_eq!(trace.nda[0][0], 0.0);
        assert!(trace.nda[1][0] > 0.0);
        assert_eq!(trace.ranking[0], 0);
    }
}
