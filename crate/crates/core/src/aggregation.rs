//! Weighted aggregation of IVIFNs and matrix-level fusion.
//!
//! `ivifwa`/`ivifwg` are the weighted average and geometric operators;
//! `aggregate_experts` fuses per-expert matrices cell by cell, and
//! `normalize_matrix` complements cost columns so every attribute is
//! benefit-oriented afterwards.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ivif::Ivifn;
use crate::par;

/// Nonnegative weights summing to 1 (within 1e-9).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Validates each weight in `[0, 1]` and the sum against 1. Rejects
    /// rather than renormalizes: a wrong sum is an input error, not noise.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        for (i, w) in weights.iter().enumerate() {
            if !w.is_finite() || !(0.0..=1.0).contains(w) {
                return Err(Error::InvalidWeights(format!(
                    "weight {i} = {w} outside [0, 1]"
                )));
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(WeightVector(weights))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        Ok(WeightVector(vec![1.0 / n as f64; n]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        WeightVector::new(v)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Vec<f64> {
        w.0
    }
}

/// Benefit attributes reward larger values; cost attributes reward smaller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    Benefit,
    Cost,
}

/// Named, typed attribute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: AttributeKind,
}

/// Rectangular grid of IVIFNs, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct IvifGrid {
    cells: Vec<Ivifn>,
    rows: usize,
    cols: usize,
}

impl IvifGrid {
    pub fn from_rows(rows: Vec<Vec<Ivifn>>) -> Result<Self> {
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
        }
        let n = rows.len();
        Ok(IvifGrid {
            cells: rows.into_iter().flatten().collect(),
            rows: n,
            cols,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Ivifn {
        self.cells[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Ivifn] {
        &self.cells[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Ivifn> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    fn from_parts(cells: Vec<Ivifn>, rows: usize, cols: usize) -> Self {
        IvifGrid { cells, rows, cols }
    }
}

/// One expert's assessment matrix: alternatives x attributes.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpertMatrix {
    pub expert_id: String,
    pub cells: IvifGrid,
}

/// Fused group matrix. `normalized` records whether cost columns have
/// already been complemented.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupMatrix {
    pub cells: IvifGrid,
    pub normalized: bool,
}

/// Weighted average: probabilistic mixing of memberships, geometric
/// mixing of non-memberships. Zero-weight inputs contribute nothing even
/// when a bound is 0 (`0^0 = 1`).
pub fn ivifwa(values: &[Ivifn], weights: &WeightVector) -> Result<Ivifn> {
    check_lengths(values, weights)?;
    let mut plm = 1.0;
    let mut prm = 1.0;
    let mut pln = 1.0;
    let mut prn = 1.0;
    for (v, &w) in values.iter().zip(weights.iter()) {
        plm *= (1.0 - v.lm()).powf(w);
        prm *= (1.0 - v.rm()).powf(w);
        pln *= v.ln().powf(w);
        prn *= v.rn().powf(w);
    }
    Ok(Ivifn::from_ops(1.0 - plm, 1.0 - prm, pln, prn))
}

/// Weighted geometric: dual of [`ivifwa`].
pub fn ivifwg(values: &[Ivifn], weights: &WeightVector) -> Result<Ivifn> {
    check_lengths(values, weights)?;
    let mut plm = 1.0;
    let mut prm = 1.0;
    let mut pln = 1.0;
    let mut prn = 1.0;
    for (v, &w) in values.iter().zip(weights.iter()) {
        plm *= v.lm().powf(w);
        prm *= v.rm().powf(w);
        pln *= (1.0 - v.ln()).powf(w);
        prn *= (1.0 - v.rn()).powf(w);
    }
    Ok(Ivifn::from_ops(plm, prm, 1.0 - pln, 1.0 - prn))
}

fn check_lengths(values: &[Ivifn], weights: &WeightVector) -> Result<()> {
    if values.len() != weights.len() {
        return Err(Error::LengthMismatch {
            left: values.len(),
            right: weights.len(),
        });
    }
    Ok(())
}

/// Fuse per-expert matrices into the group matrix, cell by cell, with the
/// expert weight vector. Cells are independent, so they may be evaluated
/// in parallel; collection order keeps results identical to sequential.
pub fn aggregate_experts(
    matrices: &[ExpertMatrix],
    expert_weights: &WeightVector,
) -> Result<GroupMatrix> {
    if matrices.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    if matrices.len() != expert_weights.len() {
        return Err(Error::LengthMismatch {
            left: matrices.len(),
            right: expert_weights.len(),
        });
    }
    let rows = matrices[0].cells.rows();
    let cols = matrices[0].cells.cols();
    for m in matrices {
        if m.cells.rows() != rows || m.cells.cols() != cols {
            return Err(Error::ShapeMismatch {
                expected_rows: rows,
                expected_cols: cols,
                rows: m.cells.rows(),
                cols: m.cells.cols(),
            });
        }
    }
    let cells = par::map_indices(rows * cols, |i| {
        let (r, c) = (i / cols, i % cols);
        let column: Vec<Ivifn> = matrices.iter().map(|m| m.cells.get(r, c)).collect();
        ivifwa(&column, expert_weights)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(GroupMatrix {
        cells: IvifGrid::from_parts(cells, rows, cols),
        normalized: false,
    })
}

/// Complement every cell of a cost column; benefit columns pass through.
pub fn normalize_matrix(m: &GroupMatrix, attrs: &[AttributeSpec]) -> Result<GroupMatrix> {
    if m.normalized {
        return Err(Error::AlreadyNormalized);
    }
    if attrs.len() != m.cells.cols() {
        return Err(Error::AttributeCountMismatch {
            attrs: attrs.len(),
            cols: m.cells.cols(),
        });
    }
    let (rows, cols) = (m.cells.rows(), m.cells.cols());
    let mut cells = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for (c, attr) in attrs.iter().enumerate() {
            let cell = m.cells.get(r, c);
            cells.push(match attr.kind {
                AttributeKind::Benefit => cell,
                AttributeKind::Cost => cell.complement(),
            });
        }
    }
    Ok(GroupMatrix {
        cells: IvifGrid::from_parts(cells, rows, cols),
        normalized: true,
    })
}
