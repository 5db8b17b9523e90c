//! Report assembly and emission: named numeric tables plus the ranking,
//! serialized either as one structured-text document or as one CSV file
//! per table. Output is deterministic: no timestamps, stable ordering,
//! full-precision floats (shortest round-trip form).

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::edas::CptParams;
use crate::error::Result;
use crate::ivif::Ivifn;

/// Labeled numeric grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(
        name: impl Into<String>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Self {
        Table {
            name: name.into(),
            row_labels,
            col_labels,
            values,
        }
    }

    /// Single-row table.
    pub fn row(
        name: impl Into<String>,
        row_label: &str,
        col_labels: Vec<String>,
        values: Vec<f64>,
    ) -> Self {
        Table::new(name, vec![row_label.to_string()], col_labels, vec![values])
    }

    /// Grid of IVIFN rows flattened to four columns per attribute
    /// (`<attr>.lm`, `.rm`, `.ln`, `.rn`).
    pub fn from_ivifn_rows(
        name: impl Into<String>,
        row_labels: Vec<String>,
        attr_labels: &[String],
        rows: &[Vec<Ivifn>],
    ) -> Self {
        let col_labels = attr_labels
            .iter()
            .flat_map(|a| {
                ["lm", "rm", "ln", "rn"]
                    .iter()
                    .map(move |b| format!("{a}.{b}"))
            })
            .collect();
        let values = rows
            .iter()
            .map(|row| row.iter().flat_map(|x| x.bounds()).collect())
            .collect();
        Table::new(name, row_labels, col_labels, values)
    }

    /// Copy with every value rounded to `decimals` places; the view the
    /// golden tests compare against printed three-decimal references.
    pub fn rounded(&self, decimals: u32) -> Table {
        let f = 10f64.powi(decimals as i32);
        Table {
            name: self.name.clone(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|v| (v * f).round() / f).collect())
                .collect(),
        }
    }

    /// CSV rendering: header of column labels, one row per row label.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.name);
        for c in &self.col_labels {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (label, row) in self.row_labels.iter().zip(self.values.iter()) {
            out.push_str(label);
            for v in row {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }
}

/// Run parameters and triggered design-decision flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub cpt: CptParams,
    /// `entropy` or `fixed`.
    pub weight_source: String,
    pub attribute_weights: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topsis_form: Option<String>,
    /// Degeneracy or homogeneity flags triggered during the run.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

/// Full result of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub method: String,
    /// Alternative labels, best first.
    pub ranking: Vec<String>,
    /// The method's headline score per alternative, input order.
    pub scores: Vec<f64>,
    pub metadata: Metadata,
    pub tables: Vec<Table>,
}

impl Report {
    /// One structured-text document.
    pub fn to_structured_text(&self) -> Result<String> {
        toml::to_string_pretty(self)
            .map_err(|e| crate::error::Error::ProblemFile(format!("serialize report: {e}")))
    }

    /// Parse a structured-text document back (round-trip support).
    pub fn from_structured_text(text: &str) -> Result<Report> {
        Ok(toml::from_str(text)?)
    }

    /// Write one CSV per table into `dir`, prefixed by position so file
    /// listing order follows pipeline order. Returns the file names.
    pub fn write_csv_tables(&self, dir: &Path, include_intermediates: bool) -> Result<Vec<String>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        for (i, table) in self.tables.iter().enumerate() {
            if !include_intermediates && !Self::is_headline(&table.name) {
                continue;
            }
            let file = format!("{i:02}_{}.csv", table.name);
            std::fs::write(dir.join(&file), table.to_csv())?;
            written.push(file);
        }
        let mut ranking_csv = String::from("rank,alternative\n");
        for (i, label) in self.ranking.iter().enumerate() {
            let _ = writeln!(ranking_csv, "{},{}", i + 1, label);
        }
        std::fs::write(dir.join("ranking.csv"), ranking_csv)?;
        written.push("ranking.csv".into());
        Ok(written)
    }

    fn is_headline(name: &str) -> bool {
        matches!(
            name,
            "scores" | "closeness" | "development" | "dominance_xi" | "score_accuracy"
        )
    }
}
