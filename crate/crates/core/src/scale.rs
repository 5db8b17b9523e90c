//! Linguistic evaluation scale: ordered label-to-IVIFN mapping used to
//! resolve verbal assessments into numbers.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ivif::Ivifn;

/// Ordered mapping from label to value. Lookup is case-insensitive on the
/// abbreviation; insertion order is preserved for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticScale {
    entries: Vec<(String, Ivifn)>,
}

impl LinguisticScale {
    /// Ten-step default scale from "extremely terrible" to "perfectly
    /// good".
    pub fn default_ten_step() -> Self {
        let raw: [(&str, [f64; 4]); 10] = [
            ("ET", [0.00, 0.10, 0.85, 0.90]),
            ("VT", [0.00, 0.10, 0.70, 0.75]),
            ("T", [0.15, 0.25, 0.55, 0.60]),
            ("MT", [0.30, 0.40, 0.45, 0.50]),
            ("M", [0.40, 0.50, 0.35, 0.40]),
            ("MG", [0.50, 0.60, 0.25, 0.30]),
            ("G", [0.60, 0.70, 0.15, 0.20]),
            ("VG", [0.70, 0.80, 0.05, 0.10]),
            ("EG", [0.80, 0.90, 0.05, 0.10]),
            ("PG", [1.00, 1.00, 0.00, 0.00]),
        ];
        LinguisticScale {
            entries: raw
                .iter()
                .map(|(label, q)| {
                    (
                        label.to_string(),
                        Ivifn::new(q[0], q[1], q[2], q[3]).expect("built-in scale rows are valid"),
                    )
                })
                .collect(),
        }
    }

    /// Build from explicit entries; labels must be unique
    /// (case-insensitively) and values valid.
    pub fn from_entries(entries: Vec<(String, Ivifn)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ProblemFile("scale has no entries".into()));
        }
        for (i, (label, _)) in entries.iter().enumerate() {
            for (other, _) in entries.iter().skip(i + 1) {
                if label.eq_ignore_ascii_case(other) {
                    return Err(Error::ProblemFile(format!(
                        "duplicate scale label `{label}`"
                    )));
                }
            }
        }
        Ok(LinguisticScale { entries })
    }

    /// Parse a scale override document.
    pub fn from_toml(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct ScaleFile {
            #[allow(dead_code)]
            version: u32,
            entries: Vec<ScaleEntry>,
        }
        #[derive(Deserialize)]
        struct ScaleEntry {
            label: String,
            value: [f64; 4],
        }
        let parsed: ScaleFile = toml::from_str(text)?;
        let entries = parsed
            .entries
            .into_iter()
            .map(|e| {
                Ivifn::new(e.value[0], e.value[1], e.value[2], e.value[3]).map(|v| (e.label, v))
            })
            .collect::<Result<Vec<_>>>()?;
        LinguisticScale::from_entries(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(String, Ivifn)] {
        &self.entries
    }

    /// Case-insensitive exact lookup.
    pub fn lookup(&self, label: &str) -> Option<Ivifn> {
        self.entries
            .iter()
            .find(|(l, _)| l.eq_ignore_ascii_case(label))
            .map(|(_, v)| *v)
    }

    /// Lookup that reports where the unknown label was found.
    pub fn resolve(&self, label: &str, row: usize, col: usize, expert: &str) -> Result<Ivifn> {
        self.lookup(label).ok_or_else(|| Error::UnknownLabel {
            label: label.to_string(),
            row,
            col,
            expert: expert.to_string(),
        })
    }
}

impl Default for LinguisticScale {
    fn default() -> Self {
        LinguisticScale::default_ten_step()
    }
}
