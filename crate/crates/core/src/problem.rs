//! Problem ingestion: a version-tagged TOML document carrying the
//! alternatives, typed attributes, expert weights, and per-expert
//! assessment matrices (linguistic labels or numeric quadruples).

use std::path::Path;

use serde::Deserialize;

use crate::aggregation::{AttributeSpec, ExpertMatrix, IvifGrid, WeightVector};
use crate::edas::CptParams;
use crate::error::{Error, Result};
use crate::ivif::Ivifn;
use crate::scale::LinguisticScale;

/// Which method a run should execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodId {
    #[default]
    Edas,
    Ivifwa,
    Topsis,
    Taxonomy,
    Todim,
}

impl MethodId {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodId::Edas => "edas",
            MethodId::Ivifwa => "ivifwa",
            MethodId::Topsis => "topsis",
            MethodId::Taxonomy => "taxonomy",
            MethodId::Todim => "todim",
        }
    }
}

impl std::str::FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "edas" => Ok(MethodId::Edas),
            "ivifwa" => Ok(MethodId::Ivifwa),
            "topsis" => Ok(MethodId::Topsis),
            "taxonomy" => Ok(MethodId::Taxonomy),
            "todim" => Ok(MethodId::Todim),
            other => Err(Error::ProblemFile(format!(
                "unknown method `{other}` (expected ivifwa | topsis | taxonomy | todim | edas)"
            ))),
        }
    }
}

/// Fully validated decision problem, matrices resolved to IVIFNs.
#[derive(Debug, Clone)]
pub struct Problem {
    pub alternatives: Vec<String>,
    pub attributes: Vec<AttributeSpec>,
    pub expert_ids: Vec<String>,
    pub expert_weights: WeightVector,
    pub matrices: Vec<ExpertMatrix>,
    pub cpt: CptParams,
    pub fixed_weights: Option<WeightVector>,
    pub method: MethodId,
}

impl Problem {
    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn n_experts(&self) -> usize {
        self.expert_ids.len()
    }
}

/// A matrix cell in the file: either a scale label or a raw quadruple.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum CellSpec {
    Label(String),
    Quad([f64; 4]),
}

#[derive(Debug, Deserialize)]
struct ExpertSpec {
    id: String,
    weight: f64,
    matrix: Vec<Vec<CellSpec>>,
}

#[derive(Debug, Deserialize)]
struct AttributeFileSpec {
    name: String,
    kind: crate::aggregation::AttributeKind,
}

#[derive(Debug, Deserialize)]
struct ProblemFile {
    version: u32,
    #[serde(default)]
    method: Option<String>,
    alternatives: Vec<String>,
    attributes: Vec<AttributeFileSpec>,
    experts: Vec<ExpertSpec>,
    #[serde(default)]
    cpt: Option<CptParams>,
    #[serde(default)]
    fixed_weights: Option<Vec<f64>>,
}

/// Parse and validate a problem document.
pub fn parse_problem(text: &str, scale: &LinguisticScale) -> Result<Problem> {
    let file: ProblemFile = toml::from_str(text)?;
    if file.version != 1 {
        return Err(Error::ProblemFile(format!(
            "unsupported version {} (expected 1)",
            file.version
        )));
    }
    if file.alternatives.is_empty() {
        return Err(Error::ProblemFile("no alternatives".into()));
    }
    if file.attributes.is_empty() {
        return Err(Error::ProblemFile("no attributes".into()));
    }
    if file.experts.is_empty() {
        return Err(Error::ProblemFile("no experts".into()));
    }
    let n = file.alternatives.len();
    let k = file.attributes.len();

    let attributes: Vec<AttributeSpec> = file
        .attributes
        .into_iter()
        .map(|a| AttributeSpec {
            name: a.name,
            kind: a.kind,
        })
        .collect();

    let mut expert_ids = Vec::with_capacity(file.experts.len());
    let mut weights = Vec::with_capacity(file.experts.len());
    let mut matrices = Vec::with_capacity(file.experts.len());
    for spec in &file.experts {
        if spec.matrix.len() != n {
            return Err(Error::ProblemFile(format!(
                "expert `{}`: matrix has {} rows, expected {} (one per alternative)",
                spec.id,
                spec.matrix.len(),
                n
            )));
        }
        let mut rows = Vec::with_capacity(n);
        for (r, row) in spec.matrix.iter().enumerate() {
            if row.len() != k {
                return Err(Error::ProblemFile(format!(
                    "expert `{}`, row {}: {} cells, expected {} (one per attribute; missing cells are not allowed)",
                    spec.id,
                    r,
                    row.len(),
                    k
                )));
            }
            let mut cells = Vec::with_capacity(k);
            for (c, cell) in row.iter().enumerate() {
                let value = match cell {
                    CellSpec::Label(label) => scale.resolve(label, r, c, &spec.id)?,
                    CellSpec::Quad(q) => Ivifn::new(q[0], q[1], q[2], q[3]).map_err(|e| {
                        Error::ProblemFile(format!(
                            "expert `{}`, row {r}, column {c}: {e}",
                            spec.id
                        ))
                    })?,
                };
                cells.push(value);
            }
            rows.push(cells);
        }
        expert_ids.push(spec.id.clone());
        weights.push(spec.weight);
        matrices.push(ExpertMatrix {
            expert_id: spec.id.clone(),
            cells: IvifGrid::from_rows(rows)?,
        });
    }
    let expert_weights = WeightVector::new(weights)
        .map_err(|e| Error::ProblemFile(format!("expert weights: {e}")))?;

    let cpt = file.cpt.unwrap_or_default();
    cpt.validate()?;

    let fixed_weights = match file.fixed_weights {
        None => None,
        Some(w) => {
            if w.len() != k {
                return Err(Error::ProblemFile(format!(
                    "fixed_weights has {} entries, expected {k}",
                    w.len()
                )));
            }
            Some(
                WeightVector::new(w)
                    .map_err(|e| Error::ProblemFile(format!("fixed_weights: {e}")))?,
            )
        }
    };

    let method = match file.method {
        None => MethodId::default(),
        Some(s) => s.parse()?,
    };

    Ok(Problem {
        alternatives: file.alternatives,
        attributes,
        expert_ids,
        expert_weights,
        matrices,
        cpt,
        fixed_weights,
        method,
    })
}

/// Read and parse a problem file from disk.
pub fn load_problem(path: &Path, scale: &LinguisticScale) -> Result<Problem> {
    let text = std::fs::read_to_string(path)?;
    parse_problem(&text, scale)
}
