//! Orchestration: expert fusion -> normalization -> attribute weighting ->
//! selected method -> report, plus the one-parameter sensitivity sweep.

use serde::Serialize;

use crate::aggregation::{aggregate_experts, normalize_matrix, GroupMatrix, WeightVector};
use crate::comparators::{ivifwa_rank, taxonomy_with, todim, topsis, TaxonomyOptions};
use crate::edas::{score_and_rank, CptParams, EdasTrace};
use crate::error::{Error, Result};
use crate::par;
use crate::problem::{MethodId, Problem};
use crate::report::{Metadata, Report, Table};

/// Default TODIM loss-attenuation parameter.
pub const DEFAULT_THETA: f64 = 1.0;

/// Swept risk-attitude parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Rho,
}

impl SweepParam {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParam::Alpha => "alpha",
            SweepParam::Beta => "beta",
            SweepParam::Gamma => "gamma",
            SweepParam::Delta => "delta",
            SweepParam::Rho => "rho",
        }
    }

    fn apply(self, base: &CptParams, value: f64) -> CptParams {
        let mut p = *base;
        match self {
            SweepParam::Alpha => p.alpha = value,
            SweepParam::Beta => p.beta = value,
            SweepParam::Gamma => p.gamma = value,
            SweepParam::Delta => p.delta = value,
            SweepParam::Rho => p.rho = value,
        }
        p
    }

    fn check(self, value: f64) -> Result<()> {
        let (ok, range) = match self {
            SweepParam::Rho => (value > 1.0 && value.is_finite(), "(1, inf)"),
            _ => (value > 0.0 && value <= 1.0, "(0, 1]"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ParamOutOfRange {
                param: self.as_str().into(),
                value,
                range: range.into(),
            })
        }
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "alpha" => Ok(SweepParam::Alpha),
            "beta" => Ok(SweepParam::Beta),
            "gamma" => Ok(SweepParam::Gamma),
            "delta" => Ok(SweepParam::Delta),
            "rho" => Ok(SweepParam::Rho),
            other => Err(Error::ProblemFile(format!(
                "unknown sweep parameter `{other}` (expected alpha | beta | gamma | delta | rho)"
            ))),
        }
    }
}

/// Shared front half of every run: fuse experts, normalize, derive
/// attribute weights.
struct Prepared {
    normalized: GroupMatrix,
    weights: WeightVector,
    weight_source: &'static str,
    entropy_tables: Vec<Table>,
}

fn prepare(problem: &Problem) -> Result<Prepared> {
    let group = aggregate_experts(&problem.matrices, &problem.expert_weights)
        .map_err(|e| e.at_stage("aggregate-experts"))?;
    let normalized = normalize_matrix(&group, &problem.attributes)
        .map_err(|e| e.at_stage("normalize-matrix"))?;
    let attr_names: Vec<String> = problem.attributes.iter().map(|a| a.name.clone()).collect();
    let alt_names = problem.alternatives.clone();

    let mut entropy_tables = Vec::new();
    let (weights, weight_source) = match &problem.fixed_weights {
        Some(w) => (w.clone(), "fixed"),
        None => {
            let breakdown = crate::weighting::entropy_weights(&normalized)
                .map_err(|e| e.at_stage("entropy-weights"))?;
            entropy_tables.push(Table::from_ivifn_rows(
                "negative_ideal",
                vec!["NIP".into()],
                &attr_names,
                std::slice::from_ref(&breakdown.nip),
            ));
            entropy_tables.push(Table::new(
                "ideal_distances",
                alt_names.clone(),
                attr_names.clone(),
                breakdown.dist.clone(),
            ));
            entropy_tables.push(Table::new(
                "normalized_distances",
                alt_names.clone(),
                attr_names.clone(),
                breakdown.norm_dist.clone(),
            ));
            entropy_tables.push(Table::row(
                "entropy",
                "E",
                attr_names.clone(),
                breakdown.entropy.clone(),
            ));
            (breakdown.weights, "entropy")
        }
    };
    entropy_tables.push(Table::row(
        "attribute_weights",
        "w",
        attr_names,
        weights.as_slice().to_vec(),
    ));
    Ok(Prepared {
        normalized,
        weights,
        weight_source,
        entropy_tables,
    })
}

fn ranking_labels(problem: &Problem, ranking: &[usize]) -> Vec<String> {
    ranking
        .iter()
        .map(|&i| problem.alternatives[i].clone())
        .collect()
}

/// Execute the problem's selected method.
pub fn run(problem: &Problem) -> Result<Report> {
    run_with_method(problem, problem.method)
}

/// Execute a specific method regardless of the problem's selection.
pub fn run_with_method(problem: &Problem, method: MethodId) -> Result<Report> {
    let prepared = prepare(problem)?;
    let attr_names: Vec<String> = problem.attributes.iter().map(|a| a.name.clone()).collect();
    let alt_names = problem.alternatives.clone();
    let m = &prepared.normalized;

    let mut tables = vec![Table::from_ivifn_rows(
        "normalized_matrix",
        alt_names.clone(),
        &attr_names,
        &(0..m.cells.rows())
            .map(|r| m.cells.row(r).to_vec())
            .collect::<Vec<_>>(),
    )];
    tables.extend(prepared.entropy_tables.iter().cloned());

    let mut metadata = Metadata {
        cpt: problem.cpt,
        weight_source: prepared.weight_source.into(),
        attribute_weights: prepared.weights.as_slice().to_vec(),
        topsis_form: None,
        flags: Vec::new(),
    };

    let (scores, ranking) = match method {
        MethodId::Edas => {
            let trace = score_and_rank(m, &prepared.weights, &problem.cpt)
                .map_err(|e| e.at_stage("edas"))?;
            push_edas_tables(&mut tables, &trace, &alt_names, &attr_names);
            if trace.sp.iter().all(|&v| v == 0.0) {
                metadata.flags.push("all-positive-distances-zero".into());
            }
            if trace.sn.iter().all(|&v| v == 0.0) {
                metadata.flags.push("all-negative-distances-zero".into());
            }
            (trace.scores.clone(), trace.ranking.clone())
        }
        MethodId::Ivifwa => {
            let res = ivifwa_rank(m, &prepared.weights).map_err(|e| e.at_stage("ivifwa"))?;
            tables.push(Table::from_ivifn_rows(
                "aggregates",
                alt_names.clone(),
                &["value".to_string()],
                &res.aggregate.iter().map(|&x| vec![x]).collect::<Vec<_>>(),
            ));
            tables.push(Table::new(
                "score_accuracy",
                alt_names.clone(),
                vec!["sf".into(), "af".into()],
                res.sf
                    .iter()
                    .zip(res.af.iter())
                    .map(|(&s, &a)| vec![s, a])
                    .collect(),
            ));
            (res.sf.clone(), res.ranking.clone())
        }
        MethodId::Topsis => {
            let res = topsis(m, &problem.attributes, &prepared.weights)
                .map_err(|e| e.at_stage("topsis"))?;
            metadata.topsis_form = Some(res.form.as_str().into());
            if res.degenerate {
                metadata.flags.push("topsis-degenerate".into());
            }
            tables.push(Table::new(
                "closeness",
                alt_names.clone(),
                vec!["d_plus".into(), "d_minus".into(), "closeness".into()],
                res.d_plus
                    .iter()
                    .zip(res.d_minus.iter())
                    .zip(res.closeness.iter())
                    .map(|((&p, &m_), &c)| vec![p, m_, c])
                    .collect(),
            ));
            (res.closeness.clone(), res.ranking.clone())
        }
        MethodId::Taxonomy => {
            let res = taxonomy_with(m, &prepared.weights, TaxonomyOptions::default())
                .map_err(|e| e.at_stage("taxonomy"))?;
            for (i, &f) in res.flagged.iter().enumerate() {
                if f {
                    metadata
                        .flags
                        .push(format!("taxonomy-inhomogeneous:{}", alt_names[i]));
                }
            }
            tables.push(Table::new(
                "pairwise_distances",
                alt_names.clone(),
                alt_names.clone(),
                res.dist_matrix.clone(),
            ));
            tables.push(Table::new(
                "development",
                alt_names.clone(),
                vec!["k_ro".into(), "development".into()],
                res.k_ro
                    .iter()
                    .zip(res.development.iter())
                    .map(|(&k, &d)| vec![k, d])
                    .collect(),
            ));
            (res.development.clone(), res.ranking.clone())
        }
        MethodId::Todim => {
            let res =
                todim(m, &prepared.weights, DEFAULT_THETA).map_err(|e| e.at_stage("todim"))?;
            if res.degenerate {
                metadata.flags.push("todim-degenerate".into());
            }
            tables.push(Table::new(
                "dominance",
                alt_names.clone(),
                alt_names.clone(),
                res.dominance.clone(),
            ));
            tables.push(Table::new(
                "dominance_xi",
                alt_names.clone(),
                vec!["xi".into()],
                res.xi.iter().map(|&x| vec![x]).collect(),
            ));
            (res.xi.clone(), res.ranking.clone())
        }
    };

    tables.push(Table::row(
        "scores",
        "value",
        alt_names.clone(),
        scores.clone(),
    ));

    Ok(Report {
        method: method.as_str().into(),
        ranking: ranking_labels(problem, &ranking),
        scores,
        metadata,
        tables,
    })
}

fn push_edas_tables(
    tables: &mut Vec<Table>,
    trace: &EdasTrace,
    alt_names: &[String],
    attr_names: &[String],
) {
    let alts = alt_names.to_vec();
    tables.push(Table::from_ivifn_rows(
        "average_solution",
        vec!["AV".into()],
        attr_names,
        std::slice::from_ref(&trace.avg),
    ));
    tables.push(Table::new(
        "relative_weights",
        alts.clone(),
        attr_names.to_vec(),
        trace.rel_weights.clone(),
    ));
    tables.push(Table::new(
        "pda",
        alts.clone(),
        attr_names.to_vec(),
        trace.pda.clone(),
    ));
    tables.push(Table::new(
        "nda",
        alts.clone(),
        attr_names.to_vec(),
        trace.nda.clone(),
    ));
    tables.push(Table::new(
        "weighted_distance_sums",
        alts.clone(),
        vec!["sp".into(), "sn".into()],
        trace
            .sp
            .iter()
            .zip(trace.sn.iter())
            .map(|(&p, &n)| vec![p, n])
            .collect(),
    ));
    tables.push(Table::new(
        "normalized_weighted_distances",
        alts,
        vec!["nsp".into(), "nsn".into()],
        trace
            .nsp
            .iter()
            .zip(trace.nsn.iter())
            .map(|(&p, &n)| vec![p, n])
            .collect(),
    ));
}

/// One grid point of a sensitivity sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub scores: Vec<f64>,
    pub ranking: Vec<String>,
}

/// Re-score the problem once per grid value, all other parameters at the
/// problem's defaults. Values are validated before any run; the sweep
/// always exercises the CPT-EDAS method (the swept parameters exist only
/// there). Grid points are independent and may run in parallel; output
/// order follows the input grid.
pub fn sweep(problem: &Problem, param: SweepParam, values: &[f64]) -> Result<Vec<SweepPoint>> {
    sweep_impl(problem, param, values, false)
}

/// Always-sequential twin of [`sweep`]; the baseline for benchmarks and
/// the behavior of builds without the `parallel` feature.
pub fn sweep_seq(problem: &Problem, param: SweepParam, values: &[f64]) -> Result<Vec<SweepPoint>> {
    sweep_impl(problem, param, values, true)
}

fn sweep_impl(
    problem: &Problem,
    param: SweepParam,
    values: &[f64],
    force_seq: bool,
) -> Result<Vec<SweepPoint>> {
    for &v in values {
        param.check(v)?;
    }
    let prepared = prepare(problem)?;
    let m = &prepared.normalized;
    let eval = |&value: &f64| -> Result<SweepPoint> {
        let params = param.apply(&problem.cpt, value);
        let trace = score_and_rank(m, &prepared.weights, &params)?;
        Ok(SweepPoint {
            value,
            scores: trace.scores,
            ranking: ranking_labels(problem, &trace.ranking),
        })
    };
    let points = if force_seq {
        par::map_indices_seq(values.len(), |i| eval(&values[i]))
    } else {
        par::map_indices(values.len(), |i| eval(&values[i]))
    };
    points.into_iter().collect()
}

/// Plot-ready CSV for a sweep: one row per grid value.
pub fn sweep_to_csv(param: SweepParam, alternatives: &[String], points: &[SweepPoint]) -> String {
    let mut out = String::from(param.as_str());
    for a in alternatives {
        out.push(',');
        out.push_str(a);
    }
    out.push_str(",ranking\n");
    for p in points {
        out.push_str(&format!("{}", p.value));
        for s in &p.scores {
            out.push_str(&format!(",{s}"));
        }
        out.push(',');
        out.push_str(&p.ranking.join(">"));
        out.push('\n');
    }
    out
}
