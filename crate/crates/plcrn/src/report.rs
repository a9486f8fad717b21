//! Machine-readable analysis reports.
//!
//! The JSON schema, with deterministic key order:
//!
//! ```json
//! {
//!   "network": {"m": 2, "n": 6, "r": 4, "ell": 2, "rank_N": 2, "deficiency": 2},
//!   "plrdk": true,
//!   "decomposition": {"num_blocks": 2, "blocks": [["R1", "R2"], ["R3", "R4"]], "independent": true},
//!   "t_hat": {"rank": 3, "sub_ranks": [2, 2], "independent": false, "shared_reactants": false},
//!   "verdict": "conditions_not_met",
//!   "steady_states": [
//!     {"scope": "block_0", "status": "found", "x": [...], "residual": 1e-16},
//!     {"scope": "whole", "status": "conditions_not_met", "x": [...], "residual": 1e-16}
//!   ]
//! }
//! ```
//!
//! `decomposition`, `t_hat`, `verdict`, and `steady_states` appear only
//! for the commands that compute them; `t_hat` is `null` when the
//! kinetics are not reactant-determined. `shared_reactants` flags
//! networks where a reactant complex spans several blocks, where the
//! single-column whole-network rank can undercount the per-block stacked
//! construction.

use serde::Serialize;

use crate::decomp::IndependenceReport;
use crate::parse::ParsedSystem;
use crate::steady::{BlockSolve, Verdict, WholeOutcome};

#[derive(Debug, Clone, Serialize)]
pub struct NetworkSummary {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub ell: usize,
    #[serde(rename = "rank_N")]
    pub rank_n: usize,
    pub deficiency: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionSummary {
    pub num_blocks: usize,
    pub blocks: Vec<Vec<String>>,
    pub independent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct THatSummary {
    pub rank: usize,
    pub sub_ranks: Vec<usize>,
    pub independent: bool,
    pub shared_reactants: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SteadyStateEntry {
    pub scope: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

/// Top-level report; field order is the serialized key order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub network: NetworkSummary,
    pub plrdk: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSummary>,
    /// `Some(None)` serializes as an explicit `null` for non-RDK systems.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_hat: Option<Option<THatSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steady_states: Option<Vec<SteadyStateEntry>>,
}

fn network_summary(parsed: &ParsedSystem) -> NetworkSummary {
    let net = parsed.system.network();
    NetworkSummary {
        m: net.num_species(),
        n: net.num_complexes(),
        r: net.num_reactions(),
        ell: net.num_linkage_classes(),
        rank_n: net.stoichiometric_matrix().rank(),
        deficiency: net.deficiency().expect("deficiency is nonnegative"),
    }
}

fn decomposition_summary(
    parsed: &ParsedSystem,
    report: &IndependenceReport,
) -> DecompositionSummary {
    DecompositionSummary {
        num_blocks: report.decomposition.num_blocks(),
        blocks: report
            .decomposition
            .blocks()
            .iter()
            .map(|block| block.iter().map(|&r| parsed.labels[r].clone()).collect())
            .collect(),
        independent: report.stoich_independent,
    }
}

fn t_hat_summary(report: &IndependenceReport) -> Option<THatSummary> {
    report.t_hat.as_ref().map(|t| THatSummary {
        rank: t.rank_whole,
        sub_ranks: t.rank_blocks.clone(),
        independent: t.independent,
        shared_reactants: t.shared_reactants,
    })
}

fn block_entry(scope: String, solve: &BlockSolve) -> SteadyStateEntry {
    match solve {
        BlockSolve::Found { x, residual } => SteadyStateEntry {
            scope,
            status: "found".into(),
            x: Some(x.clone()),
            residual: Some(*residual),
        },
        BlockSolve::NotFound { best_residual } => SteadyStateEntry {
            scope,
            status: "not_found".into(),
            x: None,
            residual: Some(*best_residual),
        },
    }
}

impl Report {
    /// Structural summary only (`analyze`).
    pub fn analyze(parsed: &ParsedSystem) -> Report {
        Report {
            network: network_summary(parsed),
            plrdk: parsed.system.is_plrdk(),
            decomposition: None,
            t_hat: None,
            verdict: None,
            steady_states: None,
        }
    }

    /// Structural summary plus decomposition and rank checks (`decompose`).
    pub fn decompose(parsed: &ParsedSystem, report: &IndependenceReport) -> Report {
        Report {
            network: network_summary(parsed),
            plrdk: parsed.system.is_plrdk(),
            decomposition: Some(decomposition_summary(parsed, report)),
            t_hat: Some(t_hat_summary(report)),
            verdict: None,
            steady_states: None,
        }
    }

    /// Full report including solver results (`check`, `solve`).
    pub fn full(parsed: &ParsedSystem, verdict: &Verdict) -> Report {
        let mut steady_states: Vec<SteadyStateEntry> = verdict
            .per_block
            .iter()
            .enumerate()
            .map(|(i, solve)| block_entry(format!("block_{i}"), solve))
            .collect();
        let (verdict_str, whole_entry) = match &verdict.whole {
            WholeOutcome::Nonempty { witness, residual } => (
                "nonempty",
                SteadyStateEntry {
                    scope: "whole".into(),
                    status: "nonempty".into(),
                    x: Some(witness.clone()),
                    residual: Some(*residual),
                },
            ),
            WholeOutcome::NoWitnessFound => (
                "no_witness_found",
                SteadyStateEntry {
                    scope: "whole".into(),
                    status: "no_witness_found".into(),
                    x: None,
                    residual: None,
                },
            ),
            WholeOutcome::ConditionsNotMet { direct } => {
                let mut entry = block_entry("whole".into(), direct);
                entry.status = "conditions_not_met".into();
                ("conditions_not_met", entry)
            }
        };
        steady_states.push(whole_entry);
        Report {
            network: network_summary(parsed),
            plrdk: parsed.system.is_plrdk(),
            decomposition: Some(decomposition_summary(parsed, &verdict.report)),
            t_hat: Some(t_hat_summary(&verdict.report)),
            verdict: Some(verdict_str.into()),
            steady_states: Some(steady_states),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
