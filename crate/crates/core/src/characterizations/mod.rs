//! Closed-form classifiers for the catalog graphs.
//!
//! Every classifier returns a [`Classification`] naming the rule that decided it. Only the
//! H1 classifier may answer [`Verdict::Unknown`]; its rule set is knowingly incomplete.

mod g4;
mod h1;
mod simple;
mod special;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GraphId, GraphTopology, WeightConfig};
use crate::nim::{self, NimTuple};
use crate::solver::Outcome;

pub use g4::classify_g4;
pub use h1::{
    bit_profile, classify_h1, decompose, h1_losing_matches, h1_rule_matches, h1_winning_rules,
    H1BitProfile, H1Decomposition, H1Trace, LosingMatch,
};
pub use simple::{classify_allwin, classify_f1, classify_f2, classify_triangle};
pub use special::{is_k_special, is_special, k_range, special_witness, SpecialWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Winning,
    Losing,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Winning => "Winning",
            Verdict::Losing => "Losing",
            Verdict::Unknown => "Unknown",
        }
    }

    /// Whether a decided verdict agrees with the oracle; `None` for `Unknown`.
    pub fn agrees_with(self, outcome: Outcome) -> Option<bool> {
        match self {
            Verdict::Winning => Some(outcome == Outcome::Winning),
            Verdict::Losing => Some(outcome == Outcome::Losing),
            Verdict::Unknown => None,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Winning" => Ok(Verdict::Winning),
            "Losing" => Ok(Verdict::Losing),
            "Unknown" => Ok(Verdict::Unknown),
            other => Err(Error::Report(format!("unknown verdict `{other}`"))),
        }
    }
}

/// Stable rule identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "nim-balanced")]
    NimBalanced,
    #[serde(rename = "galaxy-1")]
    Galaxy1,
    #[serde(rename = "galaxy-2")]
    Galaxy2,
    #[serde(rename = "galaxy-3")]
    Galaxy3,
    #[serde(rename = "galaxy-4")]
    Galaxy4,
    #[serde(rename = "galaxy-5")]
    Galaxy5,
    #[serde(rename = "triangle")]
    Triangle,
    #[serde(rename = "F1")]
    F1,
    #[serde(rename = "F2")]
    F2,
    #[serde(rename = "allwin-G1")]
    AllWinG1,
    #[serde(rename = "allwin-G2")]
    AllWinG2,
    #[serde(rename = "allwin-G3")]
    AllWinG3,
    #[serde(rename = "G4-A1")]
    G4A1,
    #[serde(rename = "G4-A2")]
    G4A2,
    #[serde(rename = "G4-win")]
    G4Win,
    #[serde(rename = "H1-W-EF0")]
    H1WEf0,
    #[serde(rename = "H1-W-L1a")]
    H1WL1a,
    #[serde(rename = "H1-W-L1b")]
    H1WL1b,
    #[serde(rename = "H1-W-T1")]
    H1WT1,
    #[serde(rename = "H1-W-L2")]
    H1WL2,
    #[serde(rename = "H1-W-L3")]
    H1WL3,
    #[serde(rename = "H1-L-B1")]
    H1LB1,
    #[serde(rename = "H1-L-B2")]
    H1LB2,
    #[serde(rename = "H1-L-B3")]
    H1LB3,
    #[serde(rename = "H1-L-B4")]
    H1LB4,
    #[serde(rename = "H1-unknown")]
    H1Unknown,
}

impl RuleId {
    pub const H1_WINNING: [RuleId; 6] = [
        RuleId::H1WEf0,
        RuleId::H1WL1a,
        RuleId::H1WL1b,
        RuleId::H1WT1,
        RuleId::H1WL2,
        RuleId::H1WL3,
    ];
    pub const H1_LOSING: [RuleId; 4] = [RuleId::H1LB1, RuleId::H1LB2, RuleId::H1LB3, RuleId::H1LB4];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::NimBalanced => "nim-balanced",
            RuleId::Galaxy1 => "galaxy-1",
            RuleId::Galaxy2 => "galaxy-2",
            RuleId::Galaxy3 => "galaxy-3",
            RuleId::Galaxy4 => "galaxy-4",
            RuleId::Galaxy5 => "galaxy-5",
            RuleId::Triangle => "triangle",
            RuleId::F1 => "F1",
            RuleId::F2 => "F2",
            RuleId::AllWinG1 => "allwin-G1",
            RuleId::AllWinG2 => "allwin-G2",
            RuleId::AllWinG3 => "allwin-G3",
            RuleId::G4A1 => "G4-A1",
            RuleId::G4A2 => "G4-A2",
            RuleId::G4Win => "G4-win",
            RuleId::H1WEf0 => "H1-W-EF0",
            RuleId::H1WL1a => "H1-W-L1a",
            RuleId::H1WL1b => "H1-W-L1b",
            RuleId::H1WT1 => "H1-W-T1",
            RuleId::H1WL2 => "H1-W-L2",
            RuleId::H1WL3 => "H1-W-L3",
            RuleId::H1LB1 => "H1-L-B1",
            RuleId::H1LB2 => "H1-L-B2",
            RuleId::H1LB3 => "H1-L-B3",
            RuleId::H1LB4 => "H1-L-B4",
            RuleId::H1Unknown => "H1-unknown",
        }
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Structured evidence behind a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Trace {
    Piles { piles: NimTuple },
    Special(SpecialWitness),
    H1(Box<H1Trace>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub rule: RuleId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Trace>,
}

impl Classification {
    pub fn new(verdict: Verdict, rule: RuleId, trace: Option<Trace>) -> Self {
        Self { verdict, rule, trace }
    }

    fn bare(verdict: Verdict, rule: RuleId) -> Self {
        Self::new(verdict, rule, None)
    }
}

pub(crate) fn require_positive(topology: &GraphTopology, config: &WeightConfig) -> Result<()> {
    config.validate(topology)?;
    if let Some(e) = config.weights().iter().position(|&w| w == 0) {
        return Err(Error::InvalidConfig(format!(
            "edge {} has weight 0; initial weights must be strictly positive",
            topology.edge_name(e)
        )));
    }
    Ok(())
}

/// Routes a catalog configuration to its classifier.
pub fn classify(id: GraphId, config: &WeightConfig) -> Result<Classification> {
    match id {
        GraphId::G1 | GraphId::H2 | GraphId::H3 | GraphId::I1 | GraphId::I2 => nim::classify_galaxy(id, config),
        GraphId::F1 => classify_f1(config),
        GraphId::F2 => classify_f2(config),
        GraphId::G2 | GraphId::G3 => classify_allwin(id, config),
        GraphId::G4 => classify_g4(config),
        GraphId::H1 => classify_h1(config),
    }
}

/// Like [`classify`] but rejects custom topologies.
pub fn classify_topology(topology: &GraphTopology, config: &WeightConfig) -> Result<Classification> {
    match topology.id() {
        Some(id) => classify(id, config),
        None => Err(Error::Unsupported),
    }
}

/// Classifies a mid-game position, where some edges may already be empty.
///
/// Positive configurations go through [`classify`]. Otherwise the empty edges are dropped:
/// a residual galaxy is decided by the Nim criterion and a residual lone triangle by the
/// triangle rule. Returns `None` when no closed-form rule covers the residual graph.
pub fn classify_position(id: GraphId, config: &WeightConfig) -> Result<Option<Classification>> {
    let topology = GraphTopology::catalog(id);
    config.validate(&topology)?;
    let w = config.weights();
    let h1_ef0 = id == GraphId::H1 && w[..3].iter().all(|&x| x > 0);
    if config.all_positive() || h1_ef0 {
        return classify(id, config).map(Some);
    }
    if let Ok(decomposition) = nim::residual_decompose(&topology, config) {
        return Ok(Some(nim::nim_verdict(RuleId::NimBalanced, decomposition.pile_sums)));
    }
    let live: Vec<usize> = (0..w.len()).filter(|&e| w[e] > 0).collect();
    if live.len() == 3 && is_triangle(&topology, &live) {
        return classify_triangle([w[live[0]], w[live[1]], w[live[2]]]).map(Some);
    }
    Ok(None)
}

fn is_triangle(topology: &GraphTopology, edges: &[usize]) -> bool {
    let mut degree = std::collections::HashMap::new();
    for &e in edges {
        for &v in &topology.edges()[e] {
            *degree.entry(v).or_insert(0) += 1;
        }
    }
    degree.len() == 3 && degree.values().all(|&d| d == 2)
}
