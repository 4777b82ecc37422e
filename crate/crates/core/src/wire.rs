//! JSON shapes exchanged with the HTTP service.
//!
//! Configurations travel as `{ "graph": "H1", "weights": { "AB": 2, ... } }` and moves as
//! `{ "vertex": "C", "removals": { "BC": 1, "CD": 9 } }`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::characterizations::{classify_position, Classification, Verdict};
use crate::error::{Error, Result};
use crate::game::{GraphId, GraphTopology, Move, WeightConfig};
use crate::solver::{Outcome, Solver};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigWire {
    pub graph: String,
    pub weights: BTreeMap<String, u32>,
}

impl ConfigWire {
    pub fn new(topology: &GraphTopology, config: &WeightConfig) -> Self {
        Self {
            graph: topology.name().to_string(),
            weights: named_weights(topology, config),
        }
    }

    pub fn catalog(id: GraphId, weights: &[u32]) -> Self {
        Self::new(&GraphTopology::catalog(id), &WeightConfig::new(weights.to_vec()))
    }

    /// Resolves the catalog graph and validates the weights against it.
    pub fn resolve(&self) -> Result<(GraphId, GraphTopology, WeightConfig)> {
        let id: GraphId = self.graph.parse()?;
        let topology = GraphTopology::catalog(id);
        let config = topology.config_from_named(self.weights.iter().map(|(k, &v)| (k.as_str(), v)))?;
        Ok((id, topology, config))
    }
}

pub fn named_weights(topology: &GraphTopology, config: &WeightConfig) -> BTreeMap<String, u32> {
    config
        .weights()
        .iter()
        .enumerate()
        .map(|(e, &w)| (topology.edge_name(e), w))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveWire {
    pub vertex: String,
    pub removals: BTreeMap<String, u32>,
}

impl MoveWire {
    /// Zero removals are omitted.
    pub fn new(topology: &GraphTopology, mv: &Move) -> Self {
        Self {
            vertex: topology.vertices()[mv.vertex].to_string(),
            removals: mv
                .removals
                .iter()
                .filter(|&&(_, r)| r > 0)
                .map(|&(e, r)| (topology.edge_name(e), r))
                .collect(),
        }
    }

    pub fn resolve(&self, topology: &GraphTopology) -> Result<Move> {
        let mut chars = self.vertex.trim().chars();
        let vertex = match (chars.next(), chars.next()) {
            (Some(c), None) => topology.vertex_index(c),
            _ => None,
        }
        .ok_or_else(|| Error::IllegalMove(format!("unknown vertex `{}`", self.vertex)))?;
        let mut removals = self
            .removals
            .iter()
            .map(|(name, &r)| {
                topology
                    .edge_by_name(name)
                    .map(|e| (e, r))
                    .ok_or_else(|| Error::IllegalMove(format!("unknown edge `{name}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        removals.sort_unstable();
        Ok(Move { vertex, removals })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierWire {
    pub verdict: Verdict,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<serde_json::Value>,
}

impl From<&Classification> for ClassifierWire {
    fn from(c: &Classification) -> Self {
        Self {
            verdict: c.verdict,
            rule: c.rule.to_string(),
            trace: c.trace.as_ref().and_then(|t| serde_json::to_value(t).ok()),
        }
    }
}

/// Analysis of one position from the perspective of the player to move.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub graph: String,
    pub weights: BTreeMap<String, u32>,
    pub oracle: Outcome,
    /// `null` when no closed-form rule covers the position; only the search decided it.
    pub classifier: Option<ClassifierWire>,
    pub optimal_move: Option<MoveWire>,
    pub terminal: bool,
}

impl Analysis {
    /// Solves the position and attaches whichever closed-form rule covers it.
    pub fn compute(solver: &Solver, config: &WeightConfig) -> Result<Self> {
        let topology = solver.topology();
        let oracle = solver.solve(config)?;
        let classifier = match topology.id() {
            Some(id) => classify_position(id, config)?.as_ref().map(ClassifierWire::from),
            None => None,
        };
        let optimal_move = solver.optimal_move(config)?.map(|mv| MoveWire::new(topology, &mv));
        Ok(Self {
            graph: topology.name().to_string(),
            weights: named_weights(topology, config),
            oracle,
            classifier,
            optimal_move,
            terminal: config.is_terminal(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Human,
    Engine,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Human => Player::Engine,
            Player::Engine => Player::Human,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewSessionRequest {
    pub graph: String,
    pub weights: BTreeMap<String, u32>,
    #[serde(default = "default_first")]
    pub first: Player,
}

fn default_first() -> Player {
    Player::Human
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub player: Player,
    #[serde(rename = "move")]
    pub mv: MoveWire,
    pub weights_after: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionState {
    pub id: String,
    pub graph: String,
    pub initial: BTreeMap<String, u32>,
    pub weights: BTreeMap<String, u32>,
    pub turn: Player,
    pub history: Vec<HistoryEntry>,
    /// The engine's reply to the request that produced this state, if any.
    pub engine_move: Option<MoveWire>,
    pub analysis: Analysis,
    pub game_over: bool,
    pub winner: Option<Player>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub id: String,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub automorphisms: usize,
}

impl GraphInfo {
    pub fn new(id: GraphId) -> Self {
        let topology = GraphTopology::catalog(id);
        Self {
            id: id.to_string(),
            vertices: topology.vertices().iter().map(char::to_string).collect(),
            edges: topology.edge_names(),
            automorphisms: crate::game::automorphism_edge_perms(id).len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    pub message: String,
}
