//! Memoized retrograde evaluation under normal play.
//!
//! A position is losing for the player to move iff every successor is winning;
//! the all-zero position has no successors and is therefore losing.

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{
    enumerate_moves, for_each_removal, topology_automorphisms, EdgePermutation, GraphTopology, Move,
    WeightConfig, MAX_WEIGHT,
};

/// Per-edge weight cap used by [`Solver::new`].
pub const DEFAULT_WEIGHT_CAP: u32 = 32;

const KEY_BITS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Winning,
    Losing,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Winning => "Winning",
            Outcome::Losing => "Losing",
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Canonical weight vector packed 16 bits per edge, edge 0 most significant, so that
/// numeric order on keys is lexicographic order on weight vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey(u128);

impl StateKey {
    pub fn raw(self) -> u128 {
        self.0
    }

    fn pack_permuted(weights: &[u32], perm: &EdgePermutation) -> Self {
        let n = weights.len();
        let mut key = 0u128;
        for (e, &w) in weights.iter().enumerate() {
            key |= u128::from(w) << (KEY_BITS * (n - 1 - perm.images()[e]));
        }
        StateKey(key)
    }
}

/// Retrograde solver for one topology. The memo table is shared across threads.
pub struct Solver {
    topology: GraphTopology,
    group: Vec<EdgePermutation>,
    weight_cap: u32,
    memo: DashMap<StateKey, bool>,
}

impl Solver {
    pub fn new(topology: GraphTopology) -> Self {
        let group = topology_automorphisms(&topology);
        Self {
            topology,
            group,
            weight_cap: DEFAULT_WEIGHT_CAP,
            memo: DashMap::new(),
        }
    }

    /// Raises or lowers the per-edge cap (clamped to [`MAX_WEIGHT`]).
    pub fn with_weight_cap(mut self, cap: u32) -> Self {
        self.weight_cap = cap.min(MAX_WEIGHT);
        self
    }

    pub fn topology(&self) -> &GraphTopology {
        &self.topology
    }

    pub fn weight_cap(&self) -> u32 {
        self.weight_cap
    }

    /// Number of memoized states.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// The memo key: the least packed vector over the automorphism orbit.
    pub fn key(&self, weights: &[u32]) -> StateKey {
        self.group
            .iter()
            .map(|p| StateKey::pack_permuted(weights, p))
            .min()
            .expect("group contains the identity")
    }

    fn check(&self, config: &WeightConfig) -> Result<()> {
        config.validate(&self.topology)?;
        if let Some(w) = config.weights().iter().find(|&&w| w > self.weight_cap) {
            return Err(Error::Capacity(format!(
                "weight {w} above the solver cap of {}",
                self.weight_cap
            )));
        }
        Ok(())
    }

    pub fn solve(&self, config: &WeightConfig) -> Result<Outcome> {
        self.check(config)?;
        Ok(if self.is_winning(config.weights()) {
            Outcome::Winning
        } else {
            Outcome::Losing
        })
    }

    /// First move in enumeration order that leaves the opponent losing; `None` from losing
    /// or terminal positions.
    pub fn optimal_move(&self, config: &WeightConfig) -> Result<Option<Move>> {
        if self.solve(config)? == Outcome::Losing {
            return Ok(None);
        }
        let mut scratch = config.weights().to_vec();
        Ok(enumerate_moves(&self.topology, config).into_iter().find(|mv| {
            scratch.copy_from_slice(config.weights());
            for &(e, r) in &mv.removals {
                scratch[e] -= r;
            }
            !self.is_winning(&scratch)
        }))
    }

    /// The engine's choice: an optimal move when one exists, otherwise the legal move that
    /// leaves the least total weight (first in enumeration order on ties). `None` only at
    /// the terminal position.
    pub fn engine_move(&self, config: &WeightConfig) -> Result<Option<Move>> {
        if let Some(mv) = self.optimal_move(config)? {
            return Ok(Some(mv));
        }
        Ok(enumerate_moves(&self.topology, config)
            .into_iter()
            .rev()
            .max_by_key(Move::total))
    }

    fn is_winning(&self, weights: &[u32]) -> bool {
        let key = self.key(weights);
        if let Some(hit) = self.memo.get(&key) {
            return *hit;
        }
        let mut succ = weights.to_vec();
        let mut winning = false;
        for vertex in 0..self.topology.vertices().len() {
            let incident = self.topology.incident(vertex);
            let finished = !for_each_removal(&self.topology, weights, vertex, |removal| {
                for (&e, &r) in incident.iter().zip(removal) {
                    succ[e] = weights[e] - r;
                }
                let found = !self.is_winning(&succ);
                for &e in incident {
                    succ[e] = weights[e];
                }
                winning = found;
                !found
            });
            if finished {
                break;
            }
        }
        self.memo.insert(key, winning);
        winning
    }
}

/// One-shot solve with a fresh memo table.
pub fn solve(topology: &GraphTopology, config: &WeightConfig) -> Result<Outcome> {
    Solver::new(topology.clone())
        .with_weight_cap(MAX_WEIGHT)
        .solve(config)
}

/// One-shot optimal move with a fresh memo table.
pub fn optimal_move(topology: &GraphTopology, config: &WeightConfig) -> Result<Option<Move>> {
    Solver::new(topology.clone())
        .with_weight_cap(MAX_WEIGHT)
        .optimal_move(config)
}
