//! Nim arithmetic and the reduction of galaxy graphs to Nim.

use serde::{Deserialize, Serialize};

use crate::characterizations::{Classification, RuleId, Trace, Verdict};
use crate::error::{Error, Result};
use crate::game::{GraphId, GraphTopology, WeightConfig};

/// Nim pile sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NimTuple(pub Vec<u64>);

impl NimTuple {
    pub fn piles(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for NimTuple {
    fn from(piles: Vec<u64>) -> Self {
        Self(piles)
    }
}

pub fn nim_sum(piles: &NimTuple) -> u64 {
    piles.0.iter().fold(0, |acc, &p| acc ^ p)
}

/// A tuple is balanced when every binary digit column has an even sum.
pub fn is_balanced(piles: &NimTuple) -> bool {
    nim_sum(piles) == 0
}

/// The exponent `f` with `2^f <= k < 2^(f+1)`.
pub fn f_exp(k: u64) -> Result<u32> {
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    Ok(63 - k.leading_zeros())
}

/// One star of a galaxy graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Star {
    pub centre: usize,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarDecomposition {
    pub components: Vec<Star>,
    pub pile_sums: NimTuple,
}

/// Splits the edge set into connected components (ordered by smallest edge index).
fn edge_components(topology: &GraphTopology, include: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let n = topology.edge_count();
    let mut component = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in (0..n).filter(|&e| include(e)) {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        component[start] = id;
        while let Some(e) = stack.pop() {
            members.push(e);
            for &v in &topology.edges()[e] {
                for &f in topology.incident(v) {
                    if include(f) && component[f] == usize::MAX {
                        component[f] = id;
                        stack.push(f);
                    }
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn star_centre(topology: &GraphTopology, edges: &[usize]) -> Option<usize> {
    let [u, v] = topology.edges()[edges[0]];
    [u, v]
        .into_iter()
        .find(|&c| edges.iter().all(|&e| topology.edges()[e].contains(&c)))
}

fn decompose_edges(
    topology: &GraphTopology,
    config: &WeightConfig,
    include: impl Fn(usize) -> bool,
) -> Result<StarDecomposition> {
    let mut components = Vec::new();
    let mut piles = Vec::new();
    for edges in edge_components(topology, include) {
        let centre = star_centre(topology, &edges).ok_or_else(|| {
            let names: Vec<_> = edges.iter().map(|&e| topology.edge_name(e)).collect();
            Error::NotGalaxy(format!("component {{{}}} is not a star", names.join(",")))
        })?;
        piles.push(edges.iter().map(|&e| u64::from(config.weights()[e])).sum());
        components.push(Star { centre, edges });
    }
    Ok(StarDecomposition {
        components,
        pile_sums: NimTuple(piles),
    })
}

/// Star decomposition of a galaxy graph; zero-weight edges stay in their component.
pub fn galaxy_decompose(topology: &GraphTopology, config: &WeightConfig) -> Result<StarDecomposition> {
    config.validate(topology)?;
    decompose_edges(topology, config, |_| true)
}

/// Decomposition of the subgraph formed by the positive-weight edges only.
pub(crate) fn residual_decompose(topology: &GraphTopology, config: &WeightConfig) -> Result<StarDecomposition> {
    decompose_edges(topology, config, |e| config.weights()[e] > 0)
}

fn galaxy_item(id: GraphId) -> Option<RuleId> {
    match id {
        GraphId::G1 => Some(RuleId::Galaxy1),
        GraphId::H2 => Some(RuleId::Galaxy2),
        GraphId::H3 => Some(RuleId::Galaxy3),
        GraphId::I1 => Some(RuleId::Galaxy4),
        GraphId::I2 => Some(RuleId::Galaxy5),
        _ => None,
    }
}

/// Losing iff the per-star weight sums are balanced.
pub fn classify_galaxy(id: GraphId, config: &WeightConfig) -> Result<Classification> {
    let rule = galaxy_item(id).ok_or_else(|| Error::Dispatch {
        classifier: "galaxy",
        graph: id.to_string(),
    })?;
    let topology = GraphTopology::catalog(id);
    crate::characterizations::require_positive(&topology, config)?;
    let decomposition = galaxy_decompose(&topology, config)?;
    Ok(nim_verdict(rule, decomposition.pile_sums))
}

pub(crate) fn nim_verdict(rule: RuleId, piles: NimTuple) -> Classification {
    let verdict = if is_balanced(&piles) {
        Verdict::Losing
    } else {
        Verdict::Winning
    };
    Classification::new(verdict, rule, Some(Trace::Piles { piles }))
}
