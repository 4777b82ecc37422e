//! Graph topologies, weight configurations and the move rules.
//!
//! A move picks one vertex and removes a non-negative amount from every edge
//! incident on it, with a strictly positive total. The player who makes the
//! last move wins.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest per-edge weight accepted at any API boundary.
pub const MAX_WEIGHT: u32 = u16::MAX as u32;

/// Largest number of edges a topology may have.
pub const MAX_EDGES: usize = 8;

/// The eleven graphs with exactly four edges and no isolated vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphId {
    F1,
    F2,
    G1,
    G2,
    G3,
    G4,
    H1,
    H2,
    H3,
    I1,
    I2,
}

impl GraphId {
    pub const ALL: [GraphId; 11] = [
        GraphId::F1,
        GraphId::F2,
        GraphId::G1,
        GraphId::G2,
        GraphId::G3,
        GraphId::G4,
        GraphId::H1,
        GraphId::H2,
        GraphId::H3,
        GraphId::I1,
        GraphId::I2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphId::F1 => "F1",
            GraphId::F2 => "F2",
            GraphId::G1 => "G1",
            GraphId::G2 => "G2",
            GraphId::G3 => "G3",
            GraphId::G4 => "G4",
            GraphId::H1 => "H1",
            GraphId::H2 => "H2",
            GraphId::H3 => "H3",
            GraphId::I1 => "I1",
            GraphId::I2 => "I2",
        }
    }

    /// Edge labels in their canonical (wire) order.
    pub fn edge_names(self) -> [&'static str; 4] {
        match self {
            GraphId::F1 => ["AB", "BC", "CD", "DA"],
            GraphId::F2 => ["AB", "BC", "CD", "DB"],
            GraphId::G1 => ["AB", "AC", "AD", "AE"],
            GraphId::G2 => ["AB", "BE", "AC", "AD"],
            GraphId::G3 => ["AB", "BC", "CD", "DE"],
            GraphId::G4 => ["AB", "BC", "CA", "DE"],
            GraphId::H1 => ["AB", "BC", "CD", "EF"],
            GraphId::H2 => ["AB", "BC", "DE", "EF"],
            GraphId::H3 => ["AB", "AC", "AD", "EF"],
            GraphId::I1 => ["AB", "BC", "DE", "FG"],
            GraphId::I2 => ["AB", "CD", "EF", "GH"],
        }
    }

    fn vertex_count(self) -> usize {
        match self {
            GraphId::F1 | GraphId::F2 => 4,
            GraphId::G1 | GraphId::G2 | GraphId::G3 | GraphId::G4 => 5,
            GraphId::H1 | GraphId::H2 | GraphId::H3 => 6,
            GraphId::I1 => 7,
            GraphId::I2 => 8,
        }
    }

    /// Generators of the automorphism group, as edge images (`perm[e]` is where edge `e` goes).
    fn generators(self) -> Vec<[usize; 4]> {
        match self {
            // rotation AB->BC->CD->DA, reflection BC<->DA
            GraphId::F1 => vec![[1, 2, 3, 0], [0, 3, 2, 1]],
            GraphId::F2 => vec![[0, 3, 2, 1]],
            GraphId::G1 | GraphId::I2 => vec![[1, 0, 2, 3], [0, 2, 1, 3], [0, 1, 3, 2]],
            GraphId::G2 => vec![[0, 1, 3, 2]],
            GraphId::G3 => vec![[3, 2, 1, 0]],
            GraphId::G4 => vec![[1, 0, 2, 3], [0, 2, 1, 3]],
            GraphId::H1 => vec![[2, 1, 0, 3]],
            GraphId::H2 => vec![[1, 0, 2, 3], [0, 1, 3, 2], [2, 3, 0, 1]],
            GraphId::H3 => vec![[1, 0, 2, 3], [0, 2, 1, 3]],
            GraphId::I1 => vec![[0, 1, 3, 2], [1, 0, 2, 3]],
        }
    }

    fn index(self) -> usize {
        GraphId::ALL.iter().position(|&g| g == self).unwrap()
    }
}

impl fmt::Display for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphId::ALL
            .iter()
            .copied()
            .find(|g| g.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownGraph(s.to_string()))
    }
}

/// A simple undirected graph with single-letter vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphTopology {
    id: Option<GraphId>,
    vertices: Vec<char>,
    edges: Vec<[usize; 2]>,
    incidence: Vec<Vec<usize>>,
}

impl GraphTopology {
    /// The catalog graph with its fixed vertex labels and edge order.
    pub fn catalog(id: GraphId) -> Self {
        let vertices: Vec<char> = ('A'..='H').take(id.vertex_count()).collect();
        let edges = id
            .edge_names()
            .iter()
            .map(|name| {
                let mut it = name.chars().map(|c| (c as u8 - b'A') as usize);
                [it.next().unwrap(), it.next().unwrap()]
            })
            .collect();
        let mut topo = Self::build(vertices, edges).expect("catalog graphs are well-formed");
        topo.id = Some(id);
        topo
    }

    /// A user-supplied graph. Custom graphs only get the trivial automorphism group.
    pub fn custom(vertices: &[char], edges: &[(char, char)]) -> Result<Self> {
        let index = |c: char| {
            vertices
                .iter()
                .position(|&v| v == c)
                .ok_or_else(|| Error::InvalidTopology(format!("edge endpoint `{c}` is not a vertex")))
        };
        let edges = edges
            .iter()
            .map(|&(u, v)| Ok([index(u)?, index(v)?]))
            .collect::<Result<Vec<_>>>()?;
        Self::build(vertices.to_vec(), edges)
    }

    /// A custom graph from edge labels such as `["AB", "BC", "CA"]`; vertices in order of appearance.
    pub fn from_edge_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for name in names {
            let chars: Vec<char> = name.as_ref().trim().chars().collect();
            if chars.len() != 2 {
                return Err(Error::InvalidTopology(format!(
                    "edge label `{}` must be two vertex letters",
                    name.as_ref()
                )));
            }
            for &c in &chars {
                if !vertices.contains(&c) {
                    vertices.push(c);
                }
            }
            edges.push((chars[0], chars[1]));
        }
        Self::custom(&vertices, &edges)
    }

    fn build(vertices: Vec<char>, edges: Vec<[usize; 2]>) -> Result<Self> {
        let distinct: HashSet<char> = vertices.iter().copied().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidTopology("duplicate vertex label".into()));
        }
        if edges.is_empty() || edges.len() > MAX_EDGES {
            return Err(Error::InvalidTopology(format!(
                "edge count must be in 1..={MAX_EDGES}, got {}",
                edges.len()
            )));
        }
        let mut seen = HashSet::new();
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (e, &[u, v]) in edges.iter().enumerate() {
            if u >= vertices.len() || v >= vertices.len() {
                return Err(Error::InvalidTopology("edge endpoint out of range".into()));
            }
            if u == v {
                return Err(Error::InvalidTopology(format!("self-loop at {}", vertices[u])));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidTopology(format!(
                    "duplicate edge {}{}",
                    vertices[u], vertices[v]
                )));
            }
            incidence[u].push(e);
            incidence[v].push(e);
        }
        Ok(Self {
            id: None,
            vertices,
            edges,
            incidence,
        })
    }

    pub fn id(&self) -> Option<GraphId> {
        self.id
    }

    /// `"custom"` for user-supplied graphs.
    pub fn name(&self) -> &'static str {
        self.id.map_or("custom", GraphId::as_str)
    }

    pub fn vertices(&self) -> &[char] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge indices incident on `vertex`, ascending.
    pub fn incident(&self, vertex: usize) -> &[usize] {
        &self.incidence[vertex]
    }

    pub fn vertex_index(&self, label: char) -> Option<usize> {
        self.vertices.iter().position(|&v| v == label)
    }

    pub fn edge_name(&self, edge: usize) -> String {
        let [u, v] = self.edges[edge];
        [self.vertices[u], self.vertices[v]].iter().collect()
    }

    pub fn edge_names(&self) -> Vec<String> {
        (0..self.edges.len()).map(|e| self.edge_name(e)).collect()
    }

    /// Looks up an edge by label in either orientation (`"AB"` or `"BA"`).
    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        let chars: Vec<char> = name.trim().chars().collect();
        if chars.len() != 2 {
            return None;
        }
        let u = self.vertex_index(chars[0])?;
        let v = self.vertex_index(chars[1])?;
        self.edges
            .iter()
            .position(|&[a, b]| (a, b) == (u, v) || (a, b) == (v, u))
    }

    /// Builds a config from `(edge label, weight)` pairs; every edge must appear exactly once.
    pub fn config_from_named<'a, I>(&self, pairs: I) -> Result<WeightConfig>
    where
        I: IntoIterator<Item = (&'a str, u32)>,
    {
        let mut weights = vec![None; self.edge_count()];
        for (name, w) in pairs {
            let e = self
                .edge_by_name(name)
                .ok_or_else(|| Error::InvalidConfig(format!("{} has no edge `{name}`", self.name())))?;
            if weights[e].replace(w).is_some() {
                return Err(Error::InvalidConfig(format!("edge `{name}` given twice")));
            }
        }
        let weights = weights
            .into_iter()
            .enumerate()
            .map(|(e, w)| {
                w.ok_or_else(|| Error::InvalidConfig(format!("missing weight for edge {}", self.edge_name(e))))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightConfig::for_topology(self, weights)
    }

    /// Parses `AB=5,BC=1,CD=6,EF=11`.
    pub fn parse_weights(&self, text: &str) -> Result<WeightConfig> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidConfig(format!("expected edge=weight, got `{item}`")))?;
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad weight `{}` for {name}", value.trim())))?;
            pairs.push((name.trim(), value));
        }
        self.config_from_named(pairs)
    }

    pub fn format_weights(&self, config: &WeightConfig) -> String {
        config
            .weights()
            .iter()
            .enumerate()
            .map(|(e, w)| format!("{}={w}", self.edge_name(e)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Looks up a catalog graph by identifier.
pub fn catalog_graph(id: &str) -> Result<GraphTopology> {
    Ok(GraphTopology::catalog(id.parse()?))
}

/// One non-negative weight per edge, in the topology's edge order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightConfig(Vec<u32>);

impl WeightConfig {
    pub fn new(weights: Vec<u32>) -> Self {
        Self(weights)
    }

    /// Validates edge count and the per-edge bound.
    pub fn for_topology(topology: &GraphTopology, weights: Vec<u32>) -> Result<Self> {
        let config = Self(weights);
        config.validate(topology)?;
        Ok(config)
    }

    pub fn validate(&self, topology: &GraphTopology) -> Result<()> {
        if self.0.len() != topology.edge_count() {
            return Err(Error::InvalidConfig(format!(
                "{} expects {} weights, got {}",
                topology.name(),
                topology.edge_count(),
                self.0.len()
            )));
        }
        if let Some(w) = self.0.iter().find(|&&w| w > MAX_WEIGHT) {
            return Err(Error::InvalidConfig(format!("weight {w} exceeds {MAX_WEIGHT}")));
        }
        Ok(())
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&w| u64::from(w)).sum()
    }

    /// No legal move remains.
    pub fn is_terminal(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&w| w > 0)
    }
}

impl From<Vec<u32>> for WeightConfig {
    fn from(weights: Vec<u32>) -> Self {
        Self(weights)
    }
}

impl fmt::Display for WeightConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// A vertex plus the amount removed from each of its incident edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub vertex: usize,
    /// `(edge index, amount)`, ascending by edge index.
    pub removals: Vec<(usize, u32)>,
}

impl Move {
    pub fn total(&self) -> u64 {
        self.removals.iter().map(|&(_, r)| u64::from(r)).sum()
    }

    pub fn describe(&self, topology: &GraphTopology) -> String {
        let parts: Vec<String> = self
            .removals
            .iter()
            .filter(|&&(_, r)| r > 0)
            .map(|&(e, r)| format!("{} -{r}", topology.edge_name(e)))
            .collect();
        format!("{}: {}", topology.vertices()[self.vertex], parts.join(", "))
    }
}

/// Calls `visit` with the removal vector (parallel to `topology.incident(vertex)`) of every
/// legal move at `vertex`, in lexicographic order. Stops early when `visit` returns `false`.
pub(crate) fn for_each_removal<F>(topology: &GraphTopology, weights: &[u32], vertex: usize, mut visit: F) -> bool
where
    F: FnMut(&[u32]) -> bool,
{
    let incident = topology.incident(vertex);
    let caps: Vec<u32> = incident.iter().map(|&e| weights[e]).collect();
    if caps.iter().all(|&c| c == 0) {
        return true;
    }
    let mut removal = vec![0u32; caps.len()];
    loop {
        // odometer, last position fastest
        let mut pos = caps.len();
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            if removal[pos] < caps[pos] {
                removal[pos] += 1;
                removal[pos + 1..].iter_mut().for_each(|r| *r = 0);
                break;
            }
        }
        if !visit(&removal) {
            return false;
        }
    }
}

/// Every legal move, ordered by vertex and then lexicographically by removal vector.
pub fn enumerate_moves(topology: &GraphTopology, config: &WeightConfig) -> Vec<Move> {
    let mut moves = Vec::new();
    for vertex in 0..topology.vertices().len() {
        let incident = topology.incident(vertex);
        for_each_removal(topology, config.weights(), vertex, |removal| {
            moves.push(Move {
                vertex,
                removals: incident.iter().copied().zip(removal.iter().copied()).collect(),
            });
            true
        });
    }
    moves
}

pub fn apply_move(topology: &GraphTopology, config: &WeightConfig, mv: &Move) -> Result<WeightConfig> {
    if mv.vertex >= topology.vertices().len() {
        return Err(Error::IllegalMove(format!("no vertex with index {}", mv.vertex)));
    }
    let label = topology.vertices()[mv.vertex];
    let incident = topology.incident(mv.vertex);
    let mut next = config.weights().to_vec();
    let mut touched = BTreeSet::new();
    for &(e, r) in &mv.removals {
        if !incident.contains(&e) {
            return Err(Error::IllegalMove(format!("edge {e} is not incident on {label}")));
        }
        if !touched.insert(e) {
            return Err(Error::IllegalMove(format!("edge {} listed twice", topology.edge_name(e))));
        }
        let w = next.get(e).copied().unwrap_or(0);
        if r > w {
            return Err(Error::IllegalMove(format!(
                "cannot remove {r} from {} (weight {w})",
                topology.edge_name(e)
            )));
        }
        next[e] = w - r;
    }
    if mv.total() == 0 {
        return Err(Error::IllegalMove("total removal must be positive".into()));
    }
    Ok(WeightConfig(next))
}

/// A bijection on edge indices induced by a graph automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgePermutation(Vec<usize>);

impl EdgePermutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// `images[e]` is the edge that `e` maps to.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &EdgePermutation) -> EdgePermutation {
        EdgePermutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    /// Moves the weight on edge `e` to edge `perm[e]`.
    pub fn apply(&self, weights: &[u32]) -> Vec<u32> {
        let mut out = vec![0; weights.len()];
        for (e, &w) in weights.iter().enumerate() {
            out[self.0[e]] = w;
        }
        out
    }
}

fn close_group(n: usize, generators: &[EdgePermutation]) -> Vec<EdgePermutation> {
    let identity = EdgePermutation::identity(n);
    let mut seen: HashSet<EdgePermutation> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let mut group: Vec<_> = seen.into_iter().collect();
    group.sort();
    group
}

fn groups() -> &'static [Vec<EdgePermutation>] {
    static GROUPS: OnceLock<Vec<Vec<EdgePermutation>>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        GraphId::ALL
            .iter()
            .map(|id| {
                let gens: Vec<_> = id
                    .generators()
                    .into_iter()
                    .map(|g| EdgePermutation::from_images(g.to_vec()).expect("generator is a permutation"))
                    .collect();
                close_group(4, &gens)
            })
            .collect()
    })
}

/// The full edge-permutation group of the catalog graph's automorphisms, sorted, identity first.
pub fn automorphism_edge_perms(id: GraphId) -> &'static [EdgePermutation] {
    &groups()[id.index()]
}

/// The automorphism group of any topology; trivial for custom graphs.
pub fn topology_automorphisms(topology: &GraphTopology) -> Vec<EdgePermutation> {
    match topology.id() {
        Some(id) => automorphism_edge_perms(id).to_vec(),
        None => vec![EdgePermutation::identity(topology.edge_count())],
    }
}

/// Lexicographically least weight vector in the automorphism orbit of `config`.
pub fn canonicalize(id: GraphId, config: &WeightConfig) -> WeightConfig {
    WeightConfig(canonical_weights(automorphism_edge_perms(id), config.weights()))
}

pub(crate) fn canonical_weights(group: &[EdgePermutation], weights: &[u32]) -> Vec<u32> {
    group
        .iter()
        .map(|p| p.apply(weights))
        .min()
        .unwrap_or_else(|| weights.to_vec())
}
