//! Partial classifier for H1, the 4-path `A-B-C-D` plus the disjoint edge `EF`.
//!
//! Weights are `(AB, BC, CD, EF)` and `k = EF`. Most rules decompose the outer path edges
//! against `F = 2^(f(k)+1)`: `AB = F*m1 + l1`, `CD = F*m2 + l2` with `l1, l2 < F`.
//! Winning rules and losing families are all evaluated; if rules of both kinds fire the
//! configuration is reported as a contradiction.

use serde::Serialize;

use super::{Classification, RuleId, Trace, Verdict};
use crate::error::{Error, Result};
use crate::game::{GraphId, GraphTopology, WeightConfig};
use crate::nim::f_exp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct H1Decomposition {
    pub k: u64,
    pub fk: u32,
    pub modulus: u64,
    pub m1: u64,
    pub m2: u64,
    pub l1: u64,
    pub l2: u64,
}

/// Binary digit columns of `(EF, AB, CD)`; bit `i` of each is at index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1BitProfile {
    pub width: u32,
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub c: Vec<u8>,
    /// Columns whose digit sum is odd, ascending.
    pub odd_columns: Vec<u32>,
    /// Highest odd column.
    pub top: Option<u32>,
}

/// Parameters under which a losing family matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LosingMatch {
    pub rule: RuleId,
    pub m: u64,
    pub r: u64,
    pub s: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Trace {
    pub profile: H1BitProfile,
    /// Absent when `EF = 0`.
    pub decomposition: Option<H1Decomposition>,
    pub winning: Vec<RuleId>,
    pub losing: Vec<LosingMatch>,
}

fn bits(x: u64, width: u32) -> Vec<u8> {
    (0..width).map(|i| ((x >> i) & 1) as u8).collect()
}

pub fn bit_profile(weights: [u32; 4]) -> H1BitProfile {
    let [ab, _, cd, ef] = weights.map(u64::from);
    let width = 64 - (ab | cd | ef).leading_zeros();
    let (a, b, c) = (bits(ef, width), bits(ab, width), bits(cd, width));
    let odd_columns: Vec<u32> = (0..width)
        .filter(|&i| (a[i as usize] + b[i as usize] + c[i as usize]) % 2 == 1)
        .collect();
    let top = odd_columns.last().copied();
    H1BitProfile {
        width,
        a,
        b,
        c,
        odd_columns,
        top,
    }
}

/// `None` when `EF = 0` (the exponent is undefined there).
pub fn decompose(weights: [u32; 4]) -> Option<H1Decomposition> {
    let [ab, _, cd, k] = weights.map(u64::from);
    let fk = f_exp(k).ok()?;
    let modulus = 1u64 << (fk + 1);
    Some(H1Decomposition {
        k,
        fk,
        modulus,
        m1: ab / modulus,
        m2: cd / modulus,
        l1: ab % modulus,
        l2: cd % modulus,
    })
}

fn w_ef0(w: [u64; 4]) -> bool {
    w[3] == 0
}

fn w_l1a(w: [u64; 4]) -> bool {
    let [ab, bc, _, k] = w;
    ab <= k && k <= ab + bc
}

fn w_l1b(w: [u64; 4]) -> bool {
    let [_, bc, cd, k] = w;
    cd <= k && k <= bc + cd
}

fn w_t1(w: [u64; 4], profile: &H1BitProfile) -> bool {
    match profile.top {
        None => w[1] >= 1,
        Some(i) => profile.b[i as usize] == 1 || profile.c[i as usize] == 1,
    }
}

fn w_l2(w: [u64; 4], d: Option<&H1Decomposition>) -> bool {
    let Some(d) = d else { return false };
    let bc = w[1];
    let lo = d.l1.min(d.l2);
    d.m1 != d.m2 || lo >= d.k || ((d.k == d.l1 || d.k == d.l2) && (lo > 0 || bc > 0))
}

fn w_l3(w: [u64; 4], d: Option<&H1Decomposition>) -> bool {
    let bc = w[1];
    let first = d.is_some_and(|d| {
        let lo = d.l1.min(d.l2);
        lo < d.k && bc > d.k - lo
    });
    first || bc > w[3]
}

/// Matches `{AB, CD} = {F*m + r, F*m + offset}` for some `m >= 0`, in either order.
fn match_pair(ab: u64, cd: u64, modulus: u64, r: u64, offset: u64) -> Option<u64> {
    [(ab, cd), (cd, ab)].into_iter().find_map(|(x, y)| {
        if x < r || !(x - r).is_multiple_of(modulus) {
            return None;
        }
        let m = (x - r) / modulus;
        (y == modulus * m + offset).then_some(m)
    })
}

fn low_residue(k: u64, r: u64) -> u64 {
    let f_r = f_exp(r).expect("r is positive");
    k % (1u64 << (f_r + 1))
}

fn l_b1(w: [u64; 4], d: &H1Decomposition) -> Option<LosingMatch> {
    let [ab, s, cd, k] = w;
    [0u64, 1, 3].into_iter().find_map(|r| {
        if s < 1 || k < 2 * r + s {
            return None;
        }
        let m = match_pair(ab, cd, d.modulus, r, k - r - s)?;
        Some(LosingMatch { rule: RuleId::H1LB1, m, r, s, j: None })
    })
}

fn l_b2(w: [u64; 4], d: &H1Decomposition) -> Option<LosingMatch> {
    let [ab, s, cd, k] = w;
    [2u64, 4].into_iter().find_map(|r| {
        if s < 1 || s > r - 1 {
            return None;
        }
        let j = low_residue(k, r);
        if !(s..r).contains(&j) {
            return None;
        }
        let m = match_pair(ab, cd, d.modulus, r, k + r - s)?;
        Some(LosingMatch { rule: RuleId::H1LB2, m, r, s, j: Some(j) })
    })
}

fn l_b3(w: [u64; 4], d: &H1Decomposition) -> Option<LosingMatch> {
    let [ab, s, cd, k] = w;
    [2u64, 4].into_iter().find_map(|r| {
        if s < 1 || s > r - 1 || k < 3 * r {
            return None;
        }
        let j = low_residue(k, r);
        if (s..r).contains(&j) {
            return None;
        }
        let m = match_pair(ab, cd, d.modulus, r, k - r - s)?;
        Some(LosingMatch { rule: RuleId::H1LB3, m, r, s, j: Some(j) })
    })
}

fn l_b4(w: [u64; 4], d: &H1Decomposition) -> Option<LosingMatch> {
    let [ab, s, cd, k] = w;
    [2u64, 4].into_iter().find_map(|r| {
        if k < 3 * r || s < r || s > k - 2 * r {
            return None;
        }
        let m = match_pair(ab, cd, d.modulus, r, k - r - s)?;
        Some(LosingMatch { rule: RuleId::H1LB4, m, r, s, j: None })
    })
}

fn widen(weights: [u32; 4]) -> [u64; 4] {
    weights.map(u64::from)
}

/// Every winning rule that fires, in evaluation order.
pub fn h1_winning_rules(weights: [u32; 4]) -> Vec<RuleId> {
    let w = widen(weights);
    let profile = bit_profile(weights);
    let d = decompose(weights);
    let checks = [
        (RuleId::H1WEf0, w_ef0(w)),
        (RuleId::H1WL1a, w_l1a(w)),
        (RuleId::H1WL1b, w_l1b(w)),
        (RuleId::H1WT1, w_t1(w, &profile)),
        (RuleId::H1WL2, w_l2(w, d.as_ref())),
        (RuleId::H1WL3, w_l3(w, d.as_ref())),
    ];
    checks.into_iter().filter(|&(_, hit)| hit).map(|(r, _)| r).collect()
}

/// Every losing family that matches, in evaluation order. Families need `EF >= 1`.
pub fn h1_losing_matches(weights: [u32; 4]) -> Vec<LosingMatch> {
    let w = widen(weights);
    let Some(d) = decompose(weights) else { return Vec::new() };
    [l_b1(w, &d), l_b2(w, &d), l_b3(w, &d), l_b4(w, &d)]
        .into_iter()
        .flatten()
        .collect()
}

/// Evaluates a single H1 rule in isolation.
pub fn h1_rule_matches(rule: RuleId, weights: [u32; 4]) -> bool {
    if RuleId::H1_LOSING.contains(&rule) {
        h1_losing_matches(weights).iter().any(|m| m.rule == rule)
    } else {
        h1_winning_rules(weights).contains(&rule)
    }
}

pub fn classify_h1(config: &WeightConfig) -> Result<Classification> {
    config.validate(&GraphTopology::catalog(GraphId::H1))?;
    let weights: [u32; 4] = config.weights().try_into().expect("validated length");
    if weights[..3].contains(&0) {
        return Err(Error::InvalidConfig("AB, BC and CD must be positive".into()));
    }
    let winning = h1_winning_rules(weights);
    let losing = h1_losing_matches(weights);
    if !winning.is_empty() && !losing.is_empty() {
        return Err(Error::Contradiction {
            weights: weights.to_vec(),
            winning: winning.iter().map(|r| r.to_string()).collect(),
            losing: losing.iter().map(|m| m.rule.to_string()).collect(),
        });
    }
    let (verdict, rule) = match (losing.first(), winning.first()) {
        (Some(m), _) => (Verdict::Losing, m.rule),
        (None, Some(&r)) => (Verdict::Winning, r),
        (None, None) => (Verdict::Unknown, RuleId::H1Unknown),
    };
    let trace = H1Trace {
        profile: bit_profile(weights),
        decomposition: decompose(weights),
        winning,
        losing,
    };
    Ok(Classification::new(verdict, rule, Some(Trace::H1(Box::new(trace)))))
}
