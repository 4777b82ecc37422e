//! Acceptance suite: every criterion runs exhaustively and prints one PASS/FAIL line.
//!
//! Run with `cargo test -p graphnim-core --test acceptance`.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use graphnim::characterizations::{
    classify, classify_f1, classify_f2, classify_g4, classify_triangle, h1_losing_matches, h1_rule_matches,
    is_special, special_witness, RuleId, SpecialWitness, Verdict,
};
use graphnim::game::{apply_move, automorphism_edge_perms, enumerate_moves, GraphId, GraphTopology, WeightConfig};
use graphnim::nim::{classify_galaxy, f_exp, is_balanced, nim_sum, NimTuple};
use graphnim::solver::{Outcome, Solver};
use graphnim::verify::{verification_configs, verify_graph, VerifyOptions};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Check = Result<String, String>;

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn grid(edges: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..edges {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (lo..=hi).map(move |w| {
                    let mut n = p.clone();
                    n.push(w);
                    n
                })
            })
            .collect();
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn outcome_of(verdict: Verdict) -> Option<Outcome> {
    match verdict {
        Verdict::Winning => Some(Outcome::Winning),
        Verdict::Losing => Some(Outcome::Losing),
        Verdict::Unknown => None,
    }
}

/// Balancedness straight from the digit-column statement.
fn digit_columns_even(piles: &[u64]) -> bool {
    (0..64).all(|bit| piles.iter().filter(|&&p| (p >> bit) & 1 == 1).count() % 2 == 0)
}

fn nim_balance() -> Check {
    let mut tuples = 0u64;
    for len in 0..=4 {
        for t in grid(len, 0, 32) {
            let piles: Vec<u64> = t.iter().map(|&x| u64::from(x)).collect();
            let tuple = NimTuple(piles.clone());
            let balanced = is_balanced(&tuple);
            ensure(balanced == (nim_sum(&tuple) == 0), || format!("{piles:?}: is_balanced vs nim_sum"))?;
            ensure(balanced == digit_columns_even(&piles), || format!("{piles:?}: digit columns"))?;
            tuples += 1;
        }
    }
    let solver = Solver::new(GraphTopology::catalog(GraphId::I2));
    let configs = grid(4, 1, 8);
    for w in &configs {
        let losing = solver.solve(&w.clone().into()).map_err(|e| e.to_string())? == Outcome::Losing;
        let piles = NimTuple(w.iter().map(|&x| u64::from(x)).collect());
        ensure(losing == is_balanced(&piles), || format!("I2 {w:?}"))?;
    }
    Ok(format!("{tuples} tuples, {} I2 configs", configs.len()))
}

fn galaxy_graphs() -> Check {
    let mut n = 0;
    for id in [GraphId::G1, GraphId::H2, GraphId::H3, GraphId::I1, GraphId::I2] {
        let solver = Solver::new(GraphTopology::catalog(id));
        for w in grid(4, 1, 8) {
            let config: WeightConfig = w.clone().into();
            let c = classify_galaxy(id, &config).map_err(|e| e.to_string())?;
            let o = solver.solve(&config).map_err(|e| e.to_string())?;
            ensure(outcome_of(c.verdict) == Some(o), || format!("{id} {w:?}: {} vs {o}", c.verdict))?;
            n += 1;
        }
    }
    Ok(format!("{n} configs on G1,H2,H3,I1,I2"))
}

fn triangle() -> Check {
    let topo = GraphTopology::from_edge_names(&["AB", "BC", "CA"]).map_err(|e| e.to_string())?;
    let solver = Solver::new(topo);
    let configs = grid(3, 1, 10);
    for w in &configs {
        let losing = solver.solve(&w.clone().into()).map_err(|e| e.to_string())? == Outcome::Losing;
        let all_equal = w[0] == w[1] && w[1] == w[2];
        ensure(losing == all_equal, || format!("triangle {w:?}"))?;
        let c = classify_triangle([w[0], w[1], w[2]]).map_err(|e| e.to_string())?;
        ensure((c.verdict == Verdict::Losing) == losing, || format!("classify_triangle {w:?}"))?;
    }
    Ok(format!("{} configs", configs.len()))
}

fn exact_on_grid(id: GraphId, max: u32, classifier: fn(&WeightConfig) -> graphnim::Result<graphnim::Classification>) -> Check {
    let solver = Solver::new(GraphTopology::catalog(id));
    let configs = grid(4, 1, max);
    let mut losing = 0;
    for w in &configs {
        let config: WeightConfig = w.clone().into();
        let c = classifier(&config).map_err(|e| e.to_string())?;
        let o = solver.solve(&config).map_err(|e| e.to_string())?;
        ensure(outcome_of(c.verdict) == Some(o), || format!("{id} {w:?}: {} ({}) vs {o}", c.verdict, c.rule))?;
        losing += usize::from(o == Outcome::Losing);
    }
    Ok(format!("{} configs, {losing} losing", configs.len()))
}

fn f1() -> Check {
    exact_on_grid(GraphId::F1, 10, classify_f1)
}

fn f2() -> Check {
    exact_on_grid(GraphId::F2, 10, classify_f2)
}

fn all_winning() -> Check {
    let mut n = 0;
    for id in [GraphId::G1, GraphId::G2, GraphId::G3] {
        let solver = Solver::new(GraphTopology::catalog(id));
        for w in grid(4, 1, 8) {
            let config: WeightConfig = w.clone().into();
            let o = solver.solve(&config).map_err(|e| e.to_string())?;
            ensure(o == Outcome::Winning, || format!("{id} {w:?} is losing"))?;
            let c = classify(id, &config).map_err(|e| e.to_string())?;
            ensure(c.verdict == Verdict::Winning, || format!("{id} {w:?} classified {}", c.verdict))?;
            n += 1;
        }
    }
    Ok(format!("{n} configs on G1,G2,G3"))
}

fn g4() -> Check {
    let report = verify_graph(GraphId::G4, &VerifyOptions::new(12)).map_err(|e| e.to_string())?;
    ensure(report.summary.total == 20_736, || format!("total {}", report.summary.total))?;
    ensure(report.summary.unknown == 0, || format!("{} unknown", report.summary.unknown))?;
    ensure(report.is_clean(), || format!("disagreements: {:?}", &report.disagreements[..report.disagreements.len().min(5)]))?;
    // the direct classifier as well as the dispatcher
    let solver = Solver::new(GraphTopology::catalog(GraphId::G4));
    for w in grid(4, 1, 12) {
        let config: WeightConfig = w.clone().into();
        let c = classify_g4(&config).map_err(|e| e.to_string())?;
        ensure(outcome_of(c.verdict) == Some(solver.solve(&config).unwrap()), || format!("G4 {w:?}"))?;
    }
    Ok(format!(
        "{} configs, {} losing, 0 unknown, 0 disagreements",
        report.summary.total, report.summary.losing
    ))
}

/// Every special multiset with largest element <= `max`, by expanding the definition.
fn enumerate_special(max: u64) -> HashMap<[u64; 3], SpecialWitness> {
    let mut out = HashMap::new();
    for m in 1..=max {
        let (lo, hi) = (m * (m + 1) / 2, m * (m + 3) / 2);
        for k in lo..=hi {
            for l in 0..=max {
                for i in 1..=m + 1 {
                    let base = k + (m + 1) * l;
                    let mut s = [base + 1, base + i, base + m + 2 - i];
                    s.sort_unstable();
                    if s[2] <= max {
                        out.insert(s, SpecialWitness { k, l, m, i });
                    }
                }
            }
        }
    }
    out
}

fn special_multisets() -> Check {
    let reference = enumerate_special(30);
    let mut checked = 0;
    for a in 1..=30u32 {
        for b in a..=30 {
            for c in b..=30 {
                let ms = [a, b, c];
                let key = [a, b, c].map(u64::from);
                let by_inequality = is_special(ms);
                let witness = special_witness(ms);
                let by_definition = reference.contains_key(&key);
                ensure(by_inequality == witness.is_some(), || format!("{ms:?}: inequality vs witness"))?;
                ensure(by_inequality == by_definition, || format!("{ms:?}: inequality vs definition"))?;
                if let Some(w) = witness {
                    ensure(w.expand() == key, || format!("{ms:?}: witness {w:?} re-expands differently"))?;
                    ensure(w.in_range(), || format!("{ms:?}: witness {w:?} out of range"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} multisets, {} special", reference.len()))
}

/// Configurations produced by one losing family's parameter grid.
fn family_configs(rule: RuleId, max_k: u64, max_m: u64) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        let big = 1u64 << (f_exp(k).unwrap() + 1);
        for m in 0..=max_m {
            let mut push = |s: u64, r: u64, offset: u64| {
                let (x, y) = (big * m + r, big * m + offset);
                if x == 0 || y == 0 {
                    return;
                }
                out.push([x as u32, s as u32, y as u32, k as u32]);
                out.push([y as u32, s as u32, x as u32, k as u32]);
            };
            match rule {
                RuleId::H1LB1 => {
                    for r in [0, 1, 3] {
                        for s in 1..=k.saturating_sub(2 * r) {
                            if k >= 2 * r + s {
                                push(s, r, k - r - s);
                            }
                        }
                    }
                }
                RuleId::H1LB2 | RuleId::H1LB3 => {
                    for r in [2u64, 4] {
                        let modulus = 1u64 << (f_exp(r).unwrap() + 1);
                        let j = k % modulus;
                        for s in 1..r {
                            let in_window = (s..r).contains(&j);
                            if rule == RuleId::H1LB2 && in_window {
                                push(s, r, k + r - s);
                            }
                            if rule == RuleId::H1LB3 && !in_window && k >= 3 * r {
                                push(s, r, k - r - s);
                            }
                        }
                    }
                }
                RuleId::H1LB4 => {
                    for r in [2u64, 4] {
                        if k >= 3 * r {
                            for s in r..=k - 2 * r {
                                push(s, r, k - r - s);
                            }
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn h1_soundness() -> Check {
    let report = verify_graph(GraphId::H1, &VerifyOptions::new(12)).map_err(|e| e.to_string())?;
    ensure(report.is_clean(), || format!("disagreements: {:?}", &report.disagreements[..report.disagreements.len().min(5)]))?;

    // each rule on its own over the exhaustive grid
    let solver = Solver::new(GraphTopology::catalog(GraphId::H1)).with_weight_cap(64);
    let mut fired: HashMap<RuleId, usize> = HashMap::new();
    for w in verification_configs(GraphId::H1, 12) {
        let w: [u32; 4] = w.try_into().unwrap();
        let oracle = solver.solve(&w.to_vec().into()).unwrap();
        for rule in RuleId::H1_WINNING.iter().chain(&RuleId::H1_LOSING) {
            if h1_rule_matches(*rule, w) {
                let expected = if RuleId::H1_LOSING.contains(rule) { Outcome::Losing } else { Outcome::Winning };
                ensure(oracle == expected, || format!("{rule} fires on {w:?} but oracle says {oracle}"))?;
                *fired.entry(*rule).or_default() += 1;
            }
        }
    }

    // each losing family over its own parameter grid (k <= 12, m <= 2)
    let mut family_total = 0;
    for rule in RuleId::H1_LOSING {
        let configs = family_configs(rule, 12, 2);
        ensure(!configs.is_empty(), || format!("{rule}: empty parameter grid"))?;
        let bad: Vec<String> = configs
            .par_iter()
            .filter_map(|w| {
                let recognised = h1_losing_matches(*w).iter().any(|m| m.rule == rule);
                let oracle = solver.solve(&w.to_vec().into()).unwrap();
                let winning_rule = RuleId::H1_WINNING.iter().find(|r| h1_rule_matches(**r, *w));
                (!recognised || oracle != Outcome::Losing || winning_rule.is_some())
                    .then(|| format!("{rule} {w:?}: recognised={recognised} oracle={oracle} winning={winning_rule:?}"))
            })
            .collect();
        ensure(bad.is_empty(), || bad[..bad.len().min(5)].join("; "))?;
        family_total += configs.len();
    }

    let mut counts: Vec<String> = RuleId::H1_WINNING
        .iter()
        .chain(&RuleId::H1_LOSING)
        .map(|r| format!("{r}={}", fired.get(r).copied().unwrap_or(0)))
        .collect();
    counts.sort();
    Ok(format!(
        "{} configs, 0 contradictions, 0 disagreements, unknown {:.2}% ({}); family grid {} configs; rule hits: {}",
        report.summary.total,
        100.0 * report.unknown_fraction(),
        report.summary.unknown,
        family_total,
        counts.join(" ")
    ))
}

fn golden_vectors() -> Check {
    let cases: [(GraphId, [u32; 4], Verdict, Option<RuleId>); 7] = [
        (GraphId::F2, [1, 1, 2, 1], Verdict::Losing, Some(RuleId::F2)),
        (GraphId::G4, [2, 2, 3, 1], Verdict::Losing, Some(RuleId::G4A1)),
        (GraphId::G4, [1, 1, 2, 4], Verdict::Losing, Some(RuleId::G4A2)),
        (GraphId::H1, [2, 1, 2, 1], Verdict::Losing, Some(RuleId::H1LB1)),
        (GraphId::H1, [5, 1, 5, 3], Verdict::Losing, Some(RuleId::H1LB1)),
        (GraphId::H1, [10, 1, 11, 6], Verdict::Losing, Some(RuleId::H1LB3)),
        (GraphId::H1, [5, 1, 6, 11], Verdict::Unknown, Some(RuleId::H1Unknown)),
    ];
    for (id, w, verdict, rule) in cases {
        let config: WeightConfig = w.to_vec().into();
        let c = classify(id, &config).map_err(|e| e.to_string())?;
        ensure(c.verdict == verdict, || format!("{id} {w:?}: classifier {}", c.verdict))?;
        ensure(rule.is_none_or(|r| r == c.rule), || format!("{id} {w:?}: rule {}", c.rule))?;
        let o = Solver::new(GraphTopology::catalog(id)).solve(&config).map_err(|e| e.to_string())?;
        ensure(o == Outcome::Losing, || format!("{id} {w:?}: oracle {o}"))?;
    }
    Ok("7 base-case configurations".into())
}

/// Plain memoized search: raw weight vectors, no symmetry, moves via the public API.
struct NaiveSolver {
    topology: GraphTopology,
    memo: HashMap<Vec<u32>, bool>,
}

impl NaiveSolver {
    fn winning(&mut self, w: &WeightConfig) -> bool {
        if let Some(&v) = self.memo.get(w.weights()) {
            return v;
        }
        let moves = enumerate_moves(&self.topology, w);
        let v = moves
            .iter()
            .any(|m| !self.winning(&apply_move(&self.topology, w, m).unwrap()));
        self.memo.insert(w.weights().to_vec(), v);
        v
    }
}

fn solver_invariants() -> Check {
    let mut rng = StdRng::seed_from_u64(0x6e696d);
    let mut checked = 0;
    for id in GraphId::ALL {
        let topology = GraphTopology::catalog(id);
        let solver = Solver::new(topology.clone());
        let mut naive = NaiveSolver { topology: topology.clone(), memo: HashMap::new() };
        let group = automorphism_edge_perms(id);
        let mut seen = HashSet::new();
        for _ in 0..1000 {
            let w: Vec<u32> = (0..4).map(|_| rng.random_range(0..=7)).collect();
            seen.insert(w.clone());
            let config: WeightConfig = w.clone().into();
            let outcome = solver.solve(&config).map_err(|e| e.to_string())?;

            // one-step re-evaluation through the public move API
            let successors: Vec<Outcome> = enumerate_moves(&topology, &config)
                .iter()
                .map(|m| solver.solve(&apply_move(&topology, &config, m).unwrap()).unwrap())
                .collect();
            let expected = if successors.contains(&Outcome::Losing) { Outcome::Winning } else { Outcome::Losing };
            ensure(outcome == expected, || format!("{id} {w:?}: retrograde inconsistency"))?;

            let naive_winning = naive.winning(&config);
            ensure(naive_winning == (outcome == Outcome::Winning), || format!("{id} {w:?}: naive search disagrees"))?;

            for p in group {
                let image: WeightConfig = p.apply(&w).into();
                ensure(solver.solve(&image).unwrap() == outcome, || format!("{id} {w:?}: not invariant under {p:?}"))?;
            }

            let mv = solver.optimal_move(&config).map_err(|e| e.to_string())?;
            match (outcome, mv) {
                (Outcome::Losing, None) => {}
                (Outcome::Winning, Some(m)) => {
                    let next = apply_move(&topology, &config, &m).unwrap();
                    ensure(solver.solve(&next).unwrap() == Outcome::Losing, || format!("{id} {w:?}: bad optimal move"))?;
                }
                (o, m) => return Err(format!("{id} {w:?}: outcome {o} with move {m:?}")),
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} random states across 11 graphs"))
}

fn main() {
    let criteria = [
        Criterion { name: "nim-balance", limit: Duration::from_secs(10), run: nim_balance },
        Criterion { name: "galaxy-graphs", limit: Duration::from_secs(30), run: galaxy_graphs },
        Criterion { name: "triangle", limit: Duration::from_secs(5), run: triangle },
        Criterion { name: "F1", limit: Duration::from_secs(30), run: f1 },
        Criterion { name: "F2", limit: Duration::from_secs(30), run: f2 },
        Criterion { name: "G1-G2-G3-all-winning", limit: Duration::from_secs(30), run: all_winning },
        Criterion { name: "G4", limit: Duration::from_secs(120), run: g4 },
        Criterion { name: "special-multisets", limit: Duration::from_secs(5), run: special_multisets },
        Criterion { name: "H1-soundness", limit: Duration::from_secs(300), run: h1_soundness },
        Criterion { name: "golden-vectors", limit: Duration::from_secs(1), run: golden_vectors },
        Criterion { name: "solver-invariants", limit: Duration::from_secs(30), run: solver_invariants },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str())) {
            continue;
        }
        let started = Instant::now();
        let result = (c.run)();
        let elapsed = started.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= c.limit {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, limit {:?}", c.limit))
            }
        });
        match result {
            Ok(detail) => println!("PASS {:<22} {:>9.2?}  {detail}", c.name, elapsed),
            Err(why) => {
                failed += 1;
                println!("FAIL {:<22} {:>9.2?}  {why}", c.name, elapsed);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
