use super::special::{is_k_special, is_special};
use super::{require_positive, Classification, RuleId, Trace, Verdict};
use crate::error::{Error, Result};
use crate::game::{GraphId, GraphTopology, WeightConfig};

/// Triangle plus a disjoint edge, `(AB, BC, CA, DE)`.
///
/// Losing iff exactly one of:
/// - A1: the triangle multiset is special with `k = DE`;
/// - A2: `DE` equals the triangle total, the triangle weights are not all equal, and the
///   multiset is not special.
pub fn classify_g4(config: &WeightConfig) -> Result<Classification> {
    require_positive(&GraphTopology::catalog(GraphId::G4), config)?;
    let &[ab, bc, ca, de] = config.weights() else { unreachable!() };
    let triangle = [ab, bc, ca];
    let total = u64::from(ab) + u64::from(bc) + u64::from(ca);

    let a1 = is_k_special(u64::from(de), triangle);
    let all_equal = ab == bc && bc == ca;
    let a2 = u64::from(de) == total && !all_equal && !is_special(triangle);

    match (a1, a2) {
        (Some(_), true) => Err(Error::Contradiction {
            weights: config.weights().to_vec(),
            winning: vec![],
            losing: vec![RuleId::G4A1.to_string(), RuleId::G4A2.to_string()],
        }),
        (Some(witness), false) => Ok(Classification::new(
            Verdict::Losing,
            RuleId::G4A1,
            Some(Trace::Special(witness)),
        )),
        (None, true) => Ok(Classification::bare(Verdict::Losing, RuleId::G4A2)),
        (None, false) => Ok(Classification::bare(Verdict::Winning, RuleId::G4Win)),
    }
}
