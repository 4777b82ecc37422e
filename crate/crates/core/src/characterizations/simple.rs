use super::{require_positive, Classification, RuleId, Verdict};
use crate::error::{Error, Result};
use crate::game::{GraphId, GraphTopology, WeightConfig};

fn losing_if(condition: bool, rule: RuleId) -> Classification {
    let verdict = if condition { Verdict::Losing } else { Verdict::Winning };
    Classification::bare(verdict, rule)
}

/// Three-edge cycle: losing iff all three weights are equal.
pub fn classify_triangle(weights: [u32; 3]) -> Result<Classification> {
    if weights.contains(&0) {
        return Err(Error::InvalidConfig("triangle weights must be positive".into()));
    }
    Ok(losing_if(
        weights[0] == weights[1] && weights[1] == weights[2],
        RuleId::Triangle,
    ))
}

/// 4-cycle `(AB, BC, CD, DA)`: losing iff opposite edges carry equal weight.
pub fn classify_f1(config: &WeightConfig) -> Result<Classification> {
    require_positive(&GraphTopology::catalog(GraphId::F1), config)?;
    let &[ab, bc, cd, da] = config.weights() else { unreachable!() };
    Ok(losing_if(ab == cd && bc == da, RuleId::F1))
}

/// Triangle with a pendant, `(AB, BC, CD, DB)`: losing iff `BC = DB` and `CD = AB + BC`.
pub fn classify_f2(config: &WeightConfig) -> Result<Classification> {
    require_positive(&GraphTopology::catalog(GraphId::F2), config)?;
    let &[ab, bc, cd, db] = config.weights() else { unreachable!() };
    Ok(losing_if(
        bc == db && u64::from(cd) == u64::from(ab) + u64::from(bc),
        RuleId::F2,
    ))
}

/// G1, G2 and G3 have no losing positive configuration.
pub fn classify_allwin(id: GraphId, config: &WeightConfig) -> Result<Classification> {
    let rule = match id {
        GraphId::G1 => RuleId::AllWinG1,
        GraphId::G2 => RuleId::AllWinG2,
        GraphId::G3 => RuleId::AllWinG3,
        other => {
            return Err(Error::Dispatch {
                classifier: "allwin",
                graph: other.to_string(),
            })
        }
    };
    require_positive(&GraphTopology::catalog(id), config)?;
    Ok(Classification::bare(Verdict::Winning, rule))
}
