use graphnim::game::{apply_move, enumerate_moves, GraphId, GraphTopology, Move, WeightConfig};
use graphnim::Error;
use proptest::prelude::*;

/// Per vertex, every removal vector bounded by the incident weights except all-zero.
fn expected_move_count(topology: &GraphTopology, w: &[u32]) -> usize {
    (0..topology.vertices().len())
        .map(|v| topology.incident(v).iter().map(|&e| w[e] as usize + 1).product::<usize>() - 1)
        .sum()
}

fn graph() -> impl Strategy<Value = GraphId> {
    prop::sample::select(GraphId::ALL.to_vec())
}

proptest! {
    #[test]
    fn move_count_identity(id in graph(), w in prop::collection::vec(0u32..6, 4)) {
        let topology = GraphTopology::catalog(id);
        let moves = enumerate_moves(&topology, &w.clone().into());
        prop_assert_eq!(moves.len(), expected_move_count(&topology, &w));
    }

    #[test]
    fn moves_decrease_total(id in graph(), w in prop::collection::vec(0u32..5, 4)) {
        let topology = GraphTopology::catalog(id);
        let config: WeightConfig = w.into();
        for mv in enumerate_moves(&topology, &config) {
            prop_assert!(mv.total() > 0);
            let next = apply_move(&topology, &config, &mv).unwrap();
            prop_assert_eq!(next.total() + mv.total(), config.total());
            for (e, (&before, &after)) in config.weights().iter().zip(next.weights()).enumerate() {
                prop_assert!(after <= before);
                if before != after {
                    prop_assert!(topology.incident(mv.vertex).contains(&e));
                }
            }
        }
    }

    #[test]
    fn over_removal_is_rejected(w in prop::collection::vec(0u32..20, 4), extra in 1u32..5) {
        let topology = GraphTopology::catalog(GraphId::H1);
        let config: WeightConfig = w.clone().into();
        // vertex B touches AB and BC
        let mv = Move { vertex: 1, removals: vec![(0, w[0] + extra)] };
        prop_assert!(matches!(apply_move(&topology, &config, &mv), Err(Error::IllegalMove(_))));
    }
}

#[test]
fn non_incident_and_empty_moves_are_rejected() {
    let topology = GraphTopology::catalog(GraphId::H1);
    let config: WeightConfig = vec![3, 3, 3, 3].into();
    let far = Move { vertex: 0, removals: vec![(3, 1)] };
    assert!(apply_move(&topology, &config, &far).is_err());
    let empty = Move { vertex: 1, removals: vec![(0, 0), (1, 0)] };
    assert!(apply_move(&topology, &config, &empty).is_err());
}
