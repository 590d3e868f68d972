use std::collections::{HashMap, VecDeque};

use crate::geom::Point;
use crate::motion::{Instance, MotionError, SearchLimits, StateSpace};

/// The full reachable labeled state graph of a small instance: states keep
/// robot identities (position per robot index), which the gadget proofs
/// need in order to count per-robot configurations.
pub struct LabeledExploration {
    /// Position dictionary shared by all states.
    pub positions: Vec<Point>,
    /// Each state maps robot index -> position id.
    pub states: Vec<Vec<u16>>,
    /// Undirected adjacency between states (single half-step moves).
    pub adjacency: Vec<Vec<u32>>,
}

impl LabeledExploration {
    pub fn point(&self, id: u16) -> Point {
        self.positions[id as usize]
    }

    pub fn state_positions(&self, state: u32) -> Vec<Point> {
        self.states[state as usize]
            .iter()
            .map(|&id| self.point(id))
            .collect()
    }
}

/// Exhaustively explore the labeled move graph from `start` (one position
/// per robot, in roster order).
pub fn explore_labeled(
    instance: &Instance,
    start: &[Point],
    limits: &SearchLimits,
) -> Result<LabeledExploration, MotionError> {
    let space = StateSpace::new(instance);
    let start_ids: Result<Vec<u16>, MotionError> = start
        .iter()
        .map(|&p| {
            space
                .id_of(p)
                .ok_or_else(|| crate::motion::InstanceError::NotInFreeSpace(p).into())
        })
        .collect();
    let start_ids = start_ids?;
    let start_cfg =
        crate::motion::MultiConfig::new(start.to_vec());
    if start_cfg.len() != start.len() || !crate::motion::is_free(instance, &start_cfg) {
        return Err(crate::motion::InstanceError::NotFree.into());
    }

    let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
    let mut states: Vec<Vec<u16>> = Vec::new();
    let mut adjacency: Vec<Vec<u32>> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert(start_ids.clone(), 0);
    states.push(start_ids);
    adjacency.push(Vec::new());
    queue.push_back(0u32);

    while let Some(cur) = queue.pop_front() {
        let state = states[cur as usize].clone();
        for ri in 0..state.len() {
            let pid = state[ri];
            for (_, target, conflicts) in space.move_entries(pid) {
                if state.iter().any(|&q| q == target) {
                    continue;
                }
                if conflicts
                    .iter()
                    .any(|&c| state.iter().enumerate().any(|(rj, &q)| rj != ri && q == c))
                {
                    continue;
                }
                let mut next = state.clone();
                next[ri] = target;
                let nid = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= limits.max_states {
                            return Err(MotionError::StateCapExceeded {
                                cap: limits.max_states,
                            });
                        }
                        let id = states.len() as u32;
                        index.insert(next.clone(), id);
                        states.push(next);
                        adjacency.push(Vec::new());
                        queue.push_back(id);
                        id
                    }
                };
                if !adjacency[cur as usize].contains(&nid) {
                    adjacency[cur as usize].push(nid);
                    adjacency[nid as usize].push(cur);
                }
            }
        }
    }

    let positions = (0..space.position_count() as u16)
        .map(|i| space.position(i))
        .collect();
    Ok(LabeledExploration {
        positions,
        states,
        adjacency,
    })
}
