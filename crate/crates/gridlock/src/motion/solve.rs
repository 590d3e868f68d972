use std::collections::{HashMap, VecDeque};

use super::instance::{is_free, Instance, InstanceError, MultiConfig};
use crate::geom::{robot_box, swept_box, Dir, Point, DIRS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MotionError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("inconclusive: state cap of {cap} states exceeded")]
    StateCapExceeded { cap: usize },
    #[error("inconclusive: source enumeration cap of {cap} configurations exceeded")]
    SourceCapExceeded { cap: usize },
    #[error("start and target have different robot counts ({start} vs {target})")]
    SizeMismatch { start: usize, target: usize },
    #[error("assignment is not a bijection between start and target")]
    BadAssignment,
    #[error("plan references position {0} not present in the current configuration")]
    BadPlanStep(Point),
}

/// Caps that turn a runaway search into an explicit inconclusive outcome.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub max_states: usize,
    pub max_sources: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_states: 2_000_000,
            max_sources: 200_000,
        }
    }
}

/// One single-robot half-step: which center moved, and where.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanStep {
    pub from: Point,
    pub dir: Dir,
}

/// A move-by-move plan from a start configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPlan {
    pub start: MultiConfig,
    pub steps: Vec<PlanStep>,
}

impl PathPlan {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replay the plan, checking freeness and the swept-area rule at every
    /// step. Returns every visited configuration including the start.
    pub fn replay(&self, instance: &Instance) -> Result<Vec<MultiConfig>, MotionError> {
        let mut cur = self.start.clone();
        if !is_free(instance, &cur) {
            return Err(InstanceError::NotFree.into());
        }
        let mut out = vec![cur.clone()];
        for step in &self.steps {
            if !cur.contains(step.from) {
                return Err(MotionError::BadPlanStep(step.from));
            }
            if !super::instance::move_allowed(instance, &cur, step.from, step.dir) {
                return Err(InstanceError::NotFree.into());
            }
            cur = cur.moved(step.from, step.dir.step(step.from));
            out.push(cur.clone());
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
struct MoveEntry {
    target: u16,
    /// DictGonary ids whose squares overlap the swept area, excluding the
    /// moving robot's own start. Occupancy of any of them blocks the move.
    conflicts: Vec<u16>,
}

/// The static skeleton of a search: every statically-legal robot position
/// (the "terminal configurations" of the workspace), plus per-position move
/// tables against the fixed obstacles. Robot-robot interaction is resolved
/// per state via the precomputed conflict lists.
pub struct StateSpace<'a> {
    pub instance: &'a Instance,
    positions: Vec<Point>,
    index: HashMap<Point, u16>,
    moves: Vec<[Option<MoveEntry>; 4]>,
    words: usize,
}

impl<'a> StateSpace<'a> {
    pub fn new(instance: &'a Instance) -> StateSpace<'a> {
        let positions = instance.free_positions();
        assert!(positions.len() < u16::MAX as usize, "position dictionary overflow");
        let index: HashMap<Point, u16> = positions
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as u16))
            .collect();
        let mut moves = Vec::with_capacity(positions.len());
        for &p in &positions {
            let mut entry: [Option<MoveEntry>; 4] = [None, None, None, None];
            for (di, d) in DIRS.iter().enumerate() {
                let target = d.step(p);
                let Some(&tid) = index.get(&target) else {
                    continue;
                };
                let swept = swept_box(p, *d);
                if !instance.region_free(&swept) {
                    continue;
                }
                let mut conflicts = Vec::new();
                // Only centers within one half-step of the swept box can
                // overlap it.
                for x in swept.x0..=swept.x1 {
                    for y in swept.y0..=swept.y1 {
                        let q = Point { x, y };
                        if q == p {
                            continue;
                        }
                        if let Some(&qid) = index.get(&q) {
                            if robot_box(q).interiors_overlap(&swept) {
                                conflicts.push(qid);
                            }
                        }
                    }
                }
                entry[di] = Some(MoveEntry {
                    target: tid,
                    conflicts,
                });
            }
            moves.push(entry);
        }
        let words = positions.len().div_ceil(64);
        StateSpace {
            instance,
            positions,
            index,
            moves,
            words,
        }
    }

    pub fn position_count(&self) -> usize {
        self.positions.len()
    }

    /// Static move table of one position: `(direction, target, conflicts)`.
    /// The move is legal in a state iff the target and every conflict id are
    /// unoccupied by the other robots.
    pub(crate) fn move_entries(
        &self,
        pid: u16,
    ) -> impl Iterator<Item = (Dir, u16, &[u16])> + '_ {
        self.moves[pid as usize]
            .iter()
            .enumerate()
            .filter_map(|(di, e)| {
                e.as_ref()
                    .map(|e| (DIRS[di], e.target, e.conflicts.as_slice()))
            })
    }

    pub fn position(&self, id: u16) -> Point {
        self.positions[id as usize]
    }

    pub fn id_of(&self, p: Point) -> Option<u16> {
        self.index.get(&p).copied()
    }

    fn encode(&self, config: &MultiConfig) -> Result<Box<[u64]>, MotionError> {
        let mut bits = vec![0u64; self.words].into_boxed_slice();
        for &p in config.positions() {
            let id = self
                .id_of(p)
                .ok_or(InstanceError::NotInFreeSpace(p))? as usize;
            bits[id / 64] |= 1 << (id % 64);
        }
        Ok(bits)
    }

    fn decode(&self, bits: &[u64]) -> MultiConfig {
        let mut ps = Vec::new();
        for (w, &word) in bits.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let i = x.trailing_zeros() as usize;
                ps.push(self.positions[w * 64 + i]);
                x &= x - 1;
            }
        }
        MultiConfig::new(ps)
    }

    fn occupied(bits: &[u64], id: u16) -> bool {
        bits[id as usize / 64] >> (id as usize % 64) & 1 == 1
    }

    /// Explore the move graph from the given sources (breadth-first), up to
    /// `pred` saying stop or the state cap. Returns the exploration either
    /// way; `hit` records the first state satisfying `pred`, if any.
    pub fn explore(
        &self,
        sources: &[MultiConfig],
        mut pred: impl FnMut(&MultiConfig) -> bool,
        limits: &SearchLimits,
    ) -> Result<Exploration, MotionError> {
        let mut ex = Exploration {
            states: Vec::new(),
            index: HashMap::new(),
            parent: Vec::new(),
            hit: None,
            complete: false,
        };
        let mut queue = VecDeque::new();
        for s in sources {
            if s.len() != self.instance.robot_count {
                return Err(MotionError::SizeMismatch {
                    start: s.len(),
                    target: self.instance.robot_count,
                });
            }
            if !is_free(self.instance, s) {
                return Err(InstanceError::NotFree.into());
            }
            let bits = self.encode(s)?;
            if ex.index.contains_key(&bits) {
                continue;
            }
            let id = ex.push(bits, None);
            if pred(s) && ex.hit.is_none() {
                ex.hit = Some(id);
                return Ok(ex);
            }
            queue.push_back(id);
        }
        while let Some(cur) = queue.pop_front() {
            let bits = ex.states[cur as usize].clone();
            for (w, &word) in bits.iter().enumerate() {
                let mut x = word;
                while x != 0 {
                    let i = x.trailing_zeros() as usize;
                    x &= x - 1;
                    let pid = (w * 64 + i) as u16;
                    for (di, entry) in self.moves[pid as usize].iter().enumerate() {
                        let Some(entry) = entry else { continue };
                        if Self::occupied(&bits, entry.target) {
                            continue;
                        }
                        if entry
                            .conflicts
                            .iter()
                            .any(|&q| Self::occupied(&bits, q))
                        {
                            continue;
                        }
                        let mut next = bits.clone();
                        next[pid as usize / 64] &= !(1 << (pid as usize % 64));
                        next[entry.target as usize / 64] |= 1 << (entry.target as usize % 64);
                        if ex.index.contains_key(&next) {
                            continue;
                        }
                        if ex.states.len() >= limits.max_states {
                            return Err(MotionError::StateCapExceeded {
                                cap: limits.max_states,
                            });
                        }
                        let nid = ex.push(
                            next,
                            Some(Parent {
                                state: cur,
                                from: pid,
                                dir: DIRS[di],
                            }),
                        );
                        let cfg = self.decode(&ex.states[nid as usize]);
                        if pred(&cfg) && ex.hit.is_none() {
                            ex.hit = Some(nid);
                            return Ok(ex);
                        }
                        queue.push_back(nid);
                    }
                }
            }
        }
        ex.complete = true;
        Ok(ex)
    }

    pub fn config_of(&self, ex: &Exploration, state: u32) -> MultiConfig {
        self.decode(&ex.states[state as usize])
    }

    /// Shortest plan from the source set to `state`.
    pub fn plan_to(&self, ex: &Exploration, state: u32) -> PathPlan {
        let mut steps = Vec::new();
        let mut cur = state;
        while let Some(par) = ex.parent[cur as usize] {
            steps.push(PlanStep {
                from: self.position(par.from),
                dir: par.dir,
            });
            cur = par.state;
        }
        steps.reverse();
        PathPlan {
            start: self.decode(&ex.states[cur as usize]),
            steps,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Parent {
    state: u32,
    from: u16,
    dir: Dir,
}

/// The explored portion of a move graph.
pub struct Exploration {
    states: Vec<Box<[u64]>>,
    index: HashMap<Box<[u64]>, u32>,
    parent: Vec<Option<Parent>>,
    /// First state satisfying the search predicate, if the search was a query.
    pub hit: Option<u32>,
    /// True when the whole component (of all sources) was exhausted.
    pub complete: bool,
}

impl Exploration {
    fn push(&mut self, bits: Box<[u64]>, parent: Option<Parent>) -> u32 {
        let id = self.states.len() as u32;
        self.index.insert(bits.clone(), id);
        self.states.push(bits);
        self.parent.push(parent);
        id
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state_ids(&self) -> impl Iterator<Item = u32> {
        0..self.states.len() as u32
    }
}

fn check_free_with_count(instance: &Instance, c: &MultiConfig) -> Result<(), MotionError> {
    if c.len() != instance.robot_count {
        return Err(MotionError::SizeMismatch {
            start: c.len(),
            target: instance.robot_count,
        });
    }
    if !is_free(instance, c) {
        return Err(InstanceError::NotFree.into());
    }
    Ok(())
}

/// Is the target position set reachable from the start set, identities
/// ignored? Returns a shortest plan when it is.
pub fn solve_multi_to_multi(
    instance: &Instance,
    start: &MultiConfig,
    target: &MultiConfig,
) -> Result<(bool, Option<PathPlan>), MotionError> {
    solve_multi_to_multi_limited(instance, start, target, &SearchLimits::default())
}

pub fn solve_multi_to_multi_limited(
    instance: &Instance,
    start: &MultiConfig,
    target: &MultiConfig,
    limits: &SearchLimits,
) -> Result<(bool, Option<PathPlan>), MotionError> {
    if start.len() != target.len() {
        return Err(MotionError::SizeMismatch {
            start: start.len(),
            target: target.len(),
        });
    }
    check_free_with_count(instance, start)?;
    check_free_with_count(instance, target)?;
    let space = StateSpace::new(instance);
    let ex = space.explore(std::slice::from_ref(start), |c| c == target, limits)?;
    match ex.hit {
        Some(id) => Ok((true, Some(space.plan_to(&ex, id)))),
        None => Ok((false, None)),
    }
}

/// Can any robot reach `t` from the start configuration?
pub fn solve_multi_to_single(
    instance: &Instance,
    start: &MultiConfig,
    t: Point,
    limits: &SearchLimits,
) -> Result<(bool, Option<PathPlan>), MotionError> {
    check_free_with_count(instance, start)?;
    if !instance.position_free(t) {
        return Err(InstanceError::NotInFreeSpace(t).into());
    }
    let space = StateSpace::new(instance);
    let ex = space.explore(std::slice::from_ref(start), |c| c.contains(t), limits)?;
    match ex.hit {
        Some(id) => Ok((true, Some(space.plan_to(&ex, id)))),
        None => Ok((false, None)),
    }
}

/// Can the specific robot that starts at `s` reach `t`? The search tracks
/// that one identity: a state is the tracked robot's position plus the set
/// of the others.
pub fn solve_multi_to_single_restricted(
    instance: &Instance,
    start: &MultiConfig,
    s: Point,
    t: Point,
    limits: &SearchLimits,
) -> Result<(bool, Option<PathPlan>), MotionError> {
    check_free_with_count(instance, start)?;
    if !start.contains(s) {
        return Err(InstanceError::NotAStartPosition(s).into());
    }
    if !instance.position_free(t) {
        return Err(InstanceError::NotInFreeSpace(t).into());
    }
    let space = StateSpace::new(instance);
    let others = MultiConfig::new(
        start
            .positions()
            .iter()
            .copied()
            .filter(|&p| p != s)
            .collect(),
    );
    let sid = space.id_of(s).ok_or(InstanceError::NotInFreeSpace(s))?;
    let others_bits = space.encode(&others)?;

    type TrackedState = (u16, Box<[u64]>);
    let mut seen: HashMap<TrackedState, Option<(TrackedState, PlanStep)>> = HashMap::new();
    let mut queue = VecDeque::new();
    let start_state = (sid, others_bits);
    seen.insert(start_state.clone(), None);
    queue.push_back(start_state);
    let mut found: Option<TrackedState> = None;
    'bfs: while let Some(cur) = queue.pop_front() {
        if space.position(cur.0) == t {
            found = Some(cur);
            break;
        }
        // Moves of the tracked robot.
        let occupied_with =
            |bits: &[u64], extra: u16, id: u16| StateSpace::occupied(bits, id) || id == extra;
        for (di, entry) in space.moves[cur.0 as usize].iter().enumerate() {
            if let Some(entry) = entry {
                if !StateSpace::occupied(&cur.1, entry.target)
                    && !entry
                        .conflicts
                        .iter()
                        .any(|&q| StateSpace::occupied(&cur.1, q))
                {
                    let next = (entry.target, cur.1.clone());
                    if !seen.contains_key(&next) {
                        if seen.len() >= limits.max_states {
                            return Err(MotionError::StateCapExceeded {
                                cap: limits.max_states,
                            });
                        }
                        seen.insert(
                            next.clone(),
                            Some((
                                cur.clone(),
                                PlanStep {
                                    from: space.position(cur.0),
                                    dir: DIRS[di],
                                },
                            )),
                        );
                        if space.position(entry.target) == t {
                            found = Some(next);
                            break 'bfs;
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        // Moves of the others.
        let bits = cur.1.clone();
        for (w, &word) in bits.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let i = x.trailing_zeros() as usize;
                x &= x - 1;
                let pid = (w * 64 + i) as u16;
                for (di, entry) in space.moves[pid as usize].iter().enumerate() {
                    let Some(entry) = entry else { continue };
                    if occupied_with(&bits, cur.0, entry.target) {
                        continue;
                    }
                    if entry
                        .conflicts
                        .iter()
                        .any(|&q| occupied_with(&bits, cur.0, q))
                    {
                        continue;
                    }
                    let mut nb = bits.clone();
                    nb[pid as usize / 64] &= !(1 << (pid as usize % 64));
                    nb[entry.target as usize / 64] |= 1 << (entry.target as usize % 64);
                    let next = (cur.0, nb);
                    if !seen.contains_key(&next) {
                        if seen.len() >= limits.max_states {
                            return Err(MotionError::StateCapExceeded {
                                cap: limits.max_states,
                            });
                        }
                        seen.insert(
                            next.clone(),
                            Some((
                                cur.clone(),
                                PlanStep {
                                    from: space.position(pid),
                                    dir: DIRS[di],
                                },
                            )),
                        );
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    match found {
        Some(end) => {
            let mut steps = Vec::new();
            let mut cur = end;
            while let Some(Some((prev, step))) = seen.get(&cur) {
                steps.push(*step);
                cur = prev.clone();
            }
            steps.reverse();
            Ok((
                true,
                Some(PathPlan {
                    start: start.clone(),
                    steps,
                }),
            ))
        }
        None => Ok((false, None)),
    }
}

/// Enumerate free multi-configurations of `m` robots, optionally required
/// to contain `must_contain`, in lexicographic position order. Errors out
/// beyond `cap` configurations.
pub fn enumerate_free_configs(
    instance: &Instance,
    must_contain: Option<Point>,
    cap: usize,
) -> Result<Vec<MultiConfig>, MotionError> {
    let space = StateSpace::new(instance);
    let n = space.position_count();
    let m = instance.robot_count;
    let anchor = match must_contain {
        Some(p) => Some(
            space
                .id_of(p)
                .ok_or(InstanceError::NotInFreeSpace(p))?,
        ),
        None => None,
    };
    // Pairwise compatibility: squares whose interiors overlap.
    let incompatible: Vec<Vec<u16>> = (0..n)
        .map(|i| {
            let pi = space.position(i as u16);
            (0..n)
                .filter(|&j| j != i)
                .filter(|&j| robot_box(space.position(j as u16)).interiors_overlap(&robot_box(pi)))
                .map(|j| j as u16)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<u16> = Vec::new();
    fn recurse(
        next: usize,
        n: usize,
        m: usize,
        anchor: Option<u16>,
        incompatible: &[Vec<u16>],
        chosen: &mut Vec<u16>,
        out: &mut Vec<Vec<u16>>,
        cap: usize,
    ) -> Result<(), MotionError> {
        if chosen.len() == m {
            if let Some(a) = anchor {
                if !chosen.contains(&a) {
                    return Ok(());
                }
            }
            if out.len() >= cap {
                return Err(MotionError::SourceCapExceeded { cap });
            }
            out.push(chosen.clone());
            return Ok(());
        }
        if n - next < m - chosen.len() {
            return Ok(());
        }
        // If the anchor is still unchosen and about to be skipped, prune.
        if let Some(a) = anchor {
            if (a as usize) < next && !chosen.contains(&a) {
                return Ok(());
            }
        }
        for i in next..n {
            let id = i as u16;
            if incompatible[i].iter().any(|q| chosen.contains(q)) {
                continue;
            }
            chosen.push(id);
            recurse(i + 1, n, m, anchor, incompatible, chosen, out, cap)?;
            chosen.pop();
            if let Some(a) = anchor {
                if id == a {
                    // Skipping the anchor makes all further branches moot.
                    return Ok(());
                }
            }
        }
        Ok(())
    }
    let mut raw = Vec::new();
    recurse(0, n, m, anchor, &incompatible, &mut chosen, &mut raw, cap)?;
    for ids in raw {
        out.push(MultiConfig::new(
            ids.iter().map(|&i| space.position(i)).collect(),
        ));
    }
    Ok(out)
}

/// Do free configurations `S` containing `s` and `T` containing `t` exist
/// with `S` movable to `T`? Decided by multi-source search over every free
/// configuration containing `s`, so both caps apply.
pub fn solve_single_to_single(
    instance: &Instance,
    s: Point,
    t: Point,
    limits: &SearchLimits,
) -> Result<bool, MotionError> {
    if !instance.position_free(s) {
        return Err(InstanceError::NotInFreeSpace(s).into());
    }
    if !instance.position_free(t) {
        return Err(InstanceError::NotInFreeSpace(t).into());
    }
    let sources = enumerate_free_configs(instance, Some(s), limits.max_sources)?;
    if sources.is_empty() {
        return Ok(false);
    }
    let space = StateSpace::new(instance);
    let ex = space.explore(&sources, |c| c.contains(t), limits)?;
    Ok(ex.hit.is_some())
}

/// Labeled reachability: every robot must reach its assigned target.
/// `assignment[i]` is the target of the robot starting at `start[i]`
/// (both sides in the order given).
pub fn solve_labeled(
    instance: &Instance,
    start: &[Point],
    assignment: &[Point],
    limits: &SearchLimits,
) -> Result<(bool, Option<PathPlan>), MotionError> {
    if start.len() != assignment.len() {
        return Err(MotionError::BadAssignment);
    }
    let start_cfg = MultiConfig::new(start.to_vec());
    let target_cfg = MultiConfig::new(assignment.to_vec());
    check_free_with_count(instance, &start_cfg)?;
    check_free_with_count(instance, &target_cfg)?;
    if start_cfg.len() != start.len() || target_cfg.len() != assignment.len() {
        // Duplicate positions collapse in a MultiConfig; reject them.
        return Err(MotionError::BadAssignment);
    }
    let space = StateSpace::new(instance);
    let ids: Result<Vec<u16>, MotionError> = start
        .iter()
        .map(|&p| {
            space
                .id_of(p)
                .ok_or_else(|| InstanceError::NotInFreeSpace(p).into())
        })
        .collect();
    let start_state = ids?;
    let target_ids: Result<Vec<u16>, MotionError> = assignment
        .iter()
        .map(|&p| {
            space
                .id_of(p)
                .ok_or_else(|| InstanceError::NotInFreeSpace(p).into())
        })
        .collect();
    let target_state = target_ids?;

    let mut seen: HashMap<Vec<u16>, Option<(Vec<u16>, PlanStep)>> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start_state.clone(), None);
    queue.push_back(start_state.clone());
    let mut found = start_state == target_state;
    let mut end = start_state.clone();
    while !found {
        let Some(cur) = queue.pop_front() else { break };
        for ri in 0..cur.len() {
            let pid = cur[ri];
            for (di, entry) in space.moves[pid as usize].iter().enumerate() {
                let Some(entry) = entry else { continue };
                if cur.iter().any(|&q| q == entry.target) {
                    continue;
                }
                if entry
                    .conflicts
                    .iter()
                    .any(|&q| cur.iter().enumerate().any(|(rj, &r)| rj != ri && r == q))
                {
                    continue;
                }
                let mut next = cur.clone();
                next[ri] = entry.target;
                if seen.contains_key(&next) {
                    continue;
                }
                if seen.len() >= limits.max_states {
                    return Err(MotionError::StateCapExceeded {
                        cap: limits.max_states,
                    });
                }
                seen.insert(
                    next.clone(),
                    Some((
                        cur.clone(),
                        PlanStep {
                            from: space.position(pid),
                            dir: DIRS[di],
                        },
                    )),
                );
                if next == target_state {
                    found = true;
                    end = next;
                    break;
                }
                queue.push_back(next);
            }
            if found {
                break;
            }
        }
    }
    if !found {
        return Ok((false, None));
    }
    let mut steps = Vec::new();
    let mut cur = end;
    while let Some(Some((prev, step))) = seen.get(&cur) {
        steps.push(*step);
        cur = prev.clone();
    }
    steps.reverse();
    Ok((
        true,
        Some(PathPlan {
            start: start_cfg,
            steps,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{pt, rect};

    fn corridor() -> Instance {
        // 1-unit-tall corridor, 5 units long: robots cannot pass each other.
        Instance::new(vec![], vec![], 2, rect(0, 0, 10, 2)).unwrap()
    }

    #[test]
    fn identity_is_reachable() {
        let inst = corridor();
        let s = MultiConfig::new(vec![pt(1, 1), pt(3, 1)]);
        let (yes, plan) = solve_multi_to_multi(&inst, &s, &s).unwrap();
        assert!(yes);
        assert!(plan.unwrap().is_empty());
    }

    #[test]
    fn corridor_swap_is_impossible_unlabeled_set_but_trivial() {
        // The SET {a, b} equals the set {b, a}: unlabeled m2m is trivially
        // yes. The labeled swap is the impossible one.
        let inst = corridor();
        let a = pt(1, 1);
        let b = pt(9, 1);
        let s = MultiConfig::new(vec![a, b]);
        let (yes, _) = solve_multi_to_multi(&inst, &s, &s).unwrap();
        assert!(yes);
        let (yes, _) =
            solve_labeled(&inst, &[a, b], &[b, a], &SearchLimits::default()).unwrap();
        assert!(!yes, "two robots cannot swap in a one-lane corridor");
        // Identity assignment works.
        let (yes, _) =
            solve_labeled(&inst, &[a, b], &[a, b], &SearchLimits::default()).unwrap();
        assert!(yes);
    }

    #[test]
    fn unlabeled_shift_in_corridor() {
        let inst = corridor();
        let s = MultiConfig::new(vec![pt(1, 1), pt(3, 1)]);
        let t = MultiConfig::new(vec![pt(7, 1), pt(9, 1)]);
        let (yes, plan) = solve_multi_to_multi(&inst, &s, &t).unwrap();
        assert!(yes);
        let plan = plan.unwrap();
        let states = plan.replay(&inst).unwrap();
        assert_eq!(states.last().unwrap(), &t);
        // Shortest: each robot travels 6 half-steps.
        assert_eq!(plan.len(), 12);
    }

    #[test]
    fn multi_to_single_immediate_and_blocked() {
        let inst = corridor();
        let s = MultiConfig::new(vec![pt(1, 1), pt(3, 1)]);
        // t already occupied by some robot.
        let (yes, plan) =
            solve_multi_to_single(&inst, &s, pt(3, 1), &SearchLimits::default()).unwrap();
        assert!(yes);
        assert!(plan.unwrap().is_empty());
        // t at the far end: reachable by the front robot.
        let (yes, _) =
            solve_multi_to_single(&inst, &s, pt(9, 1), &SearchLimits::default()).unwrap();
        assert!(yes);
        // t inside an obstacle is a precondition error.
        let wall = crate::geom::RectPolygon::from_rect(rect(4, 0, 6, 2));
        let blocked = Instance::new(vec![wall], vec![], 2, rect(0, 0, 10, 2)).unwrap();
        assert!(matches!(
            solve_multi_to_single(
                &blocked,
                &MultiConfig::new(vec![pt(1, 1), pt(3, 1)]),
                pt(5, 1),
                &SearchLimits::default()
            ),
            Err(MotionError::Instance(InstanceError::NotInFreeSpace(_)))
        ));
    }

    #[test]
    fn restricted_differs_from_unrestricted() {
        // Corridor with the tracked robot boxed in behind another: any
        // robot can reach the far end, but the tracked one cannot pass.
        let inst = corridor();
        let a = pt(1, 1); // tracked, behind
        let b = pt(3, 1); // in front
        let s = MultiConfig::new(vec![a, b]);
        let t = pt(9, 1);
        let (any_yes, _) =
            solve_multi_to_single(&inst, &s, t, &SearchLimits::default()).unwrap();
        assert!(any_yes);
        let (yes, _) =
            solve_multi_to_single_restricted(&inst, &s, a, t, &SearchLimits::default()).unwrap();
        assert!(!yes, "tracked robot cannot overtake in the corridor");
        let (yes, plan) =
            solve_multi_to_single_restricted(&inst, &s, b, t, &SearchLimits::default()).unwrap();
        assert!(yes);
        plan.unwrap().replay(&inst).unwrap();
    }

    #[test]
    fn restricted_s_equals_t() {
        let inst = corridor();
        let s = MultiConfig::new(vec![pt(1, 1), pt(3, 1)]);
        let (yes, _) =
            solve_multi_to_single_restricted(&inst, &s, pt(1, 1), pt(1, 1), &SearchLimits::default())
                .unwrap();
        assert!(yes);
        // s not in S is an argument error.
        assert!(matches!(
            solve_multi_to_single_restricted(
                &inst,
                &s,
                pt(5, 1),
                pt(1, 1),
                &SearchLimits::default()
            ),
            Err(MotionError::Instance(InstanceError::NotAStartPosition(_)))
        ));
    }

    #[test]
    fn single_to_single_basics() {
        let inst = corridor();
        // m = 2: some free pair containing s exists and t is reachable.
        assert!(solve_single_to_single(&inst, pt(1, 1), pt(9, 1), &SearchLimits::default())
            .unwrap());
        // s = t trivially true.
        assert!(solve_single_to_single(&inst, pt(5, 1), pt(5, 1), &SearchLimits::default())
            .unwrap());
        // m = 1 degenerates to single-robot reachability across a wall.
        let wall = crate::geom::RectPolygon::from_rect(rect(4, 0, 6, 2));
        let blocked = Instance::new(vec![wall], vec![], 1, rect(0, 0, 10, 2)).unwrap();
        assert!(
            !solve_single_to_single(&blocked, pt(1, 1), pt(9, 1), &SearchLimits::default())
                .unwrap()
        );
    }

    #[test]
    fn enumerate_free_configs_counts() {
        // 2-unit-square room (4x4 halves): 3x3 = 9 centers, pairs must not
        // overlap. Count by oracle: all C(9,2)=36 pairs minus overlapping
        // ones. Overlapping pairs are those at Chebyshev distance < 2.
        let inst = Instance::new(vec![], vec![], 2, rect(0, 0, 4, 4)).unwrap();
        let all = enumerate_free_configs(&inst, None, 10_000).unwrap();
        let centers: Vec<Point> = inst.free_positions();
        assert_eq!(centers.len(), 9);
        let mut expect = 0;
        for i in 0..centers.len() {
            for j in i + 1..centers.len() {
                if !robot_box(centers[i]).interiors_overlap(&robot_box(centers[j])) {
                    expect += 1;
                }
            }
        }
        assert_eq!(all.len(), expect);
        // Anchored enumeration only keeps pairs containing the corner.
        let anchored = enumerate_free_configs(&inst, Some(pt(1, 1)), 10_000).unwrap();
        assert!(anchored.iter().all(|c| c.contains(pt(1, 1))));
        assert!(anchored.len() < all.len());
    }

    #[test]
    fn state_cap_is_reported() {
        let inst = Instance::new(vec![], vec![], 3, rect(0, 0, 12, 12)).unwrap();
        let s = MultiConfig::new(vec![pt(1, 1), pt(3, 1), pt(5, 1)]);
        let t = MultiConfig::new(vec![pt(11, 11), pt(9, 11), pt(7, 11)]);
        let limits = SearchLimits {
            max_states: 50,
            max_sources: 50,
        };
        assert!(matches!(
            solve_multi_to_multi_limited(&inst, &s, &t, &limits),
            Err(MotionError::StateCapExceeded { cap: 50 })
        ));
    }
}
