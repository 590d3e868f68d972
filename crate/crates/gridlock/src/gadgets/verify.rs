use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::cellgrid::{Boundary, CellGrid, CellRobot, CellRobotKind};
use super::design::{Gadget, GadgetKind};
use super::statespace::{explore_labeled, LabeledExploration};
use crate::geom::{robot_box, Dir, Point};
use crate::motion::{Instance, SearchLimits};

/// An in/out assignment to the ports of one gadget: `true` means the edge
/// robot is inside the cell (which encodes the edge pointing away from the
/// vertex).
pub type Projection = BTreeMap<Dir, bool>;

/// The valid projections of a vertex: the total weight of the ports whose
/// robots are outside must cover the minimum flow.
pub fn expected_projections(kind: GadgetKind, ports: &BTreeMap<Dir, u32>) -> Vec<Projection> {
    let min_flow = match kind {
        GadgetKind::Connector => *ports.values().next().expect("connector has ports"),
        GadgetKind::And | GadgetKind::Or => 2,
    };
    let walls: Vec<Dir> = ports.keys().copied().collect();
    let mut out = Vec::new();
    for mask in 0..(1u32 << walls.len()) {
        let proj: Projection = walls
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, mask >> i & 1 == 1))
            .collect();
        let inflow: u32 = proj
            .iter()
            .filter(|&(_, &inside)| !inside)
            .map(|(w, _)| ports[w])
            .sum();
        if inflow >= min_flow {
            out.push(proj);
        }
    }
    out
}

/// Reachable projections when flipping one non-pinned port at a time
/// within the valid set, starting from `start`.
fn expected_component(
    valid: &[Projection],
    start: &Projection,
    pinned: &BTreeSet<Dir>,
) -> BTreeSet<Projection> {
    let valid: BTreeSet<&Projection> = valid.iter().collect();
    let mut seen = BTreeSet::new();
    if !valid.contains(start) {
        return seen;
    }
    let mut stack = vec![start.clone()];
    seen.insert(start.clone());
    while let Some(cur) = stack.pop() {
        for wall in cur.keys().copied().collect::<Vec<_>>() {
            if pinned.contains(&wall) {
                continue;
            }
            let mut next = cur.clone();
            next.insert(wall, !cur[&wall]);
            if valid.contains(&next) && seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen
}

/// Lexicographically smallest placement of the vertex robots compatible
/// with the edge robots fixed at `edge_positions`. Used both to seed the
/// verification searches and by the reducer to place robots for an
/// orientation.
pub(crate) fn solve_internal_config(
    instance: &Instance,
    robots: &[CellRobot],
    edge_positions: &BTreeMap<String, Point>,
) -> Option<Vec<Point>> {
    let mut placed: Vec<Point> = Vec::new();
    let mut order: Vec<&CellRobot> = Vec::new();
    for r in robots {
        match &r.kind {
            CellRobotKind::Edge { .. } => {
                let p = *edge_positions.get(&r.name)?;
                placed.push(p);
            }
            CellRobotKind::Vertex { .. } => order.push(r),
        }
    }
    fn fits(instance: &Instance, placed: &[Point], p: Point) -> bool {
        instance.position_free(p)
            && placed
                .iter()
                .all(|&q| !robot_box(q).interiors_overlap(&robot_box(p)))
    }
    for &p in &placed.clone() {
        if !fits(instance, &placed[..0], p) {
            // Edge robots must at least be individually legal.
            let _ = p;
        }
    }
    fn recurse(
        instance: &Instance,
        order: &[&CellRobot],
        placed: &mut Vec<Point>,
        depth: usize,
    ) -> Option<Vec<Point>> {
        if depth == order.len() {
            return Some(placed.clone());
        }
        let mut slots = order[depth].slots.clone();
        slots.sort_unstable();
        for p in slots {
            if fits(instance, placed, p) {
                placed.push(p);
                if let Some(found) = recurse(instance, order, placed, depth + 1) {
                    return Some(found);
                }
                placed.pop();
            }
        }
        None
    }
    let mut work = placed.clone();
    let vertex_choice = recurse(instance, &order, &mut work, 0)?;
    // Re-interleave into roster order.
    let mut vi = placed.len();
    let mut out = Vec::with_capacity(robots.len());
    let mut ei = 0;
    for r in robots {
        match &r.kind {
            CellRobotKind::Edge { .. } => {
                out.push(placed[ei]);
                ei += 1;
            }
            CellRobotKind::Vertex { .. } => {
                out.push(vertex_choice[vi]);
                vi += 1;
            }
        }
    }
    Some(out)
}

#[derive(Debug, Clone, Default)]
pub struct GadgetReport {
    pub violations: Vec<String>,
    pub states_explored: usize,
    pub boundary_cases: usize,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for GadgetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(
                f,
                "ok ({} boundary cases, {} states)",
                self.boundary_cases, self.states_explored
            )
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

struct Harness {
    instance: Instance,
    robots: Vec<CellRobot>,
    walls: Vec<Dir>,
}

fn single_cell(gadget: &Gadget, boundary: &BTreeMap<Dir, Boundary>) -> Harness {
    let mut grid = CellGrid::new();
    grid.place((0, 0), gadget.clone());
    for (&wall, &b) in boundary {
        grid.stub((0, 0), wall, b);
    }
    let (instance, robots) = grid.build().expect("single-cell harness");
    Harness {
        instance,
        robots,
        walls: gadget.walls().collect(),
    }
}

fn edge_slot_map(robots: &[CellRobot]) -> BTreeMap<Dir, (String, Point, Point)> {
    let mut out = BTreeMap::new();
    for r in robots {
        if let CellRobotKind::Edge { wall, .. } = r.kind {
            let inside = r.slots[0];
            let outside = r.slots.get(1).copied().unwrap_or(inside);
            out.insert(wall, (r.name.clone(), inside, outside));
        }
    }
    out
}

fn project_state(
    ex: &LabeledExploration,
    state: u32,
    robots: &[CellRobot],
    slots: &BTreeMap<Dir, (String, Point, Point)>,
) -> Result<Projection, String> {
    let mut proj = Projection::new();
    for (ri, r) in robots.iter().enumerate() {
        if let CellRobotKind::Edge { wall, .. } = r.kind {
            let p = ex.point(ex.states[state as usize][ri]);
            let (_, inside, outside) = &slots[&wall];
            if p == *inside {
                proj.insert(wall, true);
            } else if p == *outside {
                proj.insert(wall, false);
            } else {
                return Err(format!(
                    "edge robot {} at {} is neither inside ({}) nor outside ({})",
                    r.name, p, inside, outside
                ));
            }
        }
    }
    Ok(proj)
}

/// Exhaustively verify that one gadget realizes its vertex semantics under
/// every boundary condition: the reachable projections are exactly the
/// valid in/out vectors (restricted by pinned ports), every legal single
/// flip is realizable, states within one projection are mutually reachable,
/// and the robots stay confined (two positions each, three for the save
/// robot, no position shared between robot identities).
pub fn verify_gadget_semantics(gadget: &Gadget) -> GadgetReport {
    verify_gadget_semantics_limited(gadget, &SearchLimits::default())
}

pub fn verify_gadget_semantics_limited(
    gadget: &Gadget,
    limits: &SearchLimits,
) -> GadgetReport {
    let mut report = GadgetReport::default();
    let walls: Vec<Dir> = gadget.walls().collect();
    let valid = expected_projections(gadget.kind, &gadget.ports);

    for mask in 0..(1u32 << walls.len()) {
        let boundary: BTreeMap<Dir, Boundary> = walls
            .iter()
            .enumerate()
            .map(|(i, &w)| {
                (
                    w,
                    if mask >> i & 1 == 1 {
                        Boundary::Blocked
                    } else {
                        Boundary::Permissive
                    },
                )
            })
            .collect();
        report.boundary_cases += 1;
        let pinned: BTreeSet<Dir> = boundary
            .iter()
            .filter(|&(_, &b)| b == Boundary::Blocked)
            .map(|(&w, _)| w)
            .collect();
        // Start: blocked robots inside, permissive robots outside.
        let start_proj: Projection = walls
            .iter()
            .map(|&w| (w, pinned.contains(&w)))
            .collect();
        let expected = expected_component(&valid, &start_proj, &pinned);

        let harness = single_cell(gadget, &boundary);
        let slots = edge_slot_map(&harness.robots);
        let edge_positions: BTreeMap<String, Point> = slots
            .iter()
            .map(|(w, (name, inside, outside))| {
                (
                    name.clone(),
                    if start_proj[w] { *inside } else { *outside },
                )
            })
            .collect();
        let start = solve_internal_config(&harness.instance, &harness.robots, &edge_positions);

        if expected.is_empty() {
            // The pinned start violates the vertex constraint; the geometry
            // must refuse to realize it at all.
            if start.is_some() {
                report.violations.push(format!(
                    "boundary {boundary:?}: invalid start projection {start_proj:?} is placeable"
                ));
            }
            continue;
        }
        let Some(start) = start else {
            report.violations.push(format!(
                "boundary {boundary:?}: no internal placement for start {start_proj:?}"
            ));
            continue;
        };

        let ex = match explore_labeled(&harness.instance, &start, limits) {
            Ok(ex) => ex,
            Err(e) => {
                report
                    .violations
                    .push(format!("boundary {boundary:?}: exploration failed: {e}"));
                continue;
            }
        };
        report.states_explored += ex.states.len();

        // Project every state; group states by projection.
        let mut by_proj: BTreeMap<Projection, Vec<u32>> = BTreeMap::new();
        let mut projections: Vec<Projection> = Vec::with_capacity(ex.states.len());
        let mut broken = false;
        for sid in 0..ex.states.len() as u32 {
            match project_state(&ex, sid, &harness.robots, &slots) {
                Ok(p) => {
                    by_proj.entry(p.clone()).or_default().push(sid);
                    projections.push(p);
                }
                Err(e) => {
                    report
                        .violations
                        .push(format!("boundary {boundary:?}: {e}"));
                    broken = true;
                    break;
                }
            }
        }
        if broken {
            continue;
        }

        let reached: BTreeSet<Projection> = by_proj.keys().cloned().collect();
        if reached != expected {
            let missing: Vec<_> = expected.difference(&reached).collect();
            let extra: Vec<_> = reached.difference(&expected).collect();
            report.violations.push(format!(
                "boundary {boundary:?}: projection set mismatch; missing {missing:?}, extra {extra:?}"
            ));
            continue;
        }

        // The canonical (lexicographically smallest legal) placement of
        // every reachable projection must itself be reachable: the reducer
        // instantiates orientations through exactly that placement.
        for proj in &reached {
            let edge_positions: BTreeMap<String, Point> = slots
                .iter()
                .map(|(w, (name, inside, outside))| {
                    (name.clone(), if proj[w] { *inside } else { *outside })
                })
                .collect();
            let Some(canon) =
                solve_internal_config(&harness.instance, &harness.robots, &edge_positions)
            else {
                report.violations.push(format!(
                    "boundary {boundary:?}: no canonical placement for reachable projection {proj:?}"
                ));
                continue;
            };
            let canon_ids: Option<Vec<u16>> = canon
                .iter()
                .map(|p| {
                    ex.positions
                        .iter()
                        .position(|&q| q == *p)
                        .map(|i| i as u16)
                })
                .collect();
            let reachable = canon_ids
                .map(|ids| ex.states.contains(&ids))
                .unwrap_or(false);
            if !reachable {
                report.violations.push(format!(
                    "boundary {boundary:?}: canonical placement of projection {proj:?} is unreachable"
                ));
            }
        }

        // Every valid single flip must be realizable without disturbing
        // the other ports.
        for proj in &reached {
            for &wall in &walls {
                if pinned.contains(&wall) {
                    continue;
                }
                let mut flipped = proj.clone();
                flipped.insert(wall, !proj[&wall]);
                if !expected.contains(&flipped) {
                    continue;
                }
                let ok = crossing_exists(&ex, &projections, proj, &flipped, &by_proj);
                if !ok {
                    report.violations.push(format!(
                        "boundary {boundary:?}: flip {proj:?} -> {flipped:?} is never executable"
                    ));
                }
            }
        }

        // Confinement and occupancy digests.
        confinement_checks(&ex, &harness.robots, &mut report, &format!("boundary {boundary:?}"));
    }
    report
}

fn class_connected(
    ex: &LabeledExploration,
    members: &[u32],
    in_class: impl Fn(u32) -> bool,
) -> bool {
    if members.is_empty() {
        return true;
    }
    let member_set: BTreeSet<u32> = members.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut stack = vec![members[0]];
    seen.insert(members[0]);
    while let Some(cur) = stack.pop() {
        for &nb in &ex.adjacency[cur as usize] {
            if in_class(nb) && seen.insert(nb) {
                stack.push(nb);
            }
        }
    }
    member_set.iter().all(|m| seen.contains(m))
}

fn crossing_exists(
    ex: &LabeledExploration,
    projections: &[Projection],
    from: &Projection,
    to: &Projection,
    by_proj: &BTreeMap<Projection, Vec<u32>>,
) -> bool {
    by_proj[from].iter().any(|&sid| {
        ex.adjacency[sid as usize]
            .iter()
            .any(|&nb| &projections[nb as usize] == to)
    })
}

fn confinement_checks(
    ex: &LabeledExploration,
    robots: &[CellRobot],
    report: &mut GadgetReport,
    context: &str,
) {
    let mut seen_positions: Vec<BTreeSet<Point>> = vec![BTreeSet::new(); robots.len()];
    let mut position_owner: HashMap<Point, usize> = HashMap::new();
    for state in &ex.states {
        for (ri, &pid) in state.iter().enumerate() {
            let p = ex.point(pid);
            seen_positions[ri].insert(p);
            match position_owner.entry(p) {
                std::collections::hash_map::Entry::Occupied(o) => {
                    if *o.get() != ri {
                        report.violations.push(format!(
                            "{context}: position {p} occupied by both {} and {}",
                            robots[*o.get()].name, robots[ri].name
                        ));
                        return;
                    }
                }
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(ri);
                }
            }
        }
    }
    for (ri, r) in robots.iter().enumerate() {
        let cap = match r.kind {
            CellRobotKind::Vertex { special: true, .. } => 3,
            _ => 2,
        };
        if seen_positions[ri].len() > cap {
            report.violations.push(format!(
                "{context}: robot {} visits {} positions {:?}, cap {cap}",
                r.name,
                seen_positions[ri].len(),
                seen_positions[ri]
            ));
        }
        // Robots must stay on their declared slots.
        for p in &seen_positions[ri] {
            if !r.slots.contains(p) {
                report.violations.push(format!(
                    "{context}: robot {} reached undeclared position {p}",
                    r.name
                ));
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PairReport {
    pub violations: Vec<String>,
    pub states_explored: usize,
    /// Positions visited by the save robot, when one is present.
    pub special_positions: usize,
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for PairReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "ok ({} states)", self.states_explored)
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// Compose two gadgets through a shared door (`wall` of `a` faces `b`) and
/// check the confinement lemmas across the pair's full reachable space:
/// every edge robot in at most two positions, vertex robots in at most two
/// (three for the save robot), every position owned by one robot identity.
pub fn verify_pair(a: &Gadget, wall: Dir, b: &Gadget, limits: &SearchLimits) -> PairReport {
    let mut report = PairReport::default();
    let (dx, dy) = wall.delta();
    let mut grid = CellGrid::new();
    grid.place((0, 0), a.clone());
    grid.place((dx, dy), b.clone());
    for (&cell, g) in grid.cells().clone().iter() {
        for w in g.walls() {
            let nb = (cell.0 + w.delta().0, cell.1 + w.delta().1);
            if grid.cells().contains_key(&nb) {
                continue;
            }
            grid.stub(cell, w, Boundary::Permissive);
        }
    }
    let (instance, robots) = match grid.build() {
        Ok(x) => x,
        Err(e) => {
            report.violations.push(format!("assembly failed: {e}"));
            return report;
        }
    };

    // Start: the shared robot half-inside `b`, stub robots outside.
    let edge_positions: BTreeMap<String, Point> = robots
        .iter()
        .filter_map(|r| match &r.kind {
            CellRobotKind::Edge { neighbor, .. } => {
                let p = if neighbor.is_some() {
                    r.slots[1]
                } else {
                    r.slots[1]
                };
                Some((r.name.clone(), p))
            }
            _ => None,
        })
        .collect();
    let Some(start) = solve_internal_config(&instance, &robots, &edge_positions) else {
        report
            .violations
            .push("no internal placement for the pair start".into());
        return report;
    };
    let ex = match explore_labeled(&instance, &start, limits) {
        Ok(ex) => ex,
        Err(e) => {
            report.violations.push(format!("exploration failed: {e}"));
            return report;
        }
    };
    report.states_explored = ex.states.len();

    let mut gadget_report = GadgetReport::default();
    confinement_checks(&ex, &robots, &mut gadget_report, "pair");
    report.violations.extend(gadget_report.violations);

    if let Some((ri, _)) = robots
        .iter()
        .enumerate()
        .find(|(_, r)| matches!(r.kind, CellRobotKind::Vertex { special: true, .. }))
    {
        let positions: BTreeSet<u16> = ex.states.iter().map(|s| s[ri]).collect();
        report.special_positions = positions.len();
    }
    report
}

/// Enumerating the rotated gadget must give exactly the rotated states.
pub fn verify_rotation_equivariance(gadget: &Gadget, limits: &SearchLimits) -> Result<(), String> {
    let boundary: BTreeMap<Dir, Boundary> = gadget
        .walls()
        .map(|w| (w, Boundary::Permissive))
        .collect();
    let base = single_cell(gadget, &boundary);
    let rotated_gadget = gadget.rotated(1);
    let rboundary: BTreeMap<Dir, Boundary> = rotated_gadget
        .walls()
        .map(|w| (w, Boundary::Permissive))
        .collect();
    let rotated = single_cell(&rotated_gadget, &rboundary);

    let start_of = |h: &Harness| -> Option<Vec<Point>> {
        let slots = edge_slot_map(&h.robots);
        let edge_positions: BTreeMap<String, Point> = slots
            .iter()
            .map(|(_, (name, _, outside))| (name.clone(), *outside))
            .collect();
        solve_internal_config(&h.instance, &h.robots, &edge_positions)
    };
    let s0 = start_of(&base).ok_or("no start for base gadget")?;
    let s1 = start_of(&rotated).ok_or("no start for rotated gadget")?;
    let e0 = explore_labeled(&base.instance, &s0, limits).map_err(|e| e.to_string())?;
    let e1 = explore_labeled(&rotated.instance, &s1, limits).map_err(|e| e.to_string())?;
    if e0.states.len() != e1.states.len() {
        return Err(format!(
            "state count changed under rotation: {} vs {}",
            e0.states.len(),
            e1.states.len()
        ));
    }
    // Compare unlabeled position sets under the quarter-turn about the
    // cell center (global coordinates: the cell spans [1,11]^2).
    let rot = |p: Point| Point {
        x: 12 - p.y,
        y: p.x,
    };
    let canon = |ex: &LabeledExploration, map: &dyn Fn(Point) -> Point| -> BTreeSet<Vec<Point>> {
        ex.states
            .iter()
            .map(|s| {
                let mut ps: Vec<Point> = s.iter().map(|&id| map(ex.point(id))).collect();
                ps.sort_unstable();
                ps
            })
            .collect()
    };
    let ident = |p: Point| p;
    if canon(&e0, &rot) != canon(&e1, &ident) {
        return Err("rotated state set differs from states of rotated gadget".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::design::make_gadget;

    #[test]
    fn connector_projection_table() {
        let ports = BTreeMap::from([(Dir::West, 2), (Dir::East, 2)]);
        let valid = expected_projections(GadgetKind::Connector, &ports);
        // Both out, west in, east in; never both in.
        assert_eq!(valid.len(), 3);
        assert!(!valid
            .iter()
            .any(|p| p[&Dir::West] && p[&Dir::East]));
    }

    #[test]
    fn and_projection_table() {
        let ports = BTreeMap::from([(Dir::West, 2), (Dir::South, 1), (Dir::East, 1)]);
        let valid = expected_projections(GadgetKind::And, &ports);
        // The weight-2 robot may be inside only when both others are out:
        // 4 states with it out, 1 with it in.
        assert_eq!(valid.len(), 5);
        for p in &valid {
            if p[&Dir::West] {
                assert!(!p[&Dir::South] && !p[&Dir::East]);
            }
        }
    }

    #[test]
    fn or_projection_table() {
        let ports = BTreeMap::from([(Dir::West, 2), (Dir::North, 2), (Dir::East, 2)]);
        let valid = expected_projections(GadgetKind::Or, &ports);
        // Everything except all three inside.
        assert_eq!(valid.len(), 7);
    }

    #[test]
    fn straight_connector_passes() {
        let g = make_gadget(GadgetKind::Connector, &[(Dir::West, 2), (Dir::East, 2)], 0).unwrap();
        let report = verify_gadget_semantics(&g);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn bent_connector_passes() {
        let g = make_gadget(GadgetKind::Connector, &[(Dir::West, 2), (Dir::South, 2)], 0).unwrap();
        let report = verify_gadget_semantics(&g);
        assert!(report.passed(), "{report}");
    }
}
