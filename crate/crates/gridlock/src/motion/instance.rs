use crate::geom::{robot_box, swept_box, Dir, Point, Rect, RectPolygon, DIRS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("robot count must be positive")]
    NoRobots,
    #[error("bounds rectangle is degenerate")]
    BadBounds,
    #[error("configuration has {got} robots, instance declares {expected}")]
    WrongRobotCount { got: usize, expected: usize },
    #[error("configuration is not free")]
    NotFree,
    #[error("position {0} is not in free space")]
    NotInFreeSpace(Point),
    #[error("position {0} is not a position of the start configuration")]
    NotAStartPosition(Point),
}

/// A workspace: rectilinear polygon obstacles, point obstacles, a bounding
/// rectangle the robots must stay inside, and the robot count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub obstacles: Vec<RectPolygon>,
    pub point_obstacles: Vec<Point>,
    pub robot_count: usize,
    pub bounds: Rect,
}

impl Instance {
    pub fn new(
        obstacles: Vec<RectPolygon>,
        point_obstacles: Vec<Point>,
        robot_count: usize,
        bounds: Rect,
    ) -> Result<Instance, InstanceError> {
        if robot_count == 0 {
            return Err(InstanceError::NoRobots);
        }
        if !bounds.is_valid() {
            return Err(InstanceError::BadBounds);
        }
        Ok(Instance {
            obstacles,
            point_obstacles,
            robot_count,
            bounds,
        })
    }

    /// Can a lone robot sit at `c`? Interiors must avoid obstacles, the open
    /// interior must contain no point obstacle, and the square must stay in
    /// bounds. Touching anything is allowed.
    pub fn position_free(&self, c: Point) -> bool {
        let b = robot_box(c);
        self.region_free(&b)
    }

    /// Same rule applied to an arbitrary rectangle (used for swept areas).
    pub fn region_free(&self, r: &Rect) -> bool {
        if !self.bounds.contains_rect(r) {
            return false;
        }
        if self.obstacles.iter().any(|o| o.interior_overlaps_rect(r)) {
            return false;
        }
        !self
            .point_obstacles
            .iter()
            .any(|&p| r.contains_interior(p))
    }

    /// All centers inside the bounds at which a lone robot could sit.
    pub fn free_positions(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for y in (self.bounds.y0 + 1)..self.bounds.y1 {
            for x in (self.bounds.x0 + 1)..self.bounds.x1 {
                let c = Point { x, y };
                if self.position_free(c) {
                    out.push(c);
                }
            }
        }
        out
    }
}

/// An unordered set of robot centers. Stored sorted, so equal sets compare
/// equal regardless of the order robots were listed in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiConfig {
    positions: Vec<Point>,
}

impl MultiConfig {
    pub fn new(mut positions: Vec<Point>) -> MultiConfig {
        positions.sort_unstable();
        MultiConfig { positions }
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    /// The configuration with `from` replaced by `to`.
    pub fn moved(&self, from: Point, to: Point) -> MultiConfig {
        let mut positions = self.positions.clone();
        if let Ok(i) = positions.binary_search(&from) {
            positions[i] = to;
        }
        MultiConfig::new(positions)
    }
}

/// Is the multi-configuration free: every robot in free space and robot
/// interiors pairwise disjoint (touching allowed)?
pub fn is_free(instance: &Instance, config: &MultiConfig) -> bool {
    let ps = config.positions();
    if ps.iter().any(|&p| !instance.position_free(p)) {
        return false;
    }
    // Sorted by (x, y): only nearby centers can overlap, but the list is
    // small at desk scale; the quadratic scan is simplest and exact.
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            if ps[j].x - ps[i].x >= 2 {
                break;
            }
            if robot_box(ps[i]).interiors_overlap(&robot_box(ps[j])) {
                return false;
            }
        }
    }
    true
}

/// All legal half-step moves of single robots from `config`, sorted by
/// (position, direction order N, E, S, W).
pub fn legal_single_moves(
    instance: &Instance,
    config: &MultiConfig,
) -> Result<Vec<(Point, Dir)>, InstanceError> {
    if config.len() != instance.robot_count {
        return Err(InstanceError::WrongRobotCount {
            got: config.len(),
            expected: instance.robot_count,
        });
    }
    if !is_free(instance, config) {
        return Err(InstanceError::NotFree);
    }
    let mut out = Vec::new();
    for &p in config.positions() {
        for d in DIRS {
            if move_allowed(instance, config, p, d) {
                out.push((p, d));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The swept-area test for one robot of `config` stepping from `p` in `d`.
pub fn move_allowed(instance: &Instance, config: &MultiConfig, p: Point, d: Dir) -> bool {
    let target = d.step(p);
    if config.contains(target) {
        return false;
    }
    let swept = swept_box(p, d);
    if !instance.region_free(&swept) {
        return false;
    }
    config
        .positions()
        .iter()
        .all(|&q| q == p || !robot_box(q).interiors_overlap(&swept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{pt, rect};

    fn empty_room(w: i32, h: i32, robots: usize) -> Instance {
        Instance::new(vec![], vec![], robots, rect(0, 0, w, h)).unwrap()
    }

    #[test]
    fn touching_robots_are_free() {
        let inst = empty_room(10, 10, 2);
        // Centers 1.0 apart (2 half-units): squares share an edge.
        assert!(is_free(&inst, &MultiConfig::new(vec![pt(2, 2), pt(4, 2)])));
        // Centers 0.5 apart: interiors overlap.
        assert!(!is_free(&inst, &MultiConfig::new(vec![pt(2, 2), pt(3, 2)])));
    }

    #[test]
    fn point_obstacle_rules() {
        // On the half-unit lattice a point obstacle at a lattice point sits
        // strictly inside a robot square only when the robot is centered on
        // it; every neighbor has it on the boundary, which is allowed.
        let inst = Instance::new(vec![], vec![pt(5, 5)], 1, rect(0, 0, 10, 10)).unwrap();
        assert!(!is_free(&inst, &MultiConfig::new(vec![pt(5, 5)])));
        assert!(is_free(&inst, &MultiConfig::new(vec![pt(4, 5)])));
        assert!(is_free(&inst, &MultiConfig::new(vec![pt(4, 4)])));
        assert!(is_free(&inst, &MultiConfig::new(vec![pt(6, 5)])));
        // Sliding past with the point on the swept boundary is allowed.
        let cfg = MultiConfig::new(vec![pt(4, 4)]);
        assert!(move_allowed(&inst, &cfg, pt(4, 4), Dir::East));
        // Stepping so the point ends up strictly inside the sweep is not:
        // from (4,5) eastward the swept area is [3,6]x[4,6], open interior
        // contains (5,5).
        let cfg = MultiConfig::new(vec![pt(4, 5)]);
        assert!(is_free(&inst, &cfg));
        assert!(!move_allowed(&inst, &cfg, pt(4, 5), Dir::East));
    }

    #[test]
    fn lone_robot_moves_in_room() {
        // 3x3-unit room (6x6 halves); a robot centered in the middle can
        // step in all four directions; flush against a wall it cannot.
        let inst = empty_room(6, 6, 1);
        let center = MultiConfig::new(vec![pt(3, 3)]);
        let moves = legal_single_moves(&inst, &center).unwrap();
        assert_eq!(moves.len(), 4);
        let corner = MultiConfig::new(vec![pt(1, 1)]);
        let moves = legal_single_moves(&inst, &corner).unwrap();
        // Against the south and west walls: only North and East remain.
        assert_eq!(
            moves,
            vec![(pt(1, 1), Dir::North), (pt(1, 1), Dir::East)]
        );
    }

    #[test]
    fn robot_blocks_swept_area() {
        let inst = empty_room(12, 4, 2);
        // Touching robots cannot step into each other.
        let cfg = MultiConfig::new(vec![pt(2, 2), pt(4, 2)]);
        assert!(is_free(&inst, &cfg));
        assert!(!move_allowed(&inst, &cfg, pt(2, 2), Dir::East));
        assert!(!move_allowed(&inst, &cfg, pt(4, 2), Dir::West));
        // A half-unit gap admits exactly one half-step, ending in contact.
        let cfg = MultiConfig::new(vec![pt(2, 2), pt(5, 2)]);
        assert!(move_allowed(&inst, &cfg, pt(2, 2), Dir::East));
        let stepped = cfg.moved(pt(2, 2), pt(3, 2));
        assert!(is_free(&inst, &stepped));
        assert!(!move_allowed(&inst, &stepped, pt(3, 2), Dir::East));
    }

    #[test]
    fn obstacle_blocks() {
        let wall = RectPolygon::from_rect(rect(4, 0, 5, 4));
        let inst = Instance::new(vec![wall], vec![], 1, rect(0, 0, 9, 4)).unwrap();
        let cfg = MultiConfig::new(vec![pt(3, 2)]);
        // Touching the wall is fine; moving into it is not.
        assert!(is_free(&inst, &cfg));
        assert!(!move_allowed(&inst, &cfg, pt(3, 2), Dir::East));
    }
}
