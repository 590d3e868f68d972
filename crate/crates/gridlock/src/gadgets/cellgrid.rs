use std::collections::{BTreeMap, BTreeSet};

use super::design::{complement_in, door_strip, in_slot, out_slot, Gadget, CELL};
use crate::geom::{pt, rect, Dir, Point, Rect, RectPolygon};
use crate::motion::Instance;

/// Cell pitch: 5 units of interior plus the half-unit shared wall.
pub const PITCH: i32 = CELL + 1;

/// Door openings span 2 half-units centered on the wall.
pub const DOOR_HALF_SPAN: i32 = 2;

/// How a port with no neighboring cell behaves in a test harness: a
/// permissive stub offers the edge robot its outside slot (as an ideal
/// neighbor would), a blocked stub pins the robot inside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Boundary {
    Permissive,
    Blocked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellRobotKind {
    /// Shared between two cells (or one cell and a stub); its two slots
    /// encode the direction of the corresponding edge.
    Edge {
        cell: (i32, i32),
        wall: Dir,
        /// The adjacent cell, when the door is internal.
        neighbor: Option<(i32, i32)>,
    },
    Vertex { cell: (i32, i32), special: bool },
}

/// A robot of an assembled instance, with its stable slots in global
/// half-unit coordinates. For edge robots `slots[0]` is the position
/// half-inside `cell` and `slots[1]` (when present) the one outside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellRobot {
    pub name: String,
    pub kind: CellRobotKind,
    pub slots: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellGridError {
    #[error("cell {0:?} port {1} has no neighbor and no stub")]
    DanglingPort((i32, i32), Dir),
    #[error("cells {0:?} and {1:?} are adjacent but only one has a port on the shared wall")]
    HalfDoor((i32, i32), (i32, i32)),
    #[error("port weights disagree across the door between {0:?} and {1:?}")]
    WeightMismatch((i32, i32), (i32, i32)),
    #[error("stub at {0:?} {1} does not match a port")]
    StubWithoutPort((i32, i32), Dir),
    #[error("grid is empty")]
    Empty,
}

/// A set of gadgets placed on the cell grid, with boundary stubs for ports
/// that face no neighbor. Builds the exact workspace: 5x5-unit cells,
/// half-unit walls, unit-wide doorways where ports meet.
#[derive(Debug, Clone, Default)]
pub struct CellGrid {
    cells: BTreeMap<(i32, i32), Gadget>,
    stubs: BTreeMap<((i32, i32), Dir), Boundary>,
}

fn wall_between(a: (i32, i32), b: (i32, i32)) -> Option<Dir> {
    match (b.0 - a.0, b.1 - a.1) {
        (1, 0) => Some(Dir::East),
        (-1, 0) => Some(Dir::West),
        (0, 1) => Some(Dir::North),
        (0, -1) => Some(Dir::South),
        _ => None,
    }
}

fn neighbor(a: (i32, i32), wall: Dir) -> (i32, i32) {
    let (dx, dy) = wall.delta();
    (a.0 + dx, a.1 + dy)
}

impl CellGrid {
    pub fn new() -> CellGrid {
        CellGrid::default()
    }

    pub fn place(&mut self, at: (i32, i32), gadget: Gadget) {
        self.cells.insert(at, gadget);
    }

    pub fn stub(&mut self, at: (i32, i32), wall: Dir, boundary: Boundary) {
        self.stubs.insert((at, wall), boundary);
    }

    pub fn cells(&self) -> &BTreeMap<(i32, i32), Gadget> {
        &self.cells
    }

    /// Global origin (southwest interior corner) of a cell.
    pub fn origin(&self, at: (i32, i32)) -> Point {
        // The grid is normalized so the smallest used cell is at (0,0)
        // relative to a 1-half-unit outer wall.
        let (min_x, min_y) = self.min_cell();
        pt(
            1 + (at.0 - min_x) * PITCH,
            1 + (at.1 - min_y) * PITCH,
        )
    }

    fn min_cell(&self) -> (i32, i32) {
        let min_x = self.cells.keys().map(|c| c.0).min().unwrap_or(0);
        let min_y = self.cells.keys().map(|c| c.1).min().unwrap_or(0);
        (min_x, min_y)
    }

    fn extent(&self) -> (i32, i32) {
        let (min_x, min_y) = self.min_cell();
        let max_x = self.cells.keys().map(|c| c.0).max().unwrap_or(0);
        let max_y = self.cells.keys().map(|c| c.1).max().unwrap_or(0);
        (max_x - min_x + 1, max_y - min_y + 1)
    }

    pub fn to_global(&self, at: (i32, i32), local: Point) -> Point {
        let o = self.origin(at);
        pt(o.x + local.x, o.y + local.y)
    }

    /// The two slots of the edge robot in the doorway on `wall` of `at`:
    /// first half-inside `at`, then half-outside.
    pub fn door_slots(&self, at: (i32, i32), wall: Dir) -> (Point, Point) {
        (
            self.to_global(at, in_slot(wall)),
            self.to_global(at, out_slot(wall)),
        )
    }

    /// Assemble the workspace and the robot roster. Robots are returned in
    /// a deterministic order: edge robots by (cell, wall), then vertex
    /// robots by cell and design order.
    pub fn build(&self) -> Result<(Instance, Vec<CellRobot>), CellGridError> {
        if self.cells.is_empty() {
            return Err(CellGridError::Empty);
        }
        let (cols, rows) = self.extent();
        let mut bounds = rect(0, 0, cols * PITCH + 1, rows * PITCH + 1);

        // Check door consistency and collect them.
        let mut doors: BTreeSet<((i32, i32), Dir)> = BTreeSet::new();
        for (&at, g) in &self.cells {
            for wall in g.walls() {
                let nb = neighbor(at, wall);
                if let Some(other) = self.cells.get(&nb) {
                    let back = wall_between(nb, at).unwrap();
                    let Some(&their_weight) = other.ports.get(&back) else {
                        return Err(CellGridError::HalfDoor(at, nb));
                    };
                    if their_weight != g.ports[&wall] {
                        return Err(CellGridError::WeightMismatch(at, nb));
                    }
                    // Record each internal door once, from its lexicographic
                    // smaller side.
                    if at < nb {
                        doors.insert((at, wall));
                    }
                } else if self.stubs.contains_key(&(at, wall)) {
                    doors.insert((at, wall));
                } else {
                    return Err(CellGridError::DanglingPort(at, wall));
                }
            }
        }
        for (&(at, wall), _) in &self.stubs {
            if self.cells.get(&at).map(|g| g.ports.contains_key(&wall)) != Some(true) {
                return Err(CellGridError::StubWithoutPort(at, wall));
            }
        }

        // Free space: cell interiors' carved regions, door strips, and
        // permissive stub pockets.
        let mut free: Vec<Rect> = Vec::new();
        for (&at, g) in &self.cells {
            let o = self.origin(at);
            free.extend(g.free_rects.iter().map(|r| r.translate(o.x, o.y)));
        }
        for &(at, wall) in &doors {
            let o = self.origin(at);
            free.push(door_strip(wall).translate(o.x, o.y));
            if self.stubs.get(&(at, wall)) == Some(&Boundary::Permissive) {
                // Carve exactly the outside slot's square so the robot can
                // stand there but wander no further.
                let slot = self.to_global(at, out_slot(wall));
                let pocket = crate::geom::robot_box(slot);
                bounds = bounds.union_bounds(&pocket);
                free.push(pocket);
            }
        }

        let obstacles: Vec<RectPolygon> = complement_in(bounds, &free)
            .into_iter()
            .map(RectPolygon::from_rect)
            .collect();

        let point_obstacles: Vec<Point> = self
            .cells
            .iter()
            .filter_map(|(&at, g)| {
                g.point_obstacle.map(|p| self.to_global(at, p))
            })
            .collect();

        // Robot roster.
        let mut robots: Vec<CellRobot> = Vec::new();
        for &(at, wall) in &doors {
            let (inside, outside) = self.door_slots(at, wall);
            let nb = neighbor(at, wall);
            let internal = self.cells.contains_key(&nb);
            let slots = if internal || self.stubs[&(at, wall)] == Boundary::Permissive {
                vec![inside, outside]
            } else {
                vec![inside]
            };
            robots.push(CellRobot {
                name: format!("edge({},{}){}", at.0, at.1, wall),
                kind: CellRobotKind::Edge {
                    cell: at,
                    wall,
                    neighbor: internal.then_some(nb),
                },
                slots,
            });
        }
        for (&at, g) in &self.cells {
            for r in &g.vertex_robots {
                robots.push(CellRobot {
                    name: format!("cell({},{}):{}", at.0, at.1, r.name),
                    kind: CellRobotKind::Vertex {
                        cell: at,
                        special: r.special,
                    },
                    slots: r.slots.iter().map(|&s| self.to_global(at, s)).collect(),
                });
            }
        }

        let instance = Instance::new(obstacles, point_obstacles, robots.len(), bounds)
            .expect("assembled grid is nonempty");
        Ok((instance, robots))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::design::{make_gadget, GadgetKind};

    #[test]
    fn straight_connector_harness_geometry() {
        let g = make_gadget(GadgetKind::Connector, &[(Dir::West, 2), (Dir::East, 2)], 0).unwrap();
        let mut grid = CellGrid::new();
        grid.place((0, 0), g);
        grid.stub((0, 0), Dir::West, Boundary::Permissive);
        grid.stub((0, 0), Dir::East, Boundary::Permissive);
        let (inst, robots) = grid.build().unwrap();
        // One cell: 12x12 box extended by the two stub pockets (the
        // outside slots' squares poke one half-unit past the walls).
        assert_eq!(inst.bounds, rect(-1, 0, 13, 12));
        assert_eq!(robots.len(), 2 + 5);
        // Door slots: half-inside at the boundary, half-outside beyond the wall.
        let (ins, outs) = grid.door_slots((0, 0), Dir::West);
        assert_eq!(ins, pt(1, 6));
        assert_eq!(outs, pt(0, 6));
        // The outside slot of the east door pokes into the stub pocket.
        let (ins, outs) = grid.door_slots((0, 0), Dir::East);
        assert_eq!(ins, pt(11, 6));
        assert_eq!(outs, pt(12, 6));
    }

    #[test]
    fn mismatched_doors_rejected() {
        let a = make_gadget(GadgetKind::Connector, &[(Dir::West, 2), (Dir::East, 2)], 0).unwrap();
        let b = make_gadget(GadgetKind::Connector, &[(Dir::West, 1), (Dir::East, 1)], 0).unwrap();
        let mut grid = CellGrid::new();
        grid.place((0, 0), a.clone());
        grid.place((1, 0), b);
        grid.stub((0, 0), Dir::West, Boundary::Permissive);
        grid.stub((1, 0), Dir::East, Boundary::Permissive);
        assert!(matches!(
            grid.build(),
            Err(CellGridError::WeightMismatch(_, _))
        ));

        let mut grid = CellGrid::new();
        grid.place((0, 0), a);
        assert!(matches!(
            grid.build(),
            Err(CellGridError::DanglingPort(_, _))
        ));
    }
}
