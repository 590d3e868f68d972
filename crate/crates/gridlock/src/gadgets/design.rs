use std::collections::BTreeMap;

use crate::geom::{pt, rect, Dir, Point, Rect};

/// Cell interior: `[0, CELL] x [0, CELL]` in half-units (a 5x5-unit square).
pub const CELL: i32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GadgetKind {
    Connector,
    And,
    Or,
}

impl GadgetKind {
    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Connector => "CONNECTOR",
            GadgetKind::And => "AND",
            GadgetKind::Or => "OR",
        }
    }

    pub fn port_count(self) -> usize {
        match self {
            GadgetKind::Connector => 2,
            GadgetKind::And | GadgetKind::Or => 3,
        }
    }
}

/// A robot confined to one cell. `slots` are its stable center positions in
/// cell-local half-units; the design guarantees it can never leave them.
/// `slots[0]` is the canonical start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRobot {
    pub name: String,
    pub slots: Vec<Point>,
    pub special: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error("{kind} takes {expected} ports, got {got}")]
    PortCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("duplicate port on wall {0}")]
    DuplicatePort(Dir),
    #[error("connector ports must carry equal weights, got {0} and {1}")]
    ConnectorWeights(u32, u32),
    #[error("{kind} port weights must be {expected}, got {got:?}")]
    WeightMultiset {
        kind: &'static str,
        expected: &'static str,
        got: Vec<u32>,
    },
    #[error("port weight {0} out of range")]
    BadWeight(u32),
}

/// One cell's worth of geometry. Everything is in cell-local half-units;
/// the workspace builder translates it into place.
///
/// Free space is stored positively (`free_rects`); obstacles are the
/// complement within the cell. Doorway strips through the walls are not
/// part of the cell and are added by the workspace builder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub kind: GadgetKind,
    /// Wall -> edge weight of the port on that wall.
    pub ports: BTreeMap<Dir, u32>,
    pub free_rects: Vec<Rect>,
    pub point_obstacle: Option<Point>,
    pub vertex_robots: Vec<VertexRobot>,
    /// Quarter turns counterclockwise applied to the base design.
    pub rotation: u8,
}

/// Doorways sit at wall centers and are 1 unit (2 half-units) wide: the
/// open span is `[4, 6]` along the wall in cell-local coordinates.
pub const DOOR_LO: i32 = 4;
pub const DOOR_HI: i32 = 6;

/// Edge-robot slot half-inside this cell (center on the cell boundary).
pub fn in_slot(wall: Dir) -> Point {
    match wall {
        Dir::West => pt(0, 5),
        Dir::East => pt(CELL, 5),
        Dir::South => pt(5, 0),
        Dir::North => pt(5, CELL),
    }
}

/// Edge-robot slot not penetrating this cell (half-inside the neighbor).
pub fn out_slot(wall: Dir) -> Point {
    match wall {
        Dir::West => pt(-1, 5),
        Dir::East => pt(CELL + 1, 5),
        Dir::South => pt(5, -1),
        Dir::North => pt(5, CELL + 1),
    }
}

/// The doorway strip through the wall on `wall`, cell-local.
pub fn door_strip(wall: Dir) -> Rect {
    match wall {
        Dir::West => rect(-1, DOOR_LO, 0, DOOR_HI),
        Dir::East => rect(CELL, DOOR_LO, CELL + 1, DOOR_HI),
        Dir::South => rect(DOOR_LO, -1, DOOR_HI, 0),
        Dir::North => rect(DOOR_LO, CELL, DOOR_HI, CELL + 1),
    }
}

fn rot90(p: Point) -> Point {
    // Quarter turn counterclockwise about the cell center (5,5):
    // East wall -> North wall.
    pt(CELL - p.y, p.x)
}

fn rot90_rect(r: Rect) -> Rect {
    let a = rot90(pt(r.x0, r.y0));
    let b = rot90(pt(r.x1, r.y1));
    rect(a.x.min(b.x), a.y.min(b.y), a.x.max(b.x), a.y.max(b.y))
}

fn rot90_wall(w: Dir) -> Dir {
    match w {
        Dir::East => Dir::North,
        Dir::North => Dir::West,
        Dir::West => Dir::South,
        Dir::South => Dir::East,
    }
}

fn mirror_x(p: Point) -> Point {
    pt(CELL - p.x, p.y)
}

fn mirror_x_rect(r: Rect) -> Rect {
    rect(CELL - r.x1, r.y0, CELL - r.x0, r.y1)
}

fn mirror_x_wall(w: Dir) -> Dir {
    match w {
        Dir::East => Dir::West,
        Dir::West => Dir::East,
        other => other,
    }
}

impl Gadget {
    pub fn rotated(&self, quarter_turns: u8) -> Gadget {
        let mut g = self.clone();
        for _ in 0..quarter_turns % 4 {
            g = Gadget {
                kind: g.kind,
                ports: g.ports.iter().map(|(&w, &wt)| (rot90_wall(w), wt)).collect(),
                free_rects: g.free_rects.iter().map(|&r| rot90_rect(r)).collect(),
                point_obstacle: g.point_obstacle.map(rot90),
                vertex_robots: g
                    .vertex_robots
                    .iter()
                    .map(|r| VertexRobot {
                        name: r.name.clone(),
                        slots: r.slots.iter().map(|&s| rot90(s)).collect(),
                        special: r.special,
                    })
                    .collect(),
                rotation: (g.rotation + 1) % 4,
            };
        }
        g
    }

    fn mirrored(&self) -> Gadget {
        Gadget {
            kind: self.kind,
            ports: self
                .ports
                .iter()
                .map(|(&w, &wt)| (mirror_x_wall(w), wt))
                .collect(),
            free_rects: self.free_rects.iter().map(|&r| mirror_x_rect(r)).collect(),
            point_obstacle: self.point_obstacle.map(mirror_x),
            vertex_robots: self
                .vertex_robots
                .iter()
                .map(|r| VertexRobot {
                    name: r.name.clone(),
                    slots: r.slots.iter().map(|&s| mirror_x(s)).collect(),
                    special: r.special,
                })
                .collect(),
            rotation: self.rotation,
        }
    }

    /// Obstacle rectangles: the complement of the free space within the
    /// cell square, as maximal horizontal strips.
    pub fn obstacles(&self) -> Vec<Rect> {
        complement_in(rect(0, 0, CELL, CELL), &self.free_rects)
    }

    pub fn walls(&self) -> impl Iterator<Item = Dir> + '_ {
        self.ports.keys().copied()
    }
}

/// Complement of a union of rectangles within `outer`, rasterized on the
/// half-unit grid and re-merged into rectangles.
pub(crate) fn complement_in(outer: Rect, free: &[Rect]) -> Vec<Rect> {
    let w = outer.width() as usize;
    let h = outer.height() as usize;
    let mut blocked = vec![true; w * h];
    for r in free {
        for y in r.y0.max(outer.y0)..r.y1.min(outer.y1) {
            for x in r.x0.max(outer.x0)..r.x1.min(outer.x1) {
                blocked[(y - outer.y0) as usize * w + (x - outer.x0) as usize] = false;
            }
        }
    }
    merge_cells(outer, w, h, &blocked)
}

/// Greedy merge of marked half-cells into rectangles: maximal horizontal
/// runs per row, runs with identical spans merged across consecutive rows.
pub(crate) fn merge_cells(outer: Rect, w: usize, h: usize, marked: &[bool]) -> Vec<Rect> {
    let mut out: Vec<Rect> = Vec::new();
    let mut open: BTreeMap<(i32, i32), Rect> = BTreeMap::new();
    for y in 0..=h {
        let mut next: BTreeMap<(i32, i32), Rect> = BTreeMap::new();
        if y < h {
            let gy = outer.y0 + y as i32;
            let mut x = 0;
            while x < w {
                if marked[y * w + x] {
                    let x0 = x;
                    while x < w && marked[y * w + x] {
                        x += 1;
                    }
                    let span = (x0 as i32, x as i32);
                    let r = match open.remove(&span) {
                        Some(r) => rect(r.x0, r.y0, r.x1, gy + 1),
                        None => rect(outer.x0 + span.0, gy, outer.x0 + span.1, gy + 1),
                    };
                    next.insert(span, r);
                } else {
                    x += 1;
                }
            }
        }
        out.extend(open.into_values());
        open = next;
    }
    out.sort_unstable();
    out
}

fn vr(name: &str, slots: &[(i32, i32)]) -> VertexRobot {
    VertexRobot {
        name: name.to_string(),
        slots: slots.iter().map(|&(x, y)| pt(x, y)).collect(),
        special: false,
    }
}

/// Straight connector, base ports {W, E}.
///
/// A guard beside each doorway blocks the edge robot's inside slot; the
/// guards' retracted positions are linked by a row of middlemen so that
/// retracting one side forces the other side's guard back onto its door.
/// Small obstacle teeth below each doorway stop the edge robots from
/// sliding deeper than their half-inside slot.
fn connector_straight(weight: u32) -> Gadget {
    Gadget {
        kind: GadgetKind::Connector,
        ports: BTreeMap::from([(Dir::West, weight), (Dir::East, weight)]),
        free_rects: vec![
            rect(0, 4, 1, 6),  // west door pocket
            rect(0, 5, 2, 8),  // west guard track
            rect(1, 6, 8, 8),  // middle corridor
            rect(7, 5, 10, 7), // east guard track
            rect(9, 4, 10, 6), // east door pocket
        ],
        point_obstacle: None,
        vertex_robots: vec![
            vr("gw", &[(1, 6), (1, 7)]),
            vr("m1", &[(2, 7), (3, 7)]),
            vr("m2", &[(4, 7), (5, 7)]),
            vr("m3", &[(6, 7), (7, 7)]),
            vr("ge", &[(9, 6), (8, 6)]),
        ],
        rotation: 0,
    }
}

/// Bent connector, base ports {W, S}.
fn connector_bent(weight: u32) -> Gadget {
    Gadget {
        kind: GadgetKind::Connector,
        ports: BTreeMap::from([(Dir::West, weight), (Dir::South, weight)]),
        free_rects: vec![
            rect(0, 4, 1, 6), // west door pocket
            rect(0, 2, 2, 5), // west guard track
            rect(1, 1, 4, 3), // a
            rect(3, 2, 5, 5), // b
            rect(4, 4, 7, 6), // c
            rect(6, 2, 8, 5), // d
            rect(5, 0, 7, 3), // south guard track
            rect(4, 0, 6, 1), // south door pocket
        ],
        point_obstacle: None,
        vertex_robots: vec![
            vr("gw", &[(1, 4), (1, 3)]),
            vr("a", &[(2, 2), (3, 2)]),
            vr("b", &[(4, 3), (4, 4)]),
            vr("c", &[(5, 5), (6, 5)]),
            vr("d", &[(7, 4), (7, 3)]),
            vr("gs", &[(6, 1), (6, 2)]),
        ],
        rotation: 0,
    }
}

/// AND gadget, base ports {W:2, S:1, E:1} (empty north wall).
///
/// The weight-2 door has two guards; one feeds the bent chain to the south
/// door, the other the straight chain to the east door, so the weight-2
/// robot fits only when both weight-1 robots are outside. The single point
/// obstacle in the west doorway stops the weight-2 robot from sliding past
/// its half-inside slot.
fn and_gadget() -> Gadget {
    Gadget {
        kind: GadgetKind::And,
        ports: BTreeMap::from([(Dir::West, 2), (Dir::South, 1), (Dir::East, 1)]),
        free_rects: vec![
            rect(0, 4, 1, 6), // west door pocket
            // south chain (as in the bent connector)
            rect(0, 2, 2, 5),
            rect(1, 1, 4, 3),
            rect(3, 2, 5, 5),
            rect(4, 4, 7, 6),
            rect(6, 2, 8, 5),
            rect(5, 0, 7, 3),
            rect(4, 0, 6, 1),
            // east chain (as in the straight connector)
            rect(0, 5, 2, 8),
            rect(1, 6, 8, 8),
            rect(7, 5, 10, 7),
            rect(9, 4, 10, 6),
        ],
        point_obstacle: Some(pt(1, 5)),
        vertex_robots: vec![
            vr("gw1", &[(1, 4), (1, 3)]),
            vr("a", &[(2, 2), (3, 2)]),
            vr("b", &[(4, 3), (4, 4)]),
            vr("c", &[(5, 5), (6, 5)]),
            vr("d", &[(7, 4), (7, 3)]),
            vr("gs", &[(6, 1), (6, 2)]),
            vr("gw2", &[(1, 6), (1, 7)]),
            vr("m1", &[(2, 7), (3, 7)]),
            vr("m2", &[(4, 7), (5, 7)]),
            vr("m3", &[(6, 7), (7, 7)]),
            vr("ge", &[(9, 6), (8, 6)]),
        ],
        rotation: 0,
    }
}

/// AND gadget with the weight-2 port opposite the empty wall, base ports
/// {W:2, N:1, S:1} (empty east wall): the mirrored straight chain runs to
/// a north-door guard instead.
fn and_t_gadget() -> Gadget {
    Gadget {
        kind: GadgetKind::And,
        ports: BTreeMap::from([(Dir::West, 2), (Dir::South, 1), (Dir::North, 1)]),
        free_rects: vec![
            rect(0, 4, 1, 6), // west door pocket
            // south chain (bent-connector shape)
            rect(0, 2, 2, 5),
            rect(1, 1, 4, 3),
            rect(3, 2, 5, 5),
            rect(4, 4, 7, 6),
            rect(6, 2, 8, 5),
            rect(5, 0, 7, 3),
            rect(4, 0, 6, 1),
            // north chain: straight-connector chain bent upward at its end
            rect(0, 5, 2, 8),
            rect(1, 6, 8, 8),
            rect(6, 7, 8, 10),
            rect(4, 9, 6, 10),
            rect(4, 9, 6, 10),
        ],
        point_obstacle: Some(pt(1, 5)),
        vertex_robots: vec![
            vr("gw1", &[(1, 4), (1, 3)]),
            vr("a", &[(2, 2), (3, 2)]),
            vr("b", &[(4, 3), (4, 4)]),
            vr("c", &[(5, 5), (6, 5)]),
            vr("d", &[(7, 4), (7, 3)]),
            vr("gs", &[(6, 1), (6, 2)]),
            vr("gw2", &[(1, 6), (1, 7)]),
            vr("m1", &[(2, 7), (3, 7)]),
            vr("m2", &[(4, 7), (5, 7)]),
            vr("m3", &[(7, 8), (7, 9)]),
            vr("gn", &[(5, 9), (6, 9)]),
        ],
        rotation: 0,
    }
}

/// OR gadget, base ports {W, N, E} all weight 2 (empty south wall).
///
/// Three door chains converge on the save robot, which has three stable
/// positions; each chain jams one of them, so all three edge robots inside
/// at once would leave the save robot nowhere to stand.
fn or_gadget() -> Gadget {
    Gadget {
        kind: GadgetKind::Or,
        ports: BTreeMap::from([(Dir::West, 2), (Dir::North, 2), (Dir::East, 2)]),
        free_rects: vec![
            rect(0, 4, 1, 6), // west door pocket
            rect(0, 2, 2, 5), // west guard track
            rect(1, 1, 4, 3),
            rect(2, 2, 4, 5),
            rect(3, 4, 6, 7), // hub area
            rect(4, 8, 6, 10),
            rect(4, 9, 6, 10), // north door pocket
            rect(5, 6, 7, 9),
            rect(9, 4, 10, 6), // east door pocket
            rect(8, 2, 10, 5),
            rect(6, 1, 9, 3),
            rect(5, 2, 7, 5),
        ],
        point_obstacle: None,
        vertex_robots: vec![
            vr("gw", &[(1, 4), (1, 3)]),
            vr("wa", &[(2, 2), (3, 2)]),
            vr("wb", &[(3, 3), (3, 4)]),
            vr("gn", &[(5, 9), (5, 8)]),
            vr("nz", &[(6, 7), (6, 6)]),
            vr("ge", &[(9, 4), (9, 3)]),
            vr("ea", &[(8, 2), (7, 2)]),
            vr("eb", &[(6, 3), (6, 4)]),
            VertexRobot {
                name: "save".into(),
                slots: vec![pt(5, 5), pt(4, 5), pt(5, 6)],
                special: true,
            },
        ],
        rotation: 0,
    }
}

/// Build a gadget for the given port assignment by selecting a base
/// design, reflecting if needed, and rotating so the ports land on the
/// requested walls. The extra `rotation` is applied on top.
pub fn make_gadget(
    kind: GadgetKind,
    ports: &[(Dir, u32)],
    rotation: u8,
) -> Result<Gadget, GadgetError> {
    if ports.len() != kind.port_count() {
        return Err(GadgetError::PortCount {
            kind: kind.name(),
            expected: kind.port_count(),
            got: ports.len(),
        });
    }
    let mut map = BTreeMap::new();
    for &(w, wt) in ports {
        if !(1..=2).contains(&wt) {
            return Err(GadgetError::BadWeight(wt));
        }
        if map.insert(w, wt).is_some() {
            return Err(GadgetError::DuplicatePort(w));
        }
    }
    let base = match kind {
        GadgetKind::Connector => {
            let ws: Vec<u32> = map.values().copied().collect();
            if ws[0] != ws[1] {
                return Err(GadgetError::ConnectorWeights(ws[0], ws[1]));
            }
            let walls: Vec<Dir> = map.keys().copied().collect();
            let opposite = walls[0] == walls[1].opposite();
            if opposite {
                connector_straight(ws[0])
            } else {
                connector_bent(ws[0])
            }
        }
        GadgetKind::And => {
            let mut ws: Vec<u32> = map.values().copied().collect();
            ws.sort_unstable();
            if ws != [1, 1, 2] {
                return Err(GadgetError::WeightMultiset {
                    kind: "AND",
                    expected: "{2,1,1}",
                    got: ws,
                });
            }
            let heavy = *map.iter().find(|(_, &wt)| wt == 2).unwrap().0;
            let empty = missing_wall(&map);
            if heavy == empty.opposite() {
                and_t_gadget()
            } else {
                and_gadget()
            }
        }
        GadgetKind::Or => {
            if map.values().any(|&wt| wt != 2) {
                return Err(GadgetError::WeightMultiset {
                    kind: "OR",
                    expected: "{2,2,2}",
                    got: map.values().copied().collect(),
                });
            }
            or_gadget()
        }
    };
    // Orient the base onto the requested walls: try the four rotations of
    // the base and of its mirror image.
    for mirrored in [false, true] {
        let candidate = if mirrored { base.mirrored() } else { base.clone() };
        for turns in 0..4u8 {
            let oriented = candidate.rotated(turns);
            if oriented.ports == map {
                return Ok(oriented.rotated(rotation));
            }
        }
    }
    unreachable!("every legal port assignment is reachable by symmetry");
}

fn missing_wall(ports: &BTreeMap<Dir, u32>) -> Dir {
    [Dir::North, Dir::East, Dir::South, Dir::West]
        .into_iter()
        .find(|w| !ports.contains_key(w))
        .expect("three ports leave one wall empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_maps_walls() {
        let g = connector_straight(2);
        let r = g.rotated(1);
        // {W,E} quarter-turned counterclockwise becomes {S,N}.
        let walls: Vec<Dir> = r.ports.keys().copied().collect();
        assert_eq!(walls, vec![Dir::North, Dir::South]);
        // Four turns restore the design exactly.
        assert_eq!(g.rotated(4), g);
    }

    #[test]
    fn rotation_is_pointwise_isometry() {
        let g = make_gadget(GadgetKind::And, &[(Dir::West, 2), (Dir::South, 1), (Dir::East, 1)], 0)
            .unwrap();
        let r = make_gadget(GadgetKind::And, &[(Dir::West, 2), (Dir::South, 1), (Dir::East, 1)], 1)
            .unwrap();
        assert_eq!(g.rotated(1), r);
        let p = g.point_obstacle.unwrap();
        assert_eq!(r.point_obstacle.unwrap(), rot90(p));
    }

    #[test]
    fn every_port_assignment_builds() {
        use Dir::*;
        // Connector: all 2-subsets of walls.
        for (a, b) in [
            (West, East),
            (North, South),
            (West, North),
            (North, East),
            (East, South),
            (South, West),
        ] {
            for wt in [1, 2] {
                let g = make_gadget(GadgetKind::Connector, &[(a, wt), (b, wt)], 0).unwrap();
                assert_eq!(g.ports.len(), 2);
                assert!(g.ports.values().all(|&w| w == wt));
            }
        }
        // AND: every wall triple with every placement of the weight-2 port.
        for walls in [
            [West, North, East],
            [North, East, South],
            [East, South, West],
            [South, West, North],
        ] {
            for heavy in 0..3 {
                let ports: Vec<(Dir, u32)> = walls
                    .iter()
                    .enumerate()
                    .map(|(i, &w)| (w, if i == heavy { 2 } else { 1 }))
                    .collect();
                let g = make_gadget(GadgetKind::And, &ports, 0).unwrap();
                assert_eq!(g.ports.len(), 3);
            }
        }
        // OR: every wall triple.
        for walls in [
            [West, North, East],
            [North, East, South],
            [East, South, West],
            [South, West, North],
        ] {
            let ports: Vec<(Dir, u32)> = walls.iter().map(|&w| (w, 2)).collect();
            make_gadget(GadgetKind::Or, &ports, 0).unwrap();
        }
    }

    #[test]
    fn bad_assignments_rejected() {
        use Dir::*;
        assert!(matches!(
            make_gadget(GadgetKind::Connector, &[(West, 1), (East, 2)], 0),
            Err(GadgetError::ConnectorWeights(_, _))
        ));
        assert!(matches!(
            make_gadget(GadgetKind::And, &[(West, 2), (East, 2), (North, 1)], 0),
            Err(GadgetError::WeightMultiset { .. })
        ));
        assert!(matches!(
            make_gadget(GadgetKind::Or, &[(West, 2), (East, 2), (North, 1)], 0),
            Err(GadgetError::WeightMultiset { .. })
        ));
        assert!(matches!(
            make_gadget(GadgetKind::Connector, &[(West, 2)], 0),
            Err(GadgetError::PortCount { .. })
        ));
    }

    #[test]
    fn obstacles_complement_free_space() {
        let g = connector_straight(2);
        let obstacles = g.obstacles();
        // Every half-cell of the 10x10 square is either free or obstacle,
        // never both.
        for y in 0..CELL {
            for x in 0..CELL {
                let cell = rect(x, y, x + 1, y + 1);
                let free = g.free_rects.iter().any(|r| r.contains_rect(&cell));
                let blocked = obstacles.iter().any(|r| r.contains_rect(&cell));
                assert!(
                    free != blocked,
                    "half-cell ({x},{y}) free={free} blocked={blocked}"
                );
            }
        }
    }
}
