//! Exact rectilinear geometry on the half-unit grid.
//!
//! Every coordinate in this crate is an integer number of half-units, so all
//! collision tests are exact integer comparisons. Robots are unit squares
//! (2x2 half-units) identified by their center point; obstacles are
//! axis-aligned rectangles or simple rectilinear polygons, which are
//! decomposed into rectangles once on construction.

use std::fmt;

/// A point on the half-unit grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

pub const fn pt(x: i32, y: i32) -> Point {
    Point { x, y }
}

impl Point {
    pub fn translate(self, dx: i32, dy: i32) -> Point {
        pt(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Axis move directions, one half-step at a time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    North,
    East,
    South,
    West,
}

pub const DIRS: [Dir; 4] = [Dir::North, Dir::East, Dir::South, Dir::West];

impl Dir {
    pub fn delta(self) -> (i32, i32) {
        match self {
            Dir::North => (0, 1),
            Dir::East => (1, 0),
            Dir::South => (0, -1),
            Dir::West => (-1, 0),
        }
    }

    pub fn step(self, p: Point) -> Point {
        let (dx, dy) = self.delta();
        p.translate(dx, dy)
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::North => Dir::South,
            Dir::East => Dir::West,
            Dir::South => Dir::North,
            Dir::West => Dir::East,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Dir::North => 'N',
            Dir::East => 'E',
            Dir::South => 'S',
            Dir::West => 'W',
        }
    }

    pub fn from_letter(c: char) -> Option<Dir> {
        match c {
            'N' => Some(Dir::North),
            'E' => Some(Dir::East),
            'S' => Some(Dir::South),
            'W' => Some(Dir::West),
            _ => None,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A closed axis-aligned rectangle `[x0, x1] x [y0, y1]` in half-units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rect {
    pub x0: i32,
    pub y0: i32,
    pub x1: i32,
    pub y1: i32,
}

pub const fn rect(x0: i32, y0: i32, x1: i32, y1: i32) -> Rect {
    Rect { x0, y0, x1, y1 }
}

impl Rect {
    pub fn is_valid(&self) -> bool {
        self.x0 < self.x1 && self.y0 < self.y1
    }

    pub fn width(&self) -> i32 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> i32 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> i64 {
        i64::from(self.width()) * i64::from(self.height())
    }

    /// True if the open interiors of the two rectangles intersect.
    /// Touching along an edge or at a corner does not count.
    pub fn interiors_overlap(&self, other: &Rect) -> bool {
        self.x0 < other.x1 && other.x0 < self.x1 && self.y0 < other.y1 && other.y0 < self.y1
    }

    /// True if `p` lies strictly inside the rectangle.
    pub fn contains_interior(&self, p: Point) -> bool {
        self.x0 < p.x && p.x < self.x1 && self.y0 < p.y && p.y < self.y1
    }

    /// True if `p` lies inside or on the boundary.
    pub fn contains_closed(&self, p: Point) -> bool {
        self.x0 <= p.x && p.x <= self.x1 && self.y0 <= p.y && p.y <= self.y1
    }

    /// True if `other` lies entirely within `self` (boundaries may touch).
    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.x0 <= other.x0 && other.x1 <= self.x1 && self.y0 <= other.y0 && other.y1 <= self.y1
    }

    pub fn translate(&self, dx: i32, dy: i32) -> Rect {
        rect(self.x0 + dx, self.y0 + dy, self.x1 + dx, self.y1 + dy)
    }

    /// Smallest rectangle covering both.
    pub fn union_bounds(&self, other: &Rect) -> Rect {
        rect(
            self.x0.min(other.x0),
            self.y0.min(other.y0),
            self.x1.max(other.x1),
            self.y1.max(other.y1),
        )
    }
}

/// The closed square covered by a unit robot centered at `c` (2x2 half-units).
pub fn robot_box(c: Point) -> Rect {
    rect(c.x - 1, c.y - 1, c.x + 1, c.y + 1)
}

/// The area swept by a robot moving one half-step from `c` in direction `d`:
/// the union of the start and end squares, a 2x3 half-unit rectangle.
pub fn swept_box(c: Point, d: Dir) -> Rect {
    robot_box(c).union_bounds(&robot_box(d.step(c)))
}

/// Errors building a rectilinear polygon.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolygonError {
    #[error("polygon needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge {0} is not axis-parallel or has zero length")]
    BadEdge(usize),
    #[error("consecutive edges {0} and {1} are collinear or reversing")]
    CollinearEdges(usize, usize),
    #[error("polygon edges intersect each other")]
    SelfIntersecting,
    #[error("polygon has zero area")]
    ZeroArea,
}

/// A simple rectilinear polygon with half-unit integer vertices.
///
/// Stored as the vertex loop plus a rectangle decomposition computed once;
/// all collision queries go through the rectangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectPolygon {
    vertices: Vec<Point>,
    rects: Vec<Rect>,
    bounds: Rect,
}

impl RectPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<RectPolygon, PolygonError> {
        if vertices.len() < 4 {
            return Err(PolygonError::TooFewVertices(vertices.len()));
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let horizontal = a.y == b.y && a.x != b.x;
            let vertical = a.x == b.x && a.y != b.y;
            if !horizontal && !vertical {
                return Err(PolygonError::BadEdge(i));
            }
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let e1_horiz = a.y == b.y;
            let e2_horiz = b.y == c.y;
            if e1_horiz == e2_horiz {
                return Err(PolygonError::CollinearEdges(i, (i + 1) % n));
            }
        }
        if edges_self_intersect(&vertices) {
            return Err(PolygonError::SelfIntersecting);
        }
        let rects = decompose(&vertices);
        if rects.is_empty() {
            return Err(PolygonError::ZeroArea);
        }
        let bounds = rects
            .iter()
            .skip(1)
            .fold(rects[0], |acc, r| acc.union_bounds(r));
        Ok(RectPolygon {
            vertices,
            rects,
            bounds,
        })
    }

    pub fn from_rect(r: Rect) -> RectPolygon {
        RectPolygon {
            vertices: vec![
                pt(r.x0, r.y0),
                pt(r.x1, r.y0),
                pt(r.x1, r.y1),
                pt(r.x0, r.y1),
            ],
            rects: vec![r],
            bounds: r,
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn bounds(&self) -> Rect {
        self.bounds
    }

    pub fn area(&self) -> i64 {
        self.rects.iter().map(Rect::area).sum()
    }

    pub fn translate(&self, dx: i32, dy: i32) -> RectPolygon {
        RectPolygon {
            vertices: self.vertices.iter().map(|p| p.translate(dx, dy)).collect(),
            rects: self.rects.iter().map(|r| r.translate(dx, dy)).collect(),
            bounds: self.bounds.translate(dx, dy),
        }
    }

    /// True if the open interior of `r` meets the open interior of the polygon.
    pub fn interior_overlaps_rect(&self, r: &Rect) -> bool {
        self.bounds.interiors_overlap(r) && self.rects.iter().any(|s| s.interiors_overlap(r))
    }

    /// True if `p` lies strictly inside the polygon.
    pub fn contains_interior(&self, p: Point) -> bool {
        // Interior of the union: inside some strip rectangle's x-range and
        // y-range, not on the union boundary. The strip decomposition cuts
        // along interior horizontal lines, so a point on a strip seam is
        // interior iff strips above and below both cover it.
        if !self.bounds.contains_interior(p) {
            return false;
        }
        let on_open = |r: &Rect| r.contains_interior(p);
        if self.rects.iter().any(on_open) {
            return true;
        }
        // Seam case: strictly inside in x for the strips on both sides of y.
        let below = self
            .rects
            .iter()
            .any(|r| r.y1 == p.y && r.x0 < p.x && p.x < r.x1);
        let above = self
            .rects
            .iter()
            .any(|r| r.y0 == p.y && r.x0 < p.x && p.x < r.x1);
        below && above
    }
}

/// Decompose a simple rectilinear polygon into disjoint horizontal strips.
fn decompose(vertices: &[Point]) -> Vec<Rect> {
    let n = vertices.len();
    let mut ys: Vec<i32> = vertices.iter().map(|p| p.y).collect();
    ys.sort_unstable();
    ys.dedup();
    let mut out = Vec::new();
    for w in ys.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // Vertical edges spanning this strip, by parity in x order.
        let mut xs: Vec<i32> = Vec::new();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            if a.x == b.x {
                let (e0, e1) = (a.y.min(b.y), a.y.max(b.y));
                if e0 <= lo && hi <= e1 {
                    xs.push(a.x);
                }
            }
        }
        xs.sort_unstable();
        debug_assert!(xs.len() % 2 == 0);
        for pair in xs.chunks(2) {
            if pair.len() == 2 && pair[0] < pair[1] {
                out.push(rect(pair[0], lo, pair[1], hi));
            }
        }
    }
    out
}

fn edges_self_intersect(vertices: &[Point]) -> bool {
    let n = vertices.len();
    let seg = |i: usize| (vertices[i], vertices[(i + 1) % n]);
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a0, a1) = seg(i);
            let (b0, b1) = seg(j);
            if segments_cross(a0, a1, b0, b1, adjacent) {
                return true;
            }
        }
    }
    false
}

/// Exact overlap test for two axis-parallel segments. Adjacent polygon edges
/// are allowed to share their common endpoint only.
fn segments_cross(a0: Point, a1: Point, b0: Point, b1: Point, adjacent: bool) -> bool {
    let a_horiz = a0.y == a1.y;
    let b_horiz = b0.y == b1.y;
    let (ax0, ax1) = (a0.x.min(a1.x), a0.x.max(a1.x));
    let (ay0, ay1) = (a0.y.min(a1.y), a0.y.max(a1.y));
    let (bx0, bx1) = (b0.x.min(b1.x), b0.x.max(b1.x));
    let (by0, by1) = (b0.y.min(b1.y), b0.y.max(b1.y));
    if a_horiz == b_horiz {
        // Parallel: overlap iff collinear with overlapping extent.
        if a_horiz {
            ay0 == by0 && ax0.max(bx0) < ax1.min(bx1)
                || (ay0 == by0 && !adjacent && ax0.max(bx0) <= ax1.min(bx1))
        } else {
            ax0 == bx0 && ay0.max(by0) < ay1.min(by1)
                || (ax0 == bx0 && !adjacent && ay0.max(by0) <= ay1.min(by1))
        }
    } else {
        // Perpendicular: they meet iff the horizontal one's y is within the
        // vertical one's range and vice versa. A shared endpoint between
        // adjacent edges is fine; any other contact breaks simplicity.
        let (hx0, hx1, hy, vx, vy0, vy1) = if a_horiz {
            (ax0, ax1, ay0, bx0, by0, by1)
        } else {
            (bx0, bx1, by0, ax0, ay0, ay1)
        };
        let meet = hx0 <= vx && vx <= hx1 && vy0 <= hy && hy <= vy1;
        if !meet {
            return false;
        }
        if adjacent {
            // Must meet exactly at the shared vertex; anything more is a fold.
            let shared_ok = (vx == hx0 || vx == hx1) && (hy == vy0 || hy == vy1);
            !shared_ok
        } else {
            true
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn robot_boxes_touching_do_not_overlap() {
        // Centers 2 half-units apart share an edge.
        assert!(!robot_box(pt(0, 0)).interiors_overlap(&robot_box(pt(2, 0))));
        // Centers 1 apart overlap.
        assert!(robot_box(pt(0, 0)).interiors_overlap(&robot_box(pt(1, 0))));
        // Diagonal neighbors at (1,1) overlap; at (2,2) they only share a corner.
        assert!(robot_box(pt(0, 0)).interiors_overlap(&robot_box(pt(1, 1))));
        assert!(!robot_box(pt(0, 0)).interiors_overlap(&robot_box(pt(2, 2))));
    }

    #[test]
    fn swept_box_is_2x3() {
        let s = swept_box(pt(5, 5), Dir::East);
        assert_eq!(s, rect(4, 4, 7, 6));
        let s = swept_box(pt(5, 5), Dir::South);
        assert_eq!(s, rect(4, 3, 6, 6));
    }

    #[test]
    fn l_shape_decomposes() {
        // L-shape: 4x4 square minus its 2x2 top-right quadrant.
        let poly = RectPolygon::new(vec![
            pt(0, 0),
            pt(4, 0),
            pt(4, 2),
            pt(2, 2),
            pt(2, 4),
            pt(0, 4),
        ])
        .unwrap();
        assert_eq!(poly.area(), 12);
        assert!(poly.contains_interior(pt(1, 1)));
        assert!(poly.contains_interior(pt(1, 3)));
        assert!(!poly.contains_interior(pt(3, 3)));
        // Boundary points are not interior.
        assert!(!poly.contains_interior(pt(0, 1)));
        assert!(!poly.contains_interior(pt(2, 3)));
        // Point on the internal strip seam y=2, inside in x.
        assert!(poly.contains_interior(pt(1, 2)));
    }

    #[test]
    fn degenerate_polygons_rejected() {
        assert_eq!(
            RectPolygon::new(vec![pt(0, 0), pt(1, 0), pt(1, 1)]).unwrap_err(),
            PolygonError::TooFewVertices(3)
        );
        // Diagonal edge.
        assert!(matches!(
            RectPolygon::new(vec![pt(0, 0), pt(2, 2), pt(0, 2), pt(0, 1)]),
            Err(PolygonError::BadEdge(_))
        ));
        // Collinear consecutive edges.
        assert!(matches!(
            RectPolygon::new(vec![
                pt(0, 0),
                pt(2, 0),
                pt(4, 0),
                pt(4, 2),
                pt(0, 2),
                pt(0, 1)
            ]),
            Err(PolygonError::CollinearEdges(_, _))
        ));
    }

    #[test]
    fn self_intersection_rejected() {
        // Figure-eight-ish loop crossing itself.
        let r = RectPolygon::new(vec![
            pt(0, 0),
            pt(4, 0),
            pt(4, 2),
            pt(1, 2),
            pt(1, 1),
            pt(3, 1),
            pt(3, 3),
            pt(0, 3),
        ]);
        assert_eq!(r.unwrap_err(), PolygonError::SelfIntersecting);
    }

    #[test]
    fn rect_overlap_vs_polygon() {
        let poly = RectPolygon::from_rect(rect(0, 0, 4, 4));
        assert!(poly.interior_overlaps_rect(&rect(3, 3, 6, 6)));
        assert!(!poly.interior_overlaps_rect(&rect(4, 0, 6, 4)));
    }
}
