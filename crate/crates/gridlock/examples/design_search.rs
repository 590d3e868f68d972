//! Dev tool: search for gadget chain layouts that pass the exhaustive
//! verifier. Not part of the deliverable pipeline.

use std::collections::BTreeMap;

use gridlock::gadgets::*;
use gridlock::geom::*;

#[derive(Clone, Debug)]
struct Guard {
    wall: Dir,
    block: Point,
    free: Point,
    tooth: Option<Rect>,
    point_tooth: Option<Point>,
}

// Guard templates per wall: block slot must overlap the in-slot box,
// free slot must not; tooth stops the edge robot from sliding deeper.
fn guard_templates(wall: Dir) -> Vec<Guard> {
    // Base templates for the West wall; rotate for others.
    let base = vec![
        // south-retracting
        Guard {
            wall: Dir::West,
            block: pt(1, 4),
            free: pt(1, 3),
            tooth: Some(rect(1, 5, 2, 6)),
            point_tooth: None,
        },
        // north-retracting
        Guard {
            wall: Dir::West,
            block: pt(1, 6),
            free: pt(1, 7),
            tooth: Some(rect(1, 4, 2, 5)),
            point_tooth: None,
        },
        // axis guard (retracts inward along the door axis; blocks deepening
        // by itself)
        Guard {
            wall: Dir::West,
            block: pt(1, 5),
            free: pt(2, 5),
            tooth: None,
            point_tooth: None,
        },
        // side-offset, retracting inward (block still covers the deepening
        // square, so no tooth)
        Guard {
            wall: Dir::West,
            block: pt(1, 4),
            free: pt(2, 4),
            tooth: None,
            point_tooth: None,
        },
        Guard {
            wall: Dir::West,
            block: pt(1, 6),
            free: pt(2, 6),
            tooth: None,
            point_tooth: None,
        },
    ];
    let rotp = |p: Point, k: u8| {
        let mut q = p;
        for _ in 0..k {
            q = pt(10 - q.y, q.x);
        }
        q
    };
    let rotr = |r: Rect, k: u8| {
        let mut a = pt(r.x0, r.y0);
        let mut b = pt(r.x1, r.y1);
        for _ in 0..k {
            a = pt(10 - a.y, a.x);
            b = pt(10 - b.y, b.x);
        }
        rect(a.x.min(b.x), a.y.min(b.y), a.x.max(b.x), a.y.max(b.y))
    };
    let turns = match wall {
        Dir::West => 0,
        Dir::South => 1,
        Dir::East => 2,
        Dir::North => 3,
    };
    base.into_iter()
        .map(|g| Guard {
            wall,
            block: rotp(g.block, turns),
            free: rotp(g.free, turns),
            tooth: g.tooth.map(|t| rotr(t, turns)),
            point_tooth: g.point_tooth,
        })
        .collect()
}

fn overlap(a: Point, b: Point) -> bool {
    robot_box(a).interiors_overlap(&robot_box(b))
}

fn in_cell(p: Point) -> bool {
    // Slot boxes must stay within the cell square.
    p.x >= 1 && p.x <= 9 && p.y >= 1 && p.y <= 9
}

#[derive(Clone, Debug)]
struct Chain {
    robots: Vec<(Point, Point)>, // (rest, active)
}

struct SearchCtx {
    // All slots that must not be disturbed (other chains, guards, teeth).
    fixed_slots: Vec<Point>,
    fixed_teeth: Vec<Rect>,
    door_slots: Vec<Point>, // in-slots of all ports (boxes must stay clear)
    point_teeth: Vec<Point>,
    // Carved free space that exists regardless of this chain (door pockets,
    // guard tracks, other chains); used for drift pruning.
    base_carve: Vec<Rect>,
    // Slot sets of robots outside this chain (guards, other chains, hubs):
    // they can act as permanent blockers of drift squares.
    fixed_pairs: Vec<Vec<Point>>,
}

impl SearchCtx {
    fn slot_ok(&self, p: Point, allow_conflict_with: &[Point]) -> bool {
        if !in_cell(p) {
            return false;
        }
        let b = robot_box(p);
        for t in &self.fixed_teeth {
            if b.interiors_overlap(t) {
                return false;
            }
        }
        for pt_ob in &self.point_teeth {
            if b.contains_interior(*pt_ob) {
                return false;
            }
        }
        for &s in &self.door_slots {
            if overlap(p, s) {
                return false;
            }
        }
        for &s in &self.fixed_slots {
            if allow_conflict_with.contains(&s) {
                continue;
            }
            if p == s || overlap(p, s) {
                return false;
            }
        }
        true
    }
}

fn box_in_carve(carve: &[Rect], p: Point) -> bool {
    let b = robot_box(p);
    for x in b.x0..b.x1 {
        for y in b.y0..b.y1 {
            let cell = rect(x, y, x + 1, y + 1);
            if !carve.iter().any(|r| r.contains_rect(&cell)) {
                return false;
            }
        }
    }
    true
}

/// A drift square is harmless if some other robot overlaps it from every
/// one of its slots: that robot blocks it in every reachable state.
fn permanently_blocked(
    p: Point,
    owner: usize,
    chain: &[(Point, Point)],
    fixed: &[Vec<Point>],
) -> bool {
    chain
        .iter()
        .enumerate()
        .any(|(i, &(a, b))| i != owner && overlap(a, p) && overlap(b, p))
        || fixed
            .iter()
            .any(|slots| !slots.is_empty() && slots.iter().all(|&q| overlap(q, p)))
}

/// True when every chain robot is confined to its two slots: adjacent
/// squares are either cut off by obstacles or permanently covered by
/// another robot.
fn carve_confined(carve: &[Rect], chain: &[(Point, Point)], fixed: &[Vec<Point>]) -> bool {
    for (i, &(a, b)) in chain.iter().enumerate() {
        for s in [a, b] {
            for d in DIRS {
                let p = d.step(s);
                if p != a
                    && p != b
                    && box_in_carve(carve, p)
                    && !permanently_blocked(p, i, chain, fixed)
                {
                    return false;
                }
            }
        }
    }
    true
}

/// DFS for a conflict chain from `from_free` (a guard's free slot) to a jam
/// of `target_free`, avoiding `target_block`. Prunes branches whose carved
/// pockets would let any chain robot drift off its slots.
fn search_chain(
    ctx: &SearchCtx,
    from_free: Point,
    target_free: Point,
    target_block: Point,
    max_len: usize,
) -> Vec<Chain> {
    // Iterative deepening so compact chains come out first.
    let mut results: Vec<Chain> = Vec::new();
    for len in 1..=max_len {
        let batch = search_chain_at(ctx, from_free, target_free, target_block, len);
        for c in batch {
            if c.robots.len() == len && !results.iter().any(|r| r.robots == c.robots) {
                results.push(c);
            }
        }
        if results.len() >= 400 {
            break;
        }
    }
    results
}

fn search_chain_at(
    ctx: &SearchCtx,
    from_free: Point,
    target_free: Point,
    target_block: Point,
    max_len: usize,
) -> Vec<Chain> {
    let mut results = Vec::new();
    let mut robots: Vec<(Point, Point)> = Vec::new();
    fn all_slots(robots: &[(Point, Point)]) -> Vec<Point> {
        robots.iter().flat_map(|&(r, d)| [r, d]).collect()
    }
    fn dfs(
        ctx: &SearchCtx,
        frontier: Point,
        target_free: Point,
        target_block: Point,
        max_len: usize,
        robots: &mut Vec<(Point, Point)>,
        results: &mut Vec<Chain>,
    ) {
        if results.len() >= 400 {
            return;
        }
        if robots.len() >= max_len {
            return;
        }
        // Candidate rest slots: overlapping the frontier box (the link),
        // clear of everything else.
        for rx in (frontier.x - 1)..=(frontier.x + 1) {
            for ry in (frontier.y - 1)..=(frontier.y + 1) {
                let rest = pt(rx, ry);
                if rest == frontier || !overlap(rest, frontier) {
                    continue;
                }
                // The frontier is the previous robot's active slot (or the
                // source guard's free slot); the link conflict with it is
                // intended. Everything else must stay clear.
                let chain_slots: Vec<Point> = all_slots(robots)
                    .into_iter()
                    .filter(|&s| s != frontier)
                    .collect();
                if chain_slots.iter().any(|&s| s == rest || overlap(s, rest)) {
                    continue;
                }
                if !ctx.slot_ok(rest, &[frontier]) {
                    continue;
                }
                if overlap(rest, target_block) {
                    continue;
                }
                // A rest slot touching the target's free slot would jam it
                // even when relaxed; skip such placements outright.
                if overlap(rest, target_free) {
                    continue;
                }
                for d in DIRS {
                    let active = d.step(rest);
                    if active == frontier || overlap(active, frontier) {
                        continue;
                    }
                    if chain_slots.iter().any(|&s| s == active || overlap(s, active)) {
                        continue;
                    }
                    if active == rest {
                        continue;
                    }
                    if !ctx.slot_ok(active, &[]) {
                        continue;
                    }
                    if overlap(active, target_block) {
                        continue;
                    }
                    let terminal_active = overlap(active, target_free);
                    robots.push((rest, active));
                    let mut carve = ctx.base_carve.clone();
                    carve.extend(
                        robots
                            .iter()
                            .map(|&(a, b)| robot_box(a).union_bounds(&robot_box(b))),
                    );
                    let confined = carve_confined(&carve, robots, &ctx.fixed_pairs);
                    if confined && terminal_active {
                        results.push(Chain {
                            robots: robots.clone(),
                        });
                    } else if confined {
                        dfs(ctx, active, target_free, target_block, max_len, robots, results);
                    }
                    robots.pop();
                }
            }
        }
    }
    dfs(
        ctx,
        from_free,
        target_free,
        target_block,
        max_len,
        &mut robots,
        &mut results,
    );
    results
}

fn build_connector(
    walls: (Dir, Dir),
    ga: &Guard,
    gb: &Guard,
    chain: &Chain,
) -> Gadget {
    let mut free_rects = Vec::new();
    let mut robots = Vec::new();
    for (wall, g, name) in [(walls.0, ga, "ga"), (walls.1, gb, "gb")] {
        // door pocket
        free_rects.push(door_pocket(wall));
        free_rects.push(robot_box(g.block).union_bounds(&robot_box(g.free)));
        robots.push(VertexRobot {
            name: name.to_string(),
            slots: vec![g.block, g.free],
            special: false,
        });
    }
    for (i, &(r, d)) in chain.robots.iter().enumerate() {
        free_rects.push(robot_box(r).union_bounds(&robot_box(d)));
        robots.push(VertexRobot {
            name: format!("m{i}"),
            slots: vec![r, d],
            special: false,
        });
    }
    // Clip the free space to the cell.
    let free_rects = free_rects
        .iter()
        .filter_map(|r| {
            let c = rect(r.x0.max(0), r.y0.max(0), r.x1.min(10), r.y1.min(10));
            c.is_valid().then_some(c)
        })
        .collect();
    Gadget {
        kind: GadgetKind::Connector,
        ports: BTreeMap::from([(walls.0, 2), (walls.1, 2)]),
        free_rects,
        point_obstacle: None,
        vertex_robots: robots,
        rotation: 0,
    }
}

fn door_pocket(wall: Dir) -> Rect {
    match wall {
        Dir::West => rect(0, 4, 1, 6),
        Dir::East => rect(9, 4, 10, 6),
        Dir::South => rect(4, 0, 6, 1),
        Dir::North => rect(4, 9, 6, 10),
    }
}

fn door_slot(wall: Dir) -> Point {
    match wall {
        Dir::West => pt(0, 5),
        Dir::East => pt(10, 5),
        Dir::South => pt(5, 0),
        Dir::North => pt(5, 10),
    }
}

fn assemble(
    kind: GadgetKind,
    ports: &[(Dir, u32)],
    guards: &[(&str, &Guard)],
    chains: &[(&str, &Chain)],
    hub: Option<(&str, Vec<Point>)>,
    point_obstacle: Option<Point>,
) -> Gadget {
    let mut free_rects: Vec<Rect> = ports.iter().map(|&(w, _)| door_pocket(w)).collect();
    let mut robots = Vec::new();
    for &(name, g) in guards {
        free_rects.push(robot_box(g.block).union_bounds(&robot_box(g.free)));
        robots.push(VertexRobot {
            name: name.to_string(),
            slots: vec![g.block, g.free],
            special: false,
        });
    }
    for &(prefix, chain) in chains {
        for (i, &(r, d)) in chain.robots.iter().enumerate() {
            free_rects.push(robot_box(r).union_bounds(&robot_box(d)));
            robots.push(VertexRobot {
                name: format!("{prefix}{i}"),
                slots: vec![r, d],
                special: false,
            });
        }
    }
    if let Some((name, slots)) = hub {
        let mut bb = robot_box(slots[0]);
        for &s in &slots {
            bb = bb.union_bounds(&robot_box(s));
        }
        free_rects.push(bb);
        robots.push(VertexRobot {
            name: name.to_string(),
            slots,
            special: true,
        });
    }
    let free_rects = free_rects
        .iter()
        .filter_map(|r| {
            let c = rect(r.x0.max(0), r.y0.max(0), r.x1.min(10), r.y1.min(10));
            c.is_valid().then_some(c)
        })
        .collect();
    Gadget {
        kind,
        ports: ports.iter().copied().collect(),
        free_rects,
        point_obstacle,
        vertex_robots: robots,
        rotation: 0,
    }
}

/// Cheap necessary condition for confinement: no vertex robot may have a
/// statically-free position one half-step off its declared slots. (Dynamic
/// confinement by other robots' bodies is possible in principle, but
/// searching only statically-confined designs keeps candidates honest.)
fn statically_confined(g: &Gadget) -> bool {
    let mut grid = CellGrid::new();
    grid.place((0, 0), g.clone());
    for w in g.walls() {
        grid.stub((0, 0), w, Boundary::Permissive);
    }
    let Ok((instance, robots)) = grid.build() else {
        return false;
    };
    let vertex_pairs: Vec<(usize, Vec<Point>)> = robots
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r.kind, CellRobotKind::Vertex { .. }))
        .map(|(i, r)| (i, r.slots.clone()))
        .collect();
    for (ri, slots) in &vertex_pairs {
        for &s in slots {
            for d in DIRS {
                let p = d.step(s);
                if slots.contains(&p) || !instance.position_free(p) {
                    continue;
                }
                let blocked = robots.iter().enumerate().any(|(qi, q)| {
                    qi != *ri && q.slots.iter().all(|&qs| overlap(qs, p))
                });
                if !blocked {
                    return false;
                }
            }
        }
    }
    true
}

fn print_gadget(label: &str, g: &Gadget) {
    println!("{label}:");
    for r in &g.vertex_robots {
        println!("  {}: {:?}{}", r.name, r.slots, if r.special { " special" } else { "" });
    }
    if let Some(p) = g.point_obstacle {
        println!("  point obstacle {p:?}");
    }
    println!("  free: {:?}", g.free_rects);
}

fn search_straight_connector() {
    for ga in guard_templates(Dir::West) {
        for gb in guard_templates(Dir::East) {
            let mut fixed_slots = vec![ga.block, ga.free, gb.block];
            let mut fixed_teeth = Vec::new();
            fixed_teeth.extend(ga.tooth);
            fixed_teeth.extend(gb.tooth);
            let base_carve = vec![
                door_pocket(Dir::West),
                door_pocket(Dir::East),
                robot_box(ga.block).union_bounds(&robot_box(ga.free)),
                robot_box(gb.block).union_bounds(&robot_box(gb.free)),
            ];
            let ctx = SearchCtx {
                fixed_slots,
                fixed_teeth,
                door_slots: vec![door_slot(Dir::West), door_slot(Dir::East)],
                point_teeth: vec![],
                base_carve,
                fixed_pairs: vec![vec![ga.block, ga.free], vec![gb.block, gb.free]],
            };
            let chains = search_chain(&ctx, ga.free, gb.free, gb.block, 7);
            for chain in chains {
                let g = assemble(
                    GadgetKind::Connector,
                    &[(Dir::West, 2), (Dir::East, 2)],
                    &[("gw", &ga), ("ge", &gb)],
                    &[("m", &chain)],
                    None,
                    None,
                );
                let g = Gadget {
                    free_rects: {
                        let mut f = g.free_rects.clone();
                        f.retain(|r| {
                            !ga.tooth.map_or(false, |t| r.interiors_overlap(&t))
                                && !gb.tooth.map_or(false, |t| r.interiors_overlap(&t))
                        });
                        f
                    },
                    ..g
                };
                let report = verify_gadget_semantics(&g);
                if report.passed() {
                    print_gadget("STRAIGHT CONNECTOR", &g);
                    return;
                }
            }
        }
    }
    println!("no straight connector found");
}

/// Two guards on the heavy door (one retracting to each side), with the
/// single point obstacle in the doorway stopping deep slides. Each guard
/// feeds its own chain to one light door.
fn search_and_double(heavy: Dir, light1: Dir, light2: Dir, label: &str) -> bool {
    assert_eq!(heavy, Dir::West, "templates are written for a west heavy door");
    let gh1 = Guard {
        wall: heavy,
        block: pt(1, 4),
        free: pt(1, 3),
        tooth: None,
        point_tooth: Some(pt(1, 5)),
    };
    let gh2 = Guard {
        wall: heavy,
        block: pt(1, 6),
        free: pt(1, 7),
        tooth: None,
        point_tooth: None,
    };
    for g1 in guard_templates(light1) {
        for g2 in guard_templates(light2) {
            let teeth: Vec<Rect> = [g1.tooth, g2.tooth].into_iter().flatten().collect();
            let base_slots = vec![
                gh1.block, gh1.free, gh2.block, gh2.free, g1.block, g2.block,
            ];
            let doors = vec![door_slot(heavy), door_slot(light1), door_slot(light2)];
            let base_carve = vec![
                door_pocket(heavy),
                door_pocket(light1),
                door_pocket(light2),
                robot_box(gh1.block).union_bounds(&robot_box(gh1.free)),
                robot_box(gh2.block).union_bounds(&robot_box(gh2.free)),
                robot_box(g1.block).union_bounds(&robot_box(g1.free)),
                robot_box(g2.block).union_bounds(&robot_box(g2.free)),
            ];
            let ctx1 = SearchCtx {
                fixed_slots: {
                    let mut s = base_slots.clone();
                    s.push(g2.free);
                    s
                },
                fixed_teeth: teeth.clone(),
                door_slots: doors.clone(),
                point_teeth: vec![pt(1, 5)],
                base_carve: base_carve.clone(),
                fixed_pairs: vec![
                    vec![gh1.block, gh1.free],
                    vec![gh2.block, gh2.free],
                    vec![g1.block, g1.free],
                    vec![g2.block, g2.free],
                ],
            };
            let chains1 = search_chain(&ctx1, gh1.free, g1.free, g1.block, 7);
            if std::env::var("DEBUG_SEARCH").is_ok() {
                println!(
                    "double {label}: g1 {:?}/{:?} g2 {:?}/{:?}: chains1={}",
                    g1.block, g1.free, g2.block, g2.free, chains1.len()
                );
            }
            for c1 in &chains1 {
                let mut slots2 = base_slots.clone();
                slots2.push(g1.free);
                slots2.extend(c1.robots.iter().flat_map(|&(r, d)| [r, d]));
                let mut carve2 = base_carve.clone();
                carve2.extend(
                    c1.robots
                        .iter()
                        .map(|&(a, b)| robot_box(a).union_bounds(&robot_box(b))),
                );
                let mut pairs2 = vec![
                    vec![gh1.block, gh1.free],
                    vec![gh2.block, gh2.free],
                    vec![g1.block, g1.free],
                    vec![g2.block, g2.free],
                ];
                pairs2.extend(c1.robots.iter().map(|&(r, d)| vec![r, d]));
                let ctx2 = SearchCtx {
                    fixed_slots: slots2,
                    fixed_teeth: teeth.clone(),
                    door_slots: doors.clone(),
                    point_teeth: vec![pt(1, 5)],
                    base_carve: carve2,
                    fixed_pairs: pairs2,
                };
                let chains2 = search_chain(&ctx2, gh2.free, g2.free, g2.block, 7);
                for c2 in &chains2 {
                    let g = assemble(
                        GadgetKind::And,
                        &[(heavy, 2), (light1, 1), (light2, 1)],
                        &[("gh1", &gh1), ("gh2", &gh2), ("g1", &g1), ("g2", &g2)],
                        &[("a", c1), ("b", c2)],
                        None,
                        Some(pt(1, 5)),
                    );
                    if !statically_confined(&g) {
                        continue;
                    }
                    let report = verify_gadget_semantics(&g);
                    if report.passed() {
                        print_gadget(label, &g);
                        return true;
                    } else if std::env::var("DEBUG_SEARCH").is_ok() {
                        println!("candidate failed:");
                        print_gadget("  cand", &g);
                        for v in report.violations.iter().take(3) {
                            println!("    {v}");
                        }
                    }
                }
            }
        }
    }
    println!("{label}: none found (double guard)");
    false
}

fn search_and(heavy: Dir, light1: Dir, light2: Dir, label: &str) -> bool {
    // Single heavy-door guard: the first chain runs to one light door; the
    // second branches off any active slot along it (or off the guard) and
    // runs to the other.
    for gh in guard_templates(heavy) {
        for g1 in guard_templates(light1) {
            for g2 in guard_templates(light2) {
                let teeth: Vec<Rect> = [gh.tooth, g1.tooth, g2.tooth]
                    .into_iter()
                    .flatten()
                    .collect();
                let base_slots = vec![gh.block, gh.free, g1.block, g2.block];
                let base_carve = vec![
                    door_pocket(heavy),
                    door_pocket(light1),
                    door_pocket(light2),
                    robot_box(gh.block).union_bounds(&robot_box(gh.free)),
                    robot_box(g1.block).union_bounds(&robot_box(g1.free)),
                    robot_box(g2.block).union_bounds(&robot_box(g2.free)),
                ];
                let ctx1 = SearchCtx {
                    fixed_slots: {
                        let mut s = base_slots.clone();
                        s.push(g2.free);
                        s
                    },
                    fixed_teeth: teeth.clone(),
                    door_slots: vec![door_slot(heavy), door_slot(light1), door_slot(light2)],
                    point_teeth: vec![],
                    base_carve: base_carve.clone(),
                    fixed_pairs: vec![
                        vec![gh.block, gh.free],
                        vec![g1.block, g1.free],
                        vec![g2.block, g2.free],
                    ],
                };
                let chains1 = search_chain(&ctx1, gh.free, g1.free, g1.block, 6);
                if std::env::var("DEBUG_SEARCH").is_ok() && !chains1.is_empty() {
                    println!(
                        "single {label}: gh {:?}/{:?} g1 {:?}/{:?} g2 {:?}/{:?}: chains1={}",
                        gh.block, gh.free, g1.block, g1.free, g2.block, g2.free, chains1.len()
                    );
                }
                let mut c2_total = 0usize;
                for c1 in &chains1 {
                    let mut slots2 = base_slots.clone();
                    slots2.push(g1.free);
                    slots2.extend(c1.robots.iter().flat_map(|&(r, d)| [r, d]));
                    let mut carve2 = base_carve.clone();
                    carve2.extend(
                        c1.robots
                            .iter()
                            .map(|&(a, b)| robot_box(a).union_bounds(&robot_box(b))),
                    );
                    let mut pairs2 = vec![
                        vec![gh.block, gh.free],
                        vec![g1.block, g1.free],
                        vec![g2.block, g2.free],
                    ];
                    pairs2.extend(c1.robots.iter().map(|&(r, d)| vec![r, d]));
                    let ctx2 = SearchCtx {
                        fixed_slots: slots2,
                        fixed_teeth: teeth.clone(),
                        door_slots: vec![
                            door_slot(heavy),
                            door_slot(light1),
                            door_slot(light2),
                        ],
                        point_teeth: vec![],
                        base_carve: carve2,
                        fixed_pairs: pairs2,
                    };
                    // Branch points: pressing the heavy door drives every
                    // active slot of chain 1, so any of them can also drive
                    // the second chain.
                    let mut frontiers = vec![gh.free];
                    frontiers.extend(c1.robots.iter().map(|&(_, d)| d));
                    for &frontier in &frontiers {
                        let mut ctx2b = SearchCtx {
                            fixed_slots: ctx2.fixed_slots.clone(),
                            fixed_teeth: ctx2.fixed_teeth.clone(),
                            door_slots: ctx2.door_slots.clone(),
                            point_teeth: ctx2.point_teeth.clone(),
                            base_carve: ctx2.base_carve.clone(),
                            fixed_pairs: ctx2.fixed_pairs.clone(),
                        };
                        ctx2b.fixed_slots.retain(|&s| s != frontier);
                        let chains2 = search_chain(&ctx2b, frontier, g2.free, g2.block, 6);
                        c2_total += chains2.len();
                        for c2 in &chains2 {
                            let g = assemble(
                                GadgetKind::And,
                                &[(heavy, 2), (light1, 1), (light2, 1)],
                                &[("gh", &gh), ("g1", &g1), ("g2", &g2)],
                                &[("a", c1), ("b", c2)],
                                None,
                                None,
                            );
                            if !statically_confined(&g) {
                                continue;
                            }
                            let report = verify_gadget_semantics(&g);
                            if report.passed() {
                                print_gadget(label, &g);
                                println!(
                                    "  guards: gh {:?}/{:?} tooth {:?}; g1 {:?}/{:?} tooth {:?}; g2 {:?}/{:?} tooth {:?}",
                                    gh.block, gh.free, gh.tooth, g1.block, g1.free, g1.tooth,
                                    g2.block, g2.free, g2.tooth
                                );
                                return true;
                            } else if std::env::var("DEBUG_SEARCH").is_ok() {
                                println!("single-cand failed ({} robots):", g.vertex_robots.len());
                                for r in &g.vertex_robots {
                                    print!(" {}{:?}", r.name, r.slots);
                                }
                                println!();
                                for v in report.violations.iter().take(2) {
                                    println!("    {v}");
                                }
                            }
                        }
                    }
                }
                if std::env::var("DEBUG_SEARCH").is_ok() && c2_total > 0 {
                    println!("  ... c2_total={c2_total}");
                }
            }
        }
    }
    println!("{label}: none found");
    false
}

/// Generic hub search: a central robot with `hub` slots; chain `k` runs
/// from the guard of `walls[k]` to a jam of hub slot `assign[k]`, touching
/// no other hub slot. Guards are chosen per wall from the template set.
fn search_hub_gadget(
    kind: GadgetKind,
    ports: &[(Dir, u32)],
    hub: &[Point],
    assign: &[usize],
    label: &str,
    special: bool,
    point_obstacle: Option<Point>,
) -> Option<Gadget> {
    let walls: Vec<Dir> = ports.iter().map(|&(w, _)| w).collect();
    let guard_sets: Vec<Vec<Guard>> = walls.iter().map(|&w| guard_templates(w)).collect();
    let mut guard_choice = vec![0usize; walls.len()];
    loop {
        let guards: Vec<&Guard> = guard_choice
            .iter()
            .zip(&guard_sets)
            .map(|(&i, set)| &set[i])
            .collect();
        'attempt: {
            let teeth: Vec<Rect> = guards.iter().filter_map(|g| g.tooth).collect();
            let hub_clear = hub.iter().all(|&s| {
                guards.iter().all(|g| !overlap(s, g.block) && !overlap(s, g.free))
                    && teeth.iter().all(|t| !robot_box(s).interiors_overlap(t))
                    && walls.iter().all(|&w| !overlap(s, door_slot(w)))
                    && in_cell(s)
                    && point_obstacle.map_or(true, |p| !robot_box(s).contains_interior(p))
            });
            if !hub_clear {
                break 'attempt;
            }
            let mut fixed: Vec<Point> = guards
                .iter()
                .flat_map(|g| [g.block, g.free])
                .chain(hub.iter().copied())
                .collect();
            let mut base_carve: Vec<Rect> = walls.iter().map(|&w| door_pocket(w)).collect();
            for g in &guards {
                base_carve.push(robot_box(g.block).union_bounds(&robot_box(g.free)));
            }
            {
                let mut bb = robot_box(hub[0]);
                for &hs in hub {
                    bb = bb.union_bounds(&robot_box(hs));
                }
                base_carve.push(bb);
            }
            let mut chains: Vec<Chain> = Vec::new();
            for k in 0..walls.len() {
                let target = hub[assign[k]];
                let mut pairsk: Vec<Vec<Point>> =
                    guards.iter().map(|g| vec![g.block, g.free]).collect();
                pairsk.push(hub.to_vec());
                for c in &chains {
                    pairsk.extend(c.robots.iter().map(|&(r, d)| vec![r, d]));
                }
                let ctx = SearchCtx {
                    fixed_slots: {
                        let mut s = fixed.clone();
                        s.retain(|&q| q != target && q != guards[k].free);
                        s
                    },
                    fixed_teeth: teeth.clone(),
                    door_slots: walls.iter().map(|&w| door_slot(w)).collect(),
                    point_teeth: point_obstacle.into_iter().collect(),
                    base_carve: base_carve.clone(),
                    fixed_pairs: pairsk,
                };
                let dummy_block = pt(-100, -100);
                let found = search_chain(&ctx, guards[k].free, target, dummy_block, 4);
                if std::env::var("DEBUG_HUB").is_ok() {
                    println!(
                        "hub {hub:?} wall {:?} guard {:?}/{:?} -> target {target:?}: {} chains",
                        walls[k], guards[k].block, guards[k].free,
                        found.len()
                    );
                }
                let mut picked = None;
                'chains: for c in found {
                    let (_, jam) = *c.robots.last().unwrap();
                    for (qi, &q) in hub.iter().enumerate() {
                        if qi != assign[k] && overlap(jam, q) {
                            continue 'chains;
                        }
                    }
                    // Intermediate slots must not touch any hub slot.
                    for &(r, d) in &c.robots[..c.robots.len() - 1] {
                        for &q in hub {
                            if overlap(r, q) || overlap(d, q) {
                                continue 'chains;
                            }
                        }
                    }
                    if hub.iter().enumerate().any(|(qi, &q)| {
                        qi != assign[k] && overlap(c.robots.last().unwrap().0, q)
                    }) {
                        continue 'chains;
                    }
                    picked = Some(c);
                    break;
                }
                let Some(c) = picked else { break 'attempt };
                fixed.extend(c.robots.iter().flat_map(|&(r, d)| [r, d]));
                base_carve.extend(
                    c.robots
                        .iter()
                        .map(|&(a, b)| robot_box(a).union_bounds(&robot_box(b))),
                );
                chains.push(c);
            }
            let prefixes = ["a", "n", "e", "s"];
            let chain_refs: Vec<(&str, &Chain)> = chains
                .iter()
                .enumerate()
                .map(|(i, c)| (prefixes[i], c))
                .collect();
            let guard_refs: Vec<(&str, &Guard)> = guards
                .iter()
                .enumerate()
                .map(|(i, g)| (["gw", "gn", "ge", "gs"][i], *g))
                .collect();
            let g = assemble(
                kind,
                ports,
                &guard_refs,
                &chain_refs,
                Some(("hub", hub.to_vec())).filter(|_| special || hub.len() > 2),
                point_obstacle,
            );
            // For a 2-slot hub it is an ordinary vertex robot.
            let g = if special || hub.len() > 2 {
                g
            } else {
                let mut g2 = assemble(kind, ports, &guard_refs, &chain_refs, None, point_obstacle);
                let mut bb = robot_box(hub[0]);
                for &hs in hub {
                    bb = bb.union_bounds(&robot_box(hs));
                }
                g2.free_rects.push(rect(
                    bb.x0.max(0),
                    bb.y0.max(0),
                    bb.x1.min(10),
                    bb.y1.min(10),
                ));
                g2.vertex_robots.push(VertexRobot {
                    name: "hub".into(),
                    slots: hub.to_vec(),
                    special: false,
                });
                g2
            };
            if !statically_confined(&g) {
                break 'attempt;
            }
            let report = verify_gadget_semantics(&g);
            if report.passed() {
                print_gadget(label, &g);
                return Some(g);
            } else if std::env::var("DEBUG_SEARCH").is_ok() {
                println!("hub-cand failed: {:?}", report.violations.first());
            }
        }
        // Next guard combination.
        let mut i = 0;
        loop {
            if i == guard_choice.len() {
                return None;
            }
            guard_choice[i] += 1;
            if guard_choice[i] < guard_sets[i].len() {
                break;
            }
            guard_choice[i] = 0;
            i += 1;
        }
    }
}

fn two_slot_hubs() -> Vec<Vec<Point>> {
    let mut out = Vec::new();
    for x in 3..=7 {
        for y in 2..=7 {
            let c = pt(x, y);
            for d in [Dir::East, Dir::North] {
                let e = d.step(c);
                if in_cell(e) {
                    out.push(vec![c, e]);
                }
            }
        }
    }
    out
}

/// Tooth options for a guardless door: the chain's jam robot blocks entry,
/// and a tooth may be needed against deep slides.
fn tooth_options(wall: Dir) -> Vec<Option<Rect>> {
    let ts = match wall {
        Dir::West => [rect(1, 4, 2, 5), rect(1, 5, 2, 6)],
        Dir::East => [rect(8, 4, 9, 5), rect(8, 5, 9, 6)],
        Dir::South => [rect(4, 1, 5, 2), rect(5, 1, 6, 2)],
        Dir::North => [rect(4, 8, 5, 9), rect(5, 8, 6, 9)],
    };
    vec![None, Some(ts[0]), Some(ts[1])]
}

/// AND with guardless light doors: the heavy door's guard drives one chain
/// that jams the first light door's entry square directly, and a second
/// chain (branching anywhere off the first, or from the guard) jams the
/// other light door.
fn search_and_guardless(heavy: Dir, light1: Dir, light2: Dir, label: &str) -> Option<Gadget> {
    for gh in guard_templates(heavy) {
        for t1 in tooth_options(light1) {
            for t2 in tooth_options(light2) {
                let teeth: Vec<Rect> = gh
                    .tooth
                    .into_iter()
                    .chain(t1)
                    .chain(t2)
                    .collect();
                let doors = vec![door_slot(heavy), door_slot(light1), door_slot(light2)];
                let base_carve = vec![
                    door_pocket(heavy),
                    door_pocket(light1),
                    door_pocket(light2),
                    robot_box(gh.block).union_bounds(&robot_box(gh.free)),
                ];
                let ctx1 = SearchCtx {
                    fixed_slots: vec![gh.block, gh.free],
                    fixed_teeth: teeth.clone(),
                    door_slots: doors.clone(),
                    point_teeth: vec![],
                    base_carve: base_carve.clone(),
                    fixed_pairs: vec![vec![gh.block, gh.free]],
                };
                // Chains jam the doors' half-inside squares directly. The
                // door slots are excluded from slot_ok, so drop them from
                // the door list for their own chain.
                let in1 = in_slot_of(light1);
                let in2 = in_slot_of(light2);
                let mut ctx1 = ctx1;
                ctx1.door_slots = vec![door_slot(heavy), door_slot(light2)];
                let chains1 = search_chain(&ctx1, gh.free, in1, pt(-100, -100), 5);
                for c1 in &chains1 {
                    let mut fixed2 = vec![gh.block, gh.free];
                    fixed2.extend(c1.robots.iter().flat_map(|&(r, d)| [r, d]));
                    let mut carve2 = base_carve.clone();
                    carve2.extend(
                        c1.robots
                            .iter()
                            .map(|&(a, b)| robot_box(a).union_bounds(&robot_box(b))),
                    );
                    let mut frontiers = vec![gh.free];
                    frontiers.extend(c1.robots.iter().map(|&(_, d)| d));
                    for &frontier in &frontiers {
                        let mut pairs2 = vec![vec![gh.block, gh.free]];
                        pairs2.extend(c1.robots.iter().map(|&(r, d)| vec![r, d]));
                        let ctx2 = SearchCtx {
                            fixed_slots: fixed2
                                .iter()
                                .copied()
                                .filter(|&s| s != frontier)
                                .collect(),
                            fixed_teeth: teeth.clone(),
                            door_slots: vec![door_slot(heavy), door_slot(light1)],
                            point_teeth: vec![],
                            base_carve: carve2.clone(),
                            fixed_pairs: pairs2,
                        };
                        let chains2 = search_chain(&ctx2, frontier, in2, pt(-100, -100), 5);
                        for c2 in &chains2 {
                            let mut g = assemble(
                                GadgetKind::And,
                                &[(heavy, 2), (light1, 1), (light2, 1)],
                                &[("gh", &gh)],
                                &[("a", c1), ("b", c2)],
                                None,
                                None,
                            );
                            // Teeth must stay uncarved; drop the candidate if
                            // a pocket covers one.
                            if teeth.iter().any(|t| {
                                g.free_rects.iter().any(|r| r.interiors_overlap(t))
                            }) {
                                continue;
                            }
                            g.free_rects.retain(|r| r.is_valid());
                            if !statically_confined(&g) {
                                continue;
                            }
                            let report = verify_gadget_semantics(&g);
                            if report.passed() {
                                print_gadget(label, &g);
                                println!("  gh {:?}/{:?} tooth {:?}; teeth1 {t1:?} teeth2 {t2:?}", gh.block, gh.free, gh.tooth);
                                return Some(g);
                            } else if std::env::var("DEBUG_SEARCH").is_ok() {
                                println!(
                                    "guardless-cand failed: {:?}",
                                    report.violations.first()
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    println!("{label}: none found (guardless)");
    None
}

fn in_slot_of(wall: Dir) -> Point {
    match wall {
        Dir::West => pt(0, 5),
        Dir::East => pt(10, 5),
        Dir::South => pt(5, 0),
        Dir::North => pt(5, 10),
    }
}

fn search_and_hub(heavy: Dir, light1: Dir, light2: Dir, label: &str) -> bool {
    for hub in two_slot_hubs() {
        for assign in [[0usize, 1, 1], [1, 0, 0]] {
            if search_hub_gadget(
                GadgetKind::And,
                &[(heavy, 2), (light1, 1), (light2, 1)],
                &hub,
                &assign,
                label,
                false,
                None,
            )
            .is_some()
            {
                return true;
            }
        }
    }
    println!("{label}: none found (hub)");
    false
}

fn l_hubs() -> Vec<Vec<Point>> {
    // L-shaped triples: corner slot adjacent to the two ends.
    let mut out = Vec::new();
    for x in 2..=8 {
        for y in 2..=8 {
            let c = pt(x, y);
            let arms = [pt(x - 1, y), pt(x + 1, y), pt(x, y - 1), pt(x, y + 1)];
            for i in 0..4 {
                for j in 0..4 {
                    // skip straight-line triples (arms opposite each other)
                    if i == j || (i / 2 == j / 2) {
                        continue;
                    }
                    if in_cell(arms[i]) && in_cell(arms[j]) {
                        out.push(vec![arms[i], c, arms[j]]);
                    }
                }
            }
        }
    }
    out
}

fn search_or() -> bool {
    let walls = [Dir::West, Dir::North, Dir::East];
    for hub in l_hubs() {
        let hub_clear = hub
            .iter()
            .all(|&s| walls.iter().all(|&w| !overlap(s, door_slot(w)) && in_cell(s)));
        if !hub_clear {
            continue;
        }
        for perm in [[0usize, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            if try_or_assignment(&hub, perm) {
                return true;
            }
        }
    }
    println!("OR: none found");
    false
}

fn try_or_assignment(hub: &[Point], perm: [usize; 3]) -> bool {
    let walls = [Dir::West, Dir::North, Dir::East];
    let mut chains: Vec<Chain> = Vec::new();
    let mut fixed: Vec<Point> = hub.to_vec();
    let mut base_carve: Vec<Rect> = walls.iter().map(|&w| door_pocket(w)).collect();
    {
        let mut bb = robot_box(hub[0]);
        for &hslot in hub {
            bb = bb.union_bounds(&robot_box(hslot));
        }
        base_carve.push(bb);
    }
    for k in 0..3 {
        let target = hub[perm[k]];
        let mut pairsk: Vec<Vec<Point>> = vec![hub.to_vec()];
        for c in &chains {
            pairsk.extend(c.robots.iter().map(|&(r, d)| vec![r, d]));
        }
        let mut carve_k = base_carve.clone();
        for c in &chains {
            carve_k.extend(
                c.robots
                    .iter()
                    .map(|&(a, b)| robot_box(a).union_bounds(&robot_box(b))),
            );
        }
        let ctx = SearchCtx {
            fixed_slots: {
                let mut s: Vec<Point> = fixed.clone();
                s.retain(|&q| q != target);
                s
            },
            fixed_teeth: vec![],
            door_slots: walls
                .iter()
                .copied()
                .filter(|&w| w != walls[k])
                .map(door_slot)
                .collect(),
            point_teeth: vec![],
            base_carve: carve_k,
            fixed_pairs: pairsk,
        };
        // Guardless: the chain runs from the door's half-inside square to a
        // jam of the assigned hub slot; its first robot doubles as the door
        // guard.
        let found = search_chain(&ctx, door_slot(walls[k]), target, pt(-100, -100), 4);
        let mut picked = None;
        'chains: for c in found {
            let (_, jam) = *c.robots.last().unwrap();
            for (qi, &q) in hub.iter().enumerate() {
                if qi != perm[k] && overlap(jam, q) {
                    continue 'chains;
                }
            }
            for &(r, d) in &c.robots[..c.robots.len() - 1] {
                for &q in hub {
                    if overlap(r, q) || overlap(d, q) {
                        continue 'chains;
                    }
                }
            }
            if hub
                .iter()
                .enumerate()
                .any(|(qi, &q)| qi != perm[k] && overlap(c.robots.last().unwrap().0, q))
            {
                continue 'chains;
            }
            picked = Some(c);
            break;
        }
        let Some(c) = picked else { return false };
        fixed.extend(c.robots.iter().flat_map(|&(r, d)| [r, d]));
        chains.push(c);
    }
    let chain_refs: Vec<(&str, &Chain)> = chains
        .iter()
        .enumerate()
        .map(|(i, c)| (["a", "n", "e"][i], c))
        .collect();
    let g = assemble(
        GadgetKind::Or,
        &[(Dir::West, 2), (Dir::North, 2), (Dir::East, 2)],
        &[],
        &chain_refs,
        Some(("save", hub.to_vec())),
        None,
    );
    if !statically_confined(&g) {
        return false;
    }
    let report = verify_gadget_semantics(&g);
    if report.passed() {
        print_gadget("OR GADGET", &g);
        true
    } else {
        if std::env::var("DEBUG_SEARCH").is_ok() {
            println!("or-cand failed: {:?}", report.violations.first());
        }
        false
    }
}

fn search_bent_connector() {
    for ga in guard_templates(Dir::West) {
        for gb in guard_templates(Dir::South) {
            let fixed_slots = vec![ga.block, ga.free, gb.block];
            let mut fixed_teeth = Vec::new();
            fixed_teeth.extend(ga.tooth);
            fixed_teeth.extend(gb.tooth);
            let base_carve = vec![
                door_pocket(Dir::West),
                door_pocket(Dir::South),
                robot_box(ga.block).union_bounds(&robot_box(ga.free)),
                robot_box(gb.block).union_bounds(&robot_box(gb.free)),
            ];
            let ctx = SearchCtx {
                fixed_slots,
                fixed_teeth,
                door_slots: vec![door_slot(Dir::West), door_slot(Dir::South)],
                point_teeth: vec![],
                base_carve,
                fixed_pairs: vec![vec![ga.block, ga.free], vec![gb.block, gb.free]],
            };
            let chains = search_chain(&ctx, ga.free, gb.free, gb.block, 7);
            if std::env::var("DEBUG_SEARCH").is_ok() {
                println!(
                    "bent: ga {:?}/{:?} gb {:?}/{:?}: chains={}",
                    ga.block, ga.free, gb.block, gb.free, chains.len()
                );
            }
            for chain in chains {
                let g = assemble(
                    GadgetKind::Connector,
                    &[(Dir::West, 2), (Dir::South, 2)],
                    &[("gw", &ga), ("gs", &gb)],
                    &[("m", &chain)],
                    None,
                    None,
                );
                if !statically_confined(&g) {
                    continue;
                }
                let report = verify_gadget_semantics(&g);
                if report.passed() {
                    print_gadget("BENT CONNECTOR", &g);
                    return;
                }
            }
        }
    }
    println!("no bent connector found");
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let what = args.get(1).map(|s| s.as_str()).unwrap_or("all");
    if what == "bent" {
        search_bent_connector();
    }
    if what == "straight" || what == "all" {
        search_straight_connector();
    }
    if what == "and" || what == "all" {
        if search_and_guardless(Dir::West, Dir::South, Dir::East, "AND-L (W2, S1, E1)").is_none()
        {
            search_and_hub(Dir::West, Dir::South, Dir::East, "AND-L hub (W2, S1, E1)");
        }
        if search_and_guardless(Dir::West, Dir::North, Dir::South, "AND-T (W2, N1, S1)")
            .is_none()
        {
            search_and_hub(Dir::West, Dir::North, Dir::South, "AND-T hub (W2, N1, S1)");
        }
    }
    if what == "or" || what == "all" {
        search_or();
    }
}
