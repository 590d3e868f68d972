// quick probe for straight connector east side
use gridlock::gadgets::*;
use gridlock::geom::*;
use gridlock::motion::*;
use std::collections::BTreeMap;

fn main() {
    let g = make_gadget(GadgetKind::Connector, &[(Dir::West, 2), (Dir::East, 2)], 0).unwrap();
    let mut grid = CellGrid::new();
    grid.place((0, 0), g.clone());
    grid.stub((0, 0), Dir::West, Boundary::Permissive);
    grid.stub((0, 0), Dir::East, Boundary::Permissive);
    let (inst, robots) = grid.build().unwrap();
    println!("bounds {:?}", inst.bounds);
    for r in &robots {
        println!("robot {} slots {:?}", r.name, r.slots);
        for s in &r.slots {
            println!("   free({})={}", s, inst.position_free(*s));
        }
    }
    // all free positions
    let mut free = inst.free_positions();
    free.sort();
    println!("free positions: {:?}", free);
}
