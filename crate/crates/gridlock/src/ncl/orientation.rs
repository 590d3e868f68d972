use super::graph::{ConstraintGraph, EdgeId, VertexId};

/// A direction for every edge of a graph: one bit per edge in edge-id order,
/// set when the edge points into its stored `v` endpoint. Canonical and
/// cheap to hash, so it doubles as the search state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation {
    bits: Vec<u64>,
    len: u32,
}

impl Orientation {
    /// All edges pointing into their `u` endpoint.
    pub fn all_toward_u(edge_count: usize) -> Orientation {
        Orientation {
            bits: vec![0; edge_count.div_ceil(64)],
            len: edge_count as u32,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn bit(&self, e: EdgeId) -> bool {
        self.bits[e.index() / 64] >> (e.index() % 64) & 1 == 1
    }

    fn set_bit(&mut self, e: EdgeId, value: bool) {
        let word = &mut self.bits[e.index() / 64];
        if value {
            *word |= 1 << (e.index() % 64);
        } else {
            *word &= !(1 << (e.index() % 64));
        }
    }

    /// The vertex this edge currently points into.
    pub fn head(&self, g: &ConstraintGraph, e: EdgeId) -> VertexId {
        let edge = g.edge(e);
        if self.bit(e) {
            edge.v
        } else {
            edge.u
        }
    }

    pub fn tail(&self, g: &ConstraintGraph, e: EdgeId) -> VertexId {
        let edge = g.edge(e);
        if self.bit(e) {
            edge.u
        } else {
            edge.v
        }
    }

    pub fn points_into(&self, g: &ConstraintGraph, e: EdgeId, v: VertexId) -> bool {
        self.head(g, e) == v
    }

    pub fn set_head(&mut self, g: &ConstraintGraph, e: EdgeId, head: VertexId) {
        let edge = g.edge(e);
        debug_assert!(edge.touches(head), "head must be an endpoint of the edge");
        self.set_bit(e, head == edge.v);
    }

    pub fn reverse(&mut self, e: EdgeId) {
        let current = self.bit(e);
        self.set_bit(e, !current);
    }

    pub fn reversed(&self, e: EdgeId) -> Orientation {
        let mut o = self.clone();
        o.reverse(e);
        o
    }

    /// Edges on which `self` and `other` disagree.
    pub fn diff(&self, other: &Orientation) -> Vec<EdgeId> {
        debug_assert_eq!(self.len, other.len);
        let mut out = Vec::new();
        for (w, (a, b)) in self.bits.iter().zip(other.bits.iter()).enumerate() {
            let mut x = a ^ b;
            while x != 0 {
                let i = x.trailing_zeros() as usize;
                out.push(EdgeId((w * 64 + i) as u32));
                x &= x - 1;
            }
        }
        out
    }

    /// Weighted in-flow at `v`.
    pub fn inflow(&self, g: &ConstraintGraph, v: VertexId) -> u32 {
        g.incident(v)
            .iter()
            .filter(|&&e| self.points_into(g, e, v))
            .map(|&e| g.edge(e).weight)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::super::graph::k4_all_or;
    use super::*;

    #[test]
    fn head_tail_reverse() {
        let g = k4_all_or();
        let e = g.edge_by_name("e12").unwrap();
        let mut o = Orientation::all_toward_u(g.edge_count());
        let (u, v) = (g.edge(e).u, g.edge(e).v);
        assert_eq!(o.head(&g, e), u);
        o.reverse(e);
        assert_eq!(o.head(&g, e), v);
        assert_eq!(o.tail(&g, e), u);
        o.set_head(&g, e, u);
        assert_eq!(o.head(&g, e), u);
    }

    #[test]
    fn diff_finds_flipped_edges() {
        let g = k4_all_or();
        let o = Orientation::all_toward_u(g.edge_count());
        let e = g.edge_by_name("e34").unwrap();
        let o2 = o.reversed(e);
        assert_eq!(o.diff(&o2), vec![e]);
        assert_eq!(o.diff(&o), Vec::<EdgeId>::new());
    }
}
