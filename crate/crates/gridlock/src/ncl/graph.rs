use std::collections::BTreeMap;
use std::fmt;

/// Index of a vertex within its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Index of an edge within its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    And,
    Or,
    Connector,
}

impl VertexKind {
    pub fn name(self) -> &'static str {
        match self {
            VertexKind::And => "AND",
            VertexKind::Or => "OR",
            VertexKind::Connector => "CONNECTOR",
        }
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexData {
    pub name: String,
    pub kind: VertexKind,
    pub min_flow: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeData {
    pub name: String,
    pub u: VertexId,
    pub v: VertexId,
    pub weight: u32,
}

impl EdgeData {
    pub fn other_end(&self, at: VertexId) -> VertexId {
        if at == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.u == v || self.v == v
    }
}

/// Hard format errors that make a graph unusable (as opposed to semantic
/// rule violations, which go in a [`ValidationReport`]).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {0:?} references unknown vertex {1:?}")]
    UnknownVertex(String, String),
    #[error("edge {0:?} is a self-loop")]
    SelfLoop(String),
    #[error("edges {0:?} and {1:?} are parallel")]
    ParallelEdges(String, String),
    #[error("edge {0:?} has weight {1}, expected 1 or 2")]
    BadWeight(String, u32),
}

/// One semantic rule violation found by [`ConstraintGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub vertex: String,
    pub rule: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.vertex, self.rule, self.detail)
    }
}

/// Outcome of structural validation; empty means the graph obeys every rule.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            writeln!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// A constraint graph: named vertices with a minimum in-flow each, and
/// weighted edges. Simplicity (no loops, no parallel edges) is enforced at
/// construction; the kind-specific degree and weight rules are checked by
/// [`ConstraintGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    vertices: Vec<VertexData>,
    edges: Vec<EdgeData>,
    adjacency: Vec<Vec<EdgeId>>,
    vertex_names: BTreeMap<String, VertexId>,
    edge_names: BTreeMap<String, EdgeId>,
}

impl ConstraintGraph {
    pub fn new(
        vertices: Vec<VertexData>,
        edges: Vec<EdgeData>,
    ) -> Result<ConstraintGraph, GraphError> {
        let mut vertex_names = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_names
                .insert(v.name.clone(), VertexId(i as u32))
                .is_some()
            {
                return Err(GraphError::DuplicateVertex(v.name.clone()));
            }
        }
        let mut edge_names = BTreeMap::new();
        let mut seen_pairs: BTreeMap<(VertexId, VertexId), String> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            if e.u.index() >= vertices.len() {
                return Err(GraphError::UnknownVertex(e.name.clone(), format!("{:?}", e.u)));
            }
            if e.v.index() >= vertices.len() {
                return Err(GraphError::UnknownVertex(e.name.clone(), format!("{:?}", e.v)));
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop(e.name.clone()));
            }
            if e.weight != 1 && e.weight != 2 {
                return Err(GraphError::BadWeight(e.name.clone(), e.weight));
            }
            if edge_names.insert(e.name.clone(), EdgeId(i as u32)).is_some() {
                return Err(GraphError::DuplicateEdge(e.name.clone()));
            }
            let key = (e.u.min(e.v), e.u.max(e.v));
            if let Some(first) = seen_pairs.insert(key, e.name.clone()) {
                return Err(GraphError::ParallelEdges(first, e.name.clone()));
            }
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            adjacency[e.u.index()].push(EdgeId(i as u32));
            adjacency[e.v.index()].push(EdgeId(i as u32));
        }
        Ok(ConstraintGraph {
            vertices,
            edges,
            adjacency,
            vertex_names,
            edge_names,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &VertexData)> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (VertexId(i as u32), v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &EdgeData)> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| (EdgeId(i as u32), e))
    }

    pub fn vertex(&self, id: VertexId) -> &VertexData {
        &self.vertices[id.index()]
    }

    pub fn edge(&self, id: EdgeId) -> &EdgeData {
        &self.edges[id.index()]
    }

    /// Incident edges, in edge-id order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.get(name).copied()
    }

    /// Check the kind-specific structural rules at every vertex.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (id, v) in self.vertices() {
            let mut weights: Vec<u32> = self
                .incident(id)
                .iter()
                .map(|&e| self.edge(e).weight)
                .collect();
            weights.sort_unstable();
            let degree = weights.len();
            let mut push = |rule: &'static str, detail: String| {
                report.violations.push(Violation {
                    vertex: v.name.clone(),
                    rule,
                    detail,
                });
            };
            match v.kind {
                VertexKind::And => {
                    if degree != 3 {
                        push("degree != 3", format!("degree is {degree}"));
                    }
                    if degree == 3 && weights != [1, 1, 2] {
                        push("weight multiset", format!("incident weights {weights:?}, expected [1, 1, 2]"));
                    }
                    if v.min_flow != 2 {
                        push("min_flow != 2", format!("min_flow is {}", v.min_flow));
                    }
                }
                VertexKind::Or => {
                    if degree != 3 {
                        push("degree != 3", format!("degree is {degree}"));
                    }
                    if degree == 3 && weights != [2, 2, 2] {
                        push("weight multiset", format!("incident weights {weights:?}, expected [2, 2, 2]"));
                    }
                    if v.min_flow != 2 {
                        push("min_flow != 2", format!("min_flow is {}", v.min_flow));
                    }
                }
                VertexKind::Connector => {
                    if degree != 2 {
                        push("degree != 2", format!("degree is {degree}"));
                    }
                    if degree == 2 && weights[0] != weights[1] {
                        push("unequal incident weights", format!("incident weights {weights:?}"));
                    }
                    if degree == 2 && v.min_flow != weights[0] {
                        push(
                            "min_flow != incident weight",
                            format!("min_flow is {}, weight is {}", v.min_flow, weights[0]),
                        );
                    }
                }
            }
        }
        report
    }
}

/// Convenience builder used by tests and the generator.
pub fn graph_from_parts(
    vertices: &[(&str, VertexKind, u32)],
    edges: &[(&str, &str, &str, u32)],
) -> Result<ConstraintGraph, GraphError> {
    let vdata: Vec<VertexData> = vertices
        .iter()
        .map(|&(name, kind, min_flow)| VertexData {
            name: name.to_string(),
            kind,
            min_flow,
        })
        .collect();
    let name_to_id: BTreeMap<&str, VertexId> = vertices
        .iter()
        .enumerate()
        .map(|(i, &(name, _, _))| (name, VertexId(i as u32)))
        .collect();
    let edata: Vec<EdgeData> = edges
        .iter()
        .map(|&(name, u, v, weight)| EdgeData {
            name: name.to_string(),
            u: *name_to_id.get(u).unwrap_or(&VertexId(u32::MAX)),
            v: *name_to_id.get(v).unwrap_or(&VertexId(u32::MAX)),
            weight,
        })
        .collect();
    ConstraintGraph::new(vdata, edata)
}

/// The complete graph on four OR vertices, all weights 2. The smallest
/// legal machine, used all over the tests.
pub fn k4_all_or() -> ConstraintGraph {
    graph_from_parts(
        &[
            ("v1", VertexKind::Or, 2),
            ("v2", VertexKind::Or, 2),
            ("v3", VertexKind::Or, 2),
            ("v4", VertexKind::Or, 2),
        ],
        &[
            ("e12", "v1", "v2", 2),
            ("e13", "v1", "v3", 2),
            ("e14", "v1", "v4", 2),
            ("e23", "v2", "v3", 2),
            ("e24", "v2", "v4", 2),
            ("e34", "v3", "v4", 2),
        ],
    )
    .expect("K4 is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_all_or_is_valid() {
        let g = k4_all_or();
        assert!(g.validate().is_clean());
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        for (id, _) in g.vertices() {
            assert_eq!(g.degree(id), 3);
        }
    }

    #[test]
    fn or_vertex_with_two_edges_flagged() {
        let g = graph_from_parts(
            &[
                ("a", VertexKind::Or, 2),
                ("b", VertexKind::Or, 2),
                ("c", VertexKind::Or, 2),
            ],
            &[("e1", "a", "b", 2), ("e2", "a", "c", 2), ("e3", "b", "c", 2)],
        )
        .unwrap();
        let report = g.validate();
        // Triangle: every OR vertex has degree 2, not 3.
        assert_eq!(report.violations.len(), 3);
        assert!(report.violations.iter().all(|v| v.rule == "degree != 3"));
    }

    #[test]
    fn and_weight_multiset_rule() {
        let g = graph_from_parts(
            &[
                ("x", VertexKind::And, 2),
                ("a", VertexKind::Or, 2),
                ("b", VertexKind::Or, 2),
                ("c", VertexKind::Or, 2),
            ],
            &[
                ("e1", "x", "a", 2),
                ("e2", "x", "b", 2),
                ("e3", "x", "c", 1),
            ],
        )
        .unwrap();
        let report = g.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| v.vertex == "x" && v.rule == "weight multiset"));
    }

    #[test]
    fn connector_rules() {
        let g = graph_from_parts(
            &[
                ("u", VertexKind::Connector, 2),
                ("a", VertexKind::Or, 2),
                ("b", VertexKind::Or, 2),
            ],
            &[("e1", "u", "a", 2), ("e2", "u", "b", 2)],
        )
        .unwrap();
        // Connector itself is fine; a and b have wrong degree.
        let report = g.validate();
        assert!(!report.violations.iter().any(|v| v.vertex == "u"));

        let g = graph_from_parts(
            &[
                ("u", VertexKind::Connector, 1),
                ("a", VertexKind::Or, 2),
                ("b", VertexKind::Or, 2),
            ],
            &[("e1", "u", "a", 2), ("e2", "u", "b", 2)],
        )
        .unwrap();
        assert!(g
            .validate()
            .violations
            .iter()
            .any(|v| v.vertex == "u" && v.rule == "min_flow != incident weight"));
    }

    #[test]
    fn format_errors() {
        assert_eq!(
            graph_from_parts(&[("a", VertexKind::Or, 2)], &[("e", "a", "a", 2)]).unwrap_err(),
            GraphError::SelfLoop("e".into())
        );
        assert_eq!(
            graph_from_parts(
                &[("a", VertexKind::Or, 2), ("b", VertexKind::Or, 2)],
                &[("e1", "a", "b", 2), ("e2", "b", "a", 2)]
            )
            .unwrap_err(),
            GraphError::ParallelEdges("e1".into(), "e2".into())
        );
    }
}
