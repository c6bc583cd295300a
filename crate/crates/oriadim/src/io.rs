//! Text formats: the graph/orientation file format and the run report the
//! CLI prints.
//!
//! Graph files are plain text. The first significant line is `n m`; the
//! next `m` significant lines are `a b` pairs. Blank lines and lines
//! starting with `#` are ignored. For orientation files each pair is an
//! arc `from to`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, Orientation, UndirectedGraph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: expected header `n m`")]
    BadHeader { line: usize },
    #[error("line {line}: expected two vertex ids")]
    BadPair { line: usize },
    #[error("expected {expected} edge lines, found {got}")]
    EdgeCount { expected: usize, got: usize },
    #[error("line {line}: content after the declared edges")]
    TrailingContent { line: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Significant lines with their 1-based numbers: blanks and `#` comments
/// are skipped.
fn significant_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair_lines(input: &str) -> Result<(u32, Vec<(Vertex, Vertex)>), IoError> {
    let mut lines = significant_lines(input);
    let (line, header) = lines.next().ok_or(IoError::BadHeader { line: 1 })?;
    let mut parts = header.split_whitespace();
    let (n, m) = match (parts.next(), parts.next(), parts.next()) {
        (Some(n), Some(m), None) => {
            let n: u32 = n.parse().map_err(|_| IoError::BadHeader { line })?;
            let m: usize = m.parse().map_err(|_| IoError::BadHeader { line })?;
            (n, m)
        }
        _ => return Err(IoError::BadHeader { line }),
    };
    let mut pairs = Vec::with_capacity(m);
    for (line, text) in lines {
        if pairs.len() == m {
            return Err(IoError::TrailingContent { line });
        }
        let mut parts = text.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => {
                let a: Vertex = a.parse().map_err(|_| IoError::BadPair { line })?;
                let b: Vertex = b.parse().map_err(|_| IoError::BadPair { line })?;
                pairs.push((a, b));
            }
            _ => return Err(IoError::BadPair { line }),
        }
    }
    if pairs.len() != m {
        return Err(IoError::EdgeCount { expected: m, got: pairs.len() });
    }
    Ok((n, pairs))
}

pub fn parse_graph(input: &str) -> Result<UndirectedGraph, IoError> {
    let (n, pairs) = parse_pair_lines(input)?;
    Ok(UndirectedGraph::new(n, pairs)?)
}

/// Parses an arc list; the underlying undirected graph is derived from the
/// arcs themselves.
pub fn parse_orientation(input: &str) -> Result<Orientation, IoError> {
    let (n, arcs) = parse_pair_lines(input)?;
    let base = UndirectedGraph::new(n, arcs.iter().copied())?;
    Ok(Orientation::from_arcs(base, arcs)?)
}

pub fn emit_graph(g: &UndirectedGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Arcs in lexicographic order of the underlying edge pairs, so equal
/// orientations always serialize identically.
pub fn emit_orientation(o: &Orientation) -> String {
    let mut out = format!("{} {}\n", o.vertex_count(), o.arc_count());
    for (from, to) in o.arcs() {
        out.push_str(&format!("{from} {to}\n"));
    }
    out
}

/// The machine-readable result of a CLI run. Field order is the JSON key
/// order; absent sections are omitted entirely so reports stay byte-stable
/// for a fixed seed.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strongly_connected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_pair: Option<(Vertex, Vertex)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell_sizes: Option<Vec<(String, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rules_applied: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shadowed_matches: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leftover_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proven_optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_explored: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_deletion: Option<Vec<(Vertex, Vertex)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_pair: Option<(Vertex, Vertex)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses_found: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graphs_examined: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proven_exhaustive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            schema_version: 1,
            command: command.to_string(),
            vertices: None,
            edges: None,
            mode: None,
            fallback_reason: None,
            diameter: None,
            strongly_connected: None,
            witness_pair: None,
            certificate_digest: None,
            cell_sizes: None,
            rules_applied: None,
            shadowed_matches: None,
            leftover_edges: None,
            audit_ok: None,
            proven_optimal: None,
            nodes_explored: None,
            member: None,
            violating_deletion: None,
            violating_pair: None,
            witnesses_found: None,
            graphs_examined: None,
            proven_exhaustive: None,
            seed: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering with the same content as the JSON form.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = value {
            for (key, val) in map {
                let shown = match val {
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                };
                out.push_str(&format!("{key}: {shown}\n"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use rand::Rng;

    #[test]
    fn parses_the_basic_format() {
        let g = parse_graph("3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = parse_graph("# triangle\n\n3 3\n0 1\n# middle\n1 2\n0 2\n\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_graph(""), Err(IoError::BadHeader { line: 1 }));
        assert_eq!(parse_graph("x y\n"), Err(IoError::BadHeader { line: 1 }));
        assert_eq!(
            parse_graph("3 2\n0 1\noops\n"),
            Err(IoError::BadPair { line: 3 })
        );
        assert_eq!(
            parse_graph("3 2\n0 1\n"),
            Err(IoError::EdgeCount { expected: 2, got: 1 })
        );
        assert_eq!(
            parse_graph("3 1\n0 1\n1 2\n"),
            Err(IoError::TrailingContent { line: 3 })
        );
        assert!(matches!(
            parse_graph("2 1\n0 0\n"),
            Err(IoError::Graph(GraphError::SelfLoop(0)))
        ));
    }

    #[test]
    fn graph_round_trip() {
        let g = gen::cycle(6);
        assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
    }

    #[test]
    fn orientation_round_trip_on_random_orientations() {
        let mut rng = gen::seeded_rng(11);
        for _ in 0..100 {
            let g = gen::random_bridgeless(&mut rng, 9);
            let forward: Vec<bool> = (0..g.edge_count()).map(|_| rng.gen()).collect();
            let o = Orientation::from_directions(g, forward).unwrap();
            let round = parse_orientation(&emit_orientation(&o)).unwrap();
            assert_eq!(round, o);
        }
    }

    #[test]
    fn orientation_rejects_contradictory_arcs() {
        // The same edge listed in both directions collapses to a duplicate.
        assert!(parse_orientation("2 2\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn report_serialization_is_stable_and_ordered() {
        let mut r = RunReport::new("orient");
        r.vertices = Some(5);
        r.edges = Some(5);
        r.diameter = Some(4);
        let a = r.to_json();
        let b = r.to_json();
        assert_eq!(a, b);
        let v_pos = a.find("\"vertices\"").unwrap();
        let d_pos = a.find("\"diameter\"").unwrap();
        assert!(v_pos < d_pos, "field order must follow the schema");
        let back: RunReport = serde_json::from_str(&a).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn text_rendering_contains_the_fields() {
        let mut r = RunReport::new("diameter");
        r.diameter = Some(3);
        let text = r.to_text();
        assert!(text.contains("command: diameter"));
        assert!(text.contains("diameter: 3"));
    }
}
