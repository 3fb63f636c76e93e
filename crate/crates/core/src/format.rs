//! Plain-text edge lists and DOT export.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::valuation::Valuation;

/// Result of edge-list ingestion: the dense graph plus the original label
/// of each vertex (identity when a vertex-count header was given).
#[derive(Debug, Clone)]
pub struct ParsedEdgeList {
    pub graph: Graph,
    pub labels: Vec<u64>,
}

fn err(line: usize, reason: impl Into<String>) -> Error {
    Error::EdgeList {
        line,
        reason: reason.into(),
    }
}

/// Parses an edge list.
///
/// Lines hold two whitespace-separated vertex labels; blank lines and lines
/// starting with `#` are skipped. A single integer on the first meaningful
/// line declares the vertex count (allowing isolated vertices); labels must
/// then lie in 0..count. Without a header, arbitrary labels are remapped to
/// dense ids in sorted order and the map is returned.
pub fn parse_edge_list(text: &str) -> Result<ParsedEdgeList> {
    let mut declared: Option<u64> = None;
    let mut raw_edges: Vec<(u64, u64, usize)> = Vec::new();
    let mut first_meaningful = true;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [count] if first_meaningful => {
                declared = Some(
                    count
                        .parse::<u64>()
                        .map_err(|_| err(line_no, format!("bad vertex count {count:?}")))?,
                );
            }
            [a, b] => {
                let u = a
                    .parse::<u64>()
                    .map_err(|_| err(line_no, format!("bad vertex id {a:?}")))?;
                let v = b
                    .parse::<u64>()
                    .map_err(|_| err(line_no, format!("bad vertex id {b:?}")))?;
                if u == v {
                    return Err(err(line_no, format!("self-loop at vertex {u}")));
                }
                if let Some(n) = declared {
                    if u >= n || v >= n {
                        return Err(err(
                            line_no,
                            format!("vertex id out of range: {} >= {n}", u.max(v)),
                        ));
                    }
                }
                raw_edges.push((u, v, line_no));
            }
            _ => return Err(err(line_no, format!("expected \"u v\", got {line:?}"))),
        }
        first_meaningful = false;
    }

    let labels: Vec<u64> = match declared {
        Some(n) => (0..n).collect(),
        None => {
            let mut set: Vec<u64> = raw_edges
                .iter()
                .flat_map(|&(u, v, _)| [u, v])
                .collect();
            set.sort_unstable();
            set.dedup();
            set
        }
    };
    let index: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    let mut graph = Graph::empty(labels.len());
    for &(u, v, line_no) in &raw_edges {
        let (iu, iv) = (index[&u], index[&v]);
        if graph.has_edge(iu, iv) {
            return Err(err(line_no, format!("duplicate edge {u} {v}")));
        }
        graph = graph.with_edge(iu, iv).map_err(|e| err(line_no, e.to_string()))?;
    }
    Ok(ParsedEdgeList { graph, labels })
}

/// Writes a graph as an edge list with a vertex-count header.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn fill_color(value: i8) -> &'static str {
    match value {
        1 => "tomato",
        -1 => "steelblue",
        _ => "lightgray",
    }
}

/// DOT export; with a valuation, vertices are filled by value (+1/0/-1
/// get distinct colors) and labeled with it. Output is stable: vertices
/// and edges appear in sorted order.
pub fn to_dot(g: &Graph, valuation: Option<&Valuation>) -> String {
    let mut out = String::from("graph G {\n");
    if let Some(val) = valuation {
        assert_eq!(val.len(), g.n(), "valuation length must match graph order");
        out.push_str("  node [style=filled];\n");
        for v in g.vertices() {
            let x = val.get(v);
            out.push_str(&format!(
                "  {v} [fillcolor=\"{}\", label=\"{v}:{}\"];\n",
                fill_color(x),
                val.symbol(v),
            ));
        }
    } else {
        for v in g.vertices() {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
