use std::collections::HashMap;
use std::fmt::Write;

use super::{content_lines, ParseError, ParseErrorKind};
use crate::graph::{ColoredGraph, Edge, Forest};

/// A graph read from a file, with the original color label of every id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: ColoredGraph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    /// Labels each color by its id.
    pub fn with_numeric_labels(graph: ColoredGraph) -> Self {
        let labels = (0..graph.color_count()).map(|c| c.to_string()).collect();
        LabeledGraph { graph, labels }
    }

    pub fn label(&self, color: usize) -> &str {
        &self.labels[color]
    }
}

fn number(line: usize, token: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, ParseErrorKind::BadNumber(token.to_string())))
}

/// Parses `ecg <n> <m> <k>` followed by `m` lines `<u> <v> <label>`. Labels
/// get dense ids in order of first appearance.
pub fn parse_graph(text: &str) -> Result<LabeledGraph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError::new(0, ParseErrorKind::MissingHeader))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || ParseError::new(hline, ParseErrorKind::BadHeader(header.to_string()));
    let [tag, n, m, k] = fields[..] else {
        return Err(bad_header());
    };
    if tag != "ecg" {
        return Err(bad_header());
    }
    let (n, m, k) = match (n.parse::<usize>(), m.parse::<usize>(), k.parse::<usize>()) {
        (Ok(n), Ok(m), Ok(k)) => (n, m, k),
        _ => return Err(bad_header()),
    };

    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (line, content) in lines {
        last = line;
        let [u, v, label] = content.split_whitespace().collect::<Vec<_>>()[..] else {
            return Err(ParseError::new(line, ParseErrorKind::BadEdge(content.to_string())));
        };
        let (u, v) = (number(line, u)?, number(line, v)?);
        if u == v {
            return Err(ParseError::new(line, ParseErrorKind::Loop(u)));
        }
        if let Some(&vertex) = [u, v].iter().find(|&&x| x >= n) {
            return Err(ParseError::new(line, ParseErrorKind::VertexOutOfRange { vertex, n }));
        }
        if edges.len() == m {
            return Err(ParseError::new(line, ParseErrorKind::EdgeCount { expected: m, found: m + 1 }));
        }
        let color = *ids.entry(label).or_insert_with(|| {
            labels.push(label.to_string());
            labels.len() - 1
        });
        edges.push(Edge::new(u, v, color));
    }
    if edges.len() != m {
        return Err(ParseError::new(last, ParseErrorKind::EdgeCount { expected: m, found: edges.len() }));
    }
    if labels.len() != k {
        return Err(ParseError::new(hline, ParseErrorKind::ColorCount { expected: k, found: labels.len() }));
    }
    let graph = ColoredGraph::new(n, edges).expect("edges were checked line by line");
    Ok(LabeledGraph { graph, labels })
}

pub fn serialize_graph(g: &LabeledGraph) -> String {
    let graph = &g.graph;
    let mut out = format!("ecg {} {} {}\n", graph.vertex_count(), graph.edge_count(), graph.color_count());
    for e in graph.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, g.labels[e.color]).unwrap();
    }
    out
}

/// Parses lines `forest <edge index>...`; an empty forest is a bare
/// `forest`.
pub fn parse_forests(text: &str, edge_count: usize) -> Result<Vec<Forest>, ParseError> {
    content_lines(text)
        .map(|(line, content)| {
            let mut tokens = content.split_whitespace();
            if tokens.next() != Some("forest") {
                return Err(ParseError::new(line, ParseErrorKind::BadForest(content.to_string())));
            }
            tokens
                .map(|tok| {
                    let index = number(line, tok)?;
                    if index >= edge_count {
                        return Err(ParseError::new(
                            line,
                            ParseErrorKind::EdgeOutOfRange { index, edges: edge_count },
                        ));
                    }
                    Ok(index)
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Forest::new)
        })
        .collect()
}

pub fn serialize_forests(forests: &[Forest]) -> String {
    let mut out = String::new();
    for f in forests {
        out.push_str("forest");
        for e in f.edges() {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rainbow_triangle() {
        let g = parse_graph("ecg 3 3 3\n0 1 a\n0 2 b\n1 2 c\n").unwrap();
        assert_eq!(g.graph, ColoredGraph::rainbow_complete(3));
        assert_eq!(g.labels, ["a", "b", "c"]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# triangle\n\necg 3 3 2 # header\n0 1 red\n1 2 red # again\n0 2 blue\n").unwrap();
        assert_eq!(g.graph.color_multiplicities(), [2, 1]);
        assert_eq!(g.label(1), "blue");
    }

    #[test]
    fn loop_reported_at_its_line() {
        let err = parse_graph("ecg 2 2 1\n0 1 a\n0 0 a\n").unwrap_err();
        assert_eq!(err, ParseError::new(3, ParseErrorKind::Loop(0)));
    }

    #[test]
    fn parallel_equal_colors() {
        let g = parse_graph("ecg 2 2 1\n0 1 a\n0 1 a\n").unwrap();
        assert_eq!(g.graph.color_multiplicities(), [2]);
    }

    #[test]
    fn header_mismatches() {
        let kind = |text: &str| parse_graph(text).unwrap_err().kind;
        assert_eq!(kind(""), ParseErrorKind::MissingHeader);
        assert!(matches!(kind("graph 2 1 1\n0 1 a\n"), ParseErrorKind::BadHeader(_)));
        assert!(matches!(kind("ecg 2 x 1\n0 1 a\n"), ParseErrorKind::BadHeader(_)));
        assert_eq!(kind("ecg 2 2 1\n0 1 a\n"), ParseErrorKind::EdgeCount { expected: 2, found: 1 });
        assert_eq!(kind("ecg 2 1 1\n0 1 a\n0 1 a\n"), ParseErrorKind::EdgeCount { expected: 1, found: 2 });
        assert_eq!(kind("ecg 2 1 2\n0 1 a\n"), ParseErrorKind::ColorCount { expected: 2, found: 1 });
        assert_eq!(kind("ecg 2 1 1\n0 2 a\n"), ParseErrorKind::VertexOutOfRange { vertex: 2, n: 2 });
        assert!(matches!(kind("ecg 2 1 1\n0 1\n"), ParseErrorKind::BadEdge(_)));
        assert!(matches!(kind("ecg 2 1 1\n0 -1 a\n"), ParseErrorKind::BadNumber(_)));
    }

    #[test]
    fn forest_lines() {
        let fs = parse_forests("# family\nforest 2 0\nforest\n", 3).unwrap();
        assert_eq!(fs, [Forest::new(vec![0, 2]), Forest::empty()]);
        assert_eq!(serialize_forests(&fs), "forest 0 2\nforest\n");
        let err = parse_forests("forest 0\nforest 3\n", 3).unwrap_err();
        assert_eq!(err, ParseError::new(2, ParseErrorKind::EdgeOutOfRange { index: 3, edges: 3 }));
        assert!(parse_forests("tree 1\n", 3).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
        (2usize..7, 0usize..12).prop_flat_map(|(n, m)| {
            prop::collection::vec((0..n, 1..n, 0usize..5), m).prop_map(move |raw| {
                let edges: Vec<Edge> = raw.iter().map(|&(u, d, c)| Edge::new(u, (u + d) % n, c)).collect();
                let (graph, original) = ColoredGraph::with_compacted_colors(n, edges).unwrap();
                let labels = original.iter().map(|c| format!("c{c}")).collect();
                LabeledGraph { graph, labels }
            })
        })
    }

    proptest! {
        #[test]
        fn graph_files_round_trip(g in arb_graph()) {
            let text = serialize_graph(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(serialize_graph(&back), text);
            prop_assert_eq!(back, g);
        }
    }
}
