//! Problem instances: undirected simple graphs on vertices `1..=n`, the
//! DIMACS `.col` reader/writer, and a handful of named fixtures.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use thiserror::Error;

/// Vertex identifier, 1-based.
pub type Vertex = u32;

/// Names accepted by [`builtin_graph`].
pub const BUILTIN_NAMES: [&str; 6] = ["k3", "k4", "c5", "p4", "k33", "petersen"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({u}, {v}) has an endpoint outside 1..={n}")]
    OutOfRange { u: Vertex, v: Vertex, n: Vertex },
}

/// An undirected simple graph. Edges are stored normalized as `(u, v)` with
/// `u < v`, so iteration order is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: Vertex,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds a graph, normalizing endpoint order and dropping repeated edges.
    pub fn new<I>(n: Vertex, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut graph = Graph {
            n,
            edges: BTreeSet::new(),
        };
        for (u, v) in edges {
            graph.insert_edge(u, v)?;
        }
        Ok(graph)
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: Vertex) -> Result<Self, GraphError> {
        Self::new(n, [])
    }

    /// Inserts an edge; returns `false` if it was already present.
    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(GraphError::OutOfRange { u, v, n: self.n });
        }
        Ok(self.edges.insert((u.min(v), u.max(v))))
    }

    pub fn vertex_count(&self) -> Vertex {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Subgraph induced by `vertices`, relabeled so that `vertices[i]`
    /// becomes vertex `i + 1`.
    ///
    /// Panics if `vertices` is empty or repeats a vertex.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        assert!(!vertices.is_empty(), "induced subgraph needs a vertex");
        let mut sub = Graph {
            n: vertices.len() as Vertex,
            edges: BTreeSet::new(),
        };
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                assert_ne!(u, v, "induced subgraph vertex list repeats {u}");
                if self.adjacent(u, v) {
                    sub.edges.insert((a as Vertex + 1, b as Vertex + 1));
                }
            }
        }
        sub
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown builtin graph `{name}` (valid: k3, k4, c5, p4, k33, petersen)")]
pub struct UnknownBuiltin {
    pub name: String,
}

/// Looks up one of the named fixture graphs listed in [`BUILTIN_NAMES`].
pub fn builtin_graph(name: &str) -> Result<Graph, UnknownBuiltin> {
    let graph = match name {
        "k3" => complete(3),
        "k4" => complete(4),
        "c5" => cycle(5),
        "p4" => Graph::new(4, [(1, 2), (2, 3), (3, 4)]),
        "k33" => Graph::new(6, (1..=3).flat_map(|u| (4..=6).map(move |v| (u, v)))),
        "petersen" => {
            let outer = (0..5).map(|i| (1 + i, 1 + (i + 1) % 5));
            let inner = (0..5).map(|i| (6 + i, 6 + (i + 2) % 5));
            let spokes = (0..5).map(|i| (1 + i, 6 + i));
            Graph::new(10, outer.chain(inner).chain(spokes))
        }
        _ => {
            return Err(UnknownBuiltin {
                name: String::from(name),
            })
        }
    };
    Ok(graph.expect("builtin constructions are valid"))
}

/// Complete graph on `n` vertices.
pub fn complete(n: Vertex) -> Result<Graph, GraphError> {
    Graph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
}

/// Cycle `1 - 2 - ... - n - 1`; requires `n >= 3`.
pub fn cycle(n: Vertex) -> Result<Graph, GraphError> {
    Graph::new(n, (1..=n).map(|u| (u, u % n + 1)))
}

// DIMACS .col

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: self-loop on vertex {vertex} makes the instance uncolorable")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: edge ({u}, {v}) has an endpoint outside 1..={n}")]
    OutOfRange {
        line: usize,
        u: Vertex,
        v: Vertex,
        n: Vertex,
    },
    #[error("missing `p edge <n> <m>` problem line")]
    MissingProblemLine,
}

/// Non-fatal observations made while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimacsWarning {
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    EdgeCountMismatch { declared: usize, parsed: usize },
}

impl fmt::Display for DimacsWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimacsWarning::DuplicateEdge { line, u, v } => {
                write!(f, "line {line}: duplicate edge ({u}, {v}) ignored")
            }
            DimacsWarning::EdgeCountMismatch { declared, parsed } => {
                write!(
                    f,
                    "problem line declares {declared} edges, found {parsed} distinct"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedDimacs {
    pub graph: Graph,
    pub declared_edges: usize,
    pub warnings: Vec<DimacsWarning>,
}

impl ParsedDimacs {
    pub fn has_duplicates(&self) -> bool {
        self.warnings
            .iter()
            .any(|w| matches!(w, DimacsWarning::DuplicateEdge { .. }))
    }
}

/// Parses a DIMACS `.col` document. Accepts LF or CRLF line endings.
pub fn parse_dimacs(text: &str) -> Result<ParsedDimacs, DimacsError> {
    let malformed = |line: usize, reason: &str| DimacsError::Malformed {
        line,
        reason: String::from(reason),
    };
    let mut header: Option<(Graph, usize)> = None;
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else {
            continue;
        };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(malformed(line, "second problem line"));
                }
                if fields.next() != Some("edge") {
                    return Err(malformed(line, "expected `p edge <n> <m>`"));
                }
                let n = parse_number(fields.next(), line)?;
                let m = parse_number(fields.next(), line)?;
                if fields.next().is_some() {
                    return Err(malformed(line, "trailing fields on problem line"));
                }
                if n == 0 {
                    return Err(malformed(line, "vertex count must be positive"));
                }
                let n =
                    Vertex::try_from(n).map_err(|_| malformed(line, "vertex count too large"))?;
                header = Some((Graph::edgeless(n).expect("n > 0"), m));
            }
            "e" => {
                let Some((graph, _)) = header.as_mut() else {
                    return Err(DimacsError::MissingProblemLine);
                };
                let u = parse_vertex(fields.next(), line)?;
                let v = parse_vertex(fields.next(), line)?;
                if fields.next().is_some() {
                    return Err(malformed(line, "trailing fields on edge line"));
                }
                match graph.insert_edge(u, v) {
                    Ok(true) => {}
                    Ok(false) => warnings.push(DimacsWarning::DuplicateEdge { line, u, v }),
                    Err(GraphError::SelfLoop(vertex)) => {
                        return Err(DimacsError::SelfLoop { line, vertex })
                    }
                    Err(GraphError::OutOfRange { u, v, n }) => {
                        return Err(DimacsError::OutOfRange { line, u, v, n })
                    }
                    Err(GraphError::Empty) => unreachable!("header graph is non-empty"),
                }
            }
            other => {
                return Err(DimacsError::Malformed {
                    line,
                    reason: format!("unknown line type `{other}`"),
                })
            }
        }
    }

    let (graph, declared_edges) = header.ok_or(DimacsError::MissingProblemLine)?;
    if declared_edges != graph.edge_count() {
        warnings.push(DimacsWarning::EdgeCountMismatch {
            declared: declared_edges,
            parsed: graph.edge_count(),
        });
    }
    Ok(ParsedDimacs {
        graph,
        declared_edges,
        warnings,
    })
}

fn parse_number(field: Option<&str>, line: usize) -> Result<usize, DimacsError> {
    let field = field.ok_or_else(|| DimacsError::Malformed {
        line,
        reason: String::from("missing field"),
    })?;
    field.parse().map_err(|_| DimacsError::Malformed {
        line,
        reason: format!("`{field}` is not a non-negative integer"),
    })
}

fn parse_vertex(field: Option<&str>, line: usize) -> Result<Vertex, DimacsError> {
    let value = parse_number(field, line)?;
    // Anything that does not fit is certainly out of range.
    Ok(Vertex::try_from(value).unwrap_or(Vertex::MAX))
}

/// Writes `graph` as a DIMACS `.col` document with edges in lexicographic order.
pub fn render_dimacs(graph: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p edge {} {}",
        graph.vertex_count(),
        graph.edge_count()
    );
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}
