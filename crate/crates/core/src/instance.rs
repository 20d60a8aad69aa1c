//! Text instance files.
//!
//! ```text
//! # comment
//! n m
//! e u v        (m lines)
//! t u v        (optional, spanning-tree edges)
//! r v          (optional root, default 0)
//! ```
//!
//! Without `t` lines the tree is a BFS tree from the root.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{bfs_tree, EdgeId, Graph, GraphError, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("graph is not connected")]
    Disconnected,
}

fn at(line: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Line { line, message: message.into() }
}

/// A graph with a rooted spanning tree.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub tree_edges: Vec<EdgeId>,
    pub root: usize,
}

impl Instance {
    pub fn rooted_tree(&self) -> RootedTree {
        RootedTree::new(&self.graph, &self.tree_edges, self.root)
            .expect("instance trees are validated at construction")
    }

    /// Serializes in the format accepted by [`parse_instance`].
    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        writeln!(out, "{} {}", g.n(), g.m()).unwrap();
        for &(u, v) in g.edges() {
            writeln!(out, "e {u} {v}").unwrap();
        }
        for &id in &self.tree_edges {
            let (u, v) = g.edge(id);
            writeln!(out, "t {u} {v}").unwrap();
        }
        writeln!(out, "r {}", self.root).unwrap();
        out
    }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, InstanceError> {
    let tok = tok.ok_or_else(|| at(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| at(line, format!("invalid {what} {tok:?}")))
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph: Option<Graph> = None;
    let mut tree_lines: Vec<(usize, usize, usize)> = Vec::new();
    let mut root: Option<(usize, usize)> = None;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        last_line = line;
        let mut toks = content.split_whitespace();
        let Some((n, _)) = header else {
            let n = parse_usize(toks.next(), line, "vertex count")?;
            let m = parse_usize(toks.next(), line, "edge count")?;
            if toks.next().is_some() {
                return Err(at(line, "trailing tokens in header"));
            }
            header = Some((n, m));
            graph = Some(Graph::new(n, []).expect("empty graph"));
            continue;
        };
        let tag = toks.next().unwrap();
        let mut endpoint = |what| parse_usize(toks.next(), line, what);
        match tag {
            "e" => {
                let (u, v) = (endpoint("endpoint")?, endpoint("endpoint")?);
                graph.as_mut().unwrap().add_edge(u, v).map_err(|e| match e {
                    GraphError::DuplicateEdge(u, v) => at(line, format!("duplicate edge ({u}, {v})")),
                    GraphError::SelfLoop(u) => at(line, format!("self-loop at vertex {u}")),
                    GraphError::VertexOutOfRange { vertex, n } => {
                        at(line, format!("vertex {vertex} out of range (n = {n})"))
                    }
                })?;
            }
            "t" => {
                let (u, v) = (endpoint("endpoint")?, endpoint("endpoint")?);
                tree_lines.push((line, u, v));
            }
            "r" => {
                let v = endpoint("root")?;
                if root.is_some() {
                    return Err(at(line, "root declared twice"));
                }
                if v >= n {
                    return Err(at(line, format!("root {v} out of range (n = {n})")));
                }
                root = Some((line, v));
            }
            other => return Err(at(line, format!("unknown record {other:?}"))),
        }
        if toks.next().is_some() {
            return Err(at(line, "trailing tokens"));
        }
    }

    let (n, m) = header.ok_or(InstanceError::MissingHeader)?;
    let graph = graph.unwrap();
    if graph.m() != m {
        return Err(InstanceError::EdgeCount { declared: m, found: graph.m() });
    }
    if !graph.is_connected() {
        return Err(InstanceError::Disconnected);
    }
    let root = root.map_or(0, |(_, v)| v);
    if n == 0 {
        return Err(at(last_line.max(1), "graph has no vertices"));
    }

    let tree_edges = if tree_lines.is_empty() {
        bfs_tree(&graph, root)
    } else {
        let mut components = UnionFind::new(n);
        let mut ids = Vec::with_capacity(tree_lines.len());
        for &(line, u, v) in &tree_lines {
            let id = graph
                .edge_id(u, v)
                .ok_or_else(|| at(line, format!("tree edge ({u}, {v}) is not a graph edge")))?;
            if !components.union(u, v) {
                return Err(at(line, "tree is not acyclic"));
            }
            ids.push(id);
        }
        if ids.len() + 1 != n {
            let line = tree_lines.last().unwrap().0;
            return Err(at(
                line,
                format!("tree is not spanning ({} edges for {n} vertices)", ids.len()),
            ));
        }
        ids
    };

    Ok(Instance { graph, tree_edges, root })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
