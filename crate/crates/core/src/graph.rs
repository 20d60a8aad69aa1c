//! Undirected simple graphs, rooted spanning trees and the BFS primitives
//! the rest of the crate is built on.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

/// Index into [`Graph::edges`].
pub type EdgeId = usize;

/// Marker for vertices a BFS never reached.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("root {root} out of range (n = {n})")]
    RootOutOfRange { root: usize, n: usize },
    #[error("edge id {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("tree is not acyclic")]
    Cyclic,
    #[error("tree is not spanning: {reached} of {n} vertices reachable from the root")]
    NotSpanning { reached: usize, n: usize },
}

/// Undirected simple graph with vertices `0..n`.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, EdgeId)>>,
    lookup: HashMap<(usize, usize), EdgeId>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range
    /// endpoints. Edge ids follow the iteration order.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut graph = Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            lookup: HashMap::new(),
        };
        for (u, v) in edges {
            graph.add_edge(u, v)?;
        }
        Ok(graph)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<EdgeId, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        if self.lookup.contains_key(&key) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        let id = self.edges.len();
        self.edges.push((u, v));
        self.adjacency[u].push((v, id));
        self.adjacency[v].push((u, id));
        self.lookup.insert(key, id);
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> (usize, usize) {
        self.edges[id]
    }

    /// `(neighbor, edge id)` pairs in insertion order.
    pub fn neighbors(&self, u: usize) -> &[(usize, EdgeId)] {
        &self.adjacency[u]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<EdgeId> {
        self.lookup.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || bfs_distances(self, 0, None).iter().all(|&d| d != UNREACHABLE)
    }
}

/// Hop distances from `source`, optionally ignoring one edge.
pub fn bfs_distances(g: &Graph, source: usize, excluded: Option<EdgeId>) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &(w, id) in g.neighbors(u) {
            if Some(id) == excluded || dist[w] != UNREACHABLE {
                continue;
            }
            dist[w] = dist[u] + 1;
            queue.push_back(w);
        }
    }
    dist
}

/// Edges whose removal disconnects `g` (iterative low-link DFS).
pub fn find_bridges(g: &Graph) -> Vec<EdgeId> {
    let n = g.n();
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut bridges = Vec::new();
    let mut time = 0u32;
    // (vertex, edge used to enter it, next neighbor slot)
    let mut stack: Vec<(usize, Option<EdgeId>, usize)> = Vec::new();

    for start in 0..n {
        if disc[start] != u32::MAX {
            continue;
        }
        disc[start] = time;
        low[start] = time;
        time += 1;
        stack.push((start, None, 0));
        while let Some(&mut (u, via, ref mut slot)) = stack.last_mut() {
            if let Some(&(w, id)) = g.neighbors(u).get(*slot) {
                *slot += 1;
                if Some(id) == via {
                    continue;
                }
                if disc[w] == u32::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, Some(id), 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(id), Some(&(parent, _, _))) = (via, stack.last()) {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > disc[parent] {
                        bridges.push(id);
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    bridges
}

/// Edge ids of a BFS tree of `g` rooted at `root`, exploring neighbors in
/// insertion order.
pub fn bfs_tree(g: &Graph, root: usize) -> Vec<EdgeId> {
    let mut seen = vec![false; g.n()];
    let mut tree = Vec::with_capacity(g.n().saturating_sub(1));
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(u) = queue.pop_front() {
        for &(w, id) in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                tree.push(id);
                queue.push_back(w);
            }
        }
    }
    tree
}

/// A spanning tree of a [`Graph`], rooted at `root`.
///
/// Each non-root vertex `v` names the tree edge `(parent(v), v)`. Children
/// are kept in ascending vertex order, which fixes the preorder and
/// postorder numbering.
#[derive(Debug, Clone)]
pub struct RootedTree {
    root: usize,
    parent: Vec<usize>,
    parent_edge: Vec<EdgeId>,
    depth: Vec<u32>,
    children: Vec<Vec<usize>>,
    preorder: Vec<usize>,
    pre: Vec<u32>,
    post: Vec<u32>,
    size: Vec<u32>,
    in_tree: Vec<bool>,
}

const NO_PARENT: usize = usize::MAX;

impl RootedTree {
    pub fn new(g: &Graph, tree_edges: &[EdgeId], root: usize) -> Result<Self, TreeError> {
        let n = g.n();
        if root >= n {
            return Err(TreeError::RootOutOfRange { root, n });
        }
        let mut in_tree = vec![false; g.m()];
        let mut adjacency = vec![Vec::new(); n];
        for &id in tree_edges {
            if id >= g.m() {
                return Err(TreeError::UnknownEdge(id));
            }
            if in_tree[id] {
                continue;
            }
            in_tree[id] = true;
            let (u, v) = g.edge(id);
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        let edge_count = in_tree.iter().filter(|&&t| t).count();

        let mut parent = vec![NO_PARENT; n];
        let mut parent_edge = vec![EdgeId::MAX; n];
        let mut depth = vec![0u32; n];
        let mut visited = vec![false; n];
        let mut queue = VecDeque::from([root]);
        visited[root] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &(w, id) in &adjacency[u] {
                if id == parent_edge[u] {
                    continue;
                }
                if visited[w] {
                    return Err(TreeError::Cyclic);
                }
                visited[w] = true;
                reached += 1;
                parent[w] = u;
                parent_edge[w] = id;
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
        if edge_count >= n {
            return Err(TreeError::Cyclic);
        }
        if reached < n {
            return Err(TreeError::NotSpanning { reached, n });
        }

        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if parent[v] != NO_PARENT {
                children[parent[v]].push(v);
            }
        }

        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            preorder.push(u);
            stack.extend(children[u].iter().rev());
        }
        let mut pre = vec![0u32; n];
        for (i, &u) in preorder.iter().enumerate() {
            pre[u] = i as u32;
        }
        let mut size = vec![1u32; n];
        for &u in preorder.iter().rev() {
            if parent[u] != NO_PARENT {
                size[parent[u]] += size[u];
            }
        }
        let mut post = vec![0u32; n];
        let mut counter = 0u32;
        let mut walk: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (u, ref mut next)) = walk.last_mut() {
            if let Some(&c) = children[u].get(*next) {
                *next += 1;
                walk.push((c, 0));
            } else {
                post[u] = counter;
                counter += 1;
                walk.pop();
            }
        }

        Ok(RootedTree {
            root,
            parent,
            parent_edge,
            depth,
            children,
            preorder,
            pre,
            post,
            size,
            in_tree,
        })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (self.parent[v] != NO_PARENT).then_some(self.parent[v])
    }

    /// Graph edge id of the tree edge `(parent(v), v)`.
    pub fn parent_edge(&self, v: usize) -> Option<EdgeId> {
        self.parent(v).map(|_| self.parent_edge[v])
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    pub fn depths(&self) -> &[u32] {
        &self.depth
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Vertices in preorder; every subtree is a contiguous slice.
    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    pub fn pre_number(&self, v: usize) -> usize {
        self.pre[v] as usize
    }

    pub fn post_number(&self, v: usize) -> usize {
        self.post[v] as usize
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.size[v] as usize
    }

    /// The vertices of the subtree rooted at `v`, in preorder.
    pub fn subtree(&self, v: usize) -> &[usize] {
        let start = self.pre[v] as usize;
        &self.preorder[start..start + self.size[v] as usize]
    }

    /// Whether `u` lies in the subtree of `v` (`u == v` included).
    pub fn in_subtree(&self, u: usize, v: usize) -> bool {
        let (pu, pv) = (self.pre[u], self.pre[v]);
        pv <= pu && pu < pv + self.size[v]
    }

    pub fn is_tree_edge(&self, id: EdgeId) -> bool {
        self.in_tree[id]
    }

    /// Non-root vertices in postorder, i.e. the tree edges in the order the
    /// solver visits them.
    pub fn postorder_edges(&self) -> impl Iterator<Item = usize> + '_ {
        let mut order: Vec<usize> = (0..self.n()).filter(|&v| v != self.root).collect();
        order.sort_unstable_by_key(|&v| self.post[v]);
        order.into_iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]).unwrap_err(), GraphError::SelfLoop(1));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(1, 0)
        );
        assert!(matches!(
            Graph::new(3, [(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 3, n: 3 }
        ));
    }

    #[test]
    fn bfs_examples() {
        let g = triangle();
        assert_eq!(bfs_distances(&g, 0, None), vec![0, 1, 1]);
        assert_eq!(bfs_distances(&g, 0, g.edge_id(0, 1)), vec![0, 2, 1]);
        let cycle = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(bfs_distances(&cycle, 0, cycle.edge_id(0, 4)), vec![0, 1, 2, 3, 4]);
        assert_eq!(bfs_distances(&path(3), 0, Some(1))[2], UNREACHABLE);
    }

    #[test]
    fn bridges_examples() {
        assert!(find_bridges(&triangle()).is_empty());
        assert_eq!(find_bridges(&path(3)), vec![0, 1]);
        let bowtie =
            Graph::new(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(find_bridges(&bowtie), vec![bowtie.edge_id(2, 3).unwrap()]);
    }

    #[test]
    fn bridges_match_removal_brute_force() {
        let g = Graph::new(
            8,
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6), (6, 7), (1, 7), (4, 6)],
        )
        .unwrap();
        let expected: Vec<EdgeId> = (0..g.m())
            .filter(|&id| bfs_distances(&g, 0, Some(id)).contains(&UNREACHABLE))
            .collect();
        assert_eq!(find_bridges(&g), expected);
    }

    #[test]
    fn rooting_examples() {
        let g = path(3);
        let t = RootedTree::new(&g, &[0, 1], 0).unwrap();
        assert_eq!(t.depths(), &[0, 1, 2]);
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.parent(0), None);

        let t = RootedTree::new(&g, &[0, 1], 1).unwrap();
        assert_eq!(t.depths(), &[1, 0, 1]);

        let star = Graph::new(4, [(0, 3), (0, 1), (0, 2)]).unwrap();
        let t = RootedTree::new(&star, &[0, 1, 2], 0).unwrap();
        assert_eq!(t.depths(), &[0, 1, 1, 1]);
        assert_eq!(t.children(0), &[1, 2, 3]);
    }

    #[test]
    fn rooting_errors() {
        let g = triangle();
        assert_eq!(RootedTree::new(&g, &[0, 1, 2], 0).unwrap_err(), TreeError::Cyclic);
        assert!(matches!(
            RootedTree::new(&g, &[0], 0).unwrap_err(),
            TreeError::NotSpanning { reached: 2, n: 3 }
        ));
        assert!(matches!(
            RootedTree::new(&g, &[0, 1], 5).unwrap_err(),
            TreeError::RootOutOfRange { .. }
        ));
    }

    #[test]
    fn postorder_intervals_are_contiguous() {
        let g = Graph::new(
            7,
            [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (3, 4), (4, 6)],
        )
        .unwrap();
        let t = RootedTree::new(&g, &bfs_tree(&g, 0), 0).unwrap();
        for v in 0..7 {
            let mut posts: Vec<usize> = t.subtree(v).iter().map(|&u| t.post_number(u)).collect();
            posts.sort_unstable();
            let end = t.post_number(v);
            let start = end + 1 - t.subtree_size(v);
            assert_eq!(posts, (start..=end).collect::<Vec<_>>());
        }
    }
}
