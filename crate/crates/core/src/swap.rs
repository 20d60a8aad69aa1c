//! All best swap edges of a tree spanner.
//!
//! Tree edges are processed in postorder. For a failing edge
//! `e = (p(v), v)` with `X = subtree(v)`, every `x ∈ X` gets a cost function
//! `c_x(y) = max { d(x', x) : x' ∈ X, (x', y) swap edge of e }` summarized by
//! a diametral pair. The candidate swap edge of `x` joins it to the
//! endpoint `y ∈ Y(x, e)` of minimum eccentricity, found next to the middle
//! of that diametral path through per-vertex nearest-label tables and two
//! range-minimum queries. The best candidate over `X` is the answer.
//!
//! Everything that does not depend on the failing edge (non-tree edge
//! buckets, root-path pairs, labels) is built once, in `O(n^2)` total.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diameter::{centers_of_pair, eccentricity_at, merge, DiametralPair};
use crate::graph::{find_bridges, EdgeId, Graph, RootedTree, TreeError};
use crate::rmq::{RmqIndex, Slot};
use crate::tree_index::TreeIndex;

const NO_LABEL: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("graph is not 2-edge-connected: bridges {0:?}")]
    NotTwoEdgeConnected(Vec<(usize, usize)>),
    #[error("thread count must be at least 1")]
    NoThreads,
}

/// Best swap edge of the tree edge `(parent(v), v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SwapResult {
    /// Lower endpoint of the failing tree edge.
    pub v: usize,
    /// `(x, y)` with `x` below the failure and `y` above it.
    pub swap: Option<(usize, usize)>,
    /// Stretch over the swap edges after swapping; `None` stands for `+∞`.
    pub sigma: Option<u64>,
}

/// A non-tree edge `(x, y)` stored at `x`, where `x` is not an ancestor of
/// `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonTreeEntry {
    pub y: u32,
    pub edge: u32,
    pub lca: u32,
    /// Depth of `lca(x, y)`, i.e. its index on the root path of `x`.
    pub lca_depth: u32,
}

/// `E(x)` for every vertex, in CSR layout, each list sorted by
/// `(lca_depth, y)`.
#[derive(Debug, Clone)]
pub struct NonTreeSets {
    offsets: Vec<usize>,
    entries: Vec<NonTreeEntry>,
}

impl NonTreeSets {
    pub fn of(&self, x: usize) -> &[NonTreeEntry] {
        &self.entries[self.offsets[x]..self.offsets[x + 1]]
    }

    /// `Y(x|z)` for the ancestor `z` of `x` at depth `d`.
    pub fn bucket(&self, x: usize, d: usize) -> impl Iterator<Item = usize> + '_ {
        self.of(x)
            .iter()
            .filter(move |e| e.lca_depth as usize == d)
            .map(|e| e.y as usize)
    }

    pub fn total(&self) -> usize {
        self.entries.len()
    }
}

pub fn compute_nontree_sets(g: &Graph, tree: &RootedTree, idx: &TreeIndex) -> NonTreeSets {
    let n = g.n();
    let mut lists: Vec<Vec<NonTreeEntry>> = vec![Vec::new(); n];
    for (id, &(u, w)) in g.edges().iter().enumerate() {
        if tree.is_tree_edge(id) {
            continue;
        }
        let z = idx.lca(u, w);
        let entry = |y: usize| NonTreeEntry {
            y: y as u32,
            edge: id as u32,
            lca: z as u32,
            lca_depth: idx.depth(z) as u32,
        };
        if z != u {
            lists[u].push(entry(w));
        }
        if z != w {
            lists[w].push(entry(u));
        }
    }
    let mut offsets = Vec::with_capacity(n + 1);
    let mut entries = Vec::new();
    offsets.push(0);
    for mut list in lists {
        list.sort_unstable_by_key(|e| (e.lca_depth, e.y));
        entries.extend(list);
        offsets.push(entries.len());
    }
    NonTreeSets { offsets, entries }
}

/// Pairs of the cost functions `c_{x|z}` (zero on `Y(x|z)`), one per
/// ancestor depth of `x`.
pub fn compute_base_pairs(idx: &TreeIndex, sets: &NonTreeSets, x: usize) -> Vec<DiametralPair> {
    let mut base = vec![DiametralPair::EMPTY; idx.depth(x)];
    for e in sets.of(x) {
        let d = e.lca_depth as usize;
        base[d] = merge(idx, base[d], DiametralPair::singleton(e.y as usize, 0));
    }
    base
}

/// Prefix merges of the base pairs: entry `d` stands for the swap edges of
/// `x` whose lca has depth at most `d`, that is `c_{x,e}` for the tree edge
/// `e` hanging below the ancestor at depth `d`.
pub fn compute_rootpath_pairs(idx: &TreeIndex, base: &[DiametralPair]) -> Vec<DiametralPair> {
    let mut acc = DiametralPair::EMPTY;
    base.iter()
        .map(|&b| {
            acc = merge(idx, acc, b);
            acc
        })
        .collect()
}

/// Nearest-label tables of one vertex `x`.
///
/// Removing the root path of `x` splits the tree into `subtree(x)` and one
/// component `V(x|z)` per proper ancestor `z`. `labels[w]` is a closest
/// member of `Y(x|z)` for `w ∈ V(x|z)`. `up[d]` and `down[d]` hold
/// `dist(z_d, label(z_d)) ± d`, `+∞` where the bucket is empty.
#[derive(Debug, Clone)]
pub struct NearestLabels {
    labels: Vec<u32>,
    up: RmqIndex<Slot>,
    down: RmqIndex<Slot>,
}

impl NearestLabels {
    pub fn label(&self, w: usize) -> Option<usize> {
        let l = self.labels[w];
        (l != NO_LABEL).then_some(l as usize)
    }

    pub fn up(&self) -> &RmqIndex<Slot> {
        &self.up
    }

    pub fn down(&self) -> &RmqIndex<Slot> {
        &self.down
    }

    pub fn heap_bytes(&self) -> usize {
        4 * self.labels.capacity() + self.up.heap_bytes() + self.down.heap_bytes()
    }
}

/// Reusable buffers for [`build_nearest_label_structures`].
#[derive(Debug, Default)]
pub struct LabelScratch {
    dist: Vec<u32>,
    on_path: Vec<bool>,
    queue: VecDeque<u32>,
    path: Vec<usize>,
}

/// Multi-source BFS from every `Y(x|z)` at once over the tree minus the
/// root path of `x`; sources are seeded in `(depth, id)` order so ties are
/// deterministic.
pub fn build_nearest_label_structures(
    tree: &RootedTree,
    sets: &NonTreeSets,
    x: usize,
    scratch: &mut LabelScratch,
) -> NearestLabels {
    let n = tree.n();
    scratch.dist.resize(n, 0);
    scratch.on_path.resize(n, false);
    let mut labels = vec![NO_LABEL; n];

    scratch.path.clear();
    let mut cursor = Some(x);
    while let Some(u) = cursor {
        scratch.on_path[u] = true;
        scratch.path.push(u);
        cursor = tree.parent(u);
    }
    // path = [x, p(x), ..., root]; the ancestor at depth d is path[h - d].
    let h = tree.depth(x);

    scratch.queue.clear();
    for e in sets.of(x) {
        let y = e.y as usize;
        if labels[y] == NO_LABEL {
            labels[y] = e.y;
            scratch.dist[y] = 0;
            scratch.queue.push_back(e.y);
        }
    }
    while let Some(u) = scratch.queue.pop_front() {
        let u = u as usize;
        let (label, next) = (labels[u], scratch.dist[u] + 1);
        let mut visit = |w: usize, labels: &mut [u32], queue: &mut VecDeque<u32>| {
            if labels[w] == NO_LABEL {
                labels[w] = label;
                scratch.dist[w] = next;
                queue.push_back(w as u32);
            }
        };
        if !scratch.on_path[u] {
            if let Some(p) = tree.parent(u) {
                visit(p, &mut labels, &mut scratch.queue);
            }
        }
        for &c in tree.children(u) {
            if !scratch.on_path[c] {
                visit(c, &mut labels, &mut scratch.queue);
            }
        }
    }

    let mut up = Vec::with_capacity(h);
    let mut down = Vec::with_capacity(h);
    for d in 0..h {
        let z = scratch.path[h - d];
        if labels[z] == NO_LABEL {
            up.push(Slot::Inf);
            down.push(Slot::Inf);
        } else {
            let dist = scratch.dist[z] as i64;
            up.push(Slot::Finite(dist + d as i64));
            down.push(Slot::Finite(dist - d as i64));
        }
    }
    for &u in &scratch.path {
        scratch.on_path[u] = false;
    }
    NearestLabels {
        labels,
        up: RmqIndex::new(up),
        down: RmqIndex::new(down),
    }
}

/// A vertex of `Y(x, e)` closest to `gamma`, where `e` hangs below the
/// ancestor of `x` at depth `fail_depth` and `gamma` lies outside the
/// subtree cut off by `e`.
///
/// Candidates are the label of `gamma` itself, the label of the best
/// ancestor strictly above `lca(gamma, x)` (minimizing `dist - depth`) and
/// of the best one strictly below it down to `fail_depth` (minimizing
/// `dist + depth`). Ties go to the smaller vertex id.
pub fn query_nearest_in_y(
    idx: &TreeIndex,
    labels: &NearestLabels,
    x: usize,
    gamma: usize,
    fail_depth: usize,
) -> Option<usize> {
    let j = idx.depth(idx.lca(gamma, x));
    assert!(
        j <= fail_depth,
        "center {gamma} lies below the failing edge of {x} (lca depth {j} > {fail_depth})"
    );
    let mut best: Option<(usize, usize)> = None;
    let mut offer = |y: usize| {
        let key = (idx.distance(y, gamma), y);
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    };
    if let Some(y) = labels.label(gamma) {
        offer(y);
    }
    let from_rmq = |rmq: &RmqIndex<Slot>, l: usize, r: usize| {
        rmq.argmin(l, r)
            .filter(|&t| rmq.get(t) != Slot::Inf)
            .and_then(|t| labels.label(idx.level_ancestor(x, t).expect("ancestor depth")))
    };
    if j > 0 {
        if let Some(y) = from_rmq(&labels.down, 0, j - 1) {
            offer(y);
        }
    }
    if let Some(y) = from_rmq(&labels.up, j + 1, fail_depth) {
        offer(y);
    }
    best.map(|(_, y)| y)
}

/// Per-candidate detail of one failing-edge pass, for inspection and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateTrace {
    pub x: usize,
    /// Diametral pair of `c_x`.
    pub pair: DiametralPair,
    pub gamma: usize,
    pub twin: Option<usize>,
    /// Nearest member of `Y(x, e)` to `gamma`.
    pub nearest: usize,
    /// Chosen endpoint: minimum eccentricity among the nearest members to
    /// both middle vertices.
    pub y: usize,
    pub sigma: u64,
}

/// Per-failing-edge buffers, indexed by preorder offset inside `X`.
#[derive(Debug, Default)]
pub struct EdgeScratch {
    down: Vec<DiametralPair>,
    sibling: Vec<DiametralPair>,
    rest: Vec<DiametralPair>,
    prefix: Vec<DiametralPair>,
    merges: u64,
}

impl EdgeScratch {
    /// Merge operations performed by the last pass.
    pub fn merges(&self) -> u64 {
        self.merges
    }
}

/// Everything precomputed for a given graph and rooted spanning tree.
#[derive(Debug)]
pub struct SwapSolver<'a> {
    graph: &'a Graph,
    tree: &'a RootedTree,
    index: TreeIndex,
    sets: NonTreeSets,
    path_offsets: Vec<usize>,
    path_pairs: Vec<DiametralPair>,
    labels: Vec<NearestLabels>,
}

impl<'a> SwapSolver<'a> {
    /// Single-threaded precomputation.
    pub fn new(graph: &'a Graph, tree: &'a RootedTree) -> Self {
        let index = TreeIndex::new(tree);
        let sets = compute_nontree_sets(graph, tree, &index);
        let n = graph.n();
        let mut scratch = LabelScratch::default();
        let per_vertex: Vec<_> = (0..n)
            .map(|x| Self::prepare_vertex(tree, &index, &sets, x, &mut scratch))
            .collect();
        Self::assemble(graph, tree, index, sets, per_vertex)
    }

    /// Precomputation spread over the current rayon pool; the result is
    /// identical to [`SwapSolver::new`].
    pub fn new_parallel(graph: &'a Graph, tree: &'a RootedTree) -> Self {
        let index = TreeIndex::new(tree);
        let sets = compute_nontree_sets(graph, tree, &index);
        let per_vertex: Vec<_> = (0..graph.n())
            .into_par_iter()
            .map_init(LabelScratch::default, |scratch, x| {
                Self::prepare_vertex(tree, &index, &sets, x, scratch)
            })
            .collect();
        Self::assemble(graph, tree, index, sets, per_vertex)
    }

    fn prepare_vertex(
        tree: &RootedTree,
        index: &TreeIndex,
        sets: &NonTreeSets,
        x: usize,
        scratch: &mut LabelScratch,
    ) -> (Vec<DiametralPair>, NearestLabels) {
        let base = compute_base_pairs(index, sets, x);
        let path = compute_rootpath_pairs(index, &base);
        let labels = build_nearest_label_structures(tree, sets, x, scratch);
        (path, labels)
    }

    fn assemble(
        graph: &'a Graph,
        tree: &'a RootedTree,
        index: TreeIndex,
        sets: NonTreeSets,
        per_vertex: Vec<(Vec<DiametralPair>, NearestLabels)>,
    ) -> Self {
        let mut path_offsets = Vec::with_capacity(per_vertex.len() + 1);
        let mut path_pairs = Vec::new();
        let mut labels = Vec::with_capacity(per_vertex.len());
        path_offsets.push(0);
        for (path, l) in per_vertex {
            path_pairs.extend(path);
            path_offsets.push(path_pairs.len());
            labels.push(l);
        }
        SwapSolver {
            graph,
            tree,
            index,
            sets,
            path_offsets,
            path_pairs,
            labels,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn tree(&self) -> &RootedTree {
        self.tree
    }

    pub fn index(&self) -> &TreeIndex {
        &self.index
    }

    pub fn nontree_sets(&self) -> &NonTreeSets {
        &self.sets
    }

    pub fn nearest_labels(&self, x: usize) -> &NearestLabels {
        &self.labels[x]
    }

    /// Root-path pair of `x` covering the ancestors at depth `0..=d`.
    #[inline]
    pub fn rootpath_pair(&self, x: usize, d: usize) -> DiametralPair {
        let start = self.path_offsets[x];
        debug_assert!(start + d < self.path_offsets[x + 1]);
        self.path_pairs[start + d]
    }

    /// Approximate heap footprint of the precomputed tables in bytes.
    pub fn heap_bytes(&self) -> usize {
        self.index.heap_bytes()
            + self.sets.entries.capacity() * std::mem::size_of::<NonTreeEntry>()
            + self.sets.offsets.capacity() * 8
            + self.path_offsets.capacity() * 8
            + self.path_pairs.capacity() * std::mem::size_of::<DiametralPair>()
            + self.labels.iter().map(NearestLabels::heap_bytes).sum::<usize>()
    }

    /// Best swap edge of `(parent(v), v)`.
    pub fn process_failing_edge(&self, v: usize, scratch: &mut EdgeScratch) -> SwapResult {
        self.run_edge(v, scratch, None)
    }

    /// Like [`SwapSolver::process_failing_edge`], also reporting every
    /// candidate.
    pub fn trace_failing_edge(&self, v: usize) -> (SwapResult, Vec<CandidateTrace>) {
        let mut trace = Vec::new();
        let result = self.run_edge(v, &mut EdgeScratch::default(), Some(&mut trace));
        (result, trace)
    }

    fn run_edge(
        &self,
        v: usize,
        s: &mut EdgeScratch,
        mut trace: Option<&mut Vec<CandidateTrace>>,
    ) -> SwapResult {
        let tree = self.tree;
        let idx = &self.index;
        let parent = tree.parent(v).expect("failing edge needs a non-root vertex");
        let fail_depth = idx.depth(parent);
        let xs = tree.subtree(v);
        let base = tree.pre_number(v);
        let loc = |u: usize| tree.pre_number(u) - base;
        let size = xs.len();
        s.merges = 0;
        for buf in [&mut s.down, &mut s.sibling, &mut s.rest] {
            buf.clear();
            buf.resize(size, DiametralPair::EMPTY);
        }
        let mg = |p: DiametralPair, q: DiametralPair, count: &mut u64| {
            *count += 1;
            merge(idx, p, q)
        };

        // Descendants of x (x included), at offset d(x', x).
        for &x in xs.iter().rev() {
            let mut acc = self.rootpath_pair(x, fail_depth);
            for &c in tree.children(x) {
                acc = mg(acc, s.down[loc(c)].shift(1), &mut s.merges);
            }
            s.down[loc(x)] = acc;
        }

        // Subtrees of siblings, at offset 2 + d(x', sibling).
        for &p in xs {
            let kids = tree.children(p);
            let l = kids.len();
            if l < 2 {
                continue;
            }
            s.prefix.clear();
            s.prefix.push(DiametralPair::EMPTY);
            s.prefix.push(s.down[loc(kids[0])].shift(2));
            for i in 2..l {
                let next = mg(s.prefix[i - 1], s.down[loc(kids[i - 1])].shift(2), &mut s.merges);
                s.prefix.push(next);
            }
            let mut suffix = s.down[loc(kids[l - 1])].shift(2);
            s.sibling[loc(kids[l - 1])] = s.prefix[l - 1];
            for i in (1..l - 1).rev() {
                s.sibling[loc(kids[i])] = mg(s.prefix[i], suffix, &mut s.merges);
                suffix = mg(suffix, s.down[loc(kids[i])].shift(2), &mut s.merges);
            }
            s.sibling[loc(kids[0])] = suffix;
        }

        // Everything else in X: through the parent, at offset 1 + d(x', parent).
        // `rest` first holds Z(x,3) and is then widened in place to Z(x,2) ∪ Z(x,3).
        for &x in xs {
            let i = loc(x);
            if x != v {
                let merged = mg(s.sibling[i], s.rest[i], &mut s.merges);
                s.rest[i] = merged;
            }
            if tree.children(x).is_empty() {
                continue;
            }
            let through = if x == v {
                self.rootpath_pair(x, fail_depth)
            } else {
                mg(self.rootpath_pair(x, fail_depth), s.rest[i], &mut s.merges)
            }
            .shift(1);
            for &c in tree.children(x) {
                s.rest[loc(c)] = through;
            }
        }

        let mut best: Option<(u64, usize, usize)> = None;
        for &x in xs {
            let i = loc(x);
            if self.rootpath_pair(x, fail_depth).is_empty() {
                continue; // F(x, e) is empty
            }
            let pair = if x == v {
                s.down[i]
            } else {
                mg(s.down[i], s.rest[i], &mut s.merges)
            };
            let (gamma, twin) = centers_of_pair(idx, pair).expect("c_x is finite at y ∈ Y(x,e)");
            let labels = &self.labels[x];
            let nearest = query_nearest_in_y(idx, labels, x, gamma, fail_depth)
                .expect("Y(x, e) is non-empty");
            let ecc = |y: usize| eccentricity_at(idx, pair, y).expect("non-empty pair") as u64;
            let mut y = nearest;
            let mut score = ecc(nearest);
            if let Some(t) = twin {
                if let Some(alt) = query_nearest_in_y(idx, labels, x, t, fail_depth) {
                    let alt_score = ecc(alt);
                    if (alt_score, alt) < (score, y) {
                        y = alt;
                        score = alt_score;
                    }
                }
            }
            let sigma = 1 + score;
            if let Some(tr) = trace.as_deref_mut() {
                tr.push(CandidateTrace { x, pair, gamma, twin, nearest, y, sigma });
            }
            if best.is_none_or(|b| (sigma, x, y) < b) {
                best = Some((sigma, x, y));
            }
        }
        // 2-edge-connectivity guarantees S(e) is non-empty.
        let (sigma, x, y) = best.expect("no swap edge crosses the failing tree edge");
        SwapResult { v, swap: Some((x, y)), sigma: Some(sigma) }
    }

    /// Best swap edges of all tree edges, sorted by lower endpoint.
    pub fn solve(&self) -> Vec<SwapResult> {
        let mut scratch = EdgeScratch::default();
        let mut out: Vec<SwapResult> = self
            .tree
            .postorder_edges()
            .map(|v| self.process_failing_edge(v, &mut scratch))
            .collect();
        out.sort_unstable_by_key(|r| r.v);
        out
    }

    /// [`SwapSolver::solve`] on the current rayon pool.
    pub fn solve_parallel(&self) -> Vec<SwapResult> {
        let edges: Vec<usize> = self.tree.postorder_edges().collect();
        let mut out: Vec<SwapResult> = edges
            .into_par_iter()
            .map_init(EdgeScratch::default, |scratch, v| self.process_failing_edge(v, scratch))
            .collect();
        out.sort_unstable_by_key(|r| r.v);
        out
    }
}

/// Rejects graphs with bridges and roots the tree.
pub fn validate_instance(
    g: &Graph,
    tree_edges: &[EdgeId],
    root: usize,
) -> Result<RootedTree, SolveError> {
    let tree = RootedTree::new(g, tree_edges, root)?;
    let bridges = find_bridges(g);
    if !bridges.is_empty() {
        return Err(SolveError::NotTwoEdgeConnected(
            bridges.into_iter().map(|id| g.edge(id)).collect(),
        ));
    }
    Ok(tree)
}

/// One best swap edge per tree edge, in `O(n^2)` time and space.
pub fn all_best_swap_edges(
    g: &Graph,
    tree_edges: &[EdgeId],
    root: usize,
) -> Result<Vec<SwapResult>, SolveError> {
    all_best_swap_edges_with_threads(g, tree_edges, root, 1)
}

/// As [`all_best_swap_edges`], spreading work over `threads` workers. The
/// output does not depend on the thread count.
pub fn all_best_swap_edges_with_threads(
    g: &Graph,
    tree_edges: &[EdgeId],
    root: usize,
    threads: usize,
) -> Result<Vec<SwapResult>, SolveError> {
    if threads == 0 {
        return Err(SolveError::NoThreads);
    }
    let tree = validate_instance(g, tree_edges, root)?;
    if threads == 1 {
        return Ok(SwapSolver::new(g, &tree).solve());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    Ok(pool.install(|| SwapSolver::new_parallel(g, &tree).solve_parallel()))
}
