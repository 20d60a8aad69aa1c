//! Random 2-edge-connected instances: a random Hamiltonian cycle plus
//! random chords, with a BFS spanning tree from vertex 0.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{bfs_tree, Graph};
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("density must be a finite non-negative number, got {0}")]
    BadDensity(f64),
    #[error("{requested} edges requested but a simple graph on {n} vertices has at most {max}")]
    TooManyEdges { n: usize, requested: usize, max: usize },
}

/// Deterministic in `(n, density, seed)`.
pub fn generate_instance(n: usize, density: f64, seed: u64) -> Result<Instance, GenerateError> {
    if n < 3 {
        return Err(GenerateError::TooFewVertices(n));
    }
    if !density.is_finite() || density < 0.0 {
        return Err(GenerateError::BadDensity(density));
    }
    let chords = (density * n as f64).floor() as usize;
    let max = n * (n - 1) / 2;
    if n + chords > max {
        return Err(GenerateError::TooManyEdges { n, requested: n + chords, max });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut graph = Graph::new(n, []).expect("empty graph");
    for i in 0..n {
        graph
            .add_edge(order[i], order[(i + 1) % n])
            .expect("cycle edges are distinct");
    }
    while graph.m() < n + chords {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && graph.edge_id(u, v).is_none() {
            graph.add_edge(u, v).expect("fresh chord");
        }
    }
    let tree_edges = bfs_tree(&graph, 0);
    Ok(Instance { graph, tree_edges, root: 0 })
}

/// Same graph as [`generate_instance`] but with a random DFS spanning tree
/// and a random root, which gives much deeper trees than BFS.
pub fn generate_with_dfs_tree(n: usize, density: f64, seed: u64) -> Result<Instance, GenerateError> {
    let mut inst = generate_instance(n, density, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let g = &inst.graph;
    let root = rng.gen_range(0..n);
    let mut seen = vec![false; n];
    let mut tree = Vec::with_capacity(n - 1);
    let mut stack = vec![(root, None)];
    while let Some((u, via)) = stack.pop() {
        if seen[u] {
            continue;
        }
        seen[u] = true;
        if let Some(id) = via {
            tree.push(id);
        }
        let mut next: Vec<_> = g.neighbors(u).iter().filter(|(w, _)| !seen[*w]).copied().collect();
        next.shuffle(&mut rng);
        stack.extend(next.into_iter().map(|(w, id)| (w, Some(id))));
    }
    inst.tree_edges = tree;
    inst.root = root;
    Ok(inst)
}
