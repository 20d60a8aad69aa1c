//! Brute-force reference implementations.
//!
//! Nothing here touches the LCA index or the diametral-pair machinery:
//! distances come from plain BFS and every optimum from exhaustive search.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::diameter::{Cost, DiametralPair};
use crate::graph::{bfs_distances, EdgeId, Graph, RootedTree, UNREACHABLE};

pub const DEFAULT_MAX_ORACLE_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("tree does not span the graph")]
    NotSpanning,
    #[error("empty candidate set")]
    EmptySubset,
}

/// Exact ratio of hop counts, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StretchValue {
    num: u64,
    den: u64,
}

impl StretchValue {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den >= 1, "stretch denominator must be positive");
        let g = gcd(num, den);
        StretchValue { num: num / g, den: den / g }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn as_integer(&self) -> Option<u64> {
        (self.den == 1).then_some(self.num)
    }
}

impl Ord for StretchValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for StretchValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for StretchValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn all_pairs(g: &Graph, excluded: Option<EdgeId>) -> Vec<Vec<u32>> {
    (0..g.n()).map(|s| bfs_distances(g, s, excluded)).collect()
}

/// The subgraph of `g` made of `tree` edges (given as vertex pairs).
fn tree_graph(n: usize, tree: &[(usize, usize)]) -> Graph {
    Graph::new(n, tree.iter().copied()).expect("tree edges form a simple graph")
}

/// Stretch of `tree` in `g` minus `excluded`, as the maximum tree distance
/// over the remaining graph edges.
pub fn stretch_factor(
    g: &Graph,
    tree: &[(usize, usize)],
    excluded: Option<EdgeId>,
) -> Result<StretchValue, OracleError> {
    let t = tree_graph(g.n(), tree);
    let dist = all_pairs(&t, None);
    let mut worst = StretchValue::new(1, 1);
    for (id, &(u, w)) in g.edges().iter().enumerate() {
        if Some(id) == excluded {
            continue;
        }
        let d = dist[u][w];
        if d == UNREACHABLE {
            return Err(OracleError::NotSpanning);
        }
        worst = worst.max(StretchValue::new(d as u64, 1));
    }
    Ok(worst)
}

/// Stretch straight from the definition: the maximum of
/// `d_T(x, y) / d_G(x, y)` over all vertex pairs.
pub fn stretch_factor_all_pairs(
    g: &Graph,
    tree: &[(usize, usize)],
    excluded: Option<EdgeId>,
) -> Result<StretchValue, OracleError> {
    let t = tree_graph(g.n(), tree);
    let dt = all_pairs(&t, None);
    let dg = all_pairs(g, excluded);
    max_ratio(&dt, &dg)
}

fn max_ratio(dt: &[Vec<u32>], dg: &[Vec<u32>]) -> Result<StretchValue, OracleError> {
    let n = dt.len();
    let mut worst = StretchValue::new(1, 1);
    for u in 0..n {
        for w in u + 1..n {
            if dt[u][w] == UNREACHABLE {
                return Err(OracleError::NotSpanning);
            }
            worst = worst.max(StretchValue::new(dt[u][w] as u64, dg[u][w] as u64));
        }
    }
    Ok(worst)
}

/// Exhaustive answer for one failing tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveEdgeReport {
    /// Lower endpoint of the failing tree edge.
    pub v: usize,
    /// All swap edges as `(x, y)` with `x` in the cut-off subtree.
    pub swaps: Vec<(usize, usize)>,
    /// `σ_{G-e}(T_{e/f})` per swap edge.
    pub full: Vec<StretchValue>,
    /// `max over swap edges (u, w) of d_{T_{e/f}}(u, w)` per swap edge.
    pub restricted: Vec<u64>,
    pub full_min: StretchValue,
    pub restricted_min: u64,
}

impl NaiveEdgeReport {
    pub fn full_argmin(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.swaps
            .iter()
            .zip(&self.full)
            .filter(|(_, s)| **s == self.full_min)
            .map(|(f, _)| *f)
    }

    pub fn restricted_argmin(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.swaps
            .iter()
            .zip(&self.restricted)
            .filter(|(_, s)| **s == self.restricted_min)
            .map(|(f, _)| *f)
    }

    /// Whether `(u, w)` (either orientation) is a full-stretch minimizer.
    pub fn is_full_optimal(&self, u: usize, w: usize) -> bool {
        self.full_argmin().any(|(a, b)| (a, b) == (u, w) || (a, b) == (w, u))
    }

    /// Whether the two objectives disagree on the optimum value, i.e. an
    /// edge inside one side of the cut stretches more than any swap path.
    pub fn objectives_diverge(&self) -> bool {
        self.full_min != StretchValue::new(self.restricted_min, 1)
    }
}

/// Tries every swap edge of every tree edge and measures the swapped tree
/// directly. `Θ(n^3 m)`; refuses instances above `max_n` vertices.
pub fn naive_all_best_swap_edges(
    g: &Graph,
    tree: &RootedTree,
    max_n: usize,
) -> Result<Vec<NaiveEdgeReport>, OracleError> {
    let n = g.n();
    if n > max_n {
        return Err(OracleError::TooLarge { n, limit: max_n });
    }
    let tree_pairs: Vec<(usize, usize)> = (0..n)
        .filter_map(|v| tree.parent(v).map(|p| (p, v)))
        .collect();
    let mut reports = Vec::new();
    for v in 0..n {
        let Some(p) = tree.parent(v) else { continue };
        let failing = g.edge_id(p, v).expect("tree edge in graph");
        let below = |u: usize| tree.in_subtree(u, v);
        let swaps: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != failing)
            .filter_map(|(_, &(a, b))| match (below(a), below(b)) {
                (true, false) => Some((a, b)),
                (false, true) => Some((b, a)),
                _ => None,
            })
            .collect();
        let dg = all_pairs(g, Some(failing));
        let mut full = Vec::with_capacity(swaps.len());
        let mut restricted = Vec::with_capacity(swaps.len());
        for &(x, y) in &swaps {
            let swapped: Vec<(usize, usize)> = tree_pairs
                .iter()
                .copied()
                .filter(|&e| e != (p, v))
                .chain([(x, y)])
                .collect();
            let dt = all_pairs(&tree_graph(n, &swapped), None);
            full.push(max_ratio(&dt, &dg)?);
            restricted.push(swaps.iter().map(|&(a, b)| dt[a][b] as u64).max().unwrap_or(0));
        }
        let full_min = full.iter().copied().min().unwrap_or(StretchValue::new(u64::MAX, 1));
        let restricted_min = restricted.iter().copied().min().unwrap_or(u64::MAX);
        reports.push(NaiveEdgeReport { v, swaps, full, restricted, full_min, restricted_min });
    }
    Ok(reports)
}

/// All-pairs tree distances by BFS from every vertex.
pub fn tree_distance_matrix(g: &Graph, tree: &RootedTree) -> Vec<Vec<u32>> {
    let n = g.n();
    let pairs: Vec<(usize, usize)> =
        (0..n).filter_map(|v| tree.parent(v).map(|p| (p, v))).collect();
    all_pairs(&tree_graph(n, &pairs), None)
}

/// `max over y' of d(y, y') + c(y')`, or `None` if every cost is `-∞`.
pub fn brute_eccentricity(dist: &[Vec<u32>], costs: &[Cost], y: usize) -> Option<i64> {
    costs
        .iter()
        .enumerate()
        .filter_map(|(w, c)| c.finite().map(|c| dist[y][w] as i64 + c))
        .max()
}

/// A vertex of `subset` with minimum eccentricity, smallest id on ties.
pub fn brute_subset_eccentricity(
    dist: &[Vec<u32>],
    costs: &[Cost],
    subset: &[usize],
) -> Result<(usize, Option<i64>), OracleError> {
    subset
        .iter()
        .map(|&y| (y, brute_eccentricity(dist, costs, y)))
        .min_by_key(|&(y, e)| (e, y))
        .ok_or(OracleError::EmptySubset)
}

/// Diametral pair by scanning every vertex pair, `a = b` included.
pub fn brute_diametral_pair(dist: &[Vec<u32>], costs: &[Cost]) -> DiametralPair {
    let mut best: Option<(i64, usize, usize)> = None;
    let finite: Vec<(usize, i64)> = costs
        .iter()
        .enumerate()
        .filter_map(|(v, c)| c.finite().map(|c| (v, c)))
        .collect();
    for (i, &(a, ca)) in finite.iter().enumerate() {
        for &(b, cb) in &finite[i..] {
            let score = ca + dist[a][b] as i64 + cb;
            if best.is_none_or(|(s, _, _)| score > s) {
                best = Some((score, a, b));
            }
        }
    }
    match best {
        None => DiametralPair::EMPTY,
        Some((_, a, b)) => DiametralPair::from_ends(
            a,
            costs[a].finite().unwrap(),
            b,
            costs[b].finite().unwrap(),
            dist[a][b] as usize,
        ),
    }
}

/// `cost_a + d(a, b) + cost_b` using a distance matrix.
pub fn brute_pair_value(dist: &[Vec<u32>], p: DiametralPair) -> Cost {
    match p.endpoints() {
        None => Cost::NegInf,
        Some((a, b)) => p.cost_a() + p.cost_b() + dist[a][b] as i64,
    }
}

/// `c_x` for the failing edge above `v`: for every `y` outside the subtree
/// of `v`, the largest `d(x', x)` over swap edges `(x', y)`.
pub fn brute_swap_costs(
    g: &Graph,
    tree: &RootedTree,
    dist: &[Vec<u32>],
    v: usize,
    x: usize,
) -> Vec<Cost> {
    let mut costs = vec![Cost::NegInf; g.n()];
    let failing = tree.parent_edge(v);
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        if Some(id) == failing {
            continue;
        }
        let (inner, outer) = match (tree.in_subtree(a, v), tree.in_subtree(b, v)) {
            (true, false) => (a, b),
            (false, true) => (b, a),
            _ => continue,
        };
        costs[outer] = costs[outer].max(Cost::Finite(dist[inner][x] as i64));
    }
    costs
}

/// `Y(x, e)`: the far endpoints of the swap edges incident to `x`.
pub fn brute_swap_endpoints(g: &Graph, tree: &RootedTree, v: usize, x: usize) -> Vec<usize> {
    let failing = tree.parent_edge(v);
    let mut ys: Vec<usize> = g
        .neighbors(x)
        .iter()
        .filter(|&&(y, id)| Some(id) != failing && !tree.in_subtree(y, v))
        .map(|&(y, _)| y)
        .collect();
    ys.sort_unstable();
    ys
}
