//! Constant-time lowest common ancestor, tree distance and level ancestor
//! queries over a [`RootedTree`].

use crate::graph::RootedTree;
use crate::rmq::RmqIndex;

const NONE: u32 = u32::MAX;

/// Query index over a rooted tree.
///
/// LCA reduces to an argmin over the depths of the Euler tour. Level
/// ancestors use jump pointers combined with long-path ladders: one jump of
/// `2^k` lands on a vertex whose ladder is tall enough to cover the rest.
#[derive(Debug, Clone)]
pub struct TreeIndex {
    root: usize,
    depth: Vec<u32>,
    tour: Vec<u32>,
    first: Vec<u32>,
    tour_rmq: RmqIndex<u32>,
    // jumps[k][v] = 2^k-th ancestor of v, or NONE
    jumps: Vec<Vec<u32>>,
    ladders: Vec<u32>,
    ladder_pos: Vec<u32>,
}

impl TreeIndex {
    pub fn new(tree: &RootedTree) -> Self {
        let n = tree.n();
        let depth = tree.depths().to_vec();

        let mut tour = Vec::with_capacity(2 * n);
        let mut first = vec![0u32; n];
        let mut walk: Vec<(usize, usize)> = vec![(tree.root(), 0)];
        first[tree.root()] = 0;
        tour.push(tree.root() as u32);
        while let Some(&mut (u, ref mut next)) = walk.last_mut() {
            if let Some(&c) = tree.children(u).get(*next) {
                *next += 1;
                first[c] = tour.len() as u32;
                tour.push(c as u32);
                walk.push((c, 0));
            } else {
                walk.pop();
                if let Some(&(p, _)) = walk.last() {
                    tour.push(p as u32);
                }
            }
        }
        let tour_rmq = RmqIndex::new(tour.iter().map(|&v| depth[v as usize]).collect());

        let parent: Vec<u32> =
            (0..n).map(|v| tree.parent(v).map_or(NONE, |p| p as u32)).collect();
        let max_depth = depth.iter().copied().max().unwrap_or(0);
        let mut jumps = vec![parent];
        while (1u64 << jumps.len()) <= max_depth as u64 {
            let prev = jumps.last().unwrap();
            let next = prev
                .iter()
                .map(|&a| if a == NONE { NONE } else { prev[a as usize] })
                .collect();
            jumps.push(next);
        }

        // Long-path decomposition: each path hangs from a top vertex and
        // follows the child of maximum height.
        let mut height = vec![0u32; n];
        for &u in tree.preorder().iter().rev() {
            if let Some(p) = tree.parent(u) {
                height[p] = height[p].max(height[u] + 1);
            }
        }
        let mut ladders = Vec::with_capacity(2 * n);
        let mut ladder_pos = vec![0u32; n];
        for &top in tree.preorder() {
            let is_top = match tree.parent(top) {
                None => true,
                Some(p) => long_child(tree, &height, p) != Some(top),
            };
            if !is_top {
                continue;
            }
            let path_len = height[top] as usize + 1;
            let mut above = Vec::new();
            let mut cursor = tree.parent(top);
            while let Some(a) = cursor {
                if above.len() == path_len {
                    break;
                }
                above.push(a as u32);
                cursor = tree.parent(a);
            }
            ladders.extend(above.iter().rev());
            let mut w = Some(top);
            while let Some(u) = w {
                ladder_pos[u] = ladders.len() as u32;
                ladders.push(u as u32);
                w = long_child(tree, &height, u);
            }
        }

        TreeIndex {
            root: tree.root(),
            depth,
            tour,
            first,
            tour_rmq,
            jumps,
            ladders,
            ladder_pos,
        }
    }

    pub fn n(&self) -> usize {
        self.depth.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    #[inline]
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    #[inline]
    pub fn lca(&self, u: usize, v: usize) -> usize {
        let (a, b) = (self.first[u] as usize, self.first[v] as usize);
        let (l, r) = if a <= b { (a, b) } else { (b, a) };
        let i = self.tour_rmq.argmin(l, r).expect("non-empty tour range");
        self.tour[i] as usize
    }

    #[inline]
    pub fn distance(&self, u: usize, v: usize) -> usize {
        if u == v {
            return 0;
        }
        let w = self.lca(u, v);
        self.depth(u) + self.depth(v) - 2 * self.depth(w)
    }

    /// The ancestor of `u` at depth `k`, or `None` if `k > depth(u)`.
    pub fn level_ancestor(&self, u: usize, k: usize) -> Option<usize> {
        let d = self.depth(u);
        if k > d {
            return None;
        }
        let up = d - k;
        if up == 0 {
            return Some(u);
        }
        let bit = (usize::BITS - 1 - up.leading_zeros()) as usize;
        let w = self.jumps[bit][u] as usize;
        let rest = up - (1 << bit);
        Some(self.ladders[self.ladder_pos[w] as usize - rest] as usize)
    }

    /// The vertex at distance `t` from `a` on the tree path from `a` to `b`.
    pub fn walk_towards(&self, a: usize, b: usize, t: usize) -> Option<usize> {
        let c = self.lca(a, b);
        let (da, db) = (self.depth(a) - self.depth(c), self.depth(b) - self.depth(c));
        if t <= da {
            self.level_ancestor(a, self.depth(a) - t)
        } else if t <= da + db {
            self.level_ancestor(b, self.depth(c) + (t - da))
        } else {
            None
        }
    }

    pub fn heap_bytes(&self) -> usize {
        4 * (self.depth.capacity()
            + self.tour.capacity()
            + self.first.capacity()
            + self.ladders.capacity()
            + self.ladder_pos.capacity())
            + self.jumps.iter().map(|j| 4 * j.capacity()).sum::<usize>()
            + self.tour_rmq.heap_bytes()
    }
}

fn long_child(tree: &RootedTree, height: &[u32], u: usize) -> Option<usize> {
    tree.children(u)
        .iter()
        .copied()
        .max_by_key(|&c| (height[c], std::cmp::Reverse(c)))
}
