//! Diametral pairs of vertex-cost functions on a tree.
//!
//! A cost function `c: V -> Z ∪ {-∞}` is summarized by two (possibly equal)
//! vertices `a, b` maximizing `c(a) + d(a, b) + c(b)`, together with their
//! costs. Pointwise maxima of shifted cost functions are summarized by
//! merging summaries: the diametral pair of the maximum is always found
//! among the endpoints of the operands.

use std::fmt;
use std::ops::Add;

use crate::tree_index::TreeIndex;

/// Integer vertex cost, or `-∞`. Addition is absorbing on `-∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cost {
    NegInf,
    Finite(i64),
}

impl Cost {
    pub fn finite(self) -> Option<i64> {
        match self {
            Cost::NegInf => None,
            Cost::Finite(c) => Some(c),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cost::Finite(_))
    }
}

impl Add<i64> for Cost {
    type Output = Cost;

    fn add(self, k: i64) -> Cost {
        match self {
            Cost::NegInf => Cost::NegInf,
            Cost::Finite(c) => Cost::Finite(c + k),
        }
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, other: Cost) -> Cost {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::NegInf,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::NegInf => f.write_str("-inf"),
            Cost::Finite(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Ends {
    a: u32,
    b: u32,
    cost_a: i32,
    cost_b: i32,
    // d(a, b)
    len: u32,
}

/// Endpoints of a diametral path and their costs; empty when the cost
/// function is `-∞` everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DiametralPair {
    ends: Option<Ends>,
}

impl DiametralPair {
    pub const EMPTY: DiametralPair = DiametralPair { ends: None };

    /// The pair of a cost function that is `cost` at `y` and `-∞` elsewhere.
    pub fn singleton(y: usize, cost: i64) -> Self {
        Self::from_ends(y, cost, y, cost, 0)
    }

    /// Builds a pair from explicit endpoints at tree distance `len`; callers
    /// vouch that they are diametral for the function they stand for.
    pub fn from_ends(a: usize, cost_a: i64, b: usize, cost_b: i64, len: usize) -> Self {
        DiametralPair {
            ends: Some(Ends {
                a: a as u32,
                b: b as u32,
                cost_a: cost_a as i32,
                cost_b: cost_b as i32,
                len: len as u32,
            }),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_none()
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        self.ends.map(|e| (e.a as usize, e.b as usize))
    }

    pub fn a(&self) -> Option<usize> {
        self.ends.map(|e| e.a as usize)
    }

    pub fn b(&self) -> Option<usize> {
        self.ends.map(|e| e.b as usize)
    }

    pub fn cost_a(&self) -> Cost {
        self.ends.map_or(Cost::NegInf, |e| Cost::Finite(e.cost_a as i64))
    }

    pub fn cost_b(&self) -> Cost {
        self.ends.map_or(Cost::NegInf, |e| Cost::Finite(e.cost_b as i64))
    }

    /// Both costs raised by `k`.
    #[inline]
    pub fn shift(self, k: i64) -> Self {
        DiametralPair {
            ends: self.ends.map(|e| Ends {
                cost_a: e.cost_a + k as i32,
                cost_b: e.cost_b + k as i32,
                ..e
            }),
        }
    }

    /// `d(a, b)`.
    pub fn len(&self) -> Option<usize> {
        self.ends.map(|e| e.len as usize)
    }

    /// `cost_a + d(a, b) + cost_b`.
    pub fn value(&self) -> Cost {
        match self.ends {
            None => Cost::NegInf,
            Some(e) => Cost::Finite(e.cost_a as i64 + e.len as i64 + e.cost_b as i64),
        }
    }
}

/// Diametral pair of the pointwise maximum of the functions `p` and `q`
/// stand for.
///
/// The two input pairs and the four cross pairs of their endpoints are
/// scored with the costs they carry from their source; the best score
/// wins, ties going to the lexicographically smallest `(a, b)` with
/// `a <= b`.
pub fn merge(idx: &TreeIndex, p: DiametralPair, q: DiametralPair) -> DiametralPair {
    let (p, q) = match (p.ends, q.ends) {
        (None, _) => return q,
        (_, None) => return p,
        (Some(p), Some(q)) => (p, q),
    };
    let mut best = p;
    let mut best_score = i64::MIN;
    let mut offer = |(u, cu): (u32, i32), (w, cw): (u32, i32), len: u32| {
        let (a, cost_a, b, cost_b) = if w < u { (w, cw, u, cu) } else { (u, cu, w, cw) };
        let score = cost_a as i64 + len as i64 + cost_b as i64;
        if score > best_score || (score == best_score && (a, b) < (best.a, best.b)) {
            best_score = score;
            best = Ends { a, b, cost_a, cost_b, len };
        }
    };
    let dist = |u: u32, w: u32| if u == w { 0 } else { idx.distance(u as usize, w as usize) as u32 };
    let (pa, pb, qa, qb) = ((p.a, p.cost_a), (p.b, p.cost_b), (q.a, q.cost_a), (q.b, q.cost_b));
    // A pair (e, e) never scores above the input pair e comes from.
    offer(pa, pb, p.len);
    offer(qa, qb, q.len);
    for (u, w) in [(pa, qa), (pa, qb), (pb, qa), (pb, qb)] {
        offer(u, w, dist(u.0, w.0));
    }
    DiametralPair { ends: Some(best) }
}

/// Folds [`merge`] over a sequence of pairs.
pub fn merge_all<I>(idx: &TreeIndex, pairs: I) -> DiametralPair
where
    I: IntoIterator<Item = DiametralPair>,
{
    pairs.into_iter().fold(DiametralPair::EMPTY, |acc, p| merge(idx, acc, p))
}

/// `max(d(y, a) + cost_a, d(y, b) + cost_b)`, or `None` for an empty pair.
#[inline]
pub fn eccentricity_at(idx: &TreeIndex, p: DiametralPair, y: usize) -> Option<i64> {
    p.ends.map(|e| {
        let via_a = idx.distance(y, e.a as usize) as i64 + e.cost_a as i64;
        let via_b = idx.distance(y, e.b as usize) as i64 + e.cost_b as i64;
        via_a.max(via_b)
    })
}

/// The middle vertices of the diametral path: the center `γ` plus, when the
/// pair value `D` is odd, the other vertex attaining eccentricity `⌈D/2⌉`.
///
/// `γ` sits `⌈D/2⌉ - cost_a` steps from `a` when that point is on the
/// `a`-side of `lca(a, b)`; otherwise it sits `⌈D/2⌉ - cost_b` steps from
/// `b`.
pub fn centers_of_pair(idx: &TreeIndex, p: DiametralPair) -> Option<(usize, Option<usize>)> {
    let e = p.ends?;
    let (a, b) = (e.a as usize, e.b as usize);
    let (ca, cb) = (e.cost_a as i64, e.cost_b as i64);
    let top = idx.lca(a, b);
    let a_side = (idx.depth(a) - idx.depth(top)) as i64;
    let d = e.len as i64;
    let value = ca + d + cb;
    let half_up = (value + 1).div_euclid(2);
    let step_a = half_up - ca;
    // Positions along the path, measured from `a`.
    let primary = if step_a <= a_side {
        step_a
    } else {
        d - (half_up - cb)
    };
    debug_assert!((0..=d).contains(&primary));
    let gamma = idx.walk_towards(a, b, primary as usize).expect("center on path");
    let twin = (value % 2 != 0).then(|| {
        let other = if primary == half_up - ca { primary - 1 } else { primary + 1 };
        idx.walk_towards(a, b, other as usize).expect("twin center on path")
    });
    Some((gamma, twin))
}

/// The center `γ` of the pair (see [`centers_of_pair`]).
pub fn center_of_pair(idx: &TreeIndex, p: DiametralPair) -> Option<usize> {
    centers_of_pair(idx, p).map(|(gamma, _)| gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, RootedTree};

    fn path_index(n: usize) -> TreeIndex {
        let g = Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap();
        let ids: Vec<usize> = (0..g.m()).collect();
        TreeIndex::new(&RootedTree::new(&g, &ids, 0).unwrap())
    }

    #[test]
    fn cost_arithmetic_absorbs_neg_inf() {
        assert_eq!(Cost::NegInf + 5, Cost::NegInf);
        assert_eq!(Cost::Finite(2) + Cost::NegInf, Cost::NegInf);
        assert_eq!(Cost::Finite(2) + 3, Cost::Finite(5));
        assert!(Cost::NegInf < Cost::Finite(i64::MIN));
    }

    #[test]
    fn singleton_and_shift() {
        let idx = path_index(8);
        let p = DiametralPair::singleton(7, 0);
        assert_eq!(p.endpoints(), Some((7, 7)));
        assert_eq!(p.value(), Cost::Finite(0));
        assert_eq!(DiametralPair::singleton(7, 3).value(), Cost::Finite(6));
        assert_eq!(DiametralPair::EMPTY.shift(5), DiametralPair::EMPTY);
        let s = p.shift(2);
        assert_eq!((s.cost_a(), s.cost_b()), (Cost::Finite(2), Cost::Finite(2)));
        let q = merge(&idx, DiametralPair::singleton(1, 1), DiametralPair::singleton(5, 0));
        assert_eq!(q.shift(3).value(), q.value() + 6);
    }

    #[test]
    fn merge_examples() {
        let idx = path_index(6);
        let m = merge(&idx, DiametralPair::singleton(4, 0), DiametralPair::singleton(1, 0));
        assert_eq!(m.endpoints(), Some((1, 4)));
        assert_eq!(m.value(), Cost::Finite(3));
        let p = DiametralPair::singleton(2, 1);
        assert_eq!(merge(&idx, p, DiametralPair::EMPTY), p);
        assert_eq!(merge(&idx, DiametralPair::EMPTY, p), p);
    }

    #[test]
    fn merge_prefers_heavier_endpoint_over_distance() {
        let idx = path_index(6);
        // c(0)=0, c(5)=0, c(2)=9: the heavy vertex dominates as a self-pair.
        let far = merge(&idx, DiametralPair::singleton(0, 0), DiametralPair::singleton(5, 0));
        let m = merge(&idx, far, DiametralPair::singleton(2, 9));
        assert_eq!(m.endpoints(), Some((2, 2)));
        assert_eq!(m.value(), Cost::Finite(18));
    }

    #[test]
    fn center_examples() {
        let idx = path_index(5);
        assert_eq!(center_of_pair(&idx, DiametralPair::singleton(3, 4)), Some(3));
        let p = DiametralPair::from_ends(0, 0, 4, 0, 4);
        assert_eq!(centers_of_pair(&idx, p), Some((2, None)));
        assert_eq!(center_of_pair(&idx, DiametralPair::EMPTY), None);
        // D = 3 is odd: two middle vertices, 1 and 2.
        let p = DiametralPair::from_ends(0, 0, 3, 0, 3);
        let (g, t) = centers_of_pair(&idx, p).unwrap();
        let mut both = [g, t.unwrap()];
        both.sort_unstable();
        assert_eq!(both, [1, 2]);
    }

    #[test]
    fn eccentricity_examples() {
        let idx = path_index(3);
        assert_eq!(eccentricity_at(&idx, DiametralPair::singleton(1, 0), 1), Some(0));
        assert_eq!(eccentricity_at(&idx, DiametralPair::from_ends(0, 0, 2, 0, 2), 1), Some(1));
        assert_eq!(eccentricity_at(&idx, DiametralPair::EMPTY, 1), None);
    }
}
