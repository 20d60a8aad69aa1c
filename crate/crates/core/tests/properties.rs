use abse::diameter::{center_of_pair, eccentricity_at, merge, Cost, DiametralPair};
use abse::generate::{generate_instance, generate_with_dfs_tree};
use abse::graph::{Graph, RootedTree};
use abse::instance::Instance;
use abse::oracle::{brute_diametral_pair, brute_eccentricity, naive_all_best_swap_edges, tree_distance_matrix};
use abse::rmq::RmqIndex;
use abse::swap::SwapSolver;
use abse::TreeIndex;
use proptest::prelude::*;
use proptest::sample::Index;

#[derive(Debug, Clone)]
struct TreeCase {
    g: Graph,
    t: RootedTree,
}

fn tree_case(max_n: usize) -> impl Strategy<Value = TreeCase> {
    (1..=max_n)
        .prop_flat_map(|n| (proptest::collection::vec(any::<Index>(), n - 1), any::<Index>()))
        .prop_map(|(parents, root)| {
            let n = parents.len() + 1;
            let edges: Vec<_> = parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
            let g = Graph::new(n, edges).unwrap();
            let ids: Vec<_> = (0..g.m()).collect();
            let t = RootedTree::new(&g, &ids, root.index(n)).unwrap();
            TreeCase { g, t }
        })
}

fn costs_for(n: usize, raw: &[Option<u8>]) -> Vec<Cost> {
    (0..n).map(|v| raw[v % raw.len()].map_or(Cost::NegInf, |c| Cost::Finite(c as i64 % 16))).collect()
}

fn cost_vec() -> impl Strategy<Value = Vec<Option<u8>>> {
    proptest::collection::vec(proptest::option::weighted(0.6, any::<u8>()), 1..40)
}

fn instance() -> impl Strategy<Value = Instance> {
    (4usize..=24, prop::sample::select(vec![0.0, 0.2, 0.5, 1.0]), any::<u64>(), any::<bool>())
        .prop_map(|(n, d, seed, dfs)| {
            let n = if d >= 1.0 { n.max(5) } else { n };
            if dfs {
                generate_with_dfs_tree(n, d, seed).unwrap()
            } else {
                generate_instance(n, d, seed).unwrap()
            }
        })
}

proptest! {
    #[test]
    fn distances_form_a_tree_metric(case in tree_case(40), a in any::<Index>(), b in any::<Index>(), c in any::<Index>()) {
        let idx = TreeIndex::new(&case.t);
        let n = case.t.n();
        let (a, b, c) = (a.index(n), b.index(n), c.index(n));
        let dist = tree_distance_matrix(&case.g, &case.t);
        prop_assert_eq!(idx.distance(a, b), dist[a][b] as usize);
        prop_assert_eq!(idx.distance(a, b), idx.distance(b, a));
        prop_assert!(idx.distance(a, c) <= idx.distance(a, b) + idx.distance(b, c));
        let l = idx.lca(a, b);
        prop_assert_eq!(idx.distance(a, b), idx.distance(a, l) + idx.distance(l, b));
        prop_assert!(case.t.in_subtree(a, l) && case.t.in_subtree(b, l));
    }

    #[test]
    fn level_ancestor_and_walk(case in tree_case(60), a in any::<Index>(), b in any::<Index>(), t in any::<Index>()) {
        let idx = TreeIndex::new(&case.t);
        let n = case.t.n();
        let (a, b) = (a.index(n), b.index(n));
        let d = idx.distance(a, b);
        let t = t.index(d + 1);
        let w = idx.walk_towards(a, b, t).unwrap();
        prop_assert_eq!(idx.distance(a, w), t);
        prop_assert_eq!(idx.distance(w, b), d - t);
        prop_assert!(idx.walk_towards(a, b, d + 1).is_none());
        let k = t.min(idx.depth(a));
        let anc = idx.level_ancestor(a, k).unwrap();
        prop_assert_eq!(idx.depth(anc), k);
        prop_assert!(case.t.in_subtree(a, anc));
        prop_assert!(idx.level_ancestor(a, idx.depth(a) + 1).is_none());
    }

    #[test]
    fn rmq_matches_scan_and_ignores_offsets(values in proptest::collection::vec(-50i64..50, 1..80), l in any::<Index>(), r in any::<Index>(), k in -1000i64..1000) {
        let (l, r) = {
            let (x, y) = (l.index(values.len()), r.index(values.len()));
            (x.min(y), x.max(y))
        };
        let rmq = RmqIndex::new(values.clone());
        let scan = (l..=r).min_by_key(|&i| (values[i], i)).unwrap();
        prop_assert_eq!(rmq.argmin(l, r), Some(scan));
        let shifted = RmqIndex::new(values.iter().map(|v| v + k).collect());
        prop_assert_eq!(shifted.argmin(l, r), Some(scan));
        prop_assert_eq!(rmq.argmin(r + 1, r), None);
    }

    #[test]
    fn merge_is_commutative_and_associative_in_value(case in tree_case(40), p in cost_vec(), q in cost_vec(), r in cost_vec(), k in 0i64..5) {
        let n = case.t.n();
        let idx = TreeIndex::new(&case.t);
        let dist = tree_distance_matrix(&case.g, &case.t);
        let [p, q, r] = [p, q, r].map(|c| brute_diametral_pair(&dist, &costs_for(n, &c)));
        prop_assert_eq!(merge(&idx, p, q).value(), merge(&idx, q, p).value());
        prop_assert_eq!(
            merge(&idx, merge(&idx, p, q), r).value(),
            merge(&idx, p, merge(&idx, q, r)).value()
        );
        prop_assert_eq!(
            merge(&idx, p.shift(k), q.shift(k)).value(),
            merge(&idx, p, q).shift(k).value()
        );
        prop_assert_eq!(merge(&idx, p, DiametralPair::EMPTY), p);
        let m = merge(&idx, p, q);
        if let (Some((a, b)), Some(len)) = (m.endpoints(), m.len()) {
            prop_assert_eq!(len, idx.distance(a, b));
        }
    }

    #[test]
    fn pair_gives_every_eccentricity(case in tree_case(40), raw in cost_vec()) {
        let n = case.t.n();
        let idx = TreeIndex::new(&case.t);
        let dist = tree_distance_matrix(&case.g, &case.t);
        let costs = costs_for(n, &raw);
        let pair = brute_diametral_pair(&dist, &costs);
        for y in 0..n {
            prop_assert_eq!(eccentricity_at(&idx, pair, y), brute_eccentricity(&dist, &costs, y));
        }
        if let Some(gamma) = center_of_pair(&idx, pair) {
            let best = (0..n).filter_map(|y| brute_eccentricity(&dist, &costs, y)).min();
            prop_assert_eq!(brute_eccentricity(&dist, &costs, gamma), best);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_matches_oracle(inst in instance()) {
        let tree = inst.rooted_tree();
        let solver = SwapSolver::new(&inst.graph, &tree);
        let results = solver.solve();
        prop_assert_eq!(&results, &solver.solve_parallel());
        let naive = naive_all_best_swap_edges(&inst.graph, &tree, 64).unwrap();
        for (r, rep) in results.iter().zip(&naive) {
            prop_assert_eq!(r.sigma, Some(rep.restricted_min));
            let (x, y) = r.swap.unwrap();
            prop_assert!(rep.is_full_optimal(x, y));
        }
    }

    #[test]
    fn sigma_is_invariant_under_relabelling(inst in instance(), perm_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let n = inst.graph.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let graph = Graph::new(n, inst.graph.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        let relabelled = Instance { graph, tree_edges: inst.tree_edges.clone(), root: perm[inst.root] };
        let before = SwapSolver::new(&inst.graph, &inst.rooted_tree()).solve();
        let after = SwapSolver::new(&relabelled.graph, &relabelled.rooted_tree()).solve();
        let mut mapped = vec![None; n];
        for r in &after {
            mapped[r.v] = r.sigma;
        }
        for r in &before {
            prop_assert_eq!(r.sigma, mapped[perm[r.v]]);
        }
    }
}
