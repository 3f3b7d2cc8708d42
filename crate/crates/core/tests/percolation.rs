use perckit::graph::enumerate_graphs;
use perckit::percolation::{
    closure, greedy_upper_bound, is_contagious, m2_witness_pair, maximal_infection, min_contagious, percolate,
};
use perckit::{Graph, VertexSet};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        g.add_edge(i, j);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn arb_graph_and_seed(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        prop::collection::vec(any::<bool>(), n).prop_map(move |bits| {
            let seed = VertexSet::from_vertices(n, (0..n).filter(|&v| bits[v]));
            (g.clone(), seed)
        })
    })
}

/// The process written out directly from the recursion.
fn naive_closure(g: &Graph, seed: &[bool], r: usize) -> Vec<bool> {
    let n = g.order();
    let mut active = seed.to_vec();
    loop {
        let next: Vec<bool> =
            (0..n).map(|v| active[v] || (0..n).filter(|&u| active[u] && g.has_edge(u, v)).count() >= r).collect();
        if next == active {
            return active;
        }
        active = next;
    }
}

fn brute_force_m(g: &Graph, r: usize) -> usize {
    let n = g.order();
    (0u32..1 << n)
        .filter(|code| {
            let seed: Vec<bool> = (0..n).map(|v| code >> v & 1 == 1).collect();
            naive_closure(g, &seed, r).iter().all(|&a| a)
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

/// Activates dormant vertices one at a time in random order until stable.
fn asynchronous_closure(g: &Graph, seed: &VertexSet, r: usize, rng: &mut StdRng) -> VertexSet {
    let mut active = seed.clone();
    loop {
        let mut ready: Vec<usize> =
            active.complement().iter().filter(|&v| g.neighbors(v).intersection_len(&active) >= r).collect();
        if ready.is_empty() {
            return active;
        }
        ready.shuffle(rng);
        active.insert(ready[0]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_contains_seed_and_is_idempotent((g, seed) in arb_graph_and_seed(40), r in 1usize..4) {
        let c = closure(&g, &seed, r).unwrap();
        prop_assert!(seed.is_subset(&c));
        prop_assert_eq!(closure(&g, &c, r).unwrap(), c);
    }

    #[test]
    fn closure_is_monotone((g, a) in arb_graph_and_seed(30), extra in prop::collection::vec(any::<u8>(), 0..6), r in 1usize..4) {
        let mut b = a.clone();
        for x in extra {
            b.insert(x as usize % g.order());
        }
        prop_assert!(closure(&g, &a, r).unwrap().is_subset(&closure(&g, &b, r).unwrap()));
    }

    #[test]
    fn trace_is_strict_chain_ending_closed((g, seed) in arb_graph_and_seed(30), r in 1usize..4) {
        let t = percolate(&g, &seed, r).unwrap();
        prop_assert_eq!(t.seed(), &seed);
        for w in t.rounds.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]) && w[0] != w[1]);
        }
        let last = t.closure();
        for v in last.complement().iter() {
            prop_assert!(g.neighbors(v).intersection_len(last) < r);
        }
        prop_assert!(t.rounds.len() <= g.order() - seed.len() + 1);
        prop_assert_eq!(last, &closure(&g, &seed, r).unwrap());
    }

    #[test]
    fn order_does_not_matter((g, seed) in arb_graph_and_seed(30), r in 1usize..4, s in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(s);
        let reference = percolate(&g, &seed, r).unwrap();
        prop_assert_eq!(&asynchronous_closure(&g, &seed, r, &mut rng), reference.closure());
    }

    #[test]
    fn large_graphs_match_small_kernel((g, seed) in arb_graph_and_seed(20), r in 1usize..4) {
        // pad with isolated vertices past 64 so the general path runs
        let n = g.order();
        let mut big = Graph::empty(n + 70);
        for (u, v) in g.edges() {
            big.add_edge(u, v);
        }
        let big_seed = VertexSet::from_vertices(n + 70, seed.iter().chain(n..n + 70));
        let small = closure(&g, &seed, r).unwrap();
        let large = closure(&big, &big_seed, r).unwrap();
        prop_assert_eq!(large.to_vec(), small.iter().chain(n..n + 70).collect::<Vec<_>>());
    }

    #[test]
    fn exact_bounds(g in arb_graph(10), r in 1usize..5) {
        let res = min_contagious(&g, r).unwrap();
        prop_assert!(res.exact);
        prop_assert!(res.m >= r.min(g.order()));
        prop_assert_eq!(res.witness.len(), res.m);
        prop_assert!(is_contagious(&g, &res.witness, r).unwrap());
        let greedy = greedy_upper_bound(&g, r).unwrap();
        prop_assert!(is_contagious(&g, &greedy, r).unwrap());
        prop_assert!(greedy.len() >= res.m);
    }

    #[test]
    fn maximal_pair_closure_invariant(g in arb_graph(11)) {
        prop_assume!(g.order() >= 2);
        let mi = maximal_infection(&g, 2).unwrap();
        let i = &mi.closure;
        if i.is_full() {
            prop_assert!(m2_witness_pair(&g).is_some());
        } else {
            prop_assert!(m2_witness_pair(&g).is_none());
            for v in i.complement().iter() {
                prop_assert!(g.neighbors(v).intersection_len(i) <= 1);
            }
        }
    }
}

#[test]
fn exact_solver_matches_brute_force_through_6() {
    for n in 1..=6 {
        for g in enumerate_graphs(n).unwrap() {
            for r in 1..=3 {
                assert_eq!(min_contagious(&g, r).unwrap().m, brute_force_m(&g, r), "{g:?} r = {r}");
            }
        }
    }
}

#[test]
fn witness_is_least_optimal_seed() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..150 {
        let n = rng.gen_range(2..=9);
        let mut g = Graph::empty(n);
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(0.35) {
                    g.add_edge(i, j);
                }
            }
        }
        let r = rng.gen_range(1..=3);
        let res = min_contagious(&g, r).unwrap();
        let least = (0u64..1 << n)
            .filter(|c| c.count_ones() as usize == res.m)
            .find(|&c| is_contagious(&g, &VertexSet::from_mask(n, c), r).unwrap())
            .unwrap();
        assert_eq!(res.witness.to_mask(), least);
    }
}

#[test]
fn components_identity_random() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..500 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.0..0.5);
        let mut g = Graph::empty(n);
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(p) {
                    g.add_edge(i, j);
                }
            }
        }
        assert_eq!(min_contagious(&g, 1).unwrap().m, g.components().len());
    }
}

#[test]
fn greedy_against_exact_on_200_graphs() {
    let mut rng = StdRng::seed_from_u64(29);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let mut g = Graph::empty(n);
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(0.3) {
                    g.add_edge(i, j);
                }
            }
        }
        let greedy = greedy_upper_bound(&g, 2).unwrap();
        assert!(is_contagious(&g, &greedy, 2).unwrap());
        assert!(greedy.len() >= min_contagious(&g, 2).unwrap().m);
    }
}

#[test]
fn witness_pair_agrees_with_exact() {
    for n in 2..=7 {
        for g in enumerate_graphs(n).unwrap() {
            let pair = m2_witness_pair(&g);
            assert_eq!(pair.is_some(), min_contagious(&g, 2).unwrap().m == 2, "{g:?}");
            if let Some((a, b)) = pair {
                assert!(is_contagious(&g, &VertexSet::from_vertices(n, [a, b]), 2).unwrap());
            }
        }
    }
}
