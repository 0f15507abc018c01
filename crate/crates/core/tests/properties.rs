use hzlab::bipartite::{equitable_color, max_bihole};
use hzlab::chain::{self, Chain, ChainSpec};
use hzlab::competition::{maximal_cliques, min_edge_clique_cover};
use hzlab::cover::{exterior_dimension, exterior_dimension_brute, max_disjoint_subgraph, RelationGraph};
use hzlab::graph::canonical_code;
use hzlab::graph::io::{from_graph6, from_json, to_graph6, to_json};
use hzlab::invariants::{forgotten, hyper_zagreb};
use hzlab::spectral::{eigenvalues, s_order_compare, spectral_moments, SRelation};
use hzlab::{Bipartition, Graph};
use proptest::prelude::*;

fn graph_of(n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(graph_of)
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn isomorphic_brute(a: &Graph, b: &Graph) -> bool {
    fn search(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: u64) -> bool {
        let i = map.len();
        if i == a.n() {
            return true;
        }
        for j in 0..b.n() {
            if used >> j & 1 == 1 || a.degree(i) != b.degree(j) {
                continue;
            }
            if (0..i).all(|k| a.has_edge(i, k) == b.has_edge(j, map[k])) {
                map.push(j);
                if search(a, b, map, used | 1 << j) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    a.n() == b.n() && a.m() == b.m() && search(a, b, &mut Vec::new(), 0)
}

fn triangles(g: &Graph) -> u64 {
    let n = g.n();
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                t += (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) as u64;
            }
        }
    }
    t
}

fn relation() -> impl Strategy<Value = RelationGraph> {
    (1..=5usize, 1..=5usize).prop_flat_map(|(p, q)| {
        proptest::collection::vec(0..(1u64 << q), p).prop_map(move |rows| RelationGraph::new(p, q, rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn handshake(g in graph(12)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
        prop_assert_eq!(g.edges().len(), g.m());
    }

    #[test]
    fn encodings_round_trip(g in graph(12)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(from_json(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_code_ignores_labels((g, perm) in graph(9).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&g.relabel(&perm)).unwrap());
    }

    #[test]
    fn canonical_code_matches_brute_isomorphism(a in graph(7), b in graph(7)) {
        let same = canonical_code(&a).unwrap() == canonical_code(&b).unwrap();
        prop_assert_eq!(same, isomorphic_brute(&a, &b));
    }

    #[test]
    fn low_moments_count_edges_and_triangles(g in graph(10)) {
        let m = spectral_moments(&g, 3.min(2 * g.n())).unwrap();
        prop_assert_eq!(m.get(0).clone(), g.n().into());
        if g.n() >= 2 {
            prop_assert_eq!(m.get(2).clone(), (2 * g.m()).into());
            prop_assert_eq!(m.get(3).clone(), (6 * triangles(&g)).into());
        }
    }

    #[test]
    fn moments_are_eigenvalue_power_sums(g in graph(8)) {
        let n = g.n();
        let m = spectral_moments(&g, n).unwrap();
        let ev = eigenvalues(&g).unwrap();
        for k in 0..=n {
            let s: f64 = ev.iter().map(|x| x.powi(k as i32)).sum();
            let exact: f64 = m.get(k).to_string().parse().unwrap();
            prop_assert!((s - exact).abs() <= 1e-6 * exact.max(1.0), "k={} {} vs {}", k, s, exact);
        }
    }

    #[test]
    fn s_order_is_antisymmetric((a, b) in (1..=8usize).prop_flat_map(|n| (graph_of(n), graph_of(n)))) {
        let ab = s_order_compare(&a, &b).unwrap();
        let ba = s_order_compare(&b, &a).unwrap();
        let flipped = match ab.relation {
            SRelation::Precedes => SRelation::Succeeds,
            SRelation::Succeeds => SRelation::Precedes,
            SRelation::EqualS => SRelation::EqualS,
        };
        prop_assert_eq!(ba.relation, flipped);
        prop_assert_eq!(ab.first_divergence, ba.first_divergence);
    }

    #[test]
    fn hyper_zagreb_decomposes(g in graph(12)) {
        let (hm1, hm2) = hyper_zagreb(&g);
        let m2: u64 = g.edges().iter().map(|&(u, v)| (g.degree(u) * g.degree(v)) as u64).sum();
        let sq: u64 = g.edges().iter().map(|&(u, v)| ((g.degree(u) * g.degree(v)) as u64).pow(2)).sum();
        // (d_u + d_v)² summed over edges is F + 2·M2.
        prop_assert_eq!(hm1, forgotten(&g) + 2 * m2);
        prop_assert_eq!(hm2, sq);
    }

    #[test]
    fn equitable_colorings_are_valid(g in graph(9), k in 1..=5usize) {
        if let Some(c) = equitable_color(&g, k).unwrap() {
            prop_assert!(c.is_valid_for(&g));
        }
    }

    #[test]
    fn clique_cover_covers(g in graph(7)) {
        let c = min_edge_clique_cover(&g).unwrap();
        prop_assert!(c.covers(&g));
        prop_assert!(c.len() <= g.m());
        for q in maximal_cliques(&g, g.vertex_mask()) {
            prop_assert!(hzlab::graph::bits(q).all(|v| g.neighbors(v) & q == q & !(1 << v)));
        }
    }

    #[test]
    fn exterior_dimension_duality(k in relation()) {
        let (e, pair) = exterior_dimension(&k).unwrap();
        prop_assert_eq!(max_disjoint_subgraph(&k).len(), e);
        prop_assert_eq!(exterior_dimension_brute(&k), e);
        prop_assert!(k.is_covered_by(pair.a, pair.b));
        prop_assert_eq!(pair.weight(), e);
    }

    #[test]
    fn biholes_are_empty(rows in proptest::collection::vec(0u64..64, 6)) {
        let n = rows.len();
        let edges: Vec<(usize, usize)> = rows.iter().enumerate()
            .flat_map(|(i, &r)| hzlab::graph::bits(r).map(move |j| (i, n + j))).collect();
        let g = Graph::new(2 * n, edges).unwrap();
        let low = (1u64 << n) - 1;
        let h = max_bihole(&g, &Bipartition::from_masks(2 * n, low, low << n)).unwrap();
        prop_assert_eq!(h.a.len(), h.k);
        prop_assert_eq!(h.b.len(), h.k);
        for &a in &h.a {
            for &b in &h.b {
                prop_assert!(!g.has_edge(a, b));
            }
        }
    }
}

fn margin_spec() -> impl Strategy<Value = ChainSpec> {
    (2..=4usize, 2..=4usize)
        .prop_flat_map(|(m, n)| proptest::collection::vec(0..(1u64 << n), m).prop_map(move |rows| (n, rows)))
        .prop_map(|(n, rows)| {
            let r: Vec<usize> = rows.iter().map(|x| x.count_ones() as usize).collect();
            let c: Vec<usize> = (0..n).map(|j| rows.iter().filter(|x| *x >> j & 1 == 1).count()).collect();
            ChainSpec::Margins { rows: r, cols: c }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn chain_steps_keep_constraints(spec in margin_spec(), seed in any::<u64>()) {
        let c = Chain::new(spec).unwrap();
        let x0 = c.initial_state();
        prop_assert!(c.is_valid(&x0));
        for x in c.sample(&x0, 200, 1, seed) {
            prop_assert!(c.is_valid(&x));
        }
        prop_assert_eq!(c.step_seeded(&x0, seed), c.step_seeded(&x0, seed));
    }

    #[test]
    fn tournament_steps_keep_scores(seed in any::<u64>(), which in 0..4usize) {
        let scores = [vec![1, 1, 1], vec![0, 2, 2, 2], vec![1, 1, 2, 2], vec![1, 2, 2, 2, 3]][which].clone();
        let c = Chain::new(ChainSpec::Scores(scores)).unwrap();
        for x in c.sample(&c.initial_state(), 200, 1, seed) {
            prop_assert!(c.is_valid(&x));
        }
    }

    #[test]
    fn tv_curve_is_monotone_and_stationary_is_uniform(spec in margin_spec()) {
        let c = Chain::new(spec).unwrap();
        let states = c.enumerate_states().unwrap();
        let p = chain::transitions(&c, &states).unwrap();
        prop_assert!(p.is_symmetric());
        prop_assert!(p.is_row_stochastic());
        prop_assert!(p.uniform_stationary());
        prop_assert!(p.is_connected());
        let curve = chain::tv_curve(&p, 0.05, 10_000).unwrap();
        for w in curve.windows(2) {
            prop_assert!(w[1].as_f64() <= w[0].as_f64() + 1e-12);
        }
        prop_assert!(curve.last().unwrap().as_f64() <= 0.05);
    }
}
