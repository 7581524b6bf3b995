mod common;

use common::*;
use hypernest_core::crn::{parse_crn, Crn};
use hypernest_core::matrices::{
    directed_incidence_signed, directed_incidence_split, incidence, stoichiometric_complexes,
    stoichiometric_reactions_signed,
};
use hypernest_core::{EdgePayload, Hypergraph};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Hypergraph> {
    (any::<u64>(), 1usize..=8, 0usize..40)
        .prop_map(|(seed, n, steps)| random_hypergraph(seed, n, steps))
}

/// Counts directed edges in the directed-pair tree rooted at `e`.
fn directed_in_tree(g: &Hypergraph, e: hypernest_core::EdgeId) -> usize {
    match g.edge(e).unwrap().payload {
        EdgePayload::Directed { source, target } => {
            1 + directed_in_tree(g, source) + directed_in_tree(g, target)
        }
        _ => 0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_graphs_stay_acyclic(g in arb_graph()) {
        prop_assert!(!oracle_has_cycle(&g));
        prop_assert!(g.find_cycle().is_none());
        prop_assert!(g.validate().is_ok());
    }

    #[test]
    fn classification_matches_scan(g in arb_graph()) {
        let kind = g.classify();
        prop_assert_eq!(kind.nested, g.edges().any(|e| e.is_nesting()));
        prop_assert_eq!(kind.directed, g.edges().any(|e| e.is_directed()));
    }

    #[test]
    fn reduce_is_idempotent(g in arb_graph(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.size() > 0);
        let ids: Vec<_> = g.edge_ids().collect();
        let x = ids[pick.index(ids.len())];
        let mut once = g.clone();
        let r1 = once.reduce_singleton(x).unwrap();
        let mut twice = once.clone();
        let r2 = twice.reduce_singleton(r1).unwrap();
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn reduce_preserves_leaf_sets_of_survivors(g in arb_graph(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.size() > 0);
        let ids: Vec<_> = g.edge_ids().collect();
        let x = ids[pick.index(ids.len())];
        let before = g.leaf_node_sets();
        let mut h = g.clone();
        let r = h.reduce_singleton(x).unwrap();
        prop_assert_eq!(&h.leaf_node_set(r).unwrap(), &before[&x]);
        for (e, set) in h.leaf_node_sets() {
            prop_assert_eq!(&set, &before[&e]);
        }
    }

    #[test]
    fn expansion_length(g in arb_graph()) {
        for e in g.edges().filter(|e| e.is_directed()) {
            let seq = g.expand_directed(e.id).unwrap();
            prop_assert_eq!(seq.len(), directed_in_tree(&g, e.id) + 1);
            prop_assert!(seq.iter().all(|x| !g.edge(*x).unwrap().is_directed()));
        }
    }

    #[test]
    fn leaf_sets_are_monotone(g in arb_graph()) {
        let leaves = g.leaf_node_sets();
        for e in g.edges() {
            if let EdgePayload::Nesting(m) = &e.payload {
                for f in m {
                    prop_assert!(leaves[f].is_subset(&leaves[&e.id]));
                    prop_assert!(g.is_nested_in(*f, e.id).unwrap());
                }
            }
        }
    }

    #[test]
    fn leaf_sets_and_incidence_match_oracle(g in arb_graph()) {
        prop_assert_eq!(g.leaf_node_sets(), oracle_leaf_sets(&g));
        prop_assert_eq!(matrix_rows(&incidence(&g)), oracle_incidence(&g));
    }

    #[test]
    fn permutation_invariance(g in arb_graph(), seed in any::<u64>()) {
        let p = random_permutation(seed, g.order());
        let pg = g.permute_nodes(&p).unwrap();
        prop_assert_eq!(pg.classify(), g.classify());
        prop_assert_eq!(order_multiset(&pg), order_multiset(&g));
        // H(pi G)[pi(v)] = H(G)[v]
        let h = incidence(&g);
        let ph = incidence(&pg);
        prop_assert_eq!(&h.cols, &ph.cols);
        for v in g.node_ids() {
            prop_assert_eq!(ph.row(p[v.index()].index()), h.row(v.index()));
        }
        let s = directed_incidence_signed(&g);
        let ps = directed_incidence_signed(&pg);
        for v in g.node_ids() {
            prop_assert_eq!(ps.row(p[v.index()].index()), s.row(v.index()));
        }
    }

    #[test]
    fn signed_is_target_minus_source(g in arb_graph()) {
        let split = directed_incidence_split(&g);
        let signed = directed_incidence_signed(&g);
        for r in 0..signed.n_rows() {
            for c in 0..signed.n_cols() {
                prop_assert_eq!(signed.get(r, c), split.target.get(r, c) - split.source.get(r, c));
            }
        }
    }

    #[test]
    fn simple_graph_sums(seed in any::<u64>(), n in 1usize..=8, m in 0usize..12) {
        use rand::{Rng, SeedableRng, seq::SliceRandom};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut g = Hypergraph::new(0, 0);
        let nodes: Vec<_> = (0..n).map(|_| g.add_node("", vec![]).unwrap()).collect();
        for _ in 0..m {
            let k = rng.gen_range(1..=n);
            g.add_simple_edge(nodes.choose_multiple(&mut rng, k).copied(), "", vec![]).unwrap();
        }
        let h = incidence(&g);
        let orders: Vec<i64> = g.edges().map(|e| e.order() as i64).collect();
        prop_assert_eq!(h.column_sums(), orders);
        let degrees: Vec<i64> = g
            .node_ids()
            .map(|v| g.edges().filter(|e| matches!(&e.payload, EdgePayload::Simple(s) if s.contains(&v))).count() as i64)
            .collect();
        prop_assert_eq!(h.row_sums(), degrees);
    }

    #[test]
    fn matrices_are_deterministic(g in arb_graph()) {
        prop_assert_eq!(incidence(&g), incidence(&g.clone()));
        prop_assert_eq!(directed_incidence_split(&g), directed_incidence_split(&g.clone()));
    }

    #[test]
    fn crn_render_round_trip(crn in arb_crn()) {
        let text = crn.render();
        let again = parse_crn(&text).unwrap();
        prop_assert_eq!(&again, &crn);
        prop_assert_eq!(again.render(), text);
    }

    #[test]
    fn reaction_columns_are_complex_differences(crn in arb_crn()) {
        let s = stoichiometric_complexes(&crn);
        let n = stoichiometric_reactions_signed(&crn);
        for (c, r) in crn.reactions().iter().enumerate() {
            // S * (chi_product - chi_reactant)
            let expected: Vec<i64> = (0..s.n_rows())
                .map(|row| s.get(row, r.product.index()) - s.get(row, r.reactant.index()))
                .collect();
            prop_assert_eq!(n.column(c), expected);
        }
    }

    #[test]
    fn reversible_lines_give_mutual_reverses(crn in arb_crn()) {
        for r in crn.reactions().iter().filter(|r| r.id.ends_with('+')) {
            let stem = &r.id[..r.id.len() - 1];
            let rev = crn.reaction(&format!("{stem}-")).unwrap();
            prop_assert_eq!((r.reactant, r.product), (rev.product, rev.reactant));
        }
    }

    #[test]
    fn reaction_hypergraph_is_directed_unnested(crn in arb_crn()) {
        let g = hypernest_core::crn::to_reaction_hypergraph(&crn).unwrap();
        let kind = g.classify();
        prop_assert!(kind.directed || crn.reactions().is_empty());
        prop_assert!(!kind.nested);
    }
}

/// Random valid reaction lists, parsed so that the network is canonical.
fn arb_crn() -> impl Strategy<Value = Crn> {
    let species = prop::sample::select(vec!["A", "B", "C", "D", "x1", "_y"]);
    let complex = prop::collection::btree_map(species, 1u32..4, 1..3).prop_map(|m| {
        m.into_iter()
            .map(|(s, c)| {
                if c == 1 {
                    s.to_string()
                } else {
                    format!("{c}{s}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    });
    let line = (complex.clone(), complex, any::<bool>());
    prop::collection::vec(line, 0..6).prop_map(|lines| {
        let mut text = String::new();
        for (i, (l, r, rev)) in lines.into_iter().enumerate() {
            if l == r {
                continue;
            }
            let arrow = if rev { "<->" } else { "->" };
            text.push_str(&format!("q{i}: {l} {arrow} {r}\n"));
        }
        parse_crn(&text).unwrap()
    })
}
