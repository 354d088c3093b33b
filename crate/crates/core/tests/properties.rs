mod common;

use std::sync::Arc;

use proptest::prelude::*;

use fopkit::par::Exec;
use fopkit::problems::{decide_2cc, decode_graph, encode_dnf, encode_graph, Graph, LiteralSet, Qbf2Dnf};
use fopkit::reductions::{marx_graph, pad_graph, padding_copies, qsat2_to_qunsat2, shipped, Fidelity};
use fopkit::text::{parse_document, parse_structure, print_fop_document, print_graph, print_structure, Item};
use fopkit::universality::{coloring_is_valid, is_consistent_graph, witness_2cc, LiteralCondition};
use fopkit::{Structure, StructureSpace, Vocabulary};

fn graph_strategy(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (1..=max_nodes).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, all.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p)).unwrap()
        })
    })
}

fn dnf_strategy(max_vars: usize) -> impl Strategy<Value = Qbf2Dnf> {
    (1..=max_vars).prop_flat_map(|n| {
        let imp = (prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n));
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(imp, 0..=n),
        )
            .prop_map(move |(ex, imps)| {
                let pick = |v: &[bool]| v.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect::<Vec<_>>();
                let sets = imps.iter().map(|(p, q)| LiteralSet::new(pick(p), pick(q))).collect();
                Qbf2Dnf::new(n, pick(&ex), sets).unwrap()
            })
    })
}

fn condition_strategy(m: usize) -> impl Strategy<Value = LiteralCondition> {
    (0..m, 0..m, any::<bool>()).prop_map(|(u, v, pos)| if pos { LiteralCondition::edge(u, v) } else { LiteralCondition::non_edge(u, v) })
}

fn structure_strategy(vocab: Vocabulary, size: usize) -> impl Strategy<Value = Structure> {
    let sp = StructureSpace::new(Arc::new(vocab), size, &Default::default()).unwrap();
    (0..sp.len()).prop_map(move |i| sp.get(i))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn structure_text_round_trips(a in structure_strategy(Vocabulary::tau(), 2)) {
        let text = print_structure("A", &a);
        prop_assert_eq!(parse_structure(&text).unwrap(), a.clone());
        prop_assert_eq!(print_structure("A", &parse_structure(&text).unwrap()), text);
    }

    #[test]
    fn graph_text_round_trips(g in graph_strategy(7)) {
        let text = print_graph("g", &g);
        match parse_document(&text).unwrap().as_slice() {
            [Item::Graph { graph, .. }] => prop_assert_eq!(graph, &g),
            other => prop_assert!(false, "parsed {} items", other.len()),
        }
    }

    #[test]
    fn de_morgan_preserves_membership_beyond_swept_sizes(inst in dnf_strategy(5)) {
        let red = qsat2_to_qunsat2().unwrap();
        let a = encode_dnf(&inst).unwrap();
        let image = red.apply(&a).unwrap();
        prop_assert_eq!(common::qsat2(&a), common::qunsat2(&image));
    }

    #[test]
    fn query_matches_direct_map(inst in dnf_strategy(3)) {
        let a = encode_dnf(&inst).unwrap();
        for red in shipped(Fidelity::Corrected).unwrap() {
            if red.query.source().name() != "sigma_dnf" || a.size() < 2 {
                continue;
            }
            if let Some(direct) = red.apply_direct(&a) {
                prop_assert_eq!(red.apply(&a).unwrap(), direct.unwrap(), "{}", red.name);
            }
        }
    }

    #[test]
    fn marx_graph_shape(inst in dnf_strategy(3)) {
        let g = marx_graph(&inst);
        let n = inst.vars;
        prop_assert_eq!(g.node_count(), 6 * n);
        // Literal nodes x and ¬x are never adjacent.
        for v in 0..n {
            prop_assert!(!g.has_edge(v, 3 * n + v));
        }
        prop_assert!(g.edges().iter().all(|&(u, v)| u < v));
    }

    #[test]
    fn padding_keeps_membership(g in graph_strategy(4), n in 2usize..=8) {
        let padded = pad_graph(&g, n);
        prop_assert_eq!(padded.node_count(), padding_copies(n) * g.node_count());
        prop_assert_eq!(decide_2cc(&padded).unwrap(), decide_2cc(&g).unwrap());
        let adj = common::adjacency_of_edges(g.node_count(), g.edges().iter().copied());
        prop_assert_eq!(decide_2cc(&g).unwrap(), common::two_cc(&adj));
    }

    #[test]
    fn graph_encoding_round_trips(g in graph_strategy(6)) {
        prop_assert_eq!(decode_graph(&encode_graph(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn two_cc_witness_properties(m in 3usize..=8, seed in prop::collection::vec(any::<(u8, u8, bool)>(), 0..=3)) {
        let conds: Vec<LiteralCondition> = seed
            .iter()
            .map(|&(u, v, pos)| {
                let (u, v) = (u as usize % m, v as usize % m);
                if pos { LiteralCondition::edge(u, v) } else { LiteralCondition::non_edge(u, v) }
            })
            .collect();
        prop_assume!(is_consistent_graph(&conds, m) && m > 2 * conds.len());
        let w = witness_2cc(&conds, m).unwrap();
        prop_assert!(conds.iter().all(|c| c.holds_in(&w.graph)));
        prop_assert!(coloring_is_valid(&w.graph, &w.coloring()).unwrap());
        let adj = common::adjacency_of_edges(m, w.graph.edges().iter().copied());
        prop_assert!(common::two_cc(&adj));
    }

    #[test]
    fn consistency_is_closed_under_subsets(conds in prop::collection::vec(condition_strategy(4), 0..=4), drop in 0usize..4) {
        prop_assume!(is_consistent_graph(&conds, 4));
        let mut fewer = conds.clone();
        if !fewer.is_empty() {
            fewer.remove(drop % fewer.len());
        }
        prop_assert!(is_consistent_graph(&fewer, 4));
    }

    #[test]
    fn parallel_equals_sequential(n in 0u64..5000, salt in any::<u64>()) {
        let f = |i: u64| i.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt;
        prop_assert_eq!(Exec::Parallel.map_range(n, f), Exec::Sequential.map_range(n, f));
        let g = |i: u64| (f(i) % 7 == 0).then_some(i);
        prop_assert_eq!(Exec::Parallel.filter_map_range(n, g), Exec::Sequential.filter_map_range(n, g));
        prop_assert_eq!(Exec::Parallel.find_first(n, g), Exec::Sequential.find_first(n, g));
    }
}

#[test]
fn shipped_queries_print_and_reparse() {
    for red in shipped(Fidelity::Corrected).unwrap() {
        let text = print_fop_document(&red.query);
        let items = parse_document(&text).unwrap();
        let Some(Item::Fop(q)) = items.last() else { panic!("{} did not reparse to a query", red.name) };
        assert_eq!(print_fop_document(q), text, "{}", red.name);
    }
}
