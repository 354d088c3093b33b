//! The acceptance suite: one line per criterion, then a single verdict.
//!
//! Every sweep is exhaustive, so the only tolerances are the pinned time
//! limits and a counterexample allowance of zero.

#![allow(clippy::absurd_extreme_comparisons)]

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use fopkit::logic::{eval_fo, eval_so, eval_so2, parse_formula, validate_normal_form, Formula, Quantifier};
use fopkit::par::Exec;
use fopkit::problems::sentences::{psi1, psi2, two_cc_sentence};
use fopkit::problems::{
    decide_2cc, decide_2cc_n_within, decide_qsat2, decode_dnf, decode_graph, decode_vcsat, encode_dnf, encode_graph,
    two_cc_witness, vcsat_witness, Graph, LiteralSet, Qbf2Cnf, Qbf2Dnf,
};
use fopkit::reductions::{
    compile_sentence, marx_graph, padding_copies, padding_reduction, qsat2_to_2cc, qsat2_to_qunsat2, qsat2_to_vcsat,
    qunsat2_to_unique, shipped, toy_sentence, unique_transform, verify_reduction, Fidelity, VerifyOptions,
};
use fopkit::text::{parse_document, Item};
use fopkit::universality::{
    check_universality, is_consistent_graph, witness_2cc, witness_2cc_complement, GraphProblem, LiteralCondition,
    UniversalityOptions,
};
use fopkit::{Budget, Structure, StructureSpace, Vocabulary};

/// Wall-clock limit per criterion, in seconds.
const LIMITS: [u64; 10] = [30, 120, 300, 120, 300, 300, 120, 120, 10, 60];

/// Disagreements tolerated by any sweep.
const MAX_COUNTEREXAMPLES: u64 = 0;

/// Criteria that fail as stated; each must fail with exactly the pinned
/// diagnosis so that a change in behaviour is noticed.
const KNOWN_UNATTAINABLE: [usize; 1] = [3];

/// Marx sweep at sizes 2 and 3: instances, agreements, counterexamples.
const MARX_PINNED: (u64, u64, u64) = (2_098_176, 1_819_318, 278_858);

/// Size-1 instances where the direct construction disagrees, with its verdict.
const MARX_PINNED_SIZE1: [(usize, bool); 5] = [(1, false), (2, true), (4, true), (6, true), (7, true)];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
    /// For known-unattainable criteria: whether the pinned diagnosis was reproduced.
    diagnosis: Option<bool>,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, detail, diagnosis: None }
    }
}

fn space(vocab: Vocabulary, size: usize) -> StructureSpace {
    StructureSpace::new(Arc::new(vocab), size, &Budget::default()).unwrap()
}

/// `f` on every structure of the space, in index order.
fn sweep<T: Send>(sp: &StructureSpace, f: impl Fn(&Structure) -> T + Sync + Send) -> Vec<T> {
    Exec::Parallel.map_range(sp.len(), |i| f(&sp.get(i)))
}

fn count(v: &[bool]) -> u64 {
    v.iter().filter(|&&b| b).count() as u64
}

fn c1_de_morgan() -> Outcome {
    let red = qsat2_to_qunsat2().unwrap();
    let prep = red.query.prepare(2).unwrap();
    let sp = space(Vocabulary::sigma_dnf(), 2);
    let agree = sweep(&sp, |a| common::qsat2(a) == common::qunsat2(&prep.apply(a).unwrap()));
    let lib = verify_reduction(&red, &[2], &VerifyOptions::default()).unwrap();
    let bad = sp.len() - count(&agree);
    let pass = sp.len() == 1024 && bad <= MAX_COUNTEREXAMPLES && lib.passed() && lib.instances == 1024;
    Outcome::new(pass, format!("n=2 instances={} oracle-disagreements={bad} library {}", sp.len(), lib.summary()))
}

fn cnf(vars: usize, clauses: &[(u64, u64)]) -> Qbf2Cnf {
    let sets = clauses.iter().map(|&(p, q)| LiteralSet::new(bits(p), bits(q))).collect();
    Qbf2Cnf::new(vars, [], sets).unwrap()
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).collect()
}

fn masks(set: &LiteralSet) -> (u64, u64) {
    (set.pos.iter().fold(0, |m, &v| m | 1 << v), set.neg.iter().fold(0, |m, &v| m | 1 << v))
}

/// Over every CNF with at most 3 variables and 3 clauses: the transformed
/// formula has exactly one model when the original is unsatisfiable, and at
/// least two otherwise.
fn unique_transform_property() -> (u64, u64) {
    let mut checked = 0;
    let mut bad = 0;
    for vars in 1..=3usize {
        let lits = 1u64 << vars;
        let clause_space: Vec<(u64, u64)> = (0..lits).flat_map(|p| (0..lits).map(move |q| (p, q))).collect();
        for k in 0..=3u32 {
            let total = (clause_space.len() as u64).pow(k);
            for code in 0..total {
                let mut c = code;
                let clauses: Vec<(u64, u64)> = (0..k)
                    .map(|_| {
                        let cl = clause_space[(c % clause_space.len() as u64) as usize];
                        c /= clause_space.len() as u64;
                        cl
                    })
                    .collect();
                let original = common::count_cnf_models(vars, &clauses);
                let t = unique_transform(&cnf(vars, &clauses));
                let tc: Vec<(u64, u64)> = t.clauses.iter().map(masks).collect();
                let models = common::count_cnf_models(t.vars, &tc);
                let ok = t.vars == vars + 1 && if original == 0 { models == 1 } else { models >= 2 };
                checked += 1;
                bad += u64::from(!ok);
            }
        }
    }
    (checked, bad)
}

fn c2_unique() -> Outcome {
    let red = qunsat2_to_unique(Fidelity::Corrected).unwrap();
    let prep = red.query.prepare(2).unwrap();
    let sp = space(Vocabulary::sigma_cnf(), 2);
    let agree = sweep(&sp, |a| common::qunsat2(a) == common::unique_ext(&prep.apply(a).unwrap()));
    let lib = verify_reduction(&red, &[2], &VerifyOptions::default()).unwrap();
    let bad = sp.len() - count(&agree);
    let (checked, transform_bad) = unique_transform_property();
    let pass = bad <= MAX_COUNTEREXAMPLES && transform_bad <= MAX_COUNTEREXAMPLES && lib.passed();
    Outcome::new(
        pass,
        format!("n=2 instances={} oracle-disagreements={bad}; transform cnfs={checked} violations={transform_bad}", sp.len()),
    )
}

fn sample_dnf() -> Qbf2Dnf {
    let imps = vec![
        LiteralSet::new([0], [1]),
        LiteralSet::new([0, 1, 2], []),
        LiteralSet::new([], [0, 2]),
        LiteralSet::new([1], [2]),
    ];
    Qbf2Dnf::new(4, [0, 1], imps).unwrap()
}

fn golden_graph() -> Graph {
    let text = include_str!("data/sample_graph_golden.txt");
    let items = parse_document(text).unwrap();
    match items.as_slice() {
        [Item::Graph { graph, .. }] => graph.clone(),
        other => panic!("golden file holds {} items", other.len()),
    }
}

fn c3_marx() -> Outcome {
    let red = qsat2_to_2cc().unwrap();
    let budget = Budget::default();

    // Sizes 2 and 3 through the query, target decided by the library decider;
    // at size 2 the decider is checked against the brute-force oracle too.
    let mut instances = 0;
    let mut agreements = 0;
    let mut decider_mismatch = 0;
    let mut outside_diagnosis = 0;
    let mut false_positives = 0;
    for size in [2usize, 3] {
        let prep = red.query.prepare(size).unwrap();
        let sp = space(Vocabulary::sigma_dnf(), size);
        let rows = sweep(&sp, |a| {
            let g = decode_graph(&prep.apply(a).unwrap()).unwrap();
            let target = two_cc_witness(&g, &budget).unwrap().is_some();
            let checked = size > 2 || target == common::two_cc(&common::adjacency_of_edges(g.node_count(), g.edges().iter().copied()));
            let source = common::qsat2(a);
            (source, target, checked, common::has_universally_complementary_implicant(a))
        });
        instances += rows.len() as u64;
        for (s, t, checked, diagnosed) in rows {
            decider_mismatch += u64::from(!checked);
            if s == t {
                agreements += 1;
            } else {
                false_positives += u64::from(t);
                outside_diagnosis += u64::from(!diagnosed);
            }
        }
    }

    // Size 1 has no code space for the query; the direct construction is used.
    let sp1 = space(Vocabulary::sigma_dnf(), 1);
    let size1 = sweep(&sp1, |a| {
        let g = marx_graph(&decode_dnf(a).unwrap());
        (common::qsat2(a), common::two_cc(&common::adjacency_of_edges(g.node_count(), g.edges().iter().copied())))
    });
    let size1_agree = size1.iter().filter(|(s, t)| s == t).count() as u64;
    let size1_misses: Vec<(usize, bool)> =
        size1.iter().enumerate().filter(|(_, (s, t))| s != t).map(|(i, &(_, t))| (i, t)).collect();

    let fig = encode_dnf(&sample_dnf()).unwrap();
    let image = decode_graph(&red.query.prepare(4).unwrap().apply(&fig).unwrap()).unwrap();
    let golden_ok = image == golden_graph() && marx_graph(&sample_dnf()) == image;

    let counterexamples = instances - agreements;
    let pass = counterexamples <= MAX_COUNTEREXAMPLES && size1_agree == sp1.len() && golden_ok && decider_mismatch == 0;
    let diagnosis = (instances, agreements, counterexamples) == MARX_PINNED
        && size1_misses == MARX_PINNED_SIZE1
        && false_positives == 0
        && outside_diagnosis == 0
        && decider_mismatch == 0
        && golden_ok;
    Outcome {
        pass,
        detail: format!(
            "n=2,3 instances={instances} agreements={agreements} counterexamples={counterexamples} \
             (false positives {false_positives}, outside complementary-implicant class {outside_diagnosis}); \
             n=1 direct agreements {size1_agree}/{} (misses {size1_misses:?}); golden graph {}",
            sp1.len(),
            if golden_ok { "matches" } else { "differs" }
        ),
        diagnosis: Some(diagnosis),
    }
}

/// `∃S ∀T ∃x₁x₂ ((S(x₁) ∧ ¬T(x₂) ∧ E(x₁,x₂)) ∨ (¬S(x₁) ∧ T(x₁)))` evaluated by hand.
fn toy_oracle(a: &Structure) -> bool {
    let n = a.size();
    (0u64..1 << n).any(|s| {
        (0u64..1 << n).all(|t| {
            (0..n).any(|x1| {
                (0..n).any(|x2| {
                    (s >> x1 & 1 == 1 && t >> x2 & 1 == 0 && a.holds("E", &[x1, x2])) || (s >> x1 & 1 == 0 && t >> x1 & 1 == 1)
                })
            })
        })
    })
}

fn c4_generic() -> Outcome {
    let phi = toy_sentence();
    let red = compile_sentence("toy", &phi, Arc::new(Vocabulary::sigma_g())).unwrap();
    let budget = Budget::default();
    let mut total = 0;
    let mut bad = 0;
    for size in [2usize, 3] {
        let prep = red.query.prepare(size).unwrap();
        let sp = space(Vocabulary::sigma_g(), size);
        let ok = sweep(&sp, |a| {
            let src = eval_so2(a, &phi, &budget).unwrap();
            let image = prep.apply(a).unwrap();
            let tgt = decide_qsat2(&decode_dnf(&image).unwrap()).unwrap();
            let oracle_tgt = size > 2 || common::qsat2(&image) == tgt;
            src == toy_oracle(a) && src == tgt && oracle_tgt
        });
        total += ok.len() as u64;
        bad += ok.len() as u64 - count(&ok);
    }
    Outcome::new(bad <= MAX_COUNTEREXAMPLES && total == 16 + 512, format!("n=2,3 instances={total} counterexamples={bad}"))
}

/// Multisets of `k` literals at size `m`, pairs `u ≤ v`.
fn condition_sequences(m: usize, k: usize) -> Vec<Vec<LiteralCondition>> {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (u..m).map(move |v| (u, v))).collect();
    let lits: Vec<LiteralCondition> = pairs
        .iter()
        .map(|&(u, v)| LiteralCondition::edge(u, v))
        .chain(pairs.iter().map(|&(u, v)| LiteralCondition::non_edge(u, v)))
        .collect();
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|seq: Vec<usize>| {
                let start = seq.last().copied().unwrap_or(0);
                (start..lits.len()).map(move |i| {
                    let mut s = seq.clone();
                    s.push(i);
                    s
                })
            })
            .collect();
    }
    out.into_iter().map(|s| s.into_iter().map(|i| lits[i].clone()).collect()).collect()
}

/// Literal satisfaction read off the edge set, independent of the library.
fn satisfies(g: &Graph, conds: &[LiteralCondition]) -> bool {
    conds.iter().all(|c| {
        let (u, v) = (c.args[0].min(c.args[1]), c.args[0].max(c.args[1]));
        u != v && g.edges().contains(&(u, v)) == c.positive || u == v && !c.positive
    })
}

fn oracle_two_cc(g: &Graph) -> bool {
    common::two_cc(&common::adjacency_of_edges(g.node_count(), g.edges().iter().copied()))
}

fn c5_two_cc_universal() -> Outcome {
    let opts = UniversalityOptions::default();
    let r1 = check_universality(GraphProblem::TwoCc, 3, 1, 5, &opts).unwrap();
    let r2 = check_universality(GraphProblem::TwoCc, 5, 2, 6, &opts).unwrap();
    let mut validated = 0;
    let mut bad = 0;
    for (n, k, m_max) in [(3usize, 1usize, 5usize), (5, 2, 6)] {
        for m in n..=m_max {
            for conds in condition_sequences(m, k) {
                if !is_consistent_graph(&conds, m) {
                    continue;
                }
                let w = witness_2cc(&conds, m).unwrap();
                let red = w.coloring();
                let cliques = common::maximal_cliques(&common::adjacency_of_edges(m, w.graph.edges().iter().copied()));
                let coloring_ok = cliques.iter().all(|&c| {
                    let reds = bits(c).iter().filter(|&&v| red[v]).count();
                    reds > 0 && reds < c.count_ones() as usize
                });
                validated += 1;
                bad += u64::from(!(satisfies(&w.graph, &conds) && coloring_ok && oracle_two_cc(&w.graph)));
            }
        }
    }
    let pass = r1.pass && r2.pass && bad <= MAX_COUNTEREXAMPLES;
    Outcome::new(
        pass,
        format!(
            "(3,1) m<=5 {}; (5,2) m<=6 {}; witnesses re-checked by oracle {validated}, failures {bad}",
            if r1.pass { "pass" } else { "FAIL" },
            if r2.pass { "pass" } else { "FAIL" }
        ),
    )
}

fn c6_complement() -> Outcome {
    let opts = UniversalityOptions::default();
    let r = check_universality(GraphProblem::TwoCcComplement, 7, 1, 8, &opts).unwrap();
    let low = check_universality(GraphProblem::TwoCcComplement, 2, 1, 4, &opts).unwrap();
    let expected_low = Some((2, vec![LiteralCondition::edge(0, 1)]));
    // The oracle agrees that no 2-node graph with the edge is outside 2CC.
    let k2_in_2cc = oracle_two_cc(&Graph::complete(2));
    let mut validated = 0;
    let mut bad = 0;
    for m in 7..=8 {
        for conds in condition_sequences(m, 1) {
            if !is_consistent_graph(&conds, m) {
                continue;
            }
            let g = witness_2cc_complement(&conds, m).unwrap();
            validated += 1;
            bad += u64::from(!(satisfies(&g, &conds) && !oracle_two_cc(&g)));
        }
    }
    let pass = r.pass && !low.pass && low.counterexample == expected_low && k2_in_2cc && bad <= MAX_COUNTEREXAMPLES;
    let low_text = match &low.counterexample {
        Some((m, c)) => format!("m={m} {}", c.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")),
        None => "none".into(),
    };
    Outcome::new(
        pass,
        format!(
            "(7,1) m<=8 {}; from n=2 first counterexample {low_text}; oracle-checked witnesses {validated}, failures {bad}",
            if r.pass { "pass" } else { "FAIL" }
        ),
    )
}

fn c7_padding() -> Outcome {
    let budget = Budget::default();
    let graphs: Vec<(usize, Vec<(usize, usize)>)> =
        (1..=4).flat_map(|n| common::all_graphs(n).into_iter().map(move |e| (n, e))).collect();
    let mut checked = 0;
    let mut bad = 0;
    let mut size_bad = 0;
    for n in 2..=8 {
        let red = padding_reduction(n).unwrap();
        let k = padding_copies(n);
        for (nodes, edges) in &graphs {
            let g = Graph::new(*nodes, edges.iter().copied()).unwrap();
            let image = decode_graph(&red.apply(&encode_graph(&g).unwrap()).unwrap()).unwrap();
            let expected_size = if *nodes >= 2 { k * nodes } else { 1 };
            size_bad += u64::from(image.node_count() != expected_size);
            let src = oracle_two_cc(&g);
            let tgt = decide_2cc_n_within(&image, n, &budget).unwrap();
            let oracle_tgt = image.node_count() > 12 || tgt == (image.node_count() < n || oracle_two_cc(&image));
            checked += 1;
            bad += u64::from(src != tgt || !oracle_tgt);
        }
    }
    Outcome::new(
        bad <= MAX_COUNTEREXAMPLES && size_bad == 0 && graphs.len() == 75,
        format!("n=2..8 graphs={} checks={checked} disagreements={bad} size mismatches={size_bad}", graphs.len()),
    )
}

fn c8_vcsat() -> Outcome {
    let red = qsat2_to_vcsat().unwrap();
    let guard = Formula::And(vec![psi1(), psi2()]);
    let budget = Budget::default();
    let mut total = 0;
    let mut bad = 0;
    let mut guard_bad = 0;
    for size in [2usize, 3] {
        let prep = red.query.prepare(size).unwrap();
        let sp = space(Vocabulary::sigma_dnf(), size);
        let rows = sweep(&sp, |a| {
            let image = prep.apply(a).unwrap();
            let guard_ok = eval_fo(&image, &guard, &[]).unwrap();
            let src = common::qsat2(a);
            let tgt = vcsat_witness(&decode_vcsat(&image).unwrap(), &budget).unwrap().is_some();
            (guard_ok, src == tgt && tgt == common::vcsat(&image) && src == decide_qsat2(&decode_dnf(a).unwrap()).unwrap())
        });
        total += rows.len() as u64;
        guard_bad += rows.iter().filter(|r| !r.0).count() as u64;
        bad += rows.iter().filter(|r| !r.1).count() as u64;
    }
    Outcome::new(
        bad <= MAX_COUNTEREXAMPLES && guard_bad == 0,
        format!("n=2,3 instances={total} counterexamples={bad} images failing psi1&psi2={guard_bad}"),
    )
}

fn c9_validate() -> Outcome {
    let reds = shipped(Fidelity::Corrected).unwrap();
    let mut failing = Vec::new();
    for r in &reds {
        let rep = r.validate(8);
        if !rep.is_projection || !rep.violations.is_empty() {
            failing.push(r.name.clone());
        }
    }
    Outcome::new(failing.is_empty(), format!("{} shipped queries at bound 8, failing: {:?}", reds.len(), failing))
}

fn negate_quantifier(f: &Formula) -> Option<Formula> {
    match f {
        Formula::Quant { q, var, body } => Some(Formula::Not(Box::new(Formula::Quant {
            q: q.dual(),
            var: var.clone(),
            body: Box::new(Formula::not((**body).clone())),
        }))),
        _ => None,
    }
}

/// `¬∀S ∃T ¬φ` for `∃S ∀T φ`, flipping every leading second-order quantifier.
fn so_dual(f: &Formula) -> Formula {
    fn flip(f: &Formula) -> Formula {
        match f {
            Formula::SoQuant { q, name, arity, body } => Formula::SoQuant {
                q: match q {
                    Quantifier::Exists => Quantifier::Forall,
                    Quantifier::Forall => Quantifier::Exists,
                },
                name: name.clone(),
                arity: *arity,
                body: Box::new(flip(body)),
            },
            other => Formula::not(other.clone()),
        }
    }
    Formula::not(flip(f))
}

fn c10_logic() -> Outcome {
    let sg = Vocabulary::sigma_g();
    let fo: Vec<Formula> = [
        "forall x forall y (x != y -> E(x, y))",
        "exists x E(x, x)",
        "forall x exists y (E(x, y) & x != y)",
        "exists x forall y (x = y | E(x, y))",
        "forall x forall y (E(x, y) -> E(y, x))",
        "exists x exists y exists z (E(x, y) & E(y, z) & E(z, x) & x != y & y != z & x != z)",
        "forall x (x <= max & (x = 0 | exists y SUC(y, x)))",
        "exists x (BIT(x, 0) & E(x, 0))",
    ]
    .iter()
    .map(|t| parse_formula(t, &sg).unwrap())
    .collect();
    let so: Vec<Formula> = vec![
        toy_sentence(),
        two_cc_sentence(),
        parse_formula("exists2 S/1 forall2 T/1 exists x ((S(x) & !T(x)) | E(x, x))", &sg).unwrap(),
    ];
    let nf = validate_normal_form(&toy_sentence()).unwrap();
    let rebuilt = nf.to_formula();
    let nf_stable = validate_normal_form(&rebuilt).map(|again| again == nf).unwrap_or(false);

    let budget = Budget::default();
    let mut checks = 0u64;
    let mut bad = 0u64;
    let mut check = |ok: bool| {
        checks += 1;
        bad += u64::from(!ok);
    };
    for size in 1..=3 {
        let sp = space(Vocabulary::sigma_g(), size);
        for i in 0..sp.len() {
            let a = sp.get(i);
            let ev = |f: &Formula| eval_fo(&a, f, &[]).unwrap();
            let values: Vec<bool> = fo.iter().map(ev).collect();
            for (f, &v) in fo.iter().zip(&values) {
                check(ev(&Formula::not(Formula::not(f.clone()))) == v);
                if let Some(d) = negate_quantifier(f) {
                    check(ev(&d) == v);
                }
            }
            for (f, g) in fo.iter().zip(fo.iter().skip(1)) {
                let (vf, vg) = (ev(f), ev(g));
                let nand = Formula::not(Formula::And(vec![f.clone(), g.clone()]));
                let or_not = Formula::Or(vec![Formula::not(f.clone()), Formula::not(g.clone())]);
                let nor = Formula::not(Formula::Or(vec![f.clone(), g.clone()]));
                let and_not = Formula::And(vec![Formula::not(f.clone()), Formula::not(g.clone())]);
                check(ev(&nand) == ev(&or_not) && ev(&nand) == !(vf && vg));
                check(ev(&nor) == ev(&and_not) && ev(&nor) == !(vf || vg));
            }
            for f in &so {
                let v = eval_so2(&a, f, &budget).unwrap();
                check(eval_so(&a, &so_dual(f), &budget).unwrap() == v);
                check(eval_so(&a, f, &budget).unwrap() == v);
            }
            check(eval_so2(&a, &rebuilt, &budget).unwrap() == toy_oracle(&a));
            // The 2CC sentence matches the oracle on simple graphs.
            let simple = (0..size).all(|u| !a.holds("E", &[u, u]) && (0..size).all(|v| a.holds("E", &[u, v]) == a.holds("E", &[v, u])));
            if simple {
                let g = decode_graph(&a).unwrap();
                let v = eval_so2(&a, &two_cc_sentence(), &budget).unwrap();
                check(v == oracle_two_cc(&g) && v == decide_2cc(&g).unwrap());
            }
        }
    }
    Outcome::new(
        bad <= MAX_COUNTEREXAMPLES && nf_stable,
        format!("sigma_g n<=3 checks={checks} failures={bad}; normal form round trip {}", if nf_stable { "stable" } else { "unstable" }),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("De Morgan reduction qsat2 -> qunsat2", c1_de_morgan),
        ("unique-extension reduction", c2_unique),
        ("qsat2 -> 2cc graph reduction", c3_marx),
        ("generic reduction of the toy sentence", c4_generic),
        ("2cc is (3,1)- and (5,2)-universal", c5_two_cc_universal),
        ("complement of 2cc is (7,1)-universal, not from n=2", c6_complement),
        ("padding reductions 2cc -> 2cc_n", c7_padding),
        ("value-cost reduction", c8_vcsat),
        ("shipped queries are projections", c9_validate),
        ("logic battery", c10_logic),
    ];
    let mut problems = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(LIMITS[i]);
        let in_time = elapsed <= limit;
        let pass = out.pass && in_time;
        println!(
            "[{}] C{id} {name}: {} ({:.1}s, limit {}s)",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            LIMITS[i]
        );
        if KNOWN_UNATTAINABLE.contains(&id) {
            match out.diagnosis {
                Some(true) if !out.pass => println!("     C{id} is a known failure; pinned diagnosis reproduced"),
                Some(true) => problems.push(format!("C{id} passed; remove it from KNOWN_UNATTAINABLE")),
                _ => problems.push(format!("C{id} no longer matches its pinned diagnosis")),
            }
            if !in_time {
                problems.push(format!("C{id} exceeded its time limit"));
            }
        } else if !pass {
            problems.push(format!("C{id} failed"));
        }
    }
    assert!(problems.is_empty(), "{problems:?}");
}
