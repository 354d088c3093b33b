use std::sync::Arc;

use super::{code_guard, Fidelity, NamedReduction, Problem};
use crate::error::Result;
use crate::fop::{block_var, FirstOrderQuery};
use crate::logic::{Formula, Term};
use crate::problems::{decode_dnf, encode_graph, Graph, Qbf2Dnf};
use crate::structure::{NumericRelation, Vocabulary};

/// Node kinds of the clique-coloring graph, numbered by their three-bit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    /// `x`
    Pos(usize),
    /// `x′`
    PosPrime(usize),
    /// `x̄′`
    NegPrime(usize),
    /// `x̄`
    Neg(usize),
    /// `p`
    Imp(usize),
    /// `p′`
    ImpPrime(usize),
}

impl Node {
    /// Code in `1..=6` and the variable or implicant index.
    pub fn code(self) -> (usize, usize) {
        match self {
            Node::Pos(v) => (1, v),
            Node::PosPrime(v) => (2, v),
            Node::NegPrime(v) => (3, v),
            Node::Neg(v) => (4, v),
            Node::Imp(v) => (5, v),
            Node::ImpPrime(v) => (6, v),
        }
    }

    /// Position in the lexicographic order of the tuples `(i, j, k, v)`.
    pub fn index(self, n: usize) -> usize {
        let (code, v) = self.code();
        (code - 1) * n + v
    }
}

/// The graph `G_φ` on `6n` nodes, `n = max(vars, implicants)`, numbered as
/// the query numbers them. Variable `x` joins implicant `p` unless `¬x`
/// occurs in `p`, and `x̄` joins `p` unless `x` occurs in `p`.
pub fn marx_graph(inst: &Qbf2Dnf) -> Graph {
    let inst = inst.normalized(0);
    let n = inst.vars;
    let mut g = Graph::empty(6 * n);
    let mut edge = |a: Node, b: Node| g.add_edge(a.index(n), b.index(n)).expect("distinct nodes");
    for x in 0..n {
        edge(Node::Pos(x), Node::PosPrime(x));
        edge(Node::Neg(x), Node::NegPrime(x));
        if inst.existential.contains(&x) {
            edge(Node::PosPrime(x), Node::NegPrime(x));
        } else {
            edge(Node::PosPrime(x), Node::ImpPrime(n - 1));
            edge(Node::NegPrime(x), Node::ImpPrime(n - 1));
        }
        for y in 0..n {
            if x != y {
                edge(Node::Pos(x), Node::Pos(y));
                edge(Node::Neg(x), Node::Neg(y));
                edge(Node::Pos(x), Node::Neg(y));
            }
        }
    }
    for (p, imp) in inst.implicants.iter().enumerate() {
        edge(Node::Imp(p), Node::ImpPrime(p));
        if p + 1 < n {
            edge(Node::ImpPrime(p), Node::Imp(p + 1));
        }
        for x in 0..n {
            if !imp.neg.contains(&x) {
                edge(Node::Pos(x), Node::Imp(p));
            }
            if !imp.pos.contains(&x) {
                edge(Node::Neg(x), Node::Imp(p));
            }
        }
    }
    g
}

/// One edge disjunct: node codes of both endpoints, extra numeric guard, and
/// an optional source literal.
struct Rule {
    from: usize,
    to: usize,
    guard: Vec<Formula>,
    literal: Option<Formula>,
}

impl Rule {
    fn formula(&self) -> Formula {
        let mut parts = code_guard(0, 3, self.from);
        parts.extend(code_guard(1, 3, self.to));
        parts.extend(self.guard.iter().cloned());
        parts.extend(self.literal.clone());
        Formula::And(parts)
    }
}

/// `f` with the two endpoint blocks exchanged.
fn mirrored(f: &Formula) -> Formula {
    let swap: Vec<(String, String)> = (0..4).map(|i| (block_var(0, i), block_var(1, i))).collect();
    f.rename_free(&|v| {
        swap.iter().find_map(|(a, b)| {
            if v == a {
                Some(Term::var(b.clone()))
            } else if v == b {
                Some(Term::var(a.clone()))
            } else {
                None
            }
        })
    })
}

/// Arity 4 with the tuple `(i, j, k, v)` tagged by `ijk ∈ bin(1..6)`. Every
/// printed edge formula is emitted in both orientations so that `E` is
/// symmetric. `Q` and `M` take the implicant first, as in `σ_dnf`.
pub fn qsat2_to_2cc() -> Result<NamedReduction> {
    // x4 is the literal endpoint and y4 the implicant endpoint.
    let x = || Term::var(block_var(0, 3));
    let p = || Term::var(block_var(1, 3));
    let same = || Formula::eq(x(), p());
    let rule = |from, to, guard: Vec<Formula>, literal: Option<Formula>| Rule { from, to, guard, literal };
    let rules = vec![
        rule(1, 2, vec![same()], None),
        rule(3, 4, vec![same()], None),
        rule(2, 3, vec![same()], Some(Formula::rel("E", [x()]))),
        rule(5, 6, vec![same()], None),
        rule(6, 5, vec![Formula::num(NumericRelation::Suc, [x(), p()])], None),
        rule(2, 6, vec![Formula::eq(p(), Term::Max)], Some(Formula::not(Formula::rel("E", [x()])))),
        rule(3, 6, vec![Formula::eq(p(), Term::Max)], Some(Formula::not(Formula::rel("E", [x()])))),
        rule(1, 1, vec![Formula::not(same())], None),
        rule(4, 4, vec![Formula::not(same())], None),
        rule(1, 4, vec![Formula::not(same())], None),
        rule(1, 5, vec![], Some(Formula::not(Formula::rel("M", [p(), x()])))),
        rule(4, 5, vec![], Some(Formula::not(Formula::rel("Q", [p(), x()])))),
    ];
    let mut disjuncts = Vec::new();
    for r in &rules {
        let forward = r.formula();
        let backward = (r.from != r.to).then(|| mirrored(&forward));
        disjuncts.push(forward);
        disjuncts.extend(backward);
    }
    let universe = Formula::Or((1..=6).map(|c| Formula::And(code_guard(0, 3, c))).collect());
    let query = FirstOrderQuery::new(
        "qsat2-2cc",
        Arc::new(Vocabulary::sigma_dnf()),
        Arc::new(Vocabulary::sigma_g()),
        4,
        universe,
        vec![("E".into(), Formula::Or(disjuncts))],
        vec![],
    )?;
    Ok(NamedReduction {
        name: "qsat2-2cc".into(),
        source: Problem::Qsat2,
        target: Problem::TwoCc,
        query,
        fidelity: Fidelity::Corrected,
        direct: Some(Arc::new(|a| encode_graph(&marx_graph(&decode_dnf(a)?)))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::problems::{decide_qsat2, two_cc_witness, LiteralSet};
    use crate::structure::StructureSpace;

    pub(crate) fn sample_dnf() -> Qbf2Dnf {
        let imps = vec![
            LiteralSet::new([0], [1]),
            LiteralSet::new([0, 1, 2], []),
            LiteralSet::new([], [0, 2]),
            LiteralSet::new([1], [2]),
        ];
        Qbf2Dnf::new(4, [0, 1], imps).unwrap()
    }

    /// Hand-drawn reference edges, by label, plus the literal layer.
    fn golden() -> Graph {
        use Node::*;
        let mut drawn: Vec<(Node, Node)> = vec![
            (Pos(0), PosPrime(0)),
            (PosPrime(0), NegPrime(0)),
            (NegPrime(0), Neg(0)),
            (Pos(1), PosPrime(1)),
            (PosPrime(1), NegPrime(1)),
            (NegPrime(1), Neg(1)),
            (Pos(2), PosPrime(2)),
            (NegPrime(2), Neg(2)),
            (Pos(3), PosPrime(3)),
            (NegPrime(3), Neg(3)),
            (ImpPrime(3), PosPrime(2)),
            (NegPrime(2), ImpPrime(3)),
            (ImpPrime(3), PosPrime(3)),
            (NegPrime(3), ImpPrime(3)),
            (Imp(0), ImpPrime(0)),
            (ImpPrime(0), Imp(1)),
            (Imp(1), ImpPrime(1)),
            (ImpPrime(1), Imp(2)),
            (Imp(2), ImpPrime(2)),
            (ImpPrime(2), Imp(3)),
            (Imp(3), ImpPrime(3)),
        ];
        let literal_edges = [
            (Pos(0), 0), (Neg(1), 0), (Pos(2), 0), (Neg(2), 0), (Pos(3), 0), (Neg(3), 0),
            (Pos(0), 1), (Pos(1), 1), (Pos(2), 1), (Pos(3), 1), (Neg(3), 1),
            (Neg(0), 2), (Pos(1), 2), (Neg(1), 2), (Neg(2), 2), (Pos(3), 2), (Neg(3), 2),
            (Pos(0), 3), (Neg(0), 3), (Pos(1), 3), (Neg(2), 3), (Pos(3), 3), (Neg(3), 3),
        ];
        drawn.extend(literal_edges.iter().map(|&(l, p)| (l, Imp(p))));
        let mut g = Graph::empty(24);
        for (a, b) in drawn {
            g.add_edge(a.index(4), b.index(4)).unwrap();
        }
        // The dashed region: every pair of literal nodes except x, x̄.
        let literals: Vec<Node> = (0..4).flat_map(|v| [Pos(v), Neg(v)]).collect();
        for (i, &a) in literals.iter().enumerate() {
            for &b in &literals[i + 1..] {
                if a.code().1 != b.code().1 {
                    g.add_edge(a.index(4), b.index(4)).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn sample_dnf_graph_matches_golden() {
        let g = marx_graph(&sample_dnf());
        assert_eq!(g.node_count(), 24);
        assert_eq!(g, golden());
        let r = qsat2_to_2cc().unwrap();
        let a = crate::problems::encode_dnf(&sample_dnf()).unwrap();
        assert_eq!(r.apply(&a).unwrap(), encode_graph(&golden()).unwrap());
    }

    #[test]
    fn sample_dnf_membership() {
        assert!(decide_qsat2(&sample_dnf()).unwrap());
        let budget = Budget::default().with_max_color_nodes(24);
        assert!(two_cc_witness(&marx_graph(&sample_dnf()), &budget).unwrap().is_some());
    }

    #[test]
    fn query_equals_direct_at_size_two() {
        let r = qsat2_to_2cc().unwrap();
        let space = StructureSpace::new(Arc::new(Vocabulary::sigma_dnf()), 2, &Budget::default()).unwrap();
        let prepared = r.query.prepare(2).unwrap();
        for i in 0..space.len() {
            let a = space.get(i);
            assert_eq!(prepared.apply(&a).unwrap(), r.apply_direct(&a).unwrap().unwrap(), "#{i}");
        }
    }

    #[test]
    fn is_projection() {
        let report = qsat2_to_2cc().unwrap().validate(8);
        assert!(report.is_projection, "{:?}", report.violations);
    }
}
