use std::sync::Arc;

use super::{code_bits, code_guard, Fidelity, NamedReduction, Problem};
use crate::error::{Error, Result};
use crate::fop::{block_var, FirstOrderQuery};
use crate::logic::{Formula, Term};
use crate::problems::{decode_graph, encode_graph, Graph};
use crate::structure::Vocabulary;

/// The least `k` with `2k > n`.
pub fn padding_copies(n: usize) -> usize {
    n / 2 + 1
}

/// `k` disjoint copies of `g`, copy `c` holding nodes `c·m … c·m + m − 1`.
pub fn pad_graph(g: &Graph, n: usize) -> Graph {
    let m = g.node_count();
    let k = padding_copies(n);
    let mut out = Graph::empty(k * m);
    for c in 0..k {
        for &(u, v) in g.edges() {
            out.add_edge(c * m + u, c * m + v).expect("copies keep edges loop-free");
        }
    }
    out
}

/// `ρ_n`: arity `⌈log₂ k⌉ + 1`, the leading coordinates naming one of `k`
/// copies and the last one a node. On a one-node graph only copy 0 exists,
/// since every tuple is `(0, …, 0)`.
pub fn padding_query(n: usize) -> Result<FirstOrderQuery> {
    if n < 2 {
        return Err(Error::SizeTooSmall { what: "padding threshold".into(), required: 2, found: n });
    }
    let k = padding_copies(n);
    let bits = code_bits(k);
    let theta = |block, c| Formula::And(code_guard(block, bits, c));
    let universe = Formula::Or((0..k).map(|c| theta(0, c)).collect());
    let node = |block| Term::var(block_var(block, bits));
    let edges = Formula::Or(
        (0..k)
            .map(|c| {
                let mut parts = code_guard(0, bits, c);
                parts.extend(code_guard(1, bits, c));
                parts.push(Formula::rel("E", [node(0), node(1)]));
                Formula::And(parts)
            })
            .collect(),
    );
    let g = Arc::new(Vocabulary::sigma_g());
    FirstOrderQuery::new(format!("pad-2cc:{n}"), g.clone(), g, bits + 1, universe, vec![("E".into(), edges)], vec![])
}

pub fn padding_reduction(n: usize) -> Result<NamedReduction> {
    let query = padding_query(n)?;
    Ok(NamedReduction {
        name: format!("pad-2cc:{n}"),
        source: Problem::TwoCc,
        target: Problem::TwoCcN(n),
        query,
        fidelity: Fidelity::Corrected,
        direct: Some(Arc::new(move |a| encode_graph(&pad_graph(&decode_graph(a)?, n)))),
    })
}

/// `∃x₁…x_ℓ ∀y (⋀ xᵢ ≠ xⱼ ∧ ⋁ y = xᵢ)`: the universe has exactly `ℓ` elements.
pub fn cardinality_sentence(l: usize) -> Result<Formula> {
    if l == 0 {
        return Err(Error::SizeTooSmall { what: "cardinality".into(), required: 1, found: 0 });
    }
    let x = |i: usize| Term::var(format!("x{}", i + 1));
    let mut distinct = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            distinct.push(Formula::not(Formula::eq(x(i), x(j))));
        }
    }
    let covered = Formula::Or((0..l).map(|i| Formula::eq(Term::var("y"), x(i))).collect());
    let body = Formula::forall("y", Formula::And(vec![Formula::And(distinct), covered]));
    Ok((0..l).rev().fold(body, |f, i| Formula::exists(&format!("x{}", i + 1), f)))
}
