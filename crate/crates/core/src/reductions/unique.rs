use std::sync::Arc;

use super::{Fidelity, NamedReduction, Problem};
use crate::error::Result;
use crate::fop::FirstOrderQuery;
use crate::logic::{Formula, Term};
use crate::problems::{decode_cnf, encode_cnf, LiteralSet, Qbf2Cnf};
use crate::structure::Vocabulary;

/// `(z ∨ φ) ∧ ⋀_y (¬z ∨ y)` over the universal `y`, with a tautology
/// `(y ∨ ¬y)` for each existential `y`. The new universal variable `z` gets
/// index `inst.vars`.
pub fn unique_transform(inst: &Qbf2Cnf) -> Qbf2Cnf {
    let z = inst.vars;
    let mut clauses: Vec<LiteralSet> = inst
        .clauses
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.pos.insert(z);
            c
        })
        .collect();
    for y in 0..inst.vars {
        clauses.push(if inst.existential.contains(&y) { LiteralSet::new([y], [y]) } else { LiteralSet::new([y], [z]) });
    }
    Qbf2Cnf { vars: inst.vars + 1, existential: inst.existential.clone(), clauses }
}

/// The instance-level construction on the doubled universe: `(0, y)` is `y`,
/// `(1, j)` is `n + j`, `z` is `(1, 0)` and the other `(1, j)` are unused
/// existential variables. Clause `(0, i)` is clause `i` plus `z`; clause
/// `(1, y)` is the per-variable clause.
fn doubled(inst: &Qbf2Cnf, fidelity: Fidelity) -> Qbf2Cnf {
    let n = inst.vars;
    let z = n;
    let mut existential = inst.existential.clone();
    existential.extend(n + 1..2 * n);
    let mut clauses: Vec<LiteralSet> = inst
        .clauses
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.pos.insert(z);
            c
        })
        .collect();
    clauses.resize(n, LiteralSet::new([z], []));
    for y in 0..n {
        clauses.push(match (inst.existential.contains(&y), fidelity) {
            (false, _) => LiteralSet::new([y], [z]),
            (true, Fidelity::Corrected) => LiteralSet::new([y], [y]),
            (true, Fidelity::Verbatim) => LiteralSet::new([n + y], [n + y]),
        });
    }
    Qbf2Cnf { vars: 2 * n, existential, clauses }
}

fn var(name: &str) -> Term {
    Term::var(name)
}

fn eq(a: &str, v: usize) -> Formula {
    Formula::eq(var(a), Term::Num(v))
}

fn and(parts: Vec<Formula>) -> Formula {
    Formula::And(parts)
}

/// Arity 2 with the universe `x1 = 0 ∨ x1 = 1`. `Verbatim` transcribes the
/// printed `ψ_P` and `ψ_N`, whose last two `ψ_N` guards overlap at `y = w = 0`;
/// `Corrected` writes the tautology `(¬y ∨ y)` for existential `y`.
pub fn qunsat2_to_unique(fidelity: Fidelity) -> Result<NamedReduction> {
    // x1, x2 address the clause and y1, y2 the variable.
    let e = |t: &str| Formula::rel("E", [var(t)]);
    let not = Formula::not;
    let universe = Formula::Or(vec![eq("x1", 0), eq("x1", 1)]);
    let psi_e = Formula::Or(vec![
        and(vec![eq("x1", 1), not(eq("x2", 0))]),
        and(vec![eq("x1", 0), e("x2")]),
    ]);
    let same = || Formula::eq(var("x2"), var("y2"));
    let (psi_p, psi_n) = match fidelity {
        Fidelity::Verbatim => (
            Formula::Or(vec![
                and(vec![eq("x1", 0), eq("y1", 1), eq("y2", 0)]),
                and(vec![eq("x1", 0), eq("y1", 0), Formula::rel("P", [var("x2"), var("y2")])]),
                and(vec![eq("x1", 1), eq("y1", 0), same(), not(e("x2"))]),
                and(vec![eq("x1", 1), eq("y1", 1), same(), e("x2")]),
            ]),
            Formula::Or(vec![
                and(vec![eq("x1", 0), eq("y1", 0), Formula::rel("N", [var("x2"), var("y2")])]),
                and(vec![eq("x1", 1), eq("y1", 1), eq("y2", 0), not(e("x2"))]),
                and(vec![eq("x1", 1), eq("y1", 1), same(), e("x2")]),
            ]),
        ),
        Fidelity::Corrected => (
            Formula::Or(vec![
                and(vec![eq("x1", 0), eq("y1", 1), eq("y2", 0)]),
                and(vec![eq("x1", 0), eq("y1", 0), Formula::rel("P", [var("x2"), var("y2")])]),
                and(vec![eq("x1", 1), eq("y1", 0), same()]),
            ]),
            Formula::Or(vec![
                and(vec![eq("x1", 0), eq("y1", 0), Formula::rel("N", [var("x2"), var("y2")])]),
                and(vec![eq("x1", 1), eq("y1", 1), eq("y2", 0), not(e("x2"))]),
                and(vec![eq("x1", 1), eq("y1", 0), same(), e("x2")]),
            ]),
        ),
    };
    let cnf = Arc::new(Vocabulary::sigma_cnf());
    let query = FirstOrderQuery::new(
        "qunsat2-unique",
        cnf.clone(),
        cnf,
        2,
        universe,
        vec![("E".into(), psi_e), ("P".into(), psi_p), ("N".into(), psi_n)],
        vec![],
    )?;
    Ok(NamedReduction {
        name: "qunsat2-unique".into(),
        source: Problem::Qunsat2,
        target: Problem::UniqueExt,
        query,
        fidelity,
        direct: Some(Arc::new(move |a| encode_cnf(&doubled(&decode_cnf(a)?, fidelity)))),
    })
}
