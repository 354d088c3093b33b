//! Logical definitions of the problems, used to cross-check the deciders.

use super::qbf::Qbf2Dnf;
use crate::logic::{parse_formula, Formula, Term};
use crate::structure::Vocabulary;

/// `∃C ∀K ((K is a maximal clique with ≥ 2 nodes) → K meets both C and its complement)`
/// over `σ_g`. Correct on symmetric, loop-free `E`.
pub fn two_cc_sentence() -> Formula {
    let text = "exists2 C/1 forall2 K/1 (
        ((forall x forall y ((K(x) & K(y) & x != y) -> E(x, y)))
          & (forall z (!K(z) -> exists x (K(x) & !E(z, x))))
          & (exists x exists y (K(x) & K(y) & x != y)))
        -> exists x exists y (K(x) & K(y) & C(x) & !C(y)))";
    parse_formula(text, &Vocabulary::sigma_g()).expect("fixed sentence parses")
}

/// The quantified boolean sentence of a QSat₂ instance as a first-order
/// sentence over a two-element universe: variable `v` is `v_i` and is true iff
/// it equals `1`.
pub fn qbf_sentence(inst: &Qbf2Dnf) -> Formula {
    let var = |i: usize| format!("v{i}");
    let matrix = Formula::Or(
        inst.implicants
            .iter()
            .map(|imp| {
                let pos = imp.pos.iter().map(|&i| Formula::eq(Term::Var(var(i)), Term::Num(1)));
                let neg = imp.neg.iter().map(|&i| Formula::eq(Term::Var(var(i)), Term::Num(0)));
                Formula::And(pos.chain(neg).collect())
            })
            .collect(),
    );
    let universal: Vec<usize> = (0..inst.vars).filter(|v| !inst.existential.contains(v)).collect();
    let body = universal.iter().rev().fold(matrix, |f, &i| Formula::forall(&var(i), f));
    inst.existential.iter().rev().fold(body, |f, &i| Formula::exists(&var(i), f))
}

fn tau_sentence(text: &str) -> Formula {
    parse_formula(text, &Vocabulary::tau()).expect("fixed sentence parses")
}

/// `∀x∀y((V(x,y) ↔ y=0) ⊕ V(x,y))` as printed. At `y = 0` both sides of `⊕`
/// agree, so no structure satisfies it; see [`psi1`].
pub fn psi1_printed() -> Formula {
    tau_sentence("forall x forall y ((V(x, y) <-> y = 0) (+) V(x, y))")
}

/// Every value is `1` or `2ⁿ − 1`: `V(x, ·)` is either `{0}` or everything.
pub fn psi1() -> Formula {
    tau_sentence("forall x forall y forall z ((V(x, y) <-> y = 0) | V(x, z))")
}

/// The cost is `2ⁿ⁻¹`.
pub fn psi2() -> Formula {
    tau_sentence("forall x (K(x) <-> x = max)")
}
