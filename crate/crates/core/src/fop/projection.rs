use std::fmt;

use super::{block_vars, FirstOrderQuery};
use crate::logic::{as_literal, eval3, CompiledFormula, Formula, Term};

/// One disjunct `α ∧ λ` of a projection formula: a numeric guard and at most
/// one source literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Disjunct {
    pub guard: Vec<Formula>,
    pub literal: Option<(Formula, bool)>,
}

/// Splits `f` into guarded disjuncts, or explains why it has no such shape.
pub(crate) fn decompose(f: &Formula) -> Result<Vec<Disjunct>, String> {
    let parts: &[Formula] = match f {
        Formula::Or(parts) => parts,
        other => std::slice::from_ref(other),
    };
    parts.iter().map(disjunct).collect()
}

fn disjunct(f: &Formula) -> Result<Disjunct, String> {
    let items: &[Formula] = match f {
        Formula::And(items) => items,
        other => std::slice::from_ref(other),
    };
    let mut guard = Vec::new();
    let mut literal = None;
    for item in items {
        if item.is_numeric() {
            guard.push(item.clone());
            continue;
        }
        match as_literal(item) {
            Some((atom @ Formula::Rel { .. }, neg)) => {
                if literal.is_some() {
                    return Err(format!("disjunct `{f}` has more than one source literal"));
                }
                literal = Some((atom.clone(), neg));
            }
            _ => return Err(format!("`{item}` is neither numeric nor a source literal")),
        }
    }
    Ok(Disjunct { guard, literal })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionViolation {
    /// `universe`, a target relation name, or `const c`.
    pub formula: String,
    pub detail: String,
}

impl fmt::Display for ProjectionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.formula, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionReport {
    pub is_projection: bool,
    pub syntactic_ok: bool,
    pub exclusivity_ok: bool,
    pub violations: Vec<ProjectionViolation>,
}

/// Checks that `φ₀` is numeric, every other formula is a disjunction of
/// numeric guards each conjoined with at most one source literal, and no two
/// guards of one formula hold together on universe tuples of any size up to
/// `bound`.
pub fn validate_projection(q: &FirstOrderQuery, bound: usize) -> ProjectionReport {
    let mut violations = Vec::new();
    let mut syntactic_ok = true;
    let mut exclusivity_ok = true;
    if !q.universe().is_numeric() {
        syntactic_ok = false;
        violations.push(ProjectionViolation { formula: "universe".into(), detail: "not numeric".into() });
    }
    for (name, f, blocks) in q.named_formulas().into_iter().skip(1) {
        let disjuncts = match decompose(f) {
            Ok(d) => d,
            Err(detail) => {
                syntactic_ok = false;
                violations.push(ProjectionViolation { formula: name, detail });
                continue;
            }
        };
        if !q.universe().is_numeric() {
            continue;
        }
        if let Some(detail) = first_overlap(q, &disjuncts, blocks, bound) {
            exclusivity_ok = false;
            violations.push(ProjectionViolation { formula: name, detail });
        }
    }
    ProjectionReport { is_projection: syntactic_ok && exclusivity_ok, syntactic_ok, exclusivity_ok, violations }
}

/// The universe formula restated for variable block `b`.
fn universe_on_block(q: &FirstOrderQuery, b: usize) -> Formula {
    let k = q.arity();
    q.universe().rename_free(&|v| {
        let i = (1..=k).find(|i| v == format!("x{i}"))?;
        Some(Term::Var(super::block_var(b, i - 1)))
    })
}

fn first_overlap(q: &FirstOrderQuery, ds: &[Disjunct], blocks: usize, bound: usize) -> Option<String> {
    let names = block_vars(q.arity(), blocks);
    let domain: Vec<Formula> = (0..blocks).map(|b| universe_on_block(q, b)).collect();
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            let mut parts = domain.clone();
            parts.extend(ds[i].guard.iter().cloned());
            parts.extend(ds[j].guard.iter().cloned());
            let both = Formula::And(parts);
            let Ok(compiled) = CompiledFormula::new(&both, q.source(), &names) else {
                return Some(format!("guards of disjuncts {i} and {j} do not compile"));
            };
            let used: Vec<usize> = {
                let free = both.free_vars();
                (0..names.len()).filter(|&s| free.contains(&names[s])).collect()
            };
            for m in 1..=bound {
                let mut env = vec![None; compiled.slots()];
                for (s, slot) in env.iter_mut().enumerate().take(names.len()) {
                    if !used.contains(&s) {
                        *slot = Some(0);
                    }
                }
                if search(&compiled, m, &used, 0, &mut env) {
                    let witness: Vec<String> =
                        used.iter().map(|&s| format!("{}={}", names[s], env[s].unwrap_or(0))).collect();
                    return Some(format!(
                        "guards of disjuncts {i} and {j} both hold at size {m} with {}",
                        if witness.is_empty() { "any arguments".to_string() } else { witness.join(", ") }
                    ));
                }
            }
        }
    }
    None
}

/// Depth-first search for an assignment of the `used` slots making the
/// formula true, pruning whenever the partial assignment already falsifies it.
fn search(c: &CompiledFormula, m: usize, used: &[usize], depth: usize, env: &mut Vec<Option<usize>>) -> bool {
    match eval3(c.root(), m, None, env) {
        Some(false) => return false,
        Some(true) => {
            // Fill the remaining slots so the witness is concrete.
            for &s in &used[depth..] {
                env[s] = Some(0);
            }
            return true;
        }
        None => {}
    }
    let Some(&slot) = used.get(depth) else { return false };
    for v in 0..m {
        env[slot] = Some(v);
        if search(c, m, used, depth + 1, env) {
            return true;
        }
    }
    env[slot] = None;
    false
}
