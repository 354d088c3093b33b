//! Validation of the `∃S⃗ ∀T⃗ ∃x₁…x_c φ` normal form with a DNF matrix.

use super::formula::{Formula, Quantifier};
use crate::error::{Error, NormalFormViolation, Result};

/// A sentence `∃S₁…S_g ∀T₁…T_h ∃x₁…x_c (D₁ ∨ … ∨ D_r)` where each implicant
/// `D_i` is a conjunction of literals with at most one vocabulary literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormSentence {
    pub exists: Vec<(String, usize)>,
    pub forall: Vec<(String, usize)>,
    pub fo_vars: Vec<String>,
    /// Each implicant is a list of literals (atoms or negated atoms).
    pub implicants: Vec<Vec<Formula>>,
}

impl NormalFormSentence {
    pub fn g(&self) -> usize {
        self.exists.len()
    }

    pub fn h(&self) -> usize {
        self.forall.len()
    }

    pub fn c(&self) -> usize {
        self.fo_vars.len()
    }

    pub fn r(&self) -> usize {
        self.implicants.len()
    }

    /// Reassembles the sentence.
    pub fn to_formula(&self) -> Formula {
        let matrix = Formula::Or(self.implicants.iter().map(|lits| Formula::And(lits.clone())).collect());
        let mut f = self.fo_vars.iter().rev().fold(matrix, |body, x| Formula::exists(x, body));
        for (name, arity) in self.forall.iter().rev() {
            f = Formula::forall2(name, *arity, f);
        }
        for (name, arity) in self.exists.iter().rev() {
            f = Formula::exists2(name, *arity, f);
        }
        f
    }
}

fn violation(reason: NormalFormViolation, at: &Formula) -> Error {
    Error::NotNormalForm { reason, at: at.to_string() }
}

/// `(atom, negated)` if `f` is a literal.
pub(crate) fn as_literal(f: &Formula) -> Option<(&Formula, bool)> {
    match f {
        Formula::Not(inner) if inner.is_atom() || matches!(**inner, Formula::True | Formula::False) => {
            Some((inner, true))
        }
        f if f.is_atom() || matches!(f, Formula::True | Formula::False) => Some((f, false)),
        _ => None,
    }
}

fn implicant(f: &Formula) -> Result<Vec<Formula>> {
    let lits: Vec<Formula> = match f {
        Formula::And(parts) => parts.clone(),
        other => vec![other.clone()],
    };
    let mut sigma = 0;
    for lit in &lits {
        let (atom, _) = as_literal(lit).ok_or_else(|| violation(NormalFormViolation::MatrixNotDnf, lit))?;
        if matches!(atom, Formula::Rel { .. }) {
            sigma += 1;
            if sigma > 1 {
                return Err(violation(NormalFormViolation::MultipleSigmaLiterals, f));
            }
        }
    }
    Ok(lits)
}

pub fn validate_normal_form(phi: &Formula) -> Result<NormalFormSentence> {
    let mut exists = Vec::new();
    let mut forall = Vec::new();
    let mut cur = phi;
    while let Formula::SoQuant { q, name, arity, body } = cur {
        match q {
            Quantifier::Exists if !forall.is_empty() => {
                return Err(violation(NormalFormViolation::PrefixShape, cur));
            }
            Quantifier::Exists => exists.push((name.clone(), *arity)),
            Quantifier::Forall => forall.push((name.clone(), *arity)),
        }
        cur = body;
    }
    let mut fo_vars = Vec::new();
    while let Formula::Quant { q, var, body } = cur {
        if *q == Quantifier::Forall {
            return Err(violation(NormalFormViolation::PrefixShape, cur));
        }
        fo_vars.push(var.clone());
        cur = body;
    }
    if fo_vars.is_empty() {
        return Err(violation(NormalFormViolation::NoFirstOrderVariables, cur));
    }
    let implicants = match cur {
        Formula::Or(parts) if parts.is_empty() => return Err(violation(NormalFormViolation::MatrixNotDnf, cur)),
        Formula::Or(parts) => parts.iter().map(implicant).collect::<Result<Vec<_>>>()?,
        other => vec![implicant(other)?],
    };
    let nf = NormalFormSentence { exists, forall, fo_vars, implicants };
    for lit in nf.implicants.iter().flatten() {
        let (atom, _) = as_literal(lit).expect("checked above");
        if let Some(v) = atom.free_vars().into_iter().find(|v| !nf.fo_vars.contains(v)) {
            return Err(Error::UnboundVariable(v));
        }
        if let Formula::SoVar { name, args } = atom {
            let declared = nf.exists.iter().chain(&nf.forall).find(|(n, _)| n == name);
            match declared {
                None => return Err(Error::UnboundVariable(name.clone())),
                Some((_, a)) if *a != args.len() => {
                    return Err(Error::ArityMismatch { symbol: name.clone(), expected: *a, found: args.len() })
                }
                _ => {}
            }
        }
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::structure::Vocabulary;

    fn parse(text: &str) -> Formula {
        parse_formula(text, &Vocabulary::sigma_g()).unwrap()
    }

    fn reason(text: &str) -> NormalFormViolation {
        match validate_normal_form(&parse(text)) {
            Err(Error::NotNormalForm { reason, .. }) => reason,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn accepts_two_implicant_sentence() {
        let nf = validate_normal_form(&parse(
            "exists2 S/1 forall2 T/1 exists x1 exists x2 ((S(x1) & !T(x2)) | (T(x1) & E(x1, x2)))",
        ))
        .unwrap();
        assert_eq!((nf.g(), nf.h(), nf.c(), nf.r()), (1, 1, 2, 2));
    }

    #[test]
    fn rejects_cnf_matrix() {
        assert_eq!(reason("exists2 S/1 exists x ((S(x) | E(x, x)) & (!S(x) | x = 0))"), NormalFormViolation::MatrixNotDnf);
    }

    #[test]
    fn rejects_two_sigma_literals() {
        assert_eq!(
            reason("exists x1 exists x2 (E(x1, x2) & E(x2, x1))"),
            NormalFormViolation::MultipleSigmaLiterals
        );
    }

    #[test]
    fn rejects_bad_prefixes() {
        assert_eq!(reason("forall2 T/1 exists2 S/1 exists x S(x)"), NormalFormViolation::PrefixShape);
        assert_eq!(reason("exists x forall y E(x, y)"), NormalFormViolation::PrefixShape);
        assert_eq!(reason("exists2 S/1 S(0)"), NormalFormViolation::NoFirstOrderVariables);
        assert_eq!(reason("exists x (x = 0 & exists y E(x, y))"), NormalFormViolation::MatrixNotDnf);
    }

    #[test]
    fn reassembly_keeps_shape() {
        let text = "exists2 S/1 forall2 T/1 exists x1 exists x2 ((S(x1) & !T(x2) & E(x1, x2)) | (!S(x1) & T(x1)))";
        let nf = validate_normal_form(&parse(text)).unwrap();
        let again = validate_normal_form(&nf.to_formula()).unwrap();
        assert_eq!(nf, again);
    }
}
