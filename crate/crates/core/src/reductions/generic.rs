use std::collections::BTreeMap;
use std::sync::Arc;

use super::{code_bits, code_guard, Fidelity, NamedReduction, Problem};
use crate::error::{Error, Result};
use crate::fop::{block_var, FirstOrderQuery};
use crate::logic::{as_literal, parse_formula, validate_normal_form, Formula, NormalFormSentence, Term};
use crate::structure::Vocabulary;

/// `∃S¹ ∀T¹ ∃x₁x₂ ((S(x₁) ∧ ¬T(x₂) ∧ E(x₁,x₂)) ∨ (¬S(x₁) ∧ T(x₁)))` over `σ_g`.
pub fn toy_sentence() -> Formula {
    parse_formula(
        "exists2 S/1 forall2 T/1 exists x1 exists x2 ((S(x1) & !T(x2) & E(x1, x2)) | (!S(x1) & T(x1)))",
        &Vocabulary::sigma_g(),
    )
    .expect("fixed sentence parses")
}

/// A second-order literal of one implicant: relation code, arguments, sign.
struct SoLiteral {
    code: usize,
    arity: usize,
    args: Vec<Term>,
    negated: bool,
}

struct Implicant {
    numeric: Vec<Formula>,
    so: Vec<SoLiteral>,
    /// The vocabulary literal, already negated when it occurs negatively.
    sigma: Option<Formula>,
}

/// Compiles a normal-form sentence to a first-order projection onto `σ_dnf`.
///
/// With `m = max(g + h, r)` and `b = ⌈log₂ m⌉` (at least 1) the query has
/// arity `k = b + c`. A tuple `(ℓ⃗, u⃗)` is the boolean variable for the ground
/// atom `S_ℓ(u⃗)` (arguments padded with 0s; codes `g…` are the `T`s) and the
/// implicant `ℓ` of the matrix instantiated at `x⃗ = u⃗`. Implicants that do not
/// exist at a tuple (bad code, false numeric part, false vocabulary literal)
/// get `Q` and `M` on the all-zero variable, which makes them unsatisfiable.
/// The guards of one relation formula are mutually exclusive. Needs a source
/// universe of at least 2 elements to spell codes.
pub fn generic_to_qsat2(nf: &NormalFormSentence, source: Arc<Vocabulary>) -> Result<FirstOrderQuery> {
    let c = nf.c();
    if c == 0 {
        return Err(Error::NotNormalForm {
            reason: crate::error::NormalFormViolation::NoFirstOrderVariables,
            at: nf.to_formula().to_string(),
        });
    }
    let mut codes = BTreeMap::new();
    for (i, (name, arity)) in nf.exists.iter().chain(&nf.forall).enumerate() {
        if *arity > c {
            return Err(Error::Invalid(format!(
                "relation variable {name}/{arity} has more arguments than the {c} first-order variables"
            )));
        }
        codes.insert(name.as_str(), (i, *arity));
    }
    let m = (nf.g() + nf.h()).max(nf.r()).max(1);
    let b = code_bits(m);
    let k = b + c;
    let fo: BTreeMap<&str, usize> = nf.fo_vars.iter().enumerate().map(|(j, v)| (v.as_str(), j)).collect();
    let rename = |f: &Formula| f.rename_free(&|v| fo.get(v).map(|&j| Term::Var(block_var(0, b + j))));
    let rename_term = |t: &Term| -> Result<Term> {
        match t {
            Term::Var(v) => fo
                .get(v.as_str())
                .map(|&j| Term::Var(block_var(0, b + j)))
                .ok_or_else(|| Error::UnboundVariable(v.clone())),
            Term::Const(name) => Err(Error::Invalid(format!("constant `{name}` in a relation-variable literal"))),
            other => Ok(other.clone()),
        }
    };

    let mut implicants = Vec::new();
    for lits in &nf.implicants {
        let mut imp = Implicant { numeric: Vec::new(), so: Vec::new(), sigma: None };
        for lit in lits {
            let Some((atom, negated)) = as_literal(lit) else {
                return Err(Error::Invalid(format!("`{lit}` is not a literal")));
            };
            match atom {
                Formula::SoVar { name, args } => {
                    let &(code, arity) = codes.get(name.as_str()).ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                    let args = args.iter().map(rename_term).collect::<Result<Vec<_>>>()?;
                    imp.so.push(SoLiteral { code, arity, args, negated });
                }
                Formula::Rel { .. } => imp.sigma = Some(rename(lit)),
                other if other.is_numeric() => imp.numeric.push(rename(lit)),
                other => return Err(Error::Invalid(format!("unsupported literal `{other}`"))),
            }
        }
        implicants.push(imp);
    }

    let zero = || -> Vec<Formula> { (0..k).map(|q| Formula::eq(Term::var(block_var(1, q)), Term::Num(0))).collect() };
    let target = |lit: &SoLiteral| -> Formula {
        let mut parts = code_guard(1, b, lit.code);
        for p in 0..c {
            let value = if p < lit.arity { lit.args[p].clone() } else { Term::Num(0) };
            parts.push(Formula::eq(Term::var(block_var(1, b + p)), value));
        }
        Formula::And(parts)
    };
    let relation = |negated: bool| -> Formula {
        let mut disjuncts = Vec::new();
        for (i, imp) in implicants.iter().enumerate() {
            let mut live = code_guard(0, b, i);
            live.extend(imp.numeric.iter().cloned());
            let matches: Vec<Formula> = imp.so.iter().filter(|l| l.negated == negated).map(target).collect();
            for (j, hit) in matches.iter().enumerate() {
                let mut g = live.clone();
                g.push(hit.clone());
                g.extend(matches[..j].iter().map(|earlier| Formula::not(earlier.clone())));
                g.push(Formula::not(Formula::And(zero())));
                g.extend(imp.sigma.clone());
                disjuncts.push(Formula::And(g));
            }
            let mut at_zero = live.clone();
            at_zero.extend(zero());
            if !matches.is_empty() {
                let mut g = at_zero.clone();
                g.push(Formula::Or(matches.clone()));
                disjuncts.push(Formula::And(g));
            }
            if let Some(sigma) = &imp.sigma {
                let mut g = at_zero;
                if !matches.is_empty() {
                    g.push(Formula::not(Formula::Or(matches.clone())));
                }
                g.push(negate(sigma));
                disjuncts.push(Formula::And(g));
            }
            if !imp.numeric.is_empty() {
                let mut g = code_guard(0, b, i);
                g.push(Formula::not(Formula::And(imp.numeric.clone())));
                g.extend(zero());
                disjuncts.push(Formula::And(g));
            }
        }
        let mut g = vec![Formula::not(Formula::Or(
            (0..implicants.len()).map(|i| Formula::And(code_guard(0, b, i))).collect(),
        ))];
        g.extend(zero());
        disjuncts.push(Formula::And(g));
        Formula::Or(disjuncts)
    };
    let existential = Formula::Or((0..nf.g()).map(|i| Formula::And(code_guard(0, b, i))).collect());
    FirstOrderQuery::new(
        "gen-qsat2",
        source,
        Arc::new(Vocabulary::sigma_dnf()),
        k,
        Formula::True,
        vec![("E".into(), existential), ("Q".into(), relation(false)), ("M".into(), relation(true))],
        vec![],
    )
}

fn negate(lit: &Formula) -> Formula {
    match lit {
        Formula::Not(inner) => (**inner).clone(),
        other => Formula::not(other.clone()),
    }
}

/// Validates `phi` as a normal-form sentence over `vocab` and compiles it.
pub fn compile_sentence(name: &str, phi: &Formula, vocab: Arc<Vocabulary>) -> Result<NamedReduction> {
    let nf = validate_normal_form(phi)?;
    let query = generic_to_qsat2(&nf, vocab.clone())?.with_name(name);
    Ok(NamedReduction {
        name: name.into(),
        source: Problem::Definable { name: name.into(), vocab, sentence: phi.clone() },
        target: Problem::Qsat2,
        query,
        fidelity: Fidelity::Corrected,
        direct: None,
    })
}
