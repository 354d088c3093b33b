use std::collections::BTreeSet;
use std::fmt;

use crate::structure::NumericRelation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// Numeric literal; `0` and `1` are the numeric constants.
    Num(usize),
    Max,
    /// Constant symbol declared by the vocabulary.
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn is_numeric(&self) -> bool {
        !matches!(self, Term::Const(_))
    }
}

impl From<usize> for Term {
    fn from(v: usize) -> Self {
        Term::Num(v)
    }
}

impl From<&str> for Term {
    fn from(v: &str) -> Self {
        Term::Var(v.to_string())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::Num(n) => write!(f, "{n}"),
            Term::Max => f.write_str("max"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// Atom over a relation declared by the vocabulary.
    Rel { name: String, args: Vec<Term> },
    /// Atom over a second-order relation variable.
    SoVar { name: String, args: Vec<Term> },
    Num { rel: NumericRelation, args: Vec<Term> },
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    Quant { q: Quantifier, var: String, body: Box<Formula> },
    SoQuant { q: Quantifier, name: String, arity: usize, body: Box<Formula> },
}

impl Formula {
    pub fn rel(name: &str, args: impl IntoIterator<Item = Term>) -> Self {
        Formula::Rel { name: name.into(), args: args.into_iter().collect() }
    }

    pub fn so_var(name: &str, args: impl IntoIterator<Item = Term>) -> Self {
        Formula::SoVar { name: name.into(), args: args.into_iter().collect() }
    }

    pub fn num(rel: NumericRelation, args: impl IntoIterator<Item = Term>) -> Self {
        Formula::Num { rel, args: args.into_iter().collect() }
    }

    pub fn eq(a: impl Into<Term>, b: impl Into<Term>) -> Self {
        Formula::Eq(a.into(), b.into())
    }

    pub fn le(a: impl Into<Term>, b: impl Into<Term>) -> Self {
        Formula::Num { rel: NumericRelation::Le, args: vec![a.into(), b.into()] }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; collapses the one-element case and keeps `And([])` as truth.
    pub fn and(mut parts: Vec<Formula>) -> Self {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        }
    }

    /// Disjunction; collapses the one-element case and keeps `Or([])` as falsity.
    pub fn or(mut parts: Vec<Formula>) -> Self {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn xor(a: Formula, b: Formula) -> Self {
        Formula::Xor(Box::new(a), Box::new(b))
    }

    pub fn exists(var: &str, body: Formula) -> Self {
        Formula::Quant { q: Quantifier::Exists, var: var.into(), body: Box::new(body) }
    }

    pub fn forall(var: &str, body: Formula) -> Self {
        Formula::Quant { q: Quantifier::Forall, var: var.into(), body: Box::new(body) }
    }

    pub fn exists2(name: &str, arity: usize, body: Formula) -> Self {
        Formula::SoQuant { q: Quantifier::Exists, name: name.into(), arity, body: Box::new(body) }
    }

    pub fn forall2(name: &str, arity: usize, body: Formula) -> Self {
        Formula::SoQuant { q: Quantifier::Forall, name: name.into(), arity, body: Box::new(body) }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Rel { .. } | Formula::SoVar { .. } | Formula::Num { .. } | Formula::Eq(..))
    }

    /// True iff every atom is a numeric relation or an equality between numeric terms.
    pub fn is_numeric(&self) -> bool {
        match self {
            Formula::True | Formula::False => true,
            Formula::Rel { .. } | Formula::SoVar { .. } => false,
            Formula::Num { args, .. } => args.iter().all(Term::is_numeric),
            Formula::Eq(a, b) => a.is_numeric() && b.is_numeric(),
            Formula::Not(f) => f.is_numeric(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_numeric),
            Formula::Implies(a, b) | Formula::Iff(a, b) | Formula::Xor(a, b) => {
                a.is_numeric() && b.is_numeric()
            }
            Formula::Quant { body, .. } => body.is_numeric(),
            Formula::SoQuant { .. } => false,
        }
    }

    pub fn has_second_order(&self) -> bool {
        match self {
            Formula::SoQuant { .. } | Formula::SoVar { .. } => true,
            Formula::Not(f) | Formula::Quant { body: f, .. } => f.has_second_order(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::has_second_order),
            Formula::Implies(a, b) | Formula::Iff(a, b) | Formula::Xor(a, b) => {
                a.has_second_order() || b.has_second_order()
            }
            _ => false,
        }
    }

    /// Free first-order variables.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut term = |t: &Term, bound: &Vec<String>| {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Rel { args, .. } | Formula::SoVar { args, .. } | Formula::Num { args, .. } => {
                args.iter().for_each(|t| term(t, bound))
            }
            Formula::Eq(a, b) => {
                term(a, bound);
                term(b, bound);
            }
            Formula::Not(f) | Formula::SoQuant { body: f, .. } => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) | Formula::Xor(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant { var, body, .. } => {
                bound.push(var.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Renames free first-order variables; bound occurrences are left alone.
    pub fn rename_free(&self, map: &dyn Fn(&str) -> Option<Term>) -> Formula {
        self.rename_inner(map, &mut Vec::new())
    }

    fn rename_inner(&self, map: &dyn Fn(&str) -> Option<Term>, bound: &mut Vec<String>) -> Formula {
        let term = |t: &Term, bound: &Vec<String>| match t {
            Term::Var(v) if !bound.contains(v) => map(v).unwrap_or_else(|| t.clone()),
            _ => t.clone(),
        };
        let args = |ts: &[Term], bound: &Vec<String>| ts.iter().map(|t| term(t, bound)).collect();
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Rel { name, args: a } => Formula::Rel { name: name.clone(), args: args(a, bound) },
            Formula::SoVar { name, args: a } => Formula::SoVar { name: name.clone(), args: args(a, bound) },
            Formula::Num { rel, args: a } => Formula::Num { rel: *rel, args: args(a, bound) },
            Formula::Eq(a, b) => Formula::Eq(term(a, bound), term(b, bound)),
            Formula::Not(f) => Formula::not(f.rename_inner(map, bound)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.rename_inner(map, bound)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.rename_inner(map, bound)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.rename_inner(map, bound), b.rename_inner(map, bound)),
            Formula::Iff(a, b) => Formula::iff(a.rename_inner(map, bound), b.rename_inner(map, bound)),
            Formula::Xor(a, b) => Formula::xor(a.rename_inner(map, bound), b.rename_inner(map, bound)),
            Formula::Quant { q, var, body } => {
                bound.push(var.clone());
                let body = body.rename_inner(map, bound);
                bound.pop();
                Formula::Quant { q: *q, var: var.clone(), body: Box::new(body) }
            }
            Formula::SoQuant { q, name, arity, body } => Formula::SoQuant {
                q: *q,
                name: name.clone(),
                arity: *arity,
                body: Box::new(body.rename_inner(map, bound)),
            },
        }
    }

    /// Binds like a single token when printed as an operand.
    fn is_tight(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Rel { .. } | Formula::SoVar { .. } => true,
            Formula::Num { rel, .. } => *rel != NumericRelation::Le,
            Formula::Not(_) => true,
            _ => false,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_tight() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }

    fn fmt_body(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Quant { .. } | Formula::SoQuant { .. } => write!(f, "{self}"),
            other => other.fmt_operand(f),
        }
    }
}

fn fmt_args(f: &mut fmt::Formatter<'_>, name: &str, args: &[Term]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Rel { name, args } | Formula::SoVar { name, args } => fmt_args(f, name, args),
            Formula::Num { rel: NumericRelation::Le, args } => write!(f, "{} <= {}", args[0], args[1]),
            Formula::Num { rel, args } => fmt_args(f, rel.name(), args),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(inner) => {
                f.write_str("!")?;
                inner.fmt_operand(f)
            }
            Formula::And(fs) | Formula::Or(fs) if fs.is_empty() => {
                f.write_str(if matches!(self, Formula::And(_)) { "true" } else { "false" })
            }
            Formula::And(fs) | Formula::Or(fs) if fs.len() == 1 => write!(f, "{}", fs[0]),
            Formula::And(fs) | Formula::Or(fs) => {
                let op = if matches!(self, Formula::And(_)) { " & " } else { " | " };
                for (i, part) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    part.fmt_operand(f)?;
                }
                Ok(())
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) | Formula::Xor(a, b) => {
                let op = match self {
                    Formula::Implies(..) => " -> ",
                    Formula::Iff(..) => " <-> ",
                    _ => " (+) ",
                };
                a.fmt_operand(f)?;
                f.write_str(op)?;
                b.fmt_operand(f)
            }
            Formula::Quant { q, var, body } => {
                let kw = if *q == Quantifier::Exists { "exists" } else { "forall" };
                write!(f, "{kw} {var} ")?;
                body.fmt_body(f)
            }
            Formula::SoQuant { q, name, arity, body } => {
                let kw = if *q == Quantifier::Exists { "exists2" } else { "forall2" };
                write!(f, "{kw} {name}/{arity} ")?;
                body.fmt_body(f)
            }
        }
    }
}
