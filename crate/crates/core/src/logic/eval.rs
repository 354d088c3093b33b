//! Brute-force evaluation of FO and SO formulas over finite structures.
//!
//! Formulas are first compiled against a vocabulary: variable names become
//! slots in a flat environment and relation symbols become table indices, so
//! the inner loops do no string lookups.

use super::formula::{Formula, Quantifier, Term};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::structure::{NumericRelation, Structure, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CTerm {
    Slot(usize),
    Value(usize),
    Max,
    Const(usize),
}

#[derive(Debug, Clone)]
pub(crate) enum Node {
    Bool(bool),
    Rel { rel: usize, args: Vec<CTerm> },
    So { id: usize, args: Vec<CTerm> },
    Num { rel: NumericRelation, args: Vec<CTerm> },
    Eq(CTerm, CTerm),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Xor(Box<Node>, Box<Node>),
    Quant { q: Quantifier, slot: usize, body: Box<Node> },
    SoQuant { q: Quantifier, id: usize, arity: usize, body: Box<Node> },
}

/// A formula resolved against a vocabulary, ready for repeated evaluation.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    root: Node,
    free: Vec<String>,
    slots: usize,
    so_vars: usize,
    /// Arities of the relation variables in each quantifier block.
    so_blocks: Vec<Vec<usize>>,
}

struct Compiler<'a> {
    vocab: &'a Vocabulary,
    free: &'a [String],
    fo: Vec<String>,
    so: Vec<(String, usize)>,
    max_fo: usize,
    max_so: usize,
    blocks: Vec<Vec<usize>>,
    prev_quantifier: Option<Quantifier>,
}

impl Compiler<'_> {
    fn term(&self, t: &Term) -> Result<CTerm> {
        Ok(match t {
            Term::Num(v) => CTerm::Value(*v),
            Term::Max => CTerm::Max,
            Term::Const(c) => {
                CTerm::Const(self.vocab.constant_index(c).ok_or_else(|| Error::UnknownSymbol(c.clone()))?)
            }
            Term::Var(v) => {
                if let Some(depth) = self.fo.iter().rposition(|b| b == v) {
                    CTerm::Slot(self.free.len() + depth)
                } else if let Some(i) = self.free.iter().position(|f| f == v) {
                    CTerm::Slot(i)
                } else if let Some(c) = self.vocab.constant_index(v) {
                    CTerm::Const(c)
                } else {
                    return Err(Error::UnboundVariable(v.clone()));
                }
            }
        })
    }

    fn terms(&self, ts: &[Term]) -> Result<Vec<CTerm>> {
        ts.iter().map(|t| self.term(t)).collect()
    }

    fn node(&mut self, f: &Formula, block_open: bool) -> Result<Node> {
        Ok(match f {
            Formula::True => Node::Bool(true),
            Formula::False => Node::Bool(false),
            Formula::Rel { name, args } => {
                let rel = self.vocab.relation_index(name).ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                let expected = self.vocab.relations()[rel].1;
                if expected != args.len() {
                    return Err(Error::ArityMismatch { symbol: name.clone(), expected, found: args.len() });
                }
                Node::Rel { rel, args: self.terms(args)? }
            }
            Formula::SoVar { name, args } => {
                let id = self.so.iter().rposition(|(n, _)| n == name).ok_or_else(|| Error::UnboundVariable(name.clone()))?;
                let expected = self.so[id].1;
                if expected != args.len() {
                    return Err(Error::ArityMismatch { symbol: name.clone(), expected, found: args.len() });
                }
                Node::So { id, args: self.terms(args)? }
            }
            Formula::Num { rel, args } => {
                if rel.arity() != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: rel.name().into(),
                        expected: rel.arity(),
                        found: args.len(),
                    });
                }
                Node::Num { rel: *rel, args: self.terms(args)? }
            }
            Formula::Eq(a, b) => Node::Eq(self.term(a)?, self.term(b)?),
            Formula::Not(g) => Node::Not(Box::new(self.node(g, false)?)),
            Formula::And(gs) => Node::And(gs.iter().map(|g| self.node(g, false)).collect::<Result<_>>()?),
            Formula::Or(gs) => Node::Or(gs.iter().map(|g| self.node(g, false)).collect::<Result<_>>()?),
            Formula::Implies(a, b) => Node::Implies(Box::new(self.node(a, false)?), Box::new(self.node(b, false)?)),
            Formula::Iff(a, b) => Node::Iff(Box::new(self.node(a, false)?), Box::new(self.node(b, false)?)),
            Formula::Xor(a, b) => Node::Xor(Box::new(self.node(a, false)?), Box::new(self.node(b, false)?)),
            Formula::Quant { q, var, body } => {
                self.fo.push(var.clone());
                self.max_fo = self.max_fo.max(self.fo.len());
                let slot = self.free.len() + self.fo.len() - 1;
                let body = self.node(body, false);
                self.fo.pop();
                Node::Quant { q: *q, slot, body: Box::new(body?) }
            }
            Formula::SoQuant { q, name, arity, body } => {
                if *arity == 0 {
                    return Err(Error::InvalidVocabulary(format!("relation variable `{name}` has arity 0")));
                }
                let continues = block_open && self.prev_quantifier == Some(*q);
                if continues {
                    self.blocks.last_mut().expect("open block").push(*arity);
                } else {
                    self.blocks.push(vec![*arity]);
                }
                self.so.push((name.clone(), *arity));
                self.max_so = self.max_so.max(self.so.len());
                let id = self.so.len() - 1;
                let saved = self.prev_quantifier.replace(*q);
                let body = self.node(body, true);
                self.prev_quantifier = saved;
                self.so.pop();
                Node::SoQuant { q: *q, id, arity: *arity, body: Box::new(body?) }
            }
        })
    }
}

impl CompiledFormula {
    /// Compiles `f` with the listed free variables occupying environment slots
    /// `0..free.len()` in order.
    pub fn new(f: &Formula, vocab: &Vocabulary, free: &[String]) -> Result<Self> {
        let mut c = Compiler {
            vocab,
            free,
            fo: Vec::new(),
            so: Vec::new(),
            max_fo: 0,
            max_so: 0,
            blocks: Vec::new(),
            prev_quantifier: None,
        };
        let root = c.node(f, false)?;
        Ok(CompiledFormula {
            root,
            free: free.to_vec(),
            slots: free.len() + c.max_fo,
            so_vars: c.max_so,
            so_blocks: c.blocks,
        })
    }

    pub fn free_vars(&self) -> &[String] {
        &self.free
    }

    pub fn has_second_order(&self) -> bool {
        !self.so_blocks.is_empty()
    }

    /// Fails if some relation-variable block would need more than the budgeted
    /// number of bits at this universe size.
    pub fn check_budget(&self, size: usize, budget: &Budget) -> Result<()> {
        let cap = budget.max_so_bits.min(63) as u128;
        for block in &self.so_blocks {
            let bits: u128 = block.iter().map(|&a| (size as u128).saturating_pow(a as u32)).sum();
            if bits > cap {
                return Err(Error::budget("second-order block bits", bits, cap));
            }
        }
        Ok(())
    }

    /// Evaluates with `env[i]` bound to the i-th free variable. Second-order
    /// formulas must have passed [`check_budget`](Self::check_budget) for this size.
    pub fn eval(&self, s: &Structure, env: &[usize]) -> bool {
        debug_assert_eq!(env.len(), self.free.len());
        let mut frame = Frame { s, size: s.size(), env: vec![0; self.slots], so: vec![0; self.so_vars] };
        frame.env[..env.len()].copy_from_slice(env);
        frame.eval(&self.root)
    }

    /// Like [`eval`](Self::eval) but reusing a caller-owned scratch environment
    /// whose first `free.len()` entries are already set.
    pub(crate) fn eval_with(&self, s: &Structure, scratch: &mut Vec<usize>) -> bool {
        scratch.resize(self.slots, 0);
        let mut frame = Frame { s, size: s.size(), env: std::mem::take(scratch), so: vec![0; self.so_vars] };
        let r = frame.eval(&self.root);
        *scratch = frame.env;
        r
    }

    pub(crate) fn root(&self) -> &Node {
        &self.root
    }

    pub(crate) fn slots(&self) -> usize {
        self.slots
    }
}

struct Frame<'a> {
    s: &'a Structure,
    size: usize,
    env: Vec<usize>,
    so: Vec<u64>,
}

#[inline]
fn term_value(t: CTerm, env: &[usize], size: usize, s: Option<&Structure>) -> Option<usize> {
    match t {
        CTerm::Slot(i) => Some(env[i]),
        CTerm::Value(v) => Some(v),
        CTerm::Max => Some(size - 1),
        CTerm::Const(c) => s.map(|s| s.constant_at(c)),
    }
}

/// Table slot of a tuple in a relation over `size` elements, or `None` if
/// some coordinate lies outside the universe.
#[inline]
fn table_slot(values: impl Iterator<Item = usize>, size: usize) -> Option<usize> {
    let mut idx = 0usize;
    for v in values {
        if v >= size {
            return None;
        }
        idx = idx * size + v;
    }
    Some(idx)
}

impl Frame<'_> {
    #[inline]
    fn val(&self, t: CTerm) -> usize {
        match t {
            CTerm::Slot(i) => self.env[i],
            CTerm::Value(v) => v,
            CTerm::Max => self.size - 1,
            CTerm::Const(c) => self.s.constant_at(c),
        }
    }

    fn eval(&mut self, n: &Node) -> bool {
        match n {
            Node::Bool(b) => *b,
            Node::Rel { rel, args } => {
                let r = self.s.relation_at(*rel);
                table_slot(args.iter().map(|&t| self.val(t)), self.size).is_some_and(|i| r.get_slot(i))
            }
            Node::So { id, args } => table_slot(args.iter().map(|&t| self.val(t)), self.size)
                .is_some_and(|i| self.so[*id] >> i & 1 == 1),
            Node::Num { rel, args } => {
                let mut buf = [0usize; 3];
                for (b, &t) in buf.iter_mut().zip(args) {
                    *b = self.val(t);
                }
                rel.eval(&buf[..args.len()])
            }
            Node::Eq(a, b) => self.val(*a) == self.val(*b),
            Node::Not(g) => !self.eval(g),
            Node::And(gs) => gs.iter().all(|g| self.eval(g)),
            Node::Or(gs) => gs.iter().any(|g| self.eval(g)),
            Node::Implies(a, b) => !self.eval(a) || self.eval(b),
            Node::Iff(a, b) => self.eval(a) == self.eval(b),
            Node::Xor(a, b) => self.eval(a) != self.eval(b),
            Node::Quant { q, slot, body } => {
                let want = *q == Quantifier::Exists;
                for v in 0..self.size {
                    self.env[*slot] = v;
                    if self.eval(body) == want {
                        return want;
                    }
                }
                !want
            }
            Node::SoQuant { q, id, arity, body } => {
                let bits = self.size.pow(*arity as u32);
                let want = *q == Quantifier::Exists;
                for code in 0..1u64 << bits {
                    self.so[*id] = code;
                    if self.eval(body) == want {
                        return want;
                    }
                }
                !want
            }
        }
    }
}

/// Kleene three-valued evaluation with some slots unassigned. Relation atoms
/// are unknown when no structure is given; second-order atoms are always unknown.
pub(crate) fn eval3(n: &Node, size: usize, s: Option<&Structure>, env: &mut [Option<usize>]) -> Option<bool> {
    let val = |t: CTerm, env: &[Option<usize>]| match t {
        CTerm::Slot(i) => env[i],
        other => term_value(other, &[], size, s),
    };
    match n {
        Node::Bool(b) => Some(*b),
        Node::Rel { rel, args } => {
            let s = s?;
            let vals: Option<Vec<usize>> = args.iter().map(|&t| val(t, env)).collect();
            let vals = vals?;
            Some(table_slot(vals.into_iter(), size).is_some_and(|i| s.relation_at(*rel).get_slot(i)))
        }
        Node::So { .. } | Node::SoQuant { .. } => None,
        Node::Num { rel, args } => {
            let mut buf = [0usize; 3];
            for (b, &t) in buf.iter_mut().zip(args) {
                *b = val(t, env)?;
            }
            Some(rel.eval(&buf[..args.len()]))
        }
        Node::Eq(a, b) => Some(val(*a, env)? == val(*b, env)?),
        Node::Not(g) => eval3(g, size, s, env).map(|b| !b),
        Node::And(gs) => {
            let mut unknown = false;
            for g in gs {
                match eval3(g, size, s, env) {
                    Some(false) => return Some(false),
                    None => unknown = true,
                    Some(true) => {}
                }
            }
            if unknown { None } else { Some(true) }
        }
        Node::Or(gs) => {
            let mut unknown = false;
            for g in gs {
                match eval3(g, size, s, env) {
                    Some(true) => return Some(true),
                    None => unknown = true,
                    Some(false) => {}
                }
            }
            if unknown { None } else { Some(false) }
        }
        Node::Implies(a, b) => {
            let a = eval3(a, size, s, env);
            let b = eval3(b, size, s, env);
            match (a, b) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            }
        }
        Node::Iff(a, b) => Some(eval3(a, size, s, env)? == eval3(b, size, s, env)?),
        Node::Xor(a, b) => Some(eval3(a, size, s, env)? != eval3(b, size, s, env)?),
        Node::Quant { q, slot, body } => {
            let want = *q == Quantifier::Exists;
            let saved = env[*slot];
            let mut unknown = false;
            let mut out = Some(!want);
            for v in 0..size {
                env[*slot] = Some(v);
                match eval3(body, size, s, env) {
                    Some(b) if b == want => {
                        out = Some(want);
                        break;
                    }
                    None => unknown = true,
                    _ => {}
                }
            }
            env[*slot] = saved;
            if out == Some(want) {
                out
            } else if unknown {
                None
            } else {
                out
            }
        }
    }
}

fn check_env(s: &Structure, env: &[(&str, usize)]) -> Result<(Vec<String>, Vec<usize>)> {
    let mut names = Vec::with_capacity(env.len());
    let mut values = Vec::with_capacity(env.len());
    for &(name, v) in env {
        if v >= s.size() {
            return Err(Error::OutOfRange { value: v, size: s.size(), context: name.into() });
        }
        if names.iter().any(|n| n == name) {
            return Err(Error::DuplicateSymbol(name.into()));
        }
        names.push(name.to_string());
        values.push(v);
    }
    Ok((names, values))
}

fn first_so_name(f: &Formula) -> Option<String> {
    match f {
        Formula::SoQuant { name, .. } | Formula::SoVar { name, .. } => Some(name.clone()),
        Formula::Not(g) | Formula::Quant { body: g, .. } => first_so_name(g),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().find_map(first_so_name),
        Formula::Implies(a, b) | Formula::Iff(a, b) | Formula::Xor(a, b) => {
            first_so_name(a).or_else(|| first_so_name(b))
        }
        _ => None,
    }
}

/// `A ⊨ φ[env]` for a first-order formula by exhaustive quantifier expansion.
pub fn eval_fo(a: &Structure, phi: &Formula, env: &[(&str, usize)]) -> Result<bool> {
    if let Some(name) = first_so_name(phi) {
        return Err(Error::SecondOrderNode(name));
    }
    let (names, values) = check_env(a, env)?;
    let c = CompiledFormula::new(phi, a.vocab(), &names)?;
    Ok(c.eval(a, &values))
}

/// Evaluates a sentence with second-order quantifiers anywhere, enumerating
/// every relation valuation.
pub fn eval_so(a: &Structure, phi: &Formula, budget: &Budget) -> Result<bool> {
    let c = CompiledFormula::new(phi, a.vocab(), &[])?;
    c.check_budget(a.size(), budget)?;
    Ok(c.eval(a, &[]))
}

/// Relation variables of a quantifier block, with their arities.
pub type SoBlock = Vec<(String, usize)>;

/// Splits a sentence into its `∃*∀*` second-order prefix and first-order matrix.
pub fn so2_prefix(phi: &Formula) -> Result<(SoBlock, SoBlock, &Formula)> {
    let mut exists = Vec::new();
    let mut forall = Vec::new();
    let mut cur = phi;
    while let Formula::SoQuant { q, name, arity, body } = cur {
        match q {
            Quantifier::Exists if forall.is_empty() => exists.push((name.clone(), *arity)),
            Quantifier::Exists => {
                return Err(Error::PrefixShape(format!("existential `{name}` after a universal block")))
            }
            Quantifier::Forall => forall.push((name.clone(), *arity)),
        }
        cur = body;
    }
    if let Some(name) = first_so_name_quantified(cur) {
        return Err(Error::PrefixShape(format!("`{name}` is quantified inside the first-order matrix")));
    }
    Ok((exists, forall, cur))
}

fn first_so_name_quantified(f: &Formula) -> Option<String> {
    match f {
        Formula::SoQuant { name, .. } => Some(name.clone()),
        Formula::Not(g) | Formula::Quant { body: g, .. } => first_so_name_quantified(g),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().find_map(first_so_name_quantified),
        Formula::Implies(a, b) | Formula::Iff(a, b) | Formula::Xor(a, b) => {
            first_so_name_quantified(a).or_else(|| first_so_name_quantified(b))
        }
        _ => None,
    }
}

/// `A ⊨ Φ` for a sentence whose second-order prefix has shape `∃*∀*`.
///
/// The existential block is the outer loop and the universal block the inner
/// one; both run through valuations in ascending code order and stop early.
pub fn eval_so2(a: &Structure, phi: &Formula, budget: &Budget) -> Result<bool> {
    so2_prefix(phi)?;
    eval_so(a, phi, budget)
}

/// True iff every atom is numeric or an equality between numeric terms.
pub fn is_numeric(phi: &Formula) -> bool {
    phi.is_numeric()
}
