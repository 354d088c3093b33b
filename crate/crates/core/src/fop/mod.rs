//! First-order queries between vocabularies and the projection check.

mod projection;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::logic::{eval3, CTerm, CompiledFormula, Formula, Node};
use crate::structure::{Relation, Structure, Vocabulary};

pub(crate) use projection::decompose;
pub use projection::{validate_projection, ProjectionReport, ProjectionViolation};

/// Cap on the number of source tuples a query may range over at one size.
const MAX_SOURCE_TUPLES: u128 = 1 << 24;

const BLOCK_LETTERS: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

/// Name of free variable `i` (0-based) in block `block`: `x1…xk`, `y1…yk`, `z1…`, ….
pub fn block_var(block: usize, i: usize) -> String {
    match BLOCK_LETTERS.get(block) {
        Some(letter) => format!("{letter}{}", i + 1),
        None => format!("b{block}_{}", i + 1),
    }
}

/// Free variables of a formula defining a relation of arity `blocks` under a
/// query of arity `k`, in environment order.
pub fn block_vars(k: usize, blocks: usize) -> Vec<String> {
    (0..blocks).flat_map(|b| (0..k).map(move |i| block_var(b, i))).collect()
}

/// `I = ⟨φ₀, φ₁, …, φ_r, ψ₁, …, ψ_s⟩`: a universe formula, one formula per
/// target relation and one per target constant.
#[derive(Debug, Clone)]
pub struct FirstOrderQuery {
    name: String,
    source: Arc<Vocabulary>,
    target: Arc<Vocabulary>,
    arity: usize,
    universe: Formula,
    relations: Vec<Formula>,
    constants: Vec<Formula>,
    compiled: Vec<CompiledFormula>,
}

impl FirstOrderQuery {
    pub fn new(
        name: impl Into<String>,
        source: Arc<Vocabulary>,
        target: Arc<Vocabulary>,
        arity: usize,
        universe: Formula,
        relations: Vec<(String, Formula)>,
        constants: Vec<(String, Formula)>,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Invalid("query arity must be at least 1".into()));
        }
        let rel_formulas = order_by(target.relations().iter().map(|(n, _)| n.as_str()), relations)?;
        let const_formulas = order_by(target.constants().iter().map(String::as_str), constants)?;
        let mut compiled = Vec::with_capacity(1 + rel_formulas.len() + const_formulas.len());
        let mut compile = |f: &Formula, blocks: usize| -> Result<()> {
            if f.has_second_order() {
                return Err(Error::SecondOrderNode(format!("{f}")));
            }
            compiled.push(CompiledFormula::new(f, &source, &block_vars(arity, blocks))?);
            Ok(())
        };
        compile(&universe, 1)?;
        for (f, (_, a)) in rel_formulas.iter().zip(target.relations()) {
            compile(f, *a)?;
        }
        for f in &const_formulas {
            compile(f, 1)?;
        }
        Ok(FirstOrderQuery {
            name: name.into(),
            source,
            target,
            arity,
            universe,
            relations: rel_formulas,
            constants: const_formulas,
            compiled,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<Vocabulary> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Vocabulary> {
        &self.target
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn universe(&self) -> &Formula {
        &self.universe
    }

    /// Defining formulas of the target relations, in declaration order.
    pub fn relations(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.target.relations().iter().map(|(n, _)| n.as_str()).zip(&self.relations)
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.target.constants().iter().map(String::as_str).zip(&self.constants)
    }

    pub fn relation_formula(&self, name: &str) -> Option<&Formula> {
        self.target.relation_index(name).map(|i| &self.relations[i])
    }

    /// Every defining formula with its display name and number of variable blocks.
    pub(crate) fn named_formulas(&self) -> Vec<(String, &Formula, usize)> {
        let mut out = vec![("universe".to_string(), &self.universe, 1)];
        for ((name, a), f) in self.target.relations().iter().zip(&self.relations) {
            out.push((name.clone(), f, *a));
        }
        for (name, f) in self.target.constants().iter().zip(&self.constants) {
            out.push((format!("const {name}"), f, 1));
        }
        out
    }

    /// Precomputes whatever does not depend on the input structure for inputs
    /// of the given size.
    pub fn prepare(&self, size: usize) -> Result<PreparedQuery<'_>> {
        let tuples = (size as u128).pow(self.arity as u32);
        if tuples > MAX_SOURCE_TUPLES {
            return Err(Error::budget("query source tuples", tuples, MAX_SOURCE_TUPLES));
        }
        let plan = Plan::build(self, size)?;
        Ok(PreparedQuery { query: self, size, plan })
    }
}

fn order_by<'a>(names: impl Iterator<Item = &'a str>, given: Vec<(String, Formula)>) -> Result<Vec<Formula>> {
    let names: Vec<&str> = names.collect();
    let mut slots: Vec<Option<Formula>> = vec![None; names.len()];
    for (name, f) in given {
        let i = names.iter().position(|n| *n == name).ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
        if slots[i].replace(f).is_some() {
            return Err(Error::DuplicateSymbol(name));
        }
    }
    slots
        .into_iter()
        .zip(names)
        .map(|(f, n)| f.ok_or_else(|| Error::MissingSymbol(n.to_string())))
        .collect()
}

/// A query specialised to one input size.
#[derive(Debug)]
pub struct PreparedQuery<'a> {
    query: &'a FirstOrderQuery,
    size: usize,
    plan: Option<Plan>,
}

/// A literal whose arguments are fixed once the output tuple is known.
#[derive(Debug, Clone)]
enum Ground {
    Slot { rel: usize, slot: usize },
    Dynamic { rel: usize, args: Vec<CTerm> },
}

#[derive(Debug, Clone)]
enum Cell {
    Const(bool),
    Lits(Vec<(Ground, bool)>),
}

/// Output tables of a projection-shaped query with a numeric universe: guards
/// are numeric, so for a fixed size each output cell reduces to a constant or
/// a disjunction of ground source literals.
#[derive(Debug)]
struct Plan {
    universe: Vec<Vec<usize>>,
    relations: Vec<Vec<Cell>>,
    constants: Vec<Vec<Cell>>,
}

struct Shape {
    guards: Vec<(CompiledFormula, Option<(CompiledFormula, bool)>)>,
}

impl Plan {
    fn build(q: &FirstOrderQuery, n: usize) -> Result<Option<Plan>> {
        if !q.universe.is_numeric() {
            return Ok(None);
        }
        let mut shapes = Vec::new();
        for (_, f, blocks) in q.named_formulas().into_iter().skip(1) {
            let Ok(disjuncts) = decompose(f) else { return Ok(None) };
            let names = block_vars(q.arity, blocks);
            let mut guards = Vec::new();
            for d in disjuncts {
                let guard = CompiledFormula::new(&Formula::And(d.guard), &q.source, &names)?;
                let lit = match d.literal {
                    Some((atom, neg)) => Some((CompiledFormula::new(&atom, &q.source, &names)?, neg)),
                    None => None,
                };
                guards.push((guard, lit));
            }
            shapes.push(Shape { guards });
        }
        let k = q.arity;
        let universe = numeric_tuples(&q.compiled[0], n, k);
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let big_n = universe.len();
        let mut relations = Vec::new();
        let mut constants = Vec::new();
        let rel_count = q.target.relations().len();
        for (idx, shape) in shapes.iter().enumerate() {
            let blocks = if idx < rel_count { q.target.relations()[idx].1 } else { 1 };
            let cells = (big_n as u128).pow(blocks as u32);
            if cells > 1 << 26 {
                return Err(Error::budget("query output cells", cells, 1 << 26));
            }
            let mut table = Vec::with_capacity(cells as usize);
            let mut env = vec![0usize; k * blocks];
            for cell in 0..cells as usize {
                fill_env(&mut env, cell, blocks, &universe, big_n);
                table.push(shape.cell(&env, n)?);
            }
            if idx < rel_count {
                relations.push(table);
            } else {
                constants.push(table);
            }
        }
        Ok(Some(Plan { universe, relations, constants }))
    }
}

impl Shape {
    fn cell(&self, env: &[usize], n: usize) -> Result<Cell> {
        let mut lits = Vec::new();
        for (guard, lit) in &self.guards {
            if !numeric_eval(guard, env, n)? {
                continue;
            }
            let Some((atom, neg)) = lit else { return Ok(Cell::Const(true)) };
            let Node::Rel { rel, args } = atom.root() else { unreachable!("literal atoms are relations") };
            let mut values = Vec::with_capacity(args.len());
            let mut dynamic = false;
            let resolved: Vec<CTerm> = args
                .iter()
                .map(|&t| match t {
                    CTerm::Slot(i) => CTerm::Value(env[i]),
                    CTerm::Max => CTerm::Value(n - 1),
                    other => other,
                })
                .collect();
            for t in &resolved {
                match *t {
                    CTerm::Value(v) => values.push(v),
                    _ => dynamic = true,
                }
            }
            if dynamic {
                lits.push((Ground::Dynamic { rel: *rel, args: resolved }, *neg));
            } else if values.iter().all(|&v| v < n) {
                let slot = values.iter().fold(0, |acc, &v| acc * n + v);
                lits.push((Ground::Slot { rel: *rel, slot }, *neg));
            } else if *neg {
                // The atom is false outside the universe, so its negation holds.
                return Ok(Cell::Const(true));
            }
        }
        Ok(if lits.is_empty() { Cell::Const(false) } else { Cell::Lits(lits) })
    }
}

fn numeric_eval(c: &CompiledFormula, env: &[usize], n: usize) -> Result<bool> {
    let mut full: Vec<Option<usize>> = env.iter().map(|&v| Some(v)).collect();
    full.resize(c.slots(), None);
    eval3(c.root(), n, None, &mut full).ok_or_else(|| Error::Invalid("guard is not numeric".into()))
}

fn numeric_tuples(c: &CompiledFormula, n: usize, k: usize) -> Vec<Vec<usize>> {
    let total = n.pow(k as u32);
    let mut out = Vec::new();
    let mut env: Vec<Option<usize>> = vec![None; c.slots()];
    for code in 0..total {
        let t = decode_tuple(code, n, k);
        for (e, v) in env.iter_mut().zip(&t) {
            *e = Some(*v);
        }
        if eval3(c.root(), n, None, &mut env) == Some(true) {
            out.push(t);
        }
    }
    out
}

fn decode_tuple(mut code: usize, n: usize, k: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for d in t.iter_mut().rev() {
        *d = code % n;
        code /= n;
    }
    t
}

/// Writes the concatenated source tuples of output cell `cell` into `env`.
fn fill_env(env: &mut [usize], mut cell: usize, blocks: usize, universe: &[Vec<usize>], big_n: usize) {
    let k = env.len() / blocks.max(1);
    for b in (0..blocks).rev() {
        let idx = cell % big_n;
        cell /= big_n;
        env[b * k..(b + 1) * k].copy_from_slice(&universe[idx]);
    }
}

fn ground_holds(g: &Ground, a: &Structure) -> bool {
    match g {
        Ground::Slot { rel, slot } => a.relation_at(*rel).get_slot(*slot),
        Ground::Dynamic { rel, args } => {
            let n = a.size();
            let mut slot = 0usize;
            for t in args {
                let v = match *t {
                    CTerm::Value(v) => v,
                    CTerm::Const(c) => a.constant_at(c),
                    CTerm::Max => n - 1,
                    CTerm::Slot(_) => unreachable!("slots are resolved when planning"),
                };
                if v >= n {
                    return false;
                }
                slot = slot * n + v;
            }
            a.relation_at(*rel).get_slot(slot)
        }
    }
}

impl Cell {
    fn holds(&self, a: &Structure) -> bool {
        match self {
            Cell::Const(b) => *b,
            Cell::Lits(lits) => lits.iter().any(|(g, neg)| ground_holds(g, a) != *neg),
        }
    }
}

impl PreparedQuery<'_> {
    pub fn size(&self) -> usize {
        self.size
    }

    /// True when the query was specialised into lookup tables.
    pub fn is_planned(&self) -> bool {
        self.plan.is_some()
    }

    pub fn apply(&self, a: &Structure) -> Result<Structure> {
        let q = self.query;
        if !a.vocab().same_symbols(&q.source) {
            return Err(Error::VocabularyMismatch { expected: q.source.name().into(), found: a.vocab().name().into() });
        }
        if a.size() != self.size {
            return Err(Error::Invalid(format!("query prepared for size {}, got {}", self.size, a.size())));
        }
        match &self.plan {
            Some(plan) => self.apply_plan(plan, a),
            None => self.apply_generic(a),
        }
    }

    fn apply_plan(&self, plan: &Plan, a: &Structure) -> Result<Structure> {
        let q = self.query;
        let big_n = plan.universe.len();
        let mut relations = Vec::with_capacity(plan.relations.len());
        for (table, (_, arity)) in plan.relations.iter().zip(q.target.relations()) {
            let mut rel = Relation::empty(*arity, big_n)?;
            for (slot, cell) in table.iter().enumerate() {
                if cell.holds(a) {
                    rel.set_slot(slot, true);
                }
            }
            relations.push(rel);
        }
        let mut constants = Vec::with_capacity(plan.constants.len());
        for (table, name) in plan.constants.iter().zip(q.target.constants()) {
            constants.push(unique_witness(name, table.iter().map(|c| c.holds(a)))?);
        }
        Ok(Structure::from_parts(q.target.clone(), big_n, relations, constants))
    }

    fn apply_generic(&self, a: &Structure) -> Result<Structure> {
        let q = self.query;
        let (n, k) = (a.size(), q.arity);
        let mut scratch = Vec::new();
        let mut universe = Vec::new();
        for code in 0..n.pow(k as u32) {
            let t = decode_tuple(code, n, k);
            scratch.clear();
            scratch.extend_from_slice(&t);
            if q.compiled[0].eval_with(a, &mut scratch) {
                universe.push(t);
            }
        }
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let big_n = universe.len();
        let mut relations = Vec::new();
        for (i, (_, arity)) in q.target.relations().iter().enumerate() {
            let compiled = &q.compiled[1 + i];
            let mut rel = Relation::empty(*arity, big_n)?;
            let mut env = vec![0; k * arity];
            for slot in 0..rel.slots() {
                fill_env(&mut env, slot, *arity, &universe, big_n);
                scratch.clear();
                scratch.extend_from_slice(&env);
                if compiled.eval_with(a, &mut scratch) {
                    rel.set_slot(slot, true);
                }
            }
            relations.push(rel);
        }
        let offset = 1 + q.target.relations().len();
        let mut constants = Vec::new();
        for (j, name) in q.target.constants().iter().enumerate() {
            let compiled = &q.compiled[offset + j];
            let hits = universe.iter().map(|t| {
                scratch.clear();
                scratch.extend_from_slice(t);
                compiled.eval_with(a, &mut scratch)
            });
            let hits: Vec<bool> = hits.collect();
            constants.push(unique_witness(name, hits.into_iter())?);
        }
        Ok(Structure::from_parts(q.target.clone(), big_n, relations, constants))
    }
}

fn unique_witness(name: &str, hits: impl Iterator<Item = bool>) -> Result<usize> {
    let found: Vec<usize> = hits.enumerate().filter(|(_, h)| *h).map(|(i, _)| i).collect();
    match found.as_slice() {
        [only] => Ok(*only),
        _ => Err(Error::ConstantWitness { constant: name.into(), count: found.len() }),
    }
}

/// `I(A)`: the universe is the set of `k`-tuples satisfying `φ₀`, re-indexed in
/// lexicographic order.
pub fn apply_query(q: &FirstOrderQuery, a: &Structure) -> Result<Structure> {
    q.prepare(a.size())?.apply(a)
}

/// `J(I(A))`.
pub fn compose_apply(i: &FirstOrderQuery, j: &FirstOrderQuery, a: &Structure) -> Result<Structure> {
    if !i.target.same_symbols(&j.source) {
        return Err(Error::VocabularyMismatch { expected: j.source.name().into(), found: i.target.name().into() });
    }
    let mid = apply_query(i, a)?;
    apply_query(j, &mid)
}
