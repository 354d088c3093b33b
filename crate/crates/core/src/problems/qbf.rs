//! Two-level quantified boolean instances and their brute-force deciders.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::structure::{Structure, Vocabulary};

/// Positive and negative variable occurrences of one implicant or clause.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiteralSet {
    pub pos: BTreeSet<usize>,
    pub neg: BTreeSet<usize>,
}

impl LiteralSet {
    pub fn new(pos: impl IntoIterator<Item = usize>, neg: impl IntoIterator<Item = usize>) -> Self {
        LiteralSet { pos: pos.into_iter().collect(), neg: neg.into_iter().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    /// Some variable occurs with both signs.
    pub fn is_complementary(&self) -> bool {
        self.pos.intersection(&self.neg).next().is_some()
    }

    fn max_var(&self) -> Option<usize> {
        self.pos.iter().chain(&self.neg).copied().max()
    }

    fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.pos.iter().chain(&self.neg).copied()
    }
}

fn check_indices(vars: usize, existential: &BTreeSet<usize>, sets: &[LiteralSet]) -> Result<()> {
    let worst = existential.iter().copied().chain(sets.iter().filter_map(LiteralSet::max_var)).max();
    match worst {
        Some(v) if v >= vars => Err(Error::OutOfRange { value: v, size: vars, context: "variable index".into() }),
        _ => Ok(()),
    }
}

/// `∃x ∀y φ(x, y)` with `φ` in DNF. Variables not marked existential are universal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Qbf2Dnf {
    pub vars: usize,
    pub existential: BTreeSet<usize>,
    pub implicants: Vec<LiteralSet>,
}

/// `∃x ∀y φ(x, y)` style instance with `φ` in CNF, shared by QUnsat₂ and ∃∃!Sat.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Qbf2Cnf {
    pub vars: usize,
    pub existential: BTreeSet<usize>,
    pub clauses: Vec<LiteralSet>,
}

impl Qbf2Dnf {
    pub fn new(
        vars: usize,
        existential: impl IntoIterator<Item = usize>,
        implicants: Vec<LiteralSet>,
    ) -> Result<Self> {
        let existential = existential.into_iter().collect();
        check_indices(vars, &existential, &implicants)?;
        Ok(Qbf2Dnf { vars, existential, implicants })
    }

    /// An equivalent instance whose variable count and implicant count both
    /// equal `max(size, vars, implicants)`. Added variables are universal and
    /// unused; added implicants are the contradiction `x₀ ∧ ¬x₀`.
    pub fn normalized(&self, size: usize) -> Qbf2Dnf {
        let n = size.max(self.vars).max(self.implicants.len()).max(1);
        let mut implicants = self.implicants.clone();
        implicants.resize(n, LiteralSet::new([0], [0]));
        Qbf2Dnf { vars: n, existential: self.existential.clone(), implicants }
    }
}

impl Qbf2Cnf {
    pub fn new(vars: usize, existential: impl IntoIterator<Item = usize>, clauses: Vec<LiteralSet>) -> Result<Self> {
        let existential = existential.into_iter().collect();
        check_indices(vars, &existential, &clauses)?;
        Ok(Qbf2Cnf { vars, existential, clauses })
    }

    /// Like [`Qbf2Dnf::normalized`], padding with the tautology `x₀ ∨ ¬x₀`.
    pub fn normalized(&self, size: usize) -> Qbf2Cnf {
        let n = size.max(self.vars).max(self.clauses.len()).max(1);
        let mut clauses = self.clauses.clone();
        clauses.resize(n, LiteralSet::new([0], [0]));
        Qbf2Cnf { vars: n, existential: self.existential.clone(), clauses }
    }
}

fn encode_sets(
    vocab: Vocabulary,
    vars: usize,
    existential: &BTreeSet<usize>,
    sets: &[LiteralSet],
    names: [&str; 3],
) -> Result<Structure> {
    if vars == 0 {
        return Err(Error::SizeTooSmall { what: "encoding".into(), required: 1, found: 0 });
    }
    if sets.len() > vars {
        return Err(Error::SizeTooSmall { what: "universe for implicants".into(), required: sets.len(), found: vars });
    }
    let mut s = Structure::empty(Arc::new(vocab), vars)?;
    for &e in existential {
        s.insert(names[0], &[e])?;
    }
    for (i, set) in sets.iter().enumerate() {
        for &p in &set.pos {
            s.insert(names[1], &[i, p])?;
        }
        for &q in &set.neg {
            s.insert(names[2], &[i, q])?;
        }
    }
    Ok(s)
}

fn decode_sets(a: &Structure, expected: &Vocabulary, names: [&str; 3]) -> Result<(BTreeSet<usize>, Vec<LiteralSet>)> {
    if !a.vocab().same_symbols(expected) {
        return Err(Error::VocabularyMismatch { expected: expected.name().into(), found: a.vocab().name().into() });
    }
    let n = a.size();
    let existential = (0..n).filter(|&v| a.holds(names[0], &[v])).collect();
    let sets = (0..n)
        .map(|i| {
            LiteralSet::new(
                (0..n).filter(|&v| a.holds(names[1], &[i, v])),
                (0..n).filter(|&v| a.holds(names[2], &[i, v])),
            )
        })
        .collect();
    Ok((existential, sets))
}

/// `E` marks existential variables, `Q(i, v)` / `M(i, v)` a positive / negative
/// occurrence of `v` in implicant `i`. The universe indexes both implicants and
/// variables, so it has `vars` elements and missing implicants are empty.
pub fn encode_dnf(inst: &Qbf2Dnf) -> Result<Structure> {
    encode_sets(Vocabulary::sigma_dnf(), inst.vars, &inst.existential, &inst.implicants, ["E", "Q", "M"])
}

/// Every universe element is read as both an implicant and a variable.
pub fn decode_dnf(a: &Structure) -> Result<Qbf2Dnf> {
    let (existential, implicants) = decode_sets(a, &Vocabulary::sigma_dnf(), ["E", "Q", "M"])?;
    Ok(Qbf2Dnf { vars: a.size(), existential, implicants })
}

pub fn encode_cnf(inst: &Qbf2Cnf) -> Result<Structure> {
    encode_sets(Vocabulary::sigma_cnf(), inst.vars, &inst.existential, &inst.clauses, ["E", "P", "N"])
}

pub fn decode_cnf(a: &Structure) -> Result<Qbf2Cnf> {
    let (existential, clauses) = decode_sets(a, &Vocabulary::sigma_cnf(), ["E", "P", "N"])?;
    Ok(Qbf2Cnf { vars: a.size(), existential, clauses })
}

/// Variables occurring in some literal set, compressed to bit positions.
struct Packed {
    /// Original index of each bit.
    vars: Vec<usize>,
    /// `(positive mask, negative mask)` per set.
    sets: Vec<(u64, u64)>,
    exist_mask: u64,
    univ_mask: u64,
    /// Universal variables that occur nowhere.
    idle_universal: usize,
}

fn pack(vars: usize, existential: &BTreeSet<usize>, sets: &[LiteralSet], budget: &Budget) -> Result<Packed> {
    let used: BTreeSet<usize> = sets.iter().flat_map(LiteralSet::vars).collect();
    let cap = budget.max_bool_vars.min(62);
    if used.len() as u32 > cap {
        return Err(Error::budget("relevant boolean variables", used.len() as u128, cap as u128));
    }
    let vars_list: Vec<usize> = used.iter().copied().collect();
    let bit = |v: usize| 1u64 << vars_list.binary_search(&v).expect("collected above");
    let packed_sets =
        sets.iter().map(|s| (s.pos.iter().fold(0, |m, &v| m | bit(v)), s.neg.iter().fold(0, |m, &v| m | bit(v)))).collect();
    let mut exist_mask = 0;
    let mut univ_mask = 0;
    for (i, v) in vars_list.iter().enumerate() {
        if existential.contains(v) {
            exist_mask |= 1 << i;
        } else {
            univ_mask |= 1 << i;
        }
    }
    let idle_universal = (0..vars).filter(|v| !used.contains(v) && !existential.contains(v)).count();
    Ok(Packed { vars: vars_list, sets: packed_sets, exist_mask, univ_mask, idle_universal })
}

/// All submasks of `mask` in increasing order.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
        Some(cur)
    })
}

impl Packed {
    #[inline]
    fn dnf_true(&self, a: u64) -> bool {
        self.sets.iter().any(|&(p, n)| a & p == p && a & n == 0)
    }

    #[inline]
    fn cnf_true(&self, a: u64) -> bool {
        self.sets.iter().all(|&(p, n)| a & p != 0 || a & n != n)
    }

    fn unpack(&self, a: u64, mask: u64) -> BTreeSet<usize> {
        (0..self.vars.len()).filter(|i| mask & a >> i & 1 == 1).map(|i| self.vars[i]).collect()
    }
}

/// Existential variables set to true by the first (in increasing mask order)
/// existential assignment that makes the DNF true for every universal
/// assignment. Existential variables that occur nowhere are left false.
pub fn qsat2_witness(inst: &Qbf2Dnf, budget: &Budget) -> Result<Option<BTreeSet<usize>>> {
    let p = pack(inst.vars, &inst.existential, &inst.implicants, budget)?;
    Ok(submasks(p.exist_mask)
        .find(|&e| submasks(p.univ_mask).all(|u| p.dnf_true(e | u)))
        .map(|e| p.unpack(e, p.exist_mask)))
}

pub fn decide_qsat2(inst: &Qbf2Dnf) -> Result<bool> {
    Ok(qsat2_witness(inst, &Budget::default())?.is_some())
}

pub fn qunsat2_witness(inst: &Qbf2Cnf, budget: &Budget) -> Result<Option<BTreeSet<usize>>> {
    let p = pack(inst.vars, &inst.existential, &inst.clauses, budget)?;
    Ok(submasks(p.exist_mask)
        .find(|&e| submasks(p.univ_mask).all(|u| !p.cnf_true(e | u)))
        .map(|e| p.unpack(e, p.exist_mask)))
}

pub fn decide_qunsat2(inst: &Qbf2Cnf) -> Result<bool> {
    Ok(qunsat2_witness(inst, &Budget::default())?.is_some())
}

/// An existential assignment with exactly one satisfying universal completion,
/// together with that completion (true variables of each).
pub fn unique_ext_witness(inst: &Qbf2Cnf, budget: &Budget) -> Result<Option<(BTreeSet<usize>, BTreeSet<usize>)>> {
    let p = pack(inst.vars, &inst.existential, &inst.clauses, budget)?;
    if p.idle_universal > 0 {
        // Each unused universal variable doubles every completion count.
        return Ok(None);
    }
    for e in submasks(p.exist_mask) {
        let mut models = submasks(p.univ_mask).filter(|&u| p.cnf_true(e | u));
        if let (Some(u), None) = (models.next(), models.next()) {
            return Ok(Some((p.unpack(e, p.exist_mask), p.unpack(u, p.univ_mask))));
        }
    }
    Ok(None)
}

pub fn decide_unique_ext(inst: &Qbf2Cnf) -> Result<bool> {
    Ok(unique_ext_witness(inst, &Budget::default())?.is_some())
}

/// Number of satisfying assignments of a CNF over all of its variables.
pub fn count_models(vars: usize, clauses: &[LiteralSet], budget: &Budget) -> Result<u128> {
    let p = pack(vars, &BTreeSet::new(), clauses, budget)?;
    let relevant = submasks(p.univ_mask).filter(|&u| p.cnf_true(u)).count() as u128;
    Ok(relevant << p.idle_universal)
}
