//! Relational vocabularies, finite structures over `{0, …, n-1}` and the
//! built-in numeric relations.

use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Names that belong to the logic itself and can never be declared by a vocabulary.
pub const RESERVED_NAMES: &[&str] = &[
    "BIT", "PLUS", "TIMES", "SUC", "max", "true", "false", "exists", "forall", "exists2",
    "forall2", "const", "vocab", "structure", "fop",
];

/// Upper bound on the number of tuple slots a single relation may occupy.
const MAX_RELATION_SLOTS: u128 = 1 << 32;

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vocabulary {
    name: String,
    relations: Vec<(String, usize)>,
    constants: Vec<String>,
}

impl Vocabulary {
    pub fn new<R, S, C>(name: impl Into<String>, relations: R, constants: C) -> Result<Self>
    where
        R: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
        C: IntoIterator,
        C::Item: Into<String>,
    {
        let vocab = Vocabulary {
            name: name.into(),
            relations: relations.into_iter().map(|(s, a)| (s.into(), a)).collect(),
            constants: constants.into_iter().map(Into::into).collect(),
        };
        vocab.validate()?;
        Ok(vocab)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        let names = self.relations.iter().map(|(n, _)| n).chain(self.constants.iter());
        for name in names {
            if RESERVED_NAMES.contains(&name.as_str()) {
                return Err(Error::ReservedSymbol(name.clone()));
            }
            if !is_identifier(name) {
                return Err(Error::InvalidVocabulary(format!("`{name}` is not an identifier")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        if let Some((name, _)) = self.relations.iter().find(|(_, a)| *a == 0) {
            return Err(Error::InvalidVocabulary(format!("relation `{name}` has arity 0")));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn relations(&self) -> &[(String, usize)] {
        &self.relations
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn relation_index(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|(n, _)| n == name)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }

    pub fn constant_index(&self, name: &str) -> Option<usize> {
        self.constants.iter().position(|c| c == name)
    }

    /// Same symbols, ignoring the vocabulary name.
    pub fn same_symbols(&self, other: &Vocabulary) -> bool {
        self.relations == other.relations && self.constants == other.constants
    }

    /// `⟨E¹, Q², M²⟩`: existential marks, positive and negative occurrences in DNF implicants.
    pub fn sigma_dnf() -> Self {
        Self::fixed("sigma_dnf", &[("E", 1), ("Q", 2), ("M", 2)])
    }

    /// `⟨E¹, P², N²⟩`: existential marks, positive and negative occurrences in CNF clauses.
    pub fn sigma_cnf() -> Self {
        Self::fixed("sigma_cnf", &[("E", 1), ("P", 2), ("N", 2)])
    }

    /// `⟨E²⟩`: graphs.
    pub fn sigma_g() -> Self {
        Self::fixed("sigma_g", &[("E", 2)])
    }

    /// `⟨P², N², V², K¹⟩`: value-cost satisfiability instances.
    pub fn tau() -> Self {
        Self::fixed("tau", &[("P", 2), ("N", 2), ("V", 2), ("K", 1)])
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "sigma_dnf" => Some(Self::sigma_dnf()),
            "sigma_cnf" => Some(Self::sigma_cnf()),
            "sigma_g" => Some(Self::sigma_g()),
            "tau" => Some(Self::tau()),
            _ => None,
        }
    }

    fn fixed(name: &str, rels: &[(&str, usize)]) -> Self {
        Vocabulary {
            name: name.to_string(),
            relations: rels.iter().map(|(n, a)| (n.to_string(), *a)).collect(),
            constants: Vec::new(),
        }
    }
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vocab {} {{", self.name)?;
        for (name, arity) in &self.relations {
            write!(f, " {name}/{arity}")?;
        }
        if !self.constants.is_empty() {
            f.write_str(" ; const")?;
            for c in &self.constants {
                write!(f, " {c}")?;
            }
        }
        f.write_str(" }")
    }
}

/// A relation over `{0, …, size-1}` stored as a dense bit table indexed by the
/// big-endian mixed-radix value of the tuple. Iteration is lexicographic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    size: usize,
    slots: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(arity: usize, size: usize) -> Result<Self> {
        let slots = (size as u128).pow(arity as u32);
        if slots > MAX_RELATION_SLOTS {
            return Err(Error::budget("relation table slots", slots, MAX_RELATION_SLOTS));
        }
        let slots = slots as usize;
        Ok(Relation { arity, size, slots, bits: vec![0; slots.div_ceil(64)] })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of tuple slots, `size^arity`.
    pub fn slots(&self) -> usize {
        self.slots
    }

    fn index(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.arity {
            return None;
        }
        let mut idx = 0usize;
        for &v in tuple {
            if v >= self.size {
                return None;
            }
            idx = idx * self.size + v;
        }
        Some(idx)
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.index(tuple).is_some_and(|i| self.get_slot(i))
    }

    #[inline]
    pub fn get_slot(&self, slot: usize) -> bool {
        self.bits[slot / 64] >> (slot % 64) & 1 == 1
    }

    #[inline]
    pub fn set_slot(&mut self, slot: usize, value: bool) {
        let word = &mut self.bits[slot / 64];
        if value {
            *word |= 1 << (slot % 64);
        } else {
            *word &= !(1 << (slot % 64));
        }
    }

    pub fn insert(&mut self, tuple: &[usize]) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                symbol: "<tuple>".into(),
                expected: self.arity,
                found: tuple.len(),
            });
        }
        match self.index(tuple) {
            Some(i) => {
                self.set_slot(i, true);
                Ok(())
            }
            None => {
                let value = tuple.iter().copied().find(|&v| v >= self.size).unwrap_or(0);
                Err(Error::OutOfRange { value, size: self.size, context: format!("{tuple:?}") })
            }
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Tuple stored at `slot` (big-endian digits).
    pub fn tuple_of(&self, mut slot: usize) -> Vec<usize> {
        let mut t = vec![0; self.arity];
        for d in t.iter_mut().rev() {
            *d = slot % self.size;
            slot /= self.size;
        }
        t
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.slots).filter(|&s| self.get_slot(s)).map(|s| self.tuple_of(s))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite structure with universe `{0, …, size-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    vocab: Arc<Vocabulary>,
    size: usize,
    relations: Vec<Relation>,
    constants: Vec<usize>,
}

impl Structure {
    /// All relations empty, all constants at 0.
    pub fn empty(vocab: Arc<Vocabulary>, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::SizeTooSmall { what: "structure".into(), required: 1, found: 0 });
        }
        let relations = vocab
            .relations()
            .iter()
            .map(|(_, a)| Relation::empty(*a, size))
            .collect::<Result<Vec<_>>>()?;
        let constants = vec![0; vocab.constants().len()];
        Ok(Structure { vocab, size, relations, constants })
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn vocab_arc(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.vocab.relation_index(name).map(|i| &self.relations[i])
    }

    pub fn relation_at(&self, index: usize) -> &Relation {
        &self.relations[index]
    }

    pub fn relation_at_mut(&mut self, index: usize) -> &mut Relation {
        &mut self.relations[index]
    }

    pub fn holds(&self, name: &str, tuple: &[usize]) -> bool {
        self.relation(name).is_some_and(|r| r.contains(tuple))
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.vocab.constant_index(name).map(|i| self.constants[i])
    }

    pub fn constant_at(&self, index: usize) -> usize {
        self.constants[index]
    }

    pub fn insert(&mut self, name: &str, tuple: &[usize]) -> Result<()> {
        let idx = self.vocab.relation_index(name).ok_or_else(|| Error::UnknownSymbol(name.into()))?;
        let rel = &mut self.relations[idx];
        if tuple.len() != rel.arity() {
            return Err(Error::ArityMismatch {
                symbol: name.into(),
                expected: rel.arity(),
                found: tuple.len(),
            });
        }
        rel.insert(tuple).map_err(|e| match e {
            Error::OutOfRange { value, size, .. } => {
                Error::OutOfRange { value, size, context: format!("{name}{tuple:?}") }
            }
            other => other,
        })
    }

    pub fn set_constant(&mut self, name: &str, value: usize) -> Result<()> {
        let idx = self.vocab.constant_index(name).ok_or_else(|| Error::UnknownSymbol(name.into()))?;
        if value >= self.size {
            return Err(Error::OutOfRange { value, size: self.size, context: name.into() });
        }
        self.constants[idx] = value;
        Ok(())
    }

    /// Replaces the vocabulary with one carrying the same symbols under another name.
    pub fn with_vocab(mut self, vocab: Arc<Vocabulary>) -> Result<Self> {
        if !self.vocab.same_symbols(&vocab) {
            return Err(Error::VocabularyMismatch {
                expected: vocab.name().into(),
                found: self.vocab.name().into(),
            });
        }
        self.vocab = vocab;
        Ok(self)
    }

    pub(crate) fn from_parts(
        vocab: Arc<Vocabulary>,
        size: usize,
        relations: Vec<Relation>,
        constants: Vec<usize>,
    ) -> Self {
        Structure { vocab, size, relations, constants }
    }
}

/// Builds a validated structure. Every declared relation and constant must be
/// given exactly once.
pub fn make_structure(
    vocab: Arc<Vocabulary>,
    size: usize,
    relations: &[(&str, Vec<Vec<usize>>)],
    constants: &[(&str, usize)],
) -> Result<Structure> {
    let mut s = Structure::empty(vocab.clone(), size)?;
    let mut seen = std::collections::BTreeSet::new();
    for (name, tuples) in relations {
        if !seen.insert(*name) {
            return Err(Error::DuplicateSymbol(name.to_string()));
        }
        if vocab.relation_index(name).is_none() {
            return Err(Error::UnknownSymbol(name.to_string()));
        }
        for t in tuples {
            s.insert(name, t)?;
        }
    }
    for (name, value) in constants {
        if !seen.insert(*name) {
            return Err(Error::DuplicateSymbol(name.to_string()));
        }
        s.set_constant(name, *value)?;
    }
    for name in vocab.relations().iter().map(|(n, _)| n).chain(vocab.constants()) {
        if !seen.contains(name.as_str()) {
            return Err(Error::MissingSymbol(name.clone()));
        }
    }
    Ok(s)
}

/// Built-in numeric relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumericRelation {
    Le,
    Bit,
    Plus,
    Times,
    Suc,
}

impl NumericRelation {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "<=" => NumericRelation::Le,
            "BIT" => NumericRelation::Bit,
            "PLUS" => NumericRelation::Plus,
            "TIMES" => NumericRelation::Times,
            "SUC" => NumericRelation::Suc,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            NumericRelation::Le => "<=",
            NumericRelation::Bit => "BIT",
            NumericRelation::Plus => "PLUS",
            NumericRelation::Times => "TIMES",
            NumericRelation::Suc => "SUC",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            NumericRelation::Le | NumericRelation::Bit | NumericRelation::Suc => 2,
            NumericRelation::Plus | NumericRelation::Times => 3,
        }
    }

    /// Standard arithmetic reading. `BIT(x, j)` is bit `j` of `x`, least significant first.
    #[inline]
    pub fn eval(self, args: &[usize]) -> bool {
        match self {
            NumericRelation::Le => args[0] <= args[1],
            NumericRelation::Bit => args[1] < usize::BITS as usize && (args[0] >> args[1]) & 1 == 1,
            NumericRelation::Plus => args[0].checked_add(args[1]) == Some(args[2]),
            NumericRelation::Times => args[0].checked_mul(args[1]) == Some(args[2]),
            NumericRelation::Suc => args[0].checked_add(1) == Some(args[1]),
        }
    }
}

/// Evaluates a numeric relation by name over the universe `{0, …, size-1}`.
pub fn numeric_holds(symbol: &str, args: &[usize], size: usize) -> Result<bool> {
    let rel = NumericRelation::from_name(symbol).ok_or_else(|| Error::UnknownSymbol(symbol.into()))?;
    if args.len() != rel.arity() {
        return Err(Error::ArityMismatch {
            symbol: symbol.into(),
            expected: rel.arity(),
            found: args.len(),
        });
    }
    if let Some(&v) = args.iter().find(|&&v| v >= size) {
        return Err(Error::OutOfRange { value: v, size, context: symbol.into() });
    }
    Ok(rel.eval(args))
}

/// The space of all structures over a vocabulary with a fixed universe size,
/// addressable by index.
///
/// Index bit `p` (least significant first) is slot `p` of the concatenated
/// relation tables in declaration order; constant values occupy the
/// higher-order mixed-radix digits.
#[derive(Debug, Clone)]
pub struct StructureSpace {
    vocab: Arc<Vocabulary>,
    size: usize,
    relation_bits: Vec<usize>,
    total_bits: u32,
    count: u64,
}

impl StructureSpace {
    pub fn new(vocab: Arc<Vocabulary>, size: usize, budget: &Budget) -> Result<Self> {
        if size == 0 {
            return Err(Error::SizeTooSmall { what: "enumeration".into(), required: 1, found: 0 });
        }
        let relation_bits: Vec<u128> =
            vocab.relations().iter().map(|(_, a)| (size as u128).pow(*a as u32)).collect();
        let total: u128 = relation_bits.iter().sum();
        let const_count = (size as u128).checked_pow(vocab.constants().len() as u32);
        let count = if total >= 127 { None } else { const_count.and_then(|c| c.checked_mul(1u128 << total)) };
        let cap = budget.max_instances as u128;
        match count {
            Some(c) if c <= cap && total < 64 => Ok(StructureSpace {
                relation_bits: relation_bits.iter().map(|&b| b as usize).collect(),
                total_bits: total as u32,
                count: c as u64,
                vocab,
                size,
            }),
            Some(c) => Err(Error::budget("structure enumeration", c, cap)),
            None => Err(Error::budget("structure enumeration", u128::MAX, cap)),
        }
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn get(&self, index: u64) -> Structure {
        assert!(index < self.count, "structure index {index} out of range");
        let mut rel_code = if self.total_bits == 0 { 0 } else { index & (u64::MAX >> (64 - self.total_bits)) };
        let mut const_code = if self.total_bits == 0 { index } else { index >> self.total_bits };
        let mut relations = Vec::with_capacity(self.relation_bits.len());
        for (i, &bits) in self.relation_bits.iter().enumerate() {
            let mut rel = Relation::empty(self.vocab.relations()[i].1, self.size)
                .expect("slot count checked at construction");
            for slot in 0..bits {
                if rel_code & 1 == 1 {
                    rel.set_slot(slot, true);
                }
                rel_code >>= 1;
            }
            relations.push(rel);
        }
        let constants = (0..self.vocab.constants().len())
            .map(|_| {
                let v = (const_code % self.size as u64) as usize;
                const_code /= self.size as u64;
                v
            })
            .collect();
        Structure::from_parts(self.vocab.clone(), self.size, relations, constants)
    }

    pub fn iter(&self) -> impl Iterator<Item = Structure> + '_ {
        (0..self.count).map(move |i| self.get(i))
    }
}

/// Every structure over `vocab` with universe `{0, …, size-1}`, each exactly once,
/// in index order.
pub fn enumerate_structures(
    vocab: Arc<Vocabulary>,
    size: usize,
    budget: &Budget,
) -> Result<impl Iterator<Item = Structure>> {
    let space = StructureSpace::new(vocab, size, budget)?;
    Ok((0..space.len()).map(move |i| space.get(i)))
}
