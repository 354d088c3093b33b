//! The reductions between the problems, as first-order queries with optional
//! direct constructions, and a harness that checks membership preservation.

mod demorgan;
mod generic;
mod marx;
mod padding;
mod unique;
mod value_cost;
mod verify;

use std::fmt;
use std::sync::Arc;

pub use demorgan::qsat2_to_qunsat2;
pub use generic::{compile_sentence, generic_to_qsat2, toy_sentence};
pub use marx::{marx_graph, qsat2_to_2cc, Node as MarxNode};
pub use padding::{cardinality_sentence, pad_graph, padding_copies, padding_query, padding_reduction};
pub use unique::{qunsat2_to_unique, unique_transform};
pub use value_cost::{qsat2_to_vcsat, vcsat_image};
pub use verify::{
    verify_instances, verify_map, verify_reduction, Counterexample, VerdictRow, VerificationReport, VerifyOptions,
};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fop::{validate_projection, FirstOrderQuery, ProjectionReport};
use crate::logic::{eval_so2, Formula};
use crate::problems::{
    decode_cnf, decode_dnf, decode_graph, decode_vcsat, decide_2cc_n_within, qsat2_witness, qunsat2_witness,
    two_cc_witness, unique_ext_witness, vcsat_witness,
};
use crate::structure::{Structure, Vocabulary};

/// A decision problem over encoded structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    Qsat2,
    Qunsat2,
    UniqueExt,
    TwoCc,
    /// 2CC padded with every graph of fewer than `n` nodes.
    TwoCcN(usize),
    Vcsat,
    /// The models of a second-order sentence.
    Definable { name: String, vocab: Arc<Vocabulary>, sentence: Formula },
}

impl Problem {
    pub fn vocabulary(&self) -> Arc<Vocabulary> {
        match self {
            Problem::Qsat2 => Arc::new(Vocabulary::sigma_dnf()),
            Problem::Qunsat2 | Problem::UniqueExt => Arc::new(Vocabulary::sigma_cnf()),
            Problem::TwoCc | Problem::TwoCcN(_) => Arc::new(Vocabulary::sigma_g()),
            Problem::Vcsat => Arc::new(Vocabulary::tau()),
            Problem::Definable { vocab, .. } => vocab.clone(),
        }
    }

    /// Membership of an encoded instance.
    pub fn decide(&self, a: &Structure, budget: &Budget) -> Result<bool> {
        Ok(match self {
            Problem::Qsat2 => qsat2_witness(&decode_dnf(a)?, budget)?.is_some(),
            Problem::Qunsat2 => qunsat2_witness(&decode_cnf(a)?, budget)?.is_some(),
            Problem::UniqueExt => unique_ext_witness(&decode_cnf(a)?, budget)?.is_some(),
            Problem::TwoCc => two_cc_witness(&decode_graph(a)?, budget)?.is_some(),
            Problem::TwoCcN(n) => decide_2cc_n_within(&decode_graph(a)?, *n, budget)?,
            Problem::Vcsat => vcsat_witness(&decode_vcsat(a)?, budget)?.is_some(),
            Problem::Definable { vocab, sentence, .. } => {
                if !a.vocab().same_symbols(vocab) {
                    return Err(Error::VocabularyMismatch {
                        expected: vocab.name().into(),
                        found: a.vocab().name().into(),
                    });
                }
                eval_so2(a, sentence, budget)?
            }
        })
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Qsat2 => f.write_str("qsat2"),
            Problem::Qunsat2 => f.write_str("qunsat2"),
            Problem::UniqueExt => f.write_str("unique-ext"),
            Problem::TwoCc => f.write_str("2cc"),
            Problem::TwoCcN(n) => write!(f, "2cc-n:{n}"),
            Problem::Vcsat => f.write_str("vcsat"),
            Problem::Definable { name, .. } => write!(f, "mod[{name}]"),
        }
    }
}

impl std::str::FromStr for Problem {
    type Err = Error;

    /// The built-in problems by their display names.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "qsat2" => Problem::Qsat2,
            "qunsat2" => Problem::Qunsat2,
            "unique-ext" => Problem::UniqueExt,
            "2cc" => Problem::TwoCc,
            "vcsat" => Problem::Vcsat,
            _ => match s.strip_prefix("2cc-n:").and_then(|n| n.parse().ok()) {
                Some(n) => Problem::TwoCcN(n),
                None => return Err(Error::UnknownSymbol(s.to_string())),
            },
        })
    }
}

/// Whether a reduction transcribes the printed formulas or the construction
/// they are meant to describe, where the two differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fidelity {
    Verbatim,
    #[default]
    Corrected,
}

impl std::str::FromStr for Fidelity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "verbatim" => Ok(Fidelity::Verbatim),
            "corrected" => Ok(Fidelity::Corrected),
            other => Err(Error::Invalid(format!("unknown fidelity `{other}`"))),
        }
    }
}

pub type DirectMap = Arc<dyn Fn(&Structure) -> Result<Structure> + Send + Sync>;

#[derive(Clone)]
pub struct NamedReduction {
    pub name: String,
    pub source: Problem,
    pub target: Problem,
    pub query: FirstOrderQuery,
    pub fidelity: Fidelity,
    /// Instance-level construction that should agree with the query.
    pub direct: Option<DirectMap>,
}

impl fmt::Debug for NamedReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NamedReduction")
            .field("name", &self.name)
            .field("source", &self.source)
            .field("target", &self.target)
            .field("fidelity", &self.fidelity)
            .field("direct", &self.direct.is_some())
            .finish()
    }
}

impl NamedReduction {
    pub fn apply(&self, a: &Structure) -> Result<Structure> {
        crate::fop::apply_query(&self.query, a)
    }

    pub fn apply_direct(&self, a: &Structure) -> Option<Result<Structure>> {
        self.direct.as_ref().map(|d| d(a))
    }

    pub fn validate(&self, bound: usize) -> ProjectionReport {
        validate_projection(&self.query, bound)
    }
}

/// Names accepted by [`by_name`]; `pad-2cc` takes a threshold as `pad-2cc:<n>`.
pub const REDUCTION_NAMES: [&str; 6] = ["gen-qsat2", "qsat2-qunsat2", "qunsat2-unique", "qsat2-2cc", "pad-2cc:<n>", "qsat2-vcsat"];

/// Looks a reduction up by its command-line name. `gen-qsat2` compiles the
/// built-in toy sentence.
pub fn by_name(name: &str, fidelity: Fidelity) -> Result<NamedReduction> {
    match name {
        "gen-qsat2" => compile_sentence("gen-qsat2", &toy_sentence(), Arc::new(Vocabulary::sigma_g())),
        "qsat2-qunsat2" => qsat2_to_qunsat2(),
        "qunsat2-unique" => qunsat2_to_unique(fidelity),
        "qsat2-2cc" => qsat2_to_2cc(),
        "qsat2-vcsat" => qsat2_to_vcsat(),
        _ => match name.strip_prefix("pad-2cc:") {
            Some(n) => {
                let n = n.parse().map_err(|_| Error::Invalid(format!("bad padding threshold in `{name}`")))?;
                padding_reduction(n)
            }
            None => Err(Error::UnknownSymbol(name.to_string())),
        },
    }
}

/// Every shipped reduction, with padding thresholds `2..=8`.
pub fn shipped(fidelity: Fidelity) -> Result<Vec<NamedReduction>> {
    let mut out = Vec::new();
    for name in ["gen-qsat2", "qsat2-qunsat2", "qunsat2-unique", "qsat2-2cc", "qsat2-vcsat"] {
        out.push(by_name(name, fidelity)?);
    }
    for n in 2..=8 {
        out.push(padding_reduction(n)?);
    }
    Ok(out)
}

/// Bits needed to write the numbers `0..m`, at least one.
pub(crate) fn code_bits(m: usize) -> usize {
    (usize::BITS - m.saturating_sub(1).leading_zeros()).max(1) as usize
}

/// `block`'s first `bits` coordinates spell `code` in binary, most
/// significant first.
pub(crate) fn code_guard(block: usize, bits: usize, code: usize) -> Vec<Formula> {
    use crate::fop::block_var;
    use crate::logic::Term;
    (0..bits).map(|p| Formula::eq(Term::Var(block_var(block, p)), Term::Num(code >> (bits - 1 - p) & 1))).collect()
}
