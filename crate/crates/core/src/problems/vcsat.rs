//! Value-cost satisfiability: pick the existential variables under a cost bound.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::qbf::{qsat2_witness, LiteralSet, Qbf2Dnf};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::structure::{Structure, Vocabulary};

/// A DNF over `vars` variables with a value per variable and a cost bound.
/// Values and cost are stored on `vars` bits by the `τ` encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VcsatInstance {
    pub vars: usize,
    pub implicants: Vec<LiteralSet>,
    pub values: Vec<u64>,
    pub cost: u64,
}

fn fits(value: u64, bits: usize) -> bool {
    bits >= 64 || value >> bits == 0
}

impl VcsatInstance {
    pub fn new(vars: usize, implicants: Vec<LiteralSet>, values: Vec<u64>, cost: u64) -> Result<Self> {
        Qbf2Dnf::new(vars, [], implicants.clone())?;
        if values.len() != vars {
            return Err(Error::Invalid(format!("{} values for {vars} variables", values.len())));
        }
        if let Some(&v) = values.iter().chain([&cost]).find(|&&v| !fits(v, vars)) {
            return Err(Error::Invalid(format!("value {v} does not fit in {vars} bits")));
        }
        Ok(VcsatInstance { vars, implicants, values, cost })
    }

    /// The QSat₂ instance obtained by making exactly `chosen` existential.
    pub fn with_existential(&self, chosen: &BTreeSet<usize>) -> Qbf2Dnf {
        Qbf2Dnf { vars: self.vars, existential: chosen.clone(), implicants: self.implicants.clone() }
    }
}

/// The first existential set (in subset-mask order) of total value at most
/// `cost` under which the DNF is a QSat₂ instance.
pub fn vcsat_witness(inst: &VcsatInstance, budget: &Budget) -> Result<Option<BTreeSet<usize>>> {
    let used: Vec<usize> = inst.implicants.iter().flat_map(|s| s.pos.iter().chain(&s.neg)).copied().collect::<BTreeSet<_>>().into_iter().collect();
    let cap = (budget.max_bool_vars / 2).min(30);
    if used.len() as u32 > cap {
        return Err(Error::budget("value-cost search variables", used.len() as u128, cap as u128));
    }
    // Variables that occur nowhere never help, so only subsets of `used` matter.
    for mask in 0..1u64 << used.len() {
        let chosen: BTreeSet<usize> = used.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        let total: u128 = chosen.iter().map(|&v| inst.values[v] as u128).sum();
        if total > inst.cost as u128 {
            continue;
        }
        if qsat2_witness(&inst.with_existential(&chosen), budget)?.is_some() {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

/// "Total value below K" is read as `≤ K`.
pub fn decide_vcsat(inst: &VcsatInstance) -> Result<bool> {
    Ok(vcsat_witness(inst, &Budget::default())?.is_some())
}

/// `P`/`N` as in `σ_cnf` occurrences of the DNF, `V(x, j)` iff bit `j` of the
/// value of `x` is set, `K(j)` iff bit `j` of the cost is set.
pub fn encode_vcsat(inst: &VcsatInstance) -> Result<Structure> {
    let n = inst.vars;
    if n == 0 {
        return Err(Error::SizeTooSmall { what: "encoding".into(), required: 1, found: 0 });
    }
    if inst.implicants.len() > n {
        return Err(Error::SizeTooSmall { what: "universe for implicants".into(), required: inst.implicants.len(), found: n });
    }
    let mut s = Structure::empty(Arc::new(Vocabulary::tau()), n)?;
    for (i, set) in inst.implicants.iter().enumerate() {
        for &p in &set.pos {
            s.insert("P", &[i, p])?;
        }
        for &q in &set.neg {
            s.insert("N", &[i, q])?;
        }
    }
    for (x, &v) in inst.values.iter().enumerate() {
        for j in (0..n.min(64)).filter(|&j| v >> j & 1 == 1) {
            s.insert("V", &[x, j])?;
        }
    }
    for j in (0..n.min(64)).filter(|&j| inst.cost >> j & 1 == 1) {
        s.insert("K", &[j])?;
    }
    Ok(s)
}

pub fn decode_vcsat(a: &Structure) -> Result<VcsatInstance> {
    let expected = Vocabulary::tau();
    if !a.vocab().same_symbols(&expected) {
        return Err(Error::VocabularyMismatch { expected: expected.name().into(), found: a.vocab().name().into() });
    }
    let n = a.size();
    if n > 64 {
        return Err(Error::budget("value bits", n as u128, 64));
    }
    let implicants = (0..n)
        .map(|i| LiteralSet::new((0..n).filter(|&v| a.holds("P", &[i, v])), (0..n).filter(|&v| a.holds("N", &[i, v]))))
        .collect();
    let values = (0..n).map(|x| (0..n).filter(|&j| a.holds("V", &[x, j])).fold(0u64, |acc, j| acc | 1 << j)).collect();
    let cost = (0..n).filter(|&j| a.holds("K", &[j])).fold(0u64, |acc, j| acc | 1 << j);
    Ok(VcsatInstance { vars: n, implicants, values, cost })
}
