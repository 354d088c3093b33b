//! Consistency of ground literal sequences over `σ_g`, the witness graphs for
//! 2CC and its complement, and exhaustive `(n, k)`-universality checks.

use std::collections::BTreeSet;
use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::problems::{maximal_cliques, two_cc_witness, Graph};

/// A ground literal `E(u, v)` or `¬E(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiteralCondition {
    pub relation: String,
    pub positive: bool,
    pub args: Vec<usize>,
}

impl LiteralCondition {
    pub fn edge(u: usize, v: usize) -> Self {
        LiteralCondition { relation: "E".into(), positive: true, args: vec![u, v] }
    }

    pub fn non_edge(u: usize, v: usize) -> Self {
        LiteralCondition { relation: "E".into(), positive: false, args: vec![u, v] }
    }

    fn pair(&self) -> Option<(usize, usize)> {
        match (self.relation.as_str(), self.args.as_slice()) {
            ("E", &[u, v]) => Some((u, v)),
            _ => None,
        }
    }

    fn unordered(&self) -> Option<(usize, usize)> {
        self.pair().map(|(u, v)| (u.min(v), u.max(v)))
    }

    /// Whether `g` satisfies the literal.
    pub fn holds_in(&self, g: &Graph) -> bool {
        match self.pair() {
            Some((u, v)) if u < g.node_count() && v < g.node_count() => g.has_edge(u, v) == self.positive,
            _ => false,
        }
    }
}

impl fmt::Display for LiteralCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
        write!(f, "{}{}({})", if self.positive { "" } else { "!" }, self.relation, args.join(","))
    }
}

impl std::str::FromStr for LiteralCondition {
    type Err = Error;

    /// `E(u,v)` or `!E(u,v)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("expected `E(u,v)` or `!E(u,v)`, found `{s}`"));
        let t = s.trim();
        let (positive, rest) = match t.strip_prefix('!') {
            Some(r) => (false, r.trim_start()),
            None => (true, t),
        };
        let inner = rest.strip_prefix("E(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let args = inner.split(',').map(|a| a.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        if args.len() != 2 {
            return Err(bad());
        }
        Ok(LiteralCondition { relation: "E".into(), positive, args })
    }
}

/// How conflicting literals are detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairReading {
    /// `E(u, v)` and `¬E(v, u)` conflict, since instances are simple graphs.
    #[default]
    Unordered,
    /// Only literals on the same ordered pair conflict.
    Ordered,
}

/// Whether some simple graph on `m` nodes satisfies every condition.
pub fn is_consistent_graph(conds: &[LiteralCondition], m: usize) -> bool {
    is_consistent_graph_with(conds, m, PairReading::Unordered)
}

pub fn is_consistent_graph_with(conds: &[LiteralCondition], m: usize, reading: PairReading) -> bool {
    let mut pos = BTreeSet::new();
    let mut neg = BTreeSet::new();
    for c in conds {
        let Some((u, v)) = c.pair() else { return false };
        if u >= m || v >= m || (c.positive && u == v) {
            return false;
        }
        let key = match reading {
            PairReading::Unordered => (u.min(v), u.max(v)),
            PairReading::Ordered => (u, v),
        };
        if c.positive { pos.insert(key) } else { neg.insert(key) };
    }
    pos.is_disjoint(&neg)
}

/// A witness graph with the red set of its 2-clique-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCcWitness {
    pub graph: Graph,
    pub red: BTreeSet<usize>,
}

impl TwoCcWitness {
    pub fn coloring(&self) -> Vec<bool> {
        (0..self.graph.node_count()).map(|v| self.red.contains(&v)).collect()
    }
}

fn check_consistent(conds: &[LiteralCondition], m: usize) -> Result<()> {
    if is_consistent_graph(conds, m) {
        Ok(())
    } else {
        let text: Vec<String> = conds.iter().map(|c| c.to_string()).collect();
        Err(Error::Inconsistent(format!("[{}] at size {m}", text.join(", "))))
    }
}

/// `K_m` when every condition is positive; otherwise the largest graph
/// omitting exactly the negated pairs, red on the nodes no negated pair
/// touches. Needs `m ≥ 2k + 1`.
pub fn witness_2cc(conds: &[LiteralCondition], m: usize) -> Result<TwoCcWitness> {
    check_consistent(conds, m)?;
    let need = 2 * conds.len() + 1;
    if m < need {
        return Err(Error::SizeTooSmall { what: "2CC witness size".into(), required: need, found: m });
    }
    let mut graph = Graph::complete(m);
    let negated: Vec<(usize, usize)> = conds.iter().filter(|c| !c.positive).filter_map(|c| c.unordered()).collect();
    if negated.is_empty() {
        return Ok(TwoCcWitness { graph, red: BTreeSet::from([0]) });
    }
    for &(u, v) in &negated {
        graph.remove_edge(u, v);
    }
    let touched: BTreeSet<usize> = negated.iter().flat_map(|&(u, v)| [u, v]).collect();
    let red = (0..m).filter(|v| !touched.contains(v)).collect();
    Ok(TwoCcWitness { graph, red })
}

/// Exactly the positive pairs, plus a 5-cycle on the first five nodes no
/// condition mentions.
pub fn witness_2cc_complement(conds: &[LiteralCondition], m: usize) -> Result<Graph> {
    check_consistent(conds, m)?;
    let touched: BTreeSet<usize> = conds.iter().filter_map(|c| c.pair()).flat_map(|(u, v)| [u, v]).collect();
    let free: Vec<usize> = (0..m).filter(|v| !touched.contains(v)).take(5).collect();
    if free.len() < 5 {
        return Err(Error::SizeTooSmall { what: "free nodes for a 5-cycle".into(), required: 5, found: free.len() });
    }
    let mut g = Graph::empty(m);
    for (u, v) in conds.iter().filter(|c| c.positive).filter_map(|c| c.unordered()) {
        g.add_edge(u, v)?;
    }
    for i in 0..5 {
        g.add_edge(free[i], free[(i + 1) % 5])?;
    }
    Ok(g)
}

/// Problems over `σ_g` with their witness constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphProblem {
    TwoCc,
    TwoCcComplement,
    TwoCcN(usize),
}

impl GraphProblem {
    pub fn decide(self, g: &Graph, budget: &Budget) -> Result<bool> {
        match self {
            GraphProblem::TwoCc => Ok(two_cc_witness(g, budget)?.is_some()),
            GraphProblem::TwoCcComplement => Ok(two_cc_witness(g, budget)?.is_none()),
            GraphProblem::TwoCcN(n) => Ok(g.node_count() < n || two_cc_witness(g, budget)?.is_some()),
        }
    }

    /// The constructed witness, when the construction applies.
    pub fn construct(self, conds: &[LiteralCondition], m: usize) -> Option<Graph> {
        match self {
            GraphProblem::TwoCc => witness_2cc(conds, m).ok().map(|w| w.graph),
            GraphProblem::TwoCcComplement => witness_2cc_complement(conds, m).ok(),
            GraphProblem::TwoCcN(n) if m < n => {
                let mut g = Graph::empty(m);
                for (u, v) in conds.iter().filter(|c| c.positive).filter_map(|c| c.unordered()) {
                    g.add_edge(u, v).ok()?;
                }
                Some(g)
            }
            GraphProblem::TwoCcN(_) => witness_2cc(conds, m).ok().map(|w| w.graph),
        }
    }
}

impl fmt::Display for GraphProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphProblem::TwoCc => f.write_str("2cc"),
            GraphProblem::TwoCcComplement => f.write_str("2cc-c"),
            GraphProblem::TwoCcN(n) => write!(f, "2cc-n:{n}"),
        }
    }
}

impl std::str::FromStr for GraphProblem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2cc" => Ok(GraphProblem::TwoCc),
            "2cc-c" => Ok(GraphProblem::TwoCcComplement),
            _ => s
                .strip_prefix("2cc-n:")
                .and_then(|n| n.parse().ok())
                .map(GraphProblem::TwoCcN)
                .ok_or_else(|| Error::Invalid(format!("unknown graph problem `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalityReport {
    pub problem: String,
    pub n: usize,
    pub k: usize,
    pub m_range: (usize, usize),
    pub pass: bool,
    /// The first failing size and condition sequence.
    pub counterexample: Option<(usize, Vec<LiteralCondition>)>,
    /// Witnesses checked against the conditions and the oracle.
    pub witnesses_validated: u64,
    /// Of those, how many came from exhaustive search rather than a construction.
    pub searched: u64,
    /// Condition multisets enumerated (up to pair orientation and order).
    pub sequences: u64,
    /// Ordered length-`k` literal sequences the multisets stand for.
    pub full_sequences: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UniversalityOptions {
    pub budget: Budget,
    pub exec: Exec,
}

/// Literals over `σ_g` at size `m`: positive first, pairs `u ≤ v`.
fn literals(m: usize) -> Vec<LiteralCondition> {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (u..m).map(move |v| (u, v))).collect();
    let pos = pairs.iter().map(|&(u, v)| LiteralCondition::edge(u, v));
    let neg = pairs.iter().map(|&(u, v)| LiteralCondition::non_edge(u, v));
    pos.chain(neg).collect()
}

/// All multisets of size `k` from `0..len`, as non-decreasing index lists in
/// lexicographic order.
fn multisets(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(len: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(len, k, i, cur, out);
            cur.pop();
        }
    }
    go(len, k, 0, &mut cur, &mut out);
    out
}

/// Outcome for one condition sequence.
enum Outcome {
    Inconsistent,
    Constructed,
    Searched,
    Missing,
}

fn search(problem: GraphProblem, conds: &[LiteralCondition], m: usize, budget: &Budget) -> Result<bool> {
    let fixed: BTreeSet<(usize, usize)> = conds.iter().filter_map(|c| c.unordered()).collect();
    let free: Vec<(usize, usize)> =
        (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).filter(|p| !fixed.contains(p)).collect();
    if free.len() as u32 > budget.max_search_bits {
        return Err(Error::budget("witness search edge slots", free.len() as u128, budget.max_search_bits as u128));
    }
    let mut base = Graph::empty(m);
    for (u, v) in conds.iter().filter(|c| c.positive).filter_map(|c| c.unordered()) {
        base.add_edge(u, v)?;
    }
    for mask in 0u64..1 << free.len() {
        let mut g = base.clone();
        for (i, &(u, v)) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v)?;
            }
        }
        if problem.decide(&g, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check_one(problem: GraphProblem, conds: &[LiteralCondition], m: usize, budget: &Budget) -> Result<Outcome> {
    if !is_consistent_graph(conds, m) {
        return Ok(Outcome::Inconsistent);
    }
    if let Some(g) = problem.construct(conds, m) {
        if !conds.iter().all(|c| c.holds_in(&g)) || !problem.decide(&g, budget)? {
            return Err(Error::Invalid(format!("constructed {problem} witness fails at size {m}")));
        }
        return Ok(Outcome::Constructed);
    }
    Ok(if search(problem, conds, m, budget)? { Outcome::Searched } else { Outcome::Missing })
}

/// For every `m` in `n..=m_max` and every consistent length-`k` literal
/// sequence at size `m`, looks for an `m`-node graph in the problem
/// satisfying it: the registered construction first, exhaustive search
/// otherwise. Stops at the first size with a failure.
pub fn check_universality(
    problem: GraphProblem,
    n: usize,
    k: usize,
    m_max: usize,
    opts: &UniversalityOptions,
) -> Result<UniversalityReport> {
    if m_max < n {
        return Err(Error::Invalid(format!("m_max {m_max} is below n {n}")));
    }
    let mut report = UniversalityReport {
        problem: problem.to_string(),
        n,
        k,
        m_range: (n, m_max),
        pass: true,
        counterexample: None,
        witnesses_validated: 0,
        searched: 0,
        sequences: 0,
        full_sequences: 0,
    };
    if k == 0 {
        // Without constant symbols there is nothing to satisfy.
        return Ok(report);
    }
    for m in n.max(1)..=m_max {
        let lits = literals(m);
        let seqs = multisets(lits.len(), k);
        if seqs.len() as u64 > opts.budget.max_instances {
            return Err(Error::budget("condition sequences", seqs.len() as u128, opts.budget.max_instances as u128));
        }
        report.sequences += seqs.len() as u64;
        report.full_sequences += (2 * m as u128 * m as u128).pow(k as u32);
        let conds_of = |i: u64| -> Vec<LiteralCondition> { seqs[i as usize].iter().map(|&j| lits[j].clone()).collect() };
        let outcomes = opts.exec.map_range(seqs.len() as u64, |i| check_one(problem, &conds_of(i), m, &opts.budget));
        for (i, outcome) in outcomes.into_iter().enumerate() {
            match outcome? {
                Outcome::Inconsistent => {}
                Outcome::Constructed => report.witnesses_validated += 1,
                Outcome::Searched => {
                    report.witnesses_validated += 1;
                    report.searched += 1;
                }
                Outcome::Missing => {
                    if report.counterexample.is_none() {
                        report.counterexample = Some((m, conds_of(i as u64)));
                    }
                }
            }
        }
        if report.counterexample.is_some() {
            report.pass = false;
            break;
        }
    }
    Ok(report)
}

/// From a passing `(n, k)` report, checks `(n, k − 1)` and `(n + 1, k)` up to
/// `m_max`.
pub fn check_monotone(
    problem: GraphProblem,
    verified: &UniversalityReport,
    m_max: usize,
    opts: &UniversalityOptions,
) -> Result<bool> {
    if !verified.pass {
        return Err(Error::Invalid("monotonicity needs a passing report".into()));
    }
    if verified.k == 0 {
        return Err(Error::Invalid("monotonicity needs k ≥ 1".into()));
    }
    let fewer = check_universality(problem, verified.n, verified.k - 1, m_max, opts)?;
    let larger = check_universality(problem, verified.n + 1, verified.k, m_max.max(verified.n + 1), opts)?;
    Ok(fewer.pass && larger.pass)
}

/// Whether the coloring leaves every maximal clique of two or more nodes
/// bichromatic.
pub fn coloring_is_valid(g: &Graph, red: &[bool]) -> Result<bool> {
    Ok(maximal_cliques(g)?.iter().filter(|c| c.len() >= 2).all(|c| {
        let reds = c.iter().filter(|&&v| red[v]).count();
        reds > 0 && reds < c.len()
    }))
}
