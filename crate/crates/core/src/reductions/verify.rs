use std::sync::Arc;

use super::{NamedReduction, Problem};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::structure::{Structure, StructureSpace, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    pub budget: Budget,
    pub exec: Exec,
    /// Keep one row per instance (for reports); counterexamples are always kept.
    pub keep_rows: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerdictRow {
    pub size: usize,
    pub instance: u64,
    pub source: bool,
    pub target: bool,
}

impl VerdictRow {
    pub fn agrees(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub size: usize,
    pub instance: u64,
    pub input: Structure,
    pub source: bool,
    pub target: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub sizes: Vec<usize>,
    /// Instances checked at each entry of `sizes`.
    pub counts: Vec<u64>,
    pub instances: u64,
    pub agreements: u64,
    pub counterexamples: Vec<Counterexample>,
    pub rows: Vec<VerdictRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn summary(&self) -> String {
        format!("instances={} agreements={} counterexamples={}", self.instances, self.agreements, self.counterexamples.len())
    }

    fn absorb(&mut self, size: usize, verdicts: Vec<(u64, bool, bool)>, input: impl Fn(u64) -> Structure, keep: bool) {
        self.sizes.push(size);
        self.counts.push(verdicts.len() as u64);
        self.instances += verdicts.len() as u64;
        for (instance, source, target) in verdicts {
            if source == target {
                self.agreements += 1;
            } else {
                self.counterexamples.push(Counterexample { size, instance, input: input(instance), source, target });
            }
            if keep {
                self.rows.push(VerdictRow { size, instance, source, target });
            }
        }
    }
}

fn verdicts<G, M>(count: u64, get: G, map: M, source: &Problem, target: &Problem, opts: &VerifyOptions) -> Result<Vec<(u64, bool, bool)>>
where
    G: Fn(u64) -> Structure + Sync + Send,
    M: Fn(&Structure) -> Result<Structure> + Sync + Send,
{
    let run = |i: u64| -> Result<(u64, bool, bool)> {
        let a = get(i);
        let s = source.decide(&a, &opts.budget)?;
        let t = target.decide(&map(&a)?, &opts.budget)?;
        Ok((i, s, t))
    };
    opts.exec.map_range(count, run).into_iter().collect()
}

fn space(vocab: &Arc<Vocabulary>, size: usize, budget: &Budget) -> Result<StructureSpace> {
    StructureSpace::new(vocab.clone(), size, budget)
}

/// Checks `A ∈ source ⟺ red(A) ∈ target` on every structure of each size,
/// applying the query prepared once per size.
pub fn verify_reduction(red: &NamedReduction, sizes: &[usize], opts: &VerifyOptions) -> Result<VerificationReport> {
    let vocab = red.query.source().clone();
    let mut report = VerificationReport::default();
    for &size in sizes {
        let sp = space(&vocab, size, &opts.budget)?;
        let prepared = red.query.prepare(size)?;
        let v = verdicts(sp.len(), |i| sp.get(i), |a| prepared.apply(a), &red.source, &red.target, opts)?;
        report.absorb(size, v, |i| sp.get(i), opts.keep_rows);
    }
    Ok(report)
}

/// Like [`verify_reduction`] for an arbitrary instance map.
pub fn verify_map<M>(map: M, source: &Problem, target: &Problem, sizes: &[usize], opts: &VerifyOptions) -> Result<VerificationReport>
where
    M: Fn(&Structure) -> Result<Structure> + Sync + Send,
{
    let vocab = source.vocabulary();
    let mut report = VerificationReport::default();
    for &size in sizes {
        let sp = space(&vocab, size, &opts.budget)?;
        let v = verdicts(sp.len(), |i| sp.get(i), &map, source, target, opts)?;
        report.absorb(size, v, |i| sp.get(i), opts.keep_rows);
    }
    Ok(report)
}

/// Checks the given instances, numbered by position; sizes are grouped in
/// order of first appearance.
pub fn verify_instances<M>(
    map: M,
    source: &Problem,
    target: &Problem,
    instances: &[Structure],
    opts: &VerifyOptions,
) -> Result<VerificationReport>
where
    M: Fn(&Structure) -> Result<Structure> + Sync + Send,
{
    if instances.len() as u64 > opts.budget.max_instances {
        return Err(Error::budget("instances", instances.len() as u128, opts.budget.max_instances as u128));
    }
    let mut sizes: Vec<usize> = Vec::new();
    for a in instances {
        if !sizes.contains(&a.size()) {
            sizes.push(a.size());
        }
    }
    let all = verdicts(instances.len() as u64, |i| instances[i as usize].clone(), &map, source, target, opts)?;
    let mut report = VerificationReport::default();
    for size in sizes {
        let here: Vec<_> = all.iter().copied().filter(|&(i, _, _)| instances[i as usize].size() == size).collect();
        report.absorb(size, here, |i| instances[i as usize].clone(), opts.keep_rows);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fop::FirstOrderQuery;
    use crate::logic::{Formula, Term};
    use crate::reductions::qsat2_to_qunsat2;

    #[test]
    fn demorgan_has_no_counterexamples_at_size_one() {
        let r = qsat2_to_qunsat2().unwrap();
        let rep = verify_reduction(&r, &[1], &VerifyOptions { keep_rows: true, ..Default::default() }).unwrap();
        assert_eq!(rep.instances, 8);
        assert!(rep.passed());
        assert_eq!(rep.rows.len(), 8);
    }

    #[test]
    fn broken_reduction_is_caught() {
        // Swapping P and N alone is still a reduction (complement every
        // variable), so flip the existential marking instead.
        let mut r = qsat2_to_qunsat2().unwrap();
        let x = || Term::var("x1");
        let y = || Term::var("y1");
        r.query = FirstOrderQuery::new(
            "broken",
            r.query.source().clone(),
            r.query.target().clone(),
            1,
            Formula::True,
            vec![
                ("E".into(), Formula::not(Formula::rel("E", [x()]))),
                ("P".into(), Formula::rel("M", [x(), y()])),
                ("N".into(), Formula::rel("Q", [x(), y()])),
            ],
            vec![],
        )
        .unwrap();
        let rep = verify_reduction(&r, &[1, 2], &VerifyOptions::default()).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.agreements + rep.counterexamples.len() as u64, rep.instances);
        let first = &rep.counterexamples[0];
        assert_ne!(first.source, first.target);
    }

    #[test]
    fn swapped_p_and_n_still_preserve_membership() {
        let mut r = qsat2_to_qunsat2().unwrap();
        let x = || Term::var("x1");
        let y = || Term::var("y1");
        r.query = FirstOrderQuery::new(
            "swapped",
            r.query.source().clone(),
            r.query.target().clone(),
            1,
            Formula::True,
            vec![
                ("E".into(), Formula::rel("E", [x()])),
                ("P".into(), Formula::rel("Q", [x(), y()])),
                ("N".into(), Formula::rel("M", [x(), y()])),
            ],
            vec![],
        )
        .unwrap();
        assert!(verify_reduction(&r, &[1, 2], &VerifyOptions::default()).unwrap().passed());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let r = qsat2_to_qunsat2().unwrap();
        let seq = VerifyOptions { exec: Exec::Sequential, keep_rows: true, ..Default::default() };
        let par = VerifyOptions { exec: Exec::Parallel, keep_rows: true, ..Default::default() };
        assert_eq!(verify_reduction(&r, &[2], &seq).unwrap(), verify_reduction(&r, &[2], &par).unwrap());
    }
}
