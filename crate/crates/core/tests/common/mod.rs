//! Brute-force oracles that read structures directly, sharing no code with the
//! library deciders.

#![allow(dead_code)]

use fopkit::Structure;

/// Rows of a σ_dnf / σ_cnf / τ structure as `(pos, neg)` bitmasks per row.
fn rows(a: &Structure, pos: &str, neg: &str) -> Vec<(u64, u64)> {
    let n = a.size();
    (0..n)
        .map(|i| {
            let mask = |rel: &str| (0..n).filter(|&v| a.holds(rel, &[i, v])).fold(0u64, |m, v| m | 1 << v);
            (mask(pos), mask(neg))
        })
        .collect()
}

fn unary(a: &Structure, rel: &str) -> u64 {
    (0..a.size()).filter(|&v| a.holds(rel, &[v])).fold(0, |m, v| m | 1 << v)
}

/// Positions of the set bits of `mask`.
fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).collect()
}

/// All assignments to `vars` (as bitmasks over the variable indices).
fn assignments(vars: &[usize]) -> Vec<u64> {
    (0u64..1 << vars.len())
        .map(|m| vars.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0u64, |acc, (_, &v)| acc | 1 << v))
        .collect()
}

fn term_true(pos: u64, neg: u64, assignment: u64) -> bool {
    pos & !assignment == 0 && neg & assignment == 0
}

fn used(rows: &[(u64, u64)]) -> u64 {
    rows.iter().fold(0, |m, &(p, q)| m | p | q)
}

/// `∃e ∀u` DNF over the given existential mask. Variables in no row are irrelevant.
fn qsat2_rows(rows: &[(u64, u64)], existential: u64) -> bool {
    let relevant = used(rows);
    let e = bits(relevant & existential);
    let u = bits(relevant & !existential);
    let us = assignments(&u);
    assignments(&e).into_iter().any(|ae| us.iter().all(|&au| rows.iter().any(|&(p, q)| term_true(p, q, ae | au))))
}

/// `A ∈ QSat₂` for A over σ_dnf.
pub fn qsat2(a: &Structure) -> bool {
    qsat2_rows(&rows(a, "Q", "M"), unary(a, "E"))
}

fn clause_true(pos: u64, neg: u64, assignment: u64) -> bool {
    pos & assignment != 0 || neg & !assignment != 0
}

/// `A ∈ QUnsat₂` for A over σ_cnf: some existential assignment leaves the CNF
/// unsatisfiable over the universal variables.
pub fn qunsat2(a: &Structure) -> bool {
    let rows = rows(a, "P", "N");
    let ex = unary(a, "E");
    let relevant = used(&rows);
    let e = bits(relevant & ex);
    let u = bits(relevant & !ex);
    let us = assignments(&u);
    assignments(&e).into_iter().any(|ae| !us.iter().any(|&au| rows.iter().all(|&(p, q)| clause_true(p, q, ae | au))))
}

/// `A ∈ UniqueExt`: some existential assignment has exactly one extension
/// (over every universal variable of the universe) satisfying the CNF.
pub fn unique_ext(a: &Structure) -> bool {
    let rows = rows(a, "P", "N");
    let ex = unary(a, "E");
    let all = if a.size() == 64 { u64::MAX } else { (1u64 << a.size()) - 1 };
    let e = bits(ex & all);
    let u = bits(!ex & all);
    let us = assignments(&u);
    assignments(&e).into_iter().any(|ae| {
        let mut count = 0;
        for &au in &us {
            if rows.iter().all(|&(p, q)| clause_true(p, q, ae | au)) {
                count += 1;
                if count > 1 {
                    return false;
                }
            }
        }
        count == 1
    })
}

/// Satisfying assignments of a CNF over `vars` variables.
pub fn count_cnf_models(vars: usize, clauses: &[(u64, u64)]) -> u64 {
    (0u64..1 << vars).filter(|&a| clauses.iter().all(|&(p, q)| clause_true(p, q, a))).count() as u64
}

/// `A ∈ VCSat` for A over τ: some set of existential variables of total value
/// at most the cost makes the DNF a QSat₂ instance.
pub fn vcsat(a: &Structure) -> bool {
    let n = a.size();
    let rows = rows(a, "P", "N");
    let value = |x: usize| (0..n).filter(|&j| a.holds("V", &[x, j])).map(|j| 1u128 << j).sum::<u128>();
    let cost: u128 = (0..n).filter(|&j| a.holds("K", &[j])).map(|j| 1u128 << j).sum();
    (0u64..1 << n).any(|s| bits(s).iter().map(|&x| value(x)).sum::<u128>() <= cost && qsat2_rows(&rows, s))
}

/// Adjacency bitmasks of the graph in a σ_g structure (loops dropped, edges
/// symmetrised).
pub fn adjacency(a: &Structure) -> Vec<u64> {
    let n = a.size();
    (0..n)
        .map(|u| (0..n).filter(|&v| v != u && (a.holds("E", &[u, v]) || a.holds("E", &[v, u]))).fold(0, |m, v| m | 1 << v))
        .collect()
}

pub fn adjacency_of_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    for (u, v) in edges {
        if u != v {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    adj
}

/// Maximal cliques with at least two nodes, by checking every subset.
pub fn maximal_cliques(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    let is_clique = |s: u64| bits(s).iter().all(|&v| (adj[v] | 1 << v) & s == s);
    let cliques: Vec<u64> = (1u64..1 << n).filter(|&s| s.count_ones() >= 2 && is_clique(s)).collect();
    cliques
        .iter()
        .copied()
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 1 || !is_clique(s | 1 << v)))
        .collect()
}

/// Whether some red/blue coloring leaves every maximal clique of two or more
/// nodes bichromatic.
pub fn two_cc(adj: &[u64]) -> bool {
    let n = adj.len();
    let cliques = maximal_cliques(adj);
    (0u64..1 << n).any(|red| cliques.iter().all(|&c| c & red != 0 && c & !red != 0))
}

/// Every simple graph on `n` nodes, as edge lists.
pub fn all_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|m| pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect())
        .collect()
}

/// Whether implicant `i` holds both `v` and `¬v` for every universal variable
/// (vacuously when nothing is universal).
pub fn has_universally_complementary_implicant(a: &Structure) -> bool {
    let n = a.size();
    let universal: Vec<usize> = (0..n).filter(|&v| !a.holds("E", &[v])).collect();
    (0..n).any(|i| universal.iter().all(|&u| a.holds("Q", &[i, u]) && a.holds("M", &[i, u])))
}
