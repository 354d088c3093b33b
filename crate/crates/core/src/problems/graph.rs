//! Simple undirected graphs, maximal cliques and 2-clique-colorability.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::structure::{Structure, Vocabulary};

/// Largest graph the bitmask clique routines accept.
const MAX_MASK_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    nodes: usize,
    /// Unordered edges stored as `(u, v)` with `u < v`.
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph { nodes, edges: BTreeSet::new() };
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(nodes: usize) -> Self {
        Graph { nodes, edges: BTreeSet::new() }
    }

    pub fn complete(nodes: usize) -> Self {
        let edges = (0..nodes).flat_map(|u| (u + 1..nodes).map(move |v| (u, v))).collect();
        Graph { nodes, edges }
    }

    pub fn cycle(nodes: usize) -> Self {
        let mut g = Graph::empty(nodes);
        for i in 0..nodes {
            g.add_edge(i, (i + 1) % nodes).expect("cycle edges are in range");
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.nodes || v >= self.nodes {
            return Err(Error::OutOfRange { value: u.max(v), size: self.nodes, context: format!("edge ({u},{v})") });
        }
        if u == v {
            return Err(Error::Invalid(format!("loop at node {u}")));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.edges.remove(&(u.min(v), u.max(v)));
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Neighbourhood bitmasks; requires at most 64 nodes.
    fn adjacency(&self) -> Result<Vec<u64>> {
        if self.nodes > MAX_MASK_NODES {
            return Err(Error::budget("graph nodes for clique search", self.nodes as u128, MAX_MASK_NODES as u128));
        }
        let mut adj = vec![0u64; self.nodes];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(adj)
    }
}

/// The symmetric closure of the edge set as a `σ_g` structure.
pub fn encode_graph(g: &Graph) -> Result<Structure> {
    let mut s = Structure::empty(Arc::new(Vocabulary::sigma_g()), g.nodes)?;
    for &(u, v) in &g.edges {
        s.insert("E", &[u, v])?;
        s.insert("E", &[v, u])?;
    }
    Ok(s)
}

/// Reads a `σ_g` structure as a simple graph, symmetrising `E` and dropping
/// loops (see [`loops_of`] to report them).
pub fn decode_graph(a: &Structure) -> Result<Graph> {
    let expected = Vocabulary::sigma_g();
    if !a.vocab().same_symbols(&expected) {
        return Err(Error::VocabularyMismatch { expected: expected.name().into(), found: a.vocab().name().into() });
    }
    let edges = a.relation_at(0).iter().filter(|t| t[0] != t[1]).map(|t| (t[0].min(t[1]), t[0].max(t[1])));
    Ok(Graph { nodes: a.size(), edges: edges.collect() })
}

/// Nodes carrying a loop in a `σ_g` structure.
pub fn loops_of(a: &Structure) -> Vec<usize> {
    (0..a.size()).filter(|&v| a.holds("E", &[v, v])).collect()
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let pivot = {
        // Pivot on the candidate with the most neighbours in P.
        let mut best = pivot;
        let mut best_deg = (adj[best] & p).count_ones();
        let mut rest = p | x;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (adj[u] & p).count_ones();
            if d > best_deg {
                best = u;
                best_deg = d;
            }
        }
        best
    };
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

fn clique_masks(g: &Graph) -> Result<Vec<u64>> {
    let adj = g.adjacency()?;
    let all = if g.nodes == 64 { u64::MAX } else { (1u64 << g.nodes) - 1 };
    let mut out = Vec::new();
    if g.nodes > 0 {
        bron_kerbosch(&adj, 0, all, 0, &mut out);
    }
    Ok(out)
}

fn mask_nodes(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Every inclusion-maximal clique, isolated vertices included, each sorted and
/// the whole list in lexicographic order.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let mut cliques: Vec<Vec<usize>> = clique_masks(g)?.into_iter().map(mask_nodes).collect();
    cliques.sort();
    Ok(cliques)
}

/// Finds a red/blue coloring (`true` = red) under which every maximal clique
/// with at least two nodes contains both colors.
fn two_color(cliques: &[u64], nodes: usize) -> Option<u64> {
    fn propagate(cliques: &[u64], red: &mut u64, blue: &mut u64) -> bool {
        loop {
            let mut changed = false;
            for &c in cliques {
                let (r, b) = (c & *red, c & *blue);
                let free = c & !(*red | *blue);
                if free == 0 {
                    if r == 0 || b == 0 {
                        return false;
                    }
                } else if free & (free - 1) == 0 {
                    if r == 0 {
                        *red |= free;
                        changed = true;
                    } else if b == 0 {
                        *blue |= free;
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn solve(cliques: &[u64], order: &[usize], mut red: u64, mut blue: u64) -> Option<u64> {
        if !propagate(cliques, &mut red, &mut blue) {
            return None;
        }
        let Some(&v) = order.iter().find(|&&v| (red | blue) >> v & 1 == 0) else { return Some(red) };
        let first = red | blue == 0;
        if let Some(found) = solve(cliques, order, red | 1 << v, blue) {
            return Some(found);
        }
        // Swapping colors maps solutions to solutions, so the very first
        // decision never needs its second branch.
        if first {
            return None;
        }
        solve(cliques, order, red, blue | 1 << v)
    }

    let mut degree = vec![0u32; nodes];
    for &c in cliques {
        for v in mask_nodes(c) {
            degree[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..nodes).filter(|&v| degree[v] > 0).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(degree[v]));
    solve(cliques, &order, 0, 0)
}

/// Decides 2-clique-colorability. Maximal cliques of a single node need not be
/// bichromatic. Returns a verified coloring (`true` = red) when one exists.
pub fn two_cc_witness(g: &Graph, budget: &Budget) -> Result<Option<Vec<bool>>> {
    if g.nodes > budget.max_color_nodes {
        return Err(Error::budget("2-clique-coloring nodes", g.nodes as u128, budget.max_color_nodes as u128));
    }
    let cliques: Vec<u64> = clique_masks(g)?.into_iter().filter(|c| c.count_ones() >= 2).collect();
    let Some(red) = two_color(&cliques, g.nodes) else { return Ok(None) };
    let coloring: Vec<bool> = (0..g.nodes).map(|v| red >> v & 1 == 1).collect();
    for clique in maximal_cliques(g)?.iter().filter(|c| c.len() >= 2) {
        let reds = clique.iter().filter(|&&v| coloring[v]).count();
        if reds == 0 || reds == clique.len() {
            return Err(Error::Invalid(format!("coloring leaves clique {clique:?} monochromatic")));
        }
    }
    Ok(Some(coloring))
}

pub fn decide_2cc(g: &Graph) -> Result<bool> {
    Ok(two_cc_witness(g, &Budget::default())?.is_some())
}

/// Membership in the padded problem: graphs with fewer than `n` nodes are in.
pub fn decide_2cc_n(g: &Graph, n: usize) -> Result<bool> {
    if g.nodes < n {
        return Ok(true);
    }
    decide_2cc(g)
}

pub fn decide_2cc_n_within(g: &Graph, n: usize, budget: &Budget) -> Result<bool> {
    if g.nodes < n {
        return Ok(true);
    }
    Ok(two_cc_witness(g, budget)?.is_some())
}
