/// Caps on every exhaustive search in the crate.
///
/// Each cap is checked before the search starts, so an oversized request fails
/// with [`Error::BudgetExceeded`](crate::Error::BudgetExceeded) instead of running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of structures a single enumeration may yield.
    pub max_instances: u64,
    /// Maximum number of relation bits (Σ n^arity) per second-order quantifier block.
    pub max_so_bits: u32,
    /// Maximum node count accepted by the 2-clique-coloring decider.
    pub max_color_nodes: usize,
    /// Maximum number of free edge slots in a witness search over graphs.
    pub max_search_bits: u32,
    /// Maximum number of relevant boolean variables for QBF-style deciders.
    pub max_bool_vars: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_instances: 1 << 24,
            max_so_bits: 24,
            max_color_nodes: 20,
            max_search_bits: 24,
            max_bool_vars: 30,
        }
    }
}

impl Budget {
    pub fn with_max_instances(mut self, cap: u64) -> Self {
        self.max_instances = cap;
        self
    }

    pub fn with_max_color_nodes(mut self, cap: usize) -> Self {
        self.max_color_nodes = cap;
        self
    }
}
