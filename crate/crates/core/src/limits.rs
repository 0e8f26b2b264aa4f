/// Size caps for the exhaustive parts of the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order for which all elements may be enumerated.
    pub max_order: u128,
    /// Largest order accepted by the abstract isomorphism test.
    pub isomorphism_order: u128,
    /// Largest element count for brute-force automorphism search.
    pub automorphism_elements: usize,
    /// Largest element count for invariant-partition enumeration.
    pub partition_elements: usize,
    /// Largest number of invariant type-refining partitions returned.
    pub partition_count: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 250_000,
            isomorphism_order: 10_000,
            automorphism_elements: 40,
            partition_elements: 64,
            partition_count: 10_000,
        }
    }
}

impl Limits {
    pub fn with_max_order(mut self, max_order: u128) -> Self {
        self.max_order = max_order;
        self
    }
}
