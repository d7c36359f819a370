/// Resource caps for enumeration routines.
///
/// All caps are conservative for the built-in catalog (largest group there
/// has order 81) while preventing runaway enumeration of infinite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of elements a closure may enumerate (default 3^12).
    pub max_group_order: usize,
    /// Maximum element order probed before concluding "possibly infinite"
    /// (default 3^8).
    pub max_element_order: u64,
    /// Maximum group order accepted by the exhaustive minimal-generator
    /// search (default 729).
    pub brute_force_cap: usize,
    /// Largest group for which the dense multiplication table is built;
    /// bigger groups fall back to on-the-fly products.
    pub table_cap: usize,
    /// Maximum number of character tuples the fixed-subspace enumeration
    /// will walk.
    pub fixed_tuple_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_group_order: 531_441,
            max_element_order: 6_561,
            brute_force_cap: 729,
            table_cap: 4_096,
            fixed_tuple_cap: 65_536,
        }
    }
}

impl Caps {
    pub fn with_max_group_order(mut self, cap: usize) -> Self {
        self.max_group_order = cap;
        self
    }

    pub fn with_max_element_order(mut self, cap: u64) -> Self {
        self.max_element_order = cap;
        self
    }
}
