//! Size guards shared by constructors that allocate quadratic tables or
//! enumerate exponential families.

/// Environment variable overriding the default maximum lattice size.
pub const SIZE_LIMIT_ENV: &str = "FINLAT_SIZE_LIMIT";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of lattice elements; meet/join tables are n^2.
    pub max_lattice_size: usize,
    /// Maximum order of a finite abelian group.
    pub max_group_order: u64,
    /// Maximum number of subgroups an enumeration may produce.
    pub max_subgroups: usize,
    /// Maximum number of parts in an irredundant representation search.
    pub max_rep_parts: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_lattice_size: 4096,
            max_group_order: 10_000,
            max_subgroups: 100_000,
            max_rep_parts: 12,
        }
    }
}

impl Limits {
    /// Defaults, with the lattice size taken from `FINLAT_SIZE_LIMIT` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var(SIZE_LIMIT_ENV) {
            if let Ok(n) = v.trim().parse::<usize>() {
                limits.max_lattice_size = n;
            }
        }
        limits
    }

    pub fn with_max_lattice_size(mut self, n: usize) -> Self {
        self.max_lattice_size = n;
        self
    }
}
