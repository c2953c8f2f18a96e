/// Size limits applied by the constructors and enumerators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Largest rank accepted for the classical families A–D.
    pub max_classical_rank: usize,
    /// Largest number of distinct weights any intermediate multiset may hold.
    pub max_entries: usize,
    /// Largest module dimension `weyl_character` will expand.
    pub max_dimension: u64,
    /// Largest number of Frobenius levels (`s + f`) the E1 oracle enumerates.
    pub max_levels: usize,
    /// Largest total degree the E1 oracle enumerates.
    pub max_degree: usize,
}

pub const CAP_ENV_VAR: &str = "CHEVBOUNDS_CAP";

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_classical_rank: 12,
            max_entries: 10_000_000,
            max_dimension: 10_000_000,
            max_levels: 4,
            max_degree: 8,
        }
    }
}

impl Caps {
    /// Defaults, with the multiset cap taken from `CHEVBOUNDS_CAP` when set.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(n) = std::env::var(CAP_ENV_VAR).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            caps = caps.with_entry_cap(n);
        }
        caps
    }

    /// Overrides both the multiset-entry and the dimension cap.
    pub fn with_entry_cap(mut self, n: usize) -> Self {
        self.max_entries = n;
        self.max_dimension = n as u64;
        self
    }
}
