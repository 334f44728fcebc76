//! Resource guards for the combinatorial enumerations. Defaults keep every
//! exhaustive operation at desk scale; `Guards { enforce: false }` lifts them
//! (the CLI flag `--override-guards`).

/// Guard policy threaded through enumeration entry points.
#[derive(Clone, Copy, Debug)]
pub struct Guards {
    pub enforce: bool,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { enforce: true }
    }
}

impl Guards {
    pub fn off() -> Self {
        Guards { enforce: false }
    }
}

/// Largest ambient dimension for subspace enumeration.
pub const MAX_SUBSPACE_DIM: usize = 4;
/// Largest prime for subspace enumeration.
pub const MAX_SUBSPACE_P: u64 = 5;
/// Largest candidate count for exhaustive structure searches (2^20).
pub const MAX_SEARCH_CANDIDATES: u128 = 1 << 20;
