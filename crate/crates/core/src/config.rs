use serde::{Deserialize, Serialize};

/// Resource budgets and run parameters.
///
/// Defaults are sized for desk-scale instances (n up to ~10 on the monomial
/// side, 2n <= 12 for full binomial tables). Every limit can be overridden
/// programmatically or, in the CLI, through flags and `BETTIBLOCKS_*`
/// environment variables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    /// Field characteristic: 0 for rationals, otherwise a prime.
    pub characteristic: u32,
    /// Second prime used by confirmation passes in the harness.
    pub confirm_characteristic: u32,
    /// Monomial Betti engine: max number of variables appearing in the ideal.
    pub max_monomial_vars: usize,
    /// Monomial Betti engine: max number of lcm-lattice elements.
    pub max_lattice_elements: usize,
    /// Taylor oracle: max number of minimal generators.
    pub max_taylor_generators: usize,
    /// lcm-lattice construction: max number of minimal generators.
    pub max_lattice_generators: usize,
    /// Buchberger oracle: max number of ring variables (2n).
    pub max_groebner_vars: usize,
    /// Koszul engine, full tables: max number of ring variables (2n).
    pub max_koszul_full_vars: usize,
    /// Koszul engine, windowed queries: max number of ring variables (2n).
    pub max_koszul_window_vars: usize,
    /// Koszul engine: cap on nonzero entries of any single strand matrix.
    pub max_matrix_nonzeros: usize,
    /// Thread count for suite runs (0 = rayon default).
    pub threads: usize,
    /// RNG seed for generated corpora.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            characteristic: 2,
            confirm_characteristic: 32003,
            max_monomial_vars: 20,
            max_lattice_elements: 50_000,
            max_taylor_generators: 12,
            max_lattice_generators: 26,
            max_groebner_vars: 16,
            max_koszul_full_vars: 12,
            max_koszul_window_vars: 16,
            max_matrix_nonzeros: 2_000_000,
            threads: 0,
            seed: 0,
        }
    }
}

impl Config {
    pub fn with_characteristic(mut self, p: u32) -> Self {
        self.characteristic = p;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}
