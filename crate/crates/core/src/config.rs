//! Desk-scale limits and execution mode shared by every oracle.

use serde::{Deserialize, Serialize};

/// Whether data-parallel inner loops fan out over the rayon pool.
///
/// `Parallel` silently degrades to `Sequential` when the crate is built
/// without the `parallel` feature. Results never depend on the mode: every
/// parallel reduction merges in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest group order for element-list algorithms.
    pub exhaustive_order: u64,
    /// Largest permutation degree for exhaustive scans and conjugacy search.
    pub max_degree: usize,
    /// Largest degree a construction may emit.
    pub construct_degree: usize,
    /// Largest |GL(alpha, s)| that may be scanned element by element.
    pub gl_bruteforce: u64,
    /// Largest number of elements a matrix group closure may hold.
    pub mat_elements: u64,
    /// Largest s^alpha for irreducibility spinning.
    pub spin: u64,
    /// Largest field size.
    pub field_size: u64,
    /// Largest order of a multiplication table.
    pub table_order: u64,
    /// Largest order enumerated by the variety census.
    pub census_order: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exhaustive_order: 20160,
            max_degree: 10,
            construct_degree: 1024,
            gl_bruteforce: 1_000_000,
            mat_elements: 1_000_000,
            spin: 10_000,
            field_size: 1 << 16,
            table_order: 400,
            census_order: 400,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Config {
    pub limits: Limits,
    pub mode: ExecMode,
}

impl Config {
    pub fn sequential() -> Self {
        Config { mode: ExecMode::Sequential, ..Config::default() }
    }

    pub fn with_mode(mut self, mode: ExecMode) -> Self {
        self.mode = mode;
        self
    }
}
