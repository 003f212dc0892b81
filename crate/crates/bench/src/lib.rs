//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use hrep_core::heisenberg::enumerate_pairs;
use hrep_core::io::builtin_group;
use hrep_core::{FiniteGroup, HeisenbergPair};

/// Groups spanning the sizes the verification suite touches.
pub const GROUPS: [&str; 5] = ["d8", "heis3", "cp:d8,q8", "heis5", "dp:d8,q8,c2"];

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(builtin_group(name).expect("builtin names are valid"))
}

/// The pair of largest dimension, ties broken by enumeration order.
pub fn top_pair(g: &Arc<FiniteGroup>) -> HeisenbergPair {
    let pairs = enumerate_pairs(g, 512).expect("fixture groups are small");
    let dim = pairs.iter().map(HeisenbergPair::dim).max().unwrap();
    pairs.into_iter().find(|p| p.dim() == dim).unwrap()
}
