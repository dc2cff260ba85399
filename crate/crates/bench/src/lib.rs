//! Shared inputs for the benchmarks.

use std::sync::Arc;
use tightcover_core::enumerate::{enumerate_semilattices, powerset_algebra};
use tightcover_core::{FiniteGenBoolAlg, FiniteMeetSemilattice};

/// Every labeled semilattice of the given size.
pub fn semilattices(n: usize) -> Vec<Arc<FiniteMeetSemilattice>> {
    enumerate_semilattices(n, false).map(Arc::new).collect()
}

pub fn powerset(k: usize) -> Arc<FiniteGenBoolAlg> {
    Arc::new(powerset_algebra(k))
}
