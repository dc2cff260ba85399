use super::RepresentationError;
use crate::elemset::ElemSet;
use crate::lattice::{FiniteMeetSemilattice, LatticeError, MeetStructure};

/// `E^{X,Y}`: elements below every member of `xs` and meeting every member
/// of `ys` in zero.
pub fn constrained_interval(
    e: &FiniteMeetSemilattice,
    xs: ElemSet,
    ys: ElemSet,
) -> Result<ElemSet, LatticeError> {
    e.check_set(xs)?;
    e.check_set(ys)?;
    Ok(interval(e, xs, ys))
}

pub(crate) fn interval(e: &FiniteMeetSemilattice, xs: ElemSet, ys: ElemSet) -> ElemSet {
    let zero = e.zero();
    (0..e.len())
        .filter(|&z| xs.iter().all(|x| e.leq(z, x)) && ys.iter().all(|y| e.meet(z, y) == zero))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverStatus {
    Cover,
    /// A nonzero member of the target set disjoint from every candidate.
    Uncovered(usize),
}

impl CoverStatus {
    pub fn is_cover(self) -> bool {
        self == CoverStatus::Cover
    }
}

/// Whether every nonzero `x ∈ target` has `x ∧ z ≠ 0` for some `z ∈ candidate`.
pub fn is_cover(
    e: &FiniteMeetSemilattice,
    candidate: ElemSet,
    target: ElemSet,
) -> Result<CoverStatus, RepresentationError> {
    e.check_set(target)?;
    if !candidate.is_subset(target) {
        return Err(RepresentationError::NotSubset);
    }
    Ok(match CoverTester::new(e, target).uncovered(candidate) {
        Some(x) => CoverStatus::Uncovered(x),
        None => CoverStatus::Cover,
    })
}

/// Precomputed "meets nontrivially" masks for the nonzero members of a set.
pub(crate) struct CoverTester {
    target: ElemSet,
    rows: Vec<(usize, ElemSet)>,
}

impl CoverTester {
    pub(crate) fn new(e: &FiniteMeetSemilattice, target: ElemSet) -> Self {
        let zero = e.zero();
        let rows = target
            .without(zero)
            .iter()
            .map(|x| (x, (0..e.len()).filter(|&z| e.meet(z, x) != zero).collect()))
            .collect();
        CoverTester { target, rows }
    }

    pub(crate) fn uncovered(&self, candidate: ElemSet) -> Option<usize> {
        self.rows
            .iter()
            .find(|(_, hits)| hits.intersection(candidate).is_empty())
            .map(|&(x, _)| x)
    }

    pub(crate) fn covers(&self, candidate: ElemSet) -> bool {
        self.uncovered(candidate).is_none()
    }

    pub(crate) fn minimal_covers(self, zero: usize) -> impl Iterator<Item = ElemSet> {
        self.target
            .without(zero)
            .graded_subsets()
            .filter(move |&z| self.covers(z) && z.iter().all(|m| !self.covers(z.without(m))))
    }

    pub(crate) fn all_covers(self) -> impl Iterator<Item = ElemSet> {
        self.target
            .graded_subsets()
            .filter(move |&z| self.covers(z))
    }
}

/// Inclusion-minimal covers of `target`, drawn from its nonzero members, in
/// graded-lexicographic order.
pub fn covers_of(
    e: &FiniteMeetSemilattice,
    target: ElemSet,
) -> Result<impl Iterator<Item = ElemSet>, LatticeError> {
    e.check_set(target)?;
    Ok(CoverTester::new(e, target).minimal_covers(e.zero()))
}

/// Every subset of `target` that covers it, in graded-lexicographic order.
pub fn all_covers(
    e: &FiniteMeetSemilattice,
    target: ElemSet,
) -> Result<impl Iterator<Item = ElemSet>, LatticeError> {
    e.check_set(target)?;
    Ok(CoverTester::new(e, target).all_covers())
}
