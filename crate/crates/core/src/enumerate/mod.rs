//! Small universes of semilattices, powerset algebras and representations,
//! plus the exhaustive searches run over them.

mod verify;

pub use verify::{verify_theorems, CheckTally, VerifySummary, Violation};

use crate::elemset::MAX_ELEMENTS;
use crate::lattice::{Carrier, FiniteGenBoolAlg, FiniteMeetSemilattice, IdealView, MeetStructure};
use crate::representation::{check, Representation, TightnessReport};
use itertools::Itertools;
use std::sync::Arc;
use thiserror::Error;

/// Largest semilattice the labeled generator is meant for.
pub const MAX_GENERATED_SIZE: usize = 6;
/// Largest atom count for generated powerset codomains.
pub const MAX_ATOMS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("semilattice size must be between 1 and {MAX_GENERATED_SIZE}, got {0}")]
    Size(usize),
    #[error("at least one atom count is required")]
    NoAtoms,
    #[error("atom count must be at most {MAX_ATOMS}, got {0}")]
    Atoms(usize),
}

/// Which `(E, P(k), π)` triples an exhaustive run covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniverseSpec {
    max_semilattice_size: usize,
    atom_counts: Vec<usize>,
    up_to_iso: bool,
}

impl UniverseSpec {
    pub fn new(
        max_semilattice_size: usize,
        atom_counts: Vec<usize>,
        up_to_iso: bool,
    ) -> Result<Self, UniverseError> {
        if !(1..=MAX_GENERATED_SIZE).contains(&max_semilattice_size) {
            return Err(UniverseError::Size(max_semilattice_size));
        }
        if atom_counts.is_empty() {
            return Err(UniverseError::NoAtoms);
        }
        if let Some(&k) = atom_counts.iter().find(|&&k| k > MAX_ATOMS) {
            return Err(UniverseError::Atoms(k));
        }
        Ok(UniverseSpec {
            max_semilattice_size,
            atom_counts,
            up_to_iso,
        })
    }

    pub fn max_semilattice_size(&self) -> usize {
        self.max_semilattice_size
    }

    pub fn atom_counts(&self) -> &[usize] {
        &self.atom_counts
    }

    pub fn up_to_iso(&self) -> bool {
        self.up_to_iso
    }

    /// Sizes in visiting order: largest first.
    pub(crate) fn sizes(&self) -> impl Iterator<Item = usize> {
        (1..=self.max_semilattice_size).rev()
    }

    pub(crate) fn algebras(&self) -> Vec<Arc<FiniteGenBoolAlg>> {
        self.atom_counts
            .iter()
            .map(|&k| Arc::new(powerset_algebra(k)))
            .collect()
    }
}

/// The algebra of subsets of `{1..k}`; element `i` is the subset whose
/// bitmask is `i`, named like `{1,3}`.
pub fn powerset_algebra(k: usize) -> FiniteGenBoolAlg {
    assert!(
        k <= MAX_ATOMS,
        "powerset_algebra supports at most {MAX_ATOMS} atoms"
    );
    let n = 1usize << k;
    let names = (0..n)
        .map(|bits| {
            let atoms: Vec<String> = (0..k)
                .filter(|a| bits & (1 << a) != 0)
                .map(|a| (a + 1).to_string())
                .collect();
            format!("{{{}}}", atoms.join(","))
        })
        .collect();
    let carrier = Carrier::new(names).expect("at most 64 distinct subset names");
    let meet = (0..n).flat_map(|a| (0..n).map(move |b| a & b)).collect();
    let join = (0..n).flat_map(|a| (0..n).map(move |b| a | b)).collect();
    FiniteGenBoolAlg::from_tables(carrier, 0, meet, join).expect("powerset algebras are Boolean")
}

/// Every labeled meet-semilattice on `n` elements with zero at position 0,
/// or one canonical representative per isomorphism class.
///
/// Structures are generated as partial orders on the nonzero elements that
/// admit all pairwise meets once zero is added below everything. Elements are
/// named `0..n-1`.
pub fn enumerate_semilattices(
    n: usize,
    up_to_iso: bool,
) -> impl Iterator<Item = FiniteMeetSemilattice> {
    SemilatticeIter::new(n).filter(move |e| !up_to_iso || is_canonical(e))
}

struct SemilatticeIter {
    n: usize,
    pairs: Vec<(usize, usize)>,
    /// 0: incomparable, 1: i < j, 2: j < i
    digits: Vec<u8>,
    done: bool,
}

impl SemilatticeIter {
    fn new(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..n).tuple_combinations().collect();
        SemilatticeIter {
            n,
            digits: vec![0; pairs.len()],
            pairs,
            done: n == 0 || n > MAX_ELEMENTS,
        }
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            if *d < 2 {
                *d += 1;
                return;
            }
            *d = 0;
        }
        self.done = true;
    }

    fn current(&self) -> Option<FiniteMeetSemilattice> {
        let n = self.n;
        let mut below = vec![false; n * n];
        for i in 0..n {
            below[i * n + i] = true;
            below[i] = true; // 0 ≤ i
        }
        for (&(i, j), &d) in self.pairs.iter().zip(&self.digits) {
            match d {
                1 => below[i * n + j] = true,
                2 => below[j * n + i] = true,
                _ => {}
            }
        }
        let le = |a: usize, b: usize| below[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return None;
                    }
                }
            }
        }
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                let greatest = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&c| le(c, g)))?;
                meet[a * n + b] = greatest;
            }
        }
        Some(
            FiniteMeetSemilattice::from_table(Carrier::numbered(n).ok()?, 0, meet)
                .expect("glb tables of posets are meet-semilattices"),
        )
    }
}

impl Iterator for SemilatticeIter {
    type Item = FiniteMeetSemilattice;

    fn next(&mut self) -> Option<FiniteMeetSemilattice> {
        while !self.done {
            let item = self.current();
            self.advance();
            if item.is_some() {
                return item;
            }
        }
        None
    }
}

/// Lexicographically least row-major meet table over all relabelings that
/// send zero to position 0.
pub fn canonical_form(e: &FiniteMeetSemilattice) -> Vec<usize> {
    let n = e.len();
    let others: Vec<usize> = (0..n).filter(|&i| i != e.zero()).collect();
    let mut best: Option<Vec<usize>> = None;
    for perm in others.iter().copied().permutations(others.len()) {
        // new position of old element
        let mut pos = vec![0; n];
        pos[e.zero()] = 0;
        for (k, &old) in perm.iter().enumerate() {
            pos[old] = k + 1;
        }
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[pos[i] * n + pos[j]] = pos[e.meet(i, j)];
            }
        }
        if best.as_ref().is_none_or(|b| table < *b) {
            best = Some(table);
        }
    }
    best.unwrap_or_default()
}

/// The canonical representative, with elements named `0..n-1`.
pub fn canonicalize(e: &FiniteMeetSemilattice) -> FiniteMeetSemilattice {
    let carrier = Carrier::numbered(e.len()).expect("size already validated");
    FiniteMeetSemilattice::from_table(carrier, 0, canonical_form(e))
        .expect("relabeling preserves the laws")
}

pub fn is_canonical(e: &FiniteMeetSemilattice) -> bool {
    e.zero() == 0 && canonical_form(e) == e.table()
}

/// Every representation of `e` in `b`, ordered lexicographically by the
/// images of `e`'s elements in declared order, with images tried from the
/// last declared codomain element down to the first.
pub fn enumerate_representations(
    e: &Arc<FiniteMeetSemilattice>,
    b: &Arc<FiniteGenBoolAlg>,
) -> impl Iterator<Item = Representation> {
    let domain = Arc::clone(e);
    let view = IdealView::full(Arc::clone(b));
    let n = domain.len();
    let m = b.len();
    let zero = domain.zero();
    let b_zero = b.zero();
    let mut digits = vec![0usize; n];
    let mut done = n == 0;
    std::iter::from_fn(move || {
        while !done {
            let map: Vec<usize> = (0..n)
                .map(|x| if x == zero { b_zero } else { m - 1 - digits[x] })
                .collect();
            // advance the odometer, last element fastest
            done = true;
            for x in (0..n).rev().filter(|&x| x != zero) {
                if digits[x] + 1 < m {
                    digits[x] += 1;
                    done = false;
                    break;
                }
                digits[x] = 0;
            }
            if let Ok(rep) = Representation::validate(Arc::clone(&domain), view.clone(), map) {
                return Some(rep);
            }
        }
        None
    })
}

/// Every `(E, P(k), π)` of the universe: sizes from largest to smallest, then
/// generator order, then atom counts as listed, then representation order.
pub fn universe(spec: &UniverseSpec) -> impl Iterator<Item = Representation> {
    let algebras = spec.algebras();
    let up_to_iso = spec.up_to_iso();
    spec.sizes()
        .flat_map(move |n| enumerate_semilattices(n, up_to_iso))
        .flat_map(move |e| {
            let e = Arc::new(e);
            algebras
                .clone()
                .into_iter()
                .flat_map(move |b| enumerate_representations(&e, &b))
        })
}

/// A representation that is cover-to-join but not tight in its full codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapExample {
    pub representation: Representation,
    pub report: TightnessReport,
}

impl GapExample {
    pub fn semilattice(&self) -> &Arc<FiniteMeetSemilattice> {
        self.representation.domain()
    }

    pub fn algebra(&self) -> &Arc<FiniteGenBoolAlg> {
        self.representation.algebra()
    }
}

pub fn search_gap(spec: &UniverseSpec) -> impl Iterator<Item = GapExample> {
    universe(spec).filter_map(|representation| {
        let report = check(&representation);
        (report.cover_to_join.is_pass() && !report.tight.is_pass()).then_some(GapExample {
            representation,
            report,
        })
    })
}

/// Renders `π` as `x->b` pairs, for diagnostics.
pub(crate) fn describe(rep: &Representation) -> String {
    let e = rep.domain();
    let n = e.len();
    let rows: Vec<String> = (0..n)
        .map(|i| (0..n).map(|j| e.name(e.meet(i, j))).join(" "))
        .collect();
    let map: Vec<String> = rep
        .named_pairs()
        .into_iter()
        .map(|(x, b)| format!("{x}->{b}"))
        .collect();
    format!(
        "E(meet={}) B({} elements) map({})",
        rows.join(" | "),
        rep.algebra().len(),
        map.join(" ")
    )
}
