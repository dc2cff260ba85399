//! Finite meet-semilattices, finite generalized Boolean algebras and their
//! ideals, all presented as validated operation tables.

mod algebra;
mod ideal;
mod semilattice;

pub use algebra::{AlgebraInput, FiniteGenBoolAlg};
pub use ideal::{ideal_generated_by, is_ideal, principal_ideal, IdealView, IdealViolation};
pub use semilattice::{FiniteMeetSemilattice, SemilatticeInput};

use crate::elemset::{ElemSet, MAX_ELEMENTS};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("no elements")]
    Empty,
    #[error("too many elements: {0} (at most {max})", max = MAX_ELEMENTS)]
    TooLarge(usize),
    #[error("duplicate element '{0}'")]
    DuplicateElement(String),
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("{table} table: expected {expected} rows, found {found}")]
    RowCount {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table} table row {row}: expected {expected} entries, found {found}")]
    RowArity {
        table: &'static str,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{op} not commutative at ({a},{b})")]
    NotCommutative {
        op: &'static str,
        a: String,
        b: String,
    },
    #[error("{op} not associative at ({a},{b},{c})")]
    NotAssociative {
        op: &'static str,
        a: String,
        b: String,
        c: String,
    },
    #[error("{op} not idempotent at {a}")]
    NotIdempotent { op: &'static str, a: String },
    #[error("zero not absorbing for meet at {0}")]
    ZeroNotAbsorbing(String),
    #[error("zero not neutral for join at {0}")]
    ZeroNotNeutral(String),
    #[error("distributivity fails at ({a},{b},{c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("join does not distribute over meet at ({a},{b},{c})")]
    JoinNotDistributive { a: String, b: String, c: String },
    #[error("absorption fails at ({a},{b})")]
    NotAbsorptive { a: String, b: String },
    #[error("relative complement missing for {a} ≤ {b}")]
    ComplementMissing { a: String, b: String },
    #[error("relative complement not unique for {a} ≤ {b}: {x} and {y}")]
    ComplementNotUnique {
        a: String,
        b: String,
        x: String,
        y: String,
    },
    #[error("join of all elements {top} is not a unit at {a}")]
    TopNotUnit { top: String, a: String },
    #[error("{a} is not below {b}")]
    NotBelow { a: String, b: String },
    #[error("empty generating set")]
    EmptyGenerators,
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
}

/// The declared element names of a structure, with reverse lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn new(names: Vec<String>) -> Result<Self, LatticeError> {
        if names.is_empty() {
            return Err(LatticeError::Empty);
        }
        if names.len() > MAX_ELEMENTS {
            return Err(LatticeError::TooLarge(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(LatticeError::DuplicateElement(name.clone()));
            }
        }
        Ok(Carrier { names, index })
    }

    /// Positional names `0, 1, ..., n-1`.
    pub fn numbered(n: usize) -> Result<Self, LatticeError> {
        Carrier::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, LatticeError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// Renders `set` as `{a, b}` in declared order.
    pub fn render_set(&self, set: ElemSet) -> String {
        let inner: Vec<&str> = set.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", inner.join(", "))
    }

    pub(crate) fn resolve_table(
        &self,
        table: &'static str,
        rows: &[Vec<String>],
    ) -> Result<Vec<usize>, LatticeError> {
        let n = self.len();
        if rows.len() != n {
            return Err(LatticeError::RowCount {
                table,
                expected: n,
                found: rows.len(),
            });
        }
        let mut out = Vec::with_capacity(n * n);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != n {
                return Err(LatticeError::RowArity {
                    table,
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
            for name in entries {
                out.push(self.index_of(name)?);
            }
        }
        Ok(out)
    }

    pub(crate) fn check_table(
        &self,
        table: &'static str,
        data: &[usize],
    ) -> Result<(), LatticeError> {
        let n = self.len();
        if data.len() != n * n {
            return Err(LatticeError::RowCount {
                table,
                expected: n,
                found: data.len() / n.max(1),
            });
        }
        match data.iter().find(|&&v| v >= n) {
            Some(v) => Err(LatticeError::UnknownElement(format!("#{v}"))),
            None => Ok(()),
        }
    }
}

/// Anything with a zero and a meet table over a named carrier.
pub trait MeetStructure {
    fn carrier(&self) -> &Carrier;
    fn zero(&self) -> usize;
    fn meet(&self, a: usize, b: usize) -> usize;

    fn len(&self) -> usize {
        self.carrier().len()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn name(&self, i: usize) -> &str {
        self.carrier().name(i)
    }

    fn all(&self) -> ElemSet {
        self.carrier().all()
    }

    /// `a ≤ b` iff `a ∧ b = a`.
    fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    fn leq_named(&self, a: &str, b: &str) -> Result<bool, LatticeError> {
        let a = self.carrier().index_of(a)?;
        let b = self.carrier().index_of(b)?;
        Ok(self.leq(a, b))
    }

    /// Meet of a set, with `empty` returned for the empty set.
    fn meet_all(&self, set: ElemSet, empty: usize) -> usize {
        set.iter().fold(empty, |acc, x| self.meet(acc, x))
    }

    fn down_set(&self, x: usize) -> ElemSet {
        (0..self.len()).filter(|&z| self.leq(z, x)).collect()
    }

    /// Checks that every position in `set` names an element.
    fn check_set(&self, set: ElemSet) -> Result<(), LatticeError> {
        match set.difference(self.all()).first() {
            Some(i) => Err(LatticeError::UnknownElement(format!("#{i}"))),
            None => Ok(()),
        }
    }

    fn resolve_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ElemSet, LatticeError> {
        names
            .iter()
            .map(|n| self.carrier().index_of(n.as_ref()))
            .collect()
    }
}

/// Exhaustive commutativity, idempotence and associativity checks for a
/// binary table. Returns the first violation in row-major order.
pub(crate) fn check_semilattice_laws(
    carrier: &Carrier,
    op: &'static str,
    table: &[usize],
) -> Result<(), LatticeError> {
    let n = carrier.len();
    let at = |a: usize, b: usize| table[a * n + b];
    let name = |i: usize| carrier.name(i).to_string();
    for a in 0..n {
        for b in 0..n {
            if at(a, b) != at(b, a) {
                return Err(LatticeError::NotCommutative {
                    op,
                    a: name(a),
                    b: name(b),
                });
            }
        }
    }
    for a in 0..n {
        if at(a, a) != a {
            return Err(LatticeError::NotIdempotent { op, a: name(a) });
        }
    }
    check_associative(carrier, op, table)
}

pub(crate) fn check_associative(
    carrier: &Carrier,
    op: &'static str,
    table: &[usize],
) -> Result<(), LatticeError> {
    let n = carrier.len();
    let at = |a: usize, b: usize| table[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(LatticeError::NotAssociative {
                        op,
                        a: carrier.name(a).to_string(),
                        b: carrier.name(b).to_string(),
                        c: carrier.name(c).to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}
