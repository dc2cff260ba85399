//! Finite inverse semigroups with zero and their idempotent semilattices.

mod homomorphism;

pub use homomorphism::{
    check_homomorphism_tightness, enumerate_homomorphisms, tighten_homomorphism, Corner,
    ISHomomorphism, Restriction,
};

use crate::elemset::ElemSet;
use crate::lattice::{
    check_associative, Carrier, FiniteGenBoolAlg, FiniteMeetSemilattice, LatticeError,
    MeetStructure,
};
use crate::representation::{CoverToJoinWitness, RepresentationError};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error(transparent)]
    Table(#[from] LatticeError),
    #[error("{0} has no inverse")]
    InverseMissing(String),
    #[error("inverse not unique for {s}: {t} and {u}")]
    InverseNotUnique { s: String, t: String, u: String },
    #[error("idempotents do not commute: {e} and {f}")]
    IdempotentsDoNotCommute { e: String, f: String },
    #[error("zero not absorbing at {0}")]
    ZeroNotAbsorbing(String),
    #[error("map has {found} entries, domain has {expected} elements")]
    MapLength { expected: usize, found: usize },
    #[error("no image given for '{0}'")]
    Unmapped(String),
    #[error("'{0}' mapped twice")]
    MappedTwice(String),
    #[error("zero not preserved: zero maps to {0}")]
    ZeroNotPreserved(String),
    #[error("not multiplicative at ({s},{t})")]
    NotMultiplicative { s: String, t: String },
    #[error("internal: inverse of {0} not preserved")]
    InverseNotPreserved(String),
    #[error("internal: idempotent {0} not sent to an idempotent")]
    IdempotentNotPreserved(String),
    #[error("codomain is not a generalized Boolean inverse semigroup: {0}")]
    NotBooleanCodomain(GbisFailure),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
    #[error("homomorphism is not cover-to-join")]
    NotCoverToJoin(CoverToJoinWitness),
    #[error("internal: {0}")]
    Internal(String),
}

impl SemigroupError {
    /// Whether the error signals a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            SemigroupError::Internal(_)
                | SemigroupError::InverseNotPreserved(_)
                | SemigroupError::IdempotentNotPreserved(_)
        )
    }
}

/// Unvalidated, name-based multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupInput {
    pub elements: Vec<String>,
    pub zero: String,
    pub mul: Vec<Vec<String>>,
}

/// A finite inverse semigroup with zero, with its inverse map precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInverseSemigroup {
    carrier: Carrier,
    zero: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteInverseSemigroup {
    pub fn validate(input: &SemigroupInput) -> Result<Self, SemigroupError> {
        let carrier = Carrier::new(input.elements.clone())?;
        let zero = carrier.index_of(&input.zero)?;
        let mul = carrier.resolve_table("mul", &input.mul)?;
        Self::from_table(carrier, zero, mul)
    }

    /// Checks associativity, unique inverses, commuting idempotents and an
    /// absorbing zero, in that order.
    pub fn from_table(
        carrier: Carrier,
        zero: usize,
        mul: Vec<usize>,
    ) -> Result<Self, SemigroupError> {
        carrier.check_table("mul", &mul)?;
        if zero >= carrier.len() {
            return Err(LatticeError::UnknownElement(format!("#{zero}")).into());
        }
        check_associative(&carrier, "mul", &mul)?;
        let n = carrier.len();
        let m = |a: usize, b: usize| mul[a * n + b];
        let name = |i: usize| carrier.name(i).to_string();

        let mut inv = Vec::with_capacity(n);
        for s in 0..n {
            let mut candidates = (0..n).filter(|&t| m(m(s, t), s) == s && m(m(t, s), t) == t);
            let t = candidates
                .next()
                .ok_or_else(|| SemigroupError::InverseMissing(name(s)))?;
            if let Some(u) = candidates.next() {
                return Err(SemigroupError::InverseNotUnique {
                    s: name(s),
                    t: name(t),
                    u: name(u),
                });
            }
            inv.push(t);
        }
        let idempotents: Vec<usize> = (0..n).filter(|&e| m(e, e) == e).collect();
        for &e in &idempotents {
            for &f in idempotents.iter().filter(|&&f| f > e) {
                if m(e, f) != m(f, e) {
                    return Err(SemigroupError::IdempotentsDoNotCommute {
                        e: name(e),
                        f: name(f),
                    });
                }
            }
        }
        if let Some(s) = (0..n).find(|&s| m(zero, s) != zero || m(s, zero) != zero) {
            return Err(SemigroupError::ZeroNotAbsorbing(name(s)));
        }
        Ok(FiniteInverseSemigroup {
            carrier,
            zero,
            mul,
            inv,
        })
    }

    /// A semilattice as a commutative semigroup of idempotents.
    pub fn from_semilattice(e: &FiniteMeetSemilattice) -> Self {
        Self::from_table(e.carrier().clone(), e.zero(), e.table().to_vec())
            .expect("semilattices are inverse semigroups")
    }

    /// All partial injections of `{1..k}` under composition, `(st)(x) = s(t(x))`.
    ///
    /// Each element is named by its image word: position `i` holds the image
    /// of `i` or `-` when undefined, so the identity on two points is `12`;
    /// the empty map is `0`. Elements are ordered by rank, then by word.
    pub fn symmetric_inverse(k: usize) -> Self {
        assert!(
            k <= 3,
            "symmetric inverse semigroups beyond 3 points exceed 64 elements"
        );
        let mut maps: Vec<Vec<Option<usize>>> = vec![vec![]];
        for _ in 0..k {
            maps = maps
                .into_iter()
                .flat_map(|prefix| {
                    (0..=k).filter_map(move |choice| {
                        let image = (choice < k).then_some(choice);
                        if image.is_some() && prefix.contains(&image) {
                            return None;
                        }
                        let mut next = prefix.clone();
                        next.push(image);
                        Some(next)
                    })
                })
                .collect();
        }
        let word = |f: &[Option<usize>]| -> String {
            if f.iter().all(Option::is_none) {
                return "0".to_string();
            }
            f.iter()
                .map(|x| x.map_or("-".to_string(), |v| (v + 1).to_string()))
                .collect()
        };
        maps.sort_by_key(|f| (f.iter().filter(|x| x.is_some()).count(), word(f)));
        let n = maps.len();
        let position = |f: &[Option<usize>]| {
            maps.iter()
                .position(|g| g == f)
                .expect("closed under composition")
        };
        let mut mul = Vec::with_capacity(n * n);
        for s in &maps {
            for t in &maps {
                let st: Vec<Option<usize>> = t.iter().map(|x| x.and_then(|y| s[y])).collect();
                mul.push(position(&st));
            }
        }
        let carrier = Carrier::new(maps.iter().map(|f| word(f)).collect()).expect("distinct words");
        Self::from_table(carrier, 0, mul).expect("partial injections form an inverse semigroup")
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        self.carrier.name(i)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.carrier.len() + b]
    }

    pub fn inv(&self, s: usize) -> usize {
        self.inv[s]
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.mul(s, s) == s
    }

    /// `s*s`
    pub fn source(&self, s: usize) -> usize {
        self.mul(self.inv(s), s)
    }

    /// `ss*`
    pub fn range(&self, s: usize) -> usize {
        self.mul(s, self.inv(s))
    }

    /// Idempotent order: `e ≤ f` iff `ef = e`.
    pub fn idempotent_leq(&self, e: usize, f: usize) -> bool {
        self.mul(e, f) == e
    }

    /// `E(S)`: the idempotents with multiplication as meet.
    pub fn idempotents(&self) -> IdempotentSemilattice {
        let embedding: Vec<usize> = (0..self.len()).filter(|&s| self.is_idempotent(s)).collect();
        let carrier = Carrier::new(
            embedding
                .iter()
                .map(|&s| self.name(s).to_string())
                .collect(),
        )
        .expect("subset of distinct names");
        let pos = |s: usize| {
            embedding
                .iter()
                .position(|&e| e == s)
                .expect("idempotents are closed")
        };
        let meet = embedding
            .iter()
            .flat_map(|&a| embedding.iter().map(move |&b| (a, b)))
            .map(|(a, b)| pos(self.mul(a, b)))
            .collect();
        let semilattice = FiniteMeetSemilattice::from_table(carrier, pos(self.zero), meet)
            .expect("commuting idempotents form a semilattice");
        IdempotentSemilattice {
            semilattice: Arc::new(semilattice),
            embedding,
        }
    }

    pub fn to_input(&self) -> SemigroupInput {
        let n = self.len();
        SemigroupInput {
            elements: self.carrier.names().to_vec(),
            zero: self.name(self.zero).to_string(),
            mul: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| self.name(self.mul(i, j)).to_string())
                        .collect()
                })
                .collect(),
        }
    }

    /// The sub-table on `members`, validated as an inverse semigroup.
    pub fn restrict(
        &self,
        members: ElemSet,
    ) -> Result<(FiniteInverseSemigroup, Vec<Option<usize>>), SemigroupError> {
        let list: Vec<usize> = members.iter().collect();
        let mut position = vec![None; self.len()];
        for (i, &m) in list.iter().enumerate() {
            position[m] = Some(i);
        }
        let mut mul = Vec::with_capacity(list.len() * list.len());
        for &a in &list {
            for &b in &list {
                let p = position[self.mul(a, b)].ok_or_else(|| {
                    SemigroupError::Internal(format!(
                        "{}·{} leaves the subset",
                        self.name(a),
                        self.name(b)
                    ))
                })?;
                mul.push(p);
            }
        }
        let zero = position[self.zero]
            .ok_or_else(|| SemigroupError::Internal("subset misses zero".into()))?;
        let carrier = Carrier::new(list.iter().map(|&m| self.name(m).to_string()).collect())?;
        Ok((Self::from_table(carrier, zero, mul)?, position))
    }
}

/// `E(S)` together with the positions of its elements in `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSemilattice {
    pub semilattice: Arc<FiniteMeetSemilattice>,
    pub embedding: Vec<usize>,
}

impl IdempotentSemilattice {
    /// Position in `E(S)` of the idempotent at position `s` of `S`.
    pub fn position(&self, s: usize) -> Option<usize> {
        self.embedding.iter().position(|&e| e == s)
    }
}

/// `E(T)` carrying the generalized Boolean algebra structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanIdempotents {
    pub algebra: Arc<FiniteGenBoolAlg>,
    pub embedding: Vec<usize>,
}

impl BooleanIdempotents {
    pub fn position(&self, s: usize) -> Option<usize> {
        self.embedding.iter().position(|&e| e == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GbisFailure {
    /// Two idempotents without a least upper bound among the idempotents.
    NoJoin {
        a: String,
        b: String,
    },
    NotBoolean(LatticeError),
}

impl fmt::Display for GbisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GbisFailure::NoJoin { a, b } => write!(f, "({a},{b}) has no join"),
            GbisFailure::NotBoolean(e) => write!(f, "{e}"),
        }
    }
}

/// Extends `E(T)`'s meet by least upper bounds and validates the result as a
/// generalized Boolean algebra.
pub fn is_generalized_boolean_inverse_semigroup(
    t: &FiniteInverseSemigroup,
) -> Result<BooleanIdempotents, GbisFailure> {
    let IdempotentSemilattice {
        semilattice: e,
        embedding,
    } = t.idempotents();
    let n = e.len();
    let mut join = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let upper: Vec<usize> = (0..n).filter(|&c| e.leq(a, c) && e.leq(b, c)).collect();
            let least = upper
                .iter()
                .copied()
                .find(|&c| upper.iter().all(|&u| e.leq(c, u)))
                .ok_or_else(|| GbisFailure::NoJoin {
                    a: e.name(a).to_string(),
                    b: e.name(b).to_string(),
                })?;
            join.push(least);
        }
    }
    let algebra =
        FiniteGenBoolAlg::from_tables(e.carrier().clone(), e.zero(), e.table().to_vec(), join)
            .map_err(GbisFailure::NotBoolean)?;
    Ok(BooleanIdempotents {
        algebra: Arc::new(algebra),
        embedding,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn table(elements: &[&str], rows: &[&[&str]]) -> SemigroupInput {
        SemigroupInput {
            elements: elements.iter().map(|s| s.to_string()).collect(),
            zero: elements[0].to_string(),
            mul: rows
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }

    /// The two-element group with a zero adjoined.
    pub fn z2_with_zero() -> FiniteInverseSemigroup {
        FiniteInverseSemigroup::validate(&table(
            &["0", "1", "g"],
            &[&["0", "0", "0"], &["0", "1", "g"], &["0", "g", "1"]],
        ))
        .unwrap()
    }

    pub fn i2() -> FiniteInverseSemigroup {
        FiniteInverseSemigroup::symmetric_inverse(2)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::enumerate::{enumerate_semilattices, powerset_algebra};

    /// Partial injections on two points, composed directly.
    fn compose(s: [Option<usize>; 2], t: [Option<usize>; 2]) -> [Option<usize>; 2] {
        [t[0].and_then(|y| s[y]), t[1].and_then(|y| s[y])]
    }

    #[test]
    fn i2_has_seven_elements_and_matches_composition() {
        let s = i2();
        assert_eq!(s.len(), 7);
        let decode = |name: &str| -> [Option<usize>; 2] {
            if name == "0" {
                return [None, None];
            }
            let c: Vec<Option<usize>> = name
                .chars()
                .map(|ch| ch.to_digit(10).map(|d| d as usize - 1))
                .collect();
            [c[0], c[1]]
        };
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(
                    decode(s.name(s.mul(a, b))),
                    compose(decode(s.name(a)), decode(s.name(b)))
                );
            }
        }
        assert_eq!(
            s.carrier().names(),
            ["0", "-1", "-2", "1-", "2-", "12", "21"]
        );
    }

    #[test]
    fn derived_laws_hold() {
        for s in [
            i2(),
            z2_with_zero(),
            FiniteInverseSemigroup::symmetric_inverse(3),
        ] {
            for a in 0..s.len() {
                assert_eq!(s.inv(s.inv(a)), a);
                assert!(s.is_idempotent(s.source(a)));
                assert!(s.is_idempotent(s.range(a)));
                for b in 0..s.len() {
                    assert_eq!(s.inv(s.mul(a, b)), s.mul(s.inv(b), s.inv(a)));
                }
            }
        }
    }

    #[test]
    fn semilattice_as_semigroup() {
        for e in enumerate_semilattices(4, false) {
            let s = FiniteInverseSemigroup::from_semilattice(&e);
            assert!((0..s.len()).all(|a| s.inv(a) == a));
            assert_eq!(s.idempotents().semilattice.table(), e.table());
        }
    }

    #[test]
    fn right_zero_tables_are_rejected() {
        let bare = table(&["a", "b"], &[&["a", "b"], &["a", "b"]]);
        assert!(matches!(
            FiniteInverseSemigroup::validate(&bare).unwrap_err(),
            SemigroupError::InverseNotUnique { .. }
        ));
        let with_zero = table(
            &["0", "a", "b"],
            &[&["0", "0", "0"], &["0", "a", "b"], &["0", "a", "b"]],
        );
        let err = FiniteInverseSemigroup::validate(&with_zero).unwrap_err();
        assert_eq!(err.to_string(), "inverse not unique for a: a and b");
    }

    #[test]
    fn other_validation_errors() {
        // 2-element null semigroup plus an element squaring to zero: x has no inverse
        let nil = table(&["0", "x"], &[&["0", "0"], &["0", "0"]]);
        assert_eq!(
            FiniteInverseSemigroup::validate(&nil).unwrap_err(),
            SemigroupError::InverseMissing("x".into())
        );
        let not_zero = table(&["1", "0"], &[&["1", "0"], &["0", "0"]]);
        assert_eq!(
            FiniteInverseSemigroup::validate(&not_zero).unwrap_err(),
            SemigroupError::ZeroNotAbsorbing("0".into())
        );
        let not_assoc = table(
            &["0", "a", "b"],
            &[&["0", "0", "0"], &["0", "a", "a"], &["0", "b", "0"]],
        );
        assert!(matches!(
            FiniteInverseSemigroup::validate(&not_assoc).unwrap_err(),
            SemigroupError::Table(LatticeError::NotAssociative { .. })
                | SemigroupError::InverseMissing(_)
        ));
    }

    #[test]
    fn idempotents_of_i2_form_p2() {
        let ids = i2().idempotents();
        assert_eq!(ids.semilattice.len(), 4);
        let b = is_generalized_boolean_inverse_semigroup(&i2()).unwrap();
        // rank-based identification with the subsets of {1,2}
        let p2 = powerset_algebra(2);
        let rank_to_subset = |name: &str| match name {
            "0" => "{}",
            "1-" => "{1}",
            "-2" => "{2}",
            "12" => "{1,2}",
            other => panic!("unexpected idempotent {other}"),
        };
        let alg = &b.algebra;
        for x in 0..4 {
            for y in 0..4 {
                let px = p2.carrier().index_of(rank_to_subset(alg.name(x))).unwrap();
                let py = p2.carrier().index_of(rank_to_subset(alg.name(y))).unwrap();
                assert_eq!(
                    rank_to_subset(alg.name(alg.meet(x, y))),
                    p2.name(p2.meet(px, py))
                );
                assert_eq!(
                    rank_to_subset(alg.name(alg.join(x, y))),
                    p2.name(p2.join(px, py))
                );
            }
        }
    }

    #[test]
    fn group_with_zero_has_chain_idempotents() {
        let ids = z2_with_zero().idempotents();
        assert_eq!(ids.semilattice.carrier().names(), ["0", "1"]);
        assert!(is_generalized_boolean_inverse_semigroup(&z2_with_zero()).is_ok());
    }

    #[test]
    fn vee_semigroup_is_not_boolean() {
        let vee = table(
            &["0", "a", "b"],
            &[&["0", "0", "0"], &["0", "a", "0"], &["0", "0", "b"]],
        );
        let s = FiniteInverseSemigroup::validate(&vee).unwrap();
        assert_eq!(
            is_generalized_boolean_inverse_semigroup(&s).unwrap_err(),
            GbisFailure::NoJoin {
                a: "a".into(),
                b: "b".into()
            }
        );
        let chain = FiniteInverseSemigroup::from_semilattice(
            &enumerate_semilattices(2, false).next().unwrap(),
        );
        assert!(is_generalized_boolean_inverse_semigroup(&chain).is_ok());
    }

    #[test]
    fn restriction_to_subsets() {
        let s = i2();
        let set = |names: &[&str]| -> ElemSet {
            names
                .iter()
                .map(|n| s.carrier().index_of(n).unwrap())
                .collect()
        };
        let (corner, pos) = s.restrict(set(&["0", "1-"])).unwrap();
        assert_eq!(corner.len(), 2);
        assert_eq!(pos[s.carrier().index_of("1-").unwrap()], Some(1));
        assert!(matches!(
            s.restrict(set(&["0", "2-", "-1"])),
            Err(SemigroupError::Internal(_))
        ));
        assert_eq!(
            s.restrict(set(&["0", "-1"])).unwrap_err(),
            SemigroupError::InverseMissing("-1".into())
        );
    }
}
