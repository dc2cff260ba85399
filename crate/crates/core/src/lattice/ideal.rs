use super::{Carrier, FiniteGenBoolAlg, LatticeError, MeetStructure};
use crate::elemset::ElemSet;
use std::fmt;
use std::sync::Arc;

/// Why a subset fails to be an ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealViolation {
    Empty,
    UnknownElement(usize),
    /// `below ≤ member`, `member` is in the set but `below` is not.
    NotDownClosed {
        below: usize,
        member: usize,
    },
    /// `a ∨ b` is missing.
    NotJoinClosed {
        a: usize,
        b: usize,
    },
}

impl IdealViolation {
    pub fn describe(&self, alg: &FiniteGenBoolAlg) -> String {
        match *self {
            IdealViolation::Empty => "empty set".to_string(),
            IdealViolation::UnknownElement(i) => format!("unknown element #{i}"),
            IdealViolation::NotDownClosed { below, member } => {
                format!("{} ≤ {} missing", alg.name(below), alg.name(member))
            }
            IdealViolation::NotJoinClosed { a, b } => format!(
                "join({},{}) = {} missing",
                alg.name(a),
                alg.name(b),
                alg.name(alg.join(a, b))
            ),
        }
    }
}

/// Checks that `members` is nonempty, downward closed and closed under join.
pub fn is_ideal(alg: &FiniteGenBoolAlg, members: ElemSet) -> Result<(), IdealViolation> {
    if let Some(i) = members.difference(alg.all()).first() {
        return Err(IdealViolation::UnknownElement(i));
    }
    if members.is_empty() {
        return Err(IdealViolation::Empty);
    }
    for member in members {
        if let Some(below) = alg.down_set(member).difference(members).first() {
            return Err(IdealViolation::NotDownClosed { below, member });
        }
    }
    for a in members {
        for b in members.iter().filter(|&b| b > a) {
            if !members.contains(alg.join(a, b)) {
                return Err(IdealViolation::NotJoinClosed { a, b });
            }
        }
    }
    Ok(())
}

/// An ideal of a [`FiniteGenBoolAlg`], sharing the parent's tables.
///
/// The view's top is the join of its members; it plays the role of the unit
/// when complements are taken inside the view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealView {
    parent: Arc<FiniteGenBoolAlg>,
    members: ElemSet,
    top: usize,
}

impl IdealView {
    pub fn new(parent: Arc<FiniteGenBoolAlg>, members: ElemSet) -> Result<Self, LatticeError> {
        is_ideal(&parent, members).map_err(|v| LatticeError::NotAnIdeal(v.describe(&parent)))?;
        let top = parent.join_all(members);
        Ok(IdealView {
            parent,
            members,
            top,
        })
    }

    /// The whole algebra as a view of itself.
    pub fn full(parent: Arc<FiniteGenBoolAlg>) -> Self {
        let members = parent.all();
        let top = parent.top();
        IdealView {
            parent,
            members,
            top,
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGenBoolAlg> {
        &self.parent
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn is_full(&self) -> bool {
        self.members == self.parent.all()
    }

    /// `top ∖ a`, the complement of `a` inside the view.
    pub fn negation(&self, a: usize) -> Result<usize, LatticeError> {
        self.parent.relative_complement(a, self.top)
    }

    /// Copies the view into a standalone algebra over the member names.
    /// The second component maps parent positions to positions in the copy.
    pub fn materialize(&self) -> (FiniteGenBoolAlg, Vec<Option<usize>>) {
        let members: Vec<usize> = self.members.iter().collect();
        let mut position = vec![None; self.parent.len()];
        for (i, &m) in members.iter().enumerate() {
            position[m] = Some(i);
        }
        let carrier = Carrier::new(
            members
                .iter()
                .map(|&m| self.parent.name(m).to_string())
                .collect(),
        )
        .expect("member names are distinct");
        let restrict = |f: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
            members
                .iter()
                .flat_map(|&a| members.iter().map(move |&b| (a, b)))
                .map(|(a, b)| position[f(a, b)].expect("ideals are closed under meet and join"))
                .collect()
        };
        let meet = restrict(&|a, b| self.parent.meet(a, b));
        let join = restrict(&|a, b| self.parent.join(a, b));
        let zero = position[self.parent.zero()].expect("ideals contain zero");
        let alg = FiniteGenBoolAlg::from_tables(carrier, zero, meet, join)
            .expect("an ideal of a generalized Boolean algebra is one itself");
        (alg, position)
    }
}

impl fmt::Display for IdealView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.parent.carrier().render_set(self.members))
    }
}

/// The smallest ideal containing `generators`, i.e. `{a : a ≤ ⋁ generators}`.
pub fn ideal_generated_by(
    alg: &Arc<FiniteGenBoolAlg>,
    generators: ElemSet,
) -> Result<IdealView, LatticeError> {
    alg.check_set(generators)?;
    if generators.is_empty() {
        return Err(LatticeError::EmptyGenerators);
    }
    principal_ideal(alg, alg.join_all(generators))
}

/// `{a : a ≤ e}`; its top is `e`.
pub fn principal_ideal(alg: &Arc<FiniteGenBoolAlg>, e: usize) -> Result<IdealView, LatticeError> {
    if e >= alg.len() {
        return Err(LatticeError::UnknownElement(format!("#{e}")));
    }
    Ok(IdealView {
        parent: Arc::clone(alg),
        members: alg.down_set(e),
        top: e,
    })
}
