use super::{check_associative, Carrier, LatticeError, MeetStructure};
use crate::elemset::ElemSet;

/// Unvalidated, name-based description of a generalized Boolean algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraInput {
    pub elements: Vec<String>,
    pub zero: String,
    pub meet: Vec<Vec<String>>,
    pub join: Vec<Vec<String>>,
}

/// A finite generalized Boolean algebra.
///
/// Validation checks the six defining axioms (commutativity of both
/// operations, associativity of meet, distributivity of meet over join,
/// `a ∨ 0 = a`, existence of relative complements, idempotence) and then the
/// derived facts (associativity of join, distributivity of join over meet,
/// absorption, uniqueness of relative complements). The join of all elements
/// is stored as `top` and is checked to be a unit, so every instance is in
/// fact a Boolean algebra; non-unital behaviour is modelled by
/// [`IdealView`](super::IdealView)s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGenBoolAlg {
    carrier: Carrier,
    zero: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    top: usize,
    /// `complement[a * n + b] = b ∖ a` whenever `a ≤ b`.
    complement: Vec<Option<usize>>,
}

impl FiniteGenBoolAlg {
    pub fn validate(input: &AlgebraInput) -> Result<Self, LatticeError> {
        let carrier = Carrier::new(input.elements.clone())?;
        let zero = carrier.index_of(&input.zero)?;
        let meet = carrier.resolve_table("meet", &input.meet)?;
        let join = carrier.resolve_table("join", &input.join)?;
        Self::from_tables(carrier, zero, meet, join)
    }

    pub fn from_tables(
        carrier: Carrier,
        zero: usize,
        meet: Vec<usize>,
        join: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        carrier.check_table("meet", &meet)?;
        carrier.check_table("join", &join)?;
        if zero >= carrier.len() {
            return Err(LatticeError::UnknownElement(format!("#{zero}")));
        }
        let n = carrier.len();
        let m = |a: usize, b: usize| meet[a * n + b];
        let j = |a: usize, b: usize| join[a * n + b];
        let name = |i: usize| carrier.name(i).to_string();

        // (i) commutativity
        for (op, t) in [("join", &join), ("meet", &meet)] {
            for a in 0..n {
                for b in 0..n {
                    if t[a * n + b] != t[b * n + a] {
                        return Err(LatticeError::NotCommutative {
                            op,
                            a: name(a),
                            b: name(b),
                        });
                    }
                }
            }
        }
        // (ii) associativity of meet
        check_associative(&carrier, "meet", &meet)?;
        // (iii) a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(a, j(b, c)) != j(m(a, b), m(a, c)) {
                        return Err(LatticeError::NotDistributive {
                            a: name(a),
                            b: name(b),
                            c: name(c),
                        });
                    }
                }
            }
        }
        // (iv) a ∨ 0 = a
        if let Some(a) = (0..n).find(|&a| j(a, zero) != a) {
            return Err(LatticeError::ZeroNotNeutral(name(a)));
        }
        // (v) relative complements, recorded together with uniqueness
        let mut complement = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if m(a, b) != a {
                    continue;
                }
                let mut solutions = (0..n).filter(|&x| j(x, a) == b && m(x, a) == zero);
                let x = solutions
                    .next()
                    .ok_or_else(|| LatticeError::ComplementMissing {
                        a: name(a),
                        b: name(b),
                    })?;
                if let Some(y) = solutions.next() {
                    return Err(LatticeError::ComplementNotUnique {
                        a: name(a),
                        b: name(b),
                        x: name(x),
                        y: name(y),
                    });
                }
                complement[a * n + b] = Some(x);
            }
        }
        // (vi) a ∨ a = a = a ∧ a
        for (op, t) in [("join", &join), ("meet", &meet)] {
            if let Some(a) = (0..n).find(|&a| t[a * n + a] != a) {
                return Err(LatticeError::NotIdempotent { op, a: name(a) });
            }
        }

        // derived facts
        check_associative(&carrier, "join", &join)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if j(a, m(b, c)) != m(j(a, b), j(a, c)) {
                        return Err(LatticeError::JoinNotDistributive {
                            a: name(a),
                            b: name(b),
                            c: name(c),
                        });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if m(a, j(a, b)) != a || j(a, m(a, b)) != a {
                    return Err(LatticeError::NotAbsorptive {
                        a: name(a),
                        b: name(b),
                    });
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| m(zero, a) != zero) {
            return Err(LatticeError::ZeroNotAbsorbing(name(a)));
        }
        let top = (0..n).fold(zero, j);
        if let Some(a) = (0..n).find(|&a| m(top, a) != a) {
            return Err(LatticeError::TopNotUnit {
                top: name(top),
                a: name(a),
            });
        }

        Ok(FiniteGenBoolAlg {
            carrier,
            zero,
            meet,
            join,
            top,
            complement,
        })
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.carrier.len() + b]
    }

    /// Join of a set; the empty join is zero.
    pub fn join_all(&self, set: ElemSet) -> usize {
        set.iter().fold(self.zero, |acc, x| self.join(acc, x))
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `b ∖ a`, the unique `x` with `x ∨ a = b` and `x ∧ a = 0`.
    pub fn relative_complement(&self, a: usize, b: usize) -> Result<usize, LatticeError> {
        self.complement[a * self.carrier.len() + b].ok_or_else(|| LatticeError::NotBelow {
            a: self.name(a).to_string(),
            b: self.name(b).to_string(),
        })
    }

    pub fn relative_complement_named(&self, a: &str, b: &str) -> Result<String, LatticeError> {
        let x = self.relative_complement(self.carrier.index_of(a)?, self.carrier.index_of(b)?)?;
        Ok(self.name(x).to_string())
    }

    /// `¬a = top ∖ a`.
    pub fn negation(&self, a: usize) -> usize {
        self.complement[a * self.carrier.len() + self.top].expect("every element lies below top")
    }

    pub fn meet_table(&self) -> &[usize] {
        &self.meet
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    pub fn to_input(&self) -> AlgebraInput {
        let n = self.len();
        let rows = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<String>> {
            (0..n)
                .map(|i| (0..n).map(|j| self.name(f(i, j)).to_string()).collect())
                .collect()
        };
        AlgebraInput {
            elements: self.carrier.names().to_vec(),
            zero: self.name(self.zero).to_string(),
            meet: rows(&|i, j| self.meet(i, j)),
            join: rows(&|i, j| self.join(i, j)),
        }
    }
}

impl MeetStructure for FiniteGenBoolAlg {
    fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    fn zero(&self) -> usize {
        self.zero
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.carrier.len() + b]
    }
}
