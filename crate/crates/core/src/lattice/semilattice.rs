use super::{check_semilattice_laws, Carrier, LatticeError, MeetStructure};

/// Unvalidated, name-based description of a meet-semilattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeInput {
    pub elements: Vec<String>,
    pub zero: String,
    /// `meet[i][j]` names `eᵢ ∧ eⱼ`.
    pub meet: Vec<Vec<String>>,
}

/// A finite meet-semilattice with an absorbing zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMeetSemilattice {
    carrier: Carrier,
    zero: usize,
    meet: Vec<usize>,
}

impl FiniteMeetSemilattice {
    pub fn validate(input: &SemilatticeInput) -> Result<Self, LatticeError> {
        let carrier = Carrier::new(input.elements.clone())?;
        let zero = carrier.index_of(&input.zero)?;
        let meet = carrier.resolve_table("meet", &input.meet)?;
        Self::from_table(carrier, zero, meet)
    }

    /// Validates a positional table (`meet[i * n + j]`).
    pub fn from_table(
        carrier: Carrier,
        zero: usize,
        meet: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        carrier.check_table("meet", &meet)?;
        if zero >= carrier.len() {
            return Err(LatticeError::UnknownElement(format!("#{zero}")));
        }
        check_semilattice_laws(&carrier, "meet", &meet)?;
        let n = carrier.len();
        if let Some(x) = (0..n).find(|&x| meet[zero * n + x] != zero) {
            return Err(LatticeError::ZeroNotAbsorbing(carrier.name(x).to_string()));
        }
        Ok(FiniteMeetSemilattice {
            carrier,
            zero,
            meet,
        })
    }

    /// The flat row-major meet table.
    pub fn table(&self) -> &[usize] {
        &self.meet
    }

    pub fn to_input(&self) -> SemilatticeInput {
        let n = self.len();
        SemilatticeInput {
            elements: self.carrier.names().to_vec(),
            zero: self.name(self.zero).to_string(),
            meet: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| self.name(self.meet(i, j)).to_string())
                        .collect()
                })
                .collect(),
        }
    }
}

impl MeetStructure for FiniteMeetSemilattice {
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
