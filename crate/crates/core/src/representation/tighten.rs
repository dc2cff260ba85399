use super::tightness::{is_cover_to_join, is_tight, CoverToJoinWitness, TightWitness, Verdict};
use super::Representation;
use crate::lattice::{ideal_generated_by, principal_ideal, IdealView, MeetStructure};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TightenError {
    #[error("representation is not cover-to-join")]
    NotCoverToJoin(CoverToJoinWitness),
    #[error("internal: image of element #{0} is not below the unit")]
    BoundViolated(usize),
    #[error("internal: tightened representation is not tight")]
    NotTight(TightWitness),
}

/// A cover-to-join representation corestricted to the corner below its unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tightening {
    unit: usize,
    representation: Representation,
}

impl Tightening {
    /// `e = ⋁_{z ≠ 0} π(z)`.
    pub fn unit(&self) -> usize {
        self.unit
    }

    /// `{a : a ≤ e}`.
    pub fn codomain(&self) -> &IdealView {
        self.representation.codomain()
    }

    pub fn representation(&self) -> &Representation {
        &self.representation
    }

    pub fn into_representation(self) -> Representation {
        self.representation
    }
}

/// Joins the images of the cover `E ∖ {0}` into a unit `e` and views the
/// representation in `{a : a ≤ e}`, where it is tight.
pub fn tighten(rep: &Representation) -> Result<Tightening, TightenError> {
    if let Verdict::Fail(w) = is_cover_to_join(rep) {
        return Err(TightenError::NotCoverToJoin(w));
    }
    let e = rep.domain();
    let alg = rep.algebra();
    let unit = rep.join_of_images(e.all().without(e.zero()));
    if let Some(x) = (0..e.len()).find(|&x| !alg.leq(rep.image(x), unit)) {
        return Err(TightenError::BoundViolated(x));
    }
    let view = principal_ideal(alg, unit).expect("unit is an element of the algebra");
    let representation = rep
        .with_view(view)
        .map_err(|_| TightenError::BoundViolated(0))?;
    if let Verdict::Fail(w) = is_tight(&representation) {
        return Err(TightenError::NotTight(w));
    }
    Ok(Tightening {
        unit,
        representation,
    })
}

/// The same map viewed into the ideal generated by its range.
pub fn restrict_to_generated_ideal(rep: &Representation) -> Representation {
    let view = ideal_generated_by(rep.algebra(), rep.range()).expect("the range contains zero");
    rep.with_view(view)
        .expect("the generated ideal contains the range")
}
