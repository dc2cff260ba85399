//! Representations of a finite semilattice in a finite generalized Boolean
//! algebra, and the tight / cover-to-join / non-degenerate decision
//! procedures.

mod cover;
mod tighten;
mod tightness;

pub use cover::{all_covers, constrained_interval, covers_of, is_cover, CoverStatus};
pub use tighten::{restrict_to_generated_ideal, tighten, TightenError, Tightening};
pub use tightness::{
    check, check_with, is_cover_to_join, is_cover_to_join_with, is_nondegenerate, is_tight,
    is_tight_in, is_tight_with, reduced_pairs, ConditionInstance, CoverScan, CoverToJoinWitness,
    PairScan, ScanOptions, TightWitness, TightnessReport, Verdict,
};

use crate::elemset::ElemSet;
use crate::lattice::{
    FiniteGenBoolAlg, FiniteMeetSemilattice, IdealView, LatticeError, MeetStructure,
};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("map has {found} entries, domain has {expected} elements")]
    MapLength { expected: usize, found: usize },
    #[error("no image given for '{0}'")]
    Unmapped(String),
    #[error("'{0}' mapped twice")]
    MappedTwice(String),
    #[error("zero not preserved: zero maps to {0}")]
    ZeroNotPreserved(String),
    #[error("meet not preserved at ({x},{y})")]
    MeetNotPreserved { x: String, y: String },
    #[error("image of {x} ({image}) lies outside the codomain view")]
    OutsideView { x: String, image: String },
    #[error("cover candidate is not contained in the constrained set")]
    NotSubset,
}

/// A zero- and meet-preserving map `π: E → B`, viewed into an ideal of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    domain: Arc<FiniteMeetSemilattice>,
    codomain: IdealView,
    map: Vec<usize>,
}

impl Representation {
    pub fn validate(
        domain: Arc<FiniteMeetSemilattice>,
        codomain: IdealView,
        map: Vec<usize>,
    ) -> Result<Self, RepresentationError> {
        let alg = Arc::clone(codomain.parent());
        if map.len() != domain.len() {
            return Err(RepresentationError::MapLength {
                expected: domain.len(),
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&b| b >= alg.len()) {
            return Err(LatticeError::UnknownElement(format!("#{bad}")).into());
        }
        if map[domain.zero()] != alg.zero() {
            return Err(RepresentationError::ZeroNotPreserved(
                alg.name(map[domain.zero()]).to_string(),
            ));
        }
        for x in 0..domain.len() {
            for y in x..domain.len() {
                if map[domain.meet(x, y)] != alg.meet(map[x], map[y]) {
                    return Err(RepresentationError::MeetNotPreserved {
                        x: domain.name(x).to_string(),
                        y: domain.name(y).to_string(),
                    });
                }
            }
        }
        let rep = Representation {
            domain,
            codomain,
            map,
        };
        rep.check_range(&rep.codomain)?;
        Ok(rep)
    }

    /// Builds the map from `x -> b` name pairs; every domain element must be
    /// mapped exactly once.
    pub fn validate_named<S: AsRef<str>>(
        domain: Arc<FiniteMeetSemilattice>,
        codomain: IdealView,
        pairs: &[(S, S)],
    ) -> Result<Self, RepresentationError> {
        let alg = Arc::clone(codomain.parent());
        let mut map = vec![None; domain.len()];
        for (x, b) in pairs {
            let xi = domain.carrier().index_of(x.as_ref())?;
            let bi = alg.carrier().index_of(b.as_ref())?;
            if map[xi].replace(bi).is_some() {
                return Err(RepresentationError::MappedTwice(x.as_ref().to_string()));
            }
        }
        let map = map
            .iter()
            .enumerate()
            .map(|(x, b)| {
                b.ok_or_else(|| RepresentationError::Unmapped(domain.name(x).to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::validate(domain, codomain, map)
    }

    fn check_range(&self, view: &IdealView) -> Result<(), RepresentationError> {
        match (0..self.domain.len()).find(|&x| !view.contains(self.map[x])) {
            Some(x) => Err(RepresentationError::OutsideView {
                x: self.domain.name(x).to_string(),
                image: self.algebra().name(self.map[x]).to_string(),
            }),
            None => Ok(()),
        }
    }

    /// The same map viewed into another ideal of the same algebra.
    pub fn with_view(&self, view: IdealView) -> Result<Self, RepresentationError> {
        assert!(
            Arc::ptr_eq(view.parent(), self.codomain.parent())
                || view.parent() == self.codomain.parent(),
            "view must belong to the representation's algebra"
        );
        self.check_range(&view)?;
        Ok(Representation {
            domain: Arc::clone(&self.domain),
            codomain: view,
            map: self.map.clone(),
        })
    }

    pub fn domain(&self) -> &Arc<FiniteMeetSemilattice> {
        &self.domain
    }

    pub fn codomain(&self) -> &IdealView {
        &self.codomain
    }

    pub fn algebra(&self) -> &Arc<FiniteGenBoolAlg> {
        self.codomain.parent()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn range(&self) -> ElemSet {
        self.map.iter().copied().collect()
    }

    /// `⋁_{z ∈ set} π(z)`.
    pub fn join_of_images(&self, set: ElemSet) -> usize {
        let alg = self.algebra();
        set.iter()
            .fold(alg.zero(), |acc, z| alg.join(acc, self.map[z]))
    }

    /// Copies the codomain view into a standalone algebra and re-expresses
    /// the map in it.
    pub fn materialize(&self) -> Representation {
        let (alg, position) = self.codomain.materialize();
        let map = self
            .map
            .iter()
            .map(|&b| position[b].expect("range lies in the view"))
            .collect();
        let alg = Arc::new(alg);
        Representation::validate(Arc::clone(&self.domain), IdealView::full(alg), map)
            .expect("restriction of a representation to an ideal containing its range")
    }

    /// `(x, π(x))` name pairs in declared order.
    pub fn named_pairs(&self) -> Vec<(String, String)> {
        (0..self.domain.len())
            .map(|x| {
                (
                    self.domain.name(x).to_string(),
                    self.algebra().name(self.map[x]).to_string(),
                )
            })
            .collect()
    }
}
