use super::{
    is_generalized_boolean_inverse_semigroup, BooleanIdempotents, FiniteInverseSemigroup,
    IdempotentSemilattice, SemigroupError,
};
use crate::elemset::ElemSet;
use crate::lattice::{IdealView, MeetStructure};
use crate::representation::{check, is_cover_to_join, Representation, TightnessReport, Verdict};
use std::sync::Arc;

/// A zero-preserving multiplicative map between inverse semigroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ISHomomorphism {
    domain: Arc<FiniteInverseSemigroup>,
    codomain: Arc<FiniteInverseSemigroup>,
    map: Vec<usize>,
}

impl ISHomomorphism {
    pub fn validate(
        domain: Arc<FiniteInverseSemigroup>,
        codomain: Arc<FiniteInverseSemigroup>,
        map: Vec<usize>,
    ) -> Result<Self, SemigroupError> {
        if map.len() != domain.len() {
            return Err(SemigroupError::MapLength {
                expected: domain.len(),
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= codomain.len()) {
            return Err(SemigroupError::Internal(format!(
                "image #{bad} out of range"
            )));
        }
        if map[domain.zero()] != codomain.zero() {
            return Err(SemigroupError::ZeroNotPreserved(
                codomain.name(map[domain.zero()]).to_string(),
            ));
        }
        for s in 0..domain.len() {
            for t in 0..domain.len() {
                if map[domain.mul(s, t)] != codomain.mul(map[s], map[t]) {
                    return Err(SemigroupError::NotMultiplicative {
                        s: domain.name(s).to_string(),
                        t: domain.name(t).to_string(),
                    });
                }
            }
        }
        // consequences of multiplicativity, checked rather than assumed
        for s in 0..domain.len() {
            if map[domain.inv(s)] != codomain.inv(map[s]) {
                return Err(SemigroupError::InverseNotPreserved(
                    domain.name(s).to_string(),
                ));
            }
            if domain.is_idempotent(s) && !codomain.is_idempotent(map[s]) {
                return Err(SemigroupError::IdempotentNotPreserved(
                    domain.name(s).to_string(),
                ));
            }
        }
        Ok(ISHomomorphism {
            domain,
            codomain,
            map,
        })
    }

    pub fn validate_named<S: AsRef<str>>(
        domain: Arc<FiniteInverseSemigroup>,
        codomain: Arc<FiniteInverseSemigroup>,
        pairs: &[(S, S)],
    ) -> Result<Self, SemigroupError> {
        let mut map = vec![None; domain.len()];
        for (s, t) in pairs {
            let si = domain.carrier().index_of(s.as_ref())?;
            let ti = codomain.carrier().index_of(t.as_ref())?;
            if map[si].replace(ti).is_some() {
                return Err(SemigroupError::MappedTwice(s.as_ref().to_string()));
            }
        }
        let map = map
            .iter()
            .enumerate()
            .map(|(s, t)| t.ok_or_else(|| SemigroupError::Unmapped(domain.name(s).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::validate(domain, codomain, map)
    }

    pub fn domain(&self) -> &Arc<FiniteInverseSemigroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteInverseSemigroup> {
        &self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, s: usize) -> usize {
        self.map[s]
    }

    pub fn named_pairs(&self) -> Vec<(String, String)> {
        (0..self.domain.len())
            .map(|s| {
                (
                    self.domain.name(s).to_string(),
                    self.codomain.name(self.map[s]).to_string(),
                )
            })
            .collect()
    }

    /// The restriction `E(S) → E(T)` as a representation into the full
    /// Boolean algebra carried by `E(T)`.
    pub fn restriction(&self) -> Result<Restriction, SemigroupError> {
        let codomain_ids = is_generalized_boolean_inverse_semigroup(&self.codomain)
            .map_err(SemigroupError::NotBooleanCodomain)?;
        let domain_ids = self.domain.idempotents();
        let map = domain_ids
            .embedding
            .iter()
            .map(|&s| {
                codomain_ids.position(self.map[s]).ok_or_else(|| {
                    SemigroupError::IdempotentNotPreserved(self.domain.name(s).to_string())
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let representation = Representation::validate(
            Arc::clone(&domain_ids.semilattice),
            IdealView::full(Arc::clone(&codomain_ids.algebra)),
            map,
        )?;
        Ok(Restriction {
            representation,
            domain_idempotents: domain_ids,
            codomain_idempotents: codomain_ids,
        })
    }
}

/// `π|E(S)` with the embeddings needed to translate back to `S` and `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub representation: Representation,
    pub domain_idempotents: IdempotentSemilattice,
    pub codomain_idempotents: BooleanIdempotents,
}

/// Tight / cover-to-join / non-degenerate verdicts of `π|E(S)`.
pub fn check_homomorphism_tightness(
    phi: &ISHomomorphism,
) -> Result<TightnessReport, SemigroupError> {
    Ok(check(&phi.restriction()?.representation))
}

/// `T' = {t : t*t ≤ e, tt* ≤ e}` for a cover-to-join homomorphism, with the
/// homomorphism corestricted into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corner {
    /// Position of `e` in `T`.
    pub unit: usize,
    /// Positions of `T'` in `T`.
    pub members: ElemSet,
    pub semigroup: Arc<FiniteInverseSemigroup>,
    pub homomorphism: ISHomomorphism,
    pub report: TightnessReport,
}

pub fn tighten_homomorphism(phi: &ISHomomorphism) -> Result<Corner, SemigroupError> {
    let restriction = phi.restriction()?;
    let rep = &restriction.representation;
    if let Verdict::Fail(w) = is_cover_to_join(rep) {
        return Err(SemigroupError::NotCoverToJoin(w));
    }
    let es = rep.domain();
    let unit_e = rep.join_of_images(es.all().without(es.zero()));
    let unit = restriction.codomain_idempotents.embedding[unit_e];

    let t = phi.codomain();
    let below_unit = |x: usize| t.idempotent_leq(x, unit);
    let members: ElemSet = (0..t.len())
        .filter(|&x| below_unit(t.source(x)) && below_unit(t.range(x)))
        .collect();
    let s = phi.domain();
    if let Some(x) = (0..s.len()).find(|&x| !members.contains(phi.image(x))) {
        return Err(SemigroupError::Internal(format!(
            "image of {} lies outside the corner",
            s.name(x)
        )));
    }
    let (corner, position) = t.restrict(members)?;
    let corner = Arc::new(corner);
    let map = phi
        .map()
        .iter()
        .map(|&y| position[y].expect("range lies in the corner"))
        .collect();
    let homomorphism = ISHomomorphism::validate(Arc::clone(s), Arc::clone(&corner), map)?;
    let report = check_homomorphism_tightness(&homomorphism)?;
    if !report.tight.is_pass() {
        return Err(SemigroupError::Internal(
            "corestriction to the corner is not tight".into(),
        ));
    }
    Ok(Corner {
        unit,
        members,
        semigroup: corner,
        homomorphism,
        report,
    })
}

/// Every homomorphism `S → T`, in lexicographic order of images.
pub fn enumerate_homomorphisms(
    s: &Arc<FiniteInverseSemigroup>,
    t: &Arc<FiniteInverseSemigroup>,
) -> Vec<ISHomomorphism> {
    let n = s.len();
    let mut out = Vec::new();
    let mut map: Vec<Option<usize>> = vec![None; n];
    map[s.zero()] = Some(t.zero());
    let order: Vec<usize> = (0..n).filter(|&x| x != s.zero()).collect();
    extend(s, t, &order, 0, &mut map, &mut out);
    out
}

fn extend(
    s: &Arc<FiniteInverseSemigroup>,
    t: &Arc<FiniteInverseSemigroup>,
    order: &[usize],
    depth: usize,
    map: &mut Vec<Option<usize>>,
    out: &mut Vec<ISHomomorphism>,
) {
    if depth == order.len() {
        let full = map.iter().map(|m| m.expect("all assigned")).collect();
        if let Ok(h) = ISHomomorphism::validate(Arc::clone(s), Arc::clone(t), full) {
            out.push(h);
        }
        return;
    }
    let x = order[depth];
    for image in 0..t.len() {
        map[x] = Some(image);
        if consistent(s, t, map, x) {
            extend(s, t, order, depth + 1, map, out);
        }
    }
    map[x] = None;
}

/// Checks every product involving `x` whose factors and result are assigned.
fn consistent(
    s: &FiniteInverseSemigroup,
    t: &FiniteInverseSemigroup,
    map: &[Option<usize>],
    x: usize,
) -> bool {
    (0..s.len()).all(|y| {
        let Some(my) = map[y] else { return true };
        let mx = map[x].expect("x is assigned");
        let forward = map[s.mul(x, y)].is_none_or(|p| p == t.mul(mx, my));
        let backward = map[s.mul(y, x)].is_none_or(|p| p == t.mul(my, mx));
        forward && backward
    })
}
