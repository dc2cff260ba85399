use super::cover::{interval, CoverTester};
use super::{Representation, RepresentationError};
use crate::elemset::ElemSet;
use crate::lattice::{ideal_generated_by, IdealView, MeetStructure};
use std::collections::HashSet;

/// Outcome of one decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

/// `x` together with a cover `Z` of `{z : z ≤ x}` where `⋁ π(Z) ≠ π(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverToJoinWitness {
    pub x: usize,
    pub cover: ElemSet,
    pub join: usize,
}

/// `(X, Y, Z)` with `Z` a cover of `E^{X,Y}` and
/// `⋁ π(Z) ≠ ⋀_X π(x) ∧ ⋀_Y ¬π(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TightWitness {
    pub xs: ElemSet,
    pub ys: ElemSet,
    pub cover: ElemSet,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessReport {
    pub cover_to_join: Verdict<CoverToJoinWitness>,
    pub tight: Verdict<TightWitness>,
    /// Fails with the first codomain element outside the ideal generated by
    /// the range.
    pub nondegenerate: Verdict<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoverScan {
    /// Inclusion-minimal covers only.
    #[default]
    Minimal,
    /// Every cover, including ones containing zero.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairScan {
    /// `X` ranges over `∅` and singletons, `Y` over antichains; instances
    /// with the same constrained set and right-hand side are checked once.
    #[default]
    Reduced,
    /// Every pair of subsets `X, Y ⊆ E`.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanOptions {
    pub covers: CoverScan,
    pub pairs: PairScan,
}

impl ScanOptions {
    pub const EXHAUSTIVE: ScanOptions = ScanOptions {
        covers: CoverScan::All,
        pairs: PairScan::Full,
    };
}

/// One instance of the tightness condition: the constrained set `E^{X,Y}`
/// and the right-hand side evaluated in the representation's view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionInstance {
    pub xs: ElemSet,
    pub ys: ElemSet,
    pub interval: ElemSet,
    pub rhs: usize,
}

fn rhs(rep: &Representation, view: &IdealView, xs: ElemSet, ys: ElemSet) -> usize {
    let alg = rep.algebra();
    let upper = xs
        .iter()
        .fold(view.top(), |acc, x| alg.meet(acc, rep.image(x)));
    ys.iter().fold(upper, |acc, y| {
        let neg = view.negation(rep.image(y)).expect("range lies in the view");
        alg.meet(acc, neg)
    })
}

fn instance(rep: &Representation, xs: ElemSet, ys: ElemSet) -> ConditionInstance {
    ConditionInstance {
        xs,
        ys,
        interval: interval(rep.domain(), xs, ys),
        rhs: rhs(rep, rep.codomain(), xs, ys),
    }
}

/// The reduced `(X, Y)` instances, in search order.
pub fn reduced_pairs(rep: &Representation) -> Vec<ConditionInstance> {
    let e = rep.domain();
    let xs_choices = std::iter::once(ElemSet::EMPTY).chain((0..e.len()).map(ElemSet::singleton));
    let antichains: Vec<ElemSet> = e
        .all()
        .graded_subsets()
        .filter(|s| s.iter().all(|a| s.iter().all(|b| a == b || !e.leq(a, b))))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for xs in xs_choices {
        for &ys in &antichains {
            let inst = instance(rep, xs, ys);
            if seen.insert((inst.interval, inst.rhs)) {
                out.push(inst);
            }
        }
    }
    out
}

fn full_pairs(rep: &Representation) -> Vec<ConditionInstance> {
    let all = rep.domain().all();
    all.graded_subsets()
        .flat_map(|xs| all.graded_subsets().map(move |ys| (xs, ys)))
        .map(|(xs, ys)| instance(rep, xs, ys))
        .collect()
}

fn covers(
    rep: &Representation,
    target: ElemSet,
    scan: CoverScan,
) -> Box<dyn Iterator<Item = ElemSet>> {
    let tester = CoverTester::new(rep.domain(), target);
    match scan {
        CoverScan::Minimal => Box::new(tester.minimal_covers(rep.domain().zero())),
        CoverScan::All => Box::new(tester.all_covers()),
    }
}

pub fn is_tight(rep: &Representation) -> Verdict<TightWitness> {
    is_tight_with(rep, ScanOptions::default())
}

/// Tightness with `view`'s top serving as the unit.
pub fn is_tight_in(
    rep: &Representation,
    view: &IdealView,
) -> Result<Verdict<TightWitness>, RepresentationError> {
    Ok(is_tight(&rep.with_view(view.clone())?))
}

pub fn is_tight_with(rep: &Representation, opts: ScanOptions) -> Verdict<TightWitness> {
    let instances = match opts.pairs {
        PairScan::Reduced => reduced_pairs(rep),
        PairScan::Full => full_pairs(rep),
    };
    for inst in instances {
        for cover in covers(rep, inst.interval, opts.covers) {
            let lhs = rep.join_of_images(cover);
            if lhs != inst.rhs {
                return Verdict::Fail(TightWitness {
                    xs: inst.xs,
                    ys: inst.ys,
                    cover,
                    lhs,
                    rhs: inst.rhs,
                });
            }
        }
    }
    Verdict::Pass
}

pub fn is_cover_to_join(rep: &Representation) -> Verdict<CoverToJoinWitness> {
    is_cover_to_join_with(rep, CoverScan::Minimal)
}

pub fn is_cover_to_join_with(rep: &Representation, scan: CoverScan) -> Verdict<CoverToJoinWitness> {
    let e = rep.domain();
    for x in 0..e.len() {
        for cover in covers(rep, e.down_set(x), scan) {
            let join = rep.join_of_images(cover);
            if join != rep.image(x) {
                return Verdict::Fail(CoverToJoinWitness { x, cover, join });
            }
        }
    }
    Verdict::Pass
}

/// Passes iff the ideal generated by the range is the whole codomain view.
pub fn is_nondegenerate(rep: &Representation) -> Verdict<usize> {
    let generated = ideal_generated_by(rep.algebra(), rep.range())
        .expect("the range contains zero")
        .members();
    match rep.codomain().members().difference(generated).first() {
        Some(a) => Verdict::Fail(a),
        None => Verdict::Pass,
    }
}

pub fn check(rep: &Representation) -> TightnessReport {
    check_with(rep, ScanOptions::default())
}

pub fn check_with(rep: &Representation, opts: ScanOptions) -> TightnessReport {
    TightnessReport {
        cover_to_join: is_cover_to_join_with(rep, opts.covers),
        tight: is_tight_with(rep, opts),
        nondegenerate: is_nondegenerate(rep),
    }
}
