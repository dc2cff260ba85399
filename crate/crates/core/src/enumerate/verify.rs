use super::{describe, enumerate_representations, enumerate_semilattices, UniverseSpec};
use crate::elemset::ElemSet;
use crate::lattice::{is_ideal, FiniteMeetSemilattice, MeetStructure};
use crate::representation::{
    check, constrained_interval, covers_of, is_cover_to_join_with, is_nondegenerate, is_tight,
    is_tight_with, reduced_pairs, restrict_to_generated_ideal, tighten, CoverScan, PairScan,
    Representation, ScanOptions,
};
use std::sync::Arc;

/// Oracle scans (all covers, all `(X, Y)`) run only up to this domain size.
const ORACLE_LIMIT: usize = 4;

/// Names of the properties checked on every universe member, in report order.
pub const CHECKS: [&str; 10] = [
    "tight_implies_cover_to_join",
    "cover_to_join_tightens",
    "nondegenerate_equivalence",
    "generated_ideal_nondegenerate",
    "nonempty_x_instances",
    "join_bound",
    "complement_identity",
    "interval_reduction",
    "minimal_cover_oracle",
    "reduced_scan_oracle",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckTally {
    pub name: &'static str,
    /// Instances where the property's hypothesis held and it was evaluated.
    pub checked: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub instance: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub semilattices: usize,
    pub representations: usize,
    pub checks: Vec<CheckTally>,
    pub first_violation: Option<Violation>,
}

impl VerifySummary {
    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.violations() == 0
    }

    fn record(&mut self, check: &'static str, holds: bool, instance: impl FnOnce() -> String) {
        let tally = self
            .checks
            .iter_mut()
            .find(|t| t.name == check)
            .expect("check names are registered");
        tally.checked += 1;
        if !holds {
            tally.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(Violation {
                    check,
                    instance: instance(),
                });
            }
        }
    }
}

/// Runs every representation-level property over the universe and tallies
/// the results.
pub fn verify_theorems(spec: &UniverseSpec) -> VerifySummary {
    let mut summary = VerifySummary {
        semilattices: 0,
        representations: 0,
        checks: CHECKS
            .iter()
            .map(|&name| CheckTally {
                name,
                checked: 0,
                violations: 0,
            })
            .collect(),
        first_violation: None,
    };
    let algebras = spec.algebras();
    for n in spec.sizes() {
        for e in enumerate_semilattices(n, spec.up_to_iso()) {
            let e = Arc::new(e);
            summary.semilattices += 1;
            if e.len() <= ORACLE_LIMIT {
                let holds = interval_reduction_holds(&e);
                summary.record("interval_reduction", holds, || {
                    format!("E of size {}", e.len())
                });
            }
            for b in &algebras {
                for rep in enumerate_representations(&e, b) {
                    summary.representations += 1;
                    verify_one(&rep, &mut summary);
                }
            }
        }
    }
    summary
}

fn verify_one(rep: &Representation, summary: &mut VerifySummary) {
    let report = check(rep);
    let ctj = report.cover_to_join.is_pass();
    let tight = report.tight.is_pass();
    let e = rep.domain();
    let alg = rep.algebra();
    let inst = || describe(rep);

    if tight {
        summary.record("tight_implies_cover_to_join", ctj, inst);
    }

    if ctj {
        let holds = match tighten(rep) {
            Ok(t) => {
                let members = t.codomain().members();
                let unit = t.unit();
                let bounded = (0..e.len()).all(|x| alg.leq(rep.image(x), unit));
                let cover_independent = covers_of(e, e.all())
                    .expect("whole carrier")
                    .all(|z| rep.join_of_images(z) == unit);
                is_ideal(alg, members).is_ok()
                    && rep.range().is_subset(members)
                    && bounded
                    && cover_independent
                    && is_tight(t.representation()).is_pass()
            }
            Err(_) => false,
        };
        summary.record("cover_to_join_tightens", holds, inst);

        let holds = reduced_pairs(rep)
            .into_iter()
            .filter(|i| !i.xs.is_empty())
            .all(|i| {
                covers_of(e, i.interval)
                    .expect("interval of the domain")
                    .all(|z| rep.join_of_images(z) == i.rhs)
            });
        summary.record("nonempty_x_instances", holds, inst);
    }

    if report.nondegenerate.is_pass() {
        summary.record("nondegenerate_equivalence", tight == ctj, inst);
    }

    let restricted = restrict_to_generated_ideal(rep);
    let holds = is_nondegenerate(&restricted).is_pass()
        && (is_tight(&restricted).is_pass()
            == is_cover_to_join_with(&restricted, CoverScan::Minimal).is_pass());
    summary.record("generated_ideal_nondegenerate", holds, inst);

    let holds = reduced_pairs(rep)
        .into_iter()
        .all(|i| i.interval.iter().all(|z| alg.leq(rep.image(z), i.rhs)));
    summary.record("join_bound", holds, inst);

    let view = rep.codomain();
    let holds = (0..e.len()).all(|x| {
        (0..e.len()).all(|y| {
            let (px, py) = (rep.image(x), rep.image(y));
            let lhs = alg.meet(px, view.negation(py).expect("range in view"));
            let rhs = alg
                .relative_complement(alg.meet(px, py), px)
                .expect("meet lies below its argument");
            lhs == rhs
        })
    });
    summary.record("complement_identity", holds, inst);

    if e.len() <= ORACLE_LIMIT {
        let all_covers = ScanOptions {
            covers: CoverScan::All,
            pairs: PairScan::Reduced,
        };
        let holds = is_tight(rep).is_pass() == is_tight_with(rep, all_covers).is_pass()
            && ctj == is_cover_to_join_with(rep, CoverScan::All).is_pass();
        summary.record("minimal_cover_oracle", holds, inst);

        let full_pairs = ScanOptions {
            covers: CoverScan::Minimal,
            pairs: PairScan::Full,
        };
        let holds = is_tight(rep).is_pass() == is_tight_with(rep, full_pairs).is_pass()
            && tight == is_tight_with(rep, ScanOptions::EXHAUSTIVE).is_pass();
        summary.record("reduced_scan_oracle", holds, inst);
    }
}

/// `E^{X,Y} = E^{{⋀X},Y}` for nonempty `X`, and `Y` may be replaced by its
/// maximal elements.
fn interval_reduction_holds(e: &FiniteMeetSemilattice) -> bool {
    let all = e.all();
    all.graded_subsets().all(|xs| {
        all.graded_subsets().all(|ys| {
            let direct = constrained_interval(e, xs, ys).expect("subsets of the carrier");
            let maximal: ElemSet = ys
                .iter()
                .filter(|&y| !ys.iter().any(|w| w != y && e.leq(y, w)))
                .collect();
            let collapsed_x = if xs.is_empty() {
                xs
            } else {
                ElemSet::singleton(e.meet_all(xs, xs.first().expect("nonempty")))
            };
            direct == constrained_interval(e, collapsed_x, ys).expect("subset")
                && direct == constrained_interval(e, xs, maximal).expect("subset")
        })
    })
}
