//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};
use tightcover_cli::commands::{self, View};
use tightcover_cli::format::{parse, Structure};
use tightcover_core::enumerate::{
    enumerate_semilattices, powerset_algebra, universe, UniverseSpec,
};
use tightcover_core::lattice::{is_ideal, principal_ideal, IdealView};
use tightcover_core::representation::{
    covers_of, is_tight_with, reduced_pairs, CoverScan, PairScan, ScanOptions,
};
use tightcover_core::semigroup::{
    enumerate_homomorphisms, is_generalized_boolean_inverse_semigroup,
};
use tightcover_core::{
    check, check_homomorphism_tightness, is_tight, tighten, tighten_homomorphism, ElemSet,
    FiniteGenBoolAlg, FiniteInverseSemigroup, FiniteMeetSemilattice, ISHomomorphism, MeetStructure,
    Representation, SemigroupInput,
};

type Outcome = Result<String, String>;

struct Criterion {
    number: usize,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        number: 1,
        title: "counterexample reproduction",
        limit: Some(Duration::from_secs(1)),
        run: counterexample,
    },
    Criterion {
        number: 2,
        title: "tight implies cover-to-join",
        limit: Some(Duration::from_secs(30)),
        run: tight_implies_cover_to_join,
    },
    Criterion {
        number: 3,
        title: "cover-to-join becomes tight in the corner",
        limit: Some(Duration::from_secs(60)),
        run: cover_to_join_tightens,
    },
    Criterion {
        number: 4,
        title: "non-degenerate: tight iff cover-to-join",
        limit: None,
        run: nondegenerate_equivalence,
    },
    Criterion {
        number: 5,
        title: "cover-to-join settles every instance with X nonempty",
        limit: None,
        run: nonempty_x_instances,
    },
    Criterion {
        number: 6,
        title: "oracle equivalence of reduced scans",
        limit: None,
        run: oracle_equivalence,
    },
    Criterion {
        number: 7,
        title: "generalized Boolean algebra axioms",
        limit: None,
        run: axiom_suites,
    },
    Criterion {
        number: 8,
        title: "inverse semigroup layer",
        limit: None,
        run: inverse_semigroups,
    },
    Criterion {
        number: 9,
        title: "determinism and first gap",
        limit: None,
        run: determinism,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!(
                "criterion {} {}: PASS ({detail}; {elapsed:.2?})",
                c.number, c.title
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {} {}: FAIL ({why}; {elapsed:.2?})",
                    c.number, c.title
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        CRITERIA.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

const COUNTEREXAMPLE_REPORT: &str = "\
rep: R
view: full
view_elements: {{}, {1}, {2}, {1,2}}
view_top: {1,2}
cover_to_join: pass
tight: fail
witness_X: {}
witness_Y: {}
witness_Z: {1}
witness_lhs: {1}
witness_rhs: {1,2}
nondegenerate: fail
witness_a: {2}
";

fn counterexample() -> Outcome {
    let text = fixture("counterexample.tc");
    let report = commands::check(&text, Some("R"), View::Full).map_err(|e| e.to_string())?;
    ensure(report.stdout == COUNTEREXAMPLE_REPORT, || {
        format!("report differs:\n{}", report.stdout)
    })?;
    ensure(
        report.stdout == golden("check_counterexample_full.txt"),
        || "golden file differs".into(),
    )?;

    let (_, tightened) = commands::tighten(&text, Some("R")).map_err(|e| e.to_string())?;
    let rendered = tightened.render();
    let after =
        commands::check(&rendered, Some("R_tight"), View::Full).map_err(|e| e.to_string())?;
    ensure(
        after
            .stdout
            .contains("\ncover_to_join: pass\ntight: pass\n"),
        || format!("tightened report:\n{}", after.stdout),
    )?;
    let Some(Structure::Algebra(b)) = tightened.get("B_tight").map(|b| &b.structure) else {
        return Err("tightened file lacks B_tight".into());
    };
    ensure(b.len() == 2 && b.name(b.top()) == "{1}", || {
        "corner is not {{}, {1}}".into()
    })?;
    Ok("witness X={}, Y={}, Z={1}; corner {{}, {1}} tight".into())
}

/// All labeled semilattices with at most three elements into P(1) and P(2).
fn small_universe() -> Vec<Representation> {
    let spec = UniverseSpec::new(3, vec![1, 2], false).expect("valid spec");
    universe(&spec).collect()
}

fn tight_implies_cover_to_join() -> Outcome {
    let reps = small_universe();
    let mut tight = 0;
    for rep in &reps {
        let report = check(rep);
        if report.tight.is_pass() {
            tight += 1;
            ensure(report.cover_to_join.is_pass(), || {
                format!("tight but not cover-to-join: {:?}", rep.named_pairs())
            })?;
        }
    }
    Ok(format!("{} representations, {tight} tight", reps.len()))
}

fn cover_to_join_tightens() -> Outcome {
    let reps = small_universe();
    let mut ctj = 0;
    for rep in &reps {
        if !check(rep).cover_to_join.is_pass() {
            continue;
        }
        ctj += 1;
        let t = tighten(rep).map_err(|e| format!("{e} for {:?}", rep.named_pairs()))?;
        let members = t.codomain().members();
        ensure(is_tight(t.representation()).is_pass(), || {
            format!("not tight after tightening: {:?}", rep.named_pairs())
        })?;
        ensure(is_ideal(rep.algebra(), members).is_ok(), || {
            "corner is not an ideal".into()
        })?;
        ensure(rep.range().is_subset(members), || {
            "corner misses the range".into()
        })?;
    }
    Ok(format!("{ctj} cover-to-join representations tightened"))
}

fn nondegenerate_equivalence() -> Outcome {
    let mut nd = 0;
    for rep in small_universe() {
        let report = check(&rep);
        if report.nondegenerate.is_pass() {
            nd += 1;
            ensure(
                report.tight.is_pass() == report.cover_to_join.is_pass(),
                || format!("verdicts differ on {:?}", rep.named_pairs()),
            )?;
        }
    }
    Ok(format!("{nd} non-degenerate representations"))
}

/// Independent reference: every `(X, Y)` and every cover, evaluated from the
/// raw tables with bitmask loops.
struct Naive<'a> {
    rep: &'a Representation,
    n: usize,
}

impl<'a> Naive<'a> {
    fn new(rep: &'a Representation) -> Self {
        Naive {
            rep,
            n: rep.domain().len(),
        }
    }

    fn members(&self, mask: u64) -> impl Iterator<Item = usize> {
        let n = self.n;
        (0..n).filter(move |i| mask >> i & 1 == 1)
    }

    fn interval(&self, xs: u64, ys: u64) -> u64 {
        let e = self.rep.domain();
        (0..self.n)
            .filter(|&z| {
                self.members(xs).all(|x| e.meet(z, x) == z)
                    && self.members(ys).all(|y| e.meet(z, y) == e.zero())
            })
            .fold(0, |m, z| m | 1 << z)
    }

    fn is_cover(&self, zs: u64, f: u64) -> bool {
        let e = self.rep.domain();
        self.members(f)
            .filter(|&x| x != e.zero())
            .all(|x| self.members(zs).any(|z| e.meet(x, z) != e.zero()))
    }

    fn lhs(&self, zs: u64) -> usize {
        let b = self.rep.algebra();
        self.members(zs)
            .fold(b.zero(), |acc, z| b.join(acc, self.rep.image(z)))
    }

    fn rhs(&self, xs: u64, ys: u64) -> usize {
        let b = self.rep.algebra();
        let top = self.rep.codomain().top();
        let mut acc = top;
        for x in self.members(xs) {
            acc = b.meet(acc, self.rep.image(x));
        }
        for y in self.members(ys) {
            acc = b.meet(
                acc,
                b.relative_complement(self.rep.image(y), top)
                    .expect("image below top"),
            );
        }
        acc
    }

    /// Every instance with `xs` accepted by `which_x`, over every cover.
    fn holds(&self, which_x: impl Fn(u64) -> bool, all_y: bool) -> bool {
        let full = (1u64 << self.n) - 1;
        (0..=full).filter(|&xs| which_x(xs)).all(|xs| {
            (0..=if all_y { full } else { 0 }).all(|ys| {
                let f = self.interval(xs, ys);
                let rhs = self.rhs(xs, ys);
                (0..=full)
                    .filter(|&zs| zs & !f == 0 && self.is_cover(zs, f))
                    .all(|zs| self.lhs(zs) == rhs)
            })
        })
    }

    fn tight(&self) -> bool {
        self.holds(|_| true, true)
    }
}

fn nonempty_x_instances() -> Outcome {
    let mut ctj = 0;
    for rep in small_universe() {
        if !check(&rep).cover_to_join.is_pass() {
            continue;
        }
        ctj += 1;
        let e = rep.domain();
        let reduced = reduced_pairs(&rep)
            .into_iter()
            .filter(|i| !i.xs.is_empty())
            .all(|i| {
                covers_of(e, i.interval)
                    .expect("interval of the domain")
                    .all(|z| rep.join_of_images(z) == i.rhs)
            });
        ensure(reduced, || {
            format!("reduced instance fails for {:?}", rep.named_pairs())
        })?;
        let naive = Naive::new(&rep).holds(|xs| xs != 0, true);
        ensure(naive, || {
            format!("instance with X nonempty fails for {:?}", rep.named_pairs())
        })?;
    }
    Ok(format!(
        "{ctj} cover-to-join representations, all X nonempty instances hold"
    ))
}

fn oracle_equivalence() -> Outcome {
    let spec = UniverseSpec::new(3, vec![2], false).expect("valid spec");
    let mut count = 0;
    let mut discrepancies = Vec::new();
    let all_covers = ScanOptions {
        covers: CoverScan::All,
        pairs: PairScan::Reduced,
    };
    let full_pairs = ScanOptions {
        covers: CoverScan::Minimal,
        pairs: PairScan::Full,
    };
    for rep in universe(&spec) {
        count += 1;
        let reduced = is_tight(&rep).is_pass();
        let verdicts = [
            is_tight_with(&rep, all_covers).is_pass(),
            is_tight_with(&rep, full_pairs).is_pass(),
            is_tight_with(&rep, ScanOptions::EXHAUSTIVE).is_pass(),
            Naive::new(&rep).tight(),
        ];
        if verdicts.iter().any(|&v| v != reduced) {
            discrepancies.push(rep.named_pairs());
        }
        // the reported witness must be a genuine violation
        if let Some(w) = is_tight(&rep).witness() {
            let naive = Naive::new(&rep);
            let (xs, ys, zs) = (w.xs.bits(), w.ys.bits(), w.cover.bits());
            let f = naive.interval(xs, ys);
            let genuine =
                zs & !f == 0 && naive.is_cover(zs, f) && naive.lhs(zs) != naive.rhs(xs, ys);
            if !genuine {
                discrepancies.push(rep.named_pairs());
            }
        }
    }
    ensure(discrepancies.is_empty(), || {
        format!(
            "{} discrepancies, first {:?}",
            discrepancies.len(),
            discrepancies[0]
        )
    })?;
    Ok(format!("{count} representations, 0 discrepancies"))
}

fn algebra_axioms(b: &FiniteGenBoolAlg) -> Result<(), String> {
    let n = b.len();
    let (m, j) = (|x, y| b.meet(x, y), |x, y| b.join(x, y));
    let z = b.zero();
    for x in 0..n {
        ensure(m(x, x) == x && j(x, x) == x, || {
            format!("idempotence at {x}")
        })?;
        ensure(j(x, z) == x, || format!("x ∨ 0 at {x}"))?;
        ensure(m(x, z) == z, || format!("zero absorbing at {x}"))?;
        ensure(m(b.top(), x) == x, || format!("top not a unit at {x}"))?;
        for y in 0..n {
            ensure(m(x, y) == m(y, x) && j(x, y) == j(y, x), || {
                format!("commutativity at ({x},{y})")
            })?;
            ensure(m(x, j(x, y)) == x && j(x, m(x, y)) == x, || {
                format!("absorption at ({x},{y})")
            })?;
            if m(x, y) == x {
                let solutions: Vec<usize> =
                    (0..n).filter(|&c| j(c, x) == y && m(c, x) == z).collect();
                ensure(solutions.len() == 1, || {
                    format!("{} complements for {x} ≤ {y}", solutions.len())
                })?;
                ensure(b.relative_complement(x, y) == Ok(solutions[0]), || {
                    "stored complement differs".into()
                })?;
            }
            for w in 0..n {
                ensure(m(m(x, y), w) == m(x, m(y, w)), || "∧ associativity".into())?;
                ensure(j(j(x, y), w) == j(x, j(y, w)), || "∨ associativity".into())?;
                ensure(m(x, j(y, w)) == j(m(x, y), m(x, w)), || "∧ over ∨".into())?;
                ensure(j(x, m(y, w)) == m(j(x, y), j(x, w)), || "∨ over ∧".into())?;
            }
        }
    }
    Ok(())
}

/// `p ∧ ¬q = p ∖ (p ∧ q)` with `¬` taken inside `view`.
fn complement_identity(view: &IdealView) -> Result<(), String> {
    let b = view.parent();
    for p in view.members().iter() {
        for q in view.members().iter() {
            let lhs = b.meet(p, view.negation(q).map_err(|e| e.to_string())?);
            let rhs = b
                .relative_complement(b.meet(p, q), p)
                .map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || {
                format!("complement identity fails at ({p},{q})")
            })?;
        }
    }
    Ok(())
}

fn axiom_suites() -> Outcome {
    let mut views = 0;
    for k in 0..=4 {
        let b = Arc::new(powerset_algebra(k));
        ensure(b.len() == 1 << k, || {
            format!("P({k}) has {} elements", b.len())
        })?;
        FiniteGenBoolAlg::validate(&b.to_input())
            .map_err(|e| format!("P({k}) revalidation: {e}"))?;
        algebra_axioms(&b).map_err(|e| format!("P({k}): {e}"))?;
        for e in 0..b.len() {
            let view = principal_ideal(&b, e).map_err(|e| e.to_string())?;
            complement_identity(&view).map_err(|m| format!("P({k}) below {}: {m}", b.name(e)))?;
            algebra_axioms(&view.materialize().0).map_err(|m| format!("ideal of P({k}): {m}"))?;
            views += 1;
        }
    }
    Ok(format!("P(0)..P(4) and {views} principal ideals"))
}

fn semigroup(elements: &[&str], rows: &[&[&str]]) -> Arc<FiniteInverseSemigroup> {
    let input = SemigroupInput {
        elements: elements.iter().map(|s| s.to_string()).collect(),
        zero: elements[0].to_string(),
        mul: rows
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect(),
    };
    Arc::new(FiniteInverseSemigroup::validate(&input).expect("test semigroup validates"))
}

fn from_semilattice(e: &FiniteMeetSemilattice) -> Arc<FiniteInverseSemigroup> {
    Arc::new(FiniteInverseSemigroup::from_semilattice(e))
}

fn test_semigroups() -> Vec<(&'static str, Arc<FiniteInverseSemigroup>)> {
    let chain = |n| {
        enumerate_semilattices(n, true)
            .find(|e| (0..n).all(|a| (0..n).all(|b| e.leq(a, b) || e.leq(b, a))))
            .expect("a chain exists")
    };
    let p2 = powerset_algebra(2);
    let p2_reduct = FiniteMeetSemilattice::from_table(
        p2.carrier().clone(),
        p2.zero(),
        p2.meet_table().to_vec(),
    )
    .expect("reduct");
    vec![
        ("I2", Arc::new(FiniteInverseSemigroup::symmetric_inverse(2))),
        (
            "Z2+0",
            semigroup(
                &["0", "1", "g"],
                &[&["0", "0", "0"], &["0", "1", "g"], &["0", "g", "1"]],
            ),
        ),
        ("CHAIN2", from_semilattice(&chain(2))),
        ("CHAIN3", from_semilattice(&chain(3))),
        ("P2", from_semilattice(&p2_reduct)),
        (
            "V",
            semigroup(
                &["0", "a", "b"],
                &[&["0", "0", "0"], &["0", "a", "0"], &["0", "0", "b"]],
            ),
        ),
    ]
}

/// Closure, membership and idempotent checks on a corner.
fn corner_properties(phi: &ISHomomorphism) -> Result<bool, String> {
    let corner = tighten_homomorphism(phi).map_err(|e| e.to_string())?;
    let t = phi.codomain();
    let members = corner.members;
    for x in members.iter() {
        ensure(members.contains(t.inv(x)), || {
            "corner not closed under inverse".into()
        })?;
        for y in members.iter() {
            ensure(members.contains(t.mul(x, y)), || {
                "corner not closed under multiplication".into()
            })?;
        }
    }
    ensure(members.contains(t.zero()), || "corner lacks zero".into())?;
    ensure(phi.map().iter().all(|&y| members.contains(y)), || {
        "corner misses the range".into()
    })?;
    ensure(corner.report.tight.is_pass(), || "corner not tight".into())?;
    let idems = is_generalized_boolean_inverse_semigroup(t).map_err(|e| e.to_string())?;
    let e = idems
        .position(corner.unit)
        .ok_or("unit is not idempotent")?;
    let principal = principal_ideal(&idems.algebra, e).map_err(|e| e.to_string())?;
    let corner_idems: ElemSet = members
        .iter()
        .filter(|&x| t.is_idempotent(x))
        .map(|x| idems.position(x).expect("idempotent"))
        .collect();
    ensure(corner_idems == principal.members(), || {
        "corner idempotents differ from the principal ideal".into()
    })?;
    Ok(true)
}

fn inverse_semigroups() -> Outcome {
    let file = parse(&fixture("i2.tc")).map_err(|e| e.to_string())?;
    let Some(Structure::InverseSemigroup(i2)) = file.get("I2").map(|b| &b.structure) else {
        return Err("fixture lacks I2".into());
    };
    ensure(**i2 == FiniteInverseSemigroup::symmetric_inverse(2), || {
        "fixture I2 differs from the generated one".into()
    })?;
    let idems = is_generalized_boolean_inverse_semigroup(i2).map_err(|e| e.to_string())?;
    let b = &idems.algebra;
    let p2 = powerset_algebra(2);
    let atoms: Vec<usize> = (0..b.len())
        .filter(|&a| a != b.zero() && a != b.top())
        .collect();
    let iso = atoms.len() == 2
        && [false, true].iter().any(|&swap| {
            let image = |a: usize| match a {
                a if a == b.zero() => 0,
                a if a == b.top() => 3,
                a if (a == atoms[0]) != swap => 1,
                _ => 2,
            };
            (0..4).all(|x| (0..4).all(|y| image(b.meet(x, y)) == p2.meet(image(x), image(y))))
        });
    ensure(b.len() == 4 && iso, || {
        "E(I2) is not the four-element Boolean algebra".into()
    })?;

    let Some(Structure::Homomorphism { hom: phi, .. }) = file.get("PHI").map(|b| &b.structure)
    else {
        return Err("fixture lacks PHI".into());
    };
    let report = check_homomorphism_tightness(phi).map_err(|e| e.to_string())?;
    ensure(
        report.cover_to_join.is_pass() && !report.tight.is_pass(),
        || "transported counterexample verdicts".into(),
    )?;
    corner_properties(phi)?;
    let corner = tighten_homomorphism(phi).map_err(|e| e.to_string())?;
    ensure(corner.semigroup.carrier().names() == ["0", "1-"], || {
        "corner is not {0, 1-}".into()
    })?;

    let sgs = test_semigroups();
    let (mut homs, mut ctj, mut corollary) = (0, 0, 0);
    for (_, s) in &sgs {
        for (t_name, t) in &sgs {
            if is_generalized_boolean_inverse_semigroup(t).is_err() {
                continue;
            }
            for phi in enumerate_homomorphisms(s, t) {
                homs += 1;
                let report = check_homomorphism_tightness(&phi).map_err(|e| e.to_string())?;
                if !report.cover_to_join.is_pass() {
                    continue;
                }
                ctj += 1;
                corner_properties(&phi).map_err(|e| format!("into {t_name}: {e}"))?;
                if report.nondegenerate.is_pass() {
                    corollary += 1;
                    ensure(report.tight.is_pass(), || {
                        format!(
                            "non-degenerate cover-to-join map into {t_name} not tight: {:?}",
                            phi.named_pairs()
                        )
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{homs} homomorphisms, {ctj} cover-to-join corners checked, {corollary} non-degenerate all tight"
    ))
}

fn tightcover(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_tightcover"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?} exited with {:?}", out.status.code())
    })?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let path = format!(
        "{}/tests/fixtures/counterexample.tc",
        env!("CARGO_MANIFEST_DIR")
    );
    let runs: &[&[&str]] = &[
        &["check", &path],
        &["check", &path, "--view", "tightened"],
        &["verify", "--max-e", "3", "--atoms", "1,2"],
        &["search-gap", "--max-e", "3", "--atoms", "1,2"],
    ];
    for args in runs {
        let first = tightcover(args)?;
        let second = tightcover(args)?;
        ensure(first == second, || format!("{args:?} differs between runs"))?;
    }

    let text = String::from_utf8(tightcover(&["search-gap", "--max-e", "2", "--atoms", "2"])?)
        .map_err(|e| e.to_string())?;
    let file = parse(&text).map_err(|e| e.to_string())?;
    let first = file
        .blocks()
        .iter()
        .find_map(|b| match &b.structure {
            Structure::Representation { rep, .. } => Some(rep),
            _ => None,
        })
        .ok_or("no gap emitted")?;
    let e = first.domain();
    let b = first.algebra();
    let nonzero = (0..e.len())
        .find(|&x| x != e.zero())
        .ok_or("domain is trivial")?;
    let image = first.image(nonzero);
    let is_atom =
        image != b.zero() && (0..b.len()).all(|c| !b.leq(c, image) || c == b.zero() || c == image);
    ensure(
        e.len() == 2 && b.len() == 4 && is_atom && image != b.top(),
        || format!("first gap is {:?}", first.named_pairs()),
    )?;
    let report = check(first);
    let w = report.tight.witness().ok_or("first gap is tight")?;
    ensure(report.cover_to_join.is_pass(), || {
        "first gap is not cover-to-join".into()
    })?;
    ensure(
        w.xs.is_empty() && w.ys.is_empty() && w.cover == ElemSet::singleton(nonzero),
        || "first gap witness is not X={}, Y={}, Z={1}".into(),
    )?;
    Ok(format!(
        "4 commands byte-stable; first gap sends 1 to the atom {}",
        b.name(image)
    ))
}
