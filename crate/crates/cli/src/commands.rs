use crate::format::{self, Block, Kind, ParseError, Structure, StructureFile};
use crate::report::{self, Report};
use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use thiserror::Error;
use tightcover_core::enumerate::{
    enumerate_semilattices, search_gap, verify_theorems, UniverseSpec, MAX_GENERATED_SIZE,
};
use tightcover_core::representation::restrict_to_generated_ideal;
use tightcover_core::{
    check as check_rep, tighten as tighten_rep, tighten_homomorphism, ISHomomorphism,
    MeetStructure, Representation, SemigroupError, TightenError,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl CliError {
    /// 1 for bad input, 2 for an internal invariant breach.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// What a command printed and the exit code it asks for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum View {
    /// The whole codomain algebra.
    Full,
    /// The ideal generated by the range.
    GeneratedIdeal,
    /// The corner below the join of the range.
    Tightened,
}

impl View {
    fn label(self) -> &'static str {
        match self {
            View::Full => "full",
            View::GeneratedIdeal => "generated-ideal",
            View::Tightened => "tightened",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tightcover",
    version,
    about = "Decide tightness of finite semilattice representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate every structure in a file.
    Validate { path: PathBuf },
    /// Report cover-to-join, tight and non-degenerate verdicts.
    Check {
        path: PathBuf,
        /// Representation or homomorphism to check; optional if the file has only one.
        #[arg(long = "rep")]
        rep: Option<String>,
        #[arg(long, value_enum, default_value = "full")]
        view: View,
    },
    /// Corestrict a cover-to-join map to its corner and write the result.
    Tighten {
        path: PathBuf,
        #[arg(long = "rep")]
        rep: Option<String>,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the meet-semilattices with zero of a given size.
    Enumerate {
        /// Number of elements, zero included.
        #[arg(long)]
        size: usize,
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Find representations that are cover-to-join but not tight.
    SearchGap {
        /// Largest semilattice size in the universe.
        #[arg(long)]
        max_e: usize,
        /// Atom counts of the powerset codomains, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        atoms: Vec<usize>,
        #[arg(long)]
        up_to_iso: bool,
        /// Emit at most this many examples.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check the representation theorems exhaustively over a universe.
    Verify {
        /// Largest semilattice size in the universe.
        #[arg(long)]
        max_e: usize,
        /// Atom counts of the powerset codomains, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        atoms: Vec<usize>,
        #[arg(long)]
        up_to_iso: bool,
    },
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { path } => validate(&read(path)?),
        Command::Check { path, rep, view } => check(&read(path)?, rep.as_deref(), *view),
        Command::Tighten { path, rep, out } => {
            let (summary, file) = tighten(&read(path)?, rep.as_deref())?;
            let text = format!("{}\n{}", commented(&summary), file.render());
            match out {
                Some(out) => {
                    fs::write(out, text).map_err(|e| {
                        CliError::Input(format!("cannot write {}: {e}", out.display()))
                    })?;
                    Ok(Outcome::ok(summary.render()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Enumerate { size, up_to_iso } => enumerate(*size, *up_to_iso),
        Command::SearchGap {
            max_e,
            atoms,
            up_to_iso,
            limit,
        } => gaps(&universe(*max_e, atoms, *up_to_iso)?, *limit),
        Command::Verify {
            max_e,
            atoms,
            up_to_iso,
        } => verify(&universe(*max_e, atoms, *up_to_iso)?),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn universe(max_e: usize, atoms: &[usize], up_to_iso: bool) -> Result<UniverseSpec, CliError> {
    UniverseSpec::new(max_e, atoms.to_vec(), up_to_iso).map_err(|e| CliError::Input(e.to_string()))
}

fn commented(report: &Report) -> String {
    report.lines().iter().map(|l| format!("# {l}\n")).collect()
}

pub fn validate(text: &str) -> Result<Outcome, CliError> {
    let file = format::parse(text)?;
    match file.len() {
        0 => Err(CliError::Input("no structures".into())),
        1 => Ok(Outcome::ok("ok: 1 structure\n".into())),
        n => Ok(Outcome::ok(format!("ok: {n} structures\n"))),
    }
}

enum Target<'f> {
    Rep {
        name: &'f str,
        domain: &'f str,
        codomain: &'f str,
        rep: &'f Representation,
    },
    Hom {
        name: &'f str,
        domain: &'f str,
        codomain: &'f str,
        hom: &'f ISHomomorphism,
    },
}

fn target<'f>(file: &'f StructureFile, name: Option<&str>) -> Result<Target<'f>, CliError> {
    let block: &Block = match name {
        Some(name) => file
            .get(name)
            .ok_or_else(|| CliError::Input(format!("unknown structure '{name}'")))?,
        None => {
            let candidates: Vec<&Block> = file
                .blocks()
                .iter()
                .filter(|b| {
                    matches!(
                        b.structure.kind(),
                        Kind::Representation | Kind::Homomorphism
                    )
                })
                .collect();
            match candidates.as_slice() {
                [only] => only,
                [] => {
                    return Err(CliError::Input(
                        "no @representation or @homomorphism block".into(),
                    ))
                }
                many => {
                    let names: Vec<&str> = many.iter().map(|b| b.name.as_str()).collect();
                    return Err(CliError::Input(format!(
                        "several candidates, choose one with --rep: {}",
                        names.join(", ")
                    )));
                }
            }
        }
    };
    match &block.structure {
        Structure::Representation {
            domain,
            codomain,
            rep,
        } => Ok(Target::Rep {
            name: &block.name,
            domain,
            codomain,
            rep,
        }),
        Structure::Homomorphism {
            domain,
            codomain,
            hom,
        } => Ok(Target::Hom {
            name: &block.name,
            domain,
            codomain,
            hom,
        }),
        other => Err(CliError::Input(format!(
            "'{}' is a {}, expected @representation or @homomorphism",
            block.name,
            other.kind()
        ))),
    }
}

fn tighten_error(rep: &Representation, e: TightenError) -> CliError {
    match e {
        TightenError::NotCoverToJoin(w) => not_cover_to_join(rep, &w),
        other => CliError::Internal(other.to_string()),
    }
}

fn not_cover_to_join(
    rep: &Representation,
    w: &tightcover_core::representation::CoverToJoinWitness,
) -> CliError {
    CliError::Input(format!(
        "not cover-to-join\n{}",
        report::cover_to_join_witness(rep, w).render().trim_end()
    ))
}

fn semigroup_error(hom: &ISHomomorphism, e: SemigroupError) -> CliError {
    match e {
        SemigroupError::NotCoverToJoin(w) => match hom.restriction() {
            Ok(r) => not_cover_to_join(&r.representation, &w),
            Err(e) => CliError::Input(e.to_string()),
        },
        e if e.is_internal() => CliError::Internal(e.to_string()),
        e => CliError::Input(e.to_string()),
    }
}

pub fn check(text: &str, name: Option<&str>, view: View) -> Result<Outcome, CliError> {
    let file = format::parse(text)?;
    let mut out = Report::new();
    let viewed = match target(&file, name)? {
        Target::Rep { name, rep, .. } => {
            out.line("rep", name).line("view", view.label());
            match view {
                View::Full => rep.clone(),
                View::GeneratedIdeal => restrict_to_generated_ideal(rep),
                View::Tightened => {
                    let t = tighten_rep(rep).map_err(|e| tighten_error(rep, e))?;
                    out.line("unit", rep.algebra().name(t.unit()));
                    t.into_representation()
                }
            }
        }
        Target::Hom { name, hom, .. } => {
            out.line("hom", name).line("view", view.label());
            match view {
                View::Tightened => {
                    let corner = tighten_homomorphism(hom).map_err(|e| semigroup_error(hom, e))?;
                    let t = hom.codomain();
                    out.line("unit", t.name(corner.unit))
                        .line("corner", t.carrier().render_set(corner.members));
                    let restricted = corner
                        .homomorphism
                        .restriction()
                        .map_err(|e| semigroup_error(hom, e))?;
                    restricted.representation
                }
                _ => {
                    let r = hom
                        .restriction()
                        .map_err(|e| semigroup_error(hom, e))?
                        .representation;
                    if view == View::GeneratedIdeal {
                        restrict_to_generated_ideal(&r)
                    } else {
                        r
                    }
                }
            }
        }
    };
    let verdicts = check_rep(&viewed);
    out.extend(report::view(&viewed));
    out.extend(report::verdicts(&viewed, &verdicts));
    Ok(Outcome::ok(out.render()))
}

fn fresh_name(file: &StructureFile, base: String) -> String {
    let mut name = base;
    while file.contains(&name) {
        name.push('_');
    }
    name
}

/// Summary report and the structure file holding the corestricted map.
pub fn tighten(text: &str, name: Option<&str>) -> Result<(Report, StructureFile), CliError> {
    let file = format::parse(text)?;
    let mut summary = Report::new();
    let mut out = StructureFile::new();
    match target(&file, name)? {
        Target::Rep {
            name,
            domain,
            codomain,
            rep,
        } => {
            let t = tighten_rep(rep).map_err(|e| tighten_error(rep, e))?;
            let standalone = t.representation().materialize();
            if !check_rep(&standalone).tight.is_pass() {
                return Err(CliError::Internal(
                    "materialized corner is not tight".into(),
                ));
            }
            let alg_name = fresh_name(&file, format!("{codomain}_tight"));
            let rep_name = fresh_name(&file, format!("{name}_tight"));
            summary
                .line("rep", name)
                .line("unit", rep.algebra().name(t.unit()))
                .line("algebra", &alg_name)
                .line("elements", standalone.algebra().len().to_string())
                .line("representation", &rep_name)
                .line("tight", "pass");
            out.push(domain, Structure::Semilattice(Arc::clone(rep.domain())));
            out.push(
                &alg_name,
                Structure::Algebra(Arc::clone(standalone.algebra())),
            );
            out.push(
                rep_name,
                Structure::Representation {
                    domain: domain.to_string(),
                    codomain: alg_name,
                    rep: standalone,
                },
            );
        }
        Target::Hom {
            name,
            domain,
            codomain,
            hom,
        } => {
            let corner = tighten_homomorphism(hom).map_err(|e| semigroup_error(hom, e))?;
            let sg_name = fresh_name(&file, format!("{codomain}_corner"));
            let hom_name = fresh_name(&file, format!("{name}_tight"));
            summary
                .line("hom", name)
                .line("unit", hom.codomain().name(corner.unit))
                .line("semigroup", &sg_name)
                .line("elements", corner.semigroup.len().to_string())
                .line("homomorphism", &hom_name)
                .line("tight", "pass");
            out.push(
                domain,
                Structure::InverseSemigroup(Arc::clone(hom.domain())),
            );
            out.push(
                &sg_name,
                Structure::InverseSemigroup(Arc::clone(&corner.semigroup)),
            );
            out.push(
                hom_name,
                Structure::Homomorphism {
                    domain: domain.to_string(),
                    codomain: sg_name,
                    hom: corner.homomorphism,
                },
            );
        }
    }
    Ok((summary, out))
}

pub fn enumerate(size: usize, up_to_iso: bool) -> Result<Outcome, CliError> {
    if !(1..=MAX_GENERATED_SIZE).contains(&size) {
        return Err(CliError::Input(format!(
            "size must be between 1 and {MAX_GENERATED_SIZE}, got {size}"
        )));
    }
    let mut file = StructureFile::new();
    for (i, e) in enumerate_semilattices(size, up_to_iso).enumerate() {
        file.push(format!("S{}", i + 1), Structure::Semilattice(Arc::new(e)));
    }
    let mut header = Report::new();
    header
        .comment(format!(
            "semilattices with zero on {size} elements{}",
            if up_to_iso {
                ", up to isomorphism"
            } else {
                ", labeled"
            }
        ))
        .comment(format!("count: {}", file.len()));
    Ok(Outcome::ok(format!(
        "{}\n{}",
        header.render(),
        file.render()
    )))
}

fn spec_label(spec: &UniverseSpec) -> String {
    let atoms: Vec<String> = spec.atom_counts().iter().map(usize::to_string).collect();
    format!(
        "max-e {} atoms {}{}",
        spec.max_semilattice_size(),
        atoms.join(","),
        if spec.up_to_iso() { " up-to-iso" } else { "" }
    )
}

/// Every gap as a structure file fragment: new domain and codomain blocks,
/// then the representation, preceded by a comment with the tightness witness.
pub fn gaps(spec: &UniverseSpec, limit: Option<usize>) -> Result<Outcome, CliError> {
    let all: Vec<_> = search_gap(spec).collect();
    let shown = limit.unwrap_or(all.len()).min(all.len());
    let mut header = Report::new();
    header
        .comment(format!("search-gap {}", spec_label(spec)))
        .comment(format!("count: {}", all.len()));
    if shown < all.len() {
        header.comment(format!("shown: {shown}"));
    }
    let mut text = header.render();
    let mut file = StructureFile::new();
    let mut domains: Vec<String> = Vec::new();
    for (i, gap) in all.iter().take(shown).enumerate() {
        let rep = &gap.representation;
        let first_new = file.len();
        let e_name = match file
            .blocks()
            .iter()
            .find(|b| matches!(&b.structure, Structure::Semilattice(e) if e == rep.domain()))
        {
            Some(b) => b.name.clone(),
            None => {
                let name = format!("E{}", domains.len() + 1);
                domains.push(name.clone());
                file.push(&name, Structure::Semilattice(Arc::clone(rep.domain())));
                name
            }
        };
        let b_name = format!("P{}", rep.algebra().len().trailing_zeros());
        if !file.contains(&b_name) {
            file.push(&b_name, Structure::Algebra(Arc::clone(rep.algebra())));
        }
        let g_name = format!("G{}", i + 1);
        file.push(
            &g_name,
            Structure::Representation {
                domain: e_name,
                codomain: b_name,
                rep: rep.clone(),
            },
        );
        let w = gap.report.tight.witness().expect("gaps fail tightness");
        let witness = report::tight_witness(rep, w);
        let inline: Vec<&str> = witness.lines().iter().map(String::as_str).collect();
        text.push_str(&format!("\n# {g_name}: {}\n", inline.join(", ")));
        let fresh: Vec<String> = file.blocks()[first_new..]
            .iter()
            .map(Block::render)
            .collect();
        text.push_str(&fresh.join("\n"));
    }
    Ok(Outcome::ok(text))
}

pub fn verify(spec: &UniverseSpec) -> Result<Outcome, CliError> {
    let summary = verify_theorems(spec);
    let mut out = Report::new();
    out.comment(format!("verify {}", spec_label(spec)));
    out.extend(report::summary(&summary));
    Ok(Outcome {
        stdout: out.render(),
        code: if summary.is_clean() { 0 } else { 1 },
    })
}
