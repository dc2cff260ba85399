//! The line-oriented structure file format.
//!
//! ```text
//! @semilattice E
//! elements: 0 1
//! zero: 0
//! meet:
//! 0 0
//! 0 1
//!
//! @representation R
//! domain: E
//! codomain: B
//! map:
//! 0 -> {}
//! 1 -> {1}
//! ```

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;
use tightcover_core::lattice::{AlgebraInput, SemilatticeInput};
use tightcover_core::{
    FiniteGenBoolAlg, FiniteInverseSemigroup, FiniteMeetSemilattice, ISHomomorphism, IdealView,
    Representation, SemigroupInput,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Semilattice,
    Algebra,
    Representation,
    InverseSemigroup,
    Homomorphism,
}

impl Kind {
    fn parse(tag: &str) -> Option<Kind> {
        Some(match tag {
            "semilattice" => Kind::Semilattice,
            "algebra" => Kind::Algebra,
            "representation" => Kind::Representation,
            "inverse_semigroup" => Kind::InverseSemigroup,
            "homomorphism" => Kind::Homomorphism,
            _ => return None,
        })
    }

    pub fn tag(self) -> &'static str {
        match self {
            Kind::Semilattice => "semilattice",
            Kind::Algebra => "algebra",
            Kind::Representation => "representation",
            Kind::InverseSemigroup => "inverse_semigroup",
            Kind::Homomorphism => "homomorphism",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Kind::Semilattice => &["elements", "zero", "meet"],
            Kind::Algebra => &["elements", "zero", "meet", "join"],
            Kind::InverseSemigroup => &["elements", "zero", "mul"],
            Kind::Representation | Kind::Homomorphism => &["domain", "codomain", "map"],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{}", self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Semilattice(Arc<FiniteMeetSemilattice>),
    Algebra(Arc<FiniteGenBoolAlg>),
    Representation {
        domain: String,
        codomain: String,
        rep: Representation,
    },
    InverseSemigroup(Arc<FiniteInverseSemigroup>),
    Homomorphism {
        domain: String,
        codomain: String,
        hom: ISHomomorphism,
    },
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Semilattice(_) => Kind::Semilattice,
            Structure::Algebra(_) => Kind::Algebra,
            Structure::Representation { .. } => Kind::Representation,
            Structure::InverseSemigroup(_) => Kind::InverseSemigroup,
            Structure::Homomorphism { .. } => Kind::Homomorphism,
        }
    }
}

/// A named structure; `line` is where its header appeared (0 if built in code).
#[derive(Debug, Clone)]
pub struct Block {
    pub name: String,
    pub line: usize,
    pub structure: Structure,
}

impl PartialEq for Block {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.structure == other.structure
    }
}

impl Eq for Block {}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructureFile {
    blocks: Vec<Block>,
}

impl StructureFile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    /// Appends a block. Referenced structures must already be present.
    pub fn push(&mut self, name: impl Into<String>, structure: Structure) {
        let name = name.into();
        assert!(!self.contains(&name), "duplicate structure '{name}'");
        self.blocks.push(Block {
            name,
            line: 0,
            structure,
        });
    }

    /// Blocks separated by blank lines.
    pub fn render(&self) -> String {
        let blocks: Vec<String> = self.blocks.iter().map(Block::render).collect();
        blocks.join("\n")
    }
}

impl Block {
    pub fn render(&self) -> String {
        let mut out = String::new();
        render_block(&mut out, self);
        out
    }
}

fn render_block(out: &mut String, block: &Block) {
    out.push_str(&format!("{} {}\n", block.structure.kind(), block.name));
    match &block.structure {
        Structure::Semilattice(e) => {
            let input = e.to_input();
            render_header(out, &input.elements, &input.zero);
            render_table(out, "meet", &input.meet);
        }
        Structure::Algebra(b) => {
            let input = b.to_input();
            render_header(out, &input.elements, &input.zero);
            render_table(out, "meet", &input.meet);
            render_table(out, "join", &input.join);
        }
        Structure::InverseSemigroup(s) => {
            let input = s.to_input();
            render_header(out, &input.elements, &input.zero);
            render_table(out, "mul", &input.mul);
        }
        Structure::Representation {
            domain,
            codomain,
            rep,
        } => {
            render_map(out, domain, codomain, &rep.named_pairs());
        }
        Structure::Homomorphism {
            domain,
            codomain,
            hom,
        } => {
            render_map(out, domain, codomain, &hom.named_pairs());
        }
    }
}

fn render_header(out: &mut String, elements: &[String], zero: &str) {
    out.push_str(&format!(
        "elements: {}\nzero: {}\n",
        elements.join(" "),
        zero
    ));
}

fn render_table(out: &mut String, key: &str, rows: &[Vec<String>]) {
    let width = rows
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0);
    out.push_str(key);
    out.push_str(":\n");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|s| format!("{s:<width$}")).collect();
        out.push_str(cells.join(" ").trim_end());
        out.push('\n');
    }
}

fn render_map(out: &mut String, domain: &str, codomain: &str, pairs: &[(String, String)]) {
    out.push_str(&format!("domain: {domain}\ncodomain: {codomain}\nmap:\n"));
    for (x, b) in pairs {
        out.push_str(&format!("{x} -> {b}\n"));
    }
}

#[derive(Debug)]
struct RawBlock {
    kind: Kind,
    name: String,
    line: usize,
    scalars: HashMap<&'static str, (usize, Vec<String>)>,
    tables: HashMap<&'static str, Vec<Vec<String>>>,
    map: Option<Vec<(usize, String, String)>>,
}

impl RawBlock {
    fn scalar(&self, key: &str) -> Result<&(usize, Vec<String>), ParseError> {
        self.scalars.get(key).map_or_else(|| self.missing(key), Ok)
    }

    fn single(&self, key: &str) -> Result<(usize, &str), ParseError> {
        let (line, words) = self.scalar(key)?;
        match words.as_slice() {
            [w] => Ok((*line, w.as_str())),
            _ => fail(*line, format!("'{key}:' takes exactly one name")),
        }
    }

    fn table(&self, key: &str) -> Result<Vec<Vec<String>>, ParseError> {
        self.tables
            .get(key)
            .cloned()
            .map_or_else(|| self.missing(key), Ok)
    }

    fn missing<T>(&self, key: &str) -> Result<T, ParseError> {
        fail(
            self.line,
            format!("{} {} is missing '{key}:'", self.kind, self.name),
        )
    }
}

enum Pending {
    None,
    Rows { key: &'static str, n: usize },
    Map,
}

pub fn parse(text: &str) -> Result<StructureFile, ParseError> {
    let mut file = StructureFile::new();
    let mut current: Option<RawBlock> = None;
    let mut pending = Pending::None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(header) = content.strip_prefix('@') {
            finish_rows(&current, &pending, line)?;
            if let Some(block) = current.take() {
                build(&mut file, block)?;
            }
            pending = Pending::None;
            current = Some(parse_header(header, line)?);
            continue;
        }
        let Some(block) = current.as_mut() else {
            return fail(line, "expected a block header such as '@semilattice NAME'");
        };
        match pending {
            Pending::Rows { key, n } => {
                let row: Vec<String> = content.split_whitespace().map(str::to_string).collect();
                if row.len() != n {
                    return fail(line, format!("expected {n} entries"));
                }
                let rows = block.tables.get_mut(key).expect("table opened");
                rows.push(row);
                if rows.len() == n {
                    pending = Pending::None;
                }
                continue;
            }
            Pending::Map if content.contains("->") => {
                let (x, b) = content.split_once("->").expect("checked");
                let (x, b) = (x.trim(), b.trim());
                if x.is_empty()
                    || b.is_empty()
                    || x.contains(char::is_whitespace)
                    || b.contains(char::is_whitespace)
                {
                    return fail(line, "expected 'x -> y'");
                }
                block
                    .map
                    .as_mut()
                    .expect("map opened")
                    .push((line, x.to_string(), b.to_string()));
                continue;
            }
            _ => {}
        }
        pending = parse_key(block, content, line)?;
    }
    finish_rows(&current, &pending, text.lines().count() + 1)?;
    if let Some(block) = current.take() {
        build(&mut file, block)?;
    }
    Ok(file)
}

fn parse_header(header: &str, line: usize) -> Result<RawBlock, ParseError> {
    let mut words = header.split_whitespace();
    let tag = words.next().unwrap_or("");
    let Some(kind) = Kind::parse(tag) else {
        return fail(line, format!("unknown block kind '@{tag}'"));
    };
    let (Some(name), None) = (words.next(), words.next()) else {
        return fail(line, format!("expected '@{tag} NAME'"));
    };
    Ok(RawBlock {
        kind,
        name: name.to_string(),
        line,
        scalars: HashMap::new(),
        tables: HashMap::new(),
        map: None,
    })
}

fn parse_key(block: &mut RawBlock, content: &str, line: usize) -> Result<Pending, ParseError> {
    let Some((key, rest)) = content.split_once(':') else {
        return fail(line, format!("unexpected line '{content}'"));
    };
    let key = key.trim();
    let Some(&key) = block.kind.keys().iter().find(|&&k| k == key) else {
        return fail(line, format!("unexpected key '{key}' in {}", block.kind));
    };
    let words: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    let seen = block.scalars.contains_key(key)
        || block.tables.contains_key(key)
        || (key == "map" && block.map.is_some());
    if seen {
        return fail(line, format!("duplicate key '{key}'"));
    }
    match key {
        "meet" | "join" | "mul" | "map" if !words.is_empty() => fail(
            line,
            format!("'{key}:' must be followed by its rows on separate lines"),
        ),
        "map" => {
            block.map = Some(Vec::new());
            Ok(Pending::Map)
        }
        "meet" | "join" | "mul" => {
            let Some((_, elements)) = block.scalars.get("elements") else {
                return fail(line, format!("'elements:' must precede '{key}:'"));
            };
            let n = elements.len();
            block.tables.insert(key, Vec::new());
            Ok(Pending::Rows { key, n })
        }
        _ => {
            if words.is_empty() {
                return fail(line, format!("'{key}:' needs a value"));
            }
            block.scalars.insert(key, (line, words));
            Ok(Pending::None)
        }
    }
}

fn finish_rows(
    current: &Option<RawBlock>,
    pending: &Pending,
    line: usize,
) -> Result<(), ParseError> {
    if let (Some(block), Pending::Rows { key, n }) = (current, pending) {
        let found = block.tables[key].len();
        return fail(line, format!("'{key}:' needs {n} rows, found {found}"));
    }
    Ok(())
}

fn build(file: &mut StructureFile, block: RawBlock) -> Result<(), ParseError> {
    if file.contains(&block.name) {
        return fail(block.line, format!("duplicate structure '{}'", block.name));
    }
    let at = |e: &dyn fmt::Display| ParseError {
        line: block.line,
        message: format!("{} {}: {e}", block.kind, block.name),
    };
    let structure = match block.kind {
        Kind::Semilattice => {
            let input = SemilatticeInput {
                elements: block.scalar("elements")?.1.clone(),
                zero: block.single("zero")?.1.to_string(),
                meet: block.table("meet")?,
            };
            Structure::Semilattice(Arc::new(
                FiniteMeetSemilattice::validate(&input).map_err(|e| at(&e))?,
            ))
        }
        Kind::Algebra => {
            let input = AlgebraInput {
                elements: block.scalar("elements")?.1.clone(),
                zero: block.single("zero")?.1.to_string(),
                meet: block.table("meet")?,
                join: block.table("join")?,
            };
            Structure::Algebra(Arc::new(
                FiniteGenBoolAlg::validate(&input).map_err(|e| at(&e))?,
            ))
        }
        Kind::InverseSemigroup => {
            let input = SemigroupInput {
                elements: block.scalar("elements")?.1.clone(),
                zero: block.single("zero")?.1.to_string(),
                mul: block.table("mul")?,
            };
            Structure::InverseSemigroup(Arc::new(
                FiniteInverseSemigroup::validate(&input).map_err(|e| at(&e))?,
            ))
        }
        Kind::Representation => {
            let (domain, e) = resolve(file, &block, "domain", Kind::Semilattice)?;
            let (codomain, b) = resolve(file, &block, "codomain", Kind::Algebra)?;
            let (Structure::Semilattice(e), Structure::Algebra(b)) = (e, b) else {
                unreachable!("kinds checked by resolve")
            };
            let pairs = map_pairs(&block)?;
            let rep = Representation::validate_named(
                Arc::clone(e),
                IdealView::full(Arc::clone(b)),
                &pairs,
            )
            .map_err(|e| at(&e))?;
            Structure::Representation {
                domain,
                codomain,
                rep,
            }
        }
        Kind::Homomorphism => {
            let (domain, s) = resolve(file, &block, "domain", Kind::InverseSemigroup)?;
            let (codomain, t) = resolve(file, &block, "codomain", Kind::InverseSemigroup)?;
            let (Structure::InverseSemigroup(s), Structure::InverseSemigroup(t)) = (s, t) else {
                unreachable!("kinds checked by resolve")
            };
            let pairs = map_pairs(&block)?;
            let hom = ISHomomorphism::validate_named(Arc::clone(s), Arc::clone(t), &pairs)
                .map_err(|e| at(&e))?;
            Structure::Homomorphism {
                domain,
                codomain,
                hom,
            }
        }
    };
    file.blocks.push(Block {
        name: block.name,
        line: block.line,
        structure,
    });
    Ok(())
}

fn resolve<'f>(
    file: &'f StructureFile,
    block: &RawBlock,
    key: &str,
    expected: Kind,
) -> Result<(String, &'f Structure), ParseError> {
    let (line, name) = block.single(key)?;
    let Some(target) = file.get(name) else {
        return fail(line, format!("unknown structure '{name}'"));
    };
    if target.structure.kind() != expected {
        return fail(
            line,
            format!(
                "'{name}' is a {}, expected {expected}",
                target.structure.kind()
            ),
        );
    }
    Ok((name.to_string(), &target.structure))
}

fn map_pairs(block: &RawBlock) -> Result<Vec<(String, String)>, ParseError> {
    match &block.map {
        Some(entries) => Ok(entries
            .iter()
            .map(|(_, x, b)| (x.clone(), b.clone()))
            .collect()),
        None => block.missing("map"),
    }
}
