//! Stable `key: value` report lines.

use tightcover_core::enumerate::VerifySummary;
use tightcover_core::representation::{CoverToJoinWitness, TightWitness};
use tightcover_core::{MeetStructure, Representation, TightnessReport, Verdict};

/// Accumulates report lines; rendered with a trailing newline.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, key: &str, value: impl AsRef<str>) -> &mut Self {
        self.lines.push(format!("{key}: {}", value.as_ref()));
        self
    }

    pub fn comment(&mut self, text: impl AsRef<str>) -> &mut Self {
        self.lines.push(format!("# {}", text.as_ref()));
        self
    }

    pub fn extend(&mut self, other: Report) -> &mut Self {
        self.lines.extend(other.lines);
        self
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn render(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

fn verdict<W>(v: &Verdict<W>) -> &'static str {
    if v.is_pass() {
        "pass"
    } else {
        "fail"
    }
}

pub fn cover_to_join_witness(rep: &Representation, w: &CoverToJoinWitness) -> Report {
    let (e, b) = (rep.domain(), rep.algebra());
    let mut r = Report::new();
    r.line("witness_x", e.name(w.x))
        .line("witness_Z", e.carrier().render_set(w.cover))
        .line("witness_join", b.name(w.join));
    r
}

pub fn tight_witness(rep: &Representation, w: &TightWitness) -> Report {
    let (e, b) = (rep.domain(), rep.algebra());
    let mut r = Report::new();
    r.line("witness_X", e.carrier().render_set(w.xs))
        .line("witness_Y", e.carrier().render_set(w.ys))
        .line("witness_Z", e.carrier().render_set(w.cover))
        .line("witness_lhs", b.name(w.lhs))
        .line("witness_rhs", b.name(w.rhs));
    r
}

/// The three verdicts of `report`, each followed by its witness on failure.
pub fn verdicts(rep: &Representation, report: &TightnessReport) -> Report {
    let mut r = Report::new();
    r.line("cover_to_join", verdict(&report.cover_to_join));
    if let Some(w) = report.cover_to_join.witness() {
        r.extend(cover_to_join_witness(rep, w));
    }
    r.line("tight", verdict(&report.tight));
    if let Some(w) = report.tight.witness() {
        r.extend(tight_witness(rep, w));
    }
    r.line("nondegenerate", verdict(&report.nondegenerate));
    if let Some(&a) = report.nondegenerate.witness() {
        r.line("witness_a", rep.algebra().name(a));
    }
    r
}

/// Codomain view description: its elements and its top.
pub fn view(rep: &Representation) -> Report {
    let view = rep.codomain();
    let mut r = Report::new();
    r.line("view_elements", view.to_string())
        .line("view_top", rep.algebra().name(view.top()));
    r
}

pub fn summary(s: &VerifySummary) -> Report {
    let mut r = Report::new();
    r.line("semilattices", s.semilattices.to_string())
        .line("representations", s.representations.to_string());
    for c in &s.checks {
        r.line(
            &format!("check {}", c.name),
            format!("{} checked, {} violations", c.checked, c.violations),
        );
    }
    r.line("violations", s.violations().to_string());
    if let Some(v) = &s.first_violation {
        r.line("first_violation", format!("{} at {}", v.check, v.instance));
    }
    r
}
