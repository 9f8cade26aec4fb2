use crate::syntax::Span;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagKind {
    SyntaxError,
    UnknownName,
    TypeMismatch,
    IllegalReference,
    WrongCarrierLeak,
    CycleInDependencies,
    RepresentationRedefined,
    IncompleteSpecies,
    ArityMismatch,
    InterfaceMismatch,
    RevertedProof,
}

impl DiagKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagKind::SyntaxError => "SyntaxError",
            DiagKind::UnknownName => "UnknownName",
            DiagKind::TypeMismatch => "TypeMismatch",
            DiagKind::IllegalReference => "IllegalReference",
            DiagKind::WrongCarrierLeak => "WrongCarrierLeak",
            DiagKind::CycleInDependencies => "CycleInDependencies",
            DiagKind::RepresentationRedefined => "RepresentationRedefined",
            DiagKind::IncompleteSpecies => "IncompleteSpecies",
            DiagKind::ArityMismatch => "ArityMismatch",
            DiagKind::InterfaceMismatch => "InterfaceMismatch",
            DiagKind::RevertedProof => "RevertedProof",
        }
    }
}

impl fmt::Display for DiagKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diag {
    pub kind: DiagKind,
    pub severity: Severity,
    pub span: Span,
    pub witness: String,
}

impl Diag {
    pub fn error(kind: DiagKind, span: Span, witness: impl Into<String>) -> Self {
        Diag { kind, severity: Severity::Error, span, witness: witness.into() }
    }

    pub fn warning(kind: DiagKind, span: Span, witness: impl Into<String>) -> Self {
        Diag { kind, severity: Severity::Warning, span, witness: witness.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `file:line:col kind witness`, optionally with ANSI colour on the kind.
    pub fn render(&self, files: &[String], color: bool) -> String {
        let file = files.get(self.span.file as usize).map(String::as_str).unwrap_or("<input>");
        let kind = match (color, self.severity) {
            (false, _) => self.kind.to_string(),
            (true, Severity::Error) => format!("\x1b[1;31m{}\x1b[0m", self.kind),
            (true, Severity::Warning) => format!("\x1b[1;33m{}\x1b[0m", self.kind),
        };
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        format!("{file}:{}:{} {sev} {kind} {}", self.span.line, self.span.col, self.witness)
    }
}

pub type DResult<T> = Result<T, Diag>;

/// 0 when no error-severity diagnostic is present, 1 otherwise.
pub fn exit_code(diags: &[Diag]) -> i32 {
    if diags.iter().any(Diag::is_error) {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_plain() {
        let d = Diag::error(DiagKind::WrongCarrierLeak, Span { file: 0, line: 4, col: 3 }, "theo: incr (x) = x + 1");
        assert_eq!(
            d.render(&["wrong.fcl".into()], false),
            "wrong.fcl:4:3 error WrongCarrierLeak theo: incr (x) = x + 1"
        );
    }

    #[test]
    fn warnings_do_not_fail() {
        let w = Diag::warning(DiagKind::RevertedProof, Span::default(), "lowMin");
        assert_eq!(exit_code(std::slice::from_ref(&w)), 0);
        assert_eq!(exit_code(&[w, Diag::error(DiagKind::TypeMismatch, Span::default(), "x")]), 1);
    }
}
