pub mod ast;
pub mod check;
pub mod facts;
pub mod lexer;
pub mod parser;
pub mod pretty;

pub use ast::*;
pub use facts::{collect_leaf_facts, FactSummary};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

impl ParseError {
    pub fn new(span: Span, message: impl Into<String>) -> Self {
        ParseError { span, message: message.into() }
    }
}

/// Parses one file without the unit-level checks.
pub fn parse_file(text: &str, file: u32) -> Result<CompilationUnit, ParseError> {
    parser::Parser::new(text, file)?.parse_unit()
}

/// Parses and checks a self-contained unit.
pub fn parse_source(text: &str) -> Result<CompilationUnit, ParseError> {
    let unit = parse_file(text, 0)?;
    check::check_unit(&unit)?;
    Ok(unit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input() {
        let u = parse_source("").unwrap();
        assert!(u.is_empty());
        assert_eq!(u.type_decls().count() + u.species().count() + u.collections().count(), 0);
    }

    #[test]
    fn data_listing() {
        let u = parse_source("species Data =\n  let id = \"default\" ;\n  signature fromInt : int -> Self ;\nend ;;")
            .unwrap();
        let s = u.find_species("Data").unwrap();
        let kinds: Vec<_> = s.methods.iter().map(|m| (m.kind(), m.name.as_str())).collect();
        assert_eq!(kinds, vec![(MethodKind::Let, "id"), (MethodKind::Signature, "fromInt")]);
    }

    #[test]
    fn syntax_error_has_position() {
        let e = parse_source("species A =\n  let x = ;\nend ;;").unwrap_err();
        assert_eq!((e.span.line, e.span.col), (2, 11));
    }
}
