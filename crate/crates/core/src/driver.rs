//! Runs the front-end passes over source files.

use crate::deps;
use crate::diag::{Diag, DiagKind};
use crate::env::{Env, SpeciesInfo};
use crate::hierarchy::{self, collection};
use crate::syntax::{self, CompilationUnit, SpeciesDecl, TopItem};
use crate::typing;

/// Result of analysing a whole unit. Analysis stops at the first error.
#[derive(Debug, Clone, Default)]
pub struct Analysis {
    pub unit: CompilationUnit,
    pub env: Env,
    pub diags: Vec<Diag>,
}

impl Analysis {
    pub fn ok(&self) -> bool {
        !self.diags.iter().any(Diag::is_error)
    }
}

pub fn analyze_species(decl: &SpeciesDecl, env: &Env) -> Result<(SpeciesInfo, Vec<Diag>), Diag> {
    let mut nf = hierarchy::normalize(decl, env)?;
    let topo = deps::topo_order(&nf)?;
    typing::infer_types(&mut nf, decl, &topo, env)?;
    let warnings = hierarchy::invalidate_proofs(&mut nf, env);
    let d = deps::analyze(&nf, env)?;
    Ok((SpeciesInfo { nf, deps: d }, warnings))
}

/// Parses every file (in order) and analyses the concatenated unit.
pub fn analyze_sources(sources: &[(String, String)]) -> Analysis {
    let mut unit = CompilationUnit::default();
    for (i, (_, text)) in sources.iter().enumerate() {
        match syntax::parse_file(text, i as u32) {
            Ok(u) => unit.items.extend(u.items),
            Err(e) => {
                return Analysis {
                    diags: vec![Diag::error(DiagKind::SyntaxError, e.span, e.message)],
                    ..Default::default()
                }
            }
        }
    }
    if let Err(e) = syntax::check::check_unit(&unit) {
        return Analysis {
            unit,
            diags: vec![Diag::error(DiagKind::SyntaxError, e.span, e.message)],
            ..Default::default()
        };
    }
    analyze_unit(unit)
}

pub fn analyze_unit(unit: CompilationUnit) -> Analysis {
    let mut env = Env::default();
    let mut diags = Vec::new();
    for item in &unit.items {
        let r = match item {
            TopItem::Type(t) => {
                env.unions.insert(t.name.clone(), t.clone());
                Ok(())
            }
            TopItem::Species(s) => analyze_species(s, &env).map(|(info, w)| {
                diags.extend(w);
                env.species.insert(s.name.clone(), info);
            }),
            TopItem::Collection(c) => collection::make_collection(c, &env).map(|m| {
                env.collections.insert(c.name.clone(), m);
            }),
        };
        if let Err(d) = r {
            diags.push(d);
            break;
        }
    }
    Analysis { unit, env, diags }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Analysis {
        analyze_sources(&[("t.fcl".into(), text.into())])
    }

    #[test]
    fn running_example_is_accepted() {
        let a = run(include_str!("../fixtures/example.fcl"));
        assert!(a.diags.is_empty(), "{:?}", a.diags);
        let species: Vec<&str> = a.env.species.keys().map(String::as_str).collect();
        assert_eq!(species, ["Data", "OrdData", "TheInt", "IsIn"]);
        let colls: Vec<&str> = a.env.collections.keys().map(String::as_str).collect();
        assert_eq!(colls, ["IntC", "In_5_10", "In_1_8"]);
    }
}
