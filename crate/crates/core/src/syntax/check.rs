//! Checks that need a whole parsed unit but no typing.

use super::ast::*;
use super::ParseError;
use std::collections::{HashMap, HashSet};

pub fn check_unit(unit: &CompilationUnit) -> Result<(), ParseError> {
    let mut seen: HashMap<&str, Span> = HashMap::new();
    let later: HashMap<&str, usize> = unit.items.iter().enumerate().map(|(i, it)| (it.name(), i)).collect();
    for (idx, item) in unit.items.iter().enumerate() {
        if let Some(prev) = seen.insert(item.name(), item.span()) {
            return Err(ParseError::new(item.span(), format!("`{}` is already declared at {prev}", item.name())));
        }
        let mut refs: Vec<&str> = Vec::new();
        match item {
            TopItem::Species(s) => {
                refs.extend(s.inherits.iter().map(|e| e.name.as_str()));
                for p in &s.params {
                    if let ParamKind::Collection(e) = &p.kind {
                        refs.push(&e.name);
                    }
                }
                check_species(s, unit)?;
            }
            TopItem::Collection(c) => refs.push(&c.implements.name),
            TopItem::Type(_) => {}
        }
        for r in refs {
            if later.get(r).is_some_and(|&j| j >= idx) {
                return Err(ParseError::new(item.span(), format!("`{r}` is used before its declaration")));
            }
        }
    }
    Ok(())
}

fn check_species(s: &SpeciesDecl, unit: &CompilationUnit) -> Result<(), ParseError> {
    let mut coll_params: HashSet<&str> = HashSet::new();
    let mut pnames: HashSet<&str> = HashSet::new();
    for p in &s.params {
        if !pnames.insert(&p.name) {
            return Err(ParseError::new(s.span, format!("duplicate parameter `{}`", p.name)));
        }
        match &p.kind {
            ParamKind::Collection(_) => {
                coll_params.insert(&p.name);
            }
            ParamKind::Entity(c) => {
                if !coll_params.contains(c.as_str()) {
                    return Err(ParseError::new(
                        s.span,
                        format!(
                            "entity parameter `{}` must range over an earlier collection parameter, not `{c}`",
                            p.name
                        ),
                    ));
                }
            }
        }
    }

    let mut names: HashMap<&str, MethodKind> = HashMap::new();
    let mut reps = 0;
    for m in &s.methods {
        let kind = m.kind();
        if kind == MethodKind::Representation {
            reps += 1;
            if reps > 1 {
                return Err(ParseError::new(m.span, "representation declared twice in one species"));
            }
            continue;
        }
        if kind == MethodKind::ProofOf {
            continue;
        }
        if names.insert(&m.name, kind).is_some() {
            return Err(ParseError::new(m.span, format!("duplicate method `{}`", m.name)));
        }
    }

    let inherited_logical = inherited_logical_names(s, unit);
    for m in &s.methods {
        match &m.def {
            MethodDef::ProofOf { proof } => {
                let local = matches!(names.get(m.name.as_str()), Some(MethodKind::Property | MethodKind::Theorem));
                if !local && !inherited_logical.contains(m.name.as_str()) {
                    return Err(ParseError::new(m.span, format!("`proof of {}` names no known property", m.name)));
                }
                check_proof(proof, m.span)?;
            }
            MethodDef::Theorem { proof, .. } => check_proof(proof, m.span)?,
            MethodDef::Let { body, .. } => {
                if let Some(f) = body.find_formula_node() {
                    return Err(ParseError::new(
                        m.span,
                        format!("logical connective in the body of `{}`: {}", m.name, super::pretty::expr(f)),
                    ));
                }
            }
            _ => {}
        }
    }
    Ok(())
}

/// Property and theorem names reachable through `inherit` clauses inside this unit.
fn inherited_logical_names<'a>(s: &SpeciesDecl, unit: &'a CompilationUnit) -> HashSet<&'a str> {
    let mut out = HashSet::new();
    let mut stack: Vec<&str> = s.inherits.iter().map(|e| e.name.as_str()).collect();
    let mut visited = HashSet::new();
    while let Some(n) = stack.pop() {
        if !visited.insert(n.to_string()) {
            continue;
        }
        if let Some(sp) = unit.find_species(n) {
            for m in &sp.methods {
                if matches!(m.kind(), MethodKind::Property | MethodKind::Theorem) {
                    out.insert(m.name.as_str());
                }
            }
            stack.extend(sp.inherits.iter().map(|e| e.name.as_str()));
        } else {
            // Declared in another file: trust it; the hierarchy pass reports unknown names.
            out.insert("*");
        }
    }
    if out.contains("*") {
        for m in unit.species().flat_map(|sp| sp.methods.iter()) {
            if matches!(m.kind(), MethodKind::Property | MethodKind::Theorem) {
                out.insert(m.name.as_str());
            }
        }
    }
    out
}

/// Step structure: depth, `qed` placement, step and hypothesis references.
pub fn check_proof(proof: &Proof, span: Span) -> Result<(), ParseError> {
    let mut scope = Scope::default();
    walk(proof, span, &mut scope)
}

#[derive(Default)]
struct Scope {
    /// Labels closed so far, per enclosing level.
    labels: Vec<Vec<StepLabel>>,
    hyps: Vec<Vec<String>>,
}

fn walk(proof: &Proof, span: Span, scope: &mut Scope) -> Result<(), ParseError> {
    match proof {
        Proof::Leaf(Leaf::Admitted) => Ok(()),
        Proof::Leaf(Leaf::By(facts)) => {
            for f in facts {
                match f {
                    Fact::Step(l) => {
                        if !scope.labels.iter().any(|lv| lv.contains(l)) {
                            return Err(ParseError::new(span, format!("`by step {l}` does not name an earlier step")));
                        }
                    }
                    Fact::Hypothesis(h) => {
                        if !scope.hyps.iter().any(|hv| hv.contains(h)) {
                            return Err(ParseError::new(span, format!("hypothesis `{h}` is not in scope")));
                        }
                    }
                    _ => {}
                }
            }
            Ok(())
        }
        Proof::Steps(steps) => {
            scope.labels.push(Vec::new());
            for (i, st) in steps.iter().enumerate() {
                let last = i + 1 == steps.len();
                match (&st.goal, last) {
                    (Goal::Qed, false) => {
                        return Err(ParseError::new(span, format!("`qed` step {} is not last", st.label)))
                    }
                    (Goal::Prove(_), true) => {
                        return Err(ParseError::new(
                            span,
                            format!("step list ends with {} instead of a `qed` step", st.label),
                        ))
                    }
                    _ => {}
                }
                if scope.labels.last().unwrap().contains(&st.label) {
                    return Err(ParseError::new(span, format!("step {} appears twice", st.label)));
                }
                scope.hyps.push(st.hypotheses.iter().map(|(h, _)| h.clone()).collect());
                let r = walk(&st.proof, span, scope);
                scope.hyps.pop();
                r?;
                scope.labels.last_mut().unwrap().push(st.label);
            }
            scope.labels.pop();
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::parse_source;

    fn wrap(body: &str) -> String {
        format!("species S =\n{body}\nend ;;")
    }

    #[test]
    fn duplicate_method() {
        let e = parse_source(&wrap("let a = 1 ; let a = 2 ;")).unwrap_err();
        assert!(e.message.contains("duplicate"));
    }

    #[test]
    fn proof_of_unknown() {
        let e = parse_source(&wrap("proof of nope = admitted ;")).unwrap_err();
        assert!(e.message.contains("no known property"));
    }

    #[test]
    fn proof_of_inherited() {
        parse_source(
            "species A = property p : all x : Self, x = x ; end ;;\n\
             species B = inherit A ; proof of p = admitted ; end ;;",
        )
        .unwrap();
    }

    #[test]
    fn qed_must_close() {
        let e =
            parse_source(&wrap("theorem t : all a : bool, a -> a proof = <1>1 prove a by hypothesis h ;")).unwrap_err();
        assert!(e.message.contains("qed") || e.message.contains("scope"));
        let e = parse_source(&wrap("theorem t : all a : bool, a proof = <1>1 qed <1>2 qed ;")).unwrap_err();
        assert!(e.message.contains("not last"));
    }

    #[test]
    fn step_reference_must_be_earlier() {
        let e = parse_source(&wrap("theorem t : all a : bool, a proof = <1>1 prove a by step <1>2 <1>2 qed ;"))
            .unwrap_err();
        assert!(e.message.contains("earlier step"));
    }

    #[test]
    fn hypothesis_scope() {
        parse_source(&wrap(
            "theorem t : all a b : bool, a -> b proof =\n\
             <1>1 assume a b : bool, hypothesis h : a, prove b\n\
               <2>1 qed by hypothesis h\n\
             <1>2 qed by step <1>1 ;",
        ))
        .unwrap();
        let e = parse_source(&wrap(
            "theorem t : all a : bool, a proof = <1>1 assume a : bool, hypothesis h : a, prove a <1>2 qed by hypothesis h ;",
        ))
        .unwrap_err();
        assert!(e.message.contains("not in scope"));
    }

    #[test]
    fn formula_in_function_body() {
        let e = parse_source(&wrap("let f (x) = (x /\\ x) ;")).unwrap_err();
        assert!(e.message.contains("logical connective"));
    }

    #[test]
    fn entity_parameter_needs_collection() {
        let e = parse_source("species A = end ;;\nspecies S (v in C, C is A) = end ;;").unwrap_err();
        assert!(e.message.contains("earlier collection parameter"));
    }

    #[test]
    fn forward_reference() {
        let e = parse_source("collection C = implement S ;;\nspecies S = end ;;").unwrap_err();
        assert!(e.message.contains("before its declaration"));
    }

    #[test]
    fn two_representations() {
        let e = parse_source(&wrap("representation = int ; representation = bool ;")).unwrap_err();
        assert!(e.message.contains("twice"));
    }
}
