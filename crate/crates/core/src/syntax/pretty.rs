//! Source printer. Output re-parses to the same tree.

use super::ast::*;
use std::fmt::Write;

pub fn unit(u: &CompilationUnit) -> String {
    let mut out = String::new();
    for item in &u.items {
        match item {
            TopItem::Type(t) => type_decl(&mut out, t),
            TopItem::Species(s) => species(&mut out, s),
            TopItem::Collection(c) => {
                let _ = writeln!(out, "collection {} = implement {} ; end ;;", c.name, species_expr(&c.implements));
            }
        }
        out.push('\n');
    }
    out
}

fn type_decl(out: &mut String, t: &UnionTypeDecl) {
    let _ = write!(out, "type {} =", t.name);
    for c in &t.ctors {
        let _ = write!(out, " | {}", c.name);
        if !c.args.is_empty() {
            let args: Vec<String> = c.args.iter().map(ty).collect();
            let _ = write!(out, " ({})", args.join(", "));
        }
    }
    out.push_str(" ;;\n");
}

pub fn species_expr(e: &SpeciesExpr) -> String {
    if e.args.is_empty() {
        e.name.clone()
    } else {
        let args: Vec<String> = e.args.iter().map(formula).collect();
        format!("{} ({})", e.name, args.join(", "))
    }
}

fn species(out: &mut String, s: &SpeciesDecl) {
    let _ = write!(out, "species {}", s.name);
    if !s.params.is_empty() {
        let ps: Vec<String> = s
            .params
            .iter()
            .map(|p| match &p.kind {
                ParamKind::Collection(e) => format!("{} is {}", p.name, species_expr(e)),
                ParamKind::Entity(c) => format!("{} in {}", p.name, c),
            })
            .collect();
        let _ = write!(out, " ({})", ps.join(", "));
    }
    out.push_str(" =\n");
    if !s.inherits.is_empty() {
        let hs: Vec<String> = s.inherits.iter().map(species_expr).collect();
        let _ = writeln!(out, "  inherit {} ;", hs.join(", "));
    }
    for m in &s.methods {
        let _ = writeln!(out, "  {} ;", method(m));
    }
    out.push_str("end ;;\n");
}

pub fn method(m: &MethodDecl) -> String {
    match &m.def {
        MethodDef::Signature { ty: t } => format!("signature {} : {}", m.name, ty(t)),
        MethodDef::Representation { ty: t } => format!("representation = {}", ty(t)),
        MethodDef::Let { rec_flag, params, ret, body } => {
            let mut s = String::from("let ");
            if *rec_flag {
                s.push_str("rec ");
            }
            s.push_str(&m.name);
            if !params.is_empty() {
                let ps: Vec<String> = params
                    .iter()
                    .map(|p| match &p.ty {
                        Some(t) => format!("{} : {}", p.name, ty(t)),
                        None => p.name.clone(),
                    })
                    .collect();
                let _ = write!(s, " ({})", ps.join(", "));
            }
            if let Some(r) = ret {
                let _ = write!(s, " : {}", ty(r));
            }
            let _ = write!(s, " = {}", expr(body));
            s
        }
        MethodDef::Property { statement } => format!("property {} : {}", m.name, formula(statement)),
        MethodDef::Theorem { statement, proof: p } => {
            format!("theorem {} : {}\n  proof = {}", m.name, formula(statement), proof(p, 2))
        }
        MethodDef::ProofOf { proof: p } => format!("proof of {} = {}", m.name, proof(p, 2)),
    }
}

pub fn proof(p: &Proof, indent: usize) -> String {
    match p {
        Proof::Leaf(Leaf::Admitted) => "admitted".into(),
        Proof::Leaf(Leaf::By(facts)) => by(facts),
        Proof::Steps(steps) => {
            let mut s = String::new();
            for st in steps {
                let _ = write!(s, "\n{}{}", " ".repeat(indent + 2), st.label);
                for (vars, t) in &st.assumes {
                    let _ = write!(s, " assume {} : {},", vars.join(" "), ty(t));
                }
                for (h, f) in &st.hypotheses {
                    let _ = write!(s, " hypothesis {} : {},", h, formula(f));
                }
                match &st.goal {
                    Goal::Prove(g) => {
                        let _ = write!(s, " prove {}", formula(g));
                    }
                    Goal::Qed => s.push_str(" qed"),
                }
                let sub = proof(&st.proof, indent + 2);
                if !sub.is_empty() {
                    s.push(' ');
                    s.push_str(&sub);
                }
            }
            s
        }
    }
}

fn by(facts: &[Fact]) -> String {
    if facts.is_empty() {
        return String::new();
    }
    let mut s = String::from("by");
    let mut prev: Option<&'static str> = None;
    for f in facts {
        let kw = f.keyword();
        let item = match f {
            Fact::Definition(r) | Fact::Property(r) => r.to_string(),
            Fact::Step(l) => l.to_string(),
            Fact::Hypothesis(h) => h.clone(),
            Fact::Type(t) => t.clone(),
        };
        if prev == Some(kw) {
            let _ = write!(s, ", {item}");
        } else {
            let _ = write!(s, " {kw} {item}");
        }
        prev = Some(kw);
    }
    s
}

pub fn ty(t: &TypeExpr) -> String {
    match t {
        TypeExpr::Name(n) => n.clone(),
        TypeExpr::SelfT => "Self".into(),
        TypeExpr::Var(v) => format!("'{v}"),
        TypeExpr::Arrow(a, b) => {
            let l = if matches!(**a, TypeExpr::Arrow(..)) { format!("({})", ty(a)) } else { ty(a) };
            format!("{l} -> {}", ty(b))
        }
        TypeExpr::Tuple(ts) => {
            let parts: Vec<String> = ts
                .iter()
                .map(|t| match t {
                    TypeExpr::Arrow(..) | TypeExpr::Tuple(_) => format!("({})", ty(t)),
                    _ => ty(t),
                })
                .collect();
            format!("({})", parts.join(" * "))
        }
    }
}

fn is_atomic(e: &Expr) -> bool {
    matches!(
        e,
        Expr::Var(_)
            | Expr::Bool(_)
            | Expr::Str(_)
            | Expr::Ctor(..)
            | Expr::Qualified { .. }
            | Expr::App(..)
            | Expr::Tuple(_)
    ) || matches!(e, Expr::Int(i) if i.sign() != num_bigint::Sign::Minus)
}

fn operand(e: &Expr) -> String {
    if is_atomic(e) {
        expr(e)
    } else {
        format!("({})", formula(e))
    }
}

fn args(es: &[Expr]) -> String {
    let v: Vec<String> = es.iter().map(formula).collect();
    v.join(", ")
}

/// Expression level (no connective at the top).
pub fn expr(e: &Expr) -> String {
    match e {
        Expr::Var(v) => v.clone(),
        Expr::Int(i) => i.to_string(),
        Expr::Bool(b) => b.to_string(),
        Expr::Str(s) => quote(s),
        Expr::Ctor(c, a) if a.is_empty() => c.clone(),
        Expr::Ctor(c, a) => format!("{c} ({})", args(a)),
        Expr::Qualified { coll, method } => format!("{coll}!{method}"),
        Expr::App(h, a) => format!("{} ({})", expr(h), args(a)),
        Expr::Binary(op, a, b) => format!("{} {} {}", operand(a), op.symbol(), operand(b)),
        Expr::BoolNot(a) => format!("~~ {}", operand(a)),
        Expr::If(c, t, f) => format!("if {} then {} else {}", operand(c), operand(t), operand(f)),
        Expr::Tuple(items) => format!("({})", args(items)),
        Expr::Match(s, arms) => {
            let mut out = format!("match {} with", operand(s));
            for (p, body) in arms {
                let _ = write!(out, " | {} -> {}", pattern(p), operand(body));
            }
            out
        }
        _ => format!("({})", formula(e)),
    }
}

fn connective_operand(e: &Expr) -> String {
    if e.is_formula_node() || matches!(e, Expr::If(..) | Expr::Match(..)) {
        format!("({})", formula(e))
    } else {
        expr(e)
    }
}

pub fn formula(e: &Expr) -> String {
    match e {
        Expr::Quant(q, vars, t, body) => {
            let kw = match q {
                Quant::All => "all",
                Quant::Ex => "ex",
            };
            format!("{kw} {} : {}, {}", vars.join(" "), ty(t), formula(body))
        }
        Expr::Implies(a, b) => {
            let r = if matches!(**b, Expr::Implies(..) | Expr::Quant(..)) { formula(b) } else { connective_operand(b) };
            format!("{} -> {}", connective_operand(a), r)
        }
        Expr::And(a, b) => format!("{} /\\ {}", connective_operand(a), connective_operand(b)),
        Expr::Or(a, b) => format!("{} \\/ {}", connective_operand(a), connective_operand(b)),
        Expr::Not(a) => format!("~ {}", connective_operand(a)),
        _ => expr(e),
    }
}

pub fn pattern(p: &Pattern) -> String {
    match p {
        Pattern::Wild => "_".into(),
        Pattern::Var(v) => v.clone(),
        Pattern::Int(i) => i.to_string(),
        Pattern::Bool(b) => b.to_string(),
        Pattern::Str(s) => quote(s),
        Pattern::Ctor(c, ps) if ps.is_empty() => c.clone(),
        Pattern::Ctor(c, ps) => {
            let v: Vec<String> = ps.iter().map(pattern).collect();
            format!("{c} ({})", v.join(", "))
        }
        Pattern::Tuple(ps) => {
            let v: Vec<String> = ps.iter().map(pattern).collect();
            format!("({})", v.join(", "))
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
