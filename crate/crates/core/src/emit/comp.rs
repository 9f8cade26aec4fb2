//! Functional-language flavoured rendering of erased plans.

use super::logical::string_lit;
use crate::ir::*;
use std::fmt::Write;

/// `params` spells carrier variables of a record type as type parameters.
fn ty(t: &ETy, params: bool) -> String {
    match t {
        ETy::Int => "int".into(),
        ETy::Bool => "bool".into(),
        ETy::Str => "string".into(),
        ETy::Named(n) => n.clone(),
        ETy::Var(v) if params => format!("'{v}"),
        ETy::Var(v) => v.clone(),
        ETy::Set => "unit".into(),
        ETy::Poly(n) => format!("'a{n}"),
        ETy::Arrow(a, b) => {
            let l = ty(a, params);
            if matches!(**a, ETy::Arrow(..)) {
                format!("({l}) -> {}", ty(b, params))
            } else {
                format!("{l} -> {}", ty(b, params))
            }
        }
        ETy::Tuple(ts) => format!("({})", ts.iter().map(|t| ty(t, params)).collect::<Vec<_>>().join(" * ")),
    }
}

fn ty_vars(t: &ETy, out: &mut Vec<String>) {
    match t {
        ETy::Var(v) if !out.contains(v) => out.push(v.clone()),
        ETy::Arrow(a, b) => {
            ty_vars(a, out);
            ty_vars(b, out);
        }
        ETy::Tuple(ts) => ts.iter().for_each(|t| ty_vars(t, out)),
        _ => {}
    }
}

fn pat(p: &Pat) -> String {
    match p {
        Pat::Wild => "_".into(),
        Pat::Var(v) => v.clone(),
        Pat::Int(i) if i.sign() == num_bigint::Sign::Minus => format!("({i})"),
        Pat::Int(i) => i.to_string(),
        Pat::Bool(b) => b.to_string(),
        Pat::Str(s) => string_lit(s),
        Pat::Ctor(c, ps) if ps.is_empty() => c.clone(),
        Pat::Ctor(c, ps) if ps.len() == 1 => format!("{c} {}", pat_atom(&ps[0])),
        Pat::Ctor(c, ps) => format!("{c} ({})", ps.iter().map(pat).collect::<Vec<_>>().join(", ")),
        Pat::Tuple(ps) => format!("({})", ps.iter().map(pat).collect::<Vec<_>>().join(", ")),
    }
}

fn pat_atom(p: &Pat) -> String {
    match p {
        Pat::Ctor(_, ps) if !ps.is_empty() => format!("({})", pat(p)),
        _ => pat(p),
    }
}

fn atom(t: &Term) -> String {
    let simple = match t {
        Term::Var(_) | Term::Bool(_) | Term::Str(_) | Term::Tuple(_) | Term::If(..) | Term::Match(..) => true,
        Term::Int(i) => i.sign() != num_bigint::Sign::Minus,
        Term::Ctor(_, args) => args.is_empty(),
        Term::Prim(p, _) => !matches!(p, Prim::Not | Prim::Fst | Prim::Snd),
        Term::GenApp(_, args) => args.is_empty(),
        Term::Proj { .. } => true,
        _ => false,
    };
    if simple {
        term(t)
    } else {
        format!("({})", term(t))
    }
}

fn spine(head: String, args: impl Iterator<Item = String>) -> String {
    let mut s = head;
    for a in args {
        s.push(' ');
        s.push_str(&a);
    }
    s
}

fn term(t: &Term) -> String {
    match t {
        Term::Var(v) => v.clone(),
        Term::Int(i) => i.to_string(),
        Term::Bool(b) => b.to_string(),
        Term::Str(s) => string_lit(s),
        Term::App(h, args) => spine(atom(h), args.iter().map(atom)),
        Term::GenApp(n, args) => spine(n.clone(), args.iter().map(|(_, a)| atom(a))),
        Term::Prim(p, args) => {
            let a: Vec<String> = args.iter().map(atom).collect();
            match p {
                Prim::IntEq | Prim::Eq => format!("({} = {})", a[0], a[1]),
                Prim::IntLt => format!("({} < {})", a[0], a[1]),
                Prim::Plus => format!("({} + {})", a[0], a[1]),
                Prim::Minus => format!("({} - {})", a[0], a[1]),
                Prim::And => format!("({} && {})", a[0], a[1]),
                Prim::Not => format!("not {}", a[0]),
                Prim::Fst => format!("fst {}", a[0]),
                Prim::Snd => format!("snd {}", a[0]),
            }
        }
        Term::Tuple(items) => format!("({})", items.iter().map(term).collect::<Vec<_>>().join(", ")),
        Term::Ctor(c, args) if args.is_empty() => c.clone(),
        Term::Ctor(c, args) if args.len() == 1 => format!("{c} {}", atom(&args[0])),
        Term::Ctor(c, args) => format!("{c} ({})", args.iter().map(term).collect::<Vec<_>>().join(", ")),
        Term::If(c, a, b) => format!("(if {} then {} else {})", term(c), term(a), term(b)),
        Term::Match(s, arms) => {
            let mut out = format!("(match {} with", term(s));
            for (p, b) in arms {
                let _ = write!(out, " | {} -> {}", pat(p), term(b));
            }
            out.push(')');
            out
        }
        Term::Proj { record, module, field, .. } => format!("{}.{module}.{field}", atom(record)),
        Term::Type(t) => ty(t, false),
        // Statements never survive erasure.
        other => unreachable!("logical term in computational output: {other:?}"),
    }
}

fn item(it: &Item, out: &mut String, ind: &str) {
    match it {
        Item::Inductive { name, ctors } => {
            let _ = writeln!(out, "{ind}type {name} =");
            for (c, args) in ctors {
                if args.is_empty() {
                    let _ = writeln!(out, "{ind}  | {c}");
                } else {
                    let args: Vec<String> = args.iter().map(|a| ty(a, false)).collect();
                    let _ = writeln!(out, "{ind}  | {c} of {}", args.join(" * "));
                }
            }
        }
        Item::Definition { name, rec_flag, binders, args, body, .. } => {
            let kw = if *rec_flag { "let rec" } else { "let" };
            let params: String = binders
                .iter()
                .filter(|b| !b.is_bound())
                .map(|b| format!(" {}", b.name))
                .chain(args.iter().map(|(a, _)| format!(" {a}")))
                .collect();
            let _ = writeln!(out, "{ind}{kw} {name}{params} =");
            for b in binders {
                if let BinderForm::Bound(t) = &b.form {
                    let _ = writeln!(out, "{ind}  let {} = {} in", b.name, term(t));
                }
            }
            let _ = writeln!(out, "{ind}  {}", term(body));
        }
        Item::Record { fields, .. } => {
            if fields.is_empty() {
                let _ = writeln!(out, "{ind}type me_as_species = unit");
                return;
            }
            let mut vars = Vec::new();
            for f in fields {
                if let FieldTy::Ty(t) = &f.ty {
                    ty_vars(t, &mut vars);
                }
            }
            let params = match vars.len() {
                0 => String::new(),
                _ => format!("({}) ", vars.iter().map(|v| format!("'{v}")).collect::<Vec<_>>().join(", ")),
            };
            let _ = writeln!(out, "{ind}type {params}me_as_species = {{");
            for f in fields {
                if let FieldTy::Ty(t) = &f.ty {
                    let _ = writeln!(out, "{ind}  {} : {} ;", f.name, ty(t, true));
                }
            }
            let _ = writeln!(out, "{ind}}}");
        }
        Item::CollectionCreate { binders, locals, fields, .. } => {
            let params: String = binders.iter().map(|b| format!(" {}", b.name)).collect();
            let _ = writeln!(out, "{ind}let collection_create{params} =");
            for l in locals {
                let _ = writeln!(out, "{ind}  let {} = {} in", l.name, term(&l.value));
            }
            if fields.is_empty() {
                let _ = writeln!(out, "{ind}  ()");
            } else {
                let fs: Vec<String> =
                    fields.iter().map(|(_, f)| format!("rf_{} = {f}", f.trim_start_matches("local_"))).collect();
                let _ = writeln!(out, "{ind}  {{ {} }}", fs.join(" ; "));
            }
        }
        Item::EffectiveCollection { value } => {
            let _ = writeln!(out, "{ind}let effective_collection = {}", term(value));
        }
        Item::CarrierDef { ty: t } => {
            let _ = writeln!(out, "{ind}type me_as_carrier = {}", ty(t, false));
        }
        Item::Projection { name, module, field, .. } => {
            let _ = writeln!(out, "{ind}let {name} = effective_collection.{module}.{field}");
        }
        Item::Theorem { .. } => unreachable!("theorems are erased"),
    }
}

pub fn render_block(b: &Block) -> String {
    let mut out = String::new();
    match b.kind {
        BlockKind::Types => b.items.iter().for_each(|it| item(it, &mut out, "")),
        _ => {
            let _ = writeln!(out, "module {} = struct", b.name);
            b.items.iter().for_each(|it| item(it, &mut out, "  "));
            let _ = writeln!(out, "end");
        }
    }
    out
}

/// Renders `p` after erasure.
pub fn render(p: &Program) -> String {
    let erased = super::erase(p);
    crate::par::map(&erased.blocks, render_block).join("\n")
}
