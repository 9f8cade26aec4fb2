//! Proof-assistant flavoured rendering.

use crate::ir::*;
use std::fmt::Write;

pub fn ty(t: &ETy) -> String {
    match t {
        ETy::Int => "basics.int__t".into(),
        ETy::Bool => "basics.bool__t".into(),
        ETy::Str => "basics.string__t".into(),
        ETy::Named(n) => format!("{n}__t"),
        ETy::Var(v) => v.clone(),
        ETy::Set => "Set".into(),
        ETy::Poly(n) => format!("__a{n}"),
        ETy::Arrow(a, b) => {
            let l = ty(a);
            if matches!(**a, ETy::Arrow(..)) {
                format!("({l}) -> {}", ty(b))
            } else {
                format!("{l} -> {}", ty(b))
            }
        }
        ETy::Tuple(ts) => format!("({})", ts.iter().map(ty).collect::<Vec<_>>().join(" * ")),
    }
}

/// `Is_true` argument style: generators double the parentheses around compound atoms.
#[derive(Clone, Copy, PartialEq)]
enum Style {
    Generator,
    Record,
}

pub(crate) fn string_lit(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn pat(p: &Pat) -> String {
    match p {
        Pat::Wild => "_".into(),
        Pat::Var(v) => v.clone(),
        Pat::Int(i) => i.to_string(),
        Pat::Bool(b) => b.to_string(),
        Pat::Str(s) => string_lit(s),
        Pat::Ctor(c, ps) if ps.is_empty() => c.clone(),
        Pat::Ctor(c, ps) => format!("{c} {}", ps.iter().map(pat_atom).collect::<Vec<_>>().join(" ")),
        Pat::Tuple(ps) => format!("({})", ps.iter().map(pat).collect::<Vec<_>>().join(", ")),
    }
}

fn pat_atom(p: &Pat) -> String {
    match p {
        Pat::Ctor(_, ps) if !ps.is_empty() => format!("({})", pat(p)),
        _ => pat(p),
    }
}

fn is_atomic(t: &Term) -> bool {
    match t {
        Term::Var(_) | Term::Bool(_) | Term::Str(_) | Term::Tuple(_) | Term::If(..) | Term::Match(..) => true,
        Term::Int(i) => i.sign() != num_bigint::Sign::Minus,
        Term::Ctor(_, args) => args.is_empty(),
        Term::GenApp(_, args) => args.is_empty(),
        Term::Prim(p, _) => matches!(p, Prim::IntEq | Prim::IntLt | Prim::Plus | Prim::Minus),
        Term::Proj { .. } | Term::Type(_) => true,
        _ => false,
    }
}

fn atom(t: &Term, st: Style) -> String {
    if is_atomic(t) {
        term(t, st)
    } else {
        format!("({})", term(t, st))
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

fn term(t: &Term, st: Style) -> String {
    match t {
        Term::Var(v) => v.clone(),
        Term::Int(i) => i.to_string(),
        Term::Bool(b) => b.to_string(),
        Term::Str(s) => string_lit(s),
        Term::App(h, args) => spine(atom(h, st), args.iter().map(|a| atom(a, st))),
        Term::GenApp(n, args) => spine(n.clone(), args.iter().map(|(_, a)| atom(a, st))),
        Term::Prim(p, args) => {
            let a: Vec<String> = args.iter().map(|a| atom(a, st)).collect();
            match p {
                Prim::IntEq => format!("(basics._equal_0x {} {})", a[0], a[1]),
                Prim::IntLt => format!("(basics._lt_0x {} {})", a[0], a[1]),
                Prim::Plus => format!("(basics._plus_0x {} {})", a[0], a[1]),
                Prim::Minus => format!("(basics._minus_0x {} {})", a[0], a[1]),
                Prim::Eq => format!("basics._equal_ _ {} {}", a[0], a[1]),
                Prim::Fst => format!("basics.fst _ _ {}", a[0]),
                Prim::Snd => format!("basics.snd _ _ {}", a[0]),
                Prim::Not => format!("basics.not {}", a[0]),
                Prim::And => {
                    let side = |x: &Term| match x {
                        Term::Prim(Prim::And, _) => format!("({})", term(x, st)),
                        _ if is_atomic(x)
                            || matches!(x, Term::App(..) | Term::Prim(..) | Term::Ctor(..) | Term::GenApp(..)) =>
                        {
                            term(x, st)
                        }
                        _ => format!("({})", term(x, st)),
                    };
                    format!("{} && {}", side(&args[0]), side(&args[1]))
                }
            }
        }
        Term::Tuple(items) => format!("({})", items.iter().map(|i| term(i, st)).collect::<Vec<_>>().join(", ")),
        Term::Ctor(c, args) => spine(c.clone(), args.iter().map(|a| atom(a, st))),
        Term::If(c, a, b) => format!("(if {} then {} else {})", atom(c, st), term(a, st), term(b, st)),
        Term::Match(s, arms) => {
            let mut out = format!("(match {} with", term(s, st));
            for (p, b) in arms {
                let _ = write!(out, " | {} => {}", pat(p), term(b, st));
            }
            out.push_str(" end)");
            out
        }
        Term::Proj { record, module, field, holes } => {
            let holes: String = (0..*holes).map(|_| " _").collect();
            format!("{}.({module}.{field}{holes})", atom(record, st))
        }
        Term::Type(t) => ty(t),
        f => formula(f, 0, st),
    }
}

/// Levels: 0 top, 1 right of `->`, 2 left of `->`, 3 disjunct, 4 conjunct, 5 negated.
fn formula(t: &Term, lvl: u8, st: Style) -> String {
    let wrap = |s: String, at: u8| if lvl > at { format!("({s})") } else { s };
    match t {
        Term::Forall(vs, t_, b) => wrap(format!("forall {} : {}, {}", vs.join(" "), ty(t_), formula(b, 0, st)), 1),
        Term::Exists(vs, t_, b) => wrap(format!("exists {} : {}, {}", vs.join(" "), ty(t_), formula(b, 0, st)), 1),
        Term::Implies(a, b) => wrap(format!("{} -> {}", formula(a, 2, st), formula(b, 1, st)), 1),
        Term::Or(a, b) => wrap(format!("{} \\/ {}", formula(a, 3, st), formula(b, 4, st)), 3),
        Term::And(a, b) => wrap(format!("{} /\\ {}", formula(a, 4, st), formula(b, 5, st)), 4),
        Term::Not(b) => format!("~{}", formula(b, 5, st)),
        Term::IsTrue(b) => match st {
            Style::Generator => format!("Is_true ({})", atom(b, st)),
            Style::Record => format!("Is_true ({})", term(b, st)),
        },
        other => term(other, st),
    }
}

fn binder(b: &Binder, st: Style) -> String {
    match &b.form {
        BinderForm::Typed(t) => format!("({} : {})", b.name, ty(t)),
        BinderForm::Stmt(s) => format!("({} : {})", b.name, formula(s, 0, st)),
        BinderForm::Bound(t) => format!("({} := {})", b.name, term(t, st)),
        BinderForm::BoundTy(t) => format!("({} := {})", b.name, ty(t)),
        BinderForm::Bare => b.name.clone(),
    }
}

fn binders(bs: &[Binder], st: Style) -> String {
    bs.iter().map(|b| format!(" {}", binder(b, st))).collect()
}

fn item(it: &Item, out: &mut String, ind: &str) {
    let st = Style::Generator;
    match it {
        Item::Inductive { name, ctors } => {
            let _ = writeln!(out, "{ind}Inductive {name}__t : Set :=");
            for (c, args) in ctors {
                let mut t = String::new();
                for a in args {
                    let _ = write!(t, "{} -> ", ty(a));
                }
                let _ = writeln!(out, "{ind}  | {c} : {t}{name}__t");
            }
            let _ = writeln!(out, "{ind}.");
        }
        Item::Definition { name, rec_flag, binders: bs, args, ret, body } => {
            let kw = if *rec_flag { "Fixpoint" } else { "Definition" };
            let args: String = args.iter().map(|(a, t)| format!(" ({a} : {})", ty(t))).collect();
            let _ = writeln!(out, "{ind}{kw} {name}{}{args} : {} :=", binders(bs, st), ty(ret));
            let _ = writeln!(out, "{ind}  {}.", term(body, st));
        }
        Item::Theorem { name, binders: bs, statement, hole, admitted } => {
            if *admitted {
                let _ = writeln!(out, "{ind}Axiom {name}{} :", binders(bs, st));
                let _ = writeln!(out, "{ind}  {}.", formula(statement, 0, st));
            } else {
                let _ = writeln!(out, "{ind}Theorem {name}{} :", binders(bs, st));
                let _ = writeln!(out, "{ind}  {}.", formula(statement, 0, st));
                let _ = writeln!(out, "{ind}apply {hole}.");
            }
        }
        Item::Record { params, fields } => {
            let kind = if params.is_empty() { "" } else { " : Type" };
            let _ = writeln!(out, "{ind}Record me_as_species{}{kind} :=", binders(params, Style::Record));
            let _ = writeln!(out, "{ind}  mk_record {{");
            for (i, f) in fields.iter().enumerate() {
                let t = match &f.ty {
                    FieldTy::Set => "Set".to_string(),
                    FieldTy::Ty(t) => ty(t),
                    FieldTy::Stmt(s) => formula(s, 0, Style::Record),
                };
                let sep = if i + 1 < fields.len() { " ;" } else { "" };
                let _ = writeln!(out, "{ind}  {} : {t}{sep}", f.name);
            }
            let _ = writeln!(out, "{ind}  }}.");
        }
        Item::CollectionCreate { binders: bs, locals, record_args, fields } => {
            let _ = writeln!(out, "{ind}Definition collection_create{} :=", binders(bs, st));
            for l in locals {
                let _ = writeln!(out, "{ind}  let {} := {} in", l.name, term(&l.value, st));
            }
            let args: Vec<String> = record_args
                .iter()
                .map(|(s, a)| match s {
                    Sort::Carrier => format!("({} : Set)", term(a, st)),
                    _ => atom(a, st),
                })
                .chain(fields.iter().map(|(_, f)| f.clone()))
                .collect();
            let _ = writeln!(out, "{ind}  mk_record");
            let _ = writeln!(out, "{ind}    {}.", args.join(" "));
        }
        Item::EffectiveCollection { value } => {
            let _ = writeln!(out, "{ind}Let effective_collection := {}.", term(value, st));
        }
        Item::CarrierDef { ty: t } => {
            let _ = writeln!(out, "{ind}Definition me_as_carrier := {}.", ty(t));
        }
        Item::Projection { name, module, field, holes, .. } => {
            let holes: String = (0..*holes).map(|_| " _").collect();
            let _ = writeln!(out, "{ind}Definition {name} := effective_collection.({module}.{field}{holes}).");
        }
    }
}

pub fn render_block(b: &Block) -> String {
    let mut out = String::new();
    match b.kind {
        BlockKind::Types => b.items.iter().for_each(|it| item(it, &mut out, "")),
        _ => {
            let _ = writeln!(out, "Module {}.", b.name);
            b.items.iter().for_each(|it| item(it, &mut out, "  "));
            let _ = writeln!(out, "End {}.", b.name);
        }
    }
    out
}

pub fn render(p: &Program) -> String {
    let blocks: Vec<String> = crate::par::map(&p.blocks, render_block);
    blocks.join("\n")
}
