//! Text targets for generator plans, and the erasure linking them.

mod comp;
mod logical;

use crate::ir::*;

pub use comp::render as computational;
pub use logical::render as logical;

/// Drops everything that only matters to the logical target: theorems, proof and
/// carrier abstractions, proof fields and `Is_true` coercions.
pub fn erase(p: &Program) -> Program {
    Program {
        blocks: p
            .blocks
            .iter()
            .map(|b| Block {
                name: b.name.clone(),
                kind: b.kind,
                items: b.items.iter().filter_map(erase_item).collect(),
            })
            .collect(),
    }
}

fn values<T: Clone>(xs: &[(Sort, T)]) -> Vec<(Sort, T)> {
    xs.iter().filter(|(s, _)| *s == Sort::Value).cloned().collect()
}

fn erase_binders(bs: &[Binder]) -> Vec<Binder> {
    bs.iter()
        .filter(|b| b.sort == Sort::Value)
        .map(|b| Binder {
            name: b.name.clone(),
            sort: b.sort,
            form: match &b.form {
                BinderForm::Bound(t) => BinderForm::Bound(erase_term(t)),
                f => f.clone(),
            },
        })
        .collect()
}

pub fn erase_term(t: &Term) -> Term {
    let bx = |t: &Term| Box::new(erase_term(t));
    let all = |ts: &[Term]| ts.iter().map(erase_term).collect::<Vec<_>>();
    match t {
        Term::GenApp(n, args) => Term::GenApp(
            n.clone(),
            args.iter().filter(|(s, _)| *s == Sort::Value).map(|(s, a)| (*s, erase_term(a))).collect(),
        ),
        Term::IsTrue(b) => erase_term(b),
        Term::App(h, args) => Term::App(bx(h), all(args)),
        Term::Prim(p, args) => Term::Prim(*p, all(args)),
        Term::Tuple(args) => Term::Tuple(all(args)),
        Term::Ctor(c, args) => Term::Ctor(c.clone(), all(args)),
        Term::If(a, b, c) => Term::If(bx(a), bx(b), bx(c)),
        Term::Match(s, arms) => Term::Match(bx(s), arms.iter().map(|(p, b)| (p.clone(), erase_term(b))).collect()),
        Term::Forall(v, ty, b) => Term::Forall(v.clone(), ty.clone(), bx(b)),
        Term::Exists(v, ty, b) => Term::Exists(v.clone(), ty.clone(), bx(b)),
        Term::Implies(a, b) => Term::Implies(bx(a), bx(b)),
        Term::And(a, b) => Term::And(bx(a), bx(b)),
        Term::Or(a, b) => Term::Or(bx(a), bx(b)),
        Term::Not(b) => Term::Not(bx(b)),
        Term::Proj { record, module, field, .. } => {
            Term::Proj { record: bx(record), module: module.clone(), field: field.clone(), holes: 0 }
        }
        other => other.clone(),
    }
}

fn erase_item(it: &Item) -> Option<Item> {
    Some(match it {
        Item::Theorem { .. } => return None,
        Item::Projection { sort: Sort::Proof, .. } => return None,
        Item::Projection { name, module, field, sort, .. } => {
            Item::Projection { name: name.clone(), module: module.clone(), field: field.clone(), holes: 0, sort: *sort }
        }
        Item::Definition { name, rec_flag, binders, args, ret, body } => Item::Definition {
            name: name.clone(),
            rec_flag: *rec_flag,
            binders: erase_binders(binders),
            args: args.clone(),
            ret: ret.clone(),
            body: erase_term(body),
        },
        Item::Record { params, fields } => Item::Record {
            params: erase_binders(params),
            fields: fields.iter().filter(|f| f.sort == Sort::Value).cloned().collect(),
        },
        Item::CollectionCreate { binders, locals, record_args, fields } => Item::CollectionCreate {
            binders: erase_binders(binders),
            locals: locals
                .iter()
                .filter(|l| l.sort == Sort::Value)
                .map(|l| Local { name: l.name.clone(), sort: l.sort, value: erase_term(&l.value) })
                .collect(),
            record_args: values(record_args),
            fields: values(fields),
        },
        Item::EffectiveCollection { value } => Item::EffectiveCollection { value: erase_term(value) },
        other => other.clone(),
    })
}

/// True when `p` contains nothing the erasure would remove.
pub fn is_erased(p: &Program) -> bool {
    fn clean(t: &Term) -> bool {
        let mut ok = match t {
            Term::IsTrue(_) => false,
            Term::GenApp(_, args) => args.iter().all(|(s, _)| *s == Sort::Value),
            Term::Proj { holes, .. } => *holes == 0,
            _ => true,
        };
        t.for_each_child(&mut |c| ok &= clean(c));
        ok
    }
    let binders = |bs: &[Binder]| {
        bs.iter().all(|b| b.sort == Sort::Value && !matches!(&b.form, BinderForm::Bound(t) if !clean(t)))
    };
    p.blocks.iter().flat_map(|b| &b.items).all(|it| match it {
        Item::Theorem { .. } => false,
        Item::Projection { sort, holes, .. } => *sort == Sort::Value && *holes == 0,
        Item::Definition { binders: bs, body, .. } => binders(bs) && clean(body),
        Item::Record { params, fields } => binders(params) && fields.iter().all(|f| f.sort == Sort::Value),
        Item::CollectionCreate { binders: bs, locals, record_args, fields } => {
            binders(bs)
                && locals.iter().all(|l| l.sort == Sort::Value && clean(&l.value))
                && record_args.iter().all(|(s, _)| *s == Sort::Value)
                && fields.iter().all(|(s, _)| *s == Sort::Value)
        }
        Item::EffectiveCollection { value } => clean(value),
        _ => true,
    })
}
