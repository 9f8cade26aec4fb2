//! Checks that every name used by a plan is bound earlier in the emitted program.

use focml::ir::*;
use std::collections::HashSet;

struct Scope<'a> {
    globals: &'a HashSet<String>,
    items: &'a HashSet<String>,
    ctors: &'a HashSet<String>,
    local: Vec<String>,
    types: bool,
}

impl Scope<'_> {
    fn name(&self, v: &str) -> Result<(), String> {
        if self.local.iter().any(|l| l == v)
            || self.items.contains(v)
            || self.globals.contains(v)
            || self.ctors.contains(v)
        {
            Ok(())
        } else {
            Err(format!("unbound `{v}` (locals {:?})", self.local))
        }
    }

    fn ty(&self, t: &ETy) -> Result<(), String> {
        if !self.types {
            return Ok(());
        }
        match t {
            ETy::Var(v) => self.name(v),
            ETy::Arrow(a, b) => self.ty(a).and(self.ty(b)),
            ETy::Tuple(ts) => ts.iter().try_for_each(|t| self.ty(t)),
            _ => Ok(()),
        }
    }

    fn term(&mut self, t: &Term) -> Result<(), String> {
        match t {
            Term::Var(v) => self.name(v),
            Term::GenApp(n, args) => {
                self.name(n)?;
                args.iter().try_for_each(|(_, a)| self.term(a))
            }
            Term::Forall(vs, ty, b) | Term::Exists(vs, ty, b) => {
                self.ty(ty)?;
                let n = self.local.len();
                self.local.extend(vs.iter().cloned());
                self.term(b)?;
                self.local.truncate(n);
                Ok(())
            }
            Term::Match(s, arms) => {
                self.term(s)?;
                for (p, b) in arms {
                    let n = self.local.len();
                    pat_vars(p, &mut self.local);
                    self.term(b)?;
                    self.local.truncate(n);
                }
                Ok(())
            }
            Term::Type(ty) => self.ty(ty),
            Term::Proj { record, module, .. } => {
                self.term(record)?;
                self.name(&format!("{module}.me_as_species"))
            }
            _ => {
                let mut r = Ok(());
                t.for_each_child(&mut |c| {
                    if r.is_ok() {
                        r = self.term(c);
                    }
                });
                r
            }
        }
    }

    fn binders(&mut self, bs: &[Binder]) -> Result<(), String> {
        for b in bs {
            match &b.form {
                BinderForm::Typed(t) | BinderForm::BoundTy(t) => self.ty(t)?,
                BinderForm::Stmt(s) | BinderForm::Bound(s) => self.term(s)?,
                BinderForm::Bare => {}
            }
            self.local.push(b.name.clone());
        }
        Ok(())
    }
}

fn pat_vars(p: &Pat, out: &mut Vec<String>) {
    match p {
        Pat::Var(v) => out.push(v.clone()),
        Pat::Ctor(_, ps) | Pat::Tuple(ps) => ps.iter().for_each(|p| pat_vars(p, out)),
        _ => {}
    }
}

/// With `types` off only term-level names are checked (erased programs are untyped).
pub fn check(p: &Program, types: bool) -> Result<(), String> {
    let mut globals = HashSet::new();
    let mut ctors = HashSet::new();
    for b in &p.blocks {
        let mut items = HashSet::new();
        for it in &b.items {
            let mut s = Scope { globals: &globals, items: &items, ctors: &ctors, local: Vec::new(), types };
            let r = match it {
                Item::Inductive { ctors: cs, .. } => {
                    cs.iter().try_for_each(|(_, args)| args.iter().try_for_each(|a| s.ty(a)))
                }
                Item::Definition { name, rec_flag, binders, args, ret, body } => (|| {
                    s.binders(binders)?;
                    for (a, t) in args {
                        s.ty(t)?;
                        s.local.push(a.clone());
                    }
                    s.ty(ret)?;
                    if *rec_flag {
                        s.local.push(name.clone());
                    }
                    s.term(body)
                })(),
                Item::Theorem { binders, statement, .. } => s.binders(binders).and_then(|_| s.term(statement)),
                Item::Record { params, fields } => (|| {
                    s.binders(params)?;
                    for f in fields {
                        match &f.ty {
                            FieldTy::Set => {}
                            FieldTy::Ty(t) => s.ty(t)?,
                            FieldTy::Stmt(t) => s.term(t)?,
                        }
                        s.local.push(f.name.clone());
                    }
                    Ok(())
                })(),
                Item::CollectionCreate { binders, locals, record_args, fields } => (|| {
                    s.binders(binders)?;
                    for l in locals {
                        s.term(&l.value)?;
                        s.local.push(l.name.clone());
                    }
                    record_args.iter().try_for_each(|(_, a)| s.term(a))?;
                    fields.iter().try_for_each(|(_, f)| s.name(f))
                })(),
                Item::EffectiveCollection { value } => s.term(value),
                Item::CarrierDef { ty } => s.ty(ty),
                Item::Projection { module, .. } => s.name(&format!("{module}.me_as_species")),
            };
            r.map_err(|e| format!("{}.{}: {e}", b.name, it.name().unwrap_or("?")))?;
            if let Item::Inductive { ctors: cs, .. } = it {
                ctors.extend(cs.iter().map(|(c, _)| c.clone()));
            }
            if let Some(n) = it.name() {
                items.insert(n.to_string());
            }
        }
        globals.extend(items.iter().map(|n| format!("{}.{n}", b.name)));
    }
    Ok(())
}
