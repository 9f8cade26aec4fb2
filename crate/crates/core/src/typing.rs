//! ML-style inference over flattened species, with `Self` as the carrier.
//!
//! Function bodies are checked in body mode: when the species has a representation,
//! `Self` may be unified with it, and doing so is recorded. Statements are checked with
//! `Self` rigid.

use crate::diag::{DResult, Diag, DiagKind};
use crate::env::Env;
use crate::hierarchy::{NfKind, NfMethod, NfParamKind, NfSpecies};
use crate::syntax::*;
use crate::types::{from_type_expr, Ty, TypeScope};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq)]
pub struct TypeError {
    pub expected: Ty,
    pub found: Ty,
    pub note: String,
    /// Innermost atomic formula being checked when the failure happened.
    pub atom: Option<Expr>,
}

impl TypeError {
    fn msg(note: impl Into<String>) -> Self {
        TypeError { expected: Ty::Prop, found: Ty::Prop, note: note.into(), atom: None }
    }

    pub fn describe(&self) -> String {
        if self.note.is_empty() {
            format!("expected {}, found {}", self.expected, self.found)
        } else {
            self.note.clone()
        }
    }
}

type TResult<T> = Result<T, TypeError>;

/// Carrier handling for one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `Self` may be unified with the representation.
    Body,
    /// `Self` is a rigid constant.
    Statement,
}

struct Scope<'a> {
    env: &'a Env,
    nf: Option<&'a NfSpecies>,
}

impl TypeScope for Scope<'_> {
    fn is_union(&self, name: &str) -> bool {
        self.env.unions.contains_key(name)
    }

    fn is_carrier(&self, name: &str) -> bool {
        self.nf.is_some_and(|s| s.is_collection_param(name)) || self.env.collections.contains_key(name)
    }
}

pub struct Infer<'a> {
    env: &'a Env,
    nf: Option<&'a NfSpecies>,
    bindings: Vec<Option<Ty>>,
    rep: Option<Ty>,
    pub used_rep: bool,
    pub saw_self: bool,
    locals: Vec<(String, Ty)>,
    /// Monomorphic type of the method being defined, visible to itself when `rec`.
    current: Option<(String, Ty)>,
    atom: Option<Expr>,
}

impl<'a> Infer<'a> {
    pub fn new(env: &'a Env, nf: Option<&'a NfSpecies>, mode: Mode) -> DResult<Self> {
        let mut me = Infer {
            env,
            nf,
            bindings: Vec::new(),
            rep: None,
            used_rep: false,
            saw_self: false,
            locals: Vec::new(),
            current: None,
            atom: None,
        };
        if mode == Mode::Body {
            if let Some(r) = nf.and_then(|s| s.rep.as_ref()) {
                let span = r.span;
                let t = me.convert(&r.ty).map_err(|e| Diag::error(DiagKind::UnknownName, span, e.describe()))?;
                me.saw_self = false;
                me.rep = Some(t);
            }
        }
        Ok(me)
    }

    fn fresh(&mut self) -> Ty {
        self.bindings.push(None);
        Ty::Var(self.bindings.len() as u32 - 1)
    }

    pub fn convert(&mut self, te: &TypeExpr) -> TResult<Ty> {
        let scope = Scope { env: self.env, nf: self.nf };
        let mut vars = HashMap::new();
        let mut fresh_vars = Vec::new();
        let base = self.bindings.len() as u32;
        let mut next = base;
        let t = from_type_expr(te, &scope, &mut vars, &mut || {
            let v = Ty::Var(next);
            fresh_vars.push(next);
            next += 1;
            v
        })
        .map_err(TypeError::msg)?;
        for _ in fresh_vars {
            self.bindings.push(None);
        }
        if t.mentions_self() {
            self.saw_self = true;
        }
        Ok(t)
    }

    /// Copy of a generalized type with fresh variables.
    pub fn instantiate(&mut self, t: &Ty) -> Ty {
        let mut vs = Vec::new();
        t.vars(&mut vs);
        let map: HashMap<u32, Ty> = vs.into_iter().map(|v| (v, self.fresh())).collect();
        if t.mentions_self() {
            self.saw_self = true;
        }
        t.map(&|x| match x {
            Ty::Var(v) => map.get(v).cloned(),
            _ => None,
        })
    }

    fn shallow(&self, t: &Ty) -> Ty {
        let mut t = t.clone();
        while let Ty::Var(v) = t {
            match &self.bindings[v as usize] {
                Some(b) => t = b.clone(),
                None => break,
            }
        }
        t
    }

    pub fn resolve(&self, t: &Ty) -> Ty {
        match self.shallow(t) {
            Ty::Arrow(a, b) => Ty::arrow(self.resolve(&a), self.resolve(&b)),
            Ty::Tuple(ts) => Ty::Tuple(ts.iter().map(|t| self.resolve(t)).collect()),
            t => t,
        }
    }

    fn occurs(&self, v: u32, t: &Ty) -> bool {
        match self.shallow(t) {
            Ty::Var(w) => v == w,
            Ty::Arrow(a, b) => self.occurs(v, &a) || self.occurs(v, &b),
            Ty::Tuple(ts) => ts.iter().any(|t| self.occurs(v, t)),
            _ => false,
        }
    }

    pub fn unify(&mut self, expected: &Ty, found: &Ty) -> TResult<()> {
        let a = self.shallow(expected);
        let b = self.shallow(found);
        let fail = |me: &Self| TypeError {
            expected: me.resolve(expected),
            found: me.resolve(found),
            note: String::new(),
            atom: None,
        };
        match (&a, &b) {
            (Ty::Var(x), Ty::Var(y)) if x == y => Ok(()),
            (Ty::Var(x), t) | (t, Ty::Var(x)) => {
                if self.occurs(*x, t) {
                    return Err(fail(self));
                }
                self.bindings[*x as usize] = Some(t.clone());
                Ok(())
            }
            (Ty::SelfTy, Ty::SelfTy) => Ok(()),
            (Ty::SelfTy, t) | (t, Ty::SelfTy) => match self.rep.clone() {
                Some(r) => {
                    self.used_rep = true;
                    self.unify(&r, t).map_err(|_| fail(self))
                }
                None => Err(fail(self)),
            },
            (Ty::Arrow(a1, b1), Ty::Arrow(a2, b2)) => {
                self.unify(a1, a2).map_err(|_| fail(self))?;
                self.unify(b1, b2).map_err(|_| fail(self))
            }
            (Ty::Tuple(xs), Ty::Tuple(ys)) if xs.len() == ys.len() => {
                for (x, y) in xs.iter().zip(ys) {
                    self.unify(x, y).map_err(|_| fail(self))?;
                }
                Ok(())
            }
            (x, y) if x == y => Ok(()),
            _ => Err(fail(self)),
        }
    }

    fn lookup_local(&self, name: &str) -> Option<Ty> {
        self.locals.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t.clone())
    }

    fn method_type(&mut self, name: &str) -> Option<TResult<Ty>> {
        if let Some((n, t)) = &self.current {
            if n == name {
                return Some(Ok(t.clone()));
            }
        }
        let m = self.nf?.methods.get(name)?;
        if m.kind.is_logical() {
            return Some(Err(TypeError::msg(format!("property `{name}` used inside an expression"))));
        }
        let t = m.ty.clone()?;
        Some(Ok(self.instantiate(&t)))
    }

    fn qualified_type(&mut self, coll: &str, method: &str) -> TResult<Ty> {
        let iface =
            self.env.iface_of(self.nf, coll).ok_or_else(|| TypeError::msg(format!("`{coll}` is not a collection")))?;
        let e = iface.get(method).ok_or_else(|| TypeError::msg(format!("`{coll}` has no method `{method}`")))?;
        if e.logical {
            return Err(TypeError::msg(format!("property `{coll}!{method}` used inside an expression")));
        }
        let t = e.ty.clone();
        Ok(self.instantiate(&t))
    }

    fn ctor_type(&mut self, name: &str) -> TResult<(Vec<Ty>, Ty)> {
        let (u, i) = self.env.ctor(name).ok_or_else(|| TypeError::msg(format!("unknown constructor `{name}`")))?;
        let result = Ty::Named(u.name.clone());
        let arg_exprs = u.ctors[i].args.clone();
        let mut args = Vec::new();
        for a in &arg_exprs {
            args.push(self.convert(a)?);
        }
        Ok((args, result))
    }

    pub fn expr(&mut self, e: &Expr) -> TResult<Ty> {
        match e {
            Expr::Int(_) => Ok(Ty::Int),
            Expr::Bool(_) => Ok(Ty::Bool),
            Expr::Str(_) => Ok(Ty::Str),
            Expr::Var(v) => {
                if let Some(t) = self.lookup_local(v) {
                    return Ok(t);
                }
                if let Some(t) = self.method_type(v) {
                    return t;
                }
                if let Some(c) = self.nf.and_then(|s| s.entity_carrier(v)) {
                    return Ok(Ty::Carrier(c.to_string()));
                }
                match v.as_str() {
                    "fst" | "snd" => {
                        let a = self.fresh();
                        let b = self.fresh();
                        let r = if v == "fst" { a.clone() } else { b.clone() };
                        Ok(Ty::arrow(Ty::Tuple(vec![a, b]), r))
                    }
                    _ => Err(TypeError::msg(format!("unknown name `{v}`"))),
                }
            }
            Expr::Qualified { coll, method } => self.qualified_type(coll, method),
            Expr::Ctor(c, args) => {
                let (params, result) = self.ctor_type(c)?;
                if params.len() != args.len() {
                    return Err(TypeError::msg(format!(
                        "constructor `{c}` expects {} argument(s), got {}",
                        params.len(),
                        args.len()
                    )));
                }
                for (p, a) in params.iter().zip(args) {
                    let t = self.expr(a)?;
                    self.unify(p, &t)?;
                }
                Ok(result)
            }
            Expr::App(h, args) => {
                let mut f = self.expr(h)?;
                for a in args {
                    let t = self.expr(a)?;
                    let r = self.fresh();
                    self.unify(&f, &Ty::arrow(t, r.clone()))?;
                    f = r;
                }
                Ok(f)
            }
            Expr::Binary(op, a, b) => {
                let ta = self.expr(a)?;
                let tb = self.expr(b)?;
                let (arg, res) = match op {
                    BinOp::Eq => {
                        self.unify(&ta, &tb)?;
                        return Ok(Ty::Bool);
                    }
                    BinOp::IntEq | BinOp::IntLt => (Ty::Int, Ty::Bool),
                    BinOp::Add | BinOp::Sub => (Ty::Int, Ty::Int),
                    BinOp::And => (Ty::Bool, Ty::Bool),
                };
                self.unify(&arg, &ta)?;
                self.unify(&arg, &tb)?;
                Ok(res)
            }
            Expr::BoolNot(a) => {
                let t = self.expr(a)?;
                self.unify(&Ty::Bool, &t)?;
                Ok(Ty::Bool)
            }
            Expr::If(c, t, f) => {
                let tc = self.expr(c)?;
                self.unify(&Ty::Bool, &tc)?;
                let tt = self.expr(t)?;
                let tf = self.expr(f)?;
                self.unify(&tt, &tf)?;
                Ok(tt)
            }
            Expr::Tuple(items) => {
                let mut ts = Vec::new();
                for i in items {
                    ts.push(self.expr(i)?);
                }
                Ok(Ty::Tuple(ts))
            }
            Expr::Match(s, arms) => {
                let ts = self.expr(s)?;
                let result = self.fresh();
                for (p, body) in arms {
                    let n = self.locals.len();
                    self.pattern(p, &ts)?;
                    let tb = self.expr(body)?;
                    self.locals.truncate(n);
                    self.unify(&result, &tb)?;
                }
                Ok(result)
            }
            _ => Err(TypeError::msg(format!("logical connective in expression: {}", pretty::formula(e)))),
        }
    }

    fn pattern(&mut self, p: &Pattern, t: &Ty) -> TResult<()> {
        match p {
            Pattern::Wild => Ok(()),
            Pattern::Var(v) => {
                self.locals.push((v.clone(), t.clone()));
                Ok(())
            }
            Pattern::Int(_) => self.unify(t, &Ty::Int),
            Pattern::Bool(_) => self.unify(t, &Ty::Bool),
            Pattern::Str(_) => self.unify(t, &Ty::Str),
            Pattern::Tuple(ps) => {
                let vs: Vec<Ty> = ps.iter().map(|_| self.fresh()).collect();
                self.unify(t, &Ty::Tuple(vs.clone()))?;
                for (p, v) in ps.iter().zip(&vs) {
                    self.pattern(p, v)?;
                }
                Ok(())
            }
            Pattern::Ctor(c, ps) => {
                let (params, result) = self.ctor_type(c)?;
                if params.len() != ps.len() {
                    return Err(TypeError::msg(format!("constructor `{c}` arity mismatch in pattern")));
                }
                self.unify(t, &result)?;
                for (p, v) in ps.iter().zip(&params) {
                    self.pattern(p, v)?;
                }
                Ok(())
            }
        }
    }

    /// Checks a statement; boolean atoms must have type `bool`.
    pub fn formula(&mut self, e: &Expr) -> TResult<()> {
        match e {
            Expr::Quant(_, vars, te, body) => {
                let t = self.convert(te)?;
                let n = self.locals.len();
                for v in vars {
                    self.locals.push((v.clone(), t.clone()));
                }
                let r = self.formula(body);
                self.locals.truncate(n);
                r
            }
            Expr::Implies(a, b) | Expr::And(a, b) | Expr::Or(a, b) => {
                self.formula(a)?;
                self.formula(b)
            }
            Expr::Not(a) => self.formula(a),
            atom => {
                let r = self.expr(atom).and_then(|t| self.unify(&Ty::Bool, &t));
                r.map_err(|mut err| {
                    if err.atom.is_none() {
                        err.atom = Some(atom.clone());
                    }
                    err
                })
            }
        }
    }

    fn bind_assumes(&mut self, assumes: &[(Vec<String>, TypeExpr)]) -> TResult<()> {
        for (vars, te) in assumes {
            let t = self.convert(te)?;
            for v in vars {
                self.locals.push((v.clone(), t.clone()));
            }
        }
        Ok(())
    }

    fn reset(&mut self) {
        self.atom = None;
        self.locals.clear();
    }
}

fn diag(kind: DiagKind, span: Span, who: &str, err: &TypeError) -> Diag {
    let at = err.atom.as_ref().map(|a| format!(" in `{}`", pretty::expr(a))).unwrap_or_default();
    Diag::error(kind, span, format!("{who}: {}{at}", err.describe()))
}

/// Generalizes every remaining variable and renumbers from 0.
fn generalize(inf: &Infer, t: &Ty) -> Ty {
    inf.resolve(t).normalized()
}

/// Outcome of typing one method.
#[derive(Debug, Clone, PartialEq)]
pub struct Typed {
    pub ty: Ty,
    pub used_rep: bool,
    pub saw_self: bool,
}

fn type_let(nf: &NfSpecies, m: &NfMethod, env: &Env) -> DResult<Typed> {
    let mut inf = Infer::new(env, Some(nf), Mode::Body)?;
    let who = format!("{}!{}", nf.name, m.name);
    let err = |e: TypeError| diag(DiagKind::TypeMismatch, m.span, &who, &e);
    let body = m.body.as_ref().expect("let has a body");
    let mut params = Vec::new();
    for p in &m.params {
        let t = match &p.ty {
            Some(te) => inf.convert(te).map_err(err)?,
            None => inf.fresh(),
        };
        params.push(t);
    }
    let ret = match &m.ret {
        Some(te) => inf.convert(te).map_err(err)?,
        None => inf.fresh(),
    };
    let whole = if params.is_empty() { ret.clone() } else { Ty::curried(params.clone(), ret.clone()) };
    for known in [m.prior_ty.as_ref(), None].into_iter().flatten() {
        let k = inf.instantiate(known);
        inf.unify(&k, &whole).map_err(err)?;
    }
    if let Some(d) = &m.declared {
        let k = inf.convert(d).map_err(err)?;
        inf.unify(&k, &whole).map_err(err)?;
    }
    if matches!(m.kind, NfKind::Let { rec_flag: true }) {
        inf.current = Some((m.name.clone(), whole.clone()));
    }
    for (p, t) in m.params.iter().zip(&params) {
        inf.locals.push((p.name.clone(), t.clone()));
    }
    let tb = inf.expr(body).map_err(err)?;
    inf.unify(&ret, &tb).map_err(err)?;
    let ty = generalize(&inf, &whole);
    for known in [&m.prior_ty].into_iter().flatten() {
        if known.normalized() != ty {
            return Err(Diag::error(
                DiagKind::TypeMismatch,
                m.span,
                format!("{who}: redefinition changes the type from {known} to {ty}"),
            ));
        }
    }
    if let Some(d) = &m.declared {
        check_declared(&mut inf, d, &ty).map_err(err)?;
    }
    Ok(Typed { saw_self: inf.saw_self || ty.mentions_self(), ty, used_rep: inf.used_rep })
}

/// The inferred type must be exactly the declared one, not an instance of it.
fn check_declared(inf: &mut Infer, declared: &TypeExpr, ty: &Ty) -> TResult<()> {
    let d = inf.convert(declared)?;
    let d = generalize(inf, &d);
    if d != *ty {
        return Err(TypeError { expected: d, found: ty.clone(), note: String::new(), atom: None });
    }
    Ok(())
}

/// Statement check with `Self` rigid. A violation carries the offending atomic formula.
pub fn check_statement_carrier_abstraction(stmt: &Expr, nf: &NfSpecies, env: &Env) -> Result<(), TypeError> {
    let mut inf = Infer::new(env, Some(nf), Mode::Statement).map_err(|d| TypeError::msg(d.witness))?;
    inf.formula(stmt)
}

fn type_statement(nf: &NfSpecies, m: &NfMethod, env: &Env) -> DResult<bool> {
    let who = format!("{}!{}", nf.name, m.name);
    let stmt = m.statement.as_ref().expect("logical method has a statement");
    let mut rigid = Infer::new(env, Some(nf), Mode::Statement)?;
    match rigid.formula(stmt) {
        Ok(()) => Ok(rigid.saw_self),
        Err(e) => {
            let mut body = Infer::new(env, Some(nf), Mode::Body)?;
            if body.formula(stmt).is_ok() && body.used_rep {
                let atom = e.atom.as_ref().map(pretty::expr).unwrap_or_else(|| pretty::formula(stmt));
                Err(Diag::error(DiagKind::WrongCarrierLeak, m.span, format!("{}: {atom}", m.name)))
            } else {
                Err(diag(DiagKind::TypeMismatch, m.span, &who, &e))
            }
        }
    }
}

/// Types hypotheses and goals; returns whether the representation had to be used.
fn type_proof(nf: &NfSpecies, m: &NfMethod, env: &Env) -> DResult<bool> {
    let who = format!("{}!{}", nf.name, m.name);
    let mut used = false;
    let Some(p) = &m.proof else { return Ok(false) };
    check_facts(nf, p, env, m.span, &who)?;
    fn walk(
        p: &Proof,
        ctx: &mut Vec<(Vec<String>, TypeExpr)>,
        f: &mut dyn FnMut(&[(Vec<String>, TypeExpr)], &Expr) -> DResult<()>,
    ) -> DResult<()> {
        let Proof::Steps(steps) = p else { return Ok(()) };
        for st in steps {
            let n = ctx.len();
            ctx.extend(st.assumes.iter().cloned());
            for (_, h) in &st.hypotheses {
                f(ctx, h)?;
            }
            if let Goal::Prove(g) = &st.goal {
                f(ctx, g)?;
            }
            walk(&st.proof, ctx, f)?;
            ctx.truncate(n);
        }
        Ok(())
    }
    walk(p, &mut Vec::new(), &mut |assumes, formula| {
        let mut rigid = Infer::new(env, Some(nf), Mode::Statement)?;
        let ok = rigid.bind_assumes(assumes).and_then(|_| rigid.formula(formula));
        if ok.is_ok() {
            return Ok(());
        }
        let mut body = Infer::new(env, Some(nf), Mode::Body)?;
        body.bind_assumes(assumes)
            .and_then(|_| body.formula(formula))
            .map_err(|e| diag(DiagKind::TypeMismatch, m.span, &who, &e))?;
        used |= body.used_rep;
        body.reset();
        Ok(())
    })?;
    Ok(used)
}

fn check_facts(nf: &NfSpecies, p: &Proof, env: &Env, span: Span, who: &str) -> DResult<()> {
    let facts = collect_leaf_facts(p);
    for d in &facts.defs {
        if d.coll.is_some() || !nf.methods.contains_key(&d.name) {
            return Err(Diag::error(DiagKind::UnknownName, span, format!("{who}: cannot unfold `{d}`")));
        }
    }
    for r in &facts.props {
        if let Some(c) = &r.coll {
            let ok = env.iface_of(Some(nf), c).is_some_and(|i| i.contains_key(&r.name));
            if !ok {
                return Err(Diag::error(DiagKind::UnknownName, span, format!("{who}: unknown property `{r}`")));
            }
        }
    }
    for t in &facts.types {
        if !env.unions.contains_key(t) {
            return Err(Diag::error(DiagKind::UnknownName, span, format!("{who}: unknown type `{t}`")));
        }
    }
    Ok(())
}

/// Checks an entity argument written inside `nf` (or globally) against a carrier.
pub fn check_entity_arg(e: &Expr, want: &Ty, nf: Option<&NfSpecies>, env: &Env, span: Span) -> DResult<()> {
    let mut inf = Infer::new(env, nf, Mode::Statement)?;
    let t = inf.expr(e).map_err(|err| diag(DiagKind::TypeMismatch, span, &pretty::expr(e), &err))?;
    inf.unify(want, &t).map_err(|err| diag(DiagKind::TypeMismatch, span, &pretty::expr(e), &err))
}

/// Type of an expression over declared collections only.
pub fn type_closed_expr(e: &Expr, env: &Env, span: Span) -> DResult<Ty> {
    let mut inf = Infer::new(env, None, Mode::Statement)?;
    let t = inf.expr(e).map_err(|err| diag(DiagKind::TypeMismatch, span, &pretty::expr(e), &err))?;
    Ok(inf.resolve(&t))
}

/// Infers every method whose current version is defined in `nf`, following `order`
/// (callees first). Inherited methods keep the types computed at their origin.
pub fn infer_types(nf: &mut NfSpecies, decl: &SpeciesDecl, order: &[String], env: &Env) -> DResult<()> {
    for inh in &decl.inherits {
        let Some(parent) = env.species_nf(&inh.name) else { continue };
        for (f, a) in parent.params.iter().zip(&inh.args) {
            let NfParamKind::Entity { carrier } = &f.kind else { continue };
            let idx = parent.params.iter().position(|p| &p.name == carrier).expect("carrier is a parameter");
            let coll = match &inh.args[idx] {
                Expr::Ctor(c, _) | Expr::Var(c) => c.clone(),
                _ => continue,
            };
            check_entity_arg(a, &Ty::Carrier(coll), Some(nf), env, decl.span)?;
        }
    }
    // Declared-only methods first: their types come from the signature.
    let names: Vec<String> = nf.methods.keys().cloned().collect();
    for n in &names {
        let m = &nf.methods[n];
        if m.kind == NfKind::Signature && m.ty.is_none() {
            let mut inf = Infer::new(env, Some(nf), Mode::Statement)?;
            let d = m.declared.clone().expect("signature has a type");
            let t =
                inf.convert(&d).map_err(|e| diag(DiagKind::UnknownName, m.span, &format!("{}!{}", nf.name, n), &e))?;
            let t = generalize(&inf, &t);
            let m = nf.methods.get_mut(n).unwrap();
            m.carrier_decl = t.mentions_self();
            m.ty = Some(t);
        } else if m.kind == NfKind::Signature {
            let who = format!("{}!{}", nf.name, n);
            if let (Some(d), Some(t)) = (&m.declared, &m.ty) {
                let mut inf = Infer::new(env, Some(nf), Mode::Statement)?;
                check_declared(&mut inf, d, t).map_err(|e| diag(DiagKind::TypeMismatch, m.span, &who, &e))?;
            }
        }
    }
    for n in order {
        let m = &nf.methods[n];
        let local = m.origin == nf.name;
        match m.kind {
            NfKind::Signature => {}
            NfKind::Let { .. } if local => {
                let t = type_let(nf, m, env)?;
                let m = nf.methods.get_mut(n).unwrap();
                m.ty = Some(t.ty);
                m.carrier_decl = t.saw_self;
                m.carrier_def = t.used_rep;
            }
            NfKind::Let { .. } => {
                if let (Some(d), Some(t)) = (&m.declared, &m.ty) {
                    let who = format!("{}!{}", nf.name, n);
                    let mut inf = Infer::new(env, Some(nf), Mode::Statement)?;
                    check_declared(&mut inf, d, t).map_err(|e| diag(DiagKind::TypeMismatch, m.span, &who, &e))?;
                }
            }
            NfKind::Property | NfKind::Theorem if m.ty.is_none() || local => {
                let saw = type_statement(nf, m, env)?;
                let used = if m.kind == NfKind::Theorem { type_proof(nf, m, env)? } else { false };
                let m = nf.methods.get_mut(n).unwrap();
                m.ty = Some(Ty::Prop);
                m.carrier_decl = saw || m.statement.as_ref().is_some_and(mentions_self_type);
                m.carrier_def = used;
            }
            _ => {}
        }
    }
    Ok(())
}

fn mentions_self_type(e: &Expr) -> bool {
    fn ty(t: &TypeExpr) -> bool {
        match t {
            TypeExpr::SelfT => true,
            TypeExpr::Arrow(a, b) => ty(a) || ty(b),
            TypeExpr::Tuple(ts) => ts.iter().any(ty),
            _ => false,
        }
    }
    let mut found = matches!(e, Expr::Quant(_, _, t, _) if ty(t));
    e.for_each_child(&mut |c| found |= mentions_self_type(c));
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::parse_expr;

    fn plain_env() -> Env {
        Env::default()
    }

    #[test]
    fn self_unifies_with_representation_in_body_mode() {
        let env = plain_env();
        let mut inf = Infer::new(&env, None, Mode::Body).unwrap();
        inf.rep = Some(Ty::Int);
        inf.unify(&Ty::SelfTy, &Ty::Int).unwrap();
        assert!(inf.used_rep);
    }

    #[test]
    fn self_is_rigid_in_statement_mode() {
        let env = plain_env();
        let mut inf = Infer::new(&env, None, Mode::Statement).unwrap();
        assert!(inf.unify(&Ty::SelfTy, &Ty::Int).is_err());
        assert!(inf.unify(&Ty::SelfTy, &Ty::SelfTy).is_ok());
    }

    #[test]
    fn builtins() {
        let env = plain_env();
        let mut inf = Infer::new(&env, None, Mode::Body).unwrap();
        let t = inf.expr(&parse_expr("fst ((1, true))").unwrap()).unwrap();
        assert_eq!(inf.resolve(&t), Ty::Int);
        let t = inf.expr(&parse_expr("~~ (1 <0x 2) && true").unwrap()).unwrap();
        assert_eq!(inf.resolve(&t), Ty::Bool);
        assert!(inf.expr(&parse_expr("1 + true").unwrap()).is_err());
    }

    #[test]
    fn atom_is_the_witness() {
        let env = plain_env();
        let mut inf = Infer::new(&env, None, Mode::Statement).unwrap();
        let f = parse_expr("all x : int, x = 1 -> x = true").unwrap();
        let err = inf.formula(&f).unwrap_err();
        assert_eq!(err.atom, Some(parse_expr("x = true").unwrap()));
    }
}
