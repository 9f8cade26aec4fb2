//! Lambda-lifting plans: method generators, record types, collection generators and
//! collection extraction.

use crate::deps::Keep;
use crate::env::{Env, Iface, SpeciesInfo};
use crate::hierarchy::collection::{self, CollectionModel};
use crate::hierarchy::subst::{ParamArg, ParamSubst};
use crate::hierarchy::{NfKind, NfMethod, NfParamKind, NfSpecies};
use crate::ir::*;
use crate::syntax::{BinOp, Expr, Pattern, Quant, TypeExpr, UnionTypeDecl};
use crate::types::Ty;
use indexmap::IndexSet;

/// What a lifted name stands for, relative to the species that owns the plan.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Key {
    ParamCarrier(String),
    ParamMethod(String, String),
    Entity(String),
    SelfCarrier,
    SelfMethod(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lift {
    pub key: Key,
    pub binder: Binder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodPlan {
    /// Species defining the generator.
    pub host: String,
    pub name: String,
    pub lifts: Vec<Lift>,
    pub item: Item,
}

impl MethodPlan {
    /// Lifts that become arguments (bindings are local).
    pub fn arguments(&self) -> impl Iterator<Item = &Lift> {
        self.lifts.iter().filter(|l| !l.binder.is_bound())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SelfNames {
    Abst,
    Rf,
    Local,
}

/// How names of a species are spelled in one kind of generated item.
#[derive(Clone)]
struct Naming<'a> {
    env: &'a Env,
    nf: Option<&'a NfSpecies>,
    selfn: SelfNames,
    /// Bare method names refer to this parameter's interface.
    iface: Option<(&'a str, &'a Iface)>,
    bound: Vec<String>,
    /// Recursive occurrence of the method being generated, applied to its lifts.
    rec_ref: Option<(String, Term)>,
}

fn param_name(p: &str, m: &str) -> String {
    format!("_p_{p}_{m}")
}

impl<'a> Naming<'a> {
    fn new(env: &'a Env, nf: Option<&'a NfSpecies>, selfn: SelfNames) -> Self {
        Naming { env, nf, selfn, iface: None, bound: Vec::new(), rec_ref: None }
    }

    fn is_param(&self, c: &str) -> bool {
        self.nf.is_some_and(|s| s.is_collection_param(c))
    }

    fn carrier(&self, c: &str) -> String {
        if self.is_param(c) {
            if self.selfn == SelfNames::Rf {
                format!("{c}_T")
            } else {
                param_name(c, "T")
            }
        } else {
            format!("{c}.me_as_carrier")
        }
    }

    fn self_ty(&self) -> String {
        match self.selfn {
            SelfNames::Abst => "abst_T".into(),
            SelfNames::Rf => "rf_T".into(),
            SelfNames::Local => "local_rep".into(),
        }
    }

    fn self_method(&self, m: &str) -> String {
        match self.selfn {
            SelfNames::Abst => format!("abst_{m}"),
            SelfNames::Rf => format!("rf_{m}"),
            SelfNames::Local => format!("local_{m}"),
        }
    }

    fn coll_method(&self, c: &str, m: &str) -> String {
        if self.is_param(c) {
            param_name(c, m)
        } else {
            format!("{c}.{m}")
        }
    }

    fn ety(&self, t: &Ty) -> ETy {
        match t {
            Ty::Int => ETy::Int,
            Ty::Bool => ETy::Bool,
            Ty::Str => ETy::Str,
            Ty::Named(n) => ETy::Named(n.clone()),
            Ty::Carrier(c) => ETy::Var(self.carrier(c)),
            Ty::SelfTy => ETy::Var(self.self_ty()),
            Ty::Var(v) => ETy::Poly(*v),
            Ty::Prop => ETy::Set,
            Ty::Arrow(a, b) => ETy::Arrow(Box::new(self.ety(a)), Box::new(self.ety(b))),
            Ty::Tuple(ts) => ETy::Tuple(ts.iter().map(|t| self.ety(t)).collect()),
        }
    }

    fn ety_expr(&self, t: &TypeExpr) -> ETy {
        match t {
            TypeExpr::Name(n) => match n.as_str() {
                "int" => ETy::Int,
                "bool" => ETy::Bool,
                "string" => ETy::Str,
                _ if self.env.unions.contains_key(n) => ETy::Named(n.clone()),
                _ => ETy::Var(self.carrier(n)),
            },
            TypeExpr::SelfT => ETy::Var(self.self_ty()),
            TypeExpr::Var(v) => ETy::Var(format!("'{v}")),
            TypeExpr::Arrow(a, b) => ETy::Arrow(Box::new(self.ety_expr(a)), Box::new(self.ety_expr(b))),
            TypeExpr::Tuple(ts) => ETy::Tuple(ts.iter().map(|t| self.ety_expr(t)).collect()),
        }
    }

    fn is_bound(&self, v: &str) -> bool {
        self.bound.iter().any(|b| b == v)
    }

    fn var(&self, v: &str) -> Term {
        if self.is_bound(v) {
            return Term::var(v);
        }
        if let Some((name, t)) = &self.rec_ref {
            if name == v {
                return t.clone();
            }
        }
        if let Some((p, iface)) = self.iface {
            if iface.contains_key(v) {
                return Term::Var(param_name(p, v));
            }
        }
        if let Some(nf) = self.nf {
            if nf.methods.contains_key(v) {
                return Term::Var(self.self_method(v));
            }
            if nf.entity_carrier(v).is_some() {
                return Term::Var(param_name(v, v));
            }
        }
        Term::var(v)
    }

    fn is_builtin(&self, v: &str) -> bool {
        matches!(v, "fst" | "snd") && matches!(self.var(v), Term::Var(ref s) if s == v)
    }

    fn term(&mut self, e: &Expr) -> Term {
        match e {
            Expr::Var(v) => self.var(v),
            Expr::Int(i) => Term::Int(i.clone()),
            Expr::Bool(b) => Term::Bool(*b),
            Expr::Str(s) => Term::Str(s.clone()),
            Expr::Ctor(c, args) if args.is_empty() => Term::Var(c.clone()),
            Expr::Ctor(c, args) => Term::Ctor(c.clone(), args.iter().map(|a| self.term(a)).collect()),
            Expr::Qualified { coll, method } => Term::Var(self.coll_method(coll, method)),
            Expr::App(h, args) => {
                let args: Vec<Term> = args.iter().map(|a| self.term(a)).collect();
                match &**h {
                    Expr::Var(v) if self.is_builtin(v) && args.len() == 1 => {
                        Term::Prim(if v == "fst" { Prim::Fst } else { Prim::Snd }, args)
                    }
                    _ => Term::App(Box::new(self.term(h)), args),
                }
            }
            Expr::Binary(op, a, b) => {
                let p = match op {
                    BinOp::Eq => Prim::Eq,
                    BinOp::IntEq => Prim::IntEq,
                    BinOp::IntLt => Prim::IntLt,
                    BinOp::Add => Prim::Plus,
                    BinOp::Sub => Prim::Minus,
                    BinOp::And => Prim::And,
                };
                Term::Prim(p, vec![self.term(a), self.term(b)])
            }
            Expr::BoolNot(a) => Term::Prim(Prim::Not, vec![self.term(a)]),
            Expr::If(c, t, f) => Term::If(Box::new(self.term(c)), Box::new(self.term(t)), Box::new(self.term(f))),
            Expr::Tuple(items) => Term::Tuple(items.iter().map(|a| self.term(a)).collect()),
            Expr::Match(s, arms) => {
                let s = self.term(s);
                let arms = arms
                    .iter()
                    .map(|(p, b)| {
                        let n = self.bound.len();
                        p.bound_names(&mut self.bound);
                        let t = self.term(b);
                        self.bound.truncate(n);
                        (pat(p), t)
                    })
                    .collect();
                Term::Match(Box::new(s), arms)
            }
            _ => self.formula(e),
        }
    }

    /// Statement translation: boolean atoms are wrapped in `Is_true`.
    fn formula(&mut self, e: &Expr) -> Term {
        match e {
            Expr::Quant(q, vars, t, body) => {
                let ty = self.ety_expr(t);
                let n = self.bound.len();
                self.bound.extend(vars.iter().cloned());
                let b = Box::new(self.formula(body));
                self.bound.truncate(n);
                match q {
                    Quant::All => Term::Forall(vars.clone(), ty, b),
                    Quant::Ex => Term::Exists(vars.clone(), ty, b),
                }
            }
            Expr::Implies(a, b) => Term::Implies(Box::new(self.formula(a)), Box::new(self.formula(b))),
            Expr::And(a, b) => Term::And(Box::new(self.formula(a)), Box::new(self.formula(b))),
            Expr::Or(a, b) => Term::Or(Box::new(self.formula(a)), Box::new(self.formula(b))),
            Expr::Not(a) => Term::Not(Box::new(self.formula(a))),
            atom => Term::IsTrue(Box::new(self.term(atom))),
        }
    }

    /// A lifted name of another plan, seen from here. `s` maps that plan's
    /// parameters to terms of this species.
    fn key_term(&mut self, key: &Key, s: &ParamSubst) -> Term {
        match key {
            Key::ParamCarrier(w) => match s.get(w) {
                Some(ParamArg::Coll(c)) => Term::Var(self.carrier(c)),
                _ => Term::Var(self.carrier(w)),
            },
            Key::ParamMethod(w, m) => match s.get(w) {
                Some(ParamArg::Coll(c)) => Term::Var(self.coll_method(c, m)),
                _ => Term::Var(self.coll_method(w, m)),
            },
            Key::Entity(e) => match s.get(e) {
                Some(ParamArg::Entity(x)) => self.term(x),
                _ => Term::Var(param_name(e, e)),
            },
            Key::SelfCarrier => Term::Var(self.self_ty()),
            Key::SelfMethod(m) => Term::Var(self.self_method(m)),
        }
    }
}

fn pat(p: &Pattern) -> Pat {
    match p {
        Pattern::Wild => Pat::Wild,
        Pattern::Var(v) => Pat::Var(v.clone()),
        Pattern::Int(i) => Pat::Int(i.clone()),
        Pattern::Bool(b) => Pat::Bool(*b),
        Pattern::Str(s) => Pat::Str(s.clone()),
        Pattern::Ctor(c, ps) => Pat::Ctor(c.clone(), ps.iter().map(pat).collect()),
        Pattern::Tuple(ps) => Pat::Tuple(ps.iter().map(pat).collect()),
    }
}

fn sort_of(m: &NfMethod) -> Sort {
    if m.kind.is_logical() {
        Sort::Proof
    } else {
        Sort::Value
    }
}

fn typed(name: String, sort: Sort, ty: ETy) -> Binder {
    Binder { name, sort, form: BinderForm::Typed(ty) }
}

/// Binder for an interface member of parameter `p`.
fn param_member_binder(n: &Naming, p: &str, iface: &Iface, m: &str) -> Binder {
    let e = &iface[m];
    let name = param_name(p, m);
    match (&e.statement, e.logical) {
        (Some(s), true) => {
            let mut inner = n.clone();
            inner.iface = Some((p, iface));
            Binder { name, sort: Sort::Proof, form: BinderForm::Stmt(inner.formula(s)) }
        }
        _ => typed(name, Sort::Value, n.ety(&e.ty)),
    }
}

fn gen_name(nf: &NfSpecies, m: &NfMethod) -> String {
    if m.origin == nf.name {
        m.name.clone()
    } else {
        format!("{}.{}", m.origin, m.name)
    }
}

/// Application of the current generator of `z` inside `nf`, spelled with `n`.
fn apply_generator(nf: &NfSpecies, z: &str, n: &mut Naming, env: &Env) -> Term {
    let m = &nf.methods[z];
    let origin = env.species(&m.origin).expect("origin species analysed");
    let plan = plan_method_generator(origin, z, env);
    let args = plan
        .arguments()
        .map(|l| {
            let t = n.key_term(&l.key, &m.subst);
            (l.binder.sort, t)
        })
        .collect();
    Term::GenApp(gen_name(nf, m), args)
}

/// Method generator of `x`, defined in `info`'s species.
pub fn plan_method_generator(info: &SpeciesInfo, x: &str, env: &Env) -> MethodPlan {
    let nf = &info.nf;
    let m = &nf.methods[x];
    let d = &info.deps.methods[x];
    let mut n = Naming::new(env, Some(nf), SelfNames::Abst);
    let mut lifts = Vec::new();
    for p in &d.param_carriers {
        lifts.push(Lift { key: Key::ParamCarrier(p.clone()), binder: typed(n.carrier(p), Sort::Carrier, ETy::Set) });
    }
    for p in &nf.params {
        let NfParamKind::Collection { .. } = &p.kind else { continue };
        let iface = env.iface_of(Some(nf), &p.name).unwrap_or_default();
        for dep in &d.params[&p.name] {
            lifts.push(Lift {
                key: Key::ParamMethod(p.name.clone(), dep.name.clone()),
                binder: param_member_binder(&n, &p.name, &iface, &dep.name),
            });
        }
    }
    for p in &nf.params {
        let NfParamKind::Entity { carrier } = &p.kind else { continue };
        if !d.params[&p.name].is_empty() {
            lifts.push(Lift {
                key: Key::Entity(p.name.clone()),
                binder: typed(param_name(&p.name, &p.name), Sort::Value, ETy::Var(n.carrier(carrier))),
            });
        }
    }
    match d.carrier_keep {
        Some(Keep::TypeAndBody) => {
            let rep = n.ety_expr(&nf.rep.as_ref().expect("carrier definition used").ty);
            lifts.push(Lift {
                key: Key::SelfCarrier,
                binder: Binder { name: n.self_ty(), sort: Sort::Carrier, form: BinderForm::BoundTy(rep) },
            });
        }
        Some(Keep::TypeOnly) => {
            lifts.push(Lift { key: Key::SelfCarrier, binder: typed(n.self_ty(), Sort::Carrier, ETy::Set) });
        }
        None => {}
    }
    for entry in &d.min_env {
        let z = &nf.methods[&entry.name];
        let name = n.self_method(&z.name);
        let binder = match entry.keep {
            Keep::TypeAndBody => {
                Binder { name, sort: sort_of(z), form: BinderForm::Bound(apply_generator(nf, &z.name, &mut n, env)) }
            }
            Keep::TypeOnly => match &z.statement {
                Some(s) if z.kind.is_logical() => {
                    Binder { name, sort: Sort::Proof, form: BinderForm::Stmt(n.formula(s)) }
                }
                _ => typed(name, Sort::Value, n.ety(z.ty.as_ref().expect("typed method"))),
            },
        };
        lifts.push(Lift { key: Key::SelfMethod(z.name.clone()), binder });
    }

    let binders: Vec<Binder> = lifts.iter().map(|l| l.binder.clone()).collect();
    let item = match m.kind {
        NfKind::Let { rec_flag } => {
            let ty = m.ty.clone().expect("typed method");
            let (arg_tys, ret) = ty.uncurry(m.params.len());
            let args: Vec<(String, ETy)> =
                m.params.iter().zip(arg_tys).map(|(p, t)| (p.name.clone(), n.ety(t))).collect();
            n.bound = m.params.iter().map(|p| p.name.clone()).collect();
            if rec_flag {
                let lifted = lifts
                    .iter()
                    .filter(|l| !l.binder.is_bound())
                    .map(|l| (l.binder.sort, Term::Var(l.binder.name.clone())))
                    .collect();
                n.rec_ref = Some((m.name.clone(), Term::GenApp(m.name.clone(), lifted)));
            }
            let body = n.term(m.body.as_ref().expect("let has a body"));
            Item::Definition { name: x.to_string(), rec_flag, binders, args, ret: n.ety(ret), body }
        }
        _ => Item::Theorem {
            name: x.to_string(),
            binders,
            statement: n.formula(m.statement.as_ref().expect("theorem has a statement")),
            hole: format!("PROOF_HOLE_{}_{}", nf.name, x),
            admitted: m.admitted,
        },
    };
    MethodPlan { host: nf.name.clone(), name: x.to_string(), lifts, item }
}

/// Record type: parameter carriers, entity values, then the closed type-level parameter members.
pub fn record_keys(info: &SpeciesInfo, env: &Env) -> Vec<Key> {
    let nf = &info.nf;
    let mut keys = Vec::new();
    for p in &nf.params {
        if let NfParamKind::Collection { .. } = p.kind {
            keys.push(Key::ParamCarrier(p.name.clone()));
        }
    }
    for p in &nf.params {
        if let NfParamKind::Entity { .. } = p.kind {
            keys.push(Key::Entity(p.name.clone()));
        }
    }
    for p in &nf.params {
        let NfParamKind::Collection { .. } = p.kind else { continue };
        let mut stated = IndexSet::new();
        for d in info.deps.methods.values() {
            stated.extend(d.param_rules[&p.name].ty.iter().cloned());
        }
        for dep in crate::deps::close_param_deps(&stated, nf, &p.name, env) {
            keys.push(Key::ParamMethod(p.name.clone(), dep.name));
        }
    }
    keys
}

fn key_binder(n: &Naming, nf: &NfSpecies, key: &Key, env: &Env) -> Binder {
    match key {
        Key::ParamCarrier(p) => typed(n.carrier(p), Sort::Carrier, ETy::Set),
        Key::Entity(e) => {
            let c = nf.entity_carrier(e).expect("entity parameter");
            typed(param_name(e, e), Sort::Value, ETy::Var(n.carrier(c)))
        }
        Key::ParamMethod(p, m) => {
            let iface = env.iface_of(Some(nf), p).unwrap_or_default();
            param_member_binder(n, p, &iface, m)
        }
        Key::SelfCarrier | Key::SelfMethod(_) => unreachable!("record parameters come from parameters"),
    }
}

pub fn plan_record_type(info: &SpeciesInfo, env: &Env) -> Item {
    let nf = &info.nf;
    let mut n = Naming::new(env, Some(nf), SelfNames::Rf);
    let params = record_keys(info, env).iter().map(|k| key_binder(&n, nf, k, env)).collect();
    let mut fields = vec![Field { name: "rf_T".into(), sort: Sort::Carrier, ty: FieldTy::Set }];
    for x in &info.deps.order {
        let m = &nf.methods[x];
        let ty = match &m.statement {
            Some(s) if m.kind.is_logical() => FieldTy::Stmt(n.formula(s)),
            _ => FieldTy::Ty(n.ety(m.ty.as_ref().expect("typed method"))),
        };
        fields.push(Field { name: n.self_method(x), sort: sort_of(m), ty });
    }
    Item::Record { params, fields }
}

/// Parameter-side names a plan of `origin` needs, as names of `nf` (through `s`).
fn lift_into(key: &Key, s: &ParamSubst, nf: &NfSpecies, out: &mut IndexSet<Key>) {
    let coll = |w: &str| match s.get(w) {
        Some(ParamArg::Coll(c)) => c.clone(),
        _ => w.to_string(),
    };
    match key {
        Key::ParamCarrier(w) => {
            let c = coll(w);
            if nf.is_collection_param(&c) {
                out.insert(Key::ParamCarrier(c));
            }
        }
        Key::ParamMethod(w, m) => {
            let c = coll(w);
            if nf.is_collection_param(&c) {
                out.insert(Key::ParamCarrier(c.clone()));
                out.insert(Key::ParamMethod(c, m.clone()));
            }
        }
        Key::Entity(e) => {
            let x = match s.get(e) {
                Some(ParamArg::Entity(x)) => x.clone(),
                _ => Expr::Var(e.clone()),
            };
            expr_keys(&x, nf, out);
        }
        _ => {}
    }
}

fn expr_keys(e: &Expr, nf: &NfSpecies, out: &mut IndexSet<Key>) {
    match e {
        Expr::Var(v) => {
            if let Some(c) = nf.entity_carrier(v) {
                out.insert(Key::ParamCarrier(c.to_string()));
                out.insert(Key::Entity(v.clone()));
            }
        }
        Expr::Qualified { coll, method } if nf.is_collection_param(coll) => {
            out.insert(Key::ParamCarrier(coll.clone()));
            out.insert(Key::ParamMethod(coll.clone(), method.clone()));
        }
        _ => e.for_each_child(&mut |c| expr_keys(c, nf, out)),
    }
}

/// Outer abstractions of the collection generator: carriers, entities, then methods,
/// each in parameter order (methods in their interface's order).
pub fn create_keys(info: &SpeciesInfo, env: &Env) -> Vec<Key> {
    let nf = &info.nf;
    let mut all = IndexSet::new();
    for x in &info.deps.order {
        let m = &nf.methods[x];
        let origin = env.species(&m.origin).expect("origin species analysed");
        for l in plan_method_generator(origin, x, env).arguments() {
            lift_into(&l.key, &m.subst, nf, &mut all);
        }
    }
    all.extend(record_keys(info, env));
    let mut keys = Vec::new();
    for p in &nf.params {
        if all.contains(&Key::ParamCarrier(p.name.clone())) {
            keys.push(Key::ParamCarrier(p.name.clone()));
        }
    }
    for p in &nf.params {
        if all.contains(&Key::Entity(p.name.clone())) {
            keys.push(Key::Entity(p.name.clone()));
        }
    }
    for p in &nf.params {
        let NfParamKind::Collection { .. } = p.kind else { continue };
        let iface = env.iface_of(Some(nf), &p.name).unwrap_or_default();
        for m in iface.keys() {
            let k = Key::ParamMethod(p.name.clone(), m.clone());
            if all.contains(&k) {
                keys.push(k);
            }
        }
    }
    keys
}

fn key_sort(key: &Key, nf: &NfSpecies, env: &Env) -> Sort {
    match key {
        Key::ParamCarrier(_) | Key::SelfCarrier => Sort::Carrier,
        Key::Entity(_) => Sort::Value,
        Key::ParamMethod(p, m) => match env.iface_of(Some(nf), p).and_then(|i| i.get(m).map(|e| e.logical)) {
            Some(true) => Sort::Proof,
            _ => Sort::Value,
        },
        Key::SelfMethod(m) => sort_of(&nf.methods[m]),
    }
}

pub fn plan_collection_generator(info: &SpeciesInfo, env: &Env) -> Item {
    let nf = &info.nf;
    let mut n = Naming::new(env, Some(nf), SelfNames::Local);
    let id = nf.identity_subst();
    let binders = create_keys(info, env)
        .iter()
        .map(|k| {
            let name = match n.key_term(k, &id) {
                Term::Var(v) => v,
                other => unreachable!("parameter lift is a name: {other:?}"),
            };
            let sort = key_sort(k, nf, env);
            let form = if sort == Sort::Carrier { BinderForm::Typed(ETy::Set) } else { BinderForm::Bare };
            Binder { name, sort, form }
        })
        .collect();
    let rep = n.ety_expr(&nf.rep.as_ref().expect("complete species has a representation").ty);
    let mut locals = vec![Local { name: "local_rep".into(), sort: Sort::Carrier, value: Term::Type(rep) }];
    let mut fields = vec![(Sort::Carrier, "local_rep".to_string())];
    for x in &info.deps.order {
        let value = apply_generator(nf, x, &mut n, env);
        let sort = sort_of(&nf.methods[x]);
        locals.push(Local { name: n.self_method(x), sort, value });
        fields.push((sort, n.self_method(x)));
    }
    let record_args = record_keys(info, env).iter().map(|k| (key_sort(k, nf, env), n.key_term(k, &id))).collect();
    Item::CollectionCreate { binders, locals, record_args, fields }
}

/// Module of a collection: generator application, carrier and one projection per member.
pub fn plan_collection(c: &CollectionModel, env: &Env) -> Block {
    let info = env.species(&c.species).expect("implemented species analysed");
    let mut n = Naming::new(env, None, SelfNames::Abst);
    let args = create_keys(info, env).iter().map(|k| (key_sort(k, &info.nf, env), n.key_term(k, &c.args))).collect();
    let holes = record_keys(info, env).len();
    let mut items = vec![
        Item::EffectiveCollection { value: Term::GenApp(format!("{}.collection_create", c.species), args) },
        Item::CarrierDef { ty: n.ety_expr(&c.rep) },
    ];
    for (name, e) in &c.interface {
        items.push(Item::Projection {
            name: name.clone(),
            module: c.species.clone(),
            field: format!("rf_{name}"),
            holes,
            sort: if e.logical { Sort::Proof } else { Sort::Value },
        });
    }
    Block { name: c.name.clone(), kind: BlockKind::Collection, items }
}

pub fn plan_union(u: &UnionTypeDecl, env: &Env) -> Item {
    let n = Naming::new(env, None, SelfNames::Abst);
    Item::Inductive {
        name: u.name.clone(),
        ctors: u.ctors.iter().map(|c| (c.name.clone(), c.args.iter().map(|t| n.ety_expr(t)).collect())).collect(),
    }
}

/// Generators defined by a species, then its record type and collection generator when complete.
pub fn plan_species(info: &SpeciesInfo, env: &Env) -> Block {
    let nf = &info.nf;
    let mut items = Vec::new();
    let complete = collection::missing(nf).is_empty();
    if complete {
        items.push(plan_record_type(info, env));
    }
    for x in &info.deps.order {
        let m = &nf.methods[x];
        if m.origin == nf.name && m.is_settled() {
            items.push(plan_method_generator(info, x, env).item);
        }
    }
    if complete {
        items.push(plan_collection_generator(info, env));
    }
    Block { name: nf.name.clone(), kind: BlockKind::Species, items }
}

/// Plans for a whole analysed unit, in declaration order.
pub fn plan_unit(unit: &crate::syntax::CompilationUnit, env: &Env) -> Program {
    use crate::syntax::TopItem;
    let mut blocks = Vec::new();
    for item in &unit.items {
        match item {
            TopItem::Type(t) => {
                blocks.push(Block { name: t.name.clone(), kind: BlockKind::Types, items: vec![plan_union(t, env)] })
            }
            TopItem::Species(s) => {
                if let Some(info) = env.species(&s.name) {
                    blocks.push(plan_species(info, env));
                }
            }
            TopItem::Collection(c) => {
                if let Some(m) = env.collections.get(&c.name) {
                    blocks.push(plan_collection(m, env));
                }
            }
        }
    }
    Program { blocks }
}
