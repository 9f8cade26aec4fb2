//! Dependency analysis of flattened species.

use crate::diag::{DResult, Diag, DiagKind};
use crate::env::Env;
use crate::hierarchy::{NfKind, NfMethod, NfParamKind, NfSpecies};
use crate::syntax::*;
use crate::types::Ty;
use indexmap::{IndexMap, IndexSet};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Keep {
    TypeOnly,
    TypeAndBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvEntry {
    pub name: String,
    pub keep: Keep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamDep {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
}

/// Per-rule parameter dependencies before completion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRules {
    pub body: Vec<String>,
    #[serde(rename = "type")]
    pub ty: Vec<String>,
    pub def: Vec<String>,
    pub univ: Vec<String>,
    pub prm: Vec<String>,
}

impl ParamRules {
    pub fn union(&self) -> IndexSet<String> {
        [&self.body, &self.ty, &self.def, &self.univ, &self.prm].into_iter().flatten().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodDeps {
    pub decl: Vec<String>,
    pub def: Vec<String>,
    pub carrier_decl: bool,
    pub carrier_def: bool,
    pub def_closure: Vec<String>,
    /// Method names occurring in the statement (logical methods only).
    pub stmt_names: Vec<String>,
    pub universe: Vec<String>,
    pub carrier_in_universe: bool,
    pub min_env: Vec<EnvEntry>,
    /// How the carrier enters the environment, if at all.
    pub carrier_keep: Option<Keep>,
    /// Completed parameter dependencies, each list in the parameter's own method order.
    pub params: IndexMap<String, Vec<ParamDep>>,
    pub param_rules: IndexMap<String, ParamRules>,
    /// Collection parameters whose carrier the method needs.
    pub param_carriers: Vec<String>,
    pub order_index: usize,
    pub valid_proof: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeciesDeps {
    /// Global method order; the representation is not listed.
    pub order: Vec<String>,
    pub methods: IndexMap<String, MethodDeps>,
}

// ---------------------------------------------------------------------------
// Syntactic occurrences

struct Walk<'a> {
    /// `Some(name)` to look for `Var`s naming methods of this table.
    methods: Option<&'a IndexMap<String, NfMethod>>,
    /// Collection parameter whose `P!m` occurrences are collected.
    coll: Option<&'a str>,
    /// Entity parameter looked up as a free variable.
    entity: Option<&'a str>,
    bound: Vec<String>,
    out: IndexSet<String>,
}

impl<'a> Walk<'a> {
    fn new() -> Self {
        Walk { methods: None, coll: None, entity: None, bound: Vec::new(), out: IndexSet::new() }
    }

    fn expr(&mut self, e: &Expr) {
        match e {
            Expr::Var(v) if !self.bound.contains(v) => {
                if self.methods.is_some_and(|m| m.contains_key(v)) {
                    self.out.insert(v.clone());
                }
                if self.entity == Some(v.as_str()) {
                    self.out.insert(v.clone());
                }
            }
            Expr::Qualified { coll, method } => {
                if self.coll == Some(coll.as_str()) {
                    self.out.insert(method.clone());
                }
            }
            Expr::Match(s, arms) => {
                self.expr(s);
                for (p, body) in arms {
                    let n = self.bound.len();
                    p.bound_names(&mut self.bound);
                    self.expr(body);
                    self.bound.truncate(n);
                }
            }
            Expr::Quant(_, vars, _, body) => {
                let n = self.bound.len();
                self.bound.extend(vars.iter().cloned());
                self.expr(body);
                self.bound.truncate(n);
            }
            _ => e.for_each_child(&mut |c| self.expr(c)),
        }
    }

    fn proof(&mut self, p: &Proof) {
        match p {
            Proof::Leaf(Leaf::Admitted) => {}
            Proof::Leaf(Leaf::By(facts)) => {
                for f in facts {
                    let (Fact::Definition(r) | Fact::Property(r)) = f else { continue };
                    match &r.coll {
                        None => {
                            if self.methods.is_some_and(|m| m.contains_key(&r.name)) {
                                self.out.insert(r.name.clone());
                            }
                        }
                        Some(c) if self.coll == Some(c.as_str()) => {
                            self.out.insert(r.name.clone());
                        }
                        _ => {}
                    }
                }
            }
            Proof::Steps(steps) => {
                for st in steps {
                    let n = self.bound.len();
                    for (vs, _) in &st.assumes {
                        self.bound.extend(vs.iter().cloned());
                    }
                    for (_, h) in &st.hypotheses {
                        self.expr(h);
                    }
                    if let Goal::Prove(g) = &st.goal {
                        self.expr(g);
                    }
                    self.proof(&st.proof);
                    self.bound.truncate(n);
                }
            }
        }
    }

    /// Body of a method: let body (parameters bound) or proof.
    fn body(&mut self, m: &NfMethod) {
        if let Some(b) = &m.body {
            let n = self.bound.len();
            self.bound.extend(m.params.iter().map(|p| p.name.clone()));
            if matches!(m.kind, NfKind::Let { rec_flag: true }) {
                self.bound.push(m.name.clone());
            }
            self.expr(b);
            self.bound.truncate(n);
        }
        if let Some(p) = &m.proof {
            self.proof(p);
        }
    }

    fn statement(&mut self, m: &NfMethod) {
        if let Some(s) = &m.statement {
            self.expr(s);
        }
    }
}

/// Methods of `nf` named in `m`'s body, statement and proof facts (`rec` self-calls excluded).
pub fn syntactic_names(m: &NfMethod, nf: &NfSpecies) -> Vec<String> {
    let mut w = Walk::new();
    w.methods = Some(&nf.methods);
    w.statement(m);
    w.body(m);
    w.out.into_iter().collect()
}

/// `by definition of` targets.
pub fn def_names(m: &NfMethod) -> Vec<String> {
    let Some(p) = &m.proof else { return Vec::new() };
    let mut out: Vec<String> = Vec::new();
    for d in collect_leaf_facts(p).defs {
        if d.coll.is_none() && !out.contains(&d.name) {
            out.push(d.name);
        }
    }
    out
}

fn statement_names(m: &NfMethod, nf: &NfSpecies) -> Vec<String> {
    let mut w = Walk::new();
    w.methods = Some(&nf.methods);
    w.statement(m);
    w.out.into_iter().collect()
}

/// Occurrences of parameter `p` in an expression or proof part of `m`.
fn param_body(m: &NfMethod, p: &str, entity: bool) -> Vec<String> {
    let mut w = Walk::new();
    if entity {
        w.entity = Some(p);
    } else {
        w.coll = Some(p);
    }
    w.body(m);
    w.out.into_iter().collect()
}

fn param_stmt_expr(e: Option<&Expr>, p: &str, entity: bool) -> Vec<String> {
    let mut w = Walk::new();
    if entity {
        w.entity = Some(p);
    } else {
        w.coll = Some(p);
    }
    if let Some(e) = e {
        w.expr(e);
    }
    w.out.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Ordering

/// Decl edges among methods of `nf`.
pub fn graph(nf: &NfSpecies) -> IndexMap<String, Vec<String>> {
    nf.methods.values().map(|m| (m.name.clone(), syntactic_names(m, nf))).collect()
}

/// Shortest cycle through the graph, as a closed path (`a -> b -> a`).
fn shortest_cycle(edges: &IndexMap<String, Vec<String>>) -> Option<Vec<String>> {
    let mut best: Option<Vec<String>> = None;
    for start in edges.keys() {
        let mut prev: HashMap<&str, &str> = HashMap::new();
        let mut queue = VecDeque::from([start.as_str()]);
        let mut found = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for w in edges.get(v).into_iter().flatten() {
                if w == start {
                    found = Some(v);
                    break 'bfs;
                }
                if !prev.contains_key(w.as_str()) && edges.contains_key(w) {
                    prev.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        let Some(mut v) = found else { continue };
        let mut path = vec![start.clone()];
        while v != start {
            path.push(v.to_string());
            v = prev[v];
        }
        path.push(start.clone());
        let last = path.len() - 1;
        path[1..last].reverse();
        if best.as_ref().is_none_or(|b| path.len() < b.len()) {
            best = Some(path);
        }
    }
    best
}

/// Callee-first order, or the shortest dependency cycle.
pub fn topo_order(nf: &NfSpecies) -> DResult<Vec<String>> {
    let edges = graph(nf);
    let mut done: IndexSet<String> = IndexSet::new();
    while done.len() < edges.len() {
        let next = edges
            .iter()
            .find(|(k, deps)| !done.contains(*k) && deps.iter().all(|d| done.contains(d)))
            .map(|(k, _)| k.clone());
        match next {
            Some(k) => {
                done.insert(k);
            }
            None => {
                let rest: IndexMap<String, Vec<String>> =
                    edges.iter().filter(|(k, _)| !done.contains(*k)).map(|(k, v)| (k.clone(), v.clone())).collect();
                let cycle = shortest_cycle(&rest).expect("a stuck graph has a cycle");
                let span = nf.methods[&cycle[0]].span;
                return Err(Diag::error(
                    DiagKind::CycleInDependencies,
                    span,
                    format!("{}: {}", nf.name, cycle.join(" -> ")),
                ));
            }
        }
    }
    Ok(done.into_iter().collect())
}

/// Rank-layered order: the representation has rank 0, a method one more than
/// its highest dependency (the carrier counting as the representation). Ties by name.
pub fn global_order(nf: &NfSpecies, edges: &IndexMap<String, Vec<String>>, topo: &[String]) -> Vec<String> {
    let mut rank: HashMap<&str, usize> = HashMap::new();
    for n in topo {
        let m = &nf.methods[n];
        let mut r: Option<usize> = m.carrier_decl.then_some(0);
        for d in &edges[n] {
            let dr = rank[d.as_str()];
            r = Some(r.map_or(dr, |x| x.max(dr)));
        }
        rank.insert(n, r.map_or(0, |x| x + 1));
    }
    let mut out: Vec<String> = topo.to_vec();
    out.sort_by(|a, b| rank[a.as_str()].cmp(&rank[b.as_str()]).then(a.cmp(b)));
    out
}

// ---------------------------------------------------------------------------
// Sets

fn in_order(order: &[String], set: &IndexSet<String>) -> Vec<String> {
    order.iter().filter(|n| set.contains(*n)).cloned().collect()
}

/// Transitive `by definition` closure of `x` inside the species.
pub fn def_closure(x: &str, def: &HashMap<String, Vec<String>>) -> IndexSet<String> {
    let mut out = IndexSet::new();
    let mut todo: Vec<&String> = def.get(x).into_iter().flatten().collect();
    while let Some(z) = todo.pop() {
        if out.insert(z.clone()) {
            todo.extend(def.get(z).into_iter().flatten());
        }
    }
    out
}

/// Least set closed under the four universe rules.
pub fn universe(
    x: &str,
    decl: &HashMap<String, Vec<String>>,
    closure: &IndexSet<String>,
    stmt: &HashMap<String, Vec<String>>,
) -> IndexSet<String> {
    let mut u: IndexSet<String> = decl[x].iter().cloned().collect();
    u.extend(closure.iter().cloned());
    for z in closure {
        u.extend(decl[z].iter().cloned());
    }
    loop {
        let add: Vec<String> =
            u.iter().flat_map(|z| stmt.get(z).into_iter().flatten()).filter(|y| !u.contains(*y)).cloned().collect();
        if add.is_empty() {
            return u;
        }
        u.extend(add);
    }
}

fn ty_string(t: &Ty) -> String {
    t.to_string()
}

/// Collection parameter whose carrier an entity parameter lives in.
fn entity_owner<'a>(nf: &'a NfSpecies, p: &str) -> Option<&'a str> {
    nf.entity_carrier(p)
}

/// Carriers named anywhere in a type expression.
fn type_expr_names(t: &TypeExpr, out: &mut IndexSet<String>) {
    match t {
        TypeExpr::Name(n) => {
            out.insert(n.clone());
        }
        TypeExpr::Arrow(a, b) => {
            type_expr_names(a, out);
            type_expr_names(b, out);
        }
        TypeExpr::Tuple(ts) => ts.iter().for_each(|t| type_expr_names(t, out)),
        _ => {}
    }
}

fn binder_types(m: &NfMethod) -> IndexSet<String> {
    let mut out = IndexSet::new();
    fn expr(e: &Expr, out: &mut IndexSet<String>) {
        if let Expr::Quant(_, _, t, _) = e {
            type_expr_names(t, out);
        }
        e.for_each_child(&mut |c| expr(c, out));
    }
    fn proof(p: &Proof, out: &mut IndexSet<String>) {
        if let Proof::Steps(steps) = p {
            for st in steps {
                st.assumes.iter().for_each(|(_, t)| type_expr_names(t, out));
                st.hypotheses.iter().for_each(|(_, h)| expr(h, out));
                if let Goal::Prove(g) = &st.goal {
                    expr(g, out);
                }
                proof(&st.proof, out);
            }
        }
    }
    if let Some(s) = &m.statement {
        expr(s, &mut out);
    }
    if let Some(p) = &m.proof {
        proof(p, &mut out);
    }
    out
}

/// Full analysis of a typed species.
pub fn analyze(nf: &NfSpecies, env: &Env) -> DResult<SpeciesDeps> {
    let topo = topo_order(nf)?;
    let edges = graph(nf);
    let order = global_order(nf, &edges, &topo);
    let decl: HashMap<String, Vec<String>> = edges.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    let def: HashMap<String, Vec<String>> = nf.methods.values().map(|m| (m.name.clone(), def_names(m))).collect();
    let stmt: HashMap<String, Vec<String>> =
        nf.methods.values().map(|m| (m.name.clone(), statement_names(m, nf))).collect();
    let rep_ty_names = {
        let mut s = IndexSet::new();
        if let Some(r) = &nf.rep {
            type_expr_names(&r.ty, &mut s);
        }
        s
    };

    let mut methods = IndexMap::new();
    for (idx, x) in order.iter().enumerate() {
        let m = &nf.methods[x];
        let closure = def_closure(x, &def);
        let u = universe(x, &decl, &closure, &stmt);
        let carrier_def = m.carrier_def || closure.iter().any(|z| nf.methods[z].carrier_def);
        let carrier_in_universe = m.carrier_decl || carrier_def || u.iter().any(|z| nf.methods[z].carrier_decl);
        let min_env = order
            .iter()
            .filter(|y| u.contains(*y))
            .map(|y| EnvEntry {
                name: y.clone(),
                keep: if closure.contains(y) { Keep::TypeAndBody } else { Keep::TypeOnly },
            })
            .collect();
        let carrier_keep = if carrier_def {
            Some(Keep::TypeAndBody)
        } else if carrier_in_universe {
            Some(Keep::TypeOnly)
        } else {
            None
        };

        let mut params = IndexMap::new();
        let mut param_rules = IndexMap::new();
        for p in &nf.params {
            let entity = matches!(p.kind, NfParamKind::Entity { .. });
            let mut r = ParamRules {
                body: param_body(m, &p.name, entity),
                ty: param_stmt_expr(m.statement.as_ref(), &p.name, entity),
                ..Default::default()
            };
            let mut def_set = IndexSet::new();
            for z in &closure {
                def_set.extend(param_body(&nf.methods[z], &p.name, entity));
            }
            r.def = def_set.into_iter().collect();
            let mut univ = IndexSet::new();
            for z in &u {
                univ.extend(param_stmt_expr(nf.methods[z].statement.as_ref(), &p.name, entity));
            }
            r.univ = univ.into_iter().collect();
            param_rules.insert(p.name.clone(), r);
        }
        // Later parameters may be built from earlier ones.
        for (i, later) in nf.params.iter().enumerate() {
            let NfParamKind::Collection { .. } = &later.kind else { continue };
            let used: IndexSet<String> = {
                let r = &param_rules[&later.name];
                r.body.iter().chain(&r.ty).cloned().collect()
            };
            if used.is_empty() {
                continue;
            }
            let iface = env.iface_of(Some(nf), &later.name).unwrap_or_default();
            for earlier in &nf.params[..i] {
                let entity = matches!(earlier.kind, NfParamKind::Entity { .. });
                let mut add = IndexSet::new();
                for z in &used {
                    if let Some(e) = iface.get(z) {
                        add.extend(param_stmt_expr(e.statement.as_ref(), &earlier.name, entity));
                    }
                }
                let r = param_rules.get_mut(&earlier.name).unwrap();
                for a in add {
                    if !r.prm.contains(&a) {
                        r.prm.push(a);
                    }
                }
            }
        }
        for p in &nf.params {
            let d = param_rules[&p.name].union();
            let list = match &p.kind {
                NfParamKind::Entity { carrier } => {
                    d.iter().map(|n| ParamDep { name: n.clone(), ty: carrier.clone() }).collect()
                }
                NfParamKind::Collection { .. } => close_param_deps(&d, nf, &p.name, env),
            };
            params.insert(p.name.clone(), list);
        }

        let mut param_carriers = Vec::new();
        let mut named = binder_types(m);
        let own_ty = m.ty.clone().unwrap_or(Ty::Prop);
        for q in &nf.params {
            let NfParamKind::Collection { .. } = &q.kind else { continue };
            let via_entity = nf
                .params
                .iter()
                .any(|e| entity_owner(nf, &e.name) == Some(q.name.as_str()) && !params[&e.name].is_empty());
            let via_env = u.iter().any(|z| nf.methods[z].ty.as_ref().is_some_and(|t| t.mentions_carrier(&q.name)));
            let via_rep = carrier_def && rep_ty_names.contains(&q.name);
            if !params[&q.name].is_empty()
                || via_entity
                || own_ty.mentions_carrier(&q.name)
                || via_env
                || via_rep
                || named.swap_remove(&q.name)
            {
                param_carriers.push(q.name.clone());
            }
        }

        methods.insert(
            x.clone(),
            MethodDeps {
                decl: in_order(&order, &decl[x].iter().cloned().collect()),
                def: in_order(&order, &def[x].iter().cloned().collect()),
                carrier_decl: m.carrier_decl,
                carrier_def,
                def_closure: in_order(&order, &closure),
                stmt_names: in_order(&order, &stmt[x].iter().cloned().collect()),
                universe: in_order(&order, &u),
                carrier_in_universe,
                min_env,
                carrier_keep,
                params,
                param_rules,
                param_carriers,
                order_index: idx,
                valid_proof: (m.kind == NfKind::Theorem).then_some(m.valid_proof),
            },
        );
    }
    Ok(SpeciesDeps { order, methods })
}

/// Closes a parameter dependency set: adds what the statements of the collected members name inside the
/// parameter's interface. One pass; result in the interface's method order.
pub fn close_param_deps(d: &IndexSet<String>, nf: &NfSpecies, param: &str, env: &Env) -> Vec<ParamDep> {
    let Some(crate::hierarchy::NfParam { kind: NfParamKind::Collection { iface, .. }, .. }) = nf.param(param) else {
        return Vec::new();
    };
    let Some(info) = env.species(iface) else { return Vec::new() };
    let mut all = d.clone();
    for z in d {
        if let Some(md) = info.deps.methods.get(z) {
            all.extend(md.stmt_names.iter().cloned());
        }
    }
    let seen = env.iface_of(Some(nf), param).unwrap_or_default();
    seen.values()
        .filter(|e| all.contains(&e.name))
        .map(|e| ParamDep {
            name: e.name.clone(),
            ty: match &e.statement {
                Some(s) if e.logical => pretty::formula(s),
                _ => ty_string(&e.ty),
            },
        })
        .collect()
}

/// Statement-mode check of every local property and theorem.
pub fn check_carrier_leak(nf: &NfSpecies, env: &Env) -> DResult<()> {
    for m in nf.methods.values().filter(|m| m.kind.is_logical() && m.origin == nf.name) {
        let Some(stmt) = &m.statement else { continue };
        if let Err(e) = crate::typing::check_statement_carrier_abstraction(stmt, nf, env) {
            let mut body = crate::typing::Infer::new(env, Some(nf), crate::typing::Mode::Body)?;
            if body.formula(stmt).is_ok() {
                let atom = e.atom.as_ref().map(pretty::expr).unwrap_or_else(|| pretty::formula(stmt));
                return Err(Diag::error(DiagKind::WrongCarrierLeak, m.span, format!("{}: {atom}", m.name)));
            }
        }
    }
    Ok(())
}
