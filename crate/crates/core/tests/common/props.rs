//! Invariants checked over random species, shared by the property and acceptance suites.

use super::gen::{build, Kind, Method, Sample, Seed};
use super::{analyze, scope};
use focml::deps::{close_param_deps, Keep, MethodDeps};
use focml::driver::Analysis;
use focml::emit::{erase, is_erased};
use focml::generators::plan_unit;
use focml::ir::{Item, Sort};
use indexmap::IndexSet;
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

fn run(s: &Sample) -> Result<Analysis, TestCaseError> {
    let a = analyze(&s.text);
    prop_assert!(a.ok(), "{:?}\n{}", a.diags, s.text);
    Ok(a)
}

/// The methods of `K`: redefined lets lose their uses.
fn child_model(s: &Sample) -> Vec<Method> {
    let redefined = s.child.clone().unwrap_or_default();
    s.methods
        .iter()
        .map(|m| {
            let mut m = m.clone();
            if redefined.contains(&m.name) {
                m.uses.clear();
            }
            m
        })
        .collect()
}

fn set(v: &[String]) -> BTreeSet<String> {
    v.iter().cloned().collect()
}

/// Least set closed under the four universe rules, by naive iteration.
fn brute_universe(x: &str, model: &BTreeMap<String, Method>) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut clo = BTreeSet::new();
    loop {
        let mut next = clo.clone();
        next.extend(model[x].defs.iter().cloned());
        for z in &clo {
            next.extend(model[z].defs.iter().cloned());
        }
        if next == clo {
            break;
        }
        clo = next;
    }
    let stmt = |z: &str| match model[z].kind {
        Kind::Prop | Kind::Thm => model[z].uses.clone(),
        _ => BTreeSet::new(),
    };
    let mut u = BTreeSet::new();
    loop {
        let mut next = u.clone();
        next.extend(model[x].decl());
        next.extend(clo.iter().cloned());
        for z in &clo {
            next.extend(model[z].decl());
        }
        for z in &u {
            next.extend(stmt(z));
        }
        if next == u {
            return (u, clo);
        }
        u = next;
    }
}

fn species_models(s: &Sample) -> Vec<(&'static str, BTreeMap<String, Method>)> {
    let mut out = vec![("R", s.methods.iter().map(|m| (m.name.clone(), m.clone())).collect())];
    if s.child.is_some() {
        out.push(("K", child_model(s).into_iter().map(|m| (m.name.clone(), m)).collect()));
    }
    out
}

fn deps_of<'a>(a: &'a Analysis, species: &str) -> &'a indexmap::IndexMap<String, MethodDeps> {
    &a.env.species(species).unwrap().deps.methods
}

pub fn universe_is_the_least_fixpoint(sd: &Seed) -> Result<(), TestCaseError> {
    let s = build(sd);
    let a = run(&s)?;
    for (sp, model) in species_models(&s) {
        let deps = deps_of(&a, sp);
        for (x, m) in &model {
            let d = &deps[x];
            prop_assert_eq!(set(&d.decl), m.decl(), "{}.{} decl", sp, x);
            prop_assert_eq!(set(&d.def), m.defs.clone(), "{}.{} def", sp, x);
            let (u, clo) = brute_universe(x, &model);
            prop_assert_eq!(set(&d.def_closure), clo, "{}.{} closure", sp, x);
            prop_assert_eq!(set(&d.universe), u, "{}.{} universe\n{}", sp, x, s.text);
        }
    }
    Ok(())
}

pub fn min_env_partitions_the_universe(sd: &Seed) -> Result<(), TestCaseError> {
    let s = build(sd);
    let a = run(&s)?;
    for (sp, _) in species_models(&s) {
        let deps = deps_of(&a, sp);
        for (x, d) in deps {
            let names: Vec<String> = d.min_env.iter().map(|e| e.name.clone()).collect();
            prop_assert_eq!(set(&names), set(&d.universe), "{}.{}", sp, x);
            prop_assert_eq!(names.len(), d.universe.len());
            let idx: Vec<usize> = names.iter().map(|n| deps[n].order_index).collect();
            prop_assert!(idx.windows(2).all(|w| w[0] < w[1]), "{}.{} min_env out of order", sp, x);
            for e in &d.min_env {
                let body = d.def_closure.contains(&e.name);
                prop_assert_eq!(e.keep == Keep::TypeAndBody, body, "{}.{} keeps {}", sp, x, e.name);
            }
        }
    }
    Ok(())
}

pub fn order_respects_dependencies(sd: &Seed) -> Result<(), TestCaseError> {
    let s = build(sd);
    let a = run(&s)?;
    for (sp, _) in species_models(&s) {
        let info = a.env.species(sp).unwrap();
        let deps = &info.deps.methods;
        prop_assert_eq!(set(&info.deps.order), info.nf.methods.keys().cloned().collect::<BTreeSet<_>>());
        for (i, x) in info.deps.order.iter().enumerate() {
            prop_assert_eq!(deps[x].order_index, i);
            for z in deps[x].decl.iter().chain(deps[x].min_env.iter().map(|e| &e.name)) {
                prop_assert!(deps[z].order_index < i, "{}: {} needs {} first", sp, x, z);
            }
        }
    }
    Ok(())
}

pub fn parameter_completion_is_idempotent(sd: &Seed, pick: u64) -> Result<(), TestCaseError> {
    prop_assume!(sd.params > 0);
    let s = build(sd);
    let a = run(&s)?;
    let info = a.env.species("R").unwrap();
    let iface = a.env.iface_of(Some(&info.nf), "P").unwrap();
    let close = |d: &IndexSet<String>| close_param_deps(d, &info.nf, "P", &a.env);
    let names = |v: &[focml::deps::ParamDep]| v.iter().map(|p| p.name.clone()).collect::<IndexSet<_>>();
    for d in info.deps.methods.values() {
        let once = &d.params["P"];
        prop_assert_eq!(&close(&names(once)), once);
    }
    let subset: IndexSet<String> =
        iface.keys().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, k)| k.clone()).collect();
    let once = close(&subset);
    prop_assert!(subset.iter().all(|n| once.iter().any(|p| &p.name == n)));
    prop_assert_eq!(close(&names(&once)), once);
    Ok(())
}

pub fn plans_are_well_scoped(sd: &Seed) -> Result<(), TestCaseError> {
    let s = build(sd);
    let a = run(&s)?;
    let p = plan_unit(&a.unit, &a.env);
    prop_assert!(scope::check(&p, true).is_ok(), "{:?}\n{}", scope::check(&p, true), s.text);
    let e = erase(&p);
    prop_assert!(scope::check(&e, false).is_ok(), "erased: {:?}", scope::check(&e, false));
    Ok(())
}

pub fn erasure_drops_only_logical_material(sd: &Seed) -> Result<(), TestCaseError> {
    let s = build(sd);
    let a = run(&s)?;
    let p = plan_unit(&a.unit, &a.env);
    let e = erase(&p);
    prop_assert!(is_erased(&e));
    prop_assert_eq!(&erase(&e), &e);
    prop_assert_eq!(p.blocks.len(), e.blocks.len());
    for (b, eb) in p.blocks.iter().zip(&e.blocks) {
        let kept: Vec<&str> = b
            .items
            .iter()
            .filter(|it| !matches!(it, Item::Theorem { .. } | Item::Projection { sort: Sort::Proof, .. }))
            .filter_map(Item::name)
            .collect();
        let got: Vec<&str> = eb.items.iter().filter_map(Item::name).collect();
        prop_assert_eq!(kept, got);
        for (it, et) in b
            .items
            .iter()
            .filter(|it| !matches!(it, Item::Theorem { .. } | Item::Projection { sort: Sort::Proof, .. }))
            .zip(&eb.items)
        {
            if let (Item::Definition { binders, args, .. }, Item::Definition { binders: eb_, args: ea, .. }) = (it, et)
            {
                let values: Vec<&String> = binders.iter().filter(|x| x.sort == Sort::Value).map(|x| &x.name).collect();
                prop_assert_eq!(values, eb_.iter().map(|x| &x.name).collect::<Vec<_>>());
                prop_assert_eq!(args, ea);
            }
        }
    }
    let comp = focml::emit::computational(&p);
    prop_assert!(!comp.contains("Is_true") && !comp.contains("PROOF_HOLE"));
    Ok(())
}

pub fn flattening_is_idempotent(sd: &Seed) -> Result<(), TestCaseError> {
    let s = build(sd);
    let params = ["", " (P is OrdData)", " (P is OrdData, v in P)"][s.params];
    let args = ["", " (P)", " (P, v)"][s.params];
    let text = format!("{}species R2{params} =\n  inherit R{args} ;\nend ;;\n", s.text);
    let a = analyze(&text);
    prop_assert!(a.ok(), "{:?}", a.diags);
    let r = a.env.species("R").unwrap();
    let r2 = a.env.species("R2").unwrap();
    prop_assert_eq!(&r.deps, &r2.deps);
    prop_assert_eq!(r.nf.rep.as_ref().map(|x| &x.ty), r2.nf.rep.as_ref().map(|x| &x.ty));
    for (x, m) in &r.nf.methods {
        let mut m2 = r2.nf.methods[x].clone();
        m2.span = m.span;
        m2.subst = m.subst.clone();
        prop_assert_eq!(m, &m2);
    }
    Ok(())
}

pub fn late_binding_and_invalidation(sd: &Seed) -> Result<(), TestCaseError> {
    prop_assume!(sd.child.is_some());
    let s = build(sd);
    let a = run(&s)?;
    let k = a.env.species("K").unwrap();
    let redefined = s.child.clone().unwrap();
    for m in &s.methods {
        let km = &k.nf.methods[&m.name];
        let expected = if redefined.contains(&m.name) { "K" } else { "R" };
        prop_assert_eq!(&km.origin, expected);
        if m.kind == Kind::Thm {
            let reverted = m.defs.iter().any(|d| redefined.contains(d));
            prop_assert_eq!(km.valid_proof, !reverted, "{}", m.name);
        }
    }
    prop_assert_eq!(s.collections.contains(&"CK".to_string()), a.env.collections.contains_key("CK"));
    Ok(())
}

pub type Check = fn(&Seed, u64) -> Result<(), TestCaseError>;

pub const ALL: &[(&str, Check)] = &[
    ("universe is the least fixpoint", |s, _| universe_is_the_least_fixpoint(s)),
    ("min_env partitions the universe", |s, _| min_env_partitions_the_universe(s)),
    ("parameter completion is idempotent", parameter_completion_is_idempotent),
    ("order respects dependencies", |s, _| order_respects_dependencies(s)),
    ("plans are well scoped", |s, _| plans_are_well_scoped(s)),
    ("erasure relates the two targets", |s, _| erasure_drops_only_logical_material(s)),
    ("flattening is idempotent", |s, _| flattening_is_idempotent(s)),
    ("late binding and invalidation", |s, _| late_binding_and_invalidation(s)),
];
