//! Parameter instantiation over syntax trees.

use crate::syntax::*;
use indexmap::IndexMap;
use std::collections::HashMap;

/// What a formal parameter is bound to.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamArg {
    /// A collection parameter of the current species, or a declared collection.
    Coll(String),
    /// A value expression for an entity parameter.
    Entity(Expr),
}

/// Formal parameter name to argument, in parameter order.
pub type ParamSubst = IndexMap<String, ParamArg>;

pub fn carrier_map(s: &ParamSubst) -> HashMap<String, String> {
    s.iter()
        .filter_map(|(k, v)| match v {
            ParamArg::Coll(c) => Some((k.clone(), c.clone())),
            ParamArg::Entity(_) => None,
        })
        .collect()
}

/// `outer ∘ inner`: maps the formals of `inner`'s domain to `outer`'s codomain.
pub fn compose(inner: &ParamSubst, outer: &ParamSubst) -> ParamSubst {
    inner
        .iter()
        .map(|(k, v)| {
            let v = match v {
                ParamArg::Coll(c) => match outer.get(c) {
                    Some(ParamArg::Coll(d)) => ParamArg::Coll(d.clone()),
                    _ => ParamArg::Coll(c.clone()),
                },
                ParamArg::Entity(e) => ParamArg::Entity(expr(e, outer)),
            };
            (k.clone(), v)
        })
        .collect()
}

pub fn type_expr(t: &TypeExpr, s: &ParamSubst) -> TypeExpr {
    match t {
        TypeExpr::Name(n) => match s.get(n) {
            Some(ParamArg::Coll(c)) => TypeExpr::Name(c.clone()),
            _ => t.clone(),
        },
        TypeExpr::Arrow(a, b) => TypeExpr::Arrow(Box::new(type_expr(a, s)), Box::new(type_expr(b, s))),
        TypeExpr::Tuple(ts) => TypeExpr::Tuple(ts.iter().map(|t| type_expr(t, s)).collect()),
        _ => t.clone(),
    }
}

pub fn expr(e: &Expr, s: &ParamSubst) -> Expr {
    if s.is_empty() {
        return e.clone();
    }
    go(e, s, &mut Vec::new())
}

/// Like [`expr`], with `bound` names already shadowing entity parameters.
pub fn expr_under(e: &Expr, s: &ParamSubst, bound: &[String]) -> Expr {
    if s.is_empty() {
        return e.clone();
    }
    go(e, s, &mut bound.to_vec())
}

fn go(e: &Expr, s: &ParamSubst, bound: &mut Vec<String>) -> Expr {
    let b = |x: &Expr, bound: &mut Vec<String>| Box::new(go(x, s, bound));
    match e {
        Expr::Var(v) if !bound.contains(v) => match s.get(v) {
            Some(ParamArg::Entity(a)) => a.clone(),
            Some(ParamArg::Coll(c)) => Expr::Var(c.clone()),
            None => e.clone(),
        },
        Expr::Ctor(c, args) if args.is_empty() => match s.get(c) {
            Some(ParamArg::Coll(d)) => Expr::Ctor(d.clone(), vec![]),
            _ => e.clone(),
        },
        Expr::Var(_) | Expr::Int(_) | Expr::Bool(_) | Expr::Str(_) => e.clone(),
        Expr::Ctor(c, args) => Expr::Ctor(c.clone(), args.iter().map(|a| go(a, s, bound)).collect()),
        Expr::Qualified { coll, method } => match s.get(coll) {
            Some(ParamArg::Coll(c)) => Expr::Qualified { coll: c.clone(), method: method.clone() },
            _ => e.clone(),
        },
        Expr::App(h, args) => Expr::App(b(h, bound), args.iter().map(|a| go(a, s, bound)).collect()),
        Expr::Binary(op, x, y) => Expr::Binary(*op, b(x, bound), b(y, bound)),
        Expr::BoolNot(x) => Expr::BoolNot(b(x, bound)),
        Expr::If(c, t, f) => Expr::If(b(c, bound), b(t, bound), b(f, bound)),
        Expr::Tuple(items) => Expr::Tuple(items.iter().map(|a| go(a, s, bound)).collect()),
        Expr::Match(scrut, arms) => {
            let scrut = b(scrut, bound);
            let arms = arms
                .iter()
                .map(|(p, body)| {
                    let mut names = Vec::new();
                    p.bound_names(&mut names);
                    let n = bound.len();
                    bound.extend(names);
                    let body = go(body, s, bound);
                    bound.truncate(n);
                    (p.clone(), body)
                })
                .collect();
            Expr::Match(scrut, arms)
        }
        Expr::Quant(q, vars, t, body) => {
            let n = bound.len();
            bound.extend(vars.iter().cloned());
            let body = go(body, s, bound);
            bound.truncate(n);
            Expr::Quant(*q, vars.clone(), type_expr(t, s), Box::new(body))
        }
        Expr::Implies(x, y) => Expr::Implies(b(x, bound), b(y, bound)),
        Expr::And(x, y) => Expr::And(b(x, bound), b(y, bound)),
        Expr::Or(x, y) => Expr::Or(b(x, bound), b(y, bound)),
        Expr::Not(x) => Expr::Not(b(x, bound)),
    }
}

pub fn proof(p: &Proof, s: &ParamSubst) -> Proof {
    if s.is_empty() {
        return p.clone();
    }
    proof_under(p, s, &mut Vec::new())
}

fn proof_under(p: &Proof, s: &ParamSubst, bound: &mut Vec<String>) -> Proof {
    match p {
        Proof::Leaf(Leaf::Admitted) => p.clone(),
        Proof::Leaf(Leaf::By(facts)) => Proof::Leaf(Leaf::By(facts.iter().map(|f| fact(f, s)).collect())),
        Proof::Steps(steps) => Proof::Steps(
            steps
                .iter()
                .map(|st| {
                    let n = bound.len();
                    let assumes = st
                        .assumes
                        .iter()
                        .map(|(vs, t)| {
                            bound.extend(vs.iter().cloned());
                            (vs.clone(), type_expr(t, s))
                        })
                        .collect();
                    let hypotheses = st.hypotheses.iter().map(|(h, f)| (h.clone(), go(f, s, bound))).collect();
                    let goal = match &st.goal {
                        Goal::Prove(g) => Goal::Prove(go(g, s, bound)),
                        Goal::Qed => Goal::Qed,
                    };
                    let sub = proof_under(&st.proof, s, bound);
                    bound.truncate(n);
                    ProofStep { label: st.label, assumes, hypotheses, goal, proof: sub }
                })
                .collect(),
        ),
    }
}

fn fact(f: &Fact, s: &ParamSubst) -> Fact {
    let rename = |r: &MethodRef| match r.coll.as_ref().and_then(|c| s.get(c)) {
        Some(ParamArg::Coll(c)) => MethodRef { coll: Some(c.clone()), name: r.name.clone() },
        _ => r.clone(),
    };
    match f {
        Fact::Definition(r) => Fact::Definition(rename(r)),
        Fact::Property(r) => Fact::Property(rename(r)),
        other => other.clone(),
    }
}

fn self_in_type(t: &TypeExpr, to: &str) -> TypeExpr {
    match t {
        TypeExpr::SelfT => TypeExpr::Name(to.to_string()),
        TypeExpr::Arrow(a, b) => TypeExpr::Arrow(Box::new(self_in_type(a, to)), Box::new(self_in_type(b, to))),
        TypeExpr::Tuple(ts) => TypeExpr::Tuple(ts.iter().map(|t| self_in_type(t, to)).collect()),
        _ => t.clone(),
    }
}

/// Statement seen from outside: quantifiers over `Self` range over collection `to`.
pub fn self_to(e: &Expr, to: &str) -> Expr {
    let mut out = e.clone();
    fn walk(e: &mut Expr, to: &str) {
        if let Expr::Quant(_, _, t, _) = e {
            *t = self_in_type(t, to);
        }
        match e {
            Expr::Ctor(_, xs) | Expr::Tuple(xs) => xs.iter_mut().for_each(|x| walk(x, to)),
            Expr::App(h, xs) => {
                walk(h, to);
                xs.iter_mut().for_each(|x| walk(x, to));
            }
            Expr::Binary(_, a, b) | Expr::Implies(a, b) | Expr::And(a, b) | Expr::Or(a, b) => {
                walk(a, to);
                walk(b, to);
            }
            Expr::BoolNot(a) | Expr::Not(a) | Expr::Quant(_, _, _, a) => walk(a, to),
            Expr::If(c, t, f) => {
                walk(c, to);
                walk(t, to);
                walk(f, to);
            }
            Expr::Match(s, arms) => {
                walk(s, to);
                arms.iter_mut().for_each(|(_, b)| walk(b, to));
            }
            _ => {}
        }
    }
    walk(&mut out, to);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::parse_expr;

    fn subst() -> ParamSubst {
        let mut s = ParamSubst::new();
        s.insert("V".into(), ParamArg::Coll("X".into()));
        s.insert("minv".into(), ParamArg::Entity(Expr::Var("low".into())));
        s
    }

    #[test]
    fn renames_collections_and_entities() {
        let e = parse_expr("V!lt (x, minv)").unwrap();
        assert_eq!(expr(&e, &subst()), parse_expr("X!lt (x, low)").unwrap());
    }

    #[test]
    fn binders_shadow_entities() {
        let e = parse_expr("all minv : V, V!lt (minv, minv)").unwrap();
        assert_eq!(expr(&e, &subst()), parse_expr("all minv : X, X!lt (minv, minv)").unwrap());
    }

    #[test]
    fn composition() {
        let mut inner = ParamSubst::new();
        inner.insert("K".into(), ParamArg::Coll("V".into()));
        inner.insert("e".into(), ParamArg::Entity(parse_expr("V!fromInt (minv)").unwrap()));
        let c = compose(&inner, &subst());
        assert_eq!(c["K"], ParamArg::Coll("X".into()));
        assert_eq!(c["e"], ParamArg::Entity(parse_expr("X!fromInt (low)").unwrap()));
    }
}
