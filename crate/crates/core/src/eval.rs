//! Call-by-value interpreter over erased plans.

use crate::ir::*;
use crate::syntax::Expr;
use num_bigint::BigInt;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub const DEFAULT_STEP_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unknown collection {0}")]
    UnknownCollection(String),
    #[error("{0} has no method {1}")]
    UnknownMethod(String, String),
    #[error("{name} expects {expected} argument(s), got {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("no pattern matches {0}")]
    MatchFailure(String),
    #[error("step limit of {0} exceeded")]
    StepLimit(u64),
    #[error("unbound name {0}")]
    Unbound(String),
    #[error("ill-typed operation: {0}")]
    Type(String),
}

#[derive(Debug)]
pub struct Closure {
    block: String,
    params: Vec<String>,
    lets: Vec<(String, Term)>,
    body: Body,
}

#[derive(Debug)]
enum Body {
    Term(Term),
    Record(Vec<(String, String)>),
}

#[derive(Debug, Clone)]
pub enum Value {
    Int(BigInt),
    Bool(bool),
    Str(String),
    Tuple(Vec<Value>),
    Ctor(String, Vec<Value>),
    Record(Arc<Vec<(String, Value)>>),
    Fun(Arc<Closure>, Vec<Value>),
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Str(a), Value::Str(b)) => a == b,
            (Value::Tuple(a), Value::Tuple(b)) => a == b,
            (Value::Ctor(c, a), Value::Ctor(d, b)) => c == d && a == b,
            (Value::Record(a), Value::Record(b)) => a == b,
            (Value::Fun(f, a), Value::Fun(g, b)) => Arc::ptr_eq(f, g) && a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, vs: &[Value]| -> fmt::Result {
            write!(f, "(")?;
            for (i, v) in vs.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")
        };
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Str(s) => write!(f, "{s:?}"),
            Value::Tuple(vs) => list(f, vs),
            Value::Ctor(c, vs) if vs.is_empty() => write!(f, "{c}"),
            Value::Ctor(c, vs) => {
                write!(f, "{c} ")?;
                list(f, vs)
            }
            Value::Record(fs) => {
                write!(f, "{{")?;
                for (i, (n, v)) in fs.iter().enumerate() {
                    write!(f, "{}{n} = {v}", if i > 0 { "; " } else { " " })?;
                }
                write!(f, " }}")
            }
            Value::Fun(..) => write!(f, "<fun>"),
        }
    }
}

impl Value {
    pub fn int(i: i64) -> Value {
        Value::Int(i.into())
    }

    pub fn ctor(c: &str) -> Value {
        Value::Ctor(c.into(), vec![])
    }
}

/// Loaded program: every top-level definition evaluated in declaration order.
pub struct Machine {
    globals: HashMap<String, Value>,
    collections: HashMap<String, Vec<String>>,
    ctors: HashMap<String, usize>,
    steps: u64,
    limit: u64,
}

type R<T> = Result<T, EvalError>;

fn lookup<'a>(scope: &'a [(String, Value)], v: &str) -> Option<&'a Value> {
    scope.iter().rev().find(|(n, _)| n == v).map(|(_, x)| x)
}

impl Machine {
    /// `p` must already be erased.
    pub fn load(p: &Program, limit: u64) -> R<Machine> {
        let mut m =
            Machine { globals: HashMap::new(), collections: HashMap::new(), ctors: HashMap::new(), steps: 0, limit };
        for b in &p.blocks {
            for it in &b.items {
                m.load_item(&b.name, b.kind, it)?;
            }
        }
        m.steps = 0;
        Ok(m)
    }

    fn define(&mut self, block: &str, name: &str, v: Value) {
        self.globals.insert(format!("{block}.{name}"), v);
    }

    fn function(&mut self, c: Closure) -> R<Value> {
        if c.params.is_empty() {
            self.run(&c, &[])
        } else {
            Ok(Value::Fun(Arc::new(c), vec![]))
        }
    }

    fn load_item(&mut self, block: &str, kind: BlockKind, it: &Item) -> R<()> {
        match it {
            Item::Inductive { ctors, .. } => {
                for (c, args) in ctors {
                    self.ctors.insert(c.clone(), args.len());
                }
            }
            Item::Definition { name, binders, args, body, .. } => {
                let c = Closure {
                    block: block.into(),
                    params: binders
                        .iter()
                        .filter(|b| !b.is_bound())
                        .map(|b| b.name.clone())
                        .chain(args.iter().map(|(a, _)| a.clone()))
                        .collect(),
                    lets: binders
                        .iter()
                        .filter_map(|b| match &b.form {
                            BinderForm::Bound(t) => Some((b.name.clone(), t.clone())),
                            _ => None,
                        })
                        .collect(),
                    body: Body::Term(body.clone()),
                };
                let v = self.function(c)?;
                self.define(block, name, v);
            }
            Item::CollectionCreate { binders, locals, fields, .. } => {
                let c = Closure {
                    block: block.into(),
                    params: binders.iter().map(|b| b.name.clone()).collect(),
                    lets: locals.iter().map(|l| (l.name.clone(), l.value.clone())).collect(),
                    body: Body::Record(
                        fields
                            .iter()
                            .map(|(_, f)| (format!("rf_{}", f.trim_start_matches("local_")), f.clone()))
                            .collect(),
                    ),
                };
                let v = self.function(c)?;
                self.define(block, "collection_create", v);
            }
            Item::EffectiveCollection { value } => {
                let v = self.eval(value, &[], block)?;
                self.define(block, "effective_collection", v);
            }
            Item::Projection { name, field, .. } => {
                let rec = self.globals[&format!("{block}.effective_collection")].clone();
                let Value::Record(fs) = rec else { return Err(EvalError::Type("projection from a non-record".into())) };
                let v = fs.iter().find(|(n, _)| n == field).map(|(_, v)| v.clone());
                let v = v.ok_or_else(|| EvalError::Unbound(field.clone()))?;
                self.define(block, name, v);
                if kind == BlockKind::Collection {
                    self.collections.entry(block.into()).or_default().push(name.clone());
                }
            }
            Item::CarrierDef { .. } | Item::Record { .. } | Item::Theorem { .. } => {
                if kind == BlockKind::Collection {
                    self.collections.entry(block.into()).or_default();
                }
            }
        }
        Ok(())
    }

    fn tick(&mut self) -> R<()> {
        self.steps += 1;
        if self.steps > self.limit {
            Err(EvalError::StepLimit(self.limit))
        } else {
            Ok(())
        }
    }

    fn var(&self, v: &str, scope: &[(String, Value)], block: &str) -> R<Value> {
        if let Some(x) = lookup(scope, v) {
            return Ok(x.clone());
        }
        if let Some(x) = self.globals.get(&format!("{block}.{v}")) {
            return Ok(x.clone());
        }
        if let Some(x) = self.globals.get(v) {
            return Ok(x.clone());
        }
        if self.ctors.get(v) == Some(&0) {
            return Ok(Value::ctor(v));
        }
        Err(EvalError::Unbound(v.into()))
    }

    fn run(&mut self, c: &Closure, args: &[Value]) -> R<Value> {
        self.tick()?;
        let mut scope: Vec<(String, Value)> = c.params.iter().cloned().zip(args.iter().cloned()).collect();
        for (n, t) in &c.lets {
            let v = self.eval(t, &scope, &c.block)?;
            scope.push((n.clone(), v));
        }
        match &c.body {
            Body::Term(t) => self.eval(t, &scope, &c.block),
            Body::Record(fs) => {
                let vals = fs.iter().map(|(f, l)| Ok((f.clone(), self.var(l, &scope, &c.block)?))).collect::<R<_>>()?;
                Ok(Value::Record(Arc::new(vals)))
            }
        }
    }

    pub fn apply(&mut self, f: Value, args: Vec<Value>) -> R<Value> {
        if args.is_empty() {
            return Ok(f);
        }
        let Value::Fun(c, mut have) = f else { return Err(EvalError::Type(format!("{f} is not a function"))) };
        have.extend(args);
        let n = c.params.len();
        if have.len() < n {
            return Ok(Value::Fun(c, have));
        }
        let rest = have.split_off(n);
        let r = self.run(&c, &have)?;
        self.apply(r, rest)
    }

    fn int(v: Value) -> R<BigInt> {
        match v {
            Value::Int(i) => Ok(i),
            other => Err(EvalError::Type(format!("{other} is not an integer"))),
        }
    }

    fn bool(v: Value) -> R<bool> {
        match v {
            Value::Bool(b) => Ok(b),
            other => Err(EvalError::Type(format!("{other} is not a boolean"))),
        }
    }

    fn prim(&mut self, p: Prim, args: &[Term], scope: &[(String, Value)], block: &str) -> R<Value> {
        if p == Prim::And {
            return Ok(Value::Bool(
                Self::bool(self.eval(&args[0], scope, block)?)? && Self::bool(self.eval(&args[1], scope, block)?)?,
            ));
        }
        let mut vs = args.iter().map(|a| self.eval(a, scope, block)).collect::<R<Vec<_>>>()?.into_iter();
        let mut next = || vs.next().expect("primitive arity");
        Ok(match p {
            Prim::IntEq => Value::Bool(Self::int(next())? == Self::int(next())?),
            Prim::IntLt => Value::Bool(Self::int(next())? < Self::int(next())?),
            Prim::Plus => Value::Int(Self::int(next())? + Self::int(next())?),
            Prim::Minus => Value::Int(Self::int(next())? - Self::int(next())?),
            Prim::Eq => {
                let (a, b) = (next(), next());
                if matches!(a, Value::Fun(..)) || matches!(b, Value::Fun(..)) {
                    return Err(EvalError::Type("equality on functions".into()));
                }
                Value::Bool(a == b)
            }
            Prim::Not => Value::Bool(!Self::bool(next())?),
            Prim::Fst | Prim::Snd => match next() {
                Value::Tuple(mut vs) if vs.len() == 2 => vs.swap_remove(if p == Prim::Fst { 0 } else { 1 }),
                other => return Err(EvalError::Type(format!("{other} is not a pair"))),
            },
            Prim::And => unreachable!(),
        })
    }

    pub fn eval(&mut self, t: &Term, scope: &[(String, Value)], block: &str) -> R<Value> {
        self.tick()?;
        match t {
            Term::Var(v) => self.var(v, scope, block),
            Term::Int(i) => Ok(Value::Int(i.clone())),
            Term::Bool(b) => Ok(Value::Bool(*b)),
            Term::Str(s) => Ok(Value::Str(s.clone())),
            Term::App(h, args) => {
                let f = self.eval(h, scope, block)?;
                let args = args.iter().map(|a| self.eval(a, scope, block)).collect::<R<Vec<_>>>()?;
                self.apply(f, args)
            }
            Term::GenApp(n, args) => {
                let f = self.var(n, scope, block)?;
                let args = args.iter().map(|(_, a)| self.eval(a, scope, block)).collect::<R<Vec<_>>>()?;
                self.apply(f, args)
            }
            Term::Prim(p, args) => self.prim(*p, args, scope, block),
            Term::Tuple(items) => {
                Ok(Value::Tuple(items.iter().map(|a| self.eval(a, scope, block)).collect::<R<Vec<_>>>()?))
            }
            Term::Ctor(c, args) => {
                Ok(Value::Ctor(c.clone(), args.iter().map(|a| self.eval(a, scope, block)).collect::<R<Vec<_>>>()?))
            }
            Term::If(c, a, b) => {
                if Self::bool(self.eval(c, scope, block)?)? {
                    self.eval(a, scope, block)
                } else {
                    self.eval(b, scope, block)
                }
            }
            Term::Match(s, arms) => {
                let v = self.eval(s, scope, block)?;
                for (p, body) in arms {
                    let mut inner = scope.to_vec();
                    if matches(p, &v, &mut inner) {
                        return self.eval(body, &inner, block);
                    }
                }
                Err(EvalError::MatchFailure(v.to_string()))
            }
            Term::Proj { record, field, .. } => match self.eval(record, scope, block)? {
                Value::Record(fs) => {
                    fs.iter().find(|(n, _)| n == field).map(|(_, v)| v.clone()).ok_or(EvalError::Unbound(field.clone()))
                }
                other => Err(EvalError::Type(format!("{other} is not a record"))),
            },
            other => Err(EvalError::Type(format!("cannot evaluate {other:?}"))),
        }
    }

    /// Calls `coll.method` with `args`.
    pub fn call(&mut self, coll: &str, method: &str, args: Vec<Value>) -> R<Value> {
        let methods = self.collections.get(coll).ok_or_else(|| EvalError::UnknownCollection(coll.into()))?;
        if !methods.iter().any(|m| m == method) {
            return Err(EvalError::UnknownMethod(coll.into(), method.into()));
        }
        let f = self.globals[&format!("{coll}.{method}")].clone();
        let expected = match &f {
            Value::Fun(c, have) => c.params.len() - have.len(),
            _ => 0,
        };
        if expected != args.len() {
            return Err(EvalError::Arity { name: format!("{coll}!{method}"), expected, found: args.len() });
        }
        self.steps = 0;
        self.apply(f, args)
    }

    /// Evaluates a closed argument expression (literals, constructors, collection methods).
    pub fn value_of(&mut self, e: &Expr) -> R<Value> {
        let t = closed_term(e)?;
        self.steps = 0;
        self.eval(&t, &[], "")
    }
}

fn closed_term(e: &Expr) -> R<Term> {
    let all = |xs: &[Expr]| xs.iter().map(closed_term).collect::<R<Vec<_>>>();
    Ok(match e {
        Expr::Int(i) => Term::Int(i.clone()),
        Expr::Bool(b) => Term::Bool(*b),
        Expr::Str(s) => Term::Str(s.clone()),
        Expr::Tuple(xs) => Term::Tuple(all(xs)?),
        Expr::Ctor(c, xs) if xs.is_empty() => Term::Var(c.clone()),
        Expr::Ctor(c, xs) => Term::Ctor(c.clone(), all(xs)?),
        Expr::Qualified { coll, method } => Term::Var(format!("{coll}.{method}")),
        Expr::App(h, xs) => Term::App(Box::new(closed_term(h)?), all(xs)?),
        other => return Err(EvalError::Type(format!("argument is not a closed value: {other:?}"))),
    })
}

fn matches(p: &Pat, v: &Value, scope: &mut Vec<(String, Value)>) -> bool {
    match (p, v) {
        (Pat::Wild, _) => true,
        (Pat::Var(x), _) => {
            scope.push((x.clone(), v.clone()));
            true
        }
        (Pat::Int(a), Value::Int(b)) => a == b,
        (Pat::Bool(a), Value::Bool(b)) => a == b,
        (Pat::Str(a), Value::Str(b)) => a == b,
        (Pat::Ctor(c, ps), Value::Ctor(d, vs)) => {
            c == d && ps.len() == vs.len() && ps.iter().zip(vs).all(|(p, v)| matches(p, v, scope))
        }
        (Pat::Tuple(ps), Value::Tuple(vs)) => {
            ps.len() == vs.len() && ps.iter().zip(vs).all(|(p, v)| matches(p, v, scope))
        }
        _ => false,
    }
}

/// Loads the erasure of `p` and calls `coll.method`, on a thread with room for deep recursion.
pub fn eval_call(p: &Program, coll: &str, method: &str, args: Vec<Value>, limit: u64) -> R<Value> {
    let erased = crate::emit::erase(p);
    let (coll, method) = (coll.to_string(), method.to_string());
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(1 << 28)
            .spawn_scoped(s, move || Machine::load(&erased, limit)?.call(&coll, &method, args))
            .expect("spawn evaluator thread")
            .join()
            .expect("evaluator thread")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::analyze_sources;
    use crate::generators::plan_unit;

    fn program(text: &str) -> Program {
        let a = analyze_sources(&[("t.fcl".into(), text.into())]);
        assert!(a.ok(), "{:?}", a.diags);
        plan_unit(&a.unit, &a.env)
    }

    fn pair(v: i64, s: &str) -> Value {
        Value::Tuple(vec![Value::int(v), Value::ctor(s)])
    }

    #[test]
    fn filter_clamps_into_range() {
        let p = program(include_str!("../fixtures/example.fcl"));
        let got = eval_call(&p, "In_5_10", "filter", vec![Value::int(3)], DEFAULT_STEP_LIMIT).unwrap();
        assert_eq!(got, pair(5, "Too_low"));
        let got = eval_call(&p, "In_1_8", "filter", vec![Value::int(9)], DEFAULT_STEP_LIMIT).unwrap();
        assert_eq!(got, pair(8, "Too_high"));
    }

    #[test]
    fn errors() {
        let p = program(include_str!("../fixtures/example.fcl"));
        let e = |c: &str, m: &str, a: Vec<Value>| eval_call(&p, c, m, a, DEFAULT_STEP_LIMIT).unwrap_err();
        assert_eq!(e("Nope", "filter", vec![]), EvalError::UnknownCollection("Nope".into()));
        assert_eq!(e("In_5_10", "lowMin", vec![]), EvalError::UnknownMethod("In_5_10".into(), "lowMin".into()));
        assert!(matches!(e("In_5_10", "filter", vec![]), EvalError::Arity { expected: 1, found: 0, .. }));
    }

    #[test]
    fn recursion_and_step_limit() {
        let p = program(
            "species N =\n  representation = int ;\n  let rec down (n) = if n = 0 then 0 else down (n - 1) ;\nend ;;\ncollection C = implement N ; end ;;\n",
        );
        assert_eq!(eval_call(&p, "C", "down", vec![Value::int(500)], DEFAULT_STEP_LIMIT).unwrap(), Value::int(0));
        assert_eq!(
            eval_call(&p, "C", "down", vec![Value::int(100_000)], 1000).unwrap_err(),
            EvalError::StepLimit(1000)
        );
    }
}
