//! Types of the mini-language.

use crate::syntax::TypeExpr;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ty {
    Var(u32),
    Int,
    Bool,
    Str,
    /// The species carrier.
    SelfTy,
    /// Carrier of a collection parameter or of a declared collection.
    Carrier(String),
    /// Union type, or a rigid type variable (`'a`) while checking a declared type.
    Named(String),
    Arrow(Box<Ty>, Box<Ty>),
    Tuple(Vec<Ty>),
    /// Type of logical statements.
    Prop,
}

impl Ty {
    pub fn arrow(a: Ty, b: Ty) -> Ty {
        Ty::Arrow(Box::new(a), Box::new(b))
    }

    pub fn curried(args: Vec<Ty>, ret: Ty) -> Ty {
        args.into_iter().rev().fold(ret, |acc, a| Ty::arrow(a, acc))
    }

    /// Splits `a -> b -> r` into at most `n` argument types and the rest.
    pub fn uncurry(&self, n: usize) -> (Vec<&Ty>, &Ty) {
        let mut args = Vec::new();
        let mut t = self;
        while args.len() < n {
            match t {
                Ty::Arrow(a, b) => {
                    args.push(&**a);
                    t = b;
                }
                _ => break,
            }
        }
        (args, t)
    }

    pub fn mentions_self(&self) -> bool {
        self.any(&|t| matches!(t, Ty::SelfTy))
    }

    pub fn mentions_carrier(&self, name: &str) -> bool {
        self.any(&|t| matches!(t, Ty::Carrier(c) if c == name))
    }

    fn any(&self, p: &dyn Fn(&Ty) -> bool) -> bool {
        if p(self) {
            return true;
        }
        match self {
            Ty::Arrow(a, b) => a.any(p) || b.any(p),
            Ty::Tuple(ts) => ts.iter().any(|t| t.any(p)),
            _ => false,
        }
    }

    pub fn map(&self, f: &dyn Fn(&Ty) -> Option<Ty>) -> Ty {
        if let Some(t) = f(self) {
            return t;
        }
        match self {
            Ty::Arrow(a, b) => Ty::arrow(a.map(f), b.map(f)),
            Ty::Tuple(ts) => Ty::Tuple(ts.iter().map(|t| t.map(f)).collect()),
            t => t.clone(),
        }
    }

    /// `Self` replaced by `to`.
    pub fn subst_self(&self, to: &Ty) -> Ty {
        self.map(&|t| matches!(t, Ty::SelfTy).then(|| to.clone()))
    }

    /// Carriers renamed through `m`.
    pub fn rename_carriers(&self, m: &HashMap<String, String>) -> Ty {
        self.map(&|t| match t {
            Ty::Carrier(c) => m.get(c).map(|n| Ty::Carrier(n.clone())),
            _ => None,
        })
    }

    pub fn vars(&self, out: &mut Vec<u32>) {
        match self {
            Ty::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            Ty::Arrow(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Ty::Tuple(ts) => ts.iter().for_each(|t| t.vars(out)),
            _ => {}
        }
    }

    /// Renumbers variables from 0 in order of first occurrence.
    pub fn normalized(&self) -> Ty {
        let mut vs = Vec::new();
        self.vars(&mut vs);
        self.map(&|t| match t {
            Ty::Var(v) => Some(Ty::Var(vs.iter().position(|x| x == v).unwrap() as u32)),
            _ => None,
        })
    }
}

fn var_name(v: u32) -> String {
    let letter = (b'a' + (v % 26) as u8) as char;
    if v < 26 {
        format!("'{letter}")
    } else {
        format!("'{letter}{}", v / 26)
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Var(v) => f.write_str(&var_name(*v)),
            Ty::Int => f.write_str("int"),
            Ty::Bool => f.write_str("bool"),
            Ty::Str => f.write_str("string"),
            Ty::SelfTy => f.write_str("Self"),
            Ty::Carrier(c) | Ty::Named(c) => f.write_str(c),
            Ty::Prop => f.write_str("prop"),
            Ty::Arrow(a, b) => {
                if matches!(**a, Ty::Arrow(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
            Ty::Tuple(ts) => {
                f.write_str("(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    if matches!(t, Ty::Arrow(..) | Ty::Tuple(_)) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                f.write_str(")")
            }
        }
    }
}

/// What a type name may refer to.
pub trait TypeScope {
    fn is_union(&self, name: &str) -> bool;
    fn is_carrier(&self, name: &str) -> bool;
}

/// Converts a written type. Type variables map through `vars`, allocating with `fresh`.
pub fn from_type_expr(
    te: &TypeExpr,
    scope: &dyn TypeScope,
    vars: &mut HashMap<String, Ty>,
    fresh: &mut dyn FnMut() -> Ty,
) -> Result<Ty, String> {
    Ok(match te {
        TypeExpr::Name(n) => match n.as_str() {
            "int" => Ty::Int,
            "bool" => Ty::Bool,
            "string" => Ty::Str,
            _ if scope.is_carrier(n) => Ty::Carrier(n.clone()),
            _ if scope.is_union(n) => Ty::Named(n.clone()),
            _ => return Err(format!("unknown type `{n}`")),
        },
        TypeExpr::SelfT => Ty::SelfTy,
        TypeExpr::Var(v) => vars.entry(v.clone()).or_insert_with(|| fresh()).clone(),
        TypeExpr::Arrow(a, b) => {
            Ty::arrow(from_type_expr(a, scope, vars, fresh)?, from_type_expr(b, scope, vars, fresh)?)
        }
        TypeExpr::Tuple(ts) => {
            Ty::Tuple(ts.iter().map(|t| from_type_expr(t, scope, vars, fresh)).collect::<Result<_, _>>()?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let t = Ty::curried(vec![Ty::SelfTy, Ty::SelfTy], Ty::Bool);
        assert_eq!(t.to_string(), "Self -> Self -> bool");
        let t = Ty::arrow(Ty::Tuple(vec![Ty::Carrier("V".into()), Ty::Named("statut_t".into())]), Ty::Var(0));
        assert_eq!(t.to_string(), "(V * statut_t) -> 'a");
    }

    #[test]
    fn uncurry_stops_at_arity() {
        let t = Ty::curried(vec![Ty::Int, Ty::Bool], Ty::Str);
        let (args, ret) = t.uncurry(1);
        assert_eq!(args, vec![&Ty::Int]);
        assert_eq!(*ret, Ty::arrow(Ty::Bool, Ty::Str));
    }

    #[test]
    fn normalize_vars() {
        let t = Ty::arrow(Ty::Var(7), Ty::arrow(Ty::Var(3), Ty::Var(7)));
        assert_eq!(t.normalized(), Ty::arrow(Ty::Var(0), Ty::arrow(Ty::Var(1), Ty::Var(0))));
    }
}
