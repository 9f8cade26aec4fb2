//! Encapsulation of complete species into collections.

use super::subst::{self, ParamArg, ParamSubst};
use super::{bind_args, NfKind, NfParamKind};
use crate::diag::{DResult, Diag, DiagKind};
use crate::env::{Env, Iface, IfaceEntry};
use crate::syntax::{CollectionDecl, Span, TypeExpr};
use crate::types::Ty;

#[derive(Debug, Clone, PartialEq)]
pub struct CollectionModel {
    pub name: String,
    pub species: String,
    /// Formal parameters of `species` to effective arguments.
    pub args: ParamSubst,
    /// Exposed members, `Self` abstract.
    pub interface: Iface,
    pub rep: TypeExpr,
    pub span: Span,
}

/// What keeps a species from being encapsulated; empty when complete.
pub fn missing(nf: &super::NfSpecies) -> Vec<String> {
    let mut out = Vec::new();
    if nf.rep.is_none() {
        out.push("representation undefined".to_string());
    }
    for m in nf.methods.values() {
        match m.kind {
            NfKind::Signature => out.push(format!("{} undefined", m.name)),
            NfKind::Property => out.push(format!("{} unproved", m.name)),
            NfKind::Theorem if !m.valid_proof => out.push(format!("{} needs a new proof", m.name)),
            _ => {}
        }
    }
    out
}

pub fn make_collection(decl: &CollectionDecl, env: &Env) -> DResult<CollectionModel> {
    let info = env.species(&decl.implements.name).ok_or_else(|| {
        Diag::error(DiagKind::UnknownName, decl.span, format!("unknown species `{}`", decl.implements.name))
    })?;
    let nf = &info.nf;
    let gaps = missing(nf);
    if !gaps.is_empty() {
        return Err(Diag::error(
            DiagKind::IncompleteSpecies,
            decl.span,
            format!("{} from {}: {}", decl.name, nf.name, gaps.join(", ")),
        ));
    }
    let is_coll = |n: &str| env.collections.contains_key(n);
    let args = bind_args(&nf.params, &decl.implements.args, &is_coll, &format!("implement {}", nf.name), decl.span)?;
    env.check_args(nf, &args, None, decl.span)?;
    for p in &nf.params {
        let NfParamKind::Entity { carrier } = &p.kind else { continue };
        let (Some(ParamArg::Entity(e)), Some(ParamArg::Coll(c))) = (args.get(&p.name), args.get(carrier)) else {
            continue;
        };
        let got = crate::typing::type_closed_expr(e, env, decl.span)?;
        let want = Ty::Carrier(c.clone());
        if got != want {
            return Err(Diag::error(
                DiagKind::TypeMismatch,
                decl.span,
                format!("argument for {}: expected {want}, got {got}", p.name),
            ));
        }
    }
    let carriers = subst::carrier_map(&args);
    let interface = info
        .deps
        .order
        .iter()
        .map(|n| {
            let m = &nf.methods[n];
            let e = IfaceEntry {
                name: n.clone(),
                logical: m.kind.is_logical(),
                ty: m.ty.clone().unwrap_or(Ty::Prop).rename_carriers(&carriers),
                statement: m.statement.as_ref().map(|s| subst::expr(s, &args)),
            };
            (n.clone(), e)
        })
        .collect();
    let rep = subst::type_expr(&nf.rep.as_ref().expect("complete species has a representation").ty, &args);
    Ok(CollectionModel { name: decl.name.clone(), species: nf.name.clone(), args, interface, rep, span: decl.span })
}
