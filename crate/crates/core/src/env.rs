//! Everything known about earlier declarations of a unit.

use crate::deps::SpeciesDeps;
use crate::diag::{DResult, Diag, DiagKind};
use crate::hierarchy::collection::CollectionModel;
use crate::hierarchy::subst::{self, ParamArg, ParamSubst};
use crate::hierarchy::{NfParamKind, NfSpecies};
use crate::syntax::{Expr, Span, UnionTypeDecl};
use crate::types::Ty;
use indexmap::IndexMap;

#[derive(Debug, Clone)]
pub struct SpeciesInfo {
    pub nf: NfSpecies,
    pub deps: SpeciesDeps,
}

/// One exposed member of a collection or parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct IfaceEntry {
    pub name: String,
    pub logical: bool,
    pub ty: Ty,
    pub statement: Option<Expr>,
}

pub type Iface = IndexMap<String, IfaceEntry>;

#[derive(Debug, Clone, Default)]
pub struct Env {
    pub unions: IndexMap<String, UnionTypeDecl>,
    pub species: IndexMap<String, SpeciesInfo>,
    pub collections: IndexMap<String, CollectionModel>,
}

impl Env {
    pub fn species(&self, name: &str) -> Option<&SpeciesInfo> {
        self.species.get(name)
    }

    pub fn species_nf(&self, name: &str) -> Option<&NfSpecies> {
        self.species.get(name).map(|s| &s.nf)
    }

    /// Constructor name to (union, argument types).
    pub fn ctor(&self, name: &str) -> Option<(&UnionTypeDecl, usize)> {
        self.unions.values().find_map(|u| u.ctors.iter().position(|c| c.name == name).map(|i| (u, i)))
    }

    /// Members of species `species` instantiated with `args`, `Self` seen as `carrier`.
    /// Ordered by the species' method order.
    pub fn species_iface(&self, species: &str, args: &ParamSubst, carrier: &str) -> Iface {
        let Some(info) = self.species(species) else { return Iface::new() };
        let carriers = subst::carrier_map(args);
        let self_ty = Ty::Carrier(carrier.to_string());
        info.deps
            .order
            .iter()
            .map(|n| {
                let m = &info.nf.methods[n];
                let ty = m.ty.clone().unwrap_or(Ty::Prop).subst_self(&self_ty).rename_carriers(&carriers);
                let statement = m.statement.as_ref().map(|s| subst::self_to(&subst::expr(s, args), carrier));
                let e = IfaceEntry { name: n.clone(), logical: m.kind.is_logical(), ty, statement };
                (n.clone(), e)
            })
            .collect()
    }

    /// Interface of `coll`, a parameter of `ctx` or a declared collection.
    pub fn iface_of(&self, ctx: Option<&NfSpecies>, coll: &str) -> Option<Iface> {
        if let Some(p) = ctx.and_then(|s| s.param(coll)) {
            return match &p.kind {
                NfParamKind::Collection { iface, args } => Some(self.species_iface(iface, args, coll)),
                NfParamKind::Entity { .. } => None,
            };
        }
        let c = self.collections.get(coll)?;
        let self_ty = Ty::Carrier(coll.to_string());
        Some(
            c.interface
                .iter()
                .map(|(k, e)| {
                    let mut e = e.clone();
                    e.ty = e.ty.subst_self(&self_ty);
                    e.statement = e.statement.map(|s| subst::self_to(&s, coll));
                    (k.clone(), e)
                })
                .collect(),
        )
    }

    /// `actual` must expose every member of `required` at the same type.
    pub fn check_inclusion(&self, required: &Iface, actual: &Iface, what: &str, span: Span) -> DResult<()> {
        for r in required.values() {
            let ok =
                actual.get(&r.name).is_some_and(|a| a.logical == r.logical && a.ty.normalized() == r.ty.normalized());
            if !ok {
                let got = actual.get(&r.name).map(|a| a.ty.to_string()).unwrap_or_else(|| "nothing".into());
                return Err(Diag::error(
                    DiagKind::InterfaceMismatch,
                    span,
                    format!("{what}: `{}` expected at {}, found {got}", r.name, r.ty),
                ));
            }
        }
        Ok(())
    }

    /// Checks collection arguments passed to the parameters of `target` through `beta`,
    /// from the point of view of `ctx` (or globally).
    pub fn check_param_inclusions(
        &self,
        target: &NfSpecies,
        beta: &ParamSubst,
        ctx: &NfSpecies,
        span: Span,
    ) -> DResult<()> {
        self.check_args(target, beta, Some(ctx), span)
    }

    pub fn check_args(
        &self,
        target: &NfSpecies,
        beta: &ParamSubst,
        ctx: Option<&NfSpecies>,
        span: Span,
    ) -> DResult<()> {
        for p in &target.params {
            let NfParamKind::Collection { iface, args } = &p.kind else { continue };
            let Some(ParamArg::Coll(actual)) = beta.get(&p.name) else { continue };
            let required = self.species_iface(iface, &subst::compose(args, beta), actual);
            let Some(have) = self.iface_of(ctx, actual) else {
                return Err(Diag::error(DiagKind::UnknownName, span, format!("`{actual}` is not a collection")));
            };
            self.check_inclusion(
                &required,
                &have,
                &format!("{} for parameter {} of {}", actual, p.name, target.name),
                span,
            )?;
        }
        Ok(())
    }
}
