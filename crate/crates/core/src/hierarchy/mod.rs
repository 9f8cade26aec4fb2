//! Inheritance flattening, late binding and proof invalidation.

pub mod collection;
pub mod subst;

use crate::diag::{DResult, Diag, DiagKind};
use crate::env::Env;
use crate::syntax::*;
use crate::types::Ty;
use indexmap::IndexMap;
pub use subst::{ParamArg, ParamSubst};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfKind {
    Signature,
    Let { rec_flag: bool },
    Property,
    Theorem,
}

impl NfKind {
    pub fn is_logical(self) -> bool {
        matches!(self, NfKind::Property | NfKind::Theorem)
    }

    pub fn is_defined(self) -> bool {
        matches!(self, NfKind::Let { .. } | NfKind::Theorem)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NfKind::Signature => "signature",
            NfKind::Let { rec_flag: false } => "let",
            NfKind::Let { rec_flag: true } => "let-rec",
            NfKind::Property => "property",
            NfKind::Theorem => "theorem",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NfMethod {
    pub name: String,
    pub kind: NfKind,
    /// Written type from a `signature`, if any along the path.
    pub declared: Option<TypeExpr>,
    pub params: Vec<LetParam>,
    pub ret: Option<TypeExpr>,
    pub body: Option<Expr>,
    pub statement: Option<Expr>,
    pub proof: Option<Proof>,
    /// Species holding the current version.
    pub origin: String,
    /// Parameters of `origin` in terms of this species.
    pub subst: ParamSubst,
    pub span: Span,
    pub ty: Option<Ty>,
    /// Type the method had before being redefined here.
    pub prior_ty: Option<Ty>,
    pub carrier_decl: bool,
    pub carrier_def: bool,
    pub valid_proof: bool,
    pub admitted: bool,
}

impl NfMethod {
    fn new(name: &str, kind: NfKind, origin: &str, subst: &ParamSubst, span: Span) -> Self {
        NfMethod {
            name: name.to_string(),
            kind,
            declared: None,
            params: Vec::new(),
            ret: None,
            body: None,
            statement: None,
            proof: None,
            origin: origin.to_string(),
            subst: subst.clone(),
            span,
            ty: None,
            prior_ty: None,
            carrier_decl: false,
            carrier_def: false,
            valid_proof: kind == NfKind::Theorem,
            admitted: false,
        }
    }

    /// The method is a complete, usable member: defined function or valid theorem.
    pub fn is_settled(&self) -> bool {
        match self.kind {
            NfKind::Let { .. } => true,
            NfKind::Theorem => self.valid_proof,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NfRep {
    pub ty: TypeExpr,
    pub origin: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NfParamKind {
    /// `P is I(args)`; `args` binds the formals of `I`.
    Collection { iface: String, args: ParamSubst },
    /// `v in P`
    Entity { carrier: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NfParam {
    pub name: String,
    pub kind: NfParamKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NfSpecies {
    pub name: String,
    pub params: Vec<NfParam>,
    pub rep: Option<NfRep>,
    /// Methods in merge order (first appearance).
    pub methods: IndexMap<String, NfMethod>,
    pub span: Span,
}

impl NfSpecies {
    pub fn identity_subst(&self) -> ParamSubst {
        identity(&self.params)
    }

    pub fn param(&self, name: &str) -> Option<&NfParam> {
        self.params.iter().find(|p| p.name == name)
    }

    pub fn is_collection_param(&self, name: &str) -> bool {
        matches!(self.param(name), Some(NfParam { kind: NfParamKind::Collection { .. }, .. }))
    }

    pub fn entity_carrier(&self, name: &str) -> Option<&str> {
        match self.param(name) {
            Some(NfParam { kind: NfParamKind::Entity { carrier }, .. }) => Some(carrier),
            _ => None,
        }
    }

    /// Reverted theorems: inherited proofs whose unfolded definitions changed.
    pub fn reverted(&self) -> impl Iterator<Item = &NfMethod> {
        self.methods.values().filter(|m| m.kind == NfKind::Theorem && !m.valid_proof)
    }
}

pub fn identity(params: &[NfParam]) -> ParamSubst {
    params
        .iter()
        .map(|p| {
            let arg = match p.kind {
                NfParamKind::Collection { .. } => ParamArg::Coll(p.name.clone()),
                NfParamKind::Entity { .. } => ParamArg::Entity(Expr::Var(p.name.clone())),
            };
            (p.name.clone(), arg)
        })
        .collect()
}

/// Binds `formals` to written arguments. `is_coll` says whether a name denotes a collection.
pub fn bind_args(
    formals: &[NfParam],
    args: &[Expr],
    is_coll: &dyn Fn(&str) -> bool,
    what: &str,
    span: Span,
) -> DResult<ParamSubst> {
    if formals.len() != args.len() {
        return Err(Diag::error(
            DiagKind::ArityMismatch,
            span,
            format!("{what} expects {} argument(s), got {}", formals.len(), args.len()),
        ));
    }
    let mut out = ParamSubst::new();
    for (f, a) in formals.iter().zip(args) {
        let arg = match &f.kind {
            NfParamKind::Collection { .. } => {
                let name = match a {
                    Expr::Ctor(n, xs) if xs.is_empty() => n,
                    Expr::Var(n) => n,
                    _ => {
                        return Err(Diag::error(
                            DiagKind::TypeMismatch,
                            span,
                            format!("{what}: parameter `{}` expects a collection, got `{}`", f.name, pretty::expr(a)),
                        ))
                    }
                };
                if !is_coll(name) {
                    return Err(Diag::error(
                        DiagKind::UnknownName,
                        span,
                        format!("{what}: `{name}` is not a collection"),
                    ));
                }
                ParamArg::Coll(name.clone())
            }
            NfParamKind::Entity { .. } => ParamArg::Entity(a.clone()),
        };
        out.insert(f.name.clone(), arg);
    }
    Ok(out)
}

fn instantiate(m: &NfMethod, beta: &ParamSubst) -> NfMethod {
    let carriers = subst::carrier_map(beta);
    let locals: Vec<String> = m.params.iter().map(|p| p.name.clone()).collect();
    NfMethod {
        declared: m.declared.as_ref().map(|t| subst::type_expr(t, beta)),
        params: m
            .params
            .iter()
            .map(|p| LetParam { name: p.name.clone(), ty: p.ty.as_ref().map(|t| subst::type_expr(t, beta)) })
            .collect(),
        ret: m.ret.as_ref().map(|t| subst::type_expr(t, beta)),
        body: m.body.as_ref().map(|b| subst::expr_under(b, beta, &locals)),
        statement: m.statement.as_ref().map(|s| subst::expr(s, beta)),
        proof: m.proof.as_ref().map(|p| subst::proof(p, beta)),
        subst: subst::compose(&m.subst, beta),
        ty: m.ty.as_ref().map(|t| t.rename_carriers(&carriers)),
        prior_ty: None,
        ..m.clone()
    }
}

fn clash(existing: &NfMethod, new: &NfMethod) -> Diag {
    Diag::error(
        DiagKind::TypeMismatch,
        new.span,
        format!(
            "`{}` is a {} in {} but a {} in {}",
            new.name,
            existing.kind.as_str(),
            existing.origin,
            new.kind.as_str(),
            new.origin
        ),
    )
}

/// Late-binding merge of one method version into the table.
fn merge(methods: &mut IndexMap<String, NfMethod>, mut new: NfMethod) -> DResult<()> {
    let Some(old) = methods.get_mut(&new.name) else {
        methods.insert(new.name.clone(), new);
        return Ok(());
    };
    if old.kind.is_logical() != new.kind.is_logical() {
        return Err(clash(old, &new));
    }
    match (old.kind, new.kind) {
        // A declaration never overrides a definition; it is checked against it.
        (NfKind::Let { .. }, NfKind::Signature) => {
            if old.declared.is_none() {
                old.declared = new.declared;
            }
        }
        (NfKind::Theorem, NfKind::Property) => {}
        _ => {
            if new.declared.is_none() {
                new.declared = old.declared.clone();
            }
            new.prior_ty = old.ty.clone().or_else(|| old.prior_ty.clone());
            *old = new;
        }
    }
    Ok(())
}

/// Flattens `decl` against already analysed species.
pub fn normalize(decl: &SpeciesDecl, env: &Env) -> DResult<NfSpecies> {
    let mut params: Vec<NfParam> = Vec::new();
    for p in &decl.params {
        let kind = match &p.kind {
            ParamKind::Collection(e) => {
                let iface = env.species_nf(&e.name).ok_or_else(|| {
                    Diag::error(DiagKind::UnknownName, decl.span, format!("unknown species `{}`", e.name))
                })?;
                let earlier = params.clone();
                let is_coll = |n: &str| {
                    earlier.iter().any(|q| q.name == n && matches!(q.kind, NfParamKind::Collection { .. }))
                        || env.collections.contains_key(n)
                };
                let args = bind_args(&iface.params, &e.args, &is_coll, &format!("parameter `{}`", p.name), decl.span)?;
                NfParamKind::Collection { iface: e.name.clone(), args }
            }
            ParamKind::Entity(c) => NfParamKind::Entity { carrier: c.clone() },
        };
        params.push(NfParam { name: p.name.clone(), kind });
    }

    let mut nf = NfSpecies { name: decl.name.clone(), params, rep: None, methods: IndexMap::new(), span: decl.span };
    for p in &nf.params {
        if let NfParamKind::Collection { iface, args } = &p.kind {
            env.check_args(&env.species[iface].nf, args, Some(&nf), decl.span)?;
        }
    }
    let shell = nf.clone();
    let is_coll = |n: &str| shell.is_collection_param(n) || env.collections.contains_key(n);

    for inh in &decl.inherits {
        let parent = env
            .species_nf(&inh.name)
            .ok_or_else(|| Diag::error(DiagKind::UnknownName, decl.span, format!("unknown species `{}`", inh.name)))?;
        let beta = bind_args(&parent.params, &inh.args, &is_coll, &format!("inherit {}", inh.name), decl.span)?;
        env.check_param_inclusions(parent, &beta, &shell, decl.span)?;
        if let Some(r) = &parent.rep {
            let r = NfRep { ty: subst::type_expr(&r.ty, &beta), ..r.clone() };
            match &nf.rep {
                Some(old) if old.origin != r.origin => {
                    return Err(Diag::error(
                        DiagKind::RepresentationRedefined,
                        decl.span,
                        format!(
                            "representation of {} (from {}) conflicts with the one from {}",
                            decl.name, old.origin, r.origin
                        ),
                    ))
                }
                _ => nf.rep = Some(r),
            }
        }
        for pm in parent.methods.values() {
            merge(&mut nf.methods, instantiate(pm, &beta))?;
        }
    }

    let own = nf.identity_subst();
    for m in &decl.methods {
        let mut nm = match &m.def {
            MethodDef::Representation { ty } => {
                if let Some(old) = &nf.rep {
                    return Err(Diag::error(
                        DiagKind::RepresentationRedefined,
                        m.span,
                        format!("representation of {} already defined in {}", decl.name, old.origin),
                    ));
                }
                nf.rep = Some(NfRep { ty: ty.clone(), origin: decl.name.clone(), span: m.span });
                continue;
            }
            MethodDef::ProofOf { .. } => continue,
            MethodDef::Signature { ty } => {
                let mut x = NfMethod::new(&m.name, NfKind::Signature, &decl.name, &own, m.span);
                x.declared = Some(ty.clone());
                x
            }
            MethodDef::Let { rec_flag, params, ret, body } => {
                let mut x = NfMethod::new(&m.name, NfKind::Let { rec_flag: *rec_flag }, &decl.name, &own, m.span);
                x.params = params.clone();
                x.ret = ret.clone();
                x.body = Some(body.clone());
                x
            }
            MethodDef::Property { statement } => {
                let mut x = NfMethod::new(&m.name, NfKind::Property, &decl.name, &own, m.span);
                x.statement = Some(statement.clone());
                x
            }
            MethodDef::Theorem { statement, proof } => {
                let mut x = NfMethod::new(&m.name, NfKind::Theorem, &decl.name, &own, m.span);
                x.statement = Some(statement.clone());
                x.admitted = collect_leaf_facts(proof).admitted;
                x.proof = Some(proof.clone());
                x
            }
        };
        nm.span = m.span;
        merge(&mut nf.methods, nm)?;
    }

    for m in &decl.methods {
        let MethodDef::ProofOf { proof } = &m.def else { continue };
        let Some(target) = nf.methods.get_mut(&m.name) else {
            return Err(Diag::error(
                DiagKind::UnknownName,
                m.span,
                format!("`proof of {}` names no known property", m.name),
            ));
        };
        if !target.kind.is_logical() {
            return Err(Diag::error(
                DiagKind::TypeMismatch,
                m.span,
                format!("`proof of {}`: `{}` is a {}", m.name, m.name, target.kind.as_str()),
            ));
        }
        target.prior_ty = target.ty.clone();
        target.kind = NfKind::Theorem;
        target.proof = Some(proof.clone());
        target.admitted = collect_leaf_facts(proof).admitted;
        target.valid_proof = true;
        target.origin = decl.name.clone();
        target.subst = own.clone();
        target.span = m.span;
        target.ty = None;
        target.carrier_decl = false;
        target.carrier_def = false;
    }
    Ok(nf)
}

/// Reverts inherited theorems whose `by definition of` targets were redefined since the proof
/// was written. Returns one warning per reverted theorem.
pub fn invalidate_proofs(nf: &mut NfSpecies, env: &Env) -> Vec<Diag> {
    let mut warnings = Vec::new();
    let current: IndexMap<String, String> = nf.methods.iter().map(|(k, m)| (k.clone(), m.origin.clone())).collect();
    for m in nf.methods.values_mut() {
        if m.kind != NfKind::Theorem || m.origin == nf.name {
            continue;
        }
        let Some(origin) = env.species(&m.origin) else { continue };
        let at_origin = &origin.nf.methods[&m.name];
        if !at_origin.valid_proof {
            m.valid_proof = false;
            continue;
        }
        let defs = &origin.deps.methods[&m.name].def;
        let changed: Vec<&String> =
            defs.iter().filter(|d| current.get(*d) != origin.nf.methods.get(*d).map(|x| &x.origin)).collect();
        if m.valid_proof && !changed.is_empty() {
            m.valid_proof = false;
            let names: Vec<String> = changed
                .iter()
                .map(|d| format!("{} (now from {})", d, current.get(*d).map(String::as_str).unwrap_or("?")))
                .collect();
            warnings.push(Diag::warning(
                DiagKind::RevertedProof,
                nf.span,
                format!("{}!{}: proof unfolds redefined {}", nf.name, m.name, names.join(", ")),
            ));
        }
    }
    warnings
}
