//! Surface syntax tree.

use num_bigint::BigInt;
use std::fmt;

/// Source position. `file` indexes the list of inputs handed to the driver.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub file: u32,
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Default)]
pub struct CompilationUnit {
    /// Top-level declarations in source order.
    pub items: Vec<TopItem>,
}

#[derive(Debug, Clone)]
pub enum TopItem {
    Type(UnionTypeDecl),
    Species(SpeciesDecl),
    Collection(CollectionDecl),
}

impl TopItem {
    pub fn name(&self) -> &str {
        match self {
            TopItem::Type(t) => &t.name,
            TopItem::Species(s) => &s.name,
            TopItem::Collection(c) => &c.name,
        }
    }

    pub fn span(&self) -> Span {
        match self {
            TopItem::Type(t) => t.span,
            TopItem::Species(s) => s.span,
            TopItem::Collection(c) => c.span,
        }
    }
}

impl CompilationUnit {
    pub fn type_decls(&self) -> impl Iterator<Item = &UnionTypeDecl> {
        self.items.iter().filter_map(|i| match i {
            TopItem::Type(t) => Some(t),
            _ => None,
        })
    }

    pub fn species(&self) -> impl Iterator<Item = &SpeciesDecl> {
        self.items.iter().filter_map(|i| match i {
            TopItem::Species(s) => Some(s),
            _ => None,
        })
    }

    pub fn collections(&self) -> impl Iterator<Item = &CollectionDecl> {
        self.items.iter().filter_map(|i| match i {
            TopItem::Collection(c) => Some(c),
            _ => None,
        })
    }

    pub fn find_species(&self, name: &str) -> Option<&SpeciesDecl> {
        self.species().find(|s| s.name == name)
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct UnionTypeDecl {
    pub name: String,
    pub ctors: Vec<CtorDecl>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CtorDecl {
    pub name: String,
    pub args: Vec<TypeExpr>,
}

#[derive(Debug, Clone)]
pub struct SpeciesDecl {
    pub name: String,
    pub params: Vec<Param>,
    pub inherits: Vec<SpeciesExpr>,
    pub methods: Vec<MethodDecl>,
    pub span: Span,
}

impl SpeciesDecl {
    pub fn method(&self, name: &str) -> Option<&MethodDecl> {
        self.methods.iter().find(|m| m.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub name: String,
    pub kind: ParamKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamKind {
    /// `C is Interface(args)`
    Collection(SpeciesExpr),
    /// `v in C`: a value of the carrier of an earlier collection parameter.
    Entity(String),
}

/// A species name applied to effective arguments, as in `IsIn (X, low, high)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesExpr {
    pub name: String,
    pub args: Vec<Expr>,
}

#[derive(Debug, Clone)]
pub struct CollectionDecl {
    pub name: String,
    pub implements: SpeciesExpr,
    pub span: Span,
}

#[derive(Debug, Clone)]
pub struct MethodDecl {
    pub name: String,
    pub def: MethodDef,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodKind {
    Signature,
    Let,
    LetRec,
    Representation,
    Property,
    Theorem,
    ProofOf,
}

impl MethodKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodKind::Signature => "signature",
            MethodKind::Let => "let",
            MethodKind::LetRec => "let-rec",
            MethodKind::Representation => "representation",
            MethodKind::Property => "property",
            MethodKind::Theorem => "theorem",
            MethodKind::ProofOf => "proof-of",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MethodDef {
    Signature { ty: TypeExpr },
    Let { rec_flag: bool, params: Vec<LetParam>, ret: Option<TypeExpr>, body: Expr },
    Representation { ty: TypeExpr },
    Property { statement: Expr },
    Theorem { statement: Expr, proof: Proof },
    ProofOf { proof: Proof },
}

impl MethodDecl {
    pub fn kind(&self) -> MethodKind {
        match &self.def {
            MethodDef::Signature { .. } => MethodKind::Signature,
            MethodDef::Let { rec_flag: false, .. } => MethodKind::Let,
            MethodDef::Let { rec_flag: true, .. } => MethodKind::LetRec,
            MethodDef::Representation { .. } => MethodKind::Representation,
            MethodDef::Property { .. } => MethodKind::Property,
            MethodDef::Theorem { .. } => MethodKind::Theorem,
            MethodDef::ProofOf { .. } => MethodKind::ProofOf,
        }
    }

    /// Structural comparison ignoring source positions.
    pub fn same_shape(&self, other: &MethodDecl) -> bool {
        self.name == other.name && self.def == other.def
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LetParam {
    pub name: String,
    pub ty: Option<TypeExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TypeExpr {
    /// `int`, `bool`, `string`, a union type, a parameter carrier or a collection.
    Name(String),
    SelfT,
    /// `'a`
    Var(String),
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
    Tuple(Vec<TypeExpr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    /// `=` polymorphic boolean equality
    Eq,
    /// `=0x`
    IntEq,
    /// `<0x`
    IntLt,
    Add,
    Sub,
    /// `&&`
    And,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Eq => "=",
            BinOp::IntEq => "=0x",
            BinOp::IntLt => "<0x",
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::And => "&&",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quant {
    All,
    Ex,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(String),
    Int(BigInt),
    Bool(bool),
    Str(String),
    Ctor(String, Vec<Expr>),
    /// `C!m`
    Qualified {
        coll: String,
        method: String,
    },
    App(Box<Expr>, Vec<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// `~~ e`
    BoolNot(Box<Expr>),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    Tuple(Vec<Expr>),
    Match(Box<Expr>, Vec<(Pattern, Expr)>),
    // Formula layer.
    Quant(Quant, Vec<String>, TypeExpr, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
}

impl Expr {
    pub fn is_formula_node(&self) -> bool {
        matches!(self, Expr::Quant(..) | Expr::Implies(..) | Expr::And(..) | Expr::Or(..) | Expr::Not(..))
    }

    /// First formula connective found anywhere in `self`.
    pub fn find_formula_node(&self) -> Option<&Expr> {
        if self.is_formula_node() {
            return Some(self);
        }
        let mut found = None;
        self.for_each_child(&mut |c| {
            if found.is_none() {
                found = c.find_formula_node();
            }
        });
        found
    }

    pub fn for_each_child<'a>(&'a self, f: &mut dyn FnMut(&'a Expr)) {
        match self {
            Expr::Var(_) | Expr::Int(_) | Expr::Bool(_) | Expr::Str(_) | Expr::Qualified { .. } => {}
            Expr::Ctor(_, args) | Expr::Tuple(args) => args.iter().for_each(f),
            Expr::App(h, args) => {
                f(h);
                args.iter().for_each(f);
            }
            Expr::Binary(_, a, b) | Expr::Implies(a, b) | Expr::And(a, b) | Expr::Or(a, b) => {
                f(a);
                f(b);
            }
            Expr::BoolNot(a) | Expr::Not(a) | Expr::Quant(_, _, _, a) => f(a),
            Expr::If(c, t, e) => {
                f(c);
                f(t);
                f(e);
            }
            Expr::Match(s, arms) => {
                f(s);
                for (_, e) in arms {
                    f(e);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Pattern {
    Wild,
    Var(String),
    Int(BigInt),
    Bool(bool),
    Str(String),
    Ctor(String, Vec<Pattern>),
    Tuple(Vec<Pattern>),
}

impl Pattern {
    pub fn bound_names(&self, out: &mut Vec<String>) {
        match self {
            Pattern::Var(v) => out.push(v.clone()),
            Pattern::Ctor(_, ps) | Pattern::Tuple(ps) => ps.iter().for_each(|p| p.bound_names(out)),
            _ => {}
        }
    }
}

/// `<depth>index`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepLabel {
    pub depth: u32,
    pub index: u32,
}

impl fmt::Display for StepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>{}", self.depth, self.index)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Proof {
    Leaf(Leaf),
    Steps(Vec<ProofStep>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Leaf {
    By(Vec<Fact>),
    Admitted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofStep {
    pub label: StepLabel,
    pub assumes: Vec<(Vec<String>, TypeExpr)>,
    pub hypotheses: Vec<(String, Expr)>,
    pub goal: Goal,
    pub proof: Proof,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Goal {
    Prove(Expr),
    Qed,
}

/// A method reference inside a proof fact: `m` or `C!m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MethodRef {
    pub coll: Option<String>,
    pub name: String,
}

impl fmt::Display for MethodRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coll {
            Some(c) => write!(f, "{}!{}", c, self.name),
            None => f.write_str(&self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Fact {
    Definition(MethodRef),
    Property(MethodRef),
    Step(StepLabel),
    Hypothesis(String),
    Type(String),
}

impl Fact {
    pub fn keyword(&self) -> &'static str {
        match self {
            Fact::Definition(_) => "definition of",
            Fact::Property(_) => "property",
            Fact::Step(_) => "step",
            Fact::Hypothesis(_) => "hypothesis",
            Fact::Type(_) => "type",
        }
    }
}
