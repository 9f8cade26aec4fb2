//! Target-neutral generator code, shared by both renderers and the evaluator.

use num_bigint::BigInt;

/// What an abstraction, argument or field stands for. Erasure keeps only values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Carrier,
    Value,
    Proof,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ETy {
    Int,
    Bool,
    Str,
    /// Union type.
    Named(String),
    /// Carrier name in scope (`abst_T`, `_p_V_T`, `rf_T`, `IntC.me_as_carrier`).
    Var(String),
    Arrow(Box<ETy>, Box<ETy>),
    Tuple(Vec<ETy>),
    Set,
    /// Generalized type variable.
    Poly(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prim {
    IntEq,
    IntLt,
    Plus,
    Minus,
    And,
    Not,
    /// Polymorphic equality.
    Eq,
    Fst,
    Snd,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pat {
    Wild,
    Var(String),
    Int(BigInt),
    Bool(bool),
    Str(String),
    Ctor(String, Vec<Pat>),
    Tuple(Vec<Pat>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Int(BigInt),
    Bool(bool),
    Str(String),
    App(Box<Term>, Vec<Term>),
    /// Application of a generator (or collection generator) to lifted arguments.
    GenApp(String, Vec<(Sort, Term)>),
    Prim(Prim, Vec<Term>),
    Tuple(Vec<Term>),
    Ctor(String, Vec<Term>),
    If(Box<Term>, Box<Term>, Box<Term>),
    Match(Box<Term>, Vec<(Pat, Term)>),
    Forall(Vec<String>, ETy, Box<Term>),
    Exists(Vec<String>, ETy, Box<Term>),
    Implies(Box<Term>, Box<Term>),
    And(Box<Term>, Box<Term>),
    Or(Box<Term>, Box<Term>),
    Not(Box<Term>),
    IsTrue(Box<Term>),
    /// `record.(module.field _ ... _)`
    Proj {
        record: Box<Term>,
        module: String,
        field: String,
        holes: usize,
    },
    Type(ETy),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinderForm {
    /// `(x : T)`
    Typed(ETy),
    /// `(h : statement)`
    Stmt(Term),
    /// `(x := e)`
    Bound(Term),
    /// `(x := T)` for carriers.
    BoundTy(ETy),
    /// Plain name.
    Bare,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binder {
    pub name: String,
    pub sort: Sort,
    pub form: BinderForm,
}

impl Binder {
    pub fn is_bound(&self) -> bool {
        matches!(self.form, BinderForm::Bound(_) | BinderForm::BoundTy(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldTy {
    Set,
    Ty(ETy),
    Stmt(Term),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Field {
    pub name: String,
    pub sort: Sort,
    pub ty: FieldTy,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Local {
    pub name: String,
    pub sort: Sort,
    pub value: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Item {
    Inductive {
        name: String,
        ctors: Vec<(String, Vec<ETy>)>,
    },
    Definition {
        name: String,
        rec_flag: bool,
        binders: Vec<Binder>,
        args: Vec<(String, ETy)>,
        ret: ETy,
        body: Term,
    },
    Theorem {
        name: String,
        binders: Vec<Binder>,
        statement: Term,
        hole: String,
        admitted: bool,
    },
    Record {
        params: Vec<Binder>,
        fields: Vec<Field>,
    },
    CollectionCreate {
        binders: Vec<Binder>,
        locals: Vec<Local>,
        /// Record parameters passed to `mk_record`.
        record_args: Vec<(Sort, Term)>,
        /// Locals stored in the record, in field order.
        fields: Vec<(Sort, String)>,
    },
    EffectiveCollection {
        value: Term,
    },
    CarrierDef {
        ty: ETy,
    },
    Projection {
        name: String,
        module: String,
        field: String,
        holes: usize,
        sort: Sort,
    },
}

impl Item {
    /// Name this item defines inside its block, if any.
    pub fn name(&self) -> Option<&str> {
        match self {
            Item::Inductive { name, .. }
            | Item::Definition { name, .. }
            | Item::Theorem { name, .. }
            | Item::Projection { name, .. } => Some(name),
            Item::Record { .. } => Some("me_as_species"),
            Item::CollectionCreate { .. } => Some("collection_create"),
            Item::EffectiveCollection { .. } => Some("effective_collection"),
            Item::CarrierDef { .. } => Some("me_as_carrier"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Types,
    Species,
    Collection,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub name: String,
    pub kind: BlockKind,
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Program {
    pub blocks: Vec<Block>,
}

impl Program {
    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }
}

impl Term {
    pub fn var(s: impl Into<String>) -> Term {
        Term::Var(s.into())
    }

    /// Calls `f` on every direct subterm.
    pub fn for_each_child(&self, f: &mut dyn FnMut(&Term)) {
        match self {
            Term::App(h, args) => {
                f(h);
                args.iter().for_each(|a| f(a));
            }
            Term::GenApp(_, args) => args.iter().for_each(|(_, a)| f(a)),
            Term::Prim(_, args) | Term::Tuple(args) | Term::Ctor(_, args) => args.iter().for_each(|a| f(a)),
            Term::If(a, b, c) => {
                f(a);
                f(b);
                f(c);
            }
            Term::Match(s, arms) => {
                f(s);
                arms.iter().for_each(|(_, b)| f(b));
            }
            Term::Forall(_, _, b) | Term::Exists(_, _, b) | Term::Not(b) | Term::IsTrue(b) => f(b),
            Term::Implies(a, b) | Term::And(a, b) | Term::Or(a, b) => {
                f(a);
                f(b);
            }
            Term::Proj { record, .. } => f(record),
            _ => {}
        }
    }
}
