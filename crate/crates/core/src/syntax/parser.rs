//! Recursive descent parser.

use super::ast::*;
use super::lexer::{keyword_text, tokenize, Kw, Tok, Token};
use super::ParseError;

type PResult<T> = Result<T, ParseError>;

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(src: &str, file: u32) -> PResult<Self> {
        Ok(Parser { toks: tokenize(src, file)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    fn at_kw(&self, kw: Kw) -> bool {
        *self.peek() == Tok::Kw(kw)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, kw: Kw) -> bool {
        self.eat(&Tok::Kw(kw))
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(i) => format!("integer `{i}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::TyVar(s) => format!("type variable `'{s}`"),
            Tok::Step(l) => format!("step label `{l}`"),
            Tok::Kw(k) => format!("keyword `{}`", keyword_text(*k)),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", sym(other)),
        }
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError::new(self.span(), format!("expected {expected}, found {}", Self::describe(self.peek()))))
    }

    fn expect(&mut self, t: &Tok) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.error(&format!("`{}`", sym(t)))
        }
    }

    fn expect_kw(&mut self, kw: Kw) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            self.error(&format!("`{}`", keyword_text(kw)))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok(s)
            }
            _ => self.error("identifier"),
        }
    }

    // ---- top level ----

    pub fn parse_unit(&mut self) -> PResult<CompilationUnit> {
        let mut unit = CompilationUnit::default();
        while !self.at(&Tok::Eof) {
            let item = match self.peek() {
                Tok::Kw(Kw::Type) => TopItem::Type(self.type_decl()?),
                Tok::Kw(Kw::Species) => TopItem::Species(self.species()?),
                Tok::Kw(Kw::Collection) => TopItem::Collection(self.collection()?),
                _ => return self.error("`type`, `species` or `collection`"),
            };
            unit.items.push(item);
        }
        Ok(unit)
    }

    fn type_decl(&mut self) -> PResult<UnionTypeDecl> {
        let span = self.span();
        self.expect_kw(Kw::Type)?;
        let name = self.ident()?;
        self.expect(&Tok::Eq)?;
        let mut ctors = Vec::new();
        self.eat(&Tok::Pipe);
        loop {
            let cname = self.ident()?;
            let mut args = Vec::new();
            if self.eat(&Tok::LParen) {
                loop {
                    args.push(self.type_expr()?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(&Tok::RParen)?;
            }
            ctors.push(CtorDecl { name: cname, args });
            if !self.eat(&Tok::Pipe) {
                break;
            }
        }
        self.expect(&Tok::SemiSemi)?;
        Ok(UnionTypeDecl { name, ctors, span })
    }

    fn species_expr(&mut self) -> PResult<SpeciesExpr> {
        let name = self.ident()?;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.expr()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RParen)?;
        }
        Ok(SpeciesExpr { name, args })
    }

    fn species(&mut self) -> PResult<SpeciesDecl> {
        let span = self.span();
        self.expect_kw(Kw::Species)?;
        let name = self.ident()?;
        let mut params = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                let pname = self.ident()?;
                let kind = if self.eat_kw(Kw::Is) {
                    ParamKind::Collection(self.species_expr()?)
                } else if self.eat_kw(Kw::In) {
                    ParamKind::Entity(self.ident()?)
                } else {
                    return self.error("`is` or `in`");
                };
                params.push(Param { name: pname, kind });
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RParen)?;
        }
        self.expect(&Tok::Eq)?;
        let mut inherits = Vec::new();
        let mut methods = Vec::new();
        while !self.at_kw(Kw::End) {
            if self.eat_kw(Kw::Inherit) {
                loop {
                    inherits.push(self.species_expr()?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(&Tok::Semi)?;
            } else {
                methods.push(self.method()?);
            }
        }
        self.expect_kw(Kw::End)?;
        self.expect(&Tok::SemiSemi)?;
        Ok(SpeciesDecl { name, params, inherits, methods, span })
    }

    fn collection(&mut self) -> PResult<CollectionDecl> {
        let span = self.span();
        self.expect_kw(Kw::Collection)?;
        let name = self.ident()?;
        self.expect(&Tok::Eq)?;
        self.expect_kw(Kw::Implement)?;
        let implements = self.species_expr()?;
        self.eat(&Tok::Semi);
        self.eat_kw(Kw::End);
        self.expect(&Tok::SemiSemi)?;
        Ok(CollectionDecl { name, implements, span })
    }

    fn method(&mut self) -> PResult<MethodDecl> {
        let span = self.span();
        let (name, def) = match self.peek() {
            Tok::Kw(Kw::Signature) => {
                self.advance();
                let name = self.ident()?;
                self.expect(&Tok::Colon)?;
                (name, MethodDef::Signature { ty: self.type_expr()? })
            }
            Tok::Kw(Kw::Representation) => {
                self.advance();
                self.expect(&Tok::Eq)?;
                ("rep".to_string(), MethodDef::Representation { ty: self.type_expr()? })
            }
            Tok::Kw(Kw::Let) => {
                self.advance();
                let rec_flag = self.eat_kw(Kw::Rec);
                let name = self.ident()?;
                let mut params = Vec::new();
                if self.eat(&Tok::LParen) {
                    if !self.at(&Tok::RParen) {
                        loop {
                            let pname = self.ident()?;
                            let ty = if self.eat(&Tok::Colon) { Some(self.type_expr()?) } else { None };
                            params.push(LetParam { name: pname, ty });
                            if !self.eat(&Tok::Comma) {
                                break;
                            }
                        }
                    }
                    self.expect(&Tok::RParen)?;
                }
                let ret = if self.eat(&Tok::Colon) { Some(self.type_expr()?) } else { None };
                self.expect(&Tok::Eq)?;
                let body = self.expr()?;
                (name, MethodDef::Let { rec_flag, params, ret, body })
            }
            Tok::Kw(Kw::Property) => {
                self.advance();
                let name = self.ident()?;
                self.expect(&Tok::Colon)?;
                (name, MethodDef::Property { statement: self.formula()? })
            }
            Tok::Kw(Kw::Theorem) => {
                self.advance();
                let name = self.ident()?;
                self.expect(&Tok::Colon)?;
                let statement = self.formula()?;
                // A theorem stated without a proof is still to be proved.
                if !self.eat_kw(Kw::Proof) {
                    (name, MethodDef::Property { statement })
                } else {
                    self.expect(&Tok::Eq)?;
                    let proof = self.proof(1)?;
                    (name, MethodDef::Theorem { statement, proof })
                }
            }
            Tok::Kw(Kw::Proof) => {
                self.advance();
                self.expect_kw(Kw::Of)?;
                let name = self.ident()?;
                self.expect(&Tok::Eq)?;
                (name, MethodDef::ProofOf { proof: self.proof(1)? })
            }
            _ => return self.error("a method declaration"),
        };
        self.expect(&Tok::Semi)?;
        Ok(MethodDecl { name, def, span })
    }

    // ---- proofs ----

    fn proof(&mut self, depth: u32) -> PResult<Proof> {
        match self.peek().clone() {
            Tok::Kw(Kw::Admitted) => {
                self.advance();
                Ok(Proof::Leaf(Leaf::Admitted))
            }
            Tok::Kw(Kw::By) => {
                self.advance();
                Ok(Proof::Leaf(Leaf::By(self.facts()?)))
            }
            Tok::Step(l) if l.depth == depth => {
                let mut steps = Vec::new();
                while let Tok::Step(l) = self.peek().clone() {
                    if l.depth != depth {
                        break;
                    }
                    steps.push(self.step(l)?);
                }
                Ok(Proof::Steps(steps))
            }
            Tok::Step(l) if l.depth < depth => Ok(Proof::Leaf(Leaf::By(Vec::new()))),
            Tok::Step(l) => {
                Err(ParseError::new(self.span(), format!("step label `{l}` has wrong depth, expected depth {depth}")))
            }
            _ => Ok(Proof::Leaf(Leaf::By(Vec::new()))),
        }
    }

    fn step(&mut self, label: StepLabel) -> PResult<ProofStep> {
        self.advance();
        let mut assumes = Vec::new();
        let mut hypotheses = Vec::new();
        loop {
            if self.eat_kw(Kw::Assume) {
                let mut names = vec![self.ident()?];
                while let Tok::Ident(_) = self.peek() {
                    names.push(self.ident()?);
                }
                self.expect(&Tok::Colon)?;
                assumes.push((names, self.type_expr()?));
                self.expect(&Tok::Comma)?;
            } else if self.eat_kw(Kw::Hypothesis) {
                let h = self.ident()?;
                self.expect(&Tok::Colon)?;
                hypotheses.push((h, self.formula()?));
                self.expect(&Tok::Comma)?;
            } else {
                break;
            }
        }
        let goal = if self.eat_kw(Kw::Prove) {
            Goal::Prove(self.formula()?)
        } else if self.eat_kw(Kw::Qed) {
            Goal::Qed
        } else {
            return self.error("`assume`, `hypothesis`, `prove` or `qed`");
        };
        let proof = self.proof(label.depth + 1)?;
        Ok(ProofStep { label, assumes, hypotheses, goal, proof })
    }

    fn method_ref(&mut self) -> PResult<MethodRef> {
        let first = self.ident()?;
        if self.eat(&Tok::Bang) {
            Ok(MethodRef { coll: Some(first), name: self.ident()? })
        } else {
            Ok(MethodRef { coll: None, name: first })
        }
    }

    fn facts(&mut self) -> PResult<Vec<Fact>> {
        let mut out = Vec::new();
        loop {
            let span = self.span();
            match self.peek() {
                Tok::Kw(Kw::Definition) => {
                    self.advance();
                    self.expect_kw(Kw::Of)?;
                    loop {
                        let r = self.method_ref()?;
                        if let Some(c) = &r.coll {
                            return Err(ParseError::new(
                                span,
                                format!(
                                    "cannot unfold `{c}!{}`: definitions of collection methods are encapsulated",
                                    r.name
                                ),
                            ));
                        }
                        out.push(Fact::Definition(r));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                Tok::Kw(Kw::Property) => {
                    self.advance();
                    loop {
                        out.push(Fact::Property(self.method_ref()?));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                Tok::Kw(Kw::Step) => {
                    self.advance();
                    loop {
                        match self.advance() {
                            Tok::Step(l) => out.push(Fact::Step(l)),
                            _ => return Err(ParseError::new(span, "expected step label after `step`")),
                        }
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                Tok::Kw(Kw::Hypothesis) => {
                    self.advance();
                    loop {
                        out.push(Fact::Hypothesis(self.ident()?));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                Tok::Kw(Kw::Type) => {
                    self.advance();
                    loop {
                        out.push(Fact::Type(self.ident()?));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
        if out.is_empty() {
            return self.error("a fact after `by`");
        }
        Ok(out)
    }

    // ---- types ----

    pub fn type_expr(&mut self) -> PResult<TypeExpr> {
        let lhs = self.type_product()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.type_expr()?;
            Ok(TypeExpr::Arrow(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn type_product(&mut self) -> PResult<TypeExpr> {
        let first = self.type_atom()?;
        if !self.at(&Tok::Star) {
            return Ok(first);
        }
        let mut parts = vec![first];
        while self.eat(&Tok::Star) {
            parts.push(self.type_atom()?);
        }
        Ok(TypeExpr::Tuple(parts))
    }

    fn type_atom(&mut self) -> PResult<TypeExpr> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok(TypeExpr::Name(s))
            }
            Tok::Kw(Kw::SelfKw) => {
                self.advance();
                Ok(TypeExpr::SelfT)
            }
            Tok::TyVar(v) => {
                self.advance();
                Ok(TypeExpr::Var(v))
            }
            Tok::LParen => {
                self.advance();
                let t = self.type_expr()?;
                self.expect(&Tok::RParen)?;
                // `(a * b)` stays a tuple; a parenthesised product nested in a product stays grouped.
                Ok(t)
            }
            _ => self.error("a type"),
        }
    }

    // ---- formulas and expressions ----

    pub fn formula(&mut self) -> PResult<Expr> {
        if self.at_kw(Kw::All) || self.at_kw(Kw::Ex) {
            return self.quantifier();
        }
        let lhs = self.or_formula()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(Expr::Implies(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn quantifier(&mut self) -> PResult<Expr> {
        let q = if self.eat_kw(Kw::All) {
            Quant::All
        } else {
            self.expect_kw(Kw::Ex)?;
            Quant::Ex
        };
        let mut vars = vec![self.ident()?];
        while let Tok::Ident(_) = self.peek() {
            vars.push(self.ident()?);
        }
        self.expect(&Tok::Colon)?;
        let ty = self.type_expr()?;
        self.expect(&Tok::Comma)?;
        let body = self.formula()?;
        Ok(Expr::Quant(q, vars, ty, Box::new(body)))
    }

    fn or_formula(&mut self) -> PResult<Expr> {
        let mut lhs = self.and_formula()?;
        while self.eat(&Tok::FOr) {
            let rhs = self.and_formula()?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and_formula(&mut self) -> PResult<Expr> {
        let mut lhs = self.not_formula()?;
        while self.eat(&Tok::FAnd) {
            let rhs = self.not_formula()?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn not_formula(&mut self) -> PResult<Expr> {
        if self.eat(&Tok::Tilde) {
            let inner =
                if self.at_kw(Kw::All) || self.at_kw(Kw::Ex) { self.quantifier()? } else { self.not_formula()? };
            return Ok(Expr::Not(Box::new(inner)));
        }
        self.expr()
    }

    /// Expression level: no formula connectives at the top.
    pub fn expr(&mut self) -> PResult<Expr> {
        match self.peek() {
            Tok::Kw(Kw::If) => {
                self.advance();
                let c = self.expr()?;
                self.expect_kw(Kw::Then)?;
                let t = self.expr()?;
                self.expect_kw(Kw::Else)?;
                let e = self.expr()?;
                Ok(Expr::If(Box::new(c), Box::new(t), Box::new(e)))
            }
            Tok::Kw(Kw::Match) => {
                self.advance();
                let scrut = self.expr()?;
                self.expect_kw(Kw::With)?;
                let mut arms = Vec::new();
                while self.eat(&Tok::Pipe) {
                    let p = self.pattern()?;
                    self.expect(&Tok::Arrow)?;
                    let e = self.expr()?;
                    arms.push((p, e));
                }
                if arms.is_empty() {
                    return self.error("`|` starting a match arm");
                }
                Ok(Expr::Match(Box::new(scrut), arms))
            }
            _ => self.band(),
        }
    }

    fn band(&mut self) -> PResult<Expr> {
        let mut lhs = self.cmp()?;
        while self.eat(&Tok::AndAnd) {
            let rhs = self.cmp()?;
            lhs = Expr::Binary(BinOp::And, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn cmp(&mut self) -> PResult<Expr> {
        let lhs = self.additive()?;
        let op = match self.peek() {
            Tok::Eq => BinOp::Eq,
            Tok::IntEq => BinOp::IntEq,
            Tok::IntLt => BinOp::IntLt,
            _ => return Ok(lhs),
        };
        self.advance();
        let rhs = self.additive()?;
        Ok(Expr::Binary(op, Box::new(lhs), Box::new(rhs)))
    }

    fn additive(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat(&Tok::TildeTilde) {
            return Ok(Expr::BoolNot(Box::new(self.unary()?)));
        }
        if matches!(self.peek(), Tok::Kw(Kw::If) | Tok::Kw(Kw::Match)) {
            return self.expr();
        }
        self.application()
    }

    fn call_args(&mut self) -> PResult<Vec<Expr>> {
        self.expect(&Tok::LParen)?;
        let mut args = Vec::new();
        if !self.at(&Tok::RParen) {
            loop {
                args.push(self.formula()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(&Tok::RParen)?;
        Ok(args)
    }

    fn application(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Ident(name) if *self.peek_at(1) == Tok::Bang => {
                self.advance();
                self.advance();
                let method = self.ident()?;
                let head = Expr::Qualified { coll: name, method };
                if self.at(&Tok::LParen) {
                    let args = self.call_args()?;
                    Ok(Expr::App(Box::new(head), args))
                } else {
                    Ok(head)
                }
            }
            Tok::Ident(name) if starts_upper(&name) => {
                self.advance();
                let args = if self.at(&Tok::LParen) { self.call_args()? } else { Vec::new() };
                Ok(Expr::Ctor(name, args))
            }
            Tok::Ident(name) => {
                self.advance();
                let head = Expr::Var(name);
                if self.at(&Tok::LParen) {
                    let args = self.call_args()?;
                    Ok(Expr::App(Box::new(head), args))
                } else {
                    Ok(head)
                }
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(i) => {
                self.advance();
                Ok(Expr::Int(i))
            }
            Tok::Minus if matches!(self.peek_at(1), Tok::Int(_)) => {
                self.advance();
                let Tok::Int(i) = self.advance() else { unreachable!() };
                Ok(Expr::Int(-i))
            }
            Tok::Str(s) => {
                self.advance();
                Ok(Expr::Str(s))
            }
            Tok::Kw(Kw::True) => {
                self.advance();
                Ok(Expr::Bool(true))
            }
            Tok::Kw(Kw::False) => {
                self.advance();
                Ok(Expr::Bool(false))
            }
            Tok::LParen => {
                self.advance();
                let first = self.formula()?;
                if self.eat(&Tok::Comma) {
                    let mut items = vec![first];
                    loop {
                        items.push(self.formula()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(&Tok::RParen)?;
                    Ok(Expr::Tuple(items))
                } else {
                    self.expect(&Tok::RParen)?;
                    Ok(first)
                }
            }
            _ => self.error("an expression"),
        }
    }

    fn pattern(&mut self) -> PResult<Pattern> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "_" => {
                self.advance();
                Ok(Pattern::Wild)
            }
            Tok::Ident(s) if starts_upper(&s) => {
                self.advance();
                let mut args = Vec::new();
                if self.eat(&Tok::LParen) {
                    loop {
                        args.push(self.pattern()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(&Tok::RParen)?;
                }
                Ok(Pattern::Ctor(s, args))
            }
            Tok::Ident(s) => {
                self.advance();
                Ok(Pattern::Var(s))
            }
            Tok::Int(i) => {
                self.advance();
                Ok(Pattern::Int(i))
            }
            Tok::Minus if matches!(self.peek_at(1), Tok::Int(_)) => {
                self.advance();
                let Tok::Int(i) = self.advance() else { unreachable!() };
                Ok(Pattern::Int(-i))
            }
            Tok::Str(s) => {
                self.advance();
                Ok(Pattern::Str(s))
            }
            Tok::Kw(Kw::True) => {
                self.advance();
                Ok(Pattern::Bool(true))
            }
            Tok::Kw(Kw::False) => {
                self.advance();
                Ok(Pattern::Bool(false))
            }
            Tok::LParen => {
                self.advance();
                let first = self.pattern()?;
                if self.eat(&Tok::Comma) {
                    let mut items = vec![first];
                    loop {
                        items.push(self.pattern()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(&Tok::RParen)?;
                    Ok(Pattern::Tuple(items))
                } else {
                    self.expect(&Tok::RParen)?;
                    Ok(first)
                }
            }
            _ => self.error("a pattern"),
        }
    }

    pub fn at_eof(&self) -> bool {
        self.at(&Tok::Eof)
    }
}

pub fn starts_upper(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_uppercase())
}

fn sym(t: &Tok) -> &'static str {
    match t {
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::Comma => ",",
        Tok::Semi => ";",
        Tok::SemiSemi => ";;",
        Tok::Colon => ":",
        Tok::Eq => "=",
        Tok::IntEq => "=0x",
        Tok::IntLt => "<0x",
        Tok::Arrow => "->",
        Tok::Bang => "!",
        Tok::Pipe => "|",
        Tok::Star => "*",
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::AndAnd => "&&",
        Tok::TildeTilde => "~~",
        Tok::Tilde => "~",
        Tok::FAnd => "/\\",
        Tok::FOr => "\\/",
        _ => "?",
    }
}

/// Parses a standalone expression (used by the CLI `--call` argument).
pub fn parse_expr(src: &str) -> PResult<Expr> {
    let mut p = Parser::new(src, 0)?;
    let e = p.formula()?;
    if !p.at_eof() {
        return p.error("end of input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_source, pretty};

    const EXAMPLE: &str = include_str!("../../fixtures/example.fcl");

    #[test]
    fn running_example_parses() {
        let u = parse_source(EXAMPLE).unwrap();
        let names: Vec<&str> = u.items.iter().map(|i| i.name()).collect();
        assert_eq!(names, ["Data", "OrdData", "TheInt", "statut_t", "IsIn", "IntC", "In_5_10", "In_1_8"]);
        let isin = u.find_species("IsIn").unwrap();
        assert_eq!(isin.params.len(), 3);
        assert_eq!(isin.params[1].kind, ParamKind::Entity("V".into()));
    }

    #[test]
    fn theorem_t_shape() {
        let u = parse_source(include_str!("../../fixtures/theorem_t.fcl")).unwrap();
        let MethodDef::Theorem { proof: Proof::Steps(steps), .. } =
            &u.find_species("Logic").unwrap().method("t").unwrap().def
        else {
            panic!("expected a stepped theorem")
        };
        assert_eq!(steps.len(), 2);
        assert!(steps.iter().all(|s| s.label.depth == 1));
        assert_eq!(steps[0].hypotheses.len(), 3);
        let Proof::Steps(sub) = &steps[0].proof else { panic!("expected sub-proof") };
        assert_eq!(sub.len(), 2);
        assert_eq!(steps[1].goal, Goal::Qed);
    }

    #[test]
    fn precedence() {
        let e = parse_expr("a -> b -> c").unwrap();
        assert!(matches!(e, Expr::Implies(_, ref r) if matches!(**r, Expr::Implies(..))));
        let e = parse_expr("~ a /\\ b \\/ c").unwrap();
        assert!(matches!(e, Expr::Or(..)));
        let e = parse_expr("x + 1 = y - 2 && ~~ z").unwrap();
        assert!(matches!(e, Expr::Binary(BinOp::And, ..)));
        let e = parse_expr("f (-3)").unwrap();
        assert_eq!(e, Expr::App(Box::new(Expr::Var("f".into())), vec![Expr::Int((-3).into())]));
    }

    #[test]
    fn round_trip_example() {
        let u = parse_source(EXAMPLE).unwrap();
        let printed = pretty::unit(&u);
        let again = parse_source(&printed).unwrap();
        assert_eq!(format!("{:?}", strip(&u)), format!("{:?}", strip(&again)));
    }

    fn strip(u: &CompilationUnit) -> Vec<String> {
        u.items
            .iter()
            .map(|i| match i {
                TopItem::Species(s) => format!(
                    "{} {:?} {:?} {:?}",
                    s.name,
                    s.params,
                    s.inherits,
                    s.methods.iter().map(|m| (&m.name, &m.def)).collect::<Vec<_>>()
                ),
                TopItem::Type(t) => format!("{} {:?}", t.name, t.ctors),
                TopItem::Collection(c) => format!("{} {:?}", c.name, c.implements),
            })
            .collect()
    }
}
