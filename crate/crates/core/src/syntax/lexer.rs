use super::ast::{Span, StepLabel};
use super::ParseError;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    TyVar(String),
    Step(StepLabel),
    Kw(Kw),
    LParen,
    RParen,
    Comma,
    Semi,
    SemiSemi,
    Colon,
    Eq,
    IntEq,
    IntLt,
    Arrow,
    Bang,
    Pipe,
    Star,
    Plus,
    Minus,
    AndAnd,
    TildeTilde,
    Tilde,
    FAnd,
    FOr,
    Eof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kw {
    Species,
    Inherit,
    Representation,
    Signature,
    Let,
    Rec,
    Property,
    Theorem,
    Proof,
    Of,
    Collection,
    Implement,
    End,
    Type,
    All,
    Ex,
    If,
    Then,
    Else,
    Match,
    With,
    Is,
    In,
    SelfKw,
    True,
    False,
    Assume,
    Hypothesis,
    Prove,
    Qed,
    By,
    Definition,
    Step,
    Admitted,
}

const KEYWORDS: &[(&str, Kw)] = &[
    ("species", Kw::Species),
    ("inherit", Kw::Inherit),
    ("representation", Kw::Representation),
    ("signature", Kw::Signature),
    ("let", Kw::Let),
    ("rec", Kw::Rec),
    ("property", Kw::Property),
    ("theorem", Kw::Theorem),
    ("proof", Kw::Proof),
    ("of", Kw::Of),
    ("collection", Kw::Collection),
    ("implement", Kw::Implement),
    ("end", Kw::End),
    ("type", Kw::Type),
    ("all", Kw::All),
    ("ex", Kw::Ex),
    ("if", Kw::If),
    ("then", Kw::Then),
    ("else", Kw::Else),
    ("match", Kw::Match),
    ("with", Kw::With),
    ("is", Kw::Is),
    ("in", Kw::In),
    ("Self", Kw::SelfKw),
    ("true", Kw::True),
    ("false", Kw::False),
    ("assume", Kw::Assume),
    ("hypothesis", Kw::Hypothesis),
    ("prove", Kw::Prove),
    ("qed", Kw::Qed),
    ("by", Kw::By),
    ("definition", Kw::Definition),
    ("step", Kw::Step),
    ("admitted", Kw::Admitted),
];

pub fn keyword_text(kw: Kw) -> &'static str {
    KEYWORDS.iter().find(|(_, k)| *k == kw).map(|(s, _)| *s).unwrap()
}

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.iter().any(|(k, _)| *k == s)
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn tokenize(src: &str, file: u32) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let mut line = 1u32;
    let mut col = 1u32;

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let span = Span { file, line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        // (* nested comments *)
        if c == '(' && chars.get(i + 1) == Some(&'*') {
            let mut depth = 0usize;
            loop {
                if i >= chars.len() {
                    return Err(ParseError::new(span, "unterminated comment"));
                }
                if chars[i] == '(' && chars.get(i + 1) == Some(&'*') {
                    depth += 1;
                    bump!();
                    bump!();
                } else if chars[i] == '*' && chars.get(i + 1) == Some(&')') {
                    depth -= 1;
                    bump!();
                    bump!();
                    if depth == 0 {
                        break;
                    }
                } else {
                    bump!();
                }
            }
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        let rest = |k: usize| chars.get(i + k).copied();
        let ident_char = |c: Option<char>| c.is_some_and(|c| c.is_alphanumeric() || c == '_');

        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                bump!();
            }
            let s: String = chars[start..i].iter().collect();
            toks.push(Token { tok: Tok::Int(s.parse().unwrap()), span });
            continue;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while ident_char(chars.get(i).copied()) {
                bump!();
            }
            let s: String = chars[start..i].iter().collect();
            let tok = match KEYWORDS.iter().find(|(k, _)| *k == s) {
                Some((_, kw)) => Tok::Kw(*kw),
                None => Tok::Ident(s),
            };
            toks.push(Token { tok, span });
            continue;
        } else if c == '\'' {
            bump!();
            let start = i;
            while ident_char(chars.get(i).copied()) {
                bump!();
            }
            if start == i {
                return Err(ParseError::new(span, "expected type variable name after `'`"));
            }
            let s: String = chars[start..i].iter().collect();
            toks.push(Token { tok: Tok::TyVar(s), span });
            continue;
        } else if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(ParseError::new(span, "unterminated string literal")),
                    Some('"') => {
                        bump!();
                        break;
                    }
                    Some('\\') => {
                        bump!();
                        match chars.get(i) {
                            Some('n') => s.push('\n'),
                            Some('t') => s.push('\t'),
                            Some(&c) => s.push(c),
                            None => return Err(ParseError::new(span, "unterminated string literal")),
                        }
                        bump!();
                    }
                    Some(&c) => {
                        s.push(c);
                        bump!();
                    }
                }
            }
            toks.push(Token { tok: Tok::Str(s), span });
            continue;
        } else if c == '<' {
            // `<d>k` step label or `<0x`
            let mut j = i + 1;
            while chars.get(j).is_some_and(|c| c.is_ascii_digit()) {
                j += 1;
            }
            if j > i + 1 && chars.get(j) == Some(&'>') {
                let mut k = j + 1;
                while chars.get(k).is_some_and(|c| c.is_ascii_digit()) {
                    k += 1;
                }
                if k > j + 1 {
                    let depth: String = chars[i + 1..j].iter().collect();
                    let index: String = chars[j + 1..k].iter().collect();
                    let label = StepLabel {
                        depth: depth.parse().map_err(|_| ParseError::new(span, "step depth out of range"))?,
                        index: index.parse().map_err(|_| ParseError::new(span, "step index out of range"))?,
                    };
                    while i < k {
                        bump!();
                    }
                    toks.push(Token { tok: Tok::Step(label), span });
                    continue;
                }
            }
            if rest(1) == Some('0') && rest(2) == Some('x') && !ident_char(rest(3)) {
                bump!();
                bump!();
                bump!();
                toks.push(Token { tok: Tok::IntLt, span });
                continue;
            }
            return Err(ParseError::new(span, "unexpected `<`"));
        } else if c == '=' && rest(1) == Some('0') && rest(2) == Some('x') && !ident_char(rest(3)) {
            (Tok::IntEq, 3)
        } else if c == '-' && rest(1) == Some('>') {
            (Tok::Arrow, 2)
        } else if c == ';' && rest(1) == Some(';') {
            (Tok::SemiSemi, 2)
        } else if c == '&' && rest(1) == Some('&') {
            (Tok::AndAnd, 2)
        } else if c == '~' && rest(1) == Some('~') {
            (Tok::TildeTilde, 2)
        } else if c == '/' && rest(1) == Some('\\') {
            (Tok::FAnd, 2)
        } else if c == '\\' && rest(1) == Some('/') {
            (Tok::FOr, 2)
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                '=' => Tok::Eq,
                '!' => Tok::Bang,
                '|' => Tok::Pipe,
                '*' => Tok::Star,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '~' => Tok::Tilde,
                _ => return Err(ParseError::new(span, format!("unexpected character `{c}`"))),
            };
            (t, 1)
        };
        let (tok, len) = tok;
        for _ in 0..len {
            bump!();
        }
        toks.push(Token { tok, span });
    }
    toks.push(Token { tok: Tok::Eof, span: Span { file, line, col } });
    Ok(toks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<Tok> {
        tokenize(s, 0).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn step_labels_and_int_ops() {
        let t = kinds("<2>1 x <0x y =0x z = 0");
        assert_eq!(t[0], Tok::Step(StepLabel { depth: 2, index: 1 }));
        assert_eq!(t[2], Tok::IntLt);
        assert_eq!(t[4], Tok::IntEq);
        assert_eq!(t[6], Tok::Eq);
        assert_eq!(t[7], Tok::Int(0.into()));
    }

    #[test]
    fn comments_are_skipped() {
        let t = kinds("a (* x (* nested *) *) b -- tail\nc");
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn connectives() {
        let t = kinds(r"a /\ b \/ ~ c -> ~~ d && e");
        assert!(t.contains(&Tok::FAnd));
        assert!(t.contains(&Tok::FOr));
        assert!(t.contains(&Tok::Tilde));
        assert!(t.contains(&Tok::TildeTilde));
        assert!(t.contains(&Tok::AndAnd));
        assert!(t.contains(&Tok::Arrow));
    }

    #[test]
    fn positions() {
        let t = tokenize("a\n  b", 3).unwrap();
        assert_eq!(t[1].span, Span { file: 3, line: 2, col: 3 });
    }

    #[test]
    fn bad_char() {
        assert!(tokenize("a # b", 0).is_err());
    }
}
