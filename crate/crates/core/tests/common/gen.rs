//! Random well-formed species built on top of the running example, with the
//! dependencies each method is known to have by construction.

use proptest::prelude::*;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Sig,
    Let,
    Prop,
    Thm,
}

#[derive(Debug, Clone)]
pub struct Method {
    pub name: String,
    pub kind: Kind,
    /// Methods named in the body or statement.
    pub uses: BTreeSet<String>,
    pub defs: BTreeSet<String>,
    pub props: BTreeSet<String>,
}

impl Method {
    /// Expected syntactic (decl) dependencies.
    pub fn decl(&self) -> BTreeSet<String> {
        self.uses.iter().chain(&self.defs).chain(&self.props).cloned().collect()
    }
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub text: String,
    pub params: usize,
    pub methods: Vec<Method>,
    /// Lets redefined by the child species `K`, if any.
    pub child: Option<BTreeSet<String>>,
    pub collections: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Seed {
    pub params: usize,
    pub rep: bool,
    pub methods: Vec<(u8, u64)>,
    pub child: Option<u64>,
}

pub fn seed() -> impl Strategy<Value = Seed> {
    (0usize..=2, any::<bool>(), prop::collection::vec((0u8..4, any::<u64>()), 1..=6), prop::option::of(any::<u64>()))
        .prop_map(|(params, rep, methods, child)| Seed { params, rep, methods, child })
}

fn pick(cands: &[String], bits: u64, max: usize) -> BTreeSet<String> {
    cands.iter().enumerate().filter(|(i, _)| bits >> (i % 64) & 1 == 1).map(|(_, c)| c.clone()).take(max).collect()
}

const PARAMS: [&str; 3] = ["", " (P is OrdData)", " (P is OrdData, v in P)"];
const ARGS: [&str; 3] = ["", " (P)", " (P, v)"];
const COLL_ARGS: [&str; 3] = ["", " (IntC)", " (IntC, IntC!fromInt (3))"];

fn sum(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn build(s: &Seed) -> Sample {
    let mut methods: Vec<Method> = Vec::new();
    let mut lines = Vec::new();
    if s.rep {
        lines.push("  representation = int ;".to_string());
    }
    let n = s.methods.len();
    let names: Vec<String> = (0..n).map(|i| format!("m{i}")).collect();
    let kinds: Vec<Kind> =
        s.methods.iter().map(|(k, _)| [Kind::Sig, Kind::Let, Kind::Prop, Kind::Thm][*k as usize]).collect();
    let functions: Vec<String> =
        (0..n).filter(|&i| matches!(kinds[i], Kind::Sig | Kind::Let)).map(|i| names[i].clone()).collect();
    let lets: Vec<String> = (0..n).filter(|&i| kinds[i] == Kind::Let).map(|i| names[i].clone()).collect();
    for (i, &(_, bits)) in s.methods.iter().enumerate() {
        let name = names[i].clone();
        let kind = kinds[i];
        let mut m =
            Method { name: name.clone(), kind, uses: BTreeSet::new(), defs: BTreeSet::new(), props: BTreeSet::new() };
        let param_flag = s.params > 0 && bits >> 60 & 1 == 1;
        match kind {
            Kind::Sig => lines.push(format!("  signature {name} : Self -> int ;")),
            Kind::Let => {
                let earlier: Vec<String> =
                    functions.iter().filter(|f| f[1..].parse::<usize>().unwrap() < i).cloned().collect();
                m.uses = pick(&earlier, bits, 3);
                let mut terms: Vec<String> = m.uses.iter().map(|u| format!("{u} (x)")).collect();
                if s.rep && bits >> 61 & 1 == 1 {
                    terms.push("x".into());
                }
                if param_flag {
                    let probe =
                        if s.params == 2 { "P!lt (v, P!fromInt (0))" } else { "P!eq (P!fromInt (1), P!fromInt (2))" };
                    terms.push(format!("(if {probe} then 1 else 0)"));
                }
                lines.push(format!("  let {name} (x : Self) : int = {} ;", sum(terms)));
            }
            Kind::Prop | Kind::Thm => {
                let others: Vec<String> = functions.iter().filter(|f| **f != name).cloned().collect();
                m.uses = pick(&others, bits, 2);
                let used: Vec<&String> = m.uses.iter().collect();
                let core = match used.as_slice() {
                    [] => "all x : Self, 0 = 0".to_string(),
                    [a] => format!("all x : Self, {a} (x) = 0"),
                    [a, b, ..] => format!("all x : Self, {a} (x) = {b} (x)"),
                };
                let stmt = if param_flag { format!("all y : P, {core} -> ~ P!gt (y, y)") } else { core };
                if kind == Kind::Prop {
                    lines.push(format!("  property {name} : {stmt} ;"));
                } else {
                    m.defs = pick(&lets, bits >> 20, 2);
                    let earlier_logical: Vec<String> = methods
                        .iter()
                        .filter(|o| matches!(o.kind, Kind::Prop | Kind::Thm))
                        .map(|o| o.name.clone())
                        .collect();
                    m.props = pick(&earlier_logical, bits >> 40, 2);
                    let mut facts = Vec::new();
                    if !m.defs.is_empty() {
                        facts.push(format!("definition of {}", m.defs.iter().cloned().collect::<Vec<_>>().join(", ")));
                    }
                    if !m.props.is_empty() {
                        facts.push(format!("property {}", m.props.iter().cloned().collect::<Vec<_>>().join(", ")));
                    }
                    let proof =
                        if facts.is_empty() { "admitted".to_string() } else { format!("by {}", facts.join(" ")) };
                    lines.push(format!("  theorem {name} : {stmt}\n  proof = {proof} ;"));
                }
            }
        }
        methods.push(m);
    }

    let mut text = String::from(super::EXAMPLE);
    text.push_str(&format!("\nspecies R{} =\n{}\nend ;;\n", PARAMS[s.params], lines.join("\n")));
    let complete = s.rep && methods.iter().all(|m| matches!(m.kind, Kind::Let | Kind::Thm));
    let mut collections = Vec::new();
    if complete {
        text.push_str(&format!("collection CR = implement R{} ; end ;;\n", COLL_ARGS[s.params]));
        collections.push("CR".into());
    }
    let child = s.child.map(|bits| {
        let redefined = pick(&lets, bits, 3);
        let body: String = redefined.iter().map(|l| format!("  let {l} (x : Self) : int = 1 ;\n")).collect();
        text.push_str(&format!("species K{} =\n  inherit R{} ;\n{body}end ;;\n", PARAMS[s.params], ARGS[s.params]));
        let reverted = methods.iter().any(|m| m.kind == Kind::Thm && m.defs.iter().any(|d| redefined.contains(d)));
        if complete && !reverted {
            text.push_str(&format!("collection CK = implement K{} ; end ;;\n", COLL_ARGS[s.params]));
            collections.push("CK".into());
        }
        redefined
    });
    Sample { text, params: s.params, methods, child, collections }
}
