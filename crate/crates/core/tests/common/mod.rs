#![allow(dead_code)]

pub mod gen;
pub mod props;
pub mod scope;

use focml::driver::{analyze_sources, Analysis};
use std::collections::BTreeMap;

pub const EXAMPLE: &str = include_str!("../../fixtures/example.fcl");
pub const LISTINGS: &str = include_str!("../../fixtures/listings.v");

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

pub fn analyze(text: &str) -> Analysis {
    analyze_sources(&[("t.fcl".into(), text.into())])
}

pub fn logical(text: &str) -> String {
    let a = analyze(text);
    assert!(a.ok(), "{:?}", a.diags);
    focml::emit::logical(&focml::generators::plan_unit(&a.unit, &a.env))
}

fn tokens(text: &str) -> Vec<String> {
    let cs: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let word = |c: char| c.is_alphanumeric() || c == '_' || c == '\'';
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' || c == '$' {
            let j = cs[i + 1..].iter().position(|&d| d == c).map_or(cs.len(), |k| i + 1 + k + 1);
            out.push(cs[i..j].iter().collect());
            i = j;
        } else if word(c) {
            let mut j = i;
            while j < cs.len() && (word(cs[j]) || (cs[j] == '.' && j + 1 < cs.len() && cs[j + 1].is_alphabetic())) {
                j += 1;
            }
            out.push(cs[i..j].iter().collect());
            i = j;
        } else {
            let two: String = cs[i..(i + 2).min(cs.len())].iter().collect();
            if [":=", "->", "&&", "/\\", "\\/"].contains(&two.as_str()) {
                out.push(two);
                i += 2;
            } else {
                out.push(c.to_string());
                i += 1;
            }
        }
    }
    out
}

const STARTS: [&str; 9] = ["Module", "End", "Definition", "Theorem", "Record", "Let", "Inductive", "Axiom", "Fixpoint"];

/// Sentences keyed by (module, keyword, name), whitespace-insensitive, proof holes
/// collapsed and the closing period dropped.
pub fn sentences(text: &str) -> BTreeMap<(String, String, String), Vec<String>> {
    let mut toks = tokens(text);
    let mut norm = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if toks[i] == "apply" && i + 2 < toks.len() {
            let hole = &toks[i + 1];
            if (hole.starts_with('$') && toks[i + 2] == ";") || (hole.starts_with("PROOF_HOLE_") && toks[i + 2] == ".")
            {
                norm.push("apply".to_string());
                norm.push("HOLE".to_string());
                i += 3;
                continue;
            }
        }
        norm.push(std::mem::take(&mut toks[i]));
        i += 1;
    }
    let mut out = BTreeMap::new();
    let mut module = String::new();
    let mut cur: Option<((String, String, String), Vec<String>)> = None;
    let flush = |cur: &mut Option<((String, String, String), Vec<String>)>, out: &mut BTreeMap<_, _>| {
        if let Some((k, mut s)) = cur.take() {
            if s.last().is_some_and(|t| t == ".") {
                s.pop();
            }
            out.insert(k, s);
        }
    };
    let mut j = 0;
    while j < norm.len() {
        let t = &norm[j];
        if STARTS.contains(&t.as_str()) && j + 1 < norm.len() {
            flush(&mut cur, &mut out);
            let name = norm[j + 1].clone();
            match t.as_str() {
                "Module" => {
                    module = name;
                    j += 3;
                    continue;
                }
                "End" => {
                    module.clear();
                    j += 3;
                    continue;
                }
                "Record" => cur = Some(((module.clone(), t.clone(), "me_as_species".into()), vec![])),
                _ => cur = Some(((module.clone(), t.clone(), name), vec![])),
            }
        }
        if let Some((_, s)) = cur.as_mut() {
            s.push(norm[j].clone());
        }
        j += 1;
    }
    flush(&mut cur, &mut out);
    out
}
