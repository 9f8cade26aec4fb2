//! Documentation listing: methods with their origins, reverted proofs and admitted leaves.

use crate::env::Env;
use crate::hierarchy::NfKind;
use std::fmt::Write;

pub fn render(env: &Env) -> String {
    let mut out = String::new();
    let mut admitted = Vec::new();
    for (name, info) in &env.species {
        let _ = writeln!(out, "species {name}");
        for x in &info.deps.order {
            let m = &info.nf.methods[x];
            let mut line = format!("  {} {x} (from {})", m.kind.as_str(), m.origin);
            if m.kind == NfKind::Theorem && !m.valid_proof {
                line.push_str(" reverted: needs a new proof");
            }
            if m.admitted && m.is_settled() {
                line.push_str(" admitted");
                if m.origin == *name {
                    admitted.push(format!("{name}.{x}"));
                }
            }
            let _ = writeln!(out, "{line}");
        }
    }
    for (name, c) in &env.collections {
        let _ = writeln!(out, "collection {name} implements {}", c.species);
    }
    let _ = writeln!(out, "admitted:");
    for a in &admitted {
        let _ = writeln!(out, "  {a}");
    }
    out
}
