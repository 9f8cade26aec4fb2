//! JSON dependency report: species to method to dependency sets.

use crate::deps::MethodDeps;
use crate::env::Env;
use indexmap::IndexMap;

pub type Report = IndexMap<String, IndexMap<String, MethodDeps>>;

pub fn build(env: &Env) -> Report {
    env.species.iter().map(|(name, info)| (name.clone(), info.deps.methods.clone())).collect()
}

pub fn to_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}
