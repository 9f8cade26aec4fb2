pub mod deps;
pub mod diag;
pub mod doc;
pub mod driver;
pub mod emit;
pub mod env;
pub mod eval;
pub mod generators;
pub mod hierarchy;
pub mod ir;
pub mod par;
pub mod report;
pub mod syntax;
pub mod types;
pub mod typing;
