use clap::{Parser, Subcommand};
use focml::diag::exit_code;
use focml::driver::{analyze_sources, Analysis};
use focml::eval::{self, Machine};
use focml::syntax::{parser::parse_expr, Expr};
use focml::{doc, emit, generators, report};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "focml", version, about = "Species/collection compiler")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse, normalize, type and analyse.
    Check { files: Vec<PathBuf> },
    /// Dependency report as JSON (`-` or no flag: stdout).
    Deps {
        files: Vec<PathBuf>,
        #[arg(long)]
        json: Option<String>,
    },
    /// Emit the logical and/or computational targets (`-` for stdout).
    Emit {
        files: Vec<PathBuf>,
        #[arg(long)]
        logical: Option<String>,
        #[arg(long)]
        comp: Option<String>,
    },
    /// Evaluate a collection method, e.g. `--call "In_5_10!filter(12)"`.
    Eval {
        files: Vec<PathBuf>,
        #[arg(long)]
        call: String,
        #[arg(long, default_value_t = eval::DEFAULT_STEP_LIMIT)]
        steps: u64,
    },
    /// Method origins, reverted proofs and admitted leaves.
    Doc {
        files: Vec<PathBuf>,
        #[arg(long)]
        out: Option<String>,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("focml: {msg}");
    ExitCode::from(2)
}

fn color() -> bool {
    std::env::var("FOCML_COLOR").is_ok_and(|v| v == "1")
}

/// Reads and analyses `files`, printing diagnostics.
fn load(files: &[PathBuf]) -> Result<(Analysis, Vec<String>), ExitCode> {
    if files.is_empty() {
        return Err(usage("no input files"));
    }
    let mut sources = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(f).map_err(|e| usage(format!("{}: {e}", f.display())))?;
        sources.push((f.display().to_string(), text));
    }
    let names: Vec<String> = sources.iter().map(|(n, _)| n.clone()).collect();
    let a = analyze_sources(&sources);
    for d in &a.diags {
        eprintln!("{}", d.render(&names, color()));
    }
    Ok((a, names))
}

fn write_out(dest: Option<&str>, text: &str) -> Result<(), ExitCode> {
    match dest {
        None | Some("-") => {
            print!("{text}");
            Ok(())
        }
        Some(p) => std::fs::write(Path::new(p), text).map_err(|e| usage(format!("{p}: {e}"))),
    }
}

fn split_call(call: &str) -> Result<(String, String, Vec<Expr>), String> {
    let e = parse_expr(call).map_err(|e| format!("bad call {call:?}: {}", e.message))?;
    match e {
        Expr::App(h, args) => match *h {
            Expr::Qualified { coll, method } => Ok((coll, method, args)),
            _ => Err(format!("expected Coll!method(args), got {call:?}")),
        },
        Expr::Qualified { coll, method } => Ok((coll, method, vec![])),
        _ => Err(format!("expected Coll!method(args), got {call:?}")),
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.cmd {
        Cmd::Check { files } => {
            let (a, _) = load(&files)?;
            Ok(ExitCode::from(exit_code(&a.diags) as u8))
        }
        Cmd::Deps { files, json } => {
            let (a, _) = load(&files)?;
            if !a.ok() {
                return Ok(ExitCode::from(1));
            }
            write_out(json.as_deref(), &report::to_json(&report::build(&a.env)))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Emit { files, logical, comp } => {
            let (a, _) = load(&files)?;
            if !a.ok() {
                return Ok(ExitCode::from(1));
            }
            let plans = generators::plan_unit(&a.unit, &a.env);
            if logical.is_none() && comp.is_none() {
                write_out(None, &emit::logical(&plans))?;
            }
            if let Some(dest) = logical.as_deref() {
                write_out(Some(dest), &emit::logical(&plans))?;
            }
            if let Some(dest) = comp.as_deref() {
                write_out(Some(dest), &emit::computational(&plans))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Eval { files, call, steps } => {
            let (coll, method, args) = split_call(&call).map_err(usage)?;
            let (a, _) = load(&files)?;
            if !a.ok() {
                return Ok(ExitCode::from(1));
            }
            let plans = emit::erase(&generators::plan_unit(&a.unit, &a.env));
            let result = std::thread::Builder::new()
                .stack_size(1 << 28)
                .spawn(move || -> Result<eval::Value, eval::EvalError> {
                    let mut m = Machine::load(&plans, steps)?;
                    let args = args.iter().map(|e| m.value_of(e)).collect::<Result<Vec<_>, _>>()?;
                    m.call(&coll, &method, args)
                })
                .expect("spawn evaluator")
                .join()
                .expect("evaluator thread");
            match result {
                Ok(v) => {
                    println!("{v}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("focml: eval: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Doc { files, out } => {
            let (a, _) = load(&files)?;
            if !a.ok() {
                return Ok(ExitCode::from(1));
            }
            write_out(out.as_deref(), &doc::render(&a.env))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}
