mod common;

use common::gen::seed;
use common::*;
use focml::diag::{DiagKind, Severity};
use focml::eval::{eval_call, Value, DEFAULT_STEP_LIMIT};
use focml::generators::plan_unit;
use focml::ir::{Item, Program};
use proptest::test_runner::{Config, TestRunner};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn item<'a>(p: &'a Program, block: &str, name: &str) -> Result<&'a Item, String> {
    p.blocks
        .iter()
        .filter(|b| b.name == block)
        .flat_map(|b| &b.items)
        .find(|it| it.name() == Some(name))
        .ok_or_else(|| format!("{block}.{name} not emitted"))
}

fn binder_names(it: &Item, bound: bool) -> Vec<String> {
    let bs = match it {
        Item::Definition { binders, .. } | Item::Theorem { binders, .. } => binders,
        Item::Record { params, .. } => params,
        _ => return vec![],
    };
    bs.iter().filter(|b| b.is_bound() == bound).map(|b| b.name.clone()).collect()
}

fn golden() -> Outcome {
    let a = analyze(EXAMPLE);
    ensure(a.diags.is_empty(), || format!("diagnostics: {:?}", a.diags))?;
    let p = plan_unit(&a.unit, &a.env);

    let gt = item(&p, "OrdData", "gt")?;
    ensure(binder_names(gt, false) == ["abst_T", "abst_eq", "abst_lt"], || {
        format!("OrdData.gt {:?}", binder_names(gt, false))
    })?;
    let th = item(&p, "TheInt", "ltNotGt")?;
    ensure(binder_names(th, false) == ["abst_T", "abst_eq", "abst_lt"], || {
        format!("TheInt.ltNotGt {:?}", binder_names(th, false))
    })?;
    ensure(binder_names(th, true) == ["abst_gt"], || format!("TheInt.ltNotGt binds {:?}", binder_names(th, true)))?;
    let rec = item(&p, "IsIn", "me_as_species")?;
    let want = ["V_T", "_p_minv_minv", "_p_maxv_maxv", "_p_V_gt"];
    ensure(binder_names(rec, false) == want, || format!("IsIn record {:?}", binder_names(rec, false)))?;

    let expected = sentences(LISTINGS);
    let actual = sentences(&focml::emit::logical(&p));
    let bad: Vec<String> = expected
        .iter()
        .filter(|(k, toks)| actual.get(*k) != Some(toks))
        .map(|((m, kw, n), _)| format!("{m}.{kw} {n}"))
        .collect();
    ensure(bad.is_empty(), || format!("listing mismatch: {}", bad.join(", ")))?;
    Ok(format!("{} listing sentences match", expected.len()))
}

fn rejections() -> Outcome {
    let a = analyze(&fixture("wrong.fcl"));
    ensure(a.diags.iter().any(|d| d.kind == DiagKind::WrongCarrierLeak), || format!("Wrong: {:?}", a.diags))?;

    let a = analyze(&fixture("evenodd.fcl"));
    let cycle = a
        .diags
        .iter()
        .find(|d| d.kind == DiagKind::CycleInDependencies)
        .ok_or_else(|| format!("even/odd: {:?}", a.diags))?;
    let path = cycle.witness.rsplit(": ").next().unwrap_or_default();
    let nodes: Vec<&str> = path.split(" -> ").collect();
    ensure(nodes.len() == 3 && nodes.first() == nodes.last() && nodes[0] != nodes[1], || {
        format!("cycle witness {:?}", cycle.witness)
    })?;

    let a = analyze(&fixture("unproved.fcl"));
    ensure(a.diags.iter().any(|d| d.kind == DiagKind::IncompleteSpecies), || format!("unproved: {:?}", a.diags))?;
    Ok(format!("cycle {path}"))
}

fn invalidation() -> Outcome {
    let isine = fixture("isine.fcl");
    let species_only: String =
        isine.lines().take_while(|l| !l.starts_with("collection")).collect::<Vec<_>>().join("\n");
    let a = analyze(&format!("{EXAMPLE}\n{species_only}\n"));
    ensure(a.ok(), || format!("IsInE alone: {:?}", a.diags))?;
    ensure(
        a.diags.iter().any(|d| {
            d.kind == DiagKind::RevertedProof && d.severity == Severity::Warning && d.witness.contains("lowMin")
        }),
        || format!("no reverted warning: {:?}", a.diags),
    )?;
    let a = analyze(&format!("{EXAMPLE}\n{isine}"));
    ensure(a.diags.iter().any(|d| d.kind == DiagKind::IncompleteSpecies && d.witness.contains("lowMin")), || {
        format!("implement without proof: {:?}", a.diags)
    })?;
    let a = analyze(&format!("{EXAMPLE}\n{}", fixture("isine_admitted.fcl")));
    ensure(a.ok(), || format!("admitted: {:?}", a.diags))?;
    Ok("lowMin reverted, collection refused until admitted".into())
}

/// Direct reading of `filter` with minv = 5, maxv = 10 and strict comparisons.
fn filter_oracle(x: i64) -> (i64, &'static str) {
    let (lo, hi) = (5, 10);
    if x < lo {
        (lo, "Too_low")
    } else if x > hi {
        (hi, "Too_high")
    } else {
        (x, "In_range")
    }
}

const FILTER_TABLE: [(i64, i64, &str); 5] =
    [(3, 5, "Too_low"), (5, 5, "In_range"), (7, 7, "In_range"), (10, 10, "In_range"), (12, 10, "Too_high")];

fn evaluator() -> Outcome {
    let a = analyze(EXAMPLE);
    let p = plan_unit(&a.unit, &a.env);
    let mut rows = Vec::new();
    for (x, v, s) in FILTER_TABLE {
        ensure(filter_oracle(x) == (v, s), || format!("oracle disagrees with the table at {x}"))?;
        let got =
            eval_call(&p, "In_5_10", "filter", vec![Value::int(x)], DEFAULT_STEP_LIMIT).map_err(|e| e.to_string())?;
        let want = Value::Tuple(vec![Value::int(v), Value::ctor(s)]);
        ensure(got == want, || format!("filter({x}) = {got}, want {want}"))?;
        rows.push(format!("{x}->{got}"));
    }
    Ok(rows.join(" "))
}

fn properties() -> Outcome {
    let mut failed = Vec::new();
    for (name, check) in common::props::ALL {
        let mut runner = TestRunner::new(Config {
            cases: 1000,
            max_global_rejects: 100_000,
            failure_persistence: None,
            ..Config::default()
        });
        let strategy = (seed(), proptest::num::u64::ANY);
        if let Err(e) = runner.run(&strategy, |(sd, pick)| check(&sd, pick)) {
            failed.push(format!("{name}: {e}"));
        }
    }
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} suites x 1000 cases", common::props::ALL.len()))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let example = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/example.fcl");
    let run = |tag: &str| -> Result<Vec<Vec<u8>>, String> {
        let outs: Vec<_> = ["json", "v", "ml"].iter().map(|ext| dir.path().join(format!("{tag}.{ext}"))).collect();
        let path = |i: usize| outs[i].to_str().unwrap().to_string();
        let bin = env!("CARGO_BIN_EXE_focml");
        let deps = Command::new(bin).args(["deps", "--json", &path(0), example]).status().map_err(|e| e.to_string())?;
        let emit = Command::new(bin)
            .args(["emit", "--logical", &path(1), "--comp", &path(2), example])
            .status()
            .map_err(|e| e.to_string())?;
        ensure(deps.success() && emit.success(), || "focml failed".into())?;
        outs.iter().map(|p| std::fs::read(p).map_err(|e| e.to_string())).collect()
    };
    let first = run("a")?;
    let second = run("b")?;
    ensure(first == second, || "outputs differ between runs".into())?;
    Ok(format!("{} bytes identical", first.iter().map(Vec::len).sum::<usize>()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("golden example", golden),
        ("rejections", rejections),
        ("proof invalidation", invalidation),
        ("evaluator table", evaluator),
        ("property suites", properties),
        ("determinism", determinism),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(note) => println!("PASS criterion {}: {name} ({note})", i + 1),
            Err(why) => {
                all = false;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
