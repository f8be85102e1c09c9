//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact rational equality (tolerance zero). Time limits
//! are wall-clock per criterion and are pinned below.

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde_json::Value;

use qappell::cli::run;

const TOLERANCE: &str = "exact";

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn line(&mut self, id: &str, what: &str, ok: bool, elapsed: Duration, limit: Duration, detail: &str) {
        let within = elapsed <= limit;
        let pass = ok && within;
        // written to the raw handle so the lines survive libtest output capture
        let mut out = std::io::stdout().lock();
        let _ = writeln!(
            out,
            "{id:<4} {what:<52} {}  {:>7.2}s (limit {}s, tolerance {TOLERANCE}) {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
        );
        if !pass {
            self.failures.push(format!("{id}: ok={ok} elapsed={elapsed:?} limit={limit:?} {detail}"));
        }
    }
}

struct Verified {
    code: i32,
    suites: Vec<Value>,
}

fn verify(args: &[&str]) -> Verified {
    let mut argv = vec!["qappell", "verify"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    let suites = doc["suites"].as_array().cloned().unwrap_or_default();
    Verified { code: out.code, suites }
}

/// Passing suites with at least one report each; returns a summary string.
fn summarize(v: &Verified) -> (bool, String) {
    let reports: usize = v.suites.iter().map(|s| s["reports"].as_array().map_or(0, Vec::len)).sum();
    let failed: usize = v
        .suites
        .iter()
        .flat_map(|s| s["reports"].as_array().cloned().unwrap_or_default())
        .filter(|r| r["pass"] != Value::Bool(true))
        .count();
    let findings: usize = v
        .suites
        .iter()
        .flat_map(|s| s["findings"].as_array().cloned().unwrap_or_default())
        .filter(|r| r["pass"] != Value::Bool(true))
        .count();
    let nonempty = !v.suites.is_empty() && v.suites.iter().all(|s| s["reports"].as_array().is_some_and(|r| !r.is_empty()));
    let ok = v.code == 0 && failed == 0 && nonempty;
    let mut detail = format!("[{reports} reports, {failed} failed");
    if findings > 0 {
        detail.push_str(&format!(", {findings} displayed-form discrepancies recorded"));
    }
    detail.push(']');
    (ok, detail)
}

fn timed_verify(gate: &mut Gate, id: &str, what: &str, limit_s: u64, runs: &[&[&str]]) {
    let start = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    for args in runs {
        let (o, d) = summarize(&verify(args));
        ok &= o;
        details.push(d);
    }
    gate.line(id, what, ok, start.elapsed(), Duration::from_secs(limit_s), &details.join(" "));
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn golden_check(args: &[String], file: &str) -> Result<(), String> {
    let out = run(args.iter().cloned());
    let expected = std::fs::read_to_string(golden_dir().join(file)).map_err(|e| format!("{file}: {e}"))?;
    if out.stdout != expected {
        return Err(format!("{file}: output differs from golden file"));
    }
    Ok(())
}

#[test]
fn acceptance() {
    let mut gate = Gate { failures: Vec::new() };

    timed_verify(&mut gate, "C1", "q-kernel identities, n <= 16, default grid", 5, &[&["--suite", "qcore"]]);
    timed_verify(&mut gate, "C2", "q-Leibniz rule, 50 random pairs, n <= 4", 10, &[&["--suite", "leibniz"]]);
    timed_verify(&mut gate, "C3", "bivariate derivative laws, 7 families, n <= 8", 30, &[&["--suite", "derivatives", "--max-n", "8"]]);
    timed_verify(
        &mut gate,
        "C4",
        "routes, T images, A-sequence, addition, n <= 8",
        60,
        &[
            &["--suite", "structure", "--max-n", "8", "--order", "8"],
            &["--suite", "asequence", "--max-n", "8"],
            &["--suite", "addition", "--max-n", "8"],
        ],
    );
    timed_verify(&mut gate, "C5", "characterization, five families, n <= 8", 30, &[&["--suite", "characterization", "--max-n", "8"]]);
    timed_verify(
        &mut gate,
        "C6",
        "operators, quasi tables, generating functions, N = 6",
        60,
        &[&["--suite", "operators", "--max-n", "8"], &["--suite", "genfun", "--order", "6"]],
    );
    timed_verify(&mut gate, "C7", "Mehler formula and inner expansion, N = 5", 300, &[&["--suite", "mehler", "--order", "5"]]);
    timed_verify(&mut gate, "C8", "Rogers formula, N = 5", 120, &[&["--suite", "rogers", "--order", "5"]]);
    timed_verify(&mut gate, "C9", "set algebra group laws (determining series), n <= 8", 60, &[&["--suite", "setalgebra", "--max-n", "8"]]);

    // C10: repeated runs are byte-identical and three invocations match golden files
    let start = Instant::now();
    let grid = golden_dir().join("grid_small.json").to_string_lossy().into_owned();
    let argv = |s: &str| s.split_whitespace().map(String::from).collect::<Vec<_>>();
    let mut verify_small = argv("qappell verify --suite characterization --max-n 3 --grid");
    verify_small.push(grid);
    let table_a = argv("qappell table --family bernoulli --alpha 1 --n 4 --q 1/2 --u 1/3 --vars xy --format csv");
    let table_b = argv("qappell table --family euler --alpha 2 --n 3 --q 2/3 --u 1/2 --vars xyz --quasi");
    let mut problems = Vec::new();
    for args in [&table_a, &table_b, &verify_small] {
        let first = run(args.iter().cloned());
        let second = run(args.iter().cloned());
        if first != second {
            problems.push(format!("non-deterministic: {}", args.join(" ")));
        }
    }
    let mut one_thread = verify_small.clone();
    one_thread.extend(["--threads".to_string(), "1".to_string()]);
    if run(one_thread).stdout != run(verify_small.iter().cloned()).stdout {
        problems.push("output depends on thread count".into());
    }
    for (args, file) in [
        (&table_a, "table_bernoulli_xy.csv"),
        (&table_b, "table_euler_quasi.json"),
        (&verify_small, "verify_characterization.json"),
    ] {
        if let Err(e) = golden_check(args, file) {
            problems.push(e);
        }
    }
    let detail = if problems.is_empty() { "[3 golden files, 4 repeat checks]".to_string() } else { problems.join("; ") };
    gate.line("C10", "CLI determinism and golden files", problems.is_empty(), start.elapsed(), Duration::from_secs(60), &detail);

    assert!(gate.failures.is_empty(), "acceptance failures:\n{}", gate.failures.join("\n"));
}
