//! Exit-code and stdout contracts of the installed binary.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tabcode"))
}

fn fixture_csv(dir: &std::path::Path) -> PathBuf {
    let path = dir.join("fig.csv");
    std::fs::write(&path, "x,25\ny,9\nz,6\nw,4\nu,1\nv,1\n").unwrap();
    path
}

#[test]
fn exit_codes_match_failure_classes() {
    let dir = std::env::temp_dir().join(format!("tabcode-bin-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = fixture_csv(&dir);

    // 0: success
    let ok = bin()
        .args(["analyze"])
        .arg(&csv)
        .args(["--scheme", "(2,1),(3,5),..."])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{ok:?}");

    // 2: infeasible budget (below the unconstrained optimum 87)
    let infeasible = bin()
        .args(["optimize"])
        .arg(&csv)
        .args(["--scheme", "(2,1),(3,5),...", "--budget", "86", "--algo", "exact"])
        .output()
        .unwrap();
    assert_eq!(infeasible.status.code(), Some(2), "{infeasible:?}");

    // 3: scheme parse error
    let parse = bin()
        .args(["analyze"])
        .arg(&csv)
        .args(["--scheme", "(0,1)"])
        .output()
        .unwrap();
    assert_eq!(parse.status.code(), Some(3), "{parse:?}");

    // 4: work limit exceeded
    let limited = bin()
        .args(["optimize"])
        .arg(&csv)
        .args(["--scheme", "(2,1),(3,5),...", "--budget", "100"])
        .args(["--algo", "exact", "--work-limit", "10"])
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(4), "{limited:?}");

    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn budget_factor_one_never_loses_to_the_baseline() {
    let dir = std::env::temp_dir().join(format!("tabcode-bin-base-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = fixture_csv(&dir);
    let out = bin()
        .args(["optimize"])
        .arg(&csv)
        .args(["--scheme", "(2,1),(3,5),...", "--budget-factor", "1.0"])
        .args(["--algo", "exact", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let field = |k: &str| {
        text.lines()
            .find(|l| l.starts_with(&format!("{k},")))
            .and_then(|l| l.split_once(','))
            .map(|(_, v)| v.to_string())
            .unwrap_or_else(|| panic!("missing {k} in:\n{text}"))
    };
    let huff: i64 = field("huffman_decode_time").parse().unwrap();
    let opt: i64 = field("optimized_decode_time").parse().unwrap();
    assert!(opt <= huff);
    assert_eq!(field("optimized_length"), "87");

    // determinism: the same invocation yields byte-identical CSV
    let again = bin()
        .args(["optimize"])
        .arg(&csv)
        .args(["--scheme", "(2,1),(3,5),...", "--budget-factor", "1.0"])
        .args(["--algo", "exact", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(again.stdout, text.as_bytes());

    // a 15% relaxation buys the 106 → 76 restructuring
    let relaxed = bin()
        .args(["optimize"])
        .arg(&csv)
        .args(["--scheme", "(2,1),(3,5),...", "--budget-factor", "1.15"])
        .args(["--algo", "exact", "--format", "csv"])
        .output()
        .unwrap();
    let text = String::from_utf8(relaxed.stdout).unwrap();
    assert!(text.contains("budget,100"), "{text}");
    assert!(text.contains("optimized_decode_time,76"), "{text}");
    assert!(text.contains("speedup,1.3947"), "{text}");
    let _ = std::fs::remove_dir_all(&dir);
}
