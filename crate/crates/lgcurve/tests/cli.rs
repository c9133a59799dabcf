//! End-to-end runs of the `lgcurve` binary against golden reports.
//!
//! Set `LGCURVE_UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(sub)
}

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lgcurve"));
    cmd.current_dir(dir("data")).args(args);
    match threads {
        Some(t) => cmd.env("LGCURVE_THREADS", t),
        None => cmd.env_remove("LGCURVE_THREADS"),
    };
    cmd.output().expect("binary runs")
}

/// Runs a machine-format command, checks it against its golden file and
/// returns the parsed report.
fn golden(name: &str, args: &[&str], code: i32) -> Value {
    let mut full = vec!["--format", "machine"];
    full.extend_from_slice(args);
    let first = run(&full, Some("1"));
    let second = run(&full, Some("4"));
    let stderr = String::from_utf8_lossy(&first.stderr);
    assert_eq!(first.status.code(), Some(code), "{name}: {stderr}");
    assert_eq!(
        first.stdout, second.stdout,
        "{name}: output depends on the thread count"
    );
    let text = String::from_utf8(first.stdout).unwrap();
    let path = dir("golden").join(format!("{name}.json"));
    if std::env::var_os("LGCURVE_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(dir("golden")).unwrap();
        std::fs::write(&path, &text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, want, "{name} differs from its golden file");
    serde_json::from_str(&text).unwrap()
}

fn rows(report: &Value, table: &str) -> Vec<Vec<Value>> {
    let t = report["tables"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["name"] == table)
        .unwrap();
    serde_json::from_value(t["rows"].clone()).unwrap()
}

fn failure(args: &[&str]) -> (i32, String) {
    let out = run(args, None);
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn jacobi_fermat_quartic() {
    let r = golden(
        "jacobi_fermat_quartic",
        &["jacobi", "fermat_quartic.toml"],
        0,
    );
    assert_eq!(r["summary"]["milnor"], json!(81));
    let dims: Vec<(i64, u64)> = rows(&r, "jacobi_dims")
        .iter()
        .map(|row| (row[0].as_i64().unwrap(), row[1].as_u64().unwrap()))
        .collect();
    for (deg, dim) in [(0, 1), (4, 19), (8, 1)] {
        assert!(dims.contains(&(deg, dim)), "{dims:?}");
    }
}

#[test]
fn jacobi_small() {
    let r = golden("jacobi_x3", &["jacobi", "x3.toml"], 0);
    assert_eq!(r["summary"]["milnor"], json!(2));
    let (code, err) = failure(&["jacobi", "--require-isolated", "x2y.toml"]);
    assert_eq!(code, 3, "{err}");
    golden("jacobi_x2y", &["jacobi", "x2y.toml"], 0);
}

#[test]
fn hochschild_variants() {
    let r = golden("hh_bm_x2", &["hh", "x2.toml", "--variant", "bm"], 0);
    assert_eq!(
        (r["summary"]["total"].clone(), r["summary"]["odd"].clone()),
        (json!(1), json!(1))
    );
    let r = golden(
        "hh_compact_x3",
        &["hh", "x3.toml", "--variant", "compact-cohomology"],
        0,
    );
    assert_eq!(
        (r["summary"]["total"].clone(), r["summary"]["even"].clone()),
        (json!(2), json!(2))
    );
    for name in ["dual_numbers", "truncated_cubic"] {
        let r = golden(
            &format!("hh_ordinary_{name}"),
            &["hh", &format!("{name}.toml"), "--variant", "ordinary"],
            0,
        );
        assert_eq!(r["summary"]["total"], json!(0), "{name}");
    }
}

#[test]
fn matrix_factorizations() {
    let r = golden(
        "mf_verify_x2",
        &["mf", "x2.toml", "mf_x_x.toml", "verify"],
        0,
    );
    assert_eq!(rows(&r, "verify")[0][3], json!(true));
    for method in ["smith", "truncate"] {
        let r = golden(
            &format!("mf_ext_x5_{method}"),
            &["mf", "x5.toml", "mf_x2_x3.toml", "ext", "--method", method],
            0,
        );
        let ext = rows(&r, "ext");
        assert_eq!(
            (ext[0][2].clone(), ext[0][3].clone()),
            (json!(2), json!(2)),
            "{method}"
        );
    }
    golden(
        "mf_audit_x2",
        &["mf", "x2.toml", "mf_twist_x2.toml", "graded-audit"],
        0,
    );
    golden(
        "mf_verify_x3_bad",
        &["mf", "x3.toml", "mf_x_x.toml", "verify"],
        5,
    );
}

#[test]
fn orbifolds() {
    let r = golden(
        "orbifold_fermat_quartic",
        &["orbifold", "fermat_quartic.toml"],
        0,
    );
    assert_eq!(r["summary"]["class_vector"], json!([1, 22, 1]));
    assert_eq!(r["summary"]["twisted_classes"], json!(3));
    let r = golden(
        "orbifold_fermat_cubic",
        &["orbifold", "fermat_cubic.toml"],
        0,
    );
    assert_eq!(
        (r["summary"]["even"].clone(), r["summary"]["odd"].clone()),
        (json!(2), json!(2))
    );
    assert_eq!(failure(&["orbifold", "x3.toml"]).0, 2);
    assert_eq!(failure(&["orbifold", "x2y_z2.toml"]).0, 6);
}

#[test]
fn koszul() {
    let r = golden("koszul_fermat_cubic", &["koszul", "fermat_cubic.toml"], 0);
    assert_eq!(r["summary"]["wedge_concentrated"], json!(true));
    assert_eq!(r["summary"]["top_spot"], json!(8));
    let wedge: Vec<Value> = rows(&r, "koszul")
        .into_iter()
        .filter(|row| row[0] == json!("wedge"))
        .map(|row| row[2].clone())
        .collect();
    assert_eq!(wedge, [json!(0), json!(0), json!(0), json!(8)]);
}

#[test]
fn usage_errors() {
    assert_eq!(failure(&["jacobi", "missing.toml"]).0, 1);
    assert_eq!(failure(&["frobnicate"]).0, 2);
    assert_eq!(failure(&["jacobi", "x3.toml", "--field", "prime:4"]).0, 2);
    let out = run(&["jacobi", "x3.toml"], Some("many"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn human_format_mirrors_report() {
    let out = run(&["jacobi", "x3.toml"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("lgcurve jacobi (report v1)\n"), "{text}");
    assert!(text.contains("\n[jacobi_dims]\n"), "{text}");
}
