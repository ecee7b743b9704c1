//! End-to-end tests of the `k3chow` binary against frozen golden files.
//!
//! Regenerate with `UPDATE_GOLDEN=1 cargo test --test cli`.

use std::path::PathBuf;
use std::process::{Command, Output};

use k3_chow::cli::ChiReport;
use k3_chow::{FamilySpec, VerificationReport};

fn k3chow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3chow"))
        .args(args)
        .output()
        .expect("failed to run k3chow")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn check_golden(args: &[&str], golden: &str, expected_code: i32) -> String {
    let output = k3chow(args);
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert_eq!(
        output.status.code(),
        Some(expected_code),
        "k3chow {args:?}: stderr {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let path = golden_path(golden);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    assert_eq!(stdout, expected, "k3chow {args:?} differs from {golden}");
    stdout
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap();
    s.push('\n');
    s
}

#[test]
fn verify_paper_text() {
    let out = check_golden(&["verify-paper"], "verify_paper.txt", 0);
    assert!(out.trim_end().ends_with("moduli dimension: 18, 18, 18"));
    assert!(out.contains("Case II h^0(O_S(1,1)): printed 9, computed 7"));
}

#[test]
fn verify_paper_json_round_trips() {
    let out = check_golden(
        &["verify-paper", "--format", "json"],
        "verify_paper.json",
        0,
    );
    let reports: Vec<VerificationReport> = serde_json::from_str(&out).unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(pretty(&reports), out);
    let raw: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in [
        "family",
        "genus",
        "degree",
        "pairing",
        "picard_lattice",
        "h0_normal",
        "h0_tangent",
        "moduli_dim",
        "certificate",
        "discrepancies",
    ] {
        assert!(raw[0].get(key).is_some(), "missing key {key}");
    }
    for key in ["ambient", "bundle", "polarization"] {
        assert!(
            raw[0]["family"].get(key).is_some(),
            "missing family key {key}"
        );
    }
}

#[test]
fn verify_paper_tex() {
    let out = check_golden(&["verify-paper", "--format", "tex"], "verify_paper.tex", 0);
    for hh in [2, 4, 6] {
        assert!(out.contains(&format!(
            "\\begin{{pmatrix}} 0 & 3 \\\\ 3 & {hh} \\end{{pmatrix}}"
        )));
    }
}

#[test]
fn verify_paper_strict_fails() {
    let output = k3chow(&["verify-paper", "--strict"]);
    assert_eq!(output.status.code(), Some(1));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(
        err.contains("MISMATCH Case II h^0(O_S(1,1)): printed 9 != computed 7"),
        "{err}"
    );
}

#[test]
fn family_lookup() {
    let out = check_golden(&["family", "--genus", "8"], "family_8.txt", 0);
    assert!(out.starts_with("Case I: P^1 x P^2, E = O(2,3), L = O(2,1)"));
    assert!(out.contains("degree 2g-2 = 14"));

    let out = check_golden(
        &["family", "--genus", "100", "--format", "json"],
        "family_100.json",
        0,
    );
    let report: VerificationReport = serde_json::from_str(&out).unwrap();
    assert_eq!(pretty(&report), out);
    assert_eq!(
        (report.genus, report.degree, report.moduli_dim),
        (100, 198, 18)
    );
    assert_eq!(report.family.twist(), 32);
}

#[test]
fn family_below_range() {
    let output = k3chow(&["family", "--genus", "5"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(output.stdout.is_empty());
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(
        err.contains("small genus") && err.contains("[PSY]"),
        "{err}"
    );
}

#[test]
fn family_non_integer_genus() {
    let output = k3chow(&["family", "--genus", "8.5"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn chi_commands() {
    let out = check_golden(
        &["chi", "--ambient", "1,2", "--twist", "2,3"],
        "chi_p1p2_2_3.txt",
        0,
    );
    assert!(out.contains("hirzebruch-riemann-roch: 30") && out.contains("binomial-product: 30"));

    let out = check_golden(
        &[
            "chi",
            "--ambient",
            "1,3",
            "--bundle",
            "1,1;1,3",
            "--twist",
            "1,1",
        ],
        "chi_case2_1_1.txt",
        0,
    );
    assert!(out.contains("koszul: 7") && out.contains("k3-riemann-roch: 7"));

    let out = check_golden(
        &["chi", "--ambient", "1,2", "--twist", "0,0"],
        "chi_p1p2_0_0.txt",
        0,
    );
    assert!(out.contains("hirzebruch-riemann-roch: 1") && out.contains("binomial-product: 1"));

    let out = check_golden(
        &[
            "chi",
            "--ambient",
            "1,4",
            "--bundle",
            "0,3;1,1;1,1",
            "--twist",
            "0,3",
            "--format",
            "json",
        ],
        "chi_case3_0_3.json",
        0,
    );
    let report: ChiReport = serde_json::from_str(&out).unwrap();
    assert_eq!(pretty(&report), out);
    assert_eq!(report.koszul.unwrap().chi, 29);
    assert_eq!(report.k3_riemann_roch, Some(29));
}

#[test]
fn chi_parse_error_names_token() {
    let output = k3chow(&[
        "chi",
        "--ambient",
        "1,2",
        "--bundle",
        "1,1;a,3",
        "--twist",
        "1,1",
    ]);
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("\"a\""), "{err}");
}

#[test]
fn search_commands() {
    let out = check_golden(
        &["search", "--genus", "8", "--max-n", "4", "--max-deg", "4"],
        "search_8.txt",
        0,
    );
    assert!(out.contains("Case I: P^1 x P^2, E = O(2,3), L = O(2,1)"));
    let out = check_golden(
        &["search", "--genus", "9", "--max-n", "3", "--max-deg", "4"],
        "search_9.txt",
        0,
    );
    assert!(out.contains("Case II: P^1 x P^3, E = O(1,1) ⊕ O(1,3), L = O(2,1)"));
    let out = check_golden(
        &["search", "--genus", "3", "--max-n", "2", "--max-deg", "1"],
        "search_none.txt",
        0,
    );
    assert_eq!(out, "none found\n");

    let out = check_golden(
        &[
            "search",
            "--genus",
            "10",
            "--max-n",
            "4",
            "--max-deg",
            "4",
            "--format",
            "json",
        ],
        "search_10.json",
        0,
    );
    let found: Vec<FamilySpec> = serde_json::from_str(&out).unwrap();
    assert_eq!(pretty(&found), out);
    assert!(found
        .iter()
        .any(|f| f.case() == k3_chow::k3_families::CaseLabel::III));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify-paper", "--format", "json"][..],
        &["search", "--genus", "11", "--max-n", "4", "--max-deg", "4"],
        &["family", "--genus", "57", "--format", "tex"],
    ] {
        let a = k3chow(args);
        let b = k3chow(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
