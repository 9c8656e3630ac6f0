use std::path::{Path, PathBuf};
use std::process::Command;

use phimod::coeff::ECtx;
use phimod_cli::expr::{format_coeff, parse_coeff};
use phimod_cli::report::HEADER;
use tempfile::TempDir;

const STEINBERG: &str = r#"
[tower]
case = "steinberg"
p = 3
m = 2

[characters]
chi1 = "0"
chi2 = "0"

[params]
weights = [[0, 1]]
alpha = ["3"]
fil = ["I2"]
"#;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn phimod(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_phimod"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn scenario(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn expressions_round_trip() {
    let ctx = ECtx::new(3, 6, 1).unwrap();
    for src in [
        "0",
        "1",
        "-2",
        "3*zeta^2 - 1/3",
        "(1 + zeta)^3",
        "pi^-2 * (zeta - 1)",
        "zeta^(-1)",
        "1/(2 + zeta)",
    ] {
        let x = parse_coeff(src, &ctx).unwrap();
        let again = parse_coeff(&format_coeff(&x), &ctx).unwrap();
        assert_eq!(x, again, "{src} -> {}", format_coeff(&x));
    }
    assert_eq!(parse_coeff("zeta^6", &ctx).unwrap(), ctx.one());
    let err = parse_coeff("2 * * zeta", &ctx).unwrap_err();
    assert_eq!(err.col, 5);
    assert!(parse_coeff("1/0", &ctx).is_err());
}

#[test]
fn steinberg_check_is_admissible() {
    let dir = TempDir::new().unwrap();
    let path = scenario(&dir, "st.toml", STEINBERG);
    let r = phimod(&["check", s(&path)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with(HEADER));
    let report: toml::Table = r.stdout.parse().unwrap();
    assert_eq!(report["status"].as_str(), Some("admissible"));
    assert_eq!(report["general"]["t_h"].as_str(), Some("-1"));
    assert_eq!(report["general"]["t_n"].as_str(), Some("-1"));
    assert_eq!(report["oracle"]["agree"].as_bool(), Some(true));

    let path = scenario(
        &dir,
        "st_i1.toml",
        &STEINBERG.replace(r#"fil = ["I2"]"#, r#"fil = ["I1"]"#),
    );
    let r = phimod(&["check", s(&path)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("status = \"inadmissible\""));
}

#[test]
fn malformed_scenarios_exit_2() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (
            "unknown.toml",
            STEINBERG.replace("m = 2", "m = 2\nmystery = 1"),
            "mystery",
        ),
        (
            "case.toml",
            STEINBERG.replace("\"steinberg\"", "\"tempered\""),
            "tower.case",
        ),
        (
            "expr.toml",
            STEINBERG.replace("\"3\"", "\"3 +\""),
            "params.alpha[0]",
        ),
        (
            "fil.toml",
            STEINBERG.replace("\"I2\"", "\"I3\""),
            "I3 needs",
        ),
        (
            "chi.toml",
            STEINBERG.replace("chi1 = \"0\"", "chi1 = \"x\""),
            "characters.chi1",
        ),
    ];
    for (name, text, needle) in cases {
        let path = scenario(&dir, name, &text);
        let r = phimod(&["check", s(&path)]);
        assert_eq!(r.code, 2, "{name}: {}", r.stderr);
        assert!(r.stderr.contains(needle), "{name}: {}", r.stderr);
    }
    let r = phimod(&["check", "/nonexistent/scenario.toml"]);
    assert_eq!(r.code, 2);
}

#[test]
fn even_prime_rejected() {
    let dir = TempDir::new().unwrap();
    let path = scenario(&dir, "p2.toml", &STEINBERG.replace("p = 3", "p = 2"));
    let r = phimod(&["validate", s(&path)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("odd"), "{}", r.stderr);
}

#[test]
fn batches_are_deterministic() {
    let a = phimod(&["batch", "--n", "5", "--seed", "11", "--case", "ps-split"]);
    let b = phimod(&["batch", "--n", "5", "--seed", "11", "--case", "ps-split"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let c = phimod(&["batch", "--n", "5", "--seed", "12", "--case", "ps-split"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn oracle_batch_agrees() {
    let r = phimod(&[
        "oracle",
        "--n",
        "20",
        "--case",
        "sc-unramified",
        "--seed",
        "3",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(
        r.stdout.contains("agreement = \"20/20 agree\""),
        "{}",
        r.stdout
    );
}

#[test]
fn hand_written_module_validates() {
    let dir = TempDir::new().unwrap();
    let path = scenario(&dir, "st.toml", STEINBERG);
    let built = phimod(&["build", s(&path)]);
    assert_eq!(built.code, 0, "{}", built.stderr);
    let report: toml::Table = built.stdout.parse().unwrap();
    let m = report["module"].as_table().unwrap();
    let mut galois = toml::Table::new();
    for g in m["galois"].as_array().unwrap() {
        galois.insert(g["name"].as_str().unwrap().into(), g["mats"].clone());
    }
    let mut module = toml::Table::new();
    for key in ["weights", "frob", "mono", "lines"] {
        module.insert(key.into(), m[key].clone());
    }
    module.insert("galois".into(), galois.into());
    let mut doc: toml::Table = STEINBERG.parse().unwrap();
    doc.remove("params");
    doc.insert("module".into(), module.into());
    let text = toml::to_string(&doc).unwrap();
    let path = scenario(&dir, "module.toml", &text);

    let r = phimod(&["validate", s(&path)]);
    assert_eq!(r.code, 0, "{}\n{}", r.stdout, r.stderr);
    let r = phimod(&["check", s(&path)]);
    assert_eq!(r.code, 0, "{}\n{}", r.stdout, r.stderr);
    let r = phimod(&["classify", s(&path)]);
    assert!(r.stdout.contains("case = \"steinberg\""), "{}", r.stdout);

    // Changing the Frobenius slope breaks N φ = p φ N.
    let broken = text.replacen("(1/3)", "(1/2)", 1);
    assert_ne!(broken, text);
    let path = scenario(&dir, "broken.toml", &broken);
    let r = phimod(&["validate", s(&path)]);
    assert_eq!(r.code, 1, "{}", r.stdout);
    assert!(r.stdout.contains("status = \"invalid\""));
}

#[test]
fn scenario_run_section_and_out_file() {
    let dir = TempDir::new().unwrap();
    let text = format!("{STEINBERG}\n[run]\ncommands = [\"validate\", \"enumerate\"]\n");
    let path = scenario(&dir, "st.toml", &text);
    let out = dir.path().join("report.toml");
    let r = phimod(&[s(&path), "--out", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("command = \"validate\""));
    assert!(r.stdout.contains("partitions = [\"I2\"]"));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), r.stdout);
}
