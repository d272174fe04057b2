use std::path::{Path, PathBuf};
use std::process::Command;

use frobmod_core::io::parse_document;
use tempfile::TempDir;

const F3: &str = "# A = [[0, 1], [1, 1]] over F_3\np = 3\ne = 1\nring = prime\nn = 2\nmatrix = 0, 1, 1, 1\n";
const POLY: &str = "p = 3\nring = poly\nn = 2\nmatrix = 0, 1, 1, x\ncolumn = 1, 0\n";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn frobmod(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_frobmod")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn simple_reports_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f3.frob", F3);
    let run = frobmod(&["simple", "--r", "1", s(&f)]);
    assert_eq!((run.code, run.stdout.as_str()), (0, "simple: true\n"));
    let run = frobmod(&["simple", "--r", "4", s(&f)]);
    assert_eq!((run.code, run.stdout.as_str()), (2, "simple: false\n"));
}

#[test]
fn certify_prints_four_true_certificates() {
    let run = frobmod(&["certify", "--rmax", "4", "--p", "3"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout.matches("verdict: no line is stable").count(), 4);
    assert!(run.stdout.contains("certificates: 4\nall verdicts: true\n"));
    let machine = frobmod(&["--machine", "certify", "--rmax", "4", "--p", "2"]);
    let record: serde_json::Value = serde_json::from_str(machine.stdout.trim()).unwrap();
    assert_eq!(record["result"]["certificates"].as_array().unwrap().len(), 4);
    assert_eq!(record["result"]["all_verdicts"], true);
}

#[test]
fn errors_exit_one_with_stable_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.frob", "p = 3\nring = poly\nn = 1\nmatrix = x^^2\n");
    let run = frobmod(&["power", s(&bad)]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("error[parse_error]: parse error at line 4"), "{}", run.stderr);

    let zero = write(&dir, "zero.frob", "p = 3\nring = prime\nn = 0\nmatrix = 1\n");
    assert!(frobmod(&["power", s(&zero)]).stderr.contains("error[validation_error]"));

    let poly = write(&dir, "poly.frob", POLY);
    let run = frobmod(&["simple", s(&poly)]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("error[unsupported_ring]"));

    let singular = write(&dir, "sing.frob", "p = 2\nring = prime\nn = 2\nmatrix = 1, 1, 1, 1\n");
    assert!(frobmod(&["geomlength", s(&singular)]).stderr.contains("error[not_unit]"));

    let run = frobmod(&["power", "/nonexistent/file.frob"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("error[invalid_argument]"));

    assert_eq!(frobmod(&["power", "--r", "0", s(&poly)]).code, 1);
    assert_eq!(frobmod(&["power", "--r", "99", s(&poly)]).code, 1);
    assert_eq!(frobmod(&["frobnicate"]).code, 1);
    assert_eq!(frobmod(&["--help"]).code, 0);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f3.frob", F3);
    for verb in ["subspaces", "series", "fixed", "geomlength"] {
        let a = frobmod(&[verb, "--r", "4", s(&f)]);
        let b = frobmod(&[verb, "--r", "4", s(&f)]);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn batch_output_follows_input_order() {
    let dir = TempDir::new().unwrap();
    let paths: Vec<PathBuf> = (0..6)
        .map(|i| {
            let text = if i % 2 == 0 { F3.to_string() } else { F3.replace("0, 1, 1, 1", "1, 0, 0, 1") };
            write(&dir, &format!("m{i}.frob"), &text)
        })
        .collect();
    let mut args = vec!["--machine", "simple", "--batch"];
    args.extend(paths.iter().map(|p| s(p)));
    let run = frobmod(&args);
    assert_eq!(run.code, 2);
    let records: Vec<serde_json::Value> = run.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 6);
    for (i, (rec, path)) in records.iter().zip(&paths).enumerate() {
        assert_eq!(rec["input"], s(path));
        assert_eq!(rec["result"]["simple"], i % 2 == 0);
    }
    let run = frobmod(&["simple", s(&paths[0]), s(&paths[1])]);
    assert_eq!(run.code, 1);
}

#[test]
fn verbs_on_the_examples() {
    let dir = TempDir::new().unwrap();
    let poly = write(&dir, "poly.frob", POLY);
    let run = frobmod(&["power", "--r", "2", s(&poly)]);
    assert!(run.stdout.contains("A_2 = [1, x^3; x, x^4+1]\n"), "{}", run.stdout);
    assert!(run.stdout.contains("det A_2 = 1\n"));

    let run = frobmod(&["root", s(&poly)]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("m used: 2\nverified: true\n"));

    let f = write(&dir, "f3.frob", &format!("{F3}column = 1, 0\n"));
    let run = frobmod(&["descent", s(&f)]);
    assert!(run.stdout.contains("preimage under F^1: span{(1, 2)}"), "{}", run.stdout);
    let run = frobmod(&["geomlength", s(&f)]);
    assert!(run.stdout.starts_with("geometric length: 2\nextension degree s: 4\n"));

    let basis = write(&dir, "basis.frob", "p = 3\nring = poly\nn = 2\nmatrix = 0, 1, 1, x\nbasis = 1, x, 0, 1\n");
    let run = frobmod(&["basechange", "--r", "2", s(&basis)]);
    assert!(run.stdout.contains("B = [2*x^2+1, 2*x^11+x^9+2*x^5+x^3+2*x; x, x^10+x^4+1]\n"), "{}", run.stdout);

    let quotient = write(
        &dir,
        "adjoined.frob",
        "p = 2\nring = quotient:t^4+x*t^2+t\nn = 2\nmatrix = 0, 1, 1, x\ncolumn = t^2, t\n",
    );
    assert_eq!(frobmod(&["fixed", s(&quotient)]).code, 0);
    let run = frobmod(&["adjoined", "--p", "3"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("F(alpha^p, alpha) = (alpha^p, alpha): true"));
}

#[test]
fn example_files_roundtrip() {
    for text in [F3, POLY] {
        let doc = parse_document(text).unwrap();
        assert_eq!(parse_document(&doc.emit()).unwrap(), doc);
    }
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let doc = parse_document(&text).unwrap();
        let emitted = doc.emit();
        assert_eq!(parse_document(&emitted).unwrap().emit(), emitted);
    }
}
