use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use maxmin::{verify_certificate, Certificate, Matrix, Scalar};
use maxmin_cli::MatrixDocument;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxmin"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn temp_matrix(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn rank_reports() {
    let one = stdout(&["rank", path(&data("example1.txt"))]);
    assert!(one.starts_with("rank 3\n"));
    assert!(one.contains("trapezoidal cols 4 3 2 1"));
    assert!(stdout(&["rank", path(&data("example2.txt"))]).starts_with("rank 2\n"));
    assert!(stdout(&["rank", path(&data("constant.txt"))]).starts_with("rank 0\n"));
}

#[test]
fn dim_reports() {
    assert_eq!(stdout(&["dim", path(&data("example1.txt"))]), "dim 3\n");
    assert_eq!(stdout(&["dim", path(&data("example2.txt"))]), "dim 2\n");
    let oracle = stdout(&["dim", "--oracle", path(&data("example2.txt"))]);
    assert!(oracle.starts_with("dim 2, oracle ≥ 2\n"), "{oracle}");
    let coarse = stdout(&[
        "dim",
        "--oracle",
        "--grid",
        "50",
        path(&data("example1.txt")),
    ]);
    // At 1/50 the boxes no longer fit between the entries, so the bound is weaker.
    assert!(coarse.starts_with("dim 3, oracle ≥ "), "{coarse}");
}

#[test]
fn trapezoid_reports() {
    let out = stdout(&["trapezoid", path(&data("example1.txt"))]);
    assert!(out.contains("row order 1 2 3\ncolumn order 4 3 2 1\n"));
    assert!(out.contains("  0.04 0.03 0.02 0.01\n"));
    assert_eq!(
        stdout(&["trapezoid", path(&data("constant.txt"))]),
        "not strongly regular\n"
    );
    let already = temp_matrix("2 3\n.9 .1 .1\n.2 .8 .1\n");
    assert!(stdout(&["trapezoid", path(already.path())])
        .contains("row order 1 2\ncolumn order 1 2 3\n"));
}

#[test]
fn solve_reports() {
    let file = data("example1.txt");
    let out = stdout(&["solve", path(&file), ".04", ".07", ".10"]);
    assert!(out.contains("principal 1 1 0.1 0.07\nsolves: yes\n"));
    // These coefficients coincide with entries; (1, .10, .07, .04) also solves.
    assert!(out.contains("unique (⊕x=1): no"));
    let unique = stdout(&["solve", path(&file), ".035", ".065", ".095"]);
    assert!(unique.contains("unique (⊕x=1): yes"), "{unique}");
    assert!(stdout(&["solve", path(&file), ".5", ".5", ".5"]).contains("no solution"));
    assert!(stdout(&["solve", path(&file), ".04", ".06", ".1"]).contains("solves: yes"));
}

#[test]
fn segment_reports() {
    let out = stdout(&["segment", "-x", ".2", ".5", "-y", ".7", ".6"]);
    assert!(
        out.contains("comparable\npieces 3\nbreakpoints 0.2 0.5 0.6 0.7\n"),
        "{out}"
    );
    assert_eq!(
        stdout(&["segment", "-x", ".3", ".3", "-y", ".3", ".3"]),
        "point (0.3 0.3)\n"
    );
    let inc = stdout(&["segment", "-x", ".2", ".7", "-y", ".6", ".3"]);
    assert!(inc.starts_with("incomparable, junction (0.6 0.7)\n"));
}

#[test]
fn member_reports() {
    let file = data("example1.txt");
    let column = stdout(&["member", path(&file), ".02", ".06", ".10"]);
    assert!(column.starts_with("member\nwitness "));
    assert_eq!(
        stdout(&["member", path(&file), ".5", ".5", ".5"]),
        "not member\nfailing row 1\n"
    );
    assert!(stdout(&["member", path(&file), ".035", ".065", ".095"]).starts_with("member\n"));
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("hull.svg");
    let out = stdout(&[
        "plot2d",
        path(&data("square.txt")),
        "--resolution",
        "200",
        "-o",
        path(&svg),
    ]);
    assert!(out.contains("of 40401 lattice points"));
    let body = std::fs::read_to_string(&svg).unwrap();
    assert!(body.contains(r#"version="1.1""#) && body.ends_with("</svg>\n"));
    assert_eq!(body.matches("<circle").count(), 2);
}

#[test]
fn exit_codes() {
    let svg = std::env::temp_dir().join("maxmin-unused.svg");
    let zero = run(&[
        "plot2d",
        path(&data("square.txt")),
        "--resolution",
        "0",
        "-o",
        path(&svg),
    ]);
    assert_eq!(zero.status.code(), Some(2));
    let tall = run(&["plot2d", path(&data("example1.txt")), "-o", path(&svg)]);
    assert_eq!(tall.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&tall.stderr).contains("plot requires d=2"));

    let bad = temp_matrix("2 2\n.1 .2\n.3 1.4\n");
    let out = run(&["rank", path(bad.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":3:4:"));

    assert_eq!(
        run(&["member", path(&data("example1.txt")), ".1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["rank", "/nonexistent/matrix.txt"]).status.code(),
        Some(2)
    );
    // A negative verdict is still a successful run.
    assert_eq!(
        run(&["trapezoid", path(&data("constant.txt"))])
            .status
            .code(),
        Some(0)
    );
}

fn certificate_from_json(report: &Value) -> (Vec<usize>, Vec<usize>, Certificate) {
    let indices = |key: &str| -> Vec<usize> {
        report[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap() as usize - 1)
            .collect()
    };
    let rows = indices("rows");
    let cols = indices("cols");
    let local = |global: usize| cols.iter().position(|&c| c == global).unwrap();
    let omitted = report["omitted_column"]
        .as_u64()
        .map(|j| local(j as usize - 1));
    let pi = indices("pi").into_iter().map(local).collect();
    let lambdas: BTreeMap<usize, Scalar> = report["lambdas"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, v)| {
            (
                local(k.parse::<usize>().unwrap() - 1),
                v.as_str().unwrap().parse().unwrap(),
            )
        })
        .collect();
    let cert = Certificate {
        omitted_column: omitted,
        pi,
        lambdas,
    };
    (rows, cols, cert)
}

fn round_trip(file: &Path) {
    let report: Value = serde_json::from_str(&stdout(&["--json", "rank", path(file)])).unwrap();
    let a: Matrix = MatrixDocument::read(file).unwrap().matrix;
    let (rows, cols, cert) = certificate_from_json(&report);
    assert_eq!(rows.len(), report["rank"].as_u64().unwrap() as usize);
    if !rows.is_empty() {
        let sub = a.select(&rows, &cols).unwrap();
        assert!(
            verify_certificate(&sub, &cert).unwrap(),
            "{}",
            file.display()
        );
    }
}

#[test]
fn json_certificates_round_trip() {
    for name in ["example1.txt", "example2.txt", "constant.txt", "square.txt"] {
        round_trip(&data(name));
    }
    // A handful of fixed pseudo-random matrices on the 1/20 grid.
    let mut state = 0x2545_f491_u64;
    for _ in 0..12 {
        let mut text = String::from("3 4\n");
        for _ in 0..3 {
            let row: Vec<String> = (0..4)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    format!("{}/20", (state >> 33) % 21)
                })
                .collect();
            text.push_str(&row.join(" "));
            text.push('\n');
        }
        let f = temp_matrix(&text);
        round_trip(f.path());
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["rank", "example2.txt"],
        vec!["--json", "dim", "--oracle", "example1.txt"],
        vec![
            "--json", "segment", "-x", ".2", ".7", ".4", "-y", ".6", ".3", ".4",
        ],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".txt") {
                    path(&data(a)).to_string()
                } else {
                    a.to_string()
                }
            })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for p in [&p1, &p2] {
        stdout(&[
            "plot2d",
            path(&data("square.txt")),
            "--resolution",
            "40",
            "-o",
            path(p),
        ]);
    }
    assert_eq!(std::fs::read(p1).unwrap(), std::fs::read(p2).unwrap());
}
