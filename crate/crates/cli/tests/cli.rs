use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

use valuon::algebra::int;
use valuon::cone::brion_lattice_gen;
use valuon::invariant::generators_g;
use valuon::io;
use valuon::valuation::{basis_valuation, discrete_moment, triangle_generators};
use valuon::{BivariatePolynomial, LatticePolygon};

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, content: &Value) -> PathBuf {
        self.raw(name, &content.to_string())
    }

    fn raw(&self, name: &str, content: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, content).unwrap();
        p
    }

    fn square(&self) -> PathBuf {
        self.file("square.json", &json!({"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}))
    }

    fn triangle(&self) -> PathBuf {
        self.file("triangle.json", &json!({"vertices": [[0, 0], [1, 0], [0, 1]]}))
    }

    fn hexagon(&self) -> PathBuf {
        self.file(
            "hexagon.json",
            &json!({"vertices": [[1, 0], [2, 0], [3, 1], [2, 3], [0, 2], [0, 1]]}),
        )
    }
}

fn valuon(args: &[&str]) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_valuon"));
    c.args(args).env_remove("VALUON_TRUNC_DEFAULT");
    c
}

fn run(args: &[&str]) -> Output {
    valuon(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn poly_in(s: &str) -> BivariatePolynomial {
    io::poly_from_json(&json!({"coeffs": serde_json::from_str::<Value>(s).unwrap()})).unwrap()
}

#[test]
fn ehrhart_square_rank_zero() {
    let fx = Fixture::new();
    let v = json_ok(&["ehrhart", "--polygon", path(&fx.square()), "--rank", "0"]);
    let coeffs: Vec<BivariatePolynomial> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| io::poly_from_json(c).unwrap())
        .collect();
    let expected: Vec<BivariatePolynomial> = [1, 2, 1]
        .iter()
        .map(|&n| BivariatePolynomial::constant(int(n)))
        .collect();
    assert_eq!(coeffs, expected);
    assert_eq!(v["rank"], 0);
}

#[test]
fn ehrhart_text_lists_every_coefficient() {
    let fx = Fixture::new();
    let out = run(&["--format", "text", "ehrhart", "--polygon", path(&fx.square()), "--rank", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("L_0^2 = 0\n"));
}

#[test]
fn dims_reports_the_two_dimensional_row() {
    let v = json_ok(&["dims", "--max-r", "9", "--max-d", "2"]);
    let rows = v["tensor"].as_array().unwrap();
    let row = rows.iter().find(|r| r["i"] == 1 && r["r"] == 9).unwrap();
    assert_eq!(row["predicted"], 2);
    assert_eq!(row["observed"], 2);
    for r in rows.iter().chain(v["dilative"].as_array().unwrap()) {
        assert_eq!(r["status"], "rank lower bound, matches theorem", "{r}");
    }
    assert_eq!(v["probes"], 48);
}

#[test]
fn basis_on_triangle() {
    let fx = Fixture::new();
    let v = json_ok(&["--pretty", "basis", "--polygon", path(&fx.triangle()), "--k", "2", "--l", "1"]);
    let got = io::poly_from_json(&v).unwrap();
    let t = LatticePolygon::standard_triangle();
    assert_eq!(got, basis_valuation(&t, 2, 1).unwrap());
    // Oracle: the value on Δ is a multiple of p2^2 p3.
    let (p2, p3) = generators_g();
    let target = &p2.pow(2) * &p3;
    let c = got.coeff(7, 0) / target.coeff(7, 0);
    assert_eq!(got, target.scale(&c));
    assert!(v["pretty"].as_str().unwrap().ends_with("p2^2 p3"));
    let (l2, l3) = triangle_generators();
    assert_eq!(got, &l2.pow(2) * l3);
}

#[test]
fn moment_round_trips() {
    let fx = Fixture::new();
    let hex = fx.hexagon();
    let v = json_ok(&["moment", "--polygon", path(&hex), "--rank", "4"]);
    let p = io::polygon_from_json(&serde_json::from_str(&std::fs::read_to_string(&hex).unwrap()).unwrap()).unwrap();
    assert_eq!(io::poly_from_json(&v).unwrap(), discrete_moment(&p, 4));
    assert_eq!(io::poly_to_json(&io::poly_from_json(&v).unwrap()), v);
}

#[test]
fn series_round_trips_and_respects_truncation() {
    let fx = Fixture::new();
    let v = json_ok(&["brion", "--polygon", path(&fx.triangle()), "--trunc", "5"]);
    let s = io::series_from_json(&v).unwrap();
    assert_eq!(s.truncation(), 5);
    assert_eq!(s, brion_lattice_gen(&LatticePolygon::standard_triangle(), 5).unwrap());
    assert_eq!(io::series_to_json(&s), v);
}

#[test]
fn truncation_default_from_environment() {
    let fx = Fixture::new();
    let tri = fx.triangle();
    let out = valuon(&["expint", "--polygon", path(&tri)])
        .env("VALUON_TRUNC_DEFAULT", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["truncation"], 3);
    let v = json_ok(&["expint", "--polygon", path(&tri)]);
    assert_eq!(v["truncation"], 10);
}

#[test]
fn expint_routes_agree() {
    let fx = Fixture::new();
    let hex = fx.hexagon();
    let a = json_ok(&["expint", "--polygon", path(&hex), "--trunc", "5"]);
    let b = json_ok(&["expint", "--polygon", path(&hex), "--trunc", "5", "--route", "cones"]);
    assert_eq!(a, b);
}

#[test]
fn triangulation_round_trips_and_flips_are_replayable() {
    let fx = Fixture::new();
    let hex = fx.hexagon();
    let args = ["triangulate", "--polygon", path(&hex), "--flips", "6", "--seed", "11"];
    let v = json_ok(&args);
    let parent = io::polygon_from_json(&v["polygon"]).unwrap();
    let t = io::triangulation_from_json(&v["triangles"], &parent).unwrap();
    assert!(t.validate().is_ok());
    assert_eq!(t.len() as i64, parent.twice_area());
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn zf_and_z2_accept_polynomial_files() {
    let fx = Fixture::new();
    let tri = fx.triangle();
    // p2 p3 is G-invariant of degree 5.
    let (p2, p3) = generators_g();
    let f = fx.file("f.json", &io::poly_to_json(&(&p2 * &p3)));
    let zf = json_ok(&["zf", "--polygon", path(&tri), "--f", path(&f)]);
    assert_eq!(io::poly_from_json(&zf).unwrap(), &p2 * &p3);
    let z2 = json_ok(&["z2", "--polygon", path(&tri), "--f", path(&f), "--rank", "5"]);
    assert!(io::poly_from_json(&z2).unwrap().is_homogeneous_of(6));
}

#[test]
fn expval_from_generator_matches_numerator_form() {
    let fx = Fixture::new();
    let tri = fx.triangle();
    let (_, p3) = generators_g();
    let f = fx.file("f.json", &io::poly_to_json(&p3));
    let a = json_ok(&["expval", "--polygon", path(&tri), "--d", "2", "--f", path(&f), "--trunc", "6"]);
    let s = io::series_from_json(&a).unwrap();
    assert_eq!(s.truncation(), 6);
    assert!(s.layer(0).is_zero());
    let e = fx.file("one.json", &json!({"coeffs": {"0,0": "1"}}));
    let b = json_ok(&["expval", "--polygon", path(&tri), "--d", "-2", "--numerator", path(&e), "--trunc", "4"]);
    let c = json_ok(&["expint", "--polygon", path(&tri), "--trunc", "4"]);
    assert_eq!(b, c);
}

#[test]
fn exit_code_invalid_input() {
    let fx = Fixture::new();
    let bad = fx.raw("bad.json", "{\"vertices\": [[0, 0], [1]]}");
    let garbage = fx.raw("garbage.json", "not json");
    assert_eq!(exit_code(&["moment", "--polygon", path(&bad), "--rank", "1"]), 1);
    assert_eq!(exit_code(&["moment", "--polygon", path(&garbage), "--rank", "1"]), 1);
    assert_eq!(exit_code(&["moment", "--polygon", "/nonexistent.json", "--rank", "1"]), 1);
    assert_eq!(exit_code(&["moment", "--polygon", path(&fx.triangle())]), 1);
    assert_eq!(exit_code(&["moment", "--polygon", path(&fx.triangle()), "--rank", "-1"]), 1);
    assert_eq!(exit_code(&["frobnicate"]), 1);
    assert_eq!(exit_code(&["expval", "--polygon", path(&fx.triangle()), "--d", "2"]), 1);
    assert_eq!(exit_code(&["check", "--only", "no_such_check"]), 1);
    let tri = fx.triangle();
    let out = valuon(&["brion", "--polygon", path(&tri)])
        .env("VALUON_TRUNC_DEFAULT", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let f = fx.file("f.json", &json!({"coeffs": {"3,0": "1", "0,0": "1"}}));
    assert_eq!(exit_code(&["zf", "--polygon", path(&tri), "--f", path(&f)]), 1);
}

#[test]
fn exit_code_math_precondition() {
    let fx = Fixture::new();
    let tri = fx.triangle();
    // 2k + 3l = 2 is even.
    assert_eq!(exit_code(&["basis", "--polygon", path(&tri), "--k", "1", "--l", "0"]), 2);
    // x^3 is not G-invariant.
    let f = fx.file("f.json", &json!({"coeffs": {"3,0": "1"}}));
    assert_eq!(exit_code(&["zf", "--polygon", path(&tri), "--f", path(&f)]), 2);
    let segment = fx.file("segment.json", &json!({"vertices": [[0, 0], [2, 0]]}));
    assert_eq!(exit_code(&["triangulate", "--polygon", path(&segment)]), 2);
    // R = x^2 / (x y) is not symmetric.
    let n = fx.file("n.json", &json!({"coeffs": {"2,0": "1"}}));
    assert_eq!(
        exit_code(&["expval", "--polygon", path(&tri), "--d", "0", "--numerator", path(&n)]),
        2
    );
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(exit_code(&["--help"]), 0);
    assert_eq!(exit_code(&["--version"]), 0);
    assert_eq!(exit_code(&["dims", "--help"]), 0);
}

#[test]
fn check_is_deterministic_and_logs_seed() {
    let args = ["check", "--seed", "7", "--only", "zeta_translation"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["checks"][0]["name"], "zeta_translation");
    assert_eq!(v["checks"][0]["pass"], true);
}

#[test]
fn text_check_output() {
    let out = run(&["--format", "text", "check", "--only", "compose_law"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS exact-algebra/compose_law"), "{text}");
}

#[test]
fn poly_parses_from_exponent_keys() {
    let p = poly_in(r#"{"1,2": "3/4"}"#);
    assert_eq!(p.coeff(1, 2), valuon::algebra::rat(3, 4));
}
