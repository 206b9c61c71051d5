use std::path::PathBuf;
use std::process::Command;

use addact_core::document::{parse_algebra_document, parse_fan_document};
use serde_json::Value;

fn addact(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_addact")).args(args).output().expect("spawn addact");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, stdout, stderr) = addact(args);
    assert_eq!(code, 0, "{args:?} failed: {stderr}");
    stdout
}

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../fixtures");
    p.push(name);
    p.to_str().expect("utf-8 path").to_string()
}

fn temp_file(name: &str, contents: &str) -> String {
    let mut p = std::env::temp_dir();
    p.push(format!("addact-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).expect("write temp file");
    p.to_str().expect("utf-8 path").to_string()
}

#[test]
fn truncated_cubic_golden() {
    let ks3 = fixture("KS3.json");
    assert_eq!(ok(&["ht", "ideal", "--algebra", &ks3]), "S1^2 - S2\nS1*S2\nS2^2\n");
    assert_eq!(ok(&["ht", "subspace", "--algebra", &ks3]), "1\nx1\n1/2 * x1^2 + x2\n");
    assert_eq!(
        ok(&["ht", "representation", "--algebra", &ks3]),
        "[1, 0, 0]\n[a1, 1, 0]\n[1/2 * a1^2 + a2, a1, 1]\n"
    );
    assert_eq!(
        ok(&["ht", "action", "--algebra", &ks3]),
        "[z0 : a1*z0 + z1 : 1/2 * a1^2*z0 + a1*z1 + a2*z0 + z2]\n"
    );
    let json: Value = serde_json::from_str(&ok(&["--format", "json", "ht", "action", "--algebra", &ks3])).unwrap();
    assert_eq!(json["orbits"], serde_json::json!({"finite": 3}));
    assert_eq!(ok(&["ht", "fixed-locus", "--algebra", &ks3]), "socle dim 1\nS1^2\n");
}

#[test]
fn hypersurface_commands() {
    assert_eq!(
        ok(&["hyp", "equation", "--pair", "hyp-no30"]),
        "degree 3\nz0^2*z5 - z0*z1*z2 - z0*z3*z4 + 1/3 * z3^3\n"
    );
    assert_eq!(
        ok(&["hyp", "chart", "--pair", "twisted-cubic-pair"]),
        "-1/2 * z1^2 + z2\n1/3 * z1^3 - z1*z2 + z3\n"
    );
    assert_eq!(ok(&["hyp", "form", "--pair", "quadric:2"]), "degree 2\nkernel dim 0\n");
    assert_eq!(ok(&["hyp", "certify", "--pair", "hyp-no30"]), "gorenstein certificate: true\nnondegenerate: true\n");
}

#[test]
fn hypersurface_from_document() {
    // K[S]/(S^4) with U = <S, S^3>: a quadric of corank one.
    let doc = temp_file(
        "corank.json",
        r#"{"presentation": {"nvars": 1, "generators": ["S1^4"]}, "u_basis": ["S1", "S1^3"]}"#,
    );
    assert_eq!(ok(&["hyp", "equation", "--pair", &doc]), "degree 2\nz0*z3 - 1/2 * z1^2\n");
    assert_eq!(ok(&["hyp", "certify", "--pair", &doc]), "gorenstein certificate: false\nnondegenerate: false\n");
    let reduced: Value = serde_json::from_str(&ok(&["--format", "json", "hyp", "reduce", "--pair", &doc])).unwrap();
    assert_eq!(reduced["kernel_dim"], 1);
}

#[test]
fn toric_commands() {
    assert_eq!(ok(&["toric", "exists", "--fan", "P2"]), "true\n");
    assert_eq!(ok(&["toric", "exists", "--fan", "dP6"]), "false\n");
    assert_eq!(ok(&["toric", "count", "--fan", "Fd:1"]), "2\n");
    assert_eq!(ok(&["toric", "count", "--fan", "wide-fan"]), "1\n");
    assert_eq!(ok(&["toric", "unique", "--fan", "P1xP1"]), "true\n");
    assert_eq!(ok(&["toric", "roots", "--fan", "P2"]).lines().count(), 6);
    assert_eq!(ok(&["toric", "collections", "--fan", "Pn:3"]).lines().count(), 4);
    assert_eq!(ok(&["toric", "cox", "--fan", "wps:1,1,2"]), "class group: Z\ndeg x1 = (1)\ndeg x2 = (1)\ndeg x3 = (2)\n");
    assert!(ok(&["toric", "second-tuple", "--fan", "P2"]).contains("perturbed: x3*d/dx1, x3*d/dx2 + x2*d/dx1"));
}

#[test]
fn polytope_commands() {
    assert_eq!(ok(&["polytope", "inscribed", "--polytope", "hexagon"]), "none\n");
    assert_eq!(ok(&["polytope", "inscribed", "--polytope", "square"]), "(0, 0)\n");
    assert_eq!(ok(&["polytope", "points", "--polytope", "segment:2"]), "(0)\n(1)\n(2)\n");
    let doc = temp_file("poly.json", r#"{"rank": 2, "vertices": [[0, 0], [2, 0], [0, 2]]}"#);
    assert_eq!(ok(&["polytope", "points", "--polytope", &doc]).lines().count(), 6);
}

#[test]
fn catalog_commands() {
    assert_eq!(ok(&["catalog", "list"]).lines().count(), 42);
    let row: Value = serde_json::from_str(&ok(&["--format", "json", "catalog", "show", "4"])).unwrap();
    assert_eq!(row["dim"], 3);
    assert_eq!(row["gorenstein"], false);
}

#[test]
fn algebra_document_roundtrip() {
    for name in ["table1:30", "KS:4", "hyp-no30"] {
        let first = ok(&["algebra", "show", "--algebra", name]);
        let parsed = parse_algebra_document(&serde_json::from_str(&first).unwrap()).unwrap();
        let path = temp_file("roundtrip.json", &first);
        let second = ok(&["algebra", "show", "--algebra", &path]);
        assert_eq!(first, second, "{name}");
        assert_eq!(parse_algebra_document(&serde_json::from_str(&second).unwrap()).unwrap(), parsed);
    }
    let sc = temp_file(
        "fields.json",
        r#"{"structure_constants": {"table": [[["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]]]}}"#,
    );
    let out = ok(&["algebra", "show", "--algebra", &sc]);
    let path = temp_file("fields-out.json", &out);
    assert_eq!(ok(&["algebra", "show", "--algebra", &path]), out);
    assert!(ok(&["algebra", "invariants", "--algebra", &sc]).contains("local summands: 2"));
}

#[test]
fn normal_fan_roundtrip() {
    let out = ok(&["polytope", "normal-fan", "--polytope", "trapezoid:1"]);
    let fan = parse_fan_document(&serde_json::from_str(&out).unwrap()).unwrap();
    assert_eq!(serde_json::to_value(&fan).unwrap(), serde_json::from_str::<Value>(&out).unwrap());
    let path = temp_file("fan.json", &out);
    assert_eq!(ok(&["toric", "validate", "--fan", &path]), "valid: true\ncomplete: true\nsmooth: true\n");
    assert_eq!(ok(&["toric", "exists", "--fan", &path]), "true\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "toric", "second-tuple", "--fan", "Fd:3"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn exit_codes() {
    assert_eq!(addact(&["toric", "exists", "--fan", "no-such-fixture"]).0, 2);
    let bad = temp_file("bad.json", "{not json");
    assert_eq!(addact(&["toric", "roots", "--fan", &bad]).0, 2);
    let overlapping = temp_file("overlap.json", r#"{"rank": 1, "rays": [[1], [2]], "max_cones": [[0], [1]]}"#);
    assert_eq!(addact(&["toric", "roots", "--fan", &overlapping]).0, 2);
    let incomplete = temp_file("incomplete.json", r#"{"rank": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[0, 1]]}"#);
    let (code, stdout, stderr) = addact(&["toric", "exists", "--fan", &incomplete]);
    assert_eq!((code, stdout.as_str()), (1, ""));
    assert!(stderr.contains("NOT_COMPLETE"));
    assert_eq!(addact(&["ht", "ideal", "--algebra", "KS:3", "--unknown-flag"]).0, 2);
    assert_eq!(addact(&["hyp", "equation", "--pair", "KS:3"]).0, 1);
}
