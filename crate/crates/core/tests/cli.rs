use std::fs;
use std::path::{Path, PathBuf};

use dirac_pin::cli::{run, EXIT_DATA, EXIT_IO, EXIT_OK, EXIT_USAGE};
use serde_json::{json, Value};

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/verify_seed42.json");

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dirac-pin").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, v.to_string()).unwrap();
    p
}

/// Row-major `[re, im]` pairs from a nested list of `(re, im)` rows.
fn matrix(rows: &[&[(f64, f64)]]) -> Value {
    let data: Vec<[f64; 2]> = rows.iter().flat_map(|r| r.iter().map(|&(a, b)| [a, b])).collect();
    json!({"rows": rows.len(), "cols": rows.len(), "data": data})
}

fn real(rows: &[&[f64]]) -> Value {
    let data: Vec<[f64; 2]> = rows.iter().flat_map(|r| r.iter().map(|&a| [a, 0.0])).collect();
    json!({"rows": rows.len(), "cols": rows.len(), "data": data})
}

fn gamma0() -> Value {
    real(&[
        &[0., 0., 1., 0.],
        &[0., 0., 0., 1.],
        &[1., 0., 0., 0.],
        &[0., 1., 0., 0.],
    ])
}

fn parse(s: &str) -> Value {
    serde_json::from_str(s.trim()).unwrap()
}

#[test]
fn verify_report_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = invoke(&["verify", "--seed", "42", "--json", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let produced = fs::read_to_string(&path).unwrap();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(GOLDEN, &produced).unwrap();
    }
    let golden = fs::read_to_string(GOLDEN).unwrap();
    assert_eq!(produced, golden, "report drifted from the committed golden file");
}

#[test]
fn verify_is_deterministic_and_schema_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(
        invoke(&[
            "verify",
            "--seed",
            "42",
            "--samples",
            "100",
            "--json",
            a.to_str().unwrap()
        ])
        .0,
        EXIT_OK
    );
    assert_eq!(
        invoke(&[
            "--seed",
            "42",
            "verify",
            "--samples",
            "100",
            "--json",
            b.to_str().unwrap()
        ])
        .0,
        EXIT_OK
    );
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let report: Value = serde_json::from_slice(&ta).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 14);
    for c in checks {
        let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 5);
        for k in ["name", "reference", "status", "max_residual", "samples"] {
            assert!(keys.contains(&k));
        }
    }
}

#[test]
fn usage_errors() {
    assert_eq!(invoke(&["verify", "--samples", "0"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["verify", "--tol", "-1"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(invoke(&[]).0, EXIT_USAGE);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("classify"));
}

#[test]
fn phi_command() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.json", &real(&[&[1., 0.], &[0., 1.]]));
    let (code, out, _) = invoke(&["phi", id.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v = parse(&out);
    let expected: Vec<Value> = (0..16)
        .map(|k| json!([if k % 5 == 0 { 1.0 } else { 0.0 }, 0.0]))
        .collect();
    assert_eq!(v["matrix"]["data"], Value::Array(expected));

    let boost = write(dir.path(), "boost.json", &real(&[&[2., 0.], &[0., 0.5]]));
    let (code, out, _) = invoke(&["phi", boost.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v = parse(&out);
    let data = v["matrix"]["data"].as_array().unwrap();
    let re = |k: usize| data[k][0].as_f64().unwrap();
    assert_eq!(
        (re(0), re(3), re(12), re(15)),
        (17.0 / 8.0, 15.0 / 8.0, 15.0 / 8.0, 17.0 / 8.0)
    );
    assert_eq!((re(5), re(10)), (1.0, 1.0));

    let bad = write(dir.path(), "bad.json", &real(&[&[2., 0.], &[0., 1.]]));
    let (code, _, err) = invoke(&["phi", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_DATA);
    assert!(err.contains("not in SL(2,C)"));

    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(invoke(&["phi", junk.to_str().unwrap()]).0, EXIT_DATA);
    assert_eq!(invoke(&["phi", "/definitely/not/here.json"]).0, EXIT_IO);
}

#[test]
fn classify_command() {
    let dir = tempfile::tempdir().unwrap();
    let g0 = write(dir.path(), "g0.json", &gamma0());
    let (code, out, _) = invoke(&["classify", g0.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        parse(&out),
        json!({"class": "PReverseAntiChiral", "signs": {"d": -1, "H": -1, "D": 1}, "sector": "PSector"})
    );

    let (i, z, m) = ((0.0, 1.0), (0.0, 0.0), (0.0, -1.0));
    let q = write(
        dir.path(),
        "q.json",
        &matrix(&[&[i, z, z, z], &[z, i, z, z], &[z, z, m, z], &[z, z, z, m]]),
    );
    let (code, out, _) = invoke(&["classify", q.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse(&out)["class"], "PTReverseChiral");

    let bad = write(
        dir.path(),
        "bad.json",
        &real(&[
            &[1., 0., 0., 0.],
            &[0., 2., 0., 0.],
            &[0., 0., 3., 0.],
            &[0., 0., 0., 4.],
        ]),
    );
    let (code, _, err) = invoke(&["classify", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_DATA);
    assert!(err.contains("not in Pin(1,3) representation"));
}

fn gamma_symbol_tensor() -> Value {
    let g = dirac_pin::spintensor::gamma_symbols();
    serde_json::to_value(g.to_json()).unwrap()
}

#[test]
fn transform_command() {
    let dir = tempfile::tempdir().unwrap();
    let gamma = write(dir.path(), "gamma.json", &gamma_symbol_tensor());
    let ident = write(
        dir.path(),
        "id.json",
        &json!({"s_hat": real(&[&[1., 0., 0., 0.], &[0., 1., 0., 0.], &[0., 0., 1., 0.], &[0., 0., 0., 1.]])}),
    );
    let p = write(dir.path(), "p.json", &json!({"s_hat": gamma0()}));

    let (code, out, _) = invoke(&["transform", gamma.to_str().unwrap(), ident.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse(&out), gamma_symbol_tensor());

    let (code, out, _) = invoke(&["transform", gamma.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse(&out), gamma_symbol_tensor());

    let d = [[0., 1., 0., 0.], [-1., 0., 0., 0.], [0., 0., 0., -1.], [0., 0., 1., 0.]];
    let data: Vec<[f64; 2]> = d.iter().flatten().map(|&x| [x, 0.0]).collect();
    let dt = write(dir.path(), "d.json", &json!({"type": [0, 2, 0, 0, 0, 0], "data": data}));
    let (code, out, _) = invoke(&["transform", dt.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let negated: Vec<[f64; 2]> = d.iter().flatten().map(|&x| [-x, 0.0]).collect();
    let got: Vec<[f64; 2]> = serde_json::from_value(parse(&out)["data"].clone()).unwrap();
    assert_eq!(got, negated);

    let short = write(
        dir.path(),
        "short.json",
        &json!({"type": [0, 2, 0, 0, 0, 0], "data": [[1.0, 0.0]]}),
    );
    assert_eq!(
        invoke(&["transform", short.to_str().unwrap(), p.to_str().unwrap()]).0,
        EXIT_DATA
    );
    let big = write(dir.path(), "big.json", &json!({"type": [2, 2, 2, 0, 0, 1], "data": []}));
    assert_eq!(
        invoke(&["transform", big.to_str().unwrap(), p.to_str().unwrap()]).0,
        EXIT_DATA
    );
}

#[test]
fn json_flag_copies_command_output() {
    let dir = tempfile::tempdir().unwrap();
    let g0 = write(dir.path(), "g0.json", &gamma0());
    let out_path = dir.path().join("class.json");
    let (code, out, _) = invoke(&["classify", g0.to_str().unwrap(), "--json", out_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse(&fs::read_to_string(&out_path).unwrap()), parse(&out));
    let unwritable = dir.path().join("missing-dir").join("x.json");
    assert_eq!(
        invoke(&["classify", g0.to_str().unwrap(), "--json", unwritable.to_str().unwrap()]).0,
        EXIT_IO
    );
}
