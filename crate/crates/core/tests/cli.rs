use std::process::Command;

use serde_json::Value;

fn sphfun(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sphfun")).args(args).env_remove("SPHFUN_CACHE_DIR").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(sphfun(&["zonal", "--n", "2", "--m", "3"]).0, 0);
    assert_eq!(sphfun(&["bogus"]).0, 2);
    assert_eq!(sphfun(&["bottom", "--n", "4", "--m", "2"]).0, 2);
    assert_eq!(sphfun(&["spherical", "--n", "2", "--m", "2", "--label", "9:0,0"]).0, 2);
    assert_eq!(sphfun(&["--version"]).0, 0);
}

#[test]
fn spherical_json_is_exact_and_deterministic() {
    let args = ["spherical", "--n", "2", "--m", "3", "--mu", "rankone:2,1", "--degree-bound", "1"];
    let (code, a) = sphfun(&args);
    assert_eq!(code, 0);
    assert_eq!(a, sphfun(&args).1);
    let v: Value = serde_json::from_str(&a).unwrap();
    let fs = v["functions"].as_array().unwrap();
    assert!(!fs.is_empty());
    for f in fs {
        assert!(f["eigenvalue"].is_string());
        assert_eq!(f["checks"]["eigen_equation"], true);
        assert_eq!(f["checks"]["identity_at_zero"], true);
    }
}

#[test]
fn table_output() {
    let (code, t) = sphfun(&["orthogonality", "--n", "2", "--m", "2", "--mu", "wedge:1,0", "--degree-bound", "1", "--float", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(t.contains("diagonal matches: true"));
}
