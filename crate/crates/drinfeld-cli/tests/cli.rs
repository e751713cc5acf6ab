use assert_cmd::Command;
use serde_json::Value;

fn cli() -> Command {
    let mut c = Command::cargo_bin("drinfeld").unwrap();
    c.env_remove("DRINFELD_SEED");
    c
}

fn stdout(args: &[&str]) -> String {
    let out = cli().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["schema"], "drinfeld-cli/1");
    v
}

const F49: &str = "7^2:3,6,1";

#[test]
fn charpoly_frobenius() {
    let out = stdout(&["charpoly", "--field", F49, "--module", "z;z;1", "--endo", "frobenius"]);
    assert_eq!(out.trim(), "X^2 + (5 + 5*T)*X + 3 + 6*T + T^2");
}

#[test]
fn charpoly_of_endomorphism() {
    let v = json(&["charpoly", "--field", F49, "--module", "z;z;1", "--endo", "0,0,z+1,z,1"]);
    assert_eq!(v["result"]["text"], "X^2 + (5 + 3*T + 5*T^2)*X + 3 + 5*T + 2*T^2 + T^3 + T^4");
}

#[test]
fn factor_golden() {
    let out = stdout(&["factor", "--field", "7", "--poly", "2,0,3,0,1", "--method", "dns", "--seed", "1"]);
    assert_eq!(out.trim(), "1,0,1^1\n2,0,1^1");
    let out = cli().args(["factor", "--field", "7", "--poly", "-"]).write_stdin("2,0,3,0,1\n").output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1,0,1^1\n2,0,1^1");
    let v = json(&["factor", "--field", "7", "--poly", "4,0,6,0,2", "--method", "cz"]);
    assert_eq!(v["result"]["unit"], 2);
    assert_eq!(v["result"]["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn zeta_and_lseries() {
    let z = stdout(&["zeta", "--field", "7", "--s", "6", "--prec", "100"]);
    assert!(z.trim().ends_with("O(T^-100)"));
    let z = stdout(&["zeta", "--field", "7", "--s", "6", "--prec", "30"]);
    let e = stdout(&["zeta", "--field", "7", "--s", "6", "--prec", "30", "--euler"]);
    assert_eq!(z, e);
    cli().args(["zeta", "--field", "7", "--s", "6", "--prec", "100", "--euler"]).assert().code(1);
    let l = stdout(&["lseries", "--field", "3", "--s", "1", "--at-one", "--laurent-prec", "20"]);
    let z2 = stdout(&["zeta", "--field", "3", "--s", "2", "--prec", "20"]);
    assert_eq!(l, z2);
    let v = json(&["lseries", "--field", "3", "--module", "1;0,1", "--prec", "3"]);
    assert_eq!(v["result"]["skipped"][0], "T");
}

#[test]
fn exp_log_text() {
    let out = stdout(&["exp-log", "--field", "3", "--prec", "10"]);
    assert!(out.starts_with("exp: x + (1/(2*T + T^3))*x^3 + "));
    assert!(out.contains("O(x^27)"));
}

#[test]
fn norm_dual_golden() {
    let out = stdout(&["norm-dual", "--field", F49, "--module", "z;z;1", "--ore", "1,1"]);
    assert_eq!(out.trim(), "codomain: z; 6*z + 1; 1\nnorm: 6 + T\ndual: z + 6, 1");
}

#[test]
fn class_action_golden() {
    let psi = stdout(&["action", "--field", F49, "--module", "z;z;1", "--ideal", "4,1|3;1"]);
    let first = psi.lines().next().unwrap();
    assert_eq!(first, "z; 6*z + 1; 1");
    let back = stdout(&["action", "--field", F49, "--module", first, "--ideal", "4,1|3;1"]);
    assert_eq!(back.lines().next().unwrap(), "z; z; 1");
}

#[test]
fn hom_and_invariants() {
    let v = json(&["hom", "--field", F49, "--module", "z;1;1", "--codomain", "z;2*z+1;1", "--frobenius"]);
    assert_eq!(v["result"]["rank"], 2);
    assert_eq!(v["result"]["basis"][0], "z + 1");
    let v = json(&["invariants", "--field", F49, "--module", "1;0;z"]);
    assert_eq!(v["result"]["supersingular"], true);
    assert_eq!(v["result"]["shape"]["c"], serde_json::json!(["2*z + 5", "5*z"]));
}

#[test]
fn lrc_round_trip() {
    let dir = std::env::temp_dir().join(format!("drinfeld-cli-lrc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cfg.json");
    let cfg = stdout(&["lrc", "setup", "--field", "3^4", "--rank", "2", "--a", "1,2", "--t", "1", "--delta", "2", "--s", "1"]);
    std::fs::write(&path, &cfg).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["lrc", "params", "--config", p, "--bruteforce"]);
    assert_eq!(v["result"]["d"], 2);
    assert_eq!(v["result"]["bruteforce_d"], 2);
    let word = stdout(&["lrc", "encode", "--config", p, "--seed", "3"]);
    let mut entries: Vec<&str> = word.trim().split("; ").collect();
    let original = entries.clone();
    entries[2] = "?";
    let back = stdout(&["lrc", "recover", "--config", p, "--word", &entries.join(";")]);
    assert_eq!(back.trim().split("; ").collect::<Vec<_>>(), original);
    entries[3] = "?";
    cli().args(["lrc", "recover", "--config", p, "--word", &entries.join(";")]).assert().code(1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seeds_are_reproducible() {
    let a = stdout(&["factor", "--field", "5", "--poly", "1,2,3,4,0,1,1,3,2,1", "--seed", "9"]);
    let b = cli().args(["factor", "--field", "5", "--poly", "1,2,3,4,0,1,1,3,2,1"]).env("DRINFELD_SEED", "9").output().unwrap();
    assert_eq!(a, String::from_utf8(b.stdout).unwrap());
}

#[test]
fn exit_codes() {
    cli().args(["frobnicate"]).assert().code(2);
    let out = cli().args(["charpoly", "--field", "7^", "--module", "z"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 2"));
    cli().args(["factor", "--field", "2", "--poly", "1,1,1"]).assert().code(1);
    cli().args(["zeta", "--field", "3", "--s", "0", "--prec", "5"]).assert().code(1);
    let out = cli().args(["zeta", "--field", "3", "--s", "0", "--prec", "5", "--format", "json"]).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "domain");
}
