use std::path::PathBuf;
use std::process::{Command, Output};

use trivsrc::permgroup::{builtin_group, dihedral_group, GroupFile};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trivsrc"))
        .args(args)
        .output()
        .expect("spawn trivsrc")
}

fn tmp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("trivsrc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn builtin_commands_succeed() {
    for name in ["v4", "a4", "a5"] {
        for cmd in ["chartab", "blocks", "tsct", "verify"] {
            for fmt in ["text", "json", "csv"] {
                let o = bin(&[cmd, "--builtin", name, "--format", fmt]);
                assert_eq!(
                    o.status.code(),
                    Some(0),
                    "{cmd} {name} {fmt}: {}",
                    String::from_utf8_lossy(&o.stderr)
                );
                assert!(!o.stdout.is_empty());
            }
        }
    }
}

#[test]
fn group_file_matches_builtin() {
    for name in ["a4", "a5"] {
        let g = builtin_group(name).unwrap();
        let p = tmp(
            &format!("{name}.json"),
            &serde_json::to_string(&GroupFile::from_group(&g)).unwrap(),
        );
        let a = bin(&["tsct", "--builtin", name, "--format", "json"]);
        let b = bin(&["tsct", "--group", p.to_str().unwrap(), "--format", "json"]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(stdout(&a), stdout(&b));
    }
}

#[test]
fn unnamed_group_file_goes_through_dixon() {
    let g = dihedral_group(3).unwrap();
    let mut gf = GroupFile::from_group(&g);
    gf.name = None;
    let p = tmp("d12.json", &serde_json::to_string(&gf).unwrap());
    let o = bin(&["verify", "--group", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn d4v_closed_form_equals_assembled() {
    let a = bin(&["tsct", "--d4v", "5", "--closed-form", "--format", "json"]);
    let b = bin(&["tsct", "--d4v", "5", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let v = bin(&["verify", "--d4v", "7", "--closed-form"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("d4v_T33_eq_T31"));
}

#[test]
fn json_round_trips() {
    let t = bin(&["chartab", "--builtin", "a5", "--format", "json"]);
    let p = tmp("a5_table.json", &stdout(&t));
    let again = bin(&[
        "chartab",
        "--table",
        p.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&t), stdout(&again));
    let ts = bin(&["tsct", "--table", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(ts.status.code(), Some(0));
    let q = tmp("a5_tsct.json", &stdout(&ts));
    let v = bin(&["verify", "--table", q.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn tampered_tsct_fails_verification() {
    let ts = bin(&["tsct", "--builtin", "a4", "--format", "json"]);
    let mut j: serde_json::Value = serde_json::from_str(&stdout(&ts)).unwrap();
    j["entries"][0][0] = j["entries"][0][1].clone();
    let p = tmp("bad.json", &j.to_string());
    let v = bin(&["verify", "--table", p.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(5));
    assert!(stdout(&v).contains("FAIL") || stdout(&v).contains("fail"));
    let t = bin(&["tsct", "--table", p.to_str().unwrap()]);
    assert_eq!(t.status.code(), Some(5));
    assert!(t.stdout.is_empty());
}

#[test]
fn exit_codes() {
    let p = tmp("garbage.json", "{ not json");
    assert_eq!(
        bin(&["chartab", "--table", p.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        bin(&["chartab", "--group", p.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(bin(&["chartab", "--d4v", "4"]).status.code(), Some(2));
    assert_eq!(bin(&["chartab", "--bogus"]).status.code(), Some(2));
    let bad = tmp("bad_block.json", r#"{"degrees":[1,2,3,7],"fusion":"III"}"#);
    assert_eq!(
        bin(&["transport", bad.to_str().unwrap()]).status.code(),
        Some(4)
    );
}

#[test]
fn transport_a5_principal_block() {
    let p = tmp(
        "a5_block.json",
        r#"{"degrees":[1,3,3,5],"fusion":"I","characters":[1,2,3,5]}"#,
    );
    let o = bin(&["transport", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["morita_class"], "B0(kA5)");
    assert_eq!(j["rows"].as_array().unwrap().len(), 7);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("trivsrc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("blocks.csv");
    let o = bin(&[
        "blocks",
        "--builtin",
        "a5",
        "--format",
        "csv",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&p)
        .unwrap()
        .starts_with("block,defect"));
}

fn json_of(args: &[&str]) -> serde_json::Value {
    let o = bin(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn chartab_and_block_counts() {
    let t = json_of(&["chartab", "--d4v", "5", "--format", "json"]);
    assert_eq!(t["irr"].as_array().unwrap().len(), 8);
    assert_eq!(t["classes"].as_array().unwrap().len(), 8);
    assert_eq!(json_of(&["blocks", "--d4v", "9", "--format", "json"]).as_array().unwrap().len(), 5);
    assert_eq!(json_of(&["blocks", "--builtin", "v4", "--format", "json"]).as_array().unwrap().len(), 1);
}

#[test]
fn ex972_from_group_file() {
    let g = builtin_group("ex972").unwrap();
    let p = tmp("ex972.json", &serde_json::to_string(&GroupFile::from_group(&g)).unwrap());
    let path = p.to_str().unwrap();
    let t = json_of(&["chartab", "--group", path, "--format", "json"]);
    let mut degrees: Vec<i64> = t["irr"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row[0]["c"]["0"][0].as_i64().unwrap())
        .collect();
    degrees.sort_unstable();
    let mut want = [vec![1; 9], vec![3; 3], vec![4; 18], vec![6; 6], vec![12; 3]].concat();
    want.sort_unstable();
    assert_eq!(degrees, want);
    let b = json_of(&["blocks", "--group", path, "--format", "json"]);
    assert_eq!(b.as_array().unwrap().len(), 27);
    let v = bin(&["verify", "--group", path]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn transport_examples() {
    let ka4 = tmp("ka4.json", r#"{"degrees":[1,1,1,3],"fusion":"I","characters":[2,6,9,11]}"#);
    let j = json_of(&["transport", ka4.to_str().unwrap(), "--format", "json"]);
    assert_eq!(j["morita_class"], "kA4");
    let trivial: Vec<&str> =
        j["rows"].as_array().unwrap().iter().filter(|r| r["vertex"] == "trivial").map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(trivial, vec!["χ2+χ11", "χ6+χ11", "χ9+χ11"]);

    let ka5 = tmp("ka5.json", r#"{"degrees":[1,3,3,5],"fusion":"I","characters":[1,2,3,5]}"#);
    let j = json_of(&["transport", ka5.to_str().unwrap(), "--format", "json"]);
    let c2: Vec<&str> =
        j["rows"].as_array().unwrap().iter().filter(|r| r["vertex"] == "c2").map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(c2, vec!["χ1+χ5"]);

    let kv4 = tmp(
        "kv4.json",
        r#"{"degrees":[2,2,2,2],"fusion":"III","involutions":[
            {"class":"2a","values":[2,2,-2,-2]},{"class":"2b","values":[2,-2,2,-2]},{"class":"2c","values":[2,-2,-2,2]}]}"#,
    );
    let j = json_of(&["transport", kv4.to_str().unwrap(), "--format", "json"]);
    assert_eq!(j["morita_class"], "kV4");
    let text = stdout(&bin(&["transport", kv4.to_str().unwrap()]));
    assert!(text.starts_with("Morita class: kV4"));
}
