use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const T: &str = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]}"#;
const T_RELABELED: &str = r#"{"vertices":["z","y","x"],"edges":[["x","y"],["z","y"],["x","z"]]}"#;
const P: &str = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["a","c"]]}"#;
const M2: &str = r#"{"vertices":["a","b","c","d"],"edges":[["a","b"],["c","d"]]}"#;
const S1: &str = r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).expect("stdout is JSON")
    }
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }
}

fn implalg<P: AsRef<Path>>(args: &[&str], files: &[P]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_implalg"))
        .args(args)
        .args(files.iter().map(AsRef::as_ref))
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str], files: &[&PathBuf]) -> Run {
    implalg(args, files)
}

#[test]
fn profile_command() {
    let ws = Workspace::new();
    let r = run(&["profile"], &[&ws.file("t.json", T)]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "{\"m\":3,\"values\":{\"1\":2,\"2\":2,\"3\":1,\"4\":2,\"5\":1,\"6\":1,\"7\":0}}\n"
    );
    assert!(r.stderr.is_empty());

    let r = run(&["profile"], &[&ws.file("s1.json", S1)]);
    assert_eq!(
        (r.code, r.stdout.as_str()),
        (0, "{\"m\":1,\"values\":{\"1\":2}}\n")
    );

    let r = run(&["profile"], &[&ws.file("bad.json", "{\"vertices\": [")]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(!r.stderr.is_empty());
}

#[test]
fn profile_reports_reduction_on_stderr_only() {
    let ws = Workspace::new();
    let nested = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["a"],["b","c"]]}"#;
    let r = run(&["profile"], &[&ws.file("n.json", nested)]);
    assert_eq!(r.code, 0);
    assert!(
        r.stderr.contains("input not Sperner; reduced 3 → 2 edges"),
        "{}",
        r.stderr
    );
    assert_eq!(r.stdout, "{\"m\":2,\"values\":{\"1\":2,\"2\":2,\"3\":1}}\n");

    let algebra = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["a"]],"as":"algebra"}"#;
    assert_eq!(run(&["profile"], &[&ws.file("a.json", algebra)]).code, 2);
}

#[test]
fn rho_command() {
    let ws = Workspace::new();
    let r = run(&["rho"], &[&ws.file("t.json", T)]);
    assert_eq!(r.code, 0);
    let v = r.json();
    for pair in ["3", "5", "6"] {
        assert_eq!(v["values"][pair], 3);
    }
    assert_eq!(v["values"]["0"], 0);

    let v = run(&["rho"], &[&ws.file("m2.json", M2)]).json();
    assert_eq!(v["values"]["3"], 4);

    let empty = r#"{"vertices":[],"edges":[]}"#;
    let r = run(&["rho"], &[&ws.file("e.json", empty)]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
}

#[test]
fn iso_command() {
    let ws = Workspace::new();
    let t = ws.file("t.json", T);
    let r = run(&["iso"], &[&t, &ws.file("t2.json", T_RELABELED)]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["isomorphic"], true);
    let pairs = v["witness"].as_array().unwrap();
    assert_eq!(pairs.len(), 3);
    let mut images: Vec<u64> = pairs.iter().map(|p| p[1].as_u64().unwrap()).collect();
    images.sort();
    assert_eq!(images, [0, 1, 2]);

    let r = run(&["iso"], &[&ws.file("p.json", P), &ws.file("m2.json", M2)]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "{\"isomorphic\":false}\n"));

    let r = run(&["iso"], &[&t, &ws.dir.path().join("missing.json")]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
}

#[test]
fn check_profile_command() {
    let ws = Workspace::new();
    let profile = run(&["profile"], &[&ws.file("t.json", T)]).stdout;
    let r = run(&["check-profile"], &[&ws.file("tp.json", &profile)]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "{\"verdict\":\"pass\"}\n"));

    let m1 = r#"{"m":1,"values":{"1":5}}"#;
    assert_eq!(run(&["check-profile"], &[&ws.file("m1.json", m1)]).code, 0);

    // Singletons, pairs 1, triple 0: fails paper-submodularity on {0,1}, {0,2}
    // before any derived clause is reached.
    let under = r#"{"m":3,"values":{"1":1,"2":1,"3":1,"4":1,"5":1,"6":1,"7":0}}"#;
    let r = run(&["check-profile"], &[&ws.file("u.json", under)]);
    assert_eq!(r.code, 1);
    assert_eq!(
        r.stdout,
        "{\"verdict\":\"fail\",\"clause\":\"paper-submodular\",\"pair\":[[0,1],[0,2]]}\n"
    );

    let crowded = r#"{"m":4,"values":{"1":1,"2":1,"3":0,"4":1,"5":0,"6":0,"7":0,"8":2,"9":1,"10":1,"11":0,"12":1,"13":0,"14":0,"15":0}}"#;
    let r = run(&["check-profile"], &[&ws.file("c.json", crowded)]);
    assert_eq!(r.code, 1);
    assert_eq!(
        r.stdout,
        "{\"verdict\":\"fail\",\"clause\":\"q_A paper-submodular\",\"A\":[0],\"pair\":[[1,3],[2,3]]}\n"
    );

    let missing_key = r#"{"m":2,"values":{"1":1,"3":1}}"#;
    assert_eq!(
        run(&["check-profile"], &[&ws.file("k.json", missing_key)]).code,
        2
    );
}

#[test]
fn realize_command() {
    let ws = Workspace::new();
    let path = r#"{"m":2,"values":{"1":2,"2":2,"3":1}}"#;
    let r = run(&["realize"], &[&ws.file("path.json", path)]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["degeneracy"], serde_json::json!([]));
    assert_eq!(v["status"], "strict: 2 distinct edges");
    // The output is itself a hypergraph file.
    let out = ws.file("out.json", &r.stdout);
    assert_eq!(run(&["iso"], &[&out, &ws.file("p.json", P)]).code, 0);

    let ones = r#"{"m":2,"values":{"1":1,"2":1,"3":1}}"#;
    let v = run(&["realize"], &[&ws.file("ones.json", ones)]).json();
    assert_eq!(
        v["status"],
        "degenerate: 1 distinct maximal edges of 2 indices"
    );
    assert_eq!(
        v["degeneracy"],
        serde_json::json!([{"kind": "coinciding", "indices": [0, 1]}])
    );
    assert_eq!(v["family"], serde_json::json!([["v0"], ["v0"]]));

    let bad = r#"{"m":2,"values":{"1":1,"2":1,"3":2}}"#;
    let r = run(&["realize"], &[&ws.file("bad.json", bad)]);
    assert_eq!(r.code, 3);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("decreasing"));
}

#[test]
fn recognize_command() {
    let ws = Workspace::new();
    let rho = run(&["rho"], &[&ws.file("t.json", T)]).stdout;
    let r = run(&["recognize"], &[&ws.file("rho.json", &rho)]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["reading"], "distinct-edges");
    let out = ws.file("out.json", &r.stdout);
    assert_eq!(run(&["iso"], &[&out, &ws.file("t.json", T)]).code, 0);

    let mono = r#"{"m":2,"values":{"0":0,"1":2,"2":0,"3":1}}"#;
    let r = run(&["recognize"], &[&ws.file("mono.json", mono)]);
    assert_eq!(r.code, 1);
    let v = r.json();
    assert_eq!(v["stage"], 1);
    assert_eq!(v["subset"], serde_json::json!([0]));
    assert_eq!(v["superset"], serde_json::json!([0, 1]));

    let sub = r#"{"m":2,"values":{"0":0,"1":1,"2":1,"3":3}}"#;
    let v = run(&["recognize"], &[&ws.file("sub.json", sub)]).json();
    assert_eq!(v["stage"], 1);
    assert_eq!(v["pair"], serde_json::json!([[0], [1]]));

    let dup = r#"{"m":2,"values":{"0":0,"1":1,"2":1,"3":1}}"#;
    let r = run(&["recognize"], &[&ws.file("dup.json", dup)]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["reading"], "indexed-family");
    assert!(v["status"].as_str().unwrap().starts_with("degenerate:"));

    let not_normalized = r#"{"m":1,"values":{"0":1,"1":1}}"#;
    assert_eq!(
        run(&["recognize"], &[&ws.file("nn.json", not_normalized)]).code,
        2
    );
}

#[test]
fn verify_corpus_command() {
    for (v, e) in [("3", "2"), ("1", "1")] {
        let r = implalg::<&str>(&["verify-corpus", v, e], &[]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let report = r.json();
        assert_eq!(report["all_passed"], true);
        for check in report["checks"].as_array().unwrap() {
            assert_eq!(check["failed"], 0);
        }
    }
    let r = implalg::<&str>(&["verify-corpus", "7", "5"], &[]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
}

#[test]
fn outputs_are_byte_stable() {
    let ws = Workspace::new();
    let t = ws.file("t.json", T);
    let ones = ws.file("ones.json", r#"{"m":2,"values":{"1":1,"2":1,"3":1}}"#);
    let rho = ws.file("rho.json", r#"{"m":2,"values":{"0":0,"1":2,"2":2,"3":3}}"#);
    let cases: [(&[&str], Vec<&PathBuf>); 6] = [
        (&["profile"], vec![&t]),
        (&["--pretty", "rho"], vec![&t]),
        (&["iso"], vec![&t, &t]),
        (&["realize"], vec![&ones]),
        (&["recognize"], vec![&rho]),
        (&["--dot", "realize"], vec![&ones]),
    ];
    for (args, files) in cases {
        let a = run(args, &files);
        let b = run(args, &files);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn dot_flag() {
    let ws = Workspace::new();
    let path = ws.file("path.json", r#"{"m":2,"values":{"1":2,"2":2,"3":1}}"#);
    let r = run(&["realize", "--dot"], &[&path]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("graph hypergraph {\n"));
    assert_eq!(r.stdout.matches(" -- ").count(), 4);

    let r = run(&["--dot", "profile"], &[&ws.file("t.json", T)]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
}
