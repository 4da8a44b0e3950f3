use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn esd(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_esd"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn gen(family: &str) -> String {
    let out = esd(&["gen", family], None);
    assert_eq!(code(&out), 0);
    String::from_utf8(out.stdout).unwrap()
}

struct TempFile(PathBuf);

impl TempFile {
    fn new(name: &str, contents: &str) -> Self {
        let path = std::env::temp_dir().join(format!("esd-cli-{}-{name}", std::process::id()));
        std::fs::write(&path, contents).unwrap();
        TempFile(path)
    }

    fn path(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

#[test]
fn verify_path_identity() {
    let g = TempFile::new("p4.json", &gen("path:4"));
    let out = esd(
        &["verify", g.path(), "-"],
        Some(r#"{"l":4,"labels":{"1":1,"2":2,"3":3,"4":4}}"#),
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out), json!({"esd": true}));
}

#[test]
fn verify_reports_clash_on_cycle() {
    let g = TempFile::new("c4.json", &gen("cycle:4"));
    let out = esd(
        &["verify", g.path(), "-"],
        Some(r#"{"l":4,"labels":{"1":1,"2":2,"3":3,"4":4}}"#),
    );
    assert_eq!(code(&out), 1);
    assert_eq!(
        stdout_json(&out),
        json!({"esd": false, "conflict": {"kind": "weightClash", "first": [1, 4], "second": [2, 3], "weight": 5}})
    );
}

#[test]
fn verify_require_total() {
    let g = TempFile::new("p3.json", &gen("path:3"));
    let partial = r#"{"l":3,"labels":{"1":1}}"#;
    assert_eq!(code(&esd(&["verify", g.path(), "-"], Some(partial))), 0);
    let out = esd(&["verify", g.path(), "-", "--require-total"], Some(partial));
    assert_ne!(code(&out), 0);
}

#[test]
fn search_fan_eight_has_none() {
    let out = esd(&["search", "-", "--labels", "8"], Some(&gen("fan:8")));
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "exhaustedNoneExists");
    assert_eq!(v["labelings"], json!([]));
    assert!(v["nodes"].as_u64().unwrap() > 0);
}

#[test]
fn search_result_verifies() {
    let graph = gen("fan:7");
    let out = esd(&["search", "-", "-l", "7"], Some(&graph));
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "found");
    let g = TempFile::new("f7.json", &graph);
    let check = esd(
        &["verify", g.path(), "-", "--require-total"],
        Some(&v["labelings"][0].to_string()),
    );
    assert_eq!(code(&check), 0);
}

fn naive_canonical_count(n: usize, edges: &[(usize, usize)]) -> u64 {
    fn perms(k: usize, cur: &mut Vec<u64>, used: &mut [bool], f: &mut dyn FnMut(&[u64])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for a in 0..k {
            if !used[a] {
                used[a] = true;
                cur.push(a as u64 + 1);
                perms(k, cur, used, f);
                cur.pop();
                used[a] = false;
            }
        }
    }
    let mut count = 0;
    perms(n, &mut Vec::new(), &mut vec![false; n], &mut |labels| {
        let mut w: Vec<u64> = edges.iter().map(|&(a, b)| labels[a - 1] + labels[b - 1]).collect();
        w.sort_unstable();
        w.dedup();
        if w.len() == edges.len() {
            count += 1;
        }
    });
    count
}

#[test]
fn search_count_matches_brute_force() {
    for family in ["path:5", "cycle:5", "star:4", "kpq:2,3"] {
        let graph = gen(family);
        let parsed: Value = serde_json::from_str(&graph).unwrap();
        let n = parsed["n"].as_u64().unwrap() as usize;
        let edges: Vec<(usize, usize)> = parsed["edges"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize))
            .collect();
        let n_str = n.to_string();
        let out = esd(&["search", "-", "-l", &n_str, "--mode", "count"], Some(&graph));
        let v = stdout_json(&out);
        assert_eq!(
            v["count"].as_u64().unwrap(),
            naive_canonical_count(n, &edges),
            "{family}"
        );
        // deterministic across runs
        let again = esd(&["search", "-", "-l", &n_str, "--mode", "count"], Some(&graph));
        assert_eq!(out.stdout, again.stdout);
        assert_eq!(code(&out), code(&again));
    }
}

#[test]
fn search_enum_iso_on_k23() {
    let out = esd(&["search", "-", "-l", "5", "--mode", "enum-iso"], Some(&gen("kpq:2,3")));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["labelings"].as_array().unwrap().len(), 1);
}

#[test]
fn node_limit_aborts_with_code_three() {
    let out = esd(&["search", "-", "-l", "9", "--node-limit", "5"], Some(&gen("fan:9")));
    assert_eq!(code(&out), 3);
    assert_eq!(stdout_json(&out)["status"], "aborted");
}

#[test]
fn parallel_search_agrees() {
    let graph = gen("fan:8");
    let out = esd(&["search", "-", "-l", "8", "--jobs", "4"], Some(&graph));
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["status"], "exhaustedNoneExists");
}

#[test]
fn min_pool_of_k4() {
    let out = esd(&["min-pool", "-", "--max", "8"], Some(&gen("complete:4")));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["pool"], 5);
}

#[test]
fn game_bound_of_p10() {
    let out = esd(&["game", "bound", "-"], Some(&gen("path:10")));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out), json!({"bound": 50}));
}

#[test]
fn game_play_and_replay() {
    let graph = gen("star:4");
    let g = TempFile::new("s4.json", &graph);
    for seed in 0..5u64 {
        let seed = seed.to_string();
        let out = esd(
            &[
                "game",
                "play",
                g.path(),
                "-l",
                "5",
                "--alice",
                "random",
                "--bob",
                "greedy",
                "--seed",
                &seed,
            ],
            None,
        );
        assert_eq!(code(&out), 0);
        let rec = stdout_json(&out);
        assert_eq!(rec["winner"], "Alice");
        assert_eq!(rec["moves"].as_array().unwrap().len(), 5);
        let replay = esd(&["game", "replay", g.path(), "-", "-l", "5"], Some(&rec.to_string()));
        assert_eq!(code(&replay), 0);
        let r = stdout_json(&replay);
        assert_eq!(r["winner"], "Alice");
        assert_eq!(r["matchesClaimedWinner"], true);
    }
}

#[test]
fn replay_rejects_forged_winner() {
    let g = TempFile::new("k2.json", &gen("path:2"));
    let forged = r#"{"moves":[{"v":1,"label":1},{"v":2,"label":2}],"winner":"Bob"}"#;
    let out = esd(&["game", "replay", g.path(), "-", "-l", "2"], Some(forged));
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["matchesClaimedWinner"], false);
}

#[test]
fn game_solve_small_cases() {
    let out = esd(&["game", "solve", "-", "-l", "5"], Some(&gen("kpq:2,3")));
    assert_eq!(stdout_json(&out)["winner"], "Bob");
    let out = esd(&["game", "solve", "-", "-l", "4"], Some(&gen("star:3")));
    assert_eq!(stdout_json(&out)["winner"], "Alice");
    let out = esd(&["game", "solve", "-", "-l", "8"], Some(&gen("fan:8")));
    assert_eq!(code(&out), 2, "guard applies");
    let out = esd(
        &["game", "solve", "-", "-l", "7", "--max-n", "7"],
        Some(&gen("kpq:2,5")),
    );
    assert_eq!(stdout_json(&out)["winner"], "Bob");
}

#[test]
fn construct_families() {
    let out = esd(&["construct", "grid:4x3"], None);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["canonical"], true);
    assert_eq!(v["graph"]["n"], 12);
    let out = esd(&["construct", "fan:8"], None);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["labeling"], Value::Null);
    let out = esd(&["construct", "grid:3x3"], None);
    assert_eq!(code(&out), 2);
    let out = esd(&["construct", "sunlet:4,2"], None);
    assert_eq!(stdout_json(&out)["labelPoolSize"], 10);
    let out = esd(&["construct", "cycle:5", "--format", "dot"], None);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.contains("v1 [label=\"1:"), "{dot}");
    assert!(dot.contains("weight="));
}

#[test]
fn convert_round_trip() {
    for family in ["grid:3x4", "sunlet:5,2", "tree:30,4", "tight:9"] {
        let json = gen(family);
        let dot = esd(&["convert", "-", "--format", "dot"], Some(&json));
        assert_eq!(code(&dot), 0);
        let back = esd(&["convert", "-"], Some(std::str::from_utf8(&dot.stdout).unwrap()));
        assert_eq!(
            stdout_json(&back),
            serde_json::from_str::<Value>(&json).unwrap(),
            "{family}"
        );
    }
}

#[test]
fn table_format() {
    let out = esd(&["construct", "path:3", "--format", "table"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("v1v2"));
    assert!(text.contains("canonical = true"));
}

#[test]
fn malformed_input_reports_position() {
    let out = esd(&["convert", "-"], Some("{\"n\": 3,\n \"edges\": [[1, 2],, ]}"));
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    let out = esd(&["convert", "-"], Some("graph G {\n  v1 -- w;\n}\n"));
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
    let out = esd(&["convert", "-"], Some(r#"{"n": 2, "edges": [[1, 1]]}"#));
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&esd(&["search", "-", "--bogus"], None)), 2);
    assert_eq!(code(&esd(&["gen", "hexagon:3"], None)), 2);
    assert_eq!(
        code(&esd(&["game", "play", "-", "-l", "3", "--alice", "clever"], None)),
        2
    );
    assert_eq!(code(&esd(&["verify", "-", "-"], None)), 2);
    assert_eq!(code(&esd(&["game", "bound", "/nonexistent/graph.json"], None)), 2);
    assert_eq!(
        code(&esd(&["game", "bound", "-", "--format", "dot"], Some(&gen("path:3")))),
        2
    );
}
