use std::process::{Command, Output};

use nilbruhat::poset::BruhatGraph;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilbruhat")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn enumerate_lists_twelve_labels() {
    let out = run(&["--n", "4", "--k", "2", "enumerate"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 13);
    assert!(text.lines().next().unwrap().starts_with("sigma"));
}

#[test]
fn smooth_flags_three_labels() {
    let out = run(&["--n", "4", "--k", "2", "smooth"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let singular: Vec<&str> = text.lines().filter(|l| l.contains("singular")).collect();
    assert_eq!(singular.len(), 3, "{text}");
    assert!(singular.iter().any(|l| l.contains("4,2,3,1")));
}

#[test]
fn verify_passes_and_prints_root_table() {
    let out = run(&["--n", "6", "--k", "2", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("all suites passed"));
    assert!(!text.contains("FAIL"));
    assert!(text.contains("phi+_n"));
}

#[test]
fn output_is_deterministic() {
    for cmd in ["enumerate", "smooth", "hasse", "springer"] {
        let a = run(&["--n", "5", "--k", "2", cmd]);
        let b = run(&["--n", "5", "--k", "2", cmd]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn out_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("nilbruhat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hasse.json");
    let out = run(&["--n", "4", "--k", "2", "--format", "json", "--out", path.to_str().unwrap(), "hasse"]);
    assert!(out.status.success());
    let g = BruhatGraph::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(g.nodes.len(), 12);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    let missing = std::env::temp_dir().join("nilbruhat-no-such-dir").join("x.txt");
    let io = run(&["--n", "4", "--k", "2", "--out", missing.to_str().unwrap(), "enumerate"]);
    assert_eq!(io.status.code(), Some(4));
    assert_eq!(run(&["--n", "4", "--k", "3", "enumerate"]).status.code(), Some(2));
    assert_eq!(run(&["--n", "4", "--k", "2", "tangent", "sigma=5,1,2,3,4"]).status.code(), Some(2));
    assert_eq!(run(&["--n", "4", "--k", "2", "--format", "dot", "smooth"]).status.code(), Some(2));
    assert_eq!(run(&["--n", "4", "--k", "2", "--cap", "3", "enumerate"]).status.code(), Some(3));
    assert_eq!(run(&["--bogus"]).status.code(), Some(2));
}

#[test]
fn hasse_dot_has_one_node_per_label() {
    let out = run(&["--n", "4", "--k", "2", "--format", "dot", "hasse"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.lines().filter(|l| l.contains("[label=")).count(), 12);
}

#[test]
fn json_round_trips() {
    let out = run(&["--n", "5", "--k", "2", "--format", "json", "hasse"]);
    let text = stdout(&out);
    let g = BruhatGraph::from_json(&text).unwrap();
    assert_eq!(g.export_json().trim(), text.trim());
}

#[test]
fn order_prints_a_certificate() {
    let out = run(&["--n", "4", "--k", "2", "order", "sigma=s1.s3.s2", "sigma=s2.s1.s3.s2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("a <= b: true"));
    assert!(text.contains("b <= a: false"));
    assert!(text.contains("witness: 2,4,1,3 = s1.s3.s2"));
}

#[test]
fn blueprint_lists_relations() {
    let out = run(&["--n", "4", "--k", "2", "blueprint", "sigma=s1.s3.s2", "s1.s3.s2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("K^2 ⊂ V_2^3 ⊂ K^4"), "{text}");
}
