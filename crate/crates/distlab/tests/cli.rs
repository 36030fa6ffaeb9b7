use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use distlab::{parse_edge_list, write_edge_list};
use distlab_core::gen::{generate, GraphKind};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_distlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn distlab")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn distlab");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).lines().next().expect("a report line")).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Work {
    dir: tempfile::TempDir,
}

impl Work {
    fn new() -> Self {
        Work { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

const P4: &str = "4 3 1\n0 1 1\n1 2 1\n2 3 1\n";

#[test]
fn build_and_query_path() {
    let w = Work::new();
    let g = w.file("p4.txt", P4);
    let out = w.path("p4.dlab");
    let o = run(&["build", p(&g), "--scheme", "heavypath", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["n"], 4);
    assert_eq!(r["scheme"], "heavypath");
    assert_eq!(r["schema"], "distlab.run/1");
    assert_eq!(distlab::load_labels(&out).unwrap().labels.len(), 4);

    let q = run(&["query", p(&out), "0", "3"]);
    assert_eq!(stdout(&q).trim(), "3");
    let q = run(&["query", p(&out), "2", "2"]);
    assert_eq!(stdout(&q).trim(), "0");
    let q = run(&["query", p(&out), "0", "4"]);
    assert_eq!(q.status.code(), Some(2));
}

#[test]
fn parameter_errors_exit_2() {
    let w = Work::new();
    let g = w.file("p4.txt", P4);
    let o = run(&["build", p(&g), "--scheme", "approx-weights", "--D", "3", "--out", p(&w.path("x"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("D must satisfy"));
    assert_eq!(run(&["build", p(&g), "--scheme", "nope", "--out", "x"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--g", "3", "--r", "1", "--W", "1", "--base", "kn"]).status.code(), Some(2));
    let tri = w.file("k3.txt", "3 3 1\n0 1 1\n1 2 1\n0 2 1\n");
    let o = run(&["build", p(&tri), "--scheme", "heavypath-bipartite", "--out", p(&w.path("y"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn io_errors_exit_3() {
    let w = Work::new();
    let o = run(&["build", p(&w.path("missing.txt")), "--scheme", "walk", "--out", p(&w.path("o"))]);
    assert_eq!(o.status.code(), Some(3));
    let bad = w.file("bad.txt", "3 2 1\n0 1\n");
    assert_eq!(run(&["build", p(&bad), "--scheme", "walk", "--out", "o"]).status.code(), Some(3));
    let junk = w.file("junk.dlab", "not a label file");
    assert_eq!(run(&["query", p(&junk), "0", "1"]).status.code(), Some(3));
}

#[test]
fn verify_passes_and_detects_corruption() {
    let w = Work::new();
    let g = w.file("er.txt", &write_edge_list(&generate(GraphKind::Er, 20, 2, 5)));
    let labels = w.path("er.dlab");
    assert!(run(&["build", p(&g), "--scheme", "naive", "--out", p(&labels)]).status.success());
    let o = run(&["verify", p(&g), p(&labels)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verification"]["pass"], true);
    assert_eq!(json(&o)["verification"]["pairs"], 400);

    // Flip a byte inside the last label's payload; the framing stays intact.
    let mut bytes = std::fs::read(&labels).unwrap();
    let at = bytes.len() - 3;
    bytes[at] ^= 0xff;
    std::fs::write(&labels, &bytes).unwrap();
    let o = run(&["verify", p(&g), p(&labels)]);
    assert_eq!(o.status.code(), Some(1));
    let v = &json(&o)["verification"];
    assert_eq!(v["pass"], false);
    assert!(v["witness"]["x"].is_u64());
    assert!(String::from_utf8_lossy(&o.stderr).contains("verification failed at"));
}

#[test]
fn verify_rejects_labels_of_another_graph() {
    let w = Work::new();
    let a = w.file("a.txt", &write_edge_list(&generate(GraphKind::Er, 12, 1, 1)));
    let b = w.file("b.txt", &write_edge_list(&generate(GraphKind::Er, 12, 1, 2)));
    let labels = w.path("a.dlab");
    assert!(run(&["build", p(&a), "--scheme", "walk", "--out", p(&labels)]).status.success());
    assert_eq!(run(&["verify", p(&b), p(&labels)]).status.code(), Some(3));
}

#[test]
fn approximate_verify_reports_error_within_bound() {
    let w = Work::new();
    let g = w.file("er.txt", &write_edge_list(&generate(GraphKind::Er, 40, 1, 9)));
    let labels = w.path("s.dlab");
    assert!(run(&["build", p(&g), "--scheme", "approx-subsample", "--k", "1", "--out", p(&labels)]).status.success());
    let o = run(&["verify", p(&g), p(&labels)]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json(&o)["verification"];
    assert_eq!(v["additive_bound"], 2);
    assert!(v["max_error"].as_u64().unwrap() <= 2);
}

#[test]
fn constmicro_build_is_deterministic_and_queryable() {
    let w = Work::new();
    let text = write_edge_list(&generate(GraphKind::Er, 1024, 1, 11));
    let g = w.file("er.txt", &text);
    let (a, b) = (w.path("a.dlab"), w.path("b.dlab"));
    let ra = run(&["--no-time", "build", p(&g), "--scheme", "constmicro", "--out", p(&a)]);
    let rb = run(&["build", p(&g), "--scheme", "constmicro", "--out", p(&b), "--no-time"]);
    assert!(ra.status.success() && rb.status.success());
    assert_eq!(ra.stdout, rb.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (ta, tb) = (distlab::format::tables_path(&a), distlab::format::tables_path(&b));
    assert_eq!(std::fs::read(&ta).unwrap(), std::fs::read(tb).unwrap());

    let graph = parse_edge_list(&text).unwrap();
    let oracle = graph.all_pairs_oracle();
    for (x, y) in [(0usize, 1023usize), (17, 400), (900, 5)] {
        let q = run(&["query", p(&a), &x.to_string(), &y.to_string()]);
        assert_eq!(stdout(&q).trim(), oracle.dist(x, y).to_string());
    }
    // Without the table file the query cannot be answered.
    std::fs::remove_file(&ta).unwrap();
    assert_eq!(run(&["query", p(&a), "0", "1"]).status.code(), Some(3));
}

#[test]
fn oracle_answers_batches() {
    let w = Work::new();
    let graph = generate(GraphKind::Tree, 15, 3, 4);
    let g = w.file("t.txt", &write_edge_list(&graph));
    let oracle = graph.all_pairs_oracle();
    let mut input = String::new();
    let mut want = String::new();
    for x in 0..15 {
        for y in 0..15 {
            input.push_str(&format!("{x} {y}\n"));
            want.push_str(&format!("{}\n", oracle.dist(x, y)));
        }
    }
    let o = run_stdin(&["oracle", p(&g), "--scheme", "heavypath"], &input);
    assert!(o.status.success());
    assert_eq!(stdout(&o), want);
    let report: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(report["queries"], 225);
    assert!(report["total_bits"].as_u64().unwrap() > 0);

    let o = run_stdin(&["oracle", p(&g), "--scheme", "walk"], "");
    assert!(o.status.success());
    assert!(o.stdout.is_empty());

    let o = run_stdin(&["oracle", p(&g), "--scheme", "walk"], "0 99\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_answers_inf_across_components() {
    let w = Work::new();
    let g = w.file("two.txt", "4 2 1\n0 1 1\n2 3 1\n");
    let o = run_stdin(&["oracle", p(&g), "--scheme", "walk"], "0 1\n0 3\n");
    assert_eq!(stdout(&o), "1\ninf\n");
    let labels = w.path("two.dlab");
    assert_eq!(run(&["build", p(&g), "--scheme", "walk", "--out", p(&labels)]).status.code(), Some(2));
    assert!(run(&["build", p(&g), "--scheme", "walk", "--out", p(&labels), "--lenient"]).status.success());
    assert_eq!(stdout(&run(&["query", p(&labels), "1", "2"])).trim(), "inf");
    assert_eq!(run(&["verify", p(&g), p(&labels)]).status.code(), Some(0));
}

#[test]
fn bounds_reports() {
    let o = run(&["bounds", "--g", "3", "--r", "0", "--W", "1", "--base", "kn", "--n", "10"]);
    let r = json(&o);
    assert_eq!(r["k"], 1);
    assert_eq!(r["per_label_bits"], 4.5);

    let o = run(&["bounds", "--g", "4", "--r", "1", "--W", "3", "--base", "knn", "--n", "8"]);
    let r = json(&o);
    assert_eq!(r["k"], 1);
    assert_eq!(r["per_label_bits"], 2.0);

    let o = run(&["bounds", "--g", "3", "--r", "0", "--W", "3", "--base", "kn", "--n", "4", "--verify"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["family_size"], 729);
    assert_eq!(json(&o)["verified"], true);
    assert!(String::from_utf8_lossy(&o.stderr).contains("verified, 729 realizations"));

    let o =
        run(&["bounds", "--g", "3", "--r", "0", "--W", "9", "--base", "kn", "--n", "6", "--verify", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(2));
    // K4 has girth 3, so a girth-4 hypothesis does not apply to it.
    let o = run(&["bounds", "--g", "4", "--r", "0", "--W", "2", "--base", "kn", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_emits_json_lines_and_csv() {
    let o = run(&["bench", "--scheme", "walk", "--n-sweep", "16,32", "--W", "2", "--verify", "--no-time"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["n"], 16);
    assert_eq!(lines[1]["verification"]["pass"], true);
    assert_eq!(lines[2]["command"], "bench-summary");
    let again = run(&["bench", "--scheme", "walk", "--n-sweep", "16,32", "--W", "2", "--verify", "--no-time"]);
    assert_eq!(again.stdout, o.stdout);

    let o = run(&["bench", "--scheme", "heavypath-bipartite", "--n-sweep", "20", "--format", "csv"]);
    let text = stdout(&o);
    let mut rows = text.lines();
    assert!(rows.next().unwrap().starts_with("scheme,n,W,max_bits"));
    assert!(rows.next().unwrap().starts_with("heavypath-bipartite,20,1,"));
}

#[test]
fn generate_writes_parseable_graphs() {
    let w = Work::new();
    let out = w.path("g.txt");
    assert!(run(&["generate", "--kind", "bipartite", "--n", "30", "--W", "4", "--seed", "2", "--out", p(&out)])
        .status
        .success());
    let g = parse_edge_list(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(g, generate(GraphKind::Bipartite, 30, 4, 2));
}
