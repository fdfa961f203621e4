use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn treepart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treepart"))
        .args(args)
        .env_remove("TREEPART_BUDGETS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &Path, name: &str, spec: &[&str]) -> std::path::PathBuf {
    let file = dir.join(name);
    let mut args = vec!["gen"];
    args.extend_from_slice(spec);
    args.extend_from_slice(&["-o", path(&file)]);
    assert!(treepart(&args).status.success());
    file
}

#[test]
fn gcl_treewidth_is_c() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "g.txt", &["gcl", "3", "2"]);
    let o = treepart(&["tw", path(&g), "--exact"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn grid_partition_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "grid.txt", &["grid", "5", "5"]);
    let p = dir.path().join("p.txt");
    let o = treepart(&[
        "partition",
        path(&g),
        "--class",
        "minor-free:3",
        "--c",
        "3",
        "-o",
        path(&p),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = treepart(&["verify", path(&g), path(&p)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn brute_ccl_exceeds_ell() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "c.txt", &["ccl", "2", "2"]);
    let o = treepart(&["brute", path(&g), "--tpw", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn gen_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "fan.txt", &["fan", "7"]);
    let text = fs::read_to_string(&g).unwrap();
    let o = treepart(&["gen", "fan", "7"]);
    assert_eq!(stdout(&o), text);
    let o = treepart(&["gen", "outer", "15", "1", "--seed", "4"]);
    assert_eq!(
        stdout(&o),
        stdout(&treepart(&["gen", "outer", "15", "1", "--seed", "4"]))
    );
}

#[test]
fn outer_drawing_feeds_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("o.txt");
    let d = dir.path().join("d.txt");
    assert!(treepart(&[
        "gen",
        "outer",
        "14",
        "1",
        "--seed",
        "2",
        "-o",
        path(&g),
        "--drawing",
        path(&d)
    ])
    .status
    .success());
    let o = treepart(&[
        "partition",
        path(&g),
        "--class",
        "outer-k:1",
        "--drawing",
        path(&d),
        "--release",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "k4.txt", &["complete", "4"]);
    // class mismatch on --c, unknown class, missing file, bad family
    assert_eq!(
        treepart(&["partition", path(&g), "--class", "k2t", "--c", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        treepart(&["partition", path(&g), "--class", "planar"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        treepart(&["tw", path(&dir.path().join("none.txt"))])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(treepart(&["gen", "wheel", "5"]).status.code(), Some(2));
    // K4 contains S_{3,1}
    let o = treepart(&["partition", path(&g), "--class", "spider:3,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
    // two parts joined by an edge while the quotient has none
    let c4 = gen(dir.path(), "c4.txt", &["cycle", "4"]);
    let p = dir.path().join("p.txt");
    fs::write(&p, "[parts]\n0: 0 1\n1: 2 3\n[quotient]\n2 0\n[certificate]\n2 1\n0: 0\n1: 1\n0 1\n[meta]\nn = 4\nc = 0\n").unwrap();
    let o = treepart(&["verify", path(&c4), path(&p)]);
    assert_eq!(
        o.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    fs::write(&p, "[parts]\n0: 0 1 2 3\n").unwrap();
    assert_eq!(
        treepart(&["verify", path(&c4), path(&p)]).status.code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_treepart"))
        .args(["tw", path(&g)])
        .env("TREEPART_BUDGETS", "tw=0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn disjointedness_audit() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "c6.txt", &["cycle", "6"]);
    let o = treepart(&["brute", path(&g), "--disjointed", "1", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("holds"));
    let c = gen(dir.path(), "ccl.txt", &["ccl", "2", "2"]);
    assert_eq!(
        treepart(&["brute", path(&c), "--disjointed", "1", "2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn bench_writes_rows_in_suite_order() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite.txt");
    fs::write(
        &suite,
        "# grids and cycles\ndegree grid 4 4\nk2t cycle 10\n\nminor-free:3 grid 4 5\n",
    )
    .unwrap();
    let json = dir.path().join("t.json");
    let o = treepart(&["bench", path(&suite), "--json", path(&json)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let ids: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(
        ids,
        ["degree/grid-4-4", "k2t/cycle-10", "minor-free:3/grid-4-5"]
    );
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}
