//! End-to-end checks of the binary: exit codes, stats output, CSV shapes,
//! auto-p failure mode and byte-level determinism of reruns.

use std::path::PathBuf;
use std::process::{Command, Output};

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperperc-cli-{name}"));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperperc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn tiling_gen_layer_counts() {
    let dir = workdir("gen-r6");
    let out = run(&[
        "tiling", "gen", "--symbol", "5,5", "--radius", "6",
        "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("layers=1,5,20,70,245,860,3015"),
        "unexpected stats line: {text}"
    );
    assert!(dir.join("tiling_5_5_r6.ht").is_file());
    assert!(dir.join("manifest.json").is_file());
}

#[test]
fn tiling_gen_radius_zero() {
    let dir = workdir("gen-r0");
    let out = run(&[
        "tiling", "gen", "--symbol", "5,5", "--radius", "0",
        "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let file = std::fs::read_to_string(dir.join("tiling_5_5_r0.ht")).unwrap();
    assert!(file.contains("counts 1 0 0"), "{file}");
}

#[test]
fn invalid_symbol_exits_2() {
    let dir = workdir("gen-bad");
    let out = run(&[
        "tiling", "gen", "--symbol", "4,4", "--radius", "2",
        "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("InvalidSymbol"), "{}", stderr(&out));
}

#[test]
fn sweep_trivial_grid_rows() {
    let dir = workdir("sweep-trivial");
    let out = run(&[
        "sweep", "--symbol", "5,5", "--radius", "3", "--pmin", "0", "--pmax", "1",
        "--steps", "2", "--seeds", "1", "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.join("sweep_r3.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "p,seed,largest,second,giants,root_to_boundary,pairs_connected,unique_giant"
    );
    assert_eq!(lines.len(), 3);
    // p = 0: all singletons; p = 1: one spanning cluster of 96 vertices
    assert!(lines[1].starts_with("0,") && lines[1].contains(",1,1,0,false,0,false"));
    assert!(lines[2].starts_with("1,") && lines[2].contains(",96,0,1,true,120,true"));
}

#[test]
fn sweep_reruns_are_byte_identical() {
    let dir = workdir("sweep-rerun");
    let names = ["sweep_r2.csv", "sweep_r3.csv", "sweep_r4.csv", "estimates.json"];
    let mut first = Vec::new();
    for pass in 0..2 {
        let out = run(&[
            "sweep", "--symbol", "5,5", "--radius", "2", "--radius", "3", "--radius", "4",
            "--steps", "11", "--seeds", "5", "--out", dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        let files: Vec<Vec<u8>> = names
            .iter()
            .map(|n| std::fs::read(dir.join(n)).unwrap())
            .collect();
        if pass == 0 {
            first = files;
        } else {
            for (name, (a, b)) in names.iter().zip(first.iter().zip(&files)) {
                assert_eq!(a, b, "{name} differs between identical runs");
            }
        }
    }
}

#[test]
fn boundary_trivial_probabilities() {
    let dir = workdir("boundary-trivial");
    let out = run(&[
        "boundary", "--symbol", "5,5", "--radius", "2", "--radius", "4",
        "--p", "1", "--p", "0", "--seeds", "3", "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.join("chains.csv")).unwrap();
    let data: Vec<&str> = csv.lines().skip(1).collect();
    assert!(!data.is_empty());
    // all chains come from p = 1 (p = 0 has no giant candidates) and the
    // single full-patch chain covers nearly the whole circle
    for line in &data {
        assert!(line.starts_with("1,"), "unexpected row {line}");
        let diameter: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(diameter > 6.0, "{line}");
    }
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("boundary.json")).unwrap())
            .unwrap();
    let per_p = json["per_p"].as_array().unwrap();
    assert_eq!(per_p.len(), 2);
    assert_eq!(per_p[0]["p"], 0.0);
    assert_eq!(per_p[0]["chains"], 0);
    assert!(per_p[0]["median_terminal"].is_null());
    assert_eq!(per_p[1]["p"], 1.0);
    assert_eq!(per_p[1]["chains"], 3);
    assert!(per_p[1]["median_terminal"].as_f64().unwrap() > 6.0);
}

#[test]
fn boundary_auto_without_estimates_exits_3() {
    let dir = workdir("boundary-auto");
    let out = run(&[
        "boundary", "--symbol", "5,5", "--radius", "2", "--radius", "4",
        "--auto", "--seeds", "2", "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("MissingEstimates"), "{}", stderr(&out));
}

#[test]
fn render_radius_one_gives_five_chords() {
    let dir = workdir("render-r1");
    let out = run(&[
        "render", "--symbol", "5,5", "--radius", "1",
        "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let svg = std::fs::read_to_string(dir.join("scene.svg")).unwrap();
    assert_eq!(svg.matches("class=\"ideal\"").count(), 1);
    let edges: Vec<&str> = svg
        .lines()
        .filter(|l| l.contains("class=\"edge\""))
        .collect();
    assert_eq!(edges.len(), 5);
    for e in &edges {
        // all five edges run through the center: straight chords, no arcs
        assert!(e.contains(" L ") && !e.contains(" A "), "{e}");
        assert!(e.contains("M 0.000000 0.000000"), "{e}");
    }
}

#[test]
fn render_reruns_are_byte_identical() {
    let dirs = [workdir("render-a"), workdir("render-b")];
    for dir in &dirs {
        let out = run(&[
            "render", "--symbol", "5,5", "--radius", "3", "--p", "0.55", "--seed", "7",
            "--arcs", "--out", dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let a = std::fs::read(dirs[0].join("scene.svg")).unwrap();
    let b = std::fs::read(dirs[1].join("scene.svg")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn config_file_with_flag_override() {
    let dir = workdir("config-file");
    let config = dir.join("run.toml");
    std::fs::write(
        &config,
        format!(
            "symbol = [5, 5]\nradii = [2]\nsteps = 5\nseed_base = 10\nseed_count = 2\nout = {:?}\n",
            dir.join("from-file")
        ),
    )
    .unwrap();
    // flag overrides the file's radius but keeps its seeds and output dir
    let out = run(&[
        "sweep", "--config", config.to_str().unwrap(), "--radius", "3",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.join("from-file/sweep_r3.csv")).unwrap();
    // 2 seeds x 5 grid points plus the header
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.contains("\n0,10,") && csv.contains("\n0,11,"));
    assert!(!dir.join("from-file/sweep_r2.csv").exists());
}
