#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn ecgkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecgkit"))
        .args(args)
        .env_remove("ECGKIT_WORKERS")
        .output()
        .expect("failed to spawn ecgkit")
}

pub fn ok(args: &[&str]) -> Output {
    let out = ecgkit(args);
    assert!(
        out.status.success(),
        "ecgkit {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

/// File name to contents for every file in `dir`.
pub fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut files = BTreeMap::new();
    for entry in fs::read_dir(dir).expect("readable output dir") {
        let entry = entry.unwrap();
        files.insert(entry.file_name().to_string_lossy().into_owned(), fs::read(entry.path()).unwrap());
    }
    files
}

/// Builds a small fixture: a ring of cliques, its ECG weights and partition,
/// and a copy with planted anomalies.
pub struct Fixture {
    pub root: tempfile::TempDir,
}

impl Fixture {
    pub fn new() -> Self {
        let root = tempfile::tempdir().unwrap();
        let f = Fixture { root };
        ok(&["generate", "ring", "--cliques", "12", "--size", "5", "--between", "2", "--seed", "4", "--out", path(&f.dir("ring"))]);
        ok(&["ecg", "--input", path(&f.file("ring/graph.txt")), "--seed", "9", "--out", path(&f.dir("ecg"))]);
        ok(&[
            "generate", "anomalies", "--input", path(&f.file("ring/graph.txt")),
            "--truth", path(&f.file("ring/truth.txt")), "--count", "6", "--seed", "2",
            "--out", path(&f.dir("anom")),
        ]);
        f
    }

    pub fn dir(&self, name: &str) -> PathBuf {
        self.root.path().join(name)
    }

    pub fn file(&self, name: &str) -> PathBuf {
        self.root.path().join(name)
    }

    /// Argument lists covering every subcommand, each with a fixed seed.
    /// `--out` is appended by the caller.
    pub fn commands(&self) -> Vec<(&'static str, Vec<String>)> {
        let graph = path(&self.file("ring/graph.txt")).to_string();
        let truth = path(&self.file("ring/truth.txt")).to_string();
        let weights = path(&self.file("ecg/weights.txt")).to_string();
        let partition = path(&self.file("ecg/partition.txt")).to_string();
        let anom_graph = path(&self.file("anom/graph.txt")).to_string();
        let anom_mask = path(&self.file("anom/anomalies.txt")).to_string();
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        vec![
            ("cluster-ml", s(&["cluster", "--input", &graph, "--seed", "3"])),
            ("cluster-level1", s(&["cluster", "--input", &graph, "--algo", "level1", "--seed", "3"])),
            ("ecg", s(&["ecg", "--input", &graph, "--seed", "5", "--ens-size", "12"])),
            ("ecg-multiply", s(&["ecg", "--input", &graph, "--seed", "5", "--combine", "multiply"])),
            ("csi", s(&["csi", "--weights", &weights])),
            ("compare", s(&["compare", "--truth", &truth, "--found", &partition, "--graph", &graph])),
            ("stability", s(&["stability", "--input", &graph, "--runs", "4", "--seed", "8"])),
            ("generate-ring", s(&["generate", "ring", "--cliques", "10", "--size", "4", "--between", "3", "--seed", "1"])),
            ("generate-sbm", s(&["generate", "sbm", "--sizes", "30,20,10", "--pin", "0.3", "--pout", "0.02", "--seed", "1"])),
            ("generate-null", s(&["generate", "null", "--input", &graph, "--seed", "1"])),
            ("generate-anomalies", s(&["generate", "anomalies", "--input", &graph, "--truth", &truth, "--count", "4", "--seed", "1"])),
            ("dimmer", s(&["dimmer", "--input", &graph, "--weights", &weights, "--partition", &partition, "--seed-vertex", "7", "--theta", "0.5", "--profile"])),
            ("cada", s(&["cada", "--input", &anom_graph, "--anomalies", &anom_mask, "--seed", "6"])),
            ("cada-ml", s(&["cada", "--input", &anom_graph, "--anomalies", &anom_mask, "--algo", "ml", "--seed", "6"])),
            ("bench-ring", s(&["bench", "ring", "--cliques", "8..16", "--step", "4", "--size", "4", "--seeds", "3", "--ens-size", "8", "--seed", "2"])),
            ("bench-sbm", s(&["bench", "sbm", "--sizes", "40,30,20", "--pin", "0.3", "--pout", "0.01,0.05", "--seeds", "3", "--ens-size", "8", "--seed", "2"])),
        ]
    }
}

/// Runs `args` into a fresh output directory with the given worker count
/// and returns stdout plus every output file.
pub fn run_into(args: &[String], out: &Path, workers: usize) -> (Vec<u8>, BTreeMap<String, Vec<u8>>) {
    let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
    let w = workers.to_string();
    full.extend(["--workers", &w, "--out", path(out)]);
    let output = ok(&full);
    (output.stdout, snapshot(out))
}
