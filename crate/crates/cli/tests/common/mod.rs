#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

/// `report` invocations pinned by the golden files, one per preset.
pub const GOLDEN: [(&str, &[&str]); 5] = [
    ("vir", &["report", "vir", "--truncate", "2"]),
    ("w", &["report", "w", "--param", "a=2", "b=1", "--truncate", "3"]),
    ("wb", &["report", "wb", "--param", "b=1/2", "--truncate", "3"]),
    ("tsv", &["report", "tsv", "--param", "a=0", "b=0", "--truncate", "1"]),
    ("tsvc", &["report", "tsvc", "--param", "c=1", "--truncate", "2"]),
];

pub fn confalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confalg")).args(args).output().expect("binary runs")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(format!("{}.txt", name))
}

/// Runs the pinned invocation twice; returns a description of the first
/// difference from the golden file, if any.
pub fn golden_diff(name: &str, args: &[&str]) -> Option<String> {
    let expected = std::fs::read(golden_path(name)).expect("golden file present");
    let first = confalg(args);
    if !first.status.success() {
        return Some(format!("exit {:?}: {}", first.status.code(), String::from_utf8_lossy(&first.stderr)));
    }
    let second = confalg(args);
    if first.stdout != second.stdout {
        return Some("two identical runs differ".into());
    }
    if first.stdout != expected {
        let got = String::from_utf8_lossy(&first.stdout).into_owned();
        let want = String::from_utf8_lossy(&expected).into_owned();
        let line = got.lines().zip(want.lines()).position(|(a, b)| a != b).unwrap_or(got.lines().count().min(want.lines().count()));
        return Some(format!("differs from golden at line {}", line + 1));
    }
    None
}
