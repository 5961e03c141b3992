#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn hypfree(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_hypfree")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

/// Writes the stdout of `args` to `dir/name` and returns the path.
pub fn save(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let r = hypfree(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    let p = dir.join(name);
    std::fs::write(&p, r.stdout).unwrap();
    p
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}
