// SPDX-License-Identifier: Apache-2.0

//! Golden-file cases shared by the golden test and the acceptance suite.

use std::fs;
use std::path::{Path, PathBuf};

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn expected_path(name: &str) -> PathBuf {
    golden_dir().join("expected").join(format!("{name}.txt"))
}

pub fn cases() -> Vec<Case> {
    let dir = golden_dir();
    let inputs = dir.join("inputs");
    let inputs = inputs.to_str().expect("utf-8 path");
    fs::read_to_string(dir.join("cases.txt"))
        .expect("cases.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once('|').expect("name | args");
            Case {
                name: name.trim().to_string(),
                args: args.split_whitespace().map(|a| a.replace("{inputs}", inputs)).collect(),
            }
        })
        .collect()
}

/// The recorded form of one run: the exit code, then standard output.
pub fn render(code: i32, stdout: &str) -> String {
    format!("exit {code}\n{stdout}")
}
