#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub const DEVICE: &str = r#""device": {"e_j_ghz": 4.75, "e_c_ghz": 1.25, "e_l_ghz": 1.5}"#;

/// Writes `{ DEVICE, extra }` to `dir/name` and returns its path.
pub fn write_config(dir: &Path, name: &str, extra: &str) -> PathBuf {
    let body = if extra.trim().is_empty() { format!("{{{DEVICE}}}") } else { format!("{{{DEVICE}, {extra}}}") };
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

pub struct Outcome {
    pub code: i32,
    pub stderr: String,
}

impl Outcome {
    /// The JSON record printed as the last stderr line.
    pub fn record(&self) -> serde_json::Value {
        serde_json::from_str(self.stderr.lines().last().unwrap_or("null")).unwrap_or(serde_json::Value::Null)
    }
}

pub fn simulate(args: &[&str]) -> Outcome {
    simulate_env(args, &[])
}

pub fn simulate_env(args: &[&str], env: &[(&str, &str)]) -> Outcome {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_simulate"));
    cmd.args(args).env_remove("FLUXPULSE_WORKERS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Outcome { code: out.status.code().unwrap_or(-1), stderr: String::from_utf8_lossy(&out.stderr).into_owned() }
}

pub fn run_ok(sub: &str, config: &Path, out: &Path, extra: &[&str]) -> serde_json::Value {
    let mut args = vec![sub, "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = simulate(&args);
    assert_eq!(o.code, 0, "{sub} failed: {}", o.stderr);
    o.record()
}

pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn read(path: &Path) -> Self {
        let text = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let mut lines = text.lines();
        let header = lines.next().unwrap().split(',').map(String::from).collect();
        let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
        Self { header, rows }
    }

    pub fn index(&self, name: &str) -> usize {
        self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
    }

    pub fn column(&self, name: &str) -> Vec<f64> {
        let k = self.index(name);
        self.rows.iter().map(|r| r[k].parse().unwrap()).collect()
    }

    pub fn text(&self, name: &str) -> Vec<String> {
        let k = self.index(name);
        self.rows.iter().map(|r| r[k].clone()).collect()
    }

    /// Row whose `key` column equals `value`.
    pub fn lookup(&self, key: &str, value: &str, col: &str) -> f64 {
        let (k, c) = (self.index(key), self.index(col));
        let row = self.rows.iter().find(|r| r[k] == value).unwrap_or_else(|| panic!("no row with {key} = {value}"));
        row[c].parse().unwrap()
    }

    /// Value of `col` in the row whose numeric `key` is nearest to `x`.
    pub fn nearest(&self, key: &str, x: f64, col: &str) -> f64 {
        let keys = self.column(key);
        let vals = self.column(col);
        let mut best = 0;
        for (i, k) in keys.iter().enumerate() {
            if (k - x).abs() < (keys[best] - x).abs() {
                best = i;
            }
        }
        vals[best]
    }
}
