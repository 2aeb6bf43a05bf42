//! CSV emission and the run manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Shortest decimal string that parses back to the same double.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        ryu::Buffer::new().format_finite(v).to_string()
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// In-memory CSV table.
#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<&'static str>,
    text: String,
    width: usize,
}

pub enum Cell<'a> {
    F(f64),
    U(usize),
    I(u64),
    S(&'a str),
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self { header: header.to_vec(), text, width: header.len() }
    }

    pub fn schema(&self) -> String {
        self.header.join(",")
    }

    pub fn row(&mut self, cells: &[Cell]) {
        assert_eq!(cells.len(), self.width, "row width must match the header");
        for (k, c) in cells.iter().enumerate() {
            if k > 0 {
                self.text.push(',');
            }
            match c {
                Cell::F(v) => self.text.push_str(&fmt_f64(*v)),
                Cell::U(v) => self.text.push_str(&v.to_string()),
                Cell::I(v) => self.text.push_str(&v.to_string()),
                Cell::S(s) => self.text.push_str(s),
            }
        }
        self.text.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FileEntry {
    pub path: String,
    pub schema: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub config_hash: String,
    pub seed: u64,
    pub defaults: BTreeMap<String, Value>,
    pub files: Vec<FileEntry>,
}

/// Collects the files of one run and writes them atomically.
pub struct OutputDir {
    root: PathBuf,
    files: Vec<FileEntry>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(Self { root: root.to_path_buf(), files: Vec::new() })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn write_table(&mut self, name: &str, table: &Table) -> Result<(), CliError> {
        self.write(name, &table.schema(), table.as_str().as_bytes())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, schema: &str, value: &T) -> Result<(), CliError> {
        let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::io(self.root.join(name), e.into()))?;
        bytes.push(b'\n');
        self.write(name, schema, &bytes)
    }

    fn write(&mut self, name: &str, schema: &str, bytes: &[u8]) -> Result<(), CliError> {
        write_atomic(&self.root.join(name), bytes)?;
        self.files.push(FileEntry {
            path: name.to_string(),
            schema: schema.to_string(),
            sha256: sha256_hex(bytes),
            bytes: bytes.len(),
        });
        Ok(())
    }

    pub fn finish(self, mut manifest: Manifest) -> Result<Manifest, CliError> {
        manifest.files = self.files;
        let mut bytes = serde_json::to_vec_pretty(&manifest).map_err(|e| CliError::io(&self.root, e.into()))?;
        bytes.push(b'\n');
        write_atomic(&self.root.join("manifest.json"), &bytes)?;
        Ok(manifest)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, bytes).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_formatting() {
        for v in [0.527, -7.95, 1e-300, 0.1 + 0.2, std::f64::consts::PI, 1.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(f64::NAN), "nan");
        assert_eq!(fmt_f64(1.0), "1.0");
    }

    #[test]
    fn manifest_hashes_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = OutputDir::create(dir.path()).unwrap();
        let mut t = Table::new(&["a", "b"]);
        t.row(&[Cell::F(0.5), Cell::S("ok")]);
        out.write_table("t.csv", &t).unwrap();
        let m = out
            .finish(Manifest {
                tool: "x",
                version: "0",
                subcommand: "t".into(),
                config_hash: String::new(),
                seed: 0,
                defaults: BTreeMap::new(),
                files: vec![],
            })
            .unwrap();
        let bytes = fs::read(dir.path().join("t.csv")).unwrap();
        assert_eq!(bytes, b"a,b\n0.5,ok\n");
        assert_eq!(m.files[0].sha256, sha256_hex(&bytes));
        assert!(dir.path().join("manifest.json").exists());
    }
}
