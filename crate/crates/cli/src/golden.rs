//! The golden corpus: named invocations whose JSON output is stored and compared byte for byte.
//!
//! `manifest.json` lists each example with its arguments; arguments ending in `.json` name
//! input files in the corpus directory. Expected outputs live in `expected/<name>.json` and
//! change only through `--bless`.

use std::path::{Path, PathBuf};

use realstack_core::schema::SCHEMA;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{dispatch, CliError, Report, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenExample {
    pub name: String,
    /// Which worked example this reproduces.
    pub anchor: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema: String,
    pub examples: Vec<GoldenExample>,
}

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

pub fn load_manifest(dir: &Path) -> Result<Manifest, CliError> {
    crate::commands::read_document(&dir.join("manifest.json"))
}

/// The full argument list for an example, with input files resolved against `dir`.
pub fn resolved_args(dir: &Path, ex: &GoldenExample) -> Vec<String> {
    let mut args: Vec<String> = ex
        .args
        .iter()
        .map(|a| {
            if a.ends_with(".json") {
                dir.join(a).display().to_string()
            } else {
                a.clone()
            }
        })
        .collect();
    args.extend(["--format".to_string(), "json".to_string()]);
    args
}

pub fn expected_path(dir: &Path, name: &str) -> PathBuf {
    dir.join("expected").join(format!("{name}.json"))
}

pub(crate) fn list(dir: &Path) -> Result<Report, CliError> {
    let m = load_manifest(dir)?;
    let value = json!({"schema": SCHEMA, "command": "example", "examples": m.examples});
    Ok(Report {
        value,
        status: Status::Ok,
    })
}

pub(crate) fn run(dir: &Path, name: &str, bless: bool) -> Result<Report, CliError> {
    let m = load_manifest(dir)?;
    let ex = m.examples.iter().find(|e| e.name == name).ok_or_else(|| {
        CliError::Usage(format!("no example named {name:?}; see `example --list`"))
    })?;
    let out = dispatch(resolved_args(dir, ex));
    if out.code == 2 {
        return Err(CliError::Usage(format!(
            "example {name} did not run: {}",
            out.stderr.trim()
        )));
    }
    let path = expected_path(dir, name);
    let io = |e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let matches = if bless {
        std::fs::create_dir_all(path.parent().expect("expected/ directory")).map_err(io)?;
        std::fs::write(&path, &out.stdout).map_err(io)?;
        true
    } else {
        std::fs::read_to_string(&path).map_err(io)? == out.stdout
    };
    let output: Value = serde_json::from_str(&out.stdout).expect("commands print JSON");
    let value = json!({
        "schema": SCHEMA,
        "command": "example",
        "name": ex.name,
        "anchor": ex.anchor,
        "matches": matches,
        "blessed": bless,
        "output": output,
    });
    let status = if matches && out.code == 0 {
        Status::Ok
    } else {
        Status::Fails
    };
    Ok(Report { value, status })
}
