//! Reading JSON input files.
//!
//! A string in place of an object under one of the keys in [`NESTABLE`] (or
//! inside a `factors` array) is a path to another file, resolved relative to
//! the file that mentions it.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::error::CliError;

const NESTABLE: [&str; 8] = ["source", "target", "base", "object", "ring", "category", "group", "field"];
const MAX_DEPTH: usize = 16;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse_value(path: &Path, text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Replaces nested path strings by file contents; true if anything changed.
fn resolve(v: &mut Value, dir: &Path, depth: usize) -> Result<bool, CliError> {
    let mut changed = false;
    match v {
        Value::Object(map) => {
            for (k, child) in map.iter_mut() {
                if let Value::String(p) = child {
                    if NESTABLE.contains(&k.as_str()) {
                        *child = include(&dir.join(p.as_str()), depth)?;
                        changed = true;
                        continue;
                    }
                }
                if k == "factors" {
                    if let Value::Array(items) = child {
                        for item in items.iter_mut() {
                            if let Value::String(p) = item {
                                *item = include(&dir.join(p.as_str()), depth)?;
                                changed = true;
                            }
                        }
                    }
                }
                changed |= resolve(child, dir, depth)?;
            }
        }
        Value::Array(items) => {
            for item in items {
                changed |= resolve(item, dir, depth)?;
            }
        }
        _ => {}
    }
    Ok(changed)
}

fn include(path: &Path, depth: usize) -> Result<Value, CliError> {
    if depth >= MAX_DEPTH {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            message: format!("file nesting deeper than {MAX_DEPTH}"),
        });
    }
    let text = read(path)?;
    let mut v = parse_value(path, &text)?;
    resolve(&mut v, &parent(path), depth + 1)?;
    Ok(v)
}

fn parent(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn located(path: &Path, e: serde_path_to_error::Error<serde_json::Error>) -> CliError {
    let at = e.path().to_string();
    let inner = e.into_inner();
    let message = if at == "." { inner.to_string() } else { format!("at {at}: {inner}") };
    CliError::Parse {
        path: path.display().to_string(),
        message,
    }
}

/// A parsed file with nested includes resolved.
pub struct Loaded {
    path: PathBuf,
    text: String,
    pub value: Value,
    nested: bool,
}

impl Loaded {
    pub fn read(path: &Path) -> Result<Loaded, CliError> {
        let text = read(path)?;
        let mut value = parse_value(path, &text)?;
        let nested = resolve(&mut value, &parent(path), 1)?;
        Ok(Loaded {
            path: path.to_path_buf(),
            text,
            value,
            nested,
        })
    }

    /// Errors carry the file and the field path and, when the file has no
    /// nested includes, the line and column.
    pub fn parse<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        if self.nested {
            serde_path_to_error::deserialize(self.value.clone()).map_err(|e| located(&self.path, e))
        } else {
            let mut de = serde_json::Deserializer::from_str(&self.text);
            serde_path_to_error::deserialize(&mut de).map_err(|e| located(&self.path, e))
        }
    }

    pub fn has_key(&self, key: &str) -> bool {
        self.value.get(key).is_some()
    }
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    Loaded::read(path)?.parse()
}
