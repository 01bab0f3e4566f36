//! Reading JSON arguments that may be given inline or as a file, and
//! resolving system references relative to the file that names them.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use mahler_core::mahler::MahlerSystem;
use mahler_core::RootOfUnity;
use serde::de::DeserializeOwned;
use serde_json::Value;

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
/// Returns the value and the directory relative references resolve against.
pub fn inline_or_file(arg: &str) -> Result<(Value, PathBuf)> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') || t.starts_with('"') {
        let v = serde_json::from_str(arg).context("parsing inline JSON")?;
        Ok((v, PathBuf::from(".")))
    } else {
        let p = Path::new(arg);
        Ok((read_json(p)?, base_dir(p)))
    }
}

pub fn base_dir(p: &Path) -> PathBuf {
    p.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}

pub fn typed<T: DeserializeOwned>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).with_context(|| format!("invalid {what}"))
}

pub fn load_system(path: &Path) -> Result<MahlerSystem> {
    typed(read_json(path)?, &format!("system in {}", path.display()))
}

/// Replaces a string reference to a system file by the file's contents.
pub fn resolve_system(v: &mut Value, base: &Path) -> Result<()> {
    if let Value::String(rel) = v {
        let p = base.join(rel.as_str());
        *v = read_json(&p)?;
    }
    Ok(())
}

pub fn system_value(v: Value, base: &Path) -> Result<MahlerSystem> {
    let mut v = v;
    resolve_system(&mut v, base)?;
    typed(v, "system")
}

/// Parses `k/n` as `exp(2 pi i k/n)`.
pub fn parse_root(text: &str) -> Result<RootOfUnity> {
    let (k, n) = text
        .split_once('/')
        .ok_or_else(|| anyhow!("root of unity must be written k/n, got {text:?}"))?;
    let k: i64 = k.trim().parse().with_context(|| format!("bad numerator in {text:?}"))?;
    let n: u64 = n
        .trim()
        .parse()
        .with_context(|| format!("bad denominator in {text:?}"))?;
    Ok(RootOfUnity::new(k, n)?)
}
