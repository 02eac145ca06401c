//! `key = value` defaults merged into the argument list.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

/// Finds `--config FILE` or `--config=FILE` in raw arguments.
pub fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(rest));
        }
    }
    None
}

fn flag_present(args: &[OsString], flag: &str) -> bool {
    args.iter().any(|a| {
        let s = a.to_string_lossy();
        s == flag || s.starts_with(&format!("{flag}="))
    })
}

/// Appends `--key value` for every config entry whose flag is absent.
/// Booleans become bare flags when true and are dropped when false.
pub fn merge(args: Vec<OsString>, text: &str) -> Result<Vec<OsString>> {
    let table: toml::Table = text.parse().context("config file is not valid key = value syntax")?;
    let mut out = args.clone();
    for (key, value) in &table {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" || flag_present(&args, &flag) {
            continue;
        }
        match value {
            toml::Value::Boolean(true) => out.push(flag.into()),
            toml::Value::Boolean(false) => {}
            toml::Value::String(s) => out.push(format!("{flag}={s}").into()),
            toml::Value::Integer(i) => out.push(format!("{flag}={i}").into()),
            other => bail!("config key {key:?}: unsupported value {other}"),
        }
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))
}
