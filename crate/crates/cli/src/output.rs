use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

/// Files to be written together once a command has fully succeeded.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(PathBuf, Vec<u8>)>,
    stdout: Vec<u8>,
}

impl Outputs {
    pub fn file(&mut self, path: &Path, contents: impl Into<Vec<u8>>) {
        self.files.push((path.to_path_buf(), contents.into()));
    }

    /// Writes to `path` if given, otherwise to standard output.
    pub fn file_or_stdout(&mut self, path: Option<&Path>, contents: impl Into<Vec<u8>>) {
        match path {
            Some(p) => self.file(p, contents),
            None => self.stdout.extend(contents.into()),
        }
    }

    pub fn commit(self) -> Result<()> {
        for (path, data) in &self.files {
            write_atomic(path, data)?;
        }
        if !self.stdout.is_empty() {
            std::io::stdout().write_all(&self.stdout).context("writing to stdout")?;
        }
        Ok(())
    }
}

/// Writes through a temporary file in the same directory and renames it.
pub fn write_atomic(path: &Path, data: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(data)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
