use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::args::OutputArgs;

/// Where a command's main output goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Stdout,
    File(PathBuf),
}

impl Target {
    /// `--output`, then `--output-dir` joined with `default_name`, then stdout.
    pub fn resolve(out: &OutputArgs, default_name: &str) -> Target {
        match (&out.output, &out.output_dir) {
            (Some(path), _) => Target::File(path.clone()),
            (None, Some(dir)) => Target::File(dir.join(default_name)),
            (None, None) => Target::Stdout,
        }
    }

    pub fn write(&self, content: &str) -> io::Result<()> {
        match self {
            Target::Stdout => {
                let mut out = io::stdout().lock();
                out.write_all(content.as_bytes())?;
                out.flush()
            }
            Target::File(path) => {
                if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                    fs::create_dir_all(parent)?;
                }
                fs::write(path, content)?;
                eprintln!("wrote {}", path.display());
                Ok(())
            }
        }
    }
}

pub fn dir_target(dir: &Path, name: &str) -> Target {
    Target::File(dir.join(name))
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

/// Renders a header and rows as CSV.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
