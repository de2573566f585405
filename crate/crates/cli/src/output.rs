//! Rendering and writing command results.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "MONODROMY_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    fn extension(self, lines: bool) -> &'static str {
        match self {
            Format::Json if lines => "jsonl",
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Validation(String),
    /// I/O trouble writing results: exit code 1.
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

pub fn invalid(e: impl fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

/// A finished command: its data in every format it supports, and whether a
/// checked property failed.
pub struct Output {
    pub name: &'static str,
    pub params: Value,
    pub result: Value,
    pub text: String,
    pub csv: Option<String>,
    /// JSON-lines records, used instead of the JSON document when present.
    pub lines: Option<Vec<Value>>,
    pub failure: Option<String>,
}

impl Output {
    pub fn new(name: &'static str, params: impl Serialize, result: impl Serialize, text: String) -> Result<Self, CliError> {
        Ok(Self {
            name,
            params: serde_json::to_value(params).map_err(invalid)?,
            result: serde_json::to_value(result).map_err(invalid)?,
            text,
            csv: None,
            lines: None,
            failure: None,
        })
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_lines(mut self, lines: Vec<Value>) -> Self {
        self.lines = Some(lines);
        self
    }

    pub fn fail_if(mut self, condition: bool, message: impl Into<String>) -> Self {
        if condition {
            self.failure = Some(message.into());
        }
        self
    }

    pub fn render(&self, format: Format, elapsed: Duration) -> Result<String, CliError> {
        match format {
            Format::Json => match &self.lines {
                Some(lines) => {
                    let mut out = String::new();
                    for l in lines {
                        out.push_str(&serde_json::to_string(l).map_err(invalid)?);
                        out.push('\n');
                    }
                    Ok(out)
                }
                None => {
                    let doc = json!({
                        "command": self.name,
                        "params": self.params,
                        "result": self.result,
                        "timing": { "wall_seconds": elapsed.as_secs_f64() },
                    });
                    let mut s = serde_json::to_string_pretty(&doc).map_err(invalid)?;
                    s.push('\n');
                    Ok(s)
                }
            },
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::Validation(format!("`{}` has no csv output", self.name))),
            Format::Text => Ok(self.text.clone()),
        }
    }

    /// Where the rendering goes: `--out`, else the directory from
    /// [`OUT_DIR_ENV`], else stdout.
    pub fn destination(&self, format: Format, out: Option<&Path>) -> Option<PathBuf> {
        if let Some(p) = out {
            return Some(p.to_path_buf());
        }
        let dir = std::env::var_os(OUT_DIR_ENV)?;
        let file = format!("{}.{}", self.name.replace(' ', "-"), format.extension(self.lines.is_some()));
        Some(Path::new(&dir).join(file))
    }
}

pub fn write_output(rendered: &str, dest: Option<&Path>) -> Result<(), CliError> {
    match dest {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| CliError::Io(e.to_string()))?;
            }
            std::fs::write(path, rendered).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
