use std::fs;
use std::path::{Path, PathBuf};

use boolcirc::circuit::{aiger, bench, dot};
use boolcirc::Circuit;
use serde_json::{Map, Value};

use crate::CliError;

/// Ordered key/value report, printed as `key: value` lines or as one JSON object.
pub struct Report {
    json: bool,
    fields: Vec<(String, Value)>,
    body: Option<String>,
}

impl Report {
    pub fn new(json: bool) -> Self {
        Report {
            json,
            fields: Vec::new(),
            body: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    /// Text printed after the fields (a circuit when no output file is given).
    pub fn body(&mut self, key: &str, text: String) {
        if self.json {
            self.set(key, text);
        } else {
            self.body = Some(text);
        }
    }

    pub fn print(self) {
        if self.json {
            let obj: Map<String, Value> = self.fields.into_iter().collect();
            println!("{}", Value::Object(obj));
            return;
        }
        for (k, v) in &self.fields {
            match v {
                Value::String(s) => println!("{k}: {s}"),
                other => println!("{k}: {other}"),
            }
        }
        if let Some(b) = self.body {
            print!("{b}");
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Bench,
    Aag,
    Dot,
}

fn format_of(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("aag") => Format::Aag,
        Some("dot") | Some("gv") => Format::Dot,
        _ => Format::Bench,
    }
}

pub fn read_circuit(path: &Path) -> Result<Circuit, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let c = match format_of(path) {
        Format::Aag => aiger::parse_aiger(&text)?,
        Format::Bench => bench::parse_bench(&text)?,
        Format::Dot => return Err(CliError::Usage("DOT files cannot be read".into())),
    };
    Ok(c)
}

pub fn render(c: &Circuit, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Bench => bench::to_bench(c),
        Format::Aag => aiger::to_aiger(c)?,
        Format::Dot => dot::to_dot(c),
    })
}

/// Writes `c` to `out` (format from `format` or the extension), or puts it in the report.
pub fn emit(c: &Circuit, out: Option<&PathBuf>, format: Option<Format>, report: &mut Report) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let text = render(c, format.unwrap_or_else(|| format_of(path)))?;
            fs::write(path, text)?;
            report.set("written", path.display().to_string());
        }
        None => report.body("circuit", render(c, format.unwrap_or(Format::Bench))?),
    }
    Ok(())
}

pub fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
