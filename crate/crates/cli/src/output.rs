//! Report serialization shared by the subcommands: JSON with sorted keys
//! and fixed float formatting, plus plain CSV.  Reports go to stdout unless
//! an output file is named.

use std::fs;
use std::path::Path;

use crate::config::Config;

/// Fixed-width float form used everywhere (17 significant digits), matching
/// the library's report serialization.
pub fn fnum(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:.16e}")
    }
}

pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// One JSON value, already rendered.
pub enum Val {
    Str(String),
    Num(String),
    Raw(String),
}

pub fn render(v: &Val) -> String {
    match v {
        Val::Str(s) => format!("\"{}\"", json_escape(s)),
        Val::Num(s) | Val::Raw(s) => s.clone(),
    }
}

/// Object from (key, value) pairs; the caller supplies keys in sorted order.
pub fn json_object(pairs: &[(&str, Val)]) -> String {
    let body: Vec<String> = pairs
        .iter()
        .map(|(k, v)| format!("\"{}\":{}", json_escape(k), render(v)))
        .collect();
    format!("{{{}}}", body.join(","))
}

/// The configuration echo: every effective key/value as strings; BTreeMap
/// iteration gives the sorted order.
pub fn echo_json(cfg: &Config) -> Val {
    let body: Vec<String> = cfg
        .iter()
        .map(|(k, v)| format!("\"{}\":\"{}\"", json_escape(k), json_escape(v)))
        .collect();
    Val::Raw(format!("{{{}}}", body.join(",")))
}

/// Write the report to `out_file` when given; otherwise print it unless
/// `quiet` asked for the exit code only.
pub fn emit(text: &str, out_file: &Option<std::path::PathBuf>, quiet: bool) -> Result<(), String> {
    match out_file {
        Some(path) => write_file(path, text),
        None => {
            if !quiet {
                println!("{text}");
            }
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), String> {
    let mut data = text.to_string();
    if !data.ends_with('\n') {
        data.push('\n');
    }
    fs::write(path, data).map_err(|e| format!("cannot write '{}': {e}", path.display()))
}
