use clap::Parser;
use serde_json::Value;

use lattica::Error;

use crate::cli::{run, Cli, Command};
use crate::emit::select;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// A value printed in the literature
    Published,
    /// Immediate from the definitions
    Trivial,
    /// Computed here and cross-checked by an independent route
    Derived,
}

impl Source {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "published" => Some(Source::Published),
            "trivial" => Some(Source::Trivial),
            "derived" => Some(Source::Derived),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GoldenRecord {
    pub id: String,
    pub command: String,
    /// Dotted path into the command's document
    pub select: String,
    pub expected: String,
    pub source: Source,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub records: Vec<GoldenRecord>,
}

const BUILTIN: &str = include_str!("../corpus/golden.json");

impl Corpus {
    pub fn builtin() -> Self {
        Corpus::parse(BUILTIN).expect("built-in corpus is well formed")
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let bad = |m: String| Error::Validation(m);
        let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("corpus: {}", e)))?;
        let list = v.as_array().ok_or_else(|| bad("corpus must be a list".into()))?;
        let mut records = Vec::new();
        for (k, r) in list.iter().enumerate() {
            let field = |name: &str| {
                r.get(name)
                    .and_then(Value::as_str)
                    .map(str::to_string)
                    .ok_or_else(|| bad(format!("record {} has no {}", k, name)))
            };
            let source = field("source")?;
            let record = GoldenRecord {
                id: field("id")?,
                command: field("command")?,
                select: field("select")?,
                expected: field("expected")?,
                source: Source::parse(&source).ok_or_else(|| bad(format!("record {}: unknown source {:?}", k, source)))?,
                note: field("note")?,
            };
            if record.source == Source::Published && record.note.trim().is_empty() {
                return Err(bad(format!("published record {} needs a note", record.id)));
            }
            records.push(record);
        }
        Ok(Corpus { records })
    }
}

/// Runs one record; `None` on a match, otherwise what went wrong.
pub fn run_record(r: &GoldenRecord) -> Option<String> {
    let args = std::iter::once("lattica").chain(r.command.split_whitespace());
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => return Some(format!("bad command: {}", e.to_string().lines().next().unwrap_or(""))),
    };
    if matches!(cli.command, Command::Corpus { .. } | Command::RunAll { .. }) {
        return Some("corpus records cannot run the driver".into());
    }
    match run(&cli) {
        Err(e) => Some(format!("error: {}", e)),
        Ok(out) => match select(&out.doc, &r.select) {
            None => Some(format!("no field {:?}", r.select)),
            Some(got) if got == r.expected => None,
            Some(got) => Some(format!("expected {:?}, got {:?}", r.expected, got)),
        },
    }
}

pub fn run_corpus(c: &Corpus) -> Vec<(String, Option<String>)> {
    c.records.iter().map(|r| (r.id.clone(), run_record(r))).collect()
}
