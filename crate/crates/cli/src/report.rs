use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::Cli;

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A command result: a JSON body plus the table written in CSV mode.
pub struct Report {
    pub result: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Some check failed; the process exits with status 2.
    pub failed: bool,
}

impl Report {
    pub fn new(result: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Self { result, header: header.iter().map(|s| s.to_string()).collect(), rows, failed: false }
    }

    pub fn failed(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    fn render(&self, cli: &Cli) -> String {
        let config = serde_json::to_value(cli).expect("config serialises");
        match cli.format {
            Format::Json => {
                let doc = json!({
                    "tool": "pathcoupling",
                    "version": env!("CARGO_PKG_VERSION"),
                    "seed": cli.seed,
                    "config": config,
                    "result": self.result,
                });
                serde_json::to_string_pretty(&doc).expect("json") + "\n"
            }
            Format::Csv => {
                let mut s = format!(
                    "# pathcoupling {}\n# seed: {}\n# config: {}\n",
                    env!("CARGO_PKG_VERSION"),
                    cli.seed,
                    config
                );
                s.push_str(&csv_table(&self.header, &self.rows));
                s
            }
        }
    }

    pub fn emit(&self, cli: &Cli) -> std::io::Result<()> {
        let text = self.render(cli);
        match &cli.output {
            Some(p) => std::fs::write(p, text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}

fn csv_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        let t = csv_table(&["a".into(), "b".into()], &[vec!["1,2".into(), "x\"y".into()]]);
        assert_eq!(t, "a,b\n\"1,2\",\"x\"\"y\"\n");
    }
}
