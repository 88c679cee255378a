//! Command reports and their two renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: impl IntoIterator<Item = impl Into<String>>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }
}

/// What a command found. Empty sections are left out of the JSON form.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub summary: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub verdicts: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tables: BTreeMap<String, Table>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Report {
    pub fn new(command: &[String]) -> Self {
        Report { command: command.to_vec(), ..Default::default() }
    }

    pub fn verdict(&mut self, key: impl Into<String>, yes: bool) {
        self.verdicts.insert(key.into(), if yes { "yes" } else { "no" }.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Table => self.render_table(),
        }
    }

    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        if !self.command.is_empty() {
            let _ = writeln!(out, "$ qshape {}", self.command.join(" "));
        }
        for line in &self.summary {
            let _ = writeln!(out, "{line}");
        }
        for (k, v) in &self.verdicts {
            let _ = writeln!(out, "{k}: {v}");
        }
        for (name, t) in &self.tables {
            let _ = writeln!(out, "\n[{name}]");
            out.push_str(&grid(t));
        }
        if !self.witnesses.is_empty() {
            let _ = writeln!(out, "\nwitnesses:");
            for (k, v) in &self.witnesses {
                let _ = writeln!(out, "  {k}: {v}");
            }
        }
        if let Some(d) = &self.data {
            let _ = writeln!(out, "\n{}", serde_json::to_string_pretty(d).expect("json"));
        }
        out
    }
}

fn grid(t: &Table) -> String {
    let ncols = t.columns.len().max(t.rows.iter().map(Vec::len).max().unwrap_or(0));
    let mut width = vec![0; ncols];
    for row in std::iter::once(&t.columns).chain(&t.rows) {
        for (i, c) in row.iter().enumerate() {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let line = |row: &[String]| {
        let cells: Vec<String> = row.iter().enumerate().map(|(i, c)| format!("{c:>w$}", w = width[i])).collect();
        format!("{}\n", cells.join("  ").trim_end())
    };
    let mut out = line(&t.columns);
    for row in &t.rows {
        out.push_str(&line(row));
    }
    out
}
