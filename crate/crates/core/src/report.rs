//! Line-oriented `key = value` reports.

use std::fmt;

use crate::rational::{fmt as rfmt, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.lines.push((key.into(), value.to_string()));
        self
    }

    pub fn push_rational(&mut self, key: impl Into<String>, value: &Rational) -> &mut Self {
        self.push(key, rfmt(value))
    }

    /// Appends `key = value` lines of already rendered text.
    pub fn extend_from_text(&mut self, text: &str) -> &mut Self {
        for line in text.lines() {
            if let Some((k, v)) = line.split_once(" = ") {
                self.push(k, v);
            }
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}
