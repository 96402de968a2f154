//! Line-oriented `key = value` files with `[section]` headers and `#` comments.
//!
//! Shared by the material database and the CLI configuration. Keys before the
//! first header land in a section with an empty name.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub line: usize,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    pub sections: Vec<Section>,
}

impl Document {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&Entry> {
        self.section(section).and_then(|s| s.get(key))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line, "unterminated section header"))?
                .trim();
            if name.is_empty() {
                return Err(parse_err(line, "empty section name"));
            }
            if doc.section(name).is_some() {
                return Err(parse_err(line, format!("duplicate section [{name}]")));
            }
            doc.sections.push(Section { name: name.to_string(), line, entries: Vec::new() });
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected `key = value`, found `{content}`")))?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            return Err(parse_err(line, "missing key"));
        }
        if doc.sections.is_empty() {
            doc.sections.push(Section { name: String::new(), line, entries: Vec::new() });
        }
        let section = doc.sections.last_mut().unwrap();
        if section.get(key).is_some() {
            return Err(parse_err(line, format!("duplicate key `{key}`")));
        }
        section.entries.push(Entry { key: key.to_string(), value: value.to_string(), line });
    }
    Ok(doc)
}

/// Parses a float value, reporting the entry's line on failure.
pub fn parse_f64(entry: &Entry) -> Result<f64> {
    let v: f64 = entry
        .value
        .parse()
        .map_err(|_| parse_err(entry.line, format!("`{}`: not a number: `{}`", entry.key, entry.value)))?;
    if !v.is_finite() {
        return Err(parse_err(entry.line, format!("`{}`: value must be finite", entry.key)));
    }
    Ok(v)
}
