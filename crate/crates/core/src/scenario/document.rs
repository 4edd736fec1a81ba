//! Line-oriented section/key-value text: `[section]` headers, `key = value`
//! entries, `#` comments. Keys may repeat.

use super::ScenarioError;

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
    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.key == key)
    }

    /// The single entry for `key`; a repeat is an error.
    pub fn get(&self, key: &str) -> Result<Option<&Entry>, ScenarioError> {
        let mut it = self.entries.iter().filter(|e| e.key == key);
        let first = it.next();
        if let Some(dup) = it.next() {
            return Err(ScenarioError::parse(dup.line, format!("[{}] repeats key '{key}'", self.name)));
        }
        Ok(first)
    }

    pub fn require(&self, key: &str) -> Result<&Entry, ScenarioError> {
        self.get(key)?.ok_or_else(|| ScenarioError::parse(self.line, format!("[{}] is missing '{key}'", self.name)))
    }

    /// Errors on any key outside `allowed`.
    pub fn only(&self, allowed: &[&str]) -> Result<(), ScenarioError> {
        match self.entries.iter().find(|e| !allowed.contains(&e.key.as_str())) {
            Some(e) => Err(ScenarioError::parse(e.line, format!("unknown key '{}' in [{}]", e.key, self.name))),
            None => Ok(()),
        }
    }
}

pub fn parse_document(text: &str) -> Result<Vec<Section>, ScenarioError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| ScenarioError::parse(line, "section header must end with ']'"))?
                .trim();
            if name.is_empty() {
                return Err(ScenarioError::parse(line, "empty section name"));
            }
            if let Some(prev) = sections.iter().find(|s| s.name == name) {
                return Err(ScenarioError::parse(line, format!("section [{name}] already opened on line {}", prev.line)));
            }
            sections.push(Section { name: name.to_string(), line, entries: Vec::new() });
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| ScenarioError::parse(line, format!("expected 'key = value', found '{content}'")))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(ScenarioError::parse(line, "empty key"));
        }
        let section = sections
            .last_mut()
            .ok_or_else(|| ScenarioError::parse(line, "entry before any [section]"))?;
        section.entries.push(Entry { key: key.to_string(), value: value.trim().to_string(), line });
    }
    Ok(sections)
}

/// Real number: decimal, `inf`, `-inf`, or a fraction `a/b`.
pub fn parse_number(token: &str, line: usize) -> Result<f64, ScenarioError> {
    let bad = || ScenarioError::parse(line, format!("'{token}' is not a number"));
    let value = match token.split_once('/') {
        Some((a, b)) => {
            let (a, b): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if b == 0.0 {
                return Err(bad());
            }
            a / b
        }
        None => token.parse().map_err(|_| bad())?,
    };
    if value.is_nan() {
        return Err(bad());
    }
    Ok(value)
}

pub fn parse_numbers(text: &str, line: usize) -> Result<Vec<f64>, ScenarioError> {
    text.split_whitespace().map(|t| parse_number(t, line)).collect()
}

pub fn parse_index(token: &str, line: usize) -> Result<usize, ScenarioError> {
    token.parse().map_err(|_| ScenarioError::parse(line, format!("'{token}' is not a point index")))
}

pub fn parse_indices(text: &str, line: usize) -> Result<Vec<usize>, ScenarioError> {
    text.split_whitespace().map(|t| parse_index(t, line)).collect()
}

/// Shortest text that parses back to the same value.
pub fn fmt_number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || x.is_infinite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(parse_number("4/5", 1).unwrap(), 0.8);
        assert_eq!(parse_number("-inf", 1).unwrap(), f64::NEG_INFINITY);
        assert_eq!(parse_number("1e-9", 1).unwrap(), 1e-9);
        assert!(parse_number("1/0", 1).is_err());
        assert!(parse_number("NaN", 1).is_err());
        for x in [0.0, 1.0 / 3.0, 5.36e-9, 1e300, -2.5, f64::INFINITY, 123456.789] {
            assert_eq!(parse_number(&fmt_number(x), 1).unwrap(), x);
        }
    }

    #[test]
    fn document_structure_and_errors() {
        let doc = parse_document("# c\n[a]\nx = 1 # tail\nrow = 1 2\nrow = 3 4\n\n[b]\n").unwrap();
        assert_eq!(doc.len(), 2);
        assert_eq!(doc[0].all("row").count(), 2);
        assert_eq!(doc[0].require("x").unwrap().value, "1");
        assert!(doc[0].get("row").is_err());

        let err = parse_document("[a]\nnonsense\n").unwrap_err();
        assert_eq!(err.line(), Some(2));
        assert_eq!(parse_document("x = 1").unwrap_err().line(), Some(1));
        assert_eq!(parse_document("[a]\n[a]").unwrap_err().line(), Some(2));
    }
}
