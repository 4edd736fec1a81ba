use std::fmt::Write as _;

/// Header lines `key: value`, then an optional comma-delimited table after a
/// `---` separator.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub header: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.header.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.header.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn set_columns(&mut self, columns: &[&str]) {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            writeln!(out, "{k}: {v}").unwrap();
        }
        if !self.columns.is_empty() {
            writeln!(out, "---").unwrap();
            writeln!(out, "{}", self.columns.join(",")).unwrap();
            for row in &self.rows {
                let cells: Vec<String> = row.iter().map(|c| escape(c)).collect();
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        out
    }
}

fn escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}
