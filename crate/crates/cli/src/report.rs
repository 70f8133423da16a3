use serde::Serialize;
use serde_json::{json, Value};

/// Output of one command: a JSON document and its text rendering, built
/// together from the same data.
pub struct Report {
    pub json: Value,
    pub text: String,
    /// `false` for negative mathematical results (exit code 1).
    pub ok: bool,
}

impl Report {
    pub fn new(command: &str, data: impl Serialize, text: String, ok: bool) -> anyhow::Result<Self> {
        let mut json = json!({ "schema": 1, "command": command, "ok": ok });
        match serde_json::to_value(data)? {
            Value::Object(fields) => json.as_object_mut().expect("object").extend(fields),
            Value::Null => {}
            other => {
                json["result"] = other;
            }
        }
        Ok(Report { json, text, ok })
    }

    pub fn print(&self, as_json: bool) {
        if as_json {
            println!("{}", serde_json::to_string_pretty(&self.json).expect("values serialize"));
        } else {
            print!("{}", self.text);
            if !self.text.ends_with('\n') {
                println!();
            }
        }
    }
}

/// Rows padded into aligned columns.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<w$}  ", w = widths[c]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
