//! The report envelope and its JSON and CSV renderings.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim_id: String,
    pub pass: bool,
}

impl Verdict {
    pub fn new(claim_id: impl Into<String>, pass: bool) -> Verdict {
        Verdict { claim_id: claim_id.into(), pass }
    }
}

/// What a subcommand hands back. Every row carries a `claim` field naming the
/// statement it certifies, or "descriptive".
pub struct Outcome {
    pub results: Vec<Value>,
    pub verdicts: Vec<Verdict>,
    /// Fixed CSV columns; otherwise the keys of the first row, sorted.
    pub columns: Option<Vec<&'static str>>,
}

impl Outcome {
    pub fn new(results: Vec<Value>, verdicts: Vec<Verdict>) -> Outcome {
        Outcome { results, verdicts, columns: None }
    }
}

/// One verdict per claim: the conjunction of every check made against it.
pub fn merge_verdicts(checks: impl IntoIterator<Item = (String, bool)>) -> Vec<Verdict> {
    let mut out: Vec<Verdict> = Vec::new();
    for (claim, pass) in checks {
        match out.iter_mut().find(|v| v.claim_id == claim) {
            Some(v) => v.pass &= pass,
            None => out.push(Verdict::new(claim, pass)),
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: String,
    pub params: Value,
    pub config_hash: String,
    pub results: Vec<Value>,
    pub verdicts: Vec<Verdict>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// The results table with a header row. Nested values are written as JSON text.
    pub fn to_csv(&self, columns: Option<&[&str]>) -> String {
        let header: Vec<String> = match columns {
            Some(c) => c.iter().map(|s| s.to_string()).collect(),
            None => match self.results.first() {
                Some(Value::Object(m)) => m.keys().cloned().collect(),
                _ => vec!["value".into()],
            },
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).expect("in-memory write");
        for row in &self.results {
            let cells: Vec<String> = header
                .iter()
                .map(|k| match row {
                    Value::Object(m) => cell(m.get(k)),
                    other => cell(Some(other)),
                })
                .collect();
            w.write_record(&cells).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_uses_fixed_columns_and_blanks_nulls() {
        let r = Report {
            version: "0",
            command: "bounds".into(),
            params: json!({}),
            config_hash: String::new(),
            results: vec![json!({ "family": "mcg", "i": 1, "d": null, "r": null, "bound": "5", "formula_id": "mcg-gen", "claim": "x" })],
            verdicts: vec![],
            elapsed_ms: 0,
        };
        let csv = r.to_csv(Some(&["family", "i", "d", "r", "bound", "formula_id"]));
        assert_eq!(csv, "family,i,d,r,bound,formula_id\nmcg,1,,,5,mcg-gen\n");
    }

    #[test]
    fn verdicts_merge_per_claim() {
        let v = merge_verdicts([("a".to_string(), true), ("b".to_string(), true), ("a".to_string(), false)]);
        assert_eq!(v.len(), 2);
        assert!(!v[0].pass && v[1].pass);
    }
}
