use std::sync::Arc;

use gamma_hyperlab::{Carrier, CheckReport, FuzzySubset, Witness};
use serde_json::{json, Map, Value};

pub enum Entry {
    Verdict {
        name: String,
        report: CheckReport,
        carrier: Arc<Carrier>,
        decisive: bool,
    },
    Value {
        name: String,
        text: String,
        json: Value,
    },
    Document(String),
}

/// Output of one command: ordered entries rendered either as text lines or
/// as a JSON object with the same content.
#[derive(Default)]
pub struct Report {
    entries: Vec<Entry>,
    warnings: Vec<String>,
}

impl Report {
    pub fn verdict(&mut self, name: &str, report: CheckReport, carrier: &Arc<Carrier>, decisive: bool) -> bool {
        let passed = report.passed();
        self.entries.push(Entry::Verdict {
            name: name.to_string(),
            report,
            carrier: carrier.clone(),
            decisive,
        });
        passed
    }

    pub fn value(&mut self, name: &str, text: impl Into<String>, json: Value) {
        self.entries.push(Entry::Value {
            name: name.to_string(),
            text: text.into(),
            json,
        });
    }

    pub fn subset(&mut self, name: &str, mu: &FuzzySubset) {
        self.value(name, mu.to_string(), subset_json(mu));
    }

    pub fn document(&mut self, text: String) {
        self.entries.push(Entry::Document(text));
    }

    pub fn warn(&mut self, text: impl Into<String>) {
        self.warnings.push(text.into());
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// 1 if any decisive verdict failed, else 0.
    pub fn exit_code(&self) -> i32 {
        let failed = self.entries.iter().any(|e| {
            matches!(e, Entry::Verdict { report, decisive: true, .. } if !report.passed())
        });
        i32::from(failed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            match entry {
                Entry::Verdict { name, report, carrier, .. } => match report.witness() {
                    None => out.push_str(&format!("{name}: yes\n")),
                    Some(w) => out.push_str(&format!("{name}: no; {}\n", w.describe(carrier))),
                },
                Entry::Value { name, text, .. } => out.push_str(&format!("{name}: {text}\n")),
                Entry::Document(text) => out.push_str(text),
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut map = Map::new();
        for entry in &self.entries {
            match entry {
                Entry::Verdict { name, report, carrier, .. } => {
                    let witness = report.witness().map_or(Value::Null, |w| witness_json(w, carrier));
                    map.insert(name.clone(), json!({"holds": report.passed(), "witness": witness}));
                }
                Entry::Value { name, json, .. } => {
                    map.insert(name.clone(), json.clone());
                }
                Entry::Document(text) => {
                    let doc = serde_json::from_str(text).unwrap_or_else(|_| Value::String(text.clone()));
                    map.insert("document".into(), doc);
                }
            }
        }
        if !self.warnings.is_empty() {
            map.insert("warnings".into(), json!(self.warnings));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("values serialize");
        text.push('\n');
        text
    }
}

pub fn subset_json(mu: &FuzzySubset) -> Value {
    let carrier = mu.carrier();
    let map: Map<String, Value> = mu
        .grades()
        .iter()
        .enumerate()
        .map(|(t, g)| (carrier.element(t).to_string(), Value::String(g.to_string())))
        .collect();
    Value::Object(map)
}

fn witness_json(w: &Witness, carrier: &Carrier) -> Value {
    let mut map = Map::new();
    map.insert("note".into(), json!(w.note));
    if !w.elements.is_empty() {
        let labels: Vec<&str> = w.elements.iter().map(|&i| carrier.element(i)).collect();
        map.insert("elements".into(), json!(labels));
    }
    if !w.sorts.is_empty() {
        let labels: Vec<&str> = w.sorts.iter().map(|&i| carrier.sort(i)).collect();
        map.insert("sorts".into(), json!(labels));
    }
    if let Some(r) = w.point {
        map.insert("at".into(), json!(carrier.element(r)));
    }
    if let Some((l, r)) = w.grades {
        map.insert("grades".into(), json!([l.to_string(), r.to_string()]));
    }
    if let Some(p) = w.threshold {
        map.insert("p".into(), json!(p.to_string()));
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let c = Carrier::numbered(2, 1).unwrap();
        let mut r = Report::default();
        r.verdict("first", CheckReport::pass(), &c, true);
        r.value("count", "3", json!(3));
        assert_eq!(r.exit_code(), 0);
        r.verdict("second", CheckReport::fail(Witness::new("bad").elements([1]).point(0)), &c, false);
        assert_eq!(r.exit_code(), 0);
        r.verdict("third", CheckReport::fail(Witness::new("worse")), &c, true);
        assert_eq!(r.exit_code(), 1);
        let text = r.render_text();
        assert!(text.starts_with("first: yes\ncount: 3\nsecond: no; bad"));
        let v: Value = serde_json::from_str(&r.render_json()).unwrap();
        assert_eq!(v["second"]["witness"]["elements"], json!(["1"]));
        assert_eq!(v["second"]["witness"]["at"], json!("0"));
        assert_eq!(v["third"]["holds"], json!(false));
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["first", "count", "second", "third"]);
    }
}
