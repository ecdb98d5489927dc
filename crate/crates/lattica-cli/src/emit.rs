use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A command's document together with its check status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub doc: Value,
    pub ok: bool,
}

impl Outcome {
    pub fn value(doc: Value) -> Self {
        Outcome { doc, ok: true }
    }

    pub fn check(doc: Value, ok: bool) -> Self {
        Outcome { doc, ok }
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Leaves in document order, keyed by dotted paths (`components.(1 2)`,
/// `checks.0`).
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{}.{}", prefix, k) };
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    go(&join(k), x, out);
                }
            }
            Value::Array(a) => {
                for (k, x) in a.iter().enumerate() {
                    go(&join(&k.to_string()), x, out);
                }
            }
            _ => out.push((prefix.to_string(), leaf(v))),
        }
    }
    let mut out = Vec::new();
    go("", v, &mut out);
    out
}

/// Leaf at a dotted path, or the compact JSON of a subtree.
pub fn select(v: &Value, path: &str) -> Option<String> {
    if path.is_empty() {
        return Some(leaf(v));
    }
    let mut cur = v;
    for key in path.split('.') {
        cur = match cur {
            Value::Object(m) => m.get(key)?,
            Value::Array(a) => a.get(key.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    Some(match cur {
        Value::Object(_) | Value::Array(_) => cur.to_string(),
        _ => leaf(cur),
    })
}

pub fn emit(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("json");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (k, x) in flatten(v) {
                s.push_str(&k);
                s.push_str(": ");
                s.push_str(&x);
                s.push('\n');
            }
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("csv");
            for (k, x) in flatten(v) {
                w.write_record([k, x]).expect("csv");
            }
            String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
        }
    }
}
