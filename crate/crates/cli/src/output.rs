//! Command results: a JSON payload, an exit code, and a text rendering
//! derived from the same payload.

use std::fmt::Write as _;

use pmfgalois::galois::preserve::Witness;
use pmfgalois::io::PmfDoc;
use pmfgalois::tuple;
use pmfgalois::weights::Weight;
use pmfgalois::Pmf;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Negative,
}

impl Verdict {
    pub fn of(holds: bool) -> Self {
        if holds {
            Verdict::Positive
        } else {
            Verdict::Negative
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 1,
        }
    }
}

pub struct Outcome {
    pub verdict: Verdict,
    pub payload: Value,
    /// Extra text-mode blocks, e.g. witness matrices.
    pub tables: Vec<String>,
}

impl Outcome {
    pub fn new(verdict: Verdict, payload: Value) -> Self {
        Outcome {
            verdict,
            payload,
            tables: Vec::new(),
        }
    }

    pub fn positive(payload: Value) -> Self {
        Outcome::new(Verdict::Positive, payload)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn render(out: &Outcome, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&out.payload).expect("json values serialize"),
        Format::Text => {
            let mut s = String::new();
            text(&out.payload, 0, &mut s);
            for t in &out.tables {
                s.push('\n');
                s.push_str(t);
            }
            s.trim_end().to_string()
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) || a.is_empty() => Some(
            a.iter()
                .map(|x| scalar(x).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(" "),
        ),
        Value::Array(a) if a.iter().all(|x| x.as_array().is_some_and(|r| r.iter().all(|y| !y.is_object() && !y.is_array()))) => {
            Some(
                a.iter()
                    .map(|x| format!("({})", scalar(x).unwrap_or_default().replace(' ', ",")))
                    .collect::<Vec<_>>()
                    .join(" "),
            )
        }
        _ => None,
    }
}

fn text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        x => writeln!(out, "{pad}{}", scalar(x).unwrap_or_default()).unwrap(),
    }
}

pub fn pmf_json(f: &Pmf) -> Value {
    json!({
        "shape": [f.n(), f.m()],
        "pairs": f.render_pairs(),
    })
}

pub fn pmf_doc(f: &Pmf) -> Value {
    serde_json::to_value(PmfDoc::of(f)).expect("documents serialize")
}

/// The witness matrix: row `j` is the pair `(a^j, b^j)` of `f`, column `i`
/// of the input side is `a_i`, whose weight enters the left product.
pub fn witness_json(f: &Pmf, w: &Weight, wit: &Witness) -> Value {
    let b = f.base().size();
    let k = wit.rows.len();
    let (a, c) = wit.columns(f);
    let m = w.pomonoid();
    let rows: Vec<Value> = wit
        .rows
        .iter()
        .enumerate()
        .map(|(j, &(x, y))| {
            json!({
                "j": j + 1,
                "a": tuple::decode(b, f.n(), x),
                "b": tuple::decode(b, f.m(), y),
            })
        })
        .collect();
    let col = |v: &[usize]| v.iter().map(|&c| tuple::render(b, k, c)).collect::<Vec<_>>();
    json!({
        "rows": rows,
        "a_columns": col(&a),
        "b_columns": col(&c),
        "left": m.name(wit.left),
        "right": m.name(wit.right),
        "summary": wit.describe(f, w),
    })
}

/// Text table of a witness: rows `j`, columns `a_i` then `b_i`.
pub fn witness_table(f: &Pmf, wit: &Witness) -> String {
    let b = f.base().size();
    let mut head = vec!["j".to_string()];
    head.extend((1..=f.n()).map(|i| format!("a_{i}")));
    head.push("|".into());
    head.extend((1..=f.m()).map(|i| format!("b_{i}")));
    let mut lines = vec![head];
    for (j, &(x, y)) in wit.rows.iter().enumerate() {
        let mut row = vec![(j + 1).to_string()];
        row.extend(tuple::decode(b, f.n(), x).iter().map(usize::to_string));
        row.push("|".into());
        row.extend(tuple::decode(b, f.m(), y).iter().map(usize::to_string));
        lines.push(row);
    }
    let width = lines.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut s = String::from("witness matrix (row j = (a^j, b^j)):\n");
    for row in lines {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        s.push_str(cells.join(" ").trim_end());
        s.push('\n');
    }
    s
}
