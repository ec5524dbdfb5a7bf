//! Distribution serialization.
//!
//! CSV: a `value,probability` header followed by one row per support value
//! in increasing order. JSON: `{"meta": {...}, "pmf": [[value, p], ...]}`.
//! Both print probabilities in shortest round-trip form, so parsing either
//! output recovers the exact doubles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::paa::Distribution;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" | "structured" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

pub type Meta = Map<String, Value>;

pub fn to_csv(dist: &Distribution) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["value", "probability"])
        .expect("in-memory write");
    for (&v, &p) in &dist.pmf {
        w.serialize((v, p)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn from_csv(text: &str) -> Result<BTreeMap<u64, f64>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| Error::Format(e.to_string()))?;
    if header != vec!["value", "probability"] {
        return Err(Error::Format(format!("unexpected header {header:?}")));
    }
    r.deserialize::<(u64, f64)>()
        .map(|row| row.map_err(|e| Error::Format(e.to_string())))
        .collect()
}

pub fn to_value(dist: &Distribution, meta: Meta) -> Value {
    let pmf: Vec<Value> = dist.pmf.iter().map(|(&v, &p)| json!([v, p])).collect();
    json!({ "meta": meta, "pmf": pmf })
}

pub fn to_json(dist: &Distribution, meta: Meta) -> String {
    to_value(dist, meta).to_string()
}

/// Parses a JSON document back into its metadata and pmf.
pub fn from_json(text: &str) -> Result<(Meta, BTreeMap<u64, f64>)> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let meta = match doc.get("meta") {
        Some(Value::Object(m)) => m.clone(),
        _ => return Err(Error::Format("missing \"meta\" object".into())),
    };
    let pairs = doc
        .get("pmf")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("missing \"pmf\" array".into()))?;
    let mut pmf = BTreeMap::new();
    for pair in pairs {
        let (v, p) = match pair.as_array().map(Vec::as_slice) {
            Some([v, p]) => (v.as_u64(), p.as_f64()),
            _ => (None, None),
        };
        match (v, p) {
            (Some(v), Some(p)) => {
                pmf.insert(v, p);
            }
            _ => return Err(Error::Format(format!("bad pmf entry {pair}"))),
        }
    }
    Ok((meta, pmf))
}

pub fn render(dist: &Distribution, meta: Meta, format: Format) -> String {
    match format {
        Format::Csv => to_csv(dist),
        Format::Json => to_json(dist, meta) + "\n",
    }
}
