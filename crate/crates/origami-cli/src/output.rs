use std::io;

use serde_json::Value;

use crate::Format;

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Arrays of objects become one row per element; any other object becomes
/// `key,value` rows. Nested values are written as compact JSON.
fn write_csv<W: io::Write>(v: &Value, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let mut keys: Vec<String> = Vec::new();
            for it in items {
                for k in it.as_object().unwrap().keys() {
                    if !keys.contains(k) {
                        keys.push(k.clone());
                    }
                }
            }
            w.write_record(&keys)?;
            for it in items {
                w.write_record(keys.iter().map(|k| cell(it.get(k).unwrap_or(&Value::Null))))?;
            }
        }
        Value::Object(map) => {
            w.write_record(["key", "value"])?;
            for (k, x) in map {
                w.write_record([k.clone(), cell(x)])?;
            }
        }
        Value::Array(items) => {
            w.write_record(["value"])?;
            for x in items {
                w.write_record([cell(x)])?;
            }
        }
        other => w.write_record([cell(other)])?,
    }
    w.flush()?;
    Ok(())
}

pub fn emit(v: &Value, format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    match format {
        Format::Json => {
            let mut lock = stdout.lock();
            serde_json::to_writer_pretty(&mut lock, v)?;
            io::Write::write_all(&mut lock, b"\n")
        }
        Format::Csv => write_csv(v, stdout.lock()).map_err(io::Error::other),
    }
}
