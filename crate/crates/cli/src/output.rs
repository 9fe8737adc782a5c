//! Report formatting: compact JSON with every float cut to 15 significant
//! digits, so reruns are byte-identical and diffs stay quiet.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::input::Failure;

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *v = Value::from(round_sig(x));
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Result<Value, Failure> {
    let mut v = serde_json::to_value(x).map_err(|e| Failure::Domain(e.to_string()))?;
    round_value(&mut v);
    Ok(v)
}

/// Prints one report line. A closed stdout (`h2c verify | head`) ends the
/// process quietly instead of panicking.
pub fn emit(v: &Value) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{v}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("h2c: {e}");
        std::process::exit(2);
    }
}
