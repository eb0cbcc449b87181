//! Rendering of cached payloads. Output is always produced from the payload
//! string, so a cache hit and a fresh computation print the same bytes.

use std::fmt::Write;

use anyhow::{Context, Result};
use mzvlab_core::{BiLaurentPoly, KernelBasis, QMatrix, TriLaurentPoly};
use serde_json::Value;

use crate::cache::Cache;
use crate::Format;

fn pretty(v: &Value) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(v)?))
}

pub fn matrix(payload: &str, format: Format) -> Result<String> {
    let v: Value = serde_json::from_str(payload).context("corrupt matrix payload")?;
    match format {
        Format::Json => pretty(&v),
        _ => Ok(QMatrix::from_json(&v)?.to_csv()),
    }
}

pub fn kernel(payload: &str, format: Format) -> Result<String> {
    let k: KernelBasis = serde_json::from_str(payload).context("corrupt kernel payload")?;
    if format == Format::Json {
        return pretty(&serde_json::to_value(&k)?);
    }
    let mut s = k.labels.iter().map(|l| format!("\"{l}\"")).collect::<Vec<_>>().join(",");
    s.push('\n');
    for v in &k.vectors {
        let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        writeln!(s, "{}", cells.join(","))?;
    }
    Ok(s)
}

// Layer (lifted families only), rendered polynomial and (exponent, coefficient) terms.
type Element = (Option<u64>, String, Vec<(String, String)>);

fn basis_terms(v: &Value, lifted: bool) -> Result<Vec<Element>> {
    let elements = v["basis"].as_array().context("basis payload lacks elements")?;
    elements
        .iter()
        .map(|el| {
            let (layer, poly) = if lifted { (el["layer"].as_u64(), &el["poly"]) } else { (None, el) };
            let text = if lifted {
                serde_json::from_value::<TriLaurentPoly>(poly.clone())?.to_string()
            } else {
                serde_json::from_value::<BiLaurentPoly>(poly.clone())?.to_string()
            };
            let terms = poly
                .as_array()
                .context("polynomial payload is not a term list")?
                .iter()
                .map(|t| {
                    let exp: Vec<String> = t["exp"].as_array().into_iter().flatten().map(|x| x.to_string()).collect();
                    (format!("({})", exp.join(",")), t["coef"].as_str().unwrap_or_default().to_string())
                })
                .collect();
            Ok((layer, text, terms))
        })
        .collect()
}

pub fn basis(payload: &str, lifted: bool, format: Format) -> Result<String> {
    let v: Value = serde_json::from_str(payload).context("corrupt basis payload")?;
    let kind = v.get("kind").or_else(|| v.get("family")).and_then(Value::as_str).unwrap_or("?");
    let elements = basis_terms(&v, lifted)?;
    let mut s = String::new();
    match format {
        Format::Json => return pretty(&v),
        Format::Csv => {
            s.push_str(if lifted { "element,layer,exponent,coefficient\n" } else { "element,exponent,coefficient\n" });
            for (i, (layer, _, terms)) in elements.iter().enumerate() {
                for (e, c) in terms {
                    match layer {
                        Some(l) => writeln!(s, "{},{l},\"{e}\",{c}", i + 1)?,
                        None => writeln!(s, "{},\"{e}\",{c}", i + 1)?,
                    }
                }
            }
        }
        Format::Text => {
            writeln!(s, "{kind} in weight {}: dimension {}", v["weight"], v["dim"])?;
            for (i, (layer, text, _)) in elements.iter().enumerate() {
                match layer {
                    Some(l) => writeln!(s, "  [{}] layer {l}: {text}", i + 1)?,
                    None => writeln!(s, "  [{}] {text}", i + 1)?,
                }
            }
        }
    }
    Ok(s)
}

pub fn cache_status(cache: &Cache) -> Result<String> {
    let entries = cache.entries()?;
    let mut s = format!("cache directory: {}\n", cache.dir().display());
    writeln!(s, "{} entries", entries.len())?;
    if entries.is_empty() {
        return Ok(s);
    }
    writeln!(s, "artifact | family | weight | j | version | bytes | state")?;
    for (path, size, entry) in &entries {
        match entry {
            Some(e) => {
                let k = &e.key;
                let j = k.j.map_or("-".to_string(), |j| j.to_string());
                let state = if k.version == mzvlab_core::suites::VERSION { "ok" } else { "stale" };
                writeln!(s, "{} | {} | {} | {j} | {} | {size} | {state}", k.artifact, k.family, k.weight, k.version)?;
            }
            None => writeln!(s, "{} | - | - | - | - | {size} | corrupt", path.display())?,
        }
    }
    Ok(s)
}
