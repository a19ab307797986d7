//! Frequency ingestion: raw byte histograms, or `(symbol, count)` tables
//! from CSV and JSON.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use tabcode::freq::{FrequencyTable, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Auto,
    Bytes,
    Csv,
    Json,
}

impl InputKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "auto" => Ok(InputKind::Auto),
            "bytes" => Ok(InputKind::Bytes),
            "csv" => Ok(InputKind::Csv),
            "json" => Ok(InputKind::Json),
            other => bail!("unknown input format '{other}'"),
        }
    }

    fn resolve(self, path: &Path) -> InputKind {
        if self != InputKind::Auto {
            return self;
        }
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => InputKind::Csv,
            Some("json") => InputKind::Json,
            _ => InputKind::Bytes,
        }
    }
}

/// A frequency table plus display names for reports.
pub struct Ingested {
    pub table: FrequencyTable,
    pub names: BTreeMap<Symbol, String>,
}

pub fn ingest_path(path: &Path, kind: InputKind) -> Result<Ingested> {
    let data = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    match kind.resolve(path) {
        InputKind::Bytes => ingest_bytes(&data),
        InputKind::Csv => {
            let text = String::from_utf8(data).context("CSV input is not UTF-8")?;
            ingest_csv(&text)
        }
        InputKind::Json => {
            let text = String::from_utf8(data).context("JSON input is not UTF-8")?;
            ingest_json(&text)
        }
        InputKind::Auto => unreachable!("resolved above"),
    }
}

/// Histogram of byte values; the byte is the symbol id.
pub fn ingest_bytes(data: &[u8]) -> Result<Ingested> {
    let mut counts = [0u64; 256];
    for &b in data {
        counts[b as usize] += 1;
    }
    let pairs: Vec<(Symbol, u64)> = counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(b, &c)| (b as Symbol, c))
        .collect();
    let table = FrequencyTable::from_pairs(&pairs).map_err(anyhow::Error::from)?;
    let names = pairs.iter().map(|&(sym, _)| (sym, byte_name(sym as u8))).collect();
    Ok(Ingested { table, names })
}

fn byte_name(b: u8) -> String {
    if b.is_ascii_graphic() || b == b' ' {
        format!("0x{b:02x} '{}'", b as char)
    } else {
        format!("0x{b:02x}")
    }
}

/// `symbol,count` lines. Symbol ids come from the symbol field when every
/// field is a distinct integer in range; otherwise rows are numbered.
pub fn ingest_csv(text: &str) -> Result<Ingested> {
    let mut rows: Vec<(String, u64)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some((sym, count)) = line.split_once(',') else {
            bail!("line {}: expected 'symbol,count'", lineno + 1);
        };
        let sym = sym.trim().to_string();
        let count = count.trim();
        match count.parse::<u64>() {
            Ok(c) => rows.push((sym, c)),
            // a header line is tolerated only at the top
            Err(_) if rows.is_empty() && lineno == 0 => continue,
            Err(_) => bail!("line {}: count '{}' is not an integer", lineno + 1, count),
        }
    }
    from_named_rows(rows)
}

/// A JSON array of `[symbol, count]` pairs, e.g. `[["a", 3], ["b", 1]]`.
pub fn ingest_json(text: &str) -> Result<Ingested> {
    let value: serde_json::Value = serde_json::from_str(text).context("parsing JSON")?;
    let arr = value.as_array().context("expected a JSON array of [symbol, count] pairs")?;
    let mut rows = Vec::with_capacity(arr.len());
    for item in arr {
        let pair = item.as_array().filter(|p| p.len() == 2);
        let Some(pair) = pair else {
            bail!("expected [symbol, count] pairs");
        };
        let sym = match &pair[0] {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let count = pair[1].as_u64().context("counts must be non-negative integers")?;
        rows.push((sym, count));
    }
    from_named_rows(rows)
}

fn from_named_rows(rows: Vec<(String, u64)>) -> Result<Ingested> {
    if rows.is_empty() {
        bail!("no symbol rows found");
    }
    let parsed: Option<Vec<Symbol>> =
        rows.iter().map(|(s, _)| s.parse::<Symbol>().ok()).collect();
    let ids: Vec<Symbol> = match parsed {
        Some(ids) => {
            let mut seen = ids.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                bail!("duplicate symbol ids");
            }
            ids
        }
        None => {
            if rows.len() > Symbol::MAX as usize + 1 {
                bail!("too many symbols");
            }
            (0..rows.len() as Symbol).collect()
        }
    };
    let pairs: Vec<(Symbol, u64)> =
        ids.iter().zip(&rows).map(|(&id, &(_, c))| (id, c)).collect();
    let table = FrequencyTable::from_pairs(&pairs).map_err(anyhow::Error::from)?;
    let names = ids
        .iter()
        .zip(&rows)
        .map(|(&id, (name, _))| (id, name.clone()))
        .collect();
    Ok(Ingested { table, names })
}
