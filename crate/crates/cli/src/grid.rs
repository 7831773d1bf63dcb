use std::cmp::Ordering;

use anyhow::{bail, Context, Result};
use qlag::{FamilyParams, PrecReal};

/// Parses `2,7,12` or `2..20` (inclusive) or a mix of both. Sorted, deduplicated.
pub fn parse_degrees(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a
                .parse()
                .with_context(|| format!("bad range start in {part:?}"))?;
            let b: usize = b
                .trim_start_matches('=')
                .parse()
                .with_context(|| format!("bad range end in {part:?}"))?;
            if a > b {
                bail!("empty range {part:?}");
            }
            out.extend(a..=b);
        } else {
            out.push(
                part.parse()
                    .with_context(|| format!("bad integer {part:?}"))?,
            );
        }
    }
    if out.is_empty() {
        bail!("empty list {text:?}");
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Comma-separated decimal strings, each parsed at full precision.
pub fn parse_reals(text: &str, precision: u32) -> Result<Vec<PrecReal>> {
    let mut out = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| PrecReal::parse(s, precision).map_err(anyhow::Error::from))
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        bail!("empty list {text:?}");
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    out.dedup();
    Ok(out)
}

/// Every `(q, delta)` pair, ordered by `q` then `delta`.
pub fn family_grid(q: &str, delta: &str, precision: u32) -> Result<Vec<FamilyParams>> {
    let qs = parse_reals(q, precision)?;
    let ds = parse_reals(delta, precision)?;
    let mut out = Vec::with_capacity(qs.len() * ds.len());
    for q in &qs {
        for d in &ds {
            out.push(FamilyParams::new(q.clone(), d.clone(), precision)?);
        }
    }
    Ok(out)
}
