//! Published bound values for twelve `(q, n, delta)` points and their recomputation.

use serde::Serialize;

use crate::checks::{bounds, BoundsRecord};
use crate::error::{Error, Result};
use crate::qlaguerre::FamilyParams;

/// One published row: parameters as decimal strings, bounds as printed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReferenceRow {
    pub q: &'static str,
    pub n: usize,
    pub delta: &'static str,
    pub outer: f64,
    pub z1: f64,
    pub inner: f64,
}

const fn row(
    q: &'static str,
    n: usize,
    delta: &'static str,
    outer: f64,
    z1: f64,
    inner: f64,
) -> ReferenceRow {
    ReferenceRow {
        q,
        n,
        delta,
        outer,
        z1,
        inner,
    }
}

pub const REFERENCE_ROWS: [ReferenceRow; 12] = [
    row("0.23", 2, "-1.1", -0.11032, -0.110294, -0.10681),
    row("0.23", 2, "-1.81", -0.505545, -0.448837, -0.20526),
    row("0.23", 7, "-1.1", -0.104315, -0.104286, -0.100269),
    row("0.23", 7, "-1.81", -0.46738, -0.40912, -0.169571),
    row("0.23", 12, "-1.1", -0.104311, -0.104283, -0.100265),
    row("0.23", 12, "-1.81", -0.467357, -0.409097, -0.169552),
    row("0.89", 2, "-1.1", -0.00598206, -0.00597785, -0.00580805),
    row("0.89", 2, "-1.81", -0.0360942, -0.0294349, -0.0152326),
    row("0.89", 7, "-1.1", -0.00219276, -0.00219076, -0.0020879),
    row("0.89", 7, "-1.81", -0.0114906, -0.00913766, -0.0038382),
    row("0.89", 12, "-1.1", -0.0016198, -0.00161831, -0.00153785),
    row("0.89", 12, "-1.81", -0.0083227, -0.00661085, -0.00270734),
];

/// Relative tolerance for agreement with the printed digits.
pub const REFERENCE_RTOL: f64 = 1e-4;

/// A recomputed row next to the printed one.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub reference: ReferenceRow,
    pub computed: BoundsRecord,
    /// Largest relative deviation over the three columns.
    pub max_rel_err: f64,
    pub chain_holds: bool,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.max_rel_err <= REFERENCE_RTOL
    }
}

fn rel(computed: f64, printed: f64) -> f64 {
    ((computed - printed) / printed).abs()
}

pub fn reproduce_row(reference: &ReferenceRow, precision: u32) -> Result<TableRow> {
    let params = FamilyParams::parse(reference.q, reference.delta, precision)?;
    let (computed, chain_holds) = match bounds(&params, reference.n) {
        Ok(r) => (r, true),
        Err(Error::ChainViolation(r)) => (*r, false),
        Err(e) => return Err(e),
    };
    let max_rel_err = rel(computed.outer.to_f64(), reference.outer)
        .max(rel(computed.z1.to_f64(), reference.z1))
        .max(rel(computed.inner.to_f64(), reference.inner));
    Ok(TableRow {
        reference: *reference,
        computed,
        max_rel_err,
        chain_holds,
    })
}

/// All twelve rows, in published order.
pub fn reproduce(precision: u32) -> Result<Vec<TableRow>> {
    REFERENCE_ROWS
        .iter()
        .map(|r| reproduce_row(r, precision))
        .collect()
}
