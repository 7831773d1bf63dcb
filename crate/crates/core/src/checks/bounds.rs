use std::fmt;

use serde::Serialize;

use super::require_degree;
use crate::error::{Error, Result};
use crate::precision::PrecReal;
use crate::qlaguerre::{constant, constant_a, ConstantName, FamilyParams, PolySpec};
use crate::zeros::smallest_zero;

/// Inner and outer bounds on the negative zero of `L_n`, with the zero itself.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsRecord {
    pub q: PrecReal,
    pub delta: PrecReal,
    pub n: usize,
    /// `-c_{n-1}`.
    pub neg_c: PrecReal,
    /// `B_n`, the outer bound.
    pub outer: PrecReal,
    /// `z_{1,n}`.
    pub z1: PrecReal,
    /// `A_n`, the inner bound.
    pub inner: PrecReal,
}

impl BoundsRecord {
    /// Whether `-c_{n-1} < B_n < z_{1,n} < A_n < 0` holds strictly.
    pub fn chain_holds(&self) -> bool {
        self.neg_c < self.outer
            && self.outer < self.z1
            && self.z1 < self.inner
            && self.inner.is_negative()
    }
}

impl fmt::Display for BoundsRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} delta={} n={}: -c={} B={} z1={} A={}",
            self.q.to_sig_string(6),
            self.delta.to_sig_string(6),
            self.n,
            self.neg_c.to_sig_string(10),
            self.outer.to_sig_string(10),
            self.z1.to_sig_string(10),
            self.inner.to_sig_string(10),
        )
    }
}

/// Computes the bound record and insists on the strict chain; a broken chain
/// comes back as an error carrying the record.
pub fn bounds(params: &FamilyParams, n: usize) -> Result<BoundsRecord> {
    params.require_quasi()?;
    require_degree("bounds", n, 2)?;
    let neg_c = -constant(ConstantName::PointC, n - 1, params)?;
    let outer = constant(ConstantName::OuterBound, n, params)?;
    let inner = constant_a(&params.real(n as i64), params)?;
    let z1 = smallest_zero(&PolySpec::new(params, 0, n))?;
    let rec = BoundsRecord {
        q: params.q().clone(),
        delta: params.delta().clone(),
        n,
        neg_c,
        outer,
        z1,
        inner,
    };
    if rec.chain_holds() {
        Ok(rec)
    } else {
        Err(Error::ChainViolation(Box::new(rec)))
    }
}
