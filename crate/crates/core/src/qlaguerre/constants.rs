use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::FamilyParams;
use crate::error::{Error, Result};
use crate::precision::PrecReal;

/// Closed-form points and bounds attached to the quasi-orthogonal family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantName {
    /// Recurrence diagonal, also the possible common zero of `L_n` and `L_{n-2}`.
    Diagonal,
    /// `(1 - q^{delta+n}) / q^{delta+2n-1}`.
    PointB,
    /// `-(1 - q^{delta+1}) / q^{delta+n+1}`.
    PointC,
    /// Outer bound on the negative zero.
    OuterBound,
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstantName::Diagonal => "a",
            ConstantName::PointB => "b",
            ConstantName::PointC => "c",
            ConstantName::OuterBound => "B",
        })
    }
}

impl FromStr for ConstantName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(ConstantName::Diagonal),
            "b" => Ok(ConstantName::PointB),
            "c" => Ok(ConstantName::PointC),
            "B" => Ok(ConstantName::OuterBound),
            other => Err(Error::Domain(format!("unknown constant {other:?}"))),
        }
    }
}

fn checked_div(num: PrecReal, den: PrecReal, what: &'static str) -> Result<PrecReal> {
    if den.is_zero() {
        return Err(Error::DivisionByZero(what));
    }
    Ok(num / den)
}

/// `a_n`, `b_n`, `c_n` or `B_n` for the unshifted family.
pub fn constant(name: ConstantName, n: usize, params: &FamilyParams) -> Result<PrecReal> {
    if n < 1 {
        return Err(Error::InvalidDegree {
            what: "closed-form constant",
            n,
            min: 1,
        });
    }
    let n = n as i64;
    let one = params.one();
    let q = params.q();
    match name {
        ConstantName::Diagonal => {
            let num = &one - params.qpow_int(n) + q * (&one - params.qpow_delta(n - 1));
            checked_div(num, params.qpow_delta(2 * n - 1), "a_n")
        }
        ConstantName::PointB => {
            let num = &one - params.qpow_delta(n);
            checked_div(num, params.qpow_delta(2 * n - 1), "b_n")
        }
        ConstantName::PointC => {
            let num = -(&one - params.qpow_delta(1));
            checked_div(num, params.qpow_delta(n + 1), "c_n")
        }
        ConstantName::OuterBound => {
            let num = (&one - params.qpow_delta(1)) * (&one - params.qpow_delta(3));
            let den = params.qpow_delta(1)
                * ((&one - params.qpow_int(n)) + q * (&one - params.qpow_delta(n + 1)));
            checked_div(num, den, "B_n")
        }
    }
}

/// `A(x) = (1 - q^{delta+1})(1 - q^{delta+2}) / (q^{delta+1} (1 - q^{delta+x+1}))`
/// for a real index `x`, so that both `A_n` and `A_{n-delta-2}` are available.
pub fn constant_a(x: &PrecReal, params: &FamilyParams) -> Result<PrecReal> {
    let one = params.one();
    let exponent = params.delta() + x + 1;
    let num = (&one - params.qpow_delta(1)) * (&one - params.qpow_delta(2));
    let den = params.qpow_delta(1) * (&one - params.qpow(&exponent));
    checked_div(num, den, "A(x)")
}
