//! The monic q-Laguerre family `L_n^{(delta+t)}(z; q)`.
//!
//! [`FamilyParams`] fixes `(q, delta)` and the working precision; a
//! [`PolySpec`] picks one member by parameter shift `t` and degree `n`.
//! Polynomials are evaluated either by the three-term recurrence
//! ([`eval_recurrence`], the canonical path) or by the terminating basic
//! hypergeometric sum ([`eval_hypergeometric`]).

mod constants;
mod hypergeometric;
mod recurrence;
mod relations;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::precision::{check_precision, pow_from_ln, pow_real, PrecReal};

pub use constants::{constant, constant_a, ConstantName};
pub use hypergeometric::eval_hypergeometric;
pub use recurrence::{coefficients, eval_recurrence, Recurrence};
pub use relations::{identity_residual, RelationId, Residual};

/// Highest parameter shift used by any relation in the crate.
pub const MAX_SHIFT: u8 = 4;

const POW_GUARD: u32 = 32;

/// The pair `(q, delta)` at a fixed working precision.
#[derive(Clone, Debug)]
pub struct FamilyParams {
    q: PrecReal,
    delta: PrecReal,
    precision: u32,
    ln_q: PrecReal,
    q_delta: PrecReal,
}

impl FamilyParams {
    pub fn new(q: PrecReal, delta: PrecReal, precision: u32) -> Result<Self> {
        check_precision(precision)?;
        let q = q.with_prec(precision);
        let delta = delta.with_prec(precision);
        if q.sign() <= 0 || q >= 1 {
            return Err(Error::Domain(format!("q must lie in (0, 1), got {q:.12}")));
        }
        let ln_q = q.with_prec(precision + POW_GUARD).ln();
        let q_delta = pow_real(&q, &delta)?;
        Ok(FamilyParams {
            q,
            delta,
            precision,
            ln_q,
            q_delta,
        })
    }

    /// Parses decimal strings directly at `precision` bits.
    pub fn parse(q: &str, delta: &str, precision: u32) -> Result<Self> {
        check_precision(precision)?;
        Self::new(
            PrecReal::parse(q, precision)?,
            PrecReal::parse(delta, precision)?,
            precision,
        )
    }

    pub fn q(&self) -> &PrecReal {
        &self.q
    }

    pub fn delta(&self) -> &PrecReal {
        &self.delta
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// True iff `-2 < delta < -1`.
    pub fn quasi_regime(&self) -> bool {
        self.delta > -2 && self.delta < -1
    }

    pub fn require_quasi(&self) -> Result<()> {
        if self.quasi_regime() {
            Ok(())
        } else {
            Err(Error::Regime(format!(
                "delta = {:.12} is outside (-2, -1)",
                self.delta
            )))
        }
    }

    /// Same binary `(q, delta)` carried at another precision. Widening is exact.
    pub fn at_precision(&self, precision: u32) -> Self {
        if precision == self.precision {
            return self.clone();
        }
        Self::new(self.q.clone(), self.delta.clone(), precision)
            .expect("validated parameters stay valid at any precision")
    }

    /// Same `q`, different `delta`.
    pub fn with_delta(&self, delta: PrecReal) -> Self {
        Self::new(self.q.clone(), delta, self.precision).expect("q was validated on construction")
    }

    /// `value` as a real at working precision.
    pub fn real(&self, value: i64) -> PrecReal {
        PrecReal::from_i64(value, self.precision)
    }

    pub fn one(&self) -> PrecReal {
        self.real(1)
    }

    /// `2^-bits` at working precision.
    pub fn eps(&self, bits: u32) -> PrecReal {
        PrecReal::pow2(-(bits as i32), self.precision)
    }

    /// `q^k`.
    pub fn qpow_int(&self, k: i64) -> PrecReal {
        self.q.powi(k)
    }

    /// `q^{delta + k}`.
    pub fn qpow_delta(&self, k: i64) -> PrecReal {
        &self.q_delta * self.q.powi(k)
    }

    /// `q^x` for a general real exponent.
    pub fn qpow(&self, x: &PrecReal) -> PrecReal {
        if x.is_integer() && x.abs() < (1 << 30) {
            return self.qpow_int(x.to_f64() as i64);
        }
        pow_from_ln(&self.ln_q, x, self.precision)
    }
}

impl Serialize for FamilyParams {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FamilyParams", 4)?;
        s.serialize_field("q", &self.q)?;
        s.serialize_field("delta", &self.delta)?;
        s.serialize_field("precision_bits", &self.precision)?;
        s.serialize_field("quasi_regime", &self.quasi_regime())?;
        s.end()
    }
}

/// One polynomial `L_degree^{(delta + shift)}(z; q)`.
#[derive(Clone, Debug)]
pub struct PolySpec {
    pub params: FamilyParams,
    pub shift: u8,
    pub degree: usize,
}

impl PolySpec {
    pub fn new(params: &FamilyParams, shift: u8, degree: usize) -> Self {
        PolySpec {
            params: params.clone(),
            shift,
            degree,
        }
    }

    /// `delta + shift`.
    pub fn shifted_delta(&self) -> PrecReal {
        &self.params.delta + i32::from(self.shift)
    }

    /// `q^{delta + shift + k}`.
    pub fn qpow_shifted(&self, k: i64) -> PrecReal {
        self.params.qpow_delta(k + i64::from(self.shift))
    }

    pub fn at_precision(&self, precision: u32) -> Self {
        PolySpec {
            params: self.params.at_precision(precision),
            shift: self.shift,
            degree: self.degree,
        }
    }

    pub fn with_degree(&self, degree: usize) -> Self {
        PolySpec {
            params: self.params.clone(),
            shift: self.shift,
            degree,
        }
    }

    /// Short label such as `L[5](delta+1)`.
    pub fn label(&self) -> String {
        match self.shift {
            0 => format!("L[{}](delta)", self.degree),
            t => format!("L[{}](delta+{t})", self.degree),
        }
    }
}

impl Serialize for PolySpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("PolySpec", 5)?;
        s.serialize_field("q", &self.params.q)?;
        s.serialize_field("delta", &self.params.delta)?;
        s.serialize_field("shift", &self.shift)?;
        s.serialize_field("degree", &self.degree)?;
        s.serialize_field("precision_bits", &self.params.precision)?;
        s.end()
    }
}
