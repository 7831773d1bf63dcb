use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{constant, constant_a, eval_recurrence, ConstantName, FamilyParams, PolySpec};
use crate::error::{Error, Result};
use crate::precision::PrecReal;

/// Mixed contiguous relations linking neighbouring degrees and parameter shifts.
///
/// Each is checked as a polynomial identity `LHS(z) = RHS(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationId {
    /// `L_n = (z - a_n) L_{n-1} - beta_n L_{n-2}`.
    ThreeTerm,
    /// `L_{n+1} = -(1 - q^{d+n+1})/q^{d+2n+1} L_n + z L_n^{(d+1)}`.
    DegreeRaise,
    /// `L_n = (z - b_n) L_{n-1} - (1 - q^{n-1})/q^{d+2n-2} z L_{n-2}^{(d+1)}`.
    PointB,
    /// `z L_n^{(d+2)} = (z - c_n) L_n^{(d+1)} - (1 - q^{d+n+1})/q^{d+2n+1} L_n`.
    PointC,
    /// `(1 - q^{d+n+1})/(1 - q^n) L_n = q^n (1 - q^{d+1})/(1 - q^n) L_n^{(d+1)} + z L_{n-1}^{(d+2)}`.
    Shift2DegreeDrop,
    /// `(1 - q^{n-1})/(1 - q^{d+n}) z^2 L_{n-2}^{(d+2)} = q^{d+2n}/(1 - q^{d+n}) c_n L_n + (z + c_{n-1}) L_{n-1}`.
    Shift2DegreeGap2,
    /// `z^3 L_{n-2}^{(d+3)} = (1 - q^{d+n+1})/(1 - q^{n-1}) b_n (z - A_n) L_{n-1} + (z - A_{n-d-2}) L_n`.
    Shift3,
    /// The fourth-shift relation carrying `B_n`.
    Shift4,
}

impl RelationId {
    pub const ALL: [RelationId; 8] = [
        RelationId::ThreeTerm,
        RelationId::DegreeRaise,
        RelationId::PointB,
        RelationId::PointC,
        RelationId::Shift2DegreeDrop,
        RelationId::Shift2DegreeGap2,
        RelationId::Shift3,
        RelationId::Shift4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::ThreeTerm => "three-term",
            RelationId::DegreeRaise => "degree-raise",
            RelationId::PointB => "point-b",
            RelationId::PointC => "point-c",
            RelationId::Shift2DegreeDrop => "shift2-degree-drop",
            RelationId::Shift2DegreeGap2 => "shift2-degree-gap2",
            RelationId::Shift3 => "shift3",
            RelationId::Shift4 => "shift4",
        }
    }

    /// Smallest `n` for which every index and denominator in the relation is defined.
    pub fn min_degree(self) -> usize {
        match self {
            RelationId::ThreeTerm => 2,
            RelationId::DegreeRaise => 0,
            RelationId::PointB => 2,
            RelationId::PointC => 1,
            RelationId::Shift2DegreeDrop => 1,
            RelationId::Shift2DegreeGap2 => 3,
            RelationId::Shift3 => 2,
            RelationId::Shift4 => 2,
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownRelation(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub relation: RelationId,
    pub n: usize,
    pub z: PrecReal,
    pub lhs: PrecReal,
    pub rhs: PrecReal,
    /// `lhs - rhs`.
    pub residual: PrecReal,
    /// `max(|lhs|, |rhs|, 1)`.
    pub scale: PrecReal,
}

impl Residual {
    /// `|residual| <= 2^{-P + slack_bits} * scale`.
    pub fn within(&self, slack_bits: i32) -> bool {
        let p = self.residual.prec() as i32;
        self.residual.abs() <= self.scale.scale2(slack_bits - p)
    }
}

/// Bits of headroom used to evaluate both sides before rounding the residual.
const RESIDUAL_GUARD: u32 = 64;

/// Evaluates `LHS - RHS` of `relation` at `z` for degree index `n`.
pub fn identity_residual(
    relation: RelationId,
    z: &PrecReal,
    n: usize,
    params: &FamilyParams,
) -> Result<Residual> {
    if n < relation.min_degree() {
        return Err(Error::InvalidDegree {
            what: relation.name(),
            n,
            min: relation.min_degree(),
        });
    }
    let prec = params.precision();
    let p = params.at_precision(prec + RESIDUAL_GUARD);
    let z = z.with_prec(prec + RESIDUAL_GUARD);
    let poly = |t: u8, m: usize| eval_recurrence(&PolySpec::new(&p, t, m), &z);
    let one = p.one();
    let ni = n as i64;

    let (lhs, rhs) = match relation {
        RelationId::ThreeTerm => {
            let rec = super::Recurrence::new(&PolySpec::new(&p, 0, n));
            let a = &rec.diagonal()[n - 1];
            let beta = &rec.off_diagonal_squares()[n - 2];
            let rhs = (&z - a) * poly(0, n - 1) - beta * poly(0, n - 2);
            (poly(0, n), rhs)
        }
        RelationId::DegreeRaise => {
            let coef = (&one - p.qpow_delta(ni + 1)) / p.qpow_delta(2 * ni + 1);
            let rhs = -coef * poly(0, n) + &z * poly(1, n);
            (poly(0, n + 1), rhs)
        }
        RelationId::PointB => {
            let b = constant(ConstantName::PointB, n, &p)?;
            let coef = (&one - p.qpow_int(ni - 1)) / p.qpow_delta(2 * ni - 2);
            let rhs = (&z - b) * poly(0, n - 1) - coef * &z * poly(1, n - 2);
            (poly(0, n), rhs)
        }
        RelationId::PointC => {
            let c = constant(ConstantName::PointC, n, &p)?;
            let coef = (&one - p.qpow_delta(ni + 1)) / p.qpow_delta(2 * ni + 1);
            let rhs = (&z - c) * poly(1, n) - coef * poly(0, n);
            (&z * poly(2, n), rhs)
        }
        RelationId::Shift2DegreeDrop => {
            let one_minus_qn = &one - p.qpow_int(ni);
            let lhs = (&one - p.qpow_delta(ni + 1)) / &one_minus_qn * poly(0, n);
            let rhs = p.qpow_int(ni) * (&one - p.qpow_delta(1)) / &one_minus_qn * poly(1, n)
                + &z * poly(2, n - 1);
            (lhs, rhs)
        }
        RelationId::Shift2DegreeGap2 => {
            let c_n = constant(ConstantName::PointC, n, &p)?;
            let c_prev = constant(ConstantName::PointC, n - 1, &p)?;
            let one_minus = &one - p.qpow_delta(ni);
            let lhs = (&one - p.qpow_int(ni - 1)) / &one_minus * &z * &z * poly(2, n - 2);
            let rhs = p.qpow_delta(2 * ni) / &one_minus * c_n * poly(0, n)
                + (&z + c_prev) * poly(0, n - 1);
            (lhs, rhs)
        }
        RelationId::Shift3 => {
            let b = constant(ConstantName::PointB, n, &p)?;
            let a_n = constant_a(&p.real(ni), &p)?;
            let a_shift = constant_a(&(p.real(ni - 2) - p.delta()), &p)?;
            let z3 = &z * &z * &z;
            let lhs = z3 * poly(3, n - 2);
            let coef = (&one - p.qpow_delta(ni + 1)) / (&one - p.qpow_int(ni - 1)) * b;
            let rhs = coef * (&z - a_n) * poly(0, n - 1) + (&z - a_shift) * poly(0, n);
            (lhs, rhs)
        }
        RelationId::Shift4 => {
            let b = constant(ConstantName::PointB, n, &p)?;
            let outer = constant(ConstantName::OuterBound, n, &p)?;
            let a_shift = constant_a(&(p.real(ni - 2) - p.delta()), &p)?;
            let z2 = &z * &z;
            let lhs = &z2 * &z2 * poly(4, n - 2);
            let mixed = (&one - p.qpow_int(ni)) + p.q() * (&one - p.qpow_delta(ni + 1));
            let coef = &a_shift * b * mixed / (p.qpow_int(ni) * (&one - p.qpow_delta(1)));
            let quad = &z2 + (p.q() + 1) * (&one - p.qpow_delta(2)) / p.qpow_delta(ni + 1) * &z
                - &a_shift * (&one - p.qpow_delta(3)) / p.qpow_delta(ni + 1);
            let rhs = coef * (&z - outer) * poly(0, n - 1) + quad * poly(0, n);
            (lhs, rhs)
        }
    };

    let residual = (&lhs - &rhs).with_prec(prec);
    let scale = lhs.abs().max(rhs.abs()).max(one).with_prec(prec);
    Ok(Residual {
        relation,
        n,
        z: z.with_prec(prec),
        lhs: lhs.with_prec(prec),
        rhs: rhs.with_prec(prec),
        residual,
        scale,
    })
}
