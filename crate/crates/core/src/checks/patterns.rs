use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{
    alternate, is_common, labelled, require_degree, verify_chain, CheckOptions, InterlacingReport,
    PatternPoint,
};
use crate::error::{Error, Result};
use crate::precision::PrecReal;
use crate::qlaguerre::{constant, ConstantName, FamilyParams, PolySpec};
use crate::zeros::{Direct, ZeroSource};

/// The ordering statements, each named after the polynomials it compares.
///
/// `n` is always the degree of the unshifted polynomial `L_n^{(delta)}` that
/// the statement is about; for [`PatternId::ConsecutiveDegree`] it is the
/// larger of the two degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternId {
    /// `z_1 < 0 < y_1 < z_2 < y_2 < ... < z_n < y_n`.
    Shift1SameDegree,
    /// `z_{1,n+1} < 0 < y_1 < z_{2,n+1} < ... < y_n < z_{n+1,n+1}`.
    Shift1NextDegree,
    /// `0 < y_1 < x_1 < y_2 < ... < y_n < x_n` (both orthogonal).
    Shift1Shift2,
    /// `z_{1,n-1} < z_{1,n} < 0 < z_{2,n} < z_{2,n-1} < ... < z_{n-1,n-1} < z_{n,n}`.
    ConsecutiveDegree,
    /// Zeros of `z (z - a_n) L_{n-2}` interlace with those of `L_n`.
    StieltjesFailure,
    /// Zeros of `(z - b_n) L_{n-2}^{(delta+1)}` interlace with the positive zeros of `L_n`.
    PointB,
    /// `L_n` against `L_n^{(delta+2)}`, branching on `z_{2,n}` versus `c_n`.
    Shift2SameDegree,
    /// Zeros of `z L_{n-1}^{(delta+2)}` interlace with those of `L_n`.
    Shift2DegreeGap1,
    /// `-c_{n-1} < z_1 < 0 < z_2 < x_{1,n-2} < z_3 < ... < x_{n-2,n-2} < z_n`.
    Shift2DegreeGap2,
}

impl PatternId {
    pub const ALL: [PatternId; 9] = [
        PatternId::Shift1SameDegree,
        PatternId::Shift1NextDegree,
        PatternId::Shift1Shift2,
        PatternId::ConsecutiveDegree,
        PatternId::StieltjesFailure,
        PatternId::PointB,
        PatternId::Shift2SameDegree,
        PatternId::Shift2DegreeGap1,
        PatternId::Shift2DegreeGap2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PatternId::Shift1SameDegree => "shift1-same-degree",
            PatternId::Shift1NextDegree => "shift1-next-degree",
            PatternId::Shift1Shift2 => "shift1-shift2",
            PatternId::ConsecutiveDegree => "consecutive-degree",
            PatternId::StieltjesFailure => "stieltjes-failure",
            PatternId::PointB => "point-b",
            PatternId::Shift2SameDegree => "shift2-same-degree",
            PatternId::Shift2DegreeGap1 => "shift2-degree-gap1",
            PatternId::Shift2DegreeGap2 => "shift2-degree-gap2",
        }
    }

    pub fn min_degree(self) -> usize {
        match self {
            PatternId::Shift1SameDegree | PatternId::Shift1NextDegree | PatternId::Shift1Shift2 => {
                1
            }
            PatternId::ConsecutiveDegree
            | PatternId::Shift2SameDegree
            | PatternId::Shift2DegreeGap1 => 2,
            PatternId::StieltjesFailure | PatternId::PointB | PatternId::Shift2DegreeGap2 => 3,
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PatternId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PatternId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Checks `id` with freshly computed zeros and default options.
pub fn check_interlace(
    id: PatternId,
    params: &FamilyParams,
    n: usize,
) -> Result<InterlacingReport> {
    check_pattern(id, params, n, &Direct, &CheckOptions::default())
}

pub fn check_stieltjes_failure(params: &FamilyParams, n: usize) -> Result<InterlacingReport> {
    check_interlace(PatternId::StieltjesFailure, params, n)
}

pub fn check_bn_pattern(params: &FamilyParams, n: usize) -> Result<InterlacingReport> {
    check_interlace(PatternId::PointB, params, n)
}

pub fn check_same_degree_shift2(params: &FamilyParams, n: usize) -> Result<InterlacingReport> {
    check_interlace(PatternId::Shift2SameDegree, params, n)
}

/// Checks `id` at `(params, n)` using zeros from `source`.
pub fn check_pattern(
    id: PatternId,
    params: &FamilyParams,
    n: usize,
    source: &dyn ZeroSource,
    opts: &CheckOptions,
) -> Result<InterlacingReport> {
    params.require_quasi()?;
    require_degree(id.name(), n, id.min_degree())?;
    let ctx = Ctx {
        id,
        params,
        n,
        source,
        opts,
    };
    match id {
        PatternId::Shift1SameDegree => ctx.shift1_same_degree(),
        PatternId::Shift1NextDegree => ctx.shift1_next_degree(),
        PatternId::Shift1Shift2 => ctx.shift1_shift2(),
        PatternId::ConsecutiveDegree => ctx.consecutive_degree(),
        PatternId::StieltjesFailure => ctx.stieltjes_failure(),
        PatternId::PointB => ctx.point_b(),
        PatternId::Shift2SameDegree => ctx.shift2_same_degree(),
        PatternId::Shift2DegreeGap1 => ctx.shift2_degree_gap1(),
        PatternId::Shift2DegreeGap2 => ctx.shift2_degree_gap2(),
    }
}

struct Ctx<'a> {
    id: PatternId,
    params: &'a FamilyParams,
    n: usize,
    source: &'a dyn ZeroSource,
    opts: &'a CheckOptions,
}

impl Ctx<'_> {
    fn spec(&self, shift: u8, degree: usize) -> PolySpec {
        PolySpec::new(self.params, shift, degree)
    }

    fn zeros(&self, shift: u8, degree: usize) -> Result<Vec<PrecReal>> {
        Ok(self.source.zeros(&self.spec(shift, degree))?.zeros)
    }

    fn zero(&self) -> PatternPoint {
        PatternPoint::new("0", PrecReal::zero(self.params.precision()))
    }

    fn label(&self, shift: u8, degree: usize) -> String {
        self.spec(shift, degree).label()
    }

    fn report(&self, compared: Vec<(u8, usize)>, chain: Vec<PatternPoint>) -> InterlacingReport {
        let compared = compared
            .into_iter()
            .map(|(t, m)| self.label(t, m))
            .collect();
        verify_chain(self.id.name(), self.params, self.n, compared, chain)
    }

    fn skip(&self, compared: Vec<(u8, usize)>, note: String) -> InterlacingReport {
        let compared = compared
            .into_iter()
            .map(|(t, m)| self.label(t, m))
            .collect();
        InterlacingReport::not_applicable(self.id.name(), self.params, self.n, compared, note)
    }

    fn shift1_same_degree(&self) -> Result<InterlacingReport> {
        let n = self.n;
        let z = self.zeros(0, n)?;
        let y = self.zeros(1, n)?;
        // z_1 < 0 < y_1 < z_2 < y_2 < ... < z_n < y_n
        let zl = labelled("z", 1, &z);
        let mut chain = vec![zl[0].clone(), self.zero()];
        chain.extend(alternate(labelled("y", 1, &y), zl[1..].to_vec()));
        Ok(self.report(vec![(0, n), (1, n)], chain))
    }

    fn shift1_next_degree(&self) -> Result<InterlacingReport> {
        let n = self.n;
        let z = self.zeros(0, n + 1)?;
        let y = self.zeros(1, n)?;
        // z_1 < 0 < y_1 < z_2 < ... < y_n < z_{n+1}
        let zl = labelled("z", 1, &z);
        let mut chain = vec![zl[0].clone(), self.zero()];
        chain.extend(alternate(labelled("y", 1, &y), zl[1..].to_vec()));
        Ok(self.report(vec![(0, n + 1), (1, n)], chain))
    }

    fn shift1_shift2(&self) -> Result<InterlacingReport> {
        let n = self.n;
        let y = self.zeros(1, n)?;
        let x = self.zeros(2, n)?;
        let mut chain = vec![self.zero()];
        chain.extend(alternate(labelled("y", 1, &y), labelled("x", 1, &x)));
        Ok(self.report(vec![(1, n), (2, n)], chain))
    }

    fn consecutive_degree(&self) -> Result<InterlacingReport> {
        let n = self.n;
        let small = self.zeros(0, n - 1)?;
        let big = self.zeros(0, n)?;
        let small = labelled(&format!("z[{}]_", n - 1), 1, &small);
        let big = labelled(&format!("z[{n}]_"), 1, &big);
        // z_{1,n-1} < z_{1,n} < 0 < z_{2,n} < z_{2,n-1} < z_{3,n} < ... < z_{n-1,n-1} < z_{n,n}
        let mut chain = vec![small[0].clone(), big[0].clone(), self.zero()];
        chain.extend(alternate(big[1..].to_vec(), small[1..].to_vec()));
        Ok(self.report(vec![(0, n - 1), (0, n)], chain))
    }

    fn stieltjes_failure(&self) -> Result<InterlacingReport> {
        let n = self.n;
        let compared = vec![(0, n), (0, n - 2)];
        let a_n = constant(ConstantName::Diagonal, n, self.params)?;
        if is_common(&self.spec(0, n), &a_n, self.opts) {
            return Ok(self.skip(
                compared,
                format!(
                    "a_n = {} is a common zero of L_n and L_(n-2); see common-zero-a",
                    a_n.to_sig_string(12)
                ),
            ));
        }
        let z = self.zeros(0, n)?;
        let w = self.zeros(0, n - 2)?;
        let mut first = labelled("w", 1, &w);
        first.push(self.zero());
        first.push(PatternPoint::new("a_n", a_n));
        first.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite"));
        let witness = w[0] < z[0];
        let chain = alternate(first, labelled("z", 1, &z));
        let mut report = self.report(compared, chain);
        if report.note.is_none() {
            report.note = Some(format!(
                "smallest zeros: L_(n-2) {} vs L_n {} (Stieltjes interlacing {})",
                w[0].to_sig_string(12),
                z[0].to_sig_string(12),
                if witness {
                    "fails as stated"
                } else {
                    "NOT broken"
                }
            ));
        }
        Ok(report)
    }

    fn point_b(&self) -> Result<InterlacingReport> {
        let n = self.n;
        let compared = vec![(0, n), (1, n - 2)];
        let b_n = constant(ConstantName::PointB, n, self.params)?;
        if is_common(&self.spec(0, n), &b_n, self.opts) {
            return Ok(self.skip(
                compared,
                format!(
                    "b_n = {} is a common zero of L_n and L_(n-2)^(delta+1)",
                    b_n.to_sig_string(12)
                ),
            ));
        }
        let z = self.zeros(0, n)?;
        let w = self.zeros(1, n - 2)?;
        let mut aug = labelled("w", 1, &w);
        aug.push(PatternPoint::new("b_n", b_n));
        aug.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite"));
        let positive = labelled("z", 2, &z[1..]);
        // Equal counts, so either list may come first.
        let chain = if aug[0].value < positive[0].value {
            alternate(aug, positive)
        } else {
            alternate(positive, aug)
        };
        Ok(self.report(compared, chain))
    }

    fn shift2_same_degree(&self) -> Result<InterlacingReport> {
        let n = self.n;
        let compared = vec![(0, n), (2, n)];
        let c_n = constant(ConstantName::PointC, n, self.params)?;
        if is_common(&self.spec(0, n), &c_n, self.opts) {
            let mut r = self.skip(
                compared,
                format!(
                    "c_n = {} is a common zero of L_n and L_n^(delta+2); see common-zero-c",
                    c_n.to_sig_string(12)
                ),
            );
            r.branch = Some("common-zero".into());
            return Ok(r);
        }
        let z = self.zeros(0, n)?;
        let x = self.zeros(2, n)?;
        let prec = self.params.precision();
        let tie = PrecReal::pow2(-(prec as i32) / 2, prec) * (c_n.abs() + PrecReal::one(prec));
        if (&z[1] - &c_n).abs() <= tie {
            let mut r = self.skip(compared, "z_2 coincides with c_n within tolerance".into());
            r.degenerate = true;
            return Ok(r);
        }
        let zl = labelled("z", 1, &z);
        let xl = labelled("x", 1, &x);
        let c_point = PatternPoint::new("c_n", c_n.clone());
        let (branch, chain) = if z[1] > c_n {
            ("z2 > c_n: plain interlacing", alternate(zl, xl))
        } else if x.windows(2).any(|w| c_n > w[0] && c_n < w[1]) {
            let mut first = zl;
            first.push(c_point);
            first.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite"));
            let mut second = vec![self.zero()];
            second.extend(xl);
            (
                "z2 < c_n, c_n between zeros of L_n^(delta+2): c_n-augmented",
                alternate(first, second),
            )
        } else {
            // z_1 < 0 < x_1 < z_2 < ... < x_{n-1} < z_n < x_n < c_n
            let mut chain = vec![zl[0].clone(), self.zero()];
            chain.extend(alternate(xl, zl[1..].to_vec()));
            chain.push(c_point);
            ("z2 < c_n, c_n outside the zeros of L_n^(delta+2)", chain)
        };
        let mut r = self.report(compared, chain);
        r.branch = Some(branch.into());
        Ok(r)
    }

    fn shift2_degree_gap1(&self) -> Result<InterlacingReport> {
        let n = self.n;
        let z = self.zeros(0, n)?;
        let x = self.zeros(2, n - 1)?;
        let mut second = vec![self.zero()];
        second.extend(labelled("x", 1, &x));
        let chain = alternate(labelled("z", 1, &z), second);
        Ok(self.report(vec![(0, n), (2, n - 1)], chain))
    }

    fn shift2_degree_gap2(&self) -> Result<InterlacingReport> {
        let n = self.n;
        let z = self.zeros(0, n)?;
        let x = self.zeros(2, n - 2)?;
        let neg_c = -constant(ConstantName::PointC, n - 1, self.params)?;
        let mut first = vec![PatternPoint::new("-c_(n-1)", neg_c), self.zero()];
        first.extend(labelled("x", 1, &x));
        let chain = alternate(first, labelled("z", 1, &z));
        Ok(self.report(vec![(0, n), (2, n - 2)], chain))
    }
}
