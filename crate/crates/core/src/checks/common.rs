use std::fmt;

use serde::Serialize;

use super::{
    alternate, labelled, newton_distance, require_degree, verify_chain, CheckOptions,
    InterlacingReport, Verdict,
};
use crate::error::{Error, Result};
use crate::precision::PrecReal;
use crate::qlaguerre::{constant, eval_recurrence, ConstantName, FamilyParams, PolySpec};
use crate::zeros::{Direct, ZeroSource};

/// Where a shared zero can sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommonZeroKind {
    /// `L_n` and `L_{n-2}` sharing the recurrence diagonal `a_n`.
    Diagonal,
    /// `L_n` and `L_n^{(delta+2)}` sharing `c_n`.
    PointC,
}

impl CommonZeroKind {
    pub fn name(self) -> &'static str {
        match self {
            CommonZeroKind::Diagonal => "common-zero-a",
            CommonZeroKind::PointC => "common-zero-c",
        }
    }

    pub fn min_degree(self) -> usize {
        match self {
            CommonZeroKind::Diagonal => 3,
            CommonZeroKind::PointC => 2,
        }
    }

    /// `(shift, degree)` of the partner polynomial.
    fn partner(self, n: usize) -> (u8, usize) {
        match self {
            CommonZeroKind::Diagonal => (0, n - 2),
            CommonZeroKind::PointC => (2, n),
        }
    }

    /// Range the shared zero is expected in, as 1-based indices into
    /// the zeros of `L_n` (a) or of `L_n^{(delta+2)}` (c).
    fn expected_index(self, n: usize) -> (usize, usize) {
        match self {
            CommonZeroKind::Diagonal => (3, n - 1),
            CommonZeroKind::PointC => (2, n - 1),
        }
    }
}

impl fmt::Display for CommonZeroKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `a_n` or `c_n` for the given kind.
pub fn common_point(kind: CommonZeroKind, n: usize, params: &FamilyParams) -> Result<PrecReal> {
    match kind {
        CommonZeroKind::Diagonal => constant(ConstantName::Diagonal, n, params),
        CommonZeroKind::PointC => constant(ConstantName::PointC, n, params),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommonZeroReport {
    pub kind: CommonZeroKind,
    pub q: PrecReal,
    pub delta: PrecReal,
    pub n: usize,
    pub point: PrecReal,
    /// `|L_n(point)|`.
    pub residual: PrecReal,
    /// `|L_n(point) / L_n'(point)| / (1 + |point|)`.
    pub newton_distance: PrecReal,
    pub tol_common: f64,
    pub is_common: bool,
    /// 1-based position of the shared zero (in `L_n` for a, in `L_n^{(delta+2)}` for c).
    pub index: Option<usize>,
    pub index_in_expected_range: Option<bool>,
    /// For c: whether `z_{2,n} < c_n`, the standing assumption of the statement.
    pub below_smallest_positive: Option<bool>,
    /// The primed (non-common) zeros.
    pub non_common_zeros: Vec<PrecReal>,
    pub interlacing: Option<InterlacingReport>,
    pub verdict: Verdict,
    pub note: Option<String>,
}

pub fn check_common_zero(
    kind: CommonZeroKind,
    params: &FamilyParams,
    n: usize,
) -> Result<CommonZeroReport> {
    check_common_zero_with(kind, params, n, &Direct, &CheckOptions::default())
}

/// Decides whether the closed-form point is a shared zero and, if so, checks
/// the interlacing of the remaining zeros.
///
/// For `a_n`: the `n - 2` positive zeros of `L_n` other than `a_n` alternate
/// with the `n - 3` positive zeros of `L_{n-2}` (which include `a_n`), starting
/// and ending with a zero of `L_n`. For `c_n`: the `n - 1` positive zeros of
/// `L_n` (including `c_n`) alternate with the `n - 1` zeros of
/// `L_n^{(delta+2)}` other than `c_n`, starting with a zero of `L_n`.
pub fn check_common_zero_with(
    kind: CommonZeroKind,
    params: &FamilyParams,
    n: usize,
    source: &dyn ZeroSource,
    opts: &CheckOptions,
) -> Result<CommonZeroReport> {
    params.require_quasi()?;
    require_degree(kind.name(), n, kind.min_degree())?;
    let point = common_point(kind, n, params)?;
    let main = PolySpec::new(params, 0, n);
    let (residual, dist) = newton_distance(&main, &point);
    let is_common = dist.to_f64() <= opts.tol_common;
    let (pt, pm) = kind.partner(n);
    let partner = PolySpec::new(params, pt, pm);

    let mut report = CommonZeroReport {
        kind,
        q: params.q().clone(),
        delta: params.delta().clone(),
        n,
        point: point.clone(),
        residual,
        newton_distance: dist,
        tol_common: opts.tol_common,
        is_common,
        index: None,
        index_in_expected_range: None,
        below_smallest_positive: None,
        non_common_zeros: Vec::new(),
        interlacing: None,
        verdict: Verdict::NotApplicable,
        note: None,
    };
    if !is_common {
        report.note = Some("no common zero at the closed-form point".into());
        return Ok(report);
    }

    let z = source.zeros(&main)?.zeros;
    let other = source.zeros(&partner)?.zeros;
    let compared = vec![main.label(), partner.label()];
    let (lo, hi) = kind.expected_index(n);
    let nearest = |list: &[PrecReal]| {
        (0..list.len())
            .min_by(|&a, &b| {
                let da = (&list[a] - &point).abs();
                let db = (&list[b] - &point).abs();
                da.partial_cmp(&db).expect("finite")
            })
            .expect("non-empty zero list")
    };

    let chain = match kind {
        CommonZeroKind::Diagonal => {
            let j = nearest(&z);
            report.index = Some(j + 1);
            let primed: Vec<PrecReal> = z
                .iter()
                .enumerate()
                .filter(|&(i, v)| i != j && v.is_positive())
                .map(|(_, v)| v.clone())
                .collect();
            let partner_pos: Vec<PrecReal> =
                other.iter().filter(|v| v.is_positive()).cloned().collect();
            report.non_common_zeros = primed.clone();
            alternate(labelled("z'", 1, &primed), labelled("w", 1, &partner_pos))
        }
        CommonZeroKind::PointC => {
            let j = nearest(&other);
            report.index = Some(j + 1);
            report.below_smallest_positive = Some(z[1] < point);
            let primed: Vec<PrecReal> = other
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, v)| v.clone())
                .collect();
            let positive: Vec<PrecReal> = z.iter().filter(|v| v.is_positive()).cloned().collect();
            report.non_common_zeros = primed.clone();
            alternate(labelled("z", 2, &positive), labelled("x'", 1, &primed))
        }
    };
    let idx = report.index.expect("set above");
    let in_range = (lo..=hi).contains(&idx);
    report.index_in_expected_range = Some(in_range);
    let mut notes = Vec::new();
    if !in_range {
        notes.push(format!("shared zero has index {idx}, outside {lo}..={hi}"));
    }
    if report.below_smallest_positive == Some(false) {
        notes.push("z_2 > c_n, contrary to the standing assumption".to_string());
    }
    let inter = verify_chain(kind.name(), params, n, compared, chain);
    report.verdict = inter.verdict;
    if let Some(n) = &inter.note {
        notes.push(n.clone());
    }
    report.note = (!notes.is_empty()).then(|| notes.join("; "));
    report.interlacing = Some(inter);
    Ok(report)
}

/// `delta` in `(lo, hi)` at which the closed-form point of `kind` is a zero of
/// `L_n^{(delta)}`, by bisection on `delta -> L_n^{(delta)}(point(delta))` to
/// `2^{-P/2}`.
pub fn find_common_zero_delta(
    kind: CommonZeroKind,
    q: &PrecReal,
    n: usize,
    bracket: (&PrecReal, &PrecReal),
    precision: u32,
) -> Result<PrecReal> {
    require_degree(kind.name(), n, kind.min_degree())?;
    let f = |delta: &PrecReal| -> Result<i32> {
        let params = FamilyParams::new(q.clone(), delta.clone(), precision)?;
        params.require_quasi()?;
        let point = common_point(kind, n, &params)?;
        Ok(eval_recurrence(&PolySpec::new(&params, 0, n), &point).sign())
    };
    let mut lo = bracket.0.with_prec(precision);
    let mut hi = bracket.1.with_prec(precision);
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let s_lo = f(&lo)?;
    let s_hi = f(&hi)?;
    if s_lo == 0 {
        return Ok(lo);
    }
    if s_hi == 0 {
        return Ok(hi);
    }
    if s_lo == s_hi {
        return Err(Error::NoSignChange {
            lo_sign: s_lo,
            hi_sign: s_hi,
        });
    }
    let tol = PrecReal::pow2(-(precision as i32) / 2, precision);
    while &hi - &lo > tol {
        let mid = lo.midpoint(&hi);
        match f(&mid)? {
            0 => return Ok(mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(lo.midpoint(&hi))
}
