//! Executable checks of the ordering, common-zero, moment and bound
//! properties of the quasi-orthogonal family.
//!
//! Every ordering statement is reduced to one expected chain of labelled
//! points `p_1 < p_2 < ... < p_k`. The chain is checked pair by pair; points
//! closer than `2^{-P/2} (1 + |p|)` count as tied, and a tie makes the verdict
//! not-applicable with the degeneracy flag set, since every statement is a
//! strict inequality.

mod bounds;
mod common;
mod moments;
mod patterns;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::precision::PrecReal;
use crate::qlaguerre::{FamilyParams, PolySpec};
use crate::zeros::Evaluator;

pub use bounds::{bounds, BoundsRecord};
pub use common::{
    check_common_zero, check_common_zero_with, common_point, find_common_zero_delta,
    CommonZeroKind, CommonZeroReport,
};
pub use moments::{moment, moments, MomentReport, MomentVerdict, Truncation};
pub use patterns::{
    check_bn_pattern, check_interlace, check_pattern, check_same_degree_shift2,
    check_stieltjes_failure, PatternId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl Verdict {
    /// Process exit code for a verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Holds => 0,
            Verdict::Fails => 3,
            Verdict::NotApplicable => 4,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// Knobs shared by the checkers.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// A point `p` is a common zero when the Newton distance
    /// `|L(p) / L'(p)| / (1 + |p|)` is at most this.
    pub tol_common: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { tol_common: 1e-6 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternPoint {
    pub label: String,
    pub value: PrecReal,
}

impl PatternPoint {
    pub fn new(label: impl Into<String>, value: PrecReal) -> Self {
        PatternPoint {
            label: label.into(),
            value,
        }
    }
}

/// One broken link `left < right` of the expected chain.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    /// Position of `left` in the expected chain.
    pub index: usize,
    pub expected: String,
    pub left: PatternPoint,
    pub right: PatternPoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct InterlacingReport {
    pub check: String,
    pub q: PrecReal,
    pub delta: PrecReal,
    pub n: usize,
    /// Polynomials whose zeros take part, e.g. `L[5](delta+1)`.
    pub compared: Vec<String>,
    pub branch: Option<String>,
    pub verdict: Verdict,
    pub degenerate: bool,
    pub note: Option<String>,
    /// Labels in the order the statement asserts.
    pub expected: Vec<String>,
    /// Every point that took part, sorted by value.
    pub pattern: Vec<PatternPoint>,
    pub violations: Vec<Violation>,
}

impl InterlacingReport {
    pub(crate) fn not_applicable(
        check: &str,
        params: &FamilyParams,
        n: usize,
        compared: Vec<String>,
        note: String,
    ) -> Self {
        InterlacingReport {
            check: check.to_string(),
            q: params.q().clone(),
            delta: params.delta().clone(),
            n,
            compared,
            branch: None,
            verdict: Verdict::NotApplicable,
            degenerate: false,
            note: Some(note),
            expected: Vec::new(),
            pattern: Vec::new(),
            violations: Vec::new(),
        }
    }
}

/// Builds a report by checking that `chain` is strictly increasing.
pub(crate) fn verify_chain(
    check: &str,
    params: &FamilyParams,
    n: usize,
    compared: Vec<String>,
    chain: Vec<PatternPoint>,
) -> InterlacingReport {
    let prec = params.precision();
    let tie = PrecReal::pow2(-(prec as i32) / 2, prec);
    let tied = |a: &PrecReal, b: &PrecReal| {
        let scale = a.abs().max(b.abs()) + PrecReal::one(prec);
        (a - b).abs() <= &tie * &scale
    };

    let violations: Vec<Violation> = chain
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].value >= w[1].value)
        .map(|(i, w)| Violation {
            index: i,
            expected: format!("{} < {}", w[0].label, w[1].label),
            left: w[0].clone(),
            right: w[1].clone(),
        })
        .collect();

    let mut pattern = chain.clone();
    pattern.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite points"));
    let tie_pair = pattern
        .windows(2)
        .find(|w| tied(&w[0].value, &w[1].value))
        .map(|w| {
            format!(
                "{} and {} coincide within tolerance",
                w[0].label, w[1].label
            )
        });

    let (verdict, degenerate) = match (&tie_pair, violations.is_empty()) {
        (Some(_), _) => (Verdict::NotApplicable, true),
        (None, true) => (Verdict::Holds, false),
        (None, false) => (Verdict::Fails, false),
    };
    InterlacingReport {
        check: check.to_string(),
        q: params.q().clone(),
        delta: params.delta().clone(),
        n,
        compared,
        branch: None,
        verdict,
        degenerate,
        note: tie_pair,
        expected: chain.iter().map(|p| p.label.clone()).collect(),
        pattern,
        violations,
    }
}

/// Alternates two labelled lists, `first[0] < second[0] < first[1] < ...`.
pub(crate) fn alternate(first: Vec<PatternPoint>, second: Vec<PatternPoint>) -> Vec<PatternPoint> {
    debug_assert!(first.len() == second.len() || first.len() == second.len() + 1);
    let mut out = Vec::with_capacity(first.len() + second.len());
    let mut b = second.into_iter();
    for p in first {
        out.push(p);
        if let Some(s) = b.next() {
            out.push(s);
        }
    }
    out
}

/// Labels `values` as `name1, name2, ...` counting from `start`.
pub(crate) fn labelled(name: &str, start: usize, values: &[PrecReal]) -> Vec<PatternPoint> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| PatternPoint::new(format!("{name}{}", i + start), v.clone()))
        .collect()
}

/// Relative Newton distance `|L(p) / L'(p)| / (1 + |p|)` of `point` from the
/// nearest zero of `spec`, together with `|L(p)|`.
pub(crate) fn newton_distance(spec: &PolySpec, point: &PrecReal) -> (PrecReal, PrecReal) {
    let ev = Evaluator::new(spec);
    let (v, d) = ev.value_and_derivative(point);
    let prec = spec.params.precision();
    let dist = if v.is_zero() {
        PrecReal::zero(prec)
    } else if d.is_zero() {
        PrecReal::pow2(i32::MAX / 4, prec)
    } else {
        (&v / &d).abs() / (point.abs() + PrecReal::one(prec))
    };
    (v.abs().with_prec(prec), dist.with_prec(prec))
}

pub(crate) fn is_common(spec: &PolySpec, point: &PrecReal, opts: &CheckOptions) -> bool {
    let (_, dist) = newton_distance(spec, point);
    dist.to_f64() <= opts.tol_common
}

pub(crate) fn require_degree(what: &'static str, n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidDegree { what, n, min });
    }
    Ok(())
}

/// Any named check the CLI can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckId {
    Pattern(PatternId),
    CommonZero(CommonZeroKind),
}

impl CheckId {
    pub fn all() -> Vec<CheckId> {
        PatternId::ALL
            .iter()
            .map(|&p| CheckId::Pattern(p))
            .chain([
                CheckId::CommonZero(CommonZeroKind::Diagonal),
                CheckId::CommonZero(CommonZeroKind::PointC),
            ])
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Pattern(p) => p.name(),
            CheckId::CommonZero(k) => k.name(),
        }
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::all()
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(label: &str, v: i64) -> PatternPoint {
        PatternPoint::new(label, PrecReal::from_i64(v, 128))
    }

    fn params() -> FamilyParams {
        FamilyParams::parse("0.5", "-1.5", 128).unwrap()
    }

    #[test]
    fn increasing_chain_holds() {
        let r = verify_chain(
            "t",
            &params(),
            1,
            vec![],
            vec![pt("a", -1), pt("b", 0), pt("c", 2)],
        );
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn out_of_order_chain_fails_with_location() {
        let r = verify_chain(
            "t",
            &params(),
            1,
            vec![],
            vec![pt("a", -1), pt("b", 3), pt("c", 2)],
        );
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].index, 1);
        assert_eq!(r.violations[0].expected, "b < c");
        assert_eq!(r.pattern[1].label, "c");
    }

    #[test]
    fn tie_is_degenerate_not_a_failure() {
        let r = verify_chain("t", &params(), 1, vec![], vec![pt("a", 1), pt("b", 1)]);
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(r.degenerate);
    }

    #[test]
    fn alternation_interleaves() {
        let chain = alternate(vec![pt("z1", 0), pt("z2", 2)], vec![pt("y1", 1)]);
        let labels: Vec<_> = chain.iter().map(|p| p.label.as_str()).collect();
        assert_eq!(labels, ["z1", "y1", "z2"]);
    }

    #[test]
    fn check_ids_round_trip() {
        for id in CheckId::all() {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        }
        assert!(matches!(
            "nope".parse::<CheckId>(),
            Err(Error::UnknownTheorem(_))
        ));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Holds.exit_code(), 0);
        assert_eq!(Verdict::Fails.exit_code(), 3);
        assert_eq!(Verdict::NotApplicable.exit_code(), 4);
    }
}
