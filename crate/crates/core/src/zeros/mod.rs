//! Real zeros of `L_n^{(delta+t)}`.
//!
//! Orthogonal shifts (`delta + t > -1`) go through the Jacobi matrix: Sturm
//! bisection isolates every eigenvalue and each isolating interval is then
//! polished against the recurrence. The quasi-orthogonal family (`t = 0`,
//! `-2 < delta < -1`) has one negative zero, bracketed by the closed-form
//! bounds `B_n` and `A(n)`, and `n - 1` positive zeros, one between each pair
//! of consecutive zeros of the first shift. Every bracket is sign-checked
//! before use and every zero is certified by a sign change afterwards.

mod oracle;
mod refine;
mod source;
mod tridiag;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::precision::PrecReal;
use crate::qlaguerre::{constant, constant_a, ConstantName, PolySpec, Recurrence};

pub use oracle::{companion_oracle, zeros_by_interlacing};
pub use source::{Direct, Perturbed, ZeroCache, ZeroSource};
pub use tridiag::{eigen_bisect, jacobi_matrix, Tridiagonal};

pub(crate) use refine::{certify, refine, Evaluator};

/// Sorted simple real zeros of one polynomial.
#[derive(Clone, Debug)]
pub struct ZeroList {
    pub spec: PolySpec,
    pub zeros: Vec<PrecReal>,
    pub neg_count: usize,
    /// Relative certification half-width: the polynomial changes sign across
    /// `z -+ tol max(1, |z|)` for every zero `z`.
    pub tol: PrecReal,
}

impl ZeroList {
    pub(crate) fn from_sorted(spec: &PolySpec, zeros: Vec<PrecReal>, tol: PrecReal) -> Self {
        let neg_count = zeros.iter().filter(|z| z.is_negative()).count();
        ZeroList {
            spec: spec.clone(),
            zeros,
            neg_count,
            tol,
        }
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn negative(&self) -> &[PrecReal] {
        &self.zeros[..self.neg_count]
    }

    /// Zeros greater than zero (a zero exactly at the origin is in neither half).
    pub fn positive(&self) -> &[PrecReal] {
        let start = self.zeros.partition_point(|z| !z.is_positive());
        &self.zeros[start..]
    }

    /// Index of the zero nearest to `x`.
    pub fn nearest(&self, x: &PrecReal) -> Option<usize> {
        (0..self.len()).min_by(|&a, &b| {
            let da = (&self.zeros[a] - x).abs();
            let db = (&self.zeros[b] - x).abs();
            da.partial_cmp(&db).expect("finite zeros")
        })
    }
}

impl Serialize for ZeroList {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ZeroList", 4)?;
        s.serialize_field("spec", &self.spec)?;
        s.serialize_field("zeros", &self.zeros)?;
        s.serialize_field("neg_count", &self.neg_count)?;
        s.serialize_field("certified_tol", &self.tol)?;
        s.end()
    }
}

/// All real zeros of `spec`.
///
/// If two zeros cannot be separated at the working precision the computation
/// is repeated once at twice the precision (and the list is returned at that
/// precision); a cluster that survives the doubling is an error.
pub fn zeros(spec: &PolySpec) -> Result<ZeroList> {
    match zeros_at(spec) {
        Err(Error::Cluster { .. }) => {
            let wide = spec.at_precision(2 * spec.params.precision());
            zeros_at(&wide)
        }
        other => other,
    }
}

fn zeros_at(spec: &PolySpec) -> Result<ZeroList> {
    let prec = spec.params.precision();
    let tol = refine::certify_tol(prec);
    if spec.degree == 0 {
        return Ok(ZeroList::from_sorted(spec, Vec::new(), tol));
    }
    let mut ev = Evaluator::new(spec);
    let found = if spec.shift == 0 {
        quasi_zeros(spec, &mut ev)?
    } else {
        orthogonal_zeros(spec, &mut ev)?
    };
    finish(spec, &mut ev, found)
}

/// Certifies each zero and checks that the certified intervals are disjoint.
pub(crate) fn finish(
    spec: &PolySpec,
    ev: &mut Evaluator,
    found: Vec<PrecReal>,
) -> Result<ZeroList> {
    let prec = spec.params.precision();
    let tol = refine::certify_tol(prec);
    for (i, z) in found.iter().enumerate() {
        certify(ev, z, i)?;
    }
    for (i, w) in found.windows(2).enumerate() {
        let reach =
            (w[0].abs().max(PrecReal::one(prec)) + w[1].abs().max(PrecReal::one(prec))) * &tol;
        if &w[1] - &w[0] <= reach {
            return Err(Error::Cluster { index: i });
        }
    }
    Ok(ZeroList::from_sorted(spec, found, tol))
}

fn orthogonal_zeros(spec: &PolySpec, ev: &mut Evaluator) -> Result<Vec<PrecReal>> {
    let tri = jacobi_matrix(&spec.at_precision(ev.work_precision()))?;
    let brackets = tridiag::isolate(&tri)?;
    if brackets.len() != spec.degree {
        return Err(Error::Cluster {
            index: brackets.len(),
        });
    }
    brackets
        .iter()
        .enumerate()
        .map(|(i, (lo, hi))| refine(ev, lo, hi, i))
        .collect()
}

fn quasi_zeros(spec: &PolySpec, ev: &mut Evaluator) -> Result<Vec<PrecReal>> {
    let params = &spec.params;
    params.require_quasi()?;
    let n = spec.degree;
    if n == 1 {
        let wide = spec.at_precision(ev.work_precision());
        let root = Recurrence::new(&wide).diagonal()[0].with_prec(params.precision());
        return Ok(vec![root]);
    }
    let outer = constant(ConstantName::OuterBound, n, params)?;
    let inner = constant_a(&params.real(n as i64), params)?;
    let mut out = Vec::with_capacity(n);
    out.push(refine(ev, &outer, &inner, 0)?);

    let shifted = zeros_at(&PolySpec::new(params, 1, n))?;
    for (i, w) in shifted.zeros.windows(2).enumerate() {
        out.push(refine(ev, &w[0], &w[1], i + 1)?);
    }
    Ok(out)
}

/// The negative zero of the quasi family located without the closed-form
/// bounds: bisection on `[g, 0]` where `g` is a Gershgorin bound for the
/// (non-symmetric) recurrence matrix. Used where the bounds themselves are
/// being tested.
pub fn smallest_zero(spec: &PolySpec) -> Result<PrecReal> {
    spec.params.require_quasi()?;
    if spec.shift != 0 || spec.degree == 0 {
        return Err(Error::Domain(format!(
            "smallest_zero needs the unshifted family with n >= 1, got {}",
            spec.label()
        )));
    }
    let prec = spec.params.precision();
    let mut ev = Evaluator::new(spec);
    let rec = Recurrence::new(&spec.at_precision(ev.work_precision()));
    let root_of = |b: &PrecReal| b.abs().sqrt();
    let mut lo = PrecReal::zero(ev.work_precision());
    for (k, a) in rec.diagonal().iter().enumerate() {
        let mut r = PrecReal::zero(ev.work_precision());
        if k > 0 {
            r = r + root_of(&rec.off_diagonal_squares()[k - 1]);
        }
        if k + 1 < rec.degree() {
            r = r + root_of(&rec.off_diagonal_squares()[k]);
        }
        lo = lo.min(a - r);
    }
    let lo = lo - PrecReal::one(prec);
    let z = refine(&mut ev, &lo, &PrecReal::zero(prec), 0)?;
    certify(&mut ev, &z, 0)?;
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaguerre::{eval_recurrence, FamilyParams};

    fn params(q: &str, d: &str) -> FamilyParams {
        FamilyParams::parse(q, d, 256).unwrap()
    }

    #[test]
    fn degree_one_quasi_zero_is_explicit_and_negative() {
        let p = params("0.5", "-1.5");
        let spec = PolySpec::new(&p, 0, 1);
        let list = zeros(&spec).unwrap();
        let root = (p.one() - p.qpow_delta(1)) / p.qpow_delta(1);
        assert_eq!(list.neg_count, 1);
        assert!((&list.zeros[0] - &root).abs() <= PrecReal::pow2(-250, 256));
    }

    #[test]
    fn smallest_zero_matches_printed_table_entries() {
        let z = zeros(&PolySpec::new(&params("0.23", "-1.1"), 0, 2)).unwrap();
        assert!((z.zeros[0].to_f64() + 0.110294).abs() <= 1e-6);
        let z = zeros(&PolySpec::new(&params("0.89", "-1.81"), 0, 12)).unwrap();
        assert!((z.zeros[0].to_f64() + 0.00661085).abs() <= 1e-8);
    }

    #[test]
    fn quasi_family_has_one_negative_zero() {
        for d in ["-1.9", "-1.5", "-1.1"] {
            for n in 1..=9 {
                let list = zeros(&PolySpec::new(&params("0.5", d), 0, n)).unwrap();
                assert_eq!(list.len(), n);
                assert_eq!(list.neg_count, 1, "delta={d} n={n}");
                assert!(list.zeros.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn orthogonal_shift_zeros_are_positive_roots() {
        let p = params("0.94", "-1.5");
        for t in 1..=4 {
            let spec = PolySpec::new(&p, t, 8);
            let list = zeros(&spec).unwrap();
            assert_eq!(list.neg_count, 0);
            for z in &list.zeros {
                let v = eval_recurrence(&spec, z);
                let (_, d) = Recurrence::new(&spec).eval_with_derivative(z);
                assert!((v / d).abs() <= z.scale2(-200), "t={t}");
            }
        }
    }

    #[test]
    fn independent_smallest_zero_agrees() {
        let spec = PolySpec::new(&params("0.89", "-1.5"), 0, 7);
        let a = zeros(&spec).unwrap().zeros[0].clone();
        let b = smallest_zero(&spec).unwrap();
        assert!((a - b).abs() <= PrecReal::pow2(-200, 256));
    }

    #[test]
    fn quasi_zeros_need_quasi_regime() {
        let spec = PolySpec::new(&params("0.5", "-0.5"), 0, 3);
        assert!(matches!(zeros(&spec), Err(Error::Regime(_))));
    }

    #[test]
    fn nearest_and_halves() {
        let list = zeros(&PolySpec::new(&params("0.5", "-1.5"), 0, 4)).unwrap();
        assert_eq!(list.negative().len(), 1);
        assert_eq!(list.positive().len(), 3);
        assert_eq!(list.nearest(&list.zeros[2]), Some(2));
    }
}
