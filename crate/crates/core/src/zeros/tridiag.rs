use crate::error::{Error, Result};
use crate::precision::PrecReal;
use crate::qlaguerre::{PolySpec, Recurrence};

/// Symmetric tridiagonal matrix stored as its diagonal and the squares of its
/// off-diagonal. The squares are all the Sturm recurrence needs, and they are
/// exactly the recurrence coefficients `beta_k`.
#[derive(Clone, Debug)]
pub struct Tridiagonal {
    pub diag: Vec<PrecReal>,
    /// `offsq[k]` couples rows `k` and `k + 1`.
    pub offsq: Vec<PrecReal>,
}

impl Tridiagonal {
    pub fn new(diag: Vec<PrecReal>, offsq: Vec<PrecReal>) -> Self {
        assert_eq!(offsq.len() + 1, diag.len().max(1), "off-diagonal length");
        Tridiagonal { diag, offsq }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    fn precision(&self) -> u32 {
        self.diag.first().map_or(64, PrecReal::prec)
    }

    /// Number of eigenvalues strictly below `x`.
    ///
    /// Counts negative pivots of the LDL^T factorisation of `T - x I`. A zero
    /// pivot is nudged to a tiny negative number, which only moves `x` by less
    /// than an ulp.
    pub fn sturm_count(&self, x: &PrecReal) -> usize {
        let prec = self.precision();
        let tiny = PrecReal::pow2(-(2 * prec as i32), prec);
        let mut count = 0;
        let mut pivot = PrecReal::one(prec);
        for (k, d) in self.diag.iter().enumerate() {
            pivot = if k == 0 {
                d - x
            } else {
                d - x - &self.offsq[k - 1] / &pivot
            };
            if pivot.is_zero() {
                pivot = -tiny.clone();
            }
            if pivot.is_negative() {
                count += 1;
            }
        }
        count
    }

    /// Interval containing every eigenvalue (union of the Gershgorin discs).
    pub fn gershgorin(&self) -> (PrecReal, PrecReal) {
        let prec = self.precision();
        let radius = |k: usize| {
            let mut r = PrecReal::zero(prec);
            if k > 0 {
                r = r + self.offsq[k - 1].abs().sqrt();
            }
            if k + 1 < self.dim() {
                r = r + self.offsq[k].abs().sqrt();
            }
            r
        };
        let mut lo = &self.diag[0] - radius(0);
        let mut hi = &self.diag[0] + radius(0);
        for k in 1..self.dim() {
            let r = radius(k);
            lo = lo.min(&self.diag[k] - &r);
            hi = hi.max(&self.diag[k] + &r);
        }
        (lo, hi)
    }
}

/// Jacobi matrix of an orthogonal member of the family.
///
/// Fails with a regime error when some `beta_k <= 0`, i.e. when the shifted
/// parameter does not give a positive-definite moment functional.
pub fn jacobi_matrix(spec: &PolySpec) -> Result<Tridiagonal> {
    if spec.degree == 0 {
        return Err(Error::InvalidDegree {
            what: "jacobi_matrix",
            n: 0,
            min: 1,
        });
    }
    let rec = Recurrence::new(spec);
    if let Some(k) = rec
        .off_diagonal_squares()
        .iter()
        .position(|b| b.sign() <= 0)
    {
        return Err(Error::Regime(format!(
            "beta_{} <= 0 for {} (not an orthogonal family)",
            k + 2,
            spec.label()
        )));
    }
    Ok(Tridiagonal::new(
        rec.diagonal().to_vec(),
        rec.off_diagonal_squares().to_vec(),
    ))
}

/// `k`-th smallest eigenvalue (0-based) by Sturm bisection, to relative
/// tolerance `2^{-P/2} max(1, |lambda|)`.
pub fn eigen_bisect(tri: &Tridiagonal, k: usize) -> Result<PrecReal> {
    if k >= tri.dim() {
        return Err(Error::Domain(format!(
            "eigenvalue index {k} out of range for a {0}x{0} matrix",
            tri.dim()
        )));
    }
    let prec = tri.precision();
    let (mut lo, mut hi) = tri.gershgorin();
    let tol = PrecReal::pow2(-(prec as i32) / 2, prec);
    let budget = 2 * prec + 128;
    for _ in 0..budget {
        let mid = lo.midpoint(&hi);
        let scale = mid.abs().max(PrecReal::one(prec));
        if &hi - &lo <= &tol * &scale {
            return Ok(mid);
        }
        if tri.sturm_count(&mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NonConvergence("eigen_bisect"))
}

/// Disjoint intervals `(lo, hi]` each holding exactly one eigenvalue, in order.
///
/// Bisection stops as soon as a piece isolates one eigenvalue; two eigenvalues
/// that stay together below `2^{-P/2}` relative width are reported as a cluster.
pub(crate) fn isolate(tri: &Tridiagonal) -> Result<Vec<(PrecReal, PrecReal)>> {
    let prec = tri.precision();
    let (lo, hi) = tri.gershgorin();
    let pad = (&hi - &lo).abs().max(PrecReal::one(prec)).scale2(-10);
    let lo = lo - &pad;
    let hi = hi + &pad;
    let tol = PrecReal::pow2(-(prec as i32) / 2, prec);
    let mut out = Vec::with_capacity(tri.dim());
    let mut stack = vec![(
        lo.clone(),
        tri.sturm_count(&lo),
        hi.clone(),
        tri.sturm_count(&hi),
    )];
    while let Some((a, ca, b, cb)) = stack.pop() {
        match cb - ca {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let scale = a.abs().max(b.abs()).max(PrecReal::one(prec));
                if &b - &a <= &tol * &scale {
                    return Err(Error::Cluster { index: ca });
                }
                let mid = a.midpoint(&b);
                let cm = tri.sturm_count(&mid);
                // Upper half first so the lower half is popped first.
                stack.push((mid.clone(), cm, b, cb));
                stack.push((a, ca, mid, cm));
            }
        }
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite endpoints"));
    Ok(out)
}
