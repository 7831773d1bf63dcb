use crate::error::{Error, Result};
use crate::precision::PrecReal;
use crate::qlaguerre::{PolySpec, Recurrence};

/// Extra bits the root finder carries beyond the target precision.
pub(crate) const WORK_GUARD: u32 = 64;

/// Recurrence evaluation with a rounding-error bound, widening the precision
/// until the sign of the value is certain.
pub(crate) struct Evaluator {
    spec: PolySpec,
    n_bits: i32,
    levels: Vec<Recurrence>,
}

impl Evaluator {
    pub fn new(spec: &PolySpec) -> Self {
        let n_bits = (usize::BITS - spec.degree.max(1).leading_zeros()) as i32;
        let base = spec.params.precision() + WORK_GUARD;
        Evaluator {
            spec: spec.clone(),
            n_bits,
            levels: vec![Recurrence::new(&spec.at_precision(base))],
        }
    }

    pub fn work_precision(&self) -> u32 {
        self.levels[0].precision()
    }

    fn level(&mut self, i: usize) -> Option<&Recurrence> {
        let max = 4 * self.spec.params.precision();
        while self.levels.len() <= i {
            let prec = 2 * self.levels.last().expect("non-empty").precision();
            if prec > max {
                return None;
            }
            self.levels
                .push(Recurrence::new(&self.spec.at_precision(prec)));
        }
        self.levels.get(i)
    }

    /// Working-precision value and derivative; not certified.
    pub fn value_and_derivative(&self, x: &PrecReal) -> (PrecReal, PrecReal) {
        self.levels[0].eval_with_derivative(x)
    }

    /// Sign of the polynomial at `x`, or `None` if `x` is indistinguishable from
    /// a zero even at four times the target precision.
    pub fn certified_sign(&mut self, x: &PrecReal) -> Option<i32> {
        let n_bits = self.n_bits;
        for i in 0.. {
            let rec = self.level(i)?;
            let (v, bound) = rec.eval_with_bound(x);
            let err = bound.scale2(n_bits + 4 - rec.precision() as i32);
            if v.abs() > err {
                return Some(v.sign());
            }
        }
        unreachable!()
    }

    /// Sign used while iterating: cheap when clear, certified when not.
    fn sign(&mut self, x: &PrecReal) -> i32 {
        self.certified_sign(x).unwrap_or(0)
    }
}

/// Relative half-width `2^{-P/2}` used to certify zeros at precision `P`.
pub(crate) fn certify_tol(prec: u32) -> PrecReal {
    PrecReal::pow2(-(prec as i32) / 2, prec)
}

fn scale_of(x: &PrecReal) -> PrecReal {
    x.abs().max(PrecReal::one(x.prec()))
}

/// Safeguarded Newton inside a bracket with a verified sign change.
///
/// Ten bisection steps first, then Newton steps that fall back to bisection
/// whenever they leave the bracket. Stops once a step is below `2^{-P/2}`
/// relative and then takes two more steps for the remaining digits.
pub(crate) fn refine(
    ev: &mut Evaluator,
    lo: &PrecReal,
    hi: &PrecReal,
    index: usize,
) -> Result<PrecReal> {
    let wp = ev.work_precision();
    let target = wp - WORK_GUARD;
    let mut lo = lo.with_prec(wp);
    let mut hi = hi.with_prec(wp);
    let s_lo = ev.sign(&lo);
    let s_hi = ev.sign(&hi);
    if s_lo == 0 {
        return Ok(lo.with_prec(target));
    }
    if s_hi == 0 {
        return Ok(hi.with_prec(target));
    }
    if s_lo == s_hi {
        return Err(Error::BracketFailure {
            index,
            lo: lo.to_sig_string(20),
            hi: hi.to_sig_string(20),
        });
    }

    let mut x = lo.midpoint(&hi);
    for _ in 0..10 {
        match ev.sign(&x) {
            0 => return Ok(x.with_prec(target)),
            s if s == s_lo => lo = x,
            _ => hi = x,
        }
        x = lo.midpoint(&hi);
    }

    let stop = certify_tol(target);
    let budget = 2 * wp as usize;
    for _ in 0..budget {
        let (v, d) = ev.value_and_derivative(&x);
        if v.is_zero() {
            return Ok(x.with_prec(target));
        }
        let slack = &stop * scale_of(&x);
        let (next, newton) = match (!d.is_zero()).then(|| &x - &v / &d) {
            Some(nx) if nx >= lo && nx <= hi => (nx, true),
            // A root within rounding of an endpoint pushes Newton just past it.
            Some(nx) if nx < lo && &lo - &nx <= slack => (lo.clone(), true),
            Some(nx) if nx > hi && &nx - &hi <= slack => (hi.clone(), true),
            _ => (lo.midpoint(&hi), false),
        };
        // Only an accepted Newton step says anything about convergence; the
        // bisection fallback can land back on x itself.
        let step = (&next - &x).abs();
        x = next;
        match ev.sign(&x) {
            0 => return Ok(x.with_prec(target)),
            s if s == s_lo => lo = x.clone(),
            _ => hi = x.clone(),
        }
        let small_step = newton && step <= &stop * scale_of(&x);
        if small_step || &hi - &lo <= &stop * scale_of(&x) {
            return Ok(polish(ev, x, &lo, &hi).with_prec(target));
        }
    }
    Err(Error::NonConvergence("zero refinement"))
}

/// Two more Newton steps, clamped to the bracket.
fn polish(ev: &Evaluator, mut x: PrecReal, lo: &PrecReal, hi: &PrecReal) -> PrecReal {
    for _ in 0..2 {
        let (v, d) = ev.value_and_derivative(&x);
        if v.is_zero() || d.is_zero() {
            break;
        }
        x = (&x - &v / &d).max(lo.clone()).min(hi.clone());
    }
    x
}

/// Checks that the polynomial changes sign across `z -+ tol max(1, |z|)`.
pub(crate) fn certify(ev: &mut Evaluator, z: &PrecReal, index: usize) -> Result<()> {
    let prec = z.prec();
    let w = certify_tol(prec) * scale_of(z);
    let a = ev.certified_sign(&(z - &w));
    let b = ev.certified_sign(&(z + &w));
    match (a, b) {
        (Some(a), Some(b)) if a * b < 0 => Ok(()),
        _ => Err(Error::Uncertified {
            index,
            value: z.to_sig_string(30),
        }),
    }
}
