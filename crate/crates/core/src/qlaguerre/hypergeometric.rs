use super::PolySpec;
use crate::error::{Error, Result};
use crate::precision::{qpoch, PochLength, PrecReal};

/// `L_n^{(d)}(z; q)` from its basic hypergeometric representation
///
/// `(-1)^n (q^{d+1}; q)_n / q^{n(d+n)} * 1phi1(q^{-n}; q^{d+1}; q, -q^{d+n+1} z)`
///
/// with the `r = s = 1` normalisation, i.e. the k-th term carries the extra
/// factor `(-1)^k q^{k(k-1)/2}`. Independent of the recurrence apart from
/// sharing `q^d`.
pub fn eval_hypergeometric(spec: &PolySpec, z: &PrecReal) -> Result<PrecReal> {
    let n = spec.degree;
    let shifted = spec.shifted_delta();
    // (q^{d+1}; q)_k vanishes for some k <= n iff d + 1 + j = 0 with 0 <= j < n.
    if shifted.is_integer() && shifted <= -1 && shifted >= -(n as i32) {
        return Err(Error::DegenerateParameter(shifted.to_sig_string(12)));
    }
    let prec = spec.params.precision();
    let mut guard = 32;
    loop {
        let (value, magnitude) = sum_terms(&spec.at_precision(prec + guard), z)?;
        let slack = magnitude.scale2(8 - guard as i32);
        if slack <= value.abs() || guard >= 4 * prec {
            return Ok(value.with_prec(prec));
        }
        guard *= 2;
    }
}

/// Returns the value and the sum of absolute values of its terms (times the prefactor).
fn sum_terms(spec: &PolySpec, z: &PrecReal) -> Result<(PrecReal, PrecReal)> {
    let params = &spec.params;
    let prec = params.precision();
    let n = spec.degree as i64;
    let one = params.one();
    let z = z.with_prec(prec);

    let poch = qpoch(
        &spec.qpow_shifted(1),
        params.q(),
        PochLength::Finite(n as u32),
    )?;
    let base = spec.qpow_shifted(0);
    let denom = base.powi(n) * params.qpow_int(n * n);
    let mut prefactor = poch / denom;
    if n % 2 == 1 {
        prefactor = -prefactor;
    }

    // term_{k+1} / term_k = (1 - q^{k-n}) q^k q^{d+n+1} z / ((1 - q^{d+1+k}) (1 - q^{k+1}))
    let argument = spec.qpow_shifted(n + 1) * &z;
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut abs_sum = one.clone();
    for k in 0..n {
        let num = (&one - params.qpow_int(k - n)) * params.qpow_int(k) * &argument;
        let den = (&one - spec.qpow_shifted(k + 1)) * (&one - params.qpow_int(k + 1));
        if den.is_zero() {
            return Err(Error::DegenerateParameter(
                spec.shifted_delta().to_sig_string(12),
            ));
        }
        term = term * num / den;
        sum = sum + &term;
        abs_sum = abs_sum + term.abs();
    }
    let magnitude = abs_sum * prefactor.abs();
    Ok((prefactor * sum, magnitude))
}
