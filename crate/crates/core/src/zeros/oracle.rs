//! Slow, independent routes to the same zero sets, kept for cross-validation.

use super::{finish, jacobi_matrix, refine, Evaluator, ZeroList};
use crate::error::{Error, Result};
use crate::precision::PrecReal;
use crate::qlaguerre::{coefficients, PolySpec};

/// Largest degree the grid scan is meant for.
pub const ORACLE_MAX_DEGREE: usize = 15;

fn horner(coeffs: &[PrecReal], x: &PrecReal) -> PrecReal {
    let mut acc = coeffs.last().expect("monic polynomial").clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = acc * x + c;
    }
    acc
}

fn bisect(coeffs: &[PrecReal], mut lo: PrecReal, mut hi: PrecReal, rel_bits: i32) -> PrecReal {
    let prec = lo.prec();
    let s_lo = horner(coeffs, &lo).sign();
    loop {
        let mid = lo.midpoint(&hi);
        let scale = mid.abs().max(PrecReal::one(prec));
        if &hi - &lo <= scale.scale2(-rel_bits) {
            return mid;
        }
        let s = horner(coeffs, &mid).sign();
        if s == 0 {
            return mid;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Zeros from the monomial coefficients alone.
///
/// Coefficients are formed at twice the working precision and evaluated by
/// Horner's rule on a signed, logarithmically spaced grid between the
/// reciprocal Cauchy bound and the Cauchy bound. The grid is refined until it
/// shows `n` sign changes, then each is bisected. Shares nothing with
/// [`zeros`](super::zeros) beyond the recurrence coefficients.
pub fn companion_oracle(spec: &PolySpec) -> Result<ZeroList> {
    let n = spec.degree;
    if n > ORACLE_MAX_DEGREE {
        return Err(Error::InvalidDegree {
            what: "companion_oracle (maximum 15)",
            n,
            min: 0,
        });
    }
    let prec = spec.params.precision();
    let wide = 2 * prec;
    let mut coeffs = coefficients(&spec.at_precision(wide));
    let mut roots = Vec::new();
    // Exact zeros at the origin.
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        roots.push(PrecReal::zero(wide));
        coeffs.remove(0);
    }
    let degree = coeffs.len() - 1;
    if degree > 0 {
        let one = PrecReal::one(wide);
        let max_rest = coeffs[..degree]
            .iter()
            .map(PrecReal::abs)
            .fold(PrecReal::zero(wide), PrecReal::max);
        let upper = &one + &max_rest;
        let c0 = coeffs[0].abs();
        let max_hi = coeffs[1..]
            .iter()
            .map(PrecReal::abs)
            .fold(PrecReal::zero(wide), PrecReal::max);
        let lower = &c0 / (&c0 + &max_hi);
        let ratio_ln = (&upper / &lower).ln();

        let mut points = 2000;
        let brackets = loop {
            let mut grid = Vec::with_capacity(2 * points + 2);
            for i in (0..=points).rev() {
                let t =
                    PrecReal::from_i64(i as i64, wide) / PrecReal::from_i64(points as i64, wide);
                grid.push(-(&lower * (&ratio_ln * t).exp()));
            }
            for i in 0..=points {
                let t =
                    PrecReal::from_i64(i as i64, wide) / PrecReal::from_i64(points as i64, wide);
                grid.push(&lower * (&ratio_ln * t).exp());
            }
            let signs: Vec<i32> = grid.iter().map(|x| horner(&coeffs, x).sign()).collect();
            let mut found = Vec::new();
            for i in 0..grid.len() - 1 {
                if signs[i] * signs[i + 1] < 0 {
                    found.push((grid[i].clone(), grid[i + 1].clone()));
                }
            }
            if found.len() == degree || points >= 1 << 18 {
                break found;
            }
            points *= 2;
        };
        if brackets.len() != degree {
            return Err(Error::NonConvergence("companion_oracle grid scan"));
        }
        let bits = prec as i32 / 2 + 8;
        for (lo, hi) in brackets {
            roots.push(bisect(&coeffs, lo, hi, bits));
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    let roots = roots.into_iter().map(|r| r.with_prec(prec)).collect();
    Ok(ZeroList::from_sorted(
        spec,
        roots,
        PrecReal::pow2(-(prec as i32) / 2 - 8, prec),
    ))
}

/// Zeros of an orthogonal shift found degree by degree: the zeros of degree
/// `m - 1` separate those of degree `m`, with the Gershgorin interval of the
/// full Jacobi matrix as outer brackets. No eigenvalue counting involved.
pub fn zeros_by_interlacing(spec: &PolySpec) -> Result<ZeroList> {
    if spec.shift == 0 {
        return Err(Error::Regime(
            "zeros_by_interlacing needs an orthogonal shift (t >= 1)".into(),
        ));
    }
    let n = spec.degree;
    let prec = spec.params.precision();
    if n == 0 {
        return Ok(ZeroList::from_sorted(
            spec,
            Vec::new(),
            super::refine::certify_tol(prec),
        ));
    }
    let tri = jacobi_matrix(spec)?;
    let (g_lo, g_hi) = tri.gershgorin();
    let one = PrecReal::one(prec);
    let lo = g_lo.min(PrecReal::zero(prec)) - &one;
    let hi = g_hi + &one;

    let mut previous: Vec<PrecReal> = Vec::new();
    let mut last_ev = None;
    for m in 1..=n {
        let mut ev = Evaluator::new(&spec.with_degree(m));
        let mut edges = Vec::with_capacity(m + 1);
        edges.push(lo.clone());
        edges.extend(previous.iter().cloned());
        edges.push(hi.clone());
        let current = edges
            .windows(2)
            .enumerate()
            .map(|(i, w)| refine(&mut ev, &w[0], &w[1], i))
            .collect::<Result<Vec<_>>>()?;
        previous = current;
        last_ev = Some(ev);
    }
    let mut ev = last_ev.expect("n >= 1");
    finish(spec, &mut ev, previous)
}
