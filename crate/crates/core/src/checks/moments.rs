use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::precision::{qpoch, PochLength, PrecReal};
use crate::qlaguerre::{coefficients, PolySpec, Recurrence};

/// Extra bits carried while summing.
const SUM_GUARD: u32 = 64;
/// Hard cap on the number of nodes visited in either direction.
const MAX_NODES: i64 = 1 << 20;

/// Index range `j_min..=j_max` of the Jackson nodes `q^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub j_min: i64,
    pub j_max: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentVerdict {
    Vanishes,
    Nonzero,
}

impl fmt::Display for MomentVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MomentVerdict::Vanishes => "vanishes",
            MomentVerdict::Nonzero => "nonzero",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub q: PrecReal,
    pub delta: PrecReal,
    pub n: usize,
    pub order: usize,
    pub mu: PrecReal,
    /// Sum of the absolute values of the summed terms.
    pub abs_sum: PrecReal,
    pub truncation: Truncation,
    /// Rigorous bound on the omitted terms, both tails together.
    pub truncation_bound: PrecReal,
    /// `2^{-P/3}` times `abs_sum`: the vanishing threshold, and the most the
    /// truncation bound may reach.
    pub tolerance: PrecReal,
    pub verdict: MomentVerdict,
}

/// `mu_i = int_0^inf z^i L_n(z) z^{delta+1} / (-z; q)_inf d_q z` as a
/// bilateral Jackson sum over the nodes `q^j`.
pub fn moment(
    order: usize,
    spec: &PolySpec,
    truncation: Option<Truncation>,
) -> Result<MomentReport> {
    moments_upto(order, order, spec, truncation).map(|mut v| v.remove(0))
}

/// Moments of orders `0..=max_order`, sharing one pass over the nodes.
pub fn moments(
    spec: &PolySpec,
    max_order: usize,
    truncation: Option<Truncation>,
) -> Result<Vec<MomentReport>> {
    moments_upto(0, max_order, spec, truncation)
}

struct Order {
    /// `i + delta + 2`, the decay rate of the terms at the origin.
    s: PrecReal,
    sum: PrecReal,
    abs_sum: PrecReal,
    upper_ok: bool,
    lower_ok: bool,
    upper_bound: PrecReal,
    lower_bound: PrecReal,
}

fn moments_upto(
    first: usize,
    last: usize,
    spec: &PolySpec,
    truncation: Option<Truncation>,
) -> Result<Vec<MomentReport>> {
    let params = &spec.params;
    params.require_quasi()?;
    if spec.shift != 0 {
        return Err(Error::Domain(
            "moments are defined for the unshifted family".into(),
        ));
    }
    if let Some(t) = truncation {
        if t.j_min > 0 || t.j_max < 0 {
            return Err(Error::Domain(format!(
                "truncation must satisfy j_min <= 0 <= j_max, got ({}, {})",
                t.j_min, t.j_max
            )));
        }
    }
    let prec = params.precision();
    let wp = prec + SUM_GUARD;
    let wspec = spec.at_precision(wp);
    let wparams = &wspec.params;
    let q = wparams.q().clone();
    let one = PrecReal::one(wp);
    let one_minus_q = &one - &q;
    let rec = Recurrence::new(&wspec);
    let n = spec.degree as i64;
    let coeff_abs: Vec<PrecReal> = coefficients(&wspec).iter().map(PrecReal::abs).collect();
    let c_total = coeff_abs.iter().fold(PrecReal::zero(wp), |a, c| a + c);
    let target = PrecReal::pow2(-(prec as i32) / 2, wp);
    let tol = PrecReal::pow2(-(prec as i32) / 3, wp);
    let ln_q = q.ln();

    let mut orders: Vec<Order> = (first..=last)
        .map(|i| Order {
            s: wparams.delta() + (i as i32 + 2),
            sum: PrecReal::zero(wp),
            abs_sum: PrecReal::zero(wp),
            upper_ok: false,
            lower_ok: false,
            upper_bound: PrecReal::zero(wp),
            lower_bound: PrecReal::zero(wp),
        })
        .collect();

    // term_j = (1 - q) q^{j s} L(q^j) / (-q^j; q)_inf
    let add_node = |orders: &mut [Order], j: i64, y: &PrecReal, w: &PrecReal| {
        let base = &one_minus_q * rec.eval(y) / w;
        let jr = PrecReal::from_i64(j, wp);
        for o in orders.iter_mut() {
            let t = &base * (&ln_q * &jr * &o.s).exp();
            o.abs_sum = &o.abs_sum + t.abs();
            o.sum = &o.sum + t;
        }
    };

    // Omitted nodes j > J have y <= 1 and W >= 1, so |term| is at most
    // (1 - q) sum_k |c_k| q^{j (k + s)}.
    let upper_tail = |o: &Order, big_j: i64| {
        let mut b = PrecReal::zero(wp);
        for (k, c) in coeff_abs.iter().enumerate() {
            let e = &o.s + k as i32;
            let decay = (&ln_q * &e).exp();
            let head = (&ln_q * &e * PrecReal::from_i64(big_j + 1, wp)).exp();
            b = b + c * head / (&one - decay);
        }
        &one_minus_q * b
    };

    // Omitted nodes j < J have y >= 1, where |term| <= U_j = (1 - q) C y^{s+n} / W_j.
    // U_{j-1} / U_j = q^{-(s+n)} / (1 + y/q) decreases as y grows, so once it
    // is at most r <= 1/2 the tail is at most U_J r / (1 - r).
    let lower_tail = |o: &Order, y: &PrecReal, w: &PrecReal| -> Option<PrecReal> {
        let grow = (-(&ln_q * (&o.s + n as i32))).exp();
        let r = grow / (&one + y / &q);
        if r > one.scale2(-1) {
            return None;
        }
        let u = &one_minus_q * &c_total * (y.ln() * (&o.s + n as i32)).exp() / w;
        Some(u * &r / (&one - &r))
    };

    let w0 = qpoch(&(-&one), &q, PochLength::Infinite)?;

    // Upward sweep: j = 0, 1, ... with W_{j+1} = W_j / (1 + q^j).
    let mut y = one.clone();
    let mut w = w0.clone();
    let mut j = 0i64;
    loop {
        let done = match truncation {
            Some(t) => j > t.j_max,
            None => orders.iter().all(|o| o.upper_ok),
        };
        if done {
            break;
        }
        if j > MAX_NODES {
            return Err(Error::NonConvergence("Jackson sum toward the origin"));
        }
        add_node(&mut orders, j, &y, &w);
        for o in orders.iter_mut() {
            o.upper_bound = upper_tail(o, j);
            o.upper_ok = o.upper_bound <= &target * &o.abs_sum;
        }
        w = w / (&one + &y);
        y = &y * &q;
        j += 1;
    }
    let j_max = j - 1;

    // Downward sweep: j = -1, -2, ... with W_j = (1 + q^j) W_{j+1}.
    let mut y = one.clone();
    let mut w = w0;
    let mut j = 0i64;
    loop {
        for o in orders.iter_mut() {
            match lower_tail(o, &y, &w) {
                Some(b) => {
                    o.lower_ok = b <= &target * &o.abs_sum;
                    o.lower_bound = b;
                }
                None => {
                    o.lower_ok = false;
                    o.lower_bound = PrecReal::pow2(i32::MAX / 4, wp);
                }
            }
        }
        let done = match truncation {
            Some(t) => j <= t.j_min,
            None => orders.iter().all(|o| o.lower_ok),
        };
        if done {
            break;
        }
        if -j > MAX_NODES {
            return Err(Error::NonConvergence("Jackson sum toward infinity"));
        }
        j -= 1;
        y = &y / &q;
        w = w * (&one + &y);
        add_node(&mut orders, j, &y, &w);
    }
    let j_min = j;

    let trunc = Truncation { j_min, j_max };
    let mut out = Vec::with_capacity(orders.len());
    for (i, o) in (first..=last).zip(orders) {
        let bound = &o.upper_bound + &o.lower_bound;
        let tolerance = &tol * &o.abs_sum;
        if bound > tolerance {
            return Err(Error::TruncationInsufficient {
                bound: bound.to_sig_string(6),
                tolerance: tolerance.to_sig_string(6),
            });
        }
        let verdict = if o.sum.abs() <= tolerance {
            MomentVerdict::Vanishes
        } else {
            MomentVerdict::Nonzero
        };
        out.push(MomentReport {
            q: params.q().clone(),
            delta: params.delta().clone(),
            n: spec.degree,
            order: i,
            mu: o.sum.with_prec(prec),
            abs_sum: o.abs_sum.with_prec(prec),
            truncation: trunc,
            truncation_bound: bound.with_prec(prec),
            tolerance: tolerance.with_prec(prec),
            verdict,
        });
    }
    Ok(out)
}
