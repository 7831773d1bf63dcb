//! Arbitrary-precision real scalars and the q-elementary functions built on them.
//!
//! Every real quantity in the crate (q, delta, evaluation points, zeros, constants)
//! is a [`PrecReal`]: an MPFR float carrying its own significand precision.
//! Binary operations produce a result at the larger of the two operand
//! precisions, so values built from a single [`FamilyParams`](crate::FamilyParams)
//! stay at one precision throughout.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 256;
pub const MIN_PRECISION: u32 = 64;

/// Guard bits used internally by transcendental helpers before rounding back.
const GUARD_BITS: u32 = 32;

#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct PrecReal(Float);

impl PrecReal {
    pub fn from_float(value: Float) -> Self {
        PrecReal(value)
    }

    pub fn from_i64(value: i64, prec: u32) -> Self {
        PrecReal(Float::with_val(prec, value))
    }

    /// Exact conversion of a binary64 value; intended for tests and constants
    /// that are exactly representable (0.5, 0.25, ...).
    pub fn from_f64(value: f64, prec: u32) -> Self {
        PrecReal(Float::with_val(prec, value))
    }

    pub fn zero(prec: u32) -> Self {
        PrecReal(Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    /// `2^exp` at the given precision.
    pub fn pow2(exp: i32, prec: u32) -> Self {
        PrecReal(Float::with_val(prec, 1) << exp)
    }

    /// Parses a decimal literal directly at `prec` bits, correctly rounded.
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        check_precision(prec)?;
        let trimmed = text.trim();
        let parsed = Float::parse(trimmed).map_err(|_| Error::Parse {
            input: text.to_string(),
        })?;
        let value = Float::with_val(prec, parsed);
        if !value.is_finite() {
            return Err(Error::Parse {
                input: text.to_string(),
            });
        }
        Ok(PrecReal(value))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    /// Re-rounds to `prec` bits. Raising precision is exact.
    pub fn with_prec(&self, prec: u32) -> Self {
        PrecReal(Float::with_val(prec, &self.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// -1, 0 or 1.
    pub fn sign(&self) -> i32 {
        match self.0.cmp0() {
            Some(Ordering::Less) => -1,
            Some(Ordering::Greater) => 1,
            _ => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        PrecReal(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Self {
        PrecReal(self.0.clone().sqrt())
    }

    pub fn ln(&self) -> Self {
        PrecReal(self.0.clone().ln())
    }

    pub fn exp(&self) -> Self {
        PrecReal(self.0.clone().exp())
    }

    pub fn ln2(prec: u32) -> Self {
        PrecReal(Float::with_val(prec, Constant::Log2))
    }

    /// Multiplies by `2^exp` exactly.
    pub fn scale2(&self, exp: i32) -> Self {
        PrecReal(self.0.clone() << exp)
    }

    /// Integer power by binary exponentiation; negative exponents invert at the end.
    pub fn powi(&self, exp: i64) -> Self {
        let prec = self.prec();
        let mut result = Float::with_val(prec, 1);
        let mut base = self.0.clone();
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result *= &base;
            }
            e >>= 1;
            if e > 0 {
                base.square_mut();
            }
        }
        if exp < 0 {
            result.recip_mut();
        }
        PrecReal(result)
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Self) -> Self {
        (self + other).scale2(-1)
    }

    /// Shortest decimal string that reads back to the identical value at this precision.
    pub fn to_exact_string(&self) -> String {
        if !self.0.is_finite() || self.0.is_zero() {
            return self.to_sig_string(1);
        }
        // The full expansion always reads back; look for a shorter one first.
        let full = (f64::from(self.prec()) * std::f64::consts::LOG10_2).ceil() as usize + 2;
        for digits in 1..full {
            let text = self.to_sig_string(digits);
            let back = Float::parse(&text).map(|p| Float::with_val(self.prec(), p));
            if back.is_ok_and(|b| b == self.0) {
                return text;
            }
        }
        let (neg, digits, exp) = self.0.to_sign_string_exp(10, None);
        render_decimal(neg, &digits, exp)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_sig_string(&self, digits: usize) -> String {
        let (neg, digits, exp) = self.0.to_sign_string_exp(10, Some(digits.max(1)));
        render_decimal(neg, &digits, exp)
    }
}

fn render_decimal(neg: bool, digits: &str, exp: Option<i32>) -> String {
    let Some(exp) = exp else {
        return if digits.chars().all(|c| c == '0') {
            "0".to_string()
        } else {
            // inf / nan
            format!("{}{}", if neg { "-" } else { "" }, digits)
        };
    };
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if neg { "-" } else { "" };
    // value = 0.DIGITS * 10^exp
    if (-5..=21).contains(&exp) {
        let len = digits.len() as i32;
        if exp <= 0 {
            format!("{sign}0.{}{digits}", "0".repeat((-exp) as usize))
        } else if exp >= len {
            format!("{sign}{digits}{}", "0".repeat((exp - len) as usize))
        } else {
            let (int, frac) = digits.split_at(exp as usize);
            format!("{sign}{int}.{frac}")
        }
    } else {
        let (first, rest) = digits.split_at(1);
        let rest = if rest.is_empty() {
            String::new()
        } else {
            format!(".{rest}")
        };
        format!("{sign}{first}{rest}e{}", exp - 1)
    }
}

pub fn check_precision(bits: u32) -> Result<()> {
    if bits < MIN_PRECISION {
        return Err(Error::Precision {
            bits,
            min: MIN_PRECISION,
        });
    }
    Ok(())
}

fn check_nome(q: &PrecReal) -> Result<()> {
    if q.sign() <= 0 || *q.as_float() >= 1 {
        return Err(Error::Domain(format!(
            "q must lie in (0, 1), got {}",
            q.to_sig_string(12)
        )));
    }
    Ok(())
}

/// `q^x` for `q` in (0, 1).
///
/// Integer exponents go through binary exponentiation; everything else is
/// `exp(x ln q)` evaluated with guard bits and rounded to the precision of `q`.
pub fn pow_real(q: &PrecReal, x: &PrecReal) -> Result<PrecReal> {
    check_nome(q)?;
    let prec = q.prec().max(x.prec());
    if x.is_integer() && x.abs().as_float() < &(1i64 << 53) {
        let k = x.to_f64() as i64;
        return Ok(q.with_prec(prec).powi(k));
    }
    let wide = prec + GUARD_BITS;
    let ln_q = q.with_prec(wide).ln();
    Ok((ln_q * x.with_prec(wide)).exp().with_prec(prec))
}

/// `q^x` given a precomputed `ln q` (at any precision >= the target).
pub(crate) fn pow_from_ln(ln_q: &PrecReal, x: &PrecReal, prec: u32) -> PrecReal {
    let wide = ln_q.prec().max(prec + GUARD_BITS);
    (ln_q.with_prec(wide) * x.with_prec(wide))
        .exp()
        .with_prec(prec)
}

/// Length of a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLength {
    Finite(u32),
    Infinite,
}

/// `(a; q)_k = (1 - a)(1 - a q) ... (1 - a q^{k-1})`.
///
/// The infinite product stops at the first factor with `|a q^k| < 2^{-P-8}`.
pub fn qpoch(a: &PrecReal, q: &PrecReal, len: PochLength) -> Result<PrecReal> {
    check_nome(q)?;
    let prec = a.prec().max(q.prec());
    let mut product = PrecReal::one(prec);
    let mut term = a.with_prec(prec);
    match len {
        PochLength::Finite(k) => {
            for _ in 0..k {
                product = product * (PrecReal::one(prec) - &term);
                term = term * q;
            }
        }
        PochLength::Infinite => {
            let cutoff = PrecReal::pow2(-(prec as i32) - 8, prec);
            // q^k -> 0 geometrically, so the loop terminates for any finite a.
            while term.abs() >= cutoff {
                product = product * (PrecReal::one(prec) - &term);
                term = term * q;
            }
        }
    }
    Ok(product)
}

impl fmt::Display for PrecReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(digits) => f.write_str(&self.to_sig_string(digits)),
            None => f.write_str(&self.to_exact_string()),
        }
    }
}

impl Serialize for PrecReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_exact_string())
    }
}

impl Neg for PrecReal {
    type Output = PrecReal;
    fn neg(self) -> PrecReal {
        PrecReal(-self.0)
    }
}

impl Neg for &PrecReal {
    type Output = PrecReal;
    fn neg(self) -> PrecReal {
        PrecReal(-self.0.clone())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&PrecReal> for &PrecReal {
            type Output = PrecReal;
            fn $method(self, rhs: &PrecReal) -> PrecReal {
                let prec = self.0.prec().max(rhs.0.prec());
                PrecReal(Float::with_val(prec, &self.0 $op &rhs.0))
            }
        }
        impl $trait<PrecReal> for PrecReal {
            type Output = PrecReal;
            fn $method(self, rhs: PrecReal) -> PrecReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&PrecReal> for PrecReal {
            type Output = PrecReal;
            fn $method(self, rhs: &PrecReal) -> PrecReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<PrecReal> for &PrecReal {
            type Output = PrecReal;
            fn $method(self, rhs: PrecReal) -> PrecReal {
                self.$method(&rhs)
            }
        }
        impl $trait<i32> for &PrecReal {
            type Output = PrecReal;
            fn $method(self, rhs: i32) -> PrecReal {
                PrecReal(Float::with_val(self.0.prec(), &self.0 $op rhs))
            }
        }
        impl $trait<i32> for PrecReal {
            type Output = PrecReal;
            fn $method(self, rhs: i32) -> PrecReal {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl PartialEq<i32> for PrecReal {
    fn eq(&self, other: &i32) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i32> for PrecReal {
    fn partial_cmp(&self, other: &i32) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn r(s: &str) -> PrecReal {
        PrecReal::parse(s, P).unwrap()
    }

    #[test]
    fn integer_power_is_exact() {
        let half = r("0.5");
        assert_eq!(pow_real(&half, &r("1")).unwrap(), half);
        assert_eq!(pow_real(&half, &r("3")).unwrap(), r("0.125"));
        assert_eq!(pow_real(&half, &r("-2")).unwrap(), r("4"));
    }

    #[test]
    fn zero_exponent_is_one() {
        for q in ["0.23", "0.5", "0.997"] {
            assert_eq!(pow_real(&r(q), &r("0")).unwrap(), 1);
        }
    }

    #[test]
    fn nome_outside_unit_interval_is_rejected() {
        for q in ["0", "1", "-0.5", "1.5"] {
            assert!(matches!(pow_real(&r(q), &r("0.5")), Err(Error::Domain(_))));
            assert!(matches!(
                qpoch(&r("0.5"), &r(q), PochLength::Finite(2)),
                Err(Error::Domain(_))
            ));
        }
    }

    #[test]
    fn finite_qpoch_small_cases() {
        let half = r("0.5");
        assert_eq!(qpoch(&half, &half, PochLength::Finite(0)).unwrap(), 1);
        assert_eq!(qpoch(&r("7.25"), &half, PochLength::Finite(0)).unwrap(), 1);
        assert_eq!(
            qpoch(&half, &half, PochLength::Finite(2)).unwrap(),
            r("0.375")
        );
    }

    #[test]
    fn parse_rejects_garbage_and_low_precision() {
        assert!(matches!(
            PrecReal::parse("abc", P),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            PrecReal::parse("0.5", 32),
            Err(Error::Precision { .. })
        ));
    }

    #[test]
    fn exact_string_is_shortest() {
        for bits in [64, 256, 1024] {
            assert_eq!(
                PrecReal::parse("0.23", bits).unwrap().to_exact_string(),
                "0.23"
            );
            assert_eq!(
                PrecReal::parse("-1.81", bits).unwrap().to_exact_string(),
                "-1.81"
            );
        }
        let third = PrecReal::one(P) / PrecReal::from_i64(3, P);
        assert_eq!(r(&third.to_exact_string()), third);
        assert!(third.to_exact_string().len() > 70);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(r("-0.110294").to_sig_string(6), "-0.110294");
        assert_eq!(r("12.5").to_sig_string(10), "12.5");
        assert_eq!(r("1e30").to_sig_string(4), "1e30");
        assert_eq!(r("-2.5e-9").to_sig_string(4), "-2.5e-9");
        assert_eq!(r("0").to_sig_string(4), "0");
        assert_eq!(r("1200").to_sig_string(10), "1200");
    }

    #[test]
    fn exact_string_round_trips() {
        for s in ["0.997", "-1.121695", "0.23", "-1.92598", "123456.789e-40"] {
            let x = r(s);
            assert_eq!(r(&x.to_exact_string()), x, "{s}");
        }
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let q = r("0.89");
        let mut acc = PrecReal::one(P);
        for k in 0..40 {
            let rel = ((q.powi(k) - &acc) / &acc).abs();
            assert!(rel < PrecReal::pow2(-(P as i32) + 8, P), "k={k}");
            acc = acc * &q;
        }
    }

    // Independent exp/ln built from plain series, used as an oracle for MPFR.
    mod series {
        use super::super::PrecReal;

        /// ln x = 2 atanh((x - 1) / (x + 1)), after scaling x into [1/2, 1] by powers of two.
        pub fn ln(x: &PrecReal) -> PrecReal {
            let prec = x.prec();
            let mut m = x.clone();
            let mut k = 0i32;
            while m > 1 {
                m = m.scale2(-1);
                k += 1;
            }
            while m < PrecReal::from_f64(0.5, prec) {
                m = m.scale2(1);
                k -= 1;
            }
            let one = PrecReal::one(prec);
            let t = (&m - &one) / (&m + &one);
            let t2 = &t * &t;
            let mut power = t.clone();
            let mut sum = PrecReal::zero(prec);
            let eps = PrecReal::pow2(-(prec as i32) - 8, prec);
            for j in 0.. {
                let term = &power / PrecReal::from_i64(2 * j + 1, prec);
                if term.abs() < eps {
                    break;
                }
                sum = sum + term;
                power = power * &t2;
            }
            sum.scale2(1) + ln2(prec) * k
        }

        /// ln 2 = 2 atanh(1/3).
        fn ln2(prec: u32) -> PrecReal {
            let third = PrecReal::one(prec) / PrecReal::from_i64(3, prec);
            let t2 = &third * &third;
            let mut power = third;
            let mut sum = PrecReal::zero(prec);
            let eps = PrecReal::pow2(-(prec as i32) - 8, prec);
            for j in 0.. {
                let term = &power / PrecReal::from_i64(2 * j + 1, prec);
                if term < eps {
                    break;
                }
                sum = sum + term;
                power = power * &t2;
            }
            sum.scale2(1)
        }

        /// exp x by halving to |x| < 2^-8, Taylor, then squaring back.
        pub fn exp(x: &PrecReal) -> PrecReal {
            let prec = x.prec();
            let mut halvings = 0;
            let mut y = x.clone();
            while y.abs() > PrecReal::pow2(-8, prec) {
                y = y.scale2(-1);
                halvings += 1;
            }
            let eps = PrecReal::pow2(-(prec as i32) - 8, prec);
            let mut term = PrecReal::one(prec);
            let mut sum = PrecReal::one(prec);
            for k in 1.. {
                term = term * &y / PrecReal::from_i64(k, prec);
                if term.abs() < eps {
                    break;
                }
                sum = sum + &term;
            }
            for _ in 0..halvings {
                sum = &sum * &sum;
            }
            sum
        }
    }

    #[test]
    fn real_power_matches_series_oracle() {
        let wide = 2 * P;
        for (q, x) in [
            ("0.23", "-0.1"),
            ("0.89", "-1.81"),
            ("0.997", "-1.121695"),
            ("0.5", "2.75"),
        ] {
            let got = pow_real(&r(q), &r(x)).unwrap();
            let expected = series::exp(
                &(series::ln(&PrecReal::parse(q, wide).unwrap())
                    * PrecReal::parse(x, wide).unwrap()),
            );
            let rel = ((got.with_prec(wide) - &expected) / &expected).abs();
            assert!(rel < PrecReal::pow2(-(P as i32) + 4, wide), "q={q} x={x}");
        }
    }

    #[test]
    fn doubling_precision_changes_only_the_last_bits() {
        let q = r("0.23");
        let x = r("-1.81");
        let lo = pow_real(&q, &x).unwrap();
        let hi = pow_real(
            &PrecReal::parse("0.23", 2 * P).unwrap(),
            &PrecReal::parse("-1.81", 2 * P).unwrap(),
        )
        .unwrap();
        let rel = ((lo.with_prec(2 * P) - &hi) / &hi).abs();
        assert!(rel <= PrecReal::pow2(-(P as i32) + 2, 2 * P));
    }

    #[test]
    fn infinite_qpoch_matches_long_product() {
        let wide = 2 * P;
        let q = r("0.9");
        let got = qpoch(&r("-1"), &q, PochLength::Infinite).unwrap();
        let qw = PrecReal::parse("0.9", wide).unwrap();
        let mut brute = PrecReal::one(wide);
        let mut t = PrecReal::one(wide);
        // 0.9^k < 2^-600 for k > 3950
        for _ in 0..4000 {
            brute = brute * (PrecReal::one(wide) + &t);
            t = t * &qw;
        }
        let rel = ((got.with_prec(wide) - &brute) / &brute).abs();
        assert!(rel < PrecReal::pow2(-(P as i32) + 8, wide));
    }

    proptest::proptest! {
        #[test]
        fn power_is_additive_in_the_exponent(m in -60i32..=60, n in -60i32..=60, qi in 1u32..1000) {
            let q = PrecReal::from_i64(qi as i64, P) / PrecReal::from_i64(1000, P);
            let a = PrecReal::from_i64(m as i64, P) / PrecReal::from_i64(7, P);
            let b = PrecReal::from_i64(n as i64, P) / PrecReal::from_i64(11, P);
            let lhs = pow_real(&q, &(&a + &b)).unwrap();
            let rhs = pow_real(&q, &a).unwrap() * pow_real(&q, &b).unwrap();
            let rel = ((&lhs - &rhs) / &rhs).abs();
            proptest::prop_assert!(rel <= PrecReal::pow2(-(P as i32) + 8, P));
        }
    }
}
