use super::PolySpec;
use crate::precision::PrecReal;

/// Recurrence coefficients of one shifted family up to a fixed degree:
///
/// `L_k = (z - a_k) L_{k-1} - beta_k L_{k-2}`, with `L_0 = 1` and `L_1 = z - a_1`.
///
/// Building the tables costs a handful of powers of `q` per degree; evaluation
/// afterwards is pure multiply-add, which is what the root finders hammer on.
#[derive(Clone, Debug)]
pub struct Recurrence {
    prec: u32,
    /// `a_1 ..= a_n`.
    diag: Vec<PrecReal>,
    /// `beta_2 ..= beta_n`, stored at index `k - 2`.
    offsq: Vec<PrecReal>,
}

impl Recurrence {
    pub fn new(spec: &PolySpec) -> Self {
        let params = &spec.params;
        let prec = params.precision();
        let one = params.one();
        let n = spec.degree as i64;
        let mut diag = Vec::with_capacity(spec.degree);
        let mut offsq = Vec::with_capacity(spec.degree.saturating_sub(1));
        for k in 1..=n {
            // a_k = (1 - q^k + q (1 - q^{d+k-1})) / q^{d+2k-1}
            let num = &one - params.qpow_int(k) + params.q() * (&one - spec.qpow_shifted(k - 1));
            diag.push(num / spec.qpow_shifted(2 * k - 1));
            if k >= 2 {
                // beta_k = (1 - q^{k-1})(1 - q^{d+k-1}) / q^{2d+4k-5}
                let num = (&one - params.qpow_int(k - 1)) * (&one - spec.qpow_shifted(k - 1));
                let base = spec.qpow_shifted(0);
                let den = &base * &base * params.qpow_int(4 * k - 5);
                offsq.push(num / den);
            }
        }
        Recurrence { prec, diag, offsq }
    }

    pub fn degree(&self) -> usize {
        self.diag.len()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Diagonal entries `a_1 ..= a_n`.
    pub fn diagonal(&self) -> &[PrecReal] {
        &self.diag
    }

    /// Off-diagonal squares `beta_2 ..= beta_n`.
    pub fn off_diagonal_squares(&self) -> &[PrecReal] {
        &self.offsq
    }

    pub fn eval(&self, z: &PrecReal) -> PrecReal {
        self.eval_degree(z, self.degree())
    }

    /// Value of the member of degree `m <= n` sharing these coefficients.
    pub fn eval_degree(&self, z: &PrecReal, m: usize) -> PrecReal {
        assert!(m <= self.degree());
        let z = z.with_prec(self.prec);
        let mut prev = PrecReal::one(self.prec);
        if m == 0 {
            return prev;
        }
        let mut cur = &z - &self.diag[0];
        for k in 2..=m {
            let next = (&z - &self.diag[k - 1]) * &cur - &self.offsq[k - 2] * &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Value together with a running magnitude bound `M` such that the
    /// accumulated rounding error is a small multiple of `n 2^-P M`.
    pub fn eval_with_bound(&self, z: &PrecReal) -> (PrecReal, PrecReal) {
        let z = z.with_prec(self.prec);
        let mut prev = PrecReal::one(self.prec);
        let mut prev_m = PrecReal::one(self.prec);
        if self.degree() == 0 {
            return (prev, prev_m);
        }
        let mut cur = &z - &self.diag[0];
        let mut cur_m = z.abs() + self.diag[0].abs();
        for k in 2..=self.degree() {
            let shifted = &z - &self.diag[k - 1];
            let next = &shifted * &cur - &self.offsq[k - 2] * &prev;
            let next_m = shifted.abs() * &cur_m + self.offsq[k - 2].abs() * &prev_m;
            prev = cur;
            cur = next;
            prev_m = cur_m;
            cur_m = next_m;
        }
        (cur, cur_m)
    }

    /// Value and first derivative, by differentiating the recurrence.
    pub fn eval_with_derivative(&self, z: &PrecReal) -> (PrecReal, PrecReal) {
        let z = z.with_prec(self.prec);
        let mut prev = PrecReal::one(self.prec);
        let mut dprev = PrecReal::zero(self.prec);
        if self.degree() == 0 {
            return (prev, dprev);
        }
        let mut cur = &z - &self.diag[0];
        let mut dcur = PrecReal::one(self.prec);
        for k in 2..=self.degree() {
            let shifted = &z - &self.diag[k - 1];
            let beta = &self.offsq[k - 2];
            let next = &shifted * &cur - beta * &prev;
            let dnext = &cur + &shifted * &dcur - beta * &dprev;
            prev = cur;
            dprev = dcur;
            cur = next;
            dcur = dnext;
        }
        (cur, dcur)
    }
}

/// `L_n^{(delta+t)}(z; q)` by the three-term recurrence.
///
/// Runs with guard bits and doubles them until the running error bound shows
/// the value is correct to working precision, so the result is accurate even
/// where the recurrence cancels heavily.
pub fn eval_recurrence(spec: &PolySpec, z: &PrecReal) -> PrecReal {
    let prec = spec.params.precision();
    let n_bits = usize::BITS - spec.degree.max(1).leading_zeros();
    let mut guard = 32;
    loop {
        let wide = spec.at_precision(prec + guard);
        let (value, bound) = Recurrence::new(&wide).eval_with_bound(z);
        let slack = bound.scale2(n_bits as i32 + 4 - guard as i32);
        if slack <= value.abs() || guard >= 4 * prec {
            return value.with_prec(prec);
        }
        guard *= 2;
    }
}

/// Monomial coefficients `[c_0, ..., c_n]` of the monic polynomial, leading entry exactly 1.
pub fn coefficients(spec: &PolySpec) -> Vec<PrecReal> {
    let prec = spec.params.precision();
    let wide_prec = prec + 64;
    let rec = Recurrence::new(&spec.at_precision(wide_prec));
    let n = spec.degree;
    let mut prev = vec![PrecReal::one(wide_prec)];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![-&rec.diagonal()[0], PrecReal::one(wide_prec)];
    for k in 2..=n {
        let a = &rec.diagonal()[k - 1];
        let beta = &rec.off_diagonal_squares()[k - 2];
        let mut next = vec![PrecReal::zero(wide_prec); k + 1];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] = &next[j + 1] + c;
            next[j] = &next[j] - a * c;
        }
        for (j, c) in prev.iter().enumerate() {
            next[j] = &next[j] - beta * c;
        }
        prev = cur;
        cur = next;
    }
    cur.into_iter().map(|c| c.with_prec(prec)).collect()
}
