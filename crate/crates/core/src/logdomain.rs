//! Overflow-safe log-domain primitives shared across the crate.
//!
//! Every multiplicative inequality in this toolkit is additive in log domain,
//! and the quantities involved (factorials to the 100000-th index, weights
//! `e^{ω(Λ_k)}`) overflow `f64` long before the windows of interest end.
//! Sums of exponentials are therefore accumulated with the shifted
//! (`logaddexp`) scheme throughout.

/// `log(exp(a) + exp(b))` without overflow. `-inf` inputs act as log(0).
#[inline]
pub fn logaddexp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a >= b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// `log(1 + exp(x))`, stable for large positive and negative `x`.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Streaming log-sum-exp accumulator: `value() = log Σ exp(x_i)`.
#[derive(Debug, Clone, Copy)]
pub struct LogSumAcc {
    acc: f64,
}

impl LogSumAcc {
    pub fn new() -> Self {
        Self {
            acc: f64::NEG_INFINITY,
        }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        self.acc = logaddexp(self.acc, x);
    }

    pub fn value(&self) -> f64 {
        self.acc
    }
}

impl Default for LogSumAcc {
    fn default() -> Self {
        Self::new()
    }
}

/// Compensated (Kahan) summation. Keeps the absolute error of long prefix
/// sums at the level of a single rounding of the total, which matters for
/// convexity margins of order `1/k` at `k = 10^5`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}
