//! Truncated power-series arithmetic linking embedding moduli `c_n` and
//! kernel weights `a_n`.
//!
//! The two sequences are tied by `1 / (1 - g(z)) = sum a_n z^n` with
//! `g(z) = sum_{n >= 1} c_n z^n`, equivalently by the renewal recursion
//! `a_0 = 1`, `a_n = sum_{k=1}^{n} c_k a_{n-k}`. [`weights_from_moduli`]
//! runs the recursion; [`TruncatedSeries::reciprocal`] is a Newton-iteration
//! reciprocal that serves as an independent route to the same numbers.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation length for every series operation.
pub const DEFAULT_TRUNCATION: usize = 256;

/// Above this length convolutions switch to compensated summation.
pub const COMPENSATED_THRESHOLD: usize = 1000;

/// Slack allowed on `sum c_n <= 1` before a sequence is rejected.
const MASS_SLACK: f64 = 1e-12;

/// Moduli `c_1, ..., c_N` of an embedding `f(z) = (b_1 z, b_2 z^2, ...)`,
/// `c_n = |b_n|^2`.
///
/// Construction only checks finiteness: sequences produced by
/// [`moduli_from_weights`] may carry negative entries, which is how a
/// kernel that is not complete Nevanlinna-Pick shows up. Use
/// [`CoefficientSequence::validate`] to check the embedding invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    // values[k] holds c_{k+1}
    values: Vec<f64>,
}

impl CoefficientSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidEmbedding("empty moduli sequence".into()));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("c_{} = {}", pos + 1, values[pos])));
        }
        Ok(Self { values })
    }

    /// Builds a sequence and checks it describes a valid embedding.
    pub fn embedding(values: Vec<f64>) -> Result<Self> {
        let seq = Self::new(values)?;
        seq.validate()?;
        Ok(seq)
    }

    /// `c_n = f(n)` for `n = 1..=len`.
    pub fn from_fn(len: usize, f: impl Fn(usize) -> f64) -> Result<Self> {
        Self::new((1..=len).map(f).collect())
    }

    /// Checks `c_1 > 0`, `c_n >= 0` and `sum c_n <= 1`.
    pub fn validate(&self) -> Result<()> {
        if self.values[0] <= 0.0 {
            return Err(Error::InvalidEmbedding(format!(
                "c_1 must be positive, got {}",
                self.values[0]
            )));
        }
        if let Some(pos) = self.values.iter().position(|&v| v < 0.0) {
            return Err(Error::InvalidEmbedding(format!(
                "c_{} = {} is negative",
                pos + 1,
                self.values[pos]
            )));
        }
        let total = self.total();
        if total > 1.0 + MASS_SLACK {
            return Err(Error::InvalidEmbedding(format!(
                "sum of moduli {total} exceeds 1"
            )));
        }
        Ok(())
    }

    /// Truncation length `N`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `c_n` with 1-based indexing; zero beyond the truncation and at `n = 0`.
    pub fn get(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.values.get(n - 1).copied().unwrap_or(0.0)
        }
    }

    /// `c_1, ..., c_N` as a slice (index 0 holds `c_1`).
    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn total(&self) -> f64 {
        neumaier_sum(self.values.iter().copied())
    }

    /// Partial first moment `sum_{n <= len} n c_n`.
    pub fn first_moment(&self, len: usize) -> f64 {
        neumaier_sum(
            self.values
                .iter()
                .take(len)
                .enumerate()
                .map(|(k, &c)| (k + 1) as f64 * c),
        )
    }

    /// Smallest entry, with its 1-based index.
    pub fn min_entry(&self) -> (usize, f64) {
        self.values
            .iter()
            .enumerate()
            .fold(
                (1, f64::INFINITY),
                |acc, (k, &v)| {
                    if v < acc.1 {
                        (k + 1, v)
                    } else {
                        acc
                    }
                },
            )
    }
}

/// Taylor weights `a_0 = 1, a_1, ..., a_N` of a kernel `sum a_n (z conj w)^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelWeights {
    values: Vec<f64>,
}

impl KernelWeights {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        match values.first() {
            None => return Err(Error::InvalidWeights("empty weight sequence".into())),
            Some(&a0) if a0 != 1.0 => {
                return Err(Error::InvalidWeights(format!("a_0 must be 1, got {a0}")))
            }
            _ => {}
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("a_{pos} = {}", values[pos])));
        }
        if let Some(pos) = values.iter().position(|&v| v <= 0.0) {
            return Err(Error::InvalidWeights(format!(
                "a_{pos} = {} is not positive",
                values[pos]
            )));
        }
        Ok(Self { values })
    }

    /// `a_n = f(n)` for `n = 1..=len`, with `a_0 = 1`.
    pub fn from_fn(len: usize, f: impl Fn(usize) -> f64) -> Result<Self> {
        Self::new(std::iter::once(1.0).chain((1..=len).map(f)).collect())
    }

    /// Truncation length `N` (the sequence holds `N + 1` values).
    pub fn len(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.values.len() <= 1
    }

    pub fn get(&self, n: usize) -> f64 {
        self.values[n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    /// Largest violation `a_k a_n / a_{n+k} - 1` over `k + n <= len`,
    /// with the offending pair. Non-positive means supermultiplicative.
    pub fn supermultiplicativity_defect(&self) -> (f64, usize, usize) {
        let a = &self.values;
        let n_max = a.len() - 1;
        let mut worst = (f64::NEG_INFINITY, 0, 0);
        for k in 1..=n_max {
            for n in k..=(n_max - k) {
                let defect = a[k] * a[n] / a[n + k] - 1.0;
                if defect > worst.0 {
                    worst = (defect, k, n);
                }
            }
        }
        worst
    }
}

/// Dense truncated power series `sum_{k < len} coeffs[k] z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Product truncated to `len` coefficients.
    pub fn mul_truncated(&self, other: &Self, len: usize) -> Self {
        let mut out = vec![0.0; len];
        let compensated = len > COMPENSATED_THRESHOLD;
        for (n, slot) in out.iter_mut().enumerate() {
            let lo = n.saturating_sub(other.coeffs.len().saturating_sub(1));
            let hi = n.min(self.coeffs.len().saturating_sub(1));
            if lo > hi || self.coeffs.is_empty() || other.coeffs.is_empty() {
                continue;
            }
            let terms = (lo..=hi).map(|k| self.coeffs[k] * other.coeffs[n - k]);
            *slot = if compensated {
                neumaier_sum(terms)
            } else {
                terms.sum()
            };
        }
        Self { coeffs: out }
    }

    /// Reciprocal truncated to `len` coefficients by Newton iteration
    /// `b <- b (2 - a b)`, doubling the number of correct terms per step.
    pub fn reciprocal(&self, len: usize) -> Result<Self> {
        let a0 = self.coeffs.first().copied().unwrap_or(0.0);
        if a0 == 0.0 || !a0.is_finite() {
            return Err(Error::InvalidParameter(
                "series reciprocal needs a finite nonzero constant term".into(),
            ));
        }
        let mut inv = Self {
            coeffs: vec![1.0 / a0],
        };
        let mut have = 1;
        while have < len {
            let next = (2 * have).min(len);
            let head = Self {
                coeffs: self.coeffs.iter().take(next).copied().collect(),
            };
            let mut correction = head.mul_truncated(&inv, next);
            for c in correction.coeffs.iter_mut() {
                *c = -*c;
            }
            correction.coeffs[0] += 2.0;
            inv = inv.mul_truncated(&correction, next);
            have = next;
        }
        inv.coeffs.truncate(len);
        Ok(inv)
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }
}

/// Runs the renewal recursion `a_n = sum_{k=1}^{n} c_k a_{n-k}` up to `n = len`.
///
/// Rejects moduli with `c_1 <= 0`, a negative entry, or total mass above 1.
pub fn weights_from_moduli(c: &CoefficientSequence, len: usize) -> Result<KernelWeights> {
    if len == 0 {
        return Err(Error::InvalidParameter(
            "truncation length must be >= 1".into(),
        ));
    }
    c.validate()?;
    let cs = c.as_slice();
    let compensated = len > COMPENSATED_THRESHOLD;
    let mut a = Vec::with_capacity(len + 1);
    a.push(1.0);
    for n in 1..=len {
        let upto = n.min(cs.len());
        let terms = (1..=upto).map(|k| cs[k - 1] * a[n - k]);
        let value = if compensated {
            neumaier_sum(terms)
        } else {
            terms.sum()
        };
        a.push(value);
    }
    KernelWeights::new(a)
}

/// Taylor coefficients of `1 - 1 / (sum a_n z^n)` up to `n = len`.
///
/// Negative outputs are returned as-is: they certify that the kernel is not
/// complete Nevanlinna-Pick.
pub fn moduli_from_weights(a: &KernelWeights, len: usize) -> Result<CoefficientSequence> {
    if len == 0 {
        return Err(Error::InvalidParameter(
            "truncation length must be >= 1".into(),
        ));
    }
    let av = a.as_slice();
    // Triangular reciprocal b = 1 / A; c_n = -b_n. The recursion cancels
    // terms of size a_n, so it always sums with compensation.
    let mut b = Vec::with_capacity(len + 1);
    b.push(1.0);
    for n in 1..=len {
        let upto = n.min(av.len() - 1);
        let s = neumaier_sum((1..=upto).map(|k| av[k] * b[n - k]));
        b.push(-s);
    }
    CoefficientSequence::new(b[1..].iter().map(|v| -v).collect())
}

/// True iff every derived modulus is at least `-tol`.
pub fn is_complete_np(a: &KernelWeights, tol: f64) -> Result<bool> {
    let c = moduli_from_weights(a, a.len())?;
    Ok(c.as_slice().iter().all(|&v| v >= -tol))
}

/// Which side of `1 / (1 - g) = sum a_n z^n` to evaluate.
#[derive(Debug, Clone, Copy)]
pub enum Generating<'a> {
    /// `1 / (1 - sum_{n <= N} c_n z^n)`
    Moduli(&'a CoefficientSequence),
    /// `sum_{n <= N} a_n z^n`
    Weights(&'a KernelWeights),
}

/// Evaluates the truncated generating function at `z`, `|z| < 1`.
pub fn evaluate_generating(input: Generating<'_>, z: Complex64, len: usize) -> Result<Complex64> {
    let modulus = z.norm();
    if !modulus.is_finite() || modulus >= 1.0 {
        return Err(Error::OutsideDisc { modulus });
    }
    match input {
        Generating::Moduli(c) => {
            let take = len.min(c.len());
            let g = c.as_slice()[..take]
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &v| (acc + v) * z);
            Ok(1.0 / (1.0 - g))
        }
        Generating::Weights(a) => {
            let take = (len + 1).min(a.as_slice().len());
            Ok(TruncatedSeries::new(a.as_slice()[..take].to_vec()).eval(z))
        }
    }
}

/// Series for `1 - g(z)` with the given moduli, truncated to `len + 1` terms.
pub fn one_minus_generating(c: &CoefficientSequence, len: usize) -> TruncatedSeries {
    let mut coeffs = vec![0.0; len + 1];
    coeffs[0] = 1.0;
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        *slot = -c.get(n);
    }
    TruncatedSeries::new(coeffs)
}

/// Neumaier's variant of Kahan summation.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
