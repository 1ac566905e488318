//! Kernel families `K(z, w) = sum a_n (z conj w)^n` and the numerical
//! classifiers built on their weights.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;

use crate::csvio;
use crate::error::{Error, Result};
use crate::series::{
    moduli_from_weights, neumaier_sum, weights_from_moduli, CoefficientSequence, KernelWeights,
};

/// Relative change allowed between a partial quantity at `N` and at `N / 2`
/// before it is declared divergent.
pub const DOUBLING_TOLERANCE: f64 = 0.01;

/// Drift over the last quarter of the ratio window below which two weight
/// sequences are called comparable.
pub const DRIFT_TOLERANCE: f64 = 0.05;

/// Negative moduli down to this value still count as complete Pick.
pub const CNP_TOLERANCE: f64 = 1e-12;

/// Named kernel families.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `a_n = 1`, the Szegő kernel.
    Hardy,
    /// `a_n = (n + 1)^s`.
    Hs(f64),
    /// `c_n = (1 - q) q^(n - 1)`, so `a_n = 1 - q` for `n >= 1`.
    Geometric(f64),
    /// Weights or moduli supplied by the caller.
    Custom(String),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hardy => write!(f, "hardy"),
            Family::Hs(s) => write!(f, "hs:{s}"),
            Family::Geometric(q) => write!(f, "geom:{q}"),
            Family::Custom(label) => write!(f, "custom:{label}"),
        }
    }
}

impl Family {
    /// Exact weight `a_n` when the family has a closed form.
    pub fn closed_form_weight(&self, n: usize) -> Option<f64> {
        match *self {
            Family::Hardy => Some(1.0),
            Family::Hs(s) => Some(((n + 1) as f64).powf(s)),
            Family::Geometric(q) => Some(if n == 0 { 1.0 } else { 1.0 - q }),
            Family::Custom(_) => None,
        }
    }
}

/// A consistent pair of kernel weights and embedding moduli.
#[derive(Debug, Clone)]
pub struct KernelHandle {
    weights: KernelWeights,
    moduli: CoefficientSequence,
    family: Family,
}

impl KernelHandle {
    pub fn hardy(len: usize) -> Result<Self> {
        check_len(len)?;
        let mut c = vec![0.0; len];
        c[0] = 1.0;
        Ok(Self {
            weights: KernelWeights::from_fn(len, |_| 1.0)?,
            moduli: CoefficientSequence::embedding(c)?,
            family: Family::Hardy,
        })
    }

    /// `a_n = (n + 1)^s`; the moduli are obtained by inversion.
    pub fn hs(s: f64, len: usize) -> Result<Self> {
        check_len(len)?;
        if !s.is_finite() {
            return Err(Error::InvalidParameter(format!("exponent s = {s}")));
        }
        let weights = KernelWeights::from_fn(len, |n| ((n + 1) as f64).powf(s))?;
        let moduli = moduli_from_weights(&weights, len)?;
        Ok(Self {
            weights,
            moduli,
            family: Family::Hs(s),
        })
    }

    /// `c_n = (1 - q) q^(n - 1)` for `0 <= q < 1`.
    pub fn geometric(q: f64, len: usize) -> Result<Self> {
        check_len(len)?;
        if !(0.0..1.0).contains(&q) {
            return Err(Error::InvalidParameter(format!(
                "geometric ratio q = {q} must lie in [0, 1)"
            )));
        }
        let moduli = CoefficientSequence::from_fn(len, |n| (1.0 - q) * q.powi(n as i32 - 1))?;
        let weights = weights_from_moduli(&moduli, len)?;
        Ok(Self {
            weights,
            moduli,
            family: Family::Geometric(q),
        })
    }

    pub fn from_moduli(moduli: CoefficientSequence, len: usize, label: &str) -> Result<Self> {
        let weights = weights_from_moduli(&moduli, len)?;
        let moduli = CoefficientSequence::new((1..=len).map(|n| moduli.get(n)).collect())?;
        Ok(Self {
            weights,
            moduli,
            family: Family::Custom(label.to_string()),
        })
    }

    pub fn from_weights(weights: KernelWeights, label: &str) -> Result<Self> {
        let moduli = moduli_from_weights(&weights, weights.len())?;
        Ok(Self {
            weights,
            moduli,
            family: Family::Custom(label.to_string()),
        })
    }

    /// Parses `hardy`, `hs:<s>`, `geom:<q>` or `custom:<path>`, where the
    /// file is an `n,value` CSV of moduli `c_1, c_2, ...`.
    pub fn parse(tag: &str, len: usize) -> Result<Self> {
        let (name, arg) = match tag.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (tag, None),
        };
        let number = |arg: Option<&str>| -> Result<f64> {
            let text = arg.ok_or_else(|| Error::UnknownTag(tag.to_string()))?;
            text.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("`{text}` in family `{tag}`")))
        };
        match name {
            "hardy" if arg.is_none() => Self::hardy(len),
            "hs" => Self::hs(number(arg)?, len),
            "geom" => Self::geometric(number(arg)?, len),
            "custom" => {
                let path = arg.ok_or_else(|| Error::UnknownTag(tag.to_string()))?;
                let values = csvio::read_sequence(Path::new(path))?;
                let moduli =
                    CoefficientSequence::new(values.into_iter().map(|(_, v)| v).collect())?;
                Self::from_moduli(moduli, len, path)
            }
            _ => Err(Error::UnknownTag(tag.to_string())),
        }
    }

    pub fn weights(&self) -> &KernelWeights {
        &self.weights
    }

    pub fn moduli(&self) -> &CoefficientSequence {
        &self.moduli
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn tag(&self) -> String {
        self.family.to_string()
    }

    /// Truncation length `N`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn closed_form_weight(&self, n: usize) -> Option<f64> {
        self.family.closed_form_weight(n)
    }

    /// `sum c_n` over the stored moduli.
    pub fn moduli_sum(&self) -> f64 {
        self.moduli.total()
    }

    /// Whether `sum a_n` converges, i.e. `sum c_n < 1`, judged by a doubling
    /// test on the partial sums of the weights.
    pub fn is_compact_regime(&self) -> bool {
        compact_at(self.weights.as_slice(), self.len())
    }

    /// Truncated `sum_{n <= N} a_n (z conj w)^n`.
    ///
    /// Points on the unit circle are accepted only in the compact regime.
    pub fn eval(&self, z: Complex64, w: Complex64) -> Result<Complex64> {
        for p in [z, w] {
            let modulus = p.norm();
            if !modulus.is_finite() || modulus > 1.0 {
                return Err(Error::OutsideDisc { modulus });
            }
            if modulus >= 1.0 && !self.is_compact_regime() {
                return Err(Error::BoundaryNotAllowed);
            }
        }
        let u = z * w.conj();
        Ok(self
            .weights
            .as_slice()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * u + a))
    }

    /// Multiplier (and Hilbert space) norm of `z^n`, `1 / sqrt(a_n)`.
    pub fn monomial_multiplier_norm(&self, n: usize) -> Result<f64> {
        if n > self.len() {
            return Err(Error::InvalidParameter(format!(
                "monomial degree {n} beyond truncation {}",
                self.len()
            )));
        }
        Ok(1.0 / self.weights.get(n).sqrt())
    }

    /// Uniform bound `h_norm / sqrt(1 - r^2)` on `sum |d_n|` for a function
    /// of norm `h_norm`, with `r^2 = sum c_n`.
    pub fn continuity_bound(&self, h_norm: f64) -> Result<f64> {
        if !self.is_compact_regime() {
            return Err(Error::NonCompactRegime);
        }
        continuity_bound_from_mass(self.moduli_sum(), h_norm)
    }

    /// `limsup a_n^(-1/n)` estimated at the truncation end; the radius of
    /// convergence of `sum a_n z^n`.
    pub fn radius_estimate(&self) -> f64 {
        let n = self.len();
        self.weights.get(n).powf(-1.0 / n as f64)
    }

    /// `sum a_n y^n` for real `0 <= y < 1`, summed past the truncation with
    /// closed-form weights when available.
    pub fn generating_real(&self, y: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&y) {
            return Err(Error::OutsideDisc { modulus: y.abs() });
        }
        let Some(_) = self.closed_form_weight(0) else {
            return Ok(neumaier_sum(
                self.weights
                    .as_slice()
                    .iter()
                    .enumerate()
                    .map(|(n, &a)| a * y.powi(n as i32)),
            ));
        };
        if let Family::Geometric(q) = self.family {
            return Ok(1.0 + (1.0 - q) * y / (1.0 - y));
        }
        let ln_y = y.ln();
        let mut sum = 0.0;
        let mut comp = 0.0;
        let mut n = 0usize;
        loop {
            let term = self.closed_form_weight(n).unwrap_or(0.0) * (n as f64 * ln_y).exp();
            let t = sum + term;
            comp += if sum >= term {
                (sum - t) + term
            } else {
                (term - t) + sum
            };
            sum = t;
            n += 1;
            // weights are nonincreasing beyond n for every closed family with
            // s <= 0, so term / (1 - y) bounds the tail
            if term < 1e-18 * sum * (1.0 - y) || n >= 50_000_000 {
                break;
            }
        }
        Ok(sum + comp)
    }

    /// Runs every classifier on the first `len` weights and moduli.
    pub fn classify(&self, len: usize) -> Result<ClassificationReport> {
        if len < 8 || len > self.len() {
            return Err(Error::InvalidParameter(format!(
                "classification length {len} must lie in 8..={}",
                self.len()
            )));
        }
        let a = &self.weights.as_slice()[..=len];
        let c = &self.moduli.as_slice()[..len];
        let half = len / 2;

        let moment =
            |m: usize| neumaier_sum(c[..m].iter().enumerate().map(|(k, &v)| (k + 1) as f64 * v));
        let mu_partial = moment(len);
        let mu_half = moment(half);
        let mu = if relative_gap(mu_partial, mu_half) > DOUBLING_TOLERANCE {
            f64::INFINITY
        } else {
            mu_partial
        };

        let window = (len / 8).max(1);
        let efp_limit_estimate =
            neumaier_sum(a[len + 1 - window..].iter().copied()) / window as f64;
        let efp_gap = mu
            .is_finite()
            .then(|| (efp_limit_estimate - 1.0 / mu).abs());
        let min_weight = a.iter().copied().fold(f64::INFINITY, f64::min);

        let mut ratio_sup = 0.0_f64;
        let mut ratio_sup_half = 0.0_f64;
        for n in 1..=len {
            ratio_sup = ratio_sup.max(a[n] / a[n - 1]);
            if n == half {
                ratio_sup_half = ratio_sup;
            }
        }
        let ratio_bounded = relative_gap(ratio_sup, ratio_sup_half) <= DOUBLING_TOLERANCE;

        let (cyclic, cyclic_half) = strict_cyclicity(a, half);
        let strictly_cyclic_sup = if relative_gap(cyclic, cyclic_half) > DOUBLING_TOLERANCE {
            f64::INFINITY
        } else {
            cyclic
        };

        let min_modulus = c.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(ClassificationReport {
            family: self.tag(),
            truncation: len,
            mu,
            mu_partial,
            efp_limit_estimate,
            efp_gap,
            min_weight,
            iso_to_hinf: mu.is_finite(),
            ratio_bounded,
            ratio_sup,
            strictly_cyclic_sup,
            strictly_cyclic_partial: cyclic,
            cnp: min_modulus >= -CNP_TOLERANCE,
            min_modulus,
            compact_regime: compact_at(a, len),
            moduli_sum: neumaier_sum(c.iter().copied()),
        })
    }
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 {
        Err(Error::InvalidParameter(
            "truncation length must be >= 1".into(),
        ))
    } else {
        Ok(())
    }
}

fn relative_gap(full: f64, half: f64) -> f64 {
    if full == half {
        0.0
    } else {
        (full - half).abs() / full.abs().max(half.abs())
    }
}

fn compact_at(a: &[f64], len: usize) -> bool {
    if len < 2 {
        return false;
    }
    let full = neumaier_sum(a[..=len].iter().copied());
    let half = neumaier_sum(a[..=len / 2].iter().copied());
    relative_gap(full, half) <= DOUBLING_TOLERANCE
}

/// `(sup_{n <= len}, sup_{n <= half})` of `sum_{k=0}^{n} a_k a_{n-k} / a_n`.
fn strict_cyclicity(a: &[f64], half: usize) -> (f64, f64) {
    let len = a.len() - 1;
    let mut sup = 0.0_f64;
    let mut sup_half = 0.0_f64;
    for n in 0..=len {
        // symmetric sum, pairs (k, n - k) counted twice
        let mut s = 0.0;
        for k in 0..=(n / 2) {
            let term = a[k] * a[n - k];
            s += if 2 * k == n { term } else { 2.0 * term };
        }
        sup = sup.max(s / a[n]);
        if n == half {
            sup_half = sup;
        }
    }
    (sup, sup_half)
}

/// `h_norm / sqrt(1 - r^2)` for a compact embedding with `sum c_n = r^2`.
pub fn continuity_bound_from_mass(r_squared: f64, h_norm: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r_squared) {
        return Err(Error::NonCompactRegime);
    }
    Ok(h_norm / (1.0 - r_squared).sqrt())
}

/// Output of [`KernelHandle::classify`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub family: String,
    pub truncation: usize,
    /// `sum n c_n`, infinite when the doubling test fails.
    pub mu: f64,
    pub mu_partial: f64,
    /// Mean of the last `N / 8` weights.
    pub efp_limit_estimate: f64,
    /// `|efp_limit_estimate - 1 / mu|` when `mu` is finite.
    pub efp_gap: Option<f64>,
    pub min_weight: f64,
    pub iso_to_hinf: bool,
    pub ratio_bounded: bool,
    /// `sup a_n / a_{n-1}`.
    pub ratio_sup: f64,
    pub strictly_cyclic_sup: f64,
    pub strictly_cyclic_partial: f64,
    pub cnp: bool,
    pub min_modulus: f64,
    pub compact_regime: bool,
    pub moduli_sum: f64,
}

impl ClassificationReport {
    pub const HEADER: [&'static str; 16] = [
        "family",
        "N",
        "mu",
        "mu_partial",
        "efp_limit_estimate",
        "efp_gap",
        "min_weight",
        "iso_to_hinf",
        "ratio_bounded",
        "ratio_sup",
        "strictly_cyclic_sup",
        "strictly_cyclic_partial",
        "cnp",
        "min_modulus",
        "compact_regime",
        "moduli_sum",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.truncation.to_string(),
            csvio::fmt_f64(self.mu),
            csvio::fmt_f64(self.mu_partial),
            csvio::fmt_f64(self.efp_limit_estimate),
            self.efp_gap.map(csvio::fmt_f64).unwrap_or_default(),
            csvio::fmt_f64(self.min_weight),
            self.iso_to_hinf.to_string(),
            self.ratio_bounded.to_string(),
            csvio::fmt_f64(self.ratio_sup),
            csvio::fmt_f64(self.strictly_cyclic_sup),
            csvio::fmt_f64(self.strictly_cyclic_partial),
            self.cnp.to_string(),
            csvio::fmt_f64(self.min_modulus),
            self.compact_regime.to_string(),
            csvio::fmt_f64(self.moduli_sum),
        ]
    }
}

/// Trend verdict for the ratio `a_n / a2_n`. Finite data cannot settle
/// comparability, so this is a heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparability {
    Comparable,
    Diverging,
    Inconclusive,
}

impl fmt::Display for Comparability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparability::Comparable => "comparable",
            Comparability::Diverging => "diverging",
            Comparability::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparabilityReport {
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// `(max - min) / min` of the ratio over the last quarter.
    pub drift: f64,
    pub verdict: Comparability,
}

impl ComparabilityReport {
    pub fn comparable(&self) -> bool {
        self.verdict == Comparability::Comparable
    }
}

/// Compares `a_n / a2_n` over `n <= len`.
pub fn are_comparable(
    a: &KernelWeights,
    a2: &KernelWeights,
    len: usize,
) -> Result<ComparabilityReport> {
    if len < 4 || len > a.len() || len > a2.len() {
        return Err(Error::InvalidParameter(format!(
            "comparison length {len} needs 4 <= N <= {}",
            a.len().min(a2.len())
        )));
    }
    let ratios: Vec<f64> = (0..=len).map(|n| a.get(n) / a2.get(n)).collect();
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max_ratio = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let tail = &ratios[len - len / 4..];
    let tail_min = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let tail_max = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let drift = (tail_max - tail_min) / tail_min;

    let increasing = tail.windows(2).all(|w| w[1] > w[0]);
    let decreasing = tail.windows(2).all(|w| w[1] < w[0]);
    let last = ratios[len];
    let escaping = (increasing && last == max_ratio) || (decreasing && last == min_ratio);

    let verdict = if drift < DRIFT_TOLERANCE {
        Comparability::Comparable
    } else if escaping {
        Comparability::Diverging
    } else {
        Comparability::Inconclusive
    };
    Ok(ComparabilityReport {
        min_ratio,
        max_ratio,
        drift,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn hardy_kernel_values() {
        let k = KernelHandle::hardy(256).unwrap();
        assert!((k.eval(c(0.5), c(0.5)).unwrap().re - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(k.eval(c(0.5), c(0.0)).unwrap(), c(1.0));
        assert!(matches!(
            k.eval(c(1.0), c(0.5)),
            Err(Error::BoundaryNotAllowed)
        ));
        assert!(!k.is_compact_regime());
    }

    #[test]
    fn h_minus_two_on_the_boundary() {
        let n = 4096;
        let k = KernelHandle::hs(-2.0, n).unwrap();
        assert!(k.is_compact_regime());
        let v = k.eval(c(1.0), c(1.0)).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() <= 1.0 / n as f64);
    }

    #[test]
    fn monomial_norms() {
        let hardy = KernelHandle::hardy(16).unwrap();
        assert_eq!(hardy.monomial_multiplier_norm(7).unwrap(), 1.0);
        let dirichlet = KernelHandle::hs(-1.0, 16).unwrap();
        assert!((dirichlet.monomial_multiplier_norm(3).unwrap() - 2.0).abs() < 1e-15);
        let geom = KernelHandle::geometric(0.5, 16).unwrap();
        for n in 1..=16 {
            assert!((geom.monomial_multiplier_norm(n).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        }
        assert!(geom.monomial_multiplier_norm(17).is_err());
    }

    #[test]
    fn geometric_classification() {
        let k = KernelHandle::geometric(0.5, 256).unwrap();
        let report = k.classify(256).unwrap();
        assert!((report.mu - 2.0).abs() < 1e-12);
        assert_eq!(report.efp_limit_estimate, 0.5);
        assert!(report.iso_to_hinf);
        assert!(report.cnp);
        assert!(!report.compact_regime);
    }

    #[test]
    fn hs_classification() {
        for s in [-1.0, -0.75, -0.5, -0.25] {
            let report = KernelHandle::hs(s, 2048).unwrap().classify(2048).unwrap();
            assert!(!report.iso_to_hinf, "s = {s}");
            assert!(report.cnp, "s = {s}");
            assert!(!report.compact_regime, "s = {s}");
        }
        let report = KernelHandle::hs(-2.0, 2048)
            .unwrap()
            .classify(2048)
            .unwrap();
        assert!(report.compact_regime);
        assert!(report.strictly_cyclic_sup.is_finite());
        let hardy = KernelHandle::hardy(512).unwrap().classify(512).unwrap();
        assert!(hardy.iso_to_hinf);
        assert!(hardy.strictly_cyclic_sup.is_infinite());
    }

    #[test]
    fn continuity_bounds() {
        assert_eq!(continuity_bound_from_mass(0.0, 3.0).unwrap(), 3.0);
        assert_eq!(continuity_bound_from_mass(0.75, 1.0).unwrap(), 2.0);
        assert!(KernelHandle::hardy(64)
            .unwrap()
            .continuity_bound(1.0)
            .is_err());
        // 1 / (1 - r^2) = sum (n+1)^-2 = pi^2 / 6
        let k = KernelHandle::hs(-2.0, 4096).unwrap();
        let bound = k.continuity_bound(1.0).unwrap();
        assert!((bound - (1.0 / (1.0 - k.moduli_sum())).sqrt()).abs() < 1e-15);
        assert!((bound - (PI * PI / 6.0).sqrt()).abs() < 1e-3);
    }

    #[test]
    fn comparability_examples() {
        let hs = KernelHandle::hs(-0.5, 512).unwrap();
        let same = are_comparable(hs.weights(), hs.weights(), 512).unwrap();
        assert!(same.comparable());
        assert_eq!((same.min_ratio, same.max_ratio), (1.0, 1.0));

        let hardy = KernelHandle::hardy(512).unwrap();
        let report = are_comparable(hardy.weights(), hs.weights(), 512).unwrap();
        assert_eq!(report.verdict, Comparability::Diverging);

        let scaled = KernelWeights::from_fn(512, |n| 3.0 * ((n + 1) as f64).powf(-0.5)).unwrap();
        let report = are_comparable(hs.weights(), &scaled, 512).unwrap();
        assert!(report.comparable());
        assert!((report.min_ratio - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn parses_family_tags() {
        assert_eq!(
            KernelHandle::parse("hardy", 8).unwrap().family(),
            &Family::Hardy
        );
        assert_eq!(
            KernelHandle::parse("hs:-0.5", 8).unwrap().family(),
            &Family::Hs(-0.5)
        );
        assert_eq!(
            KernelHandle::parse("geom:0.25", 8).unwrap().family(),
            &Family::Geometric(0.25)
        );
        assert!(matches!(
            KernelHandle::parse("bergman", 8),
            Err(Error::UnknownTag(_))
        ));
        assert!(KernelHandle::parse("hs:abc", 8).is_err());
        assert!(KernelHandle::parse("geom:1.5", 8).is_err());
    }

    #[test]
    fn closed_form_generating_function() {
        let hardy = KernelHandle::hardy(8).unwrap();
        assert!((hardy.generating_real(0.5).unwrap() - 2.0).abs() < 1e-15);
        let dirichlet = KernelHandle::hs(-1.0, 8).unwrap();
        let y: f64 = 0.9;
        let exact = -(1.0 - y).ln() / y;
        assert!((dirichlet.generating_real(y).unwrap() - exact).abs() < 1e-14);
    }

    #[test]
    fn radius_is_one_for_hs() {
        let k = KernelHandle::hs(-0.5, 4096).unwrap();
        assert!((k.radius_estimate() - 1.0).abs() < 0.01);
    }
}
