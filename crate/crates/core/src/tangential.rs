//! A proper embedding `F = (f_1, f_2)` of the disc into the two-ball that
//! meets the sphere tangentially at `F(1) = (1, 0)`.
//!
//! `f_1` is a composition of explicit conformal maps pushed inside the disc
//! by `rho(z) = r z + 1 - r`; `f_2 = exp(u_1 + i u~_1)` with
//! `u_1 = log(1 - |f_1|^2) / 2` on the circle, so `|f_1|^2 + |f_2|^2 = 1`
//! there.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::OnceLock;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::geometry::{inner, norm_sqr, Curve};

/// Distance to a pole or branch point below which evaluation is refused.
pub const POLE_GUARD: f64 = 1e-8;

/// Radius beyond which interior values of `f_2` come from quadrature of the
/// Schwarz integral rather than from the Fourier coefficients.
pub const FOURIER_RADIUS: f64 = 0.9;

/// Points closer than this to `z = 1` also use quadrature.
pub const FOURIER_EXCLUSION: f64 = 0.25;

/// Radius used for the boundary phase of `f_2`.
const PHASE_RADIUS: f64 = 1.0 - 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Composition stages, in order of application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// `w -> (w + i) / (i w + 1)`
    Mobius,
    /// principal square root
    Sqrt,
    /// `w -> (w - 1) / (w + 1)`, completing `g`
    G,
    /// `log` with the cut on the negative imaginary axis
    Log,
    /// `w -> (w - pi i) / (w + 2 pi i)`, completing `f`
    F,
    /// `f(rho(z))`
    F1,
}

/// The conformal maps with clip parameter `r` in `(2/3, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalChain {
    r: f64,
}

impl Default for ConformalChain {
    fn default() -> Self {
        Self { r: 0.75 }
    }
}

impl ConformalChain {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 2.0 / 3.0 && r < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "clip parameter r = {r} outside (2/3, 1)"
            )));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Evaluates the composition through `stage`.
    pub fn eval(&self, z: Complex64, stage: Stage) -> Result<Complex64> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::OutsideDisc { modulus: z.norm() });
        }
        if stage == Stage::F1 {
            return self.f_from_gap((1.0 - z) * self.r);
        }
        let pole = 1.0 + I * z;
        if pole.norm() < POLE_GUARD {
            return Err(Error::Singular(format!("z = {z} is the pole at i")));
        }
        let m1 = (z + I) / pole;
        match stage {
            Stage::Mobius => Ok(m1),
            Stage::Sqrt => Ok(upper_sqrt(m1)),
            Stage::G => Ok(g_from_gap(1.0 - z)),
            Stage::Log => {
                let g = g_from_gap(1.0 - z);
                if g.norm() < POLE_GUARD {
                    return Err(Error::Singular(format!("log at g = {g}")));
                }
                Ok(cut_log(g))
            }
            Stage::F | Stage::F1 => self.f_from_gap(1.0 - z),
        }
    }

    /// `g(z)`.
    pub fn g(&self, z: Complex64) -> Result<Complex64> {
        self.eval(z, Stage::G)
    }

    /// `f_1(z) = f(rho(z))`.
    pub fn f1(&self, z: Complex64) -> Result<Complex64> {
        self.eval(z, Stage::F1)
    }

    /// `f` at the point `1 - gap`.
    fn f_from_gap(&self, gap: Complex64) -> Result<Complex64> {
        if (Complex64::new(1.0, 0.0) - gap).norm() > 1.0 + 1e-12 {
            return Err(Error::OutsideDisc {
                modulus: (1.0 - gap).norm(),
            });
        }
        if (I * (1.0 - gap) + 1.0).norm() < POLE_GUARD {
            return Err(Error::Singular("pole at i".into()));
        }
        let g = g_from_gap(gap);
        if g == Complex64::new(0.0, 0.0) {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let l = cut_log(g);
        Ok((l - PI * I) / (l + 2.0 * PI * I))
    }

    /// `log g(rho(z))` for `z` written as `1 - gap`; `None` at `z = 1`.
    fn log_g1(&self, gap: Complex64) -> Option<Complex64> {
        let g = g_from_gap(gap * self.r);
        (g != Complex64::new(0.0, 0.0)).then(|| cut_log(g))
    }

    /// `1 - |f_1|^2` and `1 - f_1` at `z = 1 - gap`, both without
    /// cancellation: with `L = log g(rho(z))`,
    /// `1 - |f_1|^2 = 3 pi (2 Im L + pi) / |L + 2 pi i|^2` and
    /// `1 - f_1 = 3 pi i / (L + 2 pi i)`.
    fn defects(&self, gap: Complex64) -> (f64, Complex64) {
        match self.log_g1(gap) {
            None => (0.0, Complex64::new(0.0, 0.0)),
            Some(l) => {
                let den = l + 2.0 * PI * I;
                (
                    3.0 * PI * (2.0 * l.im + PI) / den.norm_sqr(),
                    3.0 * PI * I / den,
                )
            }
        }
    }

    /// `u_1(e^{it}) = log(1 - |f_1(e^{it})|^2) / 2`; `-inf` at `t = 0`.
    pub fn u1(&self, t: f64) -> f64 {
        0.5 * self.defects(circle_gap(t)).0.ln()
    }

    /// `(1 / 2 pi) int (e^{it} + z) / (e^{it} - z) u_1(t) dt` by Gauss–Legendre
    /// panels graded geometrically toward `t = 0` and toward `arg z`.
    pub fn schwarz_integral(&self, z: Complex64) -> Complex64 {
        let (nodes, weights) = gauss_legendre_16();
        let mut breaks = vec![-PI, PI, 0.0];
        for j in 1..=100 {
            let s = PI * 2f64.powi(-j);
            breaks.push(s);
            breaks.push(-s);
        }
        let theta = z.arg();
        let width = ((1.0 - z.norm()).max(1e-15)) / 2.0;
        for center in [theta - TAU, theta, theta + TAU] {
            breaks.push(center);
            let mut off = width;
            while off < TAU {
                breaks.push(center + off);
                breaks.push(center - off);
                off *= 2.0;
            }
        }
        breaks.retain(|b| (-PI..=PI).contains(b));
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let mut total = Complex64::new(0.0, 0.0);
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            let half = (b - a) / 2.0;
            let mid = (a + b) / 2.0;
            if half <= 0.0 {
                continue;
            }
            for (x, wt) in nodes.iter().zip(weights) {
                let t = mid + half * x;
                if t == 0.0 {
                    continue;
                }
                let e = Complex64::from_polar(1.0, t);
                total += (e + z) / (e - z) * (self.u1(t) * wt * half);
            }
        }
        total / TAU
    }
}

/// `1 - e^{it}` without cancellation.
fn circle_gap(t: f64) -> Complex64 {
    let s = (t / 2.0).sin();
    Complex64::new(2.0 * s * s, -t.sin())
}

/// Square root in the closed first quadrant for arguments in the closed
/// upper half plane.
fn upper_sqrt(w: Complex64) -> Complex64 {
    let s = w.sqrt();
    if s.im < 0.0 {
        s.conj()
    } else {
        s
    }
}

/// `g(1 - gap)` as `delta / (1 + sqrt(1 + delta))^2` with
/// `delta = m1 - 1 = -gap (1 - i) / (1 + i (1 - gap))`, exact near `z = 1`.
fn g_from_gap(gap: Complex64) -> Complex64 {
    let delta = -gap * (1.0 - I) / (1.0 + I * (1.0 - gap));
    let s = upper_sqrt(1.0 + delta);
    delta / ((1.0 + s) * (1.0 + s))
}

/// Logarithm with argument in `(-pi/2, 3pi/2]`.
fn cut_log(w: Complex64) -> Complex64 {
    let mut arg = w.arg();
    if arg <= -FRAC_PI_2 {
        arg += TAU;
    }
    Complex64::new(w.norm().ln(), arg)
}

/// Samples on the grid `t_k = 2 pi k / m`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySampling {
    values: Vec<f64>,
    /// Index whose sample was replaced by a model value.
    singular_index: Option<usize>,
}

impl BoundarySampling {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let m = values.len();
        if m < 2 || !m.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "grid size {m} is not a power of two"
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("boundary sample".into()));
        }
        Ok(Self {
            values,
            singular_index: None,
        })
    }

    pub fn from_fn(m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new((0..m).map(|k| f(grid_angle(k, m))).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn singular_index(&self) -> Option<usize> {
        self.singular_index
    }

    pub fn angle(&self, k: usize) -> f64 {
        grid_angle(k, self.len())
    }

    /// Trapezoid rule for `(1 / 2 pi) int |u|`.
    pub fn mean_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>() / self.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Forward DFT divided by `m`: `u_k` for `k = 0..m`.
    pub fn fourier(&self) -> Vec<Complex64> {
        let m = self.len();
        let mut buf: Vec<Complex64> = self
            .values
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        FftPlanner::new().plan_fft_forward(m).process(&mut buf);
        buf.iter_mut().for_each(|c| *c /= m as f64);
        buf
    }
}

pub fn grid_angle(k: usize, m: usize) -> f64 {
    TAU * k as f64 / m as f64
}

/// `u_1` on the `m`-point grid. The sample at angle 0, where `u_1 = -inf`,
/// is chosen so that the trapezoid mean equals `(1 / 2 pi) int u_1`
/// computed by adaptive quadrature. The log-log singularity leaves an
/// `O(h)` error on the neighbouring cells that is almost a point mass at 0,
/// so this single correction also fixes the low Fourier coefficients.
pub fn boundary_modulus_defect(c: &ConformalChain, m: usize) -> Result<BoundarySampling> {
    if m < 256 || !m.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "grid size {m} must be a power of two >= 256"
        )));
    }
    let mut values: Vec<f64> = (0..m)
        .map(|k| if k == 0 { 0.0 } else { c.u1(grid_angle(k, m)) })
        .collect();
    let mean = c.schwarz_integral(Complex64::new(0.0, 0.0)).re;
    values[0] = m as f64 * mean - values[1..].iter().sum::<f64>();
    let mut s = BoundarySampling::new(values)?;
    s.singular_index = Some(0);
    Ok(s)
}

/// Conjugate function by the multiplier `-i sign(k)`; the mean and the
/// Nyquist coefficient are dropped.
pub fn harmonic_conjugate(b: &BoundarySampling) -> BoundarySampling {
    let m = b.len();
    let mut spec = b.fourier();
    for (k, c) in spec.iter_mut().enumerate() {
        *c = if k == 0 || 2 * k == m {
            Complex64::new(0.0, 0.0)
        } else if 2 * k < m {
            *c * -I
        } else {
            *c * I
        };
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut spec);
    BoundarySampling {
        values: spec.iter().map(|c| c.re).collect(),
        singular_index: b.singular_index,
    }
}

/// `F = (f_1, f_2)`.
#[derive(Debug, Clone)]
pub struct TangentialEmbedding {
    chain: ConformalChain,
    u1: BoundarySampling,
    u1_tilde: BoundarySampling,
    /// Taylor coefficients of `h = u_1 + i u~_1` extended to the disc.
    taylor: Vec<Complex64>,
}

/// Samples `u_1`, conjugates it, and prepares interior evaluation.
pub fn assemble_embedding(c: &ConformalChain, m: usize) -> Result<TangentialEmbedding> {
    let u1 = boundary_modulus_defect(c, m)?;
    let u1_tilde = harmonic_conjugate(&u1);
    let spec = u1.fourier();
    let mut taylor: Vec<Complex64> = spec[..m / 2].iter().map(|v| v * 2.0).collect();
    taylor[0] = Complex64::new(spec[0].re, 0.0);
    Ok(TangentialEmbedding {
        chain: *c,
        u1,
        u1_tilde,
        taylor,
    })
}

/// One row of [`TangentialEmbedding::grid_table`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub t: f64,
    pub u1: f64,
    pub u1_tilde: f64,
    pub f1_abs: f64,
    pub f2_abs: f64,
    pub sphere_defect: f64,
}

impl TangentialEmbedding {
    pub fn chain(&self) -> &ConformalChain {
        &self.chain
    }

    pub fn u1(&self) -> &BoundarySampling {
        &self.u1
    }

    pub fn u1_tilde(&self) -> &BoundarySampling {
        &self.u1_tilde
    }

    pub fn grid_size(&self) -> usize {
        self.u1.len()
    }

    /// `f_2 = exp(u_1 + i u~_1)` on the grid.
    pub fn f2_grid(&self) -> Vec<Complex64> {
        self.u1
            .values()
            .iter()
            .zip(self.u1_tilde.values())
            .map(|(&u, &v)| Complex64::new(u, v).exp())
            .collect()
    }

    /// Per-sample boundary data; the defect `|f_1|^2 + |f_2|^2 - 1` is NaN
    /// at the replaced singular sample.
    pub fn grid_table(&self) -> Vec<GridRow> {
        let f2 = self.f2_grid();
        (0..self.grid_size())
            .map(|k| {
                let t = self.u1.angle(k);
                let singular = self.u1.singular_index() == Some(k);
                let d = if singular {
                    0.0
                } else {
                    self.chain.defects(circle_gap(t)).0
                };
                let f1_sq = 1.0 - d;
                let f2_sq = f2[k].norm_sqr();
                GridRow {
                    t,
                    u1: self.u1.values()[k],
                    u1_tilde: self.u1_tilde.values()[k],
                    f1_abs: f1_sq.sqrt(),
                    f2_abs: f2_sq.sqrt(),
                    sphere_defect: if singular {
                        f64::NAN
                    } else {
                        (f2_sq - d) + (f1_sq - (1.0 - d))
                    },
                }
            })
            .collect()
    }

    /// Largest `| |f_1|^2 + |f_2|^2 - 1 |` over the grid, singular sample
    /// excluded.
    pub fn sphere_defect(&self) -> f64 {
        self.grid_table()
            .iter()
            .filter(|r| !r.sphere_defect.is_nan())
            .map(|r| r.sphere_defect.abs())
            .fold(0.0, f64::max)
    }

    /// `h(z) = u_1 + i u~_1` extended holomorphically; truncated Taylor
    /// series inside [`FOURIER_RADIUS`] and away from 1, Schwarz integral
    /// elsewhere.
    pub fn h(&self, z: Complex64) -> Complex64 {
        if z.norm() <= FOURIER_RADIUS && (1.0 - z).norm() >= FOURIER_EXCLUSION {
            self.taylor
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
        } else {
            self.schwarz_integral(z)
        }
    }

    /// `h(z)` by quadrature of the Schwarz integral of `u_1`.
    pub fn schwarz_integral(&self, z: Complex64) -> Complex64 {
        self.chain.schwarz_integral(z)
    }

    /// `u_1` at angle `t`, extended to `f_2(e^{it})` with phase taken just
    /// inside the circle.
    fn f2_boundary(&self, t: f64) -> Complex64 {
        let u = self.chain.u1(t);
        let phase = self
            .schwarz_integral(Complex64::from_polar(PHASE_RADIUS, t))
            .im;
        Complex64::from_polar(u.exp(), phase)
    }

    /// `(1 - |F(z)|^2, F(z))` with the first entry free of cancellation.
    pub fn eval_with_defect(&self, z: Complex64) -> Result<(f64, [Complex64; 2])> {
        let m = z.norm();
        if !m.is_finite() || m > 1.0 + 1e-12 {
            return Err(Error::OutsideDisc { modulus: m });
        }
        let gap = 1.0 - z;
        if gap == Complex64::new(0.0, 0.0) {
            return Ok((0.0, [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]));
        }
        let (d, one_minus_f1) = self.chain.defects(gap);
        let f1 = 1.0 - one_minus_f1;
        if m >= 1.0 - 1e-15 {
            let f2 = self.f2_boundary(z.arg());
            return Ok((0.0, [f1, f2]));
        }
        let h = self.h(z);
        let f2 = h.exp();
        // |f_2|^2 = e^{2 Re h} and d = e^{2 u}, u = log(d) / 2 >= Re h
        let v = h.re - 0.5 * d.ln();
        Ok((d * -(2.0 * v).exp_m1(), [f1, f2]))
    }
}

impl Curve for TangentialEmbedding {
    fn dim(&self) -> usize {
        2
    }

    fn eval(&self, z: Complex64) -> Result<Vec<Complex64>> {
        Ok(self.eval_with_defect(z)?.1.to_vec())
    }

    fn tangential_ratio(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::InvalidParameter(format!(
                "radius x = {x} outside (0, 1)"
            )));
        }
        let u = Complex64::from_polar(1.0, t);
        let (defect, inside) = self.eval_with_defect(u * x)?;
        let one_minus = defect / (1.0 + (1.0 - defect).sqrt());
        if t == 0.0 {
            let (_, one_minus_f1) = self.chain.defects(Complex64::new(1.0 - x, 0.0));
            let chord = (one_minus_f1.norm_sqr() + inside[1].norm_sqr()).sqrt();
            return Ok((one_minus / chord, one_minus_f1.re / (1.0 - x)));
        }
        let edge = self.eval(u)?;
        let gap: Vec<Complex64> = edge.iter().zip(&inside).map(|(a, b)| a - b).collect();
        Ok((
            one_minus / norm_sqr(&gap).sqrt(),
            inner(&gap, &edge).re / (1.0 - x),
        ))
    }

    fn label(&self) -> String {
        format!("tangential(r={}, m={})", self.chain.r(), self.grid_size())
    }
}

fn gauss_legendre_16() -> (&'static [f64], &'static [f64]) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let rule = RULE.get_or_init(|| gauss_legendre(16));
    (&rule.0, &rule.1)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Both tangential ratios along `x = 1 - 2^-j` and a regression of
/// `log Re <F(1) - F(x), F(1)>` on `log(1 / log^2(1 - x))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangencyReport {
    /// `(x, ratio1, ratio2, Re <F(1) - F(x), F(1)>)`.
    pub rows: Vec<(f64, f64, f64, f64)>,
    pub ratio1_decreasing: bool,
    pub ratio2_increasing: bool,
    pub fit_slope: f64,
    pub fit_intercept: f64,
    pub fit_correlation: f64,
}

/// Default sweep `j = 4..=14`, regression over `j = 6..=14`.
pub fn tangency_report(f: &TangentialEmbedding) -> Result<TangencyReport> {
    tangency_report_range(f, 4..=14, 6..=14)
}

pub fn tangency_report_range(
    f: &TangentialEmbedding,
    sweep: std::ops::RangeInclusive<i32>,
    fit: std::ops::RangeInclusive<i32>,
) -> Result<TangencyReport> {
    let mut rows = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for j in sweep {
        let x = 1.0 - 2f64.powi(-j);
        let (r1, r2) = f.tangential_ratio(x, 0.0)?;
        let pairing = r2 * (1.0 - x);
        rows.push((x, r1, r2, pairing));
        if fit.contains(&j) {
            xs.push(-2.0 * (1.0 - x).ln().abs().ln());
            ys.push(pairing.ln());
        }
    }
    let (fit_slope, fit_intercept, fit_correlation) = linear_fit(&xs, &ys);
    Ok(TangencyReport {
        ratio1_decreasing: rows.windows(2).all(|w| w[1].1 < w[0].1),
        ratio2_increasing: rows.windows(2).all(|w| w[1].2 > w[0].2),
        rows,
        fit_slope,
        fit_intercept,
        fit_correlation,
    })
}

/// Least squares `y = a x + b`, returning `(a, b, correlation)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx, sxy / (sxx * syy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn chain_landmarks() {
        let ch = ConformalChain::default();
        assert!(ch.g(c(1.0, 0.0)).unwrap().norm() < 1e-12);
        assert!((ch.g(c(0.0, -1.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-12);
        assert!(matches!(ch.g(c(0.0, 1.0)), Err(Error::Singular(_))));
        let near_i = ch.g(c(0.0, 1.0 - 1e-7)).unwrap();
        assert!((near_i - c(1.0, 0.0)).norm() < 1e-3);
        assert!(matches!(
            ch.eval(c(1.0, 0.0), Stage::Log),
            Err(Error::Singular(_))
        ));
        assert_eq!(ch.f1(c(1.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!(ConformalChain::new(0.5).is_err());
    }

    #[test]
    fn g_derivative_at_one() {
        let ch = ConformalChain::default();
        let h = 1e-6;
        let d = (ch.g(c(1.0, 0.0)).unwrap() - ch.g(c(1.0 - h, 0.0)).unwrap()) / h;
        assert!((d - c(0.0, -0.25)).norm() < 1e-5);
        assert!((d.norm() - 0.25).abs() < 1e-5);
    }

    #[test]
    fn g_maps_into_upper_half_disc() {
        let ch = ConformalChain::default();
        for k in 0..200 {
            let z = Complex64::from_polar(0.999 * (k as f64 / 200.0).sqrt(), 0.37 * k as f64);
            let g = ch.g(z).unwrap();
            assert!(g.norm() < 1.0 && g.im >= -1e-15, "{z} -> {g}");
            let f = ch.f1(z).unwrap();
            assert!(f.norm() < 1.0);
        }
    }

    #[test]
    fn stages_compose() {
        let ch = ConformalChain::default();
        let z = c(0.3, -0.2);
        let m1 = ch.eval(z, Stage::Mobius).unwrap();
        let s = ch.eval(z, Stage::Sqrt).unwrap();
        assert!((s * s - m1).norm() < 1e-15);
        let g = ch.eval(z, Stage::G).unwrap();
        assert!(((s - 1.0) / (s + 1.0) - g).norm() < 1e-15);
        let l = ch.eval(z, Stage::Log).unwrap();
        assert!((l.exp() - g).norm() < 1e-15);
        let f = ch.eval(z, Stage::F).unwrap();
        assert!(((l - PI * I) / (l + 2.0 * PI * I) - f).norm() < 1e-15);
    }

    #[test]
    fn boundary_samples() {
        let ch = ConformalChain::default();
        let u = boundary_modulus_defect(&ch, 1024).unwrap();
        assert!(u.values().iter().all(|&v| v <= 0.0));
        let u2 = boundary_modulus_defect(&ch, 2048).unwrap();
        assert!((u.mean_abs() - u2.mean_abs()).abs() < 0.02 * u2.mean_abs());
        assert!(boundary_modulus_defect(&ch, 100).is_err());
    }

    #[test]
    fn conjugate_of_trig_polynomials() {
        let m = 256;
        let cos = BoundarySampling::from_fn(m, f64::cos).unwrap();
        let conj = harmonic_conjugate(&cos);
        for k in 0..m {
            assert!((conj.values()[k] - cos.angle(k).sin()).abs() < 1e-14);
        }
        let constant = BoundarySampling::from_fn(m, |_| 3.0).unwrap();
        assert!(harmonic_conjugate(&constant)
            .values()
            .iter()
            .all(|v| v.abs() < 1e-15));
        let cubic = BoundarySampling::from_fn(m, |t| (3.0 * t).cos()).unwrap();
        let conj = harmonic_conjugate(&cubic);
        for k in 0..m {
            assert!((conj.values()[k] - (3.0 * cubic.angle(k)).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(16);
        let integral: f64 = x.iter().zip(&w).map(|(a, b)| a.powi(30) * b).sum();
        assert!((integral - 2.0 / 31.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn fourier_and_quadrature_agree() {
        let f = assemble_embedding(&ConformalChain::default(), 4096).unwrap();
        for z in [c(0.5, 0.2), c(-0.8, 0.3), c(0.6, 0.4), c(0.0, -0.89)] {
            let a = f.h(z);
            let b = f.schwarz_integral(z);
            assert!((a - b).norm() < 1e-6, "{z}: {a} vs {b}");
        }
    }

    #[test]
    fn embedding_boundary_values() {
        let f = assemble_embedding(&ConformalChain::default(), 4096).unwrap();
        assert!(f.sphere_defect() < 1e-8);
        let one = f.eval(c(1.0, 0.0)).unwrap();
        assert_eq!(one, vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let p = f.eval(Complex64::from_polar(0.99, 1.0)).unwrap();
        assert!(norm_sqr(&p) < 1.0);
    }
}
