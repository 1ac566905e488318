use num_complex::Complex64;

use super::{dist_coords, inner, norm_sqr, BallPoint};
use crate::error::{Error, Result};
use crate::kernels::KernelHandle;
use crate::series::neumaier_sum;

const STEP: f64 = 1e-6;

/// A holomorphic map from the disc into the ball.
pub trait Curve {
    fn dim(&self) -> usize;

    /// Coordinates of `f(z)`. Points of the closed disc are allowed when the
    /// map extends continuously there.
    fn eval(&self, z: Complex64) -> Result<Vec<Complex64>>;

    /// `f'(z)`; defaults to Richardson-extrapolated finite differences.
    fn derivative(&self, z: Complex64) -> Result<Vec<Complex64>> {
        numeric_derivative(self, z)
    }

    /// Bound on the norm of coordinates dropped by truncation at `z`.
    fn tail(&self, _z: Complex64) -> f64 {
        0.0
    }

    fn point(&self, z: Complex64) -> Result<BallPoint> {
        BallPoint::closed(self.eval(z)?, self.tail(z))
    }

    /// `(1 - |f(x e^{it})|) / |f(e^{it}) - f(x e^{it})|` and
    /// `Re <f(e^{it}) - f(x e^{it}), f(e^{it})> / (1 - x)`.
    fn tangential_ratio(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::InvalidParameter(format!(
                "radius x = {x} outside (0, 1)"
            )));
        }
        let u = Complex64::from_polar(1.0, t);
        let edge = self.eval(u)?;
        let inside = self.eval(u * x)?;
        let nsq = norm_sqr(&inside);
        let one_minus = (1.0 - nsq) / (1.0 + nsq.sqrt());
        let gap: Vec<Complex64> = edge.iter().zip(&inside).map(|(a, b)| a - b).collect();
        let chord = norm_sqr(&gap).sqrt();
        let pair = inner(&gap, &edge).re;
        Ok((one_minus / chord, pair / (1.0 - x)))
    }

    fn label(&self) -> String;
}

/// Central differences at steps `h` and `h / 2` combined by Richardson
/// extrapolation; near the circle a one-sided stencil pointing inward.
pub fn numeric_derivative<C: Curve + ?Sized>(c: &C, z: Complex64) -> Result<Vec<Complex64>> {
    let combine = |a: Vec<Complex64>, b: Vec<Complex64>, wa: f64, wb: f64| -> Vec<Complex64> {
        a.into_iter().zip(b).map(|(x, y)| x * wa + y * wb).collect()
    };
    if z.norm() + STEP < 1.0 {
        let central = |h: f64| -> Result<Vec<Complex64>> {
            let hi = c.eval(z + h)?;
            let lo = c.eval(z - h)?;
            Ok(hi
                .into_iter()
                .zip(lo)
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect())
        };
        let coarse = central(STEP)?;
        let fine = central(STEP / 2.0)?;
        return Ok(combine(fine, coarse, 4.0 / 3.0, -1.0 / 3.0));
    }
    let dir = if z.norm() > 0.0 {
        -z / z.norm()
    } else {
        Complex64::new(-1.0, 0.0)
    };
    let one_sided = |h: f64| -> Result<Vec<Complex64>> {
        let step = dir * h;
        let f0 = c.eval(z)?;
        let f1 = c.eval(z + step)?;
        let f2 = c.eval(z + step * 2.0)?;
        Ok(f0
            .iter()
            .zip(&f1)
            .zip(&f2)
            .map(|((a, b), d)| (a * -3.0 + b * 4.0 - d) / (step * 2.0))
            .collect())
    };
    let coarse = one_sided(STEP)?;
    let fine = one_sided(STEP / 2.0)?;
    Ok(combine(fine, coarse, 4.0 / 3.0, -1.0 / 3.0))
}

/// `Re <f(e^{it}), f'(e^{it}) e^{it}>`.
pub fn transversality_pairing<C: Curve + ?Sized>(c: &C, t: f64) -> Result<f64> {
    let z = Complex64::from_polar(1.0, t);
    let f = c.eval(z)?;
    let fp: Vec<Complex64> = c.derivative(z)?.into_iter().map(|d| d * z).collect();
    let v = inner(&f, &fp).re;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("pairing at angle {t}")))
    }
}

pub fn tangential_ratio<C: Curve + ?Sized>(c: &C, x: f64, t: f64) -> Result<(f64, f64)> {
    c.tangential_ratio(x, t)
}

/// Source and image distances for a list of pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionProfile {
    pub pairs: Vec<(f64, f64)>,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

pub fn distortion_profile<C: Curve + ?Sized>(
    c: &C,
    pairs: &[(Complex64, Complex64)],
) -> Result<DistortionProfile> {
    let mut out = Vec::with_capacity(pairs.len());
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(lambda, mu) in pairs {
        for p in [lambda, mu] {
            if p.norm() >= 1.0 {
                return Err(Error::OutsideDisc { modulus: p.norm() });
            }
        }
        let source = dist_coords(&[lambda], &[mu]);
        let (a, b) = (c.eval(lambda)?, c.eval(mu)?);
        for v in [&a, &b] {
            let n = norm_sqr(v).sqrt();
            if n >= 1.0 {
                return Err(Error::OutsideDisc { modulus: n });
            }
        }
        let image = dist_coords(&a, &b);
        if source > 0.0 {
            lo = lo.min(image / source);
            hi = hi.max(image / source);
        }
        out.push((source, image));
    }
    Ok(DistortionProfile {
        pairs: out,
        min_ratio: lo,
        max_ratio: hi,
    })
}

/// `z -> z` as a map into the one-dimensional ball.
#[derive(Debug, Clone, Copy, Default)]
pub struct DiscIdentity;

impl Curve for DiscIdentity {
    fn dim(&self) -> usize {
        1
    }

    fn eval(&self, z: Complex64) -> Result<Vec<Complex64>> {
        Ok(vec![z])
    }

    fn derivative(&self, _z: Complex64) -> Result<Vec<Complex64>> {
        Ok(vec![Complex64::new(1.0, 0.0)])
    }

    fn label(&self) -> String {
        "identity".into()
    }
}

/// `f(z) = (z^2, b(z)^2) / sqrt(2)` with `b(z) = (z - r) / (1 - r z)`.
/// It sends `1` and `-1` to the same boundary point.
#[derive(Debug, Clone, Copy)]
pub struct CrossingMap {
    r: f64,
}

impl CrossingMap {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "crossing parameter r = {r}"
            )));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    fn blaschke(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let den = 1.0 - z * self.r;
        if den.norm() < 1e-12 {
            return Err(Error::Singular(format!("z = {z}")));
        }
        Ok(((z - self.r) / den, (1.0 - self.r * self.r) / (den * den)))
    }

    /// `1 - |f(z)|^2`, using `1 - |b|^2 = (1 - |z|^2)(1 - r^2) / |1 - r z|^2`.
    pub fn one_minus_norm_sq(&self, z: Complex64) -> Result<f64> {
        let (b, _) = self.blaschke(z)?;
        let m = z.norm();
        let dz = (1.0 - m) * (1.0 + m);
        let db = dz * (1.0 - self.r * self.r) / (1.0 - z * self.r).norm_sqr();
        let bb = b.norm_sqr();
        Ok((dz * (1.0 + m * m) + db * (1.0 + bb)) / 2.0)
    }

    /// `<f'(z), f(z)>`.
    pub fn derivative_pairing(&self, z: Complex64) -> Result<Complex64> {
        Ok(inner(&self.derivative(z)?, &self.eval(z)?))
    }

    /// The positive scalar `s` with `<f'(1), f(1)> = -s <f'(-1), f(-1)>`.
    pub fn s(&self) -> Result<f64> {
        let plus = self.derivative_pairing(Complex64::new(1.0, 0.0))?.re;
        let minus = self.derivative_pairing(Complex64::new(-1.0, 0.0))?.re;
        Ok(plus / -minus)
    }
}

impl Curve for CrossingMap {
    fn dim(&self) -> usize {
        2
    }

    fn eval(&self, z: Complex64) -> Result<Vec<Complex64>> {
        let (b, _) = self.blaschke(z)?;
        let k = std::f64::consts::FRAC_1_SQRT_2;
        Ok(vec![z * z * k, b * b * k])
    }

    fn derivative(&self, z: Complex64) -> Result<Vec<Complex64>> {
        let (b, db) = self.blaschke(z)?;
        let k = std::f64::consts::SQRT_2;
        Ok(vec![z * k, b * db * k])
    }

    fn label(&self) -> String {
        format!("crossing(r={})", self.r)
    }
}

/// Whether `sum |b_n|^2` equals 1 (the image touches the sphere) or is
/// strictly less (the image closure is a compact disc inside the ball).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Open,
    Compact,
}

/// `f(z) = (b_1 z, b_2 z^2, b_3 z^3, ...)`, truncated at `N`.
#[derive(Debug, Clone)]
pub struct EmbeddedDisc {
    b: Vec<Complex64>,
    regime: Regime,
    /// `sum_{n > N} |b_n|^2`, estimated.
    tail_mass: f64,
    moment_diverges: bool,
    kernel: Option<KernelHandle>,
}

impl EmbeddedDisc {
    pub fn new(b: Vec<Complex64>, regime: Regime) -> Result<Self> {
        if b.first().is_none_or(|b1| b1.norm() == 0.0) {
            return Err(Error::InvalidEmbedding("b_1 must be nonzero".into()));
        }
        let c: Vec<f64> = b.iter().map(|v| v.norm_sqr()).collect();
        let mass = neumaier_sum(c.iter().copied());
        if !mass.is_finite() || mass > 1.0 + 1e-12 {
            return Err(Error::InvalidEmbedding(format!(
                "sum |b_n|^2 = {mass} exceeds 1"
            )));
        }
        let tail_mass = match regime {
            Regime::Open => (1.0 - mass).max(0.0),
            Regime::Compact => 0.0,
        };
        Ok(Self {
            moment_diverges: moment_diverges(&c),
            b,
            regime,
            tail_mass,
            kernel: None,
        })
    }

    /// Amplitudes `b_n = sqrt(c_n)` from the kernel's moduli.
    pub fn from_kernel(k: &KernelHandle) -> Result<Self> {
        let c = k.moduli().as_slice();
        if let Some(pos) = c.iter().position(|&v| v < -crate::kernels::CNP_TOLERANCE) {
            return Err(Error::InvalidEmbedding(format!(
                "c_{} = {} is negative; the kernel is not complete Pick",
                pos + 1,
                c[pos]
            )));
        }
        let b: Vec<Complex64> = c
            .iter()
            .map(|&v| Complex64::new(v.max(0.0).sqrt(), 0.0))
            .collect();
        let regime = if k.is_compact_regime() {
            Regime::Compact
        } else {
            Regime::Open
        };
        let mut e = Self::new(b, regime)?;
        if regime == Regime::Compact {
            let weight_sum = neumaier_sum(k.weights().as_slice().iter().copied());
            e.tail_mass = ((1.0 - 1.0 / weight_sum) - k.moduli_sum()).max(0.0);
        }
        e.kernel = Some(k.clone());
        Ok(e)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.b
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Whether `sum n |b_n|^2` fails the doubling test.
    pub fn derivative_diverges_on_boundary(&self) -> bool {
        self.moment_diverges
    }

    /// `f(z)` and `f'(z)` together.
    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(BallPoint, Vec<Complex64>)> {
        Ok((self.point(z)?, self.derivative(z)?))
    }

    fn check(&self, z: Complex64) -> Result<()> {
        let m = z.norm();
        if !m.is_finite() || m > 1.0 + 1e-15 {
            return Err(Error::OutsideDisc { modulus: m });
        }
        Ok(())
    }
}

fn moment_diverges(c: &[f64]) -> bool {
    let n = c.len();
    if n < 8 {
        return false;
    }
    let moment =
        |m: usize| neumaier_sum(c[..m].iter().enumerate().map(|(k, &v)| (k + 1) as f64 * v));
    let (full, half) = (moment(n), moment(n / 2));
    (full - half).abs() > crate::kernels::DOUBLING_TOLERANCE * full.abs()
}

impl Curve for EmbeddedDisc {
    fn dim(&self) -> usize {
        self.b.len()
    }

    fn eval(&self, z: Complex64) -> Result<Vec<Complex64>> {
        self.check(z)?;
        let mut power = z;
        Ok(self
            .b
            .iter()
            .map(|bn| {
                let v = bn * power;
                power *= z;
                v
            })
            .collect())
    }

    fn derivative(&self, z: Complex64) -> Result<Vec<Complex64>> {
        self.check(z)?;
        if z.norm() >= 1.0 - 1e-15 && self.moment_diverges {
            return Err(Error::DerivativeDiverges);
        }
        let mut power = Complex64::new(1.0, 0.0);
        Ok(self
            .b
            .iter()
            .enumerate()
            .map(|(k, bn)| {
                let v = bn * power * (k + 1) as f64;
                power *= z;
                v
            })
            .collect())
    }

    fn tail(&self, z: Complex64) -> f64 {
        self.tail_mass.sqrt() * z.norm().powi(self.b.len() as i32 + 1)
    }

    fn tangential_ratio(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::InvalidParameter(format!(
                "radius x = {x} outside (0, 1)"
            )));
        }
        // The diagonal unitary z^n -> e^{int} z^n moves f(x) to f(x e^{it})
        // and fixes both ratios, so the radial formulas hold at every angle.
        match (&self.kernel, self.regime) {
            (Some(k), Regime::Open) if k.closed_form_weight(0).is_some() => {
                let inv_x = 1.0 / k.generating_real(x)?;
                let inv_x2 = 1.0 / k.generating_real(x * x)?;
                let one_minus = inv_x2 / (1.0 + (1.0 - inv_x2).sqrt());
                let chord = (2.0 * inv_x - inv_x2).sqrt();
                Ok((one_minus / chord, inv_x / (1.0 - x)))
            }
            _ => {
                let u = Complex64::from_polar(1.0, t);
                let edge = self.eval(u)?;
                let inside = self.eval(u * x)?;
                let nsq = norm_sqr(&inside);
                let one_minus = (1.0 - nsq) / (1.0 + nsq.sqrt());
                let gap: Vec<Complex64> = edge.iter().zip(&inside).map(|(a, b)| a - b).collect();
                Ok((
                    one_minus / norm_sqr(&gap).sqrt(),
                    inner(&gap, &edge).re / (1.0 - x),
                ))
            }
        }
    }

    fn label(&self) -> String {
        match &self.kernel {
            Some(k) => format!("embedded({})", k.tag()),
            None => "embedded".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn hardy() -> EmbeddedDisc {
        EmbeddedDisc::new(vec![c(1.0)], Regime::Open).unwrap()
    }

    #[test]
    fn embedded_disc_values() {
        let e = EmbeddedDisc::from_kernel(&KernelHandle::hs(-1.0, 64).unwrap()).unwrap();
        let p = e.eval(c(0.0)).unwrap();
        assert!(p.iter().all(|v| v.norm() == 0.0));
        let d = e.derivative(c(0.0)).unwrap();
        assert_eq!(d[0], e.amplitudes()[0]);
        assert!(d[1..].iter().all(|v| v.norm() == 0.0));
        assert_eq!(hardy().eval(c(0.5)).unwrap(), vec![c(0.5)]);
    }

    #[test]
    fn compact_embedding_reaches_the_boundary() {
        let k = KernelHandle::hs(-2.0, 4096).unwrap();
        let e = EmbeddedDisc::from_kernel(&k).unwrap();
        assert_eq!(e.regime(), Regime::Compact);
        let p = e.point(c(1.0)).unwrap();
        assert!((p.norm().powi(2) - k.moduli_sum()).abs() < 1e-13);
        let r2 = 1.0 - 6.0 / std::f64::consts::PI.powi(2);
        assert!((p.norm().powi(2) - r2).abs() < 1e-3);
        assert!(matches!(
            e.derivative(c(1.0)),
            Err(Error::DerivativeDiverges)
        ));
    }

    #[test]
    fn rejects_bad_amplitudes() {
        assert!(EmbeddedDisc::new(vec![c(0.0), c(0.5)], Regime::Open).is_err());
        assert!(EmbeddedDisc::new(vec![c(0.9), c(0.9)], Regime::Open).is_err());
        assert!(EmbeddedDisc::from_kernel(&KernelHandle::hs(1.0, 16).unwrap()).is_err());
    }

    #[test]
    fn crossing_pairings() {
        let f = CrossingMap::new(0.5).unwrap();
        assert!((f.derivative_pairing(c(1.0)).unwrap().re - 4.0).abs() < 1e-14);
        let minus = f.derivative_pairing(c(-1.0)).unwrap().re;
        assert!((minus + 4.0 / 3.0).abs() < 1e-14);
        assert!((f.s().unwrap() - 3.0).abs() < 1e-14);
        assert!((transversality_pairing(&f, 0.0).unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(f.eval(c(1.0)).unwrap(), f.eval(c(-1.0)).unwrap());
    }

    #[test]
    fn numeric_derivative_matches_analytic() {
        let f = CrossingMap::new(0.3).unwrap();
        for z in [
            Complex64::new(0.2, 0.1),
            Complex64::new(0.0, -0.6),
            Complex64::from_polar(1.0, 2.0),
        ] {
            let exact = f.derivative(z).unwrap();
            let approx = numeric_derivative(&f, z).unwrap();
            for (a, b) in exact.iter().zip(&approx) {
                assert!((a - b).norm() < 1e-7, "{z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn hardy_boundary_quantities() {
        let h = hardy();
        assert!((transversality_pairing(&h, 1.3).unwrap() - 1.0).abs() < 1e-12);
        for x in [0.5, 0.9, 0.999] {
            let (r1, r2) = h.tangential_ratio(x, 0.7).unwrap();
            assert!((r1 - 1.0).abs() < 1e-9 && (r2 - 1.0).abs() < 1e-9);
        }
        let k = EmbeddedDisc::from_kernel(&KernelHandle::hardy(32).unwrap()).unwrap();
        let (r1, r2) = k.tangential_ratio(0.99, 0.0).unwrap();
        assert!((r1 - 1.0).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hs_boundary_derivative_is_refused() {
        let e = EmbeddedDisc::from_kernel(&KernelHandle::hs(-0.5, 1024).unwrap()).unwrap();
        assert!(e.derivative_diverges_on_boundary());
        assert!(transversality_pairing(&e, 0.0).is_err());
        let (_, r2a) = e.tangential_ratio(1.0 - 2f64.powi(-4), 0.0).unwrap();
        let (_, r2b) = e.tangential_ratio(1.0 - 2f64.powi(-10), 0.0).unwrap();
        assert!(r2b > r2a);
    }

    #[test]
    fn identity_distortion() {
        let pairs = [(c(0.1), c(0.5)), (Complex64::new(0.0, 0.9), c(-0.3))];
        let p = distortion_profile(&DiscIdentity, &pairs).unwrap();
        assert!((p.min_ratio - 1.0).abs() < 1e-15 && (p.max_ratio - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scalar_schwarz_pick_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let curves: Vec<Box<dyn Curve>> = vec![
            Box::new(hardy()),
            Box::new(CrossingMap::new(0.5).unwrap()),
            Box::new(EmbeddedDisc::from_kernel(&KernelHandle::hs(-2.0, 512).unwrap()).unwrap()),
            Box::new(
                EmbeddedDisc::from_kernel(&KernelHandle::geometric(0.5, 128).unwrap()).unwrap(),
            ),
        ];
        for curve in &curves {
            let one = curve.eval(c(1.0)).unwrap();
            let g = |z: Complex64| inner(&curve.eval(z).unwrap(), &one);
            let g0 = g(c(0.0)).norm();
            let bound = (1.0 - g0) / (1.0 + g0);
            for _ in 0..1000 {
                let z = Complex64::from_polar(
                    rng.random::<f64>().sqrt() * 0.999,
                    rng.random_range(-3.2..3.2),
                );
                let lhs = (1.0 - g(z).norm()) / (1.0 - z.norm());
                assert!(
                    lhs >= bound * (1.0 - 1e-12),
                    "{}: {lhs} < {bound}",
                    curve.label()
                );
            }
        }
    }
}
