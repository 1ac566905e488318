//! Pseudohyperbolic geometry of the ball, embedded discs, and boundary
//! diagnostics for curves.

mod curve;
mod disc;

pub use curve::{
    distortion_profile, tangential_ratio, transversality_pairing, CrossingMap, Curve, DiscIdentity,
    DistortionProfile, EmbeddedDisc, Regime,
};
pub use disc::DiscPoint;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `<u, v> = sum u_i conj(v_i)`; missing coordinates count as zero.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm_sqr(u: &[Complex64]) -> f64 {
    u.iter().map(|a| a.norm_sqr()).sum()
}

/// A point of the ball in `C^d` (or a truncation of a point of `l^2`).
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    coords: Vec<Complex64>,
    norm: f64,
    /// Bound on the norm of the coordinates dropped by truncation.
    tail: f64,
    boundary: bool,
}

impl BallPoint {
    /// An interior point; fails unless `|z| < 1`.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        Self::with_tail(coords, 0.0)
    }

    pub fn with_tail(coords: Vec<Complex64>, tail: f64) -> Result<Self> {
        let p = Self::build(coords, tail)?;
        if p.norm >= 1.0 {
            return Err(Error::OutsideDisc { modulus: p.norm });
        }
        Ok(p)
    }

    /// Accepts points with `|z| <= 1 + 1e-12`, flagging those with `|z| >= 1`.
    pub fn closed(coords: Vec<Complex64>, tail: f64) -> Result<Self> {
        let mut p = Self::build(coords, tail)?;
        if p.norm > 1.0 + 1e-12 {
            return Err(Error::OutsideDisc { modulus: p.norm });
        }
        p.boundary = p.norm >= 1.0 - 1e-15;
        Ok(p)
    }

    fn build(coords: Vec<Complex64>, tail: f64) -> Result<Self> {
        if coords
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
            || !tail.is_finite()
        {
            return Err(Error::NonFinite("ball point coordinate".into()));
        }
        let norm = norm_sqr(&coords).sqrt();
        Ok(Self {
            coords,
            norm,
            tail: tail.abs(),
            boundary: false,
        })
    }

    pub fn origin(dim: usize) -> Self {
        Self {
            coords: vec![Complex64::new(0.0, 0.0); dim],
            norm: 0.0,
            tail: 0.0,
            boundary: false,
        }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Euclidean norm of the stored coordinates.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn tail(&self) -> f64 {
        self.tail
    }

    pub fn is_boundary(&self) -> bool {
        self.boundary
    }
}

fn pad(u: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut v = u.to_vec();
    v.resize(dim, Complex64::new(0.0, 0.0));
    v
}

fn require_interior(p: &BallPoint) -> Result<()> {
    if p.boundary || p.norm >= 1.0 {
        Err(Error::OutsideDisc { modulus: p.norm })
    } else {
        Ok(())
    }
}

/// Pseudohyperbolic distance from the stored coordinates.
///
/// Uses `1 - d^2 = (1-|z|^2)(1-|w|^2) / |1-<z,w>|^2` rearranged as
/// `d^2 = (|z-w|^2 - |z ^ w|^2) / |1-<z,w>|^2`, which keeps relative accuracy
/// for nearby points.
pub fn pseudo_dist(z: &BallPoint, w: &BallPoint) -> Result<f64> {
    require_interior(z)?;
    require_interior(w)?;
    Ok(dist_coords(z.coords(), w.coords()))
}

pub(crate) fn dist_coords(z: &[Complex64], w: &[Complex64]) -> f64 {
    let dim = z.len().max(w.len());
    let (z, w) = (pad(z, dim), pad(w, dim));
    let zz = norm_sqr(&z);
    let ip = inner(&z, &w);
    let diff: f64 = z.iter().zip(&w).map(|(a, b)| (a - b).norm_sqr()).sum();
    // |z ^ w|^2 = |z|^2 |w - proj_z w|^2
    let wedge = if zz == 0.0 {
        0.0
    } else {
        let scale = ip.conj() / zz;
        zz * w
            .iter()
            .zip(&z)
            .map(|(b, a)| (b - a * scale).norm_sqr())
            .sum::<f64>()
    };
    let den = (Complex64::new(1.0, 0.0) - ip).norm_sqr();
    let d2 = ((diff - wedge).max(0.0) / den).min(1.0);
    d2.sqrt()
}

/// Interval containing the distance between the untruncated points, given
/// the tail bounds carried by `z` and `w`.
pub fn pseudo_dist_bounds(z: &BallPoint, w: &BallPoint) -> Result<(f64, f64)> {
    let d = pseudo_dist(z, w)?;
    if z.tail == 0.0 && w.tail == 0.0 {
        return Ok((d, d));
    }
    let (nz, nw) = (z.norm * z.norm, w.norm * w.norm);
    let (tz, tw) = (z.tail * z.tail, w.tail * w.tail);
    let gap = (Complex64::new(1.0, 0.0) - inner(z.coords(), w.coords())).norm();
    let cross = z.tail * w.tail;
    let kappa_lo = ((1.0 - nz - tz) * (1.0 - nw - tw)).max(0.0) / (gap + cross).powi(2);
    let kappa_hi =
        ((1.0 - nz) * (1.0 - nw) / (gap - cross).max(f64::MIN_POSITIVE).powi(2)).min(1.0);
    let lo = (1.0 - kappa_hi).max(0.0).sqrt().min(d);
    let hi = (1.0 - kappa_lo).max(0.0).sqrt().max(d);
    Ok((lo, hi))
}

/// The involutive automorphism `phi_w` of the ball, evaluated at `z`.
pub fn mobius_auto(w: &BallPoint, z: &BallPoint) -> Result<BallPoint> {
    require_interior(w)?;
    require_interior(z)?;
    let dim = w.dim().max(z.dim());
    let (wv, zv) = (pad(w.coords(), dim), pad(z.coords(), dim));
    let ww = norm_sqr(&wv);
    if ww == 0.0 {
        return BallPoint::new(zv.iter().map(|c| -c).collect());
    }
    let ip = inner(&zv, &wv);
    let den = Complex64::new(1.0, 0.0) - ip;
    if den.norm() < 1e-300 {
        return Err(Error::Singular("<z, w> = 1".into()));
    }
    let s = (1.0 - ww).sqrt();
    let coeff = ip / ww;
    let out: Vec<Complex64> = wv
        .iter()
        .zip(&zv)
        .map(|(wi, zi)| {
            let p = wi * coeff;
            (wi - p - (zi - p) * s) / den
        })
        .collect();
    BallPoint::closed(out, 0.0).and_then(|p| {
        if p.norm >= 1.0 {
            Err(Error::OutsideDisc { modulus: p.norm })
        } else {
            Ok(p)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> BallPoint {
        loop {
            let v: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            if norm_sqr(&v) < 1.0 {
                return BallPoint::new(v).unwrap();
            }
        }
    }

    fn real(coords: &[f64]) -> BallPoint {
        BallPoint::new(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn distance_to_origin_is_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let z = random_point(&mut rng, 3);
            let d = pseudo_dist(&z, &BallPoint::origin(3)).unwrap();
            assert!((d - z.norm()).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_boundary_points() {
        assert!(BallPoint::new(vec![Complex64::new(1.0, 0.0)]).is_err());
        let b = BallPoint::closed(vec![Complex64::new(1.0, 0.0)], 0.0).unwrap();
        assert!(b.is_boundary());
        assert!(pseudo_dist(&b, &real(&[0.5])).is_err());
    }

    #[test]
    fn scalar_distance_example() {
        let d = pseudo_dist(&real(&[0.5]), &real(&[-0.5])).unwrap();
        assert!((d - 0.8).abs() < 1e-15);
    }

    #[test]
    fn mobius_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let w = random_point(&mut rng, 3);
            let z = random_point(&mut rng, 3);
            assert!(mobius_auto(&w, &w).unwrap().norm() < 1e-12);
            let at0 = mobius_auto(&w, &BallPoint::origin(3)).unwrap();
            for (a, b) in at0.coords().iter().zip(w.coords()) {
                assert!((a - b).norm() < 1e-15);
            }
            let back = mobius_auto(&w, &mobius_auto(&w, &z).unwrap()).unwrap();
            for (a, b) in back.coords().iter().zip(z.coords()) {
                assert!((a - b).norm() < 1e-10);
            }
            let d = pseudo_dist(&z, &w).unwrap();
            assert!((mobius_auto(&w, &z).unwrap().norm() - d).abs() < 1e-12);
        }
    }

    #[test]
    fn tail_bounds_contain_distance() {
        let z = BallPoint::with_tail(vec![Complex64::new(0.5, 0.1)], 0.01).unwrap();
        let w = BallPoint::with_tail(vec![Complex64::new(-0.2, 0.3)], 0.02).unwrap();
        let (lo, hi) = pseudo_dist_bounds(&z, &w).unwrap();
        let d = pseudo_dist(&z, &w).unwrap();
        assert!(lo <= d && d <= hi && hi - lo < 0.1);
        // an explicit completion of the tails lands inside the interval
        let z_full =
            BallPoint::new(vec![Complex64::new(0.5, 0.1), Complex64::new(0.01, 0.0)]).unwrap();
        let w_full =
            BallPoint::new(vec![Complex64::new(-0.2, 0.3), Complex64::new(0.0, 0.02)]).unwrap();
        let d_full = pseudo_dist(&z_full, &w_full).unwrap();
        assert!(lo <= d_full && d_full <= hi);
    }
}
