use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point `(1 - defect) e^{i angle}` of the open unit disc.
///
/// The defect `1 - |z|` is stored together with its logarithm, so points
/// like `1 - e^{-n^2}` keep full relative accuracy in their distance to the
/// circle long after `1 - defect` has rounded to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    defect: f64,
    log_defect: f64,
    angle: f64,
}

/// `ln(1 - e^x)` for `x < 0`.
pub(crate) fn ln_one_minus_exp(x: f64) -> f64 {
    if x < -LN_2 {
        (-x.exp()).ln_1p()
    } else {
        (-x.exp_m1()).ln()
    }
}

/// `ln(e^a + e^b)`.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Scaled pieces shared by the distance and kernel formulas. With
/// `L = max(ln delta_1, ln delta_2)` and `e_i = delta_i / e^L`:
/// `|z - w|^2 / e^{2L} = (e_2 - e_1)^2 + T e^{-2L}` and
/// `|1 - z conj w|^2 / e^{2L} = A^2 + T e^{-2L}` with
/// `A = e_1 + e_2 - e^L e_1 e_2` and `T = 4 rho_1 rho_2 sin^2(dtheta / 2)`.
struct Scaled {
    big_l: f64,
    e1: f64,
    e2: f64,
    ln_e1: f64,
    ln_e2: f64,
    a: f64,
    rho: f64,
    half_sin: f64,
}

impl DiscPoint {
    pub fn from_complex(z: Complex64) -> Result<Self> {
        let modulus = z.norm();
        if !modulus.is_finite() || modulus >= 1.0 {
            return Err(Error::OutsideDisc { modulus });
        }
        Self::from_defect(1.0 - modulus, z.arg())
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    /// The point `(1 - defect) e^{i angle}`, `0 < defect <= 1`.
    pub fn from_defect(defect: f64, angle: f64) -> Result<Self> {
        if !(defect > 0.0 && defect <= 1.0) || !angle.is_finite() {
            return Err(Error::OutsideDisc {
                modulus: 1.0 - defect,
            });
        }
        Ok(Self {
            defect,
            log_defect: defect.ln(),
            angle,
        })
    }

    /// The point `(1 - e^{log_defect}) e^{i angle}`, `log_defect <= 0`.
    pub fn from_log_defect(log_defect: f64, angle: f64) -> Result<Self> {
        if !(log_defect <= 0.0) || !log_defect.is_finite() || !angle.is_finite() {
            return Err(Error::OutsideDisc {
                modulus: 1.0 - log_defect.exp(),
            });
        }
        Ok(Self {
            defect: log_defect.exp(),
            log_defect,
            angle,
        })
    }

    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn log_defect(&self) -> f64 {
        self.log_defect
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn modulus(&self) -> f64 {
        1.0 - self.defect
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.modulus(), self.angle)
    }

    /// `ln(1 - |z|^2)`.
    pub fn ln_one_minus_modsq(&self) -> f64 {
        self.log_defect + (2.0 - self.defect).ln()
    }

    fn scaled(&self, other: &Self) -> Scaled {
        let big_l = self.log_defect.max(other.log_defect);
        let (e1, e2, ln_e1, ln_e2);
        if self.defect >= f64::MIN_POSITIVE && other.defect >= f64::MIN_POSITIVE {
            let m = self.defect.max(other.defect);
            e1 = self.defect / m;
            e2 = other.defect / m;
            ln_e1 = if e1 == 1.0 {
                0.0
            } else {
                self.log_defect - big_l
            };
            ln_e2 = if e2 == 1.0 {
                0.0
            } else {
                other.log_defect - big_l
            };
        } else {
            ln_e1 = self.log_defect - big_l;
            ln_e2 = other.log_defect - big_l;
            e1 = ln_e1.exp();
            e2 = ln_e2.exp();
        }
        let eb = big_l.exp();
        Scaled {
            big_l,
            e1,
            e2,
            ln_e1,
            ln_e2,
            a: e1 + e2 - eb * e1 * e2,
            rho: self.modulus() * other.modulus(),
            half_sin: ((self.angle - other.angle) / 2.0).sin(),
        }
    }

    /// `(ln d^2, ln(1 - d^2))` for the pseudohyperbolic distance `d`.
    pub fn ln_dist_parts(&self, other: &Self) -> (f64, f64) {
        let s = self.scaled(other);
        let t = 4.0 * s.rho * s.half_sin * s.half_sin;
        let ln_t = if t > 0.0 {
            t.ln() - 2.0 * s.big_l
        } else {
            f64::NEG_INFINITY
        };
        let diff = s.e2 - s.e1;
        let ln_num = log_add_exp(
            if diff == 0.0 {
                f64::NEG_INFINITY
            } else {
                2.0 * diff.abs().ln()
            },
            ln_t,
        );
        let ln_den = log_add_exp(2.0 * s.a.ln(), ln_t);
        let ln_kappa =
            s.ln_e1 + s.ln_e2 + (2.0 - self.defect).ln() + (2.0 - other.defect).ln() - ln_den;
        let ln_d2 = ln_num - ln_den;
        if ln_d2 < -LN_2 {
            (ln_d2, ln_one_minus_exp(ln_d2))
        } else {
            (ln_one_minus_exp(ln_kappa.min(0.0)), ln_kappa.min(0.0))
        }
    }

    /// Pseudohyperbolic distance `|z - w| / |1 - conj(w) z|`.
    pub fn pseudo_dist(&self, other: &Self) -> f64 {
        (0.5 * self.ln_dist_parts(other).0).exp().min(1.0)
    }

    /// `ln d(z, w)`, accurate when `d` is close to 1.
    pub fn ln_pseudo_dist(&self, other: &Self) -> f64 {
        0.5 * self.ln_dist_parts(other).0
    }

    /// `sqrt((1-|z|^2)(1-|w|^2)) / (1 - z conj w)`, the Szegő kernel
    /// normalised by its diagonal.
    pub fn normalized_szego(&self, other: &Self) -> Complex64 {
        let s = self.scaled(other);
        let num = (s.e1 * s.e2 * (2.0 - self.defect) * (2.0 - other.defect)).sqrt();
        let re_extra = 2.0 * s.rho * s.half_sin * s.half_sin;
        let im_extra = -s.rho * (self.angle - other.angle).sin();
        if re_extra == 0.0 && im_extra == 0.0 {
            return Complex64::new(num / s.a, 0.0);
        }
        let magnitude_ln = re_extra.abs().max(im_extra.abs()).ln() - s.big_l;
        if magnitude_ln > 700.0 {
            return Complex64::new(0.0, 0.0);
        }
        let inv = (-s.big_l).exp();
        num / Complex64::new(s.a + re_extra * inv, im_extra * inv)
    }
}
