//! Blaschke, separation and Carleson diagnostics for finite lists of points
//! in the unit disc, plus generators for the standard example sequences.

use crate::error::{Error, Result};
use crate::geometry::DiscPoint;
use crate::series::neumaier_sum;

/// Floor applied to `ln delta_n`.
pub const LOG_DELTA_FLOOR: f64 = -700.0;

/// Infimum gap below which a list is reported as not separated.
pub const SEPARATION_THRESHOLD: f64 = 1e-3;

/// A finite list of distinct points of the open disc.
#[derive(Debug, Clone)]
pub struct DiscSequence {
    points: Vec<DiscPoint>,
    label: String,
}

impl DiscSequence {
    pub fn new(points: Vec<DiscPoint>, label: impl Into<String>) -> Result<Self> {
        let mut keys: Vec<(u64, u64, usize)> = points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let angle = p.angle().rem_euclid(std::f64::consts::TAU);
                (p.log_defect().to_bits(), angle.to_bits(), i)
            })
            .collect();
        keys.sort_unstable();
        for w in keys.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::CoincidentNodes {
                    first: w[0].2.min(w[1].2),
                    second: w[0].2.max(w[1].2),
                });
            }
        }
        Ok(Self {
            points,
            label: label.into(),
        })
    }

    pub fn points(&self) -> &[DiscPoint] {
        &self.points
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `sum (1 - |v_n|)` with a doubling test on the partial sums.
    pub fn blaschke_sum(&self) -> BlaschkeSum {
        let total = neumaier_sum(self.points.iter().map(DiscPoint::defect));
        let half = neumaier_sum(self.points[..self.len() / 2].iter().map(DiscPoint::defect));
        BlaschkeSum {
            total,
            half,
            converging: total == half || (total - half) <= 0.01 * total,
        }
    }

    /// `delta_n = prod_{i != n} d(v_i, v_n)`, accumulated in log space.
    pub fn separation_delta(&self, n: usize) -> Result<SeparationDelta> {
        let p = self.points.get(n).ok_or_else(|| {
            Error::InvalidParameter(format!("index {n} outside a list of {}", self.len()))
        })?;
        let mut ln_delta = 0.0;
        let mut gap = f64::INFINITY;
        for (i, q) in self.points.iter().enumerate() {
            if i == n {
                continue;
            }
            let ln_d = p.ln_pseudo_dist(q);
            ln_delta += ln_d;
            gap = gap.min(ln_d.exp());
        }
        let underflow = ln_delta < LOG_DELTA_FLOOR;
        let ln_delta = ln_delta.max(LOG_DELTA_FLOOR);
        Ok(SeparationDelta {
            index: n,
            ln_delta,
            delta: if underflow { 0.0 } else { ln_delta.exp() },
            gap,
            underflow,
            truncation: self.len(),
        })
    }

    pub fn separation_deltas(&self) -> Vec<SeparationDelta> {
        (0..self.len())
            .map(|n| self.separation_delta(n).expect("index in range"))
            .collect()
    }

    /// Smallest pairwise distance and the verdict against
    /// [`SEPARATION_THRESHOLD`].
    pub fn is_separated(&self) -> Result<(bool, f64)> {
        if self.len() < 2 {
            return Err(Error::InvalidParameter(
                "separation needs at least two points".into(),
            ));
        }
        let mut gap = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                gap = gap.min(p.pseudo_dist(q));
            }
        }
        Ok((gap >= SEPARATION_THRESHOLD, gap))
    }

    /// `2^p sum (1 - |v|)` over points of the box
    /// `{ r e^{i theta} : 1 - 2^-p <= r < 1, 0 <= theta < 2^-p }`.
    pub fn carleson_ratio(&self, p: u32) -> Result<f64> {
        if p == 0 || p > 1000 {
            return Err(Error::InvalidParameter(format!("box level p = {p}")));
        }
        let side = 2f64.powi(-(p as i32));
        let mass = neumaier_sum(
            self.points
                .iter()
                .filter(|v| v.defect() <= side && v.angle() >= 0.0 && v.angle() < side)
                .map(DiscPoint::defect),
        );
        Ok(mass / side)
    }

    /// Garnett's interpolation budget `delta_n (1 + ln(1 / delta_n))^-2`.
    pub fn garnett_targets(&self) -> Vec<GarnettBudget> {
        self.separation_deltas()
            .into_iter()
            .map(|d| GarnettBudget {
                index: d.index,
                budget: garnett_budget(d.ln_delta),
                underflow: d.underflow,
            })
            .collect()
    }
}

/// `e^l / (1 - l)^2` for `l = ln delta <= 0`.
pub fn garnett_budget(ln_delta: f64) -> f64 {
    ln_delta.exp() / (1.0 - ln_delta).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlaschkeSum {
    pub total: f64,
    /// Sum over the first half of the list.
    pub half: f64,
    pub converging: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationDelta {
    pub index: usize,
    pub ln_delta: f64,
    /// Zero when `ln_delta` hit the floor.
    pub delta: f64,
    /// `min_{i != n} d(v_i, v_n)`.
    pub gap: f64,
    pub underflow: bool,
    /// Number of points in the product.
    pub truncation: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GarnettBudget {
    pub index: usize,
    pub budget: f64,
    pub underflow: bool,
}

/// Generates one of `vn_quadratic`, `wn_gaussian`, `dyadic_separated`,
/// `xn_alternating`.
///
/// For the dyadic list `len` counts generations `n = 1..=len`, each holding
/// `floor(2^{n/2})` points `(1 - 2^-n) e^{i k 2^-n}`.
pub fn named_sequence(tag: &str, len: usize) -> Result<DiscSequence> {
    if len == 0 {
        return Err(Error::InvalidParameter(
            "sequence length must be >= 1".into(),
        ));
    }
    let points = match tag {
        "vn_quadratic" => (2..=len + 1)
            .map(|n| DiscPoint::from_defect(1.0 / (n * n) as f64, 0.0))
            .collect::<Result<Vec<_>>>()?,
        "wn_gaussian" => (1..=len)
            .map(|n| DiscPoint::from_log_defect(-((n * n) as f64), 0.0))
            .collect::<Result<Vec<_>>>()?,
        "xn_alternating" => (2..=len + 1)
            .map(|n| {
                let angle = if n % 2 == 0 {
                    0.0
                } else {
                    std::f64::consts::PI
                };
                DiscPoint::from_defect(1.0 / (n * n) as f64, angle)
            })
            .collect::<Result<Vec<_>>>()?,
        "dyadic_separated" => {
            if len > 60 {
                return Err(Error::InvalidParameter(format!(
                    "{len} dyadic generations is more than 60"
                )));
            }
            let mut pts = Vec::new();
            for n in 1..=len as i32 {
                let step = 2f64.powi(-n);
                let count = dyadic_count(n as u32);
                for k in 0..count {
                    pts.push(DiscPoint::from_defect(step, k as f64 * step)?);
                }
            }
            pts
        }
        _ => return Err(Error::UnknownTag(tag.to_string())),
    };
    DiscSequence::new(points, tag)
}

/// `floor(2^{n/2})`.
pub fn dyadic_count(n: u32) -> u64 {
    (1u128 << n).isqrt() as u64
}

/// `d(1/(2C), -1/(2C))`: the separation any function of sup norm at most 1
/// would need between consecutive alternating targets.
pub fn alternating_target_gap(c: f64) -> Result<f64> {
    if !(c >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "norm bound C = {c} below 1"
        )));
    }
    let a = DiscPoint::real(0.5 / c)?;
    let b = DiscPoint::real(-0.5 / c)?;
    Ok(a.pseudo_dist(&b))
}

/// First `n >= 2` with `d(v_n, v_{n+1}) < alternating_target_gap(C)`, past
/// which no contraction can send `v_n` to alternating targets of size
/// `1/(2C)`.
pub fn alternating_obstruction_index(c: f64, n_max: usize) -> Result<Option<usize>> {
    let gap = alternating_target_gap(c)?;
    for n in 2..=n_max {
        let v = DiscPoint::from_defect(1.0 / (n * n) as f64, 0.0)?;
        let w = DiscPoint::from_defect(1.0 / ((n + 1) * (n + 1)) as f64, 0.0)?;
        if v.pseudo_dist(&w) < gap {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
