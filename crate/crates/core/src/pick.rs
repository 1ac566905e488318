//! Pick matrices, positivity tests, the greedy interpolating-subsequence
//! extractor, and the determinant obstruction for the crossing map.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{inner, norm_sqr, BallPoint, CrossingMap, Curve, DiscPoint};
use crate::kernels::KernelHandle;

/// Largest Pick matrix accepted.
pub const MAX_NODES: usize = 2000;

/// Above this size positivity is decided by pivoted Cholesky.
pub const EIGEN_LIMIT: usize = 200;

/// Relative tolerance on the smallest eigenvalue.
pub const PSD_TOLERANCE: f64 = 1e-10;

const HERMITIAN_TOLERANCE: f64 = 1e-13;
const CORNER_CAP: usize = 512;
const RANDOM_TARGETS: usize = 256;

/// Interpolation nodes: scalar points of the disc or points of a ball.
#[derive(Debug, Clone)]
pub enum Nodes {
    Disc(Vec<DiscPoint>),
    Ball(Vec<BallPoint>),
}

impl Nodes {
    pub fn len(&self) -> usize {
        match self {
            Nodes::Disc(v) => v.len(),
            Nodes::Ball(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Euclidean norm of node `i`.
    pub fn norm(&self, i: usize) -> f64 {
        match self {
            Nodes::Disc(v) => v[i].modulus(),
            Nodes::Ball(v) => v[i].norm(),
        }
    }
}

/// Reproducing kernel used for a Pick problem.
#[derive(Debug, Clone)]
pub enum PickKernel {
    /// `1 / (1 - <x, y>)`; on the disc this is the Szegő kernel.
    DruryArveson,
    /// A weighted kernel on the disc, truncated at its stored length.
    Handle(KernelHandle),
}

impl PickKernel {
    fn scalar(nodes: &Nodes, i: usize) -> Result<Complex64> {
        match nodes {
            Nodes::Disc(v) => Ok(v[i].to_complex()),
            Nodes::Ball(v) if v[i].dim() == 1 => Ok(v[i].coords()[0]),
            Nodes::Ball(_) => Err(Error::InvalidProblem(
                "a weighted disc kernel needs one-dimensional nodes".into(),
            )),
        }
    }

    /// `K(z_i, z_j)`.
    pub fn raw(&self, nodes: &Nodes, i: usize, j: usize) -> Result<Complex64> {
        match self {
            PickKernel::DruryArveson => {
                let ip = match nodes {
                    Nodes::Disc(v) => v[i].to_complex() * v[j].to_complex().conj(),
                    Nodes::Ball(v) => inner(v[i].coords(), v[j].coords()),
                };
                let value = 1.0 / (1.0 - ip);
                if value.re.is_finite() && value.im.is_finite() {
                    Ok(value)
                } else {
                    Err(Error::NonFinite(format!("K(z_{i}, z_{j})")))
                }
            }
            PickKernel::Handle(k) => k.eval(Self::scalar(nodes, i)?, Self::scalar(nodes, j)?),
        }
    }

    /// `K(z_i, z_j) / sqrt(K(z_i, z_i) K(z_j, z_j))`.
    pub fn normalized(&self, nodes: &Nodes, i: usize, j: usize) -> Result<Complex64> {
        match (self, nodes) {
            (PickKernel::DruryArveson, Nodes::Disc(v)) => Ok(v[i].normalized_szego(&v[j])),
            (PickKernel::DruryArveson, Nodes::Ball(v)) => {
                let (x, y) = (v[i].coords(), v[j].coords());
                let scale = ((1.0 - norm_sqr(x)) * (1.0 - norm_sqr(y))).sqrt();
                Ok(scale / (1.0 - inner(x, y)))
            }
            (PickKernel::Handle(_), _) => {
                let kii = self.raw(nodes, i, i)?.re;
                let kjj = self.raw(nodes, j, j)?.re;
                Ok(self.raw(nodes, i, j)? / (kii * kjj).sqrt())
            }
        }
    }
}

/// Nodes, targets and a kernel.
#[derive(Debug, Clone)]
pub struct PickProblem {
    nodes: Nodes,
    targets: Vec<Complex64>,
    kernel: PickKernel,
}

impl PickProblem {
    pub fn new(nodes: Nodes, targets: Vec<Complex64>, kernel: PickKernel) -> Result<Self> {
        if nodes.len() != targets.len() {
            return Err(Error::InvalidProblem(format!(
                "{} nodes but {} targets",
                nodes.len(),
                targets.len()
            )));
        }
        if nodes.is_empty() || nodes.len() > MAX_NODES {
            return Err(Error::InvalidProblem(format!(
                "node count {} outside 1..={MAX_NODES}",
                nodes.len()
            )));
        }
        if let Some(w) = targets.iter().find(|w| !(w.norm() < 1.0)) {
            return Err(Error::InvalidProblem(format!(
                "target {w} is not in the open disc"
            )));
        }
        if let Nodes::Ball(v) = &nodes {
            if let Some(p) = v.iter().find(|p| p.is_boundary() || p.norm() >= 1.0) {
                return Err(Error::OutsideDisc { modulus: p.norm() });
            }
        }
        check_distinct(&nodes)?;
        Ok(Self {
            nodes,
            targets,
            kernel,
        })
    }

    /// Scalar nodes on the disc with the Szegő kernel.
    pub fn hardy(points: &[Complex64], targets: Vec<Complex64>) -> Result<Self> {
        let nodes = points
            .iter()
            .map(|&z| DiscPoint::from_complex(z))
            .collect::<Result<Vec<_>>>()?;
        Self::new(Nodes::Disc(nodes), targets, PickKernel::DruryArveson)
    }

    pub fn nodes(&self) -> &Nodes {
        &self.nodes
    }

    pub fn targets(&self) -> &[Complex64] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// `[(1 - w_i conj(w_j)) K(z_i, z_j)]`.
    pub fn pick_matrix(&self) -> Result<DMatrix<Complex64>> {
        let m = self.len();
        let mut out = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let v = (1.0 - self.targets[i] * self.targets[j].conj())
                    * self.kernel.raw(&self.nodes, i, j)?;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        Ok(out)
    }

    /// The Pick matrix scaled by its diagonal, `D^{-1/2} A D^{-1/2}`,
    /// computed without forming the (possibly enormous) kernel values.
    pub fn normalized_pick_matrix(&self) -> Result<DMatrix<Complex64>> {
        let m = self.len();
        let scale: Vec<f64> = self
            .targets
            .iter()
            .map(|w| 1.0 / (1.0 - w.norm_sqr()).sqrt())
            .collect();
        let mut out = DMatrix::zeros(m, m);
        for i in 0..m {
            out[(i, i)] = Complex64::new(1.0, 0.0);
            for j in i + 1..m {
                let v = (1.0 - self.targets[i] * self.targets[j].conj())
                    * self.kernel.normalized(&self.nodes, i, j)?
                    * (scale[i] * scale[j]);
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        Ok(out)
    }

    /// True unless the Pick matrix is indefinite.
    pub fn solvable(&self) -> Result<bool> {
        Ok(psd_check(&self.normalized_pick_matrix()?)?.verdict != Verdict::Indefinite)
    }
}

fn check_distinct(nodes: &Nodes) -> Result<()> {
    let m = nodes.len();
    for i in 0..m {
        for j in i + 1..m {
            let same = match nodes {
                Nodes::Disc(v) => v[i].pseudo_dist(&v[j]) == 0.0,
                Nodes::Ball(v) => v[i].coords() == v[j].coords(),
            };
            if same {
                return Err(Error::CoincidentNodes {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::PositiveDefinite => "positive-definite",
            Verdict::PositiveSemidefinite => "positive-semidefinite",
            Verdict::Indefinite => "indefinite",
        })
    }
}

/// Outcome of [`psd_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdVerdict {
    /// Smallest eigenvalue of the tested matrix; the smallest Cholesky
    /// pivot when the matrix is too large for a full eigensolve.
    pub min_eigenvalue: f64,
    /// Largest absolute entry of the tested matrix.
    pub matrix_scale: f64,
    pub verdict: Verdict,
    /// Whether the matrix was first scaled by its diagonal.
    pub equilibrated: bool,
}

/// Classifies a Hermitian matrix as positive definite, semidefinite, or
/// indefinite against `-1e-10 * scale`.
///
/// A matrix with positive diagonal is tested through the congruent matrix
/// `D^{-1/2} A D^{-1/2}`, which has the same inertia and unit diagonal.
pub fn psd_check(m: &DMatrix<Complex64>) -> Result<PsdVerdict> {
    let n = check_hermitian(m)?;
    if n == 0 {
        return Err(Error::InvalidProblem("empty matrix".into()));
    }
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    let equilibrated = diag.iter().all(|&d| d > 0.0 && d.is_finite());
    let b = if equilibrated {
        let s: Vec<f64> = diag.iter().map(|d| 1.0 / d.sqrt()).collect();
        DMatrix::from_fn(n, n, |i, j| m[(i, j)] * (s[i] * s[j]))
    } else {
        m.clone()
    };
    let scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let tol = PSD_TOLERANCE * scale;
    let (min_eigenvalue, verdict) = if n <= EIGEN_LIMIT {
        let min = min_hermitian_eigenvalue(b);
        let verdict = if min > tol {
            Verdict::PositiveDefinite
        } else if min < -tol {
            Verdict::Indefinite
        } else {
            Verdict::PositiveSemidefinite
        };
        (min, verdict)
    } else {
        pivoted_cholesky(b, tol)
    };
    Ok(PsdVerdict {
        min_eigenvalue,
        matrix_scale: scale,
        verdict,
        equilibrated,
    })
}

/// Smallest eigenvalue of the matrix as given, with no rescaling.
pub fn raw_min_eigenvalue(m: &DMatrix<Complex64>) -> Result<f64> {
    check_hermitian(m)?;
    Ok(min_hermitian_eigenvalue(m.clone()))
}

fn check_hermitian(m: &DMatrix<Complex64>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidProblem("matrix is not square".into()));
    }
    if m.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::NonFinite("matrix entry".into()));
    }
    let n = m.nrows();
    let scale = m.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    let asymmetry = if scale > 0.0 { worst / scale } else { 0.0 };
    if asymmetry > HERMITIAN_TOLERANCE {
        return Err(Error::NonHermitian { asymmetry });
    }
    Ok(n)
}

fn min_hermitian_eigenvalue(m: DMatrix<Complex64>) -> f64 {
    SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Outer-product Cholesky with diagonal pivoting. Returns the smallest
/// accepted pivot (or the offending value) and the verdict.
fn pivoted_cholesky(mut a: DMatrix<Complex64>, tol: f64) -> (f64, Verdict) {
    let n = a.nrows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut min_pivot = f64::INFINITY;
    while !active.is_empty() {
        let (pos, &p) = active
            .iter()
            .enumerate()
            .max_by(|x, y| a[(*x.1, *x.1)].re.total_cmp(&a[(*y.1, *y.1)].re))
            .expect("nonempty");
        let pivot = a[(p, p)].re;
        if pivot <= tol {
            // What is left is the Schur complement; it is semidefinite only
            // if it vanishes to tolerance.
            let rest = active
                .iter()
                .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm())
                .fold(0.0, f64::max);
            let verdict = if pivot < -tol || rest > tol {
                Verdict::Indefinite
            } else {
                Verdict::PositiveSemidefinite
            };
            return (pivot.min(min_pivot), verdict);
        }
        min_pivot = min_pivot.min(pivot);
        active.swap_remove(pos);
        for &i in &active {
            let li = a[(i, p)] / pivot;
            for &j in &active {
                let update = li * a[(p, j)];
                a[(i, j)] -= update;
            }
        }
    }
    (min_pivot, Verdict::PositiveDefinite)
}

/// Which rule admitted an index into the extracted subsequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// The first point is always taken.
    Base,
    /// `(1 - r^2) delta > (remaining terms)` held for the candidate.
    Dominance,
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rule::Base => "base",
            Rule::Dominance => "dominance",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionStep {
    pub k: usize,
    pub index: usize,
    pub point_norm: f64,
    /// Smallest eigenvalue of the diagonally scaled `A_k(w)` over the
    /// sampled targets.
    pub min_eigenvalue: f64,
    /// Sampled minimum of `det` of the kernel-normalized `A_{k-1}(w)`.
    pub delta_hat: f64,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub steps: Vec<ExtractionStep>,
}

impl Extraction {
    pub fn indices(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.index).collect()
    }
}

/// Greedily selects `n_1 < n_2 < ... < n_{k_max}` so that every nested Pick
/// matrix with targets bounded by `r` stays positive definite.
///
/// A candidate `z` joins once `(1 - r^2) delta > (1 + r^2)^2 (sum_j |G(z, z_j)|)^2 H`,
/// where `delta` is the sampled minimum of `det M_{k-1}(w)` for the matrix
/// `M(w) = [(1 - w_i conj w_j) G(z_i, z_j)]` built from the normalized
/// kernel `G`, and `H` is the Hadamard bound on its cofactors. The choice is
/// then confirmed on the same target sample.
pub fn extract_interpolating_subsequence<R: Rng + ?Sized>(
    nodes: &Nodes,
    kernel: &PickKernel,
    r: f64,
    k_max: usize,
    rng: &mut R,
) -> Result<Extraction> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "target bound r = {r} outside (0, 1)"
        )));
    }
    if k_max == 0 || k_max > 50 {
        return Err(Error::InvalidParameter(format!(
            "k_max = {k_max} outside 1..=50"
        )));
    }
    let len = nodes.len();
    if len == 0 {
        return Err(Error::InvalidProblem("no points".into()));
    }
    let last = nodes.norm(len - 1);
    if !(last > 0.9) {
        return Err(Error::InvalidProblem(format!(
            "final point has norm {last}; the list must approach the boundary"
        )));
    }
    let mut steps = vec![ExtractionStep {
        k: 1,
        index: 0,
        point_norm: nodes.norm(0),
        min_eigenvalue: 1.0,
        delta_hat: 1.0,
        rule: Rule::Base,
    }];
    let mut chosen = vec![0usize];
    let mut next = 1usize;
    let rr = r * r;
    while chosen.len() < k_max {
        let k = chosen.len() + 1;
        let g = gram(nodes, kernel, &chosen)?;
        let samples = target_sample(k - 1, r, rng);
        let delta_hat = samples
            .iter()
            .map(|w| kernel_normalized_det(&g, w))
            .fold(f64::INFINITY, f64::min);
        // Hadamard bound on cofactors of M_{k-1}(w), uniform in w.
        let rows: Vec<f64> = (0..g.nrows())
            .map(|l| (1.0 + rr) * g.row(l).iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
            .collect();
        let min_row = rows.iter().copied().fold(f64::INFINITY, f64::min);
        let hadamard = rows.iter().product::<f64>() / min_row;

        let mut accepted = None;
        while next < len {
            let cand = next;
            next += 1;
            let column = chosen
                .iter()
                .map(|&j| kernel.normalized(nodes, cand, j).map(|v| v.norm()))
                .collect::<Result<Vec<f64>>>()?;
            if column.iter().any(|&v| v >= 1.0 - 1e-15) {
                continue;
            }
            let spread: f64 = column.iter().sum();
            let lhs = (1.0 - rr) * delta_hat;
            let rhs = (1.0 + rr).powi(2) * spread * spread * hadamard;
            if lhs <= rhs {
                continue;
            }
            let mut trial = chosen.clone();
            trial.push(cand);
            let gt = gram(nodes, kernel, &trial)?;
            let full = target_sample(k, r, rng);
            let min_eig = full
                .iter()
                .map(|w| min_hermitian_eigenvalue(scaled_pick(&gt, w)))
                .fold(f64::INFINITY, f64::min);
            if min_eig > PSD_TOLERANCE {
                accepted = Some((cand, min_eig));
                break;
            }
        }
        let Some((index, min_eigenvalue)) = accepted else {
            return Err(Error::Exhausted {
                found: chosen.len(),
                wanted: k_max,
                reason: format!(
                    "no candidate among {len} points beat the cofactor bound; points do not approach the boundary fast enough for this truncation"
                ),
            });
        };
        chosen.push(index);
        steps.push(ExtractionStep {
            k,
            index,
            point_norm: nodes.norm(index),
            min_eigenvalue,
            delta_hat,
            rule: Rule::Dominance,
        });
    }
    Ok(Extraction { steps })
}

/// Normalized kernel Gram matrix `[G(z_i, z_j)]` on the selected indices.
pub fn gram(nodes: &Nodes, kernel: &PickKernel, idx: &[usize]) -> Result<DMatrix<Complex64>> {
    let m = idx.len();
    let mut g = DMatrix::from_element(m, m, Complex64::new(1.0, 0.0));
    for a in 0..m {
        for b in a + 1..m {
            let v = kernel.normalized(nodes, idx[a], idx[b])?;
            g[(a, b)] = v;
            g[(b, a)] = v.conj();
        }
    }
    Ok(g)
}

/// `det [(1 - w_i conj w_j) G_ij]`.
fn kernel_normalized_det(g: &DMatrix<Complex64>, w: &[Complex64]) -> f64 {
    let m = DMatrix::from_fn(g.nrows(), g.ncols(), |i, j| {
        (1.0 - w[i] * w[j].conj()) * g[(i, j)]
    });
    m.determinant().re
}

/// The Pick matrix scaled to unit diagonal.
pub fn scaled_pick(g: &DMatrix<Complex64>, w: &[Complex64]) -> DMatrix<Complex64> {
    let s: Vec<f64> = w
        .iter()
        .map(|v| 1.0 / (1.0 - v.norm_sqr()).sqrt())
        .collect();
    DMatrix::from_fn(g.nrows(), g.ncols(), |i, j| {
        (1.0 - w[i] * w[j].conj()) * g[(i, j)] * (s[i] * s[j])
    })
}

/// All `+-r` corners of the polydisc (random corners past 512), then 256
/// uniform draws from the polydisc of radius `r`.
pub fn target_sample<R: Rng + ?Sized>(dim: usize, r: f64, rng: &mut R) -> Vec<Vec<Complex64>> {
    let mut out = Vec::new();
    if dim < 10 {
        for mask in 0..(1usize << dim) {
            out.push(
                (0..dim)
                    .map(|i| Complex64::new(if mask >> i & 1 == 1 { -r } else { r }, 0.0))
                    .collect(),
            );
        }
    } else {
        for _ in 0..CORNER_CAP {
            out.push(
                (0..dim)
                    .map(|_| Complex64::new(if rng.random::<bool>() { -r } else { r }, 0.0))
                    .collect(),
            );
        }
    }
    for _ in 0..RANDOM_TARGETS {
        out.push(random_targets(dim, r, rng));
    }
    out
}

/// Uniform draw from `{ |w_i| <= r }`.
pub fn random_targets<R: Rng + ?Sized>(dim: usize, r: f64, rng: &mut R) -> Vec<Complex64> {
    (0..dim)
        .map(|_| {
            let rad = r * rng.random::<f64>().sqrt();
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(rad, theta)
        })
        .collect()
}

/// The two-point Pick problem for the crossing map with candidate
/// multiplier `h = f^{-1} / C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingReport {
    pub r: f64,
    pub c: f64,
    pub x: f64,
    pub s: f64,
    pub det: f64,
    /// `(C^2 + (1-x)(1-sx))^2 (1 - |f_1|^2)(1 - |f_2|^2)`.
    pub lhs: f64,
    /// `(C^2 - (1-x)^2)(C^2 - (1-sx)^2) |1 - <f_2, f_1>|^2`.
    pub rhs: f64,
    /// `(1 - |f_1|^2)(1 - |f_2|^2) / |1 - <f_1, f_2>|^2`.
    pub kernel_ratio: f64,
}

/// Pick determinant at `f(1 - x)`, `f(-1 + s x)` on the Drury–Arveson
/// kernel with targets `(1 - x)/C` and `(-1 + s x)/C`. It is nonnegative
/// iff `lhs <= rhs`.
pub fn crossing_determinant(r: f64, c: f64, x: f64) -> Result<CrossingReport> {
    if !(x > 0.0 && x < 0.1) {
        return Err(Error::InvalidParameter(format!("x = {x} outside (0, 0.1)")));
    }
    if !(c > 1.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("C = {c} must exceed 1")));
    }
    let f = CrossingMap::new(r)?;
    let s = f.s()?;
    let z1 = Complex64::new(1.0 - x, 0.0);
    let z2 = Complex64::new(-1.0 + s * x, 0.0);
    if z2.norm() >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "s x = {} leaves the disc",
            s * x
        )));
    }
    let p1 = f.eval(z1)?;
    let p2 = f.eval(z2)?;
    let g1 = f.one_minus_norm_sq(z1)?;
    let g2 = f.one_minus_norm_sq(z2)?;
    let cross = (1.0 - inner(&p2, &p1)).norm_sqr();
    let (t1, t2) = (z1.re / c, z2.re / c);
    let a11 = (1.0 - t1 * t1) / g1;
    let a22 = (1.0 - t2 * t2) / g2;
    let a12 = (1.0 - t1 * t2) / (1.0 - inner(&p1, &p2));
    let det = a11 * a22 - a12.norm_sqr();
    let c2 = c * c;
    let lhs = (c2 + (1.0 - x) * (1.0 - s * x)).powi(2) * g1 * g2;
    let rhs = (c2 - (1.0 - x).powi(2)) * (c2 - (1.0 - s * x).powi(2)) * cross;
    Ok(CrossingReport {
        r,
        c,
        x,
        s,
        det,
        lhs,
        rhs,
        kernel_ratio: g1 * g2 / cross,
    })
}

/// The 2x2 Pick matrix of [`crossing_determinant`].
pub fn crossing_pick_problem(r: f64, c: f64, x: f64) -> Result<PickProblem> {
    let f = CrossingMap::new(r)?;
    let s = f.s()?;
    let z1 = Complex64::new(1.0 - x, 0.0);
    let z2 = Complex64::new(-1.0 + s * x, 0.0);
    PickProblem::new(
        Nodes::Ball(vec![f.point(z1)?, f.point(z2)?]),
        vec![z1 / c, z2 / c],
        PickKernel::DruryArveson,
    )
}
