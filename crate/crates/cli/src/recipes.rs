use npdisc_core::csvio::{fmt_f64, Table};
use npdisc_core::geometry::Curve;
use npdisc_core::kernels::Family;
use npdisc_core::pick::{crossing_determinant, random_targets, Nodes};
use npdisc_core::sequences::{named_sequence, DiscSequence};
use npdisc_core::tangential::{linear_fit, tangency_report_range};
use npdisc_core::{
    are_comparable, assemble_embedding, distortion_profile, extract_interpolating_subsequence,
    psd_check, Complex64, ConformalChain, CrossingMap, DiscIdentity, EmbeddedDisc, Error,
    KernelHandle, PickKernel, PickProblem, Result, Verdict,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::params::{Kind, Params, Spec};

pub type Run = fn(&Params, &mut ChaCha8Rng) -> Result<Table>;

pub struct Recipe {
    pub name: &'static str,
    pub summary: &'static str,
    /// Row order of the output.
    pub sort_key: &'static str,
    pub params: &'static [Spec],
    pub run: Run,
}

const fn spec(key: &'static str, kind: Kind, default: &'static str, help: &'static str) -> Spec {
    Spec {
        key,
        kind,
        default,
        help,
    }
}

pub const RECIPES: &[Recipe] = &[
    Recipe {
        name: "classify",
        summary: "kernel weights, moduli, renewal limit and isomorphism tests for one family",
        sort_key: "single row",
        params: &[
            spec(
                "family",
                Kind::Text,
                "hs:-0.5",
                "hardy, hs:<s>, geom:<q> or custom:<path to n,value moduli csv>",
            ),
            spec("N", Kind::Int, "1024", "truncation length"),
        ],
        run: classify,
    },
    Recipe {
        name: "compare",
        summary: "whether two weight sequences are comparable (isomorphic multiplier algebras)",
        sort_key: "single row",
        params: &[
            spec("a", Kind::Text, "hardy", "first family tag"),
            spec("b", Kind::Text, "hs:-0.5", "second family tag"),
            spec("N", Kind::Int, "1024", "truncation length"),
        ],
        run: compare,
    },
    Recipe {
        name: "pick-check",
        summary: "positivity of the nested Pick matrices of a named sequence",
        sort_key: "k",
        params: &[
            spec(
                "tag",
                Kind::Text,
                "vn_quadratic",
                "vn_quadratic, wn_gaussian, xn_alternating or dyadic_separated",
            ),
            spec("N", Kind::Int, "12", "number of nodes"),
            spec(
                "targets",
                Kind::Text,
                "alternating",
                "zero, alternating (+-r) or random (|w| <= r)",
            ),
            spec("r", Kind::Real, "0.5", "target bound"),
            spec("kernel", Kind::Text, "szego", "szego or a family tag"),
        ],
        run: pick_check,
    },
    Recipe {
        name: "interp-extract",
        summary: "greedy extraction of a subsequence with positive definite nested Pick matrices",
        sort_key: "k",
        params: &[
            spec(
                "tag",
                Kind::Text,
                "wn_gaussian",
                "named sequence supplying the candidates",
            ),
            spec("N", Kind::Int, "40", "number of candidates"),
            spec("r", Kind::Real, "0.5", "target bound"),
            spec("k_max", Kind::Int, "10", "indices to extract"),
            spec("kernel", Kind::Text, "szego", "szego or a family tag"),
        ],
        run: interp_extract,
    },
    Recipe {
        name: "crossing",
        summary: "two-point Pick determinant of the crossing embedding",
        sort_key: "r, C, x",
        params: &[
            spec("r", Kind::Reals, "0.3,0.5,0.7", "Blaschke zero(s)"),
            spec(
                "C",
                Kind::Reals,
                "1.5,2,5,20",
                "candidate multiplier norm(s)",
            ),
            spec(
                "x",
                Kind::Reals,
                "1e-2,1e-3,1e-4",
                "distance(s) from the boundary",
            ),
        ],
        run: crossing,
    },
    Recipe {
        name: "distortion",
        summary: "source and image pseudohyperbolic distances under a map into the ball",
        sort_key: "input order",
        params: &[
            spec(
                "map",
                Kind::Text,
                "crossing",
                "crossing, identity, tangential or a family tag",
            ),
            spec(
                "r",
                Kind::Real,
                "0.5",
                "crossing zero, or clip parameter for tangential",
            ),
            spec(
                "x",
                Kind::Reals,
                "1e-2,1e-3,1e-4",
                "crossing pairs (1-x, -1+sx)",
            ),
            spec(
                "pairs",
                Kind::Int,
                "0",
                "random pairs instead of crossing pairs when > 0",
            ),
            spec(
                "radius",
                Kind::Real,
                "0.95",
                "radius of the disc for random pairs",
            ),
            spec("m", Kind::Int, "4096", "grid size for tangential"),
        ],
        run: distortion,
    },
    Recipe {
        name: "carleson",
        summary: "Carleson box ratios on the boxes over [0, 2^-p)",
        sort_key: "p",
        params: &[
            spec("tag", Kind::Text, "dyadic_separated", "named sequence"),
            spec(
                "N",
                Kind::Int,
                "24",
                "sequence length (generations for the dyadic sequence)",
            ),
            spec("p_max", Kind::Int, "10", "largest box exponent"),
        ],
        run: carleson,
    },
    Recipe {
        name: "separation",
        summary: "separation, strong separation products and interpolation budgets",
        sort_key: "n",
        params: &[
            spec("tag", Kind::Text, "vn_quadratic", "named sequence"),
            spec("N", Kind::Int, "50", "sequence length"),
        ],
        run: separation,
    },
    Recipe {
        name: "tangential-embed",
        summary: "boundary samples of the tangential embedding",
        sort_key: "t",
        params: &[
            spec("r", Kind::Real, "0.75", "clip parameter in (2/3, 1)"),
            spec("m", Kind::Int, "4096", "grid size (power of two)"),
        ],
        run: tangential_embed,
    },
    Recipe {
        name: "tangency-report",
        summary: "both tangential ratios along x = 1 - 2^-j",
        sort_key: "x",
        params: &[
            spec("map", Kind::Text, "tangential", "tangential or hs:<s>"),
            spec("r", Kind::Real, "0.75", "clip parameter in (2/3, 1)"),
            spec("m", Kind::Int, "4096", "grid size (power of two)"),
            spec("j_min", Kind::Int, "4", "first exponent"),
            spec("j_max", Kind::Int, "14", "last exponent"),
            spec("fit_min", Kind::Int, "6", "first exponent used in the fit"),
        ],
        run: tangency,
    },
];

pub fn find(name: &str) -> Option<&'static Recipe> {
    RECIPES.iter().find(|r| r.name == name)
}

fn kernel_handle(tag: &str, len: usize) -> Result<KernelHandle> {
    KernelHandle::parse(tag, len)
}

fn pick_kernel(tag: &str, len: usize) -> Result<PickKernel> {
    if tag == "szego" {
        Ok(PickKernel::DruryArveson)
    } else {
        Ok(PickKernel::Handle(kernel_handle(tag, len)?))
    }
}

fn bad(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

fn classify(p: &Params, _: &mut ChaCha8Rng) -> Result<Table> {
    let n = p.int("N");
    let report = kernel_handle(p.text("family"), n)?.classify(n)?;
    let mut t = Table::new(&npdisc_core::ClassificationReport::HEADER);
    t.push(report.csv_row());
    Ok(t)
}

fn compare(p: &Params, _: &mut ChaCha8Rng) -> Result<Table> {
    let n = p.int("N");
    let a = kernel_handle(p.text("a"), n)?;
    let b = kernel_handle(p.text("b"), n)?;
    let rep = are_comparable(a.weights(), b.weights(), n)?;
    let mut t = Table::new(&["a", "b", "N", "min_ratio", "max_ratio", "drift", "verdict"]);
    t.push(vec![
        a.tag(),
        b.tag(),
        n.to_string(),
        fmt_f64(rep.min_ratio),
        fmt_f64(rep.max_ratio),
        fmt_f64(rep.drift),
        rep.verdict.to_string(),
    ]);
    Ok(t)
}

fn targets(kind: &str, n: usize, r: f64, rng: &mut ChaCha8Rng) -> Result<Vec<Complex64>> {
    if !(0.0..1.0).contains(&r) {
        return Err(bad(format!("target bound r = {r} outside [0, 1)")));
    }
    Ok(match kind {
        "zero" => vec![Complex64::new(0.0, 0.0); n],
        "alternating" => (0..n)
            .map(|i| Complex64::new(if i % 2 == 0 { r } else { -r }, 0.0))
            .collect(),
        "random" => random_targets(n, r, rng),
        _ => return Err(bad(format!("unknown target kind `{kind}`"))),
    })
}

fn sequence(p: &Params) -> Result<DiscSequence> {
    named_sequence(p.text("tag"), p.int("N"))
}

fn pick_check(p: &Params, rng: &mut ChaCha8Rng) -> Result<Table> {
    let seq = sequence(p)?;
    let pts = seq.points().to_vec();
    let kernel = pick_kernel(p.text("kernel"), 512)?;
    let w = targets(p.text("targets"), pts.len(), p.real("r"), rng)?;
    let mut t = Table::new(&[
        "k",
        "point_norm",
        "target_re",
        "target_im",
        "min_eigenvalue",
        "matrix_scale",
        "verdict",
        "solvable",
    ]);
    for k in 1..=pts.len() {
        let problem = PickProblem::new(
            Nodes::Disc(pts[..k].to_vec()),
            w[..k].to_vec(),
            kernel.clone(),
        )?;
        let v = psd_check(&problem.pick_matrix()?)?;
        t.push(vec![
            k.to_string(),
            fmt_f64(pts[k - 1].modulus()),
            fmt_f64(w[k - 1].re),
            fmt_f64(w[k - 1].im),
            fmt_f64(v.min_eigenvalue),
            fmt_f64(v.matrix_scale),
            v.verdict.to_string(),
            (v.verdict != Verdict::Indefinite).to_string(),
        ]);
    }
    Ok(t)
}

fn interp_extract(p: &Params, rng: &mut ChaCha8Rng) -> Result<Table> {
    let seq = sequence(p)?;
    let nodes = Nodes::Disc(seq.points().to_vec());
    let kernel = pick_kernel(p.text("kernel"), 512)?;
    let ex = extract_interpolating_subsequence(&nodes, &kernel, p.real("r"), p.int("k_max"), rng)?;
    let mut t = Table::new(&[
        "k",
        "index",
        "point_norm",
        "min_eigenvalue",
        "delta_hat",
        "rule",
    ]);
    for s in &ex.steps {
        t.push(vec![
            s.k.to_string(),
            s.index.to_string(),
            fmt_f64(s.point_norm),
            fmt_f64(s.min_eigenvalue),
            fmt_f64(s.delta_hat),
            s.rule.to_string(),
        ]);
    }
    Ok(t)
}

fn crossing(p: &Params, _: &mut ChaCha8Rng) -> Result<Table> {
    let mut t = Table::new(&[
        "r",
        "C",
        "x",
        "s",
        "det",
        "lhs",
        "rhs",
        "kernel_ratio",
        "indefinite",
    ]);
    for r in p.reals("r") {
        for c in p.reals("C") {
            for x in p.reals("x") {
                let rep = crossing_determinant(r, c, x)?;
                let mut row: Vec<String> = [
                    rep.r,
                    rep.c,
                    rep.x,
                    rep.s,
                    rep.det,
                    rep.lhs,
                    rep.rhs,
                    rep.kernel_ratio,
                ]
                .iter()
                .map(|&v| fmt_f64(v))
                .collect();
                row.push((rep.det < 0.0).to_string());
                t.push(row);
            }
        }
    }
    Ok(t)
}

fn curve(p: &Params) -> Result<Box<dyn Curve>> {
    Ok(match p.text("map") {
        "crossing" => Box::new(CrossingMap::new(p.real("r"))?),
        "identity" => Box::new(DiscIdentity),
        "tangential" => Box::new(assemble_embedding(
            &ConformalChain::new(p.real("r"))?,
            p.int("m"),
        )?),
        tag => Box::new(EmbeddedDisc::from_kernel(&kernel_handle(tag, 256)?)?),
    })
}

fn distortion(p: &Params, rng: &mut ChaCha8Rng) -> Result<Table> {
    let f = curve(p)?;
    let count = p.int("pairs");
    let pairs: Vec<(Complex64, Complex64)> = if count > 0 {
        let radius = p.real("radius");
        if !(radius > 0.0 && radius < 1.0) {
            return Err(bad(format!("radius {radius} outside (0, 1)")));
        }
        let mut draw = || {
            Complex64::from_polar(
                radius * rng.random::<f64>().sqrt(),
                rng.random_range(0.0..std::f64::consts::TAU),
            )
        };
        (0..count).map(|_| (draw(), draw())).collect()
    } else {
        if p.text("map") != "crossing" {
            return Err(bad(
                "pairs=0 selects crossing pairs, which need map=crossing".into(),
            ));
        }
        let s = CrossingMap::new(p.real("r"))?.s()?;
        p.reals("x")
            .iter()
            .map(|&x| {
                (
                    Complex64::new(1.0 - x, 0.0),
                    Complex64::new(-1.0 + s * x, 0.0),
                )
            })
            .collect()
    };
    let prof = distortion_profile(f.as_ref(), &pairs)?;
    let mut t = Table::new(&[
        "lambda_re",
        "lambda_im",
        "mu_re",
        "mu_im",
        "d_source",
        "d_image",
        "ratio",
    ]);
    t.comment(format!("map={}", f.label()));
    t.comment(format!("min_ratio={}", fmt_f64(prof.min_ratio)));
    t.comment(format!("max_ratio={}", fmt_f64(prof.max_ratio)));
    for ((l, m), (ds, di)) in pairs.iter().zip(&prof.pairs) {
        t.push_f64(&[l.re, l.im, m.re, m.im, *ds, *di, di / ds]);
    }
    Ok(t)
}

fn carleson(p: &Params, _: &mut ChaCha8Rng) -> Result<Table> {
    let seq = sequence(p)?;
    let mut t = Table::new(&["p", "ratio", "p_plus_one"]);
    for q in 1..=p.int("p_max") as u32 {
        t.push(vec![
            q.to_string(),
            fmt_f64(seq.carleson_ratio(q)?),
            (q + 1).to_string(),
        ]);
    }
    Ok(t)
}

fn separation(p: &Params, _: &mut ChaCha8Rng) -> Result<Table> {
    let seq = sequence(p)?;
    let sum = seq.blaschke_sum();
    separation_table(&seq, sum.total, sum.converging)
}

fn separation_table(seq: &DiscSequence, total: f64, converging: bool) -> Result<Table> {
    let mut t = Table::new(&[
        "n",
        "defect",
        "gap",
        "ln_delta",
        "delta",
        "underflow",
        "garnett_budget",
    ]);
    t.comment(format!("blaschke_sum={}", fmt_f64(total)));
    t.comment(format!("blaschke_converging={converging}"));
    if seq.len() >= 2 {
        let (separated, gap) = seq.is_separated()?;
        t.comment(format!("separated={separated}"));
        t.comment(format!("inf_gap={}", fmt_f64(gap)));
    }
    let budgets = seq.garnett_targets();
    for (d, b) in seq.separation_deltas().iter().zip(&budgets) {
        t.push(vec![
            (d.index + 1).to_string(),
            fmt_f64(seq.points()[d.index].defect()),
            fmt_f64(d.gap),
            fmt_f64(d.ln_delta),
            fmt_f64(d.delta),
            d.underflow.to_string(),
            fmt_f64(b.budget),
        ]);
    }
    Ok(t)
}

fn tangential_embed(p: &Params, _: &mut ChaCha8Rng) -> Result<Table> {
    let f = assemble_embedding(&ConformalChain::new(p.real("r"))?, p.int("m"))?;
    let mut t = Table::new(&["t", "u1", "u1_tilde", "|f1|", "|f2|", "sphere_defect"]);
    t.comment(format!("max_sphere_defect={}", fmt_f64(f.sphere_defect())));
    for row in f.grid_table() {
        t.push_f64(&[
            row.t,
            row.u1,
            row.u1_tilde,
            row.f1_abs,
            row.f2_abs,
            row.sphere_defect,
        ]);
    }
    Ok(t)
}

fn tangency(p: &Params, _: &mut ChaCha8Rng) -> Result<Table> {
    let (j_min, j_max, fit_min) = (
        p.int("j_min") as i32,
        p.int("j_max") as i32,
        p.int("fit_min") as i32,
    );
    if !(1 <= j_min && j_min < j_max && j_max <= 40 && (j_min..j_max).contains(&fit_min)) {
        return Err(bad(format!(
            "need 1 <= j_min < j_max <= 40 and j_min <= fit_min < j_max, got {j_min}, {j_max}, {fit_min}"
        )));
    }
    let mut t = Table::new(&["x", "ratio1", "ratio2"]);
    match p.text("map") {
        "tangential" => {
            let f = assemble_embedding(&ConformalChain::new(p.real("r"))?, p.int("m"))?;
            let rep = tangency_report_range(&f, j_min..=j_max, fit_min..=j_max)?;
            t.comment(format!("ratio1_decreasing={}", rep.ratio1_decreasing));
            t.comment(format!("ratio2_increasing={}", rep.ratio2_increasing));
            t.comment(format!("fit_slope={}", fmt_f64(rep.fit_slope)));
            t.comment(format!("fit_intercept={}", fmt_f64(rep.fit_intercept)));
            t.comment(format!("fit_correlation={}", fmt_f64(rep.fit_correlation)));
            for (x, r1, r2, _) in rep.rows {
                t.push_f64(&[x, r1, r2]);
            }
        }
        tag => {
            let k = kernel_handle(tag, 64)?;
            if !matches!(k.family(), Family::Hs(_)) {
                return Err(bad(format!("map `{tag}` is neither tangential nor hs:<s>")));
            }
            let e = EmbeddedDisc::from_kernel(&k)?;
            let (mut xs, mut ys) = (Vec::new(), Vec::new());
            for j in j_min..=j_max {
                let gap = 2f64.powi(-j);
                let (r1, r2) = e.tangential_ratio(1.0 - gap, 0.0)?;
                if j >= fit_min {
                    xs.push(gap.ln());
                    ys.push(r1.ln());
                }
                t.push_f64(&[1.0 - gap, r1, r2]);
            }
            let (slope, intercept, corr) = linear_fit(&xs, &ys);
            t.comment(format!("ratio1_loglog_slope={}", fmt_f64(slope)));
            t.comment(format!("ratio1_loglog_intercept={}", fmt_f64(intercept)));
            t.comment(format!("ratio1_loglog_correlation={}", fmt_f64(corr)));
        }
    }
    Ok(t)
}
