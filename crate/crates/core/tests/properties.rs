use npdisc_core::csvio::{fmt_f64, parse_f64};
use npdisc_core::geometry::{mobius_auto, pseudo_dist};
use npdisc_core::pick::{raw_min_eigenvalue, Nodes};
use npdisc_core::*;
use proptest::prelude::*;

fn moduli() -> impl Strategy<Value = CoefficientSequence> {
    (prop::collection::vec(0.001f64..1.0, 1..80), 0.05f64..1.0).prop_map(|(raw, mass)| {
        let total: f64 = raw.iter().sum::<f64>().max(1e-300);
        CoefficientSequence::new(raw.iter().map(|v| v * mass / total).collect()).unwrap()
    })
}

fn disc_point() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.98, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn ball_point(dim: usize) -> impl Strategy<Value = BallPoint> {
    (
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim),
        0.0f64..0.98,
    )
        .prop_filter_map("nonzero direction", |(v, r)| {
            let v: Vec<Complex64> = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
            let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            (n > 1e-6).then(|| BallPoint::new(v.iter().map(|x| x * (r / n)).collect()).unwrap())
        })
}

proptest! {
    #[test]
    fn moduli_weights_round_trip(c in moduli()) {
        let n = c.len();
        let a = weights_from_moduli(&c, n).unwrap();
        let back = moduli_from_weights(&a, n).unwrap();
        for (x, y) in c.as_slice().iter().zip(back.as_slice()) {
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn weights_are_supermultiplicative_and_bounded(c in moduli()) {
        let a = weights_from_moduli(&c, 2 * c.len()).unwrap();
        prop_assert!(a.supermultiplicativity_defect().0 <= 1e-12);
        prop_assert!(a.as_slice().iter().all(|&v| v > 0.0 && v <= 1.0 + 1e-12));
    }

    #[test]
    fn generating_function_identity(c in moduli(), z in disc_point()) {
        let z = z * 0.5;
        let a = weights_from_moduli(&c, 160).unwrap();
        let wa = evaluate_generating(Generating::Weights(&a), z, 160).unwrap();
        let gc = evaluate_generating(Generating::Moduli(&c), z, 160).unwrap();
        prop_assert!((wa - gc).norm() < 1e-10 * gc.norm());
    }

    #[test]
    fn disc_metric_axioms(z in disc_point(), w in disc_point(), u in disc_point()) {
        let (a, b, c) = (
            DiscPoint::from_complex(z).unwrap(),
            DiscPoint::from_complex(w).unwrap(),
            DiscPoint::from_complex(u).unwrap(),
        );
        let d = a.pseudo_dist(&b);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!((d - b.pseudo_dist(&a)).abs() < 1e-14);
        prop_assert!(a.pseudo_dist(&a) == 0.0);
        // the pseudohyperbolic distance is a metric
        prop_assert!(a.pseudo_dist(&c) <= d + b.pseudo_dist(&c) + 1e-12);
        let naive = ((z - w) / (1.0 - w.conj() * z)).norm();
        prop_assert!((d - naive).abs() < 1e-12);
    }

    #[test]
    fn ball_mobius_is_involutive(z in ball_point(3), w in ball_point(3)) {
        let once = mobius_auto(&w, &z).unwrap();
        let twice = mobius_auto(&w, &once).unwrap();
        for (x, y) in twice.coords().iter().zip(z.coords()) {
            prop_assert!((x - y).norm() < 1e-9);
        }
        let origin = mobius_auto(&w, &w).unwrap();
        prop_assert!(origin.norm() < 1e-12);
        prop_assert!((pseudo_dist(&z, &w).unwrap() - pseudo_dist(&w, &z).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn szego_gram_is_psd(pts in prop::collection::vec(disc_point(), 1..12)) {
        let targets = vec![Complex64::new(0.0, 0.0); pts.len()];
        if let Ok(p) = PickProblem::hardy(&pts, targets) {
            let m = p.pick_matrix().unwrap();
            let v = psd_check(&m).unwrap();
            prop_assert!(v.verdict != Verdict::Indefinite, "{v:?}");
        }
    }

    #[test]
    fn shrinking_targets_raises_min_eigenvalue(
        pts in prop::collection::vec(disc_point(), 2..8),
        dirs in prop::collection::vec(disc_point(), 8),
    ) {
        let mut last = f64::NEG_INFINITY;
        for t in [1.0, 0.75, 0.5, 0.25, 0.0] {
            let w: Vec<Complex64> = dirs[..pts.len()].iter().map(|d| d * t).collect();
            let Ok(p) = PickProblem::hardy(&pts, w) else { return Ok(()); };
            let min = raw_min_eigenvalue(&p.pick_matrix().unwrap()).unwrap();
            prop_assert!(min >= last - 1e-9 * last.abs().max(1.0));
            last = min;
        }
    }

    #[test]
    fn two_point_hardy_pick(z1 in disc_point(), z2 in disc_point(), w1 in disc_point(), w2 in disc_point()) {
        let dz = DiscPoint::from_complex(z1).unwrap().pseudo_dist(&DiscPoint::from_complex(z2).unwrap());
        let dw = DiscPoint::from_complex(w1).unwrap().pseudo_dist(&DiscPoint::from_complex(w2).unwrap());
        prop_assume!((dz - dw).abs() > 1e-6 && dz > 1e-6);
        let p = PickProblem::hardy(&[z1, z2], vec![w1, w2]).unwrap();
        prop_assert_eq!(p.solvable().unwrap(), dw <= dz);
    }

    #[test]
    fn conjugation_is_an_involution(coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..20)) {
        let m = 256;
        let u = BoundarySampling::from_fn(m, |t| {
            coeffs.iter().enumerate().map(|(k, (a, b))| {
                let k = (k + 1) as f64;
                a * (k * t).cos() + b * (k * t).sin()
            }).sum()
        }).unwrap();
        let twice = harmonic_conjugate(&harmonic_conjugate(&u));
        for (x, y) in twice.values().iter().zip(u.values()) {
            prop_assert!((x + y).abs() < 1e-12);
        }
    }

    #[test]
    fn floats_round_trip_through_csv(v in any::<f64>()) {
        let back = parse_f64(&fmt_f64(v)).unwrap();
        prop_assert!(back == v || (v.is_nan() && back.is_nan()));
    }

    #[test]
    fn crossing_map_is_a_contraction(r in 0.05f64..0.95, z in disc_point(), w in disc_point()) {
        let f = CrossingMap::new(r).unwrap();
        let (a, b) = (f.point(z).unwrap(), f.point(w).unwrap());
        let image = pseudo_dist(&a, &b).unwrap();
        let source = DiscPoint::from_complex(z).unwrap().pseudo_dist(&DiscPoint::from_complex(w).unwrap());
        prop_assert!(image <= source * (1.0 + 1e-10) + 1e-15);
    }
}

#[test]
fn extractor_output_is_increasing() {
    use rand::SeedableRng;
    let seq = named_sequence("vn_quadratic", 1999).unwrap();
    let nodes = Nodes::Disc(seq.points().to_vec());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let ex = extract_interpolating_subsequence(&nodes, &PickKernel::DruryArveson, 0.5, 3, &mut rng)
        .unwrap();
    let idx = ex.indices();
    assert!(idx.windows(2).all(|w| w[0] < w[1]));
    assert!(idx.windows(2).any(|w| w[1] > w[0] + 1), "{idx:?}");
}
