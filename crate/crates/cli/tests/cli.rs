use std::process::{Command, Output};

use npdisc_core::csvio::Table;

fn npdisclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_npdisclab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SMALL: &[&[&str]] = &[
    &["classify", "family=hs:-0.5", "N=128"],
    &["compare", "a=hardy", "b=hs:-1", "N=128"],
    &["pick-check", "tag=wn_gaussian", "N=6", "targets=random"],
    &["interp-extract", "k_max=4"],
    &["crossing", "r=0.5", "C=2,5"],
    &["distortion", "map=hs:-0.5", "pairs=16"],
    &["carleson", "N=12", "p_max=5"],
    &["separation", "tag=wn_gaussian", "N=8"],
    &["tangential-embed", "m=512"],
    &["tangency-report", "m=512", "j_max=10"],
];

#[test]
fn reproducible_runs_are_byte_identical() {
    for args in SMALL {
        let mut full = args.to_vec();
        full.extend(["--seed", "7", "--reproducible"]);
        let (a, b) = (npdisclab(&full), npdisclab(&full));
        assert!(
            a.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!stdout(&a).contains("timestamp="));
    }
}

#[test]
fn output_parses_back_with_metadata() {
    for args in SMALL {
        let mut full = args.to_vec();
        full.extend(["--seed", "11"]);
        let out = npdisclab(&full);
        let t = Table::parse(&stdout(&out)).unwrap();
        assert_eq!(t.meta("recipe"), Some(args[0]));
        assert_eq!(t.meta("seed"), Some("11"));
        assert!(t.meta("timestamp").is_some());
        assert!(!t.rows.is_empty());
        for row in &t.rows {
            assert_eq!(row.len(), t.header.len());
        }
    }
}

#[test]
fn seed_changes_random_recipes() {
    let run = |seed: &str| {
        npdisclab(&[
            "distortion",
            "map=identity",
            "pairs=4",
            "--seed",
            seed,
            "--reproducible",
        ])
        .stdout
    };
    assert_ne!(run("1"), run("2"));
}

#[test]
fn documented_examples() {
    let t = Table::parse(&stdout(&npdisclab(&[
        "run",
        "recipe=classify",
        "family=hs:-0.5",
        "N=4096",
    ])))
    .unwrap();
    let col = t.column_index("iso_to_hinf").unwrap();
    assert_eq!(t.rows[0][col], "false");

    let t = Table::parse(&stdout(&npdisclab(&[
        "run",
        "recipe=crossing",
        "r=0.5",
        "C=2",
        "x=1e-4",
    ])))
    .unwrap();
    assert!(t.column_f64("det").unwrap()[0] < 0.0);

    let t = Table::parse(&stdout(&npdisclab(&[
        "run",
        "recipe=carleson",
        "tag=dyadic_separated",
        "p_max=10",
    ])))
    .unwrap();
    let ratios = t.column_f64("ratio").unwrap();
    for (p, r) in ratios.iter().enumerate() {
        assert!(*r >= (p + 2) as f64);
    }
}

#[test]
fn catalog_without_arguments() {
    let out = npdisclab(&[]);
    assert!(out.status.success());
    let text = stdout(&out);
    let listed = text.lines().filter(|l| l.starts_with("  ")).count();
    assert_eq!(listed, 10);
    assert_eq!(stdout(&npdisclab(&["list"])), text);
}

#[test]
fn recipe_help_lists_parameters() {
    let out = npdisclab(&["crossing", "--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for key in ["r ", "C ", "x "] {
        assert!(text.contains(key), "{text}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(npdisclab(&["no-such-recipe"]).status.code(), Some(2));
    assert_eq!(npdisclab(&["run", "recipe=nope"]).status.code(), Some(2));
    assert_eq!(npdisclab(&["crossing", "C=two"]).status.code(), Some(3));
    assert_eq!(
        npdisclab(&["crossing", "colour=red"]).status.code(),
        Some(3)
    );
    assert_eq!(
        npdisclab(&["crossing", "--seed", "-1"]).status.code(),
        Some(3)
    );
    assert_eq!(
        npdisclab(&["separation", "tag=unknown"]).status.code(),
        Some(3)
    );
    assert_eq!(npdisclab(&["crossing", "C=0.5"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing").join("out.csv");
    assert_eq!(
        npdisclab(&["crossing", "--out", missing.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let out = npdisclab(&[
        "crossing",
        "r=0.3",
        "--out",
        path.to_str().unwrap(),
        "--reproducible",
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let t = Table::read(&path).unwrap();
    assert_eq!(t.rows.len(), 12);
    assert_eq!(t.meta("param.r"), Some("0.3"));
}
