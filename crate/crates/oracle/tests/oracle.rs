use singularhorn::cone::{InequalitySystem, Row};
use singularhorn::singular::{generate_singular_inequalities, singular_system, SingularMode};
use singularhorn_oracle::{
    check_samples, diag_embed, haar_unitary, realize, sample_matrix_sum, sample_singular_sum,
    trial_rng, verify_necessity, CMatrix, Complex, SearchOptions, CHECK_TOL,
};

fn system(p: usize, q: usize) -> InequalitySystem {
    let list = generate_singular_inequalities(p, q, SingularMode::GrassmannPairOne).unwrap();
    singular_system(q, &list).unwrap()
}

#[test]
fn zero_spectra_give_zero() {
    let samples = sample_singular_sum(&[0.0, 0.0], &[0.0, 0.0], 3, 2, 50, 1).unwrap();
    for s in samples {
        assert!(s.z_observed.iter().all(|z| z.abs() < 1e-12));
    }
}

#[test]
fn scalar_triangle_inequality() {
    for p in 1..=3 {
        let samples = sample_singular_sum(&[1.0], &[0.4], p, 1, 2000, 2).unwrap();
        for s in samples {
            let z = s.z_observed[0];
            assert!(z >= 0.6 - CHECK_TOL && z <= 1.4 + CHECK_TOL, "z = {z}");
        }
    }
}

#[test]
fn two_by_two_rank_one() {
    let report = verify_necessity(
        &system(2, 2),
        &[1.0, 0.0],
        &[1.0, 0.0],
        2,
        2,
        2000,
        CHECK_TOL,
        3,
    )
    .unwrap();
    assert_eq!(report.violations, 0, "{report:?}");
}

#[test]
fn empty_system_has_no_violations() {
    let report = verify_necessity(
        &InequalitySystem::new(6),
        &[2.0, 1.0],
        &[1.0, 1.0],
        3,
        2,
        100,
        CHECK_TOL,
        4,
    )
    .unwrap();
    assert_eq!(report.violations, 0);
    assert_eq!(report.trials, 100);
}

#[test]
fn negated_rows_are_flagged() {
    // a₁ + b₁ ≥ c₁ reversed: c₁ ≥ a₁ + b₁, false for almost every sample.
    let mut sys = InequalitySystem::new(3);
    sys.push_inequality(Row::from_integers("flipped", &[1, 1, -1], 0))
        .unwrap();
    let report = verify_necessity(&sys, &[1.0], &[1.0], 2, 1, 500, CHECK_TOL, 5).unwrap();
    assert!(report.violating_trials > 490, "{report:?}");
    assert_eq!(report.worst_label.as_deref(), Some("flipped"));
}

#[test]
fn seeds_are_reproducible() {
    let a = sample_singular_sum(&[3.0, 2.0, 1.0], &[1.0, 1.0, 0.0], 4, 3, 64, 7).unwrap();
    let b = sample_singular_sum(&[3.0, 2.0, 1.0], &[1.0, 1.0, 0.0], 4, 3, 64, 7).unwrap();
    assert_eq!(a, b);
    let serial: Vec<Vec<f64>> = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| {
            sample_singular_sum(&[3.0, 2.0, 1.0], &[1.0, 1.0, 0.0], 4, 3, 64, 7)
                .unwrap()
                .into_iter()
                .map(|s| s.z_observed)
                .collect()
        });
    assert_eq!(
        serial,
        a.iter().map(|s| s.z_observed.clone()).collect::<Vec<_>>()
    );
    let c = sample_singular_sum(&[3.0, 2.0, 1.0], &[1.0, 1.0, 0.0], 4, 3, 64, 8).unwrap();
    assert_ne!(a, c);
}

fn ks_statistic(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0f64);
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

#[test]
fn distribution_is_unitarily_invariant() {
    let (p, q) = (3, 2);
    let x = diag_embed(&[2.0, 0.5], p, q);
    let y = diag_embed(&[1.0, 1.0], p, q);
    // A fixed block unitary: a row permutation and a phase.
    let mut w = CMatrix::zeros(p, p);
    w[(0, 2)] = Complex::new(0.0, 1.0);
    w[(1, 0)] = Complex::new(1.0, 0.0);
    w[(2, 1)] = Complex::new(-1.0, 0.0);
    let rotated = &w * &x;
    let n = 1000;
    let base = sample_matrix_sum(&x, &y, n, 100);
    let moved = sample_matrix_sum(&rotated, &y, n, 200);
    // 1.95·√(2/n) is the 0.1% critical value of the two-sample test.
    let critical = 1.95 * (2.0 / n as f64).sqrt();
    for k in 0..q {
        let d = ks_statistic(
            base.iter().map(|z| z[k]).collect(),
            moved.iter().map(|z| z[k]).collect(),
        );
        assert!(d < critical, "coordinate {k}: D = {d}");
    }
    // Sanity: a different spectrum is detected.
    let other = sample_matrix_sum(&diag_embed(&[2.5, 0.5], p, q), &y, n, 300);
    let d = ks_statistic(
        base.iter().map(|z| z[0]).collect(),
        other.iter().map(|z| z[0]).collect(),
    );
    assert!(d > critical);
}

#[test]
fn replayed_sample_is_realized() {
    let (p, q) = (3, 3);
    let (x, y) = ([3.0, 2.0, 1.0], [2.0, 1.5, 0.5]);
    let sample = sample_singular_sum(&x, &y, p, q, 1, 9).unwrap().remove(0);
    let w = realize(
        &x,
        &y,
        &sample.z_observed,
        p,
        q,
        SearchOptions {
            seed: 1,
            ..Default::default()
        },
    )
    .unwrap()
    .expect("a replayed sample is realizable");
    assert!(w.residual < 1e-6);
    let got = singularhorn_oracle::singular_values(&(&w.a + &w.b));
    for (a, b) in got.iter().zip(&sample.z_observed) {
        assert!((a - b).abs() < 1e-6);
    }
    assert!(singularhorn_oracle::singular_values(&w.b)
        .iter()
        .zip(&y)
        .all(|(a, b)| (a - b).abs() < 1e-9));
}

#[test]
fn scalar_witnesses() {
    let opts = SearchOptions {
        seed: 2,
        ..Default::default()
    };
    let w = realize(&[1.0], &[1.0], &[2.0], 1, 1, opts)
        .unwrap()
        .expect("aligned factors");
    assert!(w.residual < 1e-6);
    assert!(realize(&[1.0], &[1.0], &[3.0], 1, 1, opts)
        .unwrap()
        .is_none());
    assert!(realize(&[1.0], &[1.0], &[3.0], 2, 1, opts)
        .unwrap()
        .is_none());
}

#[test]
fn haar_first_column_is_uniform_on_the_sphere() {
    // |u₁₁|² is Beta(1, n-1) under Haar measure; its mean is 1/n.
    let n = 4;
    let trials = 4000;
    let mean: f64 = (0..trials)
        .map(|t| haar_unitary(n, &mut trial_rng(11, t)).column(0)[0].norm_sqr())
        .sum::<f64>()
        / trials as f64;
    assert!((mean - 0.25).abs() < 0.02, "mean = {mean}");
}

#[test]
fn check_samples_reports_ranges() {
    let samples = sample_singular_sum(&[1.0], &[0.5], 2, 1, 200, 12).unwrap();
    let report = check_samples(&system(2, 1), &samples, CHECK_TOL).unwrap();
    assert_eq!(report.violations, 0);
    assert!(report.z_min[0] >= 0.5 - 1e-9 && report.z_max[0] <= 1.5 + 1e-9);
}
