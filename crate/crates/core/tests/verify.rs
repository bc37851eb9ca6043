use mlharm::familykit::{extremal_map, extreme_point, sufficiency_sum, ExtremeKind, FamilyWeights};
use mlharm::suite::{
    random_extremal_weights, random_family, random_member, random_member_with_b1, rng, Regime,
    DEFAULT_SEED,
};
use mlharm::verify::{
    halfplane_identity, max_modulus, quotient_min, verify_distortion, verify_distortion_with,
    verify_member, verify_member_with,
};
use mlharm::{Complex64, Exec, FamilyParams, HarmonicMap, MLParams, NegativeStyleMap, SampleGrid};
use rand::Rng;

#[test]
fn halfplane_identity_away_from_the_boundary() {
    let mut r = rng(DEFAULT_SEED);
    let mut checked = 0;
    while checked < 10_000 {
        let w = Complex64::new(r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0));
        let eta = r.gen_range(0.0..1.0);
        if (w.re - eta).abs() <= 1e-9 {
            continue;
        }
        assert!(halfplane_identity(w, eta), "w = {w}, eta = {eta}");
        checked += 1;
    }
}

#[test]
fn refinement_never_raises_the_minimum() {
    let mut r = rng(DEFAULT_SEED + 10);
    let mut grid = SampleGrid::new(vec![0.2, 0.5, 0.8, 0.95], 8).unwrap();
    for _ in 0..4 {
        let fine = grid.refined();
        for _ in 0..10 {
            let fp = random_family(&mut r, Regime::Ruscheweyh);
            let f = random_member(&mut r, &fp, 16).unwrap();
            let coarse_min = quotient_min(f.as_map(), &fp, &grid).unwrap();
            let fine_min = quotient_min(f.as_map(), &fp, &fine).unwrap();
            assert!(fine_min <= coarse_min);
        }
        grid = fine;
    }
}

#[test]
fn random_members_pass_sampled_verification() {
    let mut r = rng(DEFAULT_SEED + 11);
    let grid = SampleGrid::standard();
    for i in 0..100 {
        let fp = random_family(&mut r, Regime::Ruscheweyh);
        let order = r.gen_range(2..=32);
        let f: HarmonicMap = if i % 2 == 0 {
            extremal_map(&fp, &random_extremal_weights(&mut r, order)).unwrap()
        } else {
            random_member(&mut r, &fp, order).unwrap().into_map()
        };
        let report = verify_member(&f, &fp, &grid).unwrap();
        assert!(report.passed, "draw {i}: {report:?}");
    }
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let mut r = rng(DEFAULT_SEED + 12);
    let grid = SampleGrid::standard();
    for _ in 0..10 {
        let fp = random_family(&mut r, Regime::Ruscheweyh);
        let f = random_member(&mut r, &fp, 24).unwrap();
        let seq = verify_member_with(f.as_map(), &fp, &grid, Exec::Sequential).unwrap();
        let par = verify_member_with(f.as_map(), &fp, &grid, Exec::Parallel).unwrap();
        assert_eq!(seq, par);
        let trials = vec![f.clone()];
        let b1 = f.b_mag(1);
        let seq = verify_distortion_with(&fp, b1, &trials, &grid, Exec::Sequential).unwrap();
        let par = verify_distortion_with(&fp, b1, &trials, &grid, Exec::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}

#[test]
fn distortion_bounds_hold_on_random_members() {
    let mut r = rng(DEFAULT_SEED + 13);
    let grid = SampleGrid::standard();
    for _ in 0..10 {
        let fp = random_family(&mut r, Regime::Ruscheweyh);
        let weights = FamilyWeights::new(&fp, 32).unwrap();
        assert!(weights.is_monotone());
        let b1_max = (1.0 - fp.eta()) / weights.coanalytic(1);
        let b1 = r.gen_range(0.0..0.9 * b1_max.min(0.99));
        let trials: Vec<NegativeStyleMap> =
            (0..50).map(|_| random_member_with_b1(&mut r, &fp, b1, 32).unwrap()).collect();
        let report = verify_distortion(&fp, b1, &trials, &grid).unwrap();
        assert_eq!(report.distortion_violations, 0, "{fp:?} b1 = {b1}");
        assert_eq!(report.monotone_weights, Some(true));
    }
}

#[test]
fn second_extreme_point_saturates_the_upper_bound() {
    let fp = FamilyParams::new(1, 0, 0.0, MLParams::ruscheweyh()).unwrap();
    let h2 = extreme_point(&fp, ExtremeKind::H, 2).unwrap();
    let grid = SampleGrid::standard();
    let m = max_modulus(h2.as_map(), &grid, 0.5).unwrap();
    assert!((m - 0.625).abs() <= 1e-9);
}

/// With `α = β = γ = δ = 1` the weights fall off like `1/(k−1)!`, so the
/// sufficient coefficient condition no longer controls `Σ k |b_k|` and the
/// Jacobian can change sign inside the disc.
#[test]
fn sufficient_condition_needs_index_dominating_weights() {
    let fp = FamilyParams::new(1, 0, 0.0, MLParams::unit()).unwrap();
    let weights = FamilyWeights::new(&fp, 8).unwrap();
    assert!(!weights.dominates_index());
    assert!((weights.coanalytic(3) - 1.5).abs() <= 1e-14);
    let zero = Complex64::new(0.0, 0.0);
    let f = HarmonicMap::new(&[], &[zero, zero, Complex64::new(2.0 / 3.0, 0.0)], 1).unwrap();
    assert!(sufficiency_sum(&f, &fp).unwrap().is_member());
    // |h'| = 1 and |g'| = 2|z|^2, so the margin at r = 0.99 is 1 − 2·0.9801.
    let report = verify_member(&f, &fp, &SampleGrid::standard()).unwrap();
    assert!((report.min_sense_margin.unwrap() - (1.0 - 2.0 * 0.99f64.powi(2))).abs() <= 1e-12);
    assert!(!report.passed);

    let ruscheweyh = FamilyParams::new(1, 0, 0.0, MLParams::ruscheweyh()).unwrap();
    assert!(FamilyWeights::new(&ruscheweyh, 32).unwrap().dominates_index());
    let f = HarmonicMap::new(&[], &[zero, zero, Complex64::new(1.0 / 3.0, 0.0)], 1).unwrap();
    assert!(verify_member(&f, &ruscheweyh, &SampleGrid::standard()).unwrap().passed);
}
