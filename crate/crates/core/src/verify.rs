//! Sampled checks of the analytic statements behind the coefficient tests.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::familykit::{distortion_factor, sufficiency_sum};
use crate::grid::SampleGrid;
use crate::harmonic::{HarmonicMap, NegativeStyleMap};
use crate::operator::{apply_operator, FamilyParams};

/// Slack for sampled membership checks.
pub const SAMPLE_TOL: f64 = 1e-8;
/// Slack for bound-saturation checks.
pub const SATURATION_TOL: f64 = 1e-9;
/// Denominators at or below this magnitude are reported as degenerate.
pub const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub min_quotient_re: Option<f64>,
    pub min_sense_margin: Option<f64>,
    pub distortion_violations: usize,
    pub worst_point: Option<Complex64>,
    pub passed: bool,
    pub tolerance: f64,
    /// Whether the combined weights satisfied the monotonicity precondition
    /// of the distortion bounds; `None` when not applicable.
    pub monotone_weights: Option<bool>,
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| x.to_string())
}

impl VerificationReport {
    /// `key = value` lines in fixed order.
    pub fn to_key_values(&self) -> String {
        let worst =
            self.worst_point.map_or_else(|| "n/a".to_string(), |z| format!("{},{}", z.re, z.im));
        let monotone = self.monotone_weights.map_or_else(|| "n/a".to_string(), |b| b.to_string());
        format!(
            "min_quotient_re = {}\nmin_sense_margin = {}\ndistortion_violations = {}\n\
             worst_point = {}\npassed = {}\ntolerance = {}\nmonotone_weights = {}\n",
            opt(self.min_quotient_re),
            opt(self.min_sense_margin),
            self.distortion_violations,
            worst,
            self.passed,
            self.tolerance,
            monotone
        )
    }
}

/// Smallest sampled `Re(Φ^m f / Φ^n f)` and the point where it occurs.
pub fn quotient_scan(
    f: &HarmonicMap,
    fp: &FamilyParams,
    grid: &SampleGrid,
    exec: Exec,
) -> Result<(f64, Complex64)> {
    let upper = apply_operator(f, fp.ml(), fp.m())?;
    let lower = apply_operator(f, fp.ml(), fp.n())?;
    let points = grid.points();
    let samples = exec.map(&points, |&z| -> Result<Option<f64>> {
        let den = lower.eval(z)?;
        if den.norm() <= DEGENERATE_TOL {
            return Ok(None);
        }
        Ok(Some((upper.eval(z)? / den).re))
    });

    let mut degenerate = Vec::new();
    let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for (z, s) in points.iter().zip(samples) {
        match s? {
            None => degenerate.push(*z),
            Some(v) if v < best.0 => best = (v, *z),
            Some(_) => {}
        }
    }
    if !degenerate.is_empty() {
        return Err(Error::DegenerateDenominator { points: degenerate });
    }
    Ok(best)
}

pub fn quotient_min(f: &HarmonicMap, fp: &FamilyParams, grid: &SampleGrid) -> Result<f64> {
    quotient_scan(f, fp, grid, Exec::default()).map(|(v, _)| v)
}

/// Whether `Re(w) > η` and `|1 − η + w| ≥ |1 + η − w|` agree at `(w, η)`.
pub fn halfplane_identity(w: Complex64, eta: f64) -> bool {
    let lhs = w.re > eta;
    let rhs = (w + (1.0 - eta)).norm() >= ((1.0 + eta) - w).norm();
    lhs == rhs
}

pub fn verify_member(
    f: &HarmonicMap,
    fp: &FamilyParams,
    grid: &SampleGrid,
) -> Result<VerificationReport> {
    verify_member_with(f, fp, grid, Exec::default())
}

/// Samples the quotient real part and the sense-preserving margin of a map
/// that satisfies the sufficient coefficient condition.
pub fn verify_member_with(
    f: &HarmonicMap,
    fp: &FamilyParams,
    grid: &SampleGrid,
    exec: Exec,
) -> Result<VerificationReport> {
    if !sufficiency_sum(f, fp)?.is_member() {
        return Err(Error::precondition(
            "map does not satisfy the sufficient coefficient condition",
        ));
    }
    verify_sampled(f, fp, grid, exec)
}

/// The sampled checks of [`verify_member`] without the coefficient
/// precondition; used to exhibit maps outside the family.
pub fn verify_sampled(
    f: &HarmonicMap,
    fp: &FamilyParams,
    grid: &SampleGrid,
    exec: Exec,
) -> Result<VerificationReport> {
    let (q, worst) = quotient_scan(f, fp, grid, exec)?;
    let sense = f.sense_preserving_margin_with(grid, exec)?;
    Ok(VerificationReport {
        min_quotient_re: Some(q),
        min_sense_margin: Some(sense),
        distortion_violations: 0,
        worst_point: Some(worst),
        passed: q > fp.eta() - SAMPLE_TOL && sense > -SAMPLE_TOL,
        tolerance: SAMPLE_TOL,
        monotone_weights: None,
    })
}

pub fn verify_distortion(
    fp: &FamilyParams,
    b1: f64,
    trials: &[NegativeStyleMap],
    grid: &SampleGrid,
) -> Result<VerificationReport> {
    verify_distortion_with(fp, b1, trials, grid, Exec::default())
}

/// Counts `(trial, radius)` pairs where the sampled extremes of `|f|` on the
/// circle escape the distortion bounds by more than the saturation slack.
pub fn verify_distortion_with(
    fp: &FamilyParams,
    b1: f64,
    trials: &[NegativeStyleMap],
    grid: &SampleGrid,
    exec: Exec,
) -> Result<VerificationReport> {
    let (w, monotone) = distortion_factor(fp, b1)?;
    for (j, f) in trials.iter().enumerate() {
        if (f.b_mag(1) - b1).abs() > 1e-12 {
            return Err(Error::precondition(format!("trial {j} has |b_1| = {}", f.b_mag(1))));
        }
    }

    let mut tasks = Vec::with_capacity(trials.len() * grid.radii().len());
    for f in trials {
        for &r in grid.radii() {
            tasks.push((f, r));
        }
    }
    let outcomes = exec.map(&tasks, |&(f, r)| -> Result<(f64, Complex64)> {
        let lower = (1.0 - b1) * r - w * r * r;
        let upper = (1.0 + b1) * r + w * r * r;
        // Largest excess over either bound on this circle.
        let mut worst = (f64::NEG_INFINITY, Complex64::new(r, 0.0));
        for z in grid.circle(r) {
            let size = f.eval(z)?.norm();
            let excess = (size - upper).max(lower - size);
            if excess > worst.0 {
                worst = (excess, z);
            }
        }
        Ok(worst)
    });

    let mut violations = 0;
    let mut worst: Option<(f64, Complex64)> = None;
    for outcome in outcomes {
        let (excess, z) = outcome?;
        if excess > SATURATION_TOL {
            violations += 1;
        }
        if worst.is_none_or(|(e, _)| excess > e) {
            worst = Some((excess, z));
        }
    }
    Ok(VerificationReport {
        min_quotient_re: None,
        min_sense_margin: None,
        distortion_violations: violations,
        worst_point: worst.map(|(_, z)| z),
        passed: violations == 0,
        tolerance: SATURATION_TOL,
        monotone_weights: Some(monotone),
    })
}

/// Largest sampled `|f|` on the circle of radius `r`.
pub fn max_modulus(f: &HarmonicMap, grid: &SampleGrid, r: f64) -> Result<f64> {
    grid.circle(r).into_iter().try_fold(0.0_f64, |acc, z| Ok(acc.max(f.eval(z)?.norm())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::familykit::{extremal_map, extreme_point, ExtremalWeights, ExtremeKind};
    use crate::specfun::MLParams;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rus(m: u32, n: u32, eta: f64) -> FamilyParams {
        FamilyParams::new(m, n, eta, MLParams::ruscheweyh()).unwrap()
    }

    fn grid_to(r_max: f64) -> SampleGrid {
        let mut radii: Vec<f64> = (1..=8).map(|i| i as f64 / 10.0).collect();
        radii.push(r_max);
        SampleGrid::new(radii, 64).unwrap()
    }

    #[test]
    fn identity_quotient_is_one() {
        let v = quotient_min(&HarmonicMap::identity(), &rus(3, 1, 0.2), &SampleGrid::standard());
        assert_eq!(v.unwrap(), 1.0);
        let r = verify_member(&HarmonicMap::identity(), &rus(1, 0, 0.0), &SampleGrid::standard())
            .unwrap();
        assert!(r.passed);
        assert_eq!(r.min_quotient_re, Some(1.0));
        assert_eq!(r.min_sense_margin, Some(1.0));
    }

    #[test]
    fn quotient_minimum_on_negative_axis() {
        let f = HarmonicMap::new(&[c(0.25, 0.0)], &[], 1).unwrap();
        let (v, z) = quotient_scan(&f, &rus(1, 0, 0.0), &grid_to(0.99), Exec::default()).unwrap();
        let want = (1.0 - 0.495) / (1.0 - 0.2475);
        assert!((v - want).abs() < 1e-12, "{v} vs {want}");
        assert!((z - c(-0.99, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn boundary_extremal_approaches_eta() {
        let fp = rus(1, 0, 0.0);
        let w = ExtremalWeights::new(vec![c(1.0, 0.0)], vec![]).unwrap();
        let f = extremal_map(&fp, &w).unwrap();
        let coarse = quotient_min(&f, &fp, &grid_to(0.9)).unwrap();
        let fine = quotient_min(&f, &fp, &grid_to(0.999)).unwrap();
        // (1 − r) / (1 − r/2) along the negative real axis
        assert!(fine >= 0.0 && fine < coarse);
        assert!((fine - 0.001 / 0.5005).abs() < 1e-12);
    }

    #[test]
    fn degenerate_denominator_is_reported() {
        // z + 2z² vanishes at z = −1/2.
        let f = HarmonicMap::new(&[c(2.0, 0.0)], &[], 1).unwrap();
        let grid = SampleGrid::new(vec![0.5], 4).unwrap();
        let err = quotient_min(&f, &rus(1, 0, 0.0), &grid).unwrap_err();
        match err {
            Error::DegenerateDenominator { points } => {
                assert_eq!(points.len(), 1);
                assert!((points[0] - c(-0.5, 0.0)).norm() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn halfplane_examples() {
        assert!(halfplane_identity(c(1.0, 0.0), 0.0));
        // Boundary: Re(w) = η makes the strict side false and the non-strict side true.
        assert!(!halfplane_identity(c(0.3, 0.7), 0.3));
    }

    #[test]
    fn violator_fails_verification() {
        let fp = rus(1, 0, 0.5);
        let f = NegativeStyleMap::new(&[0.8], &[], 1).unwrap();
        assert!(verify_member(f.as_map(), &fp, &SampleGrid::standard()).is_err());
        let r = verify_sampled(f.as_map(), &fp, &SampleGrid::standard(), Exec::default()).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn distortion_identity_and_saturation() {
        let fp = rus(1, 0, 0.0);
        let grid = SampleGrid::standard();
        let id = NegativeStyleMap::identity(1).unwrap().with_truncation(4).unwrap();
        let r = verify_distortion(&fp, 0.0, &[id], &grid).unwrap();
        assert_eq!(r.distortion_violations, 0);
        assert!(r.passed);

        let h2 = extreme_point(&fp, ExtremeKind::H, 2).unwrap();
        let m = max_modulus(h2.as_map(), &grid, 0.5).unwrap();
        assert!((m - 0.625).abs() <= SATURATION_TOL);
        let r = verify_distortion(&fp, 0.0, std::slice::from_ref(&h2), &grid).unwrap();
        assert!(r.passed);

        assert!(verify_distortion(&fp, 0.1, &[h2], &grid).is_err());
    }

    #[test]
    fn report_serialization_order() {
        let r = verify_member(&HarmonicMap::identity(), &rus(1, 0, 0.0), &SampleGrid::standard())
            .unwrap();
        let text = r.to_key_values();
        let keys: Vec<&str> = text.lines().map(|l| l.split(" = ").next().unwrap()).collect();
        assert_eq!(
            keys,
            [
                "min_quotient_re",
                "min_sense_margin",
                "distortion_violations",
                "worst_point",
                "passed",
                "tolerance",
                "monotone_weights"
            ]
        );
    }
}
