//! Subcommand bodies. Each one validates its whole configuration, then
//! computes, then returns the complete output text.

use mlharm::familykit::{
    convolution_closure_check, convolve, distortion_bounds, distortion_factor, extremal_map,
    necessity_check, sufficiency_sum, FamilyWeights,
};
use mlharm::operator::weight;
use mlharm::specfun::ml_eval;
use mlharm::suite::{random_extremal_weights, random_member, random_member_with_b1, rng};
use mlharm::verify::{verify_distortion, verify_member};
use mlharm::{
    Complex64, Exec, FamilyParams, HarmonicMap, MembershipReport, NegativeStyleMap, SampleGrid,
    SeriesControl, VerificationReport, DEFAULT_TRUNCATION,
};

use crate::config::Config;
use crate::format::{coefficients, shortest, sig15};
use crate::plan::{self, Map};
use crate::CliError;

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }

    fn judged(text: String, passed: bool) -> Self {
        Self { text, code: if passed { 0 } else { 1 } }
    }
}

pub struct Globals {
    pub seed: u64,
}

pub fn ml_eval_cmd(cfg: &Config) -> Result<Outcome, CliError> {
    let params = plan::ml_params(cfg)?;
    let z = cfg.require("z", cfg.complex("z")?)?;
    let defaults = SeriesControl::default();
    let ctrl = match cfg.usize("max_terms")? {
        Some(t) => SeriesControl::new(defaults.rel_tol(), defaults.abs_tol(), t)?,
        None => defaults,
    };
    let v = ml_eval(&params, z, &ctrl)?;
    let fold = |x: f64| if x == 0.0 { 0.0 } else { x };
    Ok(Outcome::ok(format!("{:.15}\t{:.15}\n", fold(v.re), fold(v.im))))
}

pub fn weights_cmd(cfg: &Config) -> Result<Outcome, CliError> {
    let fp = plan::family(cfg)?;
    let order = cfg.usize("order")?.unwrap_or(10);
    if order == 0 {
        return Err(CliError::Config("`order` must be at least 1".into()));
    }
    let table = FamilyWeights::new(&fp, order)?;
    let mut out = String::from("k,lambda_m,lambda_n,c,d\n");
    for k in 1..=order {
        out.push_str(&format!(
            "{k},{},{},{},{}\n",
            shortest(weight(fp.ml(), fp.m(), k)?),
            shortest(weight(fp.ml(), fp.n(), k)?),
            shortest(table.analytic(k)),
            shortest(table.coanalytic(k)),
        ));
    }
    Ok(Outcome::ok(out))
}

fn membership_report(
    cfg: &Config,
    f: &Map,
    fp: &FamilyParams,
) -> Result<MembershipReport, CliError> {
    let test = cfg.raw("test").unwrap_or(match f {
        Map::Generic(_) => "sufficiency",
        Map::Negative(_) => "necessity",
    });
    match (test, f) {
        ("sufficiency", _) => Ok(sufficiency_sum(f.as_map(), fp)?),
        ("necessity", Map::Negative(g)) => Ok(necessity_check(g, fp)?),
        ("necessity", Map::Generic(_)) => {
            Err(CliError::Config("the necessity test needs a sign-patterned map".into()))
        }
        (other, _) => {
            Err(CliError::Config(format!("`test` must be sufficiency or necessity, got {other}")))
        }
    }
}

fn check_test_key(cfg: &Config) -> Result<(), CliError> {
    match cfg.raw("test") {
        None | Some("sufficiency" | "necessity") => Ok(()),
        Some(other) => {
            Err(CliError::Config(format!("`test` must be sufficiency or necessity, got {other}")))
        }
    }
}

pub fn membership_cmd(cfg: &Config) -> Result<Outcome, CliError> {
    check_test_key(cfg)?;
    let fp = plan::family(cfg)?;
    let f = plan::map(cfg, "", &fp)?;
    let report = membership_report(cfg, &f, &fp)?;
    Ok(Outcome::judged(report.to_key_values(), report.is_member()))
}

pub fn extremal_cmd(cfg: &Config) -> Result<Outcome, CliError> {
    check_test_key(cfg)?;
    let fp = plan::family(cfg)?;
    match cfg.raw("map") {
        Some("extremal" | "extreme_point" | "combination") => {}
        _ => {
            return Err(CliError::Config(
                "`map` must be extremal, extreme_point or combination".into(),
            ))
        }
    }
    let f = plan::map(cfg, "", &fp)?;
    let report = membership_report(cfg, &f, &fp)?;
    let text = format!("{}{}", coefficients(f.as_map()), report.to_key_values());
    Ok(Outcome::judged(text, report.is_member()))
}

pub fn distortion_cmd(cfg: &Config) -> Result<Outcome, CliError> {
    let fp = plan::family(cfg)?;
    let b1 = cfg.f64_or("b1", 0.0)?;
    let default = SampleGrid::new((1..=9).map(|i| i as f64 / 10.0).collect(), 1)?;
    let grid = plan::grid(cfg, default)?;
    let (_, monotone) = distortion_factor(&fp, b1)?;
    if !monotone {
        eprintln!("warning: combined weights are not monotone; the bounds are unverified");
    }
    let mut out = String::from("r,lower,upper\n");
    for &r in grid.radii() {
        let bounds = distortion_bounds(&fp, b1, r)?;
        out.push_str(&format!(
            "{},{},{}\n",
            shortest(r),
            shortest(bounds.lower),
            shortest(bounds.upper)
        ));
    }
    Ok(Outcome::ok(out))
}

pub fn convolve_cmd(cfg: &Config) -> Result<Outcome, CliError> {
    let fp_eta = plan::family(cfg)?;
    let rho = cfg.f64_or("rho", fp_eta.eta())?;
    let fp_rho = fp_eta.with_eta(rho)?;
    let f = plan::negative_map(cfg, "", &fp_eta)?;
    let big_f = plan::negative_map(cfg, "other.", &fp_rho)?;
    let report = convolution_closure_check(&f, &big_f, &fp_eta, &fp_rho)?;
    let product = convolve(&f, &big_f)?;
    let text = format!("{}{}", coefficients(product.as_map()), report.to_key_values());
    Ok(Outcome::judged(text, report.is_member()))
}

/// Folds per-map reports: minima of the sampled quantities, summed violation
/// counts, and the worst point of the map with the smallest quotient.
fn merge(reports: &[VerificationReport]) -> Option<VerificationReport> {
    let first = reports.first()?.clone();
    Some(reports[1..].iter().fold(first, |mut acc, r| {
        let min_opt = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        if let (Some(q), Some(best)) = (r.min_quotient_re, acc.min_quotient_re) {
            if q < best {
                acc.worst_point = r.worst_point;
            }
        }
        acc.min_quotient_re = min_opt(acc.min_quotient_re, r.min_quotient_re);
        acc.min_sense_margin = min_opt(acc.min_sense_margin, r.min_sense_margin);
        acc.distortion_violations += r.distortion_violations;
        acc.passed &= r.passed;
        acc.monotone_weights = match (acc.monotone_weights, r.monotone_weights) {
            (Some(x), Some(y)) => Some(x && y),
            (x, y) => x.or(y),
        };
        acc
    }))
}

enum Check {
    Member,
    Distortion,
}

pub fn verify_cmd(cfg: &Config, globals: &Globals) -> Result<Outcome, CliError> {
    let check = match cfg.raw("check").unwrap_or("member") {
        "member" => Check::Member,
        "distortion" => Check::Distortion,
        other => {
            return Err(CliError::Config(format!(
                "`check` must be member or distortion, got {other}"
            )))
        }
    };
    let fp = plan::family(cfg)?;
    let grid = plan::grid(cfg, SampleGrid::standard())?;
    let suite = cfg.usize("suite")?;
    let order = cfg.usize("order")?.unwrap_or(DEFAULT_TRUNCATION);
    if suite.is_some() && order < 2 {
        return Err(CliError::Config("`order` must be at least 2 for suites".into()));
    }
    let single = if suite.is_none() { Some(plan::map(cfg, "", &fp)?) } else { None };
    let b1 = cfg.f64("b1")?;

    let report = match check {
        Check::Member => {
            let maps: Vec<HarmonicMap> = match (suite, single) {
                (Some(count), _) => {
                    let mut r = rng(globals.seed);
                    (0..count)
                        .map(|i| {
                            if i % 2 == 0 {
                                extremal_map(&fp, &random_extremal_weights(&mut r, order))
                            } else {
                                random_member(&mut r, &fp, order).map(NegativeStyleMap::into_map)
                            }
                        })
                        .collect::<Result<_, _>>()?
                }
                (None, Some(f)) => vec![f.as_map().clone()],
                (None, None) => unreachable!("single map is built when no suite is given"),
            };
            let reports =
                maps.iter().map(|f| verify_member(f, &fp, &grid)).collect::<Result<Vec<_>, _>>()?;
            merge(&reports).ok_or_else(|| CliError::Config("`suite` must be positive".into()))?
        }
        Check::Distortion => {
            let (b1, trials) = match (suite, single) {
                (Some(count), _) => {
                    let b1 = cfg.require("b1", b1)?;
                    let mut r = rng(globals.seed);
                    let trials = (0..count)
                        .map(|_| random_member_with_b1(&mut r, &fp, b1, order))
                        .collect::<Result<Vec<_>, _>>()?;
                    (b1, trials)
                }
                (None, Some(Map::Negative(f))) => (b1.unwrap_or(f.b_mag(1)), vec![f]),
                (None, Some(Map::Generic(_))) => {
                    return Err(CliError::Config(
                        "distortion checks need a sign-patterned map".into(),
                    ))
                }
                (None, None) => unreachable!("single map is built when no suite is given"),
            };
            verify_distortion(&fp, b1, &trials, &grid)?
        }
    };
    let passed = report.passed;
    Ok(Outcome::judged(report.to_key_values(), passed))
}

pub fn render_cmd(cfg: &Config) -> Result<Outcome, CliError> {
    let fp = plan::optional_family(cfg)?;
    let f = plan::map_in(cfg, "", fp.as_ref())?;
    let grid = plan::grid(cfg, SampleGrid::standard())?;
    let points = grid.points();
    let values = Exec::default().map(&points, |&z| f.as_map().eval(z));
    let mut out = String::from("re_z,im_z,re_f,im_f\n");
    for (z, w) in points.iter().zip(values) {
        let w: Complex64 = w?;
        out.push_str(&format!("{},{},{},{}\n", sig15(z.re), sig15(z.im), sig15(w.re), sig15(w.im)));
    }
    Ok(Outcome::ok(out))
}
