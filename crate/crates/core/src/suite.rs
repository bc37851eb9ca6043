//! Fixed-seed generators for randomized property suites.
//!
//! Every generator draws from a [`ChaCha8Rng`], so a given seed reproduces the
//! same sequence of parameters and maps on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::familykit::{
    combine_extreme_points, ExtremalWeights, ExtremePointWeights, FamilyWeights,
};
use crate::harmonic::NegativeStyleMap;
use crate::operator::FamilyParams;
use crate::specfun::MLParams;

/// Seed used by the randomized suites unless another is given.
pub const DEFAULT_SEED: u64 = 20_190_417;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Kernel parameter regimes the suites draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `α = 0, β = γ = δ = 1, q = p = 1`.
    Ruscheweyh,
    /// `α = β = 1` with random real `γ, δ ∈ [0.5, 3]` and `q, p ∈ [0.5, 1.5]`.
    UnitAlpha,
}

pub fn random_ml(rng: &mut impl Rng, regime: Regime) -> MLParams {
    match regime {
        Regime::Ruscheweyh => MLParams::ruscheweyh(),
        Regime::UnitAlpha => {
            let gamma = rng.gen_range(0.5..3.0);
            let delta = rng.gen_range(0.5..3.0);
            let q = rng.gen_range(0.5..1.5);
            let p = rng.gen_range(0.5..1.5);
            MLParams::real(1.0, 1.0, gamma, delta, q, p).expect("regime bounds are valid")
        }
    }
}

/// `m ∈ 1..=4`, `n < m`, `η ∈ [0, 0.9)`.
pub fn random_family(rng: &mut impl Rng, regime: Regime) -> FamilyParams {
    let ml = random_ml(rng, regime);
    let m = rng.gen_range(1..=4);
    let n = rng.gen_range(0..m);
    let eta = rng.gen_range(0.0..0.9);
    FamilyParams::new(m, n, eta, ml).expect("generated family is valid")
}

/// `count` non-negative weights summing to `total`, with roughly a third of
/// the entries zeroed so that sparse patterns also appear.
fn random_simplex(rng: &mut impl Rng, count: usize, total: f64) -> Vec<f64> {
    let mut raw: Vec<f64> = (0..count)
        .map(|_| if rng.gen_bool(0.3) { 0.0 } else { -rng.gen_range(1e-12_f64..1.0).ln() })
        .collect();
    let sum: f64 = raw.iter().sum();
    if sum == 0.0 {
        raw[0] = 1.0;
        return raw.into_iter().map(|v| v * total).collect();
    }
    raw.into_iter().map(|v| v * total / sum).collect()
}

/// Random normalized `x_k` (k = 2..=order) and `y_k` (k = 1..=order) with
/// random phases. `y_1` is kept below 1/2 so the resulting `|b_1|` stays
/// inside the disc.
pub fn random_extremal_weights(rng: &mut impl Rng, order: usize) -> ExtremalWeights {
    loop {
        let mags = random_simplex(rng, 2 * order - 1, 1.0);
        if mags[order - 1] >= 0.5 {
            continue;
        }
        let mut phased = mags
            .iter()
            .map(|&r| Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU)));
        let x: Vec<Complex64> = phased.by_ref().take(order - 1).collect();
        let y: Vec<Complex64> = phased.collect();
        // Renormalize away rounding in the phase rotation.
        let total: f64 = x.iter().chain(&y).map(|v| v.norm()).sum();
        let x = x.into_iter().map(|v| v / total).collect();
        let y = y.into_iter().map(|v| v / total).collect();
        if let Ok(w) = ExtremalWeights::new(x, y) {
            return w;
        }
    }
}

/// Random weights over the extreme points; `X_1` receives a share as well.
pub fn random_extreme_weights(rng: &mut impl Rng, order: usize) -> ExtremePointWeights {
    loop {
        let all = random_simplex(rng, 2 * order, 1.0);
        // all[0] is X_1, then X_2..=X_K, then Y_1..=Y_K.
        let x_tail = all[1..order].to_vec();
        let y = all[order..].to_vec();
        if y[0] >= 0.5 {
            continue;
        }
        if let Ok(w) = ExtremePointWeights::new(x_tail, y) {
            return w;
        }
    }
}

/// A random member of the sign-patterned subfamily built from extreme points.
pub fn random_member(
    rng: &mut impl Rng,
    fp: &FamilyParams,
    order: usize,
) -> Result<NegativeStyleMap> {
    combine_extreme_points(fp, &random_extreme_weights(rng, order))
}

/// A random member with prescribed `|b_1|`.
pub fn random_member_with_b1(
    rng: &mut impl Rng,
    fp: &FamilyParams,
    b1: f64,
    order: usize,
) -> Result<NegativeStyleMap> {
    let weights = FamilyWeights::new(fp, order)?;
    let y1 = b1 * weights.coanalytic(1) / (1.0 - fp.eta());
    if !(0.0..=1.0).contains(&y1) {
        return Err(Error::precondition(format!("|b_1| = {b1} is unreachable in this family")));
    }
    let rest = random_simplex(rng, 2 * order - 1, 1.0 - y1);
    let x_tail = rest[1..order].to_vec();
    let mut y = vec![y1];
    y.extend_from_slice(&rest[order..]);
    let mut f = combine_extreme_points(fp, &ExtremePointWeights::new(x_tail, y)?)?;
    // Pin |b_1| exactly; the round trip through y_1 can be off by an ulp.
    if f.b_mag(1) != b1 {
        let a: Vec<f64> = (2..=f.truncation()).map(|k| f.a_mag(k)).collect();
        let mut b: Vec<f64> = (1..=f.truncation()).map(|k| f.b_mag(k)).collect();
        b[0] = b1;
        f = NegativeStyleMap::new(&a, &b, f.co_sign())?;
    }
    Ok(f)
}

/// A sign-patterned map whose necessity margin is below `−min_excess`.
///
/// The weights are those of an extreme-point combination scaled so that their
/// total exceeds 1 by enough to push the coefficient sum past the threshold.
pub fn random_violator(
    rng: &mut impl Rng,
    fp: &FamilyParams,
    order: usize,
    min_excess: f64,
) -> Result<NegativeStyleMap> {
    let scale = 1.0 - fp.eta();
    let weights = FamilyWeights::new(fp, order)?;
    // margin = (1 − η)(1 − total)
    let total = 1.0 + (min_excess / scale) * rng.gen_range(1.05..3.0);
    let mut mass = random_simplex(rng, 2 * order - 1, total);
    // Keep |b_1| = (1 − η) Y_1 / d_1 inside the disc by moving excess Y_1 to X_2.
    let y1_cap = 0.5 * weights.coanalytic(1) / scale;
    if mass[order - 1] > y1_cap {
        mass[0] += mass[order - 1] - y1_cap;
        mass[order - 1] = y1_cap;
    }
    let a: Vec<f64> = (2..=order).map(|k| mass[k - 2] * scale / weights.analytic(k)).collect();
    let b: Vec<f64> =
        (1..=order).map(|k| mass[order - 2 + k] * scale / weights.coanalytic(k)).collect();
    NegativeStyleMap::new(&a, &b, fp.co_sign())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::familykit::necessity_check;

    #[test]
    fn same_seed_same_draws() {
        let fp = FamilyParams::new(2, 1, 0.3, MLParams::ruscheweyh()).unwrap();
        let a = random_member(&mut rng(7), &fp, 12).unwrap();
        let b = random_member(&mut rng(7), &fp, 12).unwrap();
        assert_eq!(a, b);
        let c = random_member(&mut rng(8), &fp, 12).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generated_members_and_violators() {
        let mut r = rng(DEFAULT_SEED);
        for _ in 0..50 {
            let fp = random_family(&mut r, Regime::Ruscheweyh);
            let f = random_member(&mut r, &fp, 16).unwrap();
            assert!(necessity_check(&f, &fp).unwrap().is_member());
            let v = random_violator(&mut r, &fp, 16, 0.2).unwrap();
            assert!(necessity_check(&v, &fp).unwrap().margin < -0.2);
            let g = random_member_with_b1(&mut r, &fp, 0.05, 16).unwrap();
            assert_eq!(g.b_mag(1), 0.05);
            assert!(necessity_check(&g, &fp).unwrap().is_member());
        }
    }
}
