//! Coefficient tests and constructions for the harmonic families
//! `SH(m, n, η)` and its sign-patterned subfamily.
//!
//! Every inequality is expressed through the two combined weights
//!
//! ```text
//! c_k = Λ_k^{(m)} − η Λ_k^{(n)}            (analytic coefficients)
//! d_k = Λ_k^{(m)} − (−1)^{m−n} η Λ_k^{(n)}  (co-analytic coefficients)
//! ```
//!
//! The sufficient condition for a generic map is
//! `Σ_{k≥1} (c_k |a_k| + d_k |b_k|) / (1 − η) ≤ 2` with `a_1 = 1`; for the
//! sign-patterned subfamily `Σ_{k≥1} (c_k |a_k| + d_k |b_k|) ≤ 2(1 − η)`
//! is necessary and sufficient.
//!
//! Readings of the underlying statements that needed a choice:
//! - the extreme point listed with index 1 in the analytic family is the
//!   identity `z` (a constant `1` would break `f(0) = 0`);
//! - the distortion bounds are `(1 ∓ |b_1|) r ± W r²` with
//!   `W = ((1 − η) − (1 − (−1)^{m−n} η) |b_1|) / c_2`, valid when the
//!   combined weights do not decrease in `k`. The symbol `Υ₂` of the original
//!   statement is available as [`upsilon2`] for reference only.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::harmonic::{HarmonicMap, NegativeStyleMap, DEFAULT_TRUNCATION};
use crate::operator::{kernel_coeff, weight_table, FamilyParams, WeightTable};

/// Absolute tolerance separating `member`/`violator` from `boundary`.
pub const BOUNDARY_TOL: f64 = 1e-10;

/// Tolerance on the normalization of extremal and convex weights.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// `c_k` and `d_k` tabulated up to a truncation order.
#[derive(Debug, Clone)]
pub struct FamilyWeights {
    eta: f64,
    parity: f64,
    upper: WeightTable,
    lower: WeightTable,
}

impl FamilyWeights {
    pub fn new(fp: &FamilyParams, order: usize) -> Result<Self> {
        let order = order.max(2);
        Ok(Self {
            eta: fp.eta(),
            parity: fp.parity(),
            upper: weight_table(fp.ml(), fp.m(), order)?,
            lower: weight_table(fp.ml(), fp.n(), order)?,
        })
    }

    pub fn truncation(&self) -> usize {
        self.upper.truncation()
    }

    /// `c_k = Λ_k^{(m)} − η Λ_k^{(n)}`.
    pub fn analytic(&self, k: usize) -> f64 {
        self.upper.get(k) - self.eta * self.lower.get(k)
    }

    /// `d_k = Λ_k^{(m)} − (−1)^{m−n} η Λ_k^{(n)}`.
    pub fn coanalytic(&self, k: usize) -> f64 {
        self.upper.get(k) - self.parity * self.eta * self.lower.get(k)
    }

    /// Whether `c_k` and `d_k` are non-decreasing on `2..=K` and `d_2 ≥ c_2`,
    /// i.e. `c_2` bounds every combined weight with `k ≥ 2` from below.
    pub fn is_monotone(&self) -> bool {
        let k_max = self.truncation();
        let c: Vec<f64> = (2..=k_max).map(|k| self.analytic(k)).collect();
        let d: Vec<f64> = (2..=k_max).map(|k| self.coanalytic(k)).collect();
        c.windows(2).all(|w| w[0] <= w[1]) && d.windows(2).all(|w| w[0] <= w[1]) && d[0] >= c[0]
    }

    /// Whether `c_k, d_k ≥ k (1 − η)` for all `k`, the coefficient growth the
    /// univalence argument of the sufficient condition relies on.
    pub fn dominates_index(&self) -> bool {
        let floor = 1.0 - self.eta;
        (1..=self.truncation()).all(|k| {
            let need = k as f64 * floor;
            (k == 1 || self.analytic(k) >= need) && self.coanalytic(k) >= need
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Member,
    Boundary,
    Violator,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Member => "member",
            Verdict::Boundary => "boundary",
            Verdict::Violator => "violator",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a coefficient test.
///
/// `tail_bound` extrapolates the last two summands geometrically to estimate
/// what the sum would gain if the coefficient pattern continued past the
/// truncation. The stored map itself is a polynomial, so the sum is exact and
/// the verdict does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipReport {
    pub sum_value: f64,
    pub threshold: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub boundary_tol: f64,
    pub tail_bound: f64,
}

impl MembershipReport {
    fn from_summands(summands: &[f64], threshold: f64) -> Self {
        let sum_value: f64 = summands.iter().sum();
        let margin = threshold - sum_value;
        let verdict = if margin.abs() <= BOUNDARY_TOL {
            Verdict::Boundary
        } else if margin > BOUNDARY_TOL {
            Verdict::Member
        } else {
            Verdict::Violator
        };
        Self {
            sum_value,
            threshold,
            margin,
            verdict,
            boundary_tol: BOUNDARY_TOL,
            tail_bound: tail_estimate(summands),
        }
    }

    /// Member or boundary: the (non-strict) inequality holds.
    pub fn is_member(&self) -> bool {
        self.verdict != Verdict::Violator
    }

    /// `key = value` lines in fixed order.
    pub fn to_key_values(&self) -> String {
        format!(
            "sum = {}\nthreshold = {}\nmargin = {}\nverdict = {}\ntail_bound = {}\n",
            self.sum_value, self.threshold, self.margin, self.verdict, self.tail_bound
        )
    }
}

fn tail_estimate(summands: &[f64]) -> f64 {
    let n = summands.len();
    if n < 2 {
        return 0.0;
    }
    let (prev, last) = (summands[n - 2], summands[n - 1]);
    if last == 0.0 {
        0.0
    } else if prev > 0.0 && last < prev {
        let ratio = last / prev;
        last * ratio / (1.0 - ratio)
    } else {
        last
    }
}

/// Per-index summands `c_k |a_k| + d_k |b_k|` for `k = 1..=K`.
fn weighted_summands(
    weights: &FamilyWeights,
    order: usize,
    a_mag: impl Fn(usize) -> f64,
    b_mag: impl Fn(usize) -> f64,
) -> Vec<f64> {
    (1..=order).map(|k| weights.analytic(k) * a_mag(k) + weights.coanalytic(k) * b_mag(k)).collect()
}

/// Sufficient coefficient condition for a generic harmonic map.
pub fn sufficiency_sum(f: &HarmonicMap, fp: &FamilyParams) -> Result<MembershipReport> {
    let order = f.truncation();
    let weights = FamilyWeights::new(fp, order)?;
    let scale = 1.0 - fp.eta();
    let summands: Vec<f64> =
        weighted_summands(&weights, order, |k| f.a(k).norm(), |k| f.b(k).norm())
            .into_iter()
            .map(|s| s / scale)
            .collect();
    Ok(MembershipReport::from_summands(&summands, 2.0))
}

/// Characterizing coefficient condition for the sign-patterned subfamily.
pub fn necessity_check(f: &NegativeStyleMap, fp: &FamilyParams) -> Result<MembershipReport> {
    let order = f.truncation();
    let weights = FamilyWeights::new(fp, order)?;
    let summands = weighted_summands(&weights, order, |k| f.a_mag(k), |k| f.b_mag(k));
    Ok(MembershipReport::from_summands(&summands, 2.0 * (1.0 - fp.eta())))
}

/// Numerator of the operator quotient restricted to `z = μ ∈ [0, 1)`:
/// `(1 − η) − Σ_{k≥2} c_k |a_k| μ^{k−1} − Σ_{k≥1} d_k |b_k| μ^{k−1}`.
pub fn realaxis_numerator(f: &NegativeStyleMap, fp: &FamilyParams, mu: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&mu) {
        return Err(Error::invalid("mu must lie in [0, 1)"));
    }
    let order = f.truncation();
    let weights = FamilyWeights::new(fp, order)?;
    let mut value = 1.0 - fp.eta();
    let mut power = 1.0;
    for k in 1..=order {
        if k > 1 {
            value -= weights.analytic(k) * f.a_mag(k) * power;
        }
        value -= weights.coanalytic(k) * f.b_mag(k) * power;
        power *= mu;
    }
    Ok(value)
}

/// Weights `x_k` (k ≥ 2) and `y_k` (k ≥ 1) with `Σ|x_k| + Σ|y_k| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalWeights {
    x: Vec<Complex64>,
    y: Vec<Complex64>,
}

impl ExtremalWeights {
    /// `x` starts at index 2, `y` at index 1.
    pub fn new(x: Vec<Complex64>, y: Vec<Complex64>) -> Result<Self> {
        let total: f64 = x.iter().chain(&y).map(|v| v.norm()).sum();
        if !total.is_finite() || (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::invalid(format!(
                "extremal weights must have total magnitude 1, got {total}"
            )));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    pub fn y(&self) -> &[Complex64] {
        &self.y
    }
}

/// The map attaining equality in the sufficient condition:
/// `a_k = (1 − η) x_k / c_k`, `b_k = (1 − η) y_k / d_k`.
pub fn extremal_map(fp: &FamilyParams, w: &ExtremalWeights) -> Result<HarmonicMap> {
    let order = (w.x.len() + 1).max(w.y.len()).max(2);
    let weights = FamilyWeights::new(fp, order)?;
    let scale = 1.0 - fp.eta();
    let a: Vec<Complex64> =
        w.x.iter().enumerate().map(|(i, &x)| x * (scale / weights.analytic(i + 2))).collect();
    let b: Vec<Complex64> =
        w.y.iter().enumerate().map(|(i, &y)| y * (scale / weights.coanalytic(i + 1))).collect();
    HarmonicMap::new(&a, &b, 1)?.with_truncation(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremeKind {
    /// `h_k(z) = z − (1 − η)/c_k · z^k`.
    H,
    /// `g_k(z) = z + (−1)^{m−1} (1 − η)/d_k · conj(z)^k`.
    G,
}

/// One extreme point of the closed convex hull of the subfamily.
pub fn extreme_point(fp: &FamilyParams, kind: ExtremeKind, k: usize) -> Result<NegativeStyleMap> {
    let weights = FamilyWeights::new(fp, k)?;
    let scale = 1.0 - fp.eta();
    match kind {
        ExtremeKind::H => {
            if k < 2 {
                return Err(Error::invalid("analytic extreme points start at k = 2"));
            }
            let mut a = vec![0.0; k - 1];
            a[k - 2] = scale / weights.analytic(k);
            NegativeStyleMap::new(&a, &[], fp.co_sign())
        }
        ExtremeKind::G => {
            if k < 1 {
                return Err(Error::invalid("co-analytic extreme points start at k = 1"));
            }
            let mut b = vec![0.0; k];
            b[k - 1] = scale / weights.coanalytic(k);
            if k == 1 && b[0] >= 1.0 {
                return Err(Error::CoefficientOutOfRange { k: 1, value: b[0] });
            }
            NegativeStyleMap::new(&[], &b, fp.co_sign())?.with_truncation(k.max(2))
        }
    }
}

/// Convex weights `X_k`, `Y_k` over the extreme points; `X_1` is implied.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremePointWeights {
    x_tail: Vec<f64>,
    y: Vec<f64>,
    x1: f64,
}

impl ExtremePointWeights {
    /// `x_tail` holds `X_2, X_3, …`; `y` holds `Y_1, Y_2, …`.
    pub fn new(x_tail: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x_tail.iter().chain(&y).any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::invalid("extreme-point weights must be non-negative"));
        }
        let used: f64 = x_tail.iter().chain(&y).sum();
        let x1 = 1.0 - used;
        if x1 < -NORMALIZATION_TOL {
            return Err(Error::invalid(format!("extreme-point weights sum to {used} > 1")));
        }
        Ok(Self { x_tail, y, x1: x1.max(0.0) })
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x_tail(&self) -> &[f64] {
        &self.x_tail
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }
}

/// `Σ X_k h_k + Σ Y_k g_k`, with `h_1(z) = z`.
pub fn combine_extreme_points(
    fp: &FamilyParams,
    w: &ExtremePointWeights,
) -> Result<NegativeStyleMap> {
    let order = (w.x_tail.len() + 1).max(w.y.len()).max(2);
    let weights = FamilyWeights::new(fp, order)?;
    let scale = 1.0 - fp.eta();
    let a: Vec<f64> =
        w.x_tail.iter().enumerate().map(|(i, &x)| x * scale / weights.analytic(i + 2)).collect();
    let b: Vec<f64> =
        w.y.iter().enumerate().map(|(i, &y)| y * scale / weights.coanalytic(i + 1)).collect();
    if let Some(&b1) = b.first() {
        if b1 >= 1.0 {
            return Err(Error::CoefficientOutOfRange { k: 1, value: b1 });
        }
    }
    NegativeStyleMap::new(&a, &b, fp.co_sign())?.with_truncation(order)
}

/// `Υ₂ = (m + 1) (γ)_q / (Γ(β + α) (δ)_p)`, which coincides with `Λ_2^{(m)}`.
pub fn upsilon2(fp: &FamilyParams) -> Result<Complex64> {
    Ok(kernel_coeff(fp.ml(), 2)? * (fp.m() as f64 + 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionBounds {
    pub lower: f64,
    pub upper: f64,
    /// False when the combined weights fail the monotonicity precondition;
    /// the bounds are then unverified.
    pub monotone: bool,
}

/// The growth factor `W` of the distortion bounds.
pub fn distortion_factor(fp: &FamilyParams, b1: f64) -> Result<(f64, bool)> {
    if !(0.0..1.0).contains(&b1) {
        return Err(Error::invalid("|b_1| must lie in [0, 1)"));
    }
    let weights = FamilyWeights::new(fp, DEFAULT_TRUNCATION)?;
    let eta = fp.eta();
    let w = ((1.0 - eta) - (1.0 - fp.parity() * eta) * b1) / weights.analytic(2);
    if w < 0.0 {
        return Err(Error::precondition(format!(
            "|b_1| = {b1} exceeds what the family allows (W = {w})"
        )));
    }
    Ok((w, weights.is_monotone()))
}

/// `lower = (1 − |b_1|) r − W r²`, `upper = (1 + |b_1|) r + W r²`.
pub fn distortion_bounds(fp: &FamilyParams, b1: f64, r: f64) -> Result<DistortionBounds> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::invalid("radius must lie in (0, 1)"));
    }
    let (w, monotone) = distortion_factor(fp, b1)?;
    Ok(DistortionBounds {
        lower: (1.0 - b1) * r - w * r * r,
        upper: (1.0 + b1) * r + w * r * r,
        monotone,
    })
}

/// Coefficient-wise product of magnitudes.
pub fn convolve(f: &NegativeStyleMap, big_f: &NegativeStyleMap) -> Result<NegativeStyleMap> {
    if f.co_sign() != big_f.co_sign() {
        return Err(Error::precondition("convolution factors have different conjugation signs"));
    }
    let order = f.truncation().min(big_f.truncation());
    let a: Vec<f64> = (2..=order).map(|k| f.a_mag(k) * big_f.a_mag(k)).collect();
    let b: Vec<f64> = (1..=order).map(|k| f.b_mag(k) * big_f.b_mag(k)).collect();
    NegativeStyleMap::new(&a, &b, f.co_sign())?.with_truncation(order)
}

fn same_family(a: &FamilyParams, b: &FamilyParams) -> bool {
    a.m() == b.m() && a.n() == b.n() && a.ml() == b.ml()
}

/// Checks that `f * F` lies in the family at level `η` when `f` does and `F`
/// lies in it at level `ρ ≤ η`.
pub fn convolution_closure_check(
    f: &NegativeStyleMap,
    big_f: &NegativeStyleMap,
    fp_eta: &FamilyParams,
    fp_rho: &FamilyParams,
) -> Result<MembershipReport> {
    if !same_family(fp_eta, fp_rho) {
        return Err(Error::precondition("the two levels must share m, n and kernel parameters"));
    }
    if fp_rho.eta() > fp_eta.eta() {
        return Err(Error::precondition("rho must not exceed eta"));
    }
    if !necessity_check(f, fp_eta)?.is_member() {
        return Err(Error::precondition("first factor is not a member at level eta"));
    }
    if !necessity_check(big_f, fp_rho)?.is_member() {
        return Err(Error::precondition("second factor is not a member at level rho"));
    }
    necessity_check(&convolve(f, big_f)?, fp_eta)
}

/// Coefficient-wise convex combination of members, with the membership
/// report of the result.
pub fn convex_combine(
    maps: &[NegativeStyleMap],
    t: &[f64],
    fp: &FamilyParams,
) -> Result<(NegativeStyleMap, MembershipReport)> {
    if maps.is_empty() || maps.len() != t.len() {
        return Err(Error::precondition("need one weight per map and at least one map"));
    }
    if t.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::precondition("combination weights must be non-negative"));
    }
    let total: f64 = t.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::precondition(format!("combination weights sum to {total}")));
    }
    let sign = maps[0].co_sign();
    if maps.iter().any(|f| f.co_sign() != sign) {
        return Err(Error::precondition("maps have different conjugation signs"));
    }
    for (j, f) in maps.iter().enumerate() {
        if !necessity_check(f, fp)?.is_member() {
            return Err(Error::precondition(format!("map {j} is not a member")));
        }
    }
    let order = maps.iter().map(|f| f.truncation()).max().unwrap_or(1);
    let mix = |coeff: &dyn Fn(&NegativeStyleMap) -> f64| -> f64 {
        maps.iter().zip(t).fold(0.0, |acc, (f, &tj)| acc + tj * coeff(f))
    };
    let a: Vec<f64> = (2..=order).map(|k| mix(&|f| f.a_mag(k))).collect();
    let b: Vec<f64> = (1..=order).map(|k| mix(&|f| f.b_mag(k))).collect();
    let combined = NegativeStyleMap::new(&a, &b, sign)?.with_truncation(order)?;
    let report = necessity_check(&combined, fp)?;
    Ok((combined, report))
}
