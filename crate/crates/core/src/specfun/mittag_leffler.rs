//! The generalized Mittag-Leffler function
//!
//! ```text
//! E(z) = Σ_{k≥0} (γ)_{qk} z^k / (Γ(β + αk) (δ)_{pk})
//! ```
//!
//! and its classical special cases, all evaluated by one series routine.

use num_complex::Complex64;

use super::gamma::{complex_gamma, gamma_ratio};
use crate::error::{Error, Result};

/// Parameters `(α, β, γ, δ, q, p)` of the generalized Mittag-Leffler series.
///
/// `Re(α) = 0` is accepted as a boundary extension so that the Ruscheweyh
/// reduction (`α = 0, β = γ = δ = 1, q = p = 1`) can be expressed;
/// [`MLParams::is_boundary`] reports it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    delta: Complex64,
    q: f64,
    p: f64,
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl MLParams {
    pub fn new(
        alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
        delta: Complex64,
        q: f64,
        p: f64,
    ) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)] {
            if !finite(v) {
                return Err(Error::invalid(format!("{name} is not finite")));
            }
        }
        if alpha.re < 0.0 {
            return Err(Error::invalid("Re(alpha) must be non-negative"));
        }
        for (name, v) in [("beta", beta), ("gamma", gamma), ("delta", delta)] {
            if v.re <= 0.0 {
                return Err(Error::invalid(format!("Re({name}) must be positive")));
            }
        }
        if !(q.is_finite() && q > 0.0) || !(p.is_finite() && p > 0.0) {
            return Err(Error::invalid("q and p must be positive reals"));
        }
        if q > alpha.re + p {
            return Err(Error::invalid("q must not exceed Re(alpha) + p"));
        }
        Ok(Self { alpha, beta, gamma, delta, q, p })
    }

    /// Real-parameter convenience constructor.
    pub fn real(alpha: f64, beta: f64, gamma: f64, delta: f64, q: f64, p: f64) -> Result<Self> {
        let c = |x| Complex64::new(x, 0.0);
        Self::new(c(alpha), c(beta), c(gamma), c(delta), q, p)
    }

    /// `α = β = γ = δ = q = p = 1`: the exponential series.
    pub fn unit() -> Self {
        Self::real(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).expect("unit parameters are valid")
    }

    /// `α = 0, β = γ = δ = 1, q = p = 1`: the kernel of the Ruscheweyh operator.
    pub fn ruscheweyh() -> Self {
        Self::real(0.0, 1.0, 1.0, 1.0, 1.0, 1.0).expect("Ruscheweyh parameters are valid")
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }
    pub fn beta(&self) -> Complex64 {
        self.beta
    }
    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }
    pub fn delta(&self) -> Complex64 {
        self.delta
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn p(&self) -> f64 {
        self.p
    }

    /// True when `Re(α) = 0`, outside the strict `Re(α) > 0` half-plane.
    pub fn is_boundary(&self) -> bool {
        self.alpha.re == 0.0
    }
}

/// Truncation control for the series evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    rel_tol: f64,
    abs_tol: f64,
    max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { rel_tol: 1e-14, abs_tol: 1e-300, max_terms: 10_000 }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && abs_tol > 0.0) || !rel_tol.is_finite() || !abs_tol.is_finite() {
            return Err(Error::invalid("series tolerances must be positive"));
        }
        if max_terms < 2 {
            return Err(Error::invalid("max_terms must be at least 2"));
        }
        Ok(Self { rel_tol, abs_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }
    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }
    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Default)]
struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, x: Complex64) {
        self.sum.re = two_sum(self.sum.re, x.re, &mut self.carry.re);
        self.sum.im = two_sum(self.sum.im, x.im, &mut self.carry.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

fn two_sum(s: f64, x: f64, carry: &mut f64) -> f64 {
    let t = s + x;
    if s.abs() >= x.abs() {
        *carry += (s - t) + x;
    } else {
        *carry += (x - t) + s;
    }
    t
}

/// Evaluates the generalized Mittag-Leffler series at `z`.
///
/// Each term is obtained from the previous one through Gamma ratios, and the
/// series stops at the first index where two consecutive terms are below
/// `rel_tol·|S|` (or `abs_tol`).
pub fn ml_eval(params: &MLParams, z: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    if !finite(z) {
        return Err(Error::invalid("argument is not finite"));
    }
    let one = Complex64::new(1.0, 0.0);
    let q = Complex64::new(params.q, 0.0);
    let p = Complex64::new(params.p, 0.0);

    let mut term = one / complex_gamma(params.beta)?;
    let mut acc = CompensatedSum::default();
    acc.add(term);
    let mut small_run = 0;

    for k in 0..ctrl.max_terms - 1 {
        let kf = k as f64;
        let upper = gamma_ratio(params.gamma + q * kf, q)?;
        let lower = gamma_ratio(params.beta + params.alpha * kf, params.alpha)?
            * gamma_ratio(params.delta + p * kf, p)?;
        term *= z * (upper / lower);
        acc.add(term);

        let size = term.norm();
        if !size.is_finite() {
            return Err(Error::NoConvergence { terms: k + 2 });
        }
        if size <= ctrl.rel_tol * acc.value().norm() || size <= ctrl.abs_tol {
            small_run += 1;
            if small_run == 2 {
                return Ok(acc.value());
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NoConvergence { terms: ctrl.max_terms })
}

/// The named members of the Mittag-Leffler family. Parameters that a variant
/// does not carry take their identity values (`β = 1`, `γ = δ = 1`,
/// `q = p = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MLVariant {
    /// `E_α(z) = Σ z^k / Γ(αk + 1)`.
    Classic { alpha: Complex64 },
    /// `E_{α,β}(z) = Σ z^k / Γ(αk + β)`.
    TwoParam { alpha: Complex64, beta: Complex64 },
    /// `E^γ_{α,β}(z) = Σ (γ)_k z^k / (k! Γ(αk + β))`.
    Prabhakar { alpha: Complex64, beta: Complex64, gamma: Complex64 },
    /// `E^{γ,δ}_{α,β}(z) = Σ (γ)_k z^k / (Γ(αk + β) (δ)_k)`.
    FourParam { alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64 },
    /// The full six-parameter series.
    SixParam(MLParams),
}

impl MLVariant {
    /// Fills in the identity values and validates the resulting tuple.
    pub fn complete(&self) -> Result<MLParams> {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            MLVariant::Classic { alpha } => MLParams::new(alpha, one, one, one, 1.0, 1.0),
            MLVariant::TwoParam { alpha, beta } => MLParams::new(alpha, beta, one, one, 1.0, 1.0),
            MLVariant::Prabhakar { alpha, beta, gamma } => {
                MLParams::new(alpha, beta, gamma, one, 1.0, 1.0)
            }
            MLVariant::FourParam { alpha, beta, gamma, delta } => {
                MLParams::new(alpha, beta, gamma, delta, 1.0, 1.0)
            }
            MLVariant::SixParam(params) => Ok(params),
        }
    }
}

pub fn ml_variant(variant: &MLVariant, z: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    ml_eval(&variant.complete()?, z, ctrl)
}
