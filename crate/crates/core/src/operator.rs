//! The Mittag-Leffler kernel `Θ` and the coefficient weights of the iterated
//! operator `Φ^m`.
//!
//! `Φ^m` acts on `z + Σ a_k z^k` as a coefficient multiplier. Its k-th
//! multiplier is written `Λ_k^{(m)}` here:
//!
//! ```text
//! Λ_k^{(m)} = C(m + k − 1, k − 1) · (γ)_{q(k−1)} / (Γ(β + α(k−1)) (δ)_{p(k−1)})
//! ```
//!
//! where `C(m + k − 1, k − 1) = (m + 1)_{k−1} / (k − 1)!`. The family
//! inequalities elsewhere in the crate are all stated in terms of these
//! multipliers.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::specfun::{complex_gamma, pochhammer_ext, MLParams};

/// Largest imaginary part, relative to `max(1, |Λ|)`, tolerated in a weight.
pub const WEIGHT_IMAG_TOLERANCE: f64 = 1e-10;

/// `(m, n, η)` together with the kernel parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    m: u32,
    n: u32,
    eta: f64,
    ml: MLParams,
}

impl FamilyParams {
    pub fn new(m: u32, n: u32, eta: f64, ml: MLParams) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("m must be a positive integer"));
        }
        if m <= n {
            return Err(Error::invalid("m must exceed n"));
        }
        if !(0.0..1.0).contains(&eta) {
            return Err(Error::invalid("eta must lie in [0, 1)"));
        }
        Ok(Self { m, n, eta, ml })
    }

    /// The same family at a different level `η` (used for the second level
    /// `ρ` of the convolution result).
    pub fn with_eta(&self, eta: f64) -> Result<Self> {
        Self::new(self.m, self.n, eta, self.ml)
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn eta(&self) -> f64 {
        self.eta
    }
    pub fn ml(&self) -> &MLParams {
        &self.ml
    }

    /// `(−1)^{m−n}`.
    pub fn parity(&self) -> f64 {
        if (self.m - self.n).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// `(−1)^{m−1}`, the conjugation sign of the sign-patterned subfamily.
    pub fn co_sign(&self) -> i8 {
        crate::harmonic::co_sign_for_order(self.m)
    }
}

/// Coefficient of `z^k` in `Θ(z)`; 1 for `k = 1`.
pub fn kernel_coeff(ml: &MLParams, k: usize) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::invalid("kernel index starts at 1"));
    }
    if k == 1 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let j = (k - 1) as u32;
    let upper = pochhammer_ext(ml.gamma(), ml.q(), j)?;
    let gamma = complex_gamma(ml.beta() + ml.alpha() * j as f64)?;
    let lower = pochhammer_ext(ml.delta(), ml.p(), j)?;
    Ok(upper / (gamma * lower))
}

/// Coefficients of `Θ` for `k = 2..=order`.
pub fn kernel_coeffs(ml: &MLParams, order: usize) -> Result<Vec<Complex64>> {
    if order < 2 {
        return Err(Error::invalid("kernel truncation must be at least 2"));
    }
    (2..=order).map(|k| kernel_coeff(ml, k)).collect()
}

/// `C(m + k − 1, k − 1)`, exact while it fits in 53 bits.
pub fn rising_binomial(m: u32, k: usize) -> f64 {
    let mut exact: u128 = 1;
    for j in 1..k as u128 {
        match exact.checked_mul(m as u128 + j) {
            Some(v) => exact = v / j,
            None => {
                return (1..k).fold(1.0, |acc, j| acc * (m as f64 + j as f64) / j as f64);
            }
        }
    }
    exact as f64
}

/// `Λ_k^{(m)}`, required to be a positive real.
pub fn weight(ml: &MLParams, m: u32, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("weight index starts at 1"));
    }
    if k == 1 {
        return Ok(1.0);
    }
    let value = kernel_coeff(ml, k)? * rising_binomial(m, k);
    let real_enough = value.im.abs() <= WEIGHT_IMAG_TOLERANCE * value.re.abs().max(1.0);
    if !(value.re.is_finite() && value.re > 0.0 && real_enough) {
        return Err(Error::NonPositiveWeight { k, value });
    }
    Ok(value.re)
}

/// `Λ_1^{(m)}, …, Λ_K^{(m)}` for one operator order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    order: u32,
    weights: Vec<f64>,
}

impl WeightTable {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn truncation(&self) -> usize {
        self.weights.len()
    }

    /// `Λ_k` for `1 ≤ k ≤ K`.
    pub fn get(&self, k: usize) -> f64 {
        self.weights[k - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }
}

pub fn weight_table(ml: &MLParams, m: u32, order: usize) -> Result<WeightTable> {
    if order == 0 {
        return Err(Error::invalid("weight table needs at least one entry"));
    }
    let weights = (1..=order).map(|k| weight(ml, m, k)).collect::<Result<Vec<_>>>()?;
    Ok(WeightTable { order: m, weights })
}

/// `Φ^m f`: `a_k ↦ Λ_k a_k`, `b_k ↦ Λ_k b_k`, and the conjugation sign picks
/// up a factor `(−1)^m`.
pub fn apply_operator(f: &HarmonicMap, ml: &MLParams, m: u32) -> Result<HarmonicMap> {
    let table = weight_table(ml, m, f.truncation())?;
    let scale = |coeffs: &[Complex64]| -> Vec<Complex64> {
        coeffs.iter().enumerate().map(|(k, &c)| if k == 0 { c } else { c * table.get(k) }).collect()
    };
    let sign = if m.is_multiple_of(2) { f.co_sign() } else { -f.co_sign() };
    HarmonicMap::from_parts(scale(f.a_table()), scale(f.b_table()), sign)
}
