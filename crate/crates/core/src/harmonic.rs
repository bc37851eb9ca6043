//! Harmonic maps `f = h + conj(g)` on the unit disc with truncated
//! power-series coefficients.
//!
//! `h(z) = z + Σ_{k≥2} a_k z^k` and `g(z) = s · Σ_{k≥1} b_k z^k`, where
//! `s ∈ {+1, −1}` is the stored conjugation sign. Generic maps use `s = +1`.
//! The sign-patterned subfamily ([`NegativeStyleMap`]) keeps
//! `a_k = −|a_k|`, stores `|b_k|`, and carries `s = (−1)^{m−1}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grid::SampleGrid;

/// Truncation order used when nothing else is specified.
pub const DEFAULT_TRUNCATION: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap {
    // Both indexed by k; a[1] = 1, a[0] = b[0] = 0.
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    co_sign: i8,
}

fn finite(z: &Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn check_disc(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { z })
    }
}

/// Σ_{k=1}^{K} c_k z^k by Horner's rule.
fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().skip(1).rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c) * z
}

/// Σ_{k=1}^{K} k c_k z^{k−1} by Horner's rule.
fn horner_prime(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (k, &c)| acc * z + c * k as f64)
}

impl HarmonicMap {
    /// Builds a map from the analytic tail `a_2, a_3, …` and the co-analytic
    /// coefficients `b_1, b_2, …`. The truncation order is the longer of the
    /// two sequences; use [`HarmonicMap::with_truncation`] to extend it.
    pub fn new(a_tail: &[Complex64], b: &[Complex64], co_sign: i8) -> Result<Self> {
        if co_sign != 1 && co_sign != -1 {
            return Err(Error::invalid("conjugation sign must be +1 or -1"));
        }
        if !a_tail.iter().chain(b).all(finite) {
            return Err(Error::invalid("coefficients must be finite"));
        }
        let order = (a_tail.len() + 1).max(b.len()).max(1);
        let zero = Complex64::new(0.0, 0.0);
        let mut av = vec![zero; order + 1];
        let mut bv = vec![zero; order + 1];
        av[1] = Complex64::new(1.0, 0.0);
        av[2..2 + a_tail.len()].copy_from_slice(a_tail);
        bv[1..1 + b.len()].copy_from_slice(b);
        if bv[1].norm() >= 1.0 {
            return Err(Error::CoefficientOutOfRange { k: 1, value: bv[1].norm() });
        }
        Ok(Self { a: av, b: bv, co_sign })
    }

    pub fn identity() -> Self {
        Self::new(&[], &[], 1).expect("identity map is valid")
    }

    /// Zero-pads the coefficient sequences up to truncation order `order`.
    pub fn with_truncation(mut self, order: usize) -> Result<Self> {
        if order < self.truncation() {
            return Err(Error::invalid(format!(
                "cannot shrink truncation from {} to {order}",
                self.truncation()
            )));
        }
        self.a.resize(order + 1, Complex64::new(0.0, 0.0));
        self.b.resize(order + 1, Complex64::new(0.0, 0.0));
        Ok(self)
    }

    pub fn truncation(&self) -> usize {
        self.a.len() - 1
    }

    pub fn co_sign(&self) -> i8 {
        self.co_sign
    }

    /// `a_k`; `a_1 = 1` and zero beyond the truncation.
    pub fn a(&self, k: usize) -> Complex64 {
        self.a.get(k).copied().unwrap_or_default()
    }

    /// Stored `b_k`, before the conjugation sign is applied.
    pub fn b(&self, k: usize) -> Complex64 {
        self.b.get(k).copied().unwrap_or_default()
    }

    /// Coefficient of `z^k` in `g`, i.e. `s · b_k`.
    pub fn effective_b(&self, k: usize) -> Complex64 {
        self.b(k) * self.co_sign as f64
    }

    /// Builds a map directly from the index-aligned tables. Used by the
    /// operator and family constructions, which preserve the invariants.
    pub(crate) fn from_parts(a: Vec<Complex64>, b: Vec<Complex64>, co_sign: i8) -> Result<Self> {
        debug_assert_eq!(a.len(), b.len());
        if !a.iter().chain(&b).all(finite) {
            return Err(Error::invalid("coefficients must be finite"));
        }
        if b[1].norm() >= 1.0 {
            return Err(Error::CoefficientOutOfRange { k: 1, value: b[1].norm() });
        }
        Ok(Self { a, b, co_sign })
    }

    pub(crate) fn a_table(&self) -> &[Complex64] {
        &self.a
    }

    pub(crate) fn b_table(&self) -> &[Complex64] {
        &self.b
    }

    pub fn h(&self, z: Complex64) -> Complex64 {
        horner(&self.a, z)
    }

    pub fn g(&self, z: Complex64) -> Complex64 {
        horner(&self.b, z) * self.co_sign as f64
    }

    /// `f(z) = h(z) + conj(g(z))` for `|z| < 1`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_disc(z)?;
        Ok(self.h(z) + self.g(z).conj())
    }

    /// `(h′(z), g′(z))` for `|z| < 1`.
    pub fn eval_derivatives(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        check_disc(z)?;
        Ok((horner_prime(&self.a, z), horner_prime(&self.b, z) * self.co_sign as f64))
    }

    /// `min |h′(z)| − |g′(z)|` over the grid.
    pub fn sense_preserving_margin(&self, grid: &SampleGrid) -> Result<f64> {
        self.sense_preserving_margin_with(grid, Exec::default())
    }

    pub fn sense_preserving_margin_with(&self, grid: &SampleGrid, exec: Exec) -> Result<f64> {
        let margins = exec.map(&grid.points(), |&z| {
            self.eval_derivatives(z).map(|(hp, gp)| hp.norm() - gp.norm())
        });
        margins.into_iter().try_fold(f64::INFINITY, |acc, m| Ok(acc.min(m?)))
    }
}

/// A map of the sign-patterned subfamily: `h(z) = z − Σ |a_k| z^k` and
/// `g(z) = s · Σ |b_k| z^k` with `s = (−1)^{m−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeStyleMap(HarmonicMap);

/// `(−1)^{m−1}`, the conjugation sign of the subfamily for operator order `m`.
pub fn co_sign_for_order(m: u32) -> i8 {
    if m % 2 == 1 {
        1
    } else {
        -1
    }
}

impl NegativeStyleMap {
    /// Builds the map from magnitudes `|a_2|, |a_3|, …` and `|b_1|, |b_2|, …`.
    pub fn new(a_mag: &[f64], b_mag: &[f64], co_sign: i8) -> Result<Self> {
        if a_mag.iter().chain(b_mag).any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::invalid("coefficient magnitudes must be finite and non-negative"));
        }
        let a: Vec<Complex64> = a_mag.iter().map(|&x| Complex64::new(-x, 0.0)).collect();
        let b: Vec<Complex64> = b_mag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        HarmonicMap::new(&a, &b, co_sign).map(Self)
    }

    pub fn identity(co_sign: i8) -> Result<Self> {
        Self::new(&[], &[], co_sign)
    }

    pub fn with_truncation(self, order: usize) -> Result<Self> {
        self.0.with_truncation(order).map(Self)
    }

    pub fn truncation(&self) -> usize {
        self.0.truncation()
    }

    pub fn co_sign(&self) -> i8 {
        self.0.co_sign()
    }

    /// `|a_k|` for `k ≥ 2`; 1 for `k = 1`.
    pub fn a_mag(&self, k: usize) -> f64 {
        self.0.a(k).re.abs()
    }

    pub fn b_mag(&self, k: usize) -> f64 {
        self.0.b(k).re
    }

    pub fn as_map(&self) -> &HarmonicMap {
        &self.0
    }

    pub fn into_map(self) -> HarmonicMap {
        self.0
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.0.eval(z)
    }
}

impl AsRef<HarmonicMap> for NegativeStyleMap {
    fn as_ref(&self) -> &HarmonicMap {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_evaluates_to_z() {
        let f = HarmonicMap::identity();
        assert_eq!(f.eval(c(0.5, 0.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(f.eval_derivatives(c(0.3, -0.2)).unwrap(), (c(1.0, 0.0), c(0.0, 0.0)));
    }

    #[test]
    fn coanalytic_part_is_conjugated() {
        let f = HarmonicMap::new(&[], &[c(0.5, 0.0)], 1).unwrap();
        let v = f.eval(c(0.0, 0.4)).unwrap();
        assert!((v - c(0.0, 0.2)).norm() < 1e-16);
    }

    #[test]
    fn hand_computed_values() {
        let f = HarmonicMap::new(&[c(-0.5, 0.0)], &[], 1).unwrap();
        assert_eq!(f.eval(c(0.5, 0.0)).unwrap(), c(0.375, 0.0));
        let (hp, gp) = f.eval_derivatives(c(0.5, 0.0)).unwrap();
        assert_eq!((hp, gp), (c(0.5, 0.0), c(0.0, 0.0)));

        let f = HarmonicMap::new(&[], &[c(0.0, 0.0), c(0.1, 0.0)], 1).unwrap();
        let (_, gp) = f.eval_derivatives(c(0.3, 0.0)).unwrap();
        assert!((gp - c(0.06, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn domain_and_constructor_checks() {
        let f = HarmonicMap::identity();
        assert!(matches!(f.eval(c(1.0, 0.0)), Err(Error::Domain { .. })));
        assert!(matches!(f.eval_derivatives(c(0.8, 0.8)), Err(Error::Domain { .. })));
        assert!(matches!(
            HarmonicMap::new(&[], &[c(1.0, 0.0)], 1),
            Err(Error::CoefficientOutOfRange { k: 1, .. })
        ));
        assert!(HarmonicMap::new(&[], &[c(0.6, 0.8)], 1).is_err());
        assert!(HarmonicMap::new(&[], &[], 0).is_err());
        assert!(HarmonicMap::new(&[c(f64::NAN, 0.0)], &[], 1).is_err());
        assert!(NegativeStyleMap::new(&[-0.1], &[], 1).is_err());
    }

    #[test]
    fn sense_margins() {
        let grid = SampleGrid::standard();
        assert_eq!(HarmonicMap::identity().sense_preserving_margin(&grid).unwrap(), 1.0);

        let grid = SampleGrid::new((1..=9).map(|i| i as f64 / 10.0).collect(), 64).unwrap();
        let f = HarmonicMap::new(&[c(-0.25, 0.0)], &[], 1).unwrap();
        let m = f.sense_preserving_margin(&grid).unwrap();
        assert!((m - 0.55).abs() < 1e-15);

        let f = HarmonicMap::new(&[], &[c(0.0, 0.0), c(0.9, 0.0)], 1).unwrap();
        let m = f.sense_preserving_margin(&grid).unwrap();
        assert!((m - (1.0 - 1.62)).abs() < 1e-15);
    }

    #[test]
    fn negative_style_layout() {
        let f = NegativeStyleMap::new(&[0.3], &[0.2, 0.1], -1).unwrap();
        assert_eq!(f.a_mag(1), 1.0);
        assert_eq!(f.a_mag(2), 0.3);
        assert_eq!(f.as_map().a(2), c(-0.3, 0.0));
        assert_eq!(f.b_mag(2), 0.1);
        assert_eq!(f.as_map().effective_b(2), c(-0.1, 0.0));
        assert_eq!(f.truncation(), 2);
        assert_eq!(co_sign_for_order(1), 1);
        assert_eq!(co_sign_for_order(2), -1);
    }

    #[test]
    fn padding_keeps_values() {
        let f = HarmonicMap::new(&[c(0.1, 0.2)], &[c(0.3, 0.0)], 1).unwrap();
        let g = f.clone().with_truncation(10).unwrap();
        assert_eq!(g.truncation(), 10);
        let z = c(0.2, 0.6);
        assert_eq!(f.eval(z).unwrap(), g.eval(z).unwrap());
        assert!(g.with_truncation(3).is_err());
    }
}
