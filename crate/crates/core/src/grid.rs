use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_GRID_RADIUS: f64 = 0.999;

/// Deterministic polar sample of the unit disc: every radius carries the same
/// number of equispaced angles, starting on the positive real axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    radii: Vec<f64>,
    angles_per_radius: usize,
}

impl SampleGrid {
    pub fn new(radii: Vec<f64>, angles_per_radius: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::invalid("grid needs at least one radius"));
        }
        if angles_per_radius == 0 {
            return Err(Error::invalid("grid needs at least one angle per radius"));
        }
        if radii.iter().any(|r| !(r.is_finite() && *r > 0.0 && *r <= MAX_GRID_RADIUS)) {
            return Err(Error::invalid(format!("grid radii must lie in (0, {MAX_GRID_RADIUS}]")));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("grid radii must be strictly increasing"));
        }
        Ok(Self { radii, angles_per_radius })
    }

    /// Radii 0.1, 0.2, …, 0.9, 0.95, 0.99 with 64 angles each.
    pub fn standard() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
        radii.extend([0.95, 0.99]);
        Self { radii, angles_per_radius: 64 }
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_radius(&self) -> usize {
        self.angles_per_radius
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_per_radius
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Same radii with twice as many angles; a superset of `self`'s points.
    pub fn refined(&self) -> Self {
        Self { radii: self.radii.clone(), angles_per_radius: 2 * self.angles_per_radius }
    }

    /// Points on the circle of radius `r`, in angle order.
    pub fn circle(&self, r: f64) -> Vec<Complex64> {
        let n = self.angles_per_radius;
        (0..n).map(|j| Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64)).collect()
    }

    /// All points, radius-major and angle-minor.
    pub fn points(&self) -> Vec<Complex64> {
        self.radii.iter().flat_map(|&r| self.circle(r)).collect()
    }
}
