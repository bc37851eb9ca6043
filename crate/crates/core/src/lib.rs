//! Generalized Mittag-Leffler functions and the harmonic univalent families
//! built from them.
//!
//! The crate is organized bottom-up:
//!
//! - [`specfun`]: complex Γ, the extended Pochhammer symbol and the
//!   six-parameter Mittag-Leffler series;
//! - [`operator`]: the kernel `Θ` and the coefficient weights `Λ_k^{(m)}` of
//!   the iterated operator `Φ^m`;
//! - [`harmonic`]: harmonic maps `h + conj(g)` with truncated coefficients;
//! - [`familykit`]: coefficient tests, extremal maps, extreme points,
//!   distortion bounds, convolution and convex combinations;
//! - [`verify`]: sampled grid checks of the statements behind those tests;
//! - [`suite`]: fixed-seed generators for the randomized checks.
//!
//! Grid work is data-parallel through [`Exec`]; disable the default
//! `parallel` feature for a purely sequential build.

pub mod error;
pub mod exec;
pub mod familykit;
pub mod grid;
pub mod harmonic;
pub mod operator;
pub mod specfun;
pub mod suite;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use familykit::{MembershipReport, Verdict};
pub use grid::SampleGrid;
pub use harmonic::{HarmonicMap, NegativeStyleMap, DEFAULT_TRUNCATION};
pub use operator::{FamilyParams, WeightTable};
pub use specfun::{MLParams, MLVariant, SeriesControl};
pub use verify::VerificationReport;

pub use num_complex::Complex64;
