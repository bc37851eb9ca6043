//! Complex special functions: Γ, the extended Pochhammer symbol and the
//! generalized Mittag-Leffler series.

mod gamma;
mod mittag_leffler;

pub use gamma::{
    complex_gamma, complex_ln_gamma, gamma_ratio, is_pole, pochhammer_ext, POLE_TOLERANCE,
};
pub use mittag_leffler::{ml_eval, ml_variant, MLParams, MLVariant, SeriesControl};
