#![allow(dead_code)]

use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

/// Γ(z) for `Re(z) > 0` by upward shifting and the Stirling series.
/// Shares nothing with the Lanczos evaluator in the library.
pub fn stirling_gamma(z: Complex64) -> Complex64 {
    assert!(z.re > 0.0);
    // Bernoulli numbers B_2 .. B_20
    const B: [f64; 10] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
    ];
    let mut shift = Complex64::new(1.0, 0.0);
    let mut w = z;
    while w.norm() < 30.0 {
        shift *= w;
        w += 1.0;
    }
    let mut series = Complex64::new(0.0, 0.0);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (j, b) in B.iter().enumerate() {
        let n = 2.0 * (j as f64 + 1.0);
        series += pow * (b / (n * (n - 1.0)));
        pow *= inv2;
    }
    let ln = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * std::f64::consts::PI).ln() + series;
    ln.exp() / shift
}

/// Σ c_k z^k evaluated term by term with explicit powers.
pub fn naive_poly(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().enumerate().map(|(k, &ck)| ck * z.powu(k as u32)).sum()
}
