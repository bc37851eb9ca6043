//! Deterministic ASCII number formatting.

use mlharm::{Complex64, HarmonicMap};

/// Shortest round-trip representation, with `-0` folded to `0`.
pub fn shortest(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        x.to_string()
    }
}

/// `%.15g`: 15 significant digits, trailing zeros dropped, scientific
/// notation outside `1e-5 <= |x| < 1e15`.
pub fn sig15(x: f64) -> String {
    const DIGITS: i32 = 15;
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn complex_pair(z: Complex64) -> String {
    format!("{},{}", shortest(z.re), shortest(z.im))
}

/// Coefficients of `f` as `key = value` lines.
pub fn coefficients(f: &HarmonicMap) -> String {
    let mut out = format!("truncation = {}\nco_sign = {}\n", f.truncation(), f.co_sign());
    for k in 2..=f.truncation() {
        out.push_str(&format!("a_{k} = {}\n", complex_pair(f.a(k))));
    }
    for k in 1..=f.truncation() {
        out.push_str(&format!("b_{k} = {}\n", complex_pair(f.b(k))));
    }
    out
}
