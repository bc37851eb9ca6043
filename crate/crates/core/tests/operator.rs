mod common;

use common::c;
use mlharm::operator::{apply_operator, weight, weight_table};
use mlharm::suite::{random_ml, rng, Regime};
use mlharm::{HarmonicMap, MLParams};
use proptest::prelude::*;

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, j| acc * (n + 1 - j) / j)
}

#[test]
fn ruscheweyh_weights_are_binomials() {
    let ml = MLParams::ruscheweyh();
    for m in 0..=20u32 {
        for k in 1..=20usize {
            let w = weight(&ml, m, k).unwrap();
            let want = binomial(m as u64 + k as u64 - 1, k as u64 - 1) as f64;
            assert!((w - want).abs() <= 1e-9, "m={m} k={k}: {w} vs {want}");
            assert_eq!(w.round(), want);
        }
    }
}

#[test]
fn recursion_consistency() {
    let mut r = rng(31);
    let regimes = [Regime::Ruscheweyh, Regime::UnitAlpha];
    for i in 0..20 {
        let ml = random_ml(&mut r, regimes[i % 2]);
        for m in 0..=5u32 {
            let lo = weight_table(&ml, m, 24).unwrap();
            let hi = weight_table(&ml, m + 1, 24).unwrap();
            for k in 1..=24 {
                let want = (k as f64 + m as f64) / (m as f64 + 1.0) * lo.get(k);
                assert!((hi.get(k) - want).abs() <= 1e-12 * want, "m={m} k={k}");
            }
        }
    }
}

#[test]
fn first_weight_is_one() {
    let mut r = rng(32);
    for i in 0..20 {
        let ml = random_ml(&mut r, if i % 2 == 0 { Regime::Ruscheweyh } else { Regime::UnitAlpha });
        for m in 0..=10 {
            assert_eq!(weight(&ml, m, 1).unwrap(), 1.0);
        }
    }
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), len)
}

proptest! {
    #[test]
    fn operator_is_linear(
        a1 in coeffs(10), a2 in coeffs(10), b1 in coeffs(11), b2 in coeffs(11), m in 0u32..6,
    ) {
        let cv = |v: &[(f64, f64)]| v.iter().map(|&(x, y)| c(x, y)).collect::<Vec<_>>();
        let shrink = |v: Vec<_>| -> Vec<_> {
            let mut v = v;
            v[0] *= 0.3;
            v
        };
        let (a1, a2) = (cv(&a1), cv(&a2));
        let (b1, b2) = (shrink(cv(&b1)), shrink(cv(&b2)));
        let ml = MLParams::real(0.7, 1.2, 1.5, 0.8, 1.1, 0.9).unwrap();
        let f = HarmonicMap::new(&a1, &b1, 1).unwrap();
        let g = HarmonicMap::new(&a2, &b2, 1).unwrap();
        let sum_a: Vec<_> = a1.iter().zip(&a2).map(|(x, y)| x + y).collect();
        let sum_b: Vec<_> = b1.iter().zip(&b2).map(|(x, y)| x + y).collect();
        let fg = HarmonicMap::new(&sum_a, &sum_b, 1).unwrap();

        let (tf, tg, tfg) = (
            apply_operator(&f, &ml, m).unwrap(),
            apply_operator(&g, &ml, m).unwrap(),
            apply_operator(&fg, &ml, m).unwrap(),
        );
        for k in 2..=11 {
            let lhs = tfg.a(k);
            let rhs = tf.a(k) + tg.a(k);
            prop_assert!((lhs - rhs).norm() <= 1e-14 * (1.0 + rhs.norm()));
        }
        for k in 1..=11 {
            let lhs = tfg.effective_b(k);
            let rhs = tf.effective_b(k) + tg.effective_b(k);
            prop_assert!((lhs - rhs).norm() <= 1e-14 * (1.0 + rhs.norm()));
        }
    }
}
