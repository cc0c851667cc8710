//! Log-gamma and Dirichlet-type Beta moments.

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::multiindex::factorial_exact;
use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx)
        let pi = T::PI();
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::from_usize_lossy(i));
    }
    let t = x + T::lit(LANCZOS_G) + half;
    half * T::TAU().ln() + (x + half) * t.ln() - t + acc.ln()
}

fn is_half_integer<T: Real>(x: T) -> bool {
    let twice = x + x;
    twice == twice.round()
}

/// `B(a, b)`. Arguments that are multiples of 1/2 go through the exact recurrences
/// `B(a+1, b) = B(a, b)·a/(a+b)` from a base in `{1/2, 1}²`; other arguments through
/// log-gamma.
pub fn beta_fn<T: Real>(a: T, b: T) -> T {
    if is_half_integer(a) && is_half_integer(b) && a > T::zero() && b > T::zero() {
        let half = T::lit(0.5);
        let base = |x: T| if (x + x).round().to_i64().unwrap() % 2 == 0 { T::one() } else { half };
        let (a0, b0) = (base(a), base(b));
        let mut value = match (a0 == half, b0 == half) {
            (true, true) => T::PI(),
            (false, false) => T::one(),
            _ => T::lit(2.0),
        };
        let (mut x, mut y) = (a0, b0);
        while x < a {
            value = value * x / (x + y);
            x = x + T::one();
        }
        while y < b {
            value = value * y / (x + y);
            y = y + T::one();
        }
        return value;
    }
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// `∫_{ℝ₊^l} ∏ s_j^{d_j − 1} (1 + Σ s_j)^{−D} ds = ∏ Γ(d_j) · Γ(D − Σ d_j) / Γ(D)`,
/// evaluated as the telescoping product `∏_j B(d_j, D − d_1 − ... − d_j)`.
pub fn beta_moment<T: Real>(d: &[T], big_d: T) -> Result<T> {
    if d.iter().any(|&x| x <= T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "Beta moment exponents must be positive, got {:?}",
            d.iter().map(|x| x.as_f64()).collect::<Vec<_>>()
        )));
    }
    let total = d.iter().fold(T::zero(), |acc, &x| acc + x);
    if total >= big_d {
        return Err(Error::Divergent(format!(
            "sum of exponents {} is not below the decay power {}",
            total.as_f64(),
            big_d.as_f64()
        )));
    }
    let mut rest = big_d;
    let mut value = T::one();
    for &dj in d {
        rest = rest - dj;
        value = value * beta_fn(dj, rest);
    }
    Ok(value)
}

/// Exact Beta moment for integer exponents: `∏ (d_j − 1)! · (D − Σd − 1)! / (D − 1)!`.
pub fn beta_moment_exact(d: &[u64], big_d: u64) -> Result<BigRational> {
    if d.contains(&0) {
        return Err(Error::InvalidArgument("Beta moment exponents must be positive".into()));
    }
    let total: u64 = d.iter().sum();
    if total >= big_d {
        return Err(Error::Divergent(format!(
            "sum of exponents {total} is not below the decay power {big_d}"
        )));
    }
    let num: BigUint =
        d.iter().map(|&x| factorial_exact(x - 1)).product::<BigUint>() * factorial_exact(big_d - total - 1);
    Ok(BigRational::new(num.into(), factorial_exact(big_d - 1).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..30u32 {
            let lg = ln_gamma(n as f64 + 1.0);
            fact *= n as f64;
            assert!((lg - fact.ln()).abs() <= 1e-13 * fact.ln().max(1.0), "n={n}");
        }
        assert!((ln_gamma(0.5f64) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
        assert!((ln_gamma(0.25f64) - 1.288_022_524_698_077_5).abs() < 1e-13);
    }

    #[test]
    fn beta_half_integer_recurrence() {
        assert_eq!(beta_fn(1.0f64, 1.0), 1.0);
        assert!((beta_fn(0.5f64, 0.5) - std::f64::consts::PI).abs() < 1e-15);
        // B(3, 2) = 1/12 ; B(2.5, 1.5) = π/16
        assert!((beta_fn(3.0f64, 2.0) - 1.0 / 12.0).abs() < 1e-16);
        assert!((beta_fn(2.5f64, 1.5) - std::f64::consts::PI / 16.0).abs() < 1e-15);
        // generic path agrees with recurrence
        let generic = (ln_gamma(2.5f64) + ln_gamma(1.5) - ln_gamma(4.0)).exp();
        assert!((generic - beta_fn(2.5, 1.5)).abs() < 1e-14);
    }

    #[test]
    fn beta_moment_examples() {
        assert_eq!(beta_moment(&[1.0f64], 2.0).unwrap(), 1.0);
        // 1/12 and 1/2 frozen from 2-D quadrature of the defining integral (mpmath)
        let v = beta_moment(&[3.0f64, 1.0], 5.0).unwrap();
        assert!((v - 1.0 / 12.0).abs() <= 1e-13 / 12.0);
        let v = beta_moment(&[1.0f64, 1.0], 3.0).unwrap();
        assert!((v - 0.5).abs() <= 0.5e-13);
        assert!(matches!(beta_moment(&[2.0f64, 1.0], 3.0), Err(Error::Divergent(_))));
        assert!(beta_moment(&[0.0f64], 3.0).is_err());
    }

    #[test]
    fn exact_matches_float() {
        for d1 in 1..6u64 {
            for d2 in 1..6u64 {
                for big_d in (d1 + d2 + 1)..20 {
                    let exact = beta_moment_exact(&[d1, d2], big_d).unwrap().to_f64().unwrap();
                    let float = beta_moment(&[d1 as f64, d2 as f64], big_d as f64).unwrap();
                    assert!(((exact - float) / exact).abs() < 1e-13);
                }
            }
        }
        assert_eq!(
            beta_moment_exact(&[3, 1], 5).unwrap(),
            BigRational::new(1.into(), 12.into())
        );
        assert!(beta_moment_exact(&[2, 2], 4).is_err());
    }

    #[test]
    fn non_half_integer_uses_log_gamma() {
        // ∫_0^∞ s^{0.3−1}(1+s)^{−1.7} ds = B(0.3, 1.4)
        let v = beta_moment(&[0.3f64], 1.7).unwrap();
        let expected = (ln_gamma(0.3f64) + ln_gamma(1.4) - ln_gamma(1.7)).exp();
        assert!((v - expected).abs() < 1e-14 * expected);
    }
}
