//! Gamma-family special functions. Γ itself comes from `libm`; the rest is
//! built on top in log space.

use crate::scalar::Real;

/// `ln |Γ(x)|` together with the sign of `Γ(x)`.
///
/// Poles (non-positive integers) return `(+inf, 1)`.
pub fn ln_gamma_signed<T: Real>(x: T) -> (T, T) {
    if x.is_nan() {
        return (x, T::one());
    }
    if x <= T::zero() && x == x.floor() {
        return (T::infinity(), T::one());
    }
    let (lg, sign) = libm::lgamma_r(x.as_f64());
    (T::lit(lg), if sign < 0 { -T::one() } else { T::one() })
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    ln_gamma_signed(x).0
}

/// `Γ(x)`, signed.
pub fn gamma<T: Real>(x: T) -> T {
    T::lit(libm::tgamma(x.as_f64()))
}

/// Pochhammer symbol (rising factorial) `(a)_n = a (a+1) ... (a+n-1)`, `(a)_0 = 1`.
pub fn pochhammer<T: Real>(a: T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, k| acc * (a + T::of_usize(k)))
}

/// `ln B(a, b)` for `a, b > 0`.
pub fn ln_beta<T: Real>(a: T, b: T) -> T {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Generalized binomial coefficient `Γ(top+1) / (Γ(k+1) Γ(top-k+1))`, as `(ln|value|, sign)`.
///
/// A pole in the denominator makes the coefficient vanish; that case returns
/// `(-inf, 1)`.
pub fn ln_binomial_signed<T: Real>(top: T, k: T) -> (T, T) {
    let (num, s_num) = ln_gamma_signed(top + T::one());
    let (d1, s1) = ln_gamma_signed(k + T::one());
    let (d2, s2) = ln_gamma_signed(top - k + T::one());
    if d1.is_infinite() || d2.is_infinite() {
        return (T::neg_infinity(), T::one());
    }
    (num - d1 - d2, s_num * s1 * s2)
}

/// Generalized binomial coefficient `binom(top, k)` for real arguments.
pub fn binomial<T: Real>(top: T, k: T) -> T {
    let (l, s) = ln_binomial_signed(top, k);
    s * l.exp()
}

/// Exact-integer binomial coefficient `C(n, k)` accumulated as a product.
pub fn choose<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(T::one(), |acc, i| {
        acc * T::of_usize(n - i) / T::of_usize(i + 1)
    })
}

/// `n!` as a scalar.
pub fn factorial<T: Real>(n: usize) -> T {
    pochhammer(T::one(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..40usize {
            // Γ(n + 1) = n!
            fact *= n as f64;
            assert_relative_eq!(ln_gamma((n + 1) as f64), fact.ln(), max_relative = 1e-14);
        }
        assert!(ln_gamma(1.0f64).abs() < 1e-15);
        assert!(ln_gamma(2.0f64).abs() < 1e-15);
    }

    #[test]
    fn gamma_half_integers() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_relative_eq!(gamma(0.5f64), sqrt_pi, max_relative = 1e-14);
        assert_relative_eq!(gamma(1.5f64), 0.5 * sqrt_pi, max_relative = 1e-14);
        assert_relative_eq!(gamma(-0.5f64), -2.0 * sqrt_pi, max_relative = 1e-14);
        assert_relative_eq!(gamma(-1.5f64), 4.0 / 3.0 * sqrt_pi, max_relative = 1e-14);
    }

    #[test]
    fn gamma_poles() {
        let (l, _) = ln_gamma_signed(0.0f64);
        assert!(l.is_infinite());
        let (l, _) = ln_gamma_signed(-3.0f64);
        assert!(l.is_infinite());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(5.0f64, 0), 1.0);
        assert_eq!(pochhammer(1.0f64, 4), 24.0);
        assert_eq!(pochhammer(0.5f64, 3), 1.875);
    }

    #[test]
    fn pochhammer_is_gamma_ratio() {
        for &a in &[0.3f64, 1.7, 4.25] {
            for n in 0..12 {
                let via_gamma = (ln_gamma(a + n as f64) - ln_gamma(a)).exp();
                assert_relative_eq!(pochhammer(a, n), via_gamma, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_relative_eq!(binomial(4.0f64, 3.0), 4.0, max_relative = 1e-14);
        assert_relative_eq!(binomial(6.0f64, 3.0), 20.0, max_relative = 1e-14);
        assert_eq!(binomial(2.0f64, 5.0), 0.0);
        // binom(n - 1/2, n) = (1/2)_n / n!
        for n in 0..10 {
            let expect = pochhammer(0.5f64, n) / factorial::<f64>(n);
            assert_relative_eq!(binomial(n as f64 - 0.5, n as f64), expect, max_relative = 1e-13);
        }
        assert_eq!(choose::<f64>(10, 3), 120.0);
        assert_eq!(choose::<f64>(3, 5), 0.0);
    }

    #[test]
    fn beta_function() {
        // B(1/2, 1/2) = π
        assert_relative_eq!(ln_beta(0.5f64, 0.5).exp(), std::f64::consts::PI, max_relative = 1e-14);
        assert_relative_eq!(ln_beta(2.0f64, 3.0).exp(), 1.0 / 12.0, max_relative = 1e-14);
    }

    #[test]
    fn single_precision() {
        assert!((gamma(5.0f32) - 24.0).abs() < 1e-4);
    }
}
