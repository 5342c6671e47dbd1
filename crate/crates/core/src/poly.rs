//! Dense polynomials in the monomial basis.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

/// Polynomial `Σ coeffs[k] x^k`.
///
/// Trailing zero coefficients are trimmed, so `degree() == coeffs.len() - 1`
/// except for the zero polynomial, which is stored as `[0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Real> MonomialPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).copied().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> T {
        self.coeffs[self.degree()]
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * T::of_usize(k))
                .collect(),
        )
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Composition `self(inner(x))` by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, &c| &(&acc * inner) + &Self::constant(c))
    }
}

impl<T: Real> Add for &MonomialPoly<T> {
    type Output = MonomialPoly<T>;

    fn add(self, rhs: Self) -> MonomialPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        MonomialPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Real> Sub for &MonomialPoly<T> {
    type Output = MonomialPoly<T>;

    fn sub(self, rhs: Self) -> MonomialPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        MonomialPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Real> Neg for &MonomialPoly<T> {
    type Output = MonomialPoly<T>;

    fn neg(self) -> MonomialPoly<T> {
        self.scale(-T::one())
    }
}

impl<T: Real> Mul for &MonomialPoly<T> {
    type Output = MonomialPoly<T>;

    fn mul(self, rhs: Self) -> MonomialPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return MonomialPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        MonomialPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_reports_degree() {
        let p = MonomialPoly::new(vec![1.0f64, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.leading(), 2.0);
        assert!(MonomialPoly::<f64>::new(vec![0.0, 0.0]).is_zero());
        assert_eq!(MonomialPoly::<f64>::zero().degree(), 0);
    }

    #[test]
    fn arithmetic() {
        let p = MonomialPoly::new(vec![1.0f64, 1.0]); // 1 + x
        let q = &p * &p;
        assert_eq!(q.coeffs(), &[1.0, 2.0, 1.0]);
        assert_eq!((&q - &q).degree(), 0);
        assert_eq!(q.derivative().coeffs(), &[2.0, 2.0]);
        assert_eq!(q.eval(2.0), 9.0);
        // (1 + x) ∘ (2x) = 1 + 2x
        let c = p.compose(&MonomialPoly::new(vec![0.0, 2.0]));
        assert_eq!(c.coeffs(), &[1.0, 2.0]);
    }
}
