//! Homogeneous bivariate integer polynomials.
//!
//! A `BiHomPoly` of degree `s` is sum_{j=0..s} c_j Z^(s-j) W^j, stored as the
//! coefficient vector `[c_0, ..., c_s]`. The zero polynomial of any formal
//! degree is allowed (all coefficients zero); arithmetic asserts that
//! operands carry compatible degrees, which is an internal invariant of the
//! recursions built on top of this type.

use crate::error::AlgebraError;
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct BiHomPoly {
    degree: usize,
    coeffs: Vec<BigInt>,
}

impl BiHomPoly {
    pub fn new(degree: usize, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), degree + 1, "homogeneous coefficient count");
        BiHomPoly { degree, coeffs }
    }

    pub fn from_i64(degree: usize, coeffs: &[i64]) -> Self {
        BiHomPoly::new(degree, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The constant c as a degree-0 form.
    pub fn constant(c: BigInt) -> Self {
        BiHomPoly { degree: 0, coeffs: vec![c] }
    }

    pub fn one() -> Self {
        BiHomPoly::constant(BigInt::from(1))
    }

    /// Z as a degree-1 form.
    pub fn z() -> Self {
        BiHomPoly::from_i64(1, &[1, 0])
    }

    /// W as a degree-1 form.
    pub fn w() -> Self {
        BiHomPoly::from_i64(1, &[0, 1])
    }

    /// Z - W.
    pub fn z_minus_w() -> Self {
        BiHomPoly::from_i64(1, &[1, -1])
    }

    pub fn zero_of_degree(degree: usize) -> Self {
        BiHomPoly { degree, coeffs: vec![BigInt::zero(); degree + 1] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of Z^(s-j) W^j.
    pub fn coeff_w(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of Z^s (the leading Z-side coefficient).
    pub fn lead_z(&self) -> BigInt {
        self.coeff_w(0)
    }

    /// Coefficient of W^s (the W-side coefficient).
    pub fn lead_w(&self) -> BigInt {
        self.coeff_w(self.degree)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// As a univariate polynomial in Z: coefficient of Z^i is c_{s-i}.
    pub fn as_unipoly_in_z(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Rebuild a degree-s form from its univariate-in-Z representation.
    /// Fails the assertion if the polynomial has Z-degree above s.
    pub fn from_unipoly_in_z(p: &IntPoly, degree: usize) -> Self {
        let mut v = vec![BigInt::zero(); degree + 1];
        for (i, c) in p.coeffs().iter().enumerate() {
            assert!(i <= degree, "univariate degree exceeds homogeneous degree");
            v[degree - i] = c.clone();
        }
        BiHomPoly { degree, coeffs: v }
    }

    /// Specialize W = w, producing a polynomial in Z.
    pub fn specialize_w(&self, w: &BigInt) -> IntPoly {
        let mut v = vec![BigInt::zero(); self.degree + 1];
        let mut pw = BigInt::from(1);
        for j in 0..=self.degree {
            v[self.degree - j] = &self.coeffs[j] * &pw;
            pw = &pw * w;
        }
        IntPoly::new(v)
    }

    pub fn eval(&self, z: &BigInt, w: &BigInt) -> BigInt {
        // Horner in W: sum c_j z^(s-j) w^j = (((c_s w + c_{s-1} z) w + ...) ...)
        let mut acc = BigInt::zero();
        let mut pz = BigInt::from(1);
        let mut terms = Vec::with_capacity(self.degree + 1);
        for j in (0..=self.degree).rev() {
            terms.push((j, pz.clone()));
            if j > 0 {
                pz = &pz * z;
            }
        }
        // terms holds z^(s-j) for j = s down to 0; Horner accumulates w-powers
        for (j, zpow) in terms {
            acc = acc * w + &self.coeffs[j] * &zpow;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        BiHomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact division, with the quotient's degree fixed by homogeneity.
    pub fn exact_div(&self, d: &BiHomPoly) -> Result<BiHomPoly, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::NonExactDivision);
        }
        if self.is_zero() {
            return Ok(BiHomPoly::zero_of_degree(0));
        }
        if self.degree < d.degree {
            return Err(AlgebraError::NonExactDivision);
        }
        let q = self.as_unipoly_in_z().exact_div(&d.as_unipoly_in_z())?;
        let qd = self.degree - d.degree;
        if q.deg_or_zero() > qd {
            return Err(AlgebraError::NonExactDivision);
        }
        Ok(BiHomPoly::from_unipoly_in_z(&q, qd))
    }

    /// Exact square root (positive Z-leading coefficient).
    pub fn sqrt_exact(&self) -> Result<BiHomPoly, AlgebraError> {
        if self.is_zero() {
            return Ok(BiHomPoly::zero_of_degree(0));
        }
        if self.degree % 2 != 0 {
            return Err(AlgebraError::NotASquare);
        }
        // strip the W-power: trailing zero Z-coefficients are W-divisibility
        let uni = self.as_unipoly_in_z();
        let root = uni.sqrt_exact()?;
        let half = self.degree / 2;
        if root.deg_or_zero() > half {
            return Err(AlgebraError::NotASquare);
        }
        Ok(BiHomPoly::from_unipoly_in_z(&root, half))
    }

    pub fn pow(&self, e: usize) -> BiHomPoly {
        let mut acc = BiHomPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for BiHomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiHom(deg {}: {:?})", self.degree, self.coeffs)
    }
}

impl Add for &BiHomPoly {
    type Output = BiHomPoly;
    fn add(self, rhs: &BiHomPoly) -> BiHomPoly {
        // a zero form is degree-agnostic
        if self.is_zero() && self.degree != rhs.degree {
            return rhs.clone();
        }
        if rhs.is_zero() && self.degree != rhs.degree {
            return self.clone();
        }
        assert_eq!(self.degree, rhs.degree, "homogeneous degrees must match");
        BiHomPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &BiHomPoly {
    type Output = BiHomPoly;
    fn sub(self, rhs: &BiHomPoly) -> BiHomPoly {
        if self.is_zero() && self.degree != rhs.degree {
            return -rhs;
        }
        if rhs.is_zero() && self.degree != rhs.degree {
            return self.clone();
        }
        assert_eq!(self.degree, rhs.degree, "homogeneous degrees must match");
        BiHomPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &BiHomPoly {
    type Output = BiHomPoly;
    fn mul(self, rhs: &BiHomPoly) -> BiHomPoly {
        let degree = self.degree + rhs.degree;
        let mut v = vec![BigInt::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        BiHomPoly { degree, coeffs: v }
    }
}

impl Neg for &BiHomPoly {
    type Output = BiHomPoly;
    fn neg(self) -> BiHomPoly {
        BiHomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_bihom {
    ($tr:ident, $m:ident) => {
        impl $tr for BiHomPoly {
            type Output = BiHomPoly;
            fn $m(self, rhs: BiHomPoly) -> BiHomPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiHomPoly> for BiHomPoly {
            type Output = BiHomPoly;
            fn $m(self, rhs: &BiHomPoly) -> BiHomPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<BiHomPoly> for &BiHomPoly {
            type Output = BiHomPoly;
            fn $m(self, rhs: BiHomPoly) -> BiHomPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned_bihom!(Add, add);
forward_owned_bihom!(Sub, sub);
forward_owned_bihom!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneity() {
        // f = 3Z^2 - 6ZW - W^2
        let f = BiHomPoly::from_i64(2, &[3, -6, -1]);
        let (z, w, lam) = (BigInt::from(5), BigInt::from(-7), BigInt::from(3));
        let lhs = f.eval(&(&lam * &z), &(&lam * &w));
        let rhs = lam.pow(2) * f.eval(&z, &w);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialize() {
        let f = BiHomPoly::from_i64(2, &[3, -6, -1]);
        // f(X, 1) = 3X^2 - 6X - 1
        assert_eq!(f.specialize_w(&BigInt::from(1)), IntPoly::from_i64(&[-1, -6, 3]));
        // f(X, 2) = 3X^2 - 12X - 4
        assert_eq!(f.specialize_w(&BigInt::from(2)), IntPoly::from_i64(&[-4, -12, 3]));
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = BiHomPoly::from_i64(2, &[3, -6, -1]);
        let b = BiHomPoly::from_i64(1, &[2, 5]);
        let p = &a * &b;
        assert_eq!(p.degree(), 3);
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert_eq!(p.exact_div(&a).unwrap(), b);
    }

    #[test]
    fn sqrt_with_w_power() {
        // (Z*W)^2 = Z^2 W^2
        let zw = &BiHomPoly::z() * &BiHomPoly::w();
        let sq = &zw * &zw;
        assert_eq!(sq.sqrt_exact().unwrap(), zw);
    }
}
