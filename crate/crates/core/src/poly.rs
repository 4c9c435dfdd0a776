//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and its last entry is nonzero otherwise.

use crate::error::AlgebraError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial c * x^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly { coeffs: v }
    }

    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree as usize with deg(0) treated as 0, convenient for bookkeeping.
    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly::new(v)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitute x -> x^k.
    pub fn compose_power(&self, k: usize) -> IntPoly {
        assert!(k >= 1);
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        IntPoly::new(v)
    }

    /// Substitute x -> g(x).
    pub fn compose(&self, g: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * g + IntPoly::constant(c.clone());
        }
        acc
    }

    /// f(c*x).
    pub fn scale_argument(&self, c: &BigInt) -> IntPoly {
        let mut pow = BigInt::one();
        let v = self
            .coeffs
            .iter()
            .map(|a| {
                let r = a * &pow;
                pow = &pow * c;
                r
            })
            .collect();
        IntPoly::new(v)
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    /// Returns zero for the zero polynomial.
    pub fn primitive_positive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact division in Z[x]; fails unless `d` divides `self` exactly.
    pub fn exact_div(&self, d: &IntPoly) -> Result<IntPoly, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::NonExactDivision);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let (n, m) = (self.deg_or_zero(), d.deg_or_zero());
        if n < m {
            return Err(AlgebraError::NonExactDivision);
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - m + 1];
        let lead = d.leading();
        for k in (0..=n - m).rev() {
            let top = rem[k + m].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(AlgebraError::NonExactDivision);
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= dc * &qc;
            }
            q[k] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(AlgebraError::NonExactDivision);
        }
        Ok(IntPoly::new(q))
    }

    /// Division with remainder over Q is avoided; this is pseudo-division:
    /// lc(d)^(n-m+1) * self = q*d + r with deg r < deg d.
    pub fn pseudo_div_rem(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(!d.is_zero());
        let m = d.deg_or_zero();
        if self.is_zero() || self.deg_or_zero() < m {
            return (IntPoly::zero(), self.clone());
        }
        let n = self.deg_or_zero();
        let lead = d.leading();
        let mut rem = self.clone();
        let mut q = IntPoly::zero();
        for k in (0..=n - m).rev() {
            // multiply everything by lc(d) once per step (Knuth's Algorithm R)
            let t = rem.coeff(k + m);
            q = q.scale(&lead);
            rem = rem.scale(&lead);
            if !t.is_zero() {
                q = &q + &IntPoly::monomial(t.clone(), k);
                let mut v = rem.coeffs.clone();
                for (j, c) in d.coeffs.iter().enumerate() {
                    v[k + j] -= c * &t;
                }
                rem = IntPoly::new(v);
            }
        }
        (q, rem)
    }

    /// Gcd in Z[x], normalized to positive leading coefficient, with
    /// content gcd(content(f), content(g)).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_positive().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_positive().scale(&self.content());
        }
        let mut a = self.primitive_positive();
        let mut b = other.primitive_positive();
        if a.deg_or_zero() < b.deg_or_zero() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.pseudo_div_rem(&b);
            a = b;
            b = r.primitive_positive();
        }
        let cont = self.content().gcd(&other.content());
        a.primitive_positive().scale(&cont)
    }

    /// Squarefree test over Q: gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.deg_or_zero() == 0 {
            return true;
        }
        self.primitive_positive().gcd(&self.derivative()).deg_or_zero() == 0
    }

    /// Exact integer polynomial square root with positive leading
    /// coefficient. Works from the leading term down; fails fast.
    pub fn sqrt_exact(&self) -> Result<IntPoly, AlgebraError> {
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let n = self.deg_or_zero();
        if n % 2 != 0 {
            return Err(AlgebraError::NotASquare);
        }
        let m = n / 2;
        let lc = self.leading();
        if lc.is_negative() {
            return Err(AlgebraError::NotASquare);
        }
        let qm = lc.sqrt();
        if &qm * &qm != lc {
            return Err(AlgebraError::NotASquare);
        }
        let mut q = vec![BigInt::zero(); m + 1];
        q[m] = qm.clone();
        let two_qm = BigInt::from(2) * &qm;
        for k in (0..m).rev() {
            // coefficient of x^(k+m) in q^2 must equal self[k+m]
            let mut s = BigInt::zero();
            for i in k + 1..=m {
                let j = k + m - i;
                if j > m || j <= k {
                    continue;
                }
                s += &q[i] * &q[j];
            }
            // self[k+m] = 2*q[m]*q[k] + sum of q[i]q[j] with i,j in (k, m)
            let target = self.coeff(k + m) - s;
            let (c, r) = target.div_rem(&two_qm);
            if !r.is_zero() {
                return Err(AlgebraError::NotASquare);
            }
            q[k] = c;
        }
        let root = IntPoly::new(q);
        if &root * &root == *self {
            Ok(root)
        } else {
            Err(AlgebraError::NotASquare)
        }
    }

    /// Coefficients as decimal strings, ascending.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_coeff_strings(strs: &[String]) -> Option<IntPoly> {
        let mut v = Vec::with_capacity(strs.len());
        for s in strs {
            v.push(s.parse::<BigInt>().ok()?);
        }
        Some(IntPoly::new(v))
    }

    /// Max |coefficient|.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = if first {
                c.clone()
            } else {
                if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                c.abs()
            };
            first = false;
            match i {
                0 => write!(f, "{}", a)?,
                1 => {
                    if a.abs().is_one() {
                        write!(f, "{}x", if a.is_negative() { "-" } else { "" })?
                    } else {
                        write!(f, "{}x", a)?
                    }
                }
                _ => {
                    if a.abs().is_one() {
                        write!(f, "{}x^{}", if a.is_negative() { "-" } else { "" }, i)?
                    } else {
                        write!(f, "{}x^{}", a, i)?
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::new(v)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::new(v)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn mul_expansion() {
        // (x+1)(x-1) = x^2 - 1
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn exact_div_basic() {
        let f = p(&[-1, 0, 1]);
        assert_eq!(f.exact_div(&p(&[1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(
            p(&[1, 0, 1]).exact_div(&p(&[1, 1])),
            Err(AlgebraError::NonExactDivision)
        );
    }

    #[test]
    fn sqrt_basic() {
        assert_eq!(p(&[1, 2, 1]).sqrt_exact().unwrap(), p(&[1, 1]));
        // (x^2 + 3)^2 with D = 3
        assert_eq!(p(&[9, 0, 6, 0, 1]).sqrt_exact().unwrap(), p(&[3, 0, 1]));
        assert_eq!(p(&[1, 0, 1]).sqrt_exact(), Err(AlgebraError::NotASquare));
    }

    #[test]
    fn sqrt_negative_leading() {
        assert_eq!(p(&[0, 0, -1]).sqrt_exact(), Err(AlgebraError::NotASquare));
    }

    #[test]
    fn gcd_and_content() {
        let f = &p(&[1, 1]) * &p(&[2, 2]); // 2(x+1)^2
        assert_eq!(f.content(), BigInt::from(2));
        let g = &p(&[1, 1]) * &p(&[3, 0, 1]);
        assert_eq!(f.gcd(&g), p(&[1, 1]));
    }

    #[test]
    fn compose_and_scale() {
        let f = p(&[-1, 0, 3]); // 3x^2 - 1
        assert_eq!(f.compose_power(4), p(&[-1, 0, 0, 0, 0, 0, 0, 0, 3]));
        assert_eq!(f.scale_argument(&BigInt::from(2)), p(&[-1, 0, 12]));
        let g = p(&[1, 0, 0, 1]); // x^3 + 1
        assert_eq!(f.compose(&g), &(&g * &g).scale(&BigInt::from(3)) - &IntPoly::one());
    }

    #[test]
    fn pseudo_division_invariant() {
        let f = p(&[7, -3, 0, 2, 5]);
        let d = p(&[1, 2, 3]);
        let (q, r) = f.pseudo_div_rem(&d);
        let lead = d.leading();
        let e = f.deg_or_zero() - d.deg_or_zero() + 1;
        let mut scale = IntPoly::one();
        for _ in 0..e {
            scale = scale.scale(&lead);
        }
        assert_eq!(&f * &scale, &(&q * &d) + &r);
        assert!(r.deg_or_zero() < d.deg_or_zero() || r.is_zero());
    }
}
