//! Arithmetic in Z[i] and Z[zeta_3]: splitting rational primes, the
//! normalized prime generators, quartic and sextic power-residue symbols,
//! and the twisted generators attached to a twist parameter.

use crate::error::RingError;
use crate::intfactor::is_prime;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// a + b*i.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub a: BigInt,
    pub b: BigInt,
}

/// a + b*zeta_3, zeta_3 a primitive cube root of unity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

/// A root of unity in one of the two rings: i^k (gauss, k mod 4) or
/// zeta_6^k (eisenstein, k mod 6).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitPower {
    Gauss(u8),
    Eisenstein(u8),
}

impl UnitPower {
    pub fn exponent(&self) -> u8 {
        match self {
            UnitPower::Gauss(k) => *k,
            UnitPower::Eisenstein(k) => *k,
        }
    }

    pub fn order(&self) -> u8 {
        match self {
            UnitPower::Gauss(_) => 4,
            UnitPower::Eisenstein(_) => 6,
        }
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.a, self.b)
    }
}

impl fmt::Debug for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}w)", self.a, self.b)
    }
}

impl GaussInt {
    pub fn new<T: Into<BigInt>, U: Into<BigInt>>(a: T, b: U) -> Self {
        GaussInt { a: a.into(), b: b.into() }
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.b * &self.b
    }

    pub fn conj(&self) -> GaussInt {
        GaussInt { a: self.a.clone(), b: -&self.b }
    }

    pub fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            a: &self.a * &o.a - &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn neg(&self) -> GaussInt {
        GaussInt { a: -&self.a, b: -&self.b }
    }

    /// Multiplication by i^k.
    pub fn mul_unit(&self, k: u8) -> GaussInt {
        match k % 4 {
            0 => self.clone(),
            1 => GaussInt { a: -&self.b, b: self.a.clone() },
            2 => self.neg(),
            _ => GaussInt { a: self.b.clone(), b: -&self.a },
        }
    }

    /// Exact divisibility test and quotient.
    pub fn divide_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let num = self.mul(&d.conj());
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Some(GaussInt { a: qa, b: qb })
        } else {
            None
        }
    }

    /// Primary normalization: congruent to 1 mod (2+2i).
    pub fn is_primary(&self) -> bool {
        let shifted = GaussInt { a: &self.a - BigInt::one(), b: self.b.clone() };
        shifted.divide_exact(&GaussInt::new(2, 2)).is_some()
    }
}

impl EisensteinInt {
    pub fn new<T: Into<BigInt>, U: Into<BigInt>>(a: T, b: U) -> Self {
        EisensteinInt { a: a.into(), b: b.into() }
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// conj(a + b zeta) = a + b zeta^2 = (a - b) - b zeta.
    pub fn conj(&self) -> EisensteinInt {
        EisensteinInt { a: &self.a - &self.b, b: -&self.b }
    }

    /// (a + b z)(c + d z) with z^2 = -1 - z.
    pub fn mul(&self, o: &EisensteinInt) -> EisensteinInt {
        let ac = &self.a * &o.a;
        let bd = &self.b * &o.b;
        let cross = &self.a * &o.b + &self.b * &o.a;
        EisensteinInt { a: &ac - &bd, b: cross - bd }
    }

    pub fn neg(&self) -> EisensteinInt {
        EisensteinInt { a: -&self.a, b: -&self.b }
    }

    /// Multiplication by zeta_6^k (zeta_6 = 1 + zeta_3).
    pub fn mul_unit(&self, k: u8) -> EisensteinInt {
        let zeta6 = EisensteinInt::new(1, 1);
        let mut out = self.clone();
        for _ in 0..(k % 6) {
            out = out.mul(&zeta6);
        }
        out
    }

    pub fn divide_exact(&self, d: &EisensteinInt) -> Option<EisensteinInt> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let num = self.mul(&d.conj());
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Some(EisensteinInt { a: qa, b: qb })
        } else {
            None
        }
    }

    /// pi = 2 mod 3 in coordinates: a = 2 and b = 0 (mod 3).
    pub fn is_two_mod_three(&self) -> bool {
        let three = BigInt::from(3);
        self.a.mod_floor(&three) == BigInt::from(2) && self.b.mod_floor(&three).is_zero()
    }
}

/// Tonelli-Shanks square root modulo an odd prime; None for non-residues.
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let one = BigInt::one();
    let leg = a.modpow(&((p - &one) >> 1), p);
    if leg != one {
        return None;
    }
    if (p % BigInt::from(4)) == BigInt::from(3) {
        return Some(a.modpow(&((p + &one) >> 2), p));
    }
    let mut q = p - &one;
    let mut s = 0u64;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while z.modpow(&((p - &one) >> 1), p) == one {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while t != one {
        let mut i = 0u64;
        let mut tt = t.clone();
        while tt != one {
            tt = &tt * &tt % p;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = &b * &b % p;
        }
        m = i;
        c = &b * &b % p;
        t = &t * &c % p;
        r = &r * &b % p;
    }
    Some(r)
}

/// Split p = 1 (mod 4) in Z[i]: returns the generator pi with N(pi) = p,
/// pi = 1 (mod 2+2i), and b > 0.
pub fn split_prime_gauss(p: &BigInt) -> Result<GaussInt, RingError> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p.clone()));
    }
    if (p % BigInt::from(4)) != BigInt::one() {
        return Err(RingError::NotSplit(p.clone()));
    }
    // gcd(p, r - i) in Z[i] where r^2 = -1 (mod p)
    let r = sqrt_mod(&BigInt::from(-1), p).expect("p = 1 mod 4 has a root of -1");
    let mut x = GaussInt::new(p.clone(), BigInt::zero());
    let mut y = GaussInt::new(r, BigInt::from(-1));
    while !y.norm().is_zero() {
        let n = y.norm();
        let num = x.mul(&y.conj());
        let q = GaussInt {
            a: rounded_div(&num.a, &n),
            b: rounded_div(&num.b, &n),
        };
        let qy = q.mul(&y);
        let rem = GaussInt { a: &x.a - &qy.a, b: &x.b - &qy.b };
        x = y;
        y = rem;
    }
    debug_assert_eq!(x.norm(), *p);
    let mut found = None;
    for k in 0..4 {
        let cand = x.mul_unit(k);
        if cand.is_primary() {
            found = Some(cand);
            break;
        }
    }
    let mut pi = found.expect("odd Gaussian prime has a primary associate");
    if pi.b.is_negative() {
        pi = pi.conj();
        debug_assert!(pi.is_primary());
    }
    Ok(pi)
}

/// Split p = 1 (mod 3) in Z[zeta_3]: returns pi with N(pi) = p,
/// pi = 2 (mod 3), and b > 0.
pub fn split_prime_eisenstein(p: &BigInt) -> Result<EisensteinInt, RingError> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p.clone()));
    }
    if (p % BigInt::from(3)) != BigInt::one() {
        return Err(RingError::NotSplit(p.clone()));
    }
    // gcd(p, s - zeta) where s^2 + s + 1 = 0 (mod p): s = (-1 + sqrt(-3))/2
    let r3 = sqrt_mod(&BigInt::from(-3), p).expect("p = 1 mod 3 has a root of -3");
    let inv2 = BigInt::from(2).modpow(&(p - BigInt::from(2)), p);
    let s = ((r3 - BigInt::one()) * inv2).mod_floor(p);
    let mut x = EisensteinInt::new(p.clone(), BigInt::zero());
    let mut y = EisensteinInt::new(s, BigInt::from(-1));
    while !y.norm().is_zero() {
        let n = y.norm();
        let num = x.mul(&y.conj());
        let q = EisensteinInt {
            a: rounded_div(&num.a, &n),
            b: rounded_div(&num.b, &n),
        };
        let qy = q.mul(&y);
        let rem = EisensteinInt { a: &x.a - &qy.a, b: &x.b - &qy.b };
        x = y;
        y = rem;
    }
    debug_assert_eq!(x.norm(), *p);
    let mut found = None;
    for k in 0..6 {
        let cand = x.mul_unit(k);
        if cand.is_two_mod_three() {
            found = Some(cand);
            break;
        }
    }
    let mut pi = found.expect("split Eisenstein prime has an associate = 2 mod 3");
    if pi.b.is_negative() {
        pi = pi.conj();
        debug_assert!(pi.is_two_mod_three());
    }
    Ok(pi)
}

fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest integer to a/b for b > 0: floor((2a + b) / (2b))
    (BigInt::from(2) * a + b).div_floor(&(BigInt::from(2) * b))
}

/// The root r of x^2 + 1 in F_p attached to pi = a + bi: a + b*r = 0 (mod p).
fn gauss_i_image(pi: &GaussInt) -> BigInt {
    let p = pi.norm();
    let binv = pi.b.modpow(&(&p - BigInt::from(2)), &p);
    ((-&pi.a) * binv).mod_floor(&p)
}

/// The root s of x^2 + x + 1 in F_p attached to pi = a + b*zeta:
/// a + b*s = 0 (mod p).
fn eisenstein_zeta_image(pi: &EisensteinInt) -> BigInt {
    let p = pi.norm();
    let binv = pi.b.modpow(&(&p - BigInt::from(2)), &p);
    ((-&pi.a) * binv).mod_floor(&p)
}

/// Quartic residue symbol (x / pi)_4 = i^k, via x^((p-1)/4) mod pi.
pub fn quartic_symbol(x: &BigInt, pi: &GaussInt) -> Result<UnitPower, RingError> {
    let p = pi.norm();
    let x = x.mod_floor(&p);
    if x.is_zero() {
        return Err(RingError::NotCoprime);
    }
    let r = gauss_i_image(pi);
    let e = (&p - BigInt::one()) / BigInt::from(4);
    let t = x.modpow(&e, &p);
    let mut val = BigInt::one();
    for k in 0..4u8 {
        if val == t {
            return Ok(UnitPower::Gauss(k));
        }
        val = (val * &r).mod_floor(&p);
    }
    unreachable!("x^((p-1)/4) must be a fourth root of unity mod p");
}

/// Sextic residue symbol (x / pi)_6 = zeta_6^k.
pub fn sextic_symbol(x: &BigInt, pi: &EisensteinInt) -> Result<UnitPower, RingError> {
    let p = pi.norm();
    let x = x.mod_floor(&p);
    if x.is_zero() {
        return Err(RingError::NotCoprime);
    }
    let s = eisenstein_zeta_image(pi);
    let zeta6 = (s + BigInt::one()).mod_floor(&p);
    let e = (&p - BigInt::one()) / BigInt::from(6);
    let t = x.modpow(&e, &p);
    let mut val = BigInt::one();
    for k in 0..6u8 {
        if val == t {
            return Ok(UnitPower::Eisenstein(k));
        }
        val = (val * &zeta6).mod_floor(&p);
    }
    unreachable!("x^((p-1)/6) must be a sixth root of unity mod p");
}

/// pi_D = conj((D/pi)_4) * pi.
pub fn pi_twisted_quartic(d: &BigInt, pi: &GaussInt) -> Result<GaussInt, RingError> {
    let k = quartic_symbol(d, pi)?.exponent();
    Ok(pi.mul_unit((4 - k) % 4))
}

/// pi_A = -conj((4A/pi)_6) * pi.
pub fn pi_twisted_sextic(a: &BigInt, pi: &EisensteinInt) -> Result<EisensteinInt, RingError> {
    let four_a = BigInt::from(4) * a;
    let k = sextic_symbol(&four_a, pi)?.exponent();
    Ok(pi.mul_unit((6 - k) % 6).neg())
}

/// The natural-coordinate decomposition p = a^2 + ab + b^2 with a, b
/// positive and a odd, used by the degree bookkeeping of the sextic tower.
/// When both coordinates can be taken odd, the pair with the smaller first
/// entry is returned.
pub fn eisenstein_ab(p: &BigInt) -> Result<(BigInt, BigInt), RingError> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p.clone()));
    }
    if (p % BigInt::from(3)) != BigInt::one() {
        return Err(RingError::NotSplit(p.clone()));
    }
    let pi = split_prime_eisenstein(p)?;
    let mut candidates = Vec::new();
    for k in 0..6 {
        for g in [pi.mul_unit(k), pi.conj().mul_unit(k)] {
            // N(a + b zeta) = a^2 - ab + b^2 = x^2 + xy + y^2 at (x, y) = (a, -b)
            let (x, y) = (g.a.clone(), -&g.b);
            if x.is_positive() && y.is_positive() && x.is_odd() {
                candidates.push((x, y));
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    debug_assert!(!candidates.is_empty());
    Ok(candidates[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn split_5() {
        let pi = split_prime_gauss(&bi(5)).unwrap();
        assert_eq!(pi.norm(), bi(5));
        assert!(pi.is_primary());
        assert!(pi.b.is_positive());
        // the worked example pins -1 + 2i
        assert_eq!((pi.a.clone(), pi.b.clone()), (bi(-1), bi(2)));
    }

    #[test]
    fn split_13() {
        let pi = split_prime_gauss(&bi(13)).unwrap();
        assert_eq!(pi.norm(), bi(13));
        assert!(pi.is_primary());
        assert!(pi.b.is_positive());
        assert_eq!((pi.a.clone(), pi.b.clone()), (bi(3), bi(2)));
    }

    #[test]
    fn split_7_not_gauss() {
        assert_eq!(split_prime_gauss(&bi(7)), Err(RingError::NotSplit(bi(7))));
    }

    #[test]
    fn eisenstein_7() {
        let pi = split_prime_eisenstein(&bi(7)).unwrap();
        assert_eq!(pi.norm(), bi(7));
        assert!(pi.is_two_mod_three());
        assert!(pi.b.is_positive());
        assert_eq!((pi.a.clone(), pi.b.clone()), (bi(2), bi(3)));
    }

    #[test]
    fn eisenstein_5_not_split() {
        assert_eq!(
            split_prime_eisenstein(&bi(5)),
            Err(RingError::NotSplit(bi(5)))
        );
    }

    #[test]
    fn quartic_symbol_examples() {
        let pi = split_prime_gauss(&bi(5)).unwrap();
        assert_eq!(quartic_symbol(&bi(1), &pi).unwrap(), UnitPower::Gauss(0));
        // (2 / (-1+2i))_4 = i^3 = -i
        assert_eq!(quartic_symbol(&bi(2), &pi).unwrap(), UnitPower::Gauss(3));
        // symbol of a square is the square of the symbol
        let k2 = quartic_symbol(&bi(2), &pi).unwrap().exponent();
        let k4 = quartic_symbol(&bi(4), &pi).unwrap().exponent();
        assert_eq!((2 * k2) % 4, k4 % 4);
        assert_eq!(quartic_symbol(&bi(5), &pi), Err(RingError::NotCoprime));
    }

    #[test]
    fn pi_twisted_quartic_examples() {
        let pi = split_prime_gauss(&bi(5)).unwrap();
        assert_eq!(pi_twisted_quartic(&bi(1), &pi).unwrap(), pi);
        // 16 = 2^4 is a fourth power
        assert_eq!(pi_twisted_quartic(&bi(16), &pi).unwrap(), pi);
        // D = 2: conj(i^3) * pi = i * (-1 + 2i) = -2 - i
        let t = pi_twisted_quartic(&bi(2), &pi).unwrap();
        assert_eq!((t.a, t.b), (bi(-2), bi(-1)));
        assert_eq!(pi_twisted_quartic(&bi(3), &pi).unwrap().norm(), bi(5));
    }

    #[test]
    fn sextic_symbol_oracle() {
        // direct exponentiation oracle over F_7: zeta maps to 4, zeta_6 to 5
        let pi = split_prime_eisenstein(&bi(7)).unwrap();
        let t = bi(2).modpow(&bi(1), &bi(7));
        let mut k_expected = None;
        let mut val = bi(1);
        for k in 0..6u8 {
            if val == t {
                k_expected = Some(k);
                break;
            }
            val = (val * bi(5)) % bi(7);
        }
        assert_eq!(
            sextic_symbol(&bi(2), &pi).unwrap().exponent(),
            k_expected.unwrap()
        );
        // sixth powers map to k = 0
        assert_eq!(sextic_symbol(&bi(64), &pi).unwrap(), UnitPower::Eisenstein(0));
    }

    #[test]
    fn pi_twisted_sextic_examples() {
        let pi = split_prime_eisenstein(&bi(7)).unwrap();
        // A with 4A a sixth power mod 7: 4A = 1 mod 7 at A = 2
        let t = pi_twisted_sextic(&bi(2), &pi).unwrap();
        assert_eq!(t, pi.neg());
        assert_eq!(pi_twisted_sextic(&bi(7), &pi), Err(RingError::NotCoprime));
        assert_eq!(pi_twisted_sextic(&bi(1), &pi).unwrap().norm(), bi(7));
    }

    #[test]
    fn eisenstein_ab_small() {
        assert_eq!(eisenstein_ab(&bi(7)).unwrap(), (bi(1), bi(2)));
        // 13 = 1 + 3 + 9 and 9 + 3 + 1: both first entries odd, pick a < b
        assert_eq!(eisenstein_ab(&bi(13)).unwrap(), (bi(1), bi(3)));
        assert_eq!(eisenstein_ab(&bi(19)).unwrap(), (bi(3), bi(2)));
    }

    #[test]
    fn normalization_for_many_primes() {
        let mut count = 0;
        for p in (5..1000u64).filter(|&p| is_prime(&BigInt::from(p))) {
            if p % 4 == 1 {
                let pi = split_prime_gauss(&BigInt::from(p)).unwrap();
                assert_eq!(pi.norm(), BigInt::from(p));
                assert!(pi.is_primary(), "p = {}", p);
                assert!(pi.b.is_positive());
                count += 1;
            }
            if p % 3 == 1 {
                let pi = split_prime_eisenstein(&BigInt::from(p)).unwrap();
                assert_eq!(pi.norm(), BigInt::from(p));
                assert!(pi.is_two_mod_three(), "p = {}", p);
                assert!(pi.b.is_positive());
                count += 1;
            }
        }
        assert!(count > 100);
    }
}
