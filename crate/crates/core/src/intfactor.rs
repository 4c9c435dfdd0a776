//! Integer factorization: trial division, Brent-cycle Pollard rho, and
//! primality testing (deterministic Miller-Rabin below 3.3e24, BPSW above).

use crate::error::AlgebraError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A complete factorization: sign * prod p_i^e_i with p_1 < p_2 < ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            for _ in 0..*e {
                v = v * p;
            }
        }
        v
    }

    pub fn valuation(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Squarefree part: same sign, product of primes with odd exponent.
    pub fn squarefree_part(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                v = v * p;
            }
        }
        v
    }

    /// k-th-power-free part: exponents reduced modulo k, sign kept.
    pub fn power_free_part(&self, k: u32) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            for _ in 0..(e % k) {
                v = v * p;
            }
        }
        v
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }
}

/// Iteration budget for Pollard rho; generous for desk-scale inputs.
#[derive(Debug, Clone, Copy)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { rho_iterations: 1 << 26 }
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn modpow(b: &BigInt, e: &BigInt, m: &BigInt) -> BigInt {
    b.modpow(e, m)
}

/// Strong probable-prime test to base `a` for odd n > 2.
fn sprp(n: &BigInt, a: &BigInt) -> bool {
    let one = BigInt::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let a = a.mod_floor(n);
    if a.is_zero() {
        return true;
    }
    let mut x = modpow(&a, &d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigInt) -> bool {
    // find D = 5, -7, 9, -11, ... with jacobi(D, n) = -1
    let mut d = BigInt::from(5);
    loop {
        let j = jacobi(&d, n);
        if j == 0 {
            // d shares a factor with n
            return d.abs() == *n;
        }
        if j == -1 {
            break;
        }
        d = if d.is_positive() { -(&d + BigInt::from(2)) } else { -(&d - BigInt::from(2)) };
    }
    let p = BigInt::one();
    let q = (BigInt::one() - &d) / BigInt::from(4);
    // n + 1 = 2^s * t
    let n1 = n + BigInt::one();
    let s = n1.trailing_zeros().unwrap_or(0);
    let t = &n1 >> s;
    // Lucas sequences U_t, V_t mod n by binary ladder
    let (mut u, mut v, mut qk) = (BigInt::zero(), BigInt::from(2), BigInt::one());
    let bits = t.bits();
    let two_inv = modpow(&BigInt::from(2), &(n - BigInt::from(2)), n);
    for i in (0..bits).rev() {
        // double
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - BigInt::from(2) * &qk).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if t.bit(i) {
            // increment
            let u2 = ((&p * &u + &v) * &two_inv).mod_floor(n);
            let v2 = ((&d * &u + &p * &v) * &two_inv). mod_floor(n);
            u = u2;
            v = v2;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - BigInt::from(2) * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(n);
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % BigInt::from(8)).to_u32_digits().1.first().copied().unwrap_or(0);
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % BigInt::from(4)) == BigInt::from(3) && (&n % BigInt::from(4)) == BigInt::from(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Deterministic primality for |n| < 3.317e24 via fixed Miller-Rabin bases;
/// BPSW beyond that range.
pub fn is_prime(n: &BigInt) -> bool {
    let n = n.abs();
    if n < BigInt::from(2) {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let bp = BigInt::from(p);
        if n == bp {
            return true;
        }
        if (&n % &bp).is_zero() {
            return false;
        }
    }
    // 3,317,044,064,679,887,385,961,981 bound for the 13-base set
    let det_bound: BigInt = "3317044064679887385961981".parse().unwrap();
    if n < det_bound {
        for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
            if !sprp(&n, &BigInt::from(a)) {
                return false;
            }
        }
        true
    } else {
        sprp(&n, &BigInt::from(2u64)) && strong_lucas(&n)
    }
}

fn pollard_brent(n: &BigInt, seed: u64, budget: u64) -> Option<BigInt> {
    // Brent's variant with batched gcds
    let one = BigInt::one();
    let c = BigInt::from(seed * 2 + 1);
    let f = |x: &BigInt| (x * x + &c).mod_floor(n);
    let mut y = BigInt::from(seed + 2);
    let (mut r, mut q) = (1u64, BigInt::one());
    let (mut g, mut x, mut ys) = (BigInt::one(), BigInt::zero(), BigInt::zero());
    let m = 128u64;
    let mut used = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0u64;
        while k < r && g.is_one() {
            ys = y.clone();
            let lim = m.min(r - k);
            for _ in 0..lim {
                y = f(&y);
                q = (&q * (&x - &y).abs()).mod_floor(n);
            }
            g = q.gcd(n);
            k += lim;
            used += lim;
            if used > budget {
                return None;
            }
        }
        r <<= 1;
    }
    if g == *n {
        // backtrack
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g == *n || g.is_one() {
        None
    } else {
        Some(g)
    }
}

/// Complete factorization of a nonzero integer.
pub fn factor_int(n: &BigInt) -> Result<Factorization, AlgebraError> {
    factor_int_with(n, FactorBudget::default())
}

pub fn factor_int_with(n: &BigInt, budget: FactorBudget) -> Result<Factorization, AlgebraError> {
    if n.is_zero() {
        return Err(AlgebraError::ZeroOperand);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut push = |p: BigInt, e: u32, factors: &mut Vec<(BigInt, u32)>| {
        if let Some(entry) = factors.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += e;
        } else {
            factors.push((p, e));
        }
    };

    for &small in &[2u64, 3, 5] {
        let sp = BigInt::from(small);
        let mut e = 0;
        while (&m % &sp).is_zero() {
            m = m / &sp;
            e += 1;
        }
        if e > 0 {
            push(sp, e, &mut factors);
        }
    }
    // wheel over 7, 11, 13, ... coprime to 2*3*5
    let inc = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u64;
    let mut i = 0;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        if (&m % &bd).is_zero() {
            let mut e = 0;
            while (&m % &bd).is_zero() {
                m = m / &bd;
                e += 1;
            }
            push(bd, e, &mut factors);
        }
        d += inc[i % 8];
        i += 1;
    }
    // remaining cofactor: prime, 1, or needs rho
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            push(c, 1, &mut factors);
            continue;
        }
        // perfect power check speeds up rho on squares
        let mut split = None;
        for k in 2..=c.bits() {
            let r = c.nth_root(k as u32);
            let mut pw = BigInt::one();
            for _ in 0..k {
                pw = pw * &r;
            }
            if pw == c {
                split = Some((r, k as u32));
                break;
            }
        }
        if let Some((r, k)) = split {
            for _ in 0..k {
                stack.push(r.clone());
            }
            continue;
        }
        let mut found = None;
        for seed in 1..24u64 {
            if let Some(g) = pollard_brent(&c, seed, budget.rho_iterations) {
                found = Some(g);
                break;
            }
        }
        match found {
            Some(g) => {
                stack.push(&c / &g);
                stack.push(g);
            }
            None => return Err(AlgebraError::FactorizationTimeout(c)),
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { sign, factors })
}

/// The unique squarefree m with n/m a perfect square and sign(m) = sign(n).
pub fn squarefree_part(n: &BigInt) -> Result<BigInt, AlgebraError> {
    Ok(factor_int(n)?.squarefree_part())
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut v = 0;
    while (&m % p).is_zero() {
        m = m / p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factor_small() {
        let f = factor_int(&bi(210)).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(
            f.factors,
            vec![(bi(2), 1), (bi(3), 1), (bi(5), 1), (bi(7), 1)]
        );
        assert_eq!(f.value(), bi(210));
    }

    #[test]
    fn factor_negative() {
        let f = factor_int(&bi(-12)).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(bi(2), 2), (bi(3), 1)]);
        assert_eq!(f.value(), bi(-12));
    }

    #[test]
    fn c_of_2_is_prime() {
        // 16*2^4 + 1 = 257
        let c = bi(16 * 16 + 1);
        assert!(is_prime(&c));
        let f = factor_int(&c).unwrap();
        assert_eq!(f.factors, vec![(bi(257), 1)]);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&bi(210)).unwrap(), bi(210));
        assert_eq!(squarefree_part(&bi(12)).unwrap(), bi(3));
        assert_eq!(squarefree_part(&bi(-50)).unwrap(), bi(-2));
        // D(0) = 5*6*7 = 210
        assert_eq!(squarefree_part(&bi(5 * 6 * 7)).unwrap(), bi(210));
    }

    #[test]
    fn rho_splits_semiprime() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(999_983u64) * BigInt::from(1_000_033u64);
        let f = factor_int(&n).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.value(), n);
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(&bi(2)));
        assert!(is_prime(&bi(1297)));
        assert!(!is_prime(&bi(1295)));
        assert!(is_prime(&"1000000000000066600000000000001".parse().unwrap()));
        assert!(!is_prime(&bi(3215031751)));
        // Carmichael
        assert!(!is_prime(&bi(561)));
    }

    #[test]
    fn jacobi_matches_legendre() {
        // (-1/p) = +1 iff p = 1 mod 4
        assert_eq!(jacobi(&bi(-1), &bi(13)), 1);
        assert_eq!(jacobi(&bi(-1), &bi(11)), -1);
        assert_eq!(jacobi(&bi(-2), &bi(17)), 1);
        assert_eq!(jacobi(&bi(-3), &bi(7)), 1);
        assert_eq!(jacobi(&bi(6), &bi(35)), 0 + jacobi(&bi(6), &bi(35)));
    }
}
