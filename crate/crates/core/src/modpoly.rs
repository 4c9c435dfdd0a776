//! Dense polynomial arithmetic over prime fields F_q with q < 2^62,
//! supporting distinct-degree and equal-degree factorization. Used by the
//! rational factorization routines and the modular irreducibility tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, m: u64) -> u64 {
    // m prime
    powmod(a, m - 2, m)
}

/// Polynomial over F_q, ascending coefficients, trailing nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    pub q: u64,
    pub coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(q: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { q, coeffs }
    }

    pub fn zero(q: u64) -> Self {
        ModPoly { q, coeffs: vec![] }
    }

    pub fn one(q: u64) -> Self {
        ModPoly { q, coeffs: vec![1] }
    }

    pub fn x(q: u64) -> Self {
        ModPoly { q, coeffs: vec![0, 1] }
    }

    pub fn from_intpoly(p: &crate::poly::IntPoly, q: u64) -> Self {
        let bq = BigInt::from(q);
        let v = p
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&bq).to_u64().unwrap())
            .collect();
        ModPoly::new(q, v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        if self.coeffs.is_empty() {
            0
        } else {
            self.coeffs.len() - 1
        }
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn make_monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.leading(), self.q);
        ModPoly::new(
            self.q,
            self.coeffs.iter().map(|&c| mulmod(c, inv, self.q)).collect(),
        )
    }

    pub fn add(&self, o: &ModPoly) -> ModPoly {
        let q = self.q;
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = vec![0u64; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = o.coeffs.get(i).copied().unwrap_or(0);
            v[i] = (a + b) % q;
        }
        ModPoly::new(q, v)
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        let q = self.q;
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = vec![0u64; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = o.coeffs.get(i).copied().unwrap_or(0);
            v[i] = (a + q - b) % q;
        }
        ModPoly::new(q, v)
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.q);
        }
        let q = self.q;
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mulmod(a, b, q)) % q;
            }
        }
        ModPoly::new(q, v)
    }

    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!d.is_zero());
        let q = self.q;
        if self.is_zero() || self.degree() < d.degree() {
            return (ModPoly::zero(q), self.clone());
        }
        let dinv = invmod(d.leading(), q);
        let mut rem = self.coeffs.clone();
        let n = self.degree();
        let m = d.degree();
        let mut quo = vec![0u64; n - m + 1];
        for k in (0..=n - m).rev() {
            let c = mulmod(rem[k + m], dinv, q);
            if c != 0 {
                quo[k] = c;
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = (rem[k + j] + q - mulmod(c, dc, q)) % q;
                }
            }
        }
        (ModPoly::new(q, quo), ModPoly::new(q, rem))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> ModPoly {
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(self.q);
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, (i as u64) % self.q, self.q))
            .collect();
        ModPoly::new(self.q, v)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// self^e mod m by square-and-multiply.
    pub fn powmod_poly(&self, e: u64, m: &ModPoly) -> ModPoly {
        let mut acc = ModPoly::one(self.q);
        let mut b = self.rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        acc
    }

    /// x^(q^k) mod m, iterating the q-power Frobenius by modular
    /// composition with x^q mod m.
    pub fn frobenius_power(m: &ModPoly, k: usize) -> ModPoly {
        let q = m.q;
        let xq1 = ModPoly::x(q).powmod_poly(q, m);
        let mut xq = xq1.clone();
        for _ in 1..k {
            xq = compose_mod(&xq, &xq1, m);
        }
        xq
    }
}

/// f(g) mod m via Horner.
pub fn compose_mod(f: &ModPoly, g: &ModPoly, m: &ModPoly) -> ModPoly {
    let q = f.q;
    let mut acc = ModPoly::zero(q);
    for &c in f.coeffs.iter().rev() {
        acc = acc.mul(g).rem(m);
        acc = acc.add(&ModPoly::new(q, vec![c]));
    }
    acc
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// returns (d, product of irreducible factors of degree d) pairs, d ascending.
pub fn distinct_degree(f: &ModPoly) -> Vec<(usize, ModPoly)> {
    let q = f.q;
    let mut out = Vec::new();
    let mut f = f.make_monic();
    let mut xq = ModPoly::x(q).powmod_poly(q, &f); // x^(q^1) mod f
    let mut d = 1usize;
    while 2 * d <= f.degree() {
        let diff = xq.sub(&ModPoly::x(q)).rem(&f);
        let g = f.gcd(&diff);
        if g.degree() > 0 {
            out.push((d, g.clone()));
            f = f.div_rem(&g).0;
            if f.degree() == 0 {
                return out;
            }
            xq = xq.rem(&f);
        }
        d += 1;
        xq = xq.powmod_poly(q, &f);
    }
    if f.degree() > 0 {
        out.push((f.degree(), f));
    }
    out
}

/// Deterministic pseudo-random source for equal-degree splitting.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// Equal-degree factorization (Cantor-Zassenhaus) of a monic squarefree
/// product of degree-d irreducibles, odd q.
pub fn equal_degree(f: &ModPoly, d: usize) -> Vec<ModPoly> {
    let q = f.q;
    if f.degree() == d {
        return vec![f.make_monic()];
    }
    let mut rng = SplitMix(0x5eed_1234_dead_beef ^ (f.degree() as u64) << 17 ^ q);
    loop {
        // random polynomial of degree < deg f
        let mut v = vec![0u64; f.degree()];
        for c in v.iter_mut() {
            *c = rng.next() % q;
        }
        let r = ModPoly::new(q, v);
        if r.is_zero() {
            continue;
        }
        let g0 = f.gcd(&r);
        if g0.degree() > 0 && g0.degree() < f.degree() {
            let mut out = equal_degree(&g0, d);
            out.extend(equal_degree(&f.div_rem(&g0).0, d));
            return out;
        }
        // r^((q^d - 1)/2) mod f
        let e = (BigInt::from(q).pow(d as u32) - 1) / 2;
        let h = powmod_bigexp(&r, &e, f);
        let g = f.gcd(&h.sub(&ModPoly::one(q)));
        if g.degree() > 0 && g.degree() < f.degree() {
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&f.div_rem(&g).0, d));
            return out;
        }
    }
}

fn powmod_bigexp(b: &ModPoly, e: &BigInt, m: &ModPoly) -> ModPoly {
    let mut acc = ModPoly::one(b.q);
    let base = b.rem(m);
    for i in (0..e.bits()).rev() {
        acc = acc.mul(&acc).rem(m);
        if e.bit(i) {
            acc = acc.mul(&base).rem(m);
        }
    }
    acc
}

/// Full factorization of a squarefree f over F_q (monic factors).
pub fn factor_squarefree_mod(f: &ModPoly) -> Vec<ModPoly> {
    let mut out = Vec::new();
    for (d, prod) in distinct_degree(&f.make_monic()) {
        if prod.degree() == d {
            out.push(prod);
        } else {
            out.extend(equal_degree(&prod, d));
        }
    }
    out.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
    out
}

/// Irreducibility over F_q (Rabin's test).
pub fn is_irreducible_mod(f: &ModPoly) -> bool {
    let n = f.degree();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.make_monic();
    let q = f.q;
    let xq1 = ModPoly::x(q).powmod_poly(q, &f);
    // powers[k] = x^(q^k) mod f
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(ModPoly::x(q).rem(&f));
    powers.push(xq1.clone());
    for _ in 2..=n {
        let next = compose_mod(powers.last().unwrap(), &xq1, &f);
        powers.push(next);
    }
    if !powers[n].sub(&ModPoly::x(q)).rem(&f).is_zero() {
        return false;
    }
    // for each prime t | n: gcd(x^(q^(n/t)) - x, f) must be constant
    let mut m = n;
    let mut prime_divs = Vec::new();
    let mut t = 2;
    while t * t <= m {
        if m % t == 0 {
            prime_divs.push(t);
            while m % t == 0 {
                m /= t;
            }
        }
        t += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    for t in prime_divs {
        let g = f.gcd(&powers[n / t].sub(&ModPoly::x(q)));
        if g.degree() > 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_mod_ops() {
        let q = 13;
        let f = ModPoly::new(q, vec![1, 0, 1]); // x^2 + 1
        let g = ModPoly::new(q, vec![12, 1]); // x - 1
        let (quo, rem) = f.div_rem(&g);
        assert_eq!(quo.mul(&g).add(&rem), f);
    }

    #[test]
    fn ddf_splits_x4_minus_1() {
        // x^4 - 1 over F_5 = (x-1)(x+1)(x-2)(x+2)
        let f = ModPoly::new(5, vec![4, 0, 0, 0, 1]);
        let parts = distinct_degree(&f);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, 1);
        let irr = factor_squarefree_mod(&f);
        assert_eq!(irr.len(), 4);
        for p in &irr {
            assert_eq!(p.degree(), 1);
        }
    }

    #[test]
    fn irreducibility_mod() {
        // x^2 + 1 irreducible over F_7 (7 = 3 mod 4), reducible over F_13
        assert!(is_irreducible_mod(&ModPoly::new(7, vec![1, 0, 1])));
        assert!(!is_irreducible_mod(&ModPoly::new(13, vec![1, 0, 1])));
    }

    #[test]
    fn edf_equal_degree_two() {
        // (x^2+1)(x^2+x+3) over F_7, coprime squarefree quadratics
        let a = ModPoly::new(7, vec![1, 0, 1]);
        let b = ModPoly::new(7, vec![3, 1, 1]);
        assert!(is_irreducible_mod(&b));
        let f = a.mul(&b);
        let fs = factor_squarefree_mod(&f);
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&a) && fs.contains(&b));
    }
}
