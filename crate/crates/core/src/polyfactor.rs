//! Factorization of integer polynomials over the rationals: squarefree
//! reduction, modular factorization, quadratic Hensel lifting of a monicized
//! model, and Zassenhaus subset recombination.

use crate::error::AlgebraError;
use crate::modpoly::{self, ModPoly};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Default degree cap for rational factorization.
pub const DEGREE_CAP: usize = 64;

const FACTOR_PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
];

/// Primes used for modular factorization, extended on demand.
fn candidate_primes() -> impl Iterator<Item = u64> {
    FACTOR_PRIMES.iter().copied().chain(
        (300u64..20_000)
            .step_by(2)
            .map(|k| k + 1)
            .filter(|&k| crate::intfactor::is_prime(&BigInt::from(k))),
    )
}

// ---- arithmetic in (Z/m)[x] with big modulus, used by Hensel lifting ----

fn mod_reduce(p: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(p.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn mod_mul(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    mod_reduce(&(a * b), m)
}

fn mod_sub(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    mod_reduce(&(a - b), m)
}

/// Division with remainder by a monic divisor in (Z/m)[x].
fn mod_divmod_monic(a: &IntPoly, h: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let dh = h.deg_or_zero();
    debug_assert!(h.leading().is_one());
    let mut rem: Vec<BigInt> = a.coeffs().to_vec();
    if rem.len() <= dh {
        return (IntPoly::zero(), mod_reduce(a, m));
    }
    let n = rem.len() - 1;
    let mut quo = vec![BigInt::zero(); n - dh + 1];
    for k in (0..=n - dh).rev() {
        let c = rem[k + dh].mod_floor(m);
        if !c.is_zero() {
            for (j, hc) in h.coeffs().iter().enumerate() {
                let t = (&c * hc).mod_floor(m);
                rem[k + j] = (&rem[k + j] - t).mod_floor(m);
            }
        }
        quo[k] = c;
    }
    (IntPoly::new(quo), mod_reduce(&IntPoly::new(rem), m))
}

/// Symmetric representative of coefficients modulo m: in (-m/2, m/2].
fn symmetric(p: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1;
    IntPoly::new(
        p.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn intpoly_from_mod(p: &ModPoly) -> IntPoly {
    IntPoly::new(p.coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

/// Extended Euclid over F_q: s*g + t*h = 1 (g, h coprime mod q).
fn bezout_mod_q(g: &ModPoly, h: &ModPoly) -> (ModPoly, ModPoly) {
    let q = g.q;
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1) = (ModPoly::one(q), ModPoly::zero(q));
    let (mut t0, mut t1) = (ModPoly::zero(q), ModPoly::one(q));
    while !r1.is_zero() {
        let (quo, rem) = r0.div_rem(&r1);
        let s2 = s0.sub(&quo.mul(&s1));
        let t2 = t0.sub(&quo.mul(&t1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(r0.degree(), 0, "operands must be coprime mod q");
    let inv = modpoly::invmod(r0.leading(), q);
    let scale = ModPoly::new(q, vec![inv]);
    (s0.mul(&scale), t0.mul(&scale))
}

/// One quadratic Hensel step: from F = G*H (mod m), S*G + T*H = 1 (mod m),
/// to the same congruences mod m^2. F, G, H monic.
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let m2 = m * m;
    let e = mod_sub(f, &(g * h), &m2);
    let (q1, r1) = mod_divmod_monic(&mod_mul(s, &e, &m2), h, &m2);
    let g1 = mod_reduce(&(g + &(&mod_mul(t, &e, &m2) + &mod_mul(&q1, g, &m2))), &m2);
    let h1 = mod_reduce(&(h + &r1), &m2);
    let b = mod_sub(&(&mod_mul(s, &g1, &m2) + &mod_mul(t, &h1, &m2)), &IntPoly::one(), &m2);
    let (c1, d1) = mod_divmod_monic(&mod_mul(s, &b, &m2), &h1, &m2);
    let s1 = mod_sub(s, &d1, &m2);
    let t1 = mod_sub(t, &(&mod_mul(t, &b, &m2) + &mod_mul(&c1, &g1, &m2)), &m2);
    (g1, h1, s1, t1)
}

/// Lift the monic factorization f = prod(parts) (mod q) to the q-power
/// modulus `modulus` (reached from q by repeated squaring).
fn lift_tree(f: &IntPoly, parts: &[ModPoly], q: u64, modulus: &BigInt) -> Vec<IntPoly> {
    if parts.len() == 1 {
        return vec![mod_reduce(f, modulus)];
    }
    let mid = parts.len() / 2;
    let (left, right) = parts.split_at(mid);
    let mut g = ModPoly::one(q);
    for p in left {
        g = g.mul(p);
    }
    let mut h = ModPoly::one(q);
    for p in right {
        h = h.mul(p);
    }
    let (s, t) = bezout_mod_q(&g, &h);
    let (mut gi, mut hi) = (intpoly_from_mod(&g), intpoly_from_mod(&h));
    let (mut si, mut ti) = (intpoly_from_mod(&s), intpoly_from_mod(&t));
    let mut m = BigInt::from(q);
    while &m < modulus {
        let (g1, h1, s1, t1) = hensel_step(&mod_reduce(f, &(&m * &m)), &gi, &hi, &si, &ti, &m);
        gi = g1;
        hi = h1;
        si = s1;
        ti = t1;
        m = &m * &m;
    }
    let mut out = lift_tree(&gi, left, q, modulus);
    out.extend(lift_tree(&hi, right, q, modulus));
    out
}

/// 2^n * l2-norm bound on coefficients of monic factors of monic f.
fn mignotte_bound(f: &IntPoly) -> BigInt {
    let mut norm2 = BigInt::zero();
    for c in f.coeffs() {
        norm2 += c * c;
    }
    let l2 = norm2.sqrt() + 1;
    (BigInt::one() << f.deg_or_zero()) * l2
}

/// Factor a primitive squarefree polynomial (degree >= 1) into irreducible
/// primitive factors with positive leading coefficients.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg_or_zero();
    if n == 1 {
        return vec![f.clone()];
    }
    let lc = f.leading();
    // monicize: F(x) = lc^(n-1) f(x/lc), monic with integer coefficients
    let monic_f = if lc.is_one() {
        f.clone()
    } else {
        let mut w = Vec::with_capacity(n + 1);
        for (i, c) in f.coeffs().iter().enumerate() {
            if i == n {
                w.push(BigInt::one());
            } else {
                let mut t = c.clone();
                for _ in 0..(n - 1 - i) {
                    t = &t * &lc;
                }
                w.push(t);
            }
        }
        IntPoly::new(w)
    };

    // choose a prime keeping the factorization squarefree, minimizing factor count
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut seen = 0;
    for q in candidate_primes() {
        let fq = ModPoly::from_intpoly(&monic_f, q);
        if fq.degree() != n || !fq.is_squarefree() {
            continue;
        }
        let parts = modpoly::factor_squarefree_mod(&fq);
        let better = match &best {
            None => true,
            Some((_, b)) => parts.len() < b.len(),
        };
        if better {
            best = Some((q, parts));
        }
        seen += 1;
        if seen >= 5 || best.as_ref().map(|(_, b)| b.len()) == Some(1) {
            break;
        }
    }
    let (q, parts) = best.expect("polynomial discriminant divisible by every sampled prime");
    if parts.len() == 1 {
        return vec![f.clone()];
    }

    let bound = mignotte_bound(&monic_f);
    let target = BigInt::from(2) * &bound + 1;
    let modulus = {
        let mut m = BigInt::from(q);
        while m < target {
            m = &m * &m;
        }
        m
    };
    let lifted = lift_tree(&mod_reduce(&monic_f, &modulus), &parts, q, &modulus);

    // subset recombination over the lifted monic factors
    let mut remaining: Vec<IntPoly> = lifted;
    let mut current = monic_f.clone();
    let mut found_monic: Vec<IntPoly> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut advanced = false;
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut prod = IntPoly::one();
            for &i in &combo {
                prod = mod_mul(&prod, &remaining[i], &modulus);
            }
            let cand = symmetric(&prod, &modulus);
            if cand.is_zero() {
                continue;
            }
            // cheap filter: constant term must divide current's constant
            let c0 = cand.coeff(0);
            let f0 = current.coeff(0);
            if !c0.is_zero() && !f0.is_zero() && !(&f0 % &c0).is_zero() {
                continue;
            }
            if let Ok(quo) = current.exact_div(&cand) {
                found_monic.push(cand);
                current = quo;
                let mut keep = Vec::new();
                for (i, g) in remaining.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(g);
                    }
                }
                remaining = keep;
                advanced = true;
                break;
            }
        }
        if !advanced {
            size += 1;
        }
    }
    if current.deg_or_zero() > 0 {
        found_monic.push(current);
    }

    // map monic factors of F back to primitive factors of f
    found_monic
        .into_iter()
        .map(|p| {
            if lc.is_one() {
                p
            } else {
                p.scale_argument(&lc).primitive_positive()
            }
        })
        .collect()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factors over Q with multiplicities: primitive, positive
/// leading coefficients; `prod(content * factors^mult) = input` up to sign.
pub fn factor_poly_q(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>, AlgebraError> {
    factor_poly_q_capped(f, DEGREE_CAP)
}

pub fn factor_poly_q_capped(
    f: &IntPoly,
    cap: usize,
) -> Result<Vec<(IntPoly, u32)>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroOperand);
    }
    let n = f.deg_or_zero();
    if n > cap {
        return Err(AlgebraError::DegreeBudgetExceeded { degree: n, cap });
    }
    let prim = f.primitive_positive();
    if prim.deg_or_zero() == 0 {
        return Ok(vec![]);
    }
    // radical = f / gcd(f, f'), squarefree
    let rad = {
        let g = prim.gcd(&prim.derivative());
        if g.deg_or_zero() == 0 {
            prim.clone()
        } else {
            prim.exact_div(&g.primitive_positive())
                .expect("gcd divides")
                .primitive_positive()
        }
    };
    let mut out = Vec::new();
    for irr in factor_squarefree(&rad.primitive_positive()) {
        let irr = irr.primitive_positive();
        // multiplicity by repeated exact division
        let mut m = 0u32;
        let mut rest = prim.clone();
        while let Ok(quo) = rest.exact_div(&irr) {
            m += 1;
            rest = quo;
        }
        out.push((irr, m));
    }
    out.sort_by(|a, b| {
        (a.0.deg_or_zero(), a.0.coeffs().to_vec()).cmp(&(b.0.deg_or_zero(), b.0.coeffs().to_vec()))
    });
    Ok(out)
}

/// Irreducibility over Q, with a fast modular certificate path.
pub fn is_irreducible_q(f: &IntPoly) -> Result<bool, AlgebraError> {
    is_irreducible_q_capped(f, DEGREE_CAP)
}

pub fn is_irreducible_q_capped(f: &IntPoly, cap: usize) -> Result<bool, AlgebraError> {
    let prim = f.primitive_positive();
    let n = prim.deg_or_zero();
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    if !prim.is_squarefree() {
        return Ok(false);
    }
    let lc = prim.leading();
    let mut tried = 0;
    for &q in FACTOR_PRIMES {
        if (&lc % BigInt::from(q)).is_zero() {
            continue;
        }
        let fq = ModPoly::from_intpoly(&prim, q);
        if fq.degree() != n || !fq.is_squarefree() {
            continue;
        }
        if modpoly::is_irreducible_mod(&fq) {
            return Ok(true);
        }
        tried += 1;
        if tried >= 40 {
            break;
        }
    }
    if n > cap {
        return Err(AlgebraError::DegreeBudgetExceeded { degree: n, cap });
    }
    let fs = factor_poly_q_capped(&prim, cap)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn factor_x4_minus_1() {
        // X^4 - 1 = (X-1)(X+1)(X^2+1)
        let f = p(&[-1, 0, 0, 0, 1]);
        let fs = factor_poly_q(&f).unwrap();
        let degs: Vec<usize> = fs.iter().map(|(g, _)| g.deg_or_zero()).collect();
        assert_eq!(degs, vec![1, 1, 2]);
        let mut prod = IntPoly::one();
        for (g, m) in &fs {
            for _ in 0..*m {
                prod = &prod * g;
            }
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn f3_is_irreducible() {
        // 3X^2 - 6X - 1, discriminant 48 not a square
        let f = p(&[-1, -6, 3]);
        assert!(is_irreducible_q(&f).unwrap());
        assert_eq!(factor_poly_q(&f).unwrap().len(), 1);
    }

    #[test]
    fn multiplicities() {
        // (x+1)^2 (x-2)
        let f = &(&p(&[1, 1]) * &p(&[1, 1])) * &p(&[-2, 1]);
        let fs = factor_poly_q(&f).unwrap();
        assert_eq!(fs.len(), 2);
        let sq = fs.iter().find(|(g, _)| *g == p(&[1, 1])).unwrap();
        assert_eq!(sq.1, 2);
    }

    #[test]
    fn nonmonic_recombination() {
        // (3x+1)(2x+5)(x^2+x+1)
        let f = &(&p(&[1, 3]) * &p(&[5, 2])) * &p(&[1, 1, 1]);
        let fs = factor_poly_q(&f).unwrap();
        assert_eq!(fs.len(), 3);
        let mut prod = IntPoly::constant(f.content());
        for (g, m) in &fs {
            for _ in 0..*m {
                prod = &prod * g;
            }
        }
        assert_eq!(prod.primitive_positive(), f.primitive_positive());
    }

    #[test]
    fn degree_cap_enforced() {
        let mut v = vec![0i64; 70];
        v.push(1);
        v[0] = 1;
        let f = p(&v);
        assert!(matches!(
            factor_poly_q(&f),
            Err(AlgebraError::DegreeBudgetExceeded { .. })
        ));
    }

    #[test]
    fn cyclotomic_like() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let fs = factor_poly_q(&f).unwrap();
        assert_eq!(fs.len(), 4);
    }
}
