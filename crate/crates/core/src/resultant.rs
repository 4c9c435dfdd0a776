//! Resultants: subresultant PRS over Z for univariate operands, and
//! evaluation/interpolation for operands in Z[Y][X] (eliminating X).

use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Resultant of two integer polynomials via the subresultant PRS
/// (Cohen, Algorithm 3.3.7). Exact, fraction-free.
pub fn resultant_int(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let ca = a.content();
    let cb = b.content();
    a = IntPoly::new(a.coeffs().iter().map(|c| c / &ca).collect());
    b = IntPoly::new(b.coeffs().iter().map(|c| c / &cb).collect());
    let mut s = BigInt::one();
    let mut t = pow_big(&ca, b.deg_or_zero()) * pow_big(&cb, a.deg_or_zero());
    if a.deg_or_zero() < b.deg_or_zero() {
        if a.deg_or_zero() % 2 == 1 && b.deg_or_zero() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg_or_zero() == 0 {
        if b.is_zero() {
            return BigInt::zero();
        }
        return s * t * pow_big(&b.coeff(0), a.deg_or_zero());
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.deg_or_zero();
        let db = b.deg_or_zero();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let (_, r) = a.pseudo_div_rem(&b);
        if r.is_zero() && db > 0 {
            return BigInt::zero();
        }
        a = b;
        let denom = &g * pow_big(&h, delta);
        b = IntPoly::new(
            r.coeffs()
                .iter()
                .map(|c| {
                    let (q, rr) = c.div_rem(&denom);
                    debug_assert!(rr.is_zero(), "subresultant division must be exact");
                    q
                })
                .collect(),
        );
        g = a.leading();
        h = if delta == 0 {
            h
        } else {
            let num = pow_big(&g, delta);
            let den = pow_big(&h, delta - 1);
            let (q, rr) = num.div_rem(&den);
            debug_assert!(rr.is_zero());
            q
        };
        if b.deg_or_zero() == 0 {
            if b.is_zero() {
                return BigInt::zero();
            }
            let da2 = a.deg_or_zero();
            let num = pow_big(&b.coeff(0), da2);
            let den = pow_big(&h, da2.saturating_sub(1));
            let (hh, rr) = num.div_rem(&den);
            debug_assert!(rr.is_zero());
            return s * t * hh;
        }
    }
}

fn pow_big(b: &BigInt, e: usize) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc = acc * b;
    }
    acc
}

/// A polynomial in X with coefficients in Z[Y], ascending in X.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<IntPoly>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    /// Lift a Z[X] polynomial (constant in Y).
    pub fn from_intpoly(p: &IntPoly) -> Self {
        BiPoly::new(p.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_x(&self) -> usize {
        if self.coeffs.is_empty() {
            0
        } else {
            self.coeffs.len() - 1
        }
    }

    pub fn deg_y(&self) -> usize {
        self.coeffs.iter().map(|c| c.deg_or_zero()).max().unwrap_or(0)
    }

    pub fn leading_x(&self) -> IntPoly {
        self.coeffs.last().cloned().unwrap_or_else(IntPoly::zero)
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    /// Specialize Y = y, producing a polynomial in X.
    pub fn eval_y(&self, y: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c.eval(y)).collect())
    }
}

/// Resultant with respect to X of two polynomials in Z[Y][X], computed by
/// specializing Y at enough points and interpolating. Points where either
/// leading X-coefficient vanishes are skipped, so each specialization
/// commutes with the resultant.
pub fn resultant_bipoly(f: &BiPoly, g: &BiPoly) -> IntPoly {
    if f.is_zero() || g.is_zero() {
        return IntPoly::zero();
    }
    let degree_bound = f.deg_y() * g.deg_x() + g.deg_y() * f.deg_x();
    let needed = degree_bound + 1;
    let lead_f = f.leading_x();
    let lead_g = g.leading_x();
    let mut xs: Vec<BigInt> = Vec::with_capacity(needed);
    let mut ys: Vec<BigInt> = Vec::with_capacity(needed);
    let mut k = 0i64;
    while xs.len() < needed {
        let y = BigInt::from(k);
        // alternate 0, 1, -1, 2, -2, ...
        k = if k > 0 { -k } else { -k + 1 };
        if lead_f.eval(&y).is_zero() || lead_g.eval(&y).is_zero() {
            continue;
        }
        let r = resultant_int(&f.eval_y(&y), &g.eval_y(&y));
        xs.push(y);
        ys.push(r);
    }
    interpolate_integer(&xs, &ys, degree_bound)
}

/// Exact interpolation through integer points, with an integrality check.
/// Uses Newton divided differences over rationals represented as
/// numerator/denominator BigInt pairs.
fn interpolate_integer(xs: &[BigInt], ys: &[BigInt], degree_bound: usize) -> IntPoly {
    let n = xs.len();
    // divided differences as exact rationals (num, den), den > 0
    let mut num: Vec<BigInt> = ys.to_vec();
    let mut den: Vec<BigInt> = vec![BigInt::one(); n];
    // coefficients of Newton form
    let mut cnum: Vec<BigInt> = Vec::with_capacity(n);
    let mut cden: Vec<BigInt> = Vec::with_capacity(n);
    cnum.push(num[0].clone());
    cden.push(den[0].clone());
    for level in 1..n {
        for i in 0..n - level {
            // (f[i+1] - f[i]) / (x[i+level] - x[i])
            let dnum = &num[i + 1] * &den[i] - &num[i] * &den[i + 1];
            let dden = &den[i] * &den[i + 1] * (&xs[i + level] - &xs[i]);
            let g = dnum.gcd(&dden);
            let (mut dn, mut dd) = if g.is_zero() {
                (BigInt::zero(), BigInt::one())
            } else {
                (&dnum / &g, &dden / &g)
            };
            if dd.is_negative() {
                dn = -dn;
                dd = -dd;
            }
            num[i] = dn;
            den[i] = dd;
        }
        cnum.push(num[0].clone());
        cden.push(den[0].clone());
    }
    // expand Newton form: p = sum c_k * prod_{j<k} (Y - x_j)
    let mut acc_num = IntPoly::zero();
    let mut acc_den = BigInt::one();
    let mut basis = IntPoly::one();
    for kk in 0..n {
        // acc/acc_den += (cnum/cden) * basis
        let new_den = acc_den.clone() * &cden[kk];
        let left = acc_num.scale(&cden[kk]);
        let right = basis.scale(&(&cnum[kk] * &acc_den));
        acc_num = &left + &right;
        acc_den = new_den;
        let g = acc_num.content().gcd(&acc_den);
        if !g.is_zero() && !g.is_one() {
            acc_num = IntPoly::new(acc_num.coeffs().iter().map(|c| c / &g).collect());
            acc_den = &acc_den / &g;
        }
        basis = &basis * &IntPoly::new(vec![-&xs[kk], BigInt::one()]);
    }
    assert!(
        acc_den.abs().is_one(),
        "interpolated resultant must have integer coefficients"
    );
    if acc_den.is_negative() {
        acc_num = -acc_num;
    }
    debug_assert!(acc_num.deg_or_zero() <= degree_bound);
    acc_num
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn sylvester_small() {
        // Res(X^2+1, X^2-2) = 9 (4x4 Sylvester determinant)
        assert_eq!(resultant_int(&p(&[1, 0, 1]), &p(&[-2, 0, 1])), BigInt::from(9));
    }

    #[test]
    fn resultant_of_self_is_zero() {
        let f = p(&[3, 1, 2]);
        assert_eq!(resultant_int(&f, &f), BigInt::zero());
    }

    #[test]
    fn resultant_linear_vs_quadratic_bipoly() {
        // Res_X(X - 2, X^2 - Y) = +-(4 - Y)
        let f = BiPoly::new(vec![IntPoly::from_i64(&[-2]), IntPoly::one()]);
        let g = BiPoly::new(vec![
            IntPoly::from_i64(&[0, -1]), // -Y
            IntPoly::zero(),
            IntPoly::one(),
        ]);
        let r = resultant_bipoly(&f, &g);
        let want = IntPoly::from_i64(&[4, -1]);
        assert!(r == want || r == -&want, "got {}", r);
    }

    #[test]
    fn product_of_roots_formula() {
        // Res(f, g) = lc(f)^deg g * prod g(alpha) over roots of f
        // f = (X-1)(X-3) = X^2 - 4X + 3, g = X^2 + 2
        // product = (1+2)(9+2) = 33
        let f = p(&[3, -4, 1]);
        let g = p(&[2, 0, 1]);
        assert_eq!(resultant_int(&f, &g), BigInt::from(33));
    }

    #[test]
    fn known_resultant_with_multiplicities() {
        // Res(x^3 - 1, x^2 - 1) = 0 (common root 1)
        assert_eq!(resultant_int(&p(&[-1, 0, 0, 1]), &p(&[-1, 0, 1])), BigInt::zero());
    }
}
