//! Division polynomials for short Weierstrass curves, and the homogeneous
//! two-variable forms specialized to the quartic family y^2 = x^3 - Dx and
//! the sextic family y^2 = x^3 + A.
//!
//! The generic recursion (`psi_generic`) is kept independent of the
//! homogeneous recursions so the two can be tested against each other.

use crate::bihom::BiHomPoly;
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// The quartic twist curve y^2 = x^3 - Dx.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveQuartic {
    d: BigInt,
}

impl CurveQuartic {
    pub fn new(d: BigInt) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(CurveQuartic { d })
        }
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }
}

/// The sextic twist curve y^2 = x^3 + A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSextic {
    a: BigInt,
}

impl CurveSextic {
    pub fn new(a: BigInt) -> Option<Self> {
        if a.is_zero() {
            None
        } else {
            Some(CurveSextic { a })
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
}

/// psi_n written as P(x) * y^e with e in {0, 1}; y^2 is eliminated through
/// the curve equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivPoly {
    pub even_part: IntPoly,
    pub y_power: u8,
}

/// Division polynomials of y^2 = x^3 + a4 x + a6 by the standard recursion.
pub struct GenericDivisionPolys {
    a4: BigInt,
    a6: BigInt,
    curve: IntPoly, // x^3 + a4 x + a6
    cache: HashMap<i64, DivPoly>,
}

impl GenericDivisionPolys {
    pub fn new(a4: BigInt, a6: BigInt) -> Self {
        let curve = IntPoly::new(vec![a6.clone(), a4.clone(), BigInt::zero(), BigInt::one()]);
        GenericDivisionPolys { a4, a6, curve, cache: HashMap::new() }
    }

    /// psi_n for n >= -1 (psi_{-1} = -1 and psi_0 = 0 seed the recursions).
    pub fn psi(&mut self, n: i64) -> DivPoly {
        if let Some(hit) = self.cache.get(&n) {
            return hit.clone();
        }
        let a = &self.a4.clone();
        let b = &self.a6.clone();
        let val = match n {
            -1 => DivPoly { even_part: -IntPoly::one(), y_power: 0 },
            0 => DivPoly { even_part: IntPoly::zero(), y_power: 0 },
            1 => DivPoly { even_part: IntPoly::one(), y_power: 0 },
            2 => DivPoly { even_part: IntPoly::constant(BigInt::from(2)), y_power: 1 },
            3 => {
                // 3x^4 + 6a x^2 + 12b x - a^2
                DivPoly {
                    even_part: IntPoly::new(vec![
                        -(a * a),
                        BigInt::from(12) * b,
                        BigInt::from(6) * a,
                        BigInt::zero(),
                        BigInt::from(3),
                    ]),
                    y_power: 0,
                }
            }
            4 => {
                // 4y (x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
                DivPoly {
                    even_part: IntPoly::new(vec![
                        BigInt::from(-8) * b * b - a * a * a,
                        BigInt::from(-4) * a * b,
                        BigInt::from(-5) * a * a,
                        BigInt::from(20) * b,
                        BigInt::from(5) * a,
                        BigInt::zero(),
                        BigInt::one(),
                    ])
                    .scale(&BigInt::from(4)),
                    y_power: 1,
                }
            }
            n if n >= 5 => {
                let m = n / 2;
                if n % 2 == 1 {
                    // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
                    let (pm2, pm) = (self.psi(m + 2), self.psi(m));
                    let (pm1l, pm1r) = (self.psi(m - 1), self.psi(m + 1));
                    let t1 = self.mul(&pm2, &self.pow3(&pm));
                    let t2 = self.mul(&pm1l, &self.pow3(&pm1r));
                    self.sub(&t1, &t2)
                } else {
                    // psi_2 psi_{2m} = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2)
                    let (pa, pb) = (self.psi(m + 2), self.psi(m - 1));
                    let (pc, pd) = (self.psi(m - 2), self.psi(m + 1));
                    let pm = self.psi(m);
                    let s1 = self.mul(&pa, &self.sq(&pb));
                    let s2 = self.mul(&pc, &self.sq(&pd));
                    let inner = self.sub(&s1, &s2);
                    let num = self.mul(&pm, &inner);
                    // after y^2-elimination the product is y-free; dividing by
                    // psi_2 = 2y leaves y * (num / (2(x^3 + a4 x + a6)))
                    assert_eq!(num.y_power, 0, "even-index numerator reduces to Z[x]");
                    let den = self.curve.scale(&BigInt::from(2));
                    let half = num
                        .even_part
                        .exact_div(&den)
                        .expect("psi_2 divides the even-index recursion numerator");
                    DivPoly { even_part: half, y_power: 1 }
                }
            }
            _ => panic!("psi index out of range: {}", n),
        };
        self.cache.insert(n, val.clone());
        val
    }

    /// Multiply two represented polynomials, reducing y^2 via the curve.
    fn mul(&self, p: &DivPoly, q: &DivPoly) -> DivPoly {
        let mut even = &p.even_part * &q.even_part;
        let mut y = p.y_power + q.y_power;
        while y >= 2 {
            even = &even * &self.curve;
            y -= 2;
        }
        DivPoly { even_part: even, y_power: y }
    }

    fn sq(&self, p: &DivPoly) -> DivPoly {
        self.mul(p, p)
    }

    fn pow3(&self, p: &DivPoly) -> DivPoly {
        self.mul(&self.sq(p), p)
    }

    fn sub(&self, p: &DivPoly, q: &DivPoly) -> DivPoly {
        assert_eq!(p.y_power, q.y_power, "cannot subtract mixed y-parities");
        DivPoly { even_part: &p.even_part - &q.even_part, y_power: p.y_power }
    }

    /// phi_n = x psi_n^2 - psi_{n+1} psi_{n-1}, a pure polynomial in x.
    pub fn phi(&mut self, n: i64) -> IntPoly {
        let pn = self.psi(n);
        let (pl, pr) = (self.psi(n + 1), self.psi(n - 1));
        let x = DivPoly { even_part: IntPoly::x(), y_power: 0 };
        let t1 = self.mul(&x, &self.sq(&pn));
        let t2 = self.mul(&pl, &pr);
        let out = self.sub(&t1, &t2);
        assert_eq!(out.y_power, 0);
        out.even_part
    }

    /// omega_n for odd n: y * P(x) with
    /// 4 y omega_n = psi_{n+2} psi_{n-1}^2 - psi_{n-2} psi_{n+1}^2.
    pub fn omega_odd(&mut self, n: i64) -> DivPoly {
        assert!(n >= 1 && n % 2 == 1);
        let (pa, pb) = (self.psi(n + 2), self.psi(n - 1));
        let (pc, pd) = (self.psi(n - 2), self.psi(n + 1));
        let t1 = self.mul(&pa, &self.sq(&pb));
        let t2 = self.mul(&pc, &self.sq(&pd));
        let num = self.sub(&t1, &t2);
        // both terms reduce to pure x-polynomials divisible by 4*(curve);
        // omega_n = y * (num / (4 * curve))
        assert_eq!(num.y_power, 0);
        let den = self.curve.scale(&BigInt::from(4));
        let p = num
            .even_part
            .exact_div(&den)
            .expect("omega numerator divisible by 4(x^3 + a4 x + a6)");
        DivPoly { even_part: p, y_power: 1 }
    }

    pub fn a4(&self) -> &BigInt {
        &self.a4
    }

    pub fn a6(&self) -> &BigInt {
        &self.a6
    }
}

/// psi_n for y^2 = x^3 + a4 x + a6.
pub fn psi_generic(n: u32, a4: &BigInt, a6: &BigInt) -> DivPoly {
    GenericDivisionPolys::new(a4.clone(), a6.clone()).psi(n as i64)
}

/// omega_n (odd n) for y^2 = x^3 + a4 x + a6, as y * P(x).
pub fn omega_generic(n: u32, a4: &BigInt, a6: &BigInt) -> DivPoly {
    GenericDivisionPolys::new(a4.clone(), a6.clone()).omega_odd(n as i64)
}

// ---------------------------------------------------------------------------
// Quartic family: psi_n = f_n(x^2, D) (n odd), 2y f_n(x^2, D) (n even)
// ---------------------------------------------------------------------------

/// Homogeneous forms f_n(Z, W) for the quartic family, by the three-branch
/// homogeneous recursion with memoization.
pub struct QuarticForms {
    cache: HashMap<u32, BiHomPoly>,
}

impl Default for QuarticForms {
    fn default() -> Self {
        Self::new()
    }
}

impl QuarticForms {
    pub fn new() -> Self {
        QuarticForms { cache: HashMap::new() }
    }

    /// Degree of f_n: (n^2-1)/4 for odd n, (n^2-4)/4 for even n >= 2.
    pub fn degree(n: u32) -> usize {
        if n == 0 {
            0
        } else if n % 2 == 1 {
            ((n * n - 1) / 4) as usize
        } else {
            ((n * n - 4) / 4) as usize
        }
    }

    pub fn f(&mut self, n: u32) -> BiHomPoly {
        if let Some(hit) = self.cache.get(&n) {
            return hit.clone();
        }
        let val = match n {
            0 => BiHomPoly::constant(BigInt::zero()),
            1 | 2 => BiHomPoly::one(),
            3 => BiHomPoly::from_i64(2, &[3, -6, -1]),
            4 => BiHomPoly::from_i64(3, &[2, -10, -10, 2]),
            _ => {
                let scaled_z = BiHomPoly::z().scale(&BigInt::from(16));
                let sixteen_z_zw2 = &scaled_z * &BiHomPoly::z_minus_w().pow(2);
                if n % 4 == 1 {
                    // f_{4m+1} = 16 Z (Z-W)^2 f_{2m+2} f_{2m}^3 - f_{2m-1} f_{2m+1}^3
                    let m = (n - 1) / 4;
                    let (fa, fb) = (self.f(2 * m + 2), self.f(2 * m));
                    let (fc, fd) = (self.f(2 * m - 1), self.f(2 * m + 1));
                    let t1 = &(&sixteen_z_zw2 * &fa) * &fb.pow(3);
                    let t2 = &fc * &fd.pow(3);
                    &t1 - &t2
                } else if n % 4 == 3 {
                    // f_{4m+3} = f_{2m+3} f_{2m+1}^3 - 16 Z (Z-W)^2 f_{2m} f_{2m+2}^3
                    let m = (n - 3) / 4;
                    let (fa, fb) = (self.f(2 * m + 3), self.f(2 * m + 1));
                    let (fc, fd) = (self.f(2 * m), self.f(2 * m + 2));
                    let t1 = &fa * &fb.pow(3);
                    let t2 = &(&sixteen_z_zw2 * &fc) * &fd.pow(3);
                    &t1 - &t2
                } else {
                    // f_{2m} = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)
                    let m = n / 2;
                    let (fa, fb) = (self.f(m + 2), self.f(m - 1));
                    let (fc, fd) = (self.f(m - 2), self.f(m + 1));
                    let fm = self.f(m);
                    let t1 = &fa * &fb.pow(2);
                    let t2 = &fc * &fd.pow(2);
                    &fm * &(&t1 - &t2)
                }
            }
        };
        debug_assert_eq!(val.degree(), Self::degree(n), "degree law for f_{}", n);
        self.cache.insert(n, val.clone());
        val
    }

    /// Monic forms g_n(Z, W) with phi_n = x g_n(x^2, D)^2 (n odd) or
    /// g_n(x^2, D)^2 (n even): assembled from phi_n and an exact square root.
    pub fn g(&mut self, n: u32) -> BiHomPoly {
        assert!(n >= 1);
        let g_tilde = if n % 2 == 1 {
            // phi_n = x [f_n^2 - 4(Z-W) f_{n+1} f_{n-1}]_{Z=x^2, W=D}
            let (fn_, fl, fr) = (self.f(n), self.f(n + 1), self.f(n - 1));
            let t1 = fn_.pow(2);
            let t2 = &BiHomPoly::z_minus_w().scale(&BigInt::from(4)) * &(&fl * &fr);
            &t1 - &t2
        } else {
            // phi_n = [4 Z (Z-W) f_n^2 - f_{n+1} f_{n-1}]_{Z=x^2, W=D}
            let (fn_, fl, fr) = (self.f(n), self.f(n + 1), self.f(n - 1));
            let t1 = &(&BiHomPoly::z().scale(&BigInt::from(4)) * &BiHomPoly::z_minus_w())
                * &fn_.pow(2);
            let t2 = &fl * &fr;
            &t1 - &t2
        };
        g_tilde
            .sqrt_exact()
            .expect("phi_n square structure is guaranteed for the quartic family")
    }
}

/// f_n(Z, W) for the quartic family.
pub fn f_quartic(n: u32) -> BiHomPoly {
    assert!(n >= 1);
    QuarticForms::new().f(n)
}

/// g_n(Z, W) for the quartic family (monic of degree (n^2-1)/4 resp. n^2/4).
pub fn g_quartic(n: u32) -> BiHomPoly {
    QuarticForms::new().g(n)
}

// ---------------------------------------------------------------------------
// Sextic family: psi_n = pref(n) * f_n(y^2, A) with pref in {1, x, 2y, 2xy}
// ---------------------------------------------------------------------------

/// psi_n of the sextic family in the reduced algebra
/// x^e y^d F(Z, W) with Z = y^2, W = A, x^3 = Z - W, y^2 = Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SexticRep {
    pub form: BiHomPoly,
    pub xe: u8,
    pub ye: u8,
}

impl SexticRep {
    pub fn mul(&self, o: &SexticRep) -> SexticRep {
        let mut form = &self.form * &o.form;
        let mut xe = self.xe + o.xe;
        let mut ye = self.ye + o.ye;
        while ye >= 2 {
            form = &form * &BiHomPoly::z();
            ye -= 2;
        }
        while xe >= 3 {
            form = &form * &BiHomPoly::z_minus_w();
            xe -= 3;
        }
        SexticRep { form, xe, ye }
    }

    pub fn pow(&self, e: usize) -> SexticRep {
        let mut acc = SexticRep { form: BiHomPoly::one(), xe: 0, ye: 0 };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sub(&self, o: &SexticRep) -> SexticRep {
        assert_eq!((self.xe, self.ye), (o.xe, o.ye), "mixed monomial parts");
        SexticRep { form: &self.form - &o.form, xe: self.xe, ye: self.ye }
    }

    /// Exact division, borrowing y^2 = Z and x^3 = Z - W as needed.
    pub fn div(&self, o: &SexticRep) -> SexticRep {
        let mut form = self.form.clone();
        let mut xe = self.xe as i32;
        let mut ye = self.ye as i32;
        xe -= o.xe as i32;
        ye -= o.ye as i32;
        while ye < 0 {
            // 1/y = y/Z
            form = form
                .exact_div(&BiHomPoly::z())
                .expect("numerator must be divisible by Z to borrow a y");
            ye += 2;
        }
        while xe < 0 {
            form = form
                .exact_div(&BiHomPoly::z_minus_w())
                .expect("numerator must be divisible by Z - W to borrow an x");
            xe += 3;
        }
        let form = form
            .exact_div(&o.form)
            .expect("sextic division polynomial quotient must be exact");
        SexticRep { form, xe: xe as u8, ye: ye as u8 }
    }
}

/// Memoized psi_n of the sextic family in the reduced algebra.
pub struct SexticForms {
    cache: HashMap<u32, SexticRep>,
}

impl Default for SexticForms {
    fn default() -> Self {
        Self::new()
    }
}

impl SexticForms {
    pub fn new() -> Self {
        SexticForms { cache: HashMap::new() }
    }

    /// Degree d_n per the four-case table.
    pub fn degree(n: u32) -> usize {
        let n2 = (n * n) as usize;
        match n % 6 {
            1 | 5 => (n2 - 1) / 6,
            3 => (n2 - 3) / 6,
            2 | 4 => (n2 - 4) / 6,
            _ => (n2 - 6) / 6,
        }
    }

    /// Representation of psi_n: x^xe y^ye F_n(Z, W). For even n the form
    /// carries the factor 2 of the prefactor.
    pub fn psi_rep(&mut self, n: u32) -> SexticRep {
        if let Some(hit) = self.cache.get(&n) {
            return hit.clone();
        }
        let val = match n {
            1 => SexticRep { form: BiHomPoly::one(), xe: 0, ye: 0 },
            2 => SexticRep { form: BiHomPoly::constant(BigInt::from(2)), xe: 0, ye: 1 },
            3 => SexticRep { form: BiHomPoly::from_i64(1, &[3, 9]), xe: 1, ye: 0 },
            4 => SexticRep {
                form: BiHomPoly::from_i64(2, &[4, 72, -108]),
                xe: 0,
                ye: 1,
            },
            _ => {
                let m = n / 2;
                if n % 2 == 1 {
                    let (pa, pb) = (self.psi_rep(m + 2), self.psi_rep(m));
                    let (pc, pd) = (self.psi_rep(m - 1), self.psi_rep(m + 1));
                    pa.mul(&pb.pow(3)).sub(&pc.mul(&pd.pow(3)))
                } else {
                    let (pa, pb) = (self.psi_rep(m + 2), self.psi_rep(m - 1));
                    let (pc, pd) = (self.psi_rep(m - 2), self.psi_rep(m + 1));
                    let pm = self.psi_rep(m);
                    let two_y = self.psi_rep(2);
                    let inner = pa.mul(&pb.pow(2)).sub(&pc.mul(&pd.pow(2)));
                    pm.mul(&inner).div(&two_y)
                }
            }
        };
        // representation check against the prefactor table
        let (want_x, want_y) = match n % 6 {
            1 | 5 => (0, 0),
            3 => (1, 0),
            2 | 4 => (0, 1),
            _ => (1, 1),
        };
        assert_eq!(
            (val.xe, val.ye),
            (want_x, want_y),
            "monomial part of psi_{} off the expected class",
            n
        );
        assert_eq!(val.form.degree(), Self::degree(n), "degree law for sextic f_{}", n);
        self.cache.insert(n, val.clone());
        val
    }

    /// f_n(Z, W): the form with the numeric prefactor (1 or 2) stripped.
    pub fn f(&mut self, n: u32) -> BiHomPoly {
        let rep = self.psi_rep(n);
        if n % 2 == 0 {
            let uni = rep.form.as_unipoly_in_z();
            let half = uni
                .exact_div(&IntPoly::constant(BigInt::from(2)))
                .expect("even sextic form carries the prefactor 2");
            BiHomPoly::from_unipoly_in_z(&half, rep.form.degree())
        } else {
            rep.form
        }
    }
}

/// f_n(Z, W) for the sextic family.
pub fn f_sextic(n: u32) -> BiHomPoly {
    assert!(n >= 1);
    SexticForms::new().f(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn psi2_is_2y() {
        let p = psi_generic(2, &bi(-7), &bi(0));
        assert_eq!(p.y_power, 1);
        assert_eq!(p.even_part, IntPoly::constant(bi(2)));
    }

    #[test]
    fn psi3_quartic_matches_f3() {
        // psi_3 for a4 = -D, a6 = 0 is 3x^4 - 6Dx^2 - D^2 = f_3(x^2, D)
        let d = bi(5);
        let p = psi_generic(3, &(-&d), &bi(0));
        assert_eq!(p.y_power, 0);
        let f3 = f_quartic(3);
        for x in -4i64..=4 {
            let lhs = p.even_part.eval(&bi(x));
            let rhs = f3.eval(&(bi(x) * bi(x)), &d);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn paper_base_cases_quartic() {
        assert_eq!(f_quartic(1), BiHomPoly::one());
        assert_eq!(f_quartic(2), BiHomPoly::one());
        assert_eq!(f_quartic(3), BiHomPoly::from_i64(2, &[3, -6, -1]));
        assert_eq!(f_quartic(4), BiHomPoly::from_i64(3, &[2, -10, -10, 2]));
        // g_2 = Z + W; g_1 = 1
        assert_eq!(g_quartic(2), BiHomPoly::from_i64(1, &[1, 1]));
        assert_eq!(g_quartic(1), BiHomPoly::one());
    }

    #[test]
    fn paper_base_cases_sextic() {
        assert_eq!(f_sextic(1), BiHomPoly::one());
        assert_eq!(f_sextic(2), BiHomPoly::one());
        // f_3 = 3(Z + 3W), f_4 = 2(Z^2 + 18ZW - 27W^2)
        assert_eq!(f_sextic(3), BiHomPoly::from_i64(1, &[3, 9]));
        assert_eq!(f_sextic(4), BiHomPoly::from_i64(2, &[2, 36, -54]));
    }

    #[test]
    fn coefficient_laws_quartic() {
        let mut forms = QuarticForms::new();
        for n in 1u32..=50 {
            let f = forms.f(n);
            assert_eq!(f.degree(), QuarticForms::degree(n), "s_{}", n);
            if n % 2 == 1 {
                assert_eq!(f.lead_z(), bi(n as i64), "c_{}", n);
                let want = if (n - 1) / 2 % 2 == 0 { bi(1) } else { bi(-1) };
                assert_eq!(f.lead_w(), want, "d_{}", n);
            } else {
                assert_eq!(f.lead_z(), bi((n / 2) as i64), "c_{}", n);
                assert_eq!(f.lead_w(), bi((n / 2) as i64), "d_{}", n);
            }
        }
    }

    #[test]
    fn g_monic_up_to_50() {
        let mut forms = QuarticForms::new();
        for n in 1u32..=50 {
            let g = forms.g(n);
            let want_deg = if n % 2 == 1 {
                ((n * n - 1) / 4) as usize
            } else {
                ((n * n) / 4) as usize
            };
            assert_eq!(g.degree(), want_deg, "deg g_{}", n);
            assert!(g.lead_z().is_one(), "g_{} monic", n);
        }
    }

    #[test]
    fn coefficient_laws_sextic() {
        let mut forms = SexticForms::new();
        for n in 1u32..=50 {
            let f = forms.f(n);
            assert_eq!(f.degree(), SexticForms::degree(n), "d_{}", n);
            let want = if n % 2 == 1 { bi(n as i64) } else { bi((n / 2) as i64) };
            assert_eq!(f.lead_z(), want, "c_{}", n);
        }
    }

    #[test]
    fn specialized_forms_match_generic_quartic() {
        let mut forms = QuarticForms::new();
        for n in 1u32..=14 {
            let f = forms.f(n);
            for (x, d) in [(2i64, 3i64), (-3, 5), (4, -7), (1, 11), (-5, -2)] {
                let mut gen = GenericDivisionPolys::new(bi(-d), bi(0));
                let psi = gen.psi(n as i64);
                let spec = f.eval(&(bi(x) * bi(x)), &bi(d));
                let y2 = bi(x).pow(3) - bi(d) * bi(x);
                if n % 2 == 1 {
                    assert_eq!(psi.y_power, 0);
                    assert_eq!(psi.even_part.eval(&bi(x)), spec, "n={} x={} D={}", n, x, d);
                } else {
                    // psi_n = 2y f_n(x^2, D): the even part is 2 f_n
                    assert_eq!(psi.y_power, 1);
                    let _ = y2;
                    assert_eq!(psi.even_part.eval(&bi(x)), bi(2) * spec);
                }
            }
        }
    }

    #[test]
    fn specialized_forms_match_generic_sextic() {
        let mut forms = SexticForms::new();
        for n in 1u32..=14 {
            let f = forms.f(n);
            for (x, a) in [(2i64, 3i64), (-3, 5), (4, -7), (1, 11), (-5, -2)] {
                let mut gen = GenericDivisionPolys::new(bi(0), bi(a));
                let psi = gen.psi(n as i64);
                let z = bi(x).pow(3) + bi(a); // y^2 = Z
                let spec = f.eval(&z, &bi(a));
                let expected = match n % 6 {
                    1 | 5 => spec.clone(),
                    3 => bi(x) * &spec,
                    2 | 4 => bi(2) * &spec, // psi = 2y f: even part carries 2f
                    _ => bi(2) * bi(x) * &spec,
                };
                assert_eq!(
                    psi.even_part.eval(&bi(x)),
                    expected,
                    "n={} x={} A={}",
                    n,
                    x,
                    a
                );
            }
        }
    }

    #[test]
    fn omega_identity_n3() {
        // omega_3^2 = phi_3^3 + a4 phi_3 psi_3^4 + a6 psi_3^6 for a4 = -1, a6 = 0
        let mut gen = GenericDivisionPolys::new(bi(-1), bi(0));
        let omega = gen.omega_odd(3);
        assert_eq!(omega.y_power, 1);
        let phi = gen.phi(3);
        let psi = gen.psi(3);
        assert_eq!(psi.y_power, 0);
        let psi4 = {
            let s = &psi.even_part * &psi.even_part;
            &s * &s
        };
        let lhs = {
            // omega^2 = y^2 P^2 = (x^3 - x) P^2
            let curve = IntPoly::new(vec![bi(0), bi(-1), bi(0), bi(1)]);
            &(&omega.even_part * &omega.even_part) * &curve
        };
        let rhs = {
            let phi3 = &(&phi * &phi) * &phi;
            &phi3 - &(&phi * &psi4)
        };
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn omega_1_is_y() {
        let omega = omega_generic(1, &bi(-5), &bi(0));
        assert_eq!(omega.y_power, 1);
        assert_eq!(omega.even_part, IntPoly::one());
    }

    #[test]
    fn f9_consistency_random_points() {
        let f9 = f_quartic(9);
        for (x, d) in [(3i64, 2i64), (5, -3), (-2, 7), (6, 1)] {
            let mut gen = GenericDivisionPolys::new(bi(-d), bi(0));
            let psi = gen.psi(9);
            assert_eq!(psi.even_part.eval(&bi(x)), f9.eval(&(bi(x) * bi(x)), &bi(d)));
        }
    }

    #[test]
    fn f7_sextic_consistency() {
        let f7 = f_sextic(7);
        for (x, a) in [(3i64, 2i64), (5, -3), (-2, 7), (6, 1)] {
            let mut gen = GenericDivisionPolys::new(bi(0), bi(a));
            let psi = gen.psi(7);
            let z = bi(x).pow(3) + bi(a);
            assert_eq!(psi.even_part.eval(&bi(x)), f7.eval(&z, &bi(a)));
        }
    }

    #[test]
    fn g4_squares_back_to_phi4() {
        let mut forms = QuarticForms::new();
        let g4 = forms.g(4);
        // phi_4(x) = g_4(x^2, D)^2 at sample points
        for (x, d) in [(2i64, 3i64), (-3, 5), (4, -7)] {
            let mut gen = GenericDivisionPolys::new(bi(-d), bi(0));
            let phi = gen.phi(4);
            let gv = g4.eval(&(bi(x) * bi(x)), &bi(d));
            assert_eq!(phi.eval(&bi(x)), &gv * &gv);
        }
    }
}
