//! Defining polynomials of the division-field towers attached to the
//! quartic family y^2 = x^3 - Dx and the sextic family y^2 = x^3 + A.
//!
//! For an odd prime p of good reduction the tower K in F in K(') in L is
//! produced either from the homogeneous forms directly (inert case, base
//! field the CM quadratic field) or from the normalized split prime and
//! its twisted generator (split case, everything over Q). Degrees are
//! verified and irreducibility is certified computationally.

use crate::bihom::BiHomPoly;
use crate::divpoly::{QuarticForms, SexticForms};
use crate::error::{AlgebraError, TowerError};
use crate::intfactor::is_prime;
use crate::poly::IntPoly;
use crate::polyfactor;
use crate::quadratic::{
    self, eisenstein_ab, split_prime_eisenstein, split_prime_gauss, EisensteinInt, GaussInt,
};
use crate::resultant::{resultant_bipoly, BiPoly};
use crate::modpoly::{self, ModPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Base field tag for a defining polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseField {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(i)")]
    Gaussian,
    #[serde(rename = "Q(zeta3)")]
    Eisenstein,
}

impl BaseField {
    fn name(&self) -> &'static str {
        match self {
            BaseField::Rational => "Q",
            BaseField::Gaussian => "Q(i)",
            BaseField::Eisenstein => "Q(zeta3)",
        }
    }

    /// Is q inert in the quadratic base?
    fn is_inert_prime(&self, q: u64) -> bool {
        match self {
            BaseField::Rational => false,
            BaseField::Gaussian => q % 4 == 3,
            BaseField::Eisenstein => q % 3 == 2,
        }
    }
}

/// How an irreducibility verdict was certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CertMethod {
    LinearDegree,
    ModularIrreducible { q: u64 },
    RationalFactorization,
    OddDegreeOverQuadratic,
    InertOddFactor { q: u64 },
    QuadraticDiscriminant,
    ResultantSplitting { shift: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CertOutcome {
    Irreducible,
    /// Factor degrees (with multiplicity) over the reported base.
    Factors(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibilityCertificate {
    pub base: BaseField,
    pub degree: usize,
    pub outcome: CertOutcome,
    pub method: CertMethod,
}

impl IrreducibilityCertificate {
    pub fn is_irreducible(&self) -> bool {
        self.outcome == CertOutcome::Irreducible
    }
}

/// Resource limits for tower construction.
#[derive(Debug, Clone, Copy)]
pub struct TowerConfig {
    /// Rational factorization degree cap.
    pub factor_cap: usize,
    /// Cap on the degree of absolute defining polynomials.
    pub abs_degree_cap: usize,
    /// Primitive-element shifts tried before giving up.
    pub max_shift: u32,
}

impl Default for TowerConfig {
    fn default() -> Self {
        TowerConfig { factor_cap: polyfactor::DEGREE_CAP, abs_degree_cap: 64, max_shift: 12 }
    }
}

/// Certify irreducibility of `poly` over Q or over one of the two CM
/// quadratic fields.
pub fn irreducibility_certificate(
    poly: &IntPoly,
    base: BaseField,
) -> Result<IrreducibilityCertificate, TowerError> {
    irreducibility_certificate_with(poly, base, &TowerConfig::default())
}

pub fn irreducibility_certificate_with(
    poly: &IntPoly,
    base: BaseField,
    cfg: &TowerConfig,
) -> Result<IrreducibilityCertificate, TowerError> {
    let prim = poly.primitive_positive();
    let degree = prim.deg_or_zero();
    assert!(degree >= 1, "certificate requires positive degree");
    // over Q first
    let over_q = certify_rational(&prim, cfg)?;
    if base == BaseField::Rational {
        return Ok(over_q);
    }
    match &over_q.outcome {
        CertOutcome::Factors(degs) => {
            // reducible already over Q; report the rational degrees
            Ok(IrreducibilityCertificate {
                base,
                degree,
                outcome: CertOutcome::Factors(degs.clone()),
                method: over_q.method,
            })
        }
        CertOutcome::Irreducible => {
            if degree % 2 == 1 {
                return Ok(IrreducibilityCertificate {
                    base,
                    degree,
                    outcome: CertOutcome::Irreducible,
                    method: CertMethod::OddDegreeOverQuadratic,
                });
            }
            if degree == 2 {
                // splits over K iff Q[x]/(poly) is K itself
                let disc = {
                    let b = prim.coeff(1);
                    let a = prim.coeff(2);
                    let c = prim.coeff(0);
                    &b * &b - BigInt::from(4) * &a * &c
                };
                let matches_base = match base {
                    BaseField::Gaussian => is_perfect_square(&-&disc),
                    BaseField::Eisenstein => is_perfect_square(&(BigInt::from(-3) * &disc)),
                    BaseField::Rational => unreachable!(),
                };
                return Ok(IrreducibilityCertificate {
                    base,
                    degree,
                    outcome: if matches_base {
                        CertOutcome::Factors(vec![1, 1])
                    } else {
                        CertOutcome::Irreducible
                    },
                    method: CertMethod::QuadraticDiscriminant,
                });
            }
            // look for an inert prime whose factorization pattern has an
            // odd-degree part: residue degrees over K would all be even
            // if K embedded in the root field
            let lc = prim.leading();
            let mut tried = 0;
            for q in 3..20_000u64 {
                if !is_prime(&BigInt::from(q)) || !base.is_inert_prime(q) {
                    continue;
                }
                if (&lc % BigInt::from(q)).is_zero() {
                    continue;
                }
                let fq = ModPoly::from_intpoly(&prim, q);
                if fq.degree() != degree || !fq.is_squarefree() {
                    continue;
                }
                for (d, _part) in modpoly::distinct_degree(&fq) {
                    if d % 2 == 1 {
                        return Ok(IrreducibilityCertificate {
                            base,
                            degree,
                            outcome: CertOutcome::Irreducible,
                            method: CertMethod::InertOddFactor { q },
                        });
                    }
                }
                tried += 1;
                if tried >= 60 {
                    break;
                }
            }
            // fall back to the resultant construction: adjoin the base
            // generator and factor
            if 2 * degree > cfg.factor_cap {
                return Err(TowerError::CertificateUnavailable {
                    degree,
                    base: base.name(),
                });
            }
            for c in 1..=cfg.max_shift {
                let r = adjoin_generator_resultant(&prim, base, c);
                if !r.is_squarefree() || r.deg_or_zero() != 2 * degree {
                    continue;
                }
                let fs = polyfactor::factor_poly_q_capped(&r, cfg.factor_cap)
                    .map_err(TowerError::Algebra)?;
                let max_deg = fs.iter().map(|(g, _)| g.deg_or_zero()).max().unwrap_or(0);
                return Ok(IrreducibilityCertificate {
                    base,
                    degree,
                    outcome: if max_deg == 2 * degree {
                        CertOutcome::Irreducible
                    } else {
                        CertOutcome::Factors(vec![degree / 2, degree / 2])
                    },
                    method: CertMethod::ResultantSplitting { shift: c },
                });
            }
            Err(TowerError::PrimitiveElementFailed)
        }
    }
}

fn certify_rational(
    prim: &IntPoly,
    cfg: &TowerConfig,
) -> Result<IrreducibilityCertificate, TowerError> {
    let degree = prim.deg_or_zero();
    if degree == 1 {
        return Ok(IrreducibilityCertificate {
            base: BaseField::Rational,
            degree,
            outcome: CertOutcome::Irreducible,
            method: CertMethod::LinearDegree,
        });
    }
    if prim.is_squarefree() {
        let lc = prim.leading();
        let mut tried = 0;
        for q in [
            3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
            83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
            173, 179,
        ] {
            if (&lc % BigInt::from(q)).is_zero() {
                continue;
            }
            let fq = ModPoly::from_intpoly(prim, q);
            if fq.degree() != degree || !fq.is_squarefree() {
                continue;
            }
            if modpoly::is_irreducible_mod(&fq) {
                return Ok(IrreducibilityCertificate {
                    base: BaseField::Rational,
                    degree,
                    outcome: CertOutcome::Irreducible,
                    method: CertMethod::ModularIrreducible { q },
                });
            }
            tried += 1;
            if tried >= 40 {
                break;
            }
        }
    }
    let fs = polyfactor::factor_poly_q_capped(prim, cfg.factor_cap).map_err(TowerError::Algebra)?;
    let mut degs = Vec::new();
    for (g, m) in &fs {
        for _ in 0..*m {
            degs.push(g.deg_or_zero());
        }
    }
    degs.sort_unstable();
    Ok(IrreducibilityCertificate {
        base: BaseField::Rational,
        degree,
        outcome: if degs.len() == 1 {
            CertOutcome::Irreducible
        } else {
            CertOutcome::Factors(degs)
        },
        method: CertMethod::RationalFactorization,
    })
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Res_X(f(X), m(Y - X)) where m is the minimal polynomial of c*gamma and
/// gamma generates the quadratic base: the minimal-polynomial construction
/// for alpha + c*gamma.
fn adjoin_generator_resultant(f: &IntPoly, base: BaseField, c: u32) -> IntPoly {
    let c = BigInt::from(c);
    let c2 = &c * &c;
    // poly in X over Z[Y]: (Y - X)^2 [+ c(Y - X)] + c^2 or 3c^2 form
    // gauss: m_{ci}(T) = T^2 + c^2; eisenstein: m_{c zeta}(T) = T^2 + cT + c^2
    let (lin, cst) = match base {
        BaseField::Gaussian => (BigInt::zero(), c2),
        BaseField::Eisenstein => (c.clone(), c2),
        BaseField::Rational => unreachable!(),
    };
    // (Y - X)^2 + lin*(Y - X) + cst as a BiPoly in X (coefficients in Z[Y])
    // = X^2 - (2Y + lin) X + (Y^2 + lin*Y + cst)
    let g = BiPoly::new(vec![
        IntPoly::new(vec![cst, lin.clone(), BigInt::one()]),
        IntPoly::new(vec![-lin, BigInt::from(-2)]),
        IntPoly::one(),
    ]);
    resultant_bipoly(&BiPoly::from_intpoly(f), &g).primitive_positive()
}

/// Inert or split behavior of p in the CM field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitCase {
    Inert,
    Split,
}

/// Tower data for the quartic family at (p, D).
#[derive(Debug, Clone)]
pub struct FieldTowerQuartic {
    pub p: u64,
    pub d: BigInt,
    pub case: SplitCase,
    pub pi: Option<GaussInt>,
    pub pi_d: Option<GaussInt>,
    /// Base field of the relative defining polynomials.
    pub base: BaseField,
    pub f_poly: IntPoly,
    pub k_poly: IntPoly,
    pub l_poly: IntPoly,
    pub l_abs_poly: Option<IntPoly>,
    pub certificates: Vec<(String, IrreducibilityCertificate)>,
}

/// Tower data for the sextic family at (p, A).
#[derive(Debug, Clone)]
pub struct FieldTowerSextic {
    pub p: u64,
    pub a: BigInt,
    pub case: SplitCase,
    pub pi: Option<EisensteinInt>,
    pub pi_a: Option<EisensteinInt>,
    pub base: BaseField,
    pub f_poly: IntPoly,
    pub k_poly: IntPoly,
    pub kprime_poly: IntPoly,
    pub l_abs_poly: Option<IntPoly>,
    /// Degree of the annihilating polynomial of y(P) (split case).
    pub t_p: Option<usize>,
    /// h_{A,p}(Y), the half-degree polynomial (split case).
    pub h_poly: Option<IntPoly>,
    pub certificates: Vec<(String, IrreducibilityCertificate)>,
}

fn check_odd_prime(p: u64) -> Result<(), TowerError> {
    if p < 3 || !is_prime(&BigInt::from(p)) {
        return Err(TowerError::NotPrime(BigInt::from(p)));
    }
    Ok(())
}

/// The assembled split-case form f_{.,p}(X) as a homogeneous polynomial in
/// (X, D): 4X(X-D) g_{|a|}^2 f_{|b|}^2 + g_{|b|}^2 f_{|a|}^2.
fn quartic_split_form(p: u64, pi: &GaussInt) -> BiHomPoly {
    let a_abs = pi.a.magnitude().to_u64_digits()[0];
    let b_abs = pi.b.magnitude().to_u64_digits()[0];
    let (a_abs, b_abs) = (a_abs as u32, b_abs as u32);
    debug_assert!(a_abs % 2 == 1 && b_abs % 2 == 0, "primary pi has odd a, even b");
    let mut forms = QuarticForms::new();
    let (fa, fb) = (forms.f(a_abs), forms.f(b_abs));
    let (ga, gb) = (forms.g(a_abs), forms.g(b_abs));
    let four_z_zw = &BiHomPoly::z().scale(&BigInt::from(4)) * &BiHomPoly::z_minus_w();
    let t1 = &(&four_z_zw * &ga.pow(2)) * &fb.pow(2);
    let t2 = &gb.pow(2) * &fa.pow(2);
    let h = &t1 + &t2;
    debug_assert_eq!(h.degree(), ((p - 1) / 2) as usize);
    h
}

/// Build the quartic tower at an odd prime p with gcd(p, 2D) = 1.
pub fn build_tower_quartic(p: u64, d: &BigInt) -> Result<FieldTowerQuartic, TowerError> {
    build_tower_quartic_with(p, d, &TowerConfig::default())
}

pub fn build_tower_quartic_with(
    p: u64,
    d: &BigInt,
    cfg: &TowerConfig,
) -> Result<FieldTowerQuartic, TowerError> {
    check_odd_prime(p)?;
    if d.is_zero() || (BigInt::from(2) * d % BigInt::from(p)).is_zero() {
        return Err(TowerError::BadReduction {
            p: BigInt::from(p),
            modulus: BigInt::from(2) * d,
        });
    }
    let mut certs = Vec::new();
    if p % 4 == 3 {
        // inert: everything over K = Q(i), from f_p directly
        let fp = QuarticForms::new().f(p as u32);
        let f_poly = fp.specialize_w(&BigInt::one());
        let spec_d = fp.specialize_w(d);
        let k_poly = spec_d.compose_power(2);
        let l_poly = spec_d.compose_power(4);
        for (name, poly) in [("F", &f_poly), ("K", &k_poly), ("L", &l_poly)] {
            let cert = irreducibility_certificate_with(poly, BaseField::Gaussian, cfg)?;
            if !cert.is_irreducible() {
                return Err(TowerError::CertificateUnavailable {
                    degree: poly.deg_or_zero(),
                    base: "Q(i)",
                });
            }
            certs.push((name.to_string(), cert));
        }
        let abs_degree = 2 * l_poly.deg_or_zero();
        let l_abs_poly = if abs_degree <= cfg.abs_degree_cap {
            Some(primitive_element_with_generator(&l_poly, BaseField::Gaussian, cfg)?)
        } else {
            None
        };
        Ok(FieldTowerQuartic {
            p,
            d: d.clone(),
            case: SplitCase::Inert,
            pi: None,
            pi_d: None,
            base: BaseField::Gaussian,
            f_poly,
            k_poly,
            l_poly,
            l_abs_poly,
            certificates: certs,
        })
    } else {
        // split: pi primary, assemble f_{D,p}
        let pi = split_prime_gauss(&BigInt::from(p))?;
        let pi_d = quadratic::pi_twisted_quartic(d, &pi)?;
        let h = quartic_split_form(p, &pi);
        let f_dp = h.specialize_w(d);
        // structure pinned by the theorem: lead p, constant D^((p-1)/2)
        debug_assert_eq!(f_dp.leading(), BigInt::from(p));
        debug_assert_eq!(f_dp.coeff(0), d.pow(((p - 1) / 2) as u32));
        let f_poly = h.specialize_w(&BigInt::one());
        let k_poly = f_dp.compose_power(2);
        let l_poly = f_dp.compose_power(4);
        for (name, poly) in [("F", &f_poly), ("K", &k_poly), ("L", &l_poly)] {
            let cert = irreducibility_certificate_with(poly, BaseField::Rational, cfg)?;
            if !cert.is_irreducible() {
                return Err(TowerError::CertificateUnavailable {
                    degree: poly.deg_or_zero(),
                    base: "Q",
                });
            }
            certs.push((name.to_string(), cert));
        }
        Ok(FieldTowerQuartic {
            p,
            d: d.clone(),
            case: SplitCase::Split,
            pi: Some(pi),
            pi_d: Some(pi_d),
            base: BaseField::Rational,
            f_poly,
            k_poly,
            l_poly: l_poly.clone(),
            l_abs_poly: Some(l_poly),
            certificates: certs,
        })
    }
}

/// The annihilating polynomial data of y(P) for split sextic (p, A).
#[derive(Debug, Clone)]
pub struct SexticHTilde {
    /// h~(Y) with only even powers of Y.
    pub poly_y: IntPoly,
    /// h(Y) with h(Y^2) = h~(Y).
    pub half: IntPoly,
    pub a_coord: BigInt,
    pub b_coord: BigInt,
    pub t_p: usize,
}

/// Build h~_{A,p} from the division-polynomial quotients of the paper's
/// two-case formula; valid for split p (p = 1 mod 6) coprime to 6A.
pub fn sextic_h_tilde(p: u64, a_param: &BigInt) -> Result<SexticHTilde, TowerError> {
    check_odd_prime(p)?;
    if p % 6 != 1 {
        return Err(TowerError::NotPrime(BigInt::from(p)));
    }
    if a_param.is_zero() || (BigInt::from(6) * a_param % BigInt::from(p)).is_zero() {
        return Err(TowerError::BadReduction {
            p: BigInt::from(p),
            modulus: BigInt::from(6) * a_param,
        });
    }
    let (a, b) = eisenstein_ab(&BigInt::from(p))?;
    let (au, bu) = (
        a.magnitude().to_u64_digits()[0] as u32,
        b.magnitude().to_u64_digits()[0] as u32,
    );
    let mut forms = SexticForms::new();
    let psi_a = forms.psi_rep(au);
    let psi_b = forms.psi_rep(bu);
    let psi_2a = forms.psi_rep(2 * au);
    let psi_2b = forms.psi_rep(2 * bu);
    let psi_2 = forms.psi_rep(2);
    // numerator psi_{2b} psi_a^4 - psi_{2a} psi_b^4
    let num = psi_2b.mul(&psi_a.pow(4)).sub(&psi_2a.mul(&psi_b.pow(4)));
    let den = if (bu as i64 - au as i64).rem_euclid(2) == 1 {
        psi_a.mul(&psi_b)
    } else {
        psi_a.mul(&psi_b).mul(&psi_2)
    };
    let h_rep = num.div(&den);
    assert_eq!((h_rep.xe, h_rep.ye), (0, 0), "h~ must be free of x and y");
    let half = h_rep.form.specialize_w(a_param);
    let poly_y = half.compose_power(2);
    let t_p = poly_y.deg_or_zero();
    // degree law: a^2 + b^2 - 1 for even b, a^2 + b^2 - 2 for odd b
    let ab2 = (au as usize) * (au as usize) + (bu as usize) * (bu as usize);
    let want = if bu % 2 == 0 { ab2 - 1 } else { ab2 - 2 };
    if t_p != want {
        return Err(TowerError::FactorExtractionFailed { expected: want, found: vec![t_p] });
    }
    let lower = 2 * ((p - 1) as usize) / 3;
    debug_assert!(lower <= t_p && t_p < (p - 1) as usize);
    Ok(SexticHTilde { poly_y, half, a_coord: a, b_coord: b, t_p })
}

/// f_{A,p}(Y): the unique irreducible factor of h_{A,p} of degree (p-1)/3.
fn extract_sextic_factor(
    p: u64,
    half: &IntPoly,
    cfg: &TowerConfig,
) -> Result<IntPoly, TowerError> {
    let want = ((p - 1) / 3) as usize;
    let fs = polyfactor::factor_poly_q_capped(half, cfg.factor_cap).map_err(TowerError::Algebra)?;
    let hits: Vec<&IntPoly> = fs
        .iter()
        .filter(|(g, _)| g.deg_or_zero() == want)
        .map(|(g, _)| g)
        .collect();
    if hits.len() != 1 {
        return Err(TowerError::FactorExtractionFailed {
            expected: want,
            found: fs.iter().map(|(g, _)| g.deg_or_zero()).collect(),
        });
    }
    Ok(hits[0].primitive_positive())
}

/// Build the sextic tower at p >= 5 with gcd(p, 6A) = 1.
pub fn build_tower_sextic(p: u64, a_param: &BigInt) -> Result<FieldTowerSextic, TowerError> {
    build_tower_sextic_with(p, a_param, &TowerConfig::default())
}

pub fn build_tower_sextic_with(
    p: u64,
    a_param: &BigInt,
    cfg: &TowerConfig,
) -> Result<FieldTowerSextic, TowerError> {
    check_odd_prime(p)?;
    if p < 5 {
        return Err(TowerError::NotPrime(BigInt::from(p)));
    }
    if a_param.is_zero() || (BigInt::from(6) * a_param % BigInt::from(p)).is_zero() {
        return Err(TowerError::BadReduction {
            p: BigInt::from(p),
            modulus: BigInt::from(6) * a_param,
        });
    }
    let mut certs = Vec::new();
    if p % 6 == 5 {
        // inert over K = Q(zeta3)
        let fp = SexticForms::new().f(p as u32);
        let f_poly = fp.specialize_w(&BigInt::one());
        let spec = fp.specialize_w(a_param);
        let k_poly = spec.compose_power(2);
        let cubic = IntPoly::new(vec![a_param.clone(), BigInt::zero(), BigInt::zero(), BigInt::one()]);
        let kprime_poly = spec.compose(&cubic);
        for (name, poly) in [("F", &f_poly), ("K", &k_poly), ("Kprime", &kprime_poly)] {
            let cert = irreducibility_certificate_with(poly, BaseField::Eisenstein, cfg)?;
            if !cert.is_irreducible() {
                return Err(TowerError::CertificateUnavailable {
                    degree: poly.deg_or_zero(),
                    base: "Q(zeta3)",
                });
            }
            certs.push((name.to_string(), cert));
        }
        let abs_degree = 2 * 2 * kprime_poly.deg_or_zero(); // 2(p^2-1)
        let l_abs_poly = if abs_degree <= cfg.abs_degree_cap {
            Some(sextic_l_absolute(&kprime_poly, a_param, true, cfg)?)
        } else {
            None
        };
        Ok(FieldTowerSextic {
            p,
            a: a_param.clone(),
            case: SplitCase::Inert,
            pi: None,
            pi_a: None,
            base: BaseField::Eisenstein,
            f_poly,
            k_poly,
            kprime_poly,
            l_abs_poly,
            t_p: None,
            h_poly: None,
            certificates: certs,
        })
    } else {
        let pi = split_prime_eisenstein(&BigInt::from(p))?;
        let pi_a = quadratic::pi_twisted_sextic(a_param, &pi)?;
        let ht = sextic_h_tilde(p, a_param)?;
        let f_ap = extract_sextic_factor(p, &ht.half, cfg)?;
        let k_poly = f_ap.compose_power(2);
        let cubic = IntPoly::new(vec![a_param.clone(), BigInt::zero(), BigInt::zero(), BigInt::one()]);
        let kprime_poly = f_ap.compose(&cubic);
        // F comes from the A = 1 pipeline
        let f_poly = {
            let ht1 = sextic_h_tilde(p, &BigInt::one())?;
            extract_sextic_factor(p, &ht1.half, cfg)?
        };
        for (name, poly) in [("F", &f_poly), ("K", &k_poly), ("Kprime", &kprime_poly)] {
            let cert = irreducibility_certificate_with(poly, BaseField::Rational, cfg)?;
            if !cert.is_irreducible() {
                return Err(TowerError::CertificateUnavailable {
                    degree: poly.deg_or_zero(),
                    base: "Q",
                });
            }
            certs.push((name.to_string(), cert));
        }
        let abs_degree = 2 * kprime_poly.deg_or_zero(); // 2(p-1)
        let l_abs_poly = if abs_degree <= cfg.abs_degree_cap {
            Some(sextic_l_absolute(&kprime_poly, a_param, false, cfg)?)
        } else {
            None
        };
        Ok(FieldTowerSextic {
            p,
            a: a_param.clone(),
            case: SplitCase::Split,
            pi: Some(pi),
            pi_a: Some(pi_a),
            base: BaseField::Rational,
            f_poly,
            k_poly,
            kprime_poly,
            l_abs_poly,
            t_p: Some(ht.t_p),
            h_poly: Some(ht.half),
            certificates: certs,
        })
    }
}

/// Absolute defining polynomial of L for the sextic family: eliminate x
/// between kprime(x) = 0 and y^2 = x^3 + A against theta = y + c x, then
/// (inert case) adjoin zeta3 by a second resultant stage.
fn sextic_l_absolute(
    kprime: &IntPoly,
    a_param: &BigInt,
    adjoin_zeta: bool,
    cfg: &TowerConfig,
) -> Result<IntPoly, TowerError> {
    let stage1_degree = 2 * kprime.deg_or_zero();
    let f = BiPoly::from_intpoly(kprime);
    let mut stage1 = None;
    for c in 1..=cfg.max_shift {
        let cb = BigInt::from(c);
        // (T - c x)^2 - x^3 - A as a polynomial in x over Z[T]
        let g = BiPoly::new(vec![
            IntPoly::new(vec![-a_param.clone(), BigInt::zero(), BigInt::one()]), // T^2 - A
            IntPoly::new(vec![BigInt::zero(), BigInt::from(-2) * &cb]),          // -2cT x
            IntPoly::constant(&cb * &cb),
            IntPoly::constant(BigInt::from(-1)),
        ]);
        let r = resultant_bipoly(&f, &g).primitive_positive();
        if r.deg_or_zero() == stage1_degree && r.is_squarefree() {
            stage1 = Some(r);
            break;
        }
    }
    let stage1 = stage1.ok_or(TowerError::PrimitiveElementFailed)?;
    if !adjoin_zeta {
        return Ok(stage1);
    }
    for c in 1..=cfg.max_shift {
        let r = adjoin_generator_resultant(&stage1, BaseField::Eisenstein, c);
        if r.deg_or_zero() == 2 * stage1.deg_or_zero() && r.is_squarefree() {
            return Ok(r);
        }
    }
    Err(TowerError::PrimitiveElementFailed)
}

/// Absolute polynomial of a field defined over the quadratic base: minimal
/// polynomial of alpha + c*gamma by resultant elimination, accepted when
/// squarefree of full degree.
fn primitive_element_with_generator(
    rel_poly: &IntPoly,
    base: BaseField,
    cfg: &TowerConfig,
) -> Result<IntPoly, TowerError> {
    for c in 1..=cfg.max_shift {
        let r = adjoin_generator_resultant(rel_poly, base, c).primitive_positive();
        if r.deg_or_zero() == 2 * rel_poly.deg_or_zero() && r.is_squarefree() {
            return Ok(r);
        }
    }
    Err(TowerError::PrimitiveElementFailed)
}

/// Twist relation between two towers at the same prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistRelation {
    /// Same F: any two good parameters (quartic-class invariance of F).
    Quartic,
    /// D2 = D1 M^2 (quadratic twist): same K.
    Square,
    /// A2 = A1 D^3 (sextic family quadratic twist): same Kprime.
    Cube,
}

/// Verify the claimed isomorphism by the exact homogeneity identity on the
/// defining forms, never by a field-isomorphism search.
pub fn twist_invariance_quartic(
    t1: &FieldTowerQuartic,
    t2: &FieldTowerQuartic,
    relation: TwistRelation,
) -> bool {
    if t1.p != t2.p || t1.case != t2.case {
        return false;
    }
    let p = t1.p;
    let form = match t1.case {
        SplitCase::Inert => QuarticForms::new().f(p as u32),
        SplitCase::Split => {
            quartic_split_form(p, t1.pi.as_ref().expect("split tower carries pi"))
        }
    };
    match relation {
        TwistRelation::Quartic => {
            // f_p(D X, D) = D^s f_p(X, 1) for both parameters
            [&t1.d, &t2.d].iter().all(|d| {
                let lhs = form.specialize_w(d).scale_argument(d);
                let rhs = form.specialize_w(&BigInt::one()).scale(&d.pow(form.degree() as u32));
                lhs == rhs
            })
        }
        TwistRelation::Square => {
            // D2 = D1 M^2: f_p(M^2 Z, M^2 D1) = M^(2s) f_p(Z, D1)
            match square_ratio(&t2.d, &t1.d) {
                None => false,
                Some(m) => {
                    let m2 = &m * &m;
                    let lhs = form.specialize_w(&t2.d).scale_argument(&m2);
                    let rhs = form
                        .specialize_w(&t1.d)
                        .scale(&m2.pow(form.degree() as u32));
                    lhs == rhs
                }
            }
        }
        TwistRelation::Cube => false, // not applicable to the quartic family
    }
}

pub fn twist_invariance_sextic(
    t1: &FieldTowerSextic,
    t2: &FieldTowerSextic,
    relation: TwistRelation,
) -> bool {
    if t1.p != t2.p || t1.case != t2.case {
        return false;
    }
    let p = t1.p;
    match t1.case {
        SplitCase::Inert => {
            let form = SexticForms::new().f(p as u32);
            match relation {
                TwistRelation::Quartic => [&t1.a, &t2.a].iter().all(|a| {
                    let lhs = form.specialize_w(a).scale_argument(a);
                    let rhs = form
                        .specialize_w(&BigInt::one())
                        .scale(&a.pow(form.degree() as u32));
                    lhs == rhs
                }),
                TwistRelation::Square => match square_ratio(&t2.a, &t1.a) {
                    None => false,
                    Some(m) => {
                        let m2 = &m * &m;
                        let lhs = form.specialize_w(&t2.a).scale_argument(&m2);
                        let rhs = form
                            .specialize_w(&t1.a)
                            .scale(&m2.pow(form.degree() as u32));
                        lhs == rhs
                    }
                },
                TwistRelation::Cube => match cube_ratio(&t2.a, &t1.a) {
                    None => false,
                    Some(dd) => {
                        let d3 = &dd * &dd * &dd;
                        let lhs = form.specialize_w(&t2.a).scale_argument(&d3);
                        let rhs = form
                            .specialize_w(&t1.a)
                            .scale(&d3.pow(form.degree() as u32));
                        lhs == rhs
                    }
                },
            }
        }
        SplitCase::Split => {
            // identities on the extracted factor, up to primitive
            // normalization (the factor is emitted primitive)
            match relation {
                TwistRelation::Quartic => {
                    let f1 = t1.f_poly.clone();
                    let f2 = t2.f_poly.clone();
                    f1 == f2
                }
                TwistRelation::Square => match square_ratio(&t2.a, &t1.a) {
                    None => false,
                    Some(m) => {
                        let m2 = &m * &m;
                        // y(P) scales by M: f_{A2,p}(M^2 Y) ~ f_{A1,p}(Y)
                        let lhs = half_poly(t2).scale_argument(&m2).primitive_positive();
                        let rhs = half_poly(t1).primitive_positive();
                        let f2s = tower_factor(t2).scale_argument(&m2).primitive_positive();
                        let f1s = tower_factor(t1).primitive_positive();
                        lhs == rhs || f2s == f1s
                    }
                },
                TwistRelation::Cube => match cube_ratio(&t2.a, &t1.a) {
                    None => false,
                    Some(dd) => {
                        let d3 = &dd * &dd * &dd;
                        let f2s = tower_factor(t2).scale_argument(&d3).primitive_positive();
                        let f1s = tower_factor(t1).primitive_positive();
                        f2s == f1s
                    }
                },
            }
        }
    }
}

fn tower_factor(t: &FieldTowerSextic) -> IntPoly {
    // the extracted f_{A,p} is the compose_power(2) preimage of k_poly,
    // recover it by reading every other coefficient
    let k = &t.k_poly;
    let mut v = Vec::new();
    for (i, c) in k.coeffs().iter().enumerate() {
        if i % 2 == 0 {
            v.push(c.clone());
        } else {
            debug_assert!(c.is_zero());
        }
    }
    IntPoly::new(v)
}

fn half_poly(t: &FieldTowerSextic) -> IntPoly {
    t.h_poly.clone().unwrap_or_else(IntPoly::zero)
}

fn square_ratio(big: &BigInt, small: &BigInt) -> Option<BigInt> {
    if small.is_zero() {
        return None;
    }
    let (q, r) = big.div_rem(small);
    if !r.is_zero() || !q.is_positive() {
        return None;
    }
    let m = q.sqrt();
    if &m * &m == q {
        Some(m)
    } else {
        None
    }
}

fn cube_ratio(big: &BigInt, small: &BigInt) -> Option<BigInt> {
    if small.is_zero() {
        return None;
    }
    let (q, r) = big.div_rem(small);
    if !r.is_zero() {
        return None;
    }
    let m = q.cbrt();
    if &m * &m * &m == q {
        Some(m)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct TowerJson {
    pub family: String,
    pub p: u64,
    pub parameter: String,
    pub case: SplitCase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi: Option<[String; 2]>,
    #[serde(rename = "F")]
    pub f: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    #[serde(rename = "Kprime", skip_serializing_if = "Option::is_none")]
    pub kprime: Option<Vec<String>>,
    #[serde(rename = "L_rel")]
    pub l_rel: Vec<String>,
    #[serde(rename = "L_abs", skip_serializing_if = "Option::is_none")]
    pub l_abs: Option<Vec<String>>,
    pub degrees: serde_json::Value,
}

impl FieldTowerQuartic {
    pub fn to_json(&self) -> TowerJson {
        TowerJson {
            family: "quartic".to_string(),
            p: self.p,
            parameter: self.d.to_string(),
            case: self.case,
            pi: self
                .pi
                .as_ref()
                .map(|g| [g.a.to_string(), g.b.to_string()]),
            f: self.f_poly.coeff_strings(),
            k: self.k_poly.coeff_strings(),
            kprime: None,
            l_rel: self.l_poly.coeff_strings(),
            l_abs: self.l_abs_poly.as_ref().map(|p| p.coeff_strings()),
            degrees: serde_json::json!({
                "F": self.f_poly.deg_or_zero(),
                "K": self.k_poly.deg_or_zero(),
                "L_rel": self.l_poly.deg_or_zero(),
                "L_abs": self.l_abs_poly.as_ref().map(|p| p.deg_or_zero()),
                "base": match self.base { BaseField::Rational => "Q", _ => "Q(i)" },
            }),
        }
    }
}

impl FieldTowerSextic {
    pub fn to_json(&self) -> TowerJson {
        TowerJson {
            family: "sextic".to_string(),
            p: self.p,
            parameter: self.a.to_string(),
            case: self.case,
            pi: self
                .pi
                .as_ref()
                .map(|g| [g.a.to_string(), g.b.to_string()]),
            f: self.f_poly.coeff_strings(),
            k: self.k_poly.coeff_strings(),
            kprime: Some(self.kprime_poly.coeff_strings()),
            l_rel: self.k_poly.coeff_strings(),
            l_abs: self.l_abs_poly.as_ref().map(|p| p.coeff_strings()),
            degrees: serde_json::json!({
                "F": self.f_poly.deg_or_zero(),
                "K": self.k_poly.deg_or_zero(),
                "Kprime": self.kprime_poly.deg_or_zero(),
                "L_abs": self.l_abs_poly.as_ref().map(|p| p.deg_or_zero()),
                "t_p": self.t_p,
                "base": match self.base { BaseField::Rational => "Q", _ => "Q(zeta3)" },
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn tower_quartic_p3_d1() {
        let t = build_tower_quartic(3, &bi(1)).unwrap();
        assert_eq!(t.case, SplitCase::Inert);
        // f_3(X, 1) = 3X^2 - 6X - 1
        assert_eq!(t.f_poly, IntPoly::from_i64(&[-1, -6, 3]));
        // L = 3X^8 - 6X^4 - 1, degree 8 = p^2 - 1
        assert_eq!(t.l_poly, IntPoly::from_i64(&[-1, 0, 0, 0, -6, 0, 0, 0, 3]));
        assert_eq!(t.l_poly.deg_or_zero(), 8);
        assert!(t.certificates.iter().all(|(_, c)| c.is_irreducible()));
        // absolute polynomial present at this size: degree 16
        assert_eq!(t.l_abs_poly.as_ref().unwrap().deg_or_zero(), 16);
    }

    #[test]
    fn tower_quartic_p5_split() {
        let t = build_tower_quartic(5, &bi(1)).unwrap();
        assert_eq!(t.case, SplitCase::Split);
        // f_{1,5}(X) = 5X^2 - 2X + 1: degree 2, leading 5, constant 1
        assert_eq!(t.f_poly.deg_or_zero(), 2);
        assert_eq!(t.f_poly.leading(), bi(5));
        assert_eq!(t.f_poly.coeff(0), bi(1));
        assert_eq!(t.k_poly.deg_or_zero(), 4);
        assert_eq!(t.l_poly.deg_or_zero(), 8);
    }

    #[test]
    fn tower_quartic_p13_d2() {
        let t = build_tower_quartic(13, &bi(2)).unwrap();
        // deg f_{2,13} = 6, leading 13, constant 2^6 = 64
        let f_dp = {
            let h = quartic_split_form(13, t.pi.as_ref().unwrap());
            h.specialize_w(&bi(2))
        };
        assert_eq!(f_dp.deg_or_zero(), 6);
        assert_eq!(f_dp.leading(), bi(13));
        assert_eq!(f_dp.coeff(0), bi(64));
    }

    #[test]
    fn tower_bad_reduction() {
        assert!(matches!(
            build_tower_quartic(3, &bi(3)),
            Err(TowerError::BadReduction { .. })
        ));
        assert!(matches!(
            build_tower_sextic(7, &bi(7)),
            Err(TowerError::BadReduction { .. })
        ));
    }

    #[test]
    fn sextic_inert_p5() {
        let t = build_tower_sextic(5, &bi(1)).unwrap();
        assert_eq!(t.case, SplitCase::Inert);
        // F = f_5(Z, 1) of degree (25-1)/6 = 4; Kprime degree 12
        assert_eq!(t.f_poly.deg_or_zero(), 4);
        assert_eq!(t.k_poly.deg_or_zero(), 8);
        assert_eq!(t.kprime_poly.deg_or_zero(), 12);
        // absolute degree 2(p^2-1) = 48
        assert_eq!(t.l_abs_poly.as_ref().unwrap().deg_or_zero(), 48);
    }

    #[test]
    fn sextic_split_p7() {
        let t = build_tower_sextic(7, &bi(1)).unwrap();
        assert_eq!(t.case, SplitCase::Split);
        // hand-computed pipeline: h_{1,7}(Y) = 7Y^2 - 18Y + 27 (primitive)
        assert_eq!(t.h_poly.as_ref().unwrap().primitive_positive(),
                   IntPoly::from_i64(&[27, -18, 7]).primitive_positive().scale(&bi(1)).primitive_positive());
        assert_eq!(t.t_p, Some(4));
        let f = tower_factor(&t);
        assert_eq!(f, IntPoly::from_i64(&[27, -18, 7]));
        assert_eq!(t.k_poly, IntPoly::from_i64(&[27, 0, -18, 0, 7]));
        assert_eq!(t.kprime_poly, IntPoly::from_i64(&[16, 0, 0, -4, 0, 0, 7]));
        assert_eq!(t.f_poly, IntPoly::from_i64(&[27, -18, 7]));
        // L_abs degree 2(p-1) = 12
        assert_eq!(t.l_abs_poly.as_ref().unwrap().deg_or_zero(), 12);
    }

    #[test]
    fn h_tilde_even_powers_and_degree() {
        for (p, a) in [(7u64, 1i64), (7, 2), (13, 1), (13, 5), (19, 2), (31, 1)] {
            let ht = sextic_h_tilde(p, &bi(a)).unwrap();
            // even powers only
            for (i, c) in ht.poly_y.coeffs().iter().enumerate() {
                if i % 2 == 1 {
                    assert!(c.is_zero(), "odd coefficient in h~ at p={} A={}", p, a);
                }
            }
            let lower = 2 * ((p - 1) as usize) / 3;
            assert!(lower <= ht.t_p && ht.t_p < (p - 1) as usize);
        }
    }

    #[test]
    fn certificate_examples() {
        // X^2 + 1: irreducible over Q, splits over Q(i)
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let over_q = irreducibility_certificate(&f, BaseField::Rational).unwrap();
        assert!(over_q.is_irreducible());
        let over_k = irreducibility_certificate(&f, BaseField::Gaussian).unwrap();
        assert_eq!(over_k.outcome, CertOutcome::Factors(vec![1, 1]));
        // f_3(X, 1) = 3X^2 - 6X - 1 irreducible over Q(i)
        let f3 = IntPoly::from_i64(&[-1, -6, 3]);
        assert!(irreducibility_certificate(&f3, BaseField::Gaussian)
            .unwrap()
            .is_irreducible());
        // f_3(X^4, 1) irreducible of degree 8 over Q(i)
        let f34 = f3.compose_power(4);
        let cert = irreducibility_certificate(&f34, BaseField::Gaussian).unwrap();
        assert!(cert.is_irreducible());
        assert_eq!(cert.degree, 8);
        // x^2 + x + 1 splits over Q(zeta3)
        let cyc = IntPoly::from_i64(&[1, 1, 1]);
        let c = irreducibility_certificate(&cyc, BaseField::Eisenstein).unwrap();
        assert_eq!(c.outcome, CertOutcome::Factors(vec![1, 1]));
    }

    #[test]
    fn twist_invariance_examples() {
        // f_3(X D, D) = D^2 f_3(X, 1) at D = 7
        let t1 = build_tower_quartic(3, &bi(7)).unwrap();
        let t2 = build_tower_quartic(3, &bi(1)).unwrap();
        assert!(twist_invariance_quartic(&t1, &t2, TwistRelation::Quartic));
        // split p = 5: f_{D,5}(DX)/D^2 = f_{1,5}(X) for D in {2, 3, 7}
        for d in [2i64, 3, 7] {
            let ta = build_tower_quartic(5, &bi(d)).unwrap();
            let tb = build_tower_quartic(5, &bi(1)).unwrap();
            assert!(twist_invariance_quartic(&ta, &tb, TwistRelation::Quartic));
        }
        // mismatched p
        let t3 = build_tower_quartic(7, &bi(1)).unwrap();
        assert!(!twist_invariance_quartic(&t2, &t3, TwistRelation::Quartic));
        // square relation: D2 = D1 M^2 with D1 = 2, M = 3
        let ta = build_tower_quartic(5, &bi(2)).unwrap();
        let tb = build_tower_quartic(5, &bi(18)).unwrap();
        assert!(twist_invariance_quartic(&ta, &tb, TwistRelation::Square));
    }

    #[test]
    fn split_form_degree_identity_all_p_to_100() {
        // term-by-term degree bookkeeping and leading coefficient a^2+b^2=p
        for p in (5..=100u64).filter(|&p| is_prime(&BigInt::from(p)) && p % 4 == 1) {
            let pi = split_prime_gauss(&BigInt::from(p)).unwrap();
            let h = quartic_split_form(p, &pi);
            assert_eq!(h.degree(), ((p - 1) / 2) as usize);
            assert_eq!(h.lead_z(), BigInt::from(p), "leading coefficient at p={}", p);
        }
    }

    #[test]
    fn f_dp_structure_lead_and_constant() {
        for p in [5u64, 13, 17, 29, 37] {
            let pi = split_prime_gauss(&BigInt::from(p)).unwrap();
            let h = quartic_split_form(p, &pi);
            for d in [-10i64, -7, -3, -1, 1, 2, 3, 6, 10] {
                if bi(d).mod_floor(&BigInt::from(p)).is_zero() {
                    continue;
                }
                let f_dp = h.specialize_w(&bi(d));
                assert_eq!(f_dp.leading(), BigInt::from(p));
                assert_eq!(f_dp.coeff(0), bi(d).pow(((p - 1) / 2) as u32));
            }
        }
    }
}
