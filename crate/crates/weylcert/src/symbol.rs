//! Top-order symbols and their behavior on the unit sphere.
//!
//! The top symbol of a nonzero element replaces a(j) by z_j and ad(j) by
//! conj(z_j) in the highest-degree part. For a hermitean symbol the
//! restriction to the unit sphere is a real function; whether it vanishes
//! there is decided exactly for one mode and estimated by seeded sampling
//! for several modes.
//!
//! One mode, exact route: on the circle z = exp(i theta) the symbol is a
//! real trigonometric polynomial g. Substituting u = tan(theta/2) turns
//! g * (1 + u^2)^n into an ordinary polynomial Q over Q(sqrt2), whose real
//! roots a Sturm chain counts exactly; theta = pi is checked separately.

use crate::poly::{count_real_roots, isolate_real_roots, refine_root, Poly, RootLoc};
use crate::scalar::{Real2, Scalar};
use crate::weyl::{Monomial, WeylElement};
use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

/// Number of sphere samples used by the heuristic route.
pub const SPHERE_SAMPLES: usize = 10_000;
/// Seed for the sampling RNG, fixed so runs are reproducible.
pub const SPHERE_SEED: u64 = 0x77e71;
/// A sampled minimum above this threshold is reported as heuristically
/// positive, below it the check is inconclusive.
pub const SAMPLE_POSITIVITY_TOL: f64 = 1e-7;

#[derive(Debug, Error, PartialEq)]
pub enum SymbolError {
    #[error("the zero element has no top symbol")]
    ZeroElement,
    #[error("symbol is not hermitean")]
    NotHermitean,
}

/// The leading homogeneous part of an element, as a polynomial in
/// z_1..z_d and their conjugates.
#[derive(Clone, PartialEq, Debug)]
pub struct TopSymbol {
    d: usize,
    n: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Extract the top symbol. Fails only on the zero element.
pub fn top_symbol(x: &WeylElement) -> Result<TopSymbol, SymbolError> {
    let n = x.degree().ok_or(SymbolError::ZeroElement)?;
    let terms = x
        .terms_of_degree(n)
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    Ok(TopSymbol { d: x.modes(), n, terms })
}

impl TopSymbol {
    pub fn modes(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    /// A symbol is hermitean when swapping each monomial's exponent pair
    /// and conjugating its coefficient reproduces the symbol.
    pub fn is_hermitean(&self) -> bool {
        self.terms.iter().all(|(m, c)| {
            let swapped = Monomial { ann: m.cre.clone(), cre: m.ann.clone() };
            self.terms.get(&swapped).map_or(false, |v| *v == c.conj())
        })
    }

    /// Evaluate at a point of C^d given as interleaved complex numbers.
    pub fn eval_complex(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.d);
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = {
                let (re, im) = c.to_complex_f64();
                Complex64::new(re, im)
            };
            for j in 0..self.d {
                t *= z[j].powu(m.ann[j]);
                t *= z[j].conj().powu(m.cre[j]);
            }
            acc += t;
        }
        acc
    }
}

/// A point on the unit circle, exact when both coordinates are rational.
#[derive(Clone, Debug, PartialEq)]
pub enum CirclePoint {
    Exact { cos: BigRational, sin: BigRational },
    Approx { theta: f64 },
}

impl CirclePoint {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            CirclePoint::Exact { cos, sin } => Complex64::new(
                cos.to_f64().unwrap_or(f64::NAN),
                sin.to_f64().unwrap_or(f64::NAN),
            ),
            CirclePoint::Approx { theta } => Complex64::new(theta.cos(), theta.sin()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SphereVerdict {
    /// The symbol is at least this rational bound everywhere on the
    /// sphere; the bound is strictly positive.
    CertifiedPositive { lower_bound: BigRational },
    /// The symbol is at most this rational bound everywhere on the
    /// sphere; the bound is strictly negative. Only the one mode route
    /// produces this.
    CertifiedNegative { upper_bound: BigRational },
    /// The symbol vanishes at this point of the sphere.
    CertifiedZeroAt { point: CirclePoint },
    /// All samples were positive but nothing is certified.
    HeuristicPositive { sampled_min: f64 },
    Inconclusive { sampled_min: Option<f64> },
}

/// Decide whether a hermitean symbol vanishes on the unit sphere.
///
/// For one mode the answer is exact: either a certified zero with a
/// witness point, or a certified rational bound keeping the symbol away
/// from zero. For more modes the verdict is heuristic.
pub fn check_sphere(s: &TopSymbol) -> Result<SphereVerdict, SymbolError> {
    if !s.is_hermitean() {
        return Err(SymbolError::NotHermitean);
    }
    if s.d == 1 {
        check_circle(s)
    } else {
        let min = sphere_sample_min(s, SPHERE_SAMPLES, SPHERE_SEED);
        if min > SAMPLE_POSITIVITY_TOL {
            Ok(SphereVerdict::HeuristicPositive { sampled_min: min })
        } else {
            Ok(SphereVerdict::Inconclusive { sampled_min: Some(min) })
        }
    }
}

/// Minimum of the symbol over pseudo-random unit vectors. The imaginary
/// parts of the sampled values are discarded; for hermitean symbols they
/// are numerical noise.
pub fn sphere_sample_min(s: &TopSymbol, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min = f64::INFINITY;
    let mut z = vec![Complex64::new(0.0, 0.0); s.d];
    for _ in 0..samples {
        loop {
            let mut norm2 = 0.0;
            for zj in z.iter_mut() {
                let (g1, g2) = gaussian_pair(&mut rng);
                *zj = Complex64::new(g1, g2);
                norm2 += zj.norm_sqr();
            }
            if norm2 > 1e-12 {
                let inv = norm2.sqrt().recip();
                for zj in z.iter_mut() {
                    *zj *= inv;
                }
                break;
            }
        }
        let v = s.eval_complex(&z).re;
        if v < min {
            min = v;
        }
    }
    min
}

fn gaussian_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    // Box-Muller from two uniforms.
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let phi = std::f64::consts::TAU * u2;
    (r * phi.cos(), r * phi.sin())
}

/// Fourier data of the circle restriction: coefficient of exp(i m theta)
/// for m >= 0. With one mode each m comes from at most one monomial.
fn fourier_coeffs(s: &TopSymbol) -> BTreeMap<u32, Scalar> {
    let mut out = BTreeMap::new();
    for (m, c) in &s.terms {
        let k = m.ann[0] as i64;
        let l = m.cre[0] as i64;
        let freq = k - l;
        if freq >= 0 {
            out.insert(freq as u32, c.clone());
        }
    }
    out
}

/// g(theta) * (1 + u^2)^n with u = tan(theta/2), as a polynomial over
/// Q(sqrt2). Built from the weighted Chebyshev recurrences
/// C_{m+1} = 2 P_c C_m - W^2 C_{m-1} and the same for S, where
/// C_m = cos(m theta) W^m, S_m = sin(m theta) W^m, P_c = 1 - u^2,
/// P_s = 2u, W = 1 + u^2.
fn circle_poly(s: &TopSymbol) -> Poly<Real2> {
    let n = s.n;
    let coeffs = fourier_coeffs(s);
    let w = Poly::new(vec![Real2::one(), Real2::zero(), Real2::one()]);
    let pc = Poly::new(vec![Real2::one(), Real2::zero(), -Real2::one()]);
    let ps = Poly::new(vec![Real2::zero(), Real2::from_rat(BigRational::from_integer(2.into()))]);
    let w2 = w.mul(&w);
    let two = Real2::from_rat(BigRational::from_integer(2.into()));

    let mut q = Poly::<Real2>::zero();
    let mut c_prev = Poly::<Real2>::one(); // C_0
    let mut s_prev = Poly::<Real2>::zero(); // S_0
    let mut c_cur = pc.clone(); // C_1
    let mut s_cur = ps.clone(); // S_1

    if let Some(g0) = coeffs.get(&0) {
        q = q.add(&w.pow(n).scale(&g0.real_part()));
    }
    for m in 1..=n {
        let (cm, sm) = if m == 1 {
            (c_cur.clone(), s_cur.clone())
        } else {
            let c_next = pc.mul(&c_cur).scale(&two).sub(&w2.mul(&c_prev));
            let s_next = pc.mul(&s_cur).scale(&two).sub(&w2.mul(&s_prev));
            c_prev = c_cur.clone();
            s_prev = s_cur.clone();
            c_cur = c_next.clone();
            s_cur = s_next.clone();
            (c_next, s_next)
        };
        if let Some(gm) = coeffs.get(&m) {
            let x = gm.real_part();
            let y = gm.imag_part();
            let wrest = w.pow(n - m);
            let term = cm.scale(&(x * two.clone())).sub(&sm.scale(&(y * two.clone())));
            q = q.add(&term.mul(&wrest));
        }
    }
    q
}

/// The circle value at theta = pi, where u = tan(theta/2) has no image.
fn value_at_pi(s: &TopSymbol) -> Real2 {
    let coeffs = fourier_coeffs(s);
    let mut v = Real2::zero();
    for (m, c) in &coeffs {
        if *m == 0 {
            v = v + c.real_part();
        } else {
            let sgn = if m % 2 == 0 { 1i64 } else { -1 };
            let two = BigRational::from_integer((2 * sgn).into());
            v = v + c.real_part() * Real2::from_rat(two);
        }
    }
    v
}

/// Rational bounds on sqrt2 from its continued fraction, below and above.
fn sqrt2_bounds() -> (BigRational, BigRational) {
    (
        BigRational::new(BigInt::from(1393), BigInt::from(985)),
        BigRational::new(BigInt::from(577), BigInt::from(408)),
    )
}

/// A rational strictly below a positive Q(sqrt2) value, or strictly above
/// a negative one when `below` is false.
fn rational_toward_zero(v: &Real2) -> BigRational {
    let (lo, hi) = sqrt2_bounds();
    let s2 = if v.b.is_positive() { lo } else { hi };
    // underestimates |v| in the positive case, overestimates toward zero
    // in the negative case
    &v.a + &v.b * s2
}

fn check_circle(s: &TopSymbol) -> Result<SphereVerdict, SymbolError> {
    let q = circle_poly(s);
    let gpi = value_at_pi(s);

    // Look for zeros away from theta = pi.
    if !q.is_zero() && count_real_roots(&q) > 0 {
        let point = locate_circle_zero(&q);
        return Ok(SphereVerdict::CertifiedZeroAt { point });
    }
    if q.is_zero() {
        // A nonzero one mode symbol has pairwise distinct frequencies, so
        // its circle restriction is a nonzero trigonometric polynomial.
        debug_assert!(s.terms.is_empty());
        return Ok(SphereVerdict::Inconclusive { sampled_min: None });
    }

    let s0 = q.sign_at(&Real2::zero());
    let spi = gpi.sign();
    if spi == 0 {
        return Ok(SphereVerdict::CertifiedZeroAt {
            point: CirclePoint::Exact {
                cos: BigRational::from_integer((-1).into()),
                sin: BigRational::zero(),
            },
        });
    }
    if s0 > 0 && spi > 0 {
        let bound = positive_lower_bound(s, &q, &gpi);
        return Ok(SphereVerdict::CertifiedPositive { lower_bound: bound });
    }
    if s0 < 0 && spi < 0 {
        let neg = TopSymbol {
            d: s.d,
            n: s.n,
            terms: s.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        };
        let nq = q.neg();
        let ngpi = -gpi;
        let bound = positive_lower_bound(&neg, &nq, &ngpi);
        return Ok(SphereVerdict::CertifiedNegative { upper_bound: -bound });
    }
    // Opposite signs with no real root of q cannot happen for a function
    // continuous on the circle; reaching this line would mean a bug above.
    Ok(SphereVerdict::Inconclusive { sampled_min: None })
}

/// Given that q has at least one real root, produce a witness point on
/// the circle, exact when a rational root is found.
fn locate_circle_zero(q: &Poly<Real2>) -> CirclePoint {
    let locs = isolate_real_roots(q);
    for loc in &locs {
        if let RootLoc::Exact(u) = loc {
            if u.is_rational() {
                return exact_point_from_u(&u.a);
            }
        }
    }
    // Refine the first root and try small-denominator rational candidates.
    let loc = refine_root(q, &locs[0], 60);
    match loc {
        RootLoc::Exact(u) if u.is_rational() => exact_point_from_u(&u.a),
        RootLoc::Exact(u) => CirclePoint::Approx { theta: 2.0 * u.to_f64().atan() },
        RootLoc::Interval(a, b) => {
            let approx = 0.5 * (a.to_f64() + b.to_f64());
            for cand in rational_candidates(approx) {
                let u = Real2::from_rat(cand.clone());
                if q.eval(&u).is_zero() {
                    return exact_point_from_u(&cand);
                }
            }
            CirclePoint::Approx { theta: 2.0 * approx.atan() }
        }
    }
}

fn exact_point_from_u(u: &BigRational) -> CirclePoint {
    let u2 = u * u;
    let one = BigRational::one();
    let den = &one + &u2;
    CirclePoint::Exact {
        cos: (&one - &u2) / &den,
        sin: (BigRational::from_integer(2.into()) * u) / &den,
    }
}

/// Continued fraction convergents of x with denominators up to 64.
fn rational_candidates(x: f64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::from(x.floor() as i64), BigInt::one());
    out.push(BigRational::new(p1.clone(), q1.clone()));
    let mut frac = x - x.floor();
    for _ in 0..12 {
        if frac.abs() < 1e-12 {
            break;
        }
        let next = 1.0 / frac;
        let a = next.floor();
        frac = next - a;
        let a = BigInt::from(a as i64);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > BigInt::from(64) {
            break;
        }
        out.push(BigRational::new(p2.clone(), q2.clone()));
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    out.reverse();
    out
}

/// A verified rational lower bound for a symbol already known positive on
/// the circle: lambda is accepted when q - lambda W^n stays root free and
/// positive at u = 0 and theta = pi.
fn positive_lower_bound(s: &TopSymbol, q: &Poly<Real2>, gpi: &Real2) -> BigRational {
    // Constant circle restriction: the value itself is the bound.
    let coeffs = fourier_coeffs(s);
    if coeffs.len() == 1 {
        if let Some(g0) = coeffs.get(&0) {
            let v = g0.real_part();
            if v.is_rational() {
                return v.a;
            }
            return rational_toward_zero(&v);
        }
    }

    let w = Poly::new(vec![Real2::one(), Real2::zero(), Real2::one()]);
    let wn = w.pow(s.n);
    let verify = |lam: &BigRational| -> bool {
        if !lam.is_positive() {
            return false;
        }
        let lam2 = Real2::from_rat(lam.clone());
        let ql = q.sub(&wn.scale(&lam2));
        if ql.sign_at(&Real2::zero()) <= 0 {
            return false;
        }
        if (gpi.clone() - lam2).sign() <= 0 {
            return false;
        }
        count_real_roots(&ql) == 0
    };

    // Start just under the sampled minimum and halve until verified.
    let sampled = sphere_sample_min(s, 4096, SPHERE_SEED);
    let start = if sampled > 0.0 { sampled * 0.999 } else { 1e-6 };
    let mut lam = approx_rational(start);
    for _ in 0..200 {
        if !lam.is_positive() {
            lam = BigRational::new(1.into(), 1_000_000.into());
        }
        if verify(&lam) {
            return lam;
        }
        lam /= BigRational::from_integer(2.into());
    }
    // The symbol is certified positive, so some positive bound must
    // verify; reaching this point would be a numeric mishap upstream.
    panic!("failed to verify a positive lower bound for a positive circle symbol");
}

fn approx_rational(x: f64) -> BigRational {
    if !(x.is_finite()) || x <= 0.0 {
        return BigRational::new(1.into(), 1_000_000.into());
    }
    // Dyadic snap with 40 fractional bits.
    let scaled = (x * (1u64 << 40) as f64).floor() as i128;
    BigRational::new(BigInt::from(scaled), BigInt::from(1u128 << 40))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::WeylElement;

    fn gen(d: usize, k: i32) -> WeylElement {
        WeylElement::gen(d, k)
    }

    #[test]
    fn top_symbol_takes_leading_part() {
        // a ad = (degree 2 word) + 1, the symbol keeps only z zbar
        let x = gen(1, 1).mul(&gen(1, -1));
        let s = top_symbol(&x).unwrap();
        assert_eq!(s.degree(), 2);
        assert_eq!(s.terms().len(), 1);
        assert!(s.is_hermitean());
        assert_eq!(top_symbol(&WeylElement::zero(1)), Err(SymbolError::ZeroElement));
    }

    #[test]
    fn square_modulus_symbol_is_certified_positive_with_unit_bound() {
        // (a ad)(a ad) has top symbol z^2 zbar^2, equal to 1 on the circle
        let x = gen(1, 1).mul(&gen(1, -1));
        let s = top_symbol(&x.mul(&x)).unwrap();
        match check_sphere(&s).unwrap() {
            SphereVerdict::CertifiedPositive { lower_bound } => {
                assert_eq!(lower_bound, BigRational::one());
            }
            v => panic!("expected certified positive, got {:?}", v),
        }
    }

    #[test]
    fn hermitean_square_vanishes_at_exact_points() {
        // (a + ad)^2 has symbol (z + zbar)^2, zero at z = +-i
        let h = gen(1, 1).add(&gen(1, -1));
        let s = top_symbol(&h.mul(&h)).unwrap();
        match check_sphere(&s).unwrap() {
            SphereVerdict::CertifiedZeroAt { point: CirclePoint::Exact { cos, sin } } => {
                assert_eq!(cos, BigRational::zero());
                assert_eq!(sin.abs(), BigRational::one());
            }
            v => panic!("expected an exact zero, got {:?}", v),
        }
    }

    #[test]
    fn negative_definite_symbol_is_certified_negative() {
        let x = gen(1, 1).mul(&gen(1, -1)).neg();
        let s = top_symbol(&x).unwrap();
        match check_sphere(&s).unwrap() {
            SphereVerdict::CertifiedNegative { upper_bound } => {
                assert!(upper_bound.is_negative());
            }
            v => panic!("expected certified negative, got {:?}", v),
        }
    }

    #[test]
    fn witness_point_evaluates_to_zero() {
        // symbol of (q^2 - 1/2 (a ad + ad a)) style combinations still
        // hermitean: use (a + ad)^2 + (i a - i ad)^2 = 2(a^2 + ad^2) + ...
        let h = gen(1, 1).add(&gen(1, -1));
        let sym = top_symbol(&h.mul(&h)).unwrap();
        if let SphereVerdict::CertifiedZeroAt { point } = check_sphere(&sym).unwrap() {
            let z = point.to_complex();
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!(sym.eval_complex(&[z]).norm() < 1e-9);
        } else {
            panic!("expected a zero");
        }
    }

    #[test]
    fn multimode_positive_symbol_is_heuristic() {
        let d = 2;
        let x = gen(d, 1)
            .mul(&gen(d, -1))
            .add(&gen(d, 2).mul(&gen(d, -2)));
        let s = top_symbol(&x.mul(&x)).unwrap();
        match check_sphere(&s).unwrap() {
            SphereVerdict::HeuristicPositive { sampled_min } => {
                // the top symbol is (|z1|^2 + |z2|^2)^2, identically one
                // on the unit sphere
                assert!((sampled_min - 1.0).abs() < 1e-9, "min {}", sampled_min);
            }
            v => panic!("expected heuristic positive, got {:?}", v),
        }
    }
}
