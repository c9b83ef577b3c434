//! The coefficient field Q(i, sqrt2) and its real subfield Q(sqrt2).
//!
//! Every scalar in the engine lives in the degree four extension
//! Q(i, sqrt2) of the rationals, stored as four exact big rationals
//! `c0 + c1*i + c2*sqrt2 + c3*i*sqrt2`. The real subfield Q(sqrt2) is
//! an ordered field; [`Real2::sign`] decides order exactly by comparing
//! squares, so no floating point enters any certified path.

use num::{BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Field operations beyond the std operator traits, used by generic
/// polynomial code.
pub trait FieldOps:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rat(v: &BigRational) -> Self;
}

/// Exact sign in an ordered field: -1, 0 or 1.
pub trait ExactSign {
    fn sign(&self) -> i8;
}

impl FieldOps for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn from_rat(v: &BigRational) -> Self {
        v.clone()
    }
}

impl ExactSign for BigRational {
    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

fn rat_i64(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// An element a + b*sqrt2 of the ordered field Q(sqrt2).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Real2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl Real2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Real2 { a, b }
    }

    pub fn from_rat(a: BigRational) -> Self {
        Real2 { a, b: BigRational::zero() }
    }

    pub fn sqrt2() -> Self {
        Real2 { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign. When the two components have mixed signs the order is
    /// decided by comparing a^2 against 2 b^2, which is safe because
    /// sqrt2 is irrational so the two squares never tie with b nonzero.
    pub fn sign(&self) -> i8 {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        let a2 = &self.a * &self.a;
        let b22 = rat_i64(2) * &self.b * &self.b;
        match a2.cmp(&b22) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => {
                unreachable!("a^2 = 2 b^2 with b nonzero would make sqrt2 rational")
            }
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(sqrt2)");
        // (a + b sqrt2)^-1 = (a - b sqrt2) / (a^2 - 2 b^2)
        let norm = &self.a * &self.a - rat_i64(2) * &self.b * &self.b;
        Real2 { a: &self.a / &norm, b: -(&self.b / &norm) }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

impl ExactSign for Real2 {
    fn sign(&self) -> i8 {
        Real2::sign(self)
    }
}

impl Add for Real2 {
    type Output = Real2;
    fn add(self, o: Real2) -> Real2 {
        Real2 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for Real2 {
    type Output = Real2;
    fn sub(self, o: Real2) -> Real2 {
        Real2 { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Mul for Real2 {
    type Output = Real2;
    fn mul(self, o: Real2) -> Real2 {
        let a = &self.a * &o.a + rat_i64(2) * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        Real2 { a, b }
    }
}

impl Neg for Real2 {
    type Output = Real2;
    fn neg(self) -> Real2 {
        Real2 { a: -self.a, b: -self.b }
    }
}

impl Zero for Real2 {
    fn zero() -> Self {
        Real2 { a: BigRational::zero(), b: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Real2 {
    fn one() -> Self {
        Real2 { a: BigRational::one(), b: BigRational::zero() }
    }
}

impl FieldOps for Real2 {
    fn inv(&self) -> Self {
        Real2::inv(self)
    }
    fn from_i64(v: i64) -> Self {
        Real2::from_rat(rat_i64(v))
    }
    fn from_rat(v: &BigRational) -> Self {
        Real2::from_rat(v.clone())
    }
}

impl PartialOrd for Real2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let d = self.clone() - other.clone();
        match d.sign() {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for Real2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            first = false;
        }
        if !self.b.is_zero() {
            if !first {
                write!(f, " {} ", if self.b.is_negative() { "-" } else { "+" })?;
                let m = self.b.abs();
                if m.is_one() {
                    write!(f, "sqrt2")?;
                } else {
                    write!(f, "{}*sqrt2", m)?;
                }
            } else if self.b.is_one() {
                write!(f, "sqrt2")?;
            } else if (-self.b.clone()).is_one() {
                write!(f, "-sqrt2")?;
            } else {
                write!(f, "{}*sqrt2", self.b)?;
            }
        }
        Ok(())
    }
}

/// An element of Q(i, sqrt2), stored as
/// `c[0] + c[1]*i + c[2]*sqrt2 + c[3]*i*sqrt2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    c: [BigRational; 4],
}

impl Scalar {
    pub fn new(c0: BigRational, c1: BigRational, c2: BigRational, c3: BigRational) -> Self {
        Scalar { c: [c0, c1, c2, c3] }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::from_rat(rat_i64(v))
    }

    pub fn from_rat(v: BigRational) -> Self {
        let z = BigRational::zero();
        Scalar { c: [v, z.clone(), z.clone(), z] }
    }

    pub fn i() -> Self {
        let z = BigRational::zero();
        Scalar { c: [z.clone(), BigRational::one(), z.clone(), z] }
    }

    pub fn sqrt2() -> Self {
        let z = BigRational::zero();
        Scalar { c: [z.clone(), z.clone(), BigRational::one(), z] }
    }

    pub fn components(&self) -> &[BigRational; 4] {
        &self.c
    }

    /// The rational part, provided the other three components vanish.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn is_real(&self) -> bool {
        self.c[1].is_zero() && self.c[3].is_zero()
    }

    /// Real part as an element of Q(sqrt2).
    pub fn real_part(&self) -> Real2 {
        Real2 { a: self.c[0].clone(), b: self.c[2].clone() }
    }

    /// Imaginary part as an element of Q(sqrt2).
    pub fn imag_part(&self) -> Real2 {
        Real2 { a: self.c[1].clone(), b: self.c[3].clone() }
    }

    pub fn from_real2(re: &Real2, im: &Real2) -> Self {
        Scalar { c: [re.a.clone(), im.a.clone(), re.b.clone(), im.b.clone()] }
    }

    /// Complex conjugation, the restriction of the involution to scalars.
    pub fn conj(&self) -> Self {
        Scalar {
            c: [
                self.c[0].clone(),
                -self.c[1].clone(),
                self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    /// The field automorphism sending sqrt2 to -sqrt2.
    fn sqrt2_conj(&self) -> Self {
        Scalar {
            c: [
                self.c[0].clone(),
                self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(i, sqrt2)");
        // Multiply by the sqrt2 conjugate to land in Q(i), then by the
        // complex conjugate to land in Q.
        let s2c = self.sqrt2_conj();
        let w = self.clone() * s2c.clone();
        debug_assert!(w.c[2].is_zero() && w.c[3].is_zero());
        let den = &w.c[0] * &w.c[0] + &w.c[1] * &w.c[1];
        let winv = Scalar::new(&w.c[0] / &den, -(&w.c[1] / &den), BigRational::zero(), BigRational::zero());
        s2c * winv
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Scalar {
            c: [
                &self.c[0] * r,
                &self.c[1] * r,
                &self.c[2] * r,
                &self.c[3] * r,
            ],
        }
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        (self.real_part().to_f64(), self.imag_part().to_f64())
    }

    /// Modulus squared, a value in Q(sqrt2), nonnegative.
    pub fn norm_sqr(&self) -> Real2 {
        let re = self.real_part();
        let im = self.imag_part();
        re.clone() * re + im.clone() * im
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        Scalar {
            c: [
                &self.c[0] + &o.c[0],
                &self.c[1] + &o.c[1],
                &self.c[2] + &o.c[2],
                &self.c[3] + &o.c[3],
            ],
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self + (-o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c: [
                -self.c[0].clone(),
                -self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        // View both factors as A + B sqrt2 with A, B in Q(i).
        let mul_c = |xr: &BigRational, xi: &BigRational, yr: &BigRational, yi: &BigRational| {
            (xr * yr - xi * yi, xr * yi + xi * yr)
        };
        let (a1r, a1i, b1r, b1i) = (&self.c[0], &self.c[1], &self.c[2], &self.c[3]);
        let (a2r, a2i, b2r, b2i) = (&o.c[0], &o.c[1], &o.c[2], &o.c[3]);
        let (aar, aai) = mul_c(a1r, a1i, a2r, a2i);
        let (bbr, bbi) = mul_c(b1r, b1i, b2r, b2i);
        let (abr, abi) = mul_c(a1r, a1i, b2r, b2i);
        let (bar, bai) = mul_c(b1r, b1i, a2r, a2i);
        let two = rat_i64(2);
        Scalar {
            c: [
                aar + &two * bbr,
                aai + &two * bbi,
                abr + bar,
                abi + bai,
            ],
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl FieldOps for Scalar {
    fn inv(&self) -> Self {
        Scalar::inv(self)
    }
    fn from_i64(v: i64) -> Self {
        Scalar::from_int(v)
    }
    fn from_rat(v: &BigRational) -> Self {
        Scalar::from_rat(v.clone())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let units = ["", "i", "sqrt2", "i*sqrt2"];
        let mut first = true;
        for (k, unit) in units.iter().enumerate() {
            let v = &self.c[k];
            if v.is_zero() {
                continue;
            }
            if first {
                if unit.is_empty() {
                    write!(f, "{}", v)?;
                } else if v.is_one() {
                    write!(f, "{}", unit)?;
                } else if (-v.clone()).is_one() {
                    write!(f, "-{}", unit)?;
                } else {
                    write!(f, "{}*{}", v, unit)?;
                }
                first = false;
            } else {
                let sgn = if v.is_negative() { "-" } else { "+" };
                let m = v.abs();
                if unit.is_empty() {
                    write!(f, " {} {}", sgn, m)?;
                } else if m.is_one() {
                    write!(f, " {} {}", sgn, unit)?;
                } else {
                    write!(f, " {} {}*{}", sgn, m, unit)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn real2_sign_mixed_components() {
        // 3 - 2 sqrt2 > 0 since 9 > 8
        assert_eq!(Real2::new(rat(3, 1), rat(-2, 1)).sign(), 1);
        // 7/5 - sqrt2 < 0 since 49/25 < 2
        assert_eq!(Real2::new(rat(7, 5), rat(-1, 1)).sign(), -1);
        // -7/5 + sqrt2 > 0
        assert_eq!(Real2::new(rat(-7, 5), rat(1, 1)).sign(), 1);
        assert_eq!(Real2::new(rat(0, 1), rat(-3, 1)).sign(), -1);
        assert_eq!(Real2::zero().sign(), 0);
    }

    #[test]
    fn real2_inverse() {
        let x = Real2::new(rat(3, 2), rat(-1, 3));
        let p = x.clone() * x.inv();
        assert_eq!(p, Real2::one());
    }

    #[test]
    fn real2_order_is_consistent_with_floats() {
        let xs = [
            Real2::new(rat(1, 1), rat(0, 1)),
            Real2::sqrt2(),
            Real2::new(rat(3, 2), rat(0, 1)),
            Real2::new(rat(0, 1), rat(-1, 1)),
            Real2::new(rat(-1, 2), rat(2, 1)),
        ];
        for x in &xs {
            for y in &xs {
                let exact = x.cmp(y);
                let approx = x.to_f64().partial_cmp(&y.to_f64()).unwrap();
                assert_eq!(exact, approx);
            }
        }
    }

    #[test]
    fn scalar_inverse_roundtrip() {
        let x = Scalar::new(rat(2, 3), rat(-1, 2), rat(1, 5), rat(4, 1));
        assert_eq!(x.clone() * x.inv(), Scalar::one());
        let y = Scalar::new(rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1));
        assert_eq!(y.clone() * y.inv(), Scalar::one());
    }

    #[test]
    fn scalar_units_multiply_correctly() {
        let i = Scalar::i();
        let s = Scalar::sqrt2();
        assert_eq!(i.clone() * i.clone(), Scalar::from_int(-1));
        assert_eq!(s.clone() * s.clone(), Scalar::from_int(2));
        let is = i.clone() * s.clone();
        assert_eq!(is.clone() * is, Scalar::from_int(-2));
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let x = Scalar::new(rat(1, 2), rat(3, 1), rat(-1, 4), rat(2, 7));
        let y = Scalar::new(rat(-2, 1), rat(1, 6), rat(5, 3), rat(-1, 1));
        assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
        assert_eq!(x.norm_sqr(), (x.clone() * x.conj()).real_part());
    }
}
