//! Factorization of a resolvent power against a flat Weyl word.
//!
//! For 2n letters a_{i_1} ... a_{i_2n} the product y_0^n a_{i_1} ... a_{i_2n}
//! equals f_1(y_0) x(i_1,i_2) f_2(y_0) x(i_3,i_4) ... f_n(y_0) x(i_{2n-1},i_2n)
//! with explicit polynomials f_j. The j-th polynomial is
//!
//!   f_j(y) = (1 + t_j y) (1 + s_j y)^(n-j)
//!
//! where t_j is the absorption weight of the j-th pair and s_j the sum of
//! the two index signs: peeling one resolvent off the left absorbs a pair
//! through y_0 a_k a_l = (1 + t y_0) x(k,l), and pushing the remaining
//! power through an already-produced pair multiplies its polynomial by
//! (1 + s y_0) once per crossing. Every f_j has constant term 1; the
//! product collapses to the bare pair word at y_0 = 0.
//!
//! The construction is re-verified on every call by expanding both sides
//! in the localized algebra, and the outcome is reported in `verified`
//! rather than assumed.

use crate::localized::{y0_weight, Alpha, LocalizedElement, LocalizedError};
use crate::poly::Poly;
use crate::weyl::WeylElement;
use num::{BigRational, One, Zero};

#[derive(Clone, Debug)]
pub struct WordFactorization {
    /// Index pairs (i_1,i_2), (i_3,i_4), ...
    pub pairs: Vec<(i32, i32)>,
    /// One polynomial per pair, in the single variable y_0.
    pub fs: Vec<Poly<BigRational>>,
    /// Exact equality of the alternating product with y_0^n times the word.
    pub verified: bool,
}

impl WordFactorization {
    /// Render the alternating product as text.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (f, (i, j)) in self.fs.iter().zip(&self.pairs) {
            parts.push(format!("[{}]", f.to_string_var("y0")));
            parts.push(format!("x({},{})", i, j));
        }
        parts.join(" * ")
    }
}

/// Evaluate a polynomial at y_0 inside the localized algebra.
pub fn poly_at_y0(d: usize, alpha: &Alpha, p: &Poly<BigRational>) -> LocalizedElement {
    let y0 = LocalizedElement::make_y(d, alpha, 0);
    let mut acc = LocalizedElement::zero(d, alpha);
    let mut pow = LocalizedElement::one(d, alpha);
    for c in p.coeffs() {
        if !c.is_zero() {
            acc = acc.add(&pow.scale_rat(c));
        }
        pow = pow.l_mul(&y0).unwrap();
    }
    acc
}

/// Factor y_0^n a_{i_1} ... a_{i_2n} into the alternating product above.
pub fn factor_y0_word(
    d: usize,
    alpha: &Alpha,
    indices: &[i32],
    n: usize,
) -> Result<WordFactorization, LocalizedError> {
    if n == 0 || indices.len() != 2 * n {
        return Err(LocalizedError::ParameterMismatch);
    }
    for &i in indices {
        if i.unsigned_abs() as usize > d {
            return Err(LocalizedError::IndexOutOfRange(i, d));
        }
    }
    let mut pairs = Vec::with_capacity(n);
    let mut fs = Vec::with_capacity(n);
    for j in 0..n {
        let (i1, i2) = (indices[2 * j], indices[2 * j + 1]);
        pairs.push((i1, i2));
        let t = y0_weight(i1, i2);
        let s = (i1.signum() + i2.signum()) as i64;
        let lin_t = Poly::new(vec![
            BigRational::one(),
            BigRational::from_integer(t.into()),
        ]);
        let lin_s = Poly::new(vec![
            BigRational::one(),
            BigRational::from_integer(s.into()),
        ]);
        let mut f = lin_t;
        for _ in 0..(n - 1 - j) {
            f = f.mul(&lin_s);
        }
        fs.push(f);
    }

    // Re-expand both sides exactly.
    let mut word = WeylElement::one(d);
    for &i in indices {
        word = word.mul(&WeylElement::gen(d, i));
    }
    let y0 = LocalizedElement::make_y(d, alpha, 0);
    let mut lhs = LocalizedElement::from_weyl(&word, alpha);
    for _ in 0..n {
        lhs = y0.l_mul(&lhs)?;
    }
    let mut rhs = LocalizedElement::one(d, alpha);
    for (f, (i1, i2)) in fs.iter().zip(&pairs) {
        rhs = rhs.l_mul(&poly_at_y0(d, alpha, f))?;
        rhs = rhs.l_mul(&LocalizedElement::make_x(d, alpha, *i1, *i2)?)?;
    }
    let verified = lhs == rhs;
    Ok(WordFactorization { pairs, fs, verified })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(n: i64, d: i64) -> Alpha {
        Alpha::new(BigRational::new(n.into(), d.into())).unwrap()
    }

    #[test]
    fn single_pair_matches_the_absorption_rule() {
        let a = al(1, 2);
        let fac = factor_y0_word(1, &a, &[1, 1], 1).unwrap();
        assert!(fac.verified);
        assert_eq!(fac.fs[0].coeffs(), &[BigRational::one(), BigRational::from_integer(2.into())]);
        let fac = factor_y0_word(1, &a, &[1, -1], 1).unwrap();
        assert!(fac.verified);
        assert_eq!(fac.fs[0].coeffs(), &[BigRational::one()]);
    }

    #[test]
    fn all_length_four_words_factor_in_one_mode() {
        let a = al(13, 10);
        for i1 in -1..=1 {
            for i2 in -1..=1 {
                for i3 in -1..=1 {
                    for i4 in -1..=1 {
                        let fac = factor_y0_word(1, &a, &[i1, i2, i3, i4], 2).unwrap();
                        assert!(fac.verified, "{:?}", (i1, i2, i3, i4));
                        for f in &fac.fs {
                            assert!(f.coeffs()[0].is_one(), "constant term of {}", f);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_mode_words_factor() {
        let a = al(5, 2);
        let fac = factor_y0_word(2, &a, &[2, -1, 1, -2], 2).unwrap();
        assert!(fac.verified);
        let fac = factor_y0_word(2, &a, &[-2, -2, 2, 0], 2).unwrap();
        assert!(fac.verified);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let a = al(1, 2);
        assert!(factor_y0_word(1, &a, &[1, 1, 1], 2).is_err());
    }
}
