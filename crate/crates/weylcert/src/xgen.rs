//! Words in the bounded generators, and a constructive membership test
//! for the right multiples of the ground resolvent.
//!
//! The bounded generators are the pair contractions x(i,j) and the
//! resolvents y(n), n >= 0. Several catalogue relations assert that some
//! difference D lies in y_0 X, the set of elements y_0 G with G a
//! combination of generator words. The certifier below does not just
//! decide this: it produces G explicitly and then re-verifies
//! y_0 G = D by exact expansion, so a positive answer carries its own
//! proof.
//!
//! The construction peels E = (N + alpha) D from the left, two letters at
//! a time, using a_i a_j = x(i,j) (N + alpha + t(i,j)); each linear factor
//! is carried to the right through the remaining letters, shifting its
//! offset by one per letter, and lands in the rational coefficient
//! function. What remains is a rational function P / prod (nubar+alpha+n)
//! which is a polynomial combination of the diagonal generators exactly
//! when every offset n is nonnegative and deg P stays within the number
//! of denominator factors: each variable factor nu_k pairs with one
//! denominator slot through nu_k y_n = x(-k,k) (1 - n y_n), and spare
//! slots emit y_n. Terms that fail this way are retried through the
//! involution.

use crate::localized::{pair_offset, Alpha, LocalizedElement, ShiftRational};
use crate::scalar::Scalar;
use num::{BigRational, One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    /// x(i,j), signed indices, 0 meaning the unit slot.
    X(i32, i32),
    /// y(n), only n >= 0 may appear in certificates.
    Y(i64),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(i, j) => write!(f, "x({},{})", i, j),
            Gen::Y(n) => write!(f, "y({})", n),
        }
    }
}

/// A product of generators, left to right.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GenWord(pub Vec<Gen>);

/// A finite scalar combination of generator words.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct GenPoly {
    pub terms: Vec<(Scalar, GenWord)>,
}

impl GenPoly {
    pub fn zero() -> Self {
        GenPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        GenPoly { terms: vec![(Scalar::one(), GenWord::default())] }
    }

    pub fn constant(c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GenPoly { terms: vec![(c, GenWord::default())] }
    }

    pub fn gen(g: Gen) -> Self {
        GenPoly { terms: vec![(Scalar::one(), GenWord(vec![g]))] }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        GenPoly { terms }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GenPoly {
            terms: self
                .terms
                .iter()
                .map(|(v, w)| (v.clone() * c.clone(), w.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (c1, w1) in &self.terms {
            for (c2, w2) in &o.terms {
                let mut w = w1.0.clone();
                w.extend_from_slice(&w2.0);
                terms.push((c1.clone() * c2.clone(), GenWord(w)));
            }
        }
        GenPoly { terms }
    }

    /// The formal involution: reverse each word, swap x(i,j) to x(-j,-i),
    /// keep the diagonal y(n), conjugate coefficients.
    pub fn formal_adjoint(&self) -> Self {
        GenPoly {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| {
                    let rev = w
                        .0
                        .iter()
                        .rev()
                        .map(|g| match g {
                            Gen::X(i, j) => Gen::X(-j, -i),
                            Gen::Y(n) => Gen::Y(*n),
                        })
                        .collect();
                    (c.conj(), GenWord(rev))
                })
                .collect(),
        }
    }

    /// Expand into the localized algebra.
    pub fn expand(&self, d: usize, alpha: &Alpha) -> LocalizedElement {
        let mut acc = LocalizedElement::zero(d, alpha);
        for (c, w) in &self.terms {
            let mut prod = LocalizedElement::one(d, alpha);
            for g in &w.0 {
                let factor = match g {
                    Gen::X(i, j) => LocalizedElement::make_x(d, alpha, *i, *j)
                        .expect("generator index out of range"),
                    Gen::Y(n) => LocalizedElement::make_y(d, alpha, *n),
                };
                prod = prod.l_mul(&factor).unwrap();
            }
            acc = acc.add(&prod.scale(c));
        }
        acc
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, w) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word = w
                .0
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join("*");
            let cs = c.to_string();
            if word.is_empty() {
                write!(f, "({})", cs)?;
            } else if cs == "1" {
                write!(f, "{}", word)?;
            } else {
                write!(f, "({})*{}", cs, word)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum MembershipError {
    #[error("not representable over the bounded generators: {0}")]
    NotRepresentable(String),
    #[error("constructed certificate failed re-verification")]
    VerificationFailed,
}

/// Certify that `elem` = y_0 G for a combination G of generator words,
/// returning G. The result is verified by exact expansion before being
/// returned.
pub fn certify_y0_multiple(elem: &LocalizedElement) -> Result<GenPoly, MembershipError> {
    if elem.is_zero() {
        return Ok(GenPoly::zero());
    }
    let d = elem.modes();
    let alpha = Alpha::new(elem.alpha().clone()).expect("stored alpha is admissible");
    // y_0 (N + alpha) = 1, so G must expand to E := (N + alpha) elem.
    let e = LocalizedElement::shifted_number(d, &alpha, 0)
        .l_mul(elem)
        .unwrap();

    let mut out = GenPoly::zero();
    let mut failures = Vec::new();
    for (m, f) in e.terms() {
        match peel_term(d, elem.alpha(), &flatten(m), f) {
            Ok(g) => out = out.add(&g),
            Err(msg) => {
                // Retry through the involution: peel the adjoint of the
                // single term and map the result back.
                let mut single = LocalizedElement::zero(d, &alpha);
                single.add_term(m.clone(), f.clone());
                let adj = single.l_adjoint();
                let mut ok = false;
                let mut sub = GenPoly::zero();
                for (ma, fa) in adj.terms() {
                    match peel_term(d, elem.alpha(), &flatten(ma), fa) {
                        Ok(g) => {
                            sub = sub.add(&g);
                            ok = true;
                        }
                        Err(m2) => {
                            failures.push(format!("{}; adjoint side: {}", msg, m2));
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    out = out.add(&sub.formal_adjoint());
                } else {
                    return Err(MembershipError::NotRepresentable(
                        failures.join(" | "),
                    ));
                }
            }
        }
    }

    // Independent re-verification of the certificate.
    let expanded = out.expand(d, &alpha);
    if expanded != e {
        return Err(MembershipError::VerificationFailed);
    }
    let y0 = LocalizedElement::make_y(d, &alpha, 0);
    if y0.l_mul(&expanded).unwrap() != *elem {
        return Err(MembershipError::VerificationFailed);
    }
    Ok(out)
}

/// Letters of a reduced word: positive indices for annihilators, then
/// negative for creators, modes ascending within each block.
fn flatten(m: &crate::weyl::Monomial) -> Vec<i32> {
    let mut letters = Vec::new();
    for (j, &e) in m.ann.iter().enumerate() {
        for _ in 0..e {
            letters.push((j + 1) as i32);
        }
    }
    for (j, &e) in m.cre.iter().enumerate() {
        for _ in 0..e {
            letters.push(-((j + 1) as i32));
        }
    }
    letters
}

fn peel_term(
    d: usize,
    alpha: &BigRational,
    letters: &[i32],
    f: &ShiftRational,
) -> Result<GenPoly, String> {
    let mut rest = letters;
    let mut fun = f.clone();
    let mut prefix = Vec::new();
    while rest.len() >= 2 {
        let (i, j) = (rest[0], rest[1]);
        rest = &rest[2..];
        let t = pair_offset(i, j);
        let delta: i64 = rest
            .iter()
            .map(|&v| if v < 0 { 1 } else { -1 })
            .sum();
        fun = fun.mul_linear(t + delta, alpha);
        prefix.push(Gen::X(i, j));
    }
    if rest.len() == 1 {
        let i = rest[0];
        fun = fun.mul_linear(pair_offset(i, 0), alpha);
        prefix.push(Gen::X(i, 0));
    }
    let diag = diagonal_genpoly(d, &fun)?;
    let mut pre = GenPoly::one();
    for g in prefix {
        pre = pre.mul(&GenPoly::gen(g));
    }
    Ok(pre.mul(&diag))
}

/// Rewrite a rational coefficient function as a combination of the
/// diagonal generators x(-k,k) and y(n), when possible.
fn diagonal_genpoly(d: usize, f: &ShiftRational) -> Result<GenPoly, String> {
    if f.is_zero() {
        return Ok(GenPoly::zero());
    }
    let mut slots = Vec::new();
    for (n, m) in f.den() {
        if *n < 0 {
            return Err(format!(
                "denominator offset {} below zero in {}",
                n, f
            ));
        }
        for _ in 0..*m {
            slots.push(*n);
        }
    }
    let deg = f.num().total_degree().unwrap_or(0) as usize;
    if deg > slots.len() {
        return Err(format!(
            "numerator degree {} exceeds {} denominator slots in {}",
            deg,
            slots.len(),
            f
        ));
    }
    let mut out = GenPoly::zero();
    for (e, c) in f.num().terms() {
        // Expand the exponent vector into single variable factors.
        let mut vars = Vec::new();
        for (j, &ej) in e.iter().enumerate() {
            for _ in 0..ej {
                vars.push(j + 1);
            }
        }
        let mut term = GenPoly::constant(c.clone());
        for (i, &n) in slots.iter().enumerate() {
            if i < vars.len() {
                let k = vars[i] as i32;
                // nu_k / (nubar + alpha + n) = x(-k,k) (1 - n y(n))
                let mut factor = GenPoly::gen(Gen::X(-k, k));
                if n != 0 {
                    let correction = GenPoly::one().add(
                        &GenPoly::gen(Gen::Y(n)).scale(&Scalar::from_int(-n)),
                    );
                    factor = factor.mul(&correction);
                }
                term = term.mul(&factor);
            } else {
                term = term.mul(&GenPoly::gen(Gen::Y(n)));
            }
        }
        debug_assert!(vars.len() <= slots.len());
        out = out.add(&term);
    }
    let _ = d;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localized::LocalizedElement;

    fn alpha_half() -> Alpha {
        Alpha::new(BigRational::new(1.into(), 2.into())).unwrap()
    }

    fn x(d: usize, al: &Alpha, i: i32, j: i32) -> LocalizedElement {
        LocalizedElement::make_x(d, al, i, j).unwrap()
    }

    #[test]
    fn commutator_of_pair_generators_is_certified() {
        // x(1,1) x(1,-1) - x(1,-1) x(1,1) lies in y_0 X
        let d = 1;
        let al = alpha_half();
        let a = x(d, &al, 1, 1);
        let b = x(d, &al, 1, -1);
        let diff = a.l_mul(&b).unwrap().sub(&b.l_mul(&a).unwrap());
        let g = certify_y0_multiple(&diff).expect("membership");
        // re-verification happens inside; check the reconstruction here too
        let y0 = LocalizedElement::make_y(d, &al, 0);
        assert_eq!(y0.l_mul(&g.expand(d, &al)).unwrap(), diff);
    }

    #[test]
    fn zero_is_trivially_certified() {
        let d = 1;
        let al = alpha_half();
        let z = LocalizedElement::zero(d, &al);
        let g = certify_y0_multiple(&z).unwrap();
        assert!(g.terms.is_empty());
    }

    #[test]
    fn formal_adjoint_matches_algebra_adjoint() {
        let d = 2;
        let al = alpha_half();
        let g = GenPoly::gen(Gen::X(1, -2))
            .mul(&GenPoly::gen(Gen::Y(1)))
            .mul(&GenPoly::gen(Gen::X(-1, 1)))
            .scale(&Scalar::i());
        assert_eq!(
            g.formal_adjoint().expand(d, &al),
            g.expand(d, &al).l_adjoint()
        );
    }

    #[test]
    fn plain_y0_multiples_are_recognised() {
        let d = 2;
        let al = alpha_half();
        let y0 = LocalizedElement::make_y(d, &al, 0);
        let cand = y0
            .l_mul(&x(d, &al, 2, -1))
            .unwrap()
            .sub(&y0.l_mul(&y0).unwrap().scale(&Scalar::sqrt2()));
        let g = certify_y0_multiple(&cand).expect("membership");
        assert_eq!(
            LocalizedElement::make_y(d, &al, 0)
                .l_mul(&g.expand(d, &al))
                .unwrap(),
            cand
        );
    }
}
