//! Elements of the multimode Weyl algebra in normal form.
//!
//! Mode k of W(d) carries an annihilator a(k) and a creator ad(k) with
//! a(k) ad(k) - ad(k) a(k) = 1; distinct modes commute. The involution
//! swaps a(k) and ad(k) and conjugates scalars. Negative generator
//! indices denote creators, so gen(-k) = ad(k), and index 0 denotes the
//! unit.
//!
//! The normal form places annihilators to the left of creators within
//! each mode. Products are computed mode by mode through the closed
//! convolution
//!
//! ```text
//! (a^k ad^l)(a^k' ad^l') =
//!     sum_t (-1)^t t! C(l,t) C(k',t) a^{k+k'-t} ad^{l+l'-t}
//! ```
//!
//! which is exercised against a one-swap rewriting oracle in the test
//! suite. In this ordering the involution is just the exponent swap
//! (k, l) -> (l, k) with conjugated coefficients, no reordering needed.

use crate::poly::Poly;
use crate::scalar::Scalar;
use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;

/// Exponents of one normally ordered word: `prod_j a(j)^ann[j]` followed
/// by `prod_j ad(j)^cre[j]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub ann: Vec<u32>,
    pub cre: Vec<u32>,
}

impl Monomial {
    pub fn unit(d: usize) -> Self {
        Monomial { ann: vec![0; d], cre: vec![0; d] }
    }

    pub fn degree(&self) -> u32 {
        self.ann.iter().sum::<u32>() + self.cre.iter().sum::<u32>()
    }

    pub fn is_unit(&self) -> bool {
        self.ann.iter().all(|&e| e == 0) && self.cre.iter().all(|&e| e == 0)
    }

    /// Annihilator count minus creator count per mode, the grading under
    /// which diagonal operators have weight zero.
    pub fn weight(&self) -> Vec<i64> {
        self.ann
            .iter()
            .zip(&self.cre)
            .map(|(&k, &l)| k as i64 - l as i64)
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.ann == self.cre
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= BigInt::from(n - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

fn factorial(n: u32) -> BigInt {
    let mut f = BigInt::one();
    for t in 2..=n {
        f *= BigInt::from(t);
    }
    f
}

/// Normal ordering of (a^k1 ad^l1)(a^k2 ad^l2) within a single mode.
fn mode_product(k1: u32, l1: u32, k2: u32, l2: u32) -> Vec<(u32, u32, BigInt)> {
    let tmax = l1.min(k2);
    let mut out = Vec::with_capacity(tmax as usize + 1);
    for t in 0..=tmax {
        let mut c = factorial(t) * binom(l1, t) * binom(k2, t);
        if t % 2 == 1 {
            c = -c;
        }
        out.push((k1 + k2 - t, l1 + l2 - t, c));
    }
    out
}

/// Product of two normally ordered words, expanded to normal form with
/// integer coefficients. Shared with the localized algebra.
pub(crate) fn monomial_product(d: usize, m1: &Monomial, m2: &Monomial) -> Vec<(Monomial, BigInt)> {
    let mut acc: Vec<(Monomial, BigInt)> = vec![(
        Monomial { ann: Vec::with_capacity(d), cre: Vec::with_capacity(d) },
        BigInt::one(),
    )];
    for j in 0..d {
        let parts = mode_product(m1.ann[j], m1.cre[j], m2.ann[j], m2.cre[j]);
        let mut next = Vec::with_capacity(acc.len() * parts.len());
        for (m, c) in &acc {
            for (k, l, w) in &parts {
                let mut ann = m.ann.clone();
                let mut cre = m.cre.clone();
                ann.push(*k);
                cre.push(*l);
                next.push((Monomial { ann, cre }, c * w));
            }
        }
        acc = next;
    }
    acc
}

/// An element of W(d) as a finite scalar combination of normally ordered
/// words. The zero element has an empty term map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElement {
    d: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl WeylElement {
    pub fn zero(d: usize) -> Self {
        assert!(d >= 1, "need at least one mode");
        WeylElement { d, terms: BTreeMap::new() }
    }

    pub fn one(d: usize) -> Self {
        Self::scalar_elem(d, Scalar::one())
    }

    pub fn scalar_elem(d: usize, c: Scalar) -> Self {
        let mut e = Self::zero(d);
        e.add_term(Monomial::unit(d), c);
        e
    }

    /// Generator by signed index: positive k gives a(k), negative k gives
    /// ad(-k), zero gives the unit.
    pub fn gen(d: usize, idx: i32) -> Self {
        let k = idx.unsigned_abs() as usize;
        assert!(k <= d, "generator index {} out of range for {} modes", idx, d);
        if idx == 0 {
            return Self::one(d);
        }
        let mut m = Monomial::unit(d);
        if idx > 0 {
            m.ann[k - 1] = 1;
        } else {
            m.cre[k - 1] = 1;
        }
        let mut e = Self::zero(d);
        e.add_term(m, Scalar::one());
        e
    }

    pub fn annihilator(d: usize, k: usize) -> Self {
        Self::gen(d, k as i32)
    }

    pub fn creator(d: usize, k: usize) -> Self {
        Self::gen(d, -(k as i32))
    }

    pub fn modes(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.ann.len(), self.d);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(d: usize, it: I) -> Self {
        let mut e = Self::zero(d);
        for (m, c) in it {
            e.add_term(m, c);
        }
        e
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.d, o.d, "mode count mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        WeylElement {
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        WeylElement {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        self.scale(&Scalar::from_rat(r.clone()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.d, o.d, "mode count mismatch");
        let mut out = Self::zero(self.d);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let base = c1.clone() * c2.clone();
                for (m, w) in monomial_product(self.d, m1, m2) {
                    out.add_term(m, base.clone().scale(&BigRational::from_integer(w)));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.d);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The involution: swap annihilator and creator exponents and
    /// conjugate coefficients.
    pub fn adjoint(&self) -> Self {
        WeylElement {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial { ann: m.cre.clone(), cre: m.ann.clone() },
                        c.conj(),
                    )
                })
                .collect(),
        }
    }

    pub fn is_hermitean(&self) -> bool {
        *self == self.adjoint()
    }

    /// Total degree: the maximum word length over all terms. None for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn terms_of_degree(&self, n: u32) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().filter(move |(m, _)| m.degree() == n)
    }

    /// The number operator of one mode (1-based), ad(k) a(k) in the usual
    /// presentation, which normal-orders to a(k) ad(k) - 1 here.
    pub fn mode_number_operator(d: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= d);
        let mut m = Monomial::unit(d);
        m.ann[k - 1] = 1;
        m.cre[k - 1] = 1;
        let mut e = Self::zero(d);
        e.add_term(m, Scalar::one());
        e.add_term(Monomial::unit(d), -Scalar::one());
        e
    }

    /// The total number operator, the sum over all modes.
    pub fn number_operator(d: usize) -> Self {
        let mut e = Self::zero(d);
        for k in 1..=d {
            e = e.add(&Self::mode_number_operator(d, k));
        }
        e
    }

    /// p(N) for a polynomial p, evaluated by Horner's scheme in the total
    /// number operator.
    pub fn from_n_polynomial(d: usize, p: &Poly<Scalar>) -> Self {
        let n = Self::number_operator(d);
        let mut acc = Self::zero(d);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&n);
            acc.add_term(Monomial::unit(d), c.clone());
        }
        acc
    }

    pub fn from_n_polynomial_rat(d: usize, p: &Poly<BigRational>) -> Self {
        let lifted = Poly::new(p.coeffs().iter().map(|c| Scalar::from_rat(c.clone())).collect());
        Self::from_n_polynomial(d, &lifted)
    }

    /// sum_j a(j) c ad(j), the averaging step that reduces elements of
    /// degree 2 mod 4 to the doubly even case.
    pub fn lowered_average(&self) -> Self {
        let mut out = Self::zero(self.d);
        for j in 1..=self.d {
            let aj = Self::gen(self.d, j as i32);
            let adj = Self::gen(self.d, -(j as i32));
            out = out.add(&aj.mul(self).mul(&adj));
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(d: usize, k: i32) -> WeylElement {
        WeylElement::gen(d, k)
    }

    #[test]
    fn canonical_commutation() {
        // ad a = a ad - 1 per mode, cross-mode letters commute
        let lhs = a(2, -1).mul(&a(2, 1));
        let rhs = a(2, 1).mul(&a(2, -1)).sub(&WeylElement::one(2));
        assert_eq!(lhs, rhs);
        assert_eq!(a(2, 1).commutator(&a(2, -2)), WeylElement::zero(2));
        assert_eq!(a(2, 1).commutator(&a(2, 2)), WeylElement::zero(2));
    }

    #[test]
    fn number_operator_shifts_ladder_operators() {
        let d = 2;
        let n = WeylElement::number_operator(d);
        for k in 1..=d {
            let ak = a(d, k as i32);
            let adk = a(d, -(k as i32));
            // N a = a (N - 1), N ad = ad (N + 1)
            assert_eq!(n.mul(&ak), ak.mul(&n.sub(&WeylElement::one(d))));
            assert_eq!(n.mul(&adk), adk.mul(&n.add(&WeylElement::one(d))));
        }
    }

    #[test]
    fn adjoint_reverses_products() {
        let x = a(2, 1).mul(&a(2, -2)).add(&a(2, 2).scale(&Scalar::i()));
        let y = a(2, -1).mul(&a(2, 1)).sub(&WeylElement::one(2).scale(&Scalar::sqrt2()));
        assert_eq!(x.mul(&y).adjoint(), y.adjoint().mul(&x.adjoint()));
        assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn degree_of_products_adds_without_top_cancellation() {
        let x = a(1, 1).mul(&a(1, -1)); // degree 2
        assert_eq!(x.degree(), Some(2));
        assert_eq!(x.mul(&x).degree(), Some(4));
        assert_eq!(WeylElement::zero(1).degree(), None);
        assert_eq!(WeylElement::one(1).degree(), Some(0));
    }

    #[test]
    fn quadrature_commutator_is_minus_i() {
        // q = (a + ad)/sqrt2, p = i (ad - a)/sqrt2, then p q - q p = -i
        let d = 1;
        let s = Scalar::sqrt2().inv();
        let q = a(d, 1).add(&a(d, -1)).scale(&s);
        let p = a(d, -1).sub(&a(d, 1)).scale(&(Scalar::i() * s));
        let c = p.mul(&q).sub(&q.mul(&p));
        assert_eq!(c, WeylElement::one(d).scale(&-Scalar::i()));
    }

    #[test]
    fn number_polynomial_matches_direct_expansion() {
        let d = 1;
        let n = WeylElement::number_operator(d);
        // p(N) = N^2 - 3N + 9/4
        let p = Poly::new(vec![
            Scalar::from_rat(BigRational::new(9.into(), 4.into())),
            Scalar::from_int(-3),
            Scalar::from_int(1),
        ]);
        let direct = n.mul(&n).sub(&n.scale(&Scalar::from_int(3))).add(&WeylElement::scalar_elem(
            d,
            Scalar::from_rat(BigRational::new(9.into(), 4.into())),
        ));
        assert_eq!(WeylElement::from_n_polynomial(d, &p), direct);
    }

    #[test]
    fn lowered_average_of_unit_is_number_plus_dim() {
        // sum_j a(j) ad(j) = N + d
        let d = 2;
        let avg = WeylElement::one(d).lowered_average();
        let expected = WeylElement::number_operator(d).add(&WeylElement::scalar_elem(d, Scalar::from_int(d as i64)));
        assert_eq!(avg, expected);
    }
}
