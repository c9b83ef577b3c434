//! Dense univariate polynomials over an exact field.
//!
//! Coefficients are stored low degree first and the vector is always
//! trimmed, so the zero polynomial is the empty vector. On top of ring
//! arithmetic the module provides Euclidean division, monic gcd, Yun
//! squarefree splitting, Sturm chains, exact real root counting and
//! isolation over any ordered exact field (rationals or Q(sqrt2)).

use crate::scalar::{ExactSign, FieldOps};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<T> {
    c: Vec<T>,
}

impl<T: FieldOps> Poly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(v: T) -> Self {
        Poly::new(vec![v])
    }

    pub fn var() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    /// c * x^k
    pub fn monomial(v: T, k: usize) -> Self {
        let mut c = vec![T::zero(); k];
        c.push(v);
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn deg(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn lead(&self) -> Option<&T> {
        self.c.last()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + o.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - o.coeff(k));
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.c.iter().map(|x| -x.clone()).collect())
    }

    pub fn scale(&self, v: &T) -> Self {
        Poly::new(self.c.iter().map(|x| x.clone() * v.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.c.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.c.len() - 1);
        for (k, c) in self.c.iter().enumerate().skip(1) {
            out.push(c.clone() * T::from_i64(k as i64));
        }
        Poly::new(out)
    }

    /// Euclidean division, returning (quotient, remainder).
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg().unwrap();
        let lead_inv = d.lead().unwrap().inv();
        let mut rem = self.c.clone();
        if rem.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![T::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = rem[k].clone() * lead_inv.clone();
            if q.is_zero() {
                continue;
            }
            quo[k - dd] = q.clone();
            for j in 0..=dd {
                rem[k - dd + j] = rem[k - dd + j].clone() - q.clone() * d.c[j].clone();
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn make_monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }

    /// self(q(x))
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(q).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// self(x + a)
    pub fn taylor_shift(&self, a: &T) -> Self {
        self.compose(&Poly::new(vec![a.clone(), T::one()]))
    }

    /// Yun's algorithm: returns the leading coefficient and monic
    /// squarefree factors with multiplicities, so that
    /// `self = lead * prod f_i^{m_i}` with the f_i pairwise coprime.
    pub fn squarefree_decomposition(&self) -> (T, Vec<(Poly<T>, u32)>) {
        assert!(!self.is_zero(), "squarefree split of the zero polynomial");
        let lead = self.lead().unwrap().clone();
        let p = self.make_monic();
        if p.deg() == Some(0) {
            return (lead, Vec::new());
        }
        let dp = p.derivative();
        let g = p.gcd(&dp);
        if g.deg() == Some(0) {
            return (lead, vec![(p, 1)]);
        }
        let mut out = Vec::new();
        let mut c = p.div_exact(&g);
        let mut d = dp.div_exact(&g).sub(&c.derivative());
        let mut i = 1u32;
        while !c.is_constant() {
            let a = c.gcd(&d);
            if a.deg().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            c = c.div_exact(&a);
            d = d.div_exact(&a).sub(&c.derivative());
            i += 1;
        }
        (lead, out)
    }
}

impl<T: FieldOps + ExactSign> Poly<T> {
    /// Sign of the value at x.
    pub fn sign_at(&self, x: &T) -> i8 {
        self.eval(x).sign()
    }

    /// A bound B with every real root in (-B, B).
    pub fn root_bound(&self) -> T {
        match self.deg() {
            None | Some(0) => T::one(),
            Some(n) => {
                let lead_inv = self.lead().unwrap().inv();
                let mut m = T::zero();
                for c in &self.c[..n] {
                    let mut r = c.clone() * lead_inv.clone();
                    if r.sign() < 0 {
                        r = -r;
                    }
                    if (r.clone() - m.clone()).sign() > 0 {
                        m = r;
                    }
                }
                m + T::one()
            }
        }
    }
}

/// A Sturm chain for exact real root counting.
pub struct SturmChain<T> {
    chain: Vec<Poly<T>>,
}

impl<T: FieldOps + ExactSign> SturmChain<T> {
    pub fn new(p: &Poly<T>) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        chain.push(p.clone());
        let dp = p.derivative();
        if dp.is_zero() {
            return SturmChain { chain };
        }
        chain.push(dp);
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // Negate and rescale by a positive constant to keep the
            // coefficients small; positive scaling preserves the chain.
            let mut lead = r.lead().unwrap().clone();
            if lead.sign() < 0 {
                lead = -lead;
            }
            chain.push(r.neg().scale(&lead.inv()));
        }
        SturmChain { chain }
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> u32 {
        let mut count = 0;
        let mut last = 0i8;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &T) -> u32 {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_pos_inf(&self) -> u32 {
        Self::variations(self.chain.iter().map(|p| p.lead().map_or(0, |l| l.sign())))
    }

    pub fn variations_neg_inf(&self) -> u32 {
        Self::variations(self.chain.iter().map(|p| {
            let s = p.lead().map_or(0, |l| l.sign());
            if p.deg().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in the half open interval (a, b].
    /// The endpoints must not be roots of the first chain element.
    pub fn count_in(&self, a: &T, b: &T) -> u32 {
        self.variations_at(a) - self.variations_at(b)
    }

    pub fn count_all(&self) -> u32 {
        self.variations_neg_inf() - self.variations_pos_inf()
    }
}

/// Location of one real root: either an exact field element or an open
/// interval with endpoints that are not roots, containing exactly one root.
#[derive(Clone, Debug, PartialEq)]
pub enum RootLoc<T> {
    Exact(T),
    Interval(T, T),
}

/// Count distinct real roots.
pub fn count_real_roots<T: FieldOps + ExactSign>(p: &Poly<T>) -> u32 {
    if p.deg().unwrap_or(0) == 0 {
        return 0;
    }
    SturmChain::new(p).count_all()
}

/// Isolate all distinct real roots of a nonzero polynomial.
pub fn isolate_real_roots<T: FieldOps + ExactSign>(p: &Poly<T>) -> Vec<RootLoc<T>> {
    assert!(!p.is_zero());
    if p.deg() == Some(0) {
        return Vec::new();
    }
    // Work on the squarefree part so multiple roots cannot confuse the
    // interval bookkeeping below.
    let p = p.div_exact(&p.gcd(&p.derivative()));
    let mut out = Vec::new();
    if p.deg().unwrap_or(0) == 0 {
        return out;
    }
    let chain = SturmChain::new(&p);
    let b = p.root_bound();
    let a = -b.clone();
    let total = chain.count_in(&a, &b);
    let mut stack = vec![(a, b, total)];
    let half = (T::one() + T::one()).inv();
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootLoc::Interval(lo, hi));
            continue;
        }
        let mid = (lo.clone() + hi.clone()) * half.clone();
        if p.sign_at(&mid) == 0 {
            out.push(RootLoc::Exact(mid.clone()));
            // Shrink a punctured neighborhood of mid until it contains no
            // other root and has non-root endpoints, then recurse on the
            // two outer pieces.
            let mut delta = (hi.clone() - lo.clone()) * half.clone() * half.clone();
            loop {
                let l = mid.clone() - delta.clone();
                let r = mid.clone() + delta.clone();
                if p.sign_at(&l) != 0
                    && p.sign_at(&r) != 0
                    && chain.count_in(&l, &r) == 1
                {
                    stack.push((lo.clone(), l.clone(), chain.count_in(&lo, &l)));
                    stack.push((r.clone(), hi.clone(), chain.count_in(&r, &hi)));
                    break;
                }
                delta = delta * half.clone();
            }
            continue;
        }
        let left = chain.count_in(&lo, &mid);
        stack.push((lo, mid.clone(), left));
        stack.push((mid, hi, n - left));
    }
    out
}

/// Shrink an isolating interval by bisection. Stops early if the midpoint
/// happens to be the root itself.
pub fn refine_root<T: FieldOps + ExactSign>(
    p: &Poly<T>,
    loc: &RootLoc<T>,
    iters: u32,
) -> RootLoc<T> {
    let (mut lo, mut hi) = match loc {
        RootLoc::Exact(_) => return loc.clone(),
        RootLoc::Interval(a, b) => (a.clone(), b.clone()),
    };
    let half = (T::one() + T::one()).inv();
    let slo = p.sign_at(&lo);
    debug_assert!(slo != 0 && p.sign_at(&hi) != 0);
    for _ in 0..iters {
        let mid = (lo.clone() + hi.clone()) * half.clone();
        let sm = p.sign_at(&mid);
        if sm == 0 {
            return RootLoc::Exact(mid);
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootLoc::Interval(lo, hi)
}

impl<T: FieldOps + fmt::Display> Poly<T> {
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let wrapped = if cs.contains(' ') || (k > 0 && cs.contains('-')) {
                format!("({})", cs)
            } else {
                cs.clone()
            };
            let term = match k {
                0 => wrapped,
                1 => {
                    if cs == "1" {
                        var.to_string()
                    } else {
                        format!("{}*{}", wrapped, var)
                    }
                }
                _ => {
                    if cs == "1" {
                        format!("{}^{}", var, k)
                    } else {
                        format!("{}*{}^{}", wrapped, var, k)
                    }
                }
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl<T: FieldOps + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn p(coeffs: &[i64]) -> Poly<BigRational> {
        Poly::new(
            coeffs
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[3, -2, 0, 1, 7]);
        let b = p(&[1, 2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(b.mul(&q).add(&r), a);
        assert!(r.deg().unwrap_or(0) < b.deg().unwrap());
    }

    #[test]
    fn gcd_picks_common_factor() {
        let f = p(&[-1, 1]); // x - 1
        let a = f.mul(&p(&[2, 1]));
        let b = f.mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), f.make_monic());
    }

    #[test]
    fn yun_splits_multiplicities() {
        // (x - 1)^2 (x + 2)^3 * 5
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]).pow(3)).scale(&BigRational::from_integer(5.into()));
        let (lead, factors) = f.squarefree_decomposition();
        assert_eq!(lead, BigRational::from_integer(5.into()));
        assert_eq!(factors, vec![(p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
    }

    #[test]
    fn sturm_counts_real_roots() {
        assert_eq!(count_real_roots(&p(&[-2, 0, 1])), 2);
        assert_eq!(count_real_roots(&p(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots(&p(&[0, -1, 0, 1])), 3); // x^3 - x
        // Repeated roots count once.
        assert_eq!(count_real_roots(&p(&[-1, 1]).pow(4)), 1);
    }

    #[test]
    fn isolation_separates_roots() {
        let f = p(&[0, 1]).mul(&p(&[-1, 1])).mul(&p(&[-2, 1]));
        let locs = isolate_real_roots(&f);
        assert_eq!(locs.len(), 3);
        let mut exact = 0;
        for loc in &locs {
            match refine_root(&f, loc, 30) {
                RootLoc::Exact(_) => exact += 1,
                RootLoc::Interval(a, b) => assert!((b - a) < BigRational::new(1.into(), 1000.into())),
            }
        }
        let _ = exact;
    }

    #[test]
    fn taylor_shift_evaluates_correctly() {
        let f = p(&[1, -3, 0, 2]);
        let g = f.taylor_shift(&BigRational::from_integer(5.into()));
        for v in -3..3 {
            let x = BigRational::from_integer(v.into());
            let y = &x + BigRational::from_integer(5.into());
            assert_eq!(g.eval(&x), f.eval(&y));
        }
    }
}
