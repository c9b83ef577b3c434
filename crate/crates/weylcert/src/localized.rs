//! The auxiliary algebra: W(d) with the shifted number operator inverted.
//!
//! For a positive non-integer alpha the operators N + alpha + n are
//! invertible on every occupation basis vector, and the algebra generated
//! by W(d) together with the inverses y_n = (N + alpha + n)^{-1} admits a
//! normal form: a finite sum of normally ordered words, each multiplied
//! on the right by a rational function of the mode occupation numbers
//! nu_1..nu_d whose denominator is a product of factors
//! (nu_1 + .. + nu_d + alpha + n).
//!
//! Moving a coefficient function across a word only shifts its argument,
//! one step down per annihilator and one step up per creator, so products
//! and adjoints stay exact and the zero test is just the zero test of the
//! normal form.

use crate::scalar::Scalar;
use crate::weyl::{monomial_product, Monomial, WeylElement};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LocalizedError {
    #[error("alpha must be positive and not an integer, got {0}")]
    BadAlpha(BigRational),
    #[error("operands live over different parameters")]
    ParameterMismatch,
    #[error("generator index {0} out of range for {1} modes")]
    IndexOutOfRange(i32, usize),
}

/// The localization parameter: a positive non-integer rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alpha(BigRational);

impl Alpha {
    pub fn new(r: BigRational) -> Result<Self, LocalizedError> {
        if r.is_positive() && !r.is_integer() {
            Ok(Alpha(r))
        } else {
            Err(LocalizedError::BadAlpha(r))
        }
    }

    pub fn rat(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A polynomial in the occupation numbers nu_1..nu_d with coefficients in
/// Q(i, sqrt2). Keys are exponent vectors of length d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NuPoly {
    d: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl NuPoly {
    pub fn zero(d: usize) -> Self {
        NuPoly { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: Scalar) -> Self {
        let mut p = Self::zero(d);
        p.add_term(vec![0; d], c);
        p
    }

    pub fn one(d: usize) -> Self {
        Self::constant(d, Scalar::one())
    }

    /// The variable nu_j, 1-based.
    pub fn var(d: usize, j: usize) -> Self {
        assert!(j >= 1 && j <= d);
        let mut e = vec![0; d];
        e[j - 1] = 1;
        let mut p = Self::zero(d);
        p.add_term(e, Scalar::one());
        p
    }

    /// nu_1 + .. + nu_d.
    pub fn nu_bar(d: usize) -> Self {
        let mut p = Self::zero(d);
        for j in 1..=d {
            p = p.add(&Self::var(d, j));
        }
        p
    }

    /// nu_bar + c.
    pub fn linear_nubar(d: usize, c: &BigRational) -> Self {
        Self::nu_bar(d).add(&Self::constant(d, Scalar::from_rat(c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        debug_assert_eq!(e.len(), self.d);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        NuPoly {
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        NuPoly {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.d);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        NuPoly {
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        }
    }

    /// Substitute nu_j -> nu_j + delta_j.
    pub fn shift(&self, delta: &[i64]) -> Self {
        assert_eq!(delta.len(), self.d);
        let mut out = Self::zero(self.d);
        for (e, c) in &self.terms {
            // expand prod_j (nu_j + delta_j)^{e_j}
            let mut acc: Vec<(Vec<u32>, Scalar)> = vec![(Vec::with_capacity(self.d), c.clone())];
            for j in 0..self.d {
                let mut next = Vec::new();
                let dj = delta[j];
                for (pref, coef) in &acc {
                    if dj == 0 {
                        let mut p = pref.clone();
                        p.push(e[j]);
                        next.push((p, coef.clone()));
                        continue;
                    }
                    for t in 0..=e[j] {
                        // C(e_j, t) delta^{e_j - t} nu^t
                        let mut w = BigInt::one();
                        for s in 0..t {
                            w = w * BigInt::from(e[j] - s) / BigInt::from(s + 1);
                        }
                        let mut pow = BigInt::one();
                        for _ in 0..(e[j] - t) {
                            pow *= BigInt::from(dj);
                        }
                        let mut p = pref.clone();
                        p.push(t);
                        next.push((
                            p,
                            coef.clone().scale(&BigRational::from_integer(w * pow)),
                        ));
                    }
                }
                acc = next;
            }
            for (exp, coef) in acc {
                out.add_term(exp, coef);
            }
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> Scalar {
        assert_eq!(point.len(), self.d);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut v = BigRational::one();
            for (j, &ej) in e.iter().enumerate() {
                for _ in 0..ej {
                    v *= &point[j];
                }
            }
            acc = acc + c.clone().scale(&v);
        }
        acc
    }

    /// Exact division by nu_bar + c, if the remainder vanishes. The
    /// divisor is monic in nu_d, so ordinary long division in that
    /// variable decides divisibility.
    pub fn exact_div_linear(&self, c: &BigRational) -> Option<NuPoly> {
        let d = self.d;
        let lin = Self::linear_nubar(d, c);
        let mut q = Self::zero(d);
        let mut r = self.clone();
        loop {
            if r.is_zero() {
                return Some(q);
            }
            let dmax = r.terms.keys().map(|e| e[d - 1]).max().unwrap();
            if dmax == 0 {
                return None;
            }
            let mut layer = Self::zero(d);
            for (e, v) in &r.terms {
                if e[d - 1] == dmax {
                    let mut e2 = e.clone();
                    e2[d - 1] = dmax - 1;
                    layer.add_term(e2, v.clone());
                }
            }
            q = q.add(&layer);
            r = r.sub(&layer.mul(&lin));
        }
    }
}

impl fmt::Display for NuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = |j: usize| {
            if self.d == 1 {
                "nu".to_string()
            } else {
                format!("nu{}", j + 1)
            }
        };
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let mut mono = String::new();
            for (j, &ej) in e.iter().enumerate() {
                if ej == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if ej == 1 {
                    mono.push_str(&var(j));
                } else {
                    mono.push_str(&format!("{}^{}", var(j), ej));
                }
            }
            if mono.is_empty() {
                if cs.contains(' ') {
                    write!(f, "({})", cs)?;
                } else {
                    write!(f, "{}", cs)?;
                }
            } else if cs == "1" {
                write!(f, "{}", mono)?;
            } else if cs.contains(' ') || cs.contains('-') {
                write!(f, "({})*{}", cs, mono)?;
            } else {
                write!(f, "{}*{}", cs, mono)?;
            }
        }
        Ok(())
    }
}

/// A rational coefficient function: a NuPoly numerator over a product of
/// factors (nu_bar + alpha + n), the key being n and the value its
/// multiplicity. Always kept reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftRational {
    num: NuPoly,
    den: BTreeMap<i64, u32>,
}

impl ShiftRational {
    pub fn zero(d: usize) -> Self {
        ShiftRational { num: NuPoly::zero(d), den: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: Scalar) -> Self {
        ShiftRational { num: NuPoly::constant(d, c), den: BTreeMap::new() }
    }

    pub fn one(d: usize) -> Self {
        Self::constant(d, Scalar::one())
    }

    pub fn from_num(num: NuPoly) -> Self {
        ShiftRational { num, den: BTreeMap::new() }
    }

    /// 1 / (nu_bar + alpha + n).
    pub fn resolvent(d: usize, n: i64) -> Self {
        let mut den = BTreeMap::new();
        den.insert(n, 1);
        ShiftRational { num: NuPoly::one(d), den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &NuPoly {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<i64, u32> {
        &self.den
    }

    fn reduce(&mut self, alpha: &BigRational) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<i64> = self.den.keys().cloned().collect();
        for n in keys {
            let c = alpha + BigRational::from_integer(n.into());
            while self.den.get(&n).copied().unwrap_or(0) > 0 {
                match self.num.exact_div_linear(&c) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&n).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&n);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn add(&self, o: &Self, alpha: &BigRational) -> Self {
        // Bring both to the union denominator.
        let mut den = self.den.clone();
        for (n, m) in &o.den {
            let cur = den.entry(*n).or_insert(0);
            *cur = (*cur).max(*m);
        }
        let scale_to = |f: &ShiftRational| -> NuPoly {
            let mut num = f.num.clone();
            for (n, m) in &den {
                let have = f.den.get(n).copied().unwrap_or(0);
                let c = alpha + BigRational::from_integer((*n).into());
                for _ in have..*m {
                    num = num.mul(&NuPoly::linear_nubar(num.d, &c));
                }
            }
            num
        };
        let num = scale_to(self).add(&scale_to(o));
        let mut out = ShiftRational { num, den };
        out.reduce(alpha);
        out
    }

    pub fn sub(&self, o: &Self, alpha: &BigRational) -> Self {
        self.add(&o.neg(), alpha)
    }

    pub fn neg(&self) -> Self {
        ShiftRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.num.d);
        }
        ShiftRational { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self, alpha: &BigRational) -> Self {
        let mut den = self.den.clone();
        for (n, m) in &o.den {
            *den.entry(*n).or_insert(0) += m;
        }
        let mut out = ShiftRational { num: self.num.mul(&o.num), den };
        out.reduce(alpha);
        out
    }

    /// Multiply by the linear factor (nu_bar + alpha + n), cancelling
    /// against the denominator when possible.
    pub fn mul_linear(&self, n: i64, alpha: &BigRational) -> Self {
        let mut out = self.clone();
        if let Some(m) = out.den.get_mut(&n) {
            *m -= 1;
            if *m == 0 {
                out.den.remove(&n);
            }
            return out;
        }
        let c = alpha + BigRational::from_integer(n.into());
        out.num = out.num.mul(&NuPoly::linear_nubar(out.num.d, &c));
        out
    }

    pub fn conj(&self) -> Self {
        ShiftRational { num: self.num.conj(), den: self.den.clone() }
    }

    /// Substitute nu -> nu + delta. The total shift moves each
    /// denominator offset by the same amount.
    pub fn shift(&self, delta: &[i64]) -> Self {
        let total: i64 = delta.iter().sum();
        ShiftRational {
            num: self.num.shift(delta),
            den: self.den.iter().map(|(n, m)| (n + total, *m)).collect(),
        }
    }

    /// Value at an occupation vector. Defined for every nonnegative
    /// integer point because alpha is not an integer.
    pub fn eval(&self, point: &[BigRational], alpha: &BigRational) -> Scalar {
        let nv = self.num.eval(point);
        let nubar: BigRational = point.iter().sum();
        let mut den = BigRational::one();
        for (n, m) in &self.den {
            let f = &nubar + alpha + BigRational::from_integer((*n).into());
            for _ in 0..*m {
                den *= &f;
            }
        }
        nv.scale(&den.recip())
    }
}

impl fmt::Display for ShiftRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        let mut first = true;
        for (n, m) in &self.den {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "(nubar + alpha + {})", n)?;
            } else {
                write!(f, "(nubar + alpha + {})^{}", n, m)?;
            }
        }
        write!(f, ")")
    }
}

/// The offset t(i, j) in the definition x_ij = a_i a_j y_t: the number of
/// creators in the pair when both indices are nonpositive (and not both
/// zero), and zero otherwise. With this offset x_ij stays bounded and the
/// identity a_i a_j = x_ij (N + alpha + t) holds in every case.
pub fn pair_offset(i: i32, j: i32) -> i64 {
    if i <= 0 && j <= 0 && !(i == 0 && j == 0) {
        (i < 0) as i64 + (j < 0) as i64
    } else {
        0
    }
}

/// The weight in y_0 a_i a_j = (1 + w y_0) x_ij: two for a pair of
/// annihilators, one for a single annihilator paired with the unit, zero
/// otherwise.
pub fn y0_weight(i: i32, j: i32) -> i64 {
    if i > 0 && j > 0 {
        2
    } else if (i == 0 && j > 0) || (i > 0 && j == 0) {
        1
    } else {
        0
    }
}

/// Split a word into its reduced part, with no mode carrying both
/// annihilators and creators, and the diagonal polynomial the balanced
/// letters amount to. With excess creators l' left in a mode,
/// a^(k'+m) ad^(l'+m) = a^k' ad^l' * prod_{s=1..m} (nu + s + l'),
/// the polynomial already moved to the right of the reduced word.
fn fold_diagonal(d: usize, m: &Monomial) -> (Monomial, NuPoly) {
    let mut ann = m.ann.clone();
    let mut cre = m.cre.clone();
    let mut poly = NuPoly::one(d);
    for j in 0..d {
        let mm = ann[j].min(cre[j]);
        if mm == 0 {
            continue;
        }
        ann[j] -= mm;
        cre[j] -= mm;
        for s in 1..=mm {
            let lin = NuPoly::var(d, j + 1)
                .add(&NuPoly::constant(d, Scalar::from_int((s + cre[j]) as i64)));
            poly = poly.mul(&lin);
        }
    }
    (Monomial { ann, cre }, poly)
}

/// An element of the localized algebra in normal form: a sum of reduced
/// words, each carrying a rational coefficient function on its right.
/// Reduced means no mode holds annihilators and creators at once; the
/// balanced part of any incoming word is folded into the coefficient
/// function, which makes the representation unique.
#[derive(Clone, PartialEq, Debug)]
pub struct LocalizedElement {
    d: usize,
    alpha: BigRational,
    terms: BTreeMap<Monomial, ShiftRational>,
}

impl LocalizedElement {
    pub fn zero(d: usize, alpha: &Alpha) -> Self {
        LocalizedElement { d, alpha: alpha.rat().clone(), terms: BTreeMap::new() }
    }

    pub fn one(d: usize, alpha: &Alpha) -> Self {
        let mut e = Self::zero(d, alpha);
        e.add_term(Monomial::unit(d), ShiftRational::one(d));
        e
    }

    pub fn scalar_elem(d: usize, alpha: &Alpha, c: Scalar) -> Self {
        let mut e = Self::zero(d, alpha);
        e.add_term(Monomial::unit(d), ShiftRational::constant(d, c));
        e
    }

    pub fn from_weyl(x: &WeylElement, alpha: &Alpha) -> Self {
        let mut e = Self::zero(x.modes(), alpha);
        for (m, c) in x.terms() {
            e.add_term(m.clone(), ShiftRational::constant(x.modes(), c.clone()));
        }
        e
    }

    /// y_n = (N + alpha + n)^{-1}.
    pub fn make_y(d: usize, alpha: &Alpha, n: i64) -> Self {
        let mut e = Self::zero(d, alpha);
        e.add_term(Monomial::unit(d), ShiftRational::resolvent(d, n));
        e
    }

    /// x_ij = a_i a_j y_{t(i,j)} for signed indices, index zero denoting
    /// the unit. These are the bounded generators.
    pub fn make_x(d: usize, alpha: &Alpha, i: i32, j: i32) -> Result<Self, LocalizedError> {
        for idx in [i, j] {
            if idx.unsigned_abs() as usize > d {
                return Err(LocalizedError::IndexOutOfRange(idx, d));
            }
        }
        let w = WeylElement::gen(d, i).mul(&WeylElement::gen(d, j));
        let t = pair_offset(i, j);
        Ok(Self::from_weyl(&w, alpha).l_mul(&Self::make_y(d, alpha, t)).unwrap())
    }

    /// y_k0 = nu_k y_0 as a diagonal function, realized as x_{-k,k};
    /// index zero gives y_0 itself.
    pub fn make_yk0(d: usize, alpha: &Alpha, k: u32) -> Result<Self, LocalizedError> {
        Self::make_x(d, alpha, -(k as i32), k as i32)
    }

    /// N + alpha + n as an element.
    pub fn shifted_number(d: usize, alpha: &Alpha, n: i64) -> Self {
        let en = WeylElement::number_operator(d);
        let c = alpha.rat() + BigRational::from_integer(n.into());
        let shifted = en.add(&WeylElement::scalar_elem(d, Scalar::from_rat(c)));
        Self::from_weyl(&shifted, alpha)
    }

    pub fn modes(&self) -> usize {
        self.d
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, ShiftRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, f: ShiftRational) {
        if f.is_zero() {
            return;
        }
        let (m, f) = if m.ann.iter().zip(&m.cre).any(|(&k, &l)| k > 0 && l > 0) {
            let (reduced, diag) = fold_diagonal(self.d, &m);
            (
                reduced,
                ShiftRational { num: f.num.mul(&diag), den: f.den.clone() },
            )
        } else {
            (m, f)
        };
        use std::collections::btree_map::Entry;
        let alpha = self.alpha.clone();
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&f, &alpha);
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    fn check_compat(&self, o: &Self) -> Result<(), LocalizedError> {
        if self.d != o.d || self.alpha != o.alpha {
            return Err(LocalizedError::ParameterMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_compat(o).expect("parameter mismatch");
        let mut out = self.clone();
        for (m, f) in &o.terms {
            out.add_term(m.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        LocalizedElement {
            d: self.d,
            alpha: self.alpha.clone(),
            terms: self.terms.iter().map(|(m, f)| (m.clone(), f.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LocalizedElement {
                d: self.d,
                alpha: self.alpha.clone(),
                terms: BTreeMap::new(),
            };
        }
        LocalizedElement {
            d: self.d,
            alpha: self.alpha.clone(),
            terms: self.terms.iter().map(|(m, f)| (m.clone(), f.scale(c))).collect(),
        }
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        self.scale(&Scalar::from_rat(r.clone()))
    }

    /// Product in the localized algebra. The left coefficient function is
    /// shifted across the right word, then the words multiply by the
    /// Weyl convolution while the combined coefficient function stays on
    /// the right.
    pub fn l_mul(&self, o: &Self) -> Result<Self, LocalizedError> {
        self.check_compat(o)?;
        let mut out = Self::zero(self.d, &Alpha(self.alpha.clone()));
        for (w1, f1) in &self.terms {
            for (w2, f2) in &o.terms {
                let delta: Vec<i64> = w2
                    .cre
                    .iter()
                    .zip(&w2.ann)
                    .map(|(&l, &k)| l as i64 - k as i64)
                    .collect();
                let h = f1.shift(&delta).mul(f2, &self.alpha);
                if h.is_zero() {
                    continue;
                }
                for (m, c) in monomial_product(self.d, w1, w2) {
                    out.add_term(m, h.scale(&Scalar::from_rat(BigRational::from_integer(c))));
                }
            }
        }
        Ok(out)
    }

    /// The involution. On a term w f it gives w* shifted-conjugate f,
    /// with the function moved back to the right of the reversed word.
    pub fn l_adjoint(&self) -> Self {
        let mut out = LocalizedElement {
            d: self.d,
            alpha: self.alpha.clone(),
            terms: BTreeMap::new(),
        };
        for (m, f) in &self.terms {
            let delta: Vec<i64> = m
                .ann
                .iter()
                .zip(&m.cre)
                .map(|(&k, &l)| k as i64 - l as i64)
                .collect();
            let swapped = Monomial { ann: m.cre.clone(), cre: m.ann.clone() };
            out.add_term(swapped, f.conj().shift(&delta));
        }
        out
    }

    pub fn is_hermitean(&self) -> bool {
        *self == self.l_adjoint()
    }

    /// Back to the plain Weyl algebra, if no denominators remain. Each
    /// occupation variable turns back into the number operator of its
    /// mode, multiplied on the right of the reduced word.
    pub fn to_weyl(&self) -> Option<WeylElement> {
        let mut out = WeylElement::zero(self.d);
        for (m, f) in &self.terms {
            if !f.den().is_empty() {
                return None;
            }
            let mut word = WeylElement::zero(self.d);
            word.add_term(m.clone(), Scalar::one());
            for (e, c) in f.num().terms() {
                let mut rhs = WeylElement::scalar_elem(self.d, c.clone());
                for (j, &ej) in e.iter().enumerate() {
                    for _ in 0..ej {
                        rhs = rhs.mul(&WeylElement::mode_number_operator(self.d, j + 1));
                    }
                }
                out = out.add(&word.mul(&rhs));
            }
        }
        Some(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.d, &Alpha(self.alpha.clone()));
        for _ in 0..e {
            acc = acc.l_mul(self).unwrap();
        }
        acc
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, fr) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut word = String::new();
            for (j, &e) in m.ann.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !word.is_empty() {
                    word.push('*');
                }
                word.push_str(&format!("a({})", j + 1));
                if e > 1 {
                    word.push_str(&format!("^{}", e));
                }
            }
            for (j, &e) in m.cre.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !word.is_empty() {
                    word.push('*');
                }
                word.push_str(&format!("ad({})", j + 1));
                if e > 1 {
                    word.push_str(&format!("^{}", e));
                }
            }
            if word.is_empty() {
                write!(f, "[{}]", fr)?;
            } else {
                write!(f, "{}*[{}]", word, fr)?;
            }
        }
        Ok(())
    }
}

/// Outcome of compressing an element between resolvent powers.
pub struct Sandwich {
    pub element: LocalizedElement,
    /// Set when the degree of the input exceeds four times the resolvent
    /// power, in which case the result is not expected to stay bounded.
    pub degree_exceeded: bool,
}

/// y_0^n c y_0^n for a Weyl element c.
pub fn y0_sandwich(c: &WeylElement, n: u32, alpha: &Alpha) -> Sandwich {
    let d = c.modes();
    let y0n = LocalizedElement::make_y(d, alpha, 0).pow(n);
    let mid = LocalizedElement::from_weyl(c, alpha);
    let element = y0n.l_mul(&mid).unwrap().l_mul(&y0n).unwrap();
    let degree_exceeded = c.degree().map_or(false, |g| g > 4 * n);
    Sandwich { element, degree_exceeded }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha_half() -> Alpha {
        Alpha::new(BigRational::new(1.into(), 2.into())).unwrap()
    }

    fn lmul(a: &LocalizedElement, b: &LocalizedElement) -> LocalizedElement {
        a.l_mul(b).unwrap()
    }

    #[test]
    fn alpha_rejects_integers_and_negatives() {
        assert!(Alpha::new(BigRational::from_integer(2.into())).is_err());
        assert!(Alpha::new(BigRational::from_integer(0.into())).is_err());
        assert!(Alpha::new(BigRational::new((-1).into(), 2.into())).is_err());
        assert!(Alpha::new(BigRational::new(13.into(), 10.into())).is_ok());
    }

    #[test]
    fn exact_division_by_linear_factor() {
        let d = 2;
        let c = BigRational::new(3.into(), 2.into());
        let lin = NuPoly::linear_nubar(d, &c);
        let p = NuPoly::var(d, 1).mul(&NuPoly::var(d, 1)).add(&NuPoly::constant(d, Scalar::from_int(3)));
        let prod = p.mul(&lin);
        assert_eq!(prod.exact_div_linear(&c), Some(p.clone()));
        assert_eq!(p.exact_div_linear(&c), None);
    }

    #[test]
    fn resolvent_inverts_shifted_number() {
        let d = 2;
        let al = alpha_half();
        for n in [-2i64, 0, 3] {
            let yn = LocalizedElement::make_y(d, &al, n);
            let ln = LocalizedElement::shifted_number(d, &al, n);
            assert_eq!(lmul(&yn, &ln), LocalizedElement::one(d, &al));
            assert_eq!(lmul(&ln, &yn), LocalizedElement::one(d, &al));
        }
    }

    #[test]
    fn resolvents_commute_with_each_other() {
        let d = 1;
        let al = alpha_half();
        let y0 = LocalizedElement::make_y(d, &al, 0);
        let y3 = LocalizedElement::make_y(d, &al, 3);
        assert_eq!(lmul(&y0, &y3), lmul(&y3, &y0));
    }

    #[test]
    fn coefficient_functions_shift_across_ladder_operators() {
        // y_n a = a y_{n-1} and ad y_n = y_{n-1} ad
        let d = 2;
        let al = alpha_half();
        for n in [-1i64, 0, 2] {
            let yn = LocalizedElement::make_y(d, &al, n);
            let ym = LocalizedElement::make_y(d, &al, n - 1);
            for k in 1..=d {
                let a = LocalizedElement::from_weyl(&WeylElement::gen(d, k as i32), &al);
                let ad = LocalizedElement::from_weyl(&WeylElement::gen(d, -(k as i32)), &al);
                assert_eq!(lmul(&yn, &a), lmul(&a, &ym));
                assert_eq!(lmul(&ad, &yn), lmul(&ym, &ad));
            }
        }
    }

    #[test]
    fn embedding_respects_products_and_adjoints() {
        let d = 2;
        let al = alpha_half();
        let x = WeylElement::gen(d, 1)
            .mul(&WeylElement::gen(d, -2))
            .add(&WeylElement::gen(d, 2).scale(&Scalar::i()));
        let y = WeylElement::gen(d, -1).mul(&WeylElement::gen(d, 1));
        let ex = LocalizedElement::from_weyl(&x, &al);
        let ey = LocalizedElement::from_weyl(&y, &al);
        assert_eq!(lmul(&ex, &ey), LocalizedElement::from_weyl(&x.mul(&y), &al));
        assert_eq!(ex.l_adjoint(), LocalizedElement::from_weyl(&x.adjoint(), &al));
    }

    #[test]
    fn adjoint_is_antimultiplicative_with_denominators() {
        let d = 1;
        let al = alpha_half();
        let a = lmul(
            &LocalizedElement::from_weyl(&WeylElement::gen(d, 1), &al),
            &LocalizedElement::make_y(d, &al, 1),
        );
        let b = LocalizedElement::make_x(d, &al, -1, 1).unwrap();
        let lhs = lmul(&a, &b).l_adjoint();
        let rhs = lmul(&b.l_adjoint(), &a.l_adjoint());
        assert_eq!(lhs, rhs);
        assert_eq!(a.l_adjoint().l_adjoint(), a);
    }

    #[test]
    fn mixed_pair_is_mode_occupation_over_resolvent() {
        // x_{-1,1} = nu_1 y_0 as a diagonal function
        let d = 2;
        let al = alpha_half();
        let y10 = LocalizedElement::make_yk0(d, &al, 1).unwrap();
        assert_eq!(y10.terms().len(), 1);
        let (m, f) = y10.terms().iter().next().unwrap();
        assert!(m.is_unit());
        assert_eq!(f.num(), &NuPoly::var(d, 1));
        assert_eq!(f.den().iter().collect::<Vec<_>>(), vec![(&0i64, &1u32)]);
        // and numerically: nu_1 / (nubar + alpha)
        let pt = vec![
            BigRational::from_integer(2.into()),
            BigRational::from_integer(5.into()),
        ];
        let expect = BigRational::from_integer(2.into())
            / (BigRational::from_integer(7.into()) + al.rat());
        assert_eq!(f.eval(&pt, al.rat()), Scalar::from_rat(expect));
    }

    #[test]
    fn embedding_roundtrips_through_folding() {
        let d = 2;
        let al = alpha_half();
        let x = WeylElement::gen(d, 1)
            .mul(&WeylElement::gen(d, -1))
            .mul(&WeylElement::gen(d, -1))
            .add(&WeylElement::number_operator(d).pow(2).scale(&Scalar::i()));
        let round = LocalizedElement::from_weyl(&x, &al).to_weyl().unwrap();
        assert_eq!(round, x);
        assert!(LocalizedElement::make_y(d, &al, 0).to_weyl().is_none());
    }

    #[test]
    fn sandwich_flags_large_degrees() {
        let al = alpha_half();
        let c = WeylElement::number_operator(1).pow(3); // degree 6
        assert!(y0_sandwich(&c, 1, &al).degree_exceeded);
        assert!(!y0_sandwich(&c, 2, &al).degree_exceeded);
    }

    #[test]
    fn pair_offsets_match_the_catalogue() {
        assert_eq!(pair_offset(1, 2), 0);
        assert_eq!(pair_offset(1, -2), 0);
        assert_eq!(pair_offset(-1, 0), 1);
        assert_eq!(pair_offset(0, -3), 1);
        assert_eq!(pair_offset(-1, -1), 2);
        assert_eq!(pair_offset(0, 0), 0);
        assert_eq!(y0_weight(1, 1), 2);
        assert_eq!(y0_weight(1, 0), 1);
        assert_eq!(y0_weight(0, 1), 1);
        assert_eq!(y0_weight(1, -1), 0);
        assert_eq!(y0_weight(0, 0), 0);
        assert_eq!(y0_weight(-2, -1), 0);
    }
}
