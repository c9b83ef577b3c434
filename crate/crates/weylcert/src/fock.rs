//! The occupation-number representation at finite truncation.
//!
//! Exact vectors carry amplitudes with respect to the scaled basis
//! vectors sqrt(n!) e_n: in that gauge the ladder matrix coefficients are
//! the integers n_k and 1 instead of square roots, so applying elements
//! and taking inner products stays inside the scalar field. The price is
//! a factorial weight n! on each amplitude pair in the inner product.
//! Orthonormal-basis matrix entries are only ever needed in the floating
//! point pathway, where the square roots are harmless.

use crate::localized::{Alpha, LocalizedElement};
use crate::scalar::Scalar;
use crate::weyl::WeylElement;
use nalgebra::{Complex, DMatrix};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;

/// Verdict tolerance of the floating point eigenvalue pathway.
pub const EIG_TOL: f64 = 1e-9;

/// A finitely supported vector, amplitudes taken against sqrt(n!) e_n.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct FockVector {
    d: usize,
    amps: BTreeMap<Vec<u32>, Scalar>,
}

impl FockVector {
    pub fn zero(d: usize) -> Self {
        FockVector { d, amps: BTreeMap::new() }
    }

    /// The scaled basis vector sqrt(n!) e_n. For n = 0 this is the unit
    /// vacuum vector.
    pub fn basis(d: usize, n: &[u32]) -> Self {
        assert_eq!(n.len(), d);
        let mut amps = BTreeMap::new();
        amps.insert(n.to_vec(), Scalar::one());
        FockVector { d, amps }
    }

    pub fn modes(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.amps
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn add_amp(&mut self, n: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.amps.entry(n);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.d, o.d);
        let mut out = self.clone();
        for (n, c) in &o.amps {
            out.add_amp(n.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        FockVector {
            d: self.d,
            amps: self
                .amps
                .iter()
                .map(|(n, a)| (n.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    /// Largest occupation total in the support.
    pub fn top_level(&self) -> Option<u32> {
        self.amps.keys().map(|n| n.iter().sum()).max()
    }
}

fn factorial(n: u32) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n as u64 {
        f *= BigInt::from(k);
    }
    f
}

fn multi_factorial(n: &[u32]) -> BigRational {
    let mut f = BigInt::one();
    for &k in n {
        f *= factorial(k);
    }
    BigRational::from_integer(f)
}

/// Inner product of scaled-gauge vectors: sum over n of
/// conj(u_n) v_n n!, which is the true inner product of the vectors
/// they represent.
pub fn inner(u: &FockVector, v: &FockVector) -> Scalar {
    assert_eq!(u.d, v.d);
    let mut acc = Scalar::zero();
    for (n, a) in &u.amps {
        if let Some(b) = v.amps.get(n) {
            acc = acc + a.conj() * b.clone() * Scalar::from_rat(multi_factorial(n));
        }
    }
    acc
}

/// Apply a normal-ordered Weyl element: per mode, the creator block
/// raises the occupation with coefficient 1 and the annihilator block
/// then lowers it with a falling-factorial coefficient, which vanishes
/// by itself when the occupation runs out.
pub fn apply_weyl(x: &WeylElement, v: &FockVector) -> FockVector {
    assert_eq!(x.modes(), v.d);
    let mut out = FockVector::zero(v.d);
    for (m, c) in x.terms() {
        for (n, a) in &v.amps {
            let mut coeff = BigInt::one();
            let mut target = n.clone();
            let mut dead = false;
            for j in 0..v.d {
                let raised = n[j] + m.cre[j];
                let k = m.ann[j];
                if k > raised {
                    dead = true;
                    break;
                }
                for s in 0..k {
                    coeff *= BigInt::from((raised - s) as u64);
                }
                target[j] = raised - k;
            }
            if dead || coeff.is_zero() {
                continue;
            }
            out.add_amp(
                target,
                c.clone() * a.clone() * Scalar::from_rat(BigRational::from_integer(coeff)),
            );
        }
    }
    out
}

/// Apply a localized element. The coefficient function sits to the right
/// of its word, so it acts first, diagonally, by exact evaluation at the
/// occupation vector.
pub fn apply_localized(x: &LocalizedElement, v: &FockVector) -> FockVector {
    assert_eq!(x.modes(), v.d);
    let alpha = x.alpha();
    let mut out = FockVector::zero(v.d);
    for (m, f) in x.terms() {
        let word = WeylElement::from_terms(v.d, [(m.clone(), Scalar::one())]);
        for (n, a) in &v.amps {
            let point: Vec<BigRational> =
                n.iter().map(|&k| BigRational::from_integer(k.into())).collect();
            let fv = f.eval(&point, alpha);
            if fv.is_zero() {
                continue;
            }
            let mut single = FockVector::zero(v.d);
            single.add_amp(n.clone(), a.clone() * fv);
            out = out.add(&apply_weyl(&word, &single));
        }
    }
    out
}

/// Multi-indices with |n| <= level, graded lexicographic.
pub fn level_basis(d: usize, level: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=level {
        let mut stack = vec![(Vec::new(), total)];
        while let Some((cur, left)) = stack.pop() {
            if cur.len() == d - 1 {
                let mut n = cur.clone();
                n.push(left);
                out.push(n);
                continue;
            }
            // descending push so lexicographic order pops first
            for e in (0..=left).rev() {
                let mut next = cur.clone();
                next.push(e);
                stack.push((next, left - e));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CompressedMatrix {
    pub level: u32,
    pub basis: Vec<Vec<u32>>,
    pub entries: DMatrix<Complex<f64>>,
}

/// Orthonormal-basis matrix of a localized element on the span of
/// {e_n : |n| <= level}. Entries are exact amplitudes rescaled by the
/// square root factorial ratio, evaluated in floating point at the end.
pub fn compressed_matrix(x: &LocalizedElement, level: u32) -> CompressedMatrix {
    let d = x.modes();
    let basis = level_basis(d, level);
    let index: BTreeMap<&[u32], usize> =
        basis.iter().enumerate().map(|(i, n)| (n.as_slice(), i)).collect();
    let dim = basis.len();
    let mut m = DMatrix::from_element(dim, dim, Complex::new(0.0, 0.0));
    for (j, n) in basis.iter().enumerate() {
        let image = apply_localized(x, &FockVector::basis(d, n));
        let nf = multi_factorial(n);
        for (t, amp) in image.amplitudes() {
            if let Some(&i) = index.get(t.as_slice()) {
                let ratio = multi_factorial(t) / nf.clone();
                let scale = rational_to_f64(&ratio).sqrt();
                let (re, im) = amp.to_complex_f64();
                m[(i, j)] += Complex::new(re * scale, im * scale);
            }
        }
    }
    CompressedMatrix { level, basis, entries: m }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // split to keep magnitudes inside f64 range for moderate factorials
    let nf = bigint_to_f64(n);
    let df = bigint_to_f64(d);
    nf / df
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    use num::ToPrimitive;
    n.to_f64().unwrap_or(f64::INFINITY)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Margin {
    Exact(BigRational),
    Approx(f64),
}

impl Margin {
    pub fn to_f64(&self) -> f64 {
        match self {
            Margin::Exact(r) => rational_to_f64(r),
            Margin::Approx(x) => *x,
        }
    }
}

#[derive(Clone, Debug)]
pub enum FockWitness {
    /// A single basis vector e_n.
    Basis(Vec<u32>),
    /// A dense eigenvector over the interior basis.
    Dense(Vec<(Vec<u32>, Complex<f64>)>),
}

#[derive(Clone, Debug)]
pub enum MinEigVerdict {
    Falsified { witness: FockWitness, value: Margin },
    ConsistentUpTo { level: u32, min: Margin },
}

#[derive(Debug, thiserror::Error)]
pub enum FockError {
    #[error("element is not hermitean")]
    NotHermitean,
    #[error("level {0} leaves no room under guard band {1}")]
    LevelTooSmall(u32, u32),
}

/// Smallest eigenvalue of the quadratic form of c - eps restricted to
/// occupation totals |n| <= level - degree(c). The guard band makes the
/// restricted form exactly the form of c on that subspace, so a negative
/// verdict is a genuine witness against positivity, while a nonnegative
/// one is only consistency up to the level. Diagonal elements take an
/// exact path; the rest go through the dense hermitean solver with the
/// EIG_TOL cushion.
pub fn min_eig_interior(
    c: &WeylElement,
    eps: &BigRational,
    level: u32,
) -> Result<MinEigVerdict, FockError> {
    if !c.is_hermitean() {
        return Err(FockError::NotHermitean);
    }
    let d = c.modes();
    let guard = c.degree().unwrap_or(0);
    if level < guard {
        return Err(FockError::LevelTooSmall(level, guard));
    }
    let interior = level - guard;
    let basis = level_basis(d, interior);

    let diagonal = c
        .terms()
        .keys()
        .all(|m| m.ann == m.cre);
    if diagonal {
        let mut best: Option<(Vec<u32>, BigRational)> = None;
        for n in &basis {
            let image = apply_weyl(c, &FockVector::basis(d, n));
            let amp = image.amplitudes().get(n).cloned().unwrap_or_else(Scalar::zero);
            let val = amp
                .as_rational()
                .expect("diagonal hermitean element has rational eigenvalues")
                .clone()
                - eps.clone();
            if best.as_ref().map_or(true, |(_, b)| val < *b) {
                best = Some((n.clone(), val));
            }
        }
        let (witness, min) = best.expect("basis is nonempty");
        if min.is_negative() {
            return Ok(MinEigVerdict::Falsified {
                witness: FockWitness::Basis(witness),
                value: Margin::Exact(min),
            });
        }
        return Ok(MinEigVerdict::ConsistentUpTo { level, min: Margin::Exact(min) });
    }

    let compressed = compressed_interior(c, &basis);
    let eig = compressed.clone().symmetric_eigen();
    let mut min_idx = 0;
    for i in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[i] < eig.eigenvalues[min_idx] {
            min_idx = i;
        }
    }
    let margin = eig.eigenvalues[min_idx] - rational_to_f64(eps);
    if margin < -EIG_TOL {
        let col = eig.eigenvectors.column(min_idx);
        let witness = basis
            .iter()
            .cloned()
            .zip(col.iter().cloned())
            .filter(|(_, a)| a.norm() > 1e-12)
            .collect();
        Ok(MinEigVerdict::Falsified {
            witness: FockWitness::Dense(witness),
            value: Margin::Approx(margin),
        })
    } else {
        Ok(MinEigVerdict::ConsistentUpTo { level, min: Margin::Approx(margin) })
    }
}

fn compressed_interior(x: &WeylElement, basis: &[Vec<u32>]) -> DMatrix<Complex<f64>> {
    let d = x.modes();
    let index: BTreeMap<&[u32], usize> =
        basis.iter().enumerate().map(|(i, n)| (n.as_slice(), i)).collect();
    let dim = basis.len();
    let mut m = DMatrix::from_element(dim, dim, Complex::new(0.0, 0.0));
    for (j, n) in basis.iter().enumerate() {
        let image = apply_weyl(x, &FockVector::basis(d, n));
        let nf = multi_factorial(n);
        for (t, amp) in image.amplitudes() {
            if let Some(&i) = index.get(t.as_slice()) {
                let ratio = multi_factorial(t) / nf.clone();
                let scale = rational_to_f64(&ratio).sqrt();
                let (re, im) = amp.to_complex_f64();
                m[(i, j)] += Complex::new(re * scale, im * scale);
            }
        }
    }
    // symmetrize away float asymmetry before the hermitean solver
    let mh = m.adjoint();
    (m + mh) * Complex::new(0.5, 0.0)
}

/// Fock-side vacuum Gram entry: the inner product of (x^k)* e_0 and
/// (x^n)* e_0 with x_j the contracted annihilator a_j y_0, computed by
/// exact application.
pub fn vacuum_pair_gram(k: &[u32], n: &[u32], alpha: &Alpha) -> BigRational {
    assert_eq!(k.len(), n.len());
    let left = creator_word_on_vacuum(k, alpha);
    let right = creator_word_on_vacuum(n, alpha);
    let val = inner(&left, &right);
    val.as_rational()
        .expect("gram entries of these vectors are rational")
        .clone()
}

fn creator_word_on_vacuum(n: &[u32], alpha: &Alpha) -> FockVector {
    let d = n.len();
    let mut v = FockVector::basis(d, &vec![0; d]);
    // (x^n)* = x_d^{* n_d} ... x_1^{* n_1} applied right to left
    for j in (0..d).rev() {
        let xj = LocalizedElement::make_x(d, alpha, (j + 1) as i32, 0)
            .unwrap()
            .l_adjoint();
        for _ in 0..n[j] {
            v = apply_localized(&xj, &v);
        }
    }
    v
}

/// The closed form the Gram entry must match:
/// n_1! ... n_d! / ((1+alpha)...(|n|+alpha))^2 when k = n, else 0.
pub fn vacuum_pair_gram_formula(k: &[u32], n: &[u32], alpha: &Alpha) -> BigRational {
    if k != n {
        return BigRational::zero();
    }
    let total: u32 = n.iter().sum();
    let mut den = BigRational::one();
    for s in 1..=total as i64 {
        den *= BigRational::from_integer(s.into()) + alpha.rat();
    }
    multi_factorial(n) / (den.clone() * den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(n: i64, den: i64) -> Alpha {
        Alpha::new(BigRational::new(n.into(), den.into())).unwrap()
    }

    #[test]
    fn annihilator_kills_the_vacuum() {
        let v = FockVector::basis(1, &[0]);
        let out = apply_weyl(&WeylElement::gen(1, 1), &v);
        assert!(out.is_zero());
    }

    #[test]
    fn number_operator_is_diagonal_with_total_occupation() {
        let nop = WeylElement::number_operator(2);
        let v = FockVector::basis(2, &[2, 3]);
        let out = apply_weyl(&nop, &v);
        assert_eq!(out, v.scale(&Scalar::from_int(5)));
    }

    #[test]
    fn resolvent_evaluates_diagonally() {
        let a = al(1, 2);
        let y0 = LocalizedElement::make_y(1, &a, 0);
        let v = FockVector::basis(1, &[3]);
        let out = apply_localized(&y0, &v);
        // (3 + 1/2)^-1 = 2/7
        assert_eq!(out, v.scale(&Scalar::from_rat(BigRational::new(2.into(), 7.into()))));
    }

    #[test]
    fn inner_product_carries_the_factorial_weight() {
        let u = FockVector::basis(1, &[4]);
        assert_eq!(
            inner(&u, &u),
            Scalar::from_rat(BigRational::from_integer(24.into()))
        );
    }

    #[test]
    fn adjoint_moves_across_the_inner_product() {
        let a = al(5, 2);
        let x = LocalizedElement::make_x(2, &a, 1, -2).unwrap();
        let mut u = FockVector::basis(2, &[1, 2]);
        u.add_amp(vec![0, 1], Scalar::i());
        let mut v = FockVector::basis(2, &[2, 1]);
        v.add_amp(vec![1, 1], Scalar::sqrt2());
        let lhs = inner(&apply_localized(&x, &u), &v);
        let rhs = inner(&u, &apply_localized(&x.l_adjoint(), &v));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn application_is_multiplicative() {
        let a = al(1, 2);
        let x = LocalizedElement::make_x(1, &a, 1, 1).unwrap();
        let y = LocalizedElement::make_x(1, &a, -1, 1).unwrap();
        let v = FockVector::basis(1, &[2]);
        let xy = x.l_mul(&y).unwrap();
        assert_eq!(
            apply_localized(&xy, &v),
            apply_localized(&x, &apply_localized(&y, &v))
        );
    }

    #[test]
    fn gram_matches_the_closed_form() {
        let a = al(1, 2);
        let got = vacuum_pair_gram(&[1], &[1], &a);
        assert_eq!(got, BigRational::new(4.into(), 9.into()));
        assert_eq!(got, vacuum_pair_gram_formula(&[1], &[1], &a));
        assert_eq!(vacuum_pair_gram(&[1], &[2], &a), BigRational::zero());
        let two = vacuum_pair_gram(&[1, 1], &[1, 1], &a);
        assert_eq!(two, BigRational::new(16.into(), 225.into()));
        assert_eq!(two, vacuum_pair_gram_formula(&[1, 1], &[1, 1], &a));
    }

    #[test]
    fn diagonal_falsification_is_exact() {
        // (N - 1)(N - 3) is negative exactly at occupation 2
        let n = WeylElement::number_operator(1);
        let c = n
            .sub(&WeylElement::scalar_elem(1, Scalar::one()))
            .mul(&n.sub(&WeylElement::scalar_elem(1, Scalar::from_int(3))));
        let verdict = min_eig_interior(&c, &BigRational::zero(), 8).unwrap();
        match verdict {
            MinEigVerdict::Falsified { witness: FockWitness::Basis(w), value } => {
                assert_eq!(w, vec![2]);
                assert_eq!(value, Margin::Exact(BigRational::from_integer((-1).into())));
            }
            other => panic!("expected exact falsification, got {:?}", other),
        }
    }

    #[test]
    fn square_is_consistent() {
        let q = WeylElement::gen(1, 1).add(&WeylElement::gen(1, -1));
        let c = q.adjoint().mul(&q);
        let verdict = min_eig_interior(&c, &BigRational::zero(), 10).unwrap();
        match verdict {
            MinEigVerdict::ConsistentUpTo { min, .. } => {
                assert!(min.to_f64() > -EIG_TOL);
            }
            other => panic!("square must be consistent, got {:?}", other),
        }
    }

    #[test]
    fn level_basis_is_graded() {
        let b = level_basis(2, 2);
        assert_eq!(b.len(), 6);
        assert_eq!(b[0], vec![0, 0]);
        let totals: Vec<u32> = b.iter().map(|n| n.iter().sum()).collect();
        let mut sorted = totals.clone();
        sorted.sort();
        assert_eq!(totals, sorted);
    }
}
