//! Catalogue of identities among the bounded generators, checked by exact
//! computation in the localized algebra.
//!
//! Every entry is verified, never assumed: both sides are expanded to the
//! canonical normal form and compared. Membership statements (an element
//! lying in y_0 X) are certified constructively through
//! [`crate::xgen::certify_y0_multiple`], and the certificate is part of
//! the outcome.

use crate::localized::{y0_weight, Alpha, LocalizedElement, LocalizedError};
use crate::xgen::{certify_y0_multiple, GenPoly};
use num::BigRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Relation {
    /// y_k - y_n = (n - k) y_k y_n
    ResolventDifference { k: i64, n: i64 },
    /// y_10 + ... + y_d0 = 1 - alpha y_0
    ModeSum,
    /// x(k,j)* x(k,j) = y_k0 (y_j0 - [k=j] y_0), with y_00 meaning y_0
    PairNormMixed { k: u32, j: u32 },
    /// x(k,-l)* x(k,-l) = (y_k0 + [k=l] y_0)(y_l0 + y_0)
    PairNormCreator { k: u32, l: u32 },
    /// y_0 x(k,l) = (1 + (sgn k + sgn l) y_0) x(k,l) y_0
    ResolventExchange { k: i32, l: i32 },
    /// y_n x(k,0)* = x(k,0)* y_{n+1}
    ResolventLadderLeft { k: u32, n: i64 },
    /// x(k,0) y_n = y_{n+1} x(k,0)
    ResolventLadderRight { k: u32, n: i64 },
    /// x(l,0) x(k,0)* = x(k,0)* (1 - y_2)^2 x(l,0) + [k=l] y_1^2
    LadderExchange { l: u32, k: u32 },
    /// x(k,0) x(k,0)* = y_k0 y_1 (1 - y_1) + y_1^2
    LadderNorm { k: u32 },
    /// y_k0 x(k,0)* = x(k,0)* (y_k0 (1 - y_1) + y_1)
    LadderNormShifted { k: u32 },
    /// x(k,l) y_0 = x(k,0) x(l,0) (1 - y_0), k,l >= 1
    PairSplitAnnihilators { k: u32, l: u32 },
    /// x(-k,-l) y_0 = x(k,0)* x(l,0)* (1 + y_0)
    PairSplitCreators { k: u32, l: u32 },
    /// x(k,-l) y_0 = x(-l,k) y_0 + [k=l] y_0^2 = x(l,0)* x(k,0) + [k=l] y_0^2
    MixedPairTranspose { k: u32, l: u32 },
    /// x(i,j) x(k,l) - x(k,l) x(i,j) in y_0 X
    CommutatorInIdeal { i: i32, j: i32, k: i32, l: i32 },
    /// x(i,j) x(k,l) - x(i,l) x(k,j) in y_0 X
    ExchangeInIdeal { i: i32, j: i32, k: i32, l: i32 },
    /// y_0 a_k a_l = (1 + t(k,l) y_0) x(k,l) with the catalogue weight t
    WordAbsorption { k: i32, l: i32 },
    /// x(k,l)* = x(-l,-k), and x(k,l) = x(l,k) when k + l != 0
    AdjointTranspose { k: i32, l: i32 },
    /// x(j,-j) - x(-j,j) = y_0
    DiagonalGap { j: u32 },
    /// alpha y_0^2 + sum_k x(k,0)* x(k,0) = y_0
    ResolventQuadratic,
    /// x(k,0) prod_j x(j,0)^{n_j *} = (prod x*)((1-y_2)...(1-y_{|n|+1}))^2 x(k,0), n_k = 0
    CreatorPowerExchange { n: Vec<u32>, k: u32 },
    /// x_k x_k* x_k^{*r} = x_k^{*r} (y_k0 (1-(r+1)y_{r+1}) + (r+1)y_{r+1}) y_{r+1}
    LadderNormPower { k: u32, r: u32 },
    /// (1 + y_0) x(k,0) y_0 = y_0 x(k,0)
    VacuumLadderIdentity { k: u32 },
    /// sum_k x(k,-k) = 1 + (d - alpha) y_0
    DiagonalPairSum,
    /// sum_k x(k,-j)* x(k,-j) - x(j,-j) in y_0 X
    ColumnNormGap { j: u32 },
}

impl Relation {
    /// Stable kebab-case name of the family, for command line selection.
    pub fn family_name(&self) -> &'static str {
        match self {
            Relation::ResolventDifference { .. } => "resolvent-difference",
            Relation::ModeSum => "mode-sum",
            Relation::PairNormMixed { .. } => "pair-norm-mixed",
            Relation::PairNormCreator { .. } => "pair-norm-creator",
            Relation::ResolventExchange { .. } => "resolvent-exchange",
            Relation::ResolventLadderLeft { .. } => "resolvent-ladder-left",
            Relation::ResolventLadderRight { .. } => "resolvent-ladder-right",
            Relation::LadderExchange { .. } => "ladder-exchange",
            Relation::LadderNorm { .. } => "ladder-norm",
            Relation::LadderNormShifted { .. } => "ladder-norm-shifted",
            Relation::PairSplitAnnihilators { .. } => "pair-split-annihilators",
            Relation::PairSplitCreators { .. } => "pair-split-creators",
            Relation::MixedPairTranspose { .. } => "mixed-pair-transpose",
            Relation::CommutatorInIdeal { .. } => "commutator-in-ideal",
            Relation::ExchangeInIdeal { .. } => "exchange-in-ideal",
            Relation::WordAbsorption { .. } => "word-absorption",
            Relation::AdjointTranspose { .. } => "adjoint-transpose",
            Relation::DiagonalGap { .. } => "diagonal-gap",
            Relation::ResolventQuadratic => "resolvent-quadratic",
            Relation::CreatorPowerExchange { .. } => "creator-power-exchange",
            Relation::LadderNormPower { .. } => "ladder-norm-power",
            Relation::VacuumLadderIdentity { .. } => "vacuum-ladder-identity",
            Relation::DiagonalPairSum => "diagonal-pair-sum",
            Relation::ColumnNormGap { .. } => "column-norm-gap",
        }
    }

    /// Name with the concrete parameters spelled out.
    pub fn instance_name(&self) -> String {
        match self {
            Relation::ResolventDifference { k, n } => {
                format!("{}[k={},n={}]", self.family_name(), k, n)
            }
            Relation::ModeSum | Relation::ResolventQuadratic | Relation::DiagonalPairSum => {
                self.family_name().to_string()
            }
            Relation::PairNormMixed { k, j } => format!("{}[k={},j={}]", self.family_name(), k, j),
            Relation::PairNormCreator { k, l }
            | Relation::PairSplitAnnihilators { k, l }
            | Relation::PairSplitCreators { k, l }
            | Relation::MixedPairTranspose { k, l } => {
                format!("{}[k={},l={}]", self.family_name(), k, l)
            }
            Relation::ResolventExchange { k, l }
            | Relation::WordAbsorption { k, l }
            | Relation::AdjointTranspose { k, l } => {
                format!("{}[k={},l={}]", self.family_name(), k, l)
            }
            Relation::ResolventLadderLeft { k, n }
            | Relation::ResolventLadderRight { k, n } => {
                format!("{}[k={},n={}]", self.family_name(), k, n)
            }
            Relation::LadderExchange { l, k } => format!("{}[l={},k={}]", self.family_name(), l, k),
            Relation::LadderNorm { k }
            | Relation::LadderNormShifted { k }
            | Relation::VacuumLadderIdentity { k } => format!("{}[k={}]", self.family_name(), k),
            Relation::CommutatorInIdeal { i, j, k, l }
            | Relation::ExchangeInIdeal { i, j, k, l } => {
                format!("{}[i={},j={},k={},l={}]", self.family_name(), i, j, k, l)
            }
            Relation::DiagonalGap { j } | Relation::ColumnNormGap { j } => {
                format!("{}[j={}]", self.family_name(), j)
            }
            Relation::CreatorPowerExchange { n, k } => format!(
                "{}[n={:?},k={}]",
                self.family_name(),
                n,
                k
            ),
            Relation::LadderNormPower { k, r } => {
                format!("{}[k={},r={}]", self.family_name(), k, r)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum RelationOutcome {
    Holds,
    /// The membership statements come back with the explicit factor G
    /// such that the difference equals y_0 G.
    HoldsWithCertificate { factor: GenPoly },
    Fails { difference: LocalizedElement },
}

impl RelationOutcome {
    pub fn holds(&self) -> bool {
        !matches!(self, RelationOutcome::Fails { .. })
    }
}

fn xx(d: usize, al: &Alpha, i: i32, j: i32) -> Result<LocalizedElement, LocalizedError> {
    LocalizedElement::make_x(d, al, i, j)
}

fn yy(d: usize, al: &Alpha, n: i64) -> LocalizedElement {
    LocalizedElement::make_y(d, al, n)
}

fn yk0(d: usize, al: &Alpha, k: u32) -> Result<LocalizedElement, LocalizedError> {
    if k == 0 {
        Ok(yy(d, al, 0))
    } else {
        LocalizedElement::make_yk0(d, al, k)
    }
}

fn outcome_of(diff: LocalizedElement) -> RelationOutcome {
    if diff.is_zero() {
        RelationOutcome::Holds
    } else {
        RelationOutcome::Fails { difference: diff }
    }
}

fn membership_outcome(diff: LocalizedElement) -> RelationOutcome {
    match certify_y0_multiple(&diff) {
        Ok(factor) => RelationOutcome::HoldsWithCertificate { factor },
        Err(_) => RelationOutcome::Fails { difference: diff },
    }
}

/// Check one relation instance exactly.
pub fn verify_relation(
    d: usize,
    alpha: &Alpha,
    rel: &Relation,
) -> Result<RelationOutcome, LocalizedError> {
    let one = LocalizedElement::one(d, alpha);
    let y0 = yy(d, alpha, 0);
    let mul = |a: &LocalizedElement, b: &LocalizedElement| a.l_mul(b);
    Ok(match rel {
        Relation::ResolventDifference { k, n } => {
            let yk = yy(d, alpha, *k);
            let yn = yy(d, alpha, *n);
            let lhs = yk.sub(&yn);
            let rhs = mul(&yk, &yn)?.scale_rat(&BigRational::from_integer((*n - *k).into()));
            outcome_of(lhs.sub(&rhs))
        }
        Relation::ModeSum => {
            let mut lhs = LocalizedElement::zero(d, alpha);
            for k in 1..=d as u32 {
                lhs = lhs.add(&yk0(d, alpha, k)?);
            }
            let rhs = one.sub(&y0.scale_rat(alpha.rat()));
            outcome_of(lhs.sub(&rhs))
        }
        Relation::PairNormMixed { k, j } => {
            let x = xx(d, alpha, *k as i32, *j as i32)?;
            let lhs = mul(&x.l_adjoint(), &x)?;
            let mut inner = yk0(d, alpha, *j)?;
            if k == j {
                inner = inner.sub(&y0);
            }
            let rhs = mul(&yk0(d, alpha, *k)?, &inner)?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::PairNormCreator { k, l } => {
            let x = xx(d, alpha, *k as i32, -(*l as i32))?;
            let lhs = mul(&x.l_adjoint(), &x)?;
            let mut left = yk0(d, alpha, *k)?;
            if k == l {
                left = left.add(&y0);
            }
            let right = yk0(d, alpha, *l)?.add(&y0);
            let rhs = mul(&left, &right)?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::ResolventExchange { k, l } => {
            let x = xx(d, alpha, *k, *l)?;
            let lhs = mul(&y0, &x)?;
            let s = (k.signum() + l.signum()) as i64;
            let brace = one.add(&y0.scale_rat(&BigRational::from_integer(s.into())));
            let rhs = mul(&brace, &mul(&x, &y0)?)?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::ResolventLadderLeft { k, n } => {
            let xs = xx(d, alpha, *k as i32, 0)?.l_adjoint();
            let lhs = mul(&yy(d, alpha, *n), &xs)?;
            let rhs = mul(&xs, &yy(d, alpha, *n + 1))?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::ResolventLadderRight { k, n } => {
            let x = xx(d, alpha, *k as i32, 0)?;
            let lhs = mul(&x, &yy(d, alpha, *n))?;
            let rhs = mul(&yy(d, alpha, *n + 1), &x)?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::LadderExchange { l, k } => {
            let xl = xx(d, alpha, *l as i32, 0)?;
            let xks = xx(d, alpha, *k as i32, 0)?.l_adjoint();
            let lhs = mul(&xl, &xks)?;
            let w = one.sub(&yy(d, alpha, 2));
            let mut rhs = mul(&mul(&xks, &mul(&w, &w)?)?, &xl)?;
            if k == l {
                let y1 = yy(d, alpha, 1);
                rhs = rhs.add(&mul(&y1, &y1)?);
            }
            outcome_of(lhs.sub(&rhs))
        }
        Relation::LadderNorm { k } => {
            let x = xx(d, alpha, *k as i32, 0)?;
            let lhs = mul(&x, &x.l_adjoint())?;
            let y1 = yy(d, alpha, 1);
            let rhs = mul(&mul(&yk0(d, alpha, *k)?, &y1)?, &one.sub(&y1))?
                .add(&mul(&y1, &y1)?);
            outcome_of(lhs.sub(&rhs))
        }
        Relation::LadderNormShifted { k } => {
            let x = xx(d, alpha, *k as i32, 0)?;
            let xs = x.l_adjoint();
            let lhs = mul(&yk0(d, alpha, *k)?, &xs)?;
            let y1 = yy(d, alpha, 1);
            let inner = mul(&yk0(d, alpha, *k)?, &one.sub(&y1))?.add(&y1);
            let rhs = mul(&xs, &inner)?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::PairSplitAnnihilators { k, l } => {
            let lhs = mul(&xx(d, alpha, *k as i32, *l as i32)?, &y0)?;
            let rhs = mul(
                &mul(&xx(d, alpha, *k as i32, 0)?, &xx(d, alpha, *l as i32, 0)?)?,
                &one.sub(&y0),
            )?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::PairSplitCreators { k, l } => {
            let lhs = mul(&xx(d, alpha, -(*k as i32), -(*l as i32))?, &y0)?;
            let rhs = mul(
                &mul(
                    &xx(d, alpha, *k as i32, 0)?.l_adjoint(),
                    &xx(d, alpha, *l as i32, 0)?.l_adjoint(),
                )?,
                &one.add(&y0),
            )?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::MixedPairTranspose { k, l } => {
            let lhs = mul(&xx(d, alpha, *k as i32, -(*l as i32))?, &y0)?;
            let mut correction = LocalizedElement::zero(d, alpha);
            if k == l {
                correction = mul(&y0, &y0)?;
            }
            let rhs1 = mul(&xx(d, alpha, -(*l as i32), *k as i32)?, &y0)?.add(&correction);
            let rhs2 = mul(
                &xx(d, alpha, *l as i32, 0)?.l_adjoint(),
                &xx(d, alpha, *k as i32, 0)?,
            )?
            .add(&correction);
            let d1 = lhs.sub(&rhs1);
            let d2 = lhs.sub(&rhs2);
            if d1.is_zero() && d2.is_zero() {
                RelationOutcome::Holds
            } else if d1.is_zero() {
                RelationOutcome::Fails { difference: d2 }
            } else {
                RelationOutcome::Fails { difference: d1 }
            }
        }
        Relation::CommutatorInIdeal { i, j, k, l } => {
            let a = xx(d, alpha, *i, *j)?;
            let b = xx(d, alpha, *k, *l)?;
            membership_outcome(mul(&a, &b)?.sub(&mul(&b, &a)?))
        }
        Relation::ExchangeInIdeal { i, j, k, l } => {
            let lhs = mul(&xx(d, alpha, *i, *j)?, &xx(d, alpha, *k, *l)?)?;
            let rhs = mul(&xx(d, alpha, *i, *l)?, &xx(d, alpha, *k, *j)?)?;
            membership_outcome(lhs.sub(&rhs))
        }
        Relation::WordAbsorption { k, l } => {
            let word = LocalizedElement::from_weyl(
                &crate::weyl::WeylElement::gen(d, *k).mul(&crate::weyl::WeylElement::gen(d, *l)),
                alpha,
            );
            let lhs = mul(&y0, &word)?;
            let t = y0_weight(*k, *l);
            let brace = one.add(&y0.scale_rat(&BigRational::from_integer(t.into())));
            let rhs = mul(&brace, &xx(d, alpha, *k, *l)?)?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::AdjointTranspose { k, l } => {
            let x = xx(d, alpha, *k, *l)?;
            let mut diff = x.l_adjoint().sub(&xx(d, alpha, -*l, -*k)?);
            if *k + *l != 0 && diff.is_zero() {
                diff = x.sub(&xx(d, alpha, *l, *k)?);
            }
            outcome_of(diff)
        }
        Relation::DiagonalGap { j } => {
            let lhs = xx(d, alpha, *j as i32, -(*j as i32))?
                .sub(&xx(d, alpha, -(*j as i32), *j as i32)?);
            outcome_of(lhs.sub(&y0))
        }
        Relation::ResolventQuadratic => {
            let mut acc = mul(&y0, &y0)?.scale_rat(alpha.rat());
            for k in 1..=d as u32 {
                let x = xx(d, alpha, k as i32, 0)?;
                acc = acc.add(&mul(&x.l_adjoint(), &x)?);
            }
            outcome_of(acc.sub(&y0))
        }
        Relation::CreatorPowerExchange { n, k } => {
            if n.len() != d || *k == 0 || *k as usize > d {
                return Err(LocalizedError::IndexOutOfRange(*k as i32, d));
            }
            if n[*k as usize - 1] != 0 || n.iter().all(|&e| e == 0) {
                return Err(LocalizedError::IndexOutOfRange(*k as i32, d));
            }
            let xk = xx(d, alpha, *k as i32, 0)?;
            let mut word = one.clone();
            for (j, &e) in n.iter().enumerate() {
                let xj = xx(d, alpha, (j + 1) as i32, 0)?;
                for _ in 0..e {
                    word = mul(&word, &xj)?;
                }
            }
            let ws = word.l_adjoint();
            let lhs = mul(&xk, &ws)?;
            let total: u32 = n.iter().sum();
            let mut damp = one.clone();
            for m in 2..=(total as i64 + 1) {
                damp = mul(&damp, &one.sub(&yy(d, alpha, m)))?;
            }
            let rhs = mul(&mul(&ws, &mul(&damp, &damp)?)?, &xk)?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::LadderNormPower { k, r } => {
            let x = xx(d, alpha, *k as i32, 0)?;
            let xs = x.l_adjoint();
            let mut xsr = one.clone();
            for _ in 0..*r {
                xsr = mul(&xsr, &xs)?;
            }
            let lhs = mul(&mul(&x, &xs)?, &xsr)?;
            let yr = yy(d, alpha, *r as i64 + 1);
            let c = BigRational::from_integer((*r as i64 + 1).into());
            let inner = mul(&yk0(d, alpha, *k)?, &one.sub(&yr.scale_rat(&c)))?
                .add(&yr.scale_rat(&c));
            let rhs = mul(&mul(&xsr, &inner)?, &yr)?;
            outcome_of(lhs.sub(&rhs))
        }
        Relation::VacuumLadderIdentity { k } => {
            let x = xx(d, alpha, *k as i32, 0)?;
            let lhs = mul(&one.add(&y0), &mul(&x, &y0)?)?;
            outcome_of(lhs.sub(&mul(&y0, &x)?))
        }
        Relation::DiagonalPairSum => {
            let mut acc = LocalizedElement::zero(d, alpha);
            for k in 1..=d as i32 {
                acc = acc.add(&xx(d, alpha, k, -k)?);
            }
            let coeff = BigRational::from_integer((d as i64).into()) - alpha.rat();
            let rhs = one.add(&y0.scale_rat(&coeff));
            outcome_of(acc.sub(&rhs))
        }
        Relation::ColumnNormGap { j } => {
            let mut acc = LocalizedElement::zero(d, alpha);
            for k in 1..=d as i32 {
                let x = xx(d, alpha, k, -(*j as i32))?;
                acc = acc.add(&mul(&x.l_adjoint(), &x)?);
            }
            membership_outcome(acc.sub(&xx(d, alpha, *j as i32, -(*j as i32))?))
        }
    })
}

/// Enumerate the full catalogue for a given mode count, with shift
/// parameters bounded by `max_shift` and powers by `max_power`.
pub fn relation_suite(d: usize, max_shift: i64, max_power: u32) -> Vec<Relation> {
    let dd = d as i32;
    let mut rels = Vec::new();
    for k in -max_shift..=max_shift {
        for n in -max_shift..=max_shift {
            rels.push(Relation::ResolventDifference { k, n });
        }
    }
    rels.push(Relation::ModeSum);
    rels.push(Relation::ResolventQuadratic);
    rels.push(Relation::DiagonalPairSum);
    for k in 1..=d as u32 {
        for j in 0..=d as u32 {
            rels.push(Relation::PairNormMixed { k, j });
        }
        for l in 1..=d as u32 {
            rels.push(Relation::PairNormCreator { k, l });
            rels.push(Relation::PairSplitAnnihilators { k, l });
            rels.push(Relation::PairSplitCreators { k, l });
            rels.push(Relation::MixedPairTranspose { k, l });
            rels.push(Relation::LadderExchange { l, k });
        }
        for n in -max_shift..=max_shift {
            rels.push(Relation::ResolventLadderLeft { k, n });
            rels.push(Relation::ResolventLadderRight { k, n });
        }
        rels.push(Relation::LadderNorm { k });
        rels.push(Relation::LadderNormShifted { k });
        rels.push(Relation::VacuumLadderIdentity { k });
        for r in 0..=max_power {
            rels.push(Relation::LadderNormPower { k, r });
        }
    }
    for j in 1..=d as u32 {
        rels.push(Relation::DiagonalGap { j });
        rels.push(Relation::ColumnNormGap { j });
    }
    for k in -dd..=dd {
        for l in -dd..=dd {
            rels.push(Relation::ResolventExchange { k, l });
            rels.push(Relation::WordAbsorption { k, l });
            rels.push(Relation::AdjointTranspose { k, l });
        }
    }
    // Four index families, deduplicated by the antisymmetry of the
    // commutator and the i <-> k symmetry of the exchange difference.
    let idx: Vec<i32> = (-dd..=dd).collect();
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                for &l in &idx {
                    if (i, j) <= (k, l) {
                        rels.push(Relation::CommutatorInIdeal { i, j, k, l });
                    }
                    if i <= k {
                        rels.push(Relation::ExchangeInIdeal { i, j, k, l });
                    }
                }
            }
        }
    }
    // Creator power exchange needs a second mode to be nonvacuous.
    if d >= 2 {
        for k in 1..=d as u32 {
            for total in 1..=max_power.min(3) {
                // all multiindices of the given total with n_k = 0
                let mut stack = vec![(vec![0u32; d], 0usize, total)];
                while let Some((cur, pos, left)) = stack.pop() {
                    if pos == d {
                        if left == 0 {
                            rels.push(Relation::CreatorPowerExchange {
                                n: cur,
                                k,
                            });
                        }
                        continue;
                    }
                    let maxe = if pos == k as usize - 1 { 0 } else { left };
                    for e in 0..=maxe {
                        let mut next = cur.clone();
                        next[pos] = e;
                        stack.push((next, pos + 1, left - e));
                    }
                }
            }
        }
    }
    rels
}

/// Run a whole suite, returning the failures (empty means all hold).
pub fn run_suite(
    d: usize,
    alpha: &Alpha,
    rels: &[Relation],
) -> Vec<(Relation, RelationOutcome)> {
    let mut failures = Vec::new();
    for rel in rels {
        match verify_relation(d, alpha, rel) {
            Ok(out) if out.holds() => {}
            Ok(out) => failures.push((rel.clone(), out)),
            Err(_) => failures.push((
                rel.clone(),
                RelationOutcome::Fails {
                    difference: LocalizedElement::zero(d, alpha),
                },
            )),
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(num: i64, den: i64) -> Alpha {
        Alpha::new(BigRational::new(num.into(), den.into())).unwrap()
    }

    #[test]
    fn resolvent_difference_holds() {
        let a = al(1, 2);
        for (k, n) in [(0, 1), (-2, 3), (1, 1), (2, -1)] {
            let out = verify_relation(1, &a, &Relation::ResolventDifference { k, n }).unwrap();
            assert!(out.holds(), "k={} n={}", k, n);
        }
    }

    #[test]
    fn mode_sum_holds_in_two_modes() {
        let a = al(5, 2);
        assert!(verify_relation(2, &a, &Relation::ModeSum).unwrap().holds());
    }

    #[test]
    fn ladder_exchange_needs_the_squared_damping() {
        // with (1 - y_2) unsquared the identity is false
        let d = 1;
        let a = al(1, 2);
        let x1 = LocalizedElement::make_x(d, &a, 1, 0).unwrap();
        let xs = x1.l_adjoint();
        let one = LocalizedElement::one(d, &a);
        let w = one.sub(&LocalizedElement::make_y(d, &a, 2));
        let y1 = LocalizedElement::make_y(d, &a, 1);
        let bad = xs
            .l_mul(&w)
            .unwrap()
            .l_mul(&x1)
            .unwrap()
            .add(&y1.l_mul(&y1).unwrap());
        let lhs = x1.l_mul(&xs).unwrap();
        assert!(!lhs.sub(&bad).is_zero());
        assert!(verify_relation(d, &a, &Relation::LadderExchange { l: 1, k: 1 })
            .unwrap()
            .holds());
    }

    #[test]
    fn commutator_membership_is_certified() {
        let a = al(1, 2);
        let out = verify_relation(
            1,
            &a,
            &Relation::CommutatorInIdeal { i: 1, j: 1, k: 1, l: -1 },
        )
        .unwrap();
        match out {
            RelationOutcome::HoldsWithCertificate { factor } => {
                assert!(!factor.terms.is_empty());
            }
            other => panic!("expected certificate, got {:?}", other),
        }
    }

    #[test]
    fn single_mode_suite_holds() {
        let a = al(13, 10);
        let rels = relation_suite(1, 2, 2);
        let failures = run_suite(1, &a, &rels);
        assert!(
            failures.is_empty(),
            "failing: {:?}",
            failures
                .iter()
                .map(|(r, _)| r.instance_name())
                .collect::<Vec<_>>()
        );
    }
}
