//! Coefficient-polynomial splittings `C(A, B) = γ + α(A) + β(B)`, the
//! lexicographic degree extremes, and unit detection.

use std::collections::BTreeMap;

use crate::qalgebras::{Core, SphereElement, SphereMonomial};
use crate::scalars::{Coefficient, QPoly};
use crate::{Error, Result};

/// The coefficient of `a^μ b^ν` in `r`, split into its constant part and
/// pure `A` and pure `B` parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTerm {
    pub mu: i64,
    pub nu: i64,
    pub gamma: Coefficient,
    pub alpha: QPoly,
    pub beta: QPoly,
}

impl SplitTerm {
    fn empty(mu: i64, nu: i64) -> Self {
        SplitTerm { mu, nu, gamma: Coefficient::zero(), alpha: QPoly::zero(), beta: QPoly::zero() }
    }

    /// `(γ + α(A) + β(B)) a^μ b^ν`.
    pub fn to_element(&self) -> SphereElement {
        let mut r = SphereElement::term(SphereMonomial::ab(self.mu, self.nu), self.gamma.clone());
        for (k, c) in self.alpha.terms() {
            r.add_term(SphereMonomial::new(Core::A, k, self.mu, self.nu), c.clone());
        }
        for (k, c) in self.beta.terms() {
            r.add_term(SphereMonomial::new(Core::B, k, self.mu, self.nu), c.clone());
        }
        r
    }

    /// `γ + α ≠ 0`.
    pub fn has_a_side(&self) -> bool {
        !self.gamma.is_zero() || !self.alpha.is_zero()
    }

    /// `γ + β ≠ 0`.
    pub fn has_b_side(&self) -> bool {
        !self.gamma.is_zero() || !self.beta.is_zero()
    }
}

/// Groups the terms of `r` by `(μ, ν)`, in lexicographic order.
pub fn split_expansion(r: &SphereElement) -> Vec<SplitTerm> {
    let mut groups: BTreeMap<(i64, i64), SplitTerm> = BTreeMap::new();
    for (m, c) in r.iter() {
        let t = groups.entry((m.mu(), m.nu())).or_insert_with(|| SplitTerm::empty(m.mu(), m.nu()));
        match (m.k(), m.core()) {
            (0, _) => t.gamma = c.clone(),
            (k, Core::A) => t.alpha.add_term(k, c),
            (k, Core::B) => t.beta.add_term(k, c),
        }
    }
    groups.into_values().collect()
}

/// The two direct-sum decompositions of the sphere algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitVariant {
    /// `X = span{A^k a^μ b^ν, k ≥ 0}` and `Y₁ = span{B^k a^μ b^ν, k > 0}`.
    XY1,
    /// `X₁ = span{A^k a^μ b^ν, k > 0}` and `Y = span{B^k a^μ b^ν, k ≥ 0}`.
    X1Y,
}

pub fn in_x(m: &SphereMonomial) -> bool {
    m.core() == Core::A
}

pub fn in_x1(m: &SphereMonomial) -> bool {
    m.core() == Core::A && m.k() > 0
}

pub fn in_y(m: &SphereMonomial) -> bool {
    m.k() == 0 || m.core() == Core::B
}

pub fn in_y1(m: &SphereMonomial) -> bool {
    m.core() == Core::B
}

pub fn subspace_split(r: &SphereElement, variant: SplitVariant) -> (SphereElement, SphereElement) {
    match variant {
        SplitVariant::XY1 => (r.filter(in_x), r.filter(in_y1)),
        SplitVariant::X1Y => (r.filter(in_x1), r.filter(in_y)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extreme {
    Max,
    Min,
}

/// Lexicographic max/min of `{(μ, ν) : γ + α ≠ 0}` (side A) or
/// `{(μ, ν) : γ + β ≠ 0}` (side B).
pub fn deg_extreme(r: &SphereElement, side: Side, which: Extreme) -> Result<(i64, i64)> {
    let idx = split_expansion(r).into_iter().filter(|t| match side {
        Side::A => t.has_a_side(),
        Side::B => t.has_b_side(),
    });
    let idx = idx.map(|t| (t.mu, t.nu));
    match which {
        Extreme::Max => idx.max(),
        Extreme::Min => idx.min(),
    }
    .ok_or_else(|| Error::domain(format!("no index with a nonzero {side:?}-side coefficient")))
}

/// How an element relates to invertibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitClass {
    /// `c · 1` with `c = ±p^i q^j w^k`; carries the inverse scalar.
    Unit(Coefficient),
    /// A nonzero scalar that is not a unit of the Laurent ring (invertible
    /// once the parameters are specialized to complex numbers).
    ScalarNonUnit(Coefficient),
    /// Zero or not a scalar; never invertible.
    NonUnit,
}

pub fn classify(r: &SphereElement) -> UnitClass {
    match r.as_scalar() {
        Some(c) if c.is_zero() => UnitClass::NonUnit,
        Some(c) => match c.inverse() {
            Some(inv) => UnitClass::Unit(inv),
            None => UnitClass::ScalarNonUnit(c),
        },
        None => UnitClass::NonUnit,
    }
}

/// The scalar `c` when `r = c · 1` is invertible.
pub fn is_unit(r: &SphereElement) -> Option<Coefficient> {
    match classify(r) {
        UnitClass::Unit(_) => r.as_scalar(),
        _ => None,
    }
}

/// `r s = s r = 1`.
pub fn verify_inverse(r: &SphereElement, s: &SphereElement) -> bool {
    let one = SphereElement::one();
    r * s == one && s * r == one
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Coefficient {
        s.parse().unwrap()
    }

    #[test]
    fn split_examples() {
        let t = split_expansion(&SphereElement::a());
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].mu, t[0].nu, t[0].gamma.clone()), (1, 0, Coefficient::one()));
        assert!(t[0].alpha.is_zero() && t[0].beta.is_zero());

        let ab = &SphereElement::big_a() * &SphereElement::b();
        let t = split_expansion(&ab);
        assert_eq!((t[0].mu, t[0].nu), (0, 1));
        assert!(t[0].gamma.is_zero());
        assert_eq!(t[0].alpha, QPoly::monomial(Coefficient::one(), 1));

        let b2 = &SphereElement::big_b() * &SphereElement::big_b();
        let r = &(&SphereElement::one() + &b2) * &SphereElement::z();
        let t = split_expansion(&r);
        assert_eq!((t[0].mu, t[0].nu), (1, -1));
        assert_eq!(t[0].gamma, Coefficient::one());
        assert_eq!(t[0].beta, QPoly::monomial(Coefficient::one(), 2));
        assert_eq!(t[0].to_element(), r);
    }

    #[test]
    fn splits() {
        let r = SphereElement::big_a() + SphereElement::big_b();
        let (x, y1) = subspace_split(&r, SplitVariant::XY1);
        assert_eq!((x, y1), (SphereElement::big_a(), SphereElement::big_b()));
        for v in [SplitVariant::XY1, SplitVariant::X1Y] {
            let (first, second) = subspace_split(&SphereElement::one(), v);
            let expect = if v == SplitVariant::XY1 { (SphereElement::one(), SphereElement::zero()) } else { (SphereElement::zero(), SphereElement::one()) };
            assert_eq!((first, second), expect);
        }
        let ba = &SphereElement::big_b() * &SphereElement::a();
        assert_eq!(subspace_split(&ba, SplitVariant::XY1), (SphereElement::zero(), ba.clone()));
    }

    #[test]
    fn extremes() {
        let r = SphereElement::a() + &SphereElement::big_a() * &SphereElement::b();
        assert_eq!(deg_extreme(&r, Side::A, Extreme::Max).unwrap(), (1, 0));
        assert_eq!(deg_extreme(&r, Side::A, Extreme::Min).unwrap(), (0, 1));
        for side in [Side::A, Side::B] {
            for which in [Extreme::Max, Extreme::Min] {
                assert_eq!(deg_extreme(&SphereElement::one(), side, which).unwrap(), (0, 0));
            }
        }
        let bb = &SphereElement::big_b() * &SphereElement::b();
        assert!(deg_extreme(&bb, Side::A, Extreme::Max).is_err());
    }

    #[test]
    fn units() {
        assert_eq!(is_unit(&SphereElement::scalar(Coefficient::int(5))), None);
        assert_eq!(classify(&SphereElement::scalar(Coefficient::int(5))), UnitClass::ScalarNonUnit(Coefficient::int(5)));
        assert_eq!(is_unit(&SphereElement::scalar(c("p"))), Some(c("p")));
        assert_eq!(is_unit(&SphereElement::a()), None);
        assert_eq!(is_unit(&(SphereElement::one() + SphereElement::big_a())), None);
        assert_eq!(is_unit(&SphereElement::zero()), None);
        assert!(verify_inverse(&SphereElement::scalar(c("p")), &SphereElement::scalar(c("p^-1"))));
        assert!(!verify_inverse(&SphereElement::a(), &SphereElement::a_star()));
        assert!(verify_inverse(&SphereElement::scalar(c("w^2")), &SphereElement::scalar(c("w^-2"))));
    }
}
