//! Toeplitz crossed products, the noncommutative torus, and the pullback
//! they form.
//!
//! The Toeplitz algebra is kept in its own normal form `z^i z*^j`
//! (`z*z = 1`), which is closed under products; the `p = 0` disc basis
//! `X^k x^μ` is not (`x x x*` has no normal form there).

use std::fmt;

use crate::linear::{push_power, Basis, LinComb};
use crate::qalgebras::DiscElement;
use crate::scalars::Coefficient;
use crate::{Error, Result};

/// `z^i z*^j u^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CrossedKey {
    pub i: u32,
    pub j: u32,
    pub n: i64,
}

impl CrossedKey {
    pub const ONE: CrossedKey = CrossedKey { i: 0, j: 0, n: 0 };

    pub fn new(i: u32, j: u32, n: i64) -> Self {
        CrossedKey { i, j, n }
    }

    /// Net power of `z`: `i − j`.
    pub fn degree(self) -> i64 {
        i64::from(self.i) - i64::from(self.j)
    }
}

impl Basis for CrossedKey {
    fn term_text(&self) -> String {
        let mut parts = Vec::new();
        push_power(&mut parts, "z", i64::from(self.i));
        match self.j {
            0 => {}
            1 => parts.push("z*".into()),
            j => parts.push(format!("z*^{j}")),
        }
        push_power(&mut parts, "u", self.n);
        parts.join(" ")
    }
}

/// An element of `T ⋊ Z` with `u z = ζ^{2 twist} z u`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossedElement {
    pub twist: i64,
    pub terms: LinComb<CrossedKey>,
}

impl CrossedElement {
    pub fn zero(twist: i64) -> Self {
        CrossedElement { twist, terms: LinComb::zero() }
    }

    pub fn scalar(twist: i64, c: Coefficient) -> Self {
        CrossedElement { twist, terms: LinComb::term(CrossedKey::ONE, c) }
    }

    pub fn one(twist: i64) -> Self {
        Self::scalar(twist, Coefficient::one())
    }

    pub fn mono(twist: i64, i: u32, j: u32, n: i64) -> Self {
        CrossedElement { twist, terms: LinComb::basis(CrossedKey::new(i, j, n)) }
    }

    /// `z^μ` for `μ ≥ 0`, `z*^{|μ|}` otherwise, times `u^n`.
    pub fn signed(twist: i64, mu: i64, n: i64) -> Self {
        let (i, j) = if mu >= 0 { (mu as u32, 0) } else { (0, mu.unsigned_abs() as u32) };
        Self::mono(twist, i, j, n)
    }

    pub fn z(twist: i64) -> Self {
        Self::mono(twist, 1, 0, 0)
    }

    pub fn u(twist: i64) -> Self {
        Self::mono(twist, 0, 0, 1)
    }

    /// `X = 1 − z z*`.
    pub fn big_x(twist: i64) -> Self {
        CrossedElement { twist, terms: [(CrossedKey::ONE, Coefficient::one()), (CrossedKey::new(1, 1, 0), Coefficient::int(-1))].into_iter().collect() }
    }

    /// Embeds a disc element in its `p = 0` reading, as the `u^0` part:
    /// `X^k x^μ ↦ X x^μ` for `k ≥ 1` (zero when `μ > 0`), `x^μ` otherwise.
    /// Errors on coefficients with negative powers of `p`.
    pub fn from_disc(twist: i64, d: &DiscElement) -> Result<Self> {
        let mut r = Self::zero(twist);
        for (m, c) in d.iter() {
            let c = c.eval_zero(crate::scalars::Var::P)?;
            let t = match m.k {
                0 => Self::signed(twist, m.mu, 0),
                _ if m.mu > 0 => continue,
                _ => Self::big_x(twist).mul(&Self::signed(twist, m.mu, 0))?,
            };
            r = r.add(&t.scale(&c))?;
        }
        Ok(r)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.twist != o.twist {
            return Err(Error::domain(format!("twists {} and {} differ", self.twist, o.twist)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CrossedElement { twist: self.twist, terms: &self.terms + &o.terms })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CrossedElement { twist: self.twist, terms: &self.terms - &o.terms })
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        CrossedElement { twist: self.twist, terms: self.terms.scale(c) }
    }

    /// `(z^i z*^j u^n)(z^k z*^l u^m) = ζ^{2 twist n (k − l)} z^i z*^j z^k z*^l u^{n+m}`,
    /// then `z*^j z^k` cancels to `z^{k−j}` or `z*^{j−k}`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut acc = LinComb::zero();
        for (a, c) in self.terms.iter() {
            for (b, d) in o.terms.iter() {
                let phase = Coefficient::zeta_pow(2 * self.twist * a.n * b.degree());
                let key = if b.i >= a.j {
                    CrossedKey::new(a.i + b.i - a.j, b.j, a.n + b.n)
                } else {
                    CrossedKey::new(a.i, a.j - b.i + b.j, a.n + b.n)
                };
                acc.add_term(key, &(c * d) * &phase);
            }
        }
        Ok(CrossedElement { twist: self.twist, terms: acc })
    }

    /// `(c z^i z*^j u^n)* = conj(c) u^{-n} z^j z*^i`.
    pub fn star(&self) -> Result<Self> {
        let mut acc = LinComb::zero();
        for (a, c) in self.terms.iter() {
            let key = CrossedKey::new(a.j, a.i, -a.n);
            let phase = Coefficient::zeta_pow(-2 * self.twist * a.n * key.degree());
            acc.add_term(key, &c.conj() * &phase);
        }
        Ok(CrossedElement { twist: self.twist, terms: acc })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.twist);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for CrossedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.terms.fmt(f)
    }
}

/// `Z^a U^b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TorusKey(pub i64, pub i64);

impl Basis for TorusKey {
    fn term_text(&self) -> String {
        let mut parts = Vec::new();
        push_power(&mut parts, "Z", self.0);
        push_power(&mut parts, "U", self.1);
        parts.join(" ")
    }
}

/// An element of the torus with `U Z = ζ^{2 param} Z U`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusElement {
    pub param: i64,
    pub terms: LinComb<TorusKey>,
}

impl TorusElement {
    pub fn zero(param: i64) -> Self {
        TorusElement { param, terms: LinComb::zero() }
    }

    pub fn scalar(param: i64, c: Coefficient) -> Self {
        TorusElement { param, terms: LinComb::term(TorusKey(0, 0), c) }
    }

    pub fn one(param: i64) -> Self {
        Self::scalar(param, Coefficient::one())
    }

    pub fn mono(param: i64, a: i64, b: i64) -> Self {
        TorusElement { param, terms: LinComb::basis(TorusKey(a, b)) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.param != o.param {
            return Err(Error::domain(format!("torus parameters {} and {} differ", self.param, o.param)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(TorusElement { param: self.param, terms: &self.terms + &o.terms })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(TorusElement { param: self.param, terms: &self.terms - &o.terms })
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        TorusElement { param: self.param, terms: self.terms.scale(c) }
    }

    /// `Z^a U^b Z^c U^d = ζ^{2 param b c} Z^{a+c} U^{b+d}`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut acc = LinComb::zero();
        for (TorusKey(a, b), x) in self.terms.iter() {
            for (TorusKey(c, d), y) in o.terms.iter() {
                let phase = Coefficient::zeta_pow(2 * self.param * b * c);
                acc.add_term(TorusKey(a + c, b + d), &(x * y) * &phase);
            }
        }
        Ok(TorusElement { param: self.param, terms: acc })
    }

    /// `(Z^a U^b)* = U^{-b} Z^{-a} = ζ^{2 param a b} Z^{-a} U^{-b}`.
    pub fn star(&self) -> Self {
        let mut acc = LinComb::zero();
        for (TorusKey(a, b), x) in self.terms.iter() {
            acc.add_term(TorusKey(-a, -b), &x.conj() * &Coefficient::zeta_pow(2 * self.param * a * b));
        }
        TorusElement { param: self.param, terms: acc }
    }

    /// `r^e`, with negative `e` meaning `(r*)^{|e|}`.
    pub fn signed_pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.star() } else { self.clone() };
        let mut acc = Self::one(self.param);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.terms.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    /// `twist = +N`: `z ↦ Z`, `u ↦ U`.
    Plus,
    /// `twist = −N`: `z ↦ Z^{-1}`, `u ↦ ζ^{N(N−1)} Z^N U`.
    Minus,
}

/// `π̃₁` or `π̃₂` into the torus with parameter `N = |twist|`; `z^i z*^j ↦
/// Z^{±(i−j)}`, so `X = 1 − z z* ↦ 0`.
pub fn project_to_torus(c: &CrossedElement, leg: Leg) -> Result<TorusElement> {
    let n = c.twist.abs();
    let expected = match leg {
        Leg::Plus => n,
        Leg::Minus => -n,
    };
    if n == 0 || c.twist != expected {
        return Err(Error::domain(format!("twist {} does not match leg {leg:?}", c.twist)));
    }
    let (z_img, u_img) = match leg {
        Leg::Plus => (TorusElement::mono(n, 1, 0), TorusElement::mono(n, 0, 1)),
        Leg::Minus => {
            (TorusElement::mono(n, -1, 0), TorusElement::mono(n, n, 1).scale(&Coefficient::zeta_pow(n * (n - 1))))
        }
    };
    let mut acc = TorusElement::zero(n);
    for (key, coeff) in c.terms.iter() {
        let t = z_img.signed_pow(key.degree())?.mul(&u_img.signed_pow(key.n)?)?;
        acc = acc.add(&t.scale(coeff))?;
    }
    Ok(acc)
}

/// `(a₊, a₋)` with `π̃₁(a₊) = π̃₂(a₋)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PullbackElement {
    plus: CrossedElement,
    minus: CrossedElement,
}

impl PullbackElement {
    pub fn plus(&self) -> &CrossedElement {
        &self.plus
    }

    pub fn minus(&self) -> &CrossedElement {
        &self.minus
    }

    pub fn n(&self) -> i64 {
        self.plus.twist
    }

    /// `(c, c)` for a scalar `c`.
    pub fn scalar(n: i64, c: Coefficient) -> Self {
        PullbackElement { plus: CrossedElement::scalar(n, c.clone()), minus: CrossedElement::scalar(-n, c) }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(PullbackElement { plus: self.plus.add(&o.plus)?, minus: self.minus.add(&o.minus)? })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        Ok(PullbackElement { plus: self.plus.sub(&o.plus)?, minus: self.minus.sub(&o.minus)? })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(PullbackElement { plus: self.plus.mul(&o.plus)?, minus: self.minus.mul(&o.minus)? })
    }

    pub fn star(&self) -> Result<Self> {
        Ok(PullbackElement { plus: self.plus.star()?, minus: self.minus.star()? })
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }
}

impl fmt::Display for PullbackElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.plus, self.minus)
    }
}

/// Checks `π̃₁(a₊) = π̃₂(a₋)`; the error carries the differing residual.
pub fn pullback_make(plus: CrossedElement, minus: CrossedElement) -> Result<PullbackElement> {
    if plus.twist <= 0 || minus.twist != -plus.twist {
        return Err(Error::domain(format!("twists ({}, {}) are not (N, -N)", plus.twist, minus.twist)));
    }
    let diff = project_to_torus(&plus, Leg::Plus)?.sub(&project_to_torus(&minus, Leg::Minus)?)?;
    if !diff.is_zero() {
        return Err(Error::domain(format!("projections differ by {diff}")));
    }
    Ok(PullbackElement { plus, minus })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(e: i64) -> Coefficient {
        Coefficient::zeta_pow(e)
    }

    #[test]
    fn crossed_relations() {
        let (z, u) = (CrossedElement::z(1), CrossedElement::u(1));
        assert_eq!(u.mul(&z).unwrap(), z.mul(&u).unwrap().scale(&zeta(2)));
        let zs = z.star().unwrap();
        assert_eq!(zs.mul(&z).unwrap(), CrossedElement::one(1));
        assert_eq!(z.mul(&zs).unwrap().to_string(), "z z*");
        assert_eq!(CrossedElement::big_x(1).to_string(), "1 - z z*");
        let x = CrossedElement::big_x(1);
        assert_eq!(x.mul(&x).unwrap(), x);
        assert!(x.mul(&z).unwrap().is_zero());
        assert_eq!(z.mul(&z).unwrap().mul(&zs).unwrap().to_string(), "z^2 z*");
        assert_eq!(u.star().unwrap().mul(&u).unwrap(), CrossedElement::one(1));
        let (zm, um) = (CrossedElement::z(-1), CrossedElement::u(-1));
        assert_eq!(um.mul(&zm).unwrap(), zm.mul(&um).unwrap().scale(&zeta(-2)));
        assert!(z.mul(&zm).is_err());
    }

    #[test]
    fn torus_relations() {
        let (z, u) = (TorusElement::mono(3, 1, 0), TorusElement::mono(3, 0, 1));
        assert_eq!(u.mul(&z).unwrap(), z.mul(&u).unwrap().scale(&zeta(6)));
        let zu = z.mul(&u).unwrap();
        assert_eq!(zu.star().mul(&zu).unwrap(), TorusElement::one(3));
        // (Z U)^N = ζ^{N(N−1)} Z^N U^N at parameter 1.
        for n in 1..=5i64 {
            let zu = TorusElement::mono(1, 1, 1);
            let lhs = zu.signed_pow(n).unwrap();
            assert_eq!(lhs, TorusElement::mono(1, n, n).scale(&zeta(n * (n - 1))));
        }
    }

    #[test]
    fn projections() {
        let n = 3;
        let xx = CrossedElement::big_x(n).mul(&CrossedElement::z(n)).unwrap();
        assert!(project_to_torus(&xx, Leg::Plus).unwrap().is_zero());
        assert!(project_to_torus(&CrossedElement::big_x(n), Leg::Plus).unwrap().is_zero());
        assert_eq!(project_to_torus(&CrossedElement::z(-n), Leg::Minus).unwrap(), TorusElement::mono(n, -1, 0));
        assert_eq!(
            project_to_torus(&CrossedElement::u(-n), Leg::Minus).unwrap(),
            TorusElement::mono(n, n, 1).scale(&zeta(6))
        );
        assert!(project_to_torus(&CrossedElement::u(-n), Leg::Plus).is_err());
    }

    #[test]
    fn pullbacks() {
        let n = 4;
        assert!(pullback_make(CrossedElement::one(n), CrossedElement::one(-n)).is_ok());
        let z = CrossedElement::z(n);
        let zzs = z.mul(&z.star().unwrap()).unwrap();
        assert!(pullback_make(zzs, CrossedElement::one(-n)).is_ok());
        let err = pullback_make(z, CrossedElement::one(-n)).unwrap_err();
        assert!(err.to_string().contains("Z - 1") || err.to_string().contains("-1 + Z"), "{err}");
        // The sphere generator pattern (z₊u₊, u₋) at N = 1.
        let s = CrossedElement::z(1).mul(&CrossedElement::u(1)).unwrap();
        assert!(pullback_make(s, CrossedElement::u(-1)).is_ok());
    }
}
