//! The quantum disc `O(D_p)`: `x*x − p xx* = 1 − p`, basis `X^k x^μ` with
//! `X = 1 − xx*`.

use std::fmt;
use std::ops::Mul;

use crate::linear::{push_power, Basis, LinComb};
use crate::scalars::{qpoly_qpair_shared, Coefficient, QPoly, Var};
use crate::Result;

use super::Specialization;

/// `X^k x^μ`; negative `μ` stands for `(x*)^{|μ|}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DiscMonomial {
    pub k: u32,
    pub mu: i64,
}

impl DiscMonomial {
    pub const ONE: DiscMonomial = DiscMonomial { k: 0, mu: 0 };

    pub fn new(k: u32, mu: i64) -> Self {
        DiscMonomial { k, mu }
    }
}

impl Basis for DiscMonomial {
    fn term_text(&self) -> String {
        let mut parts = Vec::new();
        push_power(&mut parts, "X", self.k as i64);
        push_power(&mut parts, "x", self.mu);
        parts.join(" ")
    }
}

impl fmt::Display for DiscMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.term_text();
        f.write_str(if t.is_empty() { "1" } else { &t })
    }
}

pub type DiscElement = LinComb<DiscMonomial>;

/// Contraction rules of one disc presentation.
///
/// The deformation parameter is `var` or, when `inverted`, `var^-1` (the
/// target of the isomorphism [`kappa_iso`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Disc {
    var: Var,
    inverted: bool,
    spec: Specialization,
}

impl Default for Disc {
    fn default() -> Self {
        Disc::new(Var::P)
    }
}

impl Disc {
    pub const fn new(var: Var) -> Self {
        Disc { var, inverted: false, spec: Specialization::Generic }
    }

    /// The disc with parameter `var^-1`.
    pub const fn inverted(var: Var) -> Self {
        Disc { var, inverted: true, spec: Specialization::Generic }
    }

    /// The Toeplitz presentation `var = 0`, where `x` is an isometry.
    pub const fn isometric(var: Var) -> Self {
        Disc { var, inverted: false, spec: Specialization::Isometric }
    }

    pub fn specialization(&self) -> Specialization {
        self.spec
    }

    fn param_pow(&self, e: i64) -> Coefficient {
        Coefficient::var_pow(self.var, if self.inverted { -e } else { e })
    }

    fn qpair(&self, mu: i64, nu: i64) -> QPoly {
        let q = qpoly_qpair_shared(mu, nu, self.var);
        if self.inverted {
            q.invert_var(self.var)
        } else {
            (*q).clone()
        }
    }

    /// Generic product of two basis monomials (before any specialization).
    pub fn mul_monomials(&self, m1: DiscMonomial, m2: DiscMonomial) -> DiscElement {
        let c = self.param_pow(-m1.mu * m2.k as i64);
        let mu = m1.mu + m2.mu;
        let k = m1.k + m2.k;
        let mut r = DiscElement::term(DiscMonomial::new(k, mu), c.clone());
        for (m, qc) in self.qpair(m1.mu, m2.mu).terms() {
            r.add_term(DiscMonomial::new(k + m, mu), qc * &c);
        }
        r
    }

    pub fn mul(&self, r: &DiscElement, s: &DiscElement) -> Result<DiscElement> {
        let mut acc = DiscElement::zero();
        for (m1, c1) in r.iter() {
            for (m2, c2) in s.iter() {
                acc.add_scaled(&self.mul_monomials(*m1, *m2), &(c1 * c2));
            }
        }
        self.specialize(&acc)
    }

    pub fn pow(&self, r: &DiscElement, n: u32) -> Result<DiscElement> {
        let mut acc = DiscElement::basis(DiscMonomial::ONE);
        for _ in 0..n {
            acc = self.mul(&acc, r)?;
        }
        Ok(acc)
    }

    /// `(c X^k x^μ)* = conj(c) x^{-μ} X^k`, normalized.
    pub fn star(&self, r: &DiscElement) -> Result<DiscElement> {
        let mut acc = DiscElement::zero();
        for (m, c) in r.iter() {
            let t = self.mul_monomials(DiscMonomial::new(0, -m.mu), DiscMonomial::new(m.k, 0));
            acc.add_scaled(&t, &c.conj());
        }
        self.specialize(&acc)
    }

    /// Brings a generic result into this presentation. In the isometric
    /// case coefficients are evaluated at `var = 0` and `X` becomes a
    /// projection with `X x = 0`.
    pub fn specialize(&self, r: &DiscElement) -> Result<DiscElement> {
        match self.spec {
            Specialization::Generic => Ok(r.clone()),
            Specialization::Isometric => {
                let mut out = DiscElement::zero();
                for (m, c) in r.iter() {
                    let c = c.eval_zero(self.var)?;
                    if m.k >= 1 && m.mu > 0 {
                        continue;
                    }
                    out.add_term(DiscMonomial::new(m.k.min(1), m.mu), c);
                }
                Ok(out)
            }
        }
    }

    /// `x`, `x*`, `X` in this presentation.
    pub fn x(&self) -> DiscElement {
        DiscElement::basis(DiscMonomial::new(0, 1))
    }

    pub fn x_star(&self) -> DiscElement {
        DiscElement::basis(DiscMonomial::new(0, -1))
    }

    pub fn big_x(&self) -> DiscElement {
        DiscElement::basis(DiscMonomial::new(1, 0))
    }

    /// `x*x − t xx* − (1 − t)` for the presentation parameter `t`; zero on
    /// every well-formed presentation.
    pub fn relation_residual(&self) -> Result<DiscElement> {
        let t = self.param_pow(1);
        let lhs = self.mul(&self.x_star(), &self.x())?;
        let xxs = self.mul(&self.x(), &self.x_star())?;
        let one = DiscElement::basis(DiscMonomial::ONE);
        let rhs = xxs.scale(&t) + one.scale(&(&Coefficient::one() - &t));
        self.specialize(&(lhs - rhs))
    }
}

/// Generic disc product with parameter `p`.
impl Mul for &DiscElement {
    type Output = DiscElement;

    fn mul(self, o: &DiscElement) -> DiscElement {
        Disc::new(Var::P).mul(self, o).expect("generic disc products never specialize")
    }
}

/// The isomorphism `O(D_p) → O(D_{p^-1})`, `x ↦ x₋*`, extended
/// multiplicatively on the basis: `X^k x^μ ↦ κ(X)^k (x₋)^{-μ}` with
/// `κ(X) = 1 − x₋* x₋`.
pub fn kappa_iso(r: &DiscElement) -> DiscElement {
    let target = Disc::inverted(Var::P);
    let one = DiscElement::basis(DiscMonomial::ONE);
    let kx = &one - &target.mul(&target.x_star(), &target.x()).expect("generic");
    let mut acc = DiscElement::zero();
    for (m, c) in r.iter() {
        let xs = target.pow(&kx, m.k).expect("generic");
        let img = target.mul(&xs, &DiscElement::basis(DiscMonomial::new(0, -m.mu))).expect("generic");
        acc.add_scaled(&img, c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(k: u32, mu: i64) -> DiscElement {
        DiscElement::basis(DiscMonomial::new(k, mu))
    }

    fn c(s: &str) -> Coefficient {
        s.parse().unwrap()
    }

    #[test]
    fn basic_products() {
        let d = Disc::new(Var::P);
        assert_eq!(d.mul(&mono(0, -1), &mono(0, 1)).unwrap().to_string(), "1 - p X");
        // X x is itself a basis monomial; x X = p^-1 X x, i.e. Xx = p xX.
        assert_eq!(d.mul(&mono(1, 0), &mono(0, 1)).unwrap(), mono(1, 1));
        assert_eq!(d.mul(&mono(0, 1), &mono(1, 0)).unwrap(), DiscElement::term(DiscMonomial::new(1, 1), c("p^-1")));
        assert_eq!(
            d.mul(&mono(0, 2), &mono(0, -2)).unwrap().to_string(),
            "1 + (-p^-1 - 1) X + p^-1 X^2"
        );
    }

    #[test]
    fn star_examples() {
        let d = Disc::new(Var::P);
        assert_eq!(d.star(&mono(0, 1)).unwrap(), mono(0, -1));
        assert_eq!(d.star(&mono(1, 0)).unwrap(), mono(1, 0));
        assert_eq!(d.star(&mono(1, 1)).unwrap(), DiscElement::term(DiscMonomial::new(1, -1), c("p")));
    }

    #[test]
    fn relations_hold() {
        for d in [Disc::new(Var::P), Disc::inverted(Var::P), Disc::isometric(Var::P), Disc::new(Var::Q)] {
            assert!(d.relation_residual().unwrap().is_zero(), "{d:?}");
        }
    }

    #[test]
    fn kappa_maps_relation_to_target_relation() {
        let d = Disc::new(Var::P);
        let res = d.mul(&mono(0, -1), &mono(0, 1)).unwrap()
            - d.mul(&mono(0, 1), &mono(0, -1)).unwrap().scale(&c("p"))
            - mono(0, 0).scale(&c("1 - p"));
        assert!(res.is_zero());
        // κ applied to the unreduced words: κ(x*)κ(x) − p κ(x)κ(x*) − (1 − p)
        let t = Disc::inverted(Var::P);
        let kx = kappa_iso(&mono(0, 1));
        let kxs = kappa_iso(&mono(0, -1));
        assert_eq!(kx, mono(0, -1));
        let img = t.mul(&kxs, &kx).unwrap() - t.mul(&kx, &kxs).unwrap().scale(&c("p")) - mono(0, 0).scale(&c("1 - p"));
        assert!(img.is_zero());
        assert_eq!(kappa_iso(&mono(0, 0)), mono(0, 0));
    }

    #[test]
    fn isometric_collapse() {
        let d = Disc::isometric(Var::P);
        assert_eq!(d.mul(&mono(0, -1), &mono(0, 1)).unwrap(), mono(0, 0));
        assert!(d.mul(&mono(1, 0), &mono(0, 1)).unwrap().is_zero());
        assert_eq!(d.mul(&mono(1, 0), &mono(1, 0)).unwrap(), mono(1, 0));
        assert!(d.star(&mono(1, -1)).is_err());
    }

    #[test]
    fn printing() {
        assert_eq!(mono(0, 0).to_string(), "1");
        assert_eq!(mono(2, -3).to_string(), "X^2 x^-3");
        assert_eq!(DiscElement::zero().to_string(), "0");
    }
}
