//! The Heegaard quantum sphere `O(S³_{pqθ})` in the basis
//! `A^k a^μ b^ν`, `B^k a^μ b^ν` (`k > 0` for the `B` family).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Mul;
use std::sync::{Arc, Mutex, OnceLock};

use crate::linear::{push_power, Basis, LinComb};
use crate::scalars::{qpoly_qpair_shared, Coefficient, Var};
use crate::Result;

use super::Specialization;

/// Which projection heads a basis monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Core {
    A,
    B,
}

impl Core {
    pub fn name(self) -> &'static str {
        match self {
            Core::A => "A",
            Core::B => "B",
        }
    }
}

/// `T^k a^μ b^ν`; negative exponents stand for adjoint powers.
///
/// Built through [`SphereMonomial::new`], which maps `B^0` to `A^0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SphereMonomial {
    core: Core,
    k: u32,
    mu: i64,
    nu: i64,
}

impl SphereMonomial {
    pub const ONE: SphereMonomial = SphereMonomial { core: Core::A, k: 0, mu: 0, nu: 0 };

    pub fn new(core: Core, k: u32, mu: i64, nu: i64) -> Self {
        let core = if k == 0 { Core::A } else { core };
        SphereMonomial { core, k, mu, nu }
    }

    /// `a^μ b^ν`.
    pub fn ab(mu: i64, nu: i64) -> Self {
        Self::new(Core::A, 0, mu, nu)
    }

    pub fn core(self) -> Core {
        self.core
    }

    pub fn k(self) -> u32 {
        self.k
    }

    pub fn mu(self) -> i64 {
        self.mu
    }

    pub fn nu(self) -> i64 {
        self.nu
    }

    /// Z-grading: `deg a = deg b = 1`, `deg A = deg B = 0`.
    pub fn degree(self) -> i64 {
        self.mu + self.nu
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }
}

impl Basis for SphereMonomial {
    fn term_text(&self) -> String {
        let mut parts = Vec::new();
        push_power(&mut parts, self.core.name(), self.k as i64);
        push_power(&mut parts, "a", self.mu);
        push_power(&mut parts, "b", self.nu);
        parts.join(" ")
    }
}

impl fmt::Display for SphereMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.term_text();
        f.write_str(if t.is_empty() { "1" } else { &t })
    }
}

pub type SphereElement = LinComb<SphereMonomial>;

impl SphereElement {
    pub fn one() -> Self {
        Self::basis(SphereMonomial::ONE)
    }

    pub fn scalar(c: Coefficient) -> Self {
        Self::term(SphereMonomial::ONE, c)
    }

    pub fn mono(core: Core, k: u32, mu: i64, nu: i64) -> Self {
        Self::basis(SphereMonomial::new(core, k, mu, nu))
    }

    pub fn a() -> Self {
        Self::mono(Core::A, 0, 1, 0)
    }

    pub fn b() -> Self {
        Self::mono(Core::A, 0, 0, 1)
    }

    pub fn a_star() -> Self {
        Self::mono(Core::A, 0, -1, 0)
    }

    pub fn b_star() -> Self {
        Self::mono(Core::A, 0, 0, -1)
    }

    /// `A = 1 − aa*`.
    pub fn big_a() -> Self {
        Self::mono(Core::A, 1, 0, 0)
    }

    /// `B = 1 − bb*`.
    pub fn big_b() -> Self {
        Self::mono(Core::B, 1, 0, 0)
    }

    /// `z = ab*`.
    pub fn z() -> Self {
        Self::mono(Core::A, 0, 1, -1)
    }

    /// The scalar `c` if this element is `c · 1` (including `0`).
    pub fn as_scalar(&self) -> Option<Coefficient> {
        if self.keys().all(|m| m.is_one()) {
            Some(self.coeff(&SphereMonomial::ONE))
        } else {
            None
        }
    }
}

type ProductCache = Mutex<HashMap<(SphereMonomial, SphereMonomial), Arc<SphereElement>>>;

fn product_cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Generic product of two basis monomials, memoized.
pub fn monomial_product(m1: SphereMonomial, m2: SphereMonomial) -> Arc<SphereElement> {
    if let Some(r) = product_cache().lock().unwrap().get(&(m1, m2)) {
        return r.clone();
    }
    let r = Arc::new(compute_monomial_product(m1, m2));
    product_cache().lock().unwrap().insert((m1, m2), r.clone());
    r
}

fn compute_monomial_product(m1: SphereMonomial, m2: SphereMonomial) -> SphereElement {
    // Move T₂^{k₂} to the left past a^{μ₁} b^{ν₁}.
    let mut c = match (m2.k, m2.core) {
        (0, _) => Coefficient::one(),
        (k, Core::A) => Coefficient::var_pow(Var::P, -m1.mu * k as i64),
        (k, Core::B) => Coefficient::var_pow(Var::Q, -m1.nu * k as i64),
    };
    // AB = 0.
    let (core, k) = match (m1.k, m2.k) {
        (0, _) => (m2.core, m2.k),
        (_, 0) => (m1.core, m1.k),
        (k1, k2) if m1.core == m2.core => (m1.core, k1 + k2),
        _ => return SphereElement::zero(),
    };
    // b^{ν₁} a^{μ₂} = ζ^{-2ν₁μ₂} a^{μ₂} b^{ν₁}.
    c = c.shift_zeta(-2 * m1.nu * m2.mu);
    let mu = m1.mu + m2.mu;
    let nu = m1.nu + m2.nu;
    let qa = qpoly_qpair_shared(m1.mu, m2.mu, Var::P);
    let qb = qpoly_qpair_shared(m1.nu, m2.nu, Var::Q);

    // T^k (1 + Qa(A))(1 + Qb(B)); the cross term dies since AB = 0.
    let mut r = SphereElement::term(SphereMonomial::new(core, k, mu, nu), c.clone());
    if k == 0 || core == Core::A {
        for (m, qc) in qa.terms() {
            r.add_term(SphereMonomial::new(Core::A, k + m, mu, nu), qc * &c);
        }
    }
    if k == 0 || core == Core::B {
        for (m, qc) in qb.terms() {
            r.add_term(SphereMonomial::new(Core::B, k + m, mu, nu), qc * &c);
        }
    }
    r
}

/// One presentation of the sphere algebra: symbolic `p, q` or `p = q = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Sphere {
    spec: Specialization,
}

impl Sphere {
    pub const GENERIC: Sphere = Sphere { spec: Specialization::Generic };
    pub const ISOMETRIC: Sphere = Sphere { spec: Specialization::Isometric };

    pub fn new(spec: Specialization) -> Self {
        Sphere { spec }
    }

    pub fn specialization(&self) -> Specialization {
        self.spec
    }

    pub fn is_isometric(&self) -> bool {
        self.spec == Specialization::Isometric
    }

    pub fn mul(&self, r: &SphereElement, s: &SphereElement) -> Result<SphereElement> {
        self.specialize(&mul_generic(r, s))
    }

    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a SphereElement>) -> Result<SphereElement> {
        let mut acc = SphereElement::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, r: &SphereElement, n: u32) -> Result<SphereElement> {
        let mut acc = SphereElement::one();
        for _ in 0..n {
            acc = self.mul(&acc, r)?;
        }
        Ok(acc)
    }

    pub fn star(&self, r: &SphereElement) -> Result<SphereElement> {
        self.specialize(&star_generic(r))
    }

    /// Maps a generic expression into this presentation. At `p = q = 0`
    /// coefficients are evaluated (negative powers are an error), `A` and
    /// `B` become projections, and `A a = B b = 0`.
    pub fn specialize(&self, r: &SphereElement) -> Result<SphereElement> {
        match self.spec {
            Specialization::Generic => Ok(r.clone()),
            Specialization::Isometric => {
                let mut out = SphereElement::zero();
                for (m, c) in r.iter() {
                    let c = c.eval_zero(Var::P)?.eval_zero(Var::Q)?;
                    let killed = m.k >= 1
                        && match m.core {
                            Core::A => m.mu > 0,
                            Core::B => m.nu > 0,
                        };
                    if !killed {
                        out.add_term(SphereMonomial::new(m.core, m.k.min(1), m.mu, m.nu), c);
                    }
                }
                Ok(out)
            }
        }
    }
}

fn mul_generic(r: &SphereElement, s: &SphereElement) -> SphereElement {
    let mut acc = SphereElement::zero();
    for (m1, c1) in r.iter() {
        for (m2, c2) in s.iter() {
            acc.add_scaled(&monomial_product(*m1, *m2), &(c1 * c2));
        }
    }
    acc
}

fn star_generic(r: &SphereElement) -> SphereElement {
    let mut acc = SphereElement::zero();
    for (m, c) in r.iter() {
        // (T^k a^μ b^ν)* = b^{-ν} a^{-μ} T^k
        let ba = monomial_product(SphereMonomial::ab(0, -m.nu), SphereMonomial::ab(-m.mu, 0));
        let t = mul_generic(&ba, &SphereElement::basis(SphereMonomial::new(m.core, m.k, 0, 0)));
        acc.add_scaled(&t, &c.conj());
    }
    acc
}

/// Generic sphere product.
impl Mul for &SphereElement {
    type Output = SphereElement;

    fn mul(self, o: &SphereElement) -> SphereElement {
        mul_generic(self, o)
    }
}

pub fn sphere_mul(r: &SphereElement, s: &SphereElement) -> SphereElement {
    mul_generic(r, s)
}

pub fn sphere_star(r: &SphereElement) -> SphereElement {
    star_generic(r)
}

/// `{ μ + ν }` over the monomials of `r`.
pub fn degree_support(r: &SphereElement) -> BTreeSet<i64> {
    r.keys().map(|m| m.degree()).collect()
}

/// True iff every degree occurring in `r` is divisible by `n`.
pub fn is_invariant(r: &SphereElement, n: u32) -> bool {
    r.keys().all(|m| m.degree().rem_euclid(n as i64) == 0)
}

/// Basis element of `O(S³) ⊗ O(S³)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TensorKey(pub SphereMonomial, pub SphereMonomial);

impl Basis for TensorKey {
    fn term_text(&self) -> String {
        format!("{} ⊗ {}", self.0, self.1)
    }
}

pub type TensorSquare = LinComb<TensorKey>;

/// `x ⊗ y`.
pub fn tensor(x: &SphereElement, y: &SphereElement) -> TensorSquare {
    let mut r = TensorSquare::zero();
    for (m1, c1) in x.iter() {
        for (m2, c2) in y.iter() {
            r.add_term(TensorKey(*m1, *m2), c1 * c2);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Coefficient {
        s.parse().unwrap()
    }

    #[test]
    fn spec_products() {
        let ba = &SphereElement::b() * &SphereElement::a();
        assert_eq!(ba, SphereElement::term(SphereMonomial::ab(1, 1), c("w^-2")));
        assert_eq!(ba.to_string(), "w^-2 a b");
        assert!((&SphereElement::big_a() * &SphereElement::big_b()).is_zero());
        assert_eq!((&SphereElement::a_star() * &SphereElement::a()).to_string(), "1 - p A");
        assert_eq!((&SphereElement::b_star() * &SphereElement::b()).to_string(), "1 - q B");
        assert_eq!((&SphereElement::a() * &SphereElement::a_star()).to_string(), "1 - A");
    }

    #[test]
    fn star_examples() {
        assert_eq!(sphere_star(&SphereElement::a()), SphereElement::a_star());
        let z = SphereElement::z();
        let zs = sphere_star(&z);
        assert_eq!(zs, SphereElement::term(SphereMonomial::ab(-1, 1), c("w^2")));
        assert_eq!(sphere_star(&zs), z);
        let ab = &SphereElement::big_a() * &SphereElement::b();
        assert_eq!(sphere_star(&ab), &SphereElement::big_a() * &SphereElement::b_star());
        assert_eq!(sphere_star(&SphereElement::big_a()), SphereElement::big_a());
    }

    #[test]
    fn grading() {
        let r = SphereElement::a() + SphereElement::mono(Core::A, 0, 0, 2);
        assert_eq!(degree_support(&r), BTreeSet::from([1, 2]));
        assert_eq!(degree_support(&SphereElement::z()), BTreeSet::from([0]));
        assert!(is_invariant(&SphereElement::z(), 5));
        assert!(is_invariant(&SphereElement::mono(Core::A, 0, 3, 0), 3));
        assert!(!is_invariant(&SphereElement::a(), 3));
        assert!(degree_support(&SphereElement::zero()).is_empty());
    }

    #[test]
    fn canonical_b_core() {
        assert_eq!(SphereMonomial::new(Core::B, 0, 1, 2), SphereMonomial::ab(1, 2));
        assert_eq!(SphereMonomial::new(Core::B, 2, -1, 3).to_string(), "B^2 a^-1 b^3");
    }

    #[test]
    fn isometric_rules() {
        let s = Sphere::ISOMETRIC;
        assert_eq!(s.mul(&SphereElement::a_star(), &SphereElement::a()).unwrap(), SphereElement::one());
        assert!(s.mul(&SphereElement::big_a(), &SphereElement::a()).unwrap().is_zero());
        let a2 = s.mul(&SphereElement::big_a(), &SphereElement::big_a()).unwrap();
        assert_eq!(a2, SphereElement::big_a());
        assert!(s.mul(&SphereElement::a(), &SphereElement::big_a()).is_err());
    }
}
