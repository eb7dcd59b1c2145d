//! Sparse Laurent polynomials in `p`, `q` and the phase unit `w`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// One of the two real deformation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    P,
    Q,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::P => "p",
            Var::Q => "q",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Var::P),
            "q" => Ok(Var::Q),
            other => Err(Error::Unknown(other.to_string())),
        }
    }
}

/// Exponent triple of a Laurent monomial `p^p q^q w^w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponents {
    pub p: i64,
    pub q: i64,
    pub w: i64,
}

impl Exponents {
    pub const ZERO: Exponents = Exponents { p: 0, q: 0, w: 0 };

    pub fn new(p: i64, q: i64, w: i64) -> Self {
        Exponents { p, q, w }
    }

    pub fn of(var: Var, e: i64) -> Self {
        match var {
            Var::P => Exponents::new(e, 0, 0),
            Var::Q => Exponents::new(0, e, 0),
        }
    }

    pub fn get(self, var: Var) -> i64 {
        match var {
            Var::P => self.p,
            Var::Q => self.q,
        }
    }

    fn set(&mut self, var: Var, e: i64) {
        match var {
            Var::P => self.p = e,
            Var::Q => self.q = e,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

impl Add for Exponents {
    type Output = Exponents;

    fn add(self, o: Exponents) -> Exponents {
        Exponents::new(self.p + o.p, self.q + o.q, self.w + o.w)
    }
}

impl Neg for Exponents {
    type Output = Exponents;

    fn neg(self) -> Exponents {
        Exponents::new(-self.p, -self.q, -self.w)
    }
}

/// An element of `Z[p^±1, q^±1, w^±1]`, where `w` stands for the phase
/// `e^{iπθ}` with θ irrational (so `w` satisfies no relation).
///
/// Stored as a sparse map from exponent triples to nonzero integers; the map
/// is the canonical form, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coefficient {
    terms: BTreeMap<Exponents, BigInt>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, Exponents::ZERO)
    }

    pub fn monomial(c: impl Into<BigInt>, e: Exponents) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Coefficient { terms }
    }

    /// `var^e`.
    pub fn var_pow(var: Var, e: i64) -> Self {
        Self::monomial(1, Exponents::of(var, e))
    }

    /// `w^e = e^{iπθe}`.
    pub fn zeta_pow(e: i64) -> Self {
        Self::monomial(1, Exponents::new(0, 0, e))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Exponents::ZERO).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exponents) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// The integer value if `self` has no monomial part.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Exponents::ZERO).cloned(),
            _ => None,
        }
    }

    /// If `self` is `±p^i q^j w^k`, returns the sign and exponents.
    pub fn as_unit_monomial(&self) -> Option<(i8, Exponents)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, *e))
        } else if (-c).is_one() {
            Some((-1, *e))
        } else {
            None
        }
    }

    /// Multiplicative inverse in the Laurent ring; only `±` monomials invert.
    pub fn inverse(&self) -> Option<Coefficient> {
        self.as_unit_monomial().map(|(s, e)| Coefficient::monomial(s, -e))
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies by the monomial `c * p^.. q^.. w^..`.
    pub fn mul_monomial(&self, c: &BigInt, e: Exponents) -> Coefficient {
        if c.is_zero() {
            return Coefficient::zero();
        }
        Coefficient { terms: self.terms.iter().map(|(k, v)| (*k + e, v * c)).collect() }
    }

    /// Multiplies by `w^k`.
    pub fn shift_zeta(&self, k: i64) -> Coefficient {
        self.mul_monomial(&BigInt::one(), Exponents::new(0, 0, k))
    }

    /// Multiplies by `var^e`.
    pub fn shift(&self, var: Var, e: i64) -> Coefficient {
        self.mul_monomial(&BigInt::one(), Exponents::of(var, e))
    }

    pub fn scale(&self, c: &BigInt) -> Coefficient {
        self.mul_monomial(c, Exponents::ZERO)
    }

    pub fn pow(&self, n: u32) -> Coefficient {
        let mut acc = Coefficient::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Complex conjugation: fixes the real parameters `p`, `q` and inverts `w`.
    pub fn conj(&self) -> Coefficient {
        Coefficient {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponents::new(e.p, e.q, -e.w), c.clone()))
                .collect(),
        }
    }

    /// The substitution `var -> var^{-1}`, a ring automorphism.
    pub fn invert_var(&self, var: Var) -> Coefficient {
        Coefficient {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = *e;
                    e.set(var, -e.get(var));
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Smallest exponent of `var`, or `None` for zero.
    pub fn min_exponent(&self, var: Var) -> Option<i64> {
        self.terms.keys().map(|e| e.get(var)).min()
    }

    /// Specializes `var = 0`: drops terms with positive `var`-exponent.
    ///
    /// Fails when a negative power of `var` is present, since the localization
    /// at `var` has no value at zero.
    pub fn eval_zero(&self, var: Var) -> Result<Coefficient> {
        if self.min_exponent(var).is_some_and(|m| m < 0) {
            return Err(Error::EvalAtZero { var, coefficient: self.to_string() });
        }
        Ok(Coefficient {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(var) == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        })
    }
}

/// Free-function form of [`Coefficient::eval_zero`].
pub fn coeff_eval_zero(c: &Coefficient, var: Var) -> Result<Coefficient> {
    c.eval_zero(var)
}

impl From<i64> for Coefficient {
    fn from(c: i64) -> Self {
        Coefficient::int(c)
    }
}

impl From<Var> for Coefficient {
    fn from(v: Var) -> Self {
        Coefficient::var_pow(v, 1)
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, o: &Coefficient) {
        for (e, c) in &o.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, o: &Coefficient) {
        for (e, c) in &o.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add<&Coefficient> for &Coefficient {
    type Output = Coefficient;

    fn add(self, o: &Coefficient) -> Coefficient {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Add for Coefficient {
    type Output = Coefficient;

    fn add(mut self, o: Coefficient) -> Coefficient {
        self += &o;
        self
    }
}

impl Sub<&Coefficient> for &Coefficient {
    type Output = Coefficient;

    fn sub(self, o: &Coefficient) -> Coefficient {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;

    fn sub(mut self, o: Coefficient) -> Coefficient {
        self -= &o;
        self
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        Coefficient { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        -&self
    }
}

impl Mul<&Coefficient> for &Coefficient {
    type Output = Coefficient;

    fn mul(self, o: &Coefficient) -> Coefficient {
        let (small, large) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            let (e, c) = small.terms.iter().next().unwrap();
            return large.mul_monomial(c, *e);
        }
        let mut r = Coefficient::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(*e1 + *e2, c1 * c2);
            }
        }
        r
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;

    fn mul(self, o: Coefficient) -> Coefficient {
        &self * &o
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponents) -> fmt::Result {
    let mut first = true;
    for (name, x) in [("p", e.p), ("q", e.q), ("w", e.w)] {
        if x == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if x == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{x}")?;
        }
    }
    Ok(())
}

impl Coefficient {
    /// True for a single term with a negative integer.
    pub(crate) fn leading_negative(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.is_negative())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if e.is_zero() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coefficient({self})")
    }
}

/// Parser for the coefficient text form: integers, `p`, `q`, `w`, `^` with
/// integer exponents, `*` or whitespace for products, `+`/`-`, parentheses.
struct CoeffParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl CoeffParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<BigInt>().map_err(|_| Error::parse(start, "expected an integer"))
    }

    fn sum(&mut self) -> Result<Coefficient> {
        let mut acc = Coefficient::zero();
        let mut sign = 1;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let t = self.product()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Coefficient> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_digit() || matches!(c, b'p' | b'q' | b'w' | b'(') => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Coefficient> {
        let base = match self.peek() {
            Some(c) if c.is_ascii_digit() => Coefficient::int(self.int()?),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(c @ (b'p' | b'q' | b'w')) => {
                self.pos += 1;
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let at = self.pos;
                    i64::try_from(self.int()?).map_err(|_| Error::parse(at, "exponent out of range"))?
                } else {
                    1
                };
                let ex = match c {
                    b'p' => Exponents::new(e, 0, 0),
                    b'q' => Exponents::new(0, e, 0),
                    _ => Exponents::new(0, 0, e),
                };
                return Ok(Coefficient::monomial(1, ex));
            }
            _ => return Err(Error::parse(self.pos, "expected a coefficient factor")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = i64::try_from(self.int()?).map_err(|_| Error::parse(at, "exponent out of range"))?;
            if e >= 0 {
                return Ok(base.pow(e as u32));
            }
            let inv = base
                .inverse()
                .ok_or_else(|| Error::parse(at, "negative power of a non-invertible coefficient"))?;
            return Ok(inv.pow(e.unsigned_abs() as u32));
        }
        Ok(base)
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = CoeffParser { src: s.as_bytes(), pos: 0 };
        let c = p.sum()?;
        if p.peek().is_some() {
            return Err(Error::parse(p.pos, "trailing input"));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Coefficient {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_printing_orders_exponents() {
        let x = &Coefficient::var_pow(Var::P, -1) * &Coefficient::zeta_pow(2);
        let y = Coefficient::one() - x;
        assert_eq!(y.to_string(), "-p^-1*w^2 + 1");
        assert_eq!(c("1 - p^-1*w^2"), y);
        assert_eq!(Coefficient::zero().to_string(), "0");
        assert_eq!(c("3*p*q - 2").to_string(), "-2 + 3*p*q");
    }

    #[test]
    fn ring_ops_are_exact() {
        let a = c("1 + p");
        let b = c("1 - p");
        assert_eq!(&a * &b, c("1 - p^2"));
        assert_eq!(&a - &a, Coefficient::zero());
        assert_eq!(c("w^3") * c("w^-1"), c("w^2"));
        assert_eq!(c("(1+p)^2"), c("1 + 2 p + p^2"));
    }

    #[test]
    fn conjugation_inverts_only_zeta() {
        assert_eq!(c("p*w^2 + q").conj(), c("p*w^-2 + q"));
    }

    #[test]
    fn eval_at_zero() {
        assert_eq!(c("1 - p").eval_zero(Var::P).unwrap(), Coefficient::one());
        assert_eq!(c("q + p*q").eval_zero(Var::P).unwrap(), c("q"));
        assert!(matches!(c("p^-1").eval_zero(Var::P), Err(Error::EvalAtZero { .. })));
        assert_eq!(c("p^-1 + q").eval_zero(Var::Q).unwrap(), c("p^-1"));
    }

    #[test]
    fn units_are_signed_monomials() {
        assert_eq!(c("-p*w").inverse(), Some(c("-p^-1*w^-1")));
        assert_eq!(c("5").inverse(), None);
        assert_eq!(c("1 + p").inverse(), None);
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!("1 + ".parse::<Coefficient>(), Err(Error::Parse { .. })));
        assert!(matches!("p^".parse::<Coefficient>(), Err(Error::Parse { .. })));
        assert!(matches!("(1+p)^-1".parse::<Coefficient>(), Err(Error::Parse { .. })));
    }
}
