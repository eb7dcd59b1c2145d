//! Finite linear combinations of basis elements with Laurent coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::scalars::Coefficient;

/// A basis element that can be printed inside a sum.
pub trait Basis: Ord + Clone {
    /// Text of the basis element as a factor of a term; empty for the unit
    /// of an algebra (so that `c · 1` prints as `c`).
    fn term_text(&self) -> String;
}

/// `Σ c_k · k` over basis elements `k`, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Coefficient>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: Coefficient) -> Self {
        let mut r = Self::zero();
        r.add_term(k, c);
        r
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Coefficient::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Coefficient)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> Coefficient {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, k: K, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            let v = if c.is_one() { x.clone() } else { x * c };
            self.add_term(k.clone(), v);
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut r = Self::zero();
        r.add_scaled(self, c);
        r
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coefficient) -> Coefficient) -> Self {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            r.add_term(k.clone(), f(c));
        }
        r
    }

    /// Fallible coefficient map; used for specializations of the parameters.
    pub fn try_map_coeffs<E>(&self, f: impl Fn(&Coefficient) -> Result<Coefficient, E>) -> Result<Self, E> {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            r.add_term(k.clone(), f(c)?);
        }
        Ok(r)
    }

    /// Keeps the terms whose basis element satisfies `pred`.
    pub fn filter(&self, pred: impl Fn(&K) -> bool) -> Self {
        LinComb {
            terms: self.terms.iter().filter(|(k, _)| pred(k)).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Re-indexes every term through `f`, merging collisions.
    pub fn map_basis<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> LinComb<L> {
        let mut r = LinComb::zero();
        for (k, c) in &self.terms {
            r.add_term(f(k), c.clone());
        }
        r
    }
}

impl<K: Ord + Clone> FromIterator<(K, Coefficient)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Coefficient)>>(iter: I) -> Self {
        let mut r = Self::zero();
        for (k, c) in iter {
            r.add_term(k, c);
        }
        r
    }
}

impl<K: Ord + Clone> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, o: &LinComb<K>) {
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, o: &LinComb<K>) {
        for (k, c) in &o.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl<K: Ord + Clone> Add<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;

    fn add(self, o: &LinComb<K>) -> LinComb<K> {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = LinComb<K>;

    fn add(mut self, o: LinComb<K>) -> LinComb<K> {
        self += &o;
        self
    }
}

impl<K: Ord + Clone> Sub<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;

    fn sub(self, o: &LinComb<K>) -> LinComb<K> {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = LinComb<K>;

    fn sub(mut self, o: LinComb<K>) -> LinComb<K> {
        self -= &o;
        self
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;

    fn neg(self) -> LinComb<K> {
        self.map_coeffs(|c| -c)
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = LinComb<K>;

    fn neg(self) -> LinComb<K> {
        -&self
    }
}

impl<K: Basis> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            crate::fmt_term(f, i == 0, c, &k.term_text())?;
        }
        Ok(())
    }
}

impl<K: Basis> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Writes `name^e`, omitting a unit exponent and the whole factor when `e = 0`.
pub(crate) fn push_power(out: &mut Vec<String>, name: &str, e: i64) {
    match e {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{e}")),
    }
}
