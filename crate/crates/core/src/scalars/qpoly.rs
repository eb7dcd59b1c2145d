//! Polynomials in one commuting variable `Y` with Laurent coefficients, and
//! the q-deformed families that govern contraction of `x^μ x^ν`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Signed;

use super::coefficient::{Coefficient, Var};
use crate::error::{Error, Result};

/// `Σ c_m Y^m` with Laurent coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: BTreeMap<u32, Coefficient>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: BTreeMap::new() }
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::monomial(c, 0)
    }

    /// `c Y^m`.
    pub fn monomial(c: Coefficient, m: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(m, c);
        }
        QPoly { coeffs }
    }

    /// The variable `Y` itself.
    pub fn y() -> Self {
        Self::monomial(Coefficient::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, m: u32) -> Coefficient {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Coefficient {
        self.coeff(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Coefficient)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn add_term(&mut self, m: u32, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn scale(&self, c: &Coefficient) -> QPoly {
        let mut r = QPoly::zero();
        for (m, x) in &self.coeffs {
            r.add_term(*m, &(x * c));
        }
        r
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coefficient) -> Coefficient) -> QPoly {
        let mut r = QPoly::zero();
        for (m, x) in &self.coeffs {
            r.add_term(*m, &f(x));
        }
        r
    }

    /// The substitution `Y -> var^e Y`: the degree-`m` coefficient picks up
    /// `var^{e m}`.
    pub fn rescale(&self, e: i64, var: Var) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, c.shift(var, e * i64::from(*m)))).collect(),
        }
    }

    /// Applies `var -> var^{-1}` to every coefficient.
    pub fn invert_var(&self, var: Var) -> QPoly {
        self.map_coeffs(|c| c.invert_var(var))
    }

    /// Writes the polynomial with `name` for the variable, in the element
    /// text form (`(1 + p) A^2 - A`).
    pub fn fmt_in(&self, name: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        struct Helper<'a>(&'a QPoly, &'a str);
        impl fmt::Display for Helper<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, (m, c)) in self.0.coeffs.iter().enumerate() {
                    let mono = match m {
                        0 => String::new(),
                        1 => self.1.to_string(),
                        _ => format!("{}^{}", self.1, m),
                    };
                    crate::fmt_term(f, i == 0, c, &mono)?;
                }
                Ok(())
            }
        }
        Helper(self, name).to_string()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_in("Y"))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;

    fn add(self, o: &QPoly) -> QPoly {
        let mut r = self.clone();
        for (m, c) in &o.coeffs {
            r.add_term(*m, c);
        }
        r
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;

    fn sub(self, o: &QPoly) -> QPoly {
        self + &(-o)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;

    fn mul(self, o: &QPoly) -> QPoly {
        let mut r = QPoly::zero();
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &o.coeffs {
                r.add_term(m1 + m2, &(c1 * c2));
            }
        }
        r
    }
}

/// `[n]_v = 1 + v + ... + v^{n-1}`, with `[0]_v = 0`.
pub fn qint(n: u32, var: Var) -> Coefficient {
    let mut r = Coefficient::zero();
    for i in 0..n {
        r += &Coefficient::var_pow(var, i64::from(i));
    }
    r
}

type PascalRows = Vec<Vec<Arc<Coefficient>>>;

fn pascal_rows() -> &'static Mutex<HashMap<Var, PascalRows>> {
    static ROWS: OnceLock<Mutex<HashMap<Var, PascalRows>>> = OnceLock::new();
    ROWS.get_or_init(Default::default)
}

/// The deformed binomial coefficient `[n choose m]_v`, built row by row from
/// the Pascal rule `[n+1, m] = [n, m] + v^{n+1-m} [n, m-1]` and memoized.
pub fn qbinomial(n: u32, m: u32, var: Var) -> Result<Coefficient> {
    if m > n {
        return Err(Error::domain(format!("q-binomial [{n} choose {m}] needs m <= n")));
    }
    let mut cache = pascal_rows().lock().unwrap_or_else(|e| e.into_inner());
    let rows = cache.entry(var).or_insert_with(|| vec![vec![Arc::new(Coefficient::one())]]);
    while rows.len() <= n as usize {
        let k = rows.len() as i64; // building row k from row k-1
        let prev = rows.last().unwrap();
        let mut row = Vec::with_capacity(prev.len() + 1);
        for j in 0..=prev.len() {
            let mut c = Coefficient::zero();
            if j < prev.len() {
                c += &prev[j];
            }
            if j >= 1 {
                c += &prev[j - 1].shift(var, k - j as i64);
            }
            row.push(Arc::new(c));
        }
        rows.push(row);
    }
    Ok((*rows[n as usize][m as usize]).clone())
}

/// Closed form `Σ_{m=1}^{n} (-1)^m v^{-nm + m(m+1)/2} [n choose m]_v Y^m`, `n >= 1`.
fn q_closed_positive(n: u32, var: Var) -> QPoly {
    let mut r = QPoly::zero();
    let n64 = i64::from(n);
    for m in 1..=n {
        let m64 = i64::from(m);
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let c = qbinomial(n, m, var)
            .expect("m <= n")
            .mul_monomial(&BigInt::from(sign), super::Exponents::of(var, -n64 * m64 + m64 * (m64 + 1) / 2));
        r.add_term(m, &c);
    }
    r
}

/// `Q^v_μ` from the closed form: `Q^v_μ` for `μ > 0`, zero at `μ = 0`, and
/// `Q^{v^{-1}}_{-μ}(vY)` for `μ < 0`.
pub fn qpoly_q_closed(mu: i64, var: Var) -> QPoly {
    match mu {
        0 => QPoly::zero(),
        m if m > 0 => q_closed_positive(m as u32, var),
        m => q_closed_positive(m.unsigned_abs() as u32, var).invert_var(var).rescale(1, var),
    }
}

/// `Q^v_μ` from the recursions
/// `Q_1 = -Y`, `Q_{n+1}(Y) = (1 - Y) Q_n(v^{-1}Y) - Y` and
/// `Q_{-1} = -vY`, `Q_{-n-1}(Y) = (1 - vY) Q_{-n}(vY) - vY`.
pub fn qpoly_q_recursive(mu: i64, var: Var) -> QPoly {
    if mu == 0 {
        return QPoly::zero();
    }
    let one = QPoly::constant(Coefficient::one());
    let y = QPoly::y();
    if mu > 0 {
        let step = &one - &y;
        let mut q = -&y;
        for _ in 1..mu {
            q = &(&step * &q.rescale(-1, var)) - &y;
        }
        q
    } else {
        let vy = y.scale(&Coefficient::var_pow(var, 1));
        let step = &one - &vy;
        let mut q = -&vy;
        for _ in 1..mu.unsigned_abs() {
            q = &(&step * &q.rescale(1, var)) - &vy;
        }
        q
    }
}

type Cache<K> = Mutex<HashMap<K, Arc<QPoly>>>;

fn q_cache() -> &'static Cache<(i64, Var)> {
    static CACHE: OnceLock<Cache<(i64, Var)>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn qpair_cache() -> &'static Cache<(i64, i64, Var)> {
    static CACHE: OnceLock<Cache<(i64, i64, Var)>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized `Q^v_μ`. The first request for each index computes the closed
/// form and the recursion and panics if they disagree.
pub fn qpoly_q_shared(mu: i64, var: Var) -> Arc<QPoly> {
    if let Some(q) = q_cache().lock().unwrap_or_else(|e| e.into_inner()).get(&(mu, var)) {
        return q.clone();
    }
    let closed = qpoly_q_closed(mu, var);
    let rec = qpoly_q_recursive(mu, var);
    assert_eq!(closed, rec, "closed form and recursion disagree for Q^{var}_{mu}");
    let q = Arc::new(closed);
    q_cache().lock().unwrap_or_else(|e| e.into_inner()).insert((mu, var), q.clone());
    q
}

pub fn qpoly_q(mu: i64, var: Var) -> QPoly {
    (*qpoly_q_shared(mu, var)).clone()
}

/// Memoized `Q^v_{μ;ν}`: zero when `μν >= 0`, `Q^v_μ(Y)` when `|μ| <= |ν|`,
/// otherwise `Q^v_{-ν}(v^{-(μ+ν)} Y)`.
pub fn qpoly_qpair_shared(mu: i64, nu: i64, var: Var) -> Arc<QPoly> {
    if let Some(q) = qpair_cache().lock().unwrap_or_else(|e| e.into_inner()).get(&(mu, nu, var)) {
        return q.clone();
    }
    let q = if mu.signum() * nu.signum() >= 0 {
        QPoly::zero()
    } else if mu.abs() <= nu.abs() {
        qpoly_q(mu, var)
    } else {
        qpoly_q_shared(-nu, var).rescale(-(mu + nu), var)
    };
    let q = Arc::new(q);
    qpair_cache().lock().unwrap_or_else(|e| e.into_inner()).insert((mu, nu, var), q.clone());
    q
}

pub fn qpoly_qpair(mu: i64, nu: i64, var: Var) -> QPoly {
    (*qpoly_qpair_shared(mu, nu, var)).clone()
}

/// `Q(Y) -> Q(var^e Y)`.
pub fn qpoly_rescale(q: &QPoly, e: i64, var: Var) -> QPoly {
    q.rescale(e, var)
}

impl QPoly {
    /// Sum of absolute values of all integer coefficients; a size measure for
    /// diagnostics.
    pub fn weight(&self) -> BigInt {
        self.coeffs.values().flat_map(|c| c.terms().map(|(_, x)| x.abs())).sum()
    }
}
