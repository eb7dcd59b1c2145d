//! Matrices over the pullback pieces and the Bass idempotent
//! `p_U = [[c(2−dc)d, c(2−dc)(1−dc)], [(1−dc)d, (1−dc)²]] ⊕ diag(1, 0)`.

use std::fmt;

use num_bigint::BigInt;

use super::crossed::{pullback_make, project_to_torus, CrossedElement, Leg, PullbackElement, TorusElement};
use super::groups::{class_order, lens_k_data, mayer_vietoris_solve, AbelianGroup};
use crate::report::{Check, Status};
use crate::scalars::Coefficient;
use crate::{Error, Result};

/// The ring operations a [`Matrix`] needs; `zero_like` / `one_like` keep
/// the twist or torus parameter of `self`.
pub trait RingElement: Clone + PartialEq + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Result<Self>;
    fn sub(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
}

macro_rules! ring_element {
    ($t:ty, $zero:expr, $one:expr) => {
        impl RingElement for $t {
            fn zero_like(&self) -> Self {
                $zero(self)
            }
            fn one_like(&self) -> Self {
                $one(self)
            }
            fn add(&self, o: &Self) -> Result<Self> {
                <$t>::add(self, o)
            }
            fn sub(&self, o: &Self) -> Result<Self> {
                <$t>::sub(self, o)
            }
            fn mul(&self, o: &Self) -> Result<Self> {
                <$t>::mul(self, o)
            }
        }
    };
}

ring_element!(CrossedElement, |s: &CrossedElement| CrossedElement::zero(s.twist), |s: &CrossedElement| CrossedElement::one(
    s.twist
));
ring_element!(TorusElement, |s: &TorusElement| TorusElement::zero(s.param), |s: &TorusElement| TorusElement::one(s.param));
ring_element!(
    PullbackElement,
    |s: &PullbackElement| PullbackElement::scalar(s.n(), Coefficient::zero()),
    |s: &PullbackElement| PullbackElement::scalar(s.n(), Coefficient::one())
);

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: RingElement> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::domain(format!("{rows}x{cols} matrix needs {} entries", rows * cols)));
        }
        Ok(Matrix { rows, cols, entries })
    }

    /// Square matrix with `d` on the diagonal.
    pub fn diagonal(d: Vec<T>) -> Result<Self> {
        let n = d.len();
        let zero = d.first().ok_or_else(|| Error::domain("empty diagonal"))?.zero_like();
        let mut entries = vec![zero; n * n];
        for (i, x) in d.into_iter().enumerate() {
            entries[i * n + i] = x;
        }
        Matrix::new(n, n, entries)
    }

    pub fn identity_like(x: &T, n: usize) -> Result<Self> {
        Self::diagonal(vec![x.one_like(); n])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<S: RingElement>(&self, f: impl Fn(&T) -> Result<S>) -> Result<Matrix<S>> {
        Ok(Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect::<Result<_>>()? })
    }

    fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> Result<T>) -> Result<Self> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::domain("matrix shapes differ"));
        }
        let entries = self.entries.iter().zip(&o.entries).map(|(x, y)| f(x, y)).collect::<Result<_>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, T::add)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, T::sub)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::domain("matrix shapes do not compose"));
        }
        let mut entries = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = self.get(i, 0).zero_like();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: o.cols, entries })
    }

    /// `[[a, b], [c, d]]` from four equally sized blocks.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let n = a.rows;
        if [a, b, c, d].iter().any(|m| m.rows != n || m.cols != n) {
            return Err(Error::domain("blocks must be square of equal size"));
        }
        let mut entries = Vec::with_capacity(4 * n * n);
        for (top, bottom) in [(a, b), (c, d)] {
            for i in 0..n {
                entries.extend((0..n).map(|j| top.get(i, j).clone()));
                entries.extend((0..n).map(|j| bottom.get(i, j).clone()));
            }
        }
        Matrix::new(2 * n, 2 * n, entries)
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.mul(self)? == *self)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.entries[i * self.cols + j].to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

pub type PullbackMatrix = Matrix<PullbackElement>;

/// The Bass idempotent for an invertible `u` over the torus and lifts
/// `c` of `u⁻¹` and `d` of `u` to the `+N` crossed product.
pub fn bass_idempotent(
    c: &Matrix<CrossedElement>,
    d: &Matrix<CrossedElement>,
    u: &Matrix<TorusElement>,
) -> Result<PullbackMatrix> {
    let n = u.rows();
    if u.cols() != n || c.rows() != n || c.cols() != n || d.rows() != n || d.cols() != n {
        return Err(Error::domain("c, d and U must be square of the same size"));
    }
    let proj_c = c.map(|x| project_to_torus(x, Leg::Plus))?;
    let proj_d = d.map(|x| project_to_torus(x, Leg::Plus))?;
    if proj_d != *u {
        return Err(Error::domain(format!("π₁(d) = {proj_d} is not U = {u}")));
    }
    let id_t = Matrix::identity_like(u.get(0, 0), n)?;
    if proj_c.mul(u)? != id_t || u.mul(&proj_c)? != id_t {
        return Err(Error::domain(format!("π₁(c) = {proj_c} is not U⁻¹")));
    }
    let twist = c.get(0, 0).twist;
    let id = Matrix::identity_like(c.get(0, 0), n)?;
    let dc = d.mul(c)?;
    let two_minus = id.add(&id)?.sub(&dc)?;
    let one_minus = id.sub(&dc)?;
    let c2 = c.mul(&two_minus)?;
    let plus = Matrix::blocks(&c2.mul(d)?, &c2.mul(&one_minus)?, &one_minus.mul(d)?, &one_minus.mul(&one_minus)?)?;

    let one_m = CrossedElement::one(-twist);
    let zero_m = CrossedElement::zero(-twist);
    let mut entries = Vec::with_capacity(4 * n * n);
    for i in 0..2 * n {
        for j in 0..2 * n {
            let minus = if i == j && i < n { one_m.clone() } else { zero_m.clone() };
            entries.push(pullback_make(plus.get(i, j).clone(), minus)?);
        }
    }
    Matrix::new(2 * n, 2 * n, entries)
}

/// `c = z̃₊*`, `d = z̃₊`, `U = Z`.
pub fn lens_bass_idempotent(n: u32) -> Result<PullbackMatrix> {
    let t = i64::from(n);
    let z = CrossedElement::z(t);
    let c = Matrix::new(1, 1, vec![z.star()?])?;
    let d = Matrix::new(1, 1, vec![z])?;
    let u = Matrix::new(1, 1, vec![TorusElement::mono(t, 1, 0)])?;
    bass_idempotent(&c, &d, &u)
}

/// Outcome of [`bass_class_report`].
#[derive(Clone, Debug, PartialEq)]
pub struct BassReport {
    pub n: u32,
    pub idempotent: PullbackMatrix,
    pub k0: AbelianGroup,
    pub k1: AbelianGroup,
    /// Order of `Bass[Z]` in `K₀`, read off as the class of `[Z]` in `coker M₁`.
    pub class_order: BigInt,
    pub checks: Vec<Check>,
}

pub fn bass_class_report(n: u32) -> Result<BassReport> {
    if n == 0 {
        return Err(Error::domain("N must be positive"));
    }
    let t = i64::from(n);
    let p = lens_bass_idempotent(n)?;
    let mut checks = Vec::new();
    let sq = p.mul(&p)?.sub(&p)?;
    checks.push(Check::new(
        "bass.idempotent",
        Status::from_bool(sq.entries().iter().all(PullbackElement::is_zero)),
        if sq.entries().iter().all(PullbackElement::is_zero) { "0".to_string() } else { sq.to_string() },
        format!("N={n}"),
    ));

    let z = CrossedElement::z(t);
    let zzs = z.mul(&z.star()?)?;
    let ss = pullback_make(zzs.clone(), CrossedElement::one(-t));
    checks.push(Check::new(
        "bass.projection-member",
        Status::from_bool(ss.is_ok()),
        ss.as_ref().map_or_else(|e| e.to_string(), |_| "0".to_string()),
        "(z z*, 1)",
    ));

    let pb = |a: CrossedElement, b: CrossedElement| pullback_make(a, b);
    let one = || CrossedElement::one(t);
    let zero = || CrossedElement::zero(t);
    let displayed = Matrix::new(
        2,
        2,
        vec![
            pb(one(), CrossedElement::one(-t))?,
            pb(zero(), CrossedElement::zero(-t))?,
            pb(zero(), CrossedElement::zero(-t))?,
            pb(one().sub(&zzs)?, CrossedElement::zero(-t))?,
        ],
    )?;
    let residual = p.sub(&displayed)?;
    checks.push(Check::new(
        "bass.displayed-matrix",
        Status::from_bool(residual.entries().iter().all(PullbackElement::is_zero)),
        if residual.entries().iter().all(PullbackElement::is_zero) { "0".to_string() } else { residual.to_string() },
        "[[(1,1),(0,0)],[(0,0),(1 - z z*,0)]]",
    ));

    let id = Matrix::identity_like(displayed.get(0, 0), 2)?;
    let corner = Matrix::diagonal(vec![PullbackElement::scalar(t, Coefficient::zero()), ss?])?;
    let residual = id.sub(&corner)?.sub(&p)?;
    checks.push(Check::new(
        "bass.identity-minus-projection",
        Status::from_bool(residual.entries().iter().all(PullbackElement::is_zero)),
        if residual.entries().iter().all(PullbackElement::is_zero) { "0".to_string() } else { residual.to_string() },
        "p_U = I - diag(0, (z z*, 1))",
    ));

    let (m0, m1) = lens_k_data(n)?;
    let (k0, k1) = mayer_vietoris_solve(&m0, &m1)?;
    let order = class_order(&m1, &[BigInt::from(1), BigInt::from(0)])?
        .ok_or_else(|| Error::domain("class of [Z] has infinite order"))?;
    let ok = order == BigInt::from(n) && k0.torsion_order() == order;
    checks.push(Check::new(
        "bass.class-order",
        Status::from_bool(ok),
        if ok { "0".to_string() } else { format!("order {order}, torsion of K0 {}", k0.torsion_order()) },
        if n == 1 { "torsion trivial; Bass[Z] = 0".to_string() } else { format!("Bass[Z] generates Z/{n}") },
    ));
    Ok(BassReport { n, idempotent: p, k0, k1, class_order: order, checks })
}
