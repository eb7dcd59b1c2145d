//! Dense integer matrices and the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged integer matrix"));
        }
        let entries = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Ok(IntMatrix { rows: rows.len(), cols, entries })
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.entries[i * d.len() + i] = x.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != o.rows {
            return Err(Error::domain(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut r = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    r.entries[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        Ok(r)
    }

    /// `M v` for a column vector.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::domain("vector length does not match column count"));
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum()).collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::domain("determinant of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        Ok(sign * &a[n * n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).d.diagonal_entries().iter().filter(|d| !d.is_zero()).count()
    }

    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Zero off the diagonal, nonnegative diagonal, and `d_i | d_{i+1}`.
    pub fn is_smith_form(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let d = self.diagonal_entries();
        d.iter().all(|x| !x.is_negative())
            && d.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_dst += f · row_src`.
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = f * self.get(src, j);
            self.entries[dst * self.cols + j] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = f * self.get(i, src);
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// `D = U M V` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Recomputes `U M V` and the determinants.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let ok = self.u.mul(m).and_then(|um| um.mul(&self.v)).map(|d| d == self.d).unwrap_or(false);
        ok && self.u.is_unimodular() && self.v.is_unimodular() && self.d.is_smith_form()
    }

    pub fn rank(&self) -> usize {
        self.d.diagonal_entries().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs(&a, t, t..rows, t..cols) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = -a.get(i, t).div_floor(&p);
                    a.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    clean &= a.get(i, t).is_zero();
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = -a.get(t, j).div_floor(&p);
                    a.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    clean &= a.get(t, j).is_zero();
                }
            }
            if !clean {
                // A remainder smaller than the pivot is left in row or column t.
                let (pi, pj) = min_abs(&a, t, t..rows, t..cols).expect("pivot is nonzero");
                if pi != t {
                    a.swap_rows(t, pi);
                    u.swap_rows(t, pi);
                }
                if pj != t {
                    a.swap_cols(t, pj);
                    v.swap_cols(t, pj);
                }
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(a.get(i, j) % &p).is_zero()));
            match bad {
                Some(i) => {
                    a.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d: a, v }
}

/// Position of a nonzero entry of least absolute value, restricted to the
/// cross through `(t, t)` once the pivot block is reached.
fn min_abs(a: &IntMatrix, t: usize, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let in_cross = !a.get(t, t).is_zero();
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if in_cross && i != t && j != t {
                continue;
            }
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag(rows: &[Vec<i64>]) -> Vec<BigInt> {
        let m = IntMatrix::from_rows(rows).unwrap();
        let s = smith_normal_form(&m);
        assert!(s.verify(&m), "{m}");
        s.d.diagonal_entries()
    }

    #[test]
    fn examples() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(snf_diag(&[vec![0, -3], vec![1, -1]]), b(&[1, 3]));
        assert_eq!(snf_diag(&[vec![1, 0], vec![0, 1]]), b(&[1, 1]));
        assert_eq!(snf_diag(&[vec![2, 0], vec![0, 3]]), b(&[1, 6]));
        assert_eq!(snf_diag(&[vec![1, -1], vec![0, 0]]), b(&[1, 0]));
        assert_eq!(snf_diag(&[vec![0]]), b(&[0]));
        assert_eq!(snf_diag(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), b(&[2, 6, 12]));
        assert_eq!(snf_diag(&[vec![6, 10, 15]]), b(&[1]));
    }

    #[test]
    fn determinant() {
        let m = IntMatrix::from_rows(&[vec![2, -1, 0], vec![1, 3, 2], vec![0, 5, -4]]).unwrap();
        assert_eq!(m.det().unwrap(), BigInt::from(-48));
        assert!(IntMatrix::identity(3).is_unimodular());
    }
}
