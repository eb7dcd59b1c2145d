//! Finitely generated abelian groups, cokernels, and the lens-space
//! Mayer-Vietoris solver.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::snf::{smith_normal_form, IntMatrix};
use crate::{Error, Result};

/// `Z/d₁ ⊕ … ⊕ Z/d_k ⊕ Z^r` with `2 ≤ d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { torsion: Vec::new(), free_rank: rank }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(&[n.into()], 0)
    }

    /// Canonical form of `⊕ Z/n_i ⊕ Z^rank`; orders `0` count as free and
    /// `±1` are dropped.
    pub fn from_cyclic_orders(orders: &[BigInt], rank: usize) -> Self {
        let zeros = orders.iter().filter(|n| n.is_zero()).count();
        let finite: Vec<BigInt> = orders.iter().filter(|n| !n.is_zero()).map(|n| n.abs()).collect();
        let d = smith_normal_form(&IntMatrix::diagonal(&finite)).d.diagonal_entries();
        let torsion = d.into_iter().filter(|x| *x > BigInt::one()).collect();
        AbelianGroup { torsion, free_rank: rank + zeros }
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn direct_sum(&self, o: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&o.torsion).cloned().collect();
        Self::from_cyclic_orders(&orders, self.free_rank + o.free_rank)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Accepts summands `0`, `Z`, `Z^r`, `Z/n` separated by `⊕` or `+`.
    fn from_str(s: &str) -> Result<Self> {
        let mut orders = Vec::new();
        let mut rank = 0usize;
        for part in s.split(['⊕', '+']).map(str::trim) {
            let bad = || Error::parse(0, format!("bad summand {part:?}"));
            if part == "0" {
                continue;
            } else if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(n) = part.strip_prefix("Z/").or_else(|| part.strip_prefix("Z_")) {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                if n.is_zero() {
                    return Err(bad());
                }
                orders.push(n);
            } else {
                return Err(bad());
            }
        }
        Ok(Self::from_cyclic_orders(&orders, rank))
    }
}

/// Cokernel of `M : Z^cols → Z^rows` acting on column vectors.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let s = smith_normal_form(m);
    let d: Vec<BigInt> = s.d.diagonal_entries().into_iter().filter(|x| !x.is_zero()).collect();
    AbelianGroup::from_cyclic_orders(&d, m.rows() - d.len())
}

pub fn kernel_rank(m: &IntMatrix) -> usize {
    m.cols() - m.rank()
}

/// Order of the class of `v` in `coker M`; `None` when it has infinite order.
pub fn class_order(m: &IntMatrix, v: &[BigInt]) -> Result<Option<BigInt>> {
    let s = smith_normal_form(m);
    let w = s.u.apply(v)?;
    let d = s.d.diagonal_entries();
    let mut order = BigInt::one();
    for (i, wi) in w.iter().enumerate() {
        match d.get(i).filter(|x| !x.is_zero()) {
            Some(di) => order = order.lcm(&(di / di.gcd(wi))),
            None if wi.is_zero() => {}
            None => return Ok(None),
        }
    }
    Ok(Some(order))
}

/// Difference maps `π̃₁* − π̃₂*` on `K₀` and on `K₁` for the lens pullback,
/// from the generator images `m ↦ (m, 0)` on `K₀` and `n ↦ (0, n)`,
/// `n ↦ (Nn, n)` on `K₁`.
pub fn lens_k_data(n: u32) -> Result<(IntMatrix, IntMatrix)> {
    if n == 0 {
        return Err(Error::domain("N must be positive"));
    }
    let n = i64::from(n);
    let m0 = IntMatrix::from_rows(&[vec![1i64, -1], vec![0, 0]])?;
    let m1 = IntMatrix::from_rows(&[vec![0i64, -n], vec![1, -1]])?;
    Ok((m0, m1))
}

/// `K₀ = coker M₁ ⊕ ker M₀` and `K₁ = coker M₀ ⊕ ker M₁`.
///
/// The extensions `0 → coker M₁ → K₀ → ker M₀ → 0` and
/// `0 → coker M₀ → K₁ → ker M₁ → 0` have free quotients (subgroups of
/// free groups), so both split.
pub fn mayer_vietoris_solve(m0: &IntMatrix, m1: &IntMatrix) -> Result<(AbelianGroup, AbelianGroup)> {
    if m0.rows() != m1.cols() || m1.rows() != m0.cols() {
        return Err(Error::domain(format!(
            "incompatible shapes {}x{} and {}x{}",
            m0.rows(),
            m0.cols(),
            m1.rows(),
            m1.cols()
        )));
    }
    let k0 = cokernel(m1).direct_sum(&AbelianGroup::free(kernel_rank(m0)));
    let k1 = cokernel(m0).direct_sum(&AbelianGroup::free(kernel_rank(m1)));
    Ok((k0, k1))
}

/// `(K₀, K₁)` of the lens space.
pub fn lens_k_groups(n: u32) -> Result<(AbelianGroup, AbelianGroup)> {
    let (m0, m1) = lens_k_data(n)?;
    mayer_vietoris_solve(&m0, &m1)
}
