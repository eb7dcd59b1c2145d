//! Exact symbolic kernel for the quantum disc, the Heegaard quantum sphere
//! `O(S³_{pqθ})` and the Heegaard quantum lens spaces `O(L^N_{pqθ})`.
//!
//! Every algebra element is kept in its canonical normal form over the
//! Laurent ring `Z[p^±1, q^±1, w^±1]` (`w = e^{iπθ}`), so equality of
//! elements is equality of sparse maps.

pub mod error;
pub mod ktheory;
pub mod lens;
pub mod linear;
pub mod principal;
pub mod qalgebras;
pub mod report;
pub mod scalars;
pub mod suites;
pub mod units;

pub use error::{Error, Result};

use std::fmt;

use scalars::Coefficient;

/// Writes one term `c · mono` of a sum; `mono` is empty for the unit.
pub(crate) fn fmt_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Coefficient, mono: &str) -> fmt::Result {
    if c.len() == 1 {
        let neg = c.leading_negative();
        let abs = if neg { -c } else { c.clone() };
        f.write_str(match (first, neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        })?;
        if mono.is_empty() {
            write!(f, "{abs}")
        } else if abs.is_one() {
            f.write_str(mono)
        } else {
            write!(f, "{abs} {mono}")
        }
    } else {
        if !first {
            f.write_str(" + ")?;
        }
        if mono.is_empty() {
            write!(f, "({c})")
        } else {
            write!(f, "({c}) {mono}")
        }
    }
}
