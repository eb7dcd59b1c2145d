//! Exact scalars: Laurent coefficients and q-deformed polynomial families.

mod coefficient;
mod qpoly;

pub use coefficient::{coeff_eval_zero, Coefficient, Exponents, Var};
pub use qpoly::{
    qbinomial, qint, qpoly_q, qpoly_q_closed, qpoly_q_recursive, qpoly_q_shared, qpoly_qpair,
    qpoly_qpair_shared, qpoly_rescale, QPoly,
};
