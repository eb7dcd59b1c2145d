use std::collections::BTreeMap;

use heegaard_core::scalars::{
    coeff_eval_zero, qbinomial, qint, qpoly_q, qpoly_q_closed, qpoly_q_recursive, qpoly_qpair, qpoly_rescale, Coefficient,
    Exponents, QPoly, Var,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn c(s: &str) -> Coefficient {
    s.parse().unwrap()
}

// Dense univariate integer polynomials in `p`, used as an oracle.
type Dense = Vec<i128>;

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

/// Exact long division; panics on a nonzero remainder.
fn dense_div(a: &Dense, b: &Dense) -> Dense {
    let mut rem = a.clone();
    let lead = *b.last().unwrap();
    let mut q = vec![0; a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let t = rem[i + b.len() - 1];
        assert_eq!(t % lead, 0);
        q[i] = t / lead;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= q[i] * y;
        }
    }
    assert!(rem.iter().all(|x| *x == 0), "inexact division");
    q
}

fn dense_qint(n: u32) -> Dense {
    if n == 0 {
        vec![0]
    } else {
        vec![1; n as usize]
    }
}

fn dense_factorial(n: u32) -> Dense {
    (1..=n).fold(vec![1], |acc, k| dense_mul(&acc, &dense_qint(k)))
}

fn oracle_binomial(n: u32, m: u32) -> Coefficient {
    let d = dense_div(&dense_factorial(n), &dense_mul(&dense_factorial(m), &dense_factorial(n - m)));
    from_dense(&d)
}

fn from_dense(d: &Dense) -> Coefficient {
    let mut r = Coefficient::zero();
    for (i, x) in d.iter().enumerate() {
        r = &r + &Coefficient::monomial(BigInt::from(*x), Exponents::of(Var::P, i as i64));
    }
    r
}

// Sparse `Σ c Y^m p^e`, for the recursion oracle.
type Sparse = BTreeMap<(u32, i64), i64>;

fn sparse_add(a: &mut Sparse, k: (u32, i64), c: i64) {
    let e = a.entry(k).or_insert(0);
    *e += c;
    if *e == 0 {
        a.remove(&k);
    }
}

/// `Q_{n+1}(Y) = (1 − Y) Q_n(s Y) − Y` with `s = p^step`, started at `Q_0 = 0`.
fn oracle_q(n: u32, step: i64) -> Sparse {
    let mut q = Sparse::new();
    for _ in 0..n {
        let mut next = Sparse::new();
        for (&(m, e), &c) in &q {
            let e = e + step * i64::from(m);
            sparse_add(&mut next, (m, e), c);
            sparse_add(&mut next, (m + 1, e), -c);
        }
        sparse_add(&mut next, (1, 0), -1);
        q = next;
    }
    q
}

/// `Q_μ` for either sign: `Q_{-n}(Y) = Q^{p^-1}_n(pY)`.
fn oracle_q_signed(mu: i64) -> Sparse {
    if mu >= 0 {
        oracle_q(mu as u32, -1)
    } else {
        oracle_q(mu.unsigned_abs() as u32, 1).into_iter().map(|((m, e), c)| ((m, e + i64::from(m)), c)).collect()
    }
}

fn to_sparse(q: &QPoly) -> Sparse {
    let mut r = Sparse::new();
    for (m, c) in q.terms() {
        for (e, x) in c.terms() {
            assert_eq!((e.q, e.w), (0, 0));
            sparse_add(&mut r, (m, e.p), i64::try_from(x).unwrap());
        }
    }
    r
}

fn one() -> QPoly {
    QPoly::constant(Coefficient::one())
}

#[test]
fn qint_examples() {
    assert!(qint(0, Var::P).is_zero());
    assert_eq!(qint(1, Var::P), Coefficient::one());
    assert_eq!(qint(3, Var::P), from_dense(&vec![1, 1, 1]));
}

#[test]
fn qbinomial_matches_factorial_division() {
    for n in 0..=20 {
        for m in 0..=n {
            assert_eq!(qbinomial(n, m, Var::P).unwrap(), oracle_binomial(n, m), "n={n} m={m}");
        }
    }
    assert!(qbinomial(3, 4, Var::P).is_err());
}

#[test]
fn pascal_rule() {
    for n in 1..=20u32 {
        for m in 1..=n {
            let lhs = qbinomial(n + 1, m, Var::P).unwrap();
            let rhs = &qbinomial(n, m, Var::P).unwrap()
                + &(&Coefficient::var_pow(Var::P, i64::from(n + 1 - m)) * &qbinomial(n, m - 1, Var::P).unwrap());
            assert_eq!(lhs, rhs, "n={n} m={m}");
        }
    }
}

#[test]
fn q_examples() {
    let mut minus_y = QPoly::zero();
    minus_y.add_term(1, &c("-1"));
    assert_eq!(qpoly_q(1, Var::P), minus_y);
    assert_eq!(qpoly_q(-1, Var::P), minus_y.scale(&c("p")));
    let mut q2 = QPoly::zero();
    q2.add_term(2, &c("p^-1"));
    q2.add_term(1, &c("-1 - p^-1"));
    assert_eq!(qpoly_q(2, Var::P), q2);
    assert!(qpoly_qpair(3, 5, Var::P).is_zero());
    assert_eq!(qpoly_qpair(1, -2, Var::P), minus_y);
    assert_eq!(qpoly_qpair(2, -1, Var::P), minus_y.scale(&c("p^-1")));
    let mut y2 = QPoly::zero();
    y2.add_term(2, &Coefficient::one());
    assert_eq!(qpoly_rescale(&minus_y, 0, Var::P), minus_y);
    assert_eq!(qpoly_rescale(&minus_y, -1, Var::P), minus_y.scale(&c("p^-1")));
    assert_eq!(qpoly_rescale(&y2, 2, Var::P), y2.scale(&c("p^4")));
}

#[test]
fn q_against_recursion_oracle() {
    for mu in -15..=15 {
        let want = oracle_q_signed(mu);
        assert_eq!(to_sparse(&qpoly_q(mu, Var::P)), want, "mu={mu}");
        assert_eq!(to_sparse(&qpoly_q_closed(mu, Var::P)), want, "closed mu={mu}");
        assert_eq!(to_sparse(&qpoly_q_recursive(mu, Var::P)), want, "recursive mu={mu}");
    }
}

#[test]
fn eval_at_zero() {
    assert_eq!(coeff_eval_zero(&c("1 - p"), Var::P).unwrap(), Coefficient::one());
    assert!(coeff_eval_zero(&c("p^-1"), Var::P).is_err());
    assert_eq!(coeff_eval_zero(&c("q + p*q"), Var::P).unwrap(), c("q"));
}

#[test]
fn opposite_pair_vanishes_only_at_zero() {
    for mu in -12i64..=12 {
        assert_eq!(qpoly_qpair(mu, -mu, Var::P).is_zero(), mu == 0, "mu={mu}");
    }
}

proptest! {
    #[test]
    fn composition(m in 1i64..=12, n in 1i64..=12) {
        let qm = qpoly_q(m, Var::P);
        let rhs = &(&(&one() + &qm) * &qpoly_q(n, Var::P).rescale(-m, Var::P)) + &qm;
        prop_assert_eq!(qpoly_q(m + n, Var::P), rhs);
    }

    #[test]
    fn recursion_up(n in 1i64..=15) {
        let mut y = QPoly::zero();
        y.add_term(1, &Coefficient::one());
        let rhs = &(&(&one() - &y) * &qpoly_q(n, Var::P).rescale(-1, Var::P)) - &y;
        prop_assert_eq!(qpoly_q(n + 1, Var::P), rhs);
    }

    #[test]
    fn degree_and_constant_term(mu in -20i64..=20) {
        let q = qpoly_q(mu, Var::Q);
        prop_assert!(q.constant_term().is_zero());
        if mu != 0 {
            prop_assert_eq!(q.degree(), Some(mu.unsigned_abs() as u32));
        }
    }

    #[test]
    fn coefficient_ring_laws(a in coeff(), b in coeff(), d in coeff()) {
        prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
        prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.to_string().parse::<Coefficient>().unwrap(), a);
    }
}

fn coeff() -> impl Strategy<Value = Coefficient> {
    prop::collection::vec((-3i64..=3, -2i64..=2, -2i64..=2, -3i64..=3), 0..4).prop_map(|ts| {
        ts.into_iter().fold(Coefficient::zero(), |acc, (x, i, j, k)| &acc + &Coefficient::monomial(x, Exponents::new(i, j, k)))
    })
}
