//! Named identities of the sphere algebra, evaluated as `LHS − RHS`.

use crate::scalars::{qpoly_q, qpoly_qpair, Coefficient, QPoly, Var};
use crate::{Error, Result};

use super::sphere::{Core, SphereElement};

/// Identifier and number of integer parameters of every known identity.
pub const RELATION_IDS: &[(&str, usize)] = &[
    ("heegard:ab", 0),
    ("heegard:abstar", 0),
    ("heegard:disc-a", 0),
    ("heegard:disc-b", 0),
    ("heegard:AB", 0),
    ("heegard:Astar", 0),
    ("heegard:Bstar", 0),
    ("heegard:Aa", 0),
    ("heegard:Ab", 0),
    ("heegard:Ba", 0),
    ("heegard:Bb", 0),
    ("lenseB:Az", 0),
    ("lenseB:zB", 0),
    ("lenseB:zstarz", 0),
    ("lenseB:zzstar", 0),
    ("aaminus", 1),
    ("chlemma:ab", 1),
    ("chlemma:abstar", 1),
    ("lemma:a", 2),
    ("lemma:b", 2),
];

fn c(s: &str) -> Coefficient {
    s.parse().expect("static coefficient literal")
}

fn s(x: &SphereElement) -> SphereElement {
    super::sphere::sphere_star(x)
}

fn pw(x: &SphereElement, n: i64) -> SphereElement {
    let base = if n < 0 { s(x) } else { x.clone() };
    let mut acc = SphereElement::one();
    for _ in 0..n.unsigned_abs() {
        acc = &acc * &base;
    }
    acc
}

/// `P(T)` as a sphere element for `T ∈ {A, B}`.
pub fn qpoly_in(poly: &QPoly, core: Core) -> SphereElement {
    poly.terms().map(|(m, c)| (super::sphere::SphereMonomial::new(core, m, 0, 0), c.clone())).collect()
}

fn check_range(v: i64, bound: i64, what: &str) -> Result<()> {
    if v.abs() > bound {
        return Err(Error::domain(format!("{what} = {v} outside [-{bound}, {bound}]")));
    }
    Ok(())
}

/// `LHS − RHS` of the identity `id` in normal form; zero iff it holds.
pub fn relation_residual(id: &str, params: &[i64]) -> Result<SphereElement> {
    let arity = RELATION_IDS
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, n)| *n)
        .ok_or_else(|| Error::Unknown(id.to_string()))?;
    if params.len() != arity {
        return Err(Error::domain(format!("`{id}` takes {arity} parameter(s), got {}", params.len())));
    }
    let (a, b, aa, bb) = (SphereElement::a(), SphereElement::b(), SphereElement::big_a(), SphereElement::big_b());
    let one = SphereElement::one();
    let z = SphereElement::z();
    let r = match id {
        "heegard:ab" => &a * &b - (&b * &a).scale(&c("w^2")),
        "heegard:abstar" => &a * &s(&b) - (&s(&b) * &a).scale(&c("w^-2")),
        "heegard:disc-a" => &s(&a) * &a - (&a * &s(&a)).scale(&c("p")) - one.scale(&c("1 - p")),
        "heegard:disc-b" => &s(&b) * &b - (&b * &s(&b)).scale(&c("q")) - one.scale(&c("1 - q")),
        "heegard:AB" => &(&one - &(&a * &s(&a))) * &(&one - &(&b * &s(&b))),
        "heegard:Astar" => s(&aa) - aa.clone(),
        "heegard:Bstar" => s(&bb) - bb.clone(),
        "heegard:Aa" => &aa * &a - (&a * &aa).scale(&c("p")),
        "heegard:Ab" => &aa * &b - &b * &aa,
        "heegard:Ba" => &bb * &a - &a * &bb,
        "heegard:Bb" => &bb * &b - (&b * &bb).scale(&c("q")),
        "lenseB:Az" => &aa * &z - (&z * &aa).scale(&c("p")),
        "lenseB:zB" => &z * &bb - (&bb * &z).scale(&c("q")),
        "lenseB:zstarz" => &s(&z) * &z - (&one - &aa.scale(&c("p")) - bb.clone()),
        "lenseB:zzstar" => &z * &s(&z) - (&one - &aa - bb.scale(&c("q"))),
        "aaminus" => {
            let n = params[0];
            if !(1..=12).contains(&n) {
                return Err(Error::domain(format!("aaminus needs 1 <= n <= 12, got {n}")));
            }
            let asn = pw(&a, -n);
            let coef = &Coefficient::var_pow(Var::P, n) - &Coefficient::one();
            &a * &asn - &asn * &a - (&aa * &pw(&a, -(n - 1))).scale(&coef)
        }
        "chlemma:ab" | "chlemma:abstar" => {
            let mu = params[0];
            check_range(mu, 12, "mu")?;
            // x y = ζ^{2σ} y x with σ = ±1
            let (y, sigma) = if id == "chlemma:ab" { (b.clone(), 1) } else { (s(&b), -1) };
            let phase = Coefficient::zeta_pow(sigma * mu * (mu - 1));
            &pw(&a, mu) * &pw(&y, mu) - pw(&(&a * &y), mu).scale(&phase)
        }
        "lemma:a" | "lemma:b" => {
            let (mu, nu) = (params[0], params[1]);
            check_range(mu, 12, "mu")?;
            check_range(nu, 12, "nu")?;
            let (x, var, core) = if id == "lemma:a" { (a, Var::P, Core::A) } else { (b, Var::Q, Core::B) };
            let lhs = &pw(&x, mu) * &pw(&x, nu);
            let rhs = &(&one + &qpoly_in(&qpoly_qpair(mu, nu, var), core)) * &pw(&x, mu + nu);
            lhs - rhs
        }
        _ => unreachable!("identifier validated above"),
    };
    Ok(r)
}

/// `x^μ x^{-μ} − (1 + Q_μ(T))` for the generator `x = a` (`T = A`) or `b`.
pub fn lemma_n_eq_m(core: Core, mu: i64) -> SphereElement {
    let (x, var) = match core {
        Core::A => (SphereElement::a(), Var::P),
        Core::B => (SphereElement::b(), Var::Q),
    };
    &pw(&x, mu) * &pw(&x, -mu) - (SphereElement::one() + qpoly_in(&qpoly_q(mu, var), core))
}

/// `x^n` with `x^{-n} = (x*)^n`, in the generic sphere.
pub fn signed_pow(x: &SphereElement, n: i64) -> SphereElement {
    pw(x, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixed_relations_vanish() {
        for (id, arity) in RELATION_IDS {
            if *arity == 0 {
                assert!(relation_residual(id, &[]).unwrap().is_zero(), "{id}");
            }
        }
    }

    #[test]
    fn parametric_relations_vanish() {
        for n in 1..=6 {
            assert!(relation_residual("aaminus", &[n]).unwrap().is_zero(), "aaminus {n}");
        }
        for mu in -5..=5 {
            assert!(relation_residual("chlemma:ab", &[mu]).unwrap().is_zero(), "ab {mu}");
            assert!(relation_residual("chlemma:abstar", &[mu]).unwrap().is_zero(), "abstar {mu}");
            assert!(lemma_n_eq_m(Core::A, mu).is_zero());
            assert!(lemma_n_eq_m(Core::B, mu).is_zero());
        }
        assert!(relation_residual("lemma:a", &[3, -5]).unwrap().is_zero());
        assert!(relation_residual("lemma:b", &[-4, 2]).unwrap().is_zero());
    }

    #[test]
    fn bad_ids_and_params() {
        assert!(matches!(relation_residual("nope", &[]), Err(Error::Unknown(_))));
        assert!(relation_residual("aaminus", &[]).is_err());
        assert!(relation_residual("aaminus", &[13]).is_err());
    }
}
