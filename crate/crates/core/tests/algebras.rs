use std::collections::BTreeSet;

use heegaard_core::qalgebras::{
    degree_support, is_invariant, kappa_iso, relation_residual, sphere_star, Core, Disc, DiscElement, DiscMonomial, Sphere,
    SphereElement, SphereMonomial,
};
use heegaard_core::scalars::{qpoly_q, qpoly_qpair, Coefficient, Exponents, Var};
use proptest::prelude::*;

fn c(s: &str) -> Coefficient {
    s.parse().unwrap()
}

fn dm(k: u32, mu: i64) -> DiscElement {
    DiscElement::basis(DiscMonomial::new(k, mu))
}

fn sm(core: Core, k: u32, mu: i64, nu: i64) -> SphereElement {
    SphereElement::mono(core, k, mu, nu)
}

const P: Disc = Disc::new(Var::P);

/// `1 + Q(X)` as a disc element.
fn one_plus_q_of_x(q: &heegaard_core::scalars::QPoly) -> DiscElement {
    let mut r = dm(0, 0);
    for (m, coeff) in q.terms() {
        r.add_term(DiscMonomial::new(m, 0), coeff.clone());
    }
    r
}

#[test]
fn disc_products() {
    assert_eq!(P.mul(&dm(0, -1), &dm(0, 1)).unwrap(), dm(0, 0) - dm(1, 0).scale(&c("p")));
    assert_eq!(P.mul(&dm(1, 0), &dm(0, 1)).unwrap(), dm(1, 1));
    assert_eq!(P.mul(&dm(0, 1), &dm(1, 0)).unwrap(), dm(1, 1).scale(&c("p^-1")));

    // x x x* x* by hand: xx* = 1 − X and X x* = p^-1 x* X.
    let want = dm(0, 0) - dm(1, 0).scale(&c("1 + p^-1")) + dm(2, 0).scale(&c("p^-1"));
    let x2 = P.pow(&P.x(), 2).unwrap();
    let xs2 = P.pow(&P.x_star(), 2).unwrap();
    assert_eq!(P.mul(&x2, &xs2).unwrap(), want);
    let stepwise = P.mul(&P.mul(&P.mul(&P.x(), &P.x()).unwrap(), &P.x_star()).unwrap(), &P.x_star()).unwrap();
    assert_eq!(stepwise, want);
}

#[test]
fn disc_star() {
    assert_eq!(P.star(&P.x()).unwrap(), P.x_star());
    assert_eq!(P.star(&dm(1, 0)).unwrap(), dm(1, 0));
    assert_eq!(P.star(&dm(1, 1)).unwrap(), dm(1, -1).scale(&c("p")));
}

#[test]
fn kappa_sends_relation_to_zero() {
    assert_eq!(kappa_iso(&P.x()), dm(0, -1));
    assert_eq!(kappa_iso(&dm(0, 0)), dm(0, 0));
    let t = Disc::inverted(Var::P);
    let (x, xs) = (kappa_iso(&P.x()), kappa_iso(&P.x_star()));
    let image = t.mul(&xs, &x).unwrap() - t.mul(&x, &xs).unwrap().scale(&c("p")) - dm(0, 0).scale(&c("1 - p"));
    assert!(image.is_zero(), "{image}");
}

#[test]
fn isometric_disc() {
    let t = Disc::isometric(Var::P);
    assert_eq!(t.mul(&t.x_star(), &t.x()).unwrap(), dm(0, 0));
    assert_eq!(t.mul(&t.x(), &t.x_star()).unwrap(), dm(0, 0) - dm(1, 0));
    assert!(t.relation_residual().unwrap().is_zero());
}

#[test]
fn sphere_products() {
    let (a, b) = (SphereElement::a(), SphereElement::b());
    assert_eq!(&b * &a, (&a * &b).scale(&c("w^-2")));
    assert!((&SphereElement::big_a() * &SphereElement::big_b()).is_zero());
    assert_eq!(&SphereElement::a_star() * &a, SphereElement::one() - SphereElement::big_a().scale(&c("p")));
    assert_eq!(&a * &SphereElement::a_star(), SphereElement::one() - SphereElement::big_a());
}

#[test]
fn sphere_star_examples() {
    let z = SphereElement::z();
    assert_eq!(sphere_star(&SphereElement::a()), SphereElement::a_star());
    assert_eq!(sphere_star(&z), &SphereElement::b() * &SphereElement::a_star());
    assert_eq!(sphere_star(&sphere_star(&z)), z);
    let ab = &SphereElement::big_a() * &SphereElement::b();
    assert_eq!(sphere_star(&ab), &SphereElement::big_a() * &SphereElement::b_star());
    assert_eq!(sphere_star(&ab), &SphereElement::b_star() * &SphereElement::big_a());
}

#[test]
fn grading_examples() {
    assert_eq!(degree_support(&SphereElement::a()), BTreeSet::from([1]));
    assert_eq!(degree_support(&SphereElement::z()), BTreeSet::from([0]));
    assert_eq!(degree_support(&(SphereElement::a() + sm(Core::A, 0, 0, 2))), BTreeSet::from([1, 2]));
    assert!(is_invariant(&SphereElement::z(), 5));
    assert!(is_invariant(&sm(Core::A, 0, 3, 0), 3));
    assert!(!is_invariant(&SphereElement::a(), 3));
}

#[test]
fn named_relations() {
    assert!(relation_residual("heegard:ab", &[]).unwrap().is_zero());
    assert!(relation_residual("aaminus", &[4]).unwrap().is_zero());
    assert!(relation_residual("chlemma:ab", &[3]).unwrap().is_zero());
    assert!(relation_residual("nope", &[]).is_err());
}

#[test]
fn isometric_sphere_rejects_p_inverse() {
    let s = Sphere::ISOMETRIC;
    assert_eq!(s.mul(&SphereElement::a_star(), &SphereElement::a()).unwrap(), SphereElement::one());
    assert!(s.mul(&SphereElement::a(), &SphereElement::big_a()).is_err());
}

fn coeff() -> impl Strategy<Value = Coefficient> {
    (prop_oneof![-3i64..=-1, 1i64..=3], -2i64..=2, -2i64..=2, -3i64..=3)
        .prop_map(|(x, i, j, k)| Coefficient::monomial(x, Exponents::new(i, j, k)))
}

fn monomial() -> impl Strategy<Value = SphereMonomial> {
    (any::<bool>(), 0u32..=4, -5i64..=5, -5i64..=5)
        .prop_map(|(b, k, mu, nu)| SphereMonomial::new(if b { Core::B } else { Core::A }, k, mu, nu))
}

fn element() -> impl Strategy<Value = SphereElement> {
    prop::collection::vec((monomial(), coeff()), 1..=2).prop_map(|ts| ts.into_iter().collect())
}

fn disc_element() -> impl Strategy<Value = DiscElement> {
    prop::collection::vec((0u32..=3, -4i64..=4, coeff()), 1..=2)
        .prop_map(|ts| ts.into_iter().map(|(k, mu, c)| (DiscMonomial::new(k, mu), c)).collect())
}

fn minkowski(r: &SphereElement, s: &SphereElement) -> BTreeSet<i64> {
    let (dr, ds) = (degree_support(r), degree_support(s));
    dr.iter().flat_map(|x| ds.iter().map(move |y| x + y)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sphere_associative(r in element(), s in element(), t in element()) {
        prop_assert_eq!(&(&r * &s) * &t, &r * &(&s * &t));
    }

    #[test]
    fn sphere_star_antihomomorphism(r in element(), s in element()) {
        prop_assert_eq!(sphere_star(&(&r * &s)), &sphere_star(&s) * &sphere_star(&r));
        prop_assert_eq!(sphere_star(&sphere_star(&r)), r);
    }

    #[test]
    fn sphere_grading(r in element(), s in element()) {
        let prod = &r * &s;
        prop_assert!(degree_support(&prod).is_subset(&minkowski(&r, &s)));
        for m in prod.keys() {
            prop_assert!(m.core() == Core::A || m.k() >= 1);
        }
    }

    #[test]
    fn disc_associative_and_star(r in disc_element(), s in disc_element(), t in disc_element()) {
        prop_assert_eq!(&(&r * &s) * &t, &r * &(&s * &t));
        prop_assert_eq!(P.star(&(&r * &s)).unwrap(), &P.star(&s).unwrap() * &P.star(&r).unwrap());
    }

    #[test]
    fn kappa_multiplicative(r in disc_element(), s in disc_element()) {
        let t = Disc::inverted(Var::P);
        prop_assert_eq!(kappa_iso(&(&r * &s)), t.mul(&kappa_iso(&r), &kappa_iso(&s)).unwrap());
    }

    #[test]
    fn disc_lemma_equal(mu in -10i64..=10) {
        let lhs = P.mul(&dm(0, mu), &dm(0, -mu)).unwrap();
        prop_assert_eq!(lhs, one_plus_q_of_x(&qpoly_q(mu, Var::P)));
    }

    #[test]
    fn disc_lemma_general(mu in -8i64..=8, nu in -8i64..=8) {
        let lhs = P.mul(&dm(0, mu), &dm(0, nu)).unwrap();
        let rhs = P.mul(&one_plus_q_of_x(&qpoly_qpair(mu, nu, Var::P)), &dm(0, mu + nu)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
