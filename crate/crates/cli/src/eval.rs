//! Dialects: which atoms an expression may use and which engine evaluates it.

use std::fmt;
use std::str::FromStr;

use heegaard_core::lens::{lens_generator, lens_mul, lens_star, LensElement, LensGen};
use heegaard_core::linear::LinComb;
use heegaard_core::principal::{prolong_mul, CoactionKey, LaurentHopfElement, ProlongElement, UPow};
use heegaard_core::qalgebras::{Disc, DiscElement, DiscMonomial, Sphere, SphereElement, TensorKey, TensorSquare};
use heegaard_core::scalars::{Coefficient, Var};

use crate::parse::{parse_expr, Expr};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dialect {
    Disc,
    Sphere,
    Lens,
    /// `O(S³) ⊗ O(U(1))`, right factor in `u`.
    Prolong,
    /// `O(S³) ⊗ O(S³)`, the values of a strong connection.
    Tensor,
    /// `O(S³) ⊗ O(Z/N)`, right factor in `ut`.
    Coaction,
}

impl Dialect {
    pub const ALL: [Dialect; 6] =
        [Dialect::Disc, Dialect::Sphere, Dialect::Lens, Dialect::Prolong, Dialect::Tensor, Dialect::Coaction];

    pub fn name(self) -> &'static str {
        match self {
            Dialect::Disc => "disc",
            Dialect::Sphere => "sphere",
            Dialect::Lens => "lens",
            Dialect::Prolong => "prolong",
            Dialect::Tensor => "tensor",
            Dialect::Coaction => "coaction",
        }
    }

    fn is_tensor(self) -> bool {
        matches!(self, Dialect::Prolong | Dialect::Tensor | Dialect::Coaction)
    }

    fn needs_n(self) -> bool {
        matches!(self, Dialect::Lens | Dialect::Coaction)
    }

    /// Algebra atoms; `1`, integers and `p`, `q`, `w` are always allowed.
    pub fn atoms(self) -> &'static [&'static str] {
        match self {
            Dialect::Disc => &["x", "X"],
            Dialect::Sphere => &["a", "b", "A", "B", "z"],
            Dialect::Lens => &["A'", "B'", "z'", "at'", "bt'", "at", "bt"],
            Dialect::Prolong => &["a", "b", "A", "B", "z", "u"],
            Dialect::Tensor => &["a", "b", "A", "B", "z"],
            Dialect::Coaction => &["a", "b", "A", "B", "z", "ut"],
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dialect {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Dialect::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown dialect `{s}`")))
    }
}

/// Evaluation settings shared by all dialects.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Context {
    /// Lens order / cyclic group order.
    pub n: Option<u32>,
    /// Work at `p = q = 0` (disc and sphere only).
    pub isometric: bool,
}

const PARAMS: [&str; 3] = ["p", "q", "w"];

fn walk_atoms(e: &Expr, f: &mut impl FnMut(&str, usize) -> Result<(), CliError>) -> Result<(), CliError> {
    match e {
        Expr::Int(_) => Ok(()),
        Expr::Atom { name, pos } => f(name, *pos),
        Expr::Sum(ts) => ts.iter().try_for_each(|(_, t)| walk_atoms(t, f)),
        Expr::Product(fs) => fs.iter().try_for_each(|t| walk_atoms(t, f)),
        Expr::Pow(b, _) | Expr::Star(b) => walk_atoms(b, f),
        Expr::Tensor(l, r) => {
            walk_atoms(l, f)?;
            walk_atoms(r, f)
        }
    }
}

/// Parses `src` and rejects atoms outside `dialect`.
pub fn parse(src: &str, dialect: Dialect) -> Result<Expr, CliError> {
    let e = parse_expr(src, dialect.is_tensor())?;
    walk_atoms(&e, &mut |name, pos| {
        if name == "1" || PARAMS.contains(&name) || dialect.atoms().contains(&name) {
            Ok(())
        } else {
            Err(CliError::UnknownAtom { name: name.to_string(), dialect: dialect.name().to_string(), pos })
        }
    })?;
    Ok(e)
}

/// One side of a dialect: an algebra with named generators.
trait Algebra {
    type E: Clone;
    fn name(&self) -> &'static str;
    fn coeff(&self, c: Coefficient) -> Self::E;
    fn atom(&self, name: &str) -> Option<Self::E>;
    fn add(&self, x: &Self::E, y: &Self::E) -> Result<Self::E, CliError>;
    fn neg(&self, x: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Result<Self::E, CliError>;
    fn star(&self, x: &Self::E) -> Result<Self::E, CliError>;
    fn as_scalar(&self, x: &Self::E) -> Option<Coefficient>;
}

fn param(name: &str) -> Option<Coefficient> {
    match name {
        "p" => Some(Coefficient::var_pow(Var::P, 1)),
        "q" => Some(Coefficient::var_pow(Var::Q, 1)),
        "w" => Some(Coefficient::zeta_pow(1)),
        _ => None,
    }
}

fn comb_scalar<K: Ord + Clone>(x: &LinComb<K>, one: &K) -> Option<Coefficient> {
    x.keys().all(|k| k == one).then(|| x.coeff(one))
}

fn eval<A: Algebra>(alg: &A, e: &Expr) -> Result<A::E, CliError> {
    match e {
        Expr::Int(n) => Ok(alg.coeff(Coefficient::int(n.clone()))),
        Expr::Atom { name, pos } => {
            if name == "1" {
                return Ok(alg.coeff(Coefficient::one()));
            }
            if let Some(c) = param(name) {
                return Ok(alg.coeff(c));
            }
            alg.atom(name).ok_or_else(|| CliError::UnknownAtom {
                name: name.clone(),
                dialect: alg.name().to_string(),
                pos: *pos,
            })
        }
        Expr::Sum(ts) => {
            let mut acc = alg.coeff(Coefficient::zero());
            for (neg, t) in ts {
                let v = eval(alg, t)?;
                acc = alg.add(&acc, &if *neg { alg.neg(&v) } else { v })?;
            }
            Ok(acc)
        }
        Expr::Product(fs) => {
            let mut acc = eval(alg, &fs[0])?;
            for f in &fs[1..] {
                acc = alg.mul(&acc, &eval(alg, f)?)?;
            }
            Ok(acc)
        }
        Expr::Pow(b, k) => {
            let mut base = eval(alg, b)?;
            if *k < 0 {
                base = match alg.as_scalar(&base) {
                    Some(c) => alg.coeff(c.inverse().ok_or_else(|| {
                        CliError::Usage(format!("negative power of the non-invertible scalar {c}"))
                    })?),
                    None => alg.star(&base)?,
                };
            }
            let mut acc = alg.coeff(Coefficient::one());
            for _ in 0..k.unsigned_abs() {
                acc = alg.mul(&acc, &base)?;
            }
            Ok(acc)
        }
        Expr::Star(b) => alg.star(&eval(alg, b)?),
        Expr::Tensor(..) => Err(CliError::Usage(format!("tensor sign inside a {} factor", alg.name()))),
    }
}

struct DiscAlg(Disc);

impl Algebra for DiscAlg {
    type E = DiscElement;
    fn name(&self) -> &'static str {
        "disc"
    }
    fn coeff(&self, c: Coefficient) -> DiscElement {
        DiscElement::term(DiscMonomial::ONE, c)
    }
    fn atom(&self, name: &str) -> Option<DiscElement> {
        match name {
            "x" => Some(self.0.x()),
            "X" => Some(self.0.big_x()),
            _ => None,
        }
    }
    fn add(&self, x: &DiscElement, y: &DiscElement) -> Result<DiscElement, CliError> {
        Ok(x + y)
    }
    fn neg(&self, x: &DiscElement) -> DiscElement {
        -x
    }
    fn mul(&self, x: &DiscElement, y: &DiscElement) -> Result<DiscElement, CliError> {
        Ok(self.0.mul(x, y)?)
    }
    fn star(&self, x: &DiscElement) -> Result<DiscElement, CliError> {
        Ok(self.0.star(x)?)
    }
    fn as_scalar(&self, x: &DiscElement) -> Option<Coefficient> {
        comb_scalar(x, &DiscMonomial::ONE)
    }
}

struct SphereAlg(Sphere);

impl Algebra for SphereAlg {
    type E = SphereElement;
    fn name(&self) -> &'static str {
        "sphere"
    }
    fn coeff(&self, c: Coefficient) -> SphereElement {
        SphereElement::scalar(c)
    }
    fn atom(&self, name: &str) -> Option<SphereElement> {
        Some(match name {
            "a" => SphereElement::a(),
            "b" => SphereElement::b(),
            "A" => SphereElement::big_a(),
            "B" => SphereElement::big_b(),
            "z" => SphereElement::z(),
            _ => return None,
        })
    }
    fn add(&self, x: &SphereElement, y: &SphereElement) -> Result<SphereElement, CliError> {
        Ok(x + y)
    }
    fn neg(&self, x: &SphereElement) -> SphereElement {
        -x
    }
    fn mul(&self, x: &SphereElement, y: &SphereElement) -> Result<SphereElement, CliError> {
        Ok(self.0.mul(x, y)?)
    }
    fn star(&self, x: &SphereElement) -> Result<SphereElement, CliError> {
        Ok(self.0.star(x)?)
    }
    fn as_scalar(&self, x: &SphereElement) -> Option<Coefficient> {
        x.as_scalar()
    }
}

struct LensAlg(u32);

impl Algebra for LensAlg {
    type E = LensElement;
    fn name(&self) -> &'static str {
        "lens"
    }
    fn coeff(&self, c: Coefficient) -> LensElement {
        LensElement::scalar(self.0, c)
    }
    fn atom(&self, name: &str) -> Option<LensElement> {
        let g = match name {
            "A'" => LensGen::APrime,
            "B'" => LensGen::BPrime,
            "z'" => LensGen::Z,
            "at'" | "at" => LensGen::ATilde,
            "bt'" | "bt" => LensGen::BTilde,
            _ => return None,
        };
        Some(lens_generator(g, self.0))
    }
    fn add(&self, x: &LensElement, y: &LensElement) -> Result<LensElement, CliError> {
        Ok(x.add(y)?)
    }
    fn neg(&self, x: &LensElement) -> LensElement {
        x.scale(&Coefficient::int(-1))
    }
    fn mul(&self, x: &LensElement, y: &LensElement) -> Result<LensElement, CliError> {
        Ok(lens_mul(x, y)?)
    }
    fn star(&self, x: &LensElement) -> Result<LensElement, CliError> {
        Ok(lens_star(x))
    }
    fn as_scalar(&self, x: &LensElement) -> Option<Coefficient> {
        comb_scalar(x.comb(), &heegaard_core::lens::LensMonomial::ONE)
    }
}

/// Laurent polynomials in one group-like generator.
struct LaurentAlg(&'static str);

impl Algebra for LaurentAlg {
    type E = LaurentHopfElement;
    fn name(&self) -> &'static str {
        self.0
    }
    fn coeff(&self, c: Coefficient) -> LaurentHopfElement {
        LinComb::term(UPow(0), c)
    }
    fn atom(&self, name: &str) -> Option<LaurentHopfElement> {
        (name == self.0).then(|| LinComb::basis(UPow(1)))
    }
    fn add(&self, x: &LaurentHopfElement, y: &LaurentHopfElement) -> Result<LaurentHopfElement, CliError> {
        Ok(x + y)
    }
    fn neg(&self, x: &LaurentHopfElement) -> LaurentHopfElement {
        -x
    }
    fn mul(&self, x: &LaurentHopfElement, y: &LaurentHopfElement) -> Result<LaurentHopfElement, CliError> {
        let mut r = LinComb::zero();
        for (m, c) in x.iter() {
            for (k, d) in y.iter() {
                r.add_term(UPow(m.0 + k.0), c * d);
            }
        }
        Ok(r)
    }
    fn star(&self, x: &LaurentHopfElement) -> Result<LaurentHopfElement, CliError> {
        Ok(x.iter().map(|(m, c)| (UPow(-m.0), c.conj())).collect())
    }
    fn as_scalar(&self, x: &LaurentHopfElement) -> Option<Coefficient> {
        comb_scalar(x, &UPow(0))
    }
}

fn tensor_terms<L: Algebra, R: Algebra>(
    l: &L,
    r: &R,
    e: &Expr,
    neg: bool,
    out: &mut Vec<(L::E, R::E)>,
) -> Result<(), CliError> {
    let (left, right) = match e {
        Expr::Sum(ts) => {
            for (n, t) in ts {
                tensor_terms(l, r, t, neg ^ n, out)?;
            }
            return Ok(());
        }
        Expr::Tensor(x, y) => (eval(l, x)?, eval(r, y)?),
        other => (eval(l, other)?, r.coeff(Coefficient::one())),
    };
    out.push((if neg { l.neg(&left) } else { left }, right));
    Ok(())
}

/// An evaluated element in its normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Disc(DiscElement),
    Sphere(SphereElement),
    Lens(LensElement),
    Prolong(ProlongElement),
    Tensor(TensorSquare),
    Coaction(LinComb<CoactionKey>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Disc(x) => x.fmt(f),
            Value::Sphere(x) => x.fmt(f),
            Value::Lens(x) => x.fmt(f),
            Value::Prolong(x) => x.fmt(f),
            Value::Tensor(x) => x.fmt(f),
            Value::Coaction(x) => x.fmt(f),
        }
    }
}

fn order(dialect: Dialect, ctx: &Context) -> Result<u32, CliError> {
    match ctx.n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(CliError::Usage("N must be positive".into())),
        None => Err(CliError::Usage(format!("dialect {dialect} needs --N"))),
    }
}

fn sphere(ctx: &Context) -> SphereAlg {
    SphereAlg(if ctx.isometric { Sphere::ISOMETRIC } else { Sphere::GENERIC })
}

/// Evaluates an already parsed expression.
pub fn evaluate_expr(e: &Expr, dialect: Dialect, ctx: &Context) -> Result<Value, CliError> {
    if ctx.isometric && !matches!(dialect, Dialect::Disc | Dialect::Sphere) {
        return Err(CliError::Usage(format!("--iso is not available for dialect {dialect}")));
    }
    if dialect.needs_n() {
        order(dialect, ctx)?;
    }
    Ok(match dialect {
        Dialect::Disc => {
            let d = if ctx.isometric { Disc::isometric(Var::P) } else { Disc::new(Var::P) };
            Value::Disc(eval(&DiscAlg(d), e)?)
        }
        Dialect::Sphere => Value::Sphere(eval(&sphere(ctx), e)?),
        Dialect::Lens => Value::Lens(eval(&LensAlg(order(dialect, ctx)?), e)?),
        Dialect::Prolong => {
            let mut terms = Vec::new();
            tensor_terms(&sphere(ctx), &LaurentAlg("u"), e, false, &mut terms)?;
            let mut r = ProlongElement::zero();
            for (x, h) in terms {
                r += &heegaard_core::principal::prolong_tensor(&x, &h);
            }
            Value::Prolong(r)
        }
        Dialect::Tensor => {
            let mut terms = Vec::new();
            tensor_terms(&sphere(ctx), &sphere(ctx), e, false, &mut terms)?;
            let mut r = TensorSquare::zero();
            for (x, y) in terms {
                r += &heegaard_core::qalgebras::tensor(&x, &y);
            }
            Value::Tensor(r)
        }
        Dialect::Coaction => {
            let n = i64::from(order(dialect, ctx)?);
            let mut terms = Vec::new();
            tensor_terms(&sphere(ctx), &LaurentAlg("ut"), e, false, &mut terms)?;
            let mut r = LinComb::zero();
            for (x, h) in terms {
                for (m, c) in x.iter() {
                    for (u, d) in h.iter() {
                        r.add_term(CoactionKey(*m, u.0.rem_euclid(n) as u32), c * d);
                    }
                }
            }
            Value::Coaction(r)
        }
    })
}

pub fn evaluate(src: &str, dialect: Dialect, ctx: &Context) -> Result<Value, CliError> {
    evaluate_expr(&parse(src, dialect)?, dialect, ctx)
}

/// Canonical printed normal form of `src`.
pub fn normal_form(src: &str, dialect: Dialect, ctx: &Context) -> Result<String, CliError> {
    Ok(evaluate(src, dialect, ctx)?.to_string())
}

pub fn multiply(x: &Value, y: &Value, ctx: &Context) -> Result<Value, CliError> {
    Ok(match (x, y) {
        (Value::Disc(x), Value::Disc(y)) => {
            let d = if ctx.isometric { Disc::isometric(Var::P) } else { Disc::new(Var::P) };
            Value::Disc(d.mul(x, y)?)
        }
        (Value::Sphere(x), Value::Sphere(y)) => Value::Sphere(sphere(ctx).mul(x, y)?),
        (Value::Lens(x), Value::Lens(y)) => Value::Lens(lens_mul(x, y)?),
        (Value::Prolong(x), Value::Prolong(y)) => Value::Prolong(prolong_mul(x, y)),
        (Value::Tensor(x), Value::Tensor(y)) => {
            let mut r = TensorSquare::zero();
            for (TensorKey(a, b), c) in x.iter() {
                for (TensorKey(d, e), f) in y.iter() {
                    let left = &SphereElement::basis(*a) * &SphereElement::basis(*d);
                    let right = &SphereElement::basis(*b) * &SphereElement::basis(*e);
                    r.add_scaled(&heegaard_core::qalgebras::tensor(&left, &right), &(c * f));
                }
            }
            Value::Tensor(r)
        }
        _ => return Err(CliError::Usage("multiplication is not available for this dialect".into())),
    })
}

pub fn adjoint(x: &Value, ctx: &Context) -> Result<Value, CliError> {
    Ok(match x {
        Value::Disc(x) => {
            let d = if ctx.isometric { Disc::isometric(Var::P) } else { Disc::new(Var::P) };
            Value::Disc(d.star(x)?)
        }
        Value::Sphere(x) => Value::Sphere(sphere(ctx).star(x)?),
        Value::Lens(x) => Value::Lens(lens_star(x)),
        _ => return Err(CliError::Usage("the adjoint is only available for disc, sphere and lens".into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(src: &str, d: Dialect) -> String {
        normal_form(src, d, &Context { n: Some(3), isometric: false }).unwrap()
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(nf("b a", Dialect::Sphere), "w^-2 a b");
        assert_eq!(nf("a* a", Dialect::Sphere), "1 - p A");
        assert_eq!(nf("A B", Dialect::Sphere), "0");
        assert_eq!(nf("a^-2", Dialect::Sphere), nf("a*^2", Dialect::Sphere));
        assert_eq!(nf("p^-1 p", Dialect::Sphere), "1");
    }

    #[test]
    fn atoms_are_checked_per_dialect() {
        assert!(matches!(parse("at", Dialect::Sphere), Err(CliError::UnknownAtom { pos: 0, .. })));
        assert!(parse("at' z'", Dialect::Lens).is_ok());
        assert!(matches!(parse("a x", Dialect::Disc), Err(CliError::UnknownAtom { pos: 0, .. })));
    }

    #[test]
    fn tensor_dialects() {
        assert_eq!(nf("a ⊗ u + a (x) u", Dialect::Prolong), "2 a ⊗ u");
        assert_eq!(nf("A ⊗ ut^4", Dialect::Coaction), "A ⊗ ut");
        assert_eq!(nf("a* ⊗ a - a^-1 ⊗ a", Dialect::Tensor), "0");
        assert_eq!(nf("(x) x", Dialect::Disc), nf("x x", Dialect::Disc));
    }

    #[test]
    fn isometric_rejects_p_inverse() {
        let iso = Context { n: None, isometric: true };
        assert_eq!(normal_form("a* a", Dialect::Sphere, &iso).unwrap(), "1");
        assert!(matches!(normal_form("a A", Dialect::Sphere, &iso), Err(CliError::Core(_))));
    }
}
