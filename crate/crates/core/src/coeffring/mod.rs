//! Exact coefficient ring: rational functions in the chart coordinates over ℚ,
//! extended by exponentials of polynomials.

mod gcd;
pub mod monomial;
mod parse;
pub mod poly;
mod ratfunc;
mod scalar;

pub use gcd::gcd;
pub use monomial::{monomials_of_degree, monomials_up_to, Monomial, MAX_VARS};
pub use parse::{parse_raw, RawExpr, RawKind};
pub use poly::{q, q_frac, Polynomial, Q};
pub use ratfunc::RatFunc;
pub use scalar::ScalarExpr;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

/// Coordinate names and named exponential generators of a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    coord_names: Vec<String>,
    exp_generators: Vec<(String, Polynomial)>,
}

/// Serializable description of a [`RingContext`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct RingSpec {
    pub coordinates: Vec<String>,
    #[serde(default)]
    pub exp_generators: Vec<ExpGeneratorSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpGeneratorSpec {
    pub name: String,
    pub exponent: String,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "exp"
}

impl RingContext {
    /// `generators` pairs a name with its exponent written in the coordinates.
    pub fn new(coords: &[&str], generators: &[(&str, &str)]) -> Result<Self> {
        let spec = RingSpec {
            coordinates: coords.iter().map(|s| s.to_string()).collect(),
            exp_generators: generators
                .iter()
                .map(|(n, e)| ExpGeneratorSpec { name: n.to_string(), exponent: e.to_string() })
                .collect(),
        };
        Self::from_spec(&spec)
    }

    pub fn from_spec(spec: &RingSpec) -> Result<Self> {
        if spec.coordinates.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "at most {MAX_VARS} coordinates are supported, got {}",
                spec.coordinates.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for name in spec.coordinates.iter().chain(spec.exp_generators.iter().map(|g| &g.name)) {
            if !valid_identifier(name) {
                return Err(Error::InvalidRing(format!("`{name}` is not a valid identifier")));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidRing(format!("identifier `{name}` declared twice")));
            }
        }
        let mut ctx = RingContext {
            coord_names: spec.coordinates.clone(),
            exp_generators: Vec::new(),
        };
        for g in &spec.exp_generators {
            let h = ctx.parse(&g.exponent)?.as_polynomial().ok_or_else(|| {
                Error::InvalidRing(format!("exponent of `{}` must be a polynomial", g.name))
            })?;
            ctx.exp_generators.push((g.name.clone(), h));
        }
        Ok(ctx)
    }

    /// Coordinates x1..xn, no generators.
    pub fn standard(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Self::new(&refs, &[]).expect("standard ring is valid")
    }

    pub fn spec(&self) -> RingSpec {
        RingSpec {
            coordinates: self.coord_names.clone(),
            exp_generators: self
                .exp_generators
                .iter()
                .map(|(n, h)| ExpGeneratorSpec { name: n.clone(), exponent: self.format_poly(h) })
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.coord_names.len()
    }

    pub fn coord_names(&self) -> &[String] {
        &self.coord_names
    }

    pub fn exp_generators(&self) -> &[(String, Polynomial)] {
        &self.exp_generators
    }

    pub fn coord_index(&self, name: &str) -> Result<usize> {
        self.coord_names
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
    }

    pub fn parse(&self, src: &str) -> Result<ScalarExpr> {
        normalize(&parse_raw(src)?, self)
    }

    pub fn parse_poly(&self, src: &str) -> Result<Polynomial> {
        self.parse(src)?.as_polynomial().ok_or_else(|| Error::Parse {
            column: 1,
            message: format!("`{src}` is not a polynomial"),
        })
    }

    /// ∂e/∂x for the named coordinate.
    pub fn partial_derivative(&self, e: &ScalarExpr, coord: &str) -> Result<ScalarExpr> {
        Ok(e.partial_derivative(self.coord_index(coord)?))
    }

    /// Evaluates at named coordinate values; every coordinate must be assigned.
    pub fn evaluate_at_point(&self, e: &ScalarExpr, pt: &[(&str, Q)]) -> Result<Q> {
        let mut vals = vec![None; self.nvars()];
        for (name, v) in pt {
            vals[self.coord_index(name)?] = Some(v.clone());
        }
        let vals: Vec<Q> = vals
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::UnknownIdentifier(format!("no value for {}", self.coord_names[i]))))
            .collect::<Result<_>>()?;
        e.evaluate(&vals)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.coord_names.iter().enumerate() {
            match m.exponent(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    pub fn format_poly(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if m.is_one() {
                format_rational(&a)
            } else if a.is_one() {
                self.format_monomial(m)
            } else {
                format!("{}*{}", format_rational(&a), self.format_monomial(m))
            };
            match (k, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }

    fn format_ratfunc(&self, r: &RatFunc) -> String {
        if r.is_polynomial() {
            self.format_poly(r.num())
        } else {
            format!("({})/({})", self.format_poly(r.num()), self.format_poly(r.den()))
        }
    }

    /// Renders in the input grammar, so `parse(format(e)) == e`.
    pub fn format(&self, e: &ScalarExpr) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (h, r) in e.terms() {
            if h.is_zero() {
                let s = self.format_ratfunc(r);
                if r.is_polynomial() && r.num().terms().len() > 1 && e.terms().len() > 1 {
                    parts.push(format!("({s})"));
                } else {
                    parts.push(s);
                }
                continue;
            }
            let ex = format!("exp({})", self.format_poly(h));
            let single = r.is_polynomial() && r.num().terms().len() == 1;
            if r.constant_value().is_some_and(|c| c.is_one()) {
                parts.push(ex);
            } else if r.constant_value().is_some_and(|c| c == -Q::one()) {
                parts.push(format!("-{ex}"));
            } else if single {
                parts.push(format!("{}*{ex}", self.format_poly(r.num())));
            } else {
                parts.push(format!("({})*{ex}", self.format_ratfunc(r)));
            }
        }
        let mut out = String::new();
        for (k, p) in parts.into_iter().enumerate() {
            if k == 0 {
                out.push_str(&p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&p);
            }
        }
        out
    }
}

pub fn format_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses a rational literal such as `-3/4` or `5`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse { column: 1, message: format!("`{s}` is not a rational number") };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(Error::DivisionByZeroExpression);
    }
    Ok(BigRational::new(n, d))
}

/// Canonical form of a parsed expression in `ctx`.
pub fn normalize(e: &RawExpr, ctx: &RingContext) -> Result<ScalarExpr> {
    Ok(match &e.kind {
        RawKind::Int(n) => ScalarExpr::constant(BigRational::from_integer(n.clone())),
        RawKind::Ident(name) => {
            if let Some(i) = ctx.coord_names.iter().position(|c| c == name) {
                ScalarExpr::var(i)
            } else if let Some((_, h)) = ctx.exp_generators.iter().find(|(g, _)| g == name) {
                ScalarExpr::exp(h.clone())
            } else {
                return Err(Error::UnknownIdentifier(name.clone()));
            }
        }
        RawKind::Neg(a) => -normalize(a, ctx)?,
        RawKind::Add(a, b) => normalize(a, ctx)? + normalize(b, ctx)?,
        RawKind::Sub(a, b) => normalize(a, ctx)? - normalize(b, ctx)?,
        RawKind::Mul(a, b) => normalize(a, ctx)? * normalize(b, ctx)?,
        RawKind::Div(a, b) => {
            let d = normalize(b, ctx)?;
            match normalize(a, ctx)?.checked_div(&d) {
                Err(Error::NonInvertible(_)) => return Err(Error::NonInvertible(ctx.format(&d))),
                other => other?,
            }
        }
        RawKind::Pow(a, k) => {
            let base = normalize(a, ctx)?;
            match base.pow(*k) {
                Err(Error::NonInvertible(_)) => return Err(Error::NonInvertible(ctx.format(&base))),
                other => other?,
            }
        }
        RawKind::Exp(a) => {
            let h = normalize(a, ctx)?.as_polynomial().ok_or_else(|| Error::Parse {
                column: e.column,
                message: "the argument of exp must be a polynomial".into(),
            })?;
            ScalarExpr::exp(h)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> RingContext {
        RingContext::new(&["x1", "x2", "x3"], &[("u", "x1")]).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let c = ctx();
        assert!(c.parse("x1*x2 - x2*x1").unwrap().is_zero());
        assert_eq!(c.parse("(x1^2-1)/(x1-1)").unwrap(), c.parse("x1+1").unwrap());
        let uu = c.parse("u*u").unwrap();
        assert_eq!(uu, ScalarExpr::exp(Polynomial::var(0).scale(&q(2))));
        assert_eq!(uu, c.parse("exp(2*x1)").unwrap());
    }

    #[test]
    fn normalize_errors() {
        let c = ctx();
        assert_eq!(c.parse("y + 1"), Err(Error::UnknownIdentifier("y".into())));
        assert_eq!(c.parse("x1/(x2 - x2)"), Err(Error::DivisionByZeroExpression));
        assert!(matches!(c.parse("1/(1 + u)"), Err(Error::NonInvertible(_))));
        assert!(matches!(c.parse("exp(1/x1)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn derivative_examples() {
        let c = ctx();
        let d = |s: &str, v: &str| c.partial_derivative(&c.parse(s).unwrap(), v).unwrap();
        assert_eq!(d("x1^2*x2", "x1"), c.parse("2*x1*x2").unwrap());
        assert_eq!(d("1/x1", "x1"), c.parse("-1/x1^2").unwrap());
        assert_eq!(d("exp(x1)", "x1"), c.parse("exp(x1)").unwrap());
        assert!(c.partial_derivative(&c.parse("x1").unwrap(), "z").is_err());
    }

    #[test]
    fn evaluation_examples() {
        let c = ctx();
        let at = |s: &str, v: [i64; 3]| {
            c.evaluate_at_point(
                &c.parse(s).unwrap(),
                &[("x1", q(v[0])), ("x2", q(v[1])), ("x3", q(v[2]))],
            )
        };
        assert_eq!(at("x1+x2", [1, 2, 0]), Ok(q(3)));
        assert_eq!(at("1/x1", [0, 0, 0]), Err(Error::PoleAtPoint));
        assert_eq!(at("exp(x1)", [0, 5, 0]), Ok(q(1)));
    }

    #[test]
    fn format_roundtrip() {
        let c = ctx();
        for s in [
            "0",
            "-x1 + 3/2*x2^2",
            "(x1 - 1)/(x2^2 + x3)",
            "x1*exp(x1) - 2",
            "-exp(-x1 + x2)",
            "(x1 + x2)*exp(x1) + (1/x2)*exp(2*x1) + x3 - 1",
        ] {
            let e = c.parse(s).unwrap();
            let printed = c.format(&e);
            assert_eq!(c.parse(&printed).unwrap(), e, "round trip of {s} via {printed}");
        }
    }

    #[test]
    fn ring_validation() {
        assert!(RingContext::new(&["x", "x"], &[]).is_err());
        assert!(RingContext::new(&["x"], &[("x", "x")]).is_err());
        assert!(RingContext::new(&["x"], &[("u", "y")]).is_err());
        assert!(RingContext::new(&["exp"], &[]).is_err());
    }
}
