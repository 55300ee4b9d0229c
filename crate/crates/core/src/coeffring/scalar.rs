//! Sums of rational functions times exponentials of polynomials.

use super::monomial::Monomial;
use super::poly::{Polynomial, Q};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Σ r_h(x)·exp(h(x)) with distinct exponent polynomials h.
///
/// Terms are sorted by exponent and never zero. Because exponentials of
/// distinct polynomials are linearly independent over the rational
/// functions, two values are equal exactly when their term lists agree.
/// Generators declared in a [`RingContext`](super::RingContext) are aliases
/// for particular exponents, so a product of generators just adds exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ScalarExpr {
    terms: Vec<(Polynomial, RatFunc)>,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(super::poly::q(n))
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(Polynomial::var(i))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::from_ratfunc(RatFunc::from_poly(p))
    }

    pub fn from_ratfunc(r: RatFunc) -> Self {
        Self::from_term(Polynomial::zero(), r)
    }

    /// exp(h).
    pub fn exp(h: Polynomial) -> Self {
        Self::from_term(h, RatFunc::one())
    }

    pub fn from_term(h: Polynomial, r: RatFunc) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            ScalarExpr { terms: vec![(h, r)] }
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Polynomial, RatFunc)>) -> Self {
        let mut acc: BTreeMap<Polynomial, RatFunc> = BTreeMap::new();
        for (h, r) in terms {
            match acc.get_mut(&h) {
                Some(e) => *e = e.add(&r),
                None => {
                    acc.insert(h, r);
                }
            }
        }
        ScalarExpr {
            terms: acc.into_iter().filter(|(_, r)| !r.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Polynomial, RatFunc)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].0.is_zero()
            && self.terms[0].1.constant_value().is_some_and(|c| c.is_one())
    }

    /// The rational value if this is a constant (no coordinates, no exponentials).
    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(h, r)] if h.is_zero() => r.constant_value(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// The polynomial if this has no denominators and no exponentials.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match self.terms.as_slice() {
            [] => Some(Polynomial::zero()),
            [(h, r)] if h.is_zero() && r.is_polynomial() => Some(r.num().clone()),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.as_polynomial().is_some()
    }

    pub fn has_exp(&self) -> bool {
        self.terms.iter().any(|(h, _)| !h.is_zero())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarExpr {
            terms: self.terms.iter().map(|(h, r)| (h.clone(), r.scale(c))).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        ScalarExpr {
            terms: self.terms.iter().map(|(h, r)| (h.clone(), r.mul_poly(p))).collect(),
        }
    }

    /// Multiplicative inverse; only single-term values are invertible.
    pub fn inverse(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [(h, r)] => Some(Self::from_term(-h, r.inverse()?)),
            _ => None,
        }
    }

    pub fn checked_div(&self, d: &ScalarExpr) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZeroExpression);
        }
        if let Some(c) = d.constant_value() {
            return Ok(self.scale(&c.recip()));
        }
        let inv = d.inverse().ok_or_else(|| Error::NonInvertible(format!("{d:?}")))?;
        Ok(self * &inv)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            if self.is_zero() {
                return Err(Error::DivisionByZeroExpression);
            }
            self.inverse()
                .ok_or_else(|| Error::NonInvertible(format!("{self:?}")))?
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().map(|(h, r)| {
            let dh = h.derivative(var);
            let dr = r.derivative(var);
            (h.clone(), dr.add(&r.mul_poly(&dh)))
        });
        ScalarExpr {
            terms: terms.filter(|(_, r)| !r.is_zero()).collect(),
        }
    }

    /// Exact value at a rational point; `pt[i]` is the value of coordinate i.
    pub fn evaluate(&self, pt: &[Q]) -> Result<Q> {
        let mut acc = Q::zero();
        for (h, r) in &self.terms {
            let den = r.den().eval(pt);
            if den.is_zero() {
                return Err(Error::PoleAtPoint);
            }
            let v = r.num().eval(pt) / den;
            if v.is_zero() {
                continue;
            }
            if !h.eval(pt).is_zero() {
                return Err(Error::TranscendentalValue);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Substitutes each coordinate by a polynomial.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Self> {
        let mut terms = Vec::new();
        for (h, r) in &self.terms {
            let num = r.num().compose(subs);
            let den = r.den().compose(subs);
            let r = RatFunc::new(num, den).ok_or(Error::DivisionByZeroExpression)?;
            terms.push((h.compose(subs), r));
        }
        Ok(Self::from_terms(terms))
    }

    /// Largest total degree among numerators and exponents; used for sample sizing.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(h, r)| h.degree().max(r.num().degree()))
            .max()
            .unwrap_or(0)
    }

    /// If this is c·x^a for a single monomial, returns (a, c).
    pub fn as_monomial(&self) -> Option<(Monomial, Q)> {
        let p = self.as_polynomial()?;
        match p.terms() {
            [(m, c)] => Some((*m, c.clone())),
            _ => None,
        }
    }
}

fn merge(a: &[(Polynomial, RatFunc)], b: &[(Polynomial, RatFunc)], negate_b: bool) -> ScalarExpr {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |r: &RatFunc| if negate_b { r.neg() } else { r.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0.clone(), nb(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let r = if negate_b { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                if !r.is_zero() {
                    out.push((a[i].0.clone(), r));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push((t.0.clone(), nb(&t.1)));
    }
    ScalarExpr { terms: out }
}

impl<'a> Add<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        if rhs.is_zero() {
            return self.clone();
        }
        merge(&self.terms, &rhs.terms, true)
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            terms: self.terms.iter().map(|(h, r)| (h.clone(), r.neg())).collect(),
        }
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

impl<'a> Mul<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() || rhs.is_zero() {
            return ScalarExpr::zero();
        }
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            let (ha, ra) = &self.terms[0];
            let (hb, rb) = &rhs.terms[0];
            let h = if ha.is_zero() {
                hb.clone()
            } else if hb.is_zero() {
                ha.clone()
            } else {
                ha + hb
            };
            return ScalarExpr::from_term(h, ra.mul(rb));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ha, ra) in &self.terms {
            for (hb, rb) in &rhs.terms {
                terms.push((ha + hb, ra.mul(rb)));
            }
        }
        ScalarExpr::from_terms(terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $f(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $f(self, rhs: &ScalarExpr) -> ScalarExpr {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<ScalarExpr> for &'a ScalarExpr {
            type Output = ScalarExpr;
            fn $f(self, rhs: ScalarExpr) -> ScalarExpr {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::AddAssign<&ScalarExpr> for ScalarExpr {
    fn add_assign(&mut self, rhs: &ScalarExpr) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl std::ops::SubAssign<&ScalarExpr> for ScalarExpr {
    fn sub_assign(&mut self, rhs: &ScalarExpr) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self - rhs;
    }
}

impl From<Polynomial> for ScalarExpr {
    fn from(p: Polynomial) -> Self {
        ScalarExpr::from_poly(p)
    }
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        ScalarExpr::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::poly::q;

    #[test]
    fn exponent_monoid() {
        let u = ScalarExpr::exp(Polynomial::var(0));
        let uu = &u * &u;
        assert_eq!(uu, ScalarExpr::exp(Polynomial::var(0).scale(&q(2))));
        let inv = u.inverse().unwrap();
        assert!((&u * &inv).is_one());
    }

    #[test]
    fn derivative_of_exp() {
        let u = ScalarExpr::exp(Polynomial::var(0));
        assert_eq!(u.partial_derivative(0), u);
        assert!(u.partial_derivative(1).is_zero());
        let v = ScalarExpr::exp(&Polynomial::var(0) * &Polynomial::var(1));
        assert_eq!(v.partial_derivative(0), &ScalarExpr::var(1) * &v);
    }

    #[test]
    fn evaluation_rules() {
        let x = ScalarExpr::var(0);
        let inv = ScalarExpr::one().checked_div(&x).unwrap();
        assert_eq!(inv.evaluate(&[q(0)]), Err(Error::PoleAtPoint));
        let u = ScalarExpr::exp(Polynomial::var(0));
        assert_eq!(u.evaluate(&[q(0)]), Ok(q(1)));
        assert_eq!(u.evaluate(&[q(1)]), Err(Error::TranscendentalValue));
        let xu = &x * &u;
        assert_eq!(xu.evaluate(&[q(0)]), Ok(q(0)));
    }

    #[test]
    fn sums_of_exponentials_are_not_invertible() {
        let e = &ScalarExpr::one() + &ScalarExpr::exp(Polynomial::var(0));
        assert!(e.inverse().is_none());
        assert!(matches!(ScalarExpr::one().checked_div(&e), Err(Error::NonInvertible(_))));
    }
}
