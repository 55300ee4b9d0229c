//! Sparse multivariate polynomials over ℚ.

use super::monomial::{Monomial, MAX_VARS};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Terms are kept sorted by descending degree-lex monomial with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Q)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(mut terms: Vec<(Monomial, Q)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.terms.is_empty() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Q {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Q::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<&(Monomial, Q)> {
        self.terms.first()
    }

    pub fn degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(tm, a)| (*tm * m, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| m.lower(var).map(|(e, lm)| (lm, c * q(e as i64))))
            .collect();
        // Lowering one exponent keeps deg-lex order within each x_var-class but
        // may interleave classes, so re-sort.
        Self::from_terms(terms)
    }

    pub fn eval(&self, pt: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in pt.iter().enumerate().take(MAX_VARS) {
                let e = m.exponent(i);
                if e > 0 {
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = d.leading()?.clone();
        if d.terms.len() == 1 {
            let inv = dc.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.checked_div(&dm)?, c * &inv));
            }
            return Some(Polynomial { terms });
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let qm = rm.checked_div(&dm)?;
            let qc = rc / &dc;
            rem = &rem - &d.mul_monomial(qm, &qc);
            quot.push((qm, qc));
        }
        Some(Polynomial::from_terms(quot))
    }

    /// Coefficients with respect to `var`: entry `e` holds the coefficient of x_var^e.
    pub fn to_univariate(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            parts[m.exponent(var) as usize].push((m.without(var), c.clone()));
        }
        parts.into_iter().map(Polynomial::from_terms).collect()
    }

    pub fn from_univariate(var: usize, coeffs: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (e, p) in coeffs.iter().enumerate() {
            let xm = Monomial::var_pow(var, e as u32);
            for (m, c) in &p.terms {
                terms.push((*m * xm, c.clone()));
            }
        }
        Polynomial::from_terms(terms)
    }

    /// Substitutes each coordinate by a polynomial.
    pub fn compose(&self, subs: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (i, s) in subs.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = &t * &s.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Leading coefficient is negative.
    pub fn leading_negative(&self) -> bool {
        self.terms.first().is_some_and(|(_, c)| c.is_negative())
    }
}

fn merge(a: &[(Monomial, Q)], b: &[(Monomial, Q)], negate_b: bool) -> Vec<(Monomial, Q)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial {
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial {
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_monomial(*m, c);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_monomial(*m, c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                terms.push((*ma * *mb, ca * cb));
            }
        }
        Polynomial::from_terms(terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
