//! Reduced quotients of polynomials.

use super::gcd::gcd;
use super::poly::{Polynomial, Q};
use num_traits::{One, Zero};

/// `num / den` with gcd(num, den) = 1 and `den` monic. Zero is stored as 0/1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

impl RatFunc {
    /// Returns `None` when the denominator is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        if den.is_constant() {
            let c = den.constant_value().unwrap();
            return Some(RatFunc {
                num: num.scale(&c.recip()),
                den: Polynomial::one(),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().unwrap().1.clone();
        if lc.is_one() {
            Some(RatFunc { num, den })
        } else {
            let inv = lc.recip();
            Some(RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            })
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RatFunc {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num + &other.num);
        }
        if self.den == other.den {
            return RatFunc::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFunc::new(num, &self.den * &other.den).unwrap()
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Cross-cancel first so the final reduction works on smaller inputs.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let a = self.num.exact_div(&g1).unwrap();
        let d = other.den.exact_div(&g1).unwrap();
        let c = other.num.exact_div(&g2).unwrap();
        let b = self.den.exact_div(&g2).unwrap();
        RatFunc::new(&a * &c, &b * &d).unwrap()
    }

    pub fn inverse(&self) -> Option<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self, var: usize) -> RatFunc {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(var));
        }
        let num = &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        RatFunc::new(num, &self.den * &self.den).unwrap()
    }

    pub fn mul_poly(&self, p: &Polynomial) -> RatFunc {
        if self.den.is_one() {
            Self::from_poly(&self.num * p)
        } else {
            RatFunc::new(&self.num * p, self.den.clone()).unwrap()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::poly::q;

    #[test]
    fn reduces_on_construction() {
        let x = Polynomial::var(0);
        let one = Polynomial::one();
        let r = RatFunc::new(&(&x * &x) - &one, &x - &one).unwrap();
        assert_eq!(r, RatFunc::from_poly(&x + &one));
        let s = RatFunc::new(x.scale(&q(2)), x.scale(&q(4))).unwrap();
        assert_eq!(s, RatFunc::constant(crate::coeffring::poly::q_frac(1, 2)));
        assert!(RatFunc::new(x.clone(), Polynomial::zero()).is_none());
    }

    #[test]
    fn quotient_rule() {
        let x = Polynomial::var(0);
        let r = RatFunc::new(Polynomial::one(), x.clone()).unwrap();
        let d = r.derivative(0);
        assert_eq!(d, RatFunc::new(Polynomial::constant(q(-1)), &x * &x).unwrap());
    }
}
