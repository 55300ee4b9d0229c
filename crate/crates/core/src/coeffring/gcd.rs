//! Multivariate gcd by recursive primitive pseudo-remainder sequences.

use super::poly::Polynomial;

/// Monic gcd (leading coefficient 1 in degree-lex order); gcd(0, 0) = 0.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a.terms().len() == 1 && b.terms().len() == 1 {
        return monomial_gcd(a, b);
    }
    let support = a.support() | b.support();
    let var = support.trailing_zeros() as usize;
    let a_has = a.degree_in(var) > 0;
    let b_has = b.degree_in(var) > 0;
    if !a_has {
        return gcd(a, &content(b, var));
    }
    if !b_has {
        return gcd(&content(a, var), b);
    }
    let ca = content(a, var);
    let cb = content(b, var);
    let c = gcd(&ca, &cb);
    let mut pa = a.exact_div(&ca).expect("content divides");
    let mut pb = b.exact_div(&cb).expect("content divides");
    if pa.degree_in(var) < pb.degree_in(var) {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g = loop {
        let r = pseudo_remainder(&pa, &pb, var);
        if r.is_zero() {
            break pb;
        }
        if r.degree_in(var) == 0 {
            break Polynomial::one();
        }
        pa = pb;
        pb = primitive_part(&r, var);
    };
    (&c * &g).monic()
}

fn monomial_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let ma = a.terms()[0].0;
    let mb = b.terms()[0].0;
    let mut exps = Vec::new();
    for i in 0..super::monomial::MAX_VARS {
        exps.push(ma.exponent(i).min(mb.exponent(i)));
    }
    Polynomial::term(super::monomial::Monomial::from_exponents(&exps), num_traits::One::one())
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content(p: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in p.to_univariate(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

pub fn primitive_part(p: &Polynomial, var: usize) -> Polynomial {
    let c = content(p, var);
    p.exact_div(&c).expect("content divides")
}

/// Returns lc(b)^k a − q b with deg_var below deg_var(b).
pub fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let db = b.degree_in(var);
    let bparts = b.to_univariate(var);
    let lcb = bparts[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lcr = r.to_univariate(var).swap_remove(dr as usize);
        let shift = Polynomial::term(
            super::monomial::Monomial::var_pow(var, dr - db),
            num_traits::One::one(),
        );
        r = &(&lcb * &r) - &(&(&lcr * &shift) * b);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::poly::q;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::constant(q(n))
    }

    #[test]
    fn univariate_gcd() {
        let a = &(&x(0) * &x(0)) - &c(1);
        let b = &(&x(0) * &x(0)) + &(&x(0).scale(&q(-2)) + &c(1));
        assert_eq!(gcd(&a, &b), &x(0) - &c(1));
    }

    #[test]
    fn multivariate_gcd() {
        let f = &(&x(0) * &x(1)) + &x(2);
        let g1 = &x(0) + &c(3);
        let g2 = &(&x(1) * &x(1)) - &x(2);
        let a = &f * &g1;
        let b = &f * &g2;
        assert_eq!(gcd(&a, &b), f.monic());
        let a2 = &a * &x(1);
        let b2 = &b.scale(&q(7)) * &x(1);
        assert_eq!(gcd(&a2, &b2), (&f * &x(1)).monic());
    }

    #[test]
    fn coprime_is_one() {
        assert!(gcd(&(&x(0) + &x(1)), &(&x(0) - &x(1))).is_one());
        assert!(gcd(&x(0), &c(5)).is_one());
    }
}
