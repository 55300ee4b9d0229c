//! Packed exponent vectors with degree-lexicographic order.

use std::cmp::Ordering;

/// Maximum number of base coordinates a ring may declare.
pub const MAX_VARS: usize = 8;

/// Maximum exponent of a single coordinate in one monomial.
pub const MAX_EXPONENT: u32 = 255;

/// A monomial x_1^{a_1}...x_p^{a_p}, one byte per exponent.
///
/// The first coordinate sits in the most significant byte, so comparing
/// `(degree, packed)` is the degree-lexicographic order with x_1 > x_2 > ...
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial {
    deg: u32,
    packed: u64,
}

#[inline]
fn shift(var: usize) -> u32 {
    8 * (MAX_VARS - 1 - var) as u32
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, packed: 0 };

    pub fn var(var: usize) -> Self {
        Self::var_pow(var, 1)
    }

    pub fn var_pow(var: usize, e: u32) -> Self {
        assert!(var < MAX_VARS, "coordinate index {var} out of range");
        assert!(e <= MAX_EXPONENT, "exponent {e} exceeds {MAX_EXPONENT}");
        Monomial {
            deg: e,
            packed: (e as u64) << shift(var),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many coordinates");
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                m = m * Monomial::var_pow(i, e);
            }
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        ((self.packed >> shift(var)) & 0xff) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    /// Bitmask of the coordinates that occur.
    pub fn support(&self) -> u32 {
        let mut mask = 0;
        for i in 0..MAX_VARS {
            if self.exponent(i) > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    /// `self / other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial {
                deg: self.deg - other.deg,
                packed: self.packed - other.packed,
            })
        } else {
            None
        }
    }

    /// Removes every power of `var`.
    pub fn without(&self, var: usize) -> Monomial {
        let e = self.exponent(var);
        Monomial {
            deg: self.deg - e,
            packed: self.packed & !(0xffu64 << shift(var)),
        }
    }

    /// Derivative exponent bookkeeping: returns (a_var, monomial / x_var).
    pub fn lower(&self, var: usize) -> Option<(u32, Monomial)> {
        let e = self.exponent(var);
        if e == 0 {
            return None;
        }
        Some((
            e,
            Monomial {
                deg: self.deg - 1,
                packed: self.packed - (1u64 << shift(var)),
            },
        ))
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        for i in 0..MAX_VARS {
            assert!(
                self.exponent(i) + rhs.exponent(i) <= MAX_EXPONENT,
                "exponent overflow in monomial product"
            );
        }
        Monomial {
            deg: self.deg + rhs.deg,
            packed: self.packed + rhs.packed,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then(self.packed.cmp(&other.packed))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` coordinates of total degree exactly `d`.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

/// All monomials of total degree at most `d`, ascending degree.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}
