#![allow(dead_code)]

use algebroid_core::algebroid::LieAlgebroid;
use algebroid_core::coeffring::{Monomial, Polynomial, RatFunc, RingContext, ScalarExpr, Q};
use algebroid_core::exterior::{subsets, AForm, Graded, Kind, MultiVector};
use proptest::prelude::*;

pub fn poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> + Clone {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -4i64..=4), 0..=max_terms).prop_map(
        move |terms| {
            Polynomial::from_terms(
                terms
                    .into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), Q::from_integer(c.into())))
                    .collect(),
            )
        },
    )
}

/// A polynomial, optionally plus exp(x1) times a polynomial, optionally over 1 + x_last.
pub fn scalar(nvars: usize) -> impl Strategy<Value = ScalarExpr> + Clone {
    (poly(nvars, 2, 3), poly(nvars, 1, 2), any::<bool>(), any::<bool>()).prop_map(move |(a, b, with_exp, with_den)| {
        let mut e = ScalarExpr::from_poly(a);
        if with_exp && nvars > 0 {
            e = e + &ScalarExpr::exp(Polynomial::var(0)) * &ScalarExpr::from_poly(b);
        }
        if with_den && nvars > 0 {
            let den = &Polynomial::one() + &Polynomial::var(nvars - 1);
            let inv = ScalarExpr::from_ratfunc(RatFunc::new(Polynomial::one(), den).expect("nonzero"));
            e = &e * &inv;
        }
        e
    })
}

/// Polynomial coefficients of low degree, the inputs the complexes see.
pub fn poly_scalar(nvars: usize) -> impl Strategy<Value = ScalarExpr> + Clone {
    poly(nvars, 2, 3).prop_map(ScalarExpr::from_poly)
}

pub fn graded<K: Kind + 'static>(
    rank: usize,
    degree: usize,
    coeff: impl Strategy<Value = ScalarExpr> + 'static,
) -> impl Strategy<Value = Graded<K>> {
    let masks = subsets(rank, degree);
    prop::collection::vec(coeff, masks.len())
        .prop_map(move |cs| Graded::<K>::from_coeffs(rank, degree, masks.iter().copied().zip(cs)))
}

pub fn form(rank: usize, degree: usize, nvars: usize) -> impl Strategy<Value = AForm> {
    graded(rank, degree, poly_scalar(nvars))
}

pub fn multivector(rank: usize, degree: usize, nvars: usize) -> impl Strategy<Value = MultiVector> {
    graded(rank, degree, poly_scalar(nvars))
}

pub fn tangent(n: usize) -> LieAlgebroid {
    LieAlgebroid::tangent(RingContext::standard(n))
}

/// so(3) acting on ℝ³ by rotations: a(e_i) = rotation field, [e_i,e_j] = ε_ijk e_k.
pub fn rotation_action() -> LieAlgebroid {
    let ctx = RingContext::standard(3);
    let z = ScalarExpr::zero;
    let x = |i: usize| ScalarExpr::var(i);
    let anchor = vec![
        vec![z(), x(2), -x(1)],
        vec![-x(2), z(), x(0)],
        vec![x(1), -x(0), z()],
    ];
    let mut c = vec![vec![vec![z(); 3]; 3]; 3];
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        c[i][j][k] = ScalarExpr::one();
        c[j][i][k] = ScalarExpr::int(-1);
    }
    LieAlgebroid::new(ctx, anchor, c, None).expect("action algebroid")
}

/// The Lie algebra so(3) over a point.
pub fn so3_point() -> LieAlgebroid {
    let z = ScalarExpr::zero;
    let mut c = vec![vec![vec![z(); 3]; 3]; 3];
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        c[i][j][k] = ScalarExpr::one();
        c[j][i][k] = ScalarExpr::int(-1);
    }
    LieAlgebroid::point(c).expect("so3")
}

pub fn sign(k: usize) -> ScalarExpr {
    ScalarExpr::int(if k % 2 == 0 { 1 } else { -1 })
}
