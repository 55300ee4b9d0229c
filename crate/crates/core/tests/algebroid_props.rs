mod common;

use algebroid_core::algebroid::LieAlgebroid;
use algebroid_core::coeffring::{q, ScalarExpr};
use algebroid_core::exterior::{contract_mv, AForm, Graded, Kind, MultiVector};
use common::{form, multivector, rotation_action, sign, so3_point, tangent};
use proptest::prelude::*;

fn algebroids() -> Vec<LieAlgebroid> {
    vec![tangent(3), tangent(4), rotation_action(), so3_point()]
}

fn pick(which: usize) -> LieAlgebroid {
    algebroids().swap_remove(which % 4)
}

fn retarget<K: Kind>(x: &Graded<K>, rank: usize) -> Graded<K> {
    // Samples are drawn at rank 4; drop components outside a smaller rank.
    let keep = (1u32 << rank) - 1;
    Graded::<K>::from_coeffs(
        rank,
        x.degree(),
        x.terms().filter(|(m, _)| *m & !keep == 0).map(|(m, f)| (*m, f.clone())),
    )
}

fn strip_vars<K: Kind>(x: &Graded<K>, nvars: usize) -> Graded<K> {
    // Point algebroids have no coordinates: keep constant terms only.
    if nvars > 0 {
        return x.clone();
    }
    let origin = vec![q(0); 4];
    x.map(|f| ScalarExpr::constant(f.evaluate(&origin).unwrap_or_default()))
}

fn fit<K: Kind>(a: &LieAlgebroid, x: &Graded<K>) -> Graded<K> {
    strip_vars(&retarget(x, a.rank()), a.base_dim())
}

#[test]
fn frame_axioms_hold() {
    for a in algebroids() {
        assert!(a.check_lie_axioms().all_ok(), "{:?}", a.check_lie_axioms());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn d_squared_vanishes(which in 0usize..4, k in 0usize..=3, phi in form(4, 3, 4), low in form(4, 1, 4)) {
        let a = pick(which);
        let phi = fit(&a, &if k == 1 { low } else { phi });
        let dd = a.d_a(&a.d_a(&phi).unwrap()).unwrap();
        prop_assert!(dd.is_zero(), "{}", dd.format(a.ctx()));
    }

    #[test]
    fn cartan_formula(which in 0usize..4, x in multivector(4, 1, 4), phi in form(4, 2, 4)) {
        let a = pick(which);
        let (x, phi) = (fit(&a, &x), fit(&a, &phi));
        let lhs = a.lie_derivative(&x, &phi).unwrap();
        let rhs = a.d_a(&contract_mv(&x, &phi).unwrap()).unwrap()
            .add(&contract_mv(&x, &a.d_a(&phi).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_commutes_with_d(which in 0usize..4, x in multivector(4, 1, 4), phi in form(4, 1, 4)) {
        let a = pick(which);
        let (x, phi) = (fit(&a, &x), fit(&a, &phi));
        let lhs = a.d_a(&a.lie_derivative(&x, &phi).unwrap()).unwrap();
        let rhs = a.lie_derivative(&x, &a.d_a(&phi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_graded_jacobi(
        which in 0usize..4,
        p in 1usize..=2, q in 1usize..=2, r in 0usize..=1,
        x1 in multivector(4, 1, 4), x2 in multivector(4, 2, 4),
        y1 in multivector(4, 1, 4), y2 in multivector(4, 2, 4),
        z0 in common::poly_scalar(4), z1 in multivector(4, 1, 4),
    ) {
        let a = pick(which);
        let m = a.rank();
        let pp = fit(&a, &if p == 1 { x1 } else { x2 });
        let qq = fit(&a, &if q == 1 { y1 } else { y2 });
        let rr = fit(&a, &if r == 0 { MultiVector::scalar(4, z0) } else { z1 });
        prop_assume!(pp.degree() + qq.degree() + rr.degree() <= 5 && pp.degree() <= m && qq.degree() <= m);
        let br = |u: &MultiVector, v: &MultiVector| a.schouten_bracket(u, v).unwrap();
        let (dp, dq, dr) = (pp.degree(), qq.degree(), rr.degree());
        let cyc = br(&pp, &br(&qq, &rr)).scale(&sign((dp + 1) * (dr + 1)))
            .add(&br(&qq, &br(&rr, &pp)).scale(&sign((dq + 1) * (dp + 1))))
            .add(&br(&rr, &br(&pp, &qq)).scale(&sign((dr + 1) * (dq + 1))));
        prop_assert!(cyc.is_zero(), "{}", cyc.format(a.ctx()));
    }

    #[test]
    fn schouten_graded_antisymmetry(which in 0usize..4, x in multivector(4, 2, 4), y in multivector(4, 1, 4)) {
        let a = pick(which);
        let (x, y) = (fit(&a, &x), fit(&a, &y));
        let xy = a.schouten_bracket(&x, &y).unwrap();
        let yx = a.schouten_bracket(&y, &x).unwrap();
        prop_assert_eq!(xy, yx.scale(&sign((x.degree() + 1) * (y.degree() + 1))).neg());
    }

    #[test]
    fn bracket_leibniz_rule(which in 0usize..4, x in multivector(4, 1, 4), y in multivector(4, 1, 4), f in common::poly_scalar(4)) {
        let a = pick(which);
        let (x, y) = (fit(&a, &x), fit(&a, &y));
        let f = fit(&a, &AForm::scalar(4, f)).scalar_value();
        let lhs = a.bracket_sections(&x, &y.scale(&f)).unwrap();
        let rhs = a.bracket_sections(&x, &y).unwrap().scale(&f).add(&y.scale(&a.anchor_apply(&x, &f).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }
}
