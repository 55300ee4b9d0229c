mod common;

use algebroid_core::coeffring::{RingContext, ScalarExpr};
use common::scalar;
use proptest::prelude::*;

fn ctx() -> RingContext {
    RingContext::new(&["x1", "x2", "x3"], &[("E1", "x1")]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_then_parsing_is_identity(e in scalar(3)) {
        let c = ctx();
        let printed = c.format(&e);
        let back = c.parse(&printed).unwrap();
        prop_assert_eq!(&back, &e, "printed as {}", printed);
        prop_assert_eq!(c.format(&back), printed);
    }

    #[test]
    fn partials_commute(e in scalar(3), i in 0usize..3, j in 0usize..3) {
        let a = e.partial_derivative(i).partial_derivative(j);
        let b = e.partial_derivative(j).partial_derivative(i);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn derivative_is_a_derivation(e in scalar(3), f in scalar(3), i in 0usize..3) {
        let lhs = (&e * &f).partial_derivative(i);
        let rhs = &(&e.partial_derivative(i) * &f) + &(&e * &f.partial_derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_laws(a in scalar(3), b in scalar(3), c in scalar(3)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in common::poly_scalar(3), b in common::poly_scalar(3), p in prop::collection::vec(-3i64..=3, 3)) {
        let pt: Vec<_> = p.iter().map(|&v| algebroid_core::coeffring::q(v)).collect();
        let ab = (&a * &b).evaluate(&pt).unwrap();
        prop_assert_eq!(ab, a.evaluate(&pt).unwrap() * b.evaluate(&pt).unwrap());
    }
}

#[test]
fn exp_product_rule() {
    let c = ctx();
    let e = c.parse("E1 * x2").unwrap();
    assert_eq!(e.partial_derivative(0), e);
    assert_eq!(&c.parse("exp(x1) * exp(-x1)").unwrap(), &ScalarExpr::one());
}
