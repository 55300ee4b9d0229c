mod common;

use algebroid_core::coeffring::ScalarExpr;
use algebroid_core::exterior::{contract_form, contract_mv, pairing, subsets, AForm, MultiVector};
use common::{form, multivector, scalar, sign};
use proptest::prelude::*;

/// Counts basis triples violating ⟨ι_ξφ,η⟩ = s(i)⟨φ,ξ∧η⟩ and ⟨ψ,ι_φξ⟩ = s(i)⟨φ∧ψ,ξ⟩,
/// grouped by i = deg ξ (resp. deg φ), over all ranks up to `max_rank`.
fn pairing_law_violations(max_rank: usize, s: impl Fn(usize) -> i64) -> Vec<(usize, usize)> {
    let mut bad = vec![(0, 0); max_rank + 1];
    for m in 1..=max_rank {
        for i in 0..=m {
            for j in i..=m {
                for xm in subsets(m, i) {
                    for pm in subsets(m, j) {
                        let one = ScalarExpr::one;
                        let xi = MultiVector::single(m, xm, one());
                        let phi = AForm::single(m, pm, one());
                        let contracted = contract_mv(&xi, &phi).unwrap();
                        for em in subsets(m, j - i) {
                            let eta = MultiVector::single(m, em, one());
                            let lhs = pairing(&contracted, &eta).unwrap();
                            let rhs = pairing(&phi, &xi.wedge(&eta).unwrap()).unwrap();
                            if lhs != &rhs * &ScalarExpr::int(s(i)) {
                                bad[i].0 += 1;
                            }
                        }
                        // The dual law with φ of degree i acting on ξ of degree j.
                        let phi_i = AForm::single(m, xm, one());
                        let xi_j = MultiVector::single(m, pm, one());
                        let c2 = contract_form(&phi_i, &xi_j).unwrap();
                        for em in subsets(m, j - i) {
                            let psi = AForm::single(m, em, one());
                            let lhs = pairing(&psi, &c2).unwrap();
                            let rhs = pairing(&phi_i.wedge(&psi).unwrap(), &xi_j).unwrap();
                            if lhs != &rhs * &ScalarExpr::int(s(i)) {
                                bad[i].1 += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    bad
}

#[test]
fn sign_free_pairing_laws_hold_on_all_basis_triples_to_rank_5() {
    let bad = pairing_law_violations(5, |_| 1);
    assert!(bad.iter().all(|&(a, b)| a == 0 && b == 0), "{bad:?}");
}

/// The (−1)^{⌊i/2⌋} variant differs exactly where ⌊i/2⌋ is odd, i.e. i ≡ 2, 3 (mod 4).
#[test]
fn floor_half_sign_law_fails_exactly_for_i_2_and_3_mod_4() {
    let bad = pairing_law_violations(5, |i| if (i / 2) % 2 == 0 { 1 } else { -1 });
    for (i, &(a, b)) in bad.iter().enumerate() {
        let expect_fail = i % 4 == 2 || i % 4 == 3;
        assert_eq!(a > 0, expect_fail, "contraction by {i}-vectors: {a} violations");
        assert_eq!(b > 0, expect_fail, "contraction by {i}-forms: {b} violations");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pairing_laws_with_coefficients(
        i in 0usize..=2, extra in 0usize..=2,
        f in scalar(3), g in scalar(3), h in scalar(3),
        seed in any::<(u8, u8, u8)>(),
    ) {
        let m = 4;
        let j = i + extra;
        let pick = |k: usize, s: u8| { let v = subsets(m, k); v[s as usize % v.len()] };
        let xi = MultiVector::single(m, pick(i, seed.0), f);
        let phi = AForm::single(m, pick(j, seed.1), g);
        let eta = MultiVector::single(m, pick(extra, seed.2), h);
        let lhs = pairing(&contract_mv(&xi, &phi).unwrap(), &eta).unwrap();
        let rhs = pairing(&phi, &xi.wedge(&eta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn single_contraction_is_a_graded_derivation(
        x in multivector(4, 1, 2), p in 0usize..=2, q in 0usize..=2,
        phi_seed in form(4, 2, 2), psi_seed in form(4, 1, 2),
    ) {
        let phi = if p == 2 { phi_seed } else { truncate(&phi_seed, p) };
        let psi = if q == 1 { psi_seed } else { truncate(&psi_seed, q) };
        let lhs = contract_mv(&x, &phi.wedge(&psi).unwrap());
        if phi.degree() + psi.degree() == 0 {
            return Ok(());
        }
        let lhs = lhs.unwrap();
        let a = if phi.degree() > 0 { contract_mv(&x, &phi).unwrap().wedge(&psi).unwrap() } else { AForm::zero(4, lhs.degree()) };
        let b = if psi.degree() > 0 { phi.wedge(&contract_mv(&x, &psi).unwrap()).unwrap() } else { AForm::zero(4, lhs.degree()) };
        prop_assert_eq!(lhs, a.add(&b.scale(&sign(phi.degree()))));
    }

    #[test]
    fn form_contraction_is_a_graded_derivation_on_multivectors(
        t in form(4, 1, 2), a in multivector(4, 2, 2), b in multivector(4, 1, 2),
    ) {
        let lhs = contract_form(&t, &a.wedge(&b).unwrap()).unwrap();
        let rhs = contract_form(&t, &a).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&contract_form(&t, &b).unwrap()).unwrap().scale(&sign(a.degree())));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative_and_associative(
        a in form(5, 1, 2), b in form(5, 2, 2), c in form(5, 1, 2),
    ) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(&ab, &ba.scale(&sign(a.degree() * b.degree())));
        prop_assert_eq!(ab.wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }
}

/// A form of lower degree built from the first coefficient, for mixing degrees.
fn truncate(phi: &AForm, p: usize) -> AForm {
    let f = phi.terms().next().map(|(_, f)| f.clone()).unwrap_or_else(ScalarExpr::one);
    if p == 0 {
        return AForm::scalar(4, f);
    }
    AForm::single(4, subsets(4, p)[0], f)
}
