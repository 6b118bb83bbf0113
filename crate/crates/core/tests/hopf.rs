mod common;

use std::sync::Arc;

use proptest::prelude::*;
use pseudoalg::rational::qf;
use pseudoalg::{HElement, LieAlgebra, MultiIndex, Uea};

fn element(n: usize) -> impl Strategy<Value = HElement> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), -5i64..=5, 1i64..=3), 1..4).prop_map(|terms| {
        let mut h = HElement::new();
        for (e, a, b) in terms {
            h.add_term(MultiIndex::from_slice(&e).unwrap(), qf(a, b));
        }
        h
    })
}

fn check(h: &Uea, f: &HElement, g: &HElement) -> Result<(), TestCaseError> {
    for (name, ok) in common::hopf_checks(h, f, g) {
        prop_assert!(ok, "{name} fails for {f:?}");
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn abelian(f in element(2), g in element(2)) {
        check(&Uea::new(LieAlgebra::abelian(2)).unwrap(), &f, &g)?;
    }

    #[test]
    fn heisenberg(f in element(3), g in element(3)) {
        check(&Uea::new(LieAlgebra::heisenberg()).unwrap(), &f, &g)?;
    }

    #[test]
    fn sl2(f in element(3), g in element(3)) {
        check(&Uea::new(LieAlgebra::sl2()).unwrap(), &f, &g)?;
    }

    #[test]
    fn multiplication_is_associative(a in element(3), b in element(3), c in element(3)) {
        let h = Arc::new(Uea::new(LieAlgebra::sl2()).unwrap());
        prop_assert_eq!(h.mul(&h.mul(&a, &b), &c), h.mul(&a, &h.mul(&b, &c)));
    }

    #[test]
    fn antipode_reverses_products(a in element(3), b in element(3)) {
        let h = Uea::new(LieAlgebra::heisenberg()).unwrap();
        prop_assert_eq!(h.antipode(&h.mul(&a, &b)), h.mul(&h.antipode(&b), &h.antipode(&a)));
    }
}
