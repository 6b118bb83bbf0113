mod common;

use proptest::prelude::*;
use pseudoalg::error::Error;
use pseudoalg::pmodules::{
    admissible_t_space, c_of_v_check, ker_solver, reconstruct, singular_vectors, tensor_module,
    tensor_module_unchecked, twisted_module, twisted_module_unchecked, verify_action, RepSpec,
};
use pseudoalg::rational::{q, qf};
use pseudoalg::{PseudoModule, Q};

fn round_trips(m: &PseudoModule) -> bool {
    let a = m.algebra();
    a.generators()
        .iter()
        .all(|g| (0..m.dim_r()).all(|v| reconstruct(m, g, &m.basis(v)) == m.act(g, &m.basis(v))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn abelian_twists_are_admissible(x in -4i64..=4, y in -4i64..=4, z in 1i64..=4) {
        let h2 = common::h_abelian2();
        let cur = common::abelian_current(&h2, 3);
        let t = vec![qf(z, 1), qf(x, z), qf(y, z)];
        for rep in [RepSpec::trivial(&h2).unwrap(), RepSpec::standard(&h2, q(0)).unwrap()] {
            let m = twisted_module(&cur, &rep, &t).unwrap();
            prop_assert!(verify_action(&m).is_empty());
            prop_assert!(round_trips(&m));
        }
    }
}

#[test]
fn borel_twist_outside_d_fails() {
    let b = common::h_borel();
    let pair = common::sl2_pair();
    let space = admissible_t_space(&pair, b.symplectic().unwrap()).unwrap();
    assert!(!space.exceptional());
    let cur = pseudoalg::pseudo::current_algebra(&b, &pair).unwrap();
    let m = twisted_module(&cur, &RepSpec::trivial(&cur).unwrap(), &[q(1), q(0), q(0)]).unwrap();
    assert!(!verify_action(&m).is_empty());
}

#[test]
fn non_representations_are_rejected() {
    let h2 = common::h_abelian2();
    let rep = common::central_one(&h2);
    assert!(!rep.violations(&h2).unwrap().is_empty());
    assert!(matches!(tensor_module(&h2, &rep), Err(Error::Precondition(_))));
    let m = tensor_module_unchecked(&h2, &rep).unwrap();
    assert!(!verify_action(&m).is_empty());
}

#[test]
fn singular_vectors_are_constants() {
    let h2 = common::h_abelian2();
    let cur = common::abelian_current(&h2, 3);
    let t: Vec<Q> = vec![q(1), q(0), q(0)];
    for rep in [common::central_one(&h2), RepSpec::standard(&h2, q(0)).unwrap()] {
        let m = twisted_module_unchecked(&cur, &rep, &t).unwrap();
        let sing = singular_vectors(&m, 2);
        assert_eq!(sing.len(), m.dim_r());
        assert!(sing.iter().all(|v| v.keys().all(|(k, _)| k.is_zero())));
    }
}

#[test]
fn current_w_module() {
    let m = common::cur_w_heisenberg();
    assert_eq!(m.dim_r(), 9);
    assert!(verify_action(&m).is_empty());
    assert!(round_trips(&m));
    assert!(ker_solver(&m, 1).is_empty());
    let sing = singular_vectors(&m, 1);
    assert!(sing.iter().all(|v| v.keys().all(|(k, _)| k.get(0) == 0)));
}

#[test]
fn coefficient_space_matches_kernel() {
    let h2 = common::h_abelian2();
    for rep in [RepSpec::standard(&h2, q(0)).unwrap(), common::central_one(&h2)] {
        let m = tensor_module_unchecked(&h2, &rep).unwrap();
        let cv = c_of_v_check(&m, 2).unwrap();
        assert!(cv.equal, "{cv:?}");
    }
    let w = pseudoalg::pseudo::build_W(&pseudoalg::LieAlgebra::abelian(1)).unwrap();
    let m = tensor_module(&w, &RepSpec::trivial(&w).unwrap()).unwrap();
    assert!(c_of_v_check(&m, 1).is_err());
}
