mod common;

use pseudoalg::error::Error;
use pseudoalg::pseudo::{
    build_S, build_W, build_rank1, check_rank1_identities, verify_jacobi, verify_skew, verify_skew_with,
};
use pseudoalg::rational::q;
use pseudoalg::{Kind, LieAlgebra, PseudoAlgebra};

fn clean(a: &PseudoAlgebra) {
    let s = verify_skew(a);
    assert!(s.is_empty(), "{} skew: {:?}", a.tag(), s.residuals.first());
    let j = verify_jacobi(a);
    assert!(j.is_empty(), "{} jacobi: {:?}", a.tag(), j.residuals.first());
}

#[test]
fn standard_instances_satisfy_axioms() {
    clean(&build_W(&LieAlgebra::abelian(1)).unwrap());
    clean(&build_W(&LieAlgebra::sl2_borel()).unwrap());
    clean(&build_S(&LieAlgebra::abelian(2), &[q(0), q(0)]).unwrap());
    clean(&common::h_abelian2());
    clean(&common::h_borel());
    clean(&common::k_heisenberg());
}

#[test]
fn current_algebras_satisfy_axioms() {
    clean(&common::abelian_current(&common::h_abelian2(), 3));
    let cur = pseudoalg::pseudo::current_algebra(&common::h_borel(), &common::sl2_pair()).unwrap();
    assert!(cur.is_current());
    clean(&cur);
}

#[test]
fn rank1_classification() {
    assert_eq!(common::h_abelian2().kind(), Kind::H);
    assert_eq!(common::h_borel().kind(), Kind::H);
    assert_eq!(common::h_borel().chi(), Some(&[q(2), q(0)][..]));
    assert_eq!(common::k_heisenberg().kind(), Kind::K);
    let rep = check_rank1_identities(&LieAlgebra::heisenberg(), &common::wedge(3, 0, 1), &[q(0), q(0), q(1)]).unwrap();
    assert!(!rep.passed());
    assert!(rep.failure().is_some());
    assert!(matches!(
        build_rank1(&LieAlgebra::heisenberg(), &common::wedge(3, 0, 1), &[q(0), q(0), q(1)]),
        Err(Error::Identity(_))
    ));
}

#[test]
fn every_entry_matters_for_skew() {
    let w = build_W(&LieAlgebra::heisenberg()).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let mut t = w.table().clone();
            // a diagonal entry stays skew under scaling
            if i == j || t[i][j].is_zero() {
                continue;
            }
            t[i][j] = t[i][j].scale(&q(2));
            assert!(!verify_skew_with(&w, &t).is_empty(), "entry ({i}, {j})");
        }
    }
}
