//! Fixtures shared by the criterion benches in `benches/`.

use pseudoalg::lie::unit;
use pseudoalg::linalg::Matrix;
use pseudoalg::pmodules::{current_module, tensor_module, twisted_module, RepSpec, G0};
use pseudoalg::pseudo::{build_W, build_rank1, current_algebra};
use pseudoalg::rational::q;
use pseudoalg::{HElement, LieAlgebra, MultiIndex, PseudoModule, SubalgebraPair, Uea};

/// `(d1 + d2 + d3)^deg / deg!` written out in the PBW basis.
pub fn dense_element(h: &Uea, deg: u32) -> HElement {
    let n = h.dim();
    let mut out = HElement::new();
    for k in MultiIndex::all_up_to(n, deg as i64) {
        if k.degree() == deg {
            out.add_term(k, q(1));
        }
    }
    out
}

/// H-type twisted module over abelian `2 ⊂ 3` with `t = d1` and `R` sp-standard.
pub fn twisted_abelian() -> PseudoModule {
    let mut omega: Matrix = vec![vec![q(0); 2]; 2];
    omega[0][1] = q(1);
    omega[1][0] = q(-1);
    let h2 = build_rank1(&LieAlgebra::abelian(2), &omega, &[q(0), q(0)]).expect("valid data");
    let pair = SubalgebraPair::new(LieAlgebra::abelian(3), 2).expect("valid pair");
    let cur = current_algebra(&h2, &pair).expect("current algebra");
    let rep = RepSpec::standard(&h2, q(0)).expect("standard rep");
    twisted_module(&cur, &rep, &unit(3, 0)).expect("twist outside d")
}

/// `Cur W(heisenberg)` on `H' (x) (ad (x) gl-standard)`.
pub fn current_w_heisenberg() -> PseudoModule {
    let l = LieAlgebra::heisenberg();
    let w = build_W(&l).expect("W");
    let ad: Vec<Matrix> = (0..3).map(|i| l.ad(&unit(3, i))).collect();
    let gl = RepSpec::standard(&w, q(0)).expect("standard rep").u;
    let rep = RepSpec::boxtimes(&ad, &gl, G0::Gl).expect("box product");
    let m = tensor_module(&w, &rep).expect("representation");
    let pair = SubalgebraPair::new(LieAlgebra::abelian(1).direct_sum(&l), 3).expect("valid pair");
    current_module(&m, &pair).expect("current module")
}
