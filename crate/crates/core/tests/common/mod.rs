#![allow(dead_code)]

use std::sync::Arc;

use num_traits::Zero;
use pseudoalg::htensor::{
    free_left_normal, left_coefficients_in_span, left_normalize, left_to_raw, raw_to_free, right_normalize,
    right_to_raw, rs_split_membership, tensor_equal, FreeModule, HModule, RawTensor,
};
use pseudoalg::linalg::Matrix;
use pseudoalg::pmodules::{current_module, tensor_module, RepSpec, G0};
use pseudoalg::pseudo::{build_W, build_rank1, current_algebra};
use pseudoalg::rational::{q, qf};
use pseudoalg::uea::tensor2;
use pseudoalg::PseudoModule;
use pseudoalg::{FreeVec, HElement, HTensor, LieAlgebra, MultiIndex, PseudoAlgebra, SubalgebraPair, Uea, Q};
use rand::Rng;

pub fn rand_q<R: Rng>(rng: &mut R) -> Q {
    let n = rng.gen_range(-6i64..=6);
    let d = rng.gen_range(1i64..=3);
    if n == 0 {
        q(1)
    } else {
        qf(n, d)
    }
}

pub fn rand_index<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> MultiIndex {
    let total = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; n];
    for _ in 0..total {
        e[rng.gen_range(0..n)] += 1;
    }
    MultiIndex::from_slice(&e).unwrap()
}

/// Random index supported on `range`.
pub fn rand_index_in<R: Rng>(rng: &mut R, n: usize, range: std::ops::Range<usize>, max_deg: u32) -> MultiIndex {
    let total = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; n];
    for _ in 0..total {
        e[rng.gen_range(range.clone())] += 1;
    }
    MultiIndex::from_slice(&e).unwrap()
}

pub fn rand_element<R: Rng>(rng: &mut R, n: usize, max_deg: u32, terms: usize) -> HElement {
    let mut h = HElement::new();
    for _ in 0..terms {
        h.add_term(rand_index(rng, n, max_deg), rand_q(rng));
    }
    h
}

pub fn rand_freevec<R: Rng>(rng: &mut R, n: usize, rank: usize, max_deg: u32, terms: usize) -> FreeVec {
    let mut v = FreeVec::new();
    for _ in 0..terms {
        v.add_term((rand_index(rng, n, max_deg), rng.gen_range(0..rank)), rand_q(rng));
    }
    v
}

pub fn rand_raw<R: Rng>(rng: &mut R, n: usize, rank: usize, terms: usize) -> RawTensor<(MultiIndex, usize)> {
    (0..terms)
        .map(|_| {
            (
                rand_element(rng, n, 2, 2),
                rand_element(rng, n, 2, 2),
                rand_freevec(rng, n, rank, 1, 2),
            )
        })
        .collect()
}

pub fn rand_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Q> {
    (0..n).map(|_| q(rng.gen_range(-4i64..=4))).collect()
}

pub fn wedge(n: usize, i: usize, j: usize) -> Matrix {
    let mut r = vec![vec![Q::zero(); n]; n];
    r[i][j] = q(1);
    r[j][i] = q(-1);
    r
}

/// `H(d, 0, omega)` on abelian `d` of dimension 2, with `omega` standard.
pub fn h_abelian2() -> PseudoAlgebra {
    build_rank1(&LieAlgebra::abelian(2), &wedge(2, 0, 1), &[q(0), q(0)]).unwrap()
}

/// The Borel instance: `omega(e ^ h) = 1`, `chi = iota_{2e} omega`, `s = 2e`.
pub fn h_borel() -> PseudoAlgebra {
    build_rank1(&LieAlgebra::sl2_borel(), &wedge(2, 0, 1), &[q(0), q(2)]).unwrap()
}

/// `K(d, theta)` on the Heisenberg algebra with `s = d3`.
pub fn k_heisenberg() -> PseudoAlgebra {
    build_rank1(&LieAlgebra::heisenberg(), &wedge(3, 1, 0), &[q(0), q(0), q(1)]).unwrap()
}

/// Current algebra of `a` over `k^extra + d` with `d` abelian of dimension 2.
pub fn abelian_current(a: &PseudoAlgebra, big: usize) -> PseudoAlgebra {
    let pair = SubalgebraPair::new(LieAlgebra::abelian(big), 2).unwrap();
    current_algebra(a, &pair).unwrap()
}

pub fn sl2_pair() -> SubalgebraPair {
    SubalgebraPair::new(LieAlgebra::sl2(), 2).unwrap()
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    pseudoalg::lie::unit(n, i)
}

/// `sum c * x(a) * y(b)` over the terms of a 2-tensor.
fn contract2(
    h: &Uea,
    t: &HTensor<2>,
    x: impl Fn(&HElement) -> HElement,
    y: impl Fn(&HElement) -> HElement,
) -> HElement {
    let mut out = HElement::new();
    for ([a, b], c) in t {
        let p = h.mul(&x(&h.monomial(*a)), &y(&h.monomial(*b)));
        out.add_scaled(&p, c);
    }
    out
}

/// Each Hopf identity paired with whether it holds on `f` (and `f g`).
pub fn hopf_checks(h: &Uea, f: &HElement, g: &HElement) -> Vec<(&'static str, bool)> {
    let id = |x: &HElement| x.clone();
    let s = |x: &HElement| h.antipode(x);
    let eps = h.scalar(h.counit(f));
    let df = h.coproduct(f);

    let antip = contract2(h, &df, s, id) == eps && contract2(h, &df, id, s) == eps;

    let mut left = HElement::new();
    let mut right = HElement::new();
    for ([a, b], c) in &df {
        left.add_scaled(&h.monomial(*b), &(c * h.counit(&h.monomial(*a))));
        right.add_scaled(&h.monomial(*a), &(c * h.counit(&h.monomial(*b))));
    }
    let cou = &left == f && &right == f;

    // S(h1) h2 (x) h3 = 1 (x) h = h1 S(h2) (x) h3
    let d3 = h.coproduct3(f);
    let mut l3 = HTensor::<2>::new();
    let mut r3 = HTensor::<2>::new();
    for ([a, b, cc], c) in &d3 {
        let (ma, mb) = (h.monomial(*a), h.monomial(*b));
        let tail = h.monomial(*cc);
        l3.add_scaled(&tensor2(&h.mul(&h.antipode(&ma), &mb), &tail), c);
        r3.add_scaled(&tensor2(&h.mul(&ma, &h.antipode(&mb)), &tail), c);
    }
    let one_f = tensor2(&h.one(), f);
    let cou2 = l3 == one_f && r3 == one_f;

    let deprod = h.coproduct(&h.mul(f, g)) == h.tensor_mul(&df, &h.coproduct(g));
    let cocomm = df.map_keys(|[a, b]| [*b, *a]) == df;

    let mut coassoc = HTensor::<3>::new();
    for ([a, b], c) in &df {
        for ([x, y], e) in &h.coproduct(&h.monomial(*a)) {
            coassoc.add_term([*x, *y, *b], c * e);
        }
    }
    let coassoc = coassoc == d3;

    vec![
        ("antipode", antip),
        ("counit", cou),
        ("counit-antipode", cou2),
        ("coproduct multiplicative", deprod),
        ("cocommutative", cocomm),
        ("coassociative", coassoc),
    ]
}

/// Outcome of one random straightening trial.
pub struct StraightenTrial {
    /// `(f (x) g) (x) a.w` equals `(f a1 (x) g a2) (x) w`, and the
    /// left, right and free forms agree on it.
    pub balanced: bool,
    /// A perturbed tensor is detected as different.
    pub separates: bool,
}

pub fn straighten_trial<R: Rng>(rng: &mut R, h: &Arc<Uea>) -> StraightenTrial {
    let n = h.dim();
    let module = FreeModule::new(h.clone(), 2);
    let mut x: RawTensor<(MultiIndex, usize)> = Vec::new();
    let mut y: RawTensor<(MultiIndex, usize)> = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let f = rand_element(rng, n, 2, 2);
        let g = rand_element(rng, n, 2, 2);
        let a = rand_element(rng, n, 2, 2);
        let w = rand_freevec(rng, n, 2, 1, 2);
        x.push((f.clone(), g.clone(), module.act(&a, &w)));
        for ([a1, a2], c) in &h.coproduct(&a) {
            let fa = h.mul(&f, &h.monomial(*a1)).scale(c);
            let ga = h.mul(&g, &h.monomial(*a2));
            y.push((fa, ga, w.clone()));
        }
    }
    let ln = left_normalize(&module, &x);
    let rn = right_normalize(&module, &x);
    let balanced = tensor_equal(&module, &x, &y)
        && right_normalize(&module, &y) == rn
        && right_normalize(&module, &left_to_raw(&module, &ln)) == rn
        && left_normalize(&module, &right_to_raw(&module, &rn)) == ln
        && free_left_normal(h, &raw_to_free(h, &x)) == ln;
    let mut z = y.clone();
    let bump = rand_element(rng, n, 2, 1);
    z.push((bump.clone(), h.one(), module.basis(rng.gen_range(0..2))));
    let separates = bump.is_zero() || !tensor_equal(&module, &x, &z);
    StraightenTrial { balanced, separates }
}

/// Random split presentation over `d = span(d1, d2) + span(d3)` of the
/// Heisenberg algebra, with `U = H . u` for a constant `u`.
/// Returns `(split test, brute force, known answer if any)`.
pub fn membership_trial<R: Rng>(rng: &mut R, h: &Arc<Uea>) -> (bool, bool, Option<bool>) {
    let n = h.dim();
    let module = FreeModule::new(h.clone(), 2);
    let mut u = vec![q(rng.gen_range(-3i64..=3)), q(rng.gen_range(1i64..=3))];
    if rng.gen_bool(0.5) {
        u.swap(0, 1);
    }
    let u_basis = vec![module.constant(&u)];
    let inside = rng.gen_bool(0.5);
    let mut x: RawTensor<(MultiIndex, usize)> = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let f = HElement::single(rand_index_in(rng, n, 0..2, 2), rand_q(rng));
        let g = HElement::single(rand_index_in(rng, n, 2..3, 2), rand_q(rng));
        let v = if inside {
            module.act(&rand_element(rng, n, 2, 2), &u_basis[0])
        } else {
            rand_freevec(rng, n, 2, 2, 3)
        };
        x.push((f, g, v));
    }
    let split = rs_split_membership(&module, &x, &u_basis, 2).expect("split presentation");
    let brute = left_coefficients_in_span(&module, &x, &u_basis);
    (split, brute, inside.then_some(true))
}

/// `Cur W(heisenberg)` over `k + heisenberg` (extra direction first) acting on
/// `H' (x) R` with `R = ad (x) gl-standard`.
pub fn cur_w_heisenberg() -> PseudoModule {
    let l = LieAlgebra::heisenberg();
    let w = build_W(&l).unwrap();
    let ad: Vec<Matrix> = (0..3).map(|i| l.ad(&unit(3, i))).collect();
    let gl = RepSpec::standard(&w, q(0)).unwrap().u;
    let rep = RepSpec::boxtimes(&ad, &gl, G0::Gl).unwrap();
    let m = tensor_module(&w, &rep).unwrap();
    let pair = SubalgebraPair::new(LieAlgebra::abelian(1).direct_sum(&l), 3).unwrap();
    current_module(&m, &pair).unwrap()
}

/// The 1-dimensional `R` of `d_+ + sp` with `rho(c) = 1` and everything else zero.
pub fn central_one(a: &PseudoAlgebra) -> RepSpec {
    let mut rep = RepSpec::trivial(a).unwrap();
    let n = a.base().dim();
    rep.pi[n] = vec![vec![q(1)]];
    rep
}
