//! Normal forms in `(H (x) H) (x)_H M` and `(H (x) H (x) H) (x)_H M`.
//!
//! `H (x) H` is a right `H`-module through the coproduct, so a tensor
//! `(f (x) g) (x)_H m` has many presentations. Three canonical shapes are
//! provided:
//!
//! * left normal form `sum (d^(K) (x) 1) (x)_H m_K`,
//! * right normal form `sum (1 (x) d^(K)) (x)_H n_K`,
//! * triple normal form `sum (d^(K) (x) d^(L) (x) 1) (x)_H m_KL`.
//!
//! When `M = H (x) k^d` is free, `(H^{(x)n}) (x)_H M` is identified with
//! `H^{(x)n} (x) k^d` via `F (x)_H (h (x) e) -> F Delta(h) (x) e`. This
//! "free form" is canonical as well and is what the verification engine uses;
//! [`FreeTensor`] is its type.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::representation_failures;
use crate::linalg::{self, Matrix};
use crate::rational::Q;
use crate::sparse::Sparse;
use crate::uea::{outer_into, HElement, HTensor, MultiIndex, Uea};

/// An element of a free module `H (x) k^d`, keyed by `(K, basis index)`.
pub type FreeVec = Sparse<(MultiIndex, usize)>;

/// An element of `H^{(x)N} (x) k^d`, the free form of `(H^{(x)N}) (x)_H (H (x) k^d)`.
pub type FreeTensor<const N: usize> = Sparse<([MultiIndex; N], usize)>;

/// Raw presentation `sum (f (x) g) (x)_H m`.
pub type RawTensor<B> = Vec<(HElement, HElement, Sparse<B>)>;

/// `sum (d^(K) (x) 1) (x)_H m_K`, keyed by `(K, module basis element)`.
pub type LeftNormal<B> = Sparse<(MultiIndex, B)>;

/// `sum (1 (x) d^(K)) (x)_H n_K`.
pub type RightNormal<B> = Sparse<(MultiIndex, B)>;

/// `sum (d^(K) (x) d^(L) (x) 1) (x)_H m_KL`.
pub type TripleNormal<B> = Sparse<([MultiIndex; 2], B)>;

/// A left `H`-module with a distinguished linear basis.
pub trait HModule: Sync {
    type B: Ord + Clone + Debug + Send + Sync;

    fn uea(&self) -> &Uea;

    /// `d^(K) . b`.
    fn act_mono(&self, k: &MultiIndex, b: &Self::B) -> Sparse<Self::B>;

    fn act(&self, h: &HElement, v: &Sparse<Self::B>) -> Sparse<Self::B> {
        let mut out = Sparse::new();
        for (k, c) in h {
            for (b, d) in v {
                out.add_scaled(&self.act_mono(k, b), &(c * d));
            }
        }
        out
    }
}

/// `H (x) k^rank` with `H` acting by left multiplication.
#[derive(Clone, Debug)]
pub struct FreeModule {
    h: Arc<Uea>,
    rank: usize,
}

impl FreeModule {
    pub fn new(h: Arc<Uea>, rank: usize) -> Self {
        Self { h, rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `1 (x) e_i`.
    pub fn basis(&self, i: usize) -> FreeVec {
        FreeVec::single((self.h.zero_index(), i), Q::one())
    }

    /// `1 (x) v` for a coordinate vector `v`.
    pub fn constant(&self, v: &[Q]) -> FreeVec {
        v.iter()
            .enumerate()
            .map(|(i, c)| ((self.h.zero_index(), i), c.clone()))
            .collect()
    }
}

impl HModule for FreeModule {
    type B = (MultiIndex, usize);

    fn uea(&self) -> &Uea {
        &self.h
    }

    fn act_mono(&self, k: &MultiIndex, b: &Self::B) -> Sparse<Self::B> {
        self.h.mono_mul(k, &b.0).map_keys(|x| (*x, b.1))
    }
}

/// A finite-dimensional `H`-module given by matrices `rho(d_i)`.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    h: Arc<Uea>,
    mats: Vec<Matrix>,
}

impl FiniteModule {
    /// Fails unless the matrices represent `d`.
    pub fn new(h: Arc<Uea>, mats: Vec<Matrix>) -> Result<Self> {
        let bad = representation_failures(h.lie(), &mats)?;
        if let Some((i, j)) = bad.first() {
            return Err(Error::Precondition(format!(
                "matrices violate the relation for [d{}, d{}]",
                i + 1,
                j + 1
            )));
        }
        Ok(Self { h, mats })
    }

    pub fn dim(&self) -> usize {
        self.mats.first().map_or(0, |m| m.len())
    }

    fn apply(&self, i: usize, v: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&self.mats[i], v)
    }
}

impl HModule for FiniteModule {
    type B = usize;

    fn uea(&self) -> &Uea {
        &self.h
    }

    fn act_mono(&self, k: &MultiIndex, b: &usize) -> Sparse<usize> {
        let mut v = vec![Q::zero(); self.dim()];
        v[*b] = Q::one();
        // d^K = d_1^{k_1} ... d_N^{k_N}: apply the rightmost factor first
        for i in (0..k.len()).rev() {
            for _ in 0..k.get(i) {
                v = self.apply(i, &v);
            }
        }
        let scale = Q::one() / k.factorial();
        v.into_iter().enumerate().map(|(i, c)| (i, c * &scale)).collect()
    }
}

/// `(f (x) g) (x)_H m -> sum (f S(g_(1)) (x) 1) (x)_H g_(2) m`.
pub fn left_normalize<M: HModule>(module: &M, x: &RawTensor<M::B>) -> LeftNormal<M::B> {
    let h = module.uea();
    let mut out = LeftNormal::new();
    for (f, g, m) in x {
        for (gk, gc) in g {
            for i in gk.sub_indices() {
                let rest = gk.sub(&i).expect("sub-index");
                let left = h.mul(f, &h.mono_antipode(&i));
                let right = module.act(&HElement::single(rest, gc.clone()), m);
                for (lk, lc) in &left {
                    for (rb, rc) in &right {
                        out.add_term((*lk, rb.clone()), lc * rc);
                    }
                }
            }
        }
    }
    out
}

/// `(f (x) g) (x)_H m -> sum (1 (x) g S(f_(2))) (x)_H f_(1) m`.
pub fn right_normalize<M: HModule>(module: &M, x: &RawTensor<M::B>) -> RightNormal<M::B> {
    let h = module.uea();
    let mut out = RightNormal::new();
    for (f, g, m) in x {
        for (fk, fc) in f {
            for i in fk.sub_indices() {
                let rest = fk.sub(&i).expect("sub-index");
                let right = h.mul(g, &h.mono_antipode(&rest));
                let left = module.act(&HElement::single(i, fc.clone()), m);
                for (rk, rc) in &right {
                    for (lb, lc) in &left {
                        out.add_term((*rk, lb.clone()), lc * rc);
                    }
                }
            }
        }
    }
    out
}

/// `(f (x) g (x) h) (x)_H m -> sum ((f (x) g) Delta(S(h_(1))) (x) 1) (x)_H h_(2) m`.
pub fn triple_normalize<M: HModule>(
    module: &M,
    x: &[(HElement, HElement, HElement, Sparse<M::B>)],
) -> TripleNormal<M::B> {
    let h = module.uea();
    let mut out = TripleNormal::new();
    for (f, g, l, m) in x {
        let fg = crate::uea::tensor2(f, g);
        for (lk, lc) in l {
            for i in lk.sub_indices() {
                let rest = lk.sub(&i).expect("sub-index");
                let left = h.tensor_mul(&fg, &h.coproduct(&h.mono_antipode(&i)));
                let right = module.act(&HElement::single(rest, lc.clone()), m);
                for (key, c) in &left {
                    for (rb, rc) in &right {
                        out.add_term((*key, rb.clone()), c * rc);
                    }
                }
            }
        }
    }
    out
}

/// Raw presentation of a left normal form.
pub fn left_to_raw<M: HModule>(module: &M, x: &LeftNormal<M::B>) -> RawTensor<M::B> {
    let one = module.uea().one();
    x.iter()
        .map(|((k, b), c)| {
            (
                HElement::single(*k, c.clone()),
                one.clone(),
                Sparse::single(b.clone(), Q::one()),
            )
        })
        .collect()
}

/// Raw presentation of a right normal form.
pub fn right_to_raw<M: HModule>(module: &M, x: &RightNormal<M::B>) -> RawTensor<M::B> {
    let one = module.uea().one();
    x.iter()
        .map(|((k, b), c)| {
            (
                one.clone(),
                HElement::single(*k, c.clone()),
                Sparse::single(b.clone(), Q::one()),
            )
        })
        .collect()
}

/// Equality in `(H (x) H) (x)_H M`, decided on left normal forms.
pub fn tensor_equal<M: HModule>(module: &M, a: &RawTensor<M::B>, b: &RawTensor<M::B>) -> bool {
    left_normalize(module, a) == left_normalize(module, b)
}

/// Coefficients `m_K` of a left normal form, grouped by `K`.
pub fn coefficients<B: Ord + Clone>(x: &LeftNormal<B>) -> BTreeMap<MultiIndex, Sparse<B>> {
    let mut out: BTreeMap<MultiIndex, Sparse<B>> = BTreeMap::new();
    for ((k, b), c) in x {
        out.entry(*k).or_default().add_term(b.clone(), c.clone());
    }
    out
}

/// Whether `w` lies in the `H`-span of `gens`, searching for coefficients of
/// PBW degree at most `bound`.
pub fn in_h_span(module: &FreeModule, gens: &[FreeVec], w: &FreeVec, bound: i64) -> bool {
    if w.is_zero() {
        return true;
    }
    let n = module.uea().dim();
    let mut cols = Vec::new();
    for g in gens {
        for k in MultiIndex::all_up_to(n, bound) {
            cols.push(module.act(&HElement::single(k, Q::one()), g));
        }
    }
    linalg::solve(&cols, w).is_some()
}

fn fil_degree_vec(w: &FreeVec) -> i64 {
    w.keys().map(|(k, _)| k.degree() as i64).max().unwrap_or(-1)
}

/// Coefficients `v_J` of a tensor presented as
/// `sum (d^(K) (x) d^(L)) (x)_H v_{K+L}` with `K` supported on the first
/// `split` indices and `L` on the rest.
pub fn alpha_coefficients(x: &RawTensor<(MultiIndex, usize)>, split: usize) -> Result<BTreeMap<MultiIndex, FreeVec>> {
    let mut out: BTreeMap<MultiIndex, FreeVec> = BTreeMap::new();
    for (f, g, v) in x {
        for (fk, fc) in f {
            if fk.support().any(|i| i >= split) {
                return Err(Error::Precondition(format!(
                    "first factor {fk} is not supported on the first {split} indices"
                )));
            }
            for (gk, gc) in g {
                if gk.support().any(|i| i < split) {
                    return Err(Error::Precondition(format!(
                        "second factor {gk} is supported on the first {split} indices"
                    )));
                }
                out.entry(fk.add(gk)).or_default().add_scaled(v, &(fc * gc));
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Decides membership of a split presentation in `(H (x) H) (x)_H U`, with
/// `U` the `H`-span of `u_basis`, by testing each coefficient `v_J`.
pub fn rs_split_membership(
    module: &FreeModule,
    x: &RawTensor<(MultiIndex, usize)>,
    u_basis: &[FreeVec],
    split: usize,
) -> Result<bool> {
    let coeffs = alpha_coefficients(x, split)?;
    Ok(coeffs
        .values()
        .all(|v| in_h_span(module, u_basis, v, fil_degree_vec(v))))
}

/// The same decision made on the left normal form coefficients.
pub fn left_coefficients_in_span(module: &FreeModule, x: &RawTensor<(MultiIndex, usize)>, u_basis: &[FreeVec]) -> bool {
    let ln = left_normalize(module, x);
    coefficients(&ln)
        .values()
        .all(|v| in_h_span(module, u_basis, v, fil_degree_vec(v)))
}

// ---------------------------------------------------------------------------
// Free forms and composition of pseudoproducts.

/// `e_alpha * (1 (x) v_beta)` for every pair of basis indices.
pub type ActionTable = Vec<Vec<FreeTensor<2>>>;

/// Free form of a raw tensor over a free module.
pub fn raw_to_free(h: &Uea, x: &RawTensor<(MultiIndex, usize)>) -> FreeTensor<2> {
    let mut out = FreeTensor::new();
    for (f, g, v) in x {
        let fg = crate::uea::tensor2(f, g);
        for ((k, b), c) in v {
            let prod = h.tensor_mul(&fg, &h.coproduct(&HElement::single(*k, c.clone())));
            for (key, d) in &prod {
                out.add_term((*key, *b), d.clone());
            }
        }
    }
    out
}

/// Raw presentation of a free form: `(f (x) g) (x)_H (1 (x) e_b)`.
pub fn free_to_raw(h: &Uea, x: &FreeTensor<2>) -> RawTensor<(MultiIndex, usize)> {
    x.iter()
        .map(|(([a, b], i), c)| {
            (
                HElement::single(*a, c.clone()),
                HElement::single(*b, Q::one()),
                FreeVec::single((h.zero_index(), *i), Q::one()),
            )
        })
        .collect()
}

/// Left normal form of a free-form tensor.
pub fn free_left_normal(h: &Uea, x: &FreeTensor<2>) -> LeftNormal<(MultiIndex, usize)> {
    let mut out = LeftNormal::new();
    for (([a, b], e), c) in x {
        for i in b.sub_indices() {
            let rest = b.sub(&i).expect("sub-index");
            let left = h.mul(&HElement::single(*a, c.clone()), &h.mono_antipode(&i));
            for (k, d) in &left {
                out.add_term((*k, (rest, *e)), d.clone());
            }
        }
    }
    out
}

/// Triple normal form of a free-form tensor in `H^{(x)3} (x) k^d`.
pub fn free_triple_normal(h: &Uea, x: &FreeTensor<3>) -> TripleNormal<(MultiIndex, usize)> {
    let mut out = TripleNormal::new();
    for (([a, b, l], e), c) in x {
        let ab = HTensor::single([*a, *b], c.clone());
        for i in l.sub_indices() {
            let rest = l.sub(&i).expect("sub-index");
            let left = h.tensor_mul(&ab, &h.coproduct(&h.mono_antipode(&i)));
            for (k, d) in &left {
                out.add_term((*k, (rest, *e)), d.clone());
            }
        }
    }
    out
}

/// `(F) . x` with `F` multiplying the tensor legs on the left.
pub fn mul_free<const N: usize>(h: &Uea, f: &HTensor<N>, x: &FreeTensor<N>) -> FreeTensor<N> {
    let mut out = FreeTensor::new();
    for (fk, fc) in f {
        for ((xk, e), xc) in x {
            let legs: Vec<Arc<HElement>> = (0..N).map(|i| h.mono_mul(&fk[i], &xk[i])).collect();
            let mut prod = HTensor::<N>::new();
            outer_into(&mut prod, &legs, &(fc * xc));
            for (k, c) in prod.iter() {
                out.add_term((*k, *e), c.clone());
            }
        }
    }
    out
}

/// Swaps the two legs.
pub fn swap2(x: &FreeTensor<2>) -> FreeTensor<2> {
    x.map_keys(|([a, b], e)| ([*b, *a], *e))
}

/// `sigma_12` on the first two legs.
pub fn swap12(x: &FreeTensor<3>) -> FreeTensor<3> {
    x.map_keys(|([a, b, c], e)| ([*b, *a, *c], *e))
}

/// Splits a free tensor by its basis index.
pub fn by_index<const N: usize>(x: &FreeTensor<N>) -> BTreeMap<usize, HTensor<N>> {
    let mut out: BTreeMap<usize, HTensor<N>> = BTreeMap::new();
    for ((k, e), c) in x {
        out.entry(*e).or_default().add_term(*k, c.clone());
    }
    out
}

/// `a * m` for `a = sum f_alpha e_alpha` and `m = sum g_beta v_beta`, by
/// `H (x) H`-linearity from the table.
pub fn act_elem(h: &Uea, table: &ActionTable, a: &FreeVec, m: &FreeVec) -> FreeTensor<2> {
    let mut out = FreeTensor::new();
    for ((fa, alpha), ca) in a {
        for ((gb, beta), cb) in m {
            let t = &table[*alpha][*beta];
            if t.is_zero() {
                continue;
            }
            let f = HTensor::single([*fa, *gb], ca * cb);
            out.add_assign_ref(&mul_free(h, &f, t));
        }
    }
    out
}

/// `(F (x) 1) (Delta (x) id)(x)`.
fn outer_leg(h: &Uea, f: &HTensor<2>, x: &FreeTensor<2>) -> FreeTensor<3> {
    let mut out = FreeTensor::new();
    for (([p, l], e), xc) in x {
        for i in p.sub_indices() {
            let rest = p.sub(&i).expect("sub-index");
            for ([fa, fb], fc) in f {
                let legs = [
                    h.mono_mul(fa, &i),
                    h.mono_mul(fb, &rest),
                    Arc::new(HElement::single(*l, Q::one())),
                ];
                let mut prod = HTensor::<3>::new();
                outer_into(&mut prod, &legs, &(fc * xc));
                for (k, c) in prod.iter() {
                    out.add_term((*k, *e), c.clone());
                }
            }
        }
    }
    out
}

/// `(1 (x) F) (id (x) Delta)(x)`.
fn inner_leg(h: &Uea, f: &HTensor<2>, x: &FreeTensor<2>) -> FreeTensor<3> {
    let mut out = FreeTensor::new();
    for (([p, l], e), xc) in x {
        for i in l.sub_indices() {
            let rest = l.sub(&i).expect("sub-index");
            for ([fa, fb], fc) in f {
                let legs = [
                    Arc::new(HElement::single(*p, Q::one())),
                    h.mono_mul(fa, &i),
                    h.mono_mul(fb, &rest),
                ];
                let mut prod = HTensor::<3>::new();
                outer_into(&mut prod, &legs, &(fc * xc));
                for (k, c) in prod.iter() {
                    out.add_term((*k, *e), c.clone());
                }
            }
        }
    }
    out
}

/// `[a * b] * m` where `ab = [a * b]` is a free tensor over the algebra basis.
pub fn compose_outer(h: &Uea, mod_table: &ActionTable, ab: &FreeTensor<2>, m: &FreeVec) -> FreeTensor<3> {
    let mut out = FreeTensor::new();
    for (gamma, f) in by_index(ab) {
        let x = act_elem(h, mod_table, &FreeVec::single((h.zero_index(), gamma), Q::one()), m);
        out.add_assign_ref(&outer_leg(h, &f, &x));
    }
    out
}

/// `a * y` where `y` is a free tensor over the module basis.
pub fn compose_inner(h: &Uea, mod_table: &ActionTable, a: &FreeVec, y: &FreeTensor<2>) -> FreeTensor<3> {
    let mut out = FreeTensor::new();
    for (beta, f) in by_index(y) {
        let z = act_elem(h, mod_table, a, &FreeVec::single((h.zero_index(), beta), Q::one()));
        out.add_assign_ref(&inner_leg(h, &f, &z));
    }
    out
}

/// `a * (b * m) - sigma_12 (b * (a * m)) - [a * b] * m` in free form.
///
/// With the adjoint table this is the Jacobi residual; with a module table
/// it is the residual of the representation axiom.
pub fn axiom_residual(
    h: &Uea,
    alg_table: &ActionTable,
    mod_table: &ActionTable,
    a: &FreeVec,
    b: &FreeVec,
    m: &FreeVec,
) -> FreeTensor<3> {
    let bm = act_elem(h, mod_table, b, m);
    let am = act_elem(h, mod_table, a, m);
    let ab = act_elem(h, alg_table, a, b);
    let t1 = compose_inner(h, mod_table, a, &bm);
    let t2 = swap12(&compose_inner(h, mod_table, b, &am));
    let t3 = compose_outer(h, mod_table, &ab, m);
    &(&t1 - &t2) - &t3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;
    use crate::rational::q;
    use num_traits::Signed;

    fn heis() -> Arc<Uea> {
        Arc::new(Uea::new(LieAlgebra::heisenberg()).unwrap())
    }

    #[test]
    fn left_normal_examples() {
        let h = heis();
        let m = FreeModule::new(h.clone(), 1);
        let v = m.basis(0);
        let raw: RawTensor<_> = vec![(h.gen(0), h.one(), v.clone())];
        let ln = left_normalize(&m, &raw);
        assert_eq!(
            ln,
            LeftNormal::single((MultiIndex::unit(3, 0), (h.zero_index(), 0)), q(1))
        );

        // (1 (x) d) m = (-d (x) 1) m + (1 (x) 1) d.m
        let raw: RawTensor<_> = vec![(h.one(), h.gen(1), v.clone())];
        let ln = left_normalize(&m, &raw);
        let mut expect = LeftNormal::new();
        expect.add_term((MultiIndex::unit(3, 1), (h.zero_index(), 0)), q(-1));
        expect.add_term((h.zero_index(), (MultiIndex::unit(3, 1), 0)), q(1));
        assert_eq!(ln, expect);
    }

    #[test]
    fn right_normal_example() {
        let h = heis();
        let m = FreeModule::new(h.clone(), 1);
        let raw: RawTensor<_> = vec![(h.gen(2), h.one(), m.basis(0))];
        let rn = right_normalize(&m, &raw);
        let mut expect = RightNormal::new();
        expect.add_term((MultiIndex::unit(3, 2), (h.zero_index(), 0)), q(-1));
        expect.add_term((h.zero_index(), (MultiIndex::unit(3, 2), 0)), q(1));
        assert_eq!(rn, expect);
        assert!(right_normalize(&m, &Vec::new()).is_zero());
    }

    #[test]
    fn triple_normal_matches_stepwise_balance() {
        // (1 (x) 1 (x) d) m = (-d (x) 1 (x) 1) m + (1 (x) -d (x) 1) m + (1 (x) 1 (x) 1) d.m
        let h = heis();
        let m = FreeModule::new(h.clone(), 1);
        let tn = triple_normalize(&m, &[(h.one(), h.one(), h.gen(0), m.basis(0))]);
        let z = h.zero_index();
        let d = MultiIndex::unit(3, 0);
        let mut expect = TripleNormal::new();
        expect.add_term(([d, z], (z, 0)), q(-1));
        expect.add_term(([z, d], (z, 0)), q(-1));
        expect.add_term(([z, z], (d, 0)), q(1));
        assert_eq!(tn, expect);
    }

    #[test]
    fn finite_module_inequality() {
        // d.m = 0 on the trivial module: (d (x) 1) m and (1 (x) d) m differ
        let h = Arc::new(Uea::new(LieAlgebra::abelian(1)).unwrap());
        let m = FiniteModule::new(h.clone(), vec![vec![vec![q(0)]]]).unwrap();
        let v = Sparse::single(0usize, q(1));
        let a: RawTensor<usize> = vec![(h.gen(0), h.one(), v.clone())];
        let b: RawTensor<usize> = vec![(h.one(), h.gen(0), v.clone())];
        assert!(!tensor_equal(&m, &a, &b));
        assert!(tensor_equal(&m, &a, &a));
        let ln = left_normalize(&m, &b);
        assert!(tensor_equal(&m, &b, &left_to_raw(&m, &ln)));
    }

    #[test]
    fn free_forms_agree_with_generic_normal_forms() {
        let h = heis();
        let m = FreeModule::new(h.clone(), 2);
        let raw: RawTensor<_> = vec![
            (h.gen(1), h.gen(0), m.act(&h.gen(2), &m.basis(1))),
            (h.one(), h.gen(1), m.basis(0)),
        ];
        let free = raw_to_free(&h, &raw);
        assert_eq!(free_left_normal(&h, &free), left_normalize(&m, &raw));
        assert!(tensor_equal(&m, &raw, &free_to_raw(&h, &free)));
    }

    #[test]
    fn rs_split_recovers_coefficient() {
        // abelian 2 split 1 + 1, x = (d1 (x) d2) (x)_H (1 (x) e0), U = span(e1)
        let h = Arc::new(Uea::new(LieAlgebra::abelian(2)).unwrap());
        let m = FreeModule::new(h.clone(), 2);
        let x: RawTensor<_> = vec![(h.gen(0), h.gen(1), m.basis(0))];
        let u = vec![m.basis(1)];
        assert!(!rs_split_membership(&m, &x, &u, 1).unwrap());
        let ln = left_normalize(&m, &x);
        let key = (MultiIndex::from_slice(&[1, 1]).unwrap(), (h.zero_index(), 0));
        assert_eq!(ln.get(&key).abs(), q(1));
        assert!(rs_split_membership(&m, &Vec::new(), &u, 1).unwrap());
        let bad: RawTensor<_> = vec![(h.gen(1), h.one(), m.basis(0))];
        assert!(rs_split_membership(&m, &bad, &u, 1).is_err());
    }
}
