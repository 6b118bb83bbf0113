//! Primitive Lie pseudoalgebras, current pseudoalgebras and their axioms.
//!
//! Every algebra is presented inside a free "ambient" module `H (x) k^m`
//! carrying a pseudobracket table on its basis. For `W(d)`, rank-one and
//! current Lie algebras the generators are the ambient basis; `S(d, chi)` is
//! presented by its generators `s_ab` inside `W(d)`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::htensor::{
    act_elem, axiom_residual, free_left_normal, free_triple_normal, mul_free, swap2, ActionTable, FreeModule,
    FreeTensor, FreeVec, HModule,
};
use crate::lie::{build_symplectic, check_traceform, LieAlgebra, SubalgebraPair, SymplecticData};
use crate::linalg::{self, Matrix};
use crate::rational::{format_q, Q};
use crate::sparse::Sparse;
use crate::uea::{format_element, HElement, HTensor, MultiIndex, Uea};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    Lie,
    W,
    S,
    H,
    K,
}

impl Kind {
    /// Degree bound `l` of the singular-vector support condition.
    pub fn ell(self) -> u32 {
        match self {
            Kind::Lie => 0,
            Kind::W => 1,
            Kind::S | Kind::H | Kind::K => 2,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Lie => "Lie",
            Kind::W => "W",
            Kind::S => "S",
            Kind::H => "H",
            Kind::K => "K",
        };
        f.write_str(s)
    }
}

/// Data for `K(d, theta)` in an adapted basis: `s = d_N`, and `r` restricted
/// to `d_0 = <d_1, ..., d_{N-1}>` is nondegenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactData {
    /// `r^{ij}` on `d_0`.
    pub r0: Matrix,
    /// Its inverse, the symplectic form on `d_0`.
    pub omega0: Matrix,
}

#[derive(Clone, Debug)]
enum Construction {
    Lie(LieAlgebra),
    W,
    S(Vec<Q>),
    Rank1 { r: Matrix, s: Vec<Q> },
}

/// A finite Lie pseudoalgebra presented in a free ambient module.
#[derive(Clone, Debug)]
pub struct PseudoAlgebra {
    kind: Kind,
    base: LieAlgebra,
    pair: SubalgebraPair,
    current: bool,
    h: Arc<Uea>,
    construction: Construction,
    ambient_labels: Vec<String>,
    table: ActionTable,
    gens: Vec<FreeVec>,
    gen_labels: Vec<String>,
    gen_table: Option<Vec<Vec<Vec<HTensor<2>>>>>,
    symplectic: Option<SymplecticData>,
    contact: Option<ContactData>,
}

/// Index helper embedding `U(d)` into `U(d')` through the last coordinates.
#[derive(Clone, Copy)]
pub(crate) struct Embed<'a> {
    pub h: &'a Uea,
    pub r: usize,
}

impl<'a> Embed<'a> {
    pub fn zero(&self) -> MultiIndex {
        self.h.zero_index()
    }

    /// `d_i` of `d` as a multi-index of `d'`.
    pub fn unit(&self, i: usize) -> MultiIndex {
        MultiIndex::unit(self.h.dim(), self.r + i)
    }

    pub fn gen(&self, i: usize) -> HElement {
        HElement::single(self.unit(i), Q::one())
    }

    /// `sum_i v_i d_i` for a vector over `d`.
    pub fn vector(&self, v: &[Q]) -> HElement {
        v.iter().enumerate().map(|(i, c)| (self.unit(i), c.clone())).collect()
    }

    /// Embeds a vector of `d` into `d'` coordinates.
    pub fn coords(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.r];
        out.extend_from_slice(v);
        out
    }
}

fn tensor_from(terms: &[(HElement, HElement, usize)]) -> FreeTensor<2> {
    let mut out = FreeTensor::new();
    for (f, g, e) in terms {
        for (a, x) in f {
            for (b, y) in g {
                out.add_term(([*a, *b], *e), x * y);
            }
        }
    }
    out
}

fn w_table(emb: Embed<'_>, d: &LieAlgebra) -> ActionTable {
    let n = d.dim();
    let one = emb.h.one();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut terms: Vec<(HElement, HElement, usize)> = Vec::new();
                    for k in 0..n {
                        let c = d.c(a, b, k);
                        if !c.is_zero() {
                            terms.push((one.scale(c), one.clone(), k));
                        }
                    }
                    terms.push((emb.gen(b), one.clone(), a));
                    terms.push((one.clone(), emb.gen(a).scale(&-Q::one()), b));
                    tensor_from(&terms)
                })
                .collect()
        })
        .collect()
}

fn lie_table(emb: Embed<'_>, g: &LieAlgebra) -> ActionTable {
    let m = g.dim();
    let z = emb.zero();
    (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    (0..m)
                        .filter(|&k| !g.c(a, b, k).is_zero())
                        .map(|k| (([z, z], k), g.c(a, b, k).clone()))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `r = sum r^{ij} d_i (x) d_j` as an element of `H (x) H`.
pub(crate) fn r_tensor(emb: Embed<'_>, r: &Matrix) -> HTensor<2> {
    let mut out = HTensor::new();
    for (i, row) in r.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            out.add_term([emb.unit(i), emb.unit(j)], c.clone());
        }
    }
    out
}

fn rank1_table(emb: Embed<'_>, r: &Matrix, s: &[Q]) -> ActionTable {
    let one = emb.h.one();
    let sv = emb.vector(s);
    let mut t = r_tensor(emb, r);
    t.add_assign_ref(&crate::uea::tensor2(&sv, &one));
    t.add_scaled(&crate::uea::tensor2(&one, &sv), &-Q::one());
    vec![vec![t.map_keys(|k| (*k, 0usize))]]
}

/// The generator `s_ab = (d_a + chi_a) (x) d_b - (d_b + chi_b) (x) d_a - 1 (x) [d_a, d_b]`
/// of `S(d, chi)` inside `W(d)`.
fn s_generator(emb: Embed<'_>, d: &LieAlgebra, chi: &[Q], a: usize, b: usize) -> FreeVec {
    let z = emb.zero();
    let mut v = FreeVec::new();
    v.add_term((emb.unit(a), b), Q::one());
    v.add_term((z, b), chi[a].clone());
    v.add_term((emb.unit(b), a), -Q::one());
    v.add_term((z, a), -chi[b].clone());
    for k in 0..d.dim() {
        v.add_term((z, k), -d.c(a, b, k).clone());
    }
    v
}

fn vec_degree(v: &FreeVec) -> i64 {
    v.keys().map(|(k, _)| k.degree() as i64).max().unwrap_or(-1)
}

impl PseudoAlgebra {
    fn assemble(construction: Construction, base: LieAlgebra, pair: SubalgebraPair, current: bool) -> Result<Self> {
        let h = Arc::new(Uea::new(pair.big().clone())?);
        let emb = Embed {
            h: &h,
            r: pair.offset(),
        };
        let n = base.dim();
        let dlabels: Vec<String> = base.labels().iter().map(|l| format!("1(x){l}")).collect();
        let (kind, ambient_labels, table, gens, gen_labels, symplectic, contact) = match &construction {
            Construction::Lie(g) => {
                let labels: Vec<String> = g.labels().to_vec();
                let gens = (0..g.dim())
                    .map(|i| FreeVec::single((emb.zero(), i), Q::one()))
                    .collect();
                (Kind::Lie, labels.clone(), lie_table(emb, g), gens, labels, None, None)
            }
            Construction::W => {
                let gens = (0..n).map(|i| FreeVec::single((emb.zero(), i), Q::one())).collect();
                (Kind::W, dlabels.clone(), w_table(emb, &base), gens, dlabels, None, None)
            }
            Construction::S(chi) => {
                let mut gens = Vec::new();
                let mut labels = Vec::new();
                for a in 0..n {
                    for b in (a + 1)..n {
                        gens.push(s_generator(emb, &base, chi, a, b));
                        labels.push(format!("s{}{}", a + 1, b + 1));
                    }
                }
                (Kind::S, dlabels, w_table(emb, &base), gens, labels, None, None)
            }
            Construction::Rank1 { r, s } => {
                let (kind, symp, contact) = classify_rank1(&base, r, s)?;
                let gens = vec![FreeVec::single((emb.zero(), 0), Q::one())];
                let labels = vec!["e".to_string()];
                (
                    kind,
                    labels.clone(),
                    rank1_table(emb, r, s),
                    gens,
                    labels,
                    symp,
                    contact,
                )
            }
        };
        let mut alg = Self {
            kind,
            base,
            pair,
            current,
            h,
            construction,
            ambient_labels,
            table,
            gens,
            gen_labels,
            gen_table: None,
            symplectic,
            contact,
        };
        if alg.kind == Kind::S {
            alg.gen_table = Some(alg.solve_generator_table()?);
        }
        Ok(alg)
    }

    fn plain(construction: Construction, base: LieAlgebra) -> Result<Self> {
        if base.dim() == 0 {
            return Err(Error::Shape("the Lie algebra d must be nonzero".into()));
        }
        let pair = SubalgebraPair::trivial(base.clone());
        Self::assemble(construction, base, pair, false)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// `"Current"` for current algebras, otherwise the primitive kind.
    pub fn tag(&self) -> String {
        if self.current {
            format!("Current({})", self.kind)
        } else {
            self.kind.to_string()
        }
    }

    pub fn is_current(&self) -> bool {
        self.current
    }

    /// The Lie algebra `d` with `H = U(d)`.
    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn pair(&self) -> &SubalgebraPair {
        &self.pair
    }

    /// `U(d')`; equals `U(d)` unless the algebra is a current algebra.
    pub fn uea(&self) -> &Arc<Uea> {
        &self.h
    }

    pub fn ell(&self) -> u32 {
        self.kind.ell()
    }

    pub fn ambient_rank(&self) -> usize {
        self.table.len()
    }

    pub fn ambient_labels(&self) -> &[String] {
        &self.ambient_labels
    }

    pub fn table(&self) -> &ActionTable {
        &self.table
    }

    pub fn generators(&self) -> &[FreeVec] {
        &self.gens
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.gen_labels
    }

    pub fn symplectic(&self) -> Option<&SymplecticData> {
        self.symplectic.as_ref()
    }

    pub fn contact(&self) -> Option<&ContactData> {
        self.contact.as_ref()
    }

    /// `chi` for `S(d, chi)` and `H(d, chi, omega)`.
    pub fn chi(&self) -> Option<&[Q]> {
        match &self.construction {
            Construction::S(chi) => Some(chi),
            _ => self.symplectic.as_ref().map(|s| s.chi.as_slice()),
        }
    }

    /// `(r, s)` for rank-one algebras.
    pub fn rank1_data(&self) -> Option<(&Matrix, &[Q])> {
        match &self.construction {
            Construction::Rank1 { r, s } => Some((r, s)),
            _ => None,
        }
    }

    pub(crate) fn embed(&self) -> Embed<'_> {
        Embed {
            h: &self.h,
            r: self.pair.offset(),
        }
    }

    /// The ambient free module `H (x) k^m`.
    pub fn ambient_module(&self) -> FreeModule {
        FreeModule::new(self.h.clone(), self.ambient_rank())
    }

    /// `sum_i h_i g_i` for generator coefficients `h_i`.
    pub fn element(&self, coeffs: &[(HElement, usize)]) -> FreeVec {
        let m = self.ambient_module();
        let mut out = FreeVec::new();
        for (hc, i) in coeffs {
            out.add_assign_ref(&m.act(hc, &self.gens[*i]));
        }
        out
    }

    /// Pseudobracket of two elements of the ambient module.
    pub fn eval_bracket(&self, x: &FreeVec, y: &FreeVec) -> FreeTensor<2> {
        act_elem(&self.h, &self.table, x, y)
    }

    /// Table of `S(d, chi)` brackets in the span of its generators:
    /// `[s_i * s_j] = sum_k F_ijk (x)_H s_k`.
    pub fn generator_table(&self) -> Option<&Vec<Vec<Vec<HTensor<2>>>>> {
        self.gen_table.as_ref()
    }

    /// Maps `sum_k F_k (x)_H g_k` into the ambient free form.
    pub fn generator_tensor_to_ambient(&self, fs: &[HTensor<2>]) -> FreeTensor<2> {
        let mut out = FreeTensor::new();
        for (k, f) in fs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for ((hk, e), c) in &self.gens[k] {
                let d = self.h.coproduct(&HElement::single(*hk, c.clone()));
                let fd = self.h.tensor_mul(f, &d);
                for (key, v) in &fd {
                    out.add_term((*key, *e), v.clone());
                }
            }
        }
        out
    }

    /// Writes `m` as `sum_k h_k g_k` with `deg h_k <= deg m`, if possible.
    pub fn solve_in_generator_span(&self, m: &FreeVec) -> Option<Vec<HElement>> {
        let module = self.ambient_module();
        let idx = MultiIndex::all_up_to(self.h.dim(), vec_degree(m));
        let mut cols = Vec::new();
        let mut labels = Vec::new();
        for (k, g) in self.gens.iter().enumerate() {
            for key in &idx {
                cols.push(module.act(&HElement::single(*key, Q::one()), g));
                labels.push((k, *key));
            }
        }
        let x = linalg::solve(&cols, m)?;
        let mut out = vec![HElement::new(); self.gens.len()];
        for ((k, key), c) in labels.into_iter().zip(x) {
            out[k].add_term(key, c);
        }
        Some(out)
    }

    fn solve_generator_table(&self) -> Result<Vec<Vec<Vec<HTensor<2>>>>> {
        let g = self.gens.len();
        let mut table = vec![vec![vec![HTensor::new(); g]; g]; g];
        for i in 0..g {
            for j in 0..g {
                let br = self.eval_bracket(&self.gens[i], &self.gens[j]);
                let ln = free_left_normal(&self.h, &br);
                let coeffs = crate::htensor::coefficients(&ln);
                for (jk, m) in coeffs {
                    let hs = self.solve_in_generator_span(&m).ok_or_else(|| {
                        Error::Closure(format!(
                            "[{} * {}] has coefficient outside the generator span",
                            self.gen_labels[i], self.gen_labels[j]
                        ))
                    })?;
                    let left = HTensor::single([jk, self.h.zero_index()], Q::one());
                    for (k, hk) in hs.iter().enumerate() {
                        if hk.is_zero() {
                            continue;
                        }
                        let part = self.h.tensor_mul(&left, &self.h.coproduct(hk));
                        table[i][j][k].add_assign_ref(&part);
                    }
                }
                if self.generator_tensor_to_ambient(&table[i][j]) != br {
                    return Err(Error::Closure(format!(
                        "re-expressed bracket [{} * {}] does not match",
                        self.gen_labels[i], self.gen_labels[j]
                    )));
                }
            }
        }
        Ok(table)
    }

    /// `sum_j h_j (d_j + chi_j)` for `x = sum_j h_j (1 (x) d_j)` in `W(d)`.
    pub fn divergence(&self, x: &FreeVec) -> Result<HElement> {
        let chi = match (&self.construction, self.kind) {
            (Construction::S(chi), _) => chi.clone(),
            (Construction::W, _) => vec![Q::zero(); self.base.dim()],
            _ => return Err(Error::Precondition("divergence is defined on W(d)".into())),
        };
        let emb = self.embed();
        let mut out = HElement::new();
        for ((k, j), c) in x {
            let hk = HElement::single(*k, c.clone());
            let mut dj = emb.gen(*j);
            dj.add_term(emb.zero(), chi[*j].clone());
            out.add_assign_ref(&self.h.mul(&hk, &dj));
        }
        Ok(out)
    }
}

pub fn build_lie(g: &LieAlgebra, d: &LieAlgebra) -> Result<PseudoAlgebra> {
    PseudoAlgebra::plain(Construction::Lie(g.clone()), d.clone())
}

#[allow(non_snake_case)]
pub fn build_W(d: &LieAlgebra) -> Result<PseudoAlgebra> {
    PseudoAlgebra::plain(Construction::W, d.clone())
}

#[allow(non_snake_case)]
pub fn build_S(d: &LieAlgebra, chi: &[Q]) -> Result<PseudoAlgebra> {
    if d.dim() < 2 {
        return Err(Error::Shape("S(d, chi) needs dim d >= 2".into()));
    }
    if chi.len() != d.dim() {
        return Err(Error::Shape("chi has the wrong length".into()));
    }
    if !check_traceform(d, chi) {
        return Err(Error::Precondition("chi is not a traceform".into()));
    }
    PseudoAlgebra::plain(Construction::S(chi.to_vec()), d.clone())
}

/// The free rank-one algebra with `[e * e] = (r + s (x) 1 - 1 (x) s) (x)_H e`.
pub fn build_rank1(d: &LieAlgebra, r: &Matrix, s: &[Q]) -> Result<PseudoAlgebra> {
    let rep = check_rank1_identities(d, r, s)?;
    if let Some(msg) = rep.failure() {
        return Err(Error::Identity(msg));
    }
    PseudoAlgebra::plain(
        Construction::Rank1 {
            r: r.clone(),
            s: s.to_vec(),
        },
        d.clone(),
    )
}

fn classify_rank1(d: &LieAlgebra, r: &Matrix, s: &[Q]) -> Result<(Kind, Option<SymplecticData>, Option<ContactData>)> {
    let n = d.dim();
    if n.is_multiple_of(2) {
        let omega = linalg::inverse(r).map_err(|_| Error::Degenerate("r is degenerate".into()))?;
        let sd = build_symplectic(d, &omega, &iota(&omega, s))?;
        return Ok((Kind::H, Some(sd), None));
    }
    let last = n - 1;
    let adapted = s
        .iter()
        .enumerate()
        .all(|(i, x)| if i == last { x.is_one() } else { x.is_zero() })
        && (0..n).all(|i| r[i][last].is_zero() && r[last][i].is_zero());
    if !adapted {
        return Err(Error::Precondition(
            "K-type data must have s equal to the last basis vector and r supported on the others".into(),
        ));
    }
    let r0: Matrix = r[..last].iter().map(|row| row[..last].to_vec()).collect();
    let omega0 = linalg::inverse(&r0).map_err(|_| Error::Degenerate("r is degenerate on ker theta".into()))?;
    Ok((Kind::K, None, Some(ContactData { r0, omega0 })))
}

/// `iota_s omega` as a coordinate vector.
fn iota(omega: &Matrix, s: &[Q]) -> Vec<Q> {
    let n = omega.len();
    (0..n)
        .map(|j| (0..n).map(|a| &s[a] * &omega[a][j]).fold(Q::zero(), |x, y| x + y))
        .collect()
}

/// Outcome of [`check_rank1_identities`]; `None` means the identity holds.
#[derive(Clone, Debug, Serialize)]
pub struct Rank1Report {
    pub coproduct_identity: Option<String>,
    pub cyclic_identity: Option<String>,
}

impl Rank1Report {
    pub fn passed(&self) -> bool {
        self.coproduct_identity.is_none() && self.cyclic_identity.is_none()
    }

    pub fn failure(&self) -> Option<String> {
        match (&self.coproduct_identity, &self.cyclic_identity) {
            (None, None) => None,
            (a, b) => Some(
                [
                    a.as_ref().map(|x| format!("[r, Delta(s)] = {x}")),
                    b.as_ref().map(|x| format!("cyclic identity residual {x}")),
                ]
                .into_iter()
                .flatten()
                .collect::<Vec<_>>()
                .join("; "),
            ),
        }
    }
}

fn cycle3(x: &HTensor<3>) -> HTensor<3> {
    x.map_keys(|[a, b, c]| [*c, *a, *b])
}

fn format_tensor<const N: usize>(x: &HTensor<N>) -> String {
    let parts: Vec<String> = x
        .iter()
        .take(6)
        .map(|(k, c)| {
            let legs: Vec<String> = k.iter().map(|m| format!("d{m}")).collect();
            format!("{}*{}", format_q(c), legs.join("(x)"))
        })
        .collect();
    let more = if x.len() > 6 {
        format!(" + ... ({} terms)", x.len())
    } else {
        String::new()
    };
    format!("{}{more}", parts.join(" + "))
}

/// Evaluates `[r, Delta(s)] = 0` in `H (x) H` and the cyclic identity
/// `([r12, r13] + r12 s3) + cyclic = 0` in `H^{(x)3}`.
pub fn check_rank1_identities(d: &LieAlgebra, r: &Matrix, s: &[Q]) -> Result<Rank1Report> {
    let n = d.dim();
    if !linalg::is_square(r, n) || s.len() != n {
        return Err(Error::Shape(format!("r must be {n}x{n} and s of length {n}")));
    }
    for i in 0..n {
        for j in 0..n {
            if r[i][j] != -r[j][i].clone() {
                return Err(Error::Precondition("r is not skew-symmetric".into()));
            }
        }
    }
    let h = Uea::new(d.clone())?;
    let emb = Embed { h: &h, r: 0 };
    let rt = r_tensor(emb, r);
    let sv = emb.vector(s);
    let ds = h.coproduct(&sv);
    let comm = &h.tensor_mul(&rt, &ds) - &h.tensor_mul(&ds, &rt);

    let one = h.one();
    let z = h.zero_index();
    let r12: HTensor<3> = rt.map_keys(|[a, b]| [*a, *b, z]);
    let r13: HTensor<3> = rt.map_keys(|[a, b]| [*a, z, *b]);
    let s3 = crate::uea::tensor3(&one, &one, &sv);
    let mut x = &h.tensor_mul(&r12, &r13) - &h.tensor_mul(&r13, &r12);
    x.add_assign_ref(&h.tensor_mul(&r12, &s3));
    let c1 = cycle3(&x);
    let c2 = cycle3(&c1);
    let total = &(&x + &c1) + &c2;
    Ok(Rank1Report {
        coproduct_identity: (!comm.is_zero()).then(|| format_tensor(&comm)),
        cyclic_identity: (!total.is_zero()).then(|| format_tensor(&total)),
    })
}

/// Reexpresses `A` over `U(d')` for `d` the last basis vectors of `d'`.
pub fn current_algebra(a: &PseudoAlgebra, pair: &SubalgebraPair) -> Result<PseudoAlgebra> {
    if pair.small().constants() != a.base.constants() {
        return Err(Error::Precondition(
            "the subalgebra of the pair does not match the base of the algebra".into(),
        ));
    }
    PseudoAlgebra::assemble(
        a.construction.clone(),
        a.base.clone(),
        pair.clone(),
        pair.offset() > 0 || a.current,
    )
}

/// A nonzero residual found by a verification routine.
#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub label: String,
    pub terms: usize,
    pub sample: Vec<String>,
}

/// Result of a verification: empty `residuals` means every instance holds.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checked: usize,
    pub residuals: Vec<Residual>,
}

impl Report {
    pub fn is_empty(&self) -> bool {
        self.residuals.is_empty()
    }
}

pub(crate) fn format_free2(x: &FreeTensor<2>, labels: &[String], limit: usize) -> Vec<String> {
    x.iter()
        .take(limit)
        .map(|(([a, b], e), c)| format!("{} (d{a} (x) d{b}) (x)_H {}", format_q(c), labels[*e]))
        .collect()
}

pub(crate) fn format_triple(
    x: &Sparse<([MultiIndex; 2], (MultiIndex, usize))>,
    labels: &[String],
    limit: usize,
) -> Vec<String> {
    x.iter()
        .take(limit)
        .map(|(([a, b], (m, e)), c)| format!("{} (d{a} (x) d{b} (x) 1) (x)_H d{m} {}", format_q(c), labels[*e]))
        .collect()
}

/// Checks `[a * b] + (sigma (x)_H id)[b * a] = 0` on all generator pairs.
pub fn verify_skew(a: &PseudoAlgebra) -> Report {
    verify_skew_with(a, a.table())
}

/// Skew-symmetry against an explicit bracket table (used for mutation tests).
pub fn verify_skew_with(a: &PseudoAlgebra, table: &ActionTable) -> Report {
    let g = a.gens.len();
    let pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
    let residuals: Vec<Residual> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let ab = act_elem(&a.h, table, &a.gens[i], &a.gens[j]);
            let ba = act_elem(&a.h, table, &a.gens[j], &a.gens[i]);
            let res = &ab + &swap2(&ba);
            (!res.is_zero()).then(|| Residual {
                label: format!("skew({}, {})", a.gen_labels[i], a.gen_labels[j]),
                terms: res.len(),
                sample: format_free2(&res, &a.ambient_labels, 6),
            })
        })
        .collect();
    Report {
        checked: pairs.len(),
        residuals,
    }
}

/// Checks `[a * [b * c]] - [[a * b] * c] - (sigma_12 (x)_H id)[b * [a * c]] = 0`
/// on all generator triples, in triple normal form.
pub fn verify_jacobi(a: &PseudoAlgebra) -> Report {
    let g = a.gens.len();
    let triples: Vec<(usize, usize, usize)> = (0..g)
        .flat_map(|i| (0..g).flat_map(move |j| (0..g).map(move |k| (i, j, k))))
        .collect();
    let residuals: Vec<Residual> = triples
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let res = axiom_residual(&a.h, &a.table, &a.table, &a.gens[i], &a.gens[j], &a.gens[k]);
            (!res.is_zero()).then(|| {
                let tn = free_triple_normal(&a.h, &res);
                Residual {
                    label: format!("jacobi({}, {}, {})", a.gen_labels[i], a.gen_labels[j], a.gen_labels[k]),
                    terms: tn.len(),
                    sample: format_triple(&tn, &a.ambient_labels, 6),
                }
            })
        })
        .collect();
    Report {
        checked: triples.len(),
        residuals,
    }
}

/// Left-multiplies the legs of a bracket: `[f a * g b] = (f (x) g) [a * b]`.
pub fn scale_bracket(h: &Uea, f: &HElement, g: &HElement, x: &FreeTensor<2>) -> FreeTensor<2> {
    mul_free(h, &crate::uea::tensor2(f, g), x)
}

/// Human-readable rendering of a free-form bracket.
pub fn describe_bracket(a: &PseudoAlgebra, x: &FreeTensor<2>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut by: std::collections::BTreeMap<usize, Vec<String>> = Default::default();
    for (([p, q], e), c) in x {
        by.entry(*e)
            .or_default()
            .push(format!("{}*(d{p} (x) d{q})", format_q(c)));
    }
    by.into_iter()
        .map(|(e, t)| format!("({}) (x)_H {}", t.join(" + "), a.ambient_labels[e]))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Formats an `H`-element for reports.
pub fn describe_element(h: &HElement) -> String {
    format_element(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn mi(x: &[u32]) -> MultiIndex {
        MultiIndex::from_slice(x).unwrap()
    }

    fn wedge12(n: usize) -> Matrix {
        let mut r = linalg::zeros(n, n);
        r[0][1] = q(1);
        r[1][0] = q(-1);
        r
    }

    #[test]
    fn w_abelian_one() {
        let w = build_W(&LieAlgebra::abelian(1)).unwrap();
        let e = &w.generators()[0];
        let br = w.eval_bracket(e, e);
        let mut expect = FreeTensor::new();
        expect.add_term(([mi(&[1]), mi(&[0])], 0), q(1));
        expect.add_term(([mi(&[0]), mi(&[1])], 0), q(-1));
        assert_eq!(br, expect);
    }

    #[test]
    fn w_heisenberg_bracket() {
        let w = build_W(&LieAlgebra::heisenberg()).unwrap();
        let br = w.eval_bracket(&w.generators()[0], &w.generators()[1]);
        let z = mi(&[0, 0, 0]);
        let mut expect = FreeTensor::new();
        expect.add_term(([z, z], 2), q(1));
        expect.add_term(([mi(&[0, 1, 0]), z], 0), q(1));
        expect.add_term(([z, mi(&[1, 0, 0])], 1), q(-1));
        assert_eq!(br, expect);
    }

    #[test]
    fn w_axioms() {
        for d in [LieAlgebra::abelian(1), LieAlgebra::heisenberg()] {
            let w = build_W(&d).unwrap();
            assert!(verify_skew(&w).is_empty());
            assert!(verify_jacobi(&w).is_empty(), "{:?}", verify_jacobi(&w));
        }
    }

    #[test]
    fn mutated_w_table_fails_skew() {
        let w = build_W(&LieAlgebra::heisenberg()).unwrap();
        let mut t = w.table().clone();
        t[0][1] = t[0][1].scale(&q(-1));
        assert!(!verify_skew_with(&w, &t).is_empty());
    }

    #[test]
    fn rank1_examples() {
        let a = build_rank1(&LieAlgebra::abelian(2), &wedge12(2), &[q(0), q(0)]).unwrap();
        assert_eq!(a.kind(), Kind::H);
        let s = vec![q(0), q(0), q(1)];
        let k = build_rank1(&LieAlgebra::heisenberg(), &linalg::mat_scale(&wedge12(3), &q(-1)), &s).unwrap();
        assert_eq!(k.kind(), Kind::K);
        assert!(verify_jacobi(&k).is_empty());
        // with [d1, d2] = d3 the orientation d1 ^ d2 forces s = -d3
        assert!(matches!(
            build_rank1(&LieAlgebra::heisenberg(), &wedge12(3), &s),
            Err(Error::Identity(_))
        ));
        let rep = check_rank1_identities(&LieAlgebra::abelian(2), &linalg::zeros(2, 2), &[q(1), q(3)]).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn s_abelian_generator_and_divergence() {
        let s = build_S(&LieAlgebra::abelian(2), &[q(0), q(0)]).unwrap();
        assert_eq!(s.generators().len(), 1);
        let g = &s.generators()[0];
        assert!(s.divergence(g).unwrap().is_zero());
        assert!(s.generator_table().is_some());
    }

    #[test]
    fn s_and_borel_axioms() {
        let cases = [
            build_S(&LieAlgebra::abelian(2), &[q(0), q(0)]).unwrap(),
            build_S(&LieAlgebra::heisenberg(), &[q(0), q(0), q(0)]).unwrap(),
            build_S(&LieAlgebra::heisenberg(), &[q(1), q(0), q(0)]).unwrap(),
            build_rank1(
                &LieAlgebra::sl2_borel(),
                &vec![vec![q(0), q(1)], vec![q(-1), q(0)]],
                &[q(0), q(2)],
            )
            .unwrap(),
        ];
        for a in &cases {
            assert!(verify_skew(a).is_empty(), "{}", a.tag());
            assert!(verify_jacobi(a).is_empty(), "{}", a.tag());
        }
        assert_eq!(cases[3].kind(), Kind::H);
        assert_eq!(cases[3].chi().unwrap(), &[q(2), q(0)]);
    }
}
