//! Tensor modules, current and twisted modules, and solvers on them.
//!
//! A module is stored as the free module `H (x) R` together with the table
//! `g_alpha * (1 (x) v_b)` over the ambient basis of its algebra.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::htensor::{
    act_elem, axiom_residual, free_left_normal, free_triple_normal, ActionTable, FreeTensor, FreeVec,
};
use crate::lie::{
    ad_chi, dplus, pi_sp, representation_failures, sp_member, LieAlgebra, SubalgebraPair, SymplecticData,
};
use crate::linalg::{self, Matrix};
use crate::pseudo::{current_algebra, format_triple, Embed, Kind, PseudoAlgebra, Report, Residual};
use crate::rational::Q;
use crate::sparse::Sparse;
use crate::uea::{HElement, HTensor, MultiIndex, Uea};

/// The Lie algebra `g_0` acting through the second factor of `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum G0 {
    /// `gl(d)`, matrices for `e_i^j` at index `i * N + j`.
    Gl,
    /// `sl(d)`, given as a `gl(d)` action on which the identity acts by zero.
    Sl,
    /// `sp(d, omega)`, matrices for `f^{ij}`, `i <= j`.
    Sp,
    /// `csp(d_0) = sp(d_0) + k c`, matrices for `f^{ij}` then `c`.
    Csp,
}

impl G0 {
    pub fn for_kind(kind: Kind) -> Option<G0> {
        match kind {
            Kind::W => Some(G0::Gl),
            Kind::S => Some(G0::Sl),
            Kind::H => Some(G0::Sp),
            Kind::K => Some(G0::Csp),
            Kind::Lie => None,
        }
    }
}

/// A finite-dimensional representation `R` of `d + g_0` (or `d_+ + sp`),
/// given by its matrices on `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSpec {
    pub dim: usize,
    /// `rho(d_i)`, followed by `rho(c)` for type H.
    pub pi: Vec<Matrix>,
    pub u: Vec<Matrix>,
    pub g0: G0,
}

/// `a (x) b` on `k^p (x) k^q`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (p, q) = (a.len(), b.len());
    let mut out = linalg::zeros(p * q, p * q);
    for i in 0..p {
        for j in 0..p {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..q {
                for l in 0..q {
                    out[i * q + k][j * q + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// `sp(d_0)` data of a contact algebra, as linear symplectic data.
pub fn contact_symplectic(a: &PseudoAlgebra) -> Option<SymplecticData> {
    let cd = a.contact()?;
    let n0 = cd.r0.len();
    Some(SymplecticData {
        omega: cd.omega0.clone(),
        r: cd.r0.clone(),
        s: vec![Q::zero(); n0],
        chi: vec![Q::zero(); n0],
        raised: cd.r0.clone(),
    })
}

/// Number of `pi` and `u` matrices expected for an algebra.
pub fn rep_shape(a: &PseudoAlgebra) -> Result<(usize, usize, G0)> {
    let n = a.base().dim();
    match a.kind() {
        Kind::W => Ok((n, n * n, G0::Gl)),
        Kind::S => Ok((n, n * n, G0::Sl)),
        Kind::H => Ok((n + 1, n * (n + 1) / 2, G0::Sp)),
        Kind::K => Ok((n, (n - 1) * n / 2 + 1, G0::Csp)),
        Kind::Lie => Err(Error::Precondition("tensor modules need a W, S, H or K algebra".into())),
    }
}

impl RepSpec {
    /// `R = Pi (x) U` with `rho = Pi (x) 1 + 1 (x) U`.
    pub fn boxtimes(pi: &[Matrix], u: &[Matrix], g0: G0) -> Result<Self> {
        let p = pi
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Shape("empty Pi".into()))?;
        let q = u.first().map(Vec::len).ok_or_else(|| Error::Shape("empty U".into()))?;
        let (ip, iq) = (linalg::identity(p), linalg::identity(q));
        Ok(Self {
            dim: p * q,
            pi: pi.iter().map(|m| kron(m, &iq)).collect(),
            u: u.iter().map(|m| kron(&ip, m)).collect(),
            g0,
        })
    }

    /// All matrices zero on `k^dim`.
    pub fn zero_action(a: &PseudoAlgebra, dim: usize) -> Result<Self> {
        let (np, nu, g0) = rep_shape(a)?;
        Ok(Self {
            dim,
            pi: vec![linalg::zeros(dim, dim); np],
            u: vec![linalg::zeros(dim, dim); nu],
            g0,
        })
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(a: &PseudoAlgebra) -> Result<Self> {
        Self::zero_action(a, 1)
    }

    /// `d` acting trivially and `g_0` by its defining representation on `d`
    /// (on `d_0` for type K, with `c` acting by `c_scalar`).
    pub fn standard(a: &PseudoAlgebra, c_scalar: Q) -> Result<Self> {
        let n = a.base().dim();
        let (np, _, g0) = rep_shape(a)?;
        let (dim, u) = match g0 {
            G0::Gl => (n, (0..n * n).map(|k| unit_matrix(n, k / n, k % n)).collect::<Vec<_>>()),
            G0::Sl => {
                let tr = linalg::mat_scale(&linalg::identity(n), &Q::new(1.into(), (n as i64).into()));
                let u = (0..n * n)
                    .map(|k| {
                        let e = unit_matrix(n, k / n, k % n);
                        if k / n == k % n {
                            linalg::mat_sub(&e, &tr)
                        } else {
                            e
                        }
                    })
                    .collect();
                (n, u)
            }
            G0::Sp => {
                let sd = a.symplectic().expect("H-type data");
                (n, sd.sp_basis())
            }
            G0::Csp => {
                let sd0 = contact_symplectic(a).expect("K-type data");
                let mut u = sd0.sp_basis();
                u.push(linalg::mat_scale(&linalg::identity(n - 1), &c_scalar));
                (n - 1, u)
            }
        };
        Ok(Self {
            dim,
            pi: vec![linalg::zeros(dim, dim); np],
            u,
            g0,
        })
    }

    /// Shape errors against the algebra, without checking commutation relations.
    pub fn check_shape(&self, a: &PseudoAlgebra) -> Result<()> {
        let (np, nu, g0) = rep_shape(a)?;
        if self.g0 != g0 {
            return Err(Error::Precondition(format!(
                "{} tensor modules need a {g0:?} action, got {:?}",
                a.kind(),
                self.g0
            )));
        }
        if self.pi.len() != np || self.u.len() != nu {
            return Err(Error::Shape(format!(
                "expected {np} Pi matrices and {nu} U matrices, got {} and {}",
                self.pi.len(),
                self.u.len()
            )));
        }
        if self.dim == 0 {
            return Err(Error::Shape("dim R must be positive".into()));
        }
        if self.pi.iter().chain(&self.u).any(|m| !linalg::is_square(m, self.dim)) {
            return Err(Error::Shape(format!("all matrices must be {0}x{0}", self.dim)));
        }
        Ok(())
    }

    /// Violated relations: `Pi` a representation of `d` (or `d_+`), `U` of
    /// `g_0`, and the two actions commuting.
    pub fn violations(&self, a: &PseudoAlgebra) -> Result<Vec<String>> {
        self.check_shape(a)?;
        let d = a.base();
        let n = d.dim();
        let mut out = Vec::new();
        let pi_alg = match a.kind() {
            Kind::H => dplus(d, a.symplectic().expect("H-type data"))?,
            _ => d.clone(),
        };
        for (i, j) in representation_failures(&pi_alg, &self.pi)? {
            out.push(format!("Pi fails [{}, {}]", pi_alg.labels()[i], pi_alg.labels()[j]));
        }
        let u_alg = match self.g0 {
            G0::Gl | G0::Sl => LieAlgebra::gl(n),
            G0::Sp => a.symplectic().expect("H-type data").sp_algebra(),
            G0::Csp => contact_symplectic(a)
                .expect("K-type data")
                .sp_algebra()
                .direct_sum(&LieAlgebra::abelian(1)),
        };
        for (i, j) in representation_failures(&u_alg, &self.u)? {
            out.push(format!("U fails [{}, {}]", u_alg.labels()[i], u_alg.labels()[j]));
        }
        if self.g0 == G0::Sl {
            let mut tr = linalg::zeros(self.dim, self.dim);
            for i in 0..n {
                tr = linalg::mat_add(&tr, &self.u[i * n + i]);
            }
            if !linalg::is_zero_matrix(&tr) {
                out.push("the identity of gl(d) does not act by zero".into());
            }
        }
        for (i, p) in self.pi.iter().enumerate() {
            for (j, q) in self.u.iter().enumerate() {
                if !linalg::is_zero_matrix(&linalg::commutator(p, q)) {
                    out.push(format!("Pi({i}) and U({j}) do not commute"));
                }
            }
        }
        Ok(out)
    }

    /// Twists `Pi` by the traceform `lambda` on `d`: `rho'(d_j) = rho(d_j) + lambda_j`.
    pub fn twisted_by(&self, lambda: &[Q]) -> Self {
        let mut out = self.clone();
        for (j, l) in lambda.iter().enumerate() {
            let shift = linalg::mat_scale(&linalg::identity(self.dim), l);
            out.pi[j] = linalg::mat_add(&out.pi[j], &shift);
        }
        out
    }

    fn u_comb(&self, coords: &[Q]) -> Matrix {
        let mut m = linalg::zeros(self.dim, self.dim);
        for (c, u) in coords.iter().zip(&self.u) {
            if !c.is_zero() {
                m = linalg::mat_add(&m, &linalg::mat_scale(u, c));
            }
        }
        m
    }

    fn pi_comb(&self, coords: &[Q]) -> Matrix {
        let mut m = linalg::zeros(self.dim, self.dim);
        for (c, p) in coords.iter().zip(&self.pi) {
            if !c.is_zero() {
                m = linalg::mat_add(&m, &linalg::mat_scale(p, c));
            }
        }
        m
    }
}

fn unit_matrix(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = linalg::zeros(n, n);
    m[i][j] = Q::one();
    m
}

/// A module over a pseudoalgebra, free of rank `dim R` over `H`.
#[derive(Clone, Debug)]
pub struct PseudoModule {
    algebra: PseudoAlgebra,
    rep: RepSpec,
    twist: Option<Vec<Q>>,
    table: ActionTable,
}

/// Adds `sum_b mat[b][v] (f (x) e_b)`.
fn add_leg(out: &mut FreeTensor<2>, f: &HTensor<2>, mat: &Matrix, v: usize) {
    for (b, row) in mat.iter().enumerate() {
        let c = &row[v];
        if c.is_zero() {
            continue;
        }
        for (k, x) in f {
            out.add_term((*k, b), x * c);
        }
    }
}

fn add_plain(out: &mut FreeTensor<2>, f: &HTensor<2>, c: &Q, v: usize) {
    for (k, x) in f {
        out.add_term((*k, v), x * c);
    }
}

fn left(h: &HElement, emb: Embed<'_>) -> HTensor<2> {
    crate::uea::tensor2(h, &emb.h.one())
}

fn w_module_table(a: &PseudoAlgebra, rep: &RepSpec) -> ActionTable {
    let emb = a.embed();
    let d = a.base();
    let n = d.dim();
    let one = left(&emb.h.one(), emb);
    (0..n)
        .map(|i| {
            let mut rho = rep.pi[i].clone();
            for k in 0..n {
                for l in 0..n {
                    let c = d.c(i, l, k);
                    if !c.is_zero() {
                        rho = linalg::mat_add(&rho, &linalg::mat_scale(&rep.u[k * n + l], c));
                    }
                }
            }
            let delta = emb.h.coproduct(&emb.gen(i));
            (0..rep.dim)
                .map(|v| {
                    let mut out = FreeTensor::new();
                    for j in 0..n {
                        add_leg(&mut out, &left(&emb.gen(j), emb), &rep.u[i * n + j], v);
                    }
                    add_leg(&mut out, &one, &rho, v);
                    add_plain(&mut out, &delta, &-Q::one(), v);
                    out
                })
                .collect()
        })
        .collect()
}

fn sp_index(pairs: &[(usize, usize)], i: usize, j: usize) -> usize {
    let key = (i.min(j), i.max(j));
    pairs.iter().position(|p| *p == key).expect("pair")
}

fn h_module_table(a: &PseudoAlgebra, rep: &RepSpec, twist: Option<&[Q]>) -> ActionTable {
    let emb = a.embed();
    let h = emb.h;
    let d = a.base();
    let n = d.dim();
    let sd = a.symplectic().expect("H-type data");
    let chi_big = emb.coords(&sd.chi);
    let bar = |x: &HElement| h.bar(x, &chi_big);
    let pairs = sd.sp_pairs();
    let small = SubalgebraPair::trivial(d.clone());
    let one = left(&h.one(), emb);

    let mut quad: Vec<(HTensor<2>, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = h.mul(&emb.gen(i), &emb.gen(j));
            quad.push((left(&bar(&p), emb), sp_index(&pairs, i, j)));
        }
    }
    let mut lin: Vec<(HTensor<2>, Matrix, HTensor<2>)> = Vec::new();
    for k in 0..n {
        let raised = &sd.r[k];
        let adc = ad_chi(&small, &sd.chi, raised);
        let coords = sd.sp_coords(&pi_sp(sd, &adc)).expect("projection lies in sp");
        let mat = linalg::mat_add(&rep.pi_comb(raised), &rep.u_comb(&coords));
        let bk = left(&bar(&emb.gen(k)), emb);
        let extra = h.tensor_mul(&bk, &h.coproduct(&emb.vector(raised)));
        lin.push((bk, mat, extra));
    }
    let t_leg = twist.map(|t| left(&h.from_vector(t), emb));

    vec![(0..rep.dim)
        .map(|v| {
            let mut out = FreeTensor::new();
            for (f, p) in &quad {
                add_leg(&mut out, f, &rep.u[*p], v);
            }
            for (bk, mat, extra) in &lin {
                add_leg(&mut out, &bk.scale(&-Q::one()), mat, v);
                add_plain(&mut out, extra, &Q::one(), v);
            }
            add_leg(&mut out, &one, &rep.pi[n], v);
            if let Some(t) = &t_leg {
                add_plain(&mut out, t, &Q::one(), v);
            }
            out
        })
        .collect()]
}

/// `ad^sp(x)` for type K: the `sp(d_0)` part of `ad x` restricted to `d_0`.
fn k_ad_sp(d: &LieAlgebra, sd0: &SymplecticData, x: &[Q]) -> Vec<Q> {
    let n0 = sd0.dim();
    let full = d.ad(x);
    let block: Matrix = full[..n0].iter().map(|row| row[..n0].to_vec()).collect();
    sd0.sp_coords(&pi_sp(sd0, &block)).expect("projection lies in sp")
}

fn k_module_table(a: &PseudoAlgebra, rep: &RepSpec) -> ActionTable {
    let emb = a.embed();
    let h = emb.h;
    let d = a.base();
    let n = d.dim();
    let n0 = n - 1;
    let sd0 = contact_symplectic(a).expect("K-type data");
    let pairs = sd0.sp_pairs();
    let one = left(&h.one(), emb);
    let uc = rep.u.last().expect("c matrix");

    let mut quad = Vec::new();
    for i in 0..n0 {
        for j in 0..n0 {
            let p = h.mul(&emb.gen(i), &emb.gen(j));
            quad.push((left(&p, emb), sp_index(&pairs, i, j)));
        }
    }
    let mut lin = Vec::new();
    for k in 0..n0 {
        let mut raised = sd0.r[k].clone();
        raised.push(Q::zero());
        let mut coords = k_ad_sp(d, &sd0, &raised);
        coords.push(Q::zero());
        let mat = linalg::mat_add(&rep.pi_comb(&raised), &rep.u_comb(&coords));
        let lk = left(&emb.gen(k), emb);
        let extra = h.tensor_mul(&lk, &h.coproduct(&emb.vector(&raised)));
        lin.push((lk, mat, extra));
    }
    let top = crate::lie::unit(n, n - 1);
    let mut top_coords = k_ad_sp(d, &sd0, &top);
    top_coords.push(Q::zero());
    let rho_top = linalg::mat_add(&rep.pi[n - 1], &rep.u_comb(&top_coords));
    let half_c = linalg::mat_scale(uc, &Q::new(1.into(), 2.into()));
    let ln = left(&emb.gen(n - 1), emb);
    let delta_n = h.coproduct(&emb.gen(n - 1));

    vec![(0..rep.dim)
        .map(|v| {
            let mut out = FreeTensor::new();
            for (f, p) in &quad {
                add_leg(&mut out, f, &rep.u[*p], v);
            }
            for (lk, mat, extra) in &lin {
                add_leg(&mut out, &lk.scale(&-Q::one()), mat, v);
                add_plain(&mut out, extra, &Q::one(), v);
            }
            add_leg(&mut out, &ln, &half_c, v);
            add_leg(&mut out, &one, &rho_top, v);
            add_plain(&mut out, &delta_n, &-Q::one(), v);
            out
        })
        .collect()]
}

impl PseudoModule {
    fn assemble(algebra: PseudoAlgebra, rep: RepSpec, twist: Option<Vec<Q>>) -> Result<Self> {
        rep.check_shape(&algebra)?;
        let table = match algebra.kind() {
            Kind::W | Kind::S => w_module_table(&algebra, &rep),
            Kind::H => h_module_table(&algebra, &rep, twist.as_deref()),
            Kind::K => k_module_table(&algebra, &rep),
            Kind::Lie => unreachable!("rejected by check_shape"),
        };
        Ok(Self {
            algebra,
            rep,
            twist,
            table,
        })
    }

    /// A module with an explicit action table (for mutation tests).
    pub fn with_table(&self, table: ActionTable) -> Self {
        Self { table, ..self.clone() }
    }

    pub fn algebra(&self) -> &PseudoAlgebra {
        &self.algebra
    }

    pub fn rep(&self) -> &RepSpec {
        &self.rep
    }

    pub fn twist(&self) -> Option<&[Q]> {
        self.twist.as_deref()
    }

    pub fn table(&self) -> &ActionTable {
        &self.table
    }

    pub fn dim_r(&self) -> usize {
        self.rep.dim
    }

    pub fn uea(&self) -> &Uea {
        self.algebra.uea()
    }

    /// `1 (x) v_b`.
    pub fn basis(&self, b: usize) -> FreeVec {
        FreeVec::single((self.uea().zero_index(), b), Q::one())
    }

    /// `x * m` for an algebra element `x` and a module element `m`.
    pub fn act(&self, x: &FreeVec, m: &FreeVec) -> FreeTensor<2> {
        act_elem(self.uea(), &self.table, x, m)
    }
}

/// The tensor module of `A` attached to `R`; `R` must be a representation.
pub fn tensor_module(a: &PseudoAlgebra, rep: &RepSpec) -> Result<PseudoModule> {
    let bad = rep.violations(a)?;
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "R is not a representation: {}",
            bad.join("; ")
        )));
    }
    PseudoModule::assemble(a.clone(), rep.clone(), None)
}

/// As [`tensor_module`], but skips the representation relations; only shapes
/// are checked. The resulting action need not satisfy the module axiom.
pub fn tensor_module_unchecked(a: &PseudoAlgebra, rep: &RepSpec) -> Result<PseudoModule> {
    PseudoModule::assemble(a.clone(), rep.clone(), None)
}

/// The same action over `U(d')` for a pair `d ⊂ d'`.
pub fn current_module(m: &PseudoModule, pair: &SubalgebraPair) -> Result<PseudoModule> {
    if m.twist.is_some() {
        return Err(Error::Precondition("twisted modules are already current".into()));
    }
    let alg = current_algebra(&m.algebra, pair)?;
    PseudoModule::assemble(alg, m.rep.clone(), None)
}

fn check_twist(a: &PseudoAlgebra, t: &[Q]) -> Result<()> {
    if a.kind() != Kind::H {
        return Err(Error::Precondition("twists are defined for type H".into()));
    }
    if t.len() != a.pair().big().dim() {
        return Err(Error::Shape(format!("t must have length {}", a.pair().big().dim())));
    }
    if a.pair().in_small(t) && t.iter().any(|x| !x.is_zero()) {
        return Err(Error::Domain(
            "t lies in d; the twist parameter lives in d' \\ d".into(),
        ));
    }
    Ok(())
}

/// The current H-type tensor module with the extra term `(t (x) 1) (x) (1 (x) v)`.
/// Admissibility of `t` is not checked here.
pub fn twisted_module(a: &PseudoAlgebra, rep: &RepSpec, t: &[Q]) -> Result<PseudoModule> {
    check_twist(a, t)?;
    let bad = rep.violations(a)?;
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "R is not a representation: {}",
            bad.join("; ")
        )));
    }
    PseudoModule::assemble(a.clone(), rep.clone(), Some(t.to_vec()))
}

/// As [`twisted_module`] without the representation check on `R`.
pub fn twisted_module_unchecked(a: &PseudoAlgebra, rep: &RepSpec, t: &[Q]) -> Result<PseudoModule> {
    check_twist(a, t)?;
    PseudoModule::assemble(a.clone(), rep.clone(), Some(t.to_vec()))
}

/// Checks `[a * b] * m = a * (b * m) - (sigma_12 (x)_H id) b * (a * m)` for
/// all generator pairs and basis vectors `m = 1 (x) v`, in triple normal form.
pub fn verify_action(m: &PseudoModule) -> Report {
    let a = &m.algebra;
    let gens = a.generators();
    let cases: Vec<(usize, usize, usize)> = (0..gens.len())
        .flat_map(|i| (0..gens.len()).flat_map(move |j| (0..m.rep.dim).map(move |v| (i, j, v))))
        .collect();
    let labels: Vec<String> = (0..m.rep.dim).map(|v| format!("v{}", v + 1)).collect();
    let residuals = cases
        .par_iter()
        .filter_map(|&(i, j, v)| {
            let res = axiom_residual(a.uea(), a.table(), &m.table, &gens[i], &gens[j], &m.basis(v));
            (!res.is_zero()).then(|| {
                let tn = free_triple_normal(a.uea(), &res);
                Residual {
                    label: format!(
                        "action({}, {}, {})",
                        a.generator_labels()[i],
                        a.generator_labels()[j],
                        labels[v]
                    ),
                    terms: tn.len(),
                    sample: format_triple(&tn, &labels, 6),
                }
            })
        })
        .collect();
    Report {
        checked: cases.len(),
        residuals,
    }
}

/// The two-tensor `sum_k dbar_k (x) ad_chi t(d^k) + ad_chi t(d_k) (x) dbar^k`
/// whose vanishing characterizes admissible twists.
pub fn twist_obstruction(a: &PseudoAlgebra, t: &[Q]) -> Result<HTensor<2>> {
    let sd = a
        .symplectic()
        .ok_or_else(|| Error::Precondition("twists are defined for type H".into()))?;
    let emb = a.embed();
    let h = emb.h;
    let chi_big = emb.coords(&sd.chi);
    let adc = ad_chi(a.pair(), &sd.chi, t);
    let n = a.base().dim();
    let image = |x: &[Q]| -> HElement {
        let v = linalg::mat_vec(&adc, x);
        h.from_vector(&v)
    };
    let mut out = HTensor::new();
    for k in 0..n {
        let dk = crate::lie::unit(n, k);
        let up = &sd.r[k];
        let bar_dk = h.bar(&emb.gen(k), &chi_big);
        let bar_up = h.bar(&emb.vector(up), &chi_big);
        out.add_assign_ref(&crate::uea::tensor2(&bar_dk, &image(up)));
        out.add_assign_ref(&crate::uea::tensor2(&image(&dk), &bar_up));
    }
    Ok(out)
}

/// Solution space of the admissibility conditions on `t ∈ d'`.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleSpace {
    /// Basis whose first `in_d` vectors span the intersection with `d`.
    #[serde(with = "crate::rational::serde_q::mat")]
    pub basis: Matrix,
    pub in_d: usize,
}

impl AdmissibleSpace {
    /// Whether some admissible `t` lies outside `d`.
    pub fn exceptional(&self) -> bool {
        self.basis.len() > self.in_d
    }

    /// The trivial pair leaves no room for a twist.
    pub fn degenerate(pair: &SubalgebraPair) -> bool {
        pair.offset() == 0
    }
}

/// Basis of `{t : [t, s] = 0, ad_chi t (d) ⊆ d, ad_chi t ∈ sp(d, omega)}`,
/// adapted to the intersection with `d`.
pub fn admissible_t_space(pair: &SubalgebraPair, sd: &SymplecticData) -> Result<AdmissibleSpace> {
    let big = pair.big();
    let nn = big.dim();
    let r = pair.offset();
    let n = pair.small_dim();
    if sd.dim() != n {
        return Err(Error::Shape("symplectic data does not live on d".into()));
    }
    let s_big = pair.embed(&sd.s);
    // each basis t_i gives one column of constraint values
    let cols: Vec<Sparse<(u8, usize, usize)>> = (0..nn)
        .map(|i| {
            let t = crate::lie::unit(nn, i);
            let mut col = Sparse::new();
            for (k, x) in big.bracket(&t, &s_big).into_iter().enumerate() {
                col.add_term((0, k, 0), x);
            }
            let adc = ad_chi(pair, &sd.chi, &t);
            for (row, vals) in adc.iter().enumerate().take(r) {
                for (j, x) in vals.iter().enumerate() {
                    col.add_term((1, row, j), x.clone());
                }
            }
            let block: Matrix = adc[r..].to_vec();
            let lhs = linalg::mat_mul(&linalg::transpose(&block), &sd.omega);
            let rhs = linalg::mat_mul(&sd.omega, &block);
            let sum = linalg::mat_add(&lhs, &rhs);
            for (p, row) in sum.iter().enumerate() {
                for (q, x) in row.iter().enumerate() {
                    col.add_term((2, p, q), x.clone());
                }
            }
            col
        })
        .collect();
    let full = linalg::nullspace(&cols);
    let mut restricted = cols.clone();
    for (i, c) in restricted.iter_mut().enumerate().take(r) {
        c.add_term((3, i, 0), Q::one());
    }
    let inside = linalg::nullspace(&restricted);
    // extend a basis of the intersection to the whole space
    let to_sparse = |v: &Vec<Q>| -> Sparse<usize> { v.iter().cloned().enumerate().collect() };
    let mut basis = inside.clone();
    let mut rr = linalg::RowReducer::new(nn);
    for v in &inside {
        rr.insert(to_sparse(v).into_terms());
    }
    for v in full {
        if rr.insert(to_sparse(&v).into_terms()) {
            basis.push(v);
        }
    }
    debug_assert!(basis.iter().all(|t| t.len() == n + r));
    Ok(AdmissibleSpace {
        basis,
        in_d: inside.len(),
    })
}

/// Compares `e *_{t'}` on `V(R)` with `e *_t` on `V(R')`, where `R'` twists
/// `Pi_+` by the traceform `iota_delta omega`, `delta = t' - t`.
pub fn iso_twist_check(a: &PseudoAlgebra, rep: &RepSpec, t: &[Q], t_prime: &[Q]) -> Result<Report> {
    let sd = a
        .symplectic()
        .ok_or_else(|| Error::Precondition("twists are defined for type H".into()))?;
    let pair = a.pair();
    if t.len() != pair.big().dim() || t_prime.len() != t.len() {
        return Err(Error::Shape("t and t' must be vectors of d'".into()));
    }
    let delta_big: Vec<Q> = t_prime.iter().zip(t).map(|(x, y)| x - y).collect();
    if !pair.in_small(&delta_big) {
        return Err(Error::Precondition("t' - t does not lie in d".into()));
    }
    let delta = delta_big[pair.offset()..].to_vec();
    if !sd.chi_of(&delta).is_zero() {
        return Err(Error::Precondition("chi(t' - t) is nonzero".into()));
    }
    let lambda = sd.iota(&delta);
    let twisted_rep = rep.twisted_by(&lambda);
    let lhs = PseudoModule::assemble(a.clone(), rep.clone(), Some(t_prime.to_vec()))?;
    let rhs = PseudoModule::assemble(a.clone(), twisted_rep, Some(t.to_vec()))?;
    let labels: Vec<String> = (0..rep.dim).map(|v| format!("v{}", v + 1)).collect();
    let residuals = (0..rep.dim)
        .filter_map(|v| {
            let diff = &lhs.table[0][v] - &rhs.table[0][v];
            (!diff.is_zero()).then(|| Residual {
                label: format!("e * {}", labels[v]),
                terms: diff.len(),
                sample: crate::pseudo::format_free2(&diff, &labels, 6),
            })
        })
        .collect();
    Ok(Report {
        checked: rep.dim,
        residuals,
    })
}

/// Fourier coefficient `(x_K (x) a) . v`: with `a * v = sum_J (d^(J) (x) 1) (x)_H m_J`,
/// this is `sum_J <x_K, S(d^(J))> m_J`.
pub fn fourier_action(m: &PseudoModule, k: &MultiIndex, a: &FreeVec, v: &FreeVec) -> FreeVec {
    let h = m.uea();
    let ln = free_left_normal(h, &m.act(a, v));
    let mut out = FreeVec::new();
    for (j, mj) in crate::htensor::coefficients(&ln) {
        let c = h.mono_antipode(&j).get(k);
        if !c.is_zero() {
            out.add_scaled(&mj, &c);
        }
    }
    out
}

/// `sum_K (S(d^(K)) (x) 1) (x)_H F_K` from the Fourier coefficients of `a * v`.
pub fn reconstruct(m: &PseudoModule, a: &FreeVec, v: &FreeVec) -> FreeTensor<2> {
    let h = m.uea();
    let av = m.act(a, v);
    let top = free_left_normal(h, &av)
        .keys()
        .map(|(j, _)| j.degree() as i64)
        .max()
        .unwrap_or(-1);
    let mut out = FreeTensor::new();
    for k in MultiIndex::all_up_to(h.dim(), top) {
        let fk = fourier_action(m, &k, a, v);
        if fk.is_zero() {
            continue;
        }
        let sk = h.mono_antipode(&k);
        for ((key, b), c) in &fk {
            let d = h.coproduct(&HElement::single(*key, c.clone()));
            let prod = h.tensor_mul(&crate::uea::tensor2(&sk, &h.one()), &d);
            for (kk, x) in &prod {
                out.add_term((*kk, *b), x.clone());
            }
        }
    }
    out
}

/// Unknowns `d^(K) (x) v_b` with `|K| <= D`.
fn search_space(m: &PseudoModule, degree: i64) -> Vec<(MultiIndex, usize)> {
    MultiIndex::all_up_to(m.uea().dim(), degree)
        .into_iter()
        .flat_map(|k| (0..m.rep.dim).map(move |b| (k, b)))
        .collect()
}

fn combine(unknowns: &[(MultiIndex, usize)], x: &[Q]) -> FreeVec {
    unknowns.iter().zip(x).map(|(k, c)| (*k, c.clone())).collect()
}

type Key = (usize, MultiIndex, (MultiIndex, usize));

/// Solves for all `v` of degree `<= D` whose left-normalized pseudoactions
/// `g * v` vanish at every `J` with `keep(J) == false`.
fn solve_support(m: &PseudoModule, degree: i64, allowed: impl Fn(&MultiIndex) -> bool + Sync) -> Vec<FreeVec> {
    let unknowns = search_space(m, degree);
    if unknowns.is_empty() {
        return Vec::new();
    }
    let h = m.uea();
    let gens = m.algebra.generators();
    let cols: Vec<Sparse<Key>> = unknowns
        .par_iter()
        .map(|(k, b)| {
            let v = FreeVec::single((*k, *b), Q::one());
            let mut col = Sparse::new();
            for (g, a) in gens.iter().enumerate() {
                let ln = free_left_normal(h, &m.act(a, &v));
                for ((j, mk), c) in &ln {
                    if !allowed(j) {
                        col.add_term((g, *j, *mk), c.clone());
                    }
                }
            }
            col
        })
        .collect();
    linalg::nullspace(&cols)
        .into_iter()
        .map(|x| combine(&unknowns, &x))
        .collect()
}

/// Basis of `{v : deg v <= D, g * v = 0 for every generator g}`.
pub fn ker_solver(m: &PseudoModule, degree: i64) -> Vec<FreeVec> {
    solve_support(m, degree, |_| false)
}

/// Whether `J` is an allowed left multi-index for a singular vector.
pub fn singular_allowed(a: &PseudoAlgebra, j: &MultiIndex) -> bool {
    let pair = a.pair();
    let in_d = j.support().all(|i| pair.is_small_index(i));
    if in_d && j.degree() <= a.ell() {
        return true;
    }
    a.kind() == Kind::H && j.degree() == 1 && j.support().all(|i| !pair.is_small_index(i))
}

/// Basis of the degree-`<= D` vectors whose pseudoactions are supported on
/// allowed left multi-indices.
pub fn singular_vectors(m: &PseudoModule, degree: i64) -> Vec<FreeVec> {
    solve_support(m, degree, |j| singular_allowed(&m.algebra, j))
}

/// Outcome of comparing `C(V)` with `ker V`.
#[derive(Clone, Debug, Serialize)]
pub struct CvReport {
    pub degree: i64,
    pub ker_dim: usize,
    pub c_dim: usize,
    pub equal: bool,
}

/// Computes `C(V) = {v : e * v ∈ (1 (x) 1) (x)_H V}` and `ker V` up to degree `D`.
pub fn c_of_v_check(m: &PseudoModule, degree: i64) -> Result<CvReport> {
    if m.algebra.kind() != Kind::H {
        return Err(Error::Precondition("C(V) is compared with ker V for type H".into()));
    }
    let ker = ker_solver(m, degree);
    let c = solve_support(m, degree, |j| j.is_zero());
    let rk = |vs: &[FreeVec]| linalg::rank(vs);
    let mut both = ker.clone();
    both.extend(c.iter().cloned());
    let equal = ker.len() == c.len() && rk(&both) == ker.len();
    Ok(CvReport {
        degree,
        ker_dim: ker.len(),
        c_dim: c.len(),
        equal,
    })
}

/// `phi ∈ sp(d, omega)`.
pub fn in_sp(sd: &SymplecticData, phi: &Matrix) -> bool {
    sp_member(sd, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudo::{build_S, build_W, build_rank1, current_algebra};
    use crate::rational::q;

    fn wedge(n: usize, sign: i64) -> Matrix {
        let mut r = linalg::zeros(n, n);
        r[0][1] = q(sign);
        r[1][0] = q(-sign);
        r
    }

    #[test]
    fn w_trivial_abelian_one() {
        let w = build_W(&LieAlgebra::abelian(1)).unwrap();
        let m = tensor_module(&w, &RepSpec::trivial(&w).unwrap()).unwrap();
        let d = MultiIndex::unit(1, 0);
        let z = MultiIndex::zero(1);
        let mut expect = FreeTensor::new();
        expect.add_term(([d, z], 0), q(-1));
        expect.add_term(([z, d], 0), q(-1));
        assert_eq!(m.table()[0][0], expect);
        assert!(verify_action(&m).is_empty());
    }

    #[test]
    fn tensor_modules_satisfy_axiom() {
        let w = build_W(&LieAlgebra::heisenberg()).unwrap();
        let std = RepSpec::standard(&w, q(0)).unwrap();
        assert!(verify_action(&tensor_module(&w, &std).unwrap()).is_empty());
        let h = build_rank1(&LieAlgebra::abelian(2), &wedge(2, 1), &[q(0), q(0)]).unwrap();
        for rep in [RepSpec::trivial(&h).unwrap(), RepSpec::standard(&h, q(0)).unwrap()] {
            assert!(verify_action(&tensor_module(&h, &rep).unwrap()).is_empty());
        }
    }

    fn abelian_pair(big: usize) -> (PseudoAlgebra, PseudoAlgebra) {
        let h2 = build_rank1(&LieAlgebra::abelian(2), &wedge(2, 1), &[q(0), q(0)]).unwrap();
        let pair = SubalgebraPair::new(LieAlgebra::abelian(big), 2).unwrap();
        let cur = current_algebra(&h2, &pair).unwrap();
        (h2, cur)
    }

    fn borel() -> PseudoAlgebra {
        build_rank1(&LieAlgebra::sl2_borel(), &wedge(2, 1), &[q(0), q(2)]).unwrap()
    }

    #[test]
    fn h_action_with_central_scalar() {
        // rho(c) = 7 is not a d_+ representation here, but the table is still defined
        let (h2, _) = abelian_pair(3);
        let mut rep = RepSpec::trivial(&h2).unwrap();
        rep.pi[2] = vec![vec![q(7)]];
        assert!(tensor_module(&h2, &rep).is_err());
        let m = tensor_module_unchecked(&h2, &rep).unwrap();
        let z = MultiIndex::zero(2);
        let (d1, d2) = (MultiIndex::unit(2, 0), MultiIndex::unit(2, 1));
        let mut expect = FreeTensor::new();
        // (d1 (x) 1) Delta(d2) - (d2 (x) 1) Delta(d1) + 7
        expect.add_term(([d1.add(&d2), z], 0), q(1));
        expect.add_term(([d1, d2], 0), q(1));
        expect.add_term(([d1.add(&d2), z], 0), q(-1));
        expect.add_term(([d2, d1], 0), q(-1));
        expect.add_term(([z, z], 0), q(7));
        assert_eq!(m.table()[0][0], expect);
    }

    #[test]
    fn k_modules() {
        let k = build_rank1(&LieAlgebra::heisenberg(), &wedge(3, -1), &[q(0), q(0), q(1)]).unwrap();
        for c in [0, 1, 3] {
            let m = tensor_module(&k, &RepSpec::standard(&k, q(c)).unwrap()).unwrap();
            assert!(verify_action(&m).is_empty());
        }
        let mut rep = RepSpec::trivial(&k).unwrap();
        rep.pi[0] = vec![vec![q(2)]];
        rep.pi[1] = vec![vec![q(-3)]];
        rep.u[3] = vec![vec![q(5)]];
        assert!(verify_action(&tensor_module(&k, &rep).unwrap()).is_empty());
    }

    #[test]
    fn s_modules_by_restriction() {
        let s = build_S(&LieAlgebra::heisenberg(), &[q(1), q(0), q(0)]).unwrap();
        let rep = RepSpec::standard(&s, q(0)).unwrap();
        assert!(rep.violations(&s).unwrap().is_empty());
        assert!(verify_action(&tensor_module(&s, &rep).unwrap()).is_empty());
        // gl-standard violates the sl condition
        let w = build_W(&LieAlgebra::heisenberg()).unwrap();
        let mut gl = RepSpec::standard(&w, q(0)).unwrap();
        gl.g0 = G0::Sl;
        assert!(!gl.violations(&s).unwrap().is_empty());
    }

    #[test]
    fn current_and_twisted() {
        let (h2, cur) = abelian_pair(3);
        let rep = RepSpec::standard(&h2, q(0)).unwrap();
        let plain = tensor_module(&h2, &rep).unwrap();
        let cm = current_module(&plain, cur.pair()).unwrap();
        assert!(verify_action(&cm).is_empty());
        let t0 = twisted_module(&cur, &rep, &[q(0), q(0), q(0)]).unwrap();
        assert_eq!(t0.table(), cm.table());
        let t1 = twisted_module(&cur, &rep, &[q(1), q(0), q(0)]).unwrap();
        let diff = &t1.table()[0][0] - &cm.table()[0][0];
        let z = MultiIndex::zero(3);
        assert_eq!(diff, FreeTensor::single(([MultiIndex::unit(3, 0), z], 0), q(1)));
        assert!(verify_action(&t1).is_empty());
        assert!(matches!(
            twisted_module(&cur, &rep, &[q(0), q(1), q(0)]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn borel_twist_residual_is_obstruction() {
        let b = borel();
        let pair = SubalgebraPair::new(LieAlgebra::sl2(), 2).unwrap();
        let space = admissible_t_space(&pair, b.symplectic().unwrap()).unwrap();
        assert!(!space.exceptional());
        assert_eq!(space.basis, vec![vec![q(0), q(0), q(1)]]);
        let cb = current_algebra(&b, &pair).unwrap();
        let tf = [q(1), q(0), q(0)];
        let m = twisted_module(&cb, &RepSpec::trivial(&cb).unwrap(), &tf).unwrap();
        let e = &cb.generators()[0];
        let res = axiom_residual(cb.uea(), cb.table(), m.table(), e, e, &m.basis(0));
        let ob = twist_obstruction(&cb, &tf).unwrap();
        let z = cb.uea().zero_index();
        assert!(!ob.is_zero());
        assert_eq!(res, ob.map_keys(|[a, b]| ([*a, *b, z], 0)));
    }

    #[test]
    fn admissible_abelian_is_everything() {
        let (h2, _) = abelian_pair(3);
        let pair = SubalgebraPair::new(LieAlgebra::abelian(3), 2).unwrap();
        let space = admissible_t_space(&pair, h2.symplectic().unwrap()).unwrap();
        assert_eq!(space.basis.len(), 3);
        assert_eq!(space.in_d, 2);
        assert!(space.exceptional());
    }

    #[test]
    fn iso_twist_abelian() {
        let (h2, cur) = abelian_pair(4);
        let rep = RepSpec::trivial(&h2).unwrap();
        let t = [q(1), q(0), q(0), q(0)];
        for delta in [[q(0), q(0), q(1), q(0)], [q(0), q(0), q(0), q(1)]] {
            let tp: Vec<Q> = t.iter().zip(&delta).map(|(a, b)| a + b).collect();
            assert!(iso_twist_check(&cur, &rep, &t, &tp).unwrap().is_empty());
        }
        let outside = [q(1), q(1), q(0), q(0)];
        assert!(iso_twist_check(&cur, &rep, &t, &outside).is_err());
    }

    #[test]
    fn fourier_round_trip() {
        let (h2, cur) = abelian_pair(3);
        let m = twisted_module(&cur, &RepSpec::standard(&h2, q(0)).unwrap(), &[q(1), q(0), q(0)]).unwrap();
        let e = &cur.generators()[0];
        for v in 0..m.dim_r() {
            let bv = m.basis(v);
            assert_eq!(reconstruct(&m, e, &bv), m.act(e, &bv));
        }
        let far = MultiIndex::from_slice(&[3, 0, 0]).unwrap();
        assert!(fourier_action(&m, &far, e, &m.basis(0)).is_zero());
        assert!(fourier_action(&m, &MultiIndex::zero(3), e, &FreeVec::new()).is_zero());
    }

    #[test]
    fn solvers() {
        let (h2, cur) = abelian_pair(3);
        let m = twisted_module(&cur, &RepSpec::trivial(&h2).unwrap(), &[q(1), q(0), q(0)]).unwrap();
        let sing = singular_vectors(&m, 3);
        assert_eq!(sing, vec![m.basis(0)]);
        assert!(ker_solver(&m, 3).is_empty());
        assert!(ker_solver(&m, -1).is_empty());
        let zero = m.with_table(vec![vec![FreeTensor::new()]]);
        assert_eq!(ker_solver(&zero, 1).len(), 4);
        let cv = c_of_v_check(&tensor_module(&h2, &RepSpec::standard(&h2, q(0)).unwrap()).unwrap(), 2).unwrap();
        assert!(cv.equal && cv.ker_dim == 0);
        let cz = c_of_v_check(&zero, 1).unwrap();
        assert!(cz.equal && cz.ker_dim == 4);
    }
}
