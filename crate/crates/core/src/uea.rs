//! The universal enveloping algebra `H = U(d)` in the divided-power PBW basis
//! `d^(K) = d_1^{k_1} ... d_N^{k_N} / (k_1! ... k_N!)`, with its cocommutative
//! Hopf structure.
//!
//! Products are straightened by inserting the generators of the right factor
//! one at a time into an ordinary (non-divided) PBW word, using
//! `A' d_m d_j = (A' d_j) d_m + A' [d_m, d_j]` whenever `m > j`. Results for
//! `(word, generator)` pairs and for divided monomial pairs are memoized.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::rational::{factorial, format_q, parse_q, Q};
use crate::sparse::Sparse;

/// Largest supported Lie algebra dimension.
pub const MAX_DIM: usize = 8;

/// Exponent vector `K = (k_1, ..., k_N)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    len: u8,
    e: [u8; MAX_DIM],
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        Self {
            len: n as u8,
            e: [0; MAX_DIM],
        }
    }

    /// `epsilon_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut m = Self::zero(n);
        m.e[i] = 1;
        m
    }

    pub fn from_slice(x: &[u32]) -> Result<Self> {
        if x.len() > MAX_DIM {
            return Err(Error::Shape(format!("dimension {} exceeds {MAX_DIM}", x.len())));
        }
        let mut m = Self::zero(x.len());
        for (i, &v) in x.iter().enumerate() {
            m.e[i] = u8::try_from(v).map_err(|_| Error::Shape(format!("exponent {v} too large")))?;
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn exps(&self) -> Vec<u32> {
        self.e[..self.len()].iter().map(|&x| x as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.e[..self.len()].iter().map(|&x| x as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    /// `K!` = product of factorials.
    pub fn factorial(&self) -> Q {
        self.e[..self.len()]
            .iter()
            .fold(Q::one(), |acc, &k| acc * factorial(k as u32))
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.len, o.len);
        let mut m = *self;
        for i in 0..self.len() {
            m.e[i] += o.e[i];
        }
        m
    }

    pub fn sub(&self, o: &Self) -> Option<Self> {
        let mut m = *self;
        for i in 0..self.len() {
            m.e[i] = self.e[i].checked_sub(o.e[i])?;
        }
        Some(m)
    }

    pub fn with(&self, i: usize, v: u32) -> Self {
        let mut m = *self;
        m.e[i] = v as u8;
        m
    }

    /// Index of the last nonzero exponent.
    pub fn last_nonzero(&self) -> Option<usize> {
        (0..self.len()).rev().find(|&i| self.e[i] > 0)
    }

    /// Indices with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.e[i] > 0)
    }

    /// All `I` with `I <= K` componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(self.len())];
        for i in 0..self.len() {
            let mut next = Vec::with_capacity(out.len() * (self.e[i] as usize + 1));
            for m in &out {
                for v in 0..=self.e[i] {
                    let mut x = *m;
                    x.e[i] = v;
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }

    /// Prepends `r` zero exponents (embedding `U(d)` into `U(d')`).
    pub fn embed(&self, r: usize) -> Self {
        let mut m = Self::zero(self.len() + r);
        for i in 0..self.len() {
            m.e[r + i] = self.e[i];
        }
        m
    }

    /// All multi-indices of length `n` and degree at most `d`, ordered by degree.
    pub fn all_up_to(n: usize, d: i64) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        for deg in 0..=(d as u32) {
            let mut cur = Vec::new();
            compositions(n, deg, &mut vec![0; n], 0, &mut cur);
            out.extend(cur);
        }
        out
    }
}

fn compositions(n: usize, left: u32, buf: &mut Vec<u32>, i: usize, out: &mut Vec<MultiIndex>) {
    if i + 1 >= n {
        if n > 0 {
            buf[n - 1] = left;
        }
        if n > 0 || left == 0 {
            out.push(MultiIndex::from_slice(buf).expect("small"));
        }
        return;
    }
    for v in (0..=left).rev() {
        buf[i] = v;
        compositions(n, left - v, buf, i + 1, out);
    }
    buf[i] = 0;
}

/// An element of `U(d)`.
pub type HElement = Sparse<MultiIndex>;

/// An element of `H^{(x) N}`.
pub type HTensor<const N: usize> = Sparse<[MultiIndex; N]>;

type WordCache = HashMap<(MultiIndex, usize), Arc<Sparse<MultiIndex>>>;

/// `U(d)` with memoized multiplication and antipode.
pub struct Uea {
    lie: LieAlgebra,
    abelian: bool,
    words: RwLock<WordCache>,
    products: RwLock<HashMap<(MultiIndex, MultiIndex), Arc<HElement>>>,
    antipodes: RwLock<HashMap<MultiIndex, Arc<HElement>>>,
}

impl fmt::Debug for Uea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Uea").field("lie", &self.lie).finish()
    }
}

impl Uea {
    pub fn new(lie: LieAlgebra) -> Result<Self> {
        if lie.dim() > MAX_DIM {
            return Err(Error::Shape(format!("dimension {} exceeds {MAX_DIM}", lie.dim())));
        }
        Ok(Self {
            abelian: lie.is_abelian(),
            lie,
            words: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
            antipodes: RwLock::new(HashMap::new()),
        })
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn zero_index(&self) -> MultiIndex {
        MultiIndex::zero(self.dim())
    }

    pub fn one(&self) -> HElement {
        HElement::single(self.zero_index(), Q::one())
    }

    pub fn scalar(&self, c: Q) -> HElement {
        HElement::single(self.zero_index(), c)
    }

    /// The generator `d_i`.
    pub fn gen(&self, i: usize) -> HElement {
        HElement::single(MultiIndex::unit(self.dim(), i), Q::one())
    }

    /// `sum_i v_i d_i`.
    pub fn from_vector(&self, v: &[Q]) -> HElement {
        v.iter()
            .enumerate()
            .map(|(i, c)| (MultiIndex::unit(self.dim(), i), c.clone()))
            .collect()
    }

    pub fn monomial(&self, k: MultiIndex) -> HElement {
        HElement::single(k, Q::one())
    }

    /// Ordinary word `d^A` times `d_j`, in ordinary PBW coordinates.
    fn word_times_gen(&self, a: MultiIndex, j: usize) -> Arc<Sparse<MultiIndex>> {
        if let Some(hit) = self.words.read().expect("lock").get(&(a, j)) {
            return hit.clone();
        }
        let result = match a.last_nonzero() {
            Some(m) if m > j => {
                let a1 = a.with(m, a.get(m) - 1);
                let mut out = Sparse::new();
                let first = self.word_times_gen(a1, j);
                for (b, x) in first.iter() {
                    out.add_scaled(&self.word_times_gen(*b, m), x);
                }
                for k in 0..self.dim() {
                    let c = self.lie.c(m, j, k);
                    if !c.is_zero() {
                        out.add_scaled(&self.word_times_gen(a1, k), c);
                    }
                }
                out
            }
            _ => Sparse::single(a.with(j, a.get(j) + 1), Q::one()),
        };
        let result = Arc::new(result);
        self.words.write().expect("lock").insert((a, j), result.clone());
        result
    }

    fn ordinary_times_gen(&self, x: &Sparse<MultiIndex>, j: usize) -> Sparse<MultiIndex> {
        let mut out = Sparse::new();
        for (a, c) in x {
            out.add_scaled(&self.word_times_gen(*a, j), c);
        }
        out
    }

    fn ordinary_to_divided(x: &Sparse<MultiIndex>, scale: &Q) -> HElement {
        x.iter().map(|(k, c)| (*k, c * k.factorial() * scale)).collect()
    }

    /// `d^(A) d^(B)`.
    pub fn mono_mul(&self, a: &MultiIndex, b: &MultiIndex) -> Arc<HElement> {
        if a.is_zero() {
            return Arc::new(HElement::single(*b, Q::one()));
        }
        if b.is_zero() {
            return Arc::new(HElement::single(*a, Q::one()));
        }
        if let Some(hit) = self.products.read().expect("lock").get(&(*a, *b)) {
            return hit.clone();
        }
        let result = if self.abelian {
            let k = a.add(b);
            let c = k.factorial() / (a.factorial() * b.factorial());
            HElement::single(k, c)
        } else {
            let mut x = Sparse::single(*a, Q::one());
            for i in 0..self.dim() {
                for _ in 0..b.get(i) {
                    x = self.ordinary_times_gen(&x, i);
                }
            }
            let scale = Q::one() / (a.factorial() * b.factorial());
            Self::ordinary_to_divided(&x, &scale)
        };
        let result = Arc::new(result);
        self.products.write().expect("lock").insert((*a, *b), result.clone());
        result
    }

    fn check(&self, h: &HElement) -> Result<()> {
        match h.keys().find(|k| k.len() != self.dim()) {
            Some(k) => Err(Error::Shape(format!(
                "multi-index {k} does not belong to a {}-dimensional algebra",
                self.dim()
            ))),
            None => Ok(()),
        }
    }

    pub fn mul(&self, a: &HElement, b: &HElement) -> HElement {
        let mut out = HElement::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                out.add_scaled(&self.mono_mul(ka, kb), &(ca * cb));
            }
        }
        out
    }

    /// Product with a dimension check on every multi-index.
    pub fn checked_mul(&self, a: &HElement, b: &HElement) -> Result<HElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// `S(d^(K))`.
    pub fn mono_antipode(&self, k: &MultiIndex) -> Arc<HElement> {
        if let Some(hit) = self.antipodes.read().expect("lock").get(k) {
            return hit.clone();
        }
        let sign = if k.degree().is_multiple_of(2) {
            Q::one()
        } else {
            -Q::one()
        };
        let result = if self.abelian {
            HElement::single(*k, sign)
        } else {
            let mut x = Sparse::single(self.zero_index(), Q::one());
            for i in (0..self.dim()).rev() {
                for _ in 0..k.get(i) {
                    x = self.ordinary_times_gen(&x, i);
                }
            }
            Self::ordinary_to_divided(&x, &(sign / k.factorial()))
        };
        let result = Arc::new(result);
        self.antipodes.write().expect("lock").insert(*k, result.clone());
        result
    }

    pub fn antipode(&self, h: &HElement) -> HElement {
        let mut out = HElement::new();
        for (k, c) in h {
            out.add_scaled(&self.mono_antipode(k), c);
        }
        out
    }

    pub fn counit(&self, h: &HElement) -> Q {
        h.get(&self.zero_index())
    }

    /// Maximal `|K|` in the support; `-1` for zero.
    pub fn fil_degree(h: &HElement) -> i64 {
        h.keys().map(|k| k.degree() as i64).max().unwrap_or(-1)
    }

    pub fn coproduct(&self, h: &HElement) -> HTensor<2> {
        let mut out = HTensor::new();
        for (k, c) in h {
            for i in k.sub_indices() {
                out.add_term([i, k.sub(&i).expect("sub-index")], c.clone());
            }
        }
        out
    }

    /// `(Delta (x) id) Delta`, equal to the sum over all splittings `I + J + L = K`.
    pub fn coproduct3(&self, h: &HElement) -> HTensor<3> {
        let mut out = HTensor::new();
        for (k, c) in h {
            for i in k.sub_indices() {
                let rest = k.sub(&i).expect("sub-index");
                for j in rest.sub_indices() {
                    out.add_term([i, j, rest.sub(&j).expect("sub-index")], c.clone());
                }
            }
        }
        out
    }

    /// The automorphism `d -> d - chi(d)` applied to `h`.
    pub fn bar(&self, h: &HElement, chi: &[Q]) -> HElement {
        let n = self.dim();
        let mut out = HElement::new();
        for (k, c) in h {
            for j in k.sub_indices() {
                let d = k.sub(&j).expect("sub-index");
                let mut coeff = c.clone();
                for i in 0..n {
                    let e = d.get(i);
                    if e == 0 {
                        continue;
                    }
                    let mut p = Q::one();
                    for _ in 0..e {
                        p *= -chi[i].clone();
                    }
                    coeff *= p / factorial(e);
                }
                out.add_term(j, coeff);
            }
        }
        out
    }

    /// Componentwise product in `H^{(x) N}`.
    pub fn tensor_mul<const N: usize>(&self, a: &HTensor<N>, b: &HTensor<N>) -> HTensor<N> {
        let mut out = HTensor::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                let legs: Vec<Arc<HElement>> = (0..N).map(|i| self.mono_mul(&ka[i], &kb[i])).collect();
                outer_into(&mut out, &legs, &(ca * cb));
            }
        }
        out
    }

    /// Parses `"3/2*d[2,0,1] + d[0,0,0]"`.
    pub fn parse(&self, s: &str) -> Result<HElement> {
        parse_element(s, self.dim())
    }

    pub fn format(h: &HElement) -> String {
        format_element(h)
    }
}

/// Adds `scale * legs[0] (x) ... (x) legs[N-1]` into `out`.
pub(crate) fn outer_into<const N: usize>(out: &mut HTensor<N>, legs: &[Arc<HElement>], scale: &Q) {
    fn rec<const N: usize>(out: &mut HTensor<N>, legs: &[Arc<HElement>], i: usize, key: &mut [MultiIndex; N], c: Q) {
        if i == N {
            out.add_term(*key, c);
            return;
        }
        for (k, v) in legs[i].iter() {
            key[i] = *k;
            rec(out, legs, i + 1, key, &c * v);
        }
    }
    if legs.iter().any(|l| l.is_zero()) || scale.is_zero() {
        return;
    }
    let mut key = [legs[0].keys().next().copied().expect("nonzero"); N];
    rec(out, legs, 0, &mut key, scale.clone());
}

/// `a (x) b` for single elements.
pub fn tensor2(a: &HElement, b: &HElement) -> HTensor<2> {
    let mut out = HTensor::new();
    outer_into(&mut out, &[Arc::new(a.clone()), Arc::new(b.clone())], &Q::one());
    out
}

pub fn tensor3(a: &HElement, b: &HElement, c: &HElement) -> HTensor<3> {
    let mut out = HTensor::new();
    outer_into(
        &mut out,
        &[Arc::new(a.clone()), Arc::new(b.clone()), Arc::new(c.clone())],
        &Q::one(),
    );
    out
}

pub fn format_element(h: &HElement) -> String {
    if h.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in h.iter().enumerate() {
        let neg = c < &Q::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            out.push_str(&format_q(&a));
            out.push('*');
        }
        out.push('d');
        out.push_str(&k.to_string());
    }
    out
}

pub fn parse_element(s: &str, dim: usize) -> Result<HElement> {
    let t = s.trim();
    if t == "0" {
        return Ok(HElement::new());
    }
    let mut out = HElement::new();
    // split into signed terms at top-level '+'/'-' outside brackets
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in t.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-'
                if depth == 0
                    && !cur.trim().is_empty()
                    && !cur.trim_end().ends_with('*')
                    && !cur.trim_end().ends_with('/') =>
            {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            }
            '-' if depth == 0 && cur.trim().is_empty() => {
                neg = !neg;
            }
            '+' if depth == 0 && cur.trim().is_empty() => {}
            _ => cur.push(ch),
        }
    }
    terms.push((neg, cur));
    for (neg, term) in terms {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        let (coeff, mono) = match term.rsplit_once('*') {
            Some((c, m)) => (parse_q(c)?, m.trim()),
            None if term.starts_with('d') => (Q::one(), term),
            None => (parse_q(term)?, ""),
        };
        let key = if mono.is_empty() {
            MultiIndex::zero(dim)
        } else {
            let inner = mono
                .strip_prefix("d[")
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad monomial {mono:?}")))?;
            let exps: Vec<u32> = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {mono:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            if exps.len() != dim {
                return Err(Error::Shape(format!(
                    "monomial {mono:?} has {} exponents, expected {dim}",
                    exps.len()
                )));
            }
            MultiIndex::from_slice(&exps)?
        };
        out.add_term(key, if neg { -coeff } else { coeff });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn mi(x: &[u32]) -> MultiIndex {
        MultiIndex::from_slice(x).unwrap()
    }

    #[test]
    fn abelian_divided_powers() {
        let h = Uea::new(LieAlgebra::abelian(2)).unwrap();
        let p = h.mul(&h.monomial(mi(&[2, 0])), &h.monomial(mi(&[1, 0])));
        assert_eq!(p, HElement::single(mi(&[3, 0]), q(3)));
        let x = h.monomial(mi(&[1, 1]));
        assert_eq!(h.mul(&h.one(), &x), x);
    }

    #[test]
    fn heisenberg_straightening() {
        let h = Uea::new(LieAlgebra::heisenberg()).unwrap();
        let p = h.mul(&h.gen(1), &h.gen(0));
        let expect: HElement = [(mi(&[1, 1, 0]), q(1)), (mi(&[0, 0, 1]), q(-1))].into_iter().collect();
        assert_eq!(p, expect);
        let s = h.antipode(&h.monomial(mi(&[1, 1, 0])));
        assert_eq!(s, expect);
    }

    #[test]
    fn coproduct_examples() {
        let h = Uea::new(LieAlgebra::abelian(1)).unwrap();
        let d = h.coproduct(&h.monomial(mi(&[2])));
        assert_eq!(d.len(), 3);
        assert_eq!(d.get(&[mi(&[1]), mi(&[1])]), q(1));
        assert_eq!(h.coproduct(&h.one()), tensor2(&h.one(), &h.one()));
    }

    #[test]
    fn counit_and_degree() {
        let h = Uea::new(LieAlgebra::abelian(2)).unwrap();
        let x = &h.scalar(q(3)) + &h.gen(0).scale(&q(2));
        assert_eq!(h.counit(&x), q(3));
        assert_eq!(h.counit(&h.gen(1)), q(0));
        assert_eq!(Uea::fil_degree(&h.one()), 0);
        assert_eq!(Uea::fil_degree(&HElement::new()), -1);
        let h3 = Uea::new(LieAlgebra::heisenberg()).unwrap();
        assert_eq!(Uea::fil_degree(&h3.monomial(mi(&[2, 1, 0]))), 3);
    }

    #[test]
    fn sl2_commutators() {
        let h = Uea::new(LieAlgebra::sl2()).unwrap();
        // e f = f e + h  (indices f=0, h=1, e=2)
        let ef = h.mul(&h.gen(2), &h.gen(0));
        let expect: HElement = [(mi(&[1, 0, 1]), q(1)), (mi(&[0, 1, 0]), q(1))].into_iter().collect();
        assert_eq!(ef, expect);
    }

    #[test]
    fn text_round_trip() {
        let h = Uea::new(LieAlgebra::abelian(3)).unwrap();
        let x = h.parse("3/2*d[2,0,1] + d[0,0,0] - d[0,1,0]").unwrap();
        assert_eq!(x.get(&mi(&[2, 0, 1])), q(3) / q(2));
        assert_eq!(x.get(&mi(&[0, 1, 0])), q(-1));
        assert_eq!(h.parse(&Uea::format(&x)).unwrap(), x);
        assert!(h.parse("d[1,0]").is_err());
        assert!(h.parse("x").is_err());
    }

    #[test]
    fn bar_shifts_generators() {
        let h = Uea::new(LieAlgebra::abelian(1)).unwrap();
        let b = h.bar(&h.monomial(mi(&[2])), &[q(1)]);
        // (d - 1)^2 / 2 = d^(2) - d + 1/2
        let expect: HElement = [(mi(&[2]), q(1)), (mi(&[1]), q(-1)), (mi(&[0]), q(1) / q(2))]
            .into_iter()
            .collect();
        assert_eq!(b, expect);
    }

    #[test]
    fn enumerate_indices() {
        assert_eq!(MultiIndex::all_up_to(3, 2).len(), 10);
        assert_eq!(MultiIndex::all_up_to(2, -1).len(), 0);
        assert_eq!(MultiIndex::all_up_to(1, 3).len(), 4);
    }
}
