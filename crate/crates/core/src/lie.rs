//! Finite-dimensional Lie algebras by structure constants, traceforms,
//! symplectic data, the extension `d+`, and `sp(d, omega)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{format_q, q, qf, Q};

/// `(i, j, [(k, c)])` for `[d_i, d_j] = sum c d_k`.
pub type Bracket = (usize, usize, Vec<(usize, Q)>);

/// A Lie algebra with `[d_i, d_j] = sum_k c[i][j][k] d_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    c: Vec<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieViolation {
    Antisymmetry {
        i: usize,
        j: usize,
        k: usize,
    },
    Jacobi {
        i: usize,
        j: usize,
        l: usize,
        k: usize,
        residual: Q,
    },
}

impl fmt::Display for LieViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieViolation::Antisymmetry { i, j, k } => {
                write!(f, "antisymmetry fails at ({i},{j},{k})")
            }
            LieViolation::Jacobi { i, j, l, k, residual } => write!(
                f,
                "Jacobi fails for ({i},{j},{l}) in component {k}: {}",
                format_q(residual)
            ),
        }
    }
}

/// Checks antisymmetry and the Jacobi identity of a cubic array of structure
/// constants. An empty list means the constants define a Lie algebra.
pub fn validate_lie(c: &[Vec<Vec<Q>>]) -> Result<Vec<LieViolation>> {
    let n = c.len();
    if c.iter().any(|r| r.len() != n || r.iter().any(|s| s.len() != n)) {
        return Err(Error::Shape(format!("structure constants must be {n}x{n}x{n}")));
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                if c[i][j][k] != -c[j][i][k].clone() {
                    out.push(LieViolation::Antisymmetry { i, j, k });
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for l in (j + 1)..n {
                for k in 0..n {
                    let mut acc = Q::zero();
                    for m in 0..n {
                        acc += &c[i][j][m] * &c[m][l][k];
                        acc += &c[j][l][m] * &c[m][i][k];
                        acc += &c[l][i][m] * &c[m][j][k];
                    }
                    if !acc.is_zero() {
                        out.push(LieViolation::Jacobi {
                            i,
                            j,
                            l,
                            k,
                            residual: acc,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

impl LieAlgebra {
    /// Builds an algebra after checking shape and the Lie axioms.
    pub fn new(labels: Vec<String>, c: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        if labels.len() != c.len() {
            return Err(Error::Shape(format!(
                "{} labels for dimension {}",
                labels.len(),
                c.len()
            )));
        }
        let report = validate_lie(&c)?;
        if let Some(v) = report.first() {
            return Err(Error::Precondition(format!("not a Lie algebra: {v}")));
        }
        Ok(Self { labels, c })
    }

    /// Builds without checking the axioms; shape is still checked.
    pub fn new_unchecked(labels: Vec<String>, c: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        validate_lie(&c)?;
        if labels.len() != c.len() {
            return Err(Error::Shape("label count".into()));
        }
        Ok(Self { labels, c })
    }

    /// Builds from the nonzero brackets `[d_i, d_j]` with `i < j`; the
    /// remaining constants follow by antisymmetry.
    pub fn from_brackets(labels: &[&str], brackets: &[Bracket]) -> Result<Self> {
        let n = labels.len();
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, j, coeffs) in brackets {
            if *i >= n || *j >= n {
                return Err(Error::Shape(format!("bracket index ({i},{j}) out of range")));
            }
            for (k, v) in coeffs {
                if *k >= n {
                    return Err(Error::Shape(format!("component {k} out of range")));
                }
                c[*i][*j][*k] = v.clone();
                c[*j][*i][*k] = -v.clone();
            }
        }
        Self::new(labels.iter().map(|s| s.to_string()).collect(), c)
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("d{i}")).collect();
        Self {
            labels,
            c: vec![vec![vec![Q::zero(); n]; n]; n],
        }
    }

    /// `[d1, d2] = d3`.
    pub fn heisenberg() -> Self {
        Self::from_brackets(&["d1", "d2", "d3"], &[(0, 1, vec![(2, q(1))])]).expect("valid")
    }

    /// `sl2` in the ordered basis `(f, h, e)`.
    pub fn sl2() -> Self {
        Self::from_brackets(
            &["f", "h", "e"],
            &[
                (0, 1, vec![(0, q(2))]),
                (0, 2, vec![(1, q(-1))]),
                (1, 2, vec![(2, q(2))]),
            ],
        )
        .expect("valid")
    }

    /// The Borel subalgebra `<h, e>` of `sl2` with `[h, e] = 2e`.
    pub fn sl2_borel() -> Self {
        Self::from_brackets(&["h", "e"], &[(0, 1, vec![(1, q(2))])]).expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constants(&self) -> &[Vec<Vec<Q>>] {
        &self.c
    }

    /// `c_ij^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[i][j][k]
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    pub fn validate(&self) -> Vec<LieViolation> {
        validate_lie(&self.c).expect("shape checked at construction")
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o += &xy * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x` in the basis.
    pub fn ad(&self, x: &[Q]) -> Matrix {
        let n = self.dim();
        let mut m = linalg::zeros(n, n);
        for l in 0..n {
            let col = self.bracket(x, &unit(n, l));
            for k in 0..n {
                m[k][l] = col[k].clone();
            }
        }
        m
    }

    /// Direct sum, with `self` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (a, b) = (self.dim(), other.dim());
        let n = a + b;
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    c[i][j][k] = self.c[i][j][k].clone();
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    c[a + i][a + j][a + k] = other.c[i][j][k].clone();
                }
            }
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        LieAlgebra { labels, c }
    }

    /// `gl_n` with basis `E_ij` at position `i*n + j`, where `E_ij d_j = d_i`.
    pub fn gl(n: usize) -> LieAlgebra {
        let m = n * n;
        let mut c = vec![vec![vec![Q::zero(); m]; m]; m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        // [E_ij, E_kl] = d_jk E_il - d_li E_kj
                        if j == k {
                            c[i * n + j][k * n + l][i * n + l] += Q::one();
                        }
                        if l == i {
                            c[i * n + j][k * n + l][k * n + j] -= Q::one();
                        }
                    }
                }
            }
        }
        let labels = (0..m).map(|x| format!("E{}{}", x / n + 1, x % n + 1)).collect();
        LieAlgebra { labels, c }
    }

    /// Structure constants of a Lie algebra of matrices, given a basis of
    /// matrices and a coordinate map onto that basis.
    pub fn from_matrix_basis(
        labels: Vec<String>,
        basis: &[Matrix],
        coords: impl Fn(&Matrix) -> Option<Vec<Q>>,
    ) -> Result<LieAlgebra> {
        let n = basis.len();
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let br = linalg::commutator(&basis[i], &basis[j]);
                let x = coords(&br).ok_or_else(|| Error::Closure("matrix basis not closed under commutator".into()))?;
                c[i][j] = x;
            }
        }
        Self::new(labels, c)
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Pairs of commutation relations `[rho(x_i), rho(x_j)] = rho([x_i, x_j])`
/// that fail for the given matrices.
pub fn representation_failures(l: &LieAlgebra, mats: &[Matrix]) -> Result<Vec<(usize, usize)>> {
    if mats.len() != l.dim() {
        return Err(Error::Shape(format!(
            "{} matrices for a {}-dimensional Lie algebra",
            mats.len(),
            l.dim()
        )));
    }
    let d = mats.first().map_or(0, |m| m.len());
    if mats.iter().any(|m| !linalg::is_square(m, d)) {
        return Err(Error::Shape(
            "representation matrices must be square of equal size".into(),
        ));
    }
    let mut bad = Vec::new();
    for i in 0..l.dim() {
        for j in (i + 1)..l.dim() {
            let lhs = linalg::commutator(&mats[i], &mats[j]);
            let mut rhs = linalg::zeros(d, d);
            for (k, m) in mats.iter().enumerate() {
                let ck = l.c(i, j, k);
                if !ck.is_zero() {
                    rhs = linalg::mat_add(&rhs, &linalg::mat_scale(m, ck));
                }
            }
            if lhs != rhs {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}

/// A subalgebra `d` spanned by the last `small_dim` basis vectors of `big`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraPair {
    big: LieAlgebra,
    small_dim: usize,
}

impl SubalgebraPair {
    pub fn new(big: LieAlgebra, small_dim: usize) -> Result<Self> {
        let n = big.dim();
        if small_dim == 0 || small_dim > n {
            return Err(Error::Shape(format!(
                "subalgebra dimension {small_dim} in dimension {n}"
            )));
        }
        let r = n - small_dim;
        for i in r..n {
            for j in r..n {
                for k in 0..r {
                    if !big.c(i, j, k).is_zero() {
                        return Err(Error::Closure(format!(
                            "[{}, {}] leaves the subalgebra",
                            big.labels[i], big.labels[j]
                        )));
                    }
                }
            }
        }
        Ok(Self { big, small_dim })
    }

    /// `d' = d`.
    pub fn trivial(l: LieAlgebra) -> Self {
        let n = l.dim();
        Self { big: l, small_dim: n }
    }

    pub fn big(&self) -> &LieAlgebra {
        &self.big
    }

    pub fn small_dim(&self) -> usize {
        self.small_dim
    }

    /// Number of basis vectors of `d'` outside `d`.
    pub fn offset(&self) -> usize {
        self.big.dim() - self.small_dim
    }

    pub fn is_small_index(&self, i: usize) -> bool {
        i >= self.offset()
    }

    /// The subalgebra `d` as a Lie algebra in its own right.
    pub fn small(&self) -> LieAlgebra {
        let r = self.offset();
        let n = self.small_dim;
        let c = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.big.c(r + i, r + j, r + k).clone()).collect())
                    .collect()
            })
            .collect();
        LieAlgebra {
            labels: self.big.labels[r..].to_vec(),
            c,
        }
    }

    /// Embeds a coordinate vector of `d` into `d'`.
    pub fn embed(&self, x: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.offset()];
        v.extend_from_slice(x);
        v
    }

    /// Whether a vector of `d'` lies in `d`.
    pub fn in_small(&self, t: &[Q]) -> bool {
        t[..self.offset()].iter().all(Zero::is_zero)
    }
}

/// Whether `chi` vanishes on `[d, d]`.
pub fn check_traceform(l: &LieAlgebra, chi: &[Q]) -> bool {
    let n = l.dim();
    if chi.len() != n {
        return false;
    }
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n)
                .map(|k| l.c(i, j, k) * &chi[k])
                .fold(Q::zero(), |a, b| a + b)
                .is_zero()
        })
    })
}

/// Symplectic data `(omega, chi)` on `d` with derived `r = omega^-1`, `s` and
/// the raised basis `d^i = sum_j r^{ij} d_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticData {
    pub omega: Matrix,
    pub r: Matrix,
    pub s: Vec<Q>,
    pub chi: Vec<Q>,
    pub raised: Vec<Vec<Q>>,
}

/// Value of the cocycle expression for `d(omega) + chi ^ omega` at `(a, b, c)`.
pub fn cocycle_residual(l: &LieAlgebra, omega: &Matrix, chi: &[Q], a: usize, b: usize, c: usize) -> Q {
    let n = l.dim();
    let w = |x: &[Q], y: usize| -> Q {
        (0..n)
            .filter(|&i| !x[i].is_zero())
            .map(|i| &x[i] * &omega[i][y])
            .fold(Q::zero(), |p, t| p + t)
    };
    let ab = l.bracket(&unit(n, a), &unit(n, b));
    let bc = l.bracket(&unit(n, b), &unit(n, c));
    let ca = l.bracket(&unit(n, c), &unit(n, a));
    w(&ab, c) + w(&bc, a) + w(&ca, b) - &chi[a] * &omega[b][c] - &chi[b] * &omega[c][a] - &chi[c] * &omega[a][b]
}

pub fn build_symplectic(l: &LieAlgebra, omega: &Matrix, chi: &[Q]) -> Result<SymplecticData> {
    let n = l.dim();
    if !linalg::is_square(omega, n) || chi.len() != n {
        return Err(Error::Shape(format!("omega must be {n}x{n} and chi of length {n}")));
    }
    if !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("dimension {n} is odd")));
    }
    for i in 0..n {
        for j in 0..n {
            if omega[i][j] != -omega[j][i].clone() {
                return Err(Error::Precondition("omega is not skew".into()));
            }
        }
    }
    if !check_traceform(l, chi) {
        return Err(Error::Precondition("chi is not a traceform".into()));
    }
    let r = linalg::inverse(omega).map_err(|_| Error::Degenerate("omega is singular".into()))?;
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let res = cocycle_residual(l, omega, chi, a, b, c);
                if !res.is_zero() {
                    return Err(Error::Cocycle {
                        a,
                        b,
                        c,
                        residual: format_q(&res),
                    });
                }
            }
        }
    }
    // chi = iota_s omega  <=>  chi_j = sum_a s_a omega_aj  <=>  s = -r chi
    let s: Vec<Q> = linalg::mat_vec(&r, chi).into_iter().map(|x| -x).collect();
    let raised = r.clone();
    Ok(SymplecticData {
        omega: omega.clone(),
        r,
        s,
        chi: chi.to_vec(),
        raised,
    })
}

impl SymplecticData {
    pub fn dim(&self) -> usize {
        self.omega.len()
    }

    /// `omega(x ^ y)`.
    pub fn omega_of(&self, x: &[Q], y: &[Q]) -> Q {
        let n = self.dim();
        let mut acc = Q::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y[j].is_zero() && !self.omega[i][j].is_zero() {
                    acc += &x[i] * &y[j] * &self.omega[i][j];
                }
            }
        }
        acc
    }

    /// The functional `iota_x omega = omega(x ^ -)` as a coordinate vector.
    pub fn iota(&self, x: &[Q]) -> Vec<Q> {
        let n = self.dim();
        (0..n).map(|j| self.omega_of(x, &unit(n, j))).collect()
    }

    pub fn chi_of(&self, x: &[Q]) -> Q {
        x.iter()
            .zip(&self.chi)
            .map(|(a, b)| a * b)
            .fold(Q::zero(), |p, t| p + t)
    }

    /// Matrix of `e^{ij}`, the map `d_k -> delta_jk d^i`.
    pub fn e_raised(&self, i: usize, j: usize) -> Matrix {
        let n = self.dim();
        let mut m = linalg::zeros(n, n);
        for l in 0..n {
            m[l][j] = self.r[i][l].clone();
        }
        m
    }

    /// `f^{ij} = -(e^{ij} + e^{ji}) / 2`.
    pub fn f_raised(&self, i: usize, j: usize) -> Matrix {
        let s = linalg::mat_add(&self.e_raised(i, j), &self.e_raised(j, i));
        linalg::mat_scale(&s, &qf(-1, 2))
    }

    /// Coordinates `a` of `A = sum a_ij e^{ij}`.
    pub fn raised_coords(&self, a: &Matrix) -> Matrix {
        // A = r^T a and r^T = -r, so a = -omega A.
        linalg::mat_scale(&linalg::mat_mul(&self.omega, a), &q(-1))
    }

    /// Index pairs `i <= j` labelling the basis `f^{ij}` of `sp(d, omega)`.
    pub fn sp_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
    }

    pub fn sp_basis(&self) -> Vec<Matrix> {
        self.sp_pairs().into_iter().map(|(i, j)| self.f_raised(i, j)).collect()
    }

    /// Coordinates of `phi` in the basis `f^{ij}`; `None` if `phi` is not in
    /// `sp(d, omega)`.
    pub fn sp_coords(&self, phi: &Matrix) -> Option<Vec<Q>> {
        if !sp_member(self, phi) {
            return None;
        }
        let a = self.raised_coords(phi);
        Some(
            self.sp_pairs()
                .into_iter()
                .map(|(i, j)| {
                    if i == j {
                        -a[i][i].clone()
                    } else {
                        -(&a[i][j] + &a[j][i])
                    }
                })
                .collect(),
        )
    }

    /// `sp(d, omega)` as an abstract Lie algebra in the basis `f^{ij}`.
    pub fn sp_algebra(&self) -> LieAlgebra {
        let labels = self
            .sp_pairs()
            .into_iter()
            .map(|(i, j)| format!("f{}{}", i + 1, j + 1))
            .collect();
        LieAlgebra::from_matrix_basis(labels, &self.sp_basis(), |m| self.sp_coords(m)).expect("sp is a Lie algebra")
    }
}

/// `phi` preserves `omega` infinitesimally.
pub fn sp_member(sd: &SymplecticData, phi: &Matrix) -> bool {
    let lhs = linalg::mat_mul(&linalg::transpose(phi), &sd.omega);
    let rhs = linalg::mat_mul(&sd.omega, phi);
    linalg::is_zero_matrix(&linalg::mat_add(&lhs, &rhs))
}

/// Projection of `gl(d)` onto `sp(d, omega)` along the span of `e^{ij} - e^{ji}`.
pub fn pi_sp(sd: &SymplecticData, a: &Matrix) -> Matrix {
    let c = sd.raised_coords(a);
    let n = sd.dim();
    let sym: Matrix = (0..n)
        .map(|i| (0..n).map(|j| (&c[i][j] + &c[j][i]) * qf(1, 2)).collect())
        .collect();
    // A = r^T a = -r a
    linalg::mat_scale(&linalg::mat_mul(&sd.r, &sym), &q(-1))
}

/// The extension `d+ = d + k c` with `[x, y]+ = [x, y] + omega(x ^ y) c` and
/// `[x, c] = chi(x) c`; `c` is the last basis vector.
pub fn dplus(l: &LieAlgebra, sd: &SymplecticData) -> Result<LieAlgebra> {
    let n = l.dim();
    let m = n + 1;
    let mut c = vec![vec![vec![Q::zero(); m]; m]; m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[i][j][k] = l.c(i, j, k).clone();
            }
            c[i][j][n] = sd.omega[i][j].clone();
        }
        c[i][n][n] = sd.chi[i].clone();
        c[n][i][n] = -sd.chi[i].clone();
    }
    let mut labels = l.labels.clone();
    labels.push("c".into());
    LieAlgebra::new(labels, c)
}

/// Matrix (rows in `d'`, columns over the basis of `d`) of
/// `x -> [t, x] + chi(x) t`.
pub fn ad_chi(pair: &SubalgebraPair, chi: &[Q], t: &[Q]) -> Matrix {
    let big = pair.big();
    let nn = big.dim();
    let r = pair.offset();
    let n = pair.small_dim();
    let mut m = linalg::zeros(nn, n);
    for j in 0..n {
        let col = big.bracket(t, &unit(nn, r + j));
        for i in 0..nn {
            m[i][j] = &col[i] + &chi[j] * &t[i];
        }
    }
    m
}

/// Evaluates both sides of the equivalence between
/// (1) `[s, delta] = 0` and `ad_chi delta` in `sp`, and
/// (2) `iota_delta omega` a traceform with `chi(delta) = 0`.
pub fn lemma_equivalent_check(l: &LieAlgebra, sd: &SymplecticData, delta: &[Q]) -> (bool, bool) {
    let pair = SubalgebraPair::trivial(l.clone());
    let comm = l.bracket(&sd.s, delta);
    let adc = ad_chi(&pair, &sd.chi, delta);
    let b1 = comm.iter().all(Zero::is_zero) && sp_member(sd, &adc);
    let b2 = check_traceform(l, &sd.iota(delta)) && sd.chi_of(delta).is_zero();
    (b1, b2)
}
