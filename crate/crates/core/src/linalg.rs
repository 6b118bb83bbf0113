//! Dense and sparse exact linear algebra over `Q`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::sparse::Sparse;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn is_square(m: &Matrix, n: usize) -> bool {
    m.len() == n && m.iter().all(|r| r.len() == n)
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let (r, c) = (m.len(), m[0].len());
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(n, m);
    for i in 0..n {
        for (l, bl) in b.iter().enumerate() {
            let x = &a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                if !bl[j].is_zero() {
                    out[i][j] += x * &bl[j];
                }
            }
        }
    }
    out
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn mat_scale(a: &Matrix, c: &Q) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

pub fn mat_vec(a: &Matrix, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(Q::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// Gauss-Jordan inverse; fails on singular input.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    if !is_square(m, n) {
        return Err(Error::Shape("inverse of a non-square matrix".into()));
    }
    let mut a: Matrix = m
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Degenerate("matrix is singular".into()))?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Incremental row reduction over sparse rows indexed by column number.
///
/// Rows are kept fully reduced against each other, so the pivot set at any
/// point is the reduced row echelon form of everything inserted so far.
#[derive(Clone, Debug, Default)]
pub struct RowReducer {
    ncols: usize,
    /// pivot column -> normalized row (pivot coefficient 1)
    rows: BTreeMap<usize, BTreeMap<usize, Q>>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        let cols: Vec<usize> = row.keys().copied().collect();
        for c in cols {
            let Some(f) = row.get(&c).cloned() else {
                continue;
            };
            if let Some(p) = self.rows.get(&c) {
                for (k, v) in p {
                    let e = row.entry(*k).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        row
    }

    /// Inserts a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: BTreeMap<usize, Q>) -> bool {
        let mut row = self.reduce(row);
        let Some((&pc, pv)) = row.iter().next() else {
            return false;
        };
        let inv = Q::one() / pv.clone();
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&pc).cloned() {
                for (k, v) in &row {
                    let e = other.entry(*k).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        other.remove(k);
                    }
                }
            }
        }
        self.rows.insert(pc, std::mem::take(&mut row));
        true
    }

    /// Basis of the null space of the inserted rows, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.rows.contains_key(&free) {
                continue;
            }
            let mut v = vec![Q::zero(); self.ncols];
            v[free] = Q::one();
            for (pc, row) in &self.rows {
                if let Some(x) = row.get(&free) {
                    v[*pc] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// Solves `sum_j x_j col_j = target` where the inserted rows are the
    /// augmented equations with the right-hand side stored in column `ncols - 1`.
    fn augmented_solution(&self) -> Option<Vec<Q>> {
        let rhs = self.ncols - 1;
        if self.rows.contains_key(&rhs) {
            return None;
        }
        let mut x = vec![Q::zero(); rhs];
        for (pc, row) in &self.rows {
            x[*pc] = row.get(&rhs).cloned().unwrap_or_else(Q::zero);
        }
        Some(x)
    }
}

/// Transposes a list of sparse columns into sparse rows keyed by column index.
fn rows_of<K: Ord + Clone>(cols: &[Sparse<K>]) -> BTreeMap<K, BTreeMap<usize, Q>> {
    let mut rows: BTreeMap<K, BTreeMap<usize, Q>> = BTreeMap::new();
    for (j, c) in cols.iter().enumerate() {
        for (k, v) in c {
            rows.entry(k.clone()).or_default().insert(j, v.clone());
        }
    }
    rows
}

/// Null space of the linear map whose `j`-th column is `cols[j]`.
pub fn nullspace<K: Ord + Clone>(cols: &[Sparse<K>]) -> Vec<Vec<Q>> {
    let mut rr = RowReducer::new(cols.len());
    for (_, row) in rows_of(cols) {
        rr.insert(row);
    }
    rr.nullspace()
}

/// Rank of the span of the given vectors.
pub fn rank<K: Ord + Clone>(vecs: &[Sparse<K>]) -> usize {
    let mut rr = RowReducer::new(vecs.len());
    for (_, row) in rows_of(vecs) {
        rr.insert(row);
    }
    rr.rank()
}

/// Finds `x` with `sum_j x_j cols[j] = target`, if one exists.
pub fn solve<K: Ord + Clone>(cols: &[Sparse<K>], target: &Sparse<K>) -> Option<Vec<Q>> {
    let n = cols.len();
    let mut all: Vec<Sparse<K>> = cols.to_vec();
    all.push(target.clone());
    let mut rr = RowReducer::new(n + 1);
    for (_, row) in rows_of(&all) {
        rr.insert(row);
    }
    rr.augmented_solution()
}

/// Null space of a dense matrix (`A x = 0`).
pub fn dense_nullspace(a: &Matrix, ncols: usize) -> Vec<Vec<Q>> {
    let mut rr = RowReducer::new(ncols);
    for row in a {
        let r: BTreeMap<usize, Q> = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        rr.insert(r);
    }
    rr.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![q(2), q(1)], vec![q(5), q(3)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert!(inverse(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]).is_err());
    }

    #[test]
    fn nullspace_and_solve() {
        // x + y + z = 0, x - z = 0
        let a = vec![vec![q(1), q(1), q(1)], vec![q(1), q(0), q(-1)]];
        let ns = dense_nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Q = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        let c0: Sparse<u8> = [(0, q(1)), (1, q(2))].into_iter().collect();
        let c1: Sparse<u8> = [(1, q(1))].into_iter().collect();
        let t: Sparse<u8> = [(0, qf(1, 2)), (1, q(3))].into_iter().collect();
        let x = solve(&[c0.clone(), c1.clone()], &t).unwrap();
        assert_eq!(x, vec![qf(1, 2), q(2)]);
        let bad: Sparse<u8> = [(2, q(1))].into_iter().collect();
        assert!(solve(&[c0, c1], &bad).is_none());
    }
}
