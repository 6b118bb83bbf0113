//! JSON input formats and module dumps.
//!
//! Indices are zero-based. Rationals are strings `"p/q"` (bare integers are
//! also accepted).

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::htensor::FreeVec;
use crate::lie::{validate_lie, LieAlgebra, LieViolation, SubalgebraPair};
use crate::linalg::{self, Matrix};
use crate::pmodules::{RepSpec, G0};
use crate::pseudo::{build_S, build_W, build_lie, build_rank1, current_algebra, PseudoAlgebra};
use crate::rational::serde_q::QString;
use crate::rational::{format_q, Q};

fn qs(raw: Vec<QString>) -> Result<Vec<Q>> {
    raw.into_iter().map(QString::into_q).collect()
}

fn mat(raw: Vec<Vec<QString>>) -> Result<Matrix> {
    raw.into_iter().map(qs).collect()
}

pub fn read_file<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Debug, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, QString>,
}

/// A Lie algebra `d'` with optional split `d ⊂ d'` and data on `d`.
///
/// `brackets` lists `[d_i, d_j] = sum_k coeffs[k] d_k`; entries not listed are
/// zero and are not completed by antisymmetry. `subalgebra_split = r` makes
/// `d` the span of the last `dim - r` basis vectors.
#[derive(Debug, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub subalgebra_split: usize,
    pub chi: Option<Vec<QString>>,
    pub omega: Option<Vec<Vec<QString>>>,
}

/// A parsed [`AlgebraFile`].
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub labels: Vec<String>,
    pub constants: Vec<Vec<Vec<Q>>>,
    pub split: usize,
    pub chi: Option<Vec<Q>>,
    pub omega: Option<Matrix>,
}

impl AlgebraFile {
    pub fn parse(self) -> Result<AlgebraData> {
        let n = self.dim;
        if n == 0 || n > crate::uea::MAX_DIM {
            return Err(Error::Shape(format!("dim must lie in 1..={}", crate::uea::MAX_DIM)));
        }
        let labels = if self.labels.is_empty() {
            (1..=n).map(|i| format!("d{i}")).collect()
        } else if self.labels.len() == n {
            self.labels
        } else {
            return Err(Error::Shape(format!("{} labels for dimension {n}", self.labels.len())));
        };
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for b in self.brackets {
            if b.i >= n || b.j >= n {
                return Err(Error::Shape(format!("bracket index ({}, {}) out of range", b.i, b.j)));
            }
            for (k, v) in b.coeffs {
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad basis index {k:?}")))?;
                if k >= n {
                    return Err(Error::Shape(format!("basis index {k} out of range")));
                }
                c[b.i][b.j][k] = v.into_q()?;
            }
        }
        if self.subalgebra_split >= n {
            return Err(Error::Shape("subalgebra_split must leave d nonzero".into()));
        }
        Ok(AlgebraData {
            labels,
            constants: c,
            split: self.subalgebra_split,
            chi: self.chi.map(qs).transpose()?,
            omega: self.omega.map(mat).transpose()?,
        })
    }
}

impl AlgebraData {
    pub fn violations(&self) -> Result<Vec<LieViolation>> {
        validate_lie(&self.constants)
    }

    /// `d'`, failing on invalid structure constants.
    pub fn big(&self) -> Result<LieAlgebra> {
        LieAlgebra::new(self.labels.clone(), self.constants.clone())
    }

    pub fn pair(&self) -> Result<SubalgebraPair> {
        let big = self.big()?;
        let small = big.dim() - self.split;
        SubalgebraPair::new(big, small)
    }
}

/// A pseudoalgebra over `d` (from the algebra file).
///
/// `r` lists entries `r^{ij}`; the transposed entries are filled in by skew
/// symmetry.
#[derive(Debug, Deserialize)]
pub struct PseudoFile {
    pub kind: String,
    pub r: Option<Vec<(usize, usize, QString)>>,
    pub s: Option<Vec<QString>>,
    pub chi: Option<Vec<QString>>,
    /// The finite-dimensional Lie algebra for current Lie pseudoalgebras.
    pub lie: Option<AlgebraFile>,
}

fn skew_from_entries(n: usize, entries: Vec<(usize, usize, QString)>) -> Result<Matrix> {
    let mut r = linalg::zeros(n, n);
    let mut set = vec![vec![false; n]; n];
    for (i, j, v) in entries {
        if i >= n || j >= n {
            return Err(Error::Shape(format!("r index ({i}, {j}) out of range")));
        }
        let v = v.into_q()?;
        if i == j && !v.is_zero() {
            return Err(Error::Precondition("r must be skew-symmetric".into()));
        }
        for (a, b, x) in [(i, j, v.clone()), (j, i, -v)] {
            if set[a][b] && r[a][b] != x {
                return Err(Error::Precondition("r must be skew-symmetric".into()));
            }
            r[a][b] = x;
            set[a][b] = true;
        }
    }
    Ok(r)
}

impl PseudoFile {
    /// Builds the algebra over `d` and, if the algebra file declares a split,
    /// its current algebra over `d'`.
    pub fn build(self, data: &AlgebraData) -> Result<PseudoAlgebra> {
        let pair = data.pair()?;
        let d = pair.small();
        let n = d.dim();
        let vec_n = |v: Vec<QString>, what: &str| -> Result<Vec<Q>> {
            let v = qs(v)?;
            if v.len() != n {
                return Err(Error::Shape(format!("{what} must have length {n}")));
            }
            Ok(v)
        };
        let alg = match self.kind.as_str() {
            "W" => build_W(&d)?,
            "S" => {
                let chi = match (self.chi, &data.chi) {
                    (Some(c), _) => vec_n(c, "chi")?,
                    (None, Some(c)) => c.clone(),
                    (None, None) => vec![Q::zero(); n],
                };
                build_S(&d, &chi)?
            }
            "H" | "K" | "rank1" => {
                let (r, s) = match (self.r, self.s) {
                    (Some(r), s) => {
                        let s = match s {
                            Some(s) => vec_n(s, "s")?,
                            None => vec![Q::zero(); n],
                        };
                        (skew_from_entries(n, r)?, s)
                    }
                    (None, _) => {
                        let omega = data.omega.clone().ok_or_else(|| {
                            Error::Shape("rank-one algebras need r, or omega in the algebra file".into())
                        })?;
                        let chi = match self.chi {
                            Some(c) => vec_n(c, "chi")?,
                            None => data.chi.clone().unwrap_or_else(|| vec![Q::zero(); n]),
                        };
                        let sd = crate::lie::build_symplectic(&d, &omega, &chi)?;
                        (sd.r, sd.s)
                    }
                };
                let alg = build_rank1(&d, &r, &s)?;
                let want = self.kind.as_str();
                if want != "rank1" && alg.kind().to_string() != want {
                    return Err(Error::Precondition(format!(
                        "data defines a {} algebra, not {want}",
                        alg.kind()
                    )));
                }
                alg
            }
            "Lie" => {
                let g = self
                    .lie
                    .ok_or_else(|| Error::Shape("kind Lie needs a \"lie\" algebra".into()))?
                    .parse()?
                    .big()?;
                build_lie(&g, &d)?
            }
            other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
        };
        if pair.offset() > 0 {
            current_algebra(&alg, &pair)
        } else {
            Ok(alg)
        }
    }
}

/// A representation file: either a preset or explicit matrices.
#[derive(Debug, Deserialize)]
pub struct RepFile {
    /// `"trivial"` or `"standard"`.
    pub preset: Option<String>,
    /// Scalar for `c` in the `"standard"` K-type preset.
    pub c: Option<QString>,
    pub dim: Option<usize>,
    pub g0: Option<G0>,
    #[serde(default)]
    pub pi: Vec<Vec<Vec<QString>>>,
    #[serde(default)]
    pub u: Vec<Vec<Vec<QString>>>,
    /// Twist parameter `t ∈ d'` for H-type current algebras.
    pub twist: Option<Vec<QString>>,
    /// Skip the representation relations.
    #[serde(default)]
    pub unchecked: bool,
}

/// A parsed [`RepFile`].
#[derive(Clone, Debug)]
pub struct ModuleData {
    pub rep: RepSpec,
    pub twist: Option<Vec<Q>>,
    pub unchecked: bool,
}

impl RepFile {
    pub fn parse(self, a: &PseudoAlgebra) -> Result<ModuleData> {
        let rep = match self.preset.as_deref() {
            Some("trivial") => RepSpec::trivial(a)?,
            Some("standard") => {
                let c = self.c.map(QString::into_q).transpose()?.unwrap_or_else(Q::zero);
                RepSpec::standard(a, c)?
            }
            Some(other) => return Err(Error::Parse(format!("unknown preset {other:?}"))),
            None => {
                let dim = self.dim.ok_or_else(|| Error::Shape("dim is required".into()))?;
                let g0 = self.g0.ok_or_else(|| Error::Shape("g0 is required".into()))?;
                RepSpec {
                    dim,
                    pi: self.pi.into_iter().map(mat).collect::<Result<_>>()?,
                    u: self.u.into_iter().map(mat).collect::<Result<_>>()?,
                    g0,
                }
            }
        };
        Ok(ModuleData {
            rep,
            twist: self.twist.map(qs).transpose()?,
            unchecked: self.unchecked,
        })
    }
}

/// One term `d^(K) (x) v` of a module element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrierTerm {
    #[serde(rename = "K")]
    pub k: Vec<u32>,
    pub v: Vec<String>,
}

/// `sum_K d^(K) (x) v_K` as a list of `{"K": .., "v": ..}` terms.
pub fn dump_vector(x: &FreeVec, dim_r: usize) -> Vec<CarrierTerm> {
    let mut by: BTreeMap<Vec<u32>, Vec<Q>> = BTreeMap::new();
    for ((k, b), c) in x {
        by.entry(k.exps()).or_insert_with(|| vec![Q::zero(); dim_r])[*b] = c.clone();
    }
    by.into_iter()
        .map(|(k, v)| CarrierTerm {
            k,
            v: v.iter().map(format_q).collect(),
        })
        .collect()
}
