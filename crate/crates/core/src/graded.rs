//! Graded vector spaces `V = V_0 ⊕ V_1 ⊕ …` and triangular endomorphisms.
//!
//! Bases are ordered by ascending degree with each component contiguous, so a
//! map preserves every tail `⊕_{k≥j} V_k` exactly when it is block lower
//! triangular. Block `(k → k')` means the rows of component `k'` against the
//! columns of component `k`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("matrix is {got:?} but the graded space has total dimension {total}")]
    Size { total: usize, got: (usize, usize) },
    #[error("map is not triangular: block ({from} -> {to}) is nonzero")]
    NotTriangular { from: usize, to: usize },
    #[error("maps live on different graded spaces")]
    SpaceMismatch,
}

/// Dimension profile `(d_0, …, d_n)`. Zero components are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedSpace {
    dims: Vec<usize>,
}

impl GradedSpace {
    pub fn new(dims: Vec<usize>) -> Self {
        GradedSpace { dims }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_components(&self) -> usize {
        self.dims.len()
    }

    /// Number of components with `d_k > 0`.
    pub fn nonzero_components(&self) -> usize {
        self.dims.iter().filter(|&&d| d > 0).count()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn offset(&self, k: usize) -> usize {
        self.dims[..k].iter().sum()
    }

    pub fn range(&self, k: usize) -> std::ops::Range<usize> {
        let start = self.offset(k);
        start..start + self.dims[k]
    }

    /// Degree of the `i`-th basis vector.
    pub fn degree_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (k, d) in self.dims.iter().enumerate() {
            acc += d;
            if i < acc {
                return k;
            }
        }
        panic!("basis index {i} out of range for total dimension {acc}");
    }
}

/// An endomorphism of a graded space, in the ascending-degree basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GradedMapJson")]
pub struct GradedMap {
    #[serde(rename = "dims")]
    space: GradedSpace,
    matrix: RatMatrix,
}

#[derive(Deserialize)]
struct GradedMapJson {
    dims: GradedSpace,
    matrix: RatMatrix,
}

impl TryFrom<GradedMapJson> for GradedMap {
    type Error = GradedError;

    fn try_from(raw: GradedMapJson) -> Result<Self, Self::Error> {
        GradedMap::new(raw.dims, raw.matrix)
    }
}

impl GradedMap {
    pub fn new(space: GradedSpace, matrix: RatMatrix) -> Result<Self, GradedError> {
        let n = space.total_dim();
        if matrix.shape() != (n, n) {
            return Err(GradedError::Size { total: n, got: matrix.shape() });
        }
        Ok(GradedMap { space, matrix })
    }

    pub fn zero(space: GradedSpace) -> Self {
        let n = space.total_dim();
        GradedMap { space, matrix: RatMatrix::zeros(n, n) }
    }

    pub fn identity(space: GradedSpace) -> Self {
        let n = space.total_dim();
        GradedMap { space, matrix: RatMatrix::identity(n) }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.matrix
    }

    /// The block from component `from` into component `to`.
    pub fn block(&self, from: usize, to: usize) -> RatMatrix {
        let r = self.space.range(to);
        let c = self.space.range(from);
        self.matrix.block(r.start, r.end, c.start, c.end)
    }

    fn block_is_zero(&self, from: usize, to: usize) -> bool {
        let r = self.space.range(to);
        let c = self.space.range(from);
        r.clone().all(|i| c.clone().all(|j| self.matrix[(i, j)].is_zero()))
    }

    /// First nonzero block `(from → to)` with `to < from`, scanning `from`
    /// ascending and then `to` ascending. Empty components are skipped.
    pub fn triangularity_violation(&self) -> Option<(usize, usize)> {
        let c = self.space.num_components();
        (0..c)
            .flat_map(|from| (0..from).map(move |to| (from, to)))
            .find(|&(from, to)| !self.block_is_zero(from, to))
    }

    pub fn is_triangular(&self) -> bool {
        self.triangularity_violation().is_none()
    }

    /// Whether every nonzero block lies on the stripe `k → k + j`.
    pub fn is_homogeneous(&self, j: usize) -> bool {
        let c = self.space.num_components();
        (0..c).all(|from| (0..c).all(|to| to == from + j || self.block_is_zero(from, to)))
    }

    /// The part of the map on the stripe `k → k + j`.
    pub fn stripe(&self, j: usize) -> GradedMap {
        let mut out = GradedMap::zero(self.space.clone());
        for from in 0..self.space.num_components() {
            let to = from + j;
            if to >= self.space.num_components() {
                break;
            }
            let (r, c) = (self.space.range(to), self.space.range(from));
            for i in r.clone() {
                for k in c.clone() {
                    out.matrix[(i, k)] = self.matrix[(i, k)].clone();
                }
            }
        }
        out
    }

    /// Homogeneous components `f_0, f_1, …` of a triangular map, one per
    /// possible degree, with `f_j(V_k) ⊆ V_{k+j}` and `Σ f_j = f`.
    pub fn degree_components(&self) -> Result<Vec<GradedMap>, GradedError> {
        if let Some((from, to)) = self.triangularity_violation() {
            return Err(GradedError::NotTriangular { from, to });
        }
        Ok((0..self.space.num_components().max(1)).map(|j| self.stripe(j)).collect())
    }

    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        self.check_space(other)?;
        Ok(GradedMap { space: self.space.clone(), matrix: &self.matrix * &other.matrix })
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        self.check_space(other)?;
        Ok(GradedMap { space: self.space.clone(), matrix: &self.matrix + &other.matrix })
    }

    pub fn commutator(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        self.check_space(other)?;
        let matrix = self.matrix.commutator(&other.matrix).expect("square and same size");
        Ok(GradedMap { space: self.space.clone(), matrix })
    }

    pub fn scale(&self, c: &Rational) -> GradedMap {
        GradedMap { space: self.space.clone(), matrix: self.matrix.scale(c) }
    }

    /// Smallest `p ≥ 1` with `f^p = 0`, or `None` if the map is not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let n = self.space.total_dim().max(1);
        let mut power = self.matrix.clone();
        for p in 1..=n {
            if power.is_zero() {
                return Some(p);
            }
            power = &power * &self.matrix;
        }
        None
    }

    fn check_space(&self, other: &GradedMap) -> Result<(), GradedError> {
        if self.space != other.space {
            return Err(GradedError::SpaceMismatch);
        }
        Ok(())
    }
}

/// Outcome of checking that triangular maps are closed under the algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub inputs_triangular: bool,
    pub sum: bool,
    pub composition: bool,
    pub commutator: bool,
    /// `f_j ∘ g_k` is homogeneous of degree `j + k` for every pair of components.
    pub degree_additivity: bool,
    pub witness: Option<String>,
}

impl ClosureReport {
    pub fn all_pass(&self) -> bool {
        self.inputs_triangular && self.sum && self.composition && self.commutator && self.degree_additivity
    }
}

pub fn triangular_closure_check(f: &GradedMap, g: &GradedMap) -> Result<ClosureReport, GradedError> {
    let sum = f.add(g)?.is_triangular();
    let composition = f.compose(g)?.is_triangular();
    let commutator = f.commutator(g)?.is_triangular();
    let mut report = ClosureReport {
        inputs_triangular: f.is_triangular() && g.is_triangular(),
        sum,
        composition,
        commutator,
        degree_additivity: true,
        witness: None,
    };
    if !report.inputs_triangular {
        report.witness = Some("inputs are not both triangular".into());
        return Ok(report);
    }
    let fc = f.degree_components()?;
    let gc = g.degree_components()?;
    'outer: for (j, fj) in fc.iter().enumerate() {
        for (k, gk) in gc.iter().enumerate() {
            let prod = fj.compose(gk)?;
            let ok = if j + k < f.space.num_components() {
                prod.is_homogeneous(j + k)
            } else {
                prod.matrix.is_zero()
            };
            if !ok {
                report.degree_additivity = false;
                report.witness = Some(format!("component {j} composed with component {k}"));
                break 'outer;
            }
        }
    }
    Ok(report)
}
