//! Lie algebras given by structure constants.
//!
//! The bracket table is stored for every ordered pair `(i, j)` so that a
//! corrupted table can fail the antisymmetry check; the normal setter
//! [`LieAlgebra::set_bracket`] writes both `(i, j)` and `(j, i)`.

mod grading;
mod levi;
mod subspace;

pub use grading::{adjoint_grading, adjoint_representation, invariant_complement, GradingAssignment};
pub use levi::{
    derived_series, is_ideal, lower_central_series, verify_levi_data, CentralSeries, LeviCheck, LeviData,
    LeviReport,
};
pub use subspace::{unit, Subspace};
pub(crate) use levi::subalgebra_is_semisimple;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{RatMatrix, Rational};

pub type Vector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("vector of length {got} given to an algebra of dimension {dim}")]
    LengthMismatch { dim: usize, got: usize },
    #[error("sl2^Lambda needs Lambda >= 1, got {0}")]
    InvalidLambda(i64),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("subspace is not an ideal: [{element}, basis vector {vector}] leaves it")]
    NotAnIdeal { element: String, vector: usize },
    #[error("Levi data failed verification: {0}")]
    LeviRejected(String),
    #[error("no invariant complement: projector system for degree {degree} is inconsistent ({equations} equations, {unknowns} unknowns)")]
    ProjectorInconsistent { degree: usize, equations: usize, unknowns: usize },
    #[error("nil radical lower central series does not reach zero")]
    NotNilpotent,
    #[error("grading does not give a basis of the algebra")]
    InvalidGrading,
}

/// Sparse coefficient list `(basis index, nonzero coefficient)`, sorted by index.
pub type Sparse = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<Sparse>>,
}

fn to_sparse(v: &[Rational]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

impl LieAlgebra {
    /// The abelian algebra on the given basis labels.
    pub fn abelian(labels: Vec<String>) -> Self {
        let n = labels.len();
        LieAlgebra { labels, table: vec![vec![Vec::new(); n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sets `[b_i, b_j] = v` and `[b_j, b_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[Rational]) -> Result<(), LieError> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_len(v)?;
        let neg: Vector = v.iter().map(|x| -x).collect();
        self.table[i][j] = to_sparse(v);
        self.table[j][i] = to_sparse(&neg);
        Ok(())
    }

    /// Overwrites only the `(i, j)` entry. Used to build deliberately broken tables.
    pub fn set_structure_raw(&mut self, i: usize, j: usize, v: &[Rational]) -> Result<(), LieError> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_len(v)?;
        self.table[i][j] = to_sparse(v);
        Ok(())
    }

    pub fn structure(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i][j]
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        let mut out = vec![Rational::zero(); self.dim()];
        for (k, c) in &self.table[i][j] {
            out[*k] = c.clone();
        }
        out
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if self.table[i][j].is_empty() {
                    continue;
                }
                let coeff = xi * yj;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &coeff * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad x` in the algebra basis: column `j` holds `[x, b_j]`.
    pub fn ad(&self, x: &[Rational]) -> Result<RatMatrix, LieError> {
        self.check_len(x)?;
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(x, &unit(n, j))).collect::<Result<_, _>>()?;
        Ok(RatMatrix::from_columns(n, &cols))
    }

    pub fn ad_basis(&self, i: usize) -> RatMatrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.basis_bracket(i, j)).collect();
        RatMatrix::from_columns(n, &cols)
    }

    /// Killing form `tr(ad x ad y)` on the whole algebra.
    pub fn killing(&self, x: &[Rational], y: &[Rational]) -> Result<Rational, LieError> {
        Ok((&self.ad(x)? * &self.ad(y)?).trace())
    }

    fn check_index(&self, i: usize) -> Result<(), LieError> {
        if i >= self.dim() {
            return Err(LieError::IndexOutOfRange { index: i, dim: self.dim() });
        }
        Ok(())
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LieError::LengthMismatch { dim: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// Sum `[[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vector {
        let n = self.dim();
        let term = |a: usize, b: usize, c: usize| self.bracket(&self.basis_bracket(a, b), &unit(n, c)).unwrap();
        let mut out = term(i, j, k);
        for (x, y) in out.iter_mut().zip(term(j, k, i)) {
            *x += y;
        }
        for (x, y) in out.iter_mut().zip(term(k, i, j)) {
            *x += y;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub antisymmetry: bool,
    pub jacobi: bool,
    /// First `(i, j)` in lexicographic order with `[b_i,b_j] ≠ -[b_j,b_i]`.
    pub antisymmetry_witness: Option<(usize, usize)>,
    /// First basis triple in lexicographic order with a nonzero Jacobi sum.
    pub jacobi_witness: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.antisymmetry && self.jacobi
    }
}

/// Exhaustive antisymmetry and Jacobi check over basis pairs and triples.
pub fn check_axioms(l: &LieAlgebra) -> AxiomReport {
    let n = l.dim();
    let antisymmetry_witness = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).find(|&(i, j)| {
        let a = l.basis_bracket(i, j);
        let b = l.basis_bracket(j, i);
        a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero())
    });
    let jacobi_witness = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| l.jacobiator(i, j, k).iter().any(|c| !c.is_zero()));
    AxiomReport {
        antisymmetry: antisymmetry_witness.is_none(),
        jacobi: jacobi_witness.is_none(),
        antisymmetry_witness,
        jacobi_witness,
    }
}

/// `sl_2` on the basis `(f, h, e)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn build_sl2() -> (LieAlgebra, LeviData) {
    let mut l = LieAlgebra::abelian(vec!["f".into(), "h".into(), "e".into()]);
    add_sl2_brackets(&mut l);
    (l, LeviData { levi: vec![0, 1, 2], radical: vec![], nilradical: vec![] })
}

const F: usize = 0;
const H: usize = 1;
const E: usize = 2;

fn add_sl2_brackets(l: &mut LieAlgebra) {
    let n = l.dim();
    let scaled = |i: usize, c: i64| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::from(c);
        v
    };
    l.set_bracket(H, E, &scaled(E, 2)).unwrap();
    l.set_bracket(H, F, &scaled(F, -2)).unwrap();
    l.set_bracket(E, F, &scaled(H, 1)).unwrap();
}

/// Index of `z_j` in the basis `(f, h, e, z_0, …, z_Λ)`.
pub fn z_index(j: usize) -> usize {
    3 + j
}

/// `sl_2` extended by the abelian ideal `span(z_0, …, z_Λ)`, on which it acts as
/// the `(Λ+1)`-dimensional irreducible module:
/// `[h, z_j] = (Λ-2j) z_j`, `[f, z_j] = z_{j+1}`, `[e, z_j] = j(Λ-j+1) z_{j-1}`,
/// with `z_j = 0` outside `0..=Λ`.
pub fn build_sl2_lambda(lambda: i64) -> Result<(LieAlgebra, LeviData), LieError> {
    if lambda < 1 {
        return Err(LieError::InvalidLambda(lambda));
    }
    let lam = lambda as usize;
    let mut labels: Vec<String> = vec!["f".into(), "h".into(), "e".into()];
    labels.extend((0..=lam).map(|j| format!("z{j}")));
    let mut l = LieAlgebra::abelian(labels);
    add_sl2_brackets(&mut l);
    let n = l.dim();
    let scaled = |i: usize, c: i64| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::from(c);
        v
    };
    for j in 0..=lam {
        let jj = j as i64;
        l.set_bracket(H, z_index(j), &scaled(z_index(j), lambda - 2 * jj)).unwrap();
        if j < lam {
            l.set_bracket(F, z_index(j), &scaled(z_index(j + 1), 1)).unwrap();
        }
        if j > 0 {
            l.set_bracket(E, z_index(j), &scaled(z_index(j - 1), jj * (lambda - jj + 1))).unwrap();
        }
    }
    let zs: Vec<usize> = (0..=lam).map(z_index).collect();
    Ok((l, LeviData { levi: vec![F, H, E], radical: zs.clone(), nilradical: zs }))
}
