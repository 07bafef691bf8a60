use super::{lower_central_series, unit, verify_levi_data, LeviData, LieAlgebra, LieError, Subspace, Vector};
use crate::exact::{RatMatrix, Rational};
use crate::graded::GradedSpace;
use crate::rep::Representation;

/// A grading of the algebra's underlying vector space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingAssignment {
    /// `Some(k)` when the standard basis vector `b_i` is itself one of the
    /// degree-`k` component basis vectors.
    pub degree_of_basis: Vec<Option<usize>>,
    /// Ordered basis of each component `V_0, V_1, …`, as algebra vectors.
    pub component_bases: Vec<Vec<Vector>>,
}

impl GradingAssignment {
    pub fn space(&self) -> GradedSpace {
        GradedSpace::new(self.component_bases.iter().map(Vec::len).collect())
    }

    /// Columns are the component basis vectors in ascending degree.
    pub fn basis_matrix(&self, dim: usize) -> RatMatrix {
        let cols: Vec<Vector> = self.component_bases.iter().flatten().cloned().collect();
        RatMatrix::from_columns(dim, &cols)
    }

    pub fn component_span(&self, k: usize, dim: usize) -> Subspace {
        Subspace::span(dim, &self.component_bases[k])
    }

    /// Span of `V_k ⊕ V_{k+1} ⊕ …`.
    pub fn tail_span(&self, k: usize, dim: usize) -> Subspace {
        let vs: Vec<Vector> = self.component_bases.iter().skip(k).flatten().cloned().collect();
        Subspace::span(dim, &vs)
    }

    fn from_components(dim: usize, component_bases: Vec<Vec<Vector>>) -> Self {
        let degree_of_basis = (0..dim)
            .map(|i| {
                let e = unit(dim, i);
                component_bases.iter().position(|c| c.contains(&e))
            })
            .collect();
        GradingAssignment { degree_of_basis, component_bases }
    }
}

/// Complement of `small` inside `big` that is invariant under `ad s` for every
/// `s` in `acting`. Both subspaces must already be invariant.
///
/// Writes `big` in a basis `(w | c)` with `w` spanning `small` and `c` a greedy
/// completion, then solves `A11 X - X A22 = A12` for every acting element so
/// that the projector `[[I, X], [0, 0]]` commutes with the action. The kernel
/// of that projector, `c_b - Σ_a X_ab w_a`, is the complement.
pub fn invariant_complement(
    l: &LieAlgebra,
    acting: &[Vector],
    big: &Subspace,
    small: &Subspace,
    degree: usize,
) -> Result<Vec<Vector>, LieError> {
    let n = l.dim();
    let w: Vec<Vector> = small.basis().to_vec();
    let c = small.completion(big.basis());
    let (p, q) = (w.len(), c.len());
    if q == 0 {
        return Ok(Vec::new());
    }
    if p == 0 {
        return Ok(c);
    }
    let frame_cols: Vec<Vector> = w.iter().chain(&c).cloned().collect();
    let frame = RatMatrix::from_columns(n, &frame_cols);

    let unknowns = p * q;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for s in acting {
        let images: Vec<Vector> = frame_cols.iter().map(|v| l.bracket(s, v).unwrap()).collect();
        let a = frame
            .solve_matrix(&RatMatrix::from_columns(n, &images))
            .ok_or(LieError::InvalidGrading)?;
        // X is p x q, unknown (a, b) at a * q + b
        for r in 0..p {
            for b in 0..q {
                let mut row = vec![Rational::zero(); unknowns];
                for cc in 0..p {
                    row[cc * q + b] += &a[(r, cc)];
                }
                for d in 0..q {
                    row[r * q + d] -= &a[(p + d, p + b)];
                }
                rows.push(row);
                rhs.push(a[(r, p + b)].clone());
            }
        }
    }
    if rows.is_empty() {
        return Ok(c);
    }
    let equations = rows.len();
    let system = RatMatrix::from_rows(rows).unwrap();
    let x = system
        .solve(&rhs)
        .ok_or(LieError::ProjectorInconsistent { degree, equations, unknowns })?;
    Ok(c
        .iter()
        .enumerate()
        .map(|(b, cb)| {
            let mut v = cb.clone();
            for (a, wa) in w.iter().enumerate() {
                let coeff = &x[a * q + b];
                if coeff.is_zero() {
                    continue;
                }
                for (vi, wi) in v.iter_mut().zip(wa) {
                    *vi -= &(coeff * wi);
                }
            }
            v
        })
        .collect())
}

/// Grading that makes the adjoint representation triangular.
///
/// Degree 0 is the Levi factor plus a Levi-invariant complement of the nil
/// radical inside the radical. Degree `k ≥ 1` is a Levi-invariant complement of
/// `N^{k+1}` inside `N^k`, where `N^k` is the lower central series of the nil
/// radical. Every `N^k` is an ideal, so the nil radical raises degree and the
/// Levi factor preserves each component.
pub fn adjoint_grading(l: &LieAlgebra, d: &LeviData) -> Result<GradingAssignment, LieError> {
    let report = verify_levi_data(l, d);
    if !report.all_pass() {
        let first = &report.failures[0];
        return Err(LieError::LeviRejected(format!("{:?}: {}", first.check, first.witness)));
    }
    let n = l.dim();
    let acting: Vec<Vector> = d.levi.iter().map(|&i| unit(n, i)).collect();
    let nil = d.nilradical_span(n);
    let rad = d.radical_span(n);
    let series = lower_central_series(l, &nil)?;
    if !series.terminates {
        return Err(LieError::NotNilpotent);
    }

    let mut v0 = acting.clone();
    v0.extend(invariant_complement(l, &acting, &rad, &nil, 0)?);
    let mut components = vec![v0];
    for (k, pair) in series.terms.windows(2).enumerate() {
        components.push(invariant_complement(l, &acting, &pair[0], &pair[1], k + 1)?);
    }
    let g = GradingAssignment::from_components(n, components);
    if g.basis_matrix(n).rank() != n || g.component_bases.iter().map(Vec::len).sum::<usize>() != n {
        return Err(LieError::InvalidGrading);
    }
    Ok(g)
}

/// The adjoint representation written in the graded basis of `g`.
pub fn adjoint_representation(l: &LieAlgebra, d: &LeviData, g: &GradingAssignment) -> Result<Representation, LieError> {
    let n = l.dim();
    let frame = g.basis_matrix(n);
    if frame.shape() != (n, n) {
        return Err(LieError::InvalidGrading);
    }
    let inv = frame.inverse().ok_or(LieError::InvalidGrading)?;
    let images = (0..n).map(|i| &(&inv * &l.ad_basis(i)) * &frame).collect();
    Ok(Representation::new(l.clone(), d.clone(), g.space(), images).expect("square images of the right size"))
}
