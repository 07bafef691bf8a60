use serde::{Deserialize, Serialize};

use super::{unit, LieAlgebra, LieError, Subspace, Vector};
use crate::exact::RatMatrix;

/// Declared Levi decomposition: basis indices spanning a Levi factor, the
/// radical, and the nil radical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviData {
    pub levi: Vec<usize>,
    pub radical: Vec<usize>,
    pub nilradical: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeviCheck {
    IndicesInRange,
    DirectSum,
    LeviSubalgebra,
    KillingNondegenerate,
    RadicalIdeal,
    RadicalSolvable,
    NilradicalInRadical,
    NilradicalIdeal,
    NilradicalNilpotent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviFailure {
    pub check: LeviCheck,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviReport {
    pub direct_sum: bool,
    pub levi_subalgebra: bool,
    pub killing_nondegenerate: bool,
    pub radical_ideal: bool,
    pub radical_solvable: bool,
    pub nilradical_ideal: bool,
    pub nilradical_nilpotent: bool,
    pub failures: Vec<LeviFailure>,
}

impl LeviReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Descending series of subspaces, computed until it stabilises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSeries {
    pub terms: Vec<Subspace>,
    /// Whether the last term is zero.
    pub terminates: bool,
}

fn bracket_span(l: &LieAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let mut vs = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            vs.push(l.bracket(x, y).expect("lengths match"));
        }
    }
    Subspace::span(l.dim(), &vs)
}

/// First `(algebra basis index, subspace basis index)` whose bracket leaves `a`.
fn ideal_violation(l: &LieAlgebra, a: &Subspace) -> Option<(usize, usize)> {
    let n = l.dim();
    for i in 0..n {
        for (k, v) in a.basis().iter().enumerate() {
            if !a.contains(&l.bracket(&unit(n, i), v).unwrap()) {
                return Some((i, k));
            }
        }
    }
    None
}

pub fn is_ideal(l: &LieAlgebra, a: &Subspace) -> bool {
    ideal_violation(l, a).is_none()
}

fn closure_violation(l: &LieAlgebra, a: &Subspace) -> Option<(usize, usize)> {
    for (i, x) in a.basis().iter().enumerate() {
        for (j, y) in a.basis().iter().enumerate().skip(i + 1) {
            if !a.contains(&l.bracket(x, y).unwrap()) {
                return Some((i, j));
            }
        }
    }
    None
}

fn run_series(start: Subspace, next: impl Fn(&Subspace) -> Subspace) -> CentralSeries {
    let mut terms = vec![start];
    loop {
        let last = terms.last().unwrap();
        if last.is_zero() {
            return CentralSeries { terms, terminates: true };
        }
        let n = next(last);
        if &n == last {
            return CentralSeries { terms, terminates: false };
        }
        terms.push(n);
    }
}

/// `N^1 = N`, `N^{k+1} = [N, N^k]`, stopping at zero or at a repeated term.
pub fn lower_central_series(l: &LieAlgebra, ideal: &Subspace) -> Result<CentralSeries, LieError> {
    if let Some((i, k)) = ideal_violation(l, ideal) {
        return Err(LieError::NotAnIdeal { element: l.label(i).to_string(), vector: k });
    }
    Ok(run_series(ideal.clone(), |nk| bracket_span(l, ideal, nk)))
}

/// `R^(0) = R`, `R^(k+1) = [R^(k), R^(k)]`.
pub fn derived_series(l: &LieAlgebra, ideal: &Subspace) -> CentralSeries {
    run_series(ideal.clone(), |rk| bracket_span(l, rk, rk))
}

/// Killing form of the subalgebra spanned by `basis`, computed from its own
/// adjoint action. `None` if the span is not closed under the bracket.
fn restricted_killing_matrix(l: &LieAlgebra, basis: &[Vector]) -> Option<RatMatrix> {
    let r = basis.len();
    if r == 0 {
        return Some(RatMatrix::zeros(0, 0));
    }
    let frame = RatMatrix::from_columns(l.dim(), basis);
    let ads: Vec<RatMatrix> = basis
        .iter()
        .map(|x| {
            let images: Vec<Vector> = basis.iter().map(|y| l.bracket(x, y).unwrap()).collect();
            frame.solve_matrix(&RatMatrix::from_columns(l.dim(), &images))
        })
        .collect::<Option<_>>()?;
    Some(RatMatrix::from_fn(r, r, |a, b| (&ads[a] * &ads[b]).trace()))
}

/// Checks a declared Levi decomposition against the algebra. Failures carry
/// concrete witnesses; the checks do not short-circuit except where a later
/// check is meaningless (out-of-range indices).
pub fn verify_levi_data(l: &LieAlgebra, d: &LeviData) -> LeviReport {
    let mut report = LeviReport {
        direct_sum: true,
        levi_subalgebra: true,
        killing_nondegenerate: true,
        radical_ideal: true,
        radical_solvable: true,
        nilradical_ideal: true,
        nilradical_nilpotent: true,
        failures: Vec::new(),
    };
    let n = l.dim();
    if let Some(&bad) = d.levi.iter().chain(&d.radical).chain(&d.nilradical).find(|&&i| i >= n) {
        report.direct_sum = false;
        report.levi_subalgebra = false;
        report.killing_nondegenerate = false;
        report.radical_ideal = false;
        report.radical_solvable = false;
        report.nilradical_ideal = false;
        report.nilradical_nilpotent = false;
        report.failures.push(LeviFailure {
            check: LeviCheck::IndicesInRange,
            witness: format!("index {bad} >= dimension {n}"),
        });
        return report;
    }
    let levi = Subspace::coordinate(n, &d.levi);
    let rad = Subspace::coordinate(n, &d.radical);
    let nil = Subspace::coordinate(n, &d.nilradical);
    let fail = |report: &mut LeviReport, check, witness: String| report.failures.push(LeviFailure { check, witness });

    if levi.dim() + rad.dim() != n || levi.sum(&rad).dim() != n {
        report.direct_sum = false;
        fail(
            &mut report,
            LeviCheck::DirectSum,
            format!("dim levi {} + dim radical {} vs dim span {} of {n}", levi.dim(), rad.dim(), levi.sum(&rad).dim()),
        );
    }

    let levi_vectors: Vec<Vector> = d.levi.iter().map(|&i| unit(n, i)).collect();
    if let Some((a, b)) = closure_violation(l, &levi) {
        report.levi_subalgebra = false;
        report.killing_nondegenerate = false;
        fail(&mut report, LeviCheck::LeviSubalgebra, format!("bracket of levi basis vectors {a}, {b} leaves the span"));
        fail(&mut report, LeviCheck::KillingNondegenerate, "levi span is not a subalgebra".into());
    } else {
        let k = restricted_killing_matrix(l, &levi_vectors).expect("closed span");
        if k.rank() < levi_vectors.len() {
            report.killing_nondegenerate = false;
            let kernel = k.nullspace().into_iter().next().unwrap();
            fail(&mut report, LeviCheck::KillingNondegenerate, format!("Killing radical contains levi coordinates {kernel:?}"));
        }
    }

    if let Some((i, k)) = ideal_violation(l, &rad) {
        report.radical_ideal = false;
        report.radical_solvable = false;
        fail(&mut report, LeviCheck::RadicalIdeal, format!("[{}, radical basis vector {k}] leaves the radical", l.label(i)));
    }
    let ds = derived_series(l, &rad);
    if !ds.terminates {
        report.radical_solvable = false;
        fail(
            &mut report,
            LeviCheck::RadicalSolvable,
            format!("derived series stabilises at dimension {}", ds.terms.last().unwrap().dim()),
        );
    }

    if !rad.contains_subspace(&nil) {
        report.nilradical_ideal = false;
        fail(&mut report, LeviCheck::NilradicalInRadical, "nil radical is not inside the radical".into());
    }
    match lower_central_series(l, &nil) {
        Err(LieError::NotAnIdeal { element, vector }) => {
            report.nilradical_ideal = false;
            report.nilradical_nilpotent = false;
            fail(
                &mut report,
                LeviCheck::NilradicalIdeal,
                format!("[{element}, nil radical basis vector {vector}] leaves the nil radical"),
            );
        }
        Err(e) => unreachable!("{e}"),
        Ok(series) if !series.terminates => {
            report.nilradical_nilpotent = false;
            fail(
                &mut report,
                LeviCheck::NilradicalNilpotent,
                format!("lower central series stabilises at dimension {}", series.terms.last().unwrap().dim()),
            );
        }
        Ok(_) => {}
    }
    report
}

impl LeviData {
    pub fn levi_span(&self, dim: usize) -> Subspace {
        Subspace::coordinate(dim, &self.levi)
    }

    pub fn radical_span(&self, dim: usize) -> Subspace {
        Subspace::coordinate(dim, &self.radical)
    }

    pub fn nilradical_span(&self, dim: usize) -> Subspace {
        Subspace::coordinate(dim, &self.nilradical)
    }
}

/// Nondegeneracy of the Killing form restricted to `span(basis)` as an
/// algebra in its own right; `None` if the span is not a subalgebra.
pub(crate) fn subalgebra_is_semisimple(l: &LieAlgebra, basis: &[Vector]) -> Option<bool> {
    restricted_killing_matrix(l, basis).map(|k| k.rank() == basis.len())
}
