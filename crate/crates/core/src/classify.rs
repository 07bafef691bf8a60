//! Classification of two-component triangular `sl_2^Λ`-modules with
//! components `V_n` (degree 0) and `V_m` (degree 1) by linear algebra on the
//! block of `z_0`, and comparison with the family built from formulas.

use serde::Serialize;
use thiserror::Error;

use crate::exact::{RatMatrix, Rational};
use crate::family::{build_family_module, enumerate_params, verify_module, EwMode, FamilyError, ModuleParams};
use crate::graded::GradedSpace;
use crate::liealg::build_sl2_lambda;
use crate::rep::{verify, Representation, VerificationReport};
use crate::sl2theory::{build_irreducible, tensor_multiplicity, Sl2Action};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("lambda must be positive")]
    InvalidLambda,
    #[error("z0 block must be {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    Shape { expected_rows: usize, expected_cols: usize, rows: usize, cols: usize },
    #[error("z0 block violates {0}")]
    ConstraintViolated(&'static str),
    #[error("z_(lambda+1) = [f, z_lambda] is nonzero")]
    TowerDoesNotTerminate,
    #[error("parameters (lambda={lambda}, n={n}, m={m}) do not match the problem")]
    Incompatible { lambda: usize, n: usize, m: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionProblem {
    pub lambda: usize,
    pub n: usize,
    pub m: usize,
}

impl ExtensionProblem {
    pub fn new(lambda: usize, n: usize, m: usize) -> Result<Self, ClassifyError> {
        if lambda == 0 {
            return Err(ClassifyError::InvalidLambda);
        }
        Ok(ExtensionProblem { lambda, n, m })
    }

    fn actions(&self) -> (Sl2Action, Sl2Action) {
        (build_irreducible(self.n).action, build_irreducible(self.m).action)
    }
}

/// Basis of all admissible `z_0` blocks `V_n → V_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionSpace {
    pub basis: Vec<RatMatrix>,
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Linear map `Z ↦ (A_m Z - Z A_n - c Z)` on row-major vectorisations.
fn sylvester_rows(a_m: &RatMatrix, a_n: &RatMatrix, c: &Rational) -> RatMatrix {
    let (rm, rn) = (a_m.rows(), a_n.rows());
    let size = rm * rn;
    let idx = |k: usize, i: usize| k * rn + i;
    let mut out = RatMatrix::zeros(size, size);
    for k in 0..rm {
        for i in 0..rn {
            let row = idx(k, i);
            for l in 0..rm {
                let v = &a_m[(k, l)];
                if !v.is_zero() {
                    out[(row, idx(l, i))] += v;
                }
            }
            for l in 0..rn {
                let v = &a_n[(l, i)];
                if !v.is_zero() {
                    out[(row, idx(k, l))] -= v;
                }
            }
            if !c.is_zero() {
                out[(row, row)] -= c;
            }
        }
    }
    out
}

/// Solves `[ρh, Z] = Λ Z`, `[ρe, Z] = 0` for the block `Z: V_n → V_m`.
pub fn solve_extensions(p: &ExtensionProblem) -> SolutionSpace {
    let (vn, vm) = p.actions();
    let lambda = Rational::from(p.lambda as i64);
    let weight = sylvester_rows(&vm.h, &vn.h, &lambda);
    let highest = sylvester_rows(&vm.e, &vn.e, &Rational::zero());
    let system = RatMatrix::vstack(&[&weight, &highest]).expect("both blocks have the same width");
    let basis = system
        .nullspace()
        .into_iter()
        .map(|v| RatMatrix::from_flat(p.m + 1, p.n + 1, v).expect("nullspace vectors have (m+1)(n+1) entries"))
        .collect();
    SolutionSpace { basis }
}

fn check_block(p: &ExtensionProblem, z0: &RatMatrix) -> Result<(), ClassifyError> {
    if z0.shape() != (p.m + 1, p.n + 1) {
        return Err(ClassifyError::Shape {
            expected_rows: p.m + 1,
            expected_cols: p.n + 1,
            rows: z0.rows(),
            cols: z0.cols(),
        });
    }
    Ok(())
}

/// Block commutator `A_m Z - Z A_n`.
fn block_bracket(a_m: &RatMatrix, z: &RatMatrix, a_n: &RatMatrix) -> RatMatrix {
    &(a_m * z) - &(z * a_n)
}

/// `Z_0, Z_1 = [ρf, Z_0], …, Z_Λ`, after checking that `Z_0` solves the system
/// and that `Z_{Λ+1}` vanishes.
pub fn z_tower(p: &ExtensionProblem, z0: &RatMatrix) -> Result<Vec<RatMatrix>, ClassifyError> {
    check_block(p, z0)?;
    let (vn, vm) = p.actions();
    if block_bracket(&vm.h, z0, &vn.h) != z0.scale(&Rational::from(p.lambda as i64)) {
        return Err(ClassifyError::ConstraintViolated("[h, z0] = lambda z0"));
    }
    if !block_bracket(&vm.e, z0, &vn.e).is_zero() {
        return Err(ClassifyError::ConstraintViolated("[e, z0] = 0"));
    }
    let mut tower = vec![z0.clone()];
    for _ in 0..p.lambda {
        let next = block_bracket(&vm.f, tower.last().unwrap(), &vn.f);
        tower.push(next);
    }
    if !block_bracket(&vm.f, tower.last().unwrap(), &vn.f).is_zero() {
        return Err(ClassifyError::TowerDoesNotTerminate);
    }
    Ok(tower)
}

/// The module `V_n ⊕ V_m` with `z_j` acting by the tower on the `(0 → 1)`
/// block.
pub fn assemble_representation(p: &ExtensionProblem, z0: &RatMatrix) -> Result<Representation, ClassifyError> {
    let tower = z_tower(p, z0)?;
    let (l, levi) = build_sl2_lambda(p.lambda as i64).map_err(|_| ClassifyError::InvalidLambda)?;
    let (vn, vm) = p.actions();
    let sl2 = vn.direct_sum(&vm);
    let dim = p.n + p.m + 2;
    let mut images = vec![sl2.f, sl2.h, sl2.e];
    for z in tower {
        let mut full = RatMatrix::zeros(dim, dim);
        full.set_block(p.n + 1, 0, &z);
        images.push(full);
    }
    let rho = Representation::new(l, levi, GradedSpace::new(vec![p.n + 1, p.m + 1]), images)
        .expect("assembled images have consistent sizes");
    Ok(rho)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// `c` with `block = c · generator`, reported when the space is a line or
    /// the block is zero.
    pub scalar: Option<Rational>,
}

/// Whether `block` lies in the span of `space`.
pub fn match_block(p: &ExtensionProblem, space: &SolutionSpace, block: &RatMatrix) -> Result<Membership, ClassifyError> {
    check_block(p, block)?;
    if block.is_zero() {
        return Ok(Membership { member: true, scalar: Some(Rational::zero()) });
    }
    if space.basis.is_empty() {
        return Ok(Membership { member: false, scalar: None });
    }
    let columns: Vec<Vec<Rational>> = space.basis.iter().map(|b| b.data().to_vec()).collect();
    let a = RatMatrix::from_columns(block.data().len(), &columns);
    match a.solve(block.data()) {
        Some(coeffs) => {
            let scalar = (coeffs.len() == 1).then(|| coeffs[0].clone());
            Ok(Membership { member: true, scalar })
        }
        None => Ok(Membership { member: false, scalar: None }),
    }
}

/// Tests the `z_0` block of the family module with parameters `params`.
pub fn match_family(p: &ExtensionProblem, space: &SolutionSpace, params: &ModuleParams) -> Result<Membership, ClassifyError> {
    if params.lambda != p.lambda || params.n != p.n || params.m != p.m {
        return Err(ClassifyError::Incompatible { lambda: params.lambda, n: params.n, m: params.m });
    }
    let module = build_family_module(params, EwMode::Corrected)?;
    match_block(p, space, &module.z_block(0))
}

/// All vectors of length `len` over `values`, in lexicographic order of
/// positions in `values`.
pub fn a_vectors(values: &[Rational], len: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// `{0, 1, -1, 1/2, -1/2}`.
pub fn default_a_values() -> Vec<Rational> {
    vec![Rational::zero(), Rational::one(), Rational::from(-1), Rational::frac(1, 2), Rational::frac(-1, 2)]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    pub s: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub a: Vec<Rational>,
    /// The family `z_0` block is zero.
    pub zero_block: bool,
    pub member: bool,
    pub scalar: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellRecord {
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub cg: usize,
    pub basis: Vec<RatMatrix>,
    /// Every solution assembles to a module passing the full verification.
    pub assembled_pass: bool,
    pub family_matches: Vec<FamilyMatch>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub lambda: usize,
    pub max_n: usize,
    pub max_m: usize,
    pub a_values: Vec<Rational>,
    pub notes: Vec<String>,
    pub cells: Vec<CellRecord>,
}

impl ClassificationReport {
    pub fn flagged_cells(&self) -> impl Iterator<Item = &CellRecord> {
        self.cells.iter().filter(|c| !c.flags.is_empty())
    }

    /// Fixed-width table, one row per `(n, m)` cell.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:>3} {:>3} {:>4} {:>3} {:>9} {:>7} {:>7} {:>7}  {}\n",
            "n", "m", "dim", "cg", "assembled", "tuples", "members", "nonzero", "flags"
        );
        for c in &self.cells {
            let tuples = {
                let mut t: Vec<(usize, usize)> = c.family_matches.iter().map(|f| (f.s, f.big_n)).collect();
                t.dedup();
                t.len()
            };
            let members = c.family_matches.iter().filter(|f| f.member).count();
            let nonzero = c.family_matches.iter().filter(|f| f.member && !f.zero_block).count();
            out.push_str(&format!(
                "{:>3} {:>3} {:>4} {:>3} {:>9} {:>7} {:>7} {:>7}  {}\n",
                c.n,
                c.m,
                c.dim,
                c.cg,
                if c.assembled_pass { "pass" } else { "FAIL" },
                tuples,
                members,
                nonzero,
                c.flags.join("; ")
            ));
        }
        out
    }
}

pub fn classify_cell(p: &ExtensionProblem, a_values: &[Rational]) -> CellRecord {
    let space = solve_extensions(p);
    let cg = tensor_multiplicity(p.lambda, p.n, p.m);
    let mut flags = Vec::new();
    if space.dimension() != cg {
        flags.push(format!("solution dimension {} differs from Clebsch-Gordan multiplicity {cg}", space.dimension()));
    }
    let assembled_pass = space.basis.iter().all(|z0| match assemble_representation(p, z0) {
        Ok(rho) => full_pass(&verify(&rho)),
        Err(_) => false,
    });
    if !assembled_pass {
        flags.push("an assembled solution fails verification".to_string());
    }

    let mut family_matches = Vec::new();
    for (m, n, s, big_n) in enumerate_params(p.lambda, p.m, p.n) {
        if (m, n) != (p.m, p.n) {
            continue;
        }
        for a in a_vectors(a_values, n - s) {
            let params = ModuleParams::new(p.lambda, m, n, s, big_n, a.clone());
            let module = build_family_module(&params, EwMode::Corrected).expect("enumerated parameters are valid");
            let block = module.z_block(0);
            let mm = match_block(p, &space, &block).expect("family block has the cell's shape");
            family_matches.push(FamilyMatch {
                s,
                big_n,
                a,
                zero_block: block.is_zero(),
                member: mm.member,
                scalar: mm.scalar,
            });
        }
    }
    let reproduced = family_matches.iter().any(|f| f.member && !f.zero_block);
    if space.dimension() > 0 && !reproduced {
        flags.push("nonzero solution exists but no sampled family member reproduces it".to_string());
    }
    let outside = family_matches.iter().filter(|f| !f.member).count();
    if outside > 0 {
        flags.push(format!("{outside} family z0 blocks lie outside the solution span"));
    }
    if space.dimension() == 0 && family_matches.iter().any(|f| !f.zero_block) {
        flags.push("family assigns a nonzero z0 block where no solution exists".to_string());
    }
    CellRecord {
        n: p.n,
        m: p.m,
        dim: space.dimension(),
        cg,
        basis: space.basis,
        assembled_pass,
        family_matches,
        flags,
    }
}

fn full_pass(r: &VerificationReport) -> bool {
    r.is_triangular_representation() && r.all_components_irreducible()
}

pub fn report_notes() -> Vec<String> {
    vec![
        "family z0 blocks are compared with the solution span; the scalar column gives proportionality to the generator when the span is a line".to_string(),
        "solution dimensions are at most one per cell, so the role of the free scalars a_1..a_(n-s) is not explained by the equivariance system".to_string(),
        "the family is evaluated reading v_i as u_i and lowercase lambda as Lambda".to_string(),
    ]
}

pub fn classification_report(lambda: usize, max_n: usize, max_m: usize, a_values: &[Rational]) -> Result<ClassificationReport, ClassifyError> {
    let mut cells = Vec::new();
    for n in 0..=max_n {
        for m in 0..=max_m {
            cells.push(classify_cell(&ExtensionProblem::new(lambda, n, m)?, a_values));
        }
    }
    Ok(ClassificationReport { lambda, max_n, max_m, a_values: a_values.to_vec(), notes: report_notes(), cells })
}

/// One family module checked under both readings of the `e·w` coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub params: ModuleParams,
    pub corrected_pass: bool,
    pub literal_pass: bool,
    pub corrected_failures: Vec<&'static str>,
    pub literal_failures: Vec<&'static str>,
    pub radical_acts_by_zero: bool,
    pub member: bool,
    pub scalar: Option<Rational>,
}

impl AuditEntry {
    pub fn readings_disagree(&self) -> bool {
        self.corrected_pass != self.literal_pass || self.corrected_failures != self.literal_failures
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyAudit {
    pub notes: Vec<String>,
    pub entries: Vec<AuditEntry>,
}

impl FamilyAudit {
    /// Modules passing every check whose `z_0` block is outside the solution
    /// span. Empty when the family and the classifier agree.
    pub fn passing_non_members(&self) -> Vec<&AuditEntry> {
        self.entries.iter().filter(|e| e.corrected_pass && !e.member).collect()
    }

    pub fn discrepancies(&self) -> Vec<&AuditEntry> {
        self.entries.iter().filter(|e| e.readings_disagree()).collect()
    }
}

/// Verifies every enumerated family module with `a` drawn from `a_values`.
pub fn family_audit(lambdas: &[usize], max_m: usize, max_n: usize, a_values: &[Rational]) -> Result<FamilyAudit, ClassifyError> {
    let mut entries = Vec::new();
    for &lambda in lambdas {
        let mut spaces = std::collections::BTreeMap::new();
        for (m, n, s, big_n) in enumerate_params(lambda, max_m, max_n) {
            let problem = ExtensionProblem::new(lambda, n, m)?;
            let space = spaces.entry((n, m)).or_insert_with(|| solve_extensions(&problem));
            for a in a_vectors(a_values, n - s) {
                let params = ModuleParams::new(lambda, m, n, s, big_n, a);
                let corrected = verify_module(&build_family_module(&params, EwMode::Corrected)?);
                let literal = verify_module(&build_family_module(&params, EwMode::PaperLiteral)?);
                let failures = |r: &crate::family::FamilyReport| {
                    r.verdicts.iter().filter(|(_, ok)| !**ok).map(|(k, _)| *k).collect::<Vec<_>>()
                };
                let mm = match_family(&problem, space, &params)?;
                entries.push(AuditEntry {
                    corrected_pass: corrected.all_pass(),
                    literal_pass: literal.all_pass(),
                    corrected_failures: failures(&corrected),
                    literal_failures: failures(&literal),
                    radical_acts_by_zero: corrected.radical_acts_by_zero,
                    member: mm.member,
                    scalar: mm.scalar,
                    params,
                });
            }
        }
    }
    Ok(FamilyAudit { notes: report_notes(), entries })
}
