//! The two-component `sl_2^Λ` modules `M_{m,n}^{s,N}(a_1, …, a_{n-s})`:
//! parameter validation, enumeration, construction from the displayed action
//! formulas and verification.
//!
//! Basis order is `u_0 … u_n` (degree 0) followed by `w_0 … w_m` (degree 1).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{binomial, factorial, RatMatrix, Rational};
use crate::graded::GradedSpace;
use crate::liealg::{build_sl2_lambda, z_index};
use crate::rep::{verify, Representation, VerificationReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleParams {
    pub lambda: usize,
    pub m: usize,
    pub n: usize,
    pub s: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    /// `a_1 … a_{n-s}`; `a_0 = 1` is implicit.
    pub a: Vec<Rational>,
}

impl ModuleParams {
    pub fn new(lambda: usize, m: usize, n: usize, s: usize, big_n: usize, a: Vec<Rational>) -> Self {
        ModuleParams { lambda, m, n, s, big_n, a }
    }

    /// `a_t`, with `a_0 = 1` and zero outside `0..=n-s`.
    pub fn a_coeff(&self, t: i64) -> Rational {
        if t == 0 {
            Rational::one()
        } else if t >= 1 && (t as usize) <= self.a.len() {
            self.a[t as usize - 1].clone()
        } else {
            Rational::zero()
        }
    }
}

impl fmt::Display for ModuleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        write!(
            f,
            "(lambda={}, m={}, n={}, s={}, N={}, a=({}))",
            self.lambda,
            self.m,
            self.n,
            self.s,
            self.big_n,
            a.join(", ")
        )
    }
}

/// Outcome of `validate_params`; `diagnostic` names the first failed condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamCheck {
    pub valid: bool,
    pub diagnostic: Option<String>,
}

pub fn validate_params(p: &ModuleParams) -> ParamCheck {
    let fail = |msg: String| ParamCheck { valid: false, diagnostic: Some(msg) };
    if p.lambda == 0 {
        return fail("lambda must be positive".into());
    }
    let lhs = p.m + 2 * p.s;
    let rhs = p.lambda + p.n + 2 * p.big_n;
    if lhs != rhs {
        return fail(format!("m + 2s = {lhs} but lambda + n + 2N = {rhs}"));
    }
    if p.s > p.n {
        return fail(format!("s = {} exceeds n = {}", p.s, p.n));
    }
    if p.big_n > p.m {
        return fail(format!("N = {} exceeds m = {}", p.big_n, p.m));
    }
    if p.a.len() != p.n - p.s {
        return fail(format!("expected {} scalars a_1..a_(n-s), got {}", p.n - p.s, p.a.len()));
    }
    ParamCheck { valid: true, diagnostic: None }
}

/// All `(m, n, s, N)` with `m ≤ m_max`, `n ≤ n_max` obeying the constraint,
/// in lexicographic order of the tuple.
pub fn enumerate_params(lambda: usize, m_max: usize, n_max: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for m in 0..=m_max {
        for n in 0..=n_max {
            for s in 0..=n {
                // m + 2s = lambda + n + 2N determines N.
                let lhs = m + 2 * s;
                let base = lambda + n;
                if lhs < base || (lhs - base) % 2 != 0 {
                    continue;
                }
                let big_n = (lhs - base) / 2;
                if big_n <= m {
                    out.push((m, n, s, big_n));
                }
            }
        }
    }
    out
}

/// How the `e`-action on the `w`-span is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EwMode {
    /// `e·w_k = k(m-k+1) w_{k-1}`, the irreducible of highest weight `m`.
    #[default]
    Corrected,
    /// `e·w_k = k(n-k+1) w_{k-1}` as printed.
    PaperLiteral,
}

impl EwMode {
    pub fn describe(self) -> &'static str {
        match self {
            EwMode::Corrected => "e.w_k = k(m-k+1) w_(k-1)",
            EwMode::PaperLiteral => "e.w_k = k(n-k+1) w_(k-1) (as printed)",
        }
    }
}

/// Which displayed case produced a `z_j·u_i` entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaCase {
    Middle,
    Third,
}

/// One evaluated instance `z_j·u_i = coefficient·w_target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZEntry {
    pub j: usize,
    pub i: usize,
    pub target: usize,
    pub coefficient: Rational,
    pub case: FormulaCase,
    pub theta: usize,
}

/// Two formula instances disagreeing on the same `z_j·u_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaConflict {
    pub j: usize,
    pub i: usize,
    pub first: ZEntry,
    pub second: ZEntry,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyModule {
    pub params: ModuleParams,
    pub mode: EwMode,
    pub representation: Representation,
    pub entries: Vec<ZEntry>,
    pub conflicts: Vec<FormulaConflict>,
}

impl FamilyModule {
    /// The `(m+1)×(n+1)` block of `z_j` from the `u`-span to the `w`-span.
    pub fn z_block(&self, j: usize) -> RatMatrix {
        let (n, m) = (self.params.n, self.params.m);
        self.representation.image(z_index(j)).matrix().block(n + 1, n + m + 2, 0, n + 1)
    }
}

fn inv_factorial(x: i64) -> Rational {
    // 1/x! vanishes at the poles x < 0.
    if x < 0 {
        Rational::zero()
    } else {
        Rational::one() / Rational::from(BigInt::from(factorial(x as u64)))
    }
}

fn factorial_rat(x: i64) -> Rational {
    assert!(x >= 0, "factorial of negative argument {x}");
    Rational::from(BigInt::from(factorial(x as u64)))
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Evaluates every instance of the two nonzero displayed cases whose source and
/// target indices are in range.
pub fn formula_entries(p: &ModuleParams) -> Vec<ZEntry> {
    let (lambda, m, n, s, big_n) = (p.lambda as i64, p.m as i64, p.n as i64, p.s as i64, p.big_n as i64);
    let inv_m = inv_factorial(m);
    let mut out = Vec::new();
    // z_j·u_{s-j+θ} for 0 ≤ j ≤ min(s+θ, Λ), 0 ≤ θ ≤ n-s.
    for theta in 0..=n - s {
        for j in 0..=(s + theta).min(lambda) {
            let i = s - j + theta;
            let target = theta + big_n;
            if !(0..=n).contains(&i) || target > m {
                continue;
            }
            let mut c = Rational::zero();
            for k in 0..=theta {
                let binom = Rational::from(binomial(j as u64, k));
                if binom.is_zero() {
                    continue;
                }
                let term = sign(j - k)
                    * binom
                    * factorial_rat(m - big_n - theta + k)
                    * inv_factorial(big_n + theta - k)
                    * &inv_m
                    * p.a_coeff(theta - k);
                c += term;
            }
            out.push(ZEntry {
                j: j as usize,
                i: i as usize,
                target: target as usize,
                coefficient: c,
                case: FormulaCase::Middle,
                theta: theta as usize,
            });
        }
    }
    // z_j·u_{n-j+θ} for Λ ≥ j ≥ θ ≥ 1.
    for j in 1..=lambda {
        for theta in 1..=j {
            let i = n - j + theta;
            let target = n - s + theta + big_n;
            if !(0..=n).contains(&i) || target > m {
                continue;
            }
            let mut c = Rational::zero();
            for k in 0..=j - theta {
                let binom = Rational::from(binomial(j as u64, theta + k));
                let a = p.a_coeff(n - s - k);
                if binom.is_zero() || a.is_zero() {
                    continue;
                }
                let term = sign(j - theta - k)
                    * binom
                    * factorial_rat(m - big_n - n + s + k)
                    * inv_factorial(big_n + n - s - k)
                    * &inv_m
                    * a;
                c += term;
            }
            out.push(ZEntry {
                j: j as usize,
                i: i as usize,
                target: target as usize,
                coefficient: c,
                case: FormulaCase::Third,
                theta: theta as usize,
            });
        }
    }
    out
}

/// Builds the module. Entries are placed in order; a later entry for an
/// already assigned `z_j·u_i` with a different value is recorded as a conflict
/// and does not overwrite. An entry landing in the zero range `i + j ≤ s-1`
/// with a nonzero value is also a conflict.
pub fn build_family_module(p: &ModuleParams, mode: EwMode) -> Result<FamilyModule, FamilyError> {
    let check = validate_params(p);
    if !check.valid {
        return Err(FamilyError::InvalidParams(check.diagnostic.unwrap_or_default()));
    }
    let (l, levi) = build_sl2_lambda(p.lambda as i64).expect("lambda validated positive");
    let (n, m) = (p.n, p.m);
    let dim = n + m + 2;
    let u = |i: usize| i;
    let w = |k: usize| n + 1 + k;

    let mut f = RatMatrix::zeros(dim, dim);
    let mut h = RatMatrix::zeros(dim, dim);
    let mut e = RatMatrix::zeros(dim, dim);
    for i in 0..=n {
        h[(u(i), u(i))] = Rational::from(n as i64 - 2 * i as i64);
        if i < n {
            f[(u(i + 1), u(i))] = Rational::one();
        }
        if i > 0 {
            e[(u(i - 1), u(i))] = Rational::from((i * (n - i + 1)) as i64);
        }
    }
    let top = match mode {
        EwMode::Corrected => m as i64,
        EwMode::PaperLiteral => n as i64,
    };
    for k in 0..=m {
        h[(w(k), w(k))] = Rational::from(m as i64 - 2 * k as i64);
        if k < m {
            f[(w(k + 1), w(k))] = Rational::one();
        }
        if k > 0 {
            e[(w(k - 1), w(k))] = Rational::from(k as i64 * (top - k as i64 + 1));
        }
    }

    let entries = formula_entries(p);
    let mut assigned: BTreeMap<(usize, usize), ZEntry> = BTreeMap::new();
    let mut conflicts = Vec::new();
    for entry in &entries {
        let key = (entry.j, entry.i);
        if entry.i + entry.j < p.s && !entry.coefficient.is_zero() {
            let zero = ZEntry { coefficient: Rational::zero(), ..entry.clone() };
            conflicts.push(FormulaConflict { j: entry.j, i: entry.i, first: zero, second: entry.clone() });
            continue;
        }
        match assigned.get(&key) {
            Some(prev) => {
                if prev.target != entry.target || prev.coefficient != entry.coefficient {
                    conflicts.push(FormulaConflict { j: entry.j, i: entry.i, first: prev.clone(), second: entry.clone() });
                }
            }
            None => {
                assigned.insert(key, entry.clone());
            }
        }
    }

    let mut images = vec![f, h, e];
    for j in 0..=p.lambda {
        let mut z = RatMatrix::zeros(dim, dim);
        for ((jj, i), entry) in &assigned {
            if *jj == j {
                z[(w(entry.target), u(*i))] = entry.coefficient.clone();
            }
        }
        images.push(z);
    }
    let representation = Representation::new(l, levi, GradedSpace::new(vec![n + 1, m + 1]), images)
        .expect("family images have the algebra's dimension and the grading's size");
    Ok(FamilyModule { params: p.clone(), mode, representation, entries, conflicts })
}

/// First nonzero `z_j·u_i = c·w_k` with `m - 2k ≠ (Λ-2j) + (n-2i)`.
pub fn weight_violation(module: &FamilyModule) -> Option<(usize, usize, usize)> {
    let p = &module.params;
    for j in 0..=p.lambda {
        let blk = module.z_block(j);
        for i in 0..=p.n {
            for k in 0..=p.m {
                if blk[(k, i)].is_zero() {
                    continue;
                }
                let target = p.m as i64 - 2 * k as i64;
                let source = (p.lambda as i64 - 2 * j as i64) + (p.n as i64 - 2 * i as i64);
                if target != source {
                    return Some((j, i, k));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    /// Reading assumptions under which the displayed formulas were evaluated.
    pub header: Vec<String>,
    pub params: ModuleParams,
    pub mode: EwMode,
    pub verdicts: BTreeMap<&'static str, bool>,
    pub radical_acts_by_zero: bool,
    pub conflicts: Vec<FormulaConflict>,
    pub report: VerificationReport,
    pub witnesses: Vec<Witness>,
}

impl FamilyReport {
    /// Every verdict holds and the radical acts nontrivially.
    pub fn all_pass(&self) -> bool {
        self.verdicts.values().all(|&v| v) && !self.radical_acts_by_zero
    }
}

pub fn reading_header(mode: EwMode) -> Vec<String> {
    vec![
        "v_i in the z-action formulas is read as u_i".to_string(),
        "lowercase lambda in the index ranges is read as Lambda".to_string(),
        format!("w-span e-action: {}", mode.describe()),
    ]
}

/// Verdicts for an already built module.
pub fn verify_module(module: &FamilyModule) -> FamilyReport {
    let report = verify(&module.representation);
    let mut witnesses = Vec::new();
    let weight = weight_violation(module);
    if let Some((j, i, k)) = weight {
        witnesses.push(Witness::Note {
            condition: "weight_compatible",
            message: format!("z{j}.u{i} has a component on w{k} of the wrong weight"),
        });
    }
    for c in &module.conflicts {
        witnesses.push(Witness::Note {
            condition: "formulas_consistent",
            message: format!(
                "z{}.u{} assigned {}*w{} and {}*w{}",
                c.j, c.i, c.first.coefficient, c.first.target, c.second.coefficient, c.second.target
            ),
        });
    }
    let p = &module.params;
    let radical_acts_by_zero = (0..=p.lambda).all(|j| module.z_block(j).is_zero());
    if radical_acts_by_zero {
        witnesses.push(Witness::Note {
            condition: "radical_acts_by_zero",
            message: "every z_j acts by zero".to_string(),
        });
    }
    let verdicts = BTreeMap::from([
        ("homomorphism", report.homomorphism),
        ("triangular", report.triangular_all),
        ("condition_i", report.condition_i),
        ("condition_ii", report.condition_ii),
        ("irreducible_components", report.all_components_irreducible()),
        ("weight_compatible", weight.is_none()),
        ("formulas_consistent", module.conflicts.is_empty()),
    ]);
    FamilyReport {
        header: reading_header(module.mode),
        params: p.clone(),
        mode: module.mode,
        verdicts,
        radical_acts_by_zero,
        conflicts: module.conflicts.clone(),
        report,
        witnesses,
    }
}

pub fn verify_family(p: &ModuleParams, mode: EwMode) -> Result<FamilyReport, FamilyError> {
    Ok(verify_module(&build_family_module(p, mode)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::homomorphism_violation;

    fn params(lambda: usize, m: usize, n: usize, s: usize, big_n: usize, a: &[(i64, i64)]) -> ModuleParams {
        ModuleParams::new(lambda, m, n, s, big_n, a.iter().map(|&(p, q)| Rational::frac(p, q)).collect())
    }

    #[test]
    fn validation() {
        assert!(validate_params(&params(1, 2, 1, 1, 1, &[])).valid);
        let bad = validate_params(&params(1, 0, 0, 0, 0, &[]));
        assert!(!bad.valid && bad.diagnostic.unwrap().contains("m + 2s"));
        assert!(validate_params(&params(2, 2, 0, 0, 0, &[])).valid);
        assert!(!validate_params(&params(1, 2, 1, 0, 0, &[])).valid);
        assert!(validate_params(&params(1, 2, 1, 0, 0, &[(1, 1)])).valid);
        assert!(!validate_params(&params(0, 1, 1, 0, 0, &[(1, 1)])).valid);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_params(1, 2, 2),
            vec![(0, 1, 1, 0), (1, 0, 0, 0), (1, 2, 1, 0), (1, 2, 2, 1), (2, 1, 0, 0), (2, 1, 1, 1)]
        );
        assert!(enumerate_params(1, 0, 0).is_empty());
        for lambda in 1..=4 {
            for (m, n, _, _) in enumerate_params(lambda, 6, 6) {
                assert_eq!(m % 2, (lambda + n) % 2);
            }
        }
    }

    #[test]
    fn enumeration_matches_filter() {
        for lambda in 1..=3 {
            let mut filtered = Vec::new();
            for m in 0..=5 {
                for n in 0..=5usize {
                    for s in 0..=6 {
                        for big_n in 0..=6 {
                            let a = vec![Rational::zero(); n.saturating_sub(s)];
                            if validate_params(&ModuleParams::new(lambda, m, n, s, big_n, a)).valid {
                                filtered.push((m, n, s, big_n));
                            }
                        }
                    }
                }
            }
            assert_eq!(enumerate_params(lambda, 5, 5), filtered);
        }
    }

    #[test]
    fn worked_entries() {
        let fm = build_family_module(&params(1, 2, 1, 1, 1, &[]), EwMode::Corrected).unwrap();
        let z0 = fm.z_block(0);
        let z1 = fm.z_block(1);
        // Rows are w_0..w_2, columns u_0..u_1.
        assert!(z0.column(0).iter().all(Rational::is_zero));
        assert_eq!(z0[(1, 1)], Rational::frac(1, 2));
        assert_eq!(z1[(1, 0)], Rational::frac(-1, 2));
        assert_eq!(z1[(2, 1)], Rational::frac(1, 2));
        assert_eq!(z0.nonzero_count() + z1.nonzero_count(), 3);
        assert!(fm.conflicts.is_empty());
        assert!(weight_violation(&fm).is_none());
    }

    #[test]
    fn worked_module_fails_homomorphism() {
        // [ρf, ρz1] applied to u0 is f(-w1/2) - z1(u1) = -w2, while [f, z1] = 0.
        let fm = build_family_module(&params(1, 2, 1, 1, 1, &[]), EwMode::Corrected).unwrap();
        let l = fm.representation.algebra();
        let (i, j) = homomorphism_violation(&fm.representation).unwrap();
        assert_eq!((l.label(i), l.label(j)), ("f", "z1"));
        let rep = verify_family(&fm.params, EwMode::Corrected).unwrap();
        assert!(!rep.verdicts["homomorphism"]);
        assert!(rep.verdicts["weight_compatible"] && rep.verdicts["formulas_consistent"]);
        assert!(rep.verdicts["irreducible_components"]);
        assert!(!rep.all_pass());
        assert_eq!(rep.header.len(), 3);
    }

    #[test]
    fn s_equals_n_modules_pass() {
        for lambda in 1..=3 {
            for (m, n, s, big_n) in enumerate_params(lambda, 4, 4) {
                if s == n && big_n == 0 {
                    let rep = verify_family(&ModuleParams::new(lambda, m, n, s, 0, vec![]), EwMode::Corrected).unwrap();
                    assert!(rep.all_pass(), "{:?}", (lambda, m, n));
                }
            }
        }
    }

    #[test]
    fn paper_literal_breaks_sl2_when_m_differs_from_n() {
        let p = params(1, 2, 1, 1, 1, &[]);
        let rep = verify_family(&p, EwMode::PaperLiteral).unwrap();
        assert!(!rep.verdicts["homomorphism"]);
        assert!(!rep.verdicts["irreducible_components"]);
        // m = n: the two readings coincide.
        let p = params(2, 1, 1, 1, 0, &[]);
        let a = build_family_module(&p, EwMode::PaperLiteral).unwrap();
        let b = build_family_module(&p, EwMode::Corrected).unwrap();
        assert_eq!(a.representation, b.representation);
    }

    #[test]
    fn corrupted_module_has_pair_witness() {
        let mut fm = build_family_module(&params(1, 1, 0, 0, 0, &[]), EwMode::Corrected).unwrap();
        assert!(verify_module(&fm).all_pass());
        let idx = z_index(0);
        let mut z = fm.representation.image(idx).matrix().clone();
        z[(1, 0)] = &z[(1, 0)] + &Rational::one();
        fm.representation.set_image(idx, z).unwrap();
        let rep = verify_module(&fm);
        assert!(!rep.verdicts["homomorphism"]);
        assert!(rep.report.witnesses.iter().any(|w| matches!(w, Witness::BasisPair { .. })));
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(build_family_module(&params(1, 0, 0, 0, 0, &[]), EwMode::Corrected).is_err());
    }

    #[test]
    fn entries_are_weight_compatible() {
        for lambda in 1..=3 {
            for (m, n, s, big_n) in enumerate_params(lambda, 5, 5) {
                let a = (1..=n - s).map(|t| Rational::frac(t as i64, 3)).collect();
                let fm = build_family_module(&ModuleParams::new(lambda, m, n, s, big_n, a), EwMode::Corrected).unwrap();
                assert!(weight_violation(&fm).is_none());
                assert!(fm.conflicts.is_empty());
            }
        }
    }
}
