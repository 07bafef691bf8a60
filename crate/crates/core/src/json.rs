//! Stable JSON forms for algebras and representations. Rationals are strings,
//! field order is fixed and output ends with a newline, so serialising the
//! same value twice gives identical bytes.
//!
//! Algebra brackets are listed as `[i, j, [[k, "c"], …]]`. Only nonzero
//! entries are written, and only for `i < j`. On input any ordered pair may be
//! given; a pair `(i, j)` without a listed `(j, i)` also sets
//! `[b_j, b_i] = -[b_i, b_j]`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{RatMatrix, Rational};
use crate::family::{EwMode, ModuleParams};
use crate::graded::GradedSpace;
use crate::liealg::{LeviData, LieAlgebra};
use crate::rep::{RepError, Representation};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid algebra: {0}")]
    Algebra(String),
    #[error("invalid representation: {0}")]
    Representation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<(usize, usize, Vec<(usize, Rational)>)>,
    pub levi: Vec<usize>,
    pub radical: Vec<usize>,
    pub nilradical: Vec<usize>,
}

impl AlgebraJson {
    pub fn from_algebra(l: &LieAlgebra, d: &LeviData) -> Self {
        let n = l.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let s = l.structure(i, j);
                if !s.is_empty() {
                    brackets.push((i, j, s.clone()));
                }
            }
        }
        AlgebraJson {
            dim: n,
            labels: l.labels().to_vec(),
            brackets,
            levi: d.levi.clone(),
            radical: d.radical.clone(),
            nilradical: d.nilradical.clone(),
        }
    }

    pub fn to_algebra(&self) -> Result<(LieAlgebra, LeviData), JsonError> {
        let bad = |msg: String| JsonError::Algebra(msg);
        if self.labels.len() != self.dim {
            return Err(bad(format!("{} labels for dimension {}", self.labels.len(), self.dim)));
        }
        let distinct: BTreeSet<&String> = self.labels.iter().collect();
        if distinct.len() != self.labels.len() {
            return Err(bad("labels are not distinct".into()));
        }
        let n = self.dim;
        let mut given = BTreeMap::new();
        for (i, j, terms) in &self.brackets {
            if *i >= n || *j >= n {
                return Err(bad(format!("bracket ({i}, {j}) out of range")));
            }
            let mut v = vec![Rational::zero(); n];
            for (k, c) in terms {
                if *k >= n {
                    return Err(bad(format!("bracket ({i}, {j}) has a term on index {k}")));
                }
                if !v[*k].is_zero() {
                    return Err(bad(format!("bracket ({i}, {j}) repeats index {k}")));
                }
                v[*k] = c.clone();
            }
            if given.insert((*i, *j), v).is_some() {
                return Err(bad(format!("bracket ({i}, {j}) listed twice")));
            }
        }
        let mut l = LieAlgebra::abelian(self.labels.clone());
        for ((i, j), v) in &given {
            if !given.contains_key(&(*j, *i)) {
                let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
                l.set_structure_raw(*j, *i, &neg).expect("indices checked");
            }
            l.set_structure_raw(*i, *j, v).expect("indices checked");
        }
        for list in [&self.levi, &self.radical, &self.nilradical] {
            if let Some(k) = list.iter().find(|&&k| k >= n) {
                return Err(bad(format!("Levi data index {k} out of range")));
            }
        }
        let d = LeviData { levi: self.levi.clone(), radical: self.radical.clone(), nilradical: self.nilradical.clone() };
        Ok((l, d))
    }
}

/// Parameters recorded with a generated family module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyTag {
    pub params: ModuleParams,
    pub mode: EwMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationJson {
    pub algebra: AlgebraJson,
    pub dims: Vec<usize>,
    /// Image of each basis element, keyed by label.
    pub images: BTreeMap<String, RatMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyTag>,
}

impl RepresentationJson {
    pub fn from_representation(rho: &Representation, family: Option<FamilyTag>) -> Self {
        let l = rho.algebra();
        let images = (0..l.dim()).map(|i| (l.label(i).to_string(), rho.image(i).matrix().clone())).collect();
        RepresentationJson {
            algebra: AlgebraJson::from_algebra(l, rho.levi()),
            dims: rho.space().dims().to_vec(),
            images,
            family,
        }
    }

    pub fn to_representation(&self) -> Result<Representation, JsonError> {
        let (l, d) = self.algebra.to_algebra()?;
        let bad = |msg: String| JsonError::Representation(msg);
        if self.images.len() != l.dim() {
            return Err(bad(format!("{} images for an algebra of dimension {}", self.images.len(), l.dim())));
        }
        let mut images = Vec::with_capacity(l.dim());
        for label in l.labels() {
            match self.images.get(label) {
                Some(m) => images.push(m.clone()),
                None => return Err(bad(format!("no image for {label}"))),
            }
        }
        Representation::new(l, d, GradedSpace::new(self.dims.clone()), images)
            .map_err(|e: RepError| bad(e.to_string()))
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialise");
    s.push('\n');
    s
}

pub fn parse_algebra(text: &str) -> Result<(LieAlgebra, LeviData), JsonError> {
    serde_json::from_str::<AlgebraJson>(text)?.to_algebra()
}

pub fn parse_representation(text: &str) -> Result<(Representation, Option<FamilyTag>), JsonError> {
    let raw: RepresentationJson = serde_json::from_str(text)?;
    Ok((raw.to_representation()?, raw.family))
}
