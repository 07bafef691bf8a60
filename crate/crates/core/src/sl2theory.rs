//! Finite-dimensional `sl_2` modules in the basis convention
//! `h·x_i = (d-2i) x_i`, `f·x_i = x_{i+1}`, `e·x_i = i(d-i+1) x_{i-1}`.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exact::{RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("f, h, e matrices must be square of one size")]
    Shape,
    #[error("h does not act diagonalizably with integer eigenvalues ({found} of {dim} dimensions accounted for)")]
    NotIntegralDiagonalizable { found: usize, dim: usize },
    #[error("sl2 relation {0} fails")]
    RelationViolated(&'static str),
}

/// Matrices of `f`, `h`, `e` acting on a common space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Action {
    pub f: RatMatrix,
    pub h: RatMatrix,
    pub e: RatMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Module {
    pub highest_weight: usize,
    pub action: Sl2Action,
}

impl Sl2Action {
    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    fn check_shape(&self) -> Result<(), Sl2Error> {
        let n = self.h.rows();
        if [&self.f, &self.h, &self.e].iter().any(|m| m.shape() != (n, n)) {
            return Err(Sl2Error::Shape);
        }
        Ok(())
    }

    /// `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn check_relations(&self) -> Result<(), Sl2Error> {
        self.check_shape()?;
        let two = Rational::from(2);
        if self.h.commutator(&self.e).unwrap() != self.e.scale(&two) {
            return Err(Sl2Error::RelationViolated("[h,e] = 2e"));
        }
        if self.h.commutator(&self.f).unwrap() != self.f.scale(&-two) {
            return Err(Sl2Error::RelationViolated("[h,f] = -2f"));
        }
        if self.e.commutator(&self.f).unwrap() != self.h {
            return Err(Sl2Error::RelationViolated("[e,f] = h"));
        }
        Ok(())
    }

    /// `ef + fe + h²/2`.
    pub fn casimir(&self) -> RatMatrix {
        let ef = &self.e * &self.f;
        let fe = &self.f * &self.e;
        let hh = (&self.h * &self.h).scale(&Rational::frac(1, 2));
        &(&ef + &fe) + &hh
    }

    pub fn direct_sum(&self, other: &Sl2Action) -> Sl2Action {
        let sum = |a: &RatMatrix, b: &RatMatrix| {
            let mut m = RatMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
            m.set_block(0, 0, a);
            m.set_block(a.rows(), a.cols(), b);
            m
        };
        Sl2Action { f: sum(&self.f, &other.f), h: sum(&self.h, &other.h), e: sum(&self.e, &other.e) }
    }
}

/// The `(d+1)`-dimensional irreducible module.
pub fn build_irreducible(d: usize) -> Sl2Module {
    let n = d + 1;
    let di = d as i64;
    let h = RatMatrix::diagonal(&(0..n).map(|i| Rational::from(di - 2 * i as i64)).collect::<Vec<_>>());
    let mut f = RatMatrix::zeros(n, n);
    let mut e = RatMatrix::zeros(n, n);
    for i in 0..n {
        if i + 1 < n {
            f[(i + 1, i)] = Rational::one();
        }
        if i > 0 {
            let ii = i as i64;
            e[(i - 1, i)] = Rational::from(ii * (di - ii + 1));
        }
    }
    let action = Sl2Action { f, h, e };
    debug_assert!(action.check_relations().is_ok());
    Sl2Module { highest_weight: d, action }
}

/// Multiplicity of each integer eigenvalue of `h`.
///
/// Candidate weights are bounded by the largest absolute row sum of `h`; the
/// multiplicities must add up to the dimension, otherwise `h` is not
/// diagonalizable over the integers and an error is returned.
pub fn weight_decomposition(action: &Sl2Action) -> Result<BTreeMap<i64, usize>, Sl2Error> {
    action.check_shape()?;
    let h = &action.h;
    let n = h.rows();
    let bound = (0..n)
        .map(|i| h.row(i).iter().map(Rational::abs).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero)
        .floor()
        .to_i64()
        .expect("weight bound fits in i64");
    let mut weights = BTreeMap::new();
    let mut found = 0;
    for w in -bound..=bound {
        let shifted = h - &RatMatrix::identity(n).scale(&Rational::from(w));
        let mult = n - shifted.rank();
        if mult > 0 {
            weights.insert(w, mult);
            found += mult;
        }
    }
    if found != n {
        return Err(Sl2Error::NotIntegralDiagonalizable { found, dim: n });
    }
    Ok(weights)
}

/// Irreducible iff the weights are exactly `d, d-2, …, -d` once each, with
/// `d = dim - 1`, and the kernel of `e` is a single line. The zero module is
/// not irreducible.
pub fn is_irreducible(action: &Sl2Action) -> Result<bool, Sl2Error> {
    action.check_relations()?;
    let n = action.dim();
    if n == 0 {
        return Ok(false);
    }
    let weights = weight_decomposition(action)?;
    let d = n as i64 - 1;
    let expected: BTreeMap<i64, usize> = (0..n as i64).map(|i| (d - 2 * i, 1)).collect();
    if weights != expected {
        return Ok(false);
    }
    Ok(action.e.nullspace().len() == 1)
}

/// Multiplicity of `V_c` in `V_a ⊗ V_b`, by counting weights of the tensor
/// character at `c` and at `c + 2`.
pub fn tensor_multiplicity(a: usize, b: usize, c: usize) -> usize {
    let count = |w: i64| {
        let mut k = 0;
        for i in 0..=a as i64 {
            for j in 0..=b as i64 {
                if (a as i64 - 2 * i) + (b as i64 - 2 * j) == w {
                    k += 1;
                }
            }
        }
        k
    };
    let (at, above) = (count(c as i64), count(c as i64 + 2));
    at - above
}
