use crate::exact::{RatMatrix, Rational};

/// A linear subspace of `Q^n`, stored as the nonzero rows of a reduced row
/// echelon form. Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = RatMatrix::from_rows(vectors.to_vec()).expect("vectors share a length");
        assert_eq!(m.cols(), ambient, "vector length differs from ambient dimension");
        let r = m.rref();
        let basis = (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vectors: Vec<_> = indices.iter().map(|&i| unit(ambient, i)).collect();
        Self::span(ambient, &vectors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Rational::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        RatMatrix::from_rows(rows).unwrap().rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    /// Vectors from `candidates` that, added greedily in order, extend this
    /// subspace's basis to a basis of `self + span(candidates)`.
    pub fn completion(&self, candidates: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let mut current = self.basis.clone();
        let mut rank = current.len();
        let mut chosen = Vec::new();
        for c in candidates {
            current.push(c.clone());
            let r = RatMatrix::from_rows(current.clone()).unwrap().rank();
            if r > rank {
                rank = r;
                chosen.push(c.clone());
            } else {
                current.pop();
            }
        }
        chosen
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}
