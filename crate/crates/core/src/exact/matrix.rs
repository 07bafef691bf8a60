use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, ShapeError};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ShapeError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(ShapeError { op: "from_rows", left: (r, c), right: (1, row.len()) });
            }
            data.extend(row);
        }
        Ok(RatMatrix { rows: r, cols: c, data })
    }

    /// Integer-entry constructor, mostly for tests and fixed tables.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, ShapeError> {
        if data.len() != rows * cols {
            return Err(ShapeError { op: "from_flat", left: (rows, cols), right: (data.len(), 1) });
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ShapeError> {
        self.same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ShapeError> {
        self.same_shape(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ShapeError> {
        if self.cols != other.rows {
            return Err(ShapeError { op: "mul", left: self.shape(), right: other.shape() });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        // Most matrices in this crate are sparse weight-shifting operators, so
        // zero entries of the left factor are skipped.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `AB - BA` for square matrices of equal size.
    pub fn commutator(&self, other: &Self) -> Result<Self, ShapeError> {
        if !self.is_square() || self.shape() != other.shape() {
            return Err(ShapeError { op: "commutator", left: self.shape(), right: other.shape() });
        }
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    /// Submatrix with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &RatMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn hstack(parts: &[&RatMatrix]) -> Result<Self, ShapeError> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if let Some(bad) = parts.iter().find(|m| m.rows != rows) {
            return Err(ShapeError { op: "hstack", left: (rows, 0), right: bad.shape() });
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for m in parts {
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&RatMatrix]) -> Result<Self, ShapeError> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if let Some(bad) = parts.iter().find(|m| m.cols != cols) {
            return Err(ShapeError { op: "vstack", left: (0, cols), right: bad.shape() });
        }
        let mut data = Vec::new();
        for m in parts {
            data.extend_from_slice(&m.data);
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        Ok(RatMatrix { rows, cols, data })
    }

    /// Reduced row echelon form.
    ///
    /// Rows are first scaled to integer rows and eliminated fraction-free, with
    /// each updated row divided by the gcd of its entries. Pivots are the first
    /// nonzero entry in column order. Only the final back-substitution pass
    /// works with fractions.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows).map(|i| integer_row(self.row(i))).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let g = pivot_row[c].gcd(&row[c]);
                let mp = &row[c] / &g;
                let mr = &pivot_row[c] / &g;
                for (x, y) in row.iter_mut().zip(pivot_row).skip(c) {
                    *x = &*x * &mr - y * &mp;
                }
                reduce_content(row);
            }
            pivots.push(c);
            r += 1;
        }

        let mut out: Vec<Vec<Rational>> = rows
            .into_iter()
            .map(|row| row.into_iter().map(Rational::from_bigint).collect())
            .collect();
        for (i, &c) in pivots.iter().enumerate() {
            let inv = out[i][c].recip().expect("pivot is nonzero");
            for x in out[i].iter_mut() {
                *x = &*x * &inv;
            }
        }
        for (i, &c) in pivots.iter().enumerate().rev() {
            let (above, rest) = out.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(pivot_row).skip(c) {
                    if !y.is_zero() {
                        *x -= &(&factor * y);
                    }
                }
            }
        }
        let matrix = if self.rows == 0 {
            self.clone()
        } else {
            RatMatrix::from_rows(out).expect("rows keep their width")
        };
        Rref { matrix, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{ v : A v = 0 }`, one vector per free column, with a 1 in
    /// that free position.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix: r, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// One solution of `A x = b` (free variables set to zero), or `None` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let rhs = RatMatrix::from_columns(self.rows, &[b.to_vec()]);
        self.solve_matrix(&rhs).map(|x| x.column(0))
    }

    /// One solution `X` of `A X = B`, or `None` when some column is inconsistent.
    pub fn solve_matrix(&self, b: &RatMatrix) -> Option<RatMatrix> {
        assert_eq!(b.rows, self.rows, "right-hand side height mismatch");
        let aug = RatMatrix::hstack(&[self, b]).expect("heights agree");
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = RatMatrix::zeros(self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = r[(row, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&RatMatrix::identity(self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<(), ShapeError> {
        if self.shape() != other.shape() {
            return Err(ShapeError { op, left: self.shape(), right: other.shape() });
        }
        Ok(())
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    reduce_content(&mut out);
    out
}

fn reduce_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_add(rhs).unwrap()
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_sub(rhs).unwrap()
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).unwrap()
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        RatMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}
