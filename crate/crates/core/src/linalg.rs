//! Dense rational matrices and an incremental sparse echelon span.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{show, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
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
        Self { rows, cols, data }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let cols = columns.len();
        Self::from_fn(rows, cols, |i, j| columns[j][i].clone())
    }

    /// Matrix with a single 1 at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = Rational::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Rational]) {
        for (i, v) in col.iter().enumerate() {
            self[(i, j)] = v.clone();
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Row-major flattening, used as a coordinate vector.
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    /// Sparse coordinate map of the flattened entries.
    pub fn to_sparse(&self) -> BTreeMap<usize, Rational> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = Rational::one() / &m[(r, c)];
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &f * &m[(r, j)];
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| show(&self[(i, j)])).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Linear combination of generator indices.
pub type Combo = BTreeMap<usize, Rational>;

/// Incrementally built echelon basis of a span of sparse vectors.
///
/// Each stored row has its smallest key as pivot with coefficient one, and
/// remembers how it is expressed through the vectors passed to [`insert`].
///
/// [`insert`]: SparseSpan::insert
#[derive(Clone, Debug)]
pub struct SparseSpan<K: Ord + Clone> {
    rows: Vec<(BTreeMap<K, Rational>, Combo)>,
    pivots: BTreeMap<K, usize>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for SparseSpan<K> {
    fn default() -> Self {
        Self { rows: Vec::new(), pivots: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> SparseSpan<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows, returning the remainder and the
    /// combination of generators that was subtracted.
    fn reduce(&self, mut v: BTreeMap<K, Rational>) -> (BTreeMap<K, Rational>, Combo) {
        let mut used = Combo::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .next()
                    .map(|(k, _)| k.clone()),
            };
            let Some(key) = next else { break };
            match self.pivots.get(&key) {
                Some(&ri) => {
                    let f = v[&key].clone();
                    let (row, combo) = &self.rows[ri];
                    for (k, x) in row {
                        axpy(&mut v, k, &(-(&f * x)));
                    }
                    for (g, c) in combo {
                        axpy(&mut used, g, &(&f * c));
                    }
                }
                None => cursor = Some(key),
            }
        }
        (v, used)
    }

    /// Adds a vector; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: BTreeMap<K, Rational>) -> bool {
        let gen = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce(v);
        let Some((pivot, lead)) = rem.iter().next().map(|(k, x)| (k.clone(), x.clone())) else {
            return false;
        };
        let inv = Rational::one() / &lead;
        let row: BTreeMap<K, Rational> = rem.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        let mut combo: Combo = used.into_iter().map(|(g, c)| (g, -(c * &inv))).collect();
        axpy(&mut combo, &gen, &inv);
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push((row, combo));
        true
    }

    pub fn contains(&self, v: &BTreeMap<K, Rational>) -> bool {
        self.reduce(v.clone()).0.is_empty()
    }

    /// Coefficients over the inserted generators reproducing `v`, if `v` is
    /// in the span.
    pub fn express(&self, v: &BTreeMap<K, Rational>) -> Option<Combo> {
        let (rem, used) = self.reduce(v.clone());
        rem.is_empty().then_some(used)
    }
}

/// `map[key] += a`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone>(map: &mut BTreeMap<K, Rational>, key: &K, a: &Rational) {
    if a.is_zero() {
        return;
    }
    match map.get_mut(key) {
        Some(x) => {
            *x += a;
            if x.is_zero() {
                map.remove(key);
            }
        }
        None => {
            map.insert(key.clone(), a.clone());
        }
    }
}

pub fn dense_to_sparse(v: &[Rational]) -> BTreeMap<usize, Rational> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Rank of a family of sparse vectors.
pub fn sparse_rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = BTreeMap<K, Rational>>) -> usize {
    let mut span = SparseSpan::new();
    for v in vectors {
        span.insert(v);
    }
    span.dim()
}

/// Canonical basis (nonzero rows of the RREF) of the span of `vectors`, each
/// of length `len`.
pub fn canonical_basis(vectors: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_fn(vectors.len(), len, |i, j| vectors[i][j].clone());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| (0..len).map(|j| r[(i, j)].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn rank_and_nullspace() {
        let m = Matrix::from_fn(2, 3, |i, j| int((i + j) as i64));
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn span_expresses_members() {
        let mut span = SparseSpan::new();
        span.insert(dense_to_sparse(&[int(1), int(2), int(0)]));
        span.insert(dense_to_sparse(&[int(0), int(1), int(1)]));
        assert!(!span.insert(dense_to_sparse(&[int(2), int(5), int(1)])));
        let target = dense_to_sparse(&[frac(1, 2), int(2), int(1)]);
        let combo = span.express(&target).unwrap();
        assert_eq!(combo.get(&0), Some(&frac(1, 2)));
        assert_eq!(combo.get(&1), Some(&int(1)));
        assert!(span.express(&dense_to_sparse(&[int(0), int(0), int(1)])).is_none());
    }

    #[test]
    fn commutator_of_units() {
        let a = Matrix::unit(2, 2, 0, 1);
        let b = Matrix::unit(2, 2, 1, 0);
        let c = a.commutator(&b);
        assert_eq!(c, Matrix::from_fn(2, 2, |i, j| if i != j { int(0) } else if i == 0 { int(1) } else { int(-1) }));
    }
}
