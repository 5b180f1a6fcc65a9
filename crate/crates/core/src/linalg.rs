//! Exact sparse linear algebra: incremental fully reduced row echelon form,
//! span-membership certificates and nullspaces.
//!
//! Column indices are opaque to this module; callers intern their own basis
//! labels. The leading entry of a row is its smallest column index, so a
//! caller that wants pivots to land on particular labels should give those
//! labels small indices.

use std::collections::BTreeMap;

use crate::scalar::Field;

/// A vector stored as `(column, value)` pairs sorted by column, with no zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVector<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Field> Default for SparseVector<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Field> SparseVector<T> {
    pub fn zero() -> Self {
        SparseVector { entries: Vec::new() }
    }

    pub fn unit(col: usize) -> Self {
        SparseVector { entries: vec![(col, T::one())] }
    }

    /// Builds a vector from arbitrary pairs; repeated columns are summed and
    /// zeros dropped.
    pub fn from_pairs<I: IntoIterator<Item = (usize, T)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (c, v) in pairs {
            *acc.entry(c).or_insert_with(T::zero) += v;
        }
        SparseVector { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(values: &[T]) -> Self {
        SparseVector {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<T> {
        let mut out = vec![T::zero(); len];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn get(&self, col: usize) -> Option<&T> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn leading(&self) -> Option<(usize, &T)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|(c, _)| *c)
    }

    pub fn scale(&mut self, factor: &T) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v = v.mul_ref(factor);
        }
    }

    pub fn scaled(&self, factor: &T) -> Self {
        let mut out = self.clone();
        out.scale(factor);
        out
    }

    /// `self += factor * other`.
    pub fn axpy(&mut self, factor: &T, other: &Self) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ca, _)), Some((cb, _))) => {
                    if ca < cb {
                        merged.push(a.next().unwrap());
                    } else if cb < ca {
                        let (c, v) = b.next().unwrap();
                        merged.push((*c, factor.mul_ref(v)));
                    } else {
                        let (c, mut va) = a.next().unwrap();
                        let (_, vb) = b.next().unwrap();
                        va.add_mul(factor, vb);
                        if !va.is_zero() {
                            merged.push((c, va));
                        }
                    }
                }
                (Some(_), None) => merged.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (c, v) = b.next().unwrap();
                    merged.push((*c, factor.mul_ref(v)));
                }
                (None, None) => break,
            }
        }
        self.entries = merged;
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&-T::one(), other);
        out
    }

    pub fn dot(&self, other: &Self) -> T {
        let mut acc = T::zero();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (ci, vi) = &self.entries[i];
            let (cj, vj) = &other.entries[j];
            if ci < cj {
                i += 1;
            } else if cj < ci {
                j += 1;
            } else {
                acc.add_mul(vi, vj);
                i += 1;
                j += 1;
            }
        }
        acc
    }
}

/// Coefficients expressing a vector in the rows of a [`SubspaceBasis`],
/// keyed by the pivot column of each row used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<T> {
    pub terms: Vec<(usize, T)>,
}

impl<T: Field> Certificate<T> {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients in pivot order, one per row used.
    pub fn coefficients(&self) -> Vec<T> {
        self.terms.iter().map(|(_, v)| v.clone()).collect()
    }
}

/// A subspace held as a fully reduced row echelon basis.
///
/// Every row has a leading 1 at its pivot column and a zero in every other
/// pivot column.
#[derive(Clone, Debug)]
pub struct SubspaceBasis<T> {
    rows: BTreeMap<usize, SparseVector<T>>,
}

impl<T: Field> Default for SubspaceBasis<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Field> SubspaceBasis<T> {
    pub fn new() -> Self {
        SubspaceBasis { rows: BTreeMap::new() }
    }

    pub fn from_vectors<'a, I>(vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseVector<T>>,
    {
        let mut basis = Self::new();
        for v in vectors {
            basis.insert(v.clone());
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVector<T>> {
        self.rows.values()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVector<T>> {
        self.rows.get(&pivot)
    }

    /// Splits `v` into (residual, certificate) with
    /// `v = residual + sum(coef * row)`; the residual has no pivot entries.
    pub fn reduce(&self, v: &SparseVector<T>) -> (SparseVector<T>, Certificate<T>) {
        let mut terms = Vec::new();
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (c, val) in v.entries() {
            if self.rows.contains_key(c) {
                terms.push((*c, val.clone()));
            } else {
                acc.insert(*c, val.clone());
            }
        }
        for (p, coef) in &terms {
            let row = &self.rows[p];
            for (c, x) in row.entries() {
                if c == p {
                    continue;
                }
                let slot = acc.entry(*c).or_insert_with(T::zero);
                *slot -= coef.mul_ref(x);
            }
        }
        let residual = SparseVector {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        };
        (residual, Certificate { terms })
    }

    /// Adds `v` to the span; returns `true` iff the rank grew.
    pub fn insert(&mut self, v: SparseVector<T>) -> bool {
        let (mut res, _) = self.reduce(&v);
        let Some((q, lead)) = res.leading() else {
            return false;
        };
        let inv = T::one() / lead.clone();
        res.scale(&inv);
        for row in self.rows.values_mut() {
            if let Some(x) = row.get(q).cloned() {
                row.axpy(&-x, &res);
            }
        }
        self.rows.insert(q, res);
        true
    }

    /// Consuming form of [`insert`](Self::insert).
    pub fn insert_and_reduce(mut self, v: SparseVector<T>) -> Self {
        self.insert(v);
        self
    }

    pub fn contains(&self, v: &SparseVector<T>) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coefficients expressing `v` in the stored rows, or `None` when `v` is
    /// outside the span.
    pub fn membership_certificate(&self, v: &SparseVector<T>) -> Option<Certificate<T>> {
        let (res, cert) = self.reduce(v);
        res.is_zero().then_some(cert)
    }

    /// Expands a certificate back into a vector.
    pub fn expand(&self, cert: &Certificate<T>) -> SparseVector<T> {
        let mut out = SparseVector::zero();
        for (p, coef) in &cert.terms {
            if let Some(row) = self.rows.get(p) {
                out.axpy(coef, row);
            }
        }
        out
    }
}

/// Rank of a list of rows.
pub fn rank<T: Field>(rows: &[SparseVector<T>]) -> usize {
    SubspaceBasis::from_vectors(rows).rank()
}

/// Basis of `{x : row . x = 0 for every row}` in `num_unknowns` variables.
pub fn nullspace<T: Field>(rows: &[SparseVector<T>], num_unknowns: usize) -> SubspaceBasis<T> {
    let reduced = SubspaceBasis::from_vectors(rows);
    debug_assert!(rows.iter().all(|r| r.max_col().map_or(true, |c| c < num_unknowns)));
    let mut out = SubspaceBasis::new();
    for free in (0..num_unknowns).filter(|c| !reduced.is_pivot(*c)) {
        let mut pairs = vec![(free, T::one())];
        for (p, row) in &reduced.rows {
            if let Some(x) = row.get(free) {
                pairs.push((*p, -x.clone()));
            }
        }
        out.insert(SparseVector::from_pairs(pairs));
    }
    out
}

/// Small dense matrix, row-major. Used for actions on graded pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx].add_mul(a, other.get(k, j));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, f: &T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.mul_ref(f)).collect() }
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i).clone();
        }
        t
    }

    /// Entries as a sparse vector, for rank computations over families.
    pub fn flatten(&self) -> SparseVector<T> {
        SparseVector::from_dense(&self.data)
    }
}
