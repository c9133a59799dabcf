//! Sparse exact linear algebra over [`Scalar`]s.
//!
//! Every homology dimension in the crate is reduced to [`rank`] and
//! [`homology_dim`] on matrices assembled here. Elimination is column-wise with
//! smallest-index pivots, so results are deterministic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A sparse vector: strictly increasing indices, nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            let slot = map.entry(i).or_default();
            *slot += &v;
        }
        Self::from_map(map)
    }

    pub fn from_map(map: BTreeMap<usize, Scalar>) -> Self {
        Self {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: alloc::vec![(i, Scalar::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn lead(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn scale(&mut self, a: &Scalar) {
        if a.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v = &*v * a;
        }
    }

    /// `self += a * other`
    pub fn axpy(&mut self, a: &Scalar, other: &SparseVec) {
        if a.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut lhs = core::mem::take(&mut self.entries).into_iter().peekable();
        let mut rhs = other.entries.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(lhs.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, w) = rhs.next().unwrap();
                    out.push((*j, a * w));
                }
                (Some(_), Some(_)) => {
                    let (i, v) = lhs.next().unwrap();
                    let (_, w) = rhs.next().unwrap();
                    let s = &v + &(a * w);
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(lhs.next().unwrap()),
                (None, Some(_)) => {
                    let (j, w) = rhs.next().unwrap();
                    out.push((*j, a * w));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn to_field(&self, field: Field) -> Result<SparseVec> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (i, v) in &self.entries {
            let w = field.embed(v)?;
            if !w.is_zero() {
                entries.push((*i, w));
            }
        }
        Ok(SparseVec { entries })
    }
}

/// Sparse matrix with ordered positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, Scalar::integer(v));
            }
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zero(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter() {
                assert!(*r < rows, "column entry out of range");
                m.entries.insert((*r, c), v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "position out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, &cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn column_vectors(&self) -> Vec<SparseVec> {
        let mut cols: Vec<Vec<(usize, Scalar)>> = alloc::vec![Vec::new(); self.cols];
        for (&(r, c), v) in &self.entries {
            cols[c].push((r, v.clone()));
        }
        // BTreeMap order is row-major, so each column list is already sorted by row.
        cols.into_iter()
            .map(|entries| SparseVec { entries })
            .collect()
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = alloc::vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows.into_iter()
            .map(|entries| SparseVec { entries })
            .collect()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        let rows = self.row_vectors();
        for (r, row) in rows.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (c, a) in row.iter() {
                if let Some(x) = v.get(*c) {
                    acc += &(a * x);
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        SparseVec::from_map(out)
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let rhs_rows = rhs.row_vectors();
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for (r, row) in self.row_vectors().iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, a) in row.iter() {
                acc.axpy(a, &rhs_rows[*k]);
            }
            for (c, v) in acc.entries {
                out.entries.insert((r, c), v);
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        for (&(r, c), v) in &rhs.entries {
            out.add_to(r, c, v);
        }
        Ok(out)
    }

    pub fn scaled(&self, a: &Scalar) -> Matrix {
        let mut out = Matrix::zero(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, v * a);
        }
        out
    }

    pub fn to_field(&self, field: Field) -> Result<Matrix> {
        let mut out = Matrix::zero(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, field.embed(v)?);
        }
        Ok(out)
    }
}

/// Incremental echelon basis of a subspace.
///
/// Each stored vector has leading coefficient 1 at a distinct index.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the stored basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut done = SparseVec::new();
        // Entries whose index has no pivot are moved aside so the loop always
        // inspects the smallest remaining index.
        while let Some((lead, coeff)) = v.lead().cloned() {
            if let Some(p) = self.pivots.get(&lead) {
                v.axpy(&-coeff, p);
            } else {
                let rest = SparseVec {
                    entries: v.entries.split_off(1),
                };
                done.entries.push(v.entries.pop().unwrap());
                v = rest;
            }
        }
        done
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        match r.lead().cloned() {
            None => false,
            Some((lead, c)) => {
                r.scale(&c.inv().expect("nonzero lead"));
                self.pivots.insert(lead, r);
                true
            }
        }
    }
}

/// Ordered list of labels with reverse lookup, used to assemble matrices of
/// maps given on basis elements.
#[derive(Clone, Debug)]
pub struct Basis<T> {
    items: Vec<T>,
    index: BTreeMap<T, usize>,
}

impl<T: Ord + Clone> Basis<T> {
    /// Duplicate labels keep their first position.
    pub fn new(items: impl IntoIterator<Item = T>) -> Self {
        let mut b = Basis {
            items: Vec::new(),
            index: BTreeMap::new(),
        };
        for t in items {
            if !b.index.contains_key(&t) {
                b.index.insert(t.clone(), b.items.len());
                b.items.push(t);
            }
        }
        b
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[T] {
        &self.items
    }

    pub fn index_of(&self, t: &T) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinates of a linear combination, or `None` if a label is missing.
    pub fn coordinates<'a>(
        &self,
        combo: impl IntoIterator<Item = (&'a T, &'a Scalar)>,
    ) -> Option<SparseVec>
    where
        T: 'a,
    {
        let mut pairs = Vec::new();
        for (t, c) in combo {
            pairs.push((self.index_of(t)?, c.clone()));
        }
        Some(SparseVec::from_pairs(pairs))
    }
}

/// Matrix of the linear map `f` from `from` to `to`.
///
/// A term whose label is not in `to` is passed to `stray`, which either
/// accepts the truncation (`Ok`) or rejects it.
pub fn matrix_of<T: Ord + Clone>(
    from: &Basis<T>,
    to: &Basis<T>,
    mut f: impl FnMut(&T) -> BTreeMap<T, Scalar>,
    mut stray: impl FnMut(&T) -> Result<()>,
) -> Result<Matrix> {
    let mut m = Matrix::zero(to.len(), from.len());
    for (j, t) in from.items().iter().enumerate() {
        for (u, c) in f(t) {
            match to.index_of(&u) {
                Some(i) => m.add_to(i, j, &c),
                None => stray(&u)?,
            }
        }
    }
    Ok(m)
}

/// Rank over the field of the entries.
pub fn rank(m: &Matrix) -> usize {
    // Eliminate along the shorter side.
    let vectors = if m.rows() < m.cols() {
        m.row_vectors()
    } else {
        m.column_vectors()
    };
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// A basis of the kernel of `m`, one vector per free column.
pub fn kernel_basis(m: &Matrix) -> Vec<SparseVec> {
    // Column elimination tracking the combination of original columns.
    let mut pivots: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (j, col) in m.column_vectors().into_iter().enumerate() {
        let mut v = col;
        let mut combo = SparseVec::unit(j);
        loop {
            let Some((lead, coeff)) = v.lead().cloned() else {
                kernel.push(combo);
                break;
            };
            match pivots.get(&lead) {
                Some((pv, pc)) => {
                    let a = -coeff;
                    v.axpy(&a, pv);
                    combo.axpy(&a, pc);
                }
                None => {
                    let inv = coeff.inv().expect("nonzero lead");
                    v.scale(&inv);
                    combo.scale(&inv);
                    pivots.insert(lead, (v, combo));
                    break;
                }
            }
        }
    }
    kernel
}

/// `dim ker(d_out) - rank(d_in)` for a composable pair with `d_out * d_in = 0`.
pub fn homology_dim(d_in: &Matrix, d_out: &Matrix) -> Result<usize> {
    let composite = d_out.mul(d_in)?;
    if !composite.is_zero() {
        return Err(Error::CompositionNonzero);
    }
    Ok(homology_dim_unchecked(d_in, d_out))
}

/// Same as [`homology_dim`] without verifying `d_out * d_in = 0`.
pub fn homology_dim_unchecked(d_in: &Matrix, d_out: &Matrix) -> usize {
    let kernel = d_out.cols() - rank(d_out);
    kernel - rank(d_in)
}
