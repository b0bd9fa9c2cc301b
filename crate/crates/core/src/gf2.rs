//! Dense linear algebra over GF(2).
//!
//! Vectors are packed into `u64` words, least significant bit first. All
//! elimination routines pick the first nonzero pivot in column order, so
//! reduced forms and pivot lists are reproducible bit for bit.

use std::fmt;

use crate::error::{shape_mismatch, Result};

const WORD: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; word_count(len)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Vector of length `len` with ones exactly at `indices`.
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    /// Builds a vector from `0`/`1` entries; any nonzero byte counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// In-place addition over GF(2).
    ///
    /// # Panics
    /// Panics if lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor_assign: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Number of positions where both vectors are 1.
    pub fn overlap(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "overlap: length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Standard dot product mod 2.
    pub fn dot(&self, other: &Self) -> bool {
        self.overlap(other) % 2 == 1
    }

    /// Indices of the 1-bits in increasing order.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * WORD + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * WORD + w.trailing_zeros() as usize)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.support() {
            out.set(i, true);
        }
        for i in other.support() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, ")")
    }
}

/// A binary symplectic vector `(x | z)` standing for the Pauli operator
/// `X(x) Z(z)` on `n` qubits, phase dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticVector {
    pub x_part: BitVector,
    pub z_part: BitVector,
}

impl SymplecticVector {
    pub fn new(x_part: BitVector, z_part: BitVector) -> Result<Self> {
        if x_part.len() != z_part.len() {
            return Err(shape_mismatch(
                "SymplecticVector::new",
                x_part.len(),
                z_part.len(),
            ));
        }
        Ok(Self { x_part, z_part })
    }

    pub fn n(&self) -> usize {
        self.x_part.len()
    }
}

/// Twisted (symplectic) inner product `a·b' + b·a'` of `(a|b)` and `(a'|b')`.
/// Zero exactly when the corresponding Pauli operators commute.
pub fn twisted_inner_product(u: &SymplecticVector, v: &SymplecticVector) -> Result<bool> {
    if u.n() != v.n() {
        return Err(shape_mismatch("twisted_inner_product", u.n(), v.n()));
    }
    Ok(u.x_part.dot(&v.z_part) ^ u.z_part.dot(&v.x_part))
}

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n_cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_cols,
            rows: vec![BitVector::zeros(n_cols); n_rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks `rows`; every row must have length `n_cols`.
    pub fn from_rows(n_cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(shape_mismatch("BitMatrix::from_rows", n_cols, bad.len()));
        }
        Ok(Self { n_cols, rows })
    }

    /// Builds a matrix from rows of `0`/`1` bytes.
    ///
    /// # Panics
    /// Panics if the rows are ragged.
    pub fn from_bit_rows<R: AsRef<[u8]>>(n_cols: usize, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                let r = r.as_ref();
                assert_eq!(r.len(), n_cols, "ragged row");
                BitVector::from_bits(r)
            })
            .collect();
        Self { n_cols, rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_rows(), self.n_cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut c = BitVector::zeros(self.n_rows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    /// Total number of 1 entries.
    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(BitVector::weight).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols, self.n_rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.support() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = BitVector::zeros(cols.len());
                for (k, &j) in cols.iter().enumerate() {
                    if r.get(j) {
                        out.set(k, true);
                    }
                }
                out
            })
            .collect();
        Self {
            n_cols: cols.len(),
            rows,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self {
            n_cols: self.n_cols,
            rows: rows.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.n_rows() != other.n_rows() {
            return Err(shape_mismatch("hstack", self.n_rows(), other.n_rows()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect();
        Ok(Self {
            n_cols: self.n_cols + other.n_cols,
            rows,
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_cols {
            return Err(shape_mismatch("vstack", self.n_cols, other.n_cols));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self {
            n_cols: self.n_cols,
            rows,
        })
    }

    /// Matrix-vector product `M·v^t`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.n_cols {
            return Err(shape_mismatch("mul_vec", self.n_cols, v.len()));
        }
        let mut out = BitVector::zeros(self.n_rows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `A·B^t` over GF(2); shape `A.n_rows × B.n_rows`.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_cols {
            return Err(shape_mismatch("mul_transpose", self.n_cols, other.n_cols));
        }
        let mut out = Self::zeros(self.n_rows(), other.n_rows());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b) {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(shape_mismatch(
                "add",
                format!("{:?}", self.shape()),
                format!("{:?}", other.shape()),
            ));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.xor(b))
            .collect();
        Ok(Self {
            n_cols: self.n_cols,
            rows,
        })
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    /// The result keeps the input shape; zero rows sink to the bottom.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.n_cols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i].get(col)) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        // forward elimination only; no need to clear above the pivot
        let mut rows = self.rows.clone();
        let mut r = 0;
        for col in 0..self.n_cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            for row in tail.iter_mut().filter(|row| row.get(col)) {
                row.xor_assign(&head[r]);
            }
            r += 1;
        }
        r
    }

    /// Basis of `{v : M·v^t = 0}`, one basis vector per row.
    pub fn nullspace_basis(&self) -> Self {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.n_cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.n_cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = BitVector::zeros(self.n_cols);
                v.set(free, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if reduced.get(r, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Self {
            n_cols: self.n_cols,
            rows,
        }
    }

    pub fn row_space_contains(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.n_cols {
            return Err(shape_mismatch("row_space_contains", self.n_cols, v.len()));
        }
        Ok(RowSpace::new(self).contains(v))
    }

    /// True iff `M·M^t = 0`.
    pub fn is_self_orthogonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, a)| self.rows[i..].iter().all(|b| !a.dot(b)))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.n_rows(), self.n_cols)?;
        for r in &self.rows {
            write!(f, "  ")?;
            for j in 0..self.n_cols {
                write!(f, "{}", r.get(j) as u8)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Row space of a matrix, kept in reduced echelon form for repeated
/// membership queries.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: Vec<BitVector>,
    pivots: Vec<usize>,
    n_cols: usize,
}

impl RowSpace {
    pub fn new(m: &BitMatrix) -> Self {
        let (reduced, pivots) = m.rref();
        let basis = reduced.rows[..pivots.len()].to_vec();
        Self {
            basis,
            pivots,
            n_cols: m.n_cols,
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in
    /// the row space.
    pub fn reduce(&self, v: &mut BitVector) {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(b);
            }
        }
    }

    /// # Panics
    /// Panics if `v` has the wrong length.
    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.n_cols, "RowSpace::contains: length mismatch");
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }
}
