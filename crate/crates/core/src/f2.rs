//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed 64 bits to a word, least significant bit first. A
//! [`Subspace`] always stores its basis in reduced row-echelon form with
//! strictly increasing pivot columns, where the pivot of a row is its lowest
//! set column. Two subspaces are equal as sets exactly when their bases are
//! bitwise identical, so `==` on [`Subspace`] is set equality.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over the two-element field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Sum of the unit vectors at `indices`; repeated indices cancel.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set position, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from_word(0)
    }

    fn first_one_from_word(&self, start: usize) -> Option<usize> {
        self.words[start..]
            .iter()
            .position(|&w| w != 0)
            .map(|k| (start + k) * WORD_BITS + self.words[start + k].trailing_zeros() as usize)
    }

    /// Iterates over the set positions in increasing order.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// XOR restricted to words `start..`; callers guarantee `other` is zero
    /// below that word.
    #[inline]
    fn xor_from(&mut self, other: &BitVec, start: usize) {
        for (a, b) in self.words[start..].iter_mut().zip(&other.words[start..]) {
            *a ^= *b;
        }
    }

    /// The standard dot product, valued in the two-element field.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let parity: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        parity & 1 == 1
    }

    /// Kronecker product `self ⊗ other` with `self` as the slow index.
    pub fn tensor(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len * other.len);
        for a in self.ones() {
            for b in other.ones() {
                out.set(a * other.len + b, true);
            }
        }
        out
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

/// Iterator over the set bits of a [`BitVec`].
pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * WORD_BITS + bit)
    }
}

/// A dense matrix over the two-element field, row-major, each row padded to
/// whole words with zero bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    ///
    /// Panics if the rows disagree on length.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {r} has the wrong length");
            m.bits[r * m.stride..(r + 1) * m.stride].copy_from_slice(&row.words);
        }
        m
    }

    /// Builds a matrix from 0/1 rows; convenient for small literals.
    pub fn from_bit_rows(cols: usize, rows: &[&[u8]]) -> Self {
        let rows: Vec<BitVec> = rows.iter().map(|r| BitVec::from_bits(r)).collect();
        Self::from_rows(cols, &rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.bits[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let word = &mut self.bits[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.bits[r * self.stride..(r + 1) * self.stride].to_vec(),
        }
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = BitVec> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let row = &self.bits[r * self.stride..(r + 1) * self.stride];
            let parity: u32 = row.iter().zip(&v.words).map(|(a, b)| (a & b).count_ones()).sum();
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.cols, self.row_vecs())
    }

    /// `{ c : c · self = 0 }`, the dependencies among the rows.
    pub fn left_kernel(&self) -> Subspace {
        kernel(&self.transpose())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Incremental reduced row-echelon builder.
///
/// Rows are kept fully reduced against each other at all times, so reducing
/// an incoming vector is a single left-to-right pass over its pivot bits.
#[derive(Clone)]
pub(crate) struct Echelon {
    cols: usize,
    rows: Vec<BitVec>,
    row_of_pivot: Vec<usize>,
    pivot_mask: BitVec,
}

const NO_ROW: usize = usize::MAX;

impl Echelon {
    pub(crate) fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            row_of_pivot: vec![NO_ROW; cols],
            pivot_mask: BitVec::zeros(cols),
        }
    }

    /// Starts from a basis that is already canonical.
    pub(crate) fn from_subspace(s: &Subspace) -> Self {
        let mut e = Echelon::new(s.ambient_dim());
        for (row, &p) in s.basis.row_vecs().zip(&s.pivots) {
            e.row_of_pivot[p] = e.rows.len();
            e.pivot_mask.set(p, true);
            e.rows.push(row);
        }
        e
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reduce(&self, v: &mut BitVec) {
        for k in 0..v.words.len() {
            let mut hits = v.words[k] & self.pivot_mask.words[k];
            while hits != 0 {
                let col = k * WORD_BITS + hits.trailing_zeros() as usize;
                v.xor_from(&self.rows[self.row_of_pivot[col]], k);
                hits &= hits - 1;
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(p) = v.first_one() else {
            return false;
        };
        let word = p / WORD_BITS;
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_from(&v, word);
            }
        }
        self.row_of_pivot[p] = self.rows.len();
        self.pivot_mask.set(p, true);
        self.rows.push(v);
        true
    }

    pub(crate) fn finish(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_unstable_by_key(|r| r.first_one());
        let pivots = rows.iter().map(|r| r.first_one().unwrap_or(0)).collect();
        Subspace {
            ambient: self.cols,
            basis: BitMatrix::from_rows(self.cols, &rows),
            pivots,
        }
    }
}

/// Rank of the span of `rows`, using plain (non-reduced) elimination.
pub fn rank_of_rows<I: IntoIterator<Item = BitVec>>(cols: usize, rows: I) -> usize {
    let mut basis: Vec<BitVec> = Vec::new();
    let mut row_of_pivot = vec![NO_ROW; cols];
    for mut v in rows {
        debug_assert_eq!(v.len(), cols);
        let mut word = 0;
        while let Some(p) = v.first_one_from_word(word) {
            word = p / WORD_BITS;
            match row_of_pivot[p] {
                NO_ROW => {
                    row_of_pivot[p] = basis.len();
                    basis.push(v);
                    break;
                }
                r => v.xor_from(&basis[r], word),
            }
        }
    }
    basis.len()
}

/// A linear subspace of `F_2^n` with its canonical basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: BitMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: BitMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of arbitrary vectors, canonicalized.
    pub fn span<I: IntoIterator<Item = BitVec>>(ambient: usize, vectors: I) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            e.insert(v);
        }
        e.finish()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical basis as a matrix (one basis vector per row).
    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = BitVec> + '_ {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates that are not pivots; they index a basis of the quotient
    /// `F_2^n / self`.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// The canonical representative of `v` modulo this subspace: the unique
    /// vector in `v + self` that vanishes on every pivot column.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.clone();
        for (row, &p) in self.basis.row_vecs().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(&row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.ambient && self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis_vectors().all(|v| other.contains(&v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut e = Echelon::from_subspace(self);
        for v in other.basis_vectors() {
            e.insert(v);
        }
        Ok(e.finish())
    }

    /// `self ∩ other`, computed as the vectors of `self` on which every
    /// functional of `other`'s annihilator vanishes.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let annihilator = other.perp();
        Ok(self.restrict_to_zeros(&annihilator))
    }

    /// The subspace of `self` killed by every row of `functionals`.
    pub fn restrict_to_zeros(&self, functionals: &Subspace) -> Subspace {
        assert_eq!(functionals.ambient, self.ambient);
        if functionals.dim() == 0 {
            return self.clone();
        }
        let basis: Vec<BitVec> = self.basis_vectors().collect();
        // pairing[t][b] = <functional t, basis vector b>
        let mut pairing = BitMatrix::zeros(functionals.dim(), basis.len());
        for (t, f) in functionals.basis_vectors().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                if f.dot(v) {
                    pairing.set(t, b, true);
                }
            }
        }
        let combos = kernel(&pairing);
        Subspace::span(
            self.ambient,
            combos.basis_vectors().map(|c| {
                let mut v = BitVec::zeros(self.ambient);
                for b in c.ones() {
                    v.xor_assign(&basis[b]);
                }
                v
            }),
        )
    }

    /// The annihilator under the coordinate dot product.
    pub fn perp(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// `F^left ⊗ self ⊗ F^right` inside `F^(left · n · right)`, with the
    /// leftmost factor as the slowest index. The result is canonical without
    /// further elimination.
    pub fn embed(&self, left: usize, right: usize) -> Subspace {
        let n = self.ambient;
        let ambient = left * n * right;
        let mut rows = Vec::with_capacity(left * self.dim() * right);
        let mut pivots = Vec::with_capacity(rows.capacity());
        for u in 0..left {
            for (row, &p) in self.basis.row_vecs().zip(&self.pivots) {
                for w in 0..right {
                    let mut v = BitVec::zeros(ambient);
                    for c in row.ones() {
                        v.set((u * n + c) * right + w, true);
                    }
                    pivots.push((u * n + p) * right + w);
                    rows.push(v);
                }
            }
        }
        Subspace {
            ambient,
            basis: BitMatrix::from_rows(ambient, &rows),
            pivots,
        }
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        f.debug_list().entries(self.basis_vectors()).finish()
    }
}

/// Canonical basis of the row space of `m`.
pub fn echelonize(m: &BitMatrix) -> Subspace {
    Subspace::span(m.cols(), m.row_vecs())
}

/// `{ v : m · v = 0 }`.
pub fn kernel(m: &BitMatrix) -> Subspace {
    let rref = echelonize(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in rref.pivots() {
        is_pivot[p] = true;
    }
    let rows: Vec<BitVec> = rref.basis_vectors().collect();
    let mut e = Echelon::new(m.cols());
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = BitVec::unit(m.cols(), free);
        for (row, &p) in rows.iter().zip(rref.pivots()) {
            if row.get(free) {
                v.set(p, true);
            }
        }
        e.insert(v);
    }
    e.finish()
}

/// Free-function form of [`Subspace::intersect`].
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

/// Free-function form of [`Subspace::perp`].
pub fn perp(s: &Subspace) -> Subspace {
    s.perp()
}
