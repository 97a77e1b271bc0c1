//! Dense GF(2) linear algebra on 64-bit word-packed rows.
//!
//! Everything the lattice pipeline needs reduces to rank / row-reduction /
//! nullspace / solving over GF(2): detector derivation is a nullspace of the
//! resource-graph adjacency, correlation surfaces are nullspace elements
//! outside the detector row span, and the surface-repair oracle solves a
//! linear system. Matrices here are dense; the large instances stay feasible
//! because callers restrict to local windows before calling in.

/// Packed bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec[{}]{{", self.len)?;
        for (k, i) in self.iter_ones().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl BitVec {
    /// All-zero vector of the given length.
    pub fn zero(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Vector with ones exactly at `indices`.
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zero(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.len
    }

    /// True if the vector has no coordinates.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Reads bit `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Writes bit `i`.
    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// Flips bit `i`.
    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Adds (XORs) `other` into `self`.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Population count.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True if all bits are zero.
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Parity of `⟨self, other⟩` (popcount of the AND).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Iterates indices of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Collects set-bit indices.
    pub fn ones(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }
}

/// Dense GF(2) matrix stored row-major as [`BitVec`]s.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    ncols: usize,
}

impl BitMatrix {
    /// Zero matrix.
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: vec![BitVec::zero(ncols); nrows],
            ncols,
        }
    }

    /// Matrix with no rows.
    pub fn empty(ncols: usize) -> Self {
        Self { rows: Vec::new(), ncols }
    }

    /// Builds from explicit rows (all must share the column count).
    pub fn from_rows(rows: Vec<BitVec>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Self { rows, ncols }
    }

    /// Appends a row.
    pub fn push_row(&mut self, row: BitVec) {
        debug_assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Row accessor.
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    /// Mutable row accessor.
    pub fn row_mut(&mut self, i: usize) -> &mut BitVec {
        &mut self.rows[i]
    }

    /// Entry accessor.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    /// Matrix-vector product `A·x`.
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        debug_assert_eq!(x.len(), self.ncols);
        let mut out = BitVec::zero(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    /// In-place reduction to reduced row-echelon form.
    ///
    /// Returns the pivot column of each nonzero row, in order; zero rows sink
    /// to the bottom.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(pr) = (r..self.rows.len()).find(|&i| self.rows[i].get(c)) else {
                continue;
            };
            self.rows.swap(r, pr);
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        pivots
    }

    /// Rank (leaves `self` untouched).
    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Basis of the right nullspace `{x : A·x = 0}`.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let mut reduced = self.clone();
        let pivots = reduced.row_reduce();
        let pivot_of_col: std::collections::HashMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            let mut v = BitVec::zero(self.ncols);
            v.set(free, true);
            for (&c, &r) in &pivot_of_col {
                if reduced.rows[r].get(free) {
                    v.set(c, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A·x = b`, if the system is consistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        debug_assert_eq!(b.len(), self.rows.len());
        // Augment with b as an extra column and reduce.
        let n = self.ncols;
        let mut aug = BitMatrix::zero(self.rows.len(), n + 1);
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                aug.rows[i].set(j, true);
            }
            if b.get(i) {
                aug.rows[i].set(n, true);
            }
        }
        let pivots = aug.row_reduce();
        if pivots.contains(&n) {
            return None; // Row [0 … 0 | 1]: inconsistent.
        }
        let mut x = BitVec::zero(n);
        for (r, &c) in pivots.iter().enumerate() {
            if aug.rows[r].get(n) {
                x.set(c, true);
            }
        }
        Some(x)
    }
}

/// Incremental row-span membership tester.
///
/// Rows are inserted one at a time and kept in echelon form, so span queries
/// and insertions are both O(rank · words) — the shape every "is this vector
/// a detector combination?" question takes.
#[derive(Clone, Debug, Default)]
pub struct RowBasis {
    /// Echelon rows, each with a distinct leading column, sorted by it.
    rows: Vec<(usize, BitVec)>,
}

impl RowBasis {
    /// Empty basis.
    pub fn new() -> Self {
        Self::default()
    }

    /// Current rank.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residual.
    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        for (lead, row) in &self.rows {
            if v.get(*lead) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// True if `v` lies in the current row span.
    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let residual = self.reduce(v);
        match residual.first_one() {
            None => false,
            Some(lead) => {
                let pos = self
                    .rows
                    .binary_search_by_key(&lead, |(l, _)| *l)
                    .unwrap_err();
                self.rows.insert(pos, (lead, residual));
                true
            }
        }
    }
}
