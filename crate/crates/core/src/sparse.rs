//! Dimension-checked sparse integer matrices in compressed row form.
//!
//! Values live in the `(+, *)` counting semiring over `i64`; explicit zeros
//! are dropped eagerly at every operation boundary so `nnz` and equality
//! filters have an unambiguous meaning. Column indices are strictly
//! increasing within each row.

use crate::error::{Error, Result};

/// Sparse matrix with 64-bit signed integer values, stored row-major with
/// sorted column indices per row and no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<i64>,
}

/// Dense integer vector; pairs with the matrix dimension it was reduced from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseVector {
    values: Vec<i64>,
}

impl DenseVector {
    pub fn new(values: Vec<i64>) -> Self {
        DenseVector { values }
    }

    pub fn zeros(len: usize) -> Self {
        DenseVector {
            values: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.values[i]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }
}

impl SparseMatrix {
    /// Matrix with the given shape and no stored entries.
    pub fn new_empty(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            row_offsets: vec![0; nrows + 1],
            col_indices: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1; n],
        }
    }

    /// Builds a matrix from coordinate triplets. Duplicate coordinates are
    /// summed; entries that are (or sum to) zero are dropped.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut entries: Vec<(usize, usize, i64)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= nrows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    bound: nrows,
                });
            }
            if c >= ncols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    bound: ncols,
                });
            }
            if v != 0 {
                entries.push((r, c, v));
            }
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));

        let mut row_offsets = vec![0usize; nrows + 1];
        let mut col_indices = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        let mut i = 0;
        while i < entries.len() {
            let (r, c, mut v) = entries[i];
            i += 1;
            while i < entries.len() && entries[i].0 == r && entries[i].1 == c {
                v += entries[i].2;
                i += 1;
            }
            if v != 0 {
                row_offsets[r + 1] += 1;
                col_indices.push(c);
                values.push(v);
            }
        }
        for r in 0..nrows {
            row_offsets[r + 1] += row_offsets[r];
        }
        Ok(SparseMatrix {
            nrows,
            ncols,
            row_offsets,
            col_indices,
            values,
        })
    }

    /// Assembles a matrix from pre-built CSR arrays. The caller guarantees
    /// the structural invariants; they are checked in debug builds.
    pub(crate) fn from_raw_parts(
        nrows: usize,
        ncols: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<i64>,
    ) -> Self {
        let m = SparseMatrix {
            nrows,
            ncols,
            row_offsets,
            col_indices,
            values,
        };
        debug_assert!(m.validate().is_ok());
        m
    }

    /// Diagonal matrix from a vector; zero components are not stored.
    pub fn diag_from_vector(v: &DenseVector) -> Self {
        let n = v.len();
        let mut row_offsets = Vec::with_capacity(n + 1);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        row_offsets.push(0);
        for (i, &x) in v.values().iter().enumerate() {
            if x != 0 {
                col_indices.push(i);
                values.push(x);
            }
            row_offsets.push(col_indices.len());
        }
        SparseMatrix {
            nrows: n,
            ncols: n,
            row_offsets,
            col_indices,
            values,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    /// Number of stored (necessarily nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Heap bytes held by the compressed arrays; a lower bound on the memory
    /// this matrix costs.
    pub fn heap_size_bytes(&self) -> u64 {
        let idx = std::mem::size_of::<usize>();
        let val = std::mem::size_of::<i64>();
        (self.row_offsets.len() * idx + self.col_indices.len() * idx + self.values.len() * val)
            as u64
    }

    /// Column indices and values of row `r`.
    pub fn row(&self, r: usize) -> (&[usize], &[i64]) {
        let lo = self.row_offsets[r];
        let hi = self.row_offsets[r + 1];
        (&self.col_indices[lo..hi], &self.values[lo..hi])
    }

    pub fn row_nnz(&self, r: usize) -> usize {
        self.row_offsets[r + 1] - self.row_offsets[r]
    }

    /// Stored value at `(r, c)`, or 0 when absent.
    pub fn get(&self, r: usize, c: usize) -> i64 {
        let (cols, vals) = self.row(r);
        match cols.binary_search(&c) {
            Ok(i) => vals[i],
            Err(_) => 0,
        }
    }

    /// Iterates stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..self.nrows).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    /// Structural validator: offsets well-formed, columns strictly increasing
    /// and in range per row, no stored zeros.
    pub fn validate(&self) -> Result<()> {
        if self.row_offsets.len() != self.nrows + 1 {
            return Err(Error::CorruptMatrix(format!(
                "offset array has length {}, expected {}",
                self.row_offsets.len(),
                self.nrows + 1
            )));
        }
        if self.row_offsets[0] != 0 || self.row_offsets[self.nrows] != self.col_indices.len() {
            return Err(Error::CorruptMatrix("offset bounds are wrong".into()));
        }
        if self.col_indices.len() != self.values.len() {
            return Err(Error::CorruptMatrix(
                "column and value arrays differ in length".into(),
            ));
        }
        for r in 0..self.nrows {
            if self.row_offsets[r] > self.row_offsets[r + 1] {
                return Err(Error::CorruptMatrix(format!("offsets decrease at row {r}")));
            }
            let (cols, vals) = self.row(r);
            for (i, (&c, &v)) in cols.iter().zip(vals).enumerate() {
                if c >= self.ncols {
                    return Err(Error::CorruptMatrix(format!(
                        "column {c} out of range in row {r}"
                    )));
                }
                if i > 0 && cols[i - 1] >= c {
                    return Err(Error::CorruptMatrix(format!(
                        "columns not strictly increasing in row {r}"
                    )));
                }
                if v == 0 {
                    return Err(Error::CorruptMatrix(format!("stored zero at ({r}, {c})")));
                }
            }
        }
        Ok(())
    }

    /// Integer matrix product over the counting semiring.
    ///
    /// Rows of the result are produced with a gather-scatter sparse
    /// accumulator; output column indices are sorted and zeros (including
    /// cancellations) are dropped.
    pub fn spgemm(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols != other.nrows {
            return Err(Error::ShapeMismatch {
                op: "spgemm",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut acc = vec![0i64; other.ncols];
        // stamp[j] == current row marks acc[j] as live; avoids clearing acc
        // between rows.
        let mut stamp = vec![usize::MAX; other.ncols];
        let mut touched: Vec<usize> = Vec::new();

        let mut row_offsets = Vec::with_capacity(self.nrows + 1);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        row_offsets.push(0);

        for i in 0..self.nrows {
            touched.clear();
            let (a_cols, a_vals) = self.row(i);
            for (&k, &av) in a_cols.iter().zip(a_vals) {
                let (b_cols, b_vals) = other.row(k);
                for (&j, &bv) in b_cols.iter().zip(b_vals) {
                    if stamp[j] != i {
                        stamp[j] = i;
                        acc[j] = 0;
                        touched.push(j);
                    }
                    acc[j] += av * bv;
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                if acc[j] != 0 {
                    col_indices.push(j);
                    values.push(acc[j]);
                }
            }
            row_offsets.push(col_indices.len());
        }
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            row_offsets,
            col_indices,
            values,
        })
    }

    /// Element-wise product; sparsity is the intersection of both patterns.
    pub fn hadamard(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op: "hadamard",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut row_offsets = Vec::with_capacity(self.nrows + 1);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        row_offsets.push(0);
        for r in 0..self.nrows {
            let (a_cols, a_vals) = self.row(r);
            let (b_cols, b_vals) = other.row(r);
            let (mut i, mut j) = (0, 0);
            while i < a_cols.len() && j < b_cols.len() {
                match a_cols[i].cmp(&b_cols[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let v = a_vals[i] * b_vals[j];
                        if v != 0 {
                            col_indices.push(a_cols[i]);
                            values.push(v);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
            row_offsets.push(col_indices.len());
        }
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            row_offsets,
            col_indices,
            values,
        })
    }

    fn combine(&self, other: &SparseMatrix, op: &'static str, sign: i64) -> Result<SparseMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut row_offsets = Vec::with_capacity(self.nrows + 1);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        row_offsets.push(0);
        for r in 0..self.nrows {
            let (a_cols, a_vals) = self.row(r);
            let (b_cols, b_vals) = other.row(r);
            let (mut i, mut j) = (0, 0);
            while i < a_cols.len() || j < b_cols.len() {
                let (c, v) = if j >= b_cols.len() || (i < a_cols.len() && a_cols[i] < b_cols[j]) {
                    let e = (a_cols[i], a_vals[i]);
                    i += 1;
                    e
                } else if i >= a_cols.len() || b_cols[j] < a_cols[i] {
                    let e = (b_cols[j], sign * b_vals[j]);
                    j += 1;
                    e
                } else {
                    let e = (a_cols[i], a_vals[i] + sign * b_vals[j]);
                    i += 1;
                    j += 1;
                    e
                };
                if v != 0 {
                    col_indices.push(c);
                    values.push(v);
                }
            }
            row_offsets.push(col_indices.len());
        }
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            row_offsets,
            col_indices,
            values,
        })
    }

    /// Entrywise sum; cancellations are dropped.
    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.combine(other, "add", 1)
    }

    /// Entrywise difference `self - other`; cancellations are dropped.
    pub fn subtract(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.combine(other, "subtract", -1)
    }

    /// Sum of all stored values.
    pub fn sum_all(&self) -> i64 {
        self.values.iter().sum()
    }

    /// Per-row sums.
    pub fn row_reduce(&self) -> DenseVector {
        let out = (0..self.nrows)
            .map(|r| self.row(r).1.iter().sum())
            .collect();
        DenseVector::new(out)
    }

    /// Per-column sums.
    pub fn col_reduce(&self) -> DenseVector {
        let mut out = vec![0i64; self.ncols];
        for (&c, &v) in self.col_indices.iter().zip(&self.values) {
            out[c] += v;
        }
        DenseVector::new(out)
    }

    /// Indicator matrix of the entries equal to `target` (which must be
    /// nonzero, since zeros are never stored).
    pub fn filter_eq(&self, target: i64) -> Result<SparseMatrix> {
        if target == 0 {
            return Err(Error::ZeroFilterTarget);
        }
        let mut row_offsets = Vec::with_capacity(self.nrows + 1);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        row_offsets.push(0);
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                if v == target {
                    col_indices.push(c);
                    values.push(1);
                }
            }
            row_offsets.push(col_indices.len());
        }
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            row_offsets,
            col_indices,
            values,
        })
    }

    pub fn transpose(&self) -> SparseMatrix {
        let nnz = self.nnz();
        let mut offsets = vec![0usize; self.ncols + 1];
        for &c in &self.col_indices {
            offsets[c + 1] += 1;
        }
        for i in 0..self.ncols {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..self.ncols].to_vec();
        let mut col_indices = vec![0usize; nnz];
        let mut values = vec![0i64; nnz];
        // Row-major traversal writes each output row in increasing index
        // order, so the result is sorted without an explicit sort.
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                let pos = cursor[c];
                cursor[c] += 1;
                col_indices[pos] = r;
                values[pos] = v;
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            row_offsets: offsets,
            col_indices,
            values,
        }
    }

    /// Keeps the rows listed in `keep`, in the order given. Indices must be
    /// in range and duplicate-free.
    pub fn select_rows(&self, keep: &[usize]) -> Result<SparseMatrix> {
        let mut seen = vec![false; self.nrows];
        for &r in keep {
            if r >= self.nrows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    bound: self.nrows,
                });
            }
            if seen[r] {
                return Err(Error::DuplicateIndex { index: r });
            }
            seen[r] = true;
        }
        let mut row_offsets = Vec::with_capacity(keep.len() + 1);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        row_offsets.push(0);
        for &r in keep {
            let (cols, vals) = self.row(r);
            col_indices.extend_from_slice(cols);
            values.extend_from_slice(vals);
            row_offsets.push(col_indices.len());
        }
        Ok(SparseMatrix {
            nrows: keep.len(),
            ncols: self.ncols,
            row_offsets,
            col_indices,
            values,
        })
    }

    /// Splits into strictly-lower and strictly-upper triangular parts; the
    /// diagonal is excluded from both.
    pub fn triangular_split(&self) -> (SparseMatrix, SparseMatrix) {
        let mut lower = Builder::new(self.nrows, self.ncols);
        let mut upper = Builder::new(self.nrows, self.ncols);
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                if c < r {
                    lower.push(c, v);
                } else if c > r {
                    upper.push(c, v);
                }
            }
            lower.end_row();
            upper.end_row();
        }
        (lower.finish(), upper.finish())
    }
}

/// Row-by-row CSR builder for operations that emit entries in order.
struct Builder {
    nrows: usize,
    ncols: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<i64>,
}

impl Builder {
    fn new(nrows: usize, ncols: usize) -> Self {
        Builder {
            nrows,
            ncols,
            row_offsets: vec![0],
            col_indices: Vec::new(),
            values: Vec::new(),
        }
    }

    fn push(&mut self, col: usize, v: i64) {
        self.col_indices.push(col);
        self.values.push(v);
    }

    fn end_row(&mut self) {
        self.row_offsets.push(self.col_indices.len());
    }

    fn finish(self) -> SparseMatrix {
        debug_assert_eq!(self.row_offsets.len(), self.nrows + 1);
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            row_offsets: self.row_offsets,
            col_indices: self.col_indices,
            values: self.values,
        }
    }
}
