use super::LaError;

/// Compressed-sparse-row real matrix.
///
/// Invariants held by every constructed instance: `row_ptr` has length
/// `nrows + 1`, is non-decreasing with `row_ptr[0] == 0` and
/// `row_ptr[nrows] == nnz`; column indices within each row are strictly
/// increasing; there are no duplicate entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds a CSR matrix from (row, col, value) triplets. Duplicate
    /// entries are summed in input order; explicit zeros are kept.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: &[(usize, usize, f64)],
    ) -> Result<Self, LaError> {
        for &(r, c, _) in triplets {
            if r >= nrows || c >= ncols {
                return Err(LaError::IndexOutOfRange {
                    row: r,
                    col: c,
                    nrows,
                    ncols,
                });
            }
        }
        let mut order: Vec<usize> = (0..triplets.len()).collect();
        order.sort_by_key(|&k| (triplets[k].0, triplets[k].1));

        let mut row_ptr = vec![0usize; nrows + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for &k in &order {
            let (r, c, v) = triplets[k];
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            col_idx.push(c);
            values.push(v);
            row_ptr[r + 1] += 1;
            last = Some((r, c));
        }
        for r in 0..nrows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Ok(Self {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            ncols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    /// Matrix with no stored entries.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            row_ptr: vec![0; nrows + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn from_dense(d: &super::DenseMatrix) -> Self {
        let mut trips = Vec::new();
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                let v = d.get(i, j);
                if v != 0.0 {
                    trips.push((i, j, v));
                }
            }
        }
        Self::from_triplets(d.nrows(), d.ncols(), &trips).expect("dense indices in range")
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.col_idx[lo..hi], &self.values[lo..hi])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    /// y = A x with a fixed left-to-right accumulation order per row.
    pub fn spmv(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(
            x.len(),
            self.ncols,
            "spmv: vector length {} does not match ncols {}",
            x.len(),
            self.ncols
        );
        let mut y = vec![0.0; self.nrows];
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            let mut acc = 0.0;
            for (c, v) in cols.iter().zip(vals) {
                acc += v * x[*c];
            }
            y[i] = acc;
        }
        y
    }

    /// y = A^T x without forming the transpose.
    pub fn spmv_transpose(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(
            x.len(),
            self.nrows,
            "spmv_transpose: vector length {} does not match nrows {}",
            x.len(),
            self.nrows
        );
        let mut y = vec![0.0; self.ncols];
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            for (c, v) in cols.iter().zip(vals) {
                y[*c] += v * x[i];
            }
        }
        y
    }

    fn check_index_set(set: &[usize], bound: usize) -> Result<(), LaError> {
        for (pos, &idx) in set.iter().enumerate() {
            if idx >= bound || (pos > 0 && set[pos - 1] >= idx) {
                return Err(LaError::BadIndexSet { pos });
            }
        }
        Ok(())
    }

    /// A(rows, cols) with renumbered indices; equivalent to
    /// `R_row * A * R_col^T` for Boolean restriction matrices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self, LaError> {
        Self::check_index_set(rows, self.nrows)?;
        Self::check_index_set(cols, self.ncols)?;
        let mut col_map = vec![usize::MAX; self.ncols];
        for (local, &c) in cols.iter().enumerate() {
            col_map[c] = local;
        }
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        row_ptr.push(0);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for &r in rows {
            let (rc, rv) = self.row(r);
            for (c, v) in rc.iter().zip(rv) {
                let lc = col_map[*c];
                if lc != usize::MAX {
                    col_idx.push(lc);
                    values.push(*v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Ok(Self {
            nrows: rows.len(),
            ncols: cols.len(),
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.ncols + 1];
        for &c in &self.col_idx {
            counts[c + 1] += 1;
        }
        for j in 0..self.ncols {
            counts[j + 1] += counts[j];
        }
        let row_ptr = counts.clone();
        let mut col_idx = vec![0usize; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        let mut next = counts;
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            for (c, v) in cols.iter().zip(vals) {
                let slot = next[*c];
                col_idx[slot] = i;
                values[slot] = *v;
                next[*c] += 1;
            }
        }
        Self {
            nrows: self.ncols,
            ncols: self.nrows,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= alpha;
        }
        out
    }

    /// Scales column j of the matrix by `d[j]` (A * diag(d)).
    pub fn scale_cols(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.ncols, "scale_cols: diagonal length mismatch");
        let mut out = self.clone();
        for (k, &c) in out.col_idx.iter().enumerate() {
            out.values[k] *= d[c];
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaError> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(LaError::DimensionMismatch(format!(
                "add: {}x{} vs {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut row_ptr = Vec::with_capacity(self.nrows + 1);
        row_ptr.push(0);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for i in 0..self.nrows {
            let (ac, av) = self.row(i);
            let (bc, bv) = other.row(i);
            let (mut p, mut q) = (0, 0);
            while p < ac.len() || q < bc.len() {
                let take_a = q >= bc.len() || (p < ac.len() && ac[p] <= bc[q]);
                let take_b = p >= ac.len() || (q < bc.len() && bc[q] <= ac[p]);
                if take_a && take_b {
                    col_idx.push(ac[p]);
                    values.push(av[p] + bv[q]);
                    p += 1;
                    q += 1;
                } else if take_a {
                    col_idx.push(ac[p]);
                    values.push(av[p]);
                    p += 1;
                } else {
                    col_idx.push(bc[q]);
                    values.push(bv[q]);
                    q += 1;
                }
            }
            row_ptr.push(col_idx.len());
        }
        Ok(Self {
            nrows: self.nrows,
            ncols: self.ncols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Sparse matrix product A * B.
    pub fn matmul(&self, other: &Self) -> Result<Self, LaError> {
        if self.ncols != other.nrows {
            return Err(LaError::DimensionMismatch(format!(
                "matmul: {}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut acc = vec![0.0; other.ncols];
        let mut touched: Vec<usize> = Vec::new();
        let mut row_ptr = Vec::with_capacity(self.nrows + 1);
        row_ptr.push(0);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for i in 0..self.nrows {
            for (ac, av) in {
                let (c, v) = self.row(i);
                c.iter().zip(v)
            } {
                let (bc, bv) = other.row(*ac);
                for (c, v) in bc.iter().zip(bv) {
                    if acc[*c] == 0.0 && !touched.contains(c) {
                        touched.push(*c);
                    }
                    acc[*c] += av * v;
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                col_idx.push(c);
                values.push(acc[c]);
                acc[c] = 0.0;
            }
            touched.clear();
            row_ptr.push(col_idx.len());
        }
        Ok(Self {
            nrows: self.nrows,
            ncols: other.ncols,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn diag(&self) -> Vec<f64> {
        let n = self.nrows.min(self.ncols);
        (0..n).map(|i| self.get(i, i)).collect()
    }

    pub fn row_abs_sums(&self) -> Vec<f64> {
        (0..self.nrows)
            .map(|i| self.row(i).1.iter().map(|v| v.abs()).sum())
            .collect()
    }

    /// Returns a copy with the given (sorted, unique) rows replaced by unit
    /// diagonal rows. Used to impose strong Dirichlet conditions.
    pub fn with_identity_rows(&self, rows: &[usize]) -> Result<Self, LaError> {
        Self::check_index_set(rows, self.nrows)?;
        let mut is_bc = vec![false; self.nrows];
        for &r in rows {
            is_bc[r] = true;
        }
        let mut trips = Vec::with_capacity(self.nnz());
        for i in 0..self.nrows {
            if is_bc[i] {
                trips.push((i, i, 1.0));
            } else {
                let (cols, vals) = self.row(i);
                for (c, v) in cols.iter().zip(vals) {
                    trips.push((i, *c, *v));
                }
            }
        }
        Self::from_triplets(self.nrows, self.ncols, &trips)
    }

    /// Returns a copy with the given rows zeroed out entirely.
    pub fn with_zero_rows(&self, rows: &[usize]) -> Result<Self, LaError> {
        Self::check_index_set(rows, self.nrows)?;
        let mut is_bc = vec![false; self.nrows];
        for &r in rows {
            is_bc[r] = true;
        }
        let mut trips = Vec::with_capacity(self.nnz());
        for i in 0..self.nrows {
            if is_bc[i] {
                continue;
            }
            let (cols, vals) = self.row(i);
            for (c, v) in cols.iter().zip(vals) {
                trips.push((i, *c, *v));
            }
        }
        Self::from_triplets(self.nrows, self.ncols, &trips)
    }

    pub fn to_dense(&self) -> super::DenseMatrix {
        let mut d = super::DenseMatrix::zeros(self.nrows, self.ncols);
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            for (c, v) in cols.iter().zip(vals) {
                d.set(i, *c, *v);
            }
        }
        d
    }
}
