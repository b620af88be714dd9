use super::{DenseFactorization, SparseMatrix};

/// A linear map applied matrix-free. Implemented by concrete matrices,
/// factorizations (as the inverse map) and by every preconditioner.
pub trait LinOp {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn apply(&self, x: &[f64]) -> Vec<f64>;
}

impl LinOp for SparseMatrix {
    fn nrows(&self) -> usize {
        SparseMatrix::nrows(self)
    }

    fn ncols(&self) -> usize {
        SparseMatrix::ncols(self)
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.spmv(x)
    }
}

pub struct IdentityOp(pub usize);

impl LinOp for IdentityOp {
    fn nrows(&self) -> usize {
        self.0
    }

    fn ncols(&self) -> usize {
        self.0
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.to_vec()
    }
}

/// Applies `A^{-1}` through a dense factorization.
pub struct DenseSolveOp(pub DenseFactorization);

impl LinOp for DenseSolveOp {
    fn nrows(&self) -> usize {
        self.0.n()
    }

    fn ncols(&self) -> usize {
        self.0.n()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.0.solve(x)
    }
}

/// alpha * A as an operator.
pub struct ScaledOp<'a> {
    pub alpha: f64,
    pub inner: &'a dyn LinOp,
}

impl LinOp for ScaledOp<'_> {
    fn nrows(&self) -> usize {
        self.inner.nrows()
    }

    fn ncols(&self) -> usize {
        self.inner.ncols()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = self.inner.apply(x);
        for v in &mut y {
            *v *= self.alpha;
        }
        y
    }
}
