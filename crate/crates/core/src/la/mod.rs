//! Sparse and small-dense linear algebra substrate.
//!
//! CSR matrices are the universal operator representation; dense LU with
//! partial pivoting backs subdomain and coarse solves as well as the
//! exact-inverse oracles used throughout the test suites. All operations
//! use a fixed left-to-right accumulation order so that repeated runs are
//! bit-identical.

mod block;
mod dense;
mod mm;
mod op;
mod sparse;
pub mod vecops;

pub use block::{BlockVector, Segment};
pub use dense::{DenseFactorization, DenseMatrix};
pub use mm::{read_matrix_market, read_matrix_market_file, write_matrix_market, write_matrix_market_file};
pub use op::{DenseSolveOp, IdentityOp, LinOp, ScaledOp};
pub use sparse::SparseMatrix;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LaError {
    #[error("entry ({row},{col}) out of range for a {nrows}x{ncols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix: zero pivot at elimination step {pivot}")]
    Singular { pivot: usize },
    #[error("index set must be sorted, unique and in range (offending position {pos})")]
    BadIndexSet { pos: usize },
    #[error("matrix market parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
