use super::LaError;

/// Small row-major dense matrix; workhorse for oracles, coarse matrices
/// and subdomain solves.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            data: vec![0.0; nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let nrows = rows.len();
        let ncols = if nrows > 0 { rows[0].len() } else { 0 };
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols);
            data.extend_from_slice(r);
        }
        Self { nrows, ncols, data }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.ncols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.ncols + j] += v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols);
        let mut y = vec![0.0; self.nrows];
        for i in 0..self.nrows {
            let mut acc = 0.0;
            for j in 0..self.ncols {
                acc += self.get(i, j) * x[j];
            }
            y[i] = acc;
        }
        y
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows);
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.ncols {
                    out.add_to(i, j, a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn norm_1(&self) -> f64 {
        let mut best: f64 = 0.0;
        for j in 0..self.ncols {
            let s: f64 = (0..self.nrows).map(|i| self.get(i, j).abs()).sum();
            best = best.max(s);
        }
        best
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// LU factorization with partial pivoting of a square dense matrix.
#[derive(Debug, Clone)]
pub struct DenseFactorization {
    n: usize,
    lu: Vec<f64>,
    pivots: Vec<usize>,
}

impl DenseFactorization {
    /// Computes PA = LU. Fails with the elimination step index if a pivot
    /// is exactly zero after row exchange.
    pub fn factor(a: &DenseMatrix) -> Result<Self, LaError> {
        assert_eq!(a.nrows(), a.ncols(), "dense LU requires a square matrix");
        let n = a.nrows();
        let mut lu = a.data().to_vec();
        let mut pivots = vec![0usize; n];
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].abs();
            for i in (k + 1)..n {
                let cand = lu[i * n + k].abs();
                if cand > best {
                    best = cand;
                    p = i;
                }
            }
            if best == 0.0 {
                return Err(LaError::Singular { pivot: k });
            }
            pivots[k] = p;
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in (k + 1)..n {
                    lu[i * n + j] -= factor * lu[k * n + j];
                }
            }
        }
        Ok(Self { n, lu, pivots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n, "dense solve: rhs length mismatch");
        let n = self.n;
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.pivots[k]);
            let xk = x[k];
            if xk != 0.0 {
                for i in (k + 1)..n {
                    x[i] -= self.lu[i * n + k] * xk;
                }
            }
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        x
    }

    /// Explicit inverse, column by column. Oracle use only at desk sizes.
    pub fn inverse(&self) -> DenseMatrix {
        let n = self.n;
        let mut inv = DenseMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.solve(&e);
            e[j] = 0.0;
            for i in 0..n {
                inv.set(i, j, col[i]);
            }
        }
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_solve() {
        let f = DenseFactorization::factor(&DenseMatrix::identity(4)).unwrap();
        let b = vec![1.0, -2.0, 0.5, 3.0];
        assert_eq!(f.solve(&b), b);
    }

    #[test]
    fn diagonal_solve() {
        let mut a = DenseMatrix::zeros(2, 2);
        a.set(0, 0, 2.0);
        a.set(1, 1, 4.0);
        let f = DenseFactorization::factor(&a).unwrap();
        let x = f.solve(&[2.0, 4.0]);
        assert!((x[0] - 1.0).abs() < 1e-15);
        assert!((x[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singular_reports_pivot() {
        let a = DenseMatrix::zeros(3, 3);
        match DenseFactorization::factor(&a) {
            Err(LaError::Singular { pivot }) => assert_eq!(pivot, 0),
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn random_residual_small() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n = 10;
        let mut a = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, rng.gen_range(-1.0..1.0));
            }
            // diagonal dominance keeps the condition number harmless
            a.add_to(i, i, 10.0);
        }
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = DenseFactorization::factor(&a).unwrap();
        let x = f.solve(&b);
        let r = a.matvec(&x);
        let num: f64 = r
            .iter()
            .zip(&b)
            .map(|(ri, bi)| (ri - bi) * (ri - bi))
            .sum::<f64>()
            .sqrt();
        let den: f64 = b.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(num <= 1e-12 * den, "residual {num} vs {den}");
    }

    #[test]
    fn solve_matches_nalgebra() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let n = 8;
        let mut a = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, rng.gen_range(-1.0..1.0));
            }
            a.add_to(i, i, 5.0);
        }
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = DenseFactorization::factor(&a).unwrap().solve(&b);

        let na = nalgebra::DMatrix::from_fn(n, n, |i, j| a.get(i, j));
        let nb = nalgebra::DVector::from_column_slice(&b);
        let nx = na.lu().solve(&nb).unwrap();
        for i in 0..n {
            assert!((x[i] - nx[i]).abs() <= 1e-12);
        }
    }
}
