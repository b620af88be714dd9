use crate::la::{BlockVector, LinOp, Segment, SparseMatrix};

/// The coupled 4x4 FSI Jacobian stored block-wise, plus the Newton
/// right-hand side. Row/column order of the monolithic composition is
/// (solid, geometry, fluid velocity, fluid pressure, interface).
///
/// `c4` is stored because the true Jacobian contains it, but the FaCSI
/// preconditioner never references it.
#[derive(Debug, Clone)]
pub struct BlockSystem {
    pub s: SparseMatrix,
    pub g: SparseMatrix,
    pub f_uu: SparseMatrix,
    pub f_up: SparseMatrix,
    pub f_pu: SparseMatrix,
    pub f_pp: SparseMatrix,
    /// Shape derivatives, rows over (velocity, pressure), columns over
    /// geometry DoFs.
    pub d: SparseMatrix,
    pub c1: SparseMatrix,
    pub c2: SparseMatrix,
    pub c3: SparseMatrix,
    pub c4: SparseMatrix,
    pub c5: SparseMatrix,
    pub rhs: BlockVector,
}

impl BlockSystem {
    pub fn n_solid(&self) -> usize {
        self.s.nrows()
    }

    pub fn n_geometry(&self) -> usize {
        self.g.nrows()
    }

    pub fn n_velocity(&self) -> usize {
        self.f_uu.nrows()
    }

    pub fn n_pressure(&self) -> usize {
        self.f_pp.nrows()
    }

    pub fn n_interface(&self) -> usize {
        self.c1.nrows()
    }

    pub fn total_dofs(&self) -> usize {
        self.n_solid()
            + self.n_geometry()
            + self.n_velocity()
            + self.n_pressure()
            + self.n_interface()
    }

    pub fn layout(&self) -> Vec<(Segment, usize)> {
        vec![
            (Segment::Solid, self.n_solid()),
            (Segment::Geometry, self.n_geometry()),
            (Segment::FluidVelocity, self.n_velocity()),
            (Segment::FluidPressure, self.n_pressure()),
            (Segment::Interface, self.n_interface()),
        ]
    }

    /// Shape consistency plus the structural contracts: C3 = C1^T and C1 a
    /// Boolean restriction with one unit entry per row.
    pub fn validate(&self) -> Result<(), String> {
        let (ns, ng, nu, np, nl) = (
            self.n_solid(),
            self.n_geometry(),
            self.n_velocity(),
            self.n_pressure(),
            self.n_interface(),
        );
        let shape = |m: &SparseMatrix, r: usize, c: usize, name: &str| {
            if m.nrows() != r || m.ncols() != c {
                Err(format!(
                    "{name} is {}x{}, expected {r}x{c}",
                    m.nrows(),
                    m.ncols()
                ))
            } else {
                Ok(())
            }
        };
        shape(&self.s, ns, ns, "S")?;
        shape(&self.g, ng, ng, "G")?;
        shape(&self.f_uu, nu, nu, "F_uu")?;
        shape(&self.f_up, nu, np, "F_up")?;
        shape(&self.f_pu, np, nu, "F_pu")?;
        shape(&self.f_pp, np, np, "F_pp")?;
        shape(&self.d, nu + np, ng, "D")?;
        shape(&self.c1, nl, nu, "C1")?;
        shape(&self.c2, nl, ns, "C2")?;
        shape(&self.c3, nu, nl, "C3")?;
        shape(&self.c4, ns, nl, "C4")?;
        shape(&self.c5, ng, ns, "C5")?;
        if self.c3 != self.c1.transpose() {
            return Err("C3 != C1^T".into());
        }
        for i in 0..nl {
            let (cols, vals) = self.c1.row(i);
            if cols.len() != 1 || vals[0] != 1.0 {
                return Err(format!("C1 row {i} is not a unit restriction row"));
            }
        }
        let expected: Vec<usize> = self.layout().iter().map(|(_, n)| *n).collect();
        let actual: Vec<usize> = self.rhs.layout().iter().map(|(_, n)| *n).collect();
        if expected != actual {
            return Err(format!("rhs layout {actual:?} does not match {expected:?}"));
        }
        Ok(())
    }

    /// The fluid saddle-point block [[F_uu, F_up], [F_pu, F_pp]] with
    /// velocity DoFs ordered before pressure DoFs.
    pub fn fluid_matrix(&self) -> SparseMatrix {
        let (nu, np) = (self.n_velocity(), self.n_pressure());
        let mut trips = Vec::with_capacity(
            self.f_uu.nnz() + self.f_up.nnz() + self.f_pu.nnz() + self.f_pp.nnz(),
        );
        push_block(&mut trips, &self.f_uu, 0, 0);
        push_block(&mut trips, &self.f_up, 0, nu);
        push_block(&mut trips, &self.f_pu, nu, 0);
        push_block(&mut trips, &self.f_pp, nu, nu);
        SparseMatrix::from_triplets(nu + np, nu + np, &trips).expect("valid indices")
    }

    /// Applies the coupled operator block-wise.
    pub fn apply_blocks(&self, x: &BlockVector) -> BlockVector {
        use crate::la::vecops::axpy;
        let xs = x.get(Segment::Solid);
        let xg = x.get(Segment::Geometry);
        let xu = x.get(Segment::FluidVelocity);
        let xp = x.get(Segment::FluidPressure);
        let xl = x.get(Segment::Interface);

        let mut ys = self.s.spmv(xs);
        axpy(&mut ys, 1.0, &self.c4.spmv(xl));

        let mut yg = self.g.spmv(xg);
        axpy(&mut yg, 1.0, &self.c5.spmv(xs));

        let dxg = self.d.spmv(xg);
        let nu = self.n_velocity();
        let mut yu = self.f_uu.spmv(xu);
        axpy(&mut yu, 1.0, &self.f_up.spmv(xp));
        axpy(&mut yu, 1.0, &dxg[..nu].to_vec());
        axpy(&mut yu, 1.0, &self.c3.spmv(xl));

        let mut yp = self.f_pu.spmv(xu);
        axpy(&mut yp, 1.0, &self.f_pp.spmv(xp));
        axpy(&mut yp, 1.0, &dxg[nu..].to_vec());

        let mut yl = self.c1.spmv(xu);
        axpy(&mut yl, 1.0, &self.c2.spmv(xs));

        BlockVector::new(vec![
            (Segment::Solid, ys),
            (Segment::Geometry, yg),
            (Segment::FluidVelocity, yu),
            (Segment::FluidPressure, yp),
            (Segment::Interface, yl),
        ])
    }

    /// Monolithic CSR composition of all block placements.
    pub fn to_csr(&self) -> SparseMatrix {
        let (ns, ng, nu, np) = (
            self.n_solid(),
            self.n_geometry(),
            self.n_velocity(),
            self.n_pressure(),
        );
        let (os, og, ou, op, ol) = (0, ns, ns + ng, ns + ng + nu, ns + ng + nu + np);
        let n = self.total_dofs();
        let mut trips = Vec::new();
        push_block(&mut trips, &self.s, os, os);
        push_block(&mut trips, &self.c4, os, ol);
        push_block(&mut trips, &self.c5, og, os);
        push_block(&mut trips, &self.g, og, og);
        push_block(&mut trips, &self.f_uu, ou, ou);
        push_block(&mut trips, &self.f_up, ou, op);
        push_block(&mut trips, &self.f_pu, op, ou);
        push_block(&mut trips, &self.f_pp, op, op);
        // D rows span velocity then pressure
        for i in 0..self.d.nrows() {
            let (cols, vals) = self.d.row(i);
            let row = if i < nu { ou + i } else { op + (i - nu) };
            for (c, v) in cols.iter().zip(vals) {
                trips.push((row, og + c, *v));
            }
        }
        push_block(&mut trips, &self.c3, ou, ol);
        push_block(&mut trips, &self.c2, ol, os);
        push_block(&mut trips, &self.c1, ol, ou);
        SparseMatrix::from_triplets(n, n, &trips).expect("valid indices")
    }
}

fn push_block(
    trips: &mut Vec<(usize, usize, f64)>,
    block: &SparseMatrix,
    row_offset: usize,
    col_offset: usize,
) {
    for i in 0..block.nrows() {
        let (cols, vals) = block.row(i);
        for (c, v) in cols.iter().zip(vals) {
            trips.push((row_offset + i, col_offset + c, *v));
        }
    }
}

impl LinOp for BlockSystem {
    fn nrows(&self) -> usize {
        self.total_dofs()
    }

    fn ncols(&self) -> usize {
        self.total_dofs()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let bv = BlockVector::from_flat(&self.layout(), x);
        self.apply_blocks(&bv).to_flat()
    }
}
