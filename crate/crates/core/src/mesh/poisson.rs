use super::channel::build_rectangle_mesh;
use super::{Mesh, MeshError};
use crate::la::SparseMatrix;
use std::collections::BTreeSet;

/// P1 Poisson test problem on the unit square with homogeneous Dirichlet
/// boundary: the workhorse for Schwarz scalability studies.
#[derive(Debug, Clone)]
pub struct PoissonProblem {
    pub mesh: Mesh,
    /// Stiffness matrix with unit Dirichlet rows on the boundary.
    pub k: SparseMatrix,
    /// Load vector for f = 1, zeroed on the boundary.
    pub rhs: Vec<f64>,
    /// Sorted boundary DoFs.
    pub dirichlet: Vec<usize>,
    /// Per-triangle DoF lists (the three vertices).
    pub element_dofs: Vec<Vec<usize>>,
}

pub fn assemble_poisson_p1(nx: usize, ny: usize) -> Result<PoissonProblem, MeshError> {
    let mesh = build_rectangle_mesh(nx, ny, 1.0, 1.0)?;
    let n = mesh.n_vertices();
    let mut trips = Vec::new();
    let mut rhs = vec![0.0; n];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let [p0, p1, p2] = mesh.triangle_vertices(t);
        let det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
        if det <= 0.0 {
            return Err(MeshError::DegenerateElement { element: t, det });
        }
        let area = 0.5 * det;
        // constant P1 gradients
        let g = [
            [(p1[1] - p2[1]) / det, (p2[0] - p1[0]) / det],
            [(p2[1] - p0[1]) / det, (p0[0] - p2[0]) / det],
            [(p0[1] - p1[1]) / det, (p1[0] - p0[0]) / det],
        ];
        for i in 0..3 {
            for j in 0..3 {
                trips.push((tri[i], tri[j], area * (g[i][0] * g[j][0] + g[i][1] * g[j][1])));
            }
            rhs[tri[i]] += area / 3.0;
        }
    }
    let k = SparseMatrix::from_triplets(n, n, &trips).expect("valid indices");

    let mut boundary: BTreeSet<usize> = BTreeSet::new();
    for e in &mesh.tagged_edges {
        boundary.insert(e.v[0]);
        boundary.insert(e.v[1]);
    }
    let dirichlet: Vec<usize> = boundary.into_iter().collect();
    let k = k.with_identity_rows(&dirichlet).expect("sorted");
    for &d in &dirichlet {
        rhs[d] = 0.0;
    }

    let element_dofs = mesh
        .triangles
        .iter()
        .map(|tri| {
            let mut v = tri.to_vec();
            v.sort_unstable();
            v
        })
        .collect();

    Ok(PoissonProblem {
        mesh,
        k,
        rhs,
        dirichlet,
        element_dofs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::la::DenseFactorization;

    #[test]
    fn matches_exact_solution_scale() {
        // solution of -lap u = 1 on the unit square peaks near 0.0736
        let p = assemble_poisson_p1(16, 16).unwrap();
        let f = DenseFactorization::factor(&p.k.to_dense()).unwrap();
        let u = f.solve(&p.rhs);
        let max = u.iter().fold(0.0f64, |m, v| m.max(*v));
        assert!((max - 0.0736).abs() < 5e-3, "peak {max}");
        for &d in &p.dirichlet {
            assert_eq!(u[d], 0.0);
        }
    }
}
