use super::dofmap::{interface_nodes, DofMap};
use super::p2::{p2_grad_ref, P2Nodes};
use super::quadrature::TRI_QUADRATURE;
use super::{EdgeTag, Mesh, MeshError, Region};
use crate::la::SparseMatrix;
use std::collections::BTreeSet;

/// Assembles the geometry subproblem operator: a componentwise P2
/// Laplacian on the reference fluid domain, with unit Dirichlet rows at
/// interface DoFs (the coupling value comes from the C5 block) and at the
/// normal component of the remaining fluid boundary (slip).
///
/// Returns the operator together with the sorted list of constrained DoFs.
pub fn assemble_geometry(
    mesh: &Mesh,
    p2: &P2Nodes,
    map_df: &DofMap,
) -> Result<(SparseMatrix, Vec<usize>), MeshError> {
    let n = map_df.ndofs();
    let coords = p2.node_coords(&mesh.vertices);
    let mut trips: Vec<(usize, usize, f64)> = Vec::new();

    for (t, nodes) in p2.tri_nodes.iter().enumerate() {
        if mesh.region[t] != Region::Fluid {
            continue;
        }
        let x = [coords[nodes[0]], coords[nodes[1]], coords[nodes[2]]];
        let j11 = x[1][0] - x[0][0];
        let j21 = x[1][1] - x[0][1];
        let j12 = x[2][0] - x[0][0];
        let j22 = x[2][1] - x[0][1];
        let det = j11 * j22 - j12 * j21;
        if det <= 0.0 {
            return Err(MeshError::DegenerateElement { element: t, det });
        }
        let inv = [[j22 / det, -j12 / det], [-j21 / det, j11 / det]];
        let area = 0.5 * det;
        for (l, wq) in TRI_QUADRATURE {
            let gref = p2_grad_ref(l);
            let mut gx = [[0.0; 2]; 6];
            for k in 0..6 {
                for a in 0..2 {
                    gx[k][a] = inv[0][a] * gref[k][0] + inv[1][a] * gref[k][1];
                }
            }
            let dv = wq * area;
            for i in 0..6 {
                let di = map_df.dof_of_node[nodes[i]].expect("fluid node in mesh-displacement map");
                for j in 0..6 {
                    let dj = map_df.dof_of_node[nodes[j]].unwrap();
                    let lap = (gx[i][0] * gx[j][0] + gx[i][1] * gx[j][1]) * dv;
                    for c in 0..2 {
                        trips.push((di + c, dj + c, lap));
                    }
                }
            }
        }
    }
    let laplacian = SparseMatrix::from_triplets(n, n, &trips).expect("valid indices");

    // Dirichlet rows: both components at the interface, normal component on
    // the remaining fluid boundary (x at inlet/outlet, y on the symmetry
    // line for the axis-aligned channel).
    let mut constrained: BTreeSet<usize> = BTreeSet::new();
    for node in interface_nodes(mesh, p2, true) {
        if let Some(base) = map_df.dof_of_node[node] {
            constrained.insert(base);
            constrained.insert(base + 1);
        }
    }
    for d in map_df.component_dofs_on_tag(mesh, p2, EdgeTag::Inlet, 0) {
        constrained.insert(d);
    }
    for d in map_df.component_dofs_on_tag(mesh, p2, EdgeTag::Outlet, 0) {
        constrained.insert(d);
    }
    for d in map_df.component_dofs_on_tag(mesh, p2, EdgeTag::Symmetry, 1) {
        constrained.insert(d);
    }
    // fluid-only meshes tag the top boundary as outer wall; pin its normal
    // component as well so the operator stays nonsingular
    for d in map_df.component_dofs_on_tag(mesh, p2, EdgeTag::WallOuter, 1) {
        constrained.insert(d);
    }

    let constrained: Vec<usize> = constrained.into_iter().collect();
    let g = laplacian.with_identity_rows(&constrained).expect("sorted");
    Ok((g, constrained))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::la::DenseFactorization;
    use crate::mesh::{build_channel_mesh, DofField};

    fn setup() -> (Mesh, P2Nodes, DofMap) {
        let mesh = build_channel_mesh(4, 2, 1, 2.0, 1.0, 0.3).unwrap();
        let p2 = P2Nodes::build(&mesh);
        let map = DofMap::build(&mesh, &p2, DofField::MeshDisplacement);
        (mesh, p2, map)
    }

    /// Dense solve of G x = rhs where rhs carries interface data.
    fn extend(g: &SparseMatrix, rhs: &[f64]) -> Vec<f64> {
        let f = DenseFactorization::factor(&g.to_dense()).unwrap();
        f.solve(rhs)
    }

    #[test]
    fn zero_interface_data_zero_extension() {
        let (mesh, p2, map) = setup();
        let (g, _) = assemble_geometry(&mesh, &p2, &map).unwrap();
        let x = extend(&g, &vec![0.0; map.ndofs()]);
        for v in x {
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn constant_interface_data_bounded_extension() {
        let (mesh, p2, map) = setup();
        let (g, _) = assemble_geometry(&mesh, &p2, &map).unwrap();
        // y-component = c on the interface; bottom slip pins y to 0.
        let c = 0.37;
        let mut rhs = vec![0.0; map.ndofs()];
        for node in interface_nodes(&mesh, &p2, true) {
            let base = map.dof_of_node[node].unwrap();
            rhs[base + 1] = c;
        }
        let x = extend(&g, &rhs);
        // discrete maximum principle on the structured mesh
        for (d, v) in x.iter().enumerate() {
            if map.comp_of_dof[d] == 1 {
                assert!(
                    *v >= -1e-12 && *v <= c * (1.0 + 1e-12),
                    "dof {d}: value {v} outside [0, {c}]"
                );
            }
        }
    }

    #[test]
    fn constant_interface_data_exact_linear_extension() {
        // Constant data c at y=h with compatible side conditions (free
        // tangential walls, zero normal flux) extends exactly as c*y/h,
        // a harmonic polynomial contained in the P2 space.
        let (mesh, p2, map) = setup();
        let coords = p2.node_coords(&mesh.vertices);
        let (g, _) = assemble_geometry(&mesh, &p2, &map).unwrap();
        let h = 1.0;
        let c = 0.23;
        let mut rhs = vec![0.0; map.ndofs()];
        for node in interface_nodes(&mesh, &p2, true) {
            let base = map.dof_of_node[node].unwrap();
            rhs[base + 1] = c;
        }
        let x = extend(&g, &rhs);
        for d in 0..map.ndofs() {
            let [px, py] = coords[map.node_of_dof[d]];
            let expect = if map.comp_of_dof[d] == 1 {
                c * py / h
            } else {
                0.0
            };
            assert!(
                (x[d] - expect).abs() <= 1e-12,
                "dof {d} at ({px},{py}): {} vs {expect}",
                x[d]
            );
        }
    }
}
