use super::dofmap::{interface_nodes, DofMap};
use super::p2::P2Nodes;
use super::{Mesh, MeshError};
use crate::la::SparseMatrix;
use std::collections::BTreeSet;

/// Interface coupling blocks of the coupled Jacobian.
///
/// The interface multiplier lives on the *active* fluid-velocity interface
/// DoFs: interface DoFs that carry a strong Dirichlet condition (the inlet
/// corner) are excluded, otherwise their multiplier column would be
/// annihilated by the velocity and solid Dirichlet rows and the coupled
/// matrix would be singular.
#[derive(Debug, Clone)]
pub struct Coupling {
    /// Boolean restriction to the active fluid-velocity interface DoFs.
    pub c1: SparseMatrix,
    /// Kinematic coupling to the solid displacement, scaled by the Newmark
    /// velocity factor: `C2 = -c_n * T`.
    pub c2: SparseMatrix,
    /// `C3 = C1^T`.
    pub c3: SparseMatrix,
    /// Interface load transfer onto the solid momentum rows: `C4 = -T^T`.
    pub c4: SparseMatrix,
    /// Geometric adherence rows: geometry Dirichlet rows receive `-d_s`.
    pub c5: SparseMatrix,
    /// (node, component) of each multiplier slot, in slot order.
    pub lambda_nodes: Vec<(usize, usize)>,
}

/// Assembles C1/C2/C3/C4/C5. `newmark_velocity_factor` is gamma/(beta*dt);
/// `dirichlet_u` is the sorted set of fluid-velocity DoFs carrying strong
/// Dirichlet conditions.
pub fn assemble_coupling(
    mesh: &Mesh,
    p2: &P2Nodes,
    map_u: &DofMap,
    map_ds: &DofMap,
    map_df: &DofMap,
    newmark_velocity_factor: f64,
    dirichlet_u: &[usize],
) -> Result<Coupling, MeshError> {
    let nodes = interface_nodes(mesh, p2, true);
    let dirichlet: BTreeSet<usize> = dirichlet_u.iter().copied().collect();

    let mut lambda_nodes = Vec::new();
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    let mut t4 = Vec::new();
    for &node in &nodes {
        let u_base = map_u.dof_of_node[node].ok_or_else(|| {
            MeshError::InterfaceMismatch(format!("interface node {node} has no velocity dof"))
        })?;
        let s_base = map_ds.dof_of_node[node].ok_or_else(|| {
            MeshError::InterfaceMismatch(format!("interface node {node} has no solid dof"))
        })?;
        for c in 0..2 {
            if dirichlet.contains(&(u_base + c)) {
                continue;
            }
            let slot = lambda_nodes.len();
            lambda_nodes.push((node, c));
            t1.push((slot, u_base + c, 1.0));
            t2.push((slot, s_base + c, -newmark_velocity_factor));
            t4.push((s_base + c, slot, -1.0));
        }
    }
    let n_l = lambda_nodes.len();
    let c1 = SparseMatrix::from_triplets(n_l, map_u.ndofs(), &t1)
        .map_err(|_| MeshError::InterfaceMismatch("c1 index error".into()))?;
    let c2 = SparseMatrix::from_triplets(n_l, map_ds.ndofs(), &t2)
        .map_err(|_| MeshError::InterfaceMismatch("c2 index error".into()))?;
    let c4 = SparseMatrix::from_triplets(map_ds.ndofs(), n_l, &t4)
        .map_err(|_| MeshError::InterfaceMismatch("c4 index error".into()))?;
    let c3 = c1.transpose();

    // geometric adherence d_f = d_s on the whole interface
    let mut t5 = Vec::new();
    for &node in &nodes {
        let f_base = map_df.dof_of_node[node].ok_or_else(|| {
            MeshError::InterfaceMismatch(format!("interface node {node} has no mesh dof"))
        })?;
        let s_base = map_ds.dof_of_node[node].unwrap();
        for c in 0..2 {
            t5.push((f_base + c, s_base + c, -1.0));
        }
    }
    let c5 = SparseMatrix::from_triplets(map_df.ndofs(), map_ds.ndofs(), &t5)
        .map_err(|_| MeshError::InterfaceMismatch("c5 index error".into()))?;

    Ok(Coupling {
        c1,
        c2,
        c3,
        c4,
        c5,
        lambda_nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_channel_mesh, DofField};

    fn setup() -> (Mesh, P2Nodes, DofMap, DofMap, DofMap) {
        let mesh = build_channel_mesh(4, 2, 1, 2.0, 1.0, 0.3).unwrap();
        let p2 = P2Nodes::build(&mesh);
        let u = DofMap::build(&mesh, &p2, DofField::FluidVelocity);
        let s = DofMap::build(&mesh, &p2, DofField::SolidDisplacement);
        let f = DofMap::build(&mesh, &p2, DofField::MeshDisplacement);
        (mesh, p2, u, s, f)
    }

    #[test]
    fn c1_is_boolean_restriction() {
        let (mesh, p2, u, s, f) = setup();
        let cpl = assemble_coupling(&mesh, &p2, &u, &s, &f, 2000.0, &[]).unwrap();
        // one unit entry per row
        for slot in 0..cpl.c1.nrows() {
            let (cols, vals) = cpl.c1.row(slot);
            assert_eq!(cols.len(), 1);
            assert_eq!(vals[0], 1.0);
        }
        // picking an indicator vector returns the unit vector at that slot
        let (node, comp) = cpl.lambda_nodes[1];
        let dof = u.dof(node, comp).unwrap();
        let mut x = vec![0.0; u.ndofs()];
        x[dof] = 1.0;
        let y = cpl.c1.spmv(&x);
        for (k, v) in y.iter().enumerate() {
            assert_eq!(*v, if k == 1 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn c3_equals_c1_transpose() {
        let (mesh, p2, u, s, f) = setup();
        let cpl = assemble_coupling(&mesh, &p2, &u, &s, &f, 2000.0, &[]).unwrap();
        assert_eq!(cpl.c3, cpl.c1.transpose());
    }

    #[test]
    fn c5_reproduces_solid_trace() {
        let (mesh, p2, u, s, f) = setup();
        let cpl = assemble_coupling(&mesh, &p2, &u, &s, &f, 2000.0, &[]).unwrap();
        // solid displacement with a known trace g on the interface
        let coords = p2.node_coords(&mesh.vertices);
        let mut ds = vec![0.0; s.ndofs()];
        for d in 0..s.ndofs() {
            let [x, y] = coords[s.node_of_dof[d]];
            ds[d] = 0.1 * x + 0.2 * y + s.comp_of_dof[d] as f64;
        }
        // geometry Dirichlet rows reproduce g: row value of C5*ds is -g,
        // so G*d_f + C5*d_s = 0 forces d_f = g on the interface.
        let t = cpl.c5.spmv(&ds);
        for node in super::interface_nodes(&mesh, &p2, true) {
            let fb = f.dof_of_node[node].unwrap();
            let sb = s.dof_of_node[node].unwrap();
            for c in 0..2 {
                assert!((t[fb + c] + ds[sb + c]).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn dirichlet_dofs_excluded_from_multiplier() {
        let (mesh, p2, u, s, f) = setup();
        let all = assemble_coupling(&mesh, &p2, &u, &s, &f, 1.0, &[]).unwrap();
        // exclude the first interface dof
        let first = u
            .dof(all.lambda_nodes[0].0, all.lambda_nodes[0].1)
            .unwrap();
        let reduced = assemble_coupling(&mesh, &p2, &u, &s, &f, 1.0, &[first]).unwrap();
        assert_eq!(reduced.c1.nrows() + 1, all.c1.nrows());
    }
}
