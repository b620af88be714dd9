use super::dofmap::DofMap;
use super::p2::{p2_grad_ref, p2_shape, P2Nodes};
use super::quadrature::TRI_QUADRATURE;
use super::{Mesh, MeshError, PhysicalParams, Region};
use crate::la::SparseMatrix;

/// Assembly switches for the solid operator. With `inertia` set, the
/// effective matrix is `rho_s * c0 * M + K` and the residual includes the
/// Newmark acceleration `c0 * d - accel_rhs`.
#[derive(Debug, Clone, Default)]
pub struct SolidOptions {
    pub inertia: Option<SolidInertia>,
}

#[derive(Debug, Clone)]
pub struct SolidInertia {
    /// 1 / (beta * dt^2)
    pub c0: f64,
    /// c0 * d_predictor, in solid-displacement layout.
    pub accel_rhs: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SolidAssembly {
    pub s: SparseMatrix,
    pub res_s: Vec<f64>,
}

/// Plane-strain linear-elastic element stiffness. This is the single
/// material hook: swapping the constitutive law means replacing this
/// function.
fn elastic_entry(lambda: f64, mu: f64, gi: [f64; 2], gj: [f64; 2], a: usize, b: usize) -> f64 {
    let mut v = lambda * gi[a] * gj[b] + mu * gi[b] * gj[a];
    if a == b {
        v += mu * (gi[0] * gj[0] + gi[1] * gj[1]);
    }
    v
}

/// Assembles the linear-elastic wall operator (plane strain) with optional
/// Newmark inertia, on the reference configuration. Strong boundary
/// conditions are not applied here.
pub fn assemble_solid(
    mesh: &Mesh,
    p2: &P2Nodes,
    map_ds: &DofMap,
    params: &PhysicalParams,
    state_d: &[f64],
    opts: &SolidOptions,
) -> Result<SolidAssembly, MeshError> {
    let n = map_ds.ndofs();
    assert_eq!(state_d.len(), n);
    let e = params.e_model();
    let nu = params.poisson;
    let lambda = e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    let mu = e / (2.0 * (1.0 + nu));
    let rho = params.rho_s;

    let coords = p2.node_coords(&mesh.vertices);
    let mut trips: Vec<(usize, usize, f64)> = Vec::new();
    let mut res = vec![0.0; n];

    for (t, nodes) in p2.tri_nodes.iter().enumerate() {
        if mesh.region[t] != Region::Solid {
            continue;
        }
        let x = [coords[nodes[0]], coords[nodes[1]], coords[nodes[2]]];
        let j11 = x[1][0] - x[0][0];
        let j21 = x[1][1] - x[0][1];
        let j12 = x[2][0] - x[0][0];
        let j22 = x[2][1] - x[0][1];
        let det = j11 * j22 - j12 * j21;
        if det <= 0.0 {
            return Err(MeshError::DegenerateElement {
                element: t,
                det,
            });
        }
        let inv = [[j22 / det, -j12 / det], [-j21 / det, j11 / det]];
        let area = 0.5 * det;

        let mut dofs = [0usize; 6];
        let mut de = [[0.0; 2]; 6];
        for k in 0..6 {
            let base = map_ds.dof_of_node[nodes[k]].expect("solid node has displacement dofs");
            dofs[k] = base;
            for a in 0..2 {
                de[k][a] = state_d[base + a];
            }
        }
        let inertia = opts.inertia.as_ref();
        let mut ae = [[0.0; 2]; 6]; // c0*d - accel_rhs per node
        if let Some(iner) = inertia {
            for k in 0..6 {
                for a in 0..2 {
                    ae[k][a] = iner.c0 * de[k][a] - iner.accel_rhs[dofs[k] + a];
                }
            }
        }

        for (l, wq) in TRI_QUADRATURE {
            let shape = p2_shape(l);
            let gref = p2_grad_ref(l);
            let mut gx = [[0.0; 2]; 6];
            for k in 0..6 {
                for a in 0..2 {
                    gx[k][a] = inv[0][a] * gref[k][0] + inv[1][a] * gref[k][1];
                }
            }
            let dv = wq * area;

            for i in 0..6 {
                for j in 0..6 {
                    let mass = shape[i] * shape[j];
                    for a in 0..2 {
                        for b in 0..2 {
                            let mut v = elastic_entry(lambda, mu, gx[i], gx[j], a, b);
                            if a == b {
                                if let Some(iner) = inertia {
                                    v += rho * iner.c0 * mass;
                                }
                            }
                            trips.push((dofs[i] + a, dofs[j] + b, v * dv));
                        }
                    }
                }
            }
            // residual: K d (+ rho M (c0 d - accel_rhs))
            let mut grad_d = [[0.0; 2]; 2];
            let mut a_q = [0.0; 2];
            for k in 0..6 {
                for a in 0..2 {
                    a_q[a] += shape[k] * ae[k][a];
                    for b in 0..2 {
                        grad_d[a][b] += gx[k][b] * de[k][a];
                    }
                }
            }
            let div_d = grad_d[0][0] + grad_d[1][1];
            for i in 0..6 {
                for a in 0..2 {
                    let mut r = lambda * div_d * gx[i][a];
                    for b in 0..2 {
                        r += mu * (grad_d[a][b] + grad_d[b][a]) * gx[i][b];
                    }
                    if inertia.is_some() {
                        r += rho * a_q[a] * shape[i];
                    }
                    res[dofs[i] + a] += r * dv;
                }
            }
        }
    }

    Ok(SolidAssembly {
        s: SparseMatrix::from_triplets(n, n, &trips).expect("valid indices"),
        res_s: res,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_channel_mesh, DofField, DofMap};

    fn setup() -> (Mesh, P2Nodes, DofMap, PhysicalParams) {
        let mesh = build_channel_mesh(3, 1, 2, 2.0, 0.5, 0.4).unwrap();
        let p2 = P2Nodes::build(&mesh);
        let map = DofMap::build(&mesh, &p2, DofField::SolidDisplacement);
        (mesh, p2, map, PhysicalParams::default())
    }

    #[test]
    fn rigid_translation_in_nullspace() {
        let (mesh, p2, map, params) = setup();
        let mut d = vec![0.0; map.ndofs()];
        for k in 0..map.ndofs() {
            d[k] = if map.comp_of_dof[k] == 0 { 0.3 } else { -0.7 };
        }
        let asm = assemble_solid(&mesh, &p2, &map, &params, &d, &SolidOptions::default()).unwrap();
        let scale = params.e_model();
        for r in &asm.res_s {
            assert!(r.abs() <= 1e-10 * scale, "residual {r}");
        }
    }

    #[test]
    fn constant_strain_patch_test() {
        let (mesh, p2, map, params) = setup();
        let coords = p2.node_coords(&mesh.vertices);
        // linear displacement field -> constant strain -> zero interior
        // stress-divergence residual
        let mut d = vec![0.0; map.ndofs()];
        for k in 0..map.ndofs() {
            let [x, y] = coords[map.node_of_dof[k]];
            d[k] = if map.comp_of_dof[k] == 0 {
                0.01 * x + 0.02 * y
            } else {
                -0.005 * x + 0.015 * y
            };
        }
        let asm = assemble_solid(&mesh, &p2, &map, &params, &d, &SolidOptions::default()).unwrap();
        // interior = away from all solid boundary edges (interface, clamp, outer wall)
        let boundary: std::collections::BTreeSet<usize> = [
            super::super::EdgeTag::Interface,
            super::super::EdgeTag::Clamp,
            super::super::EdgeTag::WallOuter,
        ]
        .into_iter()
        .flat_map(|t| map.dofs_on_tag(&mesh, &p2, t))
        .collect();
        let scale = params.e_model();
        for k in 0..map.ndofs() {
            if !boundary.contains(&k) {
                assert!(
                    asm.res_s[k].abs() <= 1e-10 * scale,
                    "interior residual {} at dof {k}",
                    asm.res_s[k]
                );
            }
        }
    }

    #[test]
    fn three_rigid_body_modes() {
        // small solid-only check: stiffness without inertia and without
        // constraints has exactly 3 near-zero eigenvalues in 2D
        let (mesh, p2, map, params) = setup();
        let zero = vec![0.0; map.ndofs()];
        let asm =
            assemble_solid(&mesh, &p2, &map, &params, &zero, &SolidOptions::default()).unwrap();
        let d = asm.s.to_dense();
        let n = map.ndofs();
        let m = nalgebra::DMatrix::from_fn(n, n, |i, j| 0.5 * (d.get(i, j) + d.get(j, i)));
        let eig = m.symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let scale = vals[n - 1];
        let near_zero = vals.iter().filter(|v| v.abs() <= 1e-10 * scale).count();
        assert_eq!(near_zero, 3, "eigenvalues near zero: {:?}", &vals[..5]);
    }

    #[test]
    fn newmark_effective_matrix_is_spd_after_clamp() {
        let (mesh, p2, map, params) = setup();
        let zero = vec![0.0; map.ndofs()];
        let c0 = 1.0 / (0.25 * params.dt * params.dt);
        let opts = SolidOptions {
            inertia: Some(SolidInertia {
                c0,
                accel_rhs: vec![0.0; map.ndofs()],
            }),
        };
        let asm = assemble_solid(&mesh, &p2, &map, &params, &zero, &opts).unwrap();
        let clamp: std::collections::BTreeSet<usize> = map
            .component_dofs_on_tag(&mesh, &p2, super::super::EdgeTag::Clamp, 0)
            .into_iter()
            .collect();
        let free: Vec<usize> = (0..map.ndofs()).filter(|d| !clamp.contains(d)).collect();
        let s = asm.s.submatrix(&free, &free).unwrap();
        let d = s.to_dense();
        let n = free.len();
        let m = nalgebra::DMatrix::from_fn(n, n, |i, j| d.get(i, j));
        let eig = m.symmetric_eigen();
        assert!(eig.eigenvalues.iter().all(|v| *v > 0.0));
    }
}
