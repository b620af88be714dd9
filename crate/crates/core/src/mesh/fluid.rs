use super::dofmap::DofMap;
use super::p2::{p1_shape, p2_grad_ref, p2_shape, P2Nodes};
use super::quadrature::{EDGE_QUADRATURE, TRI_QUADRATURE};
use super::{EdgeTag, Mesh, MeshError, PhysicalParams, Region};
use crate::la::SparseMatrix;

/// Assembly switches for the fluid operator.
#[derive(Debug, Clone)]
pub struct FluidOptions {
    /// Include the ALE convection term and its full Newton linearization.
    pub convection: bool,
    /// BDF time term: (a0, dt). `None` assembles the steady operator.
    pub time: Option<(f64, f64)>,
    /// Prescribed traction pressure on outlet edges, in model units.
    pub outflow_pressure: f64,
}

impl Default for FluidOptions {
    fn default() -> Self {
        Self {
            convection: true,
            time: None,
            outflow_pressure: 0.0,
        }
    }
}

/// Newton-linearized fluid blocks and residuals at the given state.
/// `f_pp` is identically zero for the inf-sup stable Taylor-Hood pair; the
/// continuity equation is stored negated so that `f_up = f_pu^T` holds at
/// the Stokes limit.
#[derive(Debug, Clone)]
pub struct FluidAssembly {
    pub f_uu: SparseMatrix,
    pub f_up: SparseMatrix,
    pub f_pu: SparseMatrix,
    pub f_pp: SparseMatrix,
    pub res_u: Vec<f64>,
    pub res_p: Vec<f64>,
}

struct ElementGeometry {
    grads: [[f64; 2]; 6],
    p1_grads: [[f64; 2]; 3],
    area: f64,
}

/// Physical P2/P1 gradients on a straight triangle with corners `x`.
fn element_geometry(x: &[[f64; 2]; 3], l: [f64; 3]) -> Option<ElementGeometry> {
    let j11 = x[1][0] - x[0][0];
    let j21 = x[1][1] - x[0][1];
    let j12 = x[2][0] - x[0][0];
    let j22 = x[2][1] - x[0][1];
    let det = j11 * j22 - j12 * j21;
    if det <= 0.0 {
        return None;
    }
    // rows of J^{-1}
    let inv = [
        [j22 / det, -j12 / det],
        [-j21 / det, j11 / det],
    ];
    let gref = p2_grad_ref(l);
    let mut grads = [[0.0; 2]; 6];
    for k in 0..6 {
        for a in 0..2 {
            grads[k][a] = inv[0][a] * gref[k][0] + inv[1][a] * gref[k][1];
        }
    }
    let p1ref = super::p2::p1_grad_ref();
    let mut p1_grads = [[0.0; 2]; 3];
    for k in 0..3 {
        for a in 0..2 {
            p1_grads[k][a] = inv[0][a] * p1ref[k][0] + inv[1][a] * p1ref[k][1];
        }
    }
    Some(ElementGeometry {
        grads,
        p1_grads,
        area: 0.5 * det,
    })
}

/// Assembles the Newton-linearized ALE Navier-Stokes blocks at
/// `(state_u, state_p)` on the (possibly moved) coordinates `coords`.
///
/// `w` is the mesh velocity and `uhist` the combined BDF history
/// `a1*u^n - a2*u^{n-1}`, both in velocity layout. Strong boundary
/// conditions are not applied here.
#[allow(clippy::too_many_arguments)]
pub fn assemble_fluid(
    mesh: &Mesh,
    p2: &P2Nodes,
    coords: &[[f64; 2]],
    map_u: &DofMap,
    map_p: &DofMap,
    params: &PhysicalParams,
    state_u: &[f64],
    state_p: &[f64],
    w: &[f64],
    uhist: &[f64],
    opts: &FluidOptions,
) -> Result<FluidAssembly, MeshError> {
    let n_u = map_u.ndofs();
    let n_p = map_p.ndofs();
    assert_eq!(state_u.len(), n_u);
    assert_eq!(state_p.len(), n_p);
    assert_eq!(w.len(), n_u);
    assert_eq!(uhist.len(), n_u);

    let rho = params.rho_f;
    let mu = params.mu_dynamic();

    let mut t_uu: Vec<(usize, usize, f64)> = Vec::new();
    let mut t_up: Vec<(usize, usize, f64)> = Vec::new();
    let mut t_pu: Vec<(usize, usize, f64)> = Vec::new();
    let mut res_u = vec![0.0; n_u];
    let mut res_p = vec![0.0; n_p];

    for (t, nodes) in p2.tri_nodes.iter().enumerate() {
        if mesh.region[t] != Region::Fluid {
            continue;
        }
        let corners = [coords[nodes[0]], coords[nodes[1]], coords[nodes[2]]];

        // gather element state
        let mut ue = [[0.0; 2]; 6];
        let mut we = [[0.0; 2]; 6];
        let mut uhe = [[0.0; 2]; 6];
        let mut udofs = [0usize; 6];
        for k in 0..6 {
            let base = map_u.dof_of_node[nodes[k]].expect("fluid node has velocity dofs");
            udofs[k] = base;
            for a in 0..2 {
                ue[k][a] = state_u[base + a];
                we[k][a] = w[base + a];
                uhe[k][a] = uhist[base + a];
            }
        }
        let mut pe = [0.0; 3];
        let mut pdofs = [0usize; 3];
        for k in 0..3 {
            let d = map_p.dof_of_node[nodes[k]].expect("fluid vertex has pressure dof");
            pdofs[k] = d;
            pe[k] = state_p[d];
        }

        for (l, wq) in TRI_QUADRATURE {
            let geo = element_geometry(&corners, l).ok_or(MeshError::DegenerateElement {
                element: t,
                det: mesh.det_jacobian(t),
            })?;
            let shape = p2_shape(l);
            let gx = geo.grads;
            let p1 = p1_shape(l);
            let dv = wq * geo.area;

            // state at the quadrature point
            let mut u_q = [0.0; 2];
            let mut w_q = [0.0; 2];
            let mut uh_q = [0.0; 2];
            let mut grad_u = [[0.0; 2]; 2]; // grad_u[a][b] = du_a/dx_b
            for k in 0..6 {
                for a in 0..2 {
                    u_q[a] += shape[k] * ue[k][a];
                    w_q[a] += shape[k] * we[k][a];
                    uh_q[a] += shape[k] * uhe[k][a];
                    for b in 0..2 {
                        grad_u[a][b] += gx[k][b] * ue[k][a];
                    }
                }
            }
            let p_q = p1[0] * pe[0] + p1[1] * pe[1] + p1[2] * pe[2];
            let adv = [u_q[0] - w_q[0], u_q[1] - w_q[1]];
            let div_u = grad_u[0][0] + grad_u[1][1];

            for i in 0..6 {
                for a in 0..2 {
                    let mut r = 0.0;
                    if let Some((a0, dt)) = opts.time {
                        r += rho / dt * (a0 * u_q[a] - uh_q[a]) * shape[i];
                    }
                    if opts.convection {
                        r += rho * (adv[0] * grad_u[a][0] + adv[1] * grad_u[a][1]) * shape[i];
                    }
                    for b in 0..2 {
                        r += mu * (grad_u[a][b] + grad_u[b][a]) * gx[i][b];
                    }
                    r -= p_q * gx[i][a];
                    res_u[udofs[i] + a] += r * dv;
                }
            }
            for k in 0..3 {
                res_p[pdofs[k]] += -div_u * p1[k] * dv;
            }

            for i in 0..6 {
                for j in 0..6 {
                    let mass_conv = {
                        let mut v = 0.0;
                        if let Some((a0, dt)) = opts.time {
                            v += rho * a0 / dt * shape[i] * shape[j];
                        }
                        if opts.convection {
                            v += rho * shape[i] * (adv[0] * gx[j][0] + adv[1] * gx[j][1]);
                        }
                        v
                    };
                    let lap = gx[i][0] * gx[j][0] + gx[i][1] * gx[j][1];
                    for a in 0..2 {
                        for b in 0..2 {
                            let mut v = mu * gx[i][b] * gx[j][a];
                            if a == b {
                                v += mass_conv + mu * lap;
                            }
                            if opts.convection {
                                v += rho * shape[i] * shape[j] * grad_u[a][b];
                            }
                            t_uu.push((udofs[i] + a, udofs[j] + b, v * dv));
                        }
                    }
                }
            }
            for i in 0..6 {
                for a in 0..2 {
                    for k in 0..3 {
                        let v = -p1[k] * gx[i][a] * dv;
                        t_up.push((udofs[i] + a, pdofs[k], v));
                        t_pu.push((pdofs[k], udofs[i] + a, v));
                    }
                }
            }
        }
    }

    // outlet traction: sigma n = -p_out n
    if opts.outflow_pressure != 0.0 {
        let owners = edge_owner_triangles(mesh);
        for e in mesh.edges_with_tag(EdgeTag::Outlet) {
            let (a, b) = (e.v[0], e.v[1]);
            let m = p2.edge_node(a, b).expect("outlet edge exists");
            let pa = coords[a];
            let pb = coords[b];
            let dx = [pb[0] - pa[0], pb[1] - pa[1]];
            let len = (dx[0] * dx[0] + dx[1] * dx[1]).sqrt();
            let normal = outward_normal(mesh, coords, &owners, (a, b), dx, len);
            let edge_nodes = [a, b, m];
            for (s, wq) in EDGE_QUADRATURE {
                // quadratic trace shapes at nodes (s=0, s=1, s=1/2)
                let tr = [
                    (1.0 - s) * (1.0 - 2.0 * s),
                    s * (2.0 * s - 1.0),
                    4.0 * s * (1.0 - s),
                ];
                for (k, &node) in edge_nodes.iter().enumerate() {
                    let base = map_u.dof_of_node[node].expect("outlet node has velocity dofs");
                    for c in 0..2 {
                        res_u[base + c] += opts.outflow_pressure * normal[c] * tr[k] * wq * len;
                    }
                }
            }
        }
    }

    Ok(FluidAssembly {
        f_uu: SparseMatrix::from_triplets(n_u, n_u, &t_uu).expect("valid indices"),
        f_up: SparseMatrix::from_triplets(n_u, n_p, &t_up).expect("valid indices"),
        f_pu: SparseMatrix::from_triplets(n_p, n_u, &t_pu).expect("valid indices"),
        f_pp: SparseMatrix::zeros(n_p, n_p),
        res_u,
        res_p,
    })
}

pub(super) fn edge_owner_triangles(
    mesh: &Mesh,
) -> std::collections::BTreeMap<(usize, usize), usize> {
    let mut owners = std::collections::BTreeMap::new();
    for (t, tri) in mesh.triangles.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            owners.entry((a.min(b), a.max(b))).or_insert(t);
        }
    }
    owners
}

fn outward_normal(
    mesh: &Mesh,
    coords: &[[f64; 2]],
    owners: &std::collections::BTreeMap<(usize, usize), usize>,
    edge: (usize, usize),
    dx: [f64; 2],
    len: f64,
) -> [f64; 2] {
    let mut n = [dx[1] / len, -dx[0] / len];
    if let Some(&t) = owners.get(&edge) {
        let tri = mesh.triangles[t];
        let cx = (coords[tri[0]][0] + coords[tri[1]][0] + coords[tri[2]][0]) / 3.0;
        let cy = (coords[tri[0]][1] + coords[tri[1]][1] + coords[tri[2]][1]) / 3.0;
        let mid = [
            0.5 * (coords[edge.0][0] + coords[edge.1][0]),
            0.5 * (coords[edge.0][1] + coords[edge.1][1]),
        ];
        if n[0] * (cx - mid[0]) + n[1] * (cy - mid[1]) > 0.0 {
            n = [-n[0], -n[1]];
        }
    }
    n
}

/// Sensitivity of the ALE convection term with respect to the fluid-mesh
/// displacement, the optional approximation of the shape-derivative block:
/// rows over velocity dofs, columns over mesh-displacement dofs,
/// `D[(i,a),(k,b)] = -rho * c_w * int N_k du_a/dx_b N_i`, where
/// `w = c_w * d_f + history`.
pub fn assemble_shape_convection(
    mesh: &Mesh,
    p2: &P2Nodes,
    coords: &[[f64; 2]],
    map_u: &DofMap,
    map_df: &DofMap,
    params: &PhysicalParams,
    state_u: &[f64],
    c_w: f64,
) -> Result<SparseMatrix, MeshError> {
    let rho = params.rho_f;
    let mut trips = Vec::new();
    for (t, nodes) in p2.tri_nodes.iter().enumerate() {
        if mesh.region[t] != Region::Fluid {
            continue;
        }
        let corners = [coords[nodes[0]], coords[nodes[1]], coords[nodes[2]]];
        let mut ue = [[0.0; 2]; 6];
        for k in 0..6 {
            let base = map_u.dof_of_node[nodes[k]].unwrap();
            for a in 0..2 {
                ue[k][a] = state_u[base + a];
            }
        }
        for (l, wq) in TRI_QUADRATURE {
            let geo = element_geometry(&corners, l).ok_or(MeshError::DegenerateElement {
                element: t,
                det: mesh.det_jacobian(t),
            })?;
            let shape = p2_shape(l);
            let gx = geo.grads;
            let dv = wq * geo.area;
            let mut grad_u = [[0.0; 2]; 2];
            for k in 0..6 {
                for a in 0..2 {
                    for b in 0..2 {
                        grad_u[a][b] += gx[k][b] * ue[k][a];
                    }
                }
            }
            for i in 0..6 {
                let ui = map_u.dof_of_node[nodes[i]].unwrap();
                for k in 0..6 {
                    let dk = map_df.dof_of_node[nodes[k]].unwrap();
                    for a in 0..2 {
                        for b in 0..2 {
                            let v = -rho * c_w * shape[k] * grad_u[a][b] * shape[i] * dv;
                            trips.push((ui + a, dk + b, v));
                        }
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(map_u.ndofs(), map_df.ndofs(), &trips)
        .map_err(|_| MeshError::InterfaceMismatch("shape convection index error".into()))
}
